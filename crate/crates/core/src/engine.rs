//! Lagrange critical system in parameter space and its resultant count.

use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::model::{
    build_model, build_parameterization, chain_parameterization, classify_ke, fiber_degree,
    EquilibriumConstant, EquilibriumModel, KeClassification, ModelError, MonomialMap, Shape,
};
use crate::numeric::{float_roots, RootError, Tolerances};
use crate::poly::{
    rat, rat_to_f64, resultant, univariate_gcd, Binding, MPoly, PolyError, Role, VarContext,
};

pub const LAGRANGE_SYMBOL: &str = "lambda";
pub const TOOL_VERSION: &str = concat!("eqml ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("critical systems with {0} parameters are not supported (at most 2)")]
    TooManyParameters(usize),
    #[error("expected {expected} counts, got {got}")]
    CountLength { expected: usize, got: usize },
    #[error("resultant vanishes identically: f0 and f1 share a factor in t0 (degree {gcd_degree} after specialization)")]
    ZeroEliminant { gcd_degree: u32 },
    #[error("numeric solve needs an exact positive equilibrium constant")]
    NeedsPositiveConstant,
    #[error("numeric solve needs all counts >= 1")]
    NeedsPositiveCounts,
    #[error("root finding failed: {0}")]
    Roots(#[from] RootError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Data counts, either symbols `u0, u1, ..` or numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObservationCounts {
    Symbolic(usize),
    Numeric(Vec<u64>),
}

impl ObservationCounts {
    pub fn len(&self) -> usize {
        match self {
            Self::Symbolic(n) => *n,
            Self::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total count; distinct from the Lagrange multiplier.
    pub fn sample_size(&self) -> Option<u64> {
        match self {
            Self::Symbolic(_) => None,
            Self::Numeric(v) => Some(v.iter().sum()),
        }
    }
}

pub fn count_symbol(i: usize) -> String {
    format!("u{i}")
}

#[derive(Debug, Clone)]
pub struct CriticalSystem {
    pub map: MonomialMap,
    pub ctx: Arc<VarContext>,
    /// `g = sum of images - 1`.
    pub constraint_pullback: MPoly,
    /// `w_i = sum_j e_ji u_j`.
    pub weights: Vec<MPoly>,
    /// `f_i = lambda t_i dg/dt_i - w_i`.
    pub equations: Vec<MPoly>,
    pub images: Vec<MPoly>,
}

pub fn build_critical_system(map: &MonomialMap, u: &ObservationCounts) -> Result<CriticalSystem, EngineError> {
    let np = map.param_count();
    if np > 2 {
        return Err(EngineError::TooManyParameters(np));
    }
    let nimg = map.images.len();
    if u.len() != nimg {
        return Err(EngineError::CountLength { expected: nimg, got: u.len() });
    }
    let mut decl: Vec<(String, Role)> = vec![(LAGRANGE_SYMBOL.to_string(), Role::Lagrange)];
    if let ObservationCounts::Symbolic(n) = u {
        decl.extend((0..*n).map(|i| (count_symbol(i), Role::Count)));
    }
    for (i, name) in map.ctx.names().iter().enumerate() {
        decl.push((name.clone(), map.ctx.role(i)));
    }
    let ctx = VarContext::new(decl)?;
    let images: Vec<MPoly> = map.images.iter().map(|p| p.embed(&ctx)).collect::<Result<_, _>>()?;
    let mut g = -MPoly::one(&ctx);
    for img in &images {
        g = &g + img;
    }
    let u_poly = |j: usize| -> Result<MPoly, PolyError> {
        match u {
            ObservationCounts::Symbolic(_) => MPoly::var(&ctx, &count_symbol(j)),
            ObservationCounts::Numeric(v) => Ok(MPoly::int(&ctx, v[j] as i64)),
        }
    };
    let lambda = MPoly::var(&ctx, LAGRANGE_SYMBOL)?;
    let mut weights = Vec::with_capacity(np);
    let mut equations = Vec::with_capacity(np);
    for (i, t) in map.param_vars.iter().enumerate() {
        let mut w = MPoly::zero(&ctx);
        for j in 0..nimg {
            let e = map.exponents[i][j];
            if e > 0 {
                w = &w + &u_poly(j)?.scale(&rat(e as i64));
            }
        }
        let tv = MPoly::var(&ctx, t)?;
        let f = &(&lambda * &(&tv * &g.partial_derivative(t)?)) - &w;
        weights.push(w);
        equations.push(map.reduce(&f)?);
    }
    Ok(CriticalSystem {
        map: map.clone(),
        ctx,
        constraint_pullback: g,
        weights,
        equations,
        images,
    })
}

impl CriticalSystem {
    /// The parameter left after elimination.
    pub fn surviving_var(&self) -> &str {
        self.map.param_vars.last().expect("at least one parameter")
    }
}

/// `f0` for one parameter, `Res(f0, f1, t0)` reduced by the radical relation for two.
pub fn eliminate(cs: &CriticalSystem) -> Result<MPoly, EngineError> {
    if cs.equations.len() == 1 {
        return Ok(cs.equations[0].clone());
    }
    let r = resultant(&cs.equations[0], &cs.equations[1], "t0")?;
    let r = cs.map.reduce(&r)?;
    if r.is_zero() {
        return Err(EngineError::ZeroEliminant {
            gcd_degree: specialized_gcd_degree(cs)?,
        });
    }
    Ok(r)
}

fn specialized_gcd_degree(cs: &CriticalSystem) -> Result<u32, EngineError> {
    let primes = [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let others: Vec<&str> = cs.ctx.names().iter().map(String::as_str).filter(|n| *n != "t0").collect();
    let bindings: Vec<(&str, Binding)> = others
        .iter()
        .zip(primes.iter().cycle())
        .map(|(n, p)| (*n, Binding::from(*p)))
        .collect();
    let f0 = cs.equations[0].substitute(&bindings)?;
    let f1 = cs.equations[1].substitute(&bindings)?;
    Ok(univariate_gcd(&f0, &f1, "t0")?.degree_in("t0")?)
}

/// Degree, valuation and their difference in `var`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminantCount {
    pub degree: u32,
    pub valuation: u32,
    pub count: u64,
}

pub fn count_nonzero_roots(e: &MPoly, var: &str) -> Result<EliminantCount, EngineError> {
    let (degree, valuation) = e.degree_profile(var)?;
    Ok(EliminantCount {
        degree,
        valuation,
        count: (degree - valuation) as u64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MLDegreeReport {
    pub reaction: String,
    pub ke: String,
    pub parameter_space_count: Option<u64>,
    pub fiber_degree: u64,
    pub variety_count_quotient: String,
    pub degeneracy: KeClassification,
    pub eliminant_degree: Option<u32>,
    pub eliminant_valuation: Option<u32>,
    pub caveats: Vec<String>,
    pub tool_version: &'static str,
    #[serde(skip)]
    pub quotient: Option<BigRational>,
    #[serde(skip)]
    pub eliminant: Option<MPoly>,
}

impl MLDegreeReport {
    /// The quotient when it is a nonnegative integer.
    pub fn variety_count(&self) -> Option<u64> {
        self.quotient
            .as_ref()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_u64())
    }
}

struct Raw {
    count: Option<u64>,
    fiber: u64,
    elim: Option<(MPoly, EliminantCount)>,
    caveats: Vec<String>,
    zero_image: bool,
}

fn raw_count(m: &EquilibriumModel) -> Result<Raw, EngineError> {
    let shape = m.shape()?;
    if shape == Shape::Segre {
        let mut caveats = vec![
            "closed form: the model is a Segre product P1 x P1 and the count is the Euler characteristic (-1)(-1) = 1"
                .to_string(),
        ];
        if let Some(chain) = chain_parameterization(m)? {
            let cs = build_critical_system(&chain, &ObservationCounts::Symbolic(chain.images.len()))?;
            let c = count_nonzero_roots(&eliminate(&cs)?, cs.surviving_var())?;
            caveats.push(format!(
                "the one-parameter balanced-chain map {} gives count {} on a curve inside the model",
                chain, c.count
            ));
        }
        return Ok(Raw {
            count: Some(1),
            fiber: 1,
            elim: None,
            caveats,
            zero_image: false,
        });
    }
    let map = build_parameterization(m)?.expect("non-Segre shapes have a map");
    let fiber = fiber_degree(&map)?;
    let mut caveats = Vec::new();
    if !map.covers_model {
        caveats.push(format!(
            "parameterization {map} has fewer parameters than the model dimension and does not cover the model"
        ));
    }
    if let Some(rad) = &map.radical {
        caveats.push(format!(
            "radical coefficient kept symbolic with {}^{} = {}",
            rad.symbol, rad.power, rad.value
        ));
    }
    if let Some(j) = map.images.iter().position(MPoly::is_zero) {
        caveats.push(format!(
            "image of {} vanishes identically; the parameterized model lies in the arrangement H",
            m.species_vars[j]
        ));
        return Ok(Raw {
            count: Some(0),
            fiber,
            elim: None,
            caveats,
            zero_image: true,
        });
    }
    let cs = build_critical_system(&map, &ObservationCounts::Symbolic(map.images.len()))?;
    match eliminate(&cs) {
        Ok(e) => {
            let c = count_nonzero_roots(&e, cs.surviving_var())?;
            Ok(Raw {
                count: Some(c.count),
                fiber,
                elim: Some((e, c)),
                caveats,
                zero_image: false,
            })
        }
        Err(EngineError::ZeroEliminant { gcd_degree }) => {
            caveats.push(format!("eliminant vanishes identically (common factor of degree {gcd_degree})"));
            Ok(Raw {
                count: None,
                fiber,
                elim: None,
                caveats,
                zero_image: false,
            })
        }
        Err(e) => Err(e),
    }
}

/// Count critical points of the symbolic system, checking for degree drops
/// against the generic constant.
pub fn ml_degree_faithful(m: &EquilibriumModel) -> Result<MLDegreeReport, EngineError> {
    let raw = raw_count(m)?;
    let mut degeneracy = classify_ke(m);
    let mut caveats = raw.caveats;
    caveats.extend(m.warnings.iter().cloned());

    if !m.ke.is_generic() {
        let generic = build_model(&m.reaction, &EquilibriumConstant::Generic)?;
        let g = raw_count(&generic)?;
        match (g.count, raw.count) {
            (Some(gc), Some(sc)) if sc < gc => {
                let why = format!("count drops from {gc} (generic Ke) to {sc} at Ke = {}", m.ke);
                degeneracy.degenerate = Some(match degeneracy.degenerate.take() {
                    Some(d) => format!("{d}; {why}"),
                    None => why,
                });
            }
            (Some(_), None)
                if degeneracy.degenerate.is_none() => {
                    degeneracy.degenerate = Some(format!("eliminant vanishes identically at Ke = {}", m.ke));
                }
            _ => {}
        }
    }
    if raw.zero_image && degeneracy.degenerate.is_none() {
        degeneracy.degenerate = Some("an image coordinate vanishes identically".to_string());
    }
    let quotient = raw
        .count
        .map(|c| BigRational::new((c as i64).into(), (raw.fiber as i64).into()));
    if raw.fiber > 1 {
        if let (Some(c), Some(q)) = (raw.count, &quotient) {
            caveats.push(format!(
                "parameter-space count {c} covers a {}:1 map; variety-side quotient {q}",
                raw.fiber
            ));
        }
    }
    Ok(MLDegreeReport {
        reaction: m.reaction.to_string(),
        ke: m.ke.to_string(),
        parameter_space_count: raw.count,
        fiber_degree: raw.fiber,
        variety_count_quotient: quotient.as_ref().map_or_else(|| "n/a".to_string(), |q| q.to_string()),
        degeneracy,
        eliminant_degree: raw.elim.as_ref().map(|(_, c)| c.degree),
        eliminant_valuation: raw.elim.as_ref().map(|(_, c)| c.valuation),
        caveats,
        tool_version: TOOL_VERSION,
        quotient,
        eliminant: raw.elim.map(|(e, _)| e),
    })
}

/// A numeric critical point in parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPoint {
    pub params: Vec<Complex64>,
    pub lambda: Complex64,
    /// Images of the parameters, one per species.
    pub species: Vec<Complex64>,
    /// Scaled residuals of `f_i` and `g`.
    pub residuals: Vec<f64>,
}

struct Slots {
    len: usize,
    lambda: usize,
    s: Option<(usize, Complex64)>,
    params: Vec<usize>,
}

impl Slots {
    fn values(&self, t: &[Complex64], lambda: Complex64) -> Vec<Complex64> {
        let mut v = vec![Complex64::zero(); self.len];
        v[self.lambda] = lambda;
        if let Some((i, s)) = self.s {
            v[i] = s;
        }
        for (&i, &x) in self.params.iter().zip(t) {
            v[i] = x;
        }
        v
    }
}

fn c_eval(p: &MPoly, slots: &Slots, t: &[Complex64]) -> Complex64 {
    p.eval_slice(&slots.values(t, Complex64::zero()))
}

/// Real positive root of `value` of order `k`.
fn radical_value(value: &BigRational, k: u32) -> f64 {
    rat_to_f64(value).powf(1.0 / k as f64)
}

fn newton2(f: &[MPoly; 2], jac: &[[MPoly; 2]; 2], slots: &Slots, mut t: [Complex64; 2]) -> [Complex64; 2] {
    for _ in 0..50 {
        let r = [c_eval(&f[0], slots, &t), c_eval(&f[1], slots, &t)];
        let a = c_eval(&jac[0][0], slots, &t);
        let b = c_eval(&jac[0][1], slots, &t);
        let c = c_eval(&jac[1][0], slots, &t);
        let d = c_eval(&jac[1][1], slots, &t);
        let det = a * d - b * c;
        if det.norm() == 0.0 {
            break;
        }
        let dx = (d * r[0] - b * r[1]) / det;
        let dy = (a * r[1] - c * r[0]) / det;
        t = [t[0] - dx, t[1] - dy];
        if dx.norm() + dy.norm() <= 1e-16 * (1.0 + t[0].norm() + t[1].norm()) {
            break;
        }
    }
    t
}

fn newton1(f: &MPoly, df: &MPoly, slots: &Slots, mut t: Complex64) -> Complex64 {
    for _ in 0..50 {
        let d = c_eval(df, slots, &[t]);
        if d.norm() == 0.0 {
            break;
        }
        let step = c_eval(f, slots, &[t]) / d;
        t -= step;
        if step.norm() <= 1e-16 * (1.0 + t.norm()) {
            break;
        }
    }
    t
}

/// Numeric solutions of `{f_i = 0, g = 0}` with nonzero parameters.
///
/// `lambda` is eliminated through `h = w1 t0 dg/dt0 - w0 t1 dg/dt1`; the
/// remaining pair `(g, h)` is reduced to one variable by a resultant.
pub fn solve_critical_numeric(
    m: &EquilibriumModel,
    u: &[u64],
    tol: &Tolerances,
) -> Result<Vec<ParamPoint>, EngineError> {
    let ke = match m.ke.value() {
        Some(q) if q.is_positive() => q.clone(),
        _ => return Err(EngineError::NeedsPositiveConstant),
    };
    if u.contains(&0) {
        return Err(EngineError::NeedsPositiveCounts);
    }
    let map = build_parameterization(m)?.ok_or(ModelError::UnsupportedShape {
        reaction: m.reaction.to_string(),
    })?;
    let cs = build_critical_system(&map, &ObservationCounts::Numeric(u.to_vec()))?;
    let ctx = &cs.ctx;
    let slots = Slots {
        len: ctx.len(),
        lambda: ctx.index_of(LAGRANGE_SYMBOL).unwrap(),
        s: map.radical.as_ref().map(|r| {
            (
                ctx.index_of(&r.symbol).unwrap(),
                Complex64::new(radical_value(&ke, r.power), 0.0),
            )
        }),
        params: map.param_vars.iter().map(|t| ctx.index_of(t).unwrap()).collect(),
    };
    let g = &cs.constraint_pullback;
    let mut raw: Vec<Vec<Complex64>> = Vec::new();
    if map.param_count() == 1 {
        let dg = g.partial_derivative("t0")?;
        for r in param_line_roots(g, "t0", &[], &slots, tol)? {
            raw.push(vec![newton1(g, &dg, &slots, r)]);
        }
    } else {
        let g0 = g.partial_derivative("t0")?;
        let g1 = g.partial_derivative("t1")?;
        let t0 = MPoly::var(ctx, "t0")?;
        let t1 = MPoly::var(ctx, "t1")?;
        let h = &(&cs.weights[1] * &(&t0 * &g0)) - &(&cs.weights[0] * &(&t1 * &g1));
        let h = map.reduce(&h)?;
        let elim = map.reduce(&resultant(g, &h, "t0")?)?;
        if elim.is_zero() {
            return Err(EngineError::ZeroEliminant { gcd_degree: 0 });
        }
        let f = [g.clone(), h.clone()];
        let jac = [
            [g0.clone(), g1.clone()],
            [h.partial_derivative("t0")?, h.partial_derivative("t1")?],
        ];
        for r1 in param_line_roots(&elim, "t1", &[], &slots, tol)? {
            if r1.norm() < tol.residual {
                continue;
            }
            for r0 in param_line_roots(g, "t0", &[(1, r1)], &slots, tol)? {
                let hv = h.scaled_residual(&slots.values(&[r0, r1], Complex64::zero()));
                if hv > 1e-4 {
                    continue;
                }
                let p = newton2(&f, &jac, &slots, [r0, r1]);
                raw.push(p.to_vec());
            }
        }
    }
    let mut out: Vec<ParamPoint> = Vec::new();
    for t in raw {
        if t.iter().any(|x| x.norm() < tol.residual) {
            continue;
        }
        if out.iter().any(|p| {
            p.params.iter().zip(&t).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) < tol.cluster
        }) {
            continue;
        }
        let v0 = slots.values(&t, Complex64::zero());
        let tg0 = t[0] * cs.constraint_pullback.partial_derivative("t0")?.eval_slice(&v0);
        let lambda = cs.weights[0].eval_slice(&v0) / tg0;
        let v = slots.values(&t, lambda);
        let mut residuals: Vec<f64> = cs.equations.iter().map(|e| e.scaled_residual(&v)).collect();
        residuals.push(g.scaled_residual(&v));
        if residuals.iter().any(|&r| !(r < tol.residual)) {
            continue;
        }
        let species = cs.images.iter().map(|img| img.eval_slice(&v)).collect();
        out.push(ParamPoint {
            params: t,
            lambda,
            species,
            residuals,
        });
    }
    Ok(out)
}

/// Roots in `var` of `p` after fixing the given parameters numerically.
fn param_line_roots(
    p: &MPoly,
    var: &str,
    fixed: &[(usize, Complex64)],
    slots: &Slots,
    tol: &Tolerances,
) -> Result<Vec<Complex64>, EngineError> {
    let coeffs = p.coefficients_in(var)?;
    let mut probe = vec![Complex64::zero(); slots.params.len()];
    for &(i, x) in fixed {
        probe[i] = x;
    }
    let c: Vec<Complex64> = coeffs.iter().map(|q| c_eval(q, slots, &probe)).collect();
    // drop numerically vanished leading terms
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut c = c;
    while c.len() > 1 && c.last().unwrap().norm() <= 1e-12 * scale {
        c.pop();
    }
    if c.len() < 2 {
        return Ok(Vec::new());
    }
    Ok(float_roots(&c, tol)?.into_iter().map(|r| r.value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reaction::parse_reaction;

    fn model(r: &str, ke: &str) -> EquilibriumModel {
        build_model(&parse_reaction(r).unwrap(), &ke.parse().unwrap()).unwrap()
    }

    fn faithful(r: &str, ke: &str) -> MLDegreeReport {
        ml_degree_faithful(&model(r, ke)).unwrap()
    }

    #[test]
    fn critical_equations_for_cubic_model() {
        let m = model("A + B <-> 3C", "1");
        let map = build_parameterization(&m).unwrap().unwrap();
        let cs = build_critical_system(&map, &ObservationCounts::Symbolic(3)).unwrap();
        let p = |s: &str| MPoly::parse(&cs.ctx, s).unwrap();
        assert_eq!(cs.equations[0], p("lambda*(3*t0^3 + t0*t1) - (3*u0 + u2)"));
        assert_eq!(cs.equations[1], p("lambda*(3*t1^3 + t0*t1) - (3*u1 + u2)"));
    }

    #[test]
    fn critical_equation_one_parameter() {
        let m = model("2A <-> 3B", "1");
        let map = build_parameterization(&m).unwrap().unwrap();
        let cs = build_critical_system(&map, &ObservationCounts::Symbolic(2)).unwrap();
        let e = eliminate(&cs).unwrap();
        assert_eq!(e, MPoly::parse(&cs.ctx, "3*lambda*t0^3 + 2*lambda*t0^2 - (3*u0 + 2*u1)").unwrap());

        let m = model("A <-> B", "generic");
        let map = build_parameterization(&m).unwrap().unwrap();
        let cs = build_critical_system(&map, &ObservationCounts::Symbolic(2)).unwrap();
        let e = eliminate(&cs).unwrap();
        assert_eq!(e, MPoly::parse(&cs.ctx, "lambda*(1 + Ke)*t0 - (u0 + u1)").unwrap());
    }

    #[test]
    fn counts() {
        assert_eq!(faithful("A <-> B", "generic").parameter_space_count, Some(1));
        let r = faithful("A <-> B", "-1");
        assert_eq!(r.parameter_space_count, Some(0));
        assert!(!r.degeneracy.is_generic() && r.degeneracy.nonphysical_warning);
        assert_eq!(faithful("2A <-> 3B", "1").parameter_space_count, Some(3));
        let r = faithful("A + B <-> 3C", "1");
        assert_eq!((r.parameter_space_count, r.fiber_degree), (Some(9), 3));
        assert_eq!(r.variety_count_quotient, "3");
        assert_eq!(faithful("2A + 2B <-> C", "1").parameter_space_count, Some(4));
        assert_eq!(faithful("2A + 2B <-> 2C", "1").parameter_space_count, Some(8));
        let r = faithful("A + 2B <-> C", "1");
        assert_eq!((r.eliminant_degree, r.eliminant_valuation), (Some(3), Some(0)));
        assert_eq!(faithful("A1 + A2 + A3 <-> B1 + B2 + B3", "generic").parameter_space_count, Some(1));
        assert_eq!(faithful("A + B <-> C + D", "generic").parameter_space_count, Some(1));
        let r = faithful("N2 + 3H2 <-> 2NH3", "generic");
        assert_eq!((r.parameter_space_count, r.fiber_degree), (Some(8), 2));
        let r = faithful("3A + 3B <-> 3C", "1");
        assert_eq!((r.eliminant_degree, r.eliminant_valuation), (Some(18), Some(0)));
        assert_eq!((r.parameter_space_count, r.fiber_degree), (Some(18), 9));
    }

    #[test]
    fn degenerate_constants() {
        let g = faithful("A + B <-> 2C", "generic");
        assert_eq!((g.parameter_space_count, g.variety_count()), (Some(4), Some(2)));
        let r = faithful("A + B <-> 2C", "4");
        assert_eq!((r.parameter_space_count, r.variety_count()), (Some(2), Some(1)));
        assert!(!r.degeneracy.is_generic());
        let r = faithful("A + B <-> 2C", "7");
        assert_eq!(r.parameter_space_count, Some(4));
        assert!(r.degeneracy.is_generic());
        let r = faithful("A + B <-> 2C", "0");
        assert_eq!(r.parameter_space_count, Some(0));
        assert!(!r.degeneracy.is_generic());
    }

    #[test]
    fn numeric_one_parameter() {
        let m = model("A <-> B", "1");
        let pts = solve_critical_numeric(&m, &[3, 1], &Tolerances::default()).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].params[0] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        // lambda equals the sample size
        assert!((pts[0].lambda - Complex64::new(4.0, 0.0)).norm() < 1e-9);

        let m = model("2A <-> 3B", "1");
        let pts = solve_critical_numeric(&m, &[2, 5], &Tolerances::default()).unwrap();
        assert_eq!(pts.len(), 3);
        let real: Vec<_> = pts.iter().filter(|p| p.params[0].im.abs() < 1e-9).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].params[0].re - 0.754877666).abs() < 1e-9);
    }

    #[test]
    fn numeric_two_parameters() {
        let m = model("A + B <-> 2C", "7");
        let pts = solve_critical_numeric(&m, &[2, 3, 5], &Tolerances::default()).unwrap();
        assert_eq!(pts.len(), 4);
        let mut images: Vec<Vec<Complex64>> = Vec::new();
        for p in &pts {
            if !images.iter().any(|q| q.iter().zip(&p.species).all(|(a, b)| (a - b).norm() < 1e-7)) {
                images.push(p.species.clone());
            }
        }
        assert_eq!(images.len(), 2);
    }
}
