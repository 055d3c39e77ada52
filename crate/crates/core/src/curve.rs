//! Plane-curve side: `d^2 - 3d + a` and the determinant critical system.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::{EquilibriumModel, KE_SYMBOL};
use crate::numeric::{float_roots, uni_roots, CriticalPoint, RootError, Tolerances};
use crate::poly::{
    binary_form_squarefree, determinant_fraction_free, rat, resultant, Binding, MPoly, PolyError, PolyMatrix, UniPoly,
    VarContext,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("curve must be a nonzero form homogeneous in exactly three variables")]
    NotPlaneCurve,
    #[error("curve contains the line {0} of the arrangement H; the a-count is undefined")]
    ContainsLine(Line),
    #[error("curve is singular at {witness:?}; the d^2 - 3d + a formula needs a smooth curve")]
    Singular { witness: [f64; 6] },
    #[error("smoothness undetermined: {0}")]
    Undetermined(String),
    #[error("critical system degenerates: {0}")]
    Degenerate(String),
    #[error("counts must be positive, one per coordinate")]
    BadCounts,
    #[error("root finding failed: {0}")]
    Roots(#[from] RootError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The four lines of the arrangement H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Line {
    X,
    Y,
    Z,
    L,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Line::X => "x = 0",
            Line::Y => "y = 0",
            Line::Z => "z = 0",
            Line::L => "x + y + z = 0",
        })
    }
}

pub const LINES: [Line; 4] = [Line::X, Line::Y, Line::Z, Line::L];

/// Pairwise intersections of the four lines.
pub const SHARED_POINTS: [[i64; 3]; 6] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, -1], [1, 0, -1], [1, -1, 0]];

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    pub f: MPoly,
    pub degree: u32,
}

impl PlaneCurve {
    pub fn new(f: MPoly) -> Result<Self, CurveError> {
        let ctx = f.ctx().clone();
        if ctx.len() != 3 || f.is_zero() {
            return Err(CurveError::NotPlaneCurve);
        }
        let names = ctx.names();
        let vars = [names[0].as_str(), names[1].as_str(), names[2].as_str()];
        if !f.is_homogeneous_in(&vars)? {
            return Err(CurveError::NotPlaneCurve);
        }
        let degree = f.total_degree();
        if degree == 0 {
            return Err(CurveError::NotPlaneCurve);
        }
        Ok(PlaneCurve { f, degree })
    }

    /// `F_hom` of a three-species model. A generic constant is replaced by a
    /// seeded random positive rational, noted in the returned caveats.
    pub fn from_model(m: &EquilibriumModel, seed: u64) -> Result<(Self, Vec<String>), CurveError> {
        if m.species_count() != 3 {
            return Err(CurveError::NotPlaneCurve);
        }
        let mut caveats = vec![format!("F_hom homogenized by L = {}", m.linear_form())];
        let mut f = m.f_hom.clone();
        if m.ctx.contains(KE_SYMBOL) {
            let ke = random_rational(&mut ChaCha8Rng::seed_from_u64(seed));
            caveats.push(format!("generic Ke specialized to the random value {ke} (seed {seed})"));
            f = f.substitute(&[(KE_SYMBOL, Binding::Value(ke))])?;
        }
        let ctx = VarContext::unknowns(&m.species_vars)?;
        Ok((PlaneCurve::new(f.embed(&ctx)?)?, caveats))
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        self.f.ctx()
    }

    fn var(&self, i: usize) -> &str {
        &self.ctx().names()[i]
    }

    fn partials(&self) -> Result<[MPoly; 3], PolyError> {
        Ok([
            self.f.partial_derivative(self.var(0))?,
            self.f.partial_derivative(self.var(1))?,
            self.f.partial_derivative(self.var(2))?,
        ])
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let p: i64 = rng.gen_range(2..2000);
    let q: i64 = rng.gen_range(1..97);
    BigRational::new(p.into(), q.into())
}

/// Restriction to a line of H as a binary form and its two variables.
pub fn restrict_to_line(c: &PlaneCurve, line: Line) -> Result<(MPoly, String, String), CurveError> {
    let (x, y, z) = (c.var(0), c.var(1), c.var(2));
    let (form, a, b) = match line {
        Line::X => (c.f.substitute(&[(x, 0.into())])?, y, z),
        Line::Y => (c.f.substitute(&[(y, 0.into())])?, x, z),
        Line::Z => (c.f.substitute(&[(z, 0.into())])?, x, y),
        Line::L => {
            let target = c.ctx().without(&[z]);
            let minus = -(&MPoly::var(&target, x)? + &MPoly::var(&target, y)?);
            (c.f.substitute(&[(z, Binding::Poly(minus))])?, x, y)
        }
    };
    if form.is_zero() {
        return Err(CurveError::ContainsLine(line));
    }
    Ok((form, a.to_string(), b.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrangementCount {
    /// Distinct points on `x = 0, y = 0, z = 0, L = 0`.
    pub per_line_distinct: [u32; 4],
    pub shared_point_correction: u32,
    pub a: u32,
}

fn vanishes_at(c: &PlaneCurve, p: &[i64; 3]) -> Result<bool, PolyError> {
    let b: Vec<(&str, Binding)> = (0..3).map(|i| (c.var(i), Binding::from(p[i]))).collect();
    Ok(c.f.substitute(&b)?.is_zero())
}

pub fn arrangement_count(c: &PlaneCurve) -> Result<ArrangementCount, CurveError> {
    let mut per_line = [0u32; 4];
    for (i, line) in LINES.iter().enumerate() {
        let (form, a, b) = restrict_to_line(c, *line)?;
        per_line[i] = binary_form_squarefree(&form, &a, &b)?.1;
    }
    let mut correction = 0;
    for p in &SHARED_POINTS {
        if vanishes_at(c, p)? {
            correction += 1;
        }
    }
    Ok(ArrangementCount {
        per_line_distinct: per_line,
        shared_point_correction: correction,
        a: per_line.iter().sum::<u32>() - correction,
    })
}

const REDUCED_SEED: u64 = 0x5eed_c0de;

/// Two seeded random lines `a P + b Q` and the restrictions of the curve.
fn random_line_forms(c: &PlaneCurve) -> Result<Vec<([i64; 3], [i64; 3], MPoly)>, CurveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(REDUCED_SEED);
    let lctx = VarContext::unknowns(&["a", "b"])?;
    let (a, b) = (MPoly::var(&lctx, "a")?, MPoly::var(&lctx, "b")?);
    let mut out = Vec::new();
    for _ in 0..2 {
        let p: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-50..50));
        let q: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-50..50));
        let bindings: Vec<(&str, Binding)> = (0..3)
            .map(|i| (c.var(i), Binding::Poly(&a.scale(&rat(p[i])) + &b.scale(&rat(q[i])))))
            .collect();
        out.push((p, q, c.f.substitute(&bindings)?));
    }
    Ok(out)
}

/// True when two random lines both meet the curve in fewer than `d` points.
pub fn is_non_reduced(c: &PlaneCurve) -> Result<bool, CurveError> {
    let mut short = 0;
    for (_, _, form) in random_line_forms(c)? {
        if !form.is_zero() && binary_form_squarefree(&form, "a", "b")?.1 < c.degree {
            short += 1;
        }
    }
    Ok(short == 2)
}

/// A point of a multiple component, from a repeated root on a random line.
fn non_reduced_witness(c: &PlaneCurve, tol: &Tolerances) -> Result<Option<[Complex64; 3]>, CurveError> {
    let parts = c.partials()?;
    for (p, q, form) in random_line_forms(c)? {
        if form.is_zero() {
            continue;
        }
        let dehom = form.substitute(&[("b", 1.into())])?;
        let uni = UniPoly::from_mpoly(&dehom, "a")?;
        let mut cands: Vec<[Complex64; 3]> = Vec::new();
        if uni.degree().unwrap_or(0) + 1 < c.degree as usize {
            // repeated root at b = 0 side: the point P itself
            cands.push(std::array::from_fn(|i| Complex64::new(p[i] as f64, 0.0)));
        }
        for factor in uni.squarefree_factors().iter().skip(1) {
            if factor.degree().unwrap_or(0) == 0 {
                continue;
            }
            for r in uni_roots(factor, tol)? {
                cands.push(std::array::from_fn(|k| r.value * p[k] as f64 + q[k] as f64));
            }
        }
        for w in cands {
            let w = normalize_projective(&w);
            if std::iter::once(&c.f)
                .chain(parts.iter())
                .all(|g| g.scaled_residual(&w) < SINGULAR_RESIDUAL)
            {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Smoothness {
    Smooth,
    /// Projective witness as `[re, im]` pairs.
    Singular { witness: Vec<[f64; 2]> },
    Undetermined { reason: String },
}

impl Smoothness {
    pub fn witness(&self) -> Option<Vec<Complex64>> {
        match self {
            Smoothness::Singular { witness } => Some(witness.iter().map(|w| Complex64::new(w[0], w[1])).collect()),
            _ => None,
        }
    }
}

struct PatchOutcome {
    witnesses: Vec<[Complex64; 3]>,
    ambiguous: Vec<String>,
}

const SINGULAR_RESIDUAL: f64 = 1e-10;

/// Singular points with coordinate `k` equal to 1.
fn singular_patch(c: &PlaneCurve, k: usize, tol: &Tolerances) -> Result<PatchOutcome, CurveError> {
    let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let (vi, vj) = (c.var(free[0]).to_string(), c.var(free[1]).to_string());
    let fix = [(c.var(k), Binding::from(1))];
    let parts = c.partials()?;
    let gens: Vec<MPoly> = std::iter::once(&c.f)
        .chain(parts.iter())
        .map(|p| p.substitute(&fix))
        .collect::<Result<_, _>>()?;
    let gens: Vec<MPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(PatchOutcome { witnesses: vec![], ambiguous: vec![] });
    }
    // elements of the ideal free of vj
    let mut elim: Vec<UniPoly> = Vec::new();
    for (a, g) in gens.iter().enumerate() {
        if g.degree_in(&vj)? == 0 {
            elim.push(UniPoly::from_mpoly(g, &vi)?);
        }
        for h in &gens[a + 1..] {
            if g.degree_in(&vj)? + h.degree_in(&vj)? == 0 {
                continue;
            }
            let r = resultant(g, h, &vj)?;
            if !r.is_zero() {
                elim.push(UniPoly::from_mpoly(&r, &vi)?);
            }
        }
    }
    let Some(first) = elim.first() else {
        return Ok(PatchOutcome {
            witnesses: vec![],
            ambiguous: vec![format!("all eliminants vanish on the patch {} = 1", c.var(k))],
        });
    };
    let g = elim[1..].iter().fold(first.clone(), |acc, e| acc.gcd(e));
    if g.degree().unwrap_or(0) == 0 {
        return Ok(PatchOutcome { witnesses: vec![], ambiguous: vec![] });
    }
    // the generator of least positive degree in vj recovers vj
    let solver = gens
        .iter()
        .filter(|p| p.degree_in(&vj).unwrap_or(0) > 0)
        .min_by_key(|p| p.degree_in(&vj).unwrap_or(0))
        .cloned();
    let newton_sys = [parts[free[0]].substitute(&fix)?, parts[free[1]].substitute(&fix)?];
    let jac = [
        [newton_sys[0].partial_derivative(&vi)?, newton_sys[0].partial_derivative(&vj)?],
        [newton_sys[1].partial_derivative(&vi)?, newton_sys[1].partial_derivative(&vj)?],
    ];
    let mut out = PatchOutcome { witnesses: vec![], ambiguous: vec![] };
    let ii = gens[0].ctx().index_of(&vi).unwrap();
    let jj = gens[0].ctx().index_of(&vj).unwrap();
    let at = |x: Complex64, y: Complex64| {
        let mut v = vec![Complex64::zero(); 2];
        v[ii] = x;
        v[jj] = y;
        v
    };
    for root in uni_roots(&g, tol)? {
        let x = root.value;
        let ys: Vec<Complex64> = match &solver {
            Some(s) => {
                let coeffs: Vec<Complex64> =
                    s.coefficients_in(&vj)?.iter().map(|q| q.eval_slice(&at(x, Complex64::zero()))).collect();
                roots_of_numeric(&coeffs, tol)?
            }
            None => vec![Complex64::zero()],
        };
        for y in ys {
            let (x, y) = newton_pair(&newton_sys, &jac, x, y, &at);
            let max_res = gens.iter().map(|p| p.scaled_residual(&at(x, y))).fold(0.0, f64::max);
            let mut pt = [Complex64::zero(); 3];
            pt[free[0]] = x;
            pt[free[1]] = y;
            pt[k] = Complex64::new(1.0, 0.0);
            if max_res < SINGULAR_RESIDUAL {
                out.witnesses.push(pt);
            } else if max_res < 1e-4 {
                out.ambiguous.push(format!("candidate {pt:?} has residual {max_res:e}"));
            }
        }
    }
    Ok(out)
}

fn roots_of_numeric(coeffs: &[Complex64], tol: &Tolerances) -> Result<Vec<Complex64>, RootError> {
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() <= 1e-12 * scale {
        c.pop();
    }
    if c.len() < 2 {
        return Ok(vec![]);
    }
    Ok(float_roots(&c, tol)?.into_iter().map(|r| r.value).collect())
}

fn newton_pair<F>(f: &[MPoly; 2], jac: &[[MPoly; 2]; 2], mut x: Complex64, mut y: Complex64, at: &F) -> (Complex64, Complex64)
where
    F: Fn(Complex64, Complex64) -> Vec<Complex64>,
{
    for _ in 0..60 {
        let v = at(x, y);
        let r0 = f[0].eval_slice(&v);
        let r1 = f[1].eval_slice(&v);
        let a = jac[0][0].eval_slice(&v);
        let b = jac[0][1].eval_slice(&v);
        let c = jac[1][0].eval_slice(&v);
        let d = jac[1][1].eval_slice(&v);
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.is_finite() {
            break;
        }
        let dx = (d * r0 - b * r1) / det;
        let dy = (a * r1 - c * r0) / det;
        if !(dx.is_finite() && dy.is_finite()) {
            break;
        }
        x -= dx;
        y -= dy;
        if dx.norm() + dy.norm() <= 1e-16 * (1.0 + x.norm() + y.norm()) {
            break;
        }
    }
    (x, y)
}

fn normalize_projective(p: &[Complex64; 3]) -> [Complex64; 3] {
    let m = p.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
    [p[0] / m, p[1] / m, p[2] / m]
}

pub fn smoothness_check(c: &PlaneCurve, tol: &Tolerances) -> Result<Smoothness, CurveError> {
    if is_non_reduced(c)? {
        return Ok(match non_reduced_witness(c, tol)? {
            Some(w) => Smoothness::Singular {
                witness: w.iter().map(|z| [z.re, z.im]).collect(),
            },
            None => Smoothness::Undetermined {
                reason: "non-reduced curve without a confirmed witness".to_string(),
            },
        });
    }
    let mut witnesses: Vec<[Complex64; 3]> = Vec::new();
    let mut ambiguous = Vec::new();
    for k in (0..3).rev() {
        let out = singular_patch(c, k, tol)?;
        witnesses.extend(out.witnesses);
        ambiguous.extend(out.ambiguous);
    }
    if let Some(w) = witnesses.first() {
        let w = normalize_projective(w);
        return Ok(Smoothness::Singular {
            witness: w.iter().map(|z| [z.re, z.im]).collect(),
        });
    }
    if !ambiguous.is_empty() {
        return Ok(Smoothness::Undetermined {
            reason: ambiguous.join("; "),
        });
    }
    Ok(Smoothness::Smooth)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveMLDegree {
    pub ml_degree: u64,
    pub degree: u32,
    pub arrangement: Option<ArrangementCount>,
    pub caveats: Vec<String>,
}

/// `d^2 - 3d + a` for smooth curves; 0 for non-reduced ones.
pub fn ml_degree_curve(c: &PlaneCurve, tol: &Tolerances) -> Result<CurveMLDegree, CurveError> {
    if is_non_reduced(c)? {
        return Ok(CurveMLDegree {
            ml_degree: 0,
            degree: c.degree,
            arrangement: None,
            caveats: vec!["non-reduced curve: a double component lies in H, ML degree taken as 0".to_string()],
        });
    }
    let arr = arrangement_count(c)?;
    match smoothness_check(c, tol)? {
        Smoothness::Smooth => {}
        Smoothness::Singular { witness } => {
            let mut w = [0.0; 6];
            for (i, z) in witness.iter().enumerate() {
                w[2 * i] = z[0];
                w[2 * i + 1] = z[1];
            }
            return Err(CurveError::Singular { witness: w });
        }
        Smoothness::Undetermined { reason } => return Err(CurveError::Undetermined(reason)),
    }
    let d = c.degree as i64;
    let value = d * d - 3 * d + arr.a as i64;
    Ok(CurveMLDegree {
        ml_degree: value.max(0) as u64,
        degree: c.degree,
        arrangement: Some(arr),
        caveats: vec![],
    })
}

/// `F` and `det[[1,1,1],[u0 y z, u1 x z, u2 x y],[Fx,Fy,Fz]]`.
pub fn variety_critical_system(c: &PlaneCurve, u: &[u64]) -> Result<[MPoly; 2], CurveError> {
    if u.len() != 3 {
        return Err(CurveError::BadCounts);
    }
    let ctx = c.ctx();
    let v: Vec<MPoly> = (0..3).map(|i| MPoly::var(ctx, c.var(i))).collect::<Result<_, _>>()?;
    let one = MPoly::one(ctx);
    let mid = [
        (&v[1] * &v[2]).scale(&rat(u[0] as i64)),
        (&v[0] * &v[2]).scale(&rat(u[1] as i64)),
        (&v[0] * &v[1]).scale(&rat(u[2] as i64)),
    ];
    let parts = c.partials()?;
    let rows = vec![vec![one.clone(), one.clone(), one], mid.to_vec(), parts.to_vec()];
    let det = determinant_fraction_free(&PolyMatrix::from_rows(rows)?)?;
    Ok([c.f.clone(), det])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarietyCount {
    pub count: usize,
    pub points: Vec<CriticalPoint>,
    pub discarded_on_h: usize,
    pub discarded_singular: usize,
    /// Points within ten times a discard threshold.
    pub flags: Vec<String>,
}

/// Critical points off H of the likelihood restricted to the curve.
pub fn count_critical_points_variety(
    c: &PlaneCurve,
    u: &[u64],
    tol: &Tolerances,
) -> Result<VarietyCount, CurveError> {
    if u.len() != 3 || u.contains(&0) {
        return Err(CurveError::BadCounts);
    }
    if is_non_reduced(c)? {
        return Err(CurveError::Degenerate("non-reduced curve".to_string()));
    }
    let singular = match smoothness_check(c, tol)? {
        Smoothness::Singular { .. } => singular_points(c, tol)?,
        _ => vec![],
    };
    let [f, det] = variety_critical_system(c, u)?;
    let (xn, yn, zn) = (c.var(0).to_string(), c.var(1).to_string(), c.var(2).to_string());
    let chart = [(zn.as_str(), Binding::from(1))];
    let f1 = f.substitute(&chart)?;
    let d1 = det.substitute(&chart)?;
    if d1.is_zero() {
        return Err(CurveError::Degenerate("determinant vanishes on the curve chart".to_string()));
    }
    let r = resultant(&f1, &d1, &yn)?;
    if r.is_zero() {
        return Err(CurveError::Degenerate("curve and determinant share a component".to_string()));
    }
    let ix = f1.ctx().index_of(&xn).unwrap();
    let iy = f1.ctx().index_of(&yn).unwrap();
    let at = |x: Complex64, y: Complex64| {
        let mut v = vec![Complex64::zero(); 2];
        v[ix] = x;
        v[iy] = y;
        v
    };
    let sys = [f1.clone(), d1.clone()];
    let jac = [
        [f1.partial_derivative(&xn)?, f1.partial_derivative(&yn)?],
        [d1.partial_derivative(&xn)?, d1.partial_derivative(&yn)?],
    ];
    let xs: Vec<Complex64> = if r.degree_in(&xn)? == 0 {
        vec![]
    } else {
        uni_roots(&UniPoly::from_mpoly(&r, &xn)?, tol)?.into_iter().map(|c| c.value).collect()
    };
    let fcoef = f1.coefficients_in(&yn)?;
    let mut candidates: Vec<[Complex64; 3]> = Vec::new();
    for x in xs {
        let coeffs: Vec<Complex64> = fcoef.iter().map(|q| q.eval_slice(&at(x, Complex64::zero()))).collect();
        for y in roots_of_numeric(&coeffs, tol)? {
            if d1.scaled_residual(&at(x, y)) > 1e-4 {
                continue;
            }
            let (x, y) = newton_pair(&sys, &jac, x, y, &at);
            candidates.push([x, y, Complex64::new(1.0, 0.0)]);
        }
    }

    let mut out = VarietyCount {
        count: 0,
        points: vec![],
        discarded_on_h: 0,
        discarded_singular: 0,
        flags: vec![],
    };
    let near = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    let on_h_tol = tol.residual;
    for p in candidates {
        let l = p[0] + p[1] + p[2];
        let scale = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if l.norm() < on_h_tol * scale {
            out.discarded_on_h += 1;
            continue;
        }
        let q: Vec<Complex64> = p.iter().map(|z| z / l).collect();
        let qmax = q.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let min_coord = q.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min) / qmax;
        let lrel = l.norm() / scale;
        if min_coord < on_h_tol {
            out.discarded_on_h += 1;
            continue;
        }
        if min_coord < 10.0 * on_h_tol || lrel < 10.0 * on_h_tol {
            out.flags.push(format!("point {q:?} lies within 10x of the H threshold"));
        }
        if let Some(dist) = singular.iter().map(|s| near(&q, s)).min_by(f64::total_cmp) {
            if dist < tol.cluster {
                out.discarded_singular += 1;
                continue;
            }
            if dist < 10.0 * tol.cluster {
                out.flags.push(format!("point {q:?} lies within 10x of a singular witness"));
            }
        }
        if let Some(dist) = out.points.iter().map(|p| near(&q, &p.coordinates)).min_by(f64::total_cmp) {
            if dist < tol.cluster {
                continue;
            }
            if dist < 10.0 * tol.cluster {
                out.flags.push(format!("point {q:?} lies within 10x of the clustering radius of another"));
            }
        }
        let vals = [q[0], q[1], q[2]];
        let residuals = vec![f.scaled_residual(&vals), det.scaled_residual(&vals)];
        out.points.push(CriticalPoint::new(q, residuals));
    }
    out.count = out.points.len();
    Ok(out)
}

/// Normalized singular points (coordinates scaled to sum 1 when possible).
fn singular_points(c: &PlaneCurve, tol: &Tolerances) -> Result<Vec<Vec<Complex64>>, CurveError> {
    let mut pts: Vec<Vec<Complex64>> = Vec::new();
    for k in 0..3 {
        for w in singular_patch(c, k, tol)?.witnesses {
            let l = w[0] + w[1] + w[2];
            let q: Vec<Complex64> = if l.norm() > 1e-12 {
                w.iter().map(|z| z / l).collect()
            } else {
                normalize_projective(&w).to_vec()
            };
            pts.push(q);
        }
    }
    Ok(pts)
}
