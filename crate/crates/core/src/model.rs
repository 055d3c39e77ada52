//! Algebraic statistical model of a single equilibrium reaction.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{Binding, MPoly, Monomial, PolyError, Role, VarContext};
use crate::reaction::{Arrow, Reaction};

pub const KE_SYMBOL: &str = "Ke";
pub const RADICAL_SYMBOL: &str = "s";

pub const SUPPORTED_SHAPES: &str = "aA <-> bB; nA + mB <-> pC; A1 + ... + An <-> B1 + ... + Bn; A + B <-> C + D";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("reaction must use the equilibrium arrow `<->`, found `{0}`")]
    NotEquilibrium(&'static str),
    #[error("reaction needs at least two species")]
    TooFewSpecies,
    #[error("unsupported reaction shape `{reaction}`; supported shapes: {SUPPORTED_SHAPES}")]
    UnsupportedShape { reaction: String },
    #[error("exponent matrix has rank below {rows}")]
    RankDeficient { rows: usize },
    #[error("invalid equilibrium constant `{0}`")]
    InvalidConstant(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Equilibrium constant: an exact rational or the generic symbol `Ke`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EquilibriumConstant {
    Generic,
    Rational(BigRational),
}

impl EquilibriumConstant {
    pub fn int(n: i64) -> Self {
        Self::Rational(BigRational::from_integer(n.into()))
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Self::Generic)
    }

    pub fn value(&self) -> Option<&BigRational> {
        match self {
            Self::Generic => None,
            Self::Rational(q) => Some(q),
        }
    }

    /// False for rational values `<= 0`.
    pub fn positivity_flag(&self) -> bool {
        match self {
            Self::Generic => true,
            Self::Rational(q) => q.is_positive(),
        }
    }
}

impl fmt::Display for EquilibriumConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Generic => f.write_str("generic"),
            Self::Rational(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for EquilibriumConstant {
    type Err = ModelError;

    /// Accepts `generic`, integers, fractions `p/q` and finite decimals.
    fn from_str(s: &str) -> Result<Self, ModelError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("generic") {
            return Ok(Self::Generic);
        }
        parse_rational(t)
            .map(Self::Rational)
            .ok_or_else(|| ModelError::InvalidConstant(s.to_string()))
    }
}

pub fn parse_rational(t: &str) -> Option<BigRational> {
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = format!("{}{frac}", if digits.is_empty() { "0" } else { digits }).parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    let q: BigRational = t.parse().ok()?;
    Some(q)
}

/// Shapes for which a monomial parameterization is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    /// `alpha A <-> beta B`
    Single { alpha: u32, beta: u32 },
    /// `nA + mB <-> pC`
    TwoToOne { n: u32, m: u32, p: u32 },
    /// `A1 + ... + An <-> B1 + ... + Bn`, `n >= 3`
    Chain { n: u32 },
    /// `A + B <-> C + D`
    Segre,
}

pub fn classify_shape(r: &Reaction) -> Result<Shape, ModelError> {
    let coeffs = |side: &[crate::reaction::SpeciesTerm]| side.iter().map(|t| t.coefficient).collect::<Vec<_>>();
    let (lhs, rhs) = (coeffs(&r.reactants), coeffs(&r.products));
    let all_one = lhs.iter().chain(&rhs).all(|&c| c == 1);
    match (lhs.as_slice(), rhs.as_slice()) {
        ([a], [b]) => Ok(Shape::Single { alpha: *a, beta: *b }),
        ([n, m], [p]) => Ok(Shape::TwoToOne { n: *n, m: *m, p: *p }),
        ([_, _], [_, _]) if all_one => Ok(Shape::Segre),
        (l, r2) if l.len() == r2.len() && l.len() >= 3 && all_one => Ok(Shape::Chain { n: l.len() as u32 }),
        _ => Err(ModelError::UnsupportedShape { reaction: r.to_string() }),
    }
}

#[derive(Debug, Clone)]
pub struct EquilibriumModel {
    pub reaction: Reaction,
    pub ke: EquilibriumConstant,
    /// Normalized frequency variable per species, reactants first.
    pub species_vars: Vec<String>,
    pub ctx: Arc<VarContext>,
    pub f_affine: MPoly,
    pub constraint: MPoly,
    pub f_hom: MPoly,
    pub warnings: Vec<String>,
}

pub const NORMALIZATION_NOTE: &str = "total concentration c > 0 divided out; frequencies sum to 1";

/// Variable names: `x, y, z, t` up to four species, else `x1..xN`.
pub fn species_var_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "t"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn ke_poly(ctx: &Arc<VarContext>, ke: &EquilibriumConstant) -> MPoly {
    match ke {
        EquilibriumConstant::Generic => MPoly::var(ctx, KE_SYMBOL).expect("context carries Ke"),
        EquilibriumConstant::Rational(q) => MPoly::constant(ctx, q.clone()),
    }
}

fn monomial_of(ctx: &Arc<VarContext>, offset: usize, exps: &[u32]) -> MPoly {
    let mut m = vec![0; ctx.len()];
    m[offset..offset + exps.len()].copy_from_slice(exps);
    MPoly::monomial(ctx, Monomial(m), BigRational::one())
}

pub fn build_model(r: &Reaction, ke: &EquilibriumConstant) -> Result<EquilibriumModel, ModelError> {
    if r.arrow != Arrow::Equilibrium {
        return Err(ModelError::NotEquilibrium(r.arrow.as_str()));
    }
    let n = r.species_count();
    if n < 2 {
        return Err(ModelError::TooFewSpecies);
    }
    let species_vars = species_var_names(n);
    let mut decl: Vec<(String, Role)> = Vec::new();
    if ke.is_generic() {
        decl.push((KE_SYMBOL.to_string(), Role::Constant));
    }
    let offset = decl.len();
    decl.extend(species_vars.iter().map(|v| (v.clone(), Role::Unknown)));
    let ctx = VarContext::new(decl)?;

    let nr = r.reactants.len();
    let mut lhs = vec![0u32; n];
    let mut rhs = vec![0u32; n];
    for (i, t) in r.reactants.iter().enumerate() {
        lhs[i] = t.coefficient;
    }
    for (j, t) in r.products.iter().enumerate() {
        rhs[nr + j] = t.coefficient;
    }
    let reactant_mono = monomial_of(&ctx, offset, &lhs);
    let product_mono = monomial_of(&ctx, offset, &rhs);
    let k = ke_poly(&ctx, ke);
    let f_affine = &(&k * &reactant_mono) - &product_mono;

    let mut l = MPoly::zero(&ctx);
    for v in &species_vars {
        l = &l + &MPoly::var(&ctx, v)?;
    }
    let constraint = &l - &MPoly::one(&ctx);

    let (da, db) = (r.order(), r.products.iter().map(|t| t.coefficient).sum::<u32>());
    let d = da.max(db);
    let f_hom = &(&(&k * &reactant_mono) * &l.pow(d - da)) - &(&product_mono * &l.pow(d - db));

    let mut warnings = Vec::new();
    if !ke.positivity_flag() {
        warnings.push(format!(
            "nonphysical equilibrium constant Ke = {ke}: physical constants are positive (Arrhenius form); computing anyway"
        ));
    }
    Ok(EquilibriumModel {
        reaction: r.clone(),
        ke: ke.clone(),
        species_vars,
        ctx,
        f_affine,
        constraint,
        f_hom,
        warnings,
    })
}

impl EquilibriumModel {
    pub fn shape(&self) -> Result<Shape, ModelError> {
        classify_shape(&self.reaction)
    }

    pub fn species_count(&self) -> usize {
        self.species_vars.len()
    }

    /// Degree of `f_hom`.
    pub fn degree(&self) -> u32 {
        let vars: Vec<&str> = self.species_vars.iter().map(String::as_str).collect();
        self.f_hom.degree_in_vars(&vars).unwrap_or(0)
    }

    /// The linear form `L`, sum of the species variables.
    pub fn linear_form(&self) -> MPoly {
        &self.constraint + &MPoly::one(&self.ctx)
    }

    /// Canonical text dump, one item per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("reaction: {}\n", self.reaction));
        out.push_str(&format!("ke: {}\n", self.ke));
        let names: Vec<String> = self
            .species_vars
            .iter()
            .zip(self.reaction.species())
            .map(|(v, s)| format!("{v}={s}"))
            .collect();
        out.push_str(&format!("species: {}\n", names.join(", ")));
        out.push_str(&format!("F_affine: {}\n", self.f_affine));
        out.push_str(&format!("constraint: {}\n", self.constraint));
        out.push_str(&format!("F_hom: {}\n", self.f_hom));
        out.push_str(&format!("normalization: {NORMALIZATION_NOTE}\n"));
        match build_parameterization(self) {
            Ok(Some(map)) => {
                out.push_str(&format!("map: {}\n", map));
                if let Some(rad) = &map.radical {
                    out.push_str(&format!("relation: {}^{} = {}\n", rad.symbol, rad.power, rad.value));
                }
            }
            Ok(None) => out.push_str("map: closed form (Segre product P1 x P1), no parameterization\n"),
            Err(e) => out.push_str(&format!("map: {e}\n")),
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

/// `symbol^power = value`
#[derive(Debug, Clone, PartialEq)]
pub struct Radical {
    pub symbol: String,
    pub power: u32,
    pub value: MPoly,
}

#[derive(Debug, Clone)]
pub struct MonomialMap {
    pub ctx: Arc<VarContext>,
    pub param_vars: Vec<String>,
    /// `exponents[i][j]`: exponent of parameter `i` in image `j`.
    pub exponents: Vec<Vec<u32>>,
    pub images: Vec<MPoly>,
    pub radical: Option<Radical>,
    /// False when the map has fewer parameters than the model dimension.
    pub covers_model: bool,
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images.iter().map(|p| p.to_string()).collect();
        write!(f, "({}) |-> ({})", self.param_vars.join(", "), imgs.join(", "))
    }
}

/// Exact rational `k`-th root, real and nonnegative for even `k`.
pub fn rational_root(q: &BigRational, k: u32) -> Option<BigRational> {
    if k == 1 {
        return Some(q.clone());
    }
    if q.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let a = n.abs();
        let r = a.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == a).then(|| if n.is_negative() { -r } else { r })
    };
    Some(BigRational::new(root_int(q.numer())?, root_int(q.denom())?))
}

/// Monomial parameterization for shapes (I)-(III); `None` for the Segre shape.
pub fn build_parameterization(m: &EquilibriumModel) -> Result<Option<MonomialMap>, ModelError> {
    let shape = m.shape()?;
    let (nparams, exponents, radical_cols, k, dim): (usize, Vec<Vec<u32>>, Vec<bool>, u32, usize) = match shape {
        Shape::Segre => return Ok(None),
        Shape::Single { alpha, beta } => {
            let g = alpha.gcd(&beta);
            (1, vec![vec![beta / g, alpha / g]], vec![false, true], beta, 1)
        }
        Shape::TwoToOne { n, m: mm, p } => (2, vec![vec![p, 0, n], vec![0, p, mm]], vec![false, false, true], p, 2),
        Shape::Chain { n } => chain_layout(n),
    };
    assemble_map(m, nparams, exponents, radical_cols, k, dim).map(Some)
}

fn chain_layout(n: u32) -> (usize, Vec<Vec<u32>>, Vec<bool>, u32, usize) {
    let n = n as usize;
    let mut cols = vec![false; n];
    cols.extend(vec![true; n]);
    (1, vec![vec![1; 2 * n]], cols, n as u32, 2 * n - 1)
}

/// One-parameter map `t0 |-> (t0, .., s t0, ..)` for any balanced reaction
/// with unit coefficients, including the two-by-two case.
pub fn chain_parameterization(m: &EquilibriumModel) -> Result<Option<MonomialMap>, ModelError> {
    let r = &m.reaction;
    let unit = r.reactants.iter().chain(&r.products).all(|t| t.coefficient == 1);
    if !unit || r.reactants.len() != r.products.len() || r.reactants.len() < 2 {
        return Ok(None);
    }
    let (nparams, exponents, radical_cols, k, dim) = chain_layout(r.reactants.len() as u32);
    assemble_map(m, nparams, exponents, radical_cols, k, dim).map(Some)
}

fn assemble_map(
    m: &EquilibriumModel,
    nparams: usize,
    exponents: Vec<Vec<u32>>,
    radical_cols: Vec<bool>,
    k: u32,
    dim: usize,
) -> Result<MonomialMap, ModelError> {
    let param_vars: Vec<String> = (0..nparams).map(|i| format!("t{i}")).collect();

    // radical coefficient
    enum Coef {
        Exact(BigRational),
        Ke,
        Symbol,
    }
    let coef = match (&m.ke, k) {
        (EquilibriumConstant::Generic, 1) => Coef::Ke,
        (EquilibriumConstant::Generic, _) => Coef::Symbol,
        (EquilibriumConstant::Rational(q), _) => match rational_root(q, k) {
            Some(r) => Coef::Exact(r),
            None => Coef::Symbol,
        },
    };
    let mut decl: Vec<(String, Role)> = Vec::new();
    if m.ke.is_generic() {
        decl.push((KE_SYMBOL.to_string(), Role::Constant));
    }
    if matches!(coef, Coef::Symbol) {
        decl.push((RADICAL_SYMBOL.to_string(), Role::Constant));
    }
    let offset = decl.len();
    decl.extend(param_vars.iter().map(|v| (v.clone(), Role::Unknown)));
    let ctx = VarContext::new(decl)?;

    let coef_poly = match &coef {
        Coef::Exact(r) => MPoly::constant(&ctx, r.clone()),
        Coef::Ke => MPoly::var(&ctx, KE_SYMBOL)?,
        Coef::Symbol => MPoly::var(&ctx, RADICAL_SYMBOL)?,
    };
    let ncols = exponents[0].len();
    let images: Vec<MPoly> = (0..ncols)
        .map(|j| {
            let col: Vec<u32> = exponents.iter().map(|row| row[j]).collect();
            let mono = monomial_of(&ctx, offset, &col);
            if radical_cols[j] {
                &coef_poly * &mono
            } else {
                mono
            }
        })
        .collect();
    let radical = matches!(coef, Coef::Symbol).then(|| Radical {
        symbol: RADICAL_SYMBOL.to_string(),
        power: k,
        value: ke_poly(&ctx, &m.ke),
    });
    Ok(MonomialMap {
        ctx,
        param_vars,
        exponents,
        images,
        radical,
        covers_model: nparams >= dim,
    })
}

impl MonomialMap {
    /// Reduce `p` modulo the radical relation, if any.
    pub fn reduce(&self, p: &MPoly) -> Result<MPoly, PolyError> {
        match &self.radical {
            Some(r) => p.reduce_power(&r.symbol, r.power, &r.value.embed(p.ctx())?),
            None => Ok(p.clone()),
        }
    }

    /// Pull `f` (a polynomial in the model variables) back through the map.
    pub fn pull_back(&self, model: &EquilibriumModel, f: &MPoly) -> Result<MPoly, PolyError> {
        let bindings: Vec<(&str, Binding)> = model
            .species_vars
            .iter()
            .zip(&self.images)
            .map(|(v, img)| (v.as_str(), Binding::Poly(img.clone())))
            .collect();
        self.reduce(&f.substitute(&bindings)?)
    }

    /// True when `F_affine` pulls back to zero modulo the radical relation.
    pub fn composition_check(&self, model: &EquilibriumModel) -> Result<bool, PolyError> {
        Ok(self.pull_back(model, &model.f_affine)?.is_zero())
    }

    pub fn param_count(&self) -> usize {
        self.param_vars.len()
    }
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det_i128(&minor)
            })
            .sum(),
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// All maximal minors of an integer matrix with rows <= cols.
pub fn maximal_minors(exponents: &[Vec<u32>]) -> Vec<i128> {
    let r = exponents.len();
    let c = exponents.first().map_or(0, Vec::len);
    combinations(c, r)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<i128>> = exponents
                .iter()
                .map(|row| cols.iter().map(|&j| row[j] as i128).collect())
                .collect();
            det_i128(&sub)
        })
        .collect()
}

/// Size of the generic torus fiber: gcd of the maximal minors.
pub fn fiber_degree(map: &MonomialMap) -> Result<u64, ModelError> {
    let g = maximal_minors(&map.exponents)
        .into_iter()
        .fold(0i128, |acc, d| acc.gcd(&d));
    if g.is_zero() {
        return Err(ModelError::RankDeficient { rows: map.exponents.len() });
    }
    Ok(g as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeClassification {
    /// `None` when generic.
    pub degenerate: Option<String>,
    pub nonphysical_warning: bool,
}

impl KeClassification {
    pub fn is_generic(&self) -> bool {
        self.degenerate.is_none()
    }

    pub fn label(&self) -> &'static str {
        if self.is_generic() {
            "generic"
        } else {
            "degenerate"
        }
    }
}

impl fmt::Display for KeClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.degenerate {
            None => f.write_str("generic")?,
            Some(d) => write!(f, "degenerate ({d})")?,
        }
        if self.nonphysical_warning {
            f.write_str(", nonphysical")?;
        }
        Ok(())
    }
}

/// Static classification; count drops are merged in by the engine.
pub fn classify_ke(m: &EquilibriumModel) -> KeClassification {
    let degenerate = match &m.ke {
        EquilibriumConstant::Rational(q) if q.is_zero() => {
            Some("Ke = 0 removes the reactant monomial; the model collapses to a coordinate subvariety".to_string())
        }
        _ => None,
    };
    KeClassification {
        degenerate,
        nonphysical_warning: !m.ke.positivity_flag(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reaction::parse_reaction;

    fn model(r: &str, ke: &str) -> EquilibriumModel {
        build_model(&parse_reaction(r).unwrap(), &ke.parse().unwrap()).unwrap()
    }

    #[test]
    fn equilibrium_polynomials() {
        assert_eq!(model("A <-> B", "generic").f_affine.to_string(), "Ke*x - y");
        assert_eq!(model("A + B <-> 2C", "generic").f_affine.to_string(), "Ke*x*y - z^2");
        assert_eq!(model("A + B <-> C + D", "generic").f_affine.to_string(), "Ke*x*y - z*t");
        let m = model("A + B <-> 3C", "generic");
        assert_eq!(m.f_affine.to_string(), "Ke*x*y - z^3");
        let expected = MPoly::parse(&m.ctx, "Ke*x*y*(x + y + z) - z^3").unwrap();
        assert_eq!(m.f_hom, expected);
        assert_eq!(m.constraint.to_string(), "x + y + z - 1");
        assert_eq!(m.degree(), 3);
    }

    #[test]
    fn rejects_non_equilibrium() {
        let r = parse_reaction("A -> B").unwrap();
        assert!(matches!(
            build_model(&r, &EquilibriumConstant::Generic),
            Err(ModelError::NotEquilibrium("->"))
        ));
    }

    #[test]
    fn flags_nonphysical() {
        let m = model("A <-> B", "-1");
        assert_eq!(m.warnings.len(), 1);
        let c = classify_ke(&m);
        assert!(c.nonphysical_warning && c.is_generic());
        let c = classify_ke(&model("A + B <-> 2C", "0"));
        assert!(!c.is_generic() && c.nonphysical_warning);
        assert!(classify_ke(&model("A + B <-> 2C", "7")).is_generic());
    }

    #[test]
    fn constants_parse() {
        assert_eq!("generic".parse::<EquilibriumConstant>().unwrap(), EquilibriumConstant::Generic);
        assert_eq!("0.5".parse::<EquilibriumConstant>().unwrap(), "1/2".parse().unwrap());
        assert_eq!("-1.25".parse::<EquilibriumConstant>().unwrap(), "-5/4".parse().unwrap());
        assert!("x".parse::<EquilibriumConstant>().is_err());
        assert!("1.".parse::<EquilibriumConstant>().is_err());
    }

    #[test]
    fn parameterizations() {
        let m = model("A + B <-> 3C", "1");
        let map = build_parameterization(&m).unwrap().unwrap();
        assert_eq!(map.to_string(), "(t0, t1) |-> (t0^3, t1^3, t0*t1)");
        assert_eq!(fiber_degree(&map).unwrap(), 3);

        let m = model("N2 + 3H2 <-> 2NH3", "generic");
        let map = build_parameterization(&m).unwrap().unwrap();
        assert_eq!(map.to_string(), "(t0, t1) |-> (t0^2, t1^2, s*t0*t1^3)");
        let rad = map.radical.as_ref().unwrap();
        assert_eq!((rad.power, rad.value.to_string()), (2, "Ke".to_string()));
        assert!(map.composition_check(&m).unwrap());
        assert_eq!(fiber_degree(&map).unwrap(), 2);

        let m = model("3A <-> 3B", "generic");
        let map = build_parameterization(&m).unwrap().unwrap();
        assert_eq!(map.to_string(), "(t0) |-> (t0, s*t0)");
        assert_eq!(map.radical.as_ref().unwrap().power, 3);
        assert_eq!(fiber_degree(&map).unwrap(), 1);

        let m = model("A + B <-> 2C", "4");
        let map = build_parameterization(&m).unwrap().unwrap();
        assert_eq!(map.to_string(), "(t0, t1) |-> (t0^2, t1^2, 2*t0*t1)");
        assert!(map.radical.is_none());
        assert!(map.composition_check(&m).unwrap());

        let m = model("2A + 2B <-> C", "1");
        let map = build_parameterization(&m).unwrap().unwrap();
        assert_eq!(map.to_string(), "(t0, t1) |-> (t0, t1, t0^2*t1^2)");
        assert_eq!(fiber_degree(&map).unwrap(), 1);

        let m = model("A <-> B", "generic");
        let map = build_parameterization(&m).unwrap().unwrap();
        assert_eq!(map.to_string(), "(t0) |-> (t0, Ke*t0)");

        assert!(build_parameterization(&model("A + B <-> C + D", "generic")).unwrap().is_none());
        let m = model("A1 + A2 + A3 <-> B1 + B2 + B3", "2");
        let map = build_parameterization(&m).unwrap().unwrap();
        assert!(!map.covers_model);
        assert!(map.composition_check(&m).unwrap());
    }

    #[test]
    fn unsupported_shapes() {
        for r in ["2A + B <-> C + D", "C <-> A + B", "A + B + C <-> D", "A + 2B + C <-> D + E + F"] {
            let m = model(r, "generic");
            assert!(matches!(m.shape(), Err(ModelError::UnsupportedShape { .. })), "{r}");
        }
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&"9/4".parse().unwrap(), 2), Some("3/2".parse().unwrap()));
        assert_eq!(rational_root(&"-8".parse().unwrap(), 3), Some("-2".parse().unwrap()));
        assert_eq!(rational_root(&"-4".parse().unwrap(), 2), None);
        assert_eq!(rational_root(&"2".parse().unwrap(), 2), None);
        assert_eq!(rational_root(&"0".parse().unwrap(), 2), Some(BigRational::zero()));
    }

    #[test]
    fn fiber_degree_examples() {
        let fd = |e: Vec<Vec<u32>>| maximal_minors(&e).into_iter().fold(0i128, |a, d| a.gcd(&d));
        assert_eq!(fd(vec![vec![3, 0, 1], vec![0, 3, 1]]), 3);
        assert_eq!(fd(vec![vec![2, 0, 2], vec![0, 2, 2]]), 4);
        assert_eq!(fd(vec![vec![1, 1]]), 1);
        assert_eq!(fd(vec![vec![1, 1, 1], vec![2, 2, 2]]), 0);
    }

    #[test]
    fn dump_lists_everything() {
        let d = model("A + B <-> 2C", "generic").dump();
        assert!(d.contains("F_affine: Ke*x*y - z^2"));
        assert!(d.contains("relation: s^2 = Ke"));
        assert!(d.contains("species: x=A, y=B, z=C"));
    }
}
