//! Maximum likelihood estimates on equilibrium models.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::curve::{count_critical_points_variety, variety_critical_system, CurveError, PlaneCurve};
use crate::engine::TOOL_VERSION;
use crate::model::{EquilibriumModel, ModelError, Shape};
use crate::poly::{Binding, MPoly, PolyError, UniPoly, VarContext};

use super::{uni_roots, CriticalPoint, PointClass, RootError, Tolerances};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MleError {
    #[error("counts must be positive integers (got {0:?})")]
    ZeroCount(Vec<u64>),
    #[error("expected {expected} counts, got {got}")]
    CountLength { expected: usize, got: usize },
    #[error("maximum likelihood needs an exact positive equilibrium constant")]
    NonPositiveConstant,
    #[error("no positive real critical point among {} candidates", candidates.len())]
    NoPositivePoint { candidates: Vec<CriticalPoint> },
    #[error("likelihood needs strictly positive coordinates")]
    NonPositiveCoordinate,
    #[error("maximum likelihood is not available for this reaction shape")]
    UnsupportedShape,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `sum u_i log p_i - (sum u) log(sum p)`.
pub fn likelihood_value(p: &[f64], u: &[u64]) -> Result<f64, MleError> {
    if p.iter().any(|&x| !(x > 0.0)) {
        return Err(MleError::NonPositiveCoordinate);
    }
    let n: u64 = u.iter().sum();
    let s: f64 = p.iter().sum();
    Ok(p.iter().zip(u).map(|(x, &k)| k as f64 * x.ln()).sum::<f64>() - n as f64 * s.ln())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MLEResult {
    pub optimum: CriticalPoint,
    pub log_likelihood: f64,
    pub all_critical_points: Vec<CriticalPoint>,
    pub observed_ml_count: usize,
    pub caveats: Vec<String>,
}

fn check_inputs(m: &EquilibriumModel, u: &[u64]) -> Result<BigRational, MleError> {
    if u.len() != m.species_count() {
        return Err(MleError::CountLength {
            expected: m.species_count(),
            got: u.len(),
        });
    }
    if u.contains(&0) {
        return Err(MleError::ZeroCount(u.to_vec()));
    }
    match m.ke.value() {
        Some(q) if q.is_positive() => Ok(q.clone()),
        _ => Err(MleError::NonPositiveConstant),
    }
}

fn model_residuals(m: &EquilibriumModel, p: &[Complex64]) -> Vec<f64> {
    vec![m.f_affine.scaled_residual(p), m.constraint.scaled_residual(p)]
}

fn off_h(p: &[Complex64], tol: f64) -> bool {
    let scale = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let sum: Complex64 = p.iter().sum();
    p.iter().all(|z| z.norm() >= tol * scale) && sum.norm() >= tol * scale
}

/// Route by shape and pick the positive critical point of largest likelihood.
pub fn maximize_likelihood(m: &EquilibriumModel, u: &[u64], tol: &Tolerances) -> Result<MLEResult, MleError> {
    let ke = check_inputs(m, u)?;
    let mut caveats = Vec::new();
    let (points, observed) = match m.species_count() {
        2 => two_species(m, tol)?,
        3 => {
            let ctx = VarContext::unknowns(&m.species_vars)?;
            let curve = PlaneCurve::new(m.f_hom.embed(&ctx)?)?;
            let res = count_critical_points_variety(&curve, u, tol)?;
            caveats.extend(res.flags.iter().cloned());
            let pts: Vec<CriticalPoint> = res
                .points
                .into_iter()
                .map(|p| {
                    let mut r = model_residuals(m, &p.coordinates);
                    r.extend(p.residuals);
                    CriticalPoint::new(p.coordinates, r)
                })
                .collect();
            let n = pts.len();
            (pts, n)
        }
        4 if m.shape()? == Shape::Segre => {
            let (pts, n) = segre(m, u, &ke, tol)?;
            if n != 1 {
                caveats.push(format!(
                    "closed-form count for this shape is 1, but the margin equations have {n} solutions off H at Ke = {}",
                    m.ke
                ));
            }
            (pts, n)
        }
        _ => return Err(MleError::UnsupportedShape),
    };
    let mut best: Option<(f64, &CriticalPoint)> = None;
    for p in points.iter().filter(|p| p.classification == PointClass::PositiveRealSimplex) {
        let v = likelihood_value(&p.real(), u)?;
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, p));
        }
    }
    match best {
        Some((v, p)) => Ok(MLEResult {
            optimum: p.clone(),
            log_likelihood: v,
            all_critical_points: points.clone(),
            observed_ml_count: observed,
            caveats,
        }),
        None => Err(MleError::NoPositivePoint { candidates: points }),
    }
}

/// The model is the finite set `F(x, 1 - x) = 0`.
fn two_species(m: &EquilibriumModel, tol: &Tolerances) -> Result<(Vec<CriticalPoint>, usize), MleError> {
    let (xv, yv) = (&m.species_vars[0], &m.species_vars[1]);
    let line = m.ctx.without(&[yv]);
    let one_minus = &MPoly::one(&line) - &MPoly::var(&line, xv)?;
    let f = m.f_affine.substitute(&[(yv, Binding::Poly(one_minus))])?;
    let uni = UniPoly::from_mpoly(&f, xv)?;
    if uni.degree().unwrap_or(0) == 0 {
        return Ok((vec![], 0));
    }
    let mut pts = Vec::new();
    for r in uni_roots(&uni, tol)? {
        let p = vec![r.value, Complex64::new(1.0, 0.0) - r.value];
        let res = model_residuals(m, &p);
        pts.push(CriticalPoint::new(p, res));
    }
    let observed = pts.iter().filter(|p| off_h(&p.coordinates, tol.residual)).count();
    Ok((pts, observed))
}

/// Margins of the layout `[[x, z], [t, y]]`; `x = theta` solves
/// `(K - 1) theta^2 + (K (R2 - C1) + R1 + C1) theta - R1 C1 = 0`.
fn segre(
    m: &EquilibriumModel,
    u: &[u64],
    ke: &BigRational,
    tol: &Tolerances,
) -> Result<(Vec<CriticalPoint>, usize), MleError> {
    let n: u64 = u.iter().sum();
    let q = |a: u64| BigRational::new((a as i64).into(), (n as i64).into());
    let r1 = q(u[0] + u[2]);
    let r2 = q(u[3] + u[1]);
    let c1 = q(u[0] + u[3]);
    let one = BigRational::from_integer(1.into());
    let coeffs = vec![
        -(&r1 * &c1),
        ke * (&r2 - &c1) + &r1 + &c1,
        ke - &one,
    ];
    let uni = UniPoly::new(coeffs);
    let to_c = |r: &BigRational| Complex64::new(crate::poly::rat_to_f64(r), 0.0);
    let thetas: Vec<Complex64> = if uni.degree() == Some(0) || uni.is_zero() {
        vec![]
    } else if uni.coeffs().len() == 2 || uni.coeffs()[2].is_zero() {
        vec![to_c(&(-(&uni.coeffs()[0]) / &uni.coeffs()[1]))]
    } else {
        uni_roots(&uni, tol)?.into_iter().map(|c| c.value).collect()
    };
    let mut pts = Vec::new();
    for th in thetas {
        let x = th;
        let z = to_c(&r1) - th;
        let t = to_c(&c1) - th;
        let y = to_c(&r2) - to_c(&c1) + th;
        let p = vec![x, y, z, t];
        let res = model_residuals(m, &p);
        pts.push(CriticalPoint::new(p, res));
    }
    let observed = pts.iter().filter(|p| off_h(&p.coordinates, tol.residual)).count();
    Ok((pts, observed))
}

/// Critical-point determinant at a point of a three-species model.
pub fn stationarity_residual(m: &EquilibriumModel, u: &[u64], p: &[f64]) -> Result<f64, MleError> {
    let ctx = VarContext::unknowns(&m.species_vars)?;
    let curve = PlaneCurve::new(m.f_hom.embed(&ctx)?)?;
    let [_, det] = variety_critical_system(&curve, u)?;
    let vals: Vec<Complex64> = p.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    Ok(det.eval_slice(&vals).norm())
}

#[derive(Debug, Clone, Serialize)]
pub struct MleReport {
    pub reaction: String,
    pub ke: String,
    pub u: Vec<u64>,
    /// Coordinates with 18 significant digits.
    pub optimum: Vec<String>,
    pub log_likelihood: f64,
    pub observed_ml_count: usize,
    pub residual_max: f64,
    pub caveats: Vec<String>,
    pub tool_version: &'static str,
}

pub fn mle_report(m: &EquilibriumModel, u: &[u64], res: &MLEResult) -> MleReport {
    MleReport {
        reaction: m.reaction.to_string(),
        ke: m.ke.to_string(),
        u: u.to_vec(),
        optimum: res.optimum.real().iter().map(|x| format!("{x:.17e}")).collect(),
        log_likelihood: res.log_likelihood,
        observed_ml_count: res.observed_ml_count,
        residual_max: res.optimum.max_residual(),
        caveats: res.caveats.clone(),
        tool_version: TOOL_VERSION,
    }
}
