//! Simultaneous root finding (Aberth–Ehrlich) for univariate polynomials.

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::{rat_to_f64, MPoly, PolyError, UniPoly};

use super::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    Constant,
    #[error("no convergence after {iterations} iterations; residuals {residuals:?}")]
    NoConvergence { iterations: usize, residuals: Vec<f64> },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Horner evaluation of `p`, `p'` and the magnitude scale `sum |a_i| |z|^i`.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let r = z.norm();
    for a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        scale = scale * r + a.norm();
    }
    (p, dp, scale)
}

pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _, s) = horner(coeffs, z);
    if s == 0.0 {
        0.0
    } else {
        p.norm() / s
    }
}

/// All roots of `sum coeffs[i] z^i` (ascending order), one per degree.
pub fn aberth(coeffs: &[Complex64], tol: &Tolerances) -> Result<Vec<Complex64>, RootError> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|a| *a == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    if c.is_empty() {
        return Err(RootError::ZeroPolynomial);
    }
    if c.len() == 1 {
        return Err(RootError::Constant);
    }
    // exact zero roots
    let v = c.iter().take_while(|a| **a == Complex64::new(0.0, 0.0)).count();
    if v > 0 {
        let mut rest = if c.len() - v > 1 { aberth(&c[v..], tol)? } else { Vec::new() };
        rest.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), v));
        return Ok(rest);
    }
    let n = c.len() - 1;
    let lead = c[n];
    for a in c.iter_mut() {
        *a /= lead;
    }
    if n == 1 {
        return Ok(vec![-c[0]]);
    }
    // Cauchy bound
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let offset = 0.4;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + offset;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..tol.max_iter {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp, s) = horner(&c, z[k]);
            if s == 0.0 || p.norm() / s < tol.convergence {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let mut repel = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 0.0 {
                        repel += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repel);
            if w.is_finite() {
                z[k] -= w;
            } else {
                // derivative vanished; nudge off the critical point
                z[k] += Complex64::new(tol.cluster, tol.cluster);
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    // final sweep
    let residuals: Vec<f64> = z.iter().map(|&r| relative_residual(&c, r)).collect();
    if residuals.iter().all(|&r| r < tol.convergence) {
        return Ok(z);
    }
    Err(RootError::NoConvergence {
        iterations: tol.max_iter,
        residuals,
    })
}

/// Merge roots closer than `tol` into clusters with summed multiplicity.
pub fn cluster_roots(roots: &[(Complex64, usize)], tol: f64) -> Vec<RootCluster> {
    let mut out: Vec<(Complex64, usize, usize)> = Vec::new(); // sum, count, multiplicity
    for &(r, m) in roots {
        match out
            .iter_mut()
            .find(|(sum, cnt, _)| (*sum / *cnt as f64 - r).norm() < tol)
        {
            Some(c) => {
                c.0 += r;
                c.1 += 1;
                c.2 += m;
            }
            None => out.push((r, 1, m)),
        }
    }
    let mut clusters: Vec<RootCluster> = out
        .into_iter()
        .map(|(s, c, m)| RootCluster {
            value: s / c as f64,
            multiplicity: m,
        })
        .collect();
    clusters.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    clusters
}

/// Roots of a polynomial with floating complex coefficients, clustered.
pub fn float_roots(coeffs: &[Complex64], tol: &Tolerances) -> Result<Vec<RootCluster>, RootError> {
    let roots = aberth(coeffs, tol)?;
    let tagged: Vec<(Complex64, usize)> = roots.into_iter().map(|r| (r, 1)).collect();
    Ok(cluster_roots(&tagged, tol.cluster))
}

pub fn uni_to_complex(p: &UniPoly) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| Complex64::new(rat_to_f64(c), 0.0)).collect()
}

/// Roots of an exact univariate polynomial with multiplicities.
///
/// Zero roots come from the valuation and multiplicities from the exact
/// squarefree decomposition, so only simple roots are found numerically.
pub fn uni_roots(f: &UniPoly, tol: &Tolerances) -> Result<Vec<RootCluster>, RootError> {
    let deg = f.degree().ok_or(RootError::ZeroPolynomial)?;
    if deg == 0 {
        return Err(RootError::Constant);
    }
    let v = f.valuation();
    let stripped = UniPoly::new(f.coeffs()[v..].to_vec());
    let mut tagged: Vec<(Complex64, usize)> = Vec::new();
    if v > 0 {
        tagged.push((Complex64::new(0.0, 0.0), v));
    }
    if stripped.degree().unwrap_or(0) > 0 {
        for (i, factor) in stripped.squarefree_factors().iter().enumerate() {
            if factor.degree().unwrap_or(0) == 0 {
                continue;
            }
            for r in aberth(&uni_to_complex(&factor.monic()), tol)? {
                tagged.push((r, i + 1));
            }
        }
    }
    Ok(cluster_roots(&tagged, tol.cluster))
}

/// Roots of `f`, which must be univariate in `var`.
pub fn complex_roots(f: &MPoly, var: &str, tol: &Tolerances) -> Result<Vec<RootCluster>, RootError> {
    uni_roots(&UniPoly::from_mpoly(f, var)?, tol)
}

/// Real roots (imaginary part below `imag_tol`) of an exact polynomial.
pub fn real_roots(f: &UniPoly, tol: &Tolerances, imag_tol: f64) -> Result<Vec<f64>, RootError> {
    Ok(uni_roots(f, tol)?
        .into_iter()
        .filter(|c| c.value.im.abs() < imag_tol)
        .map(|c| c.value.re)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarContext;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn simple_quadratic() {
        let r = uni_roots(&UniPoly::from_ints(&[-1, 0, 1]), &tol()).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((r[1].value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cubic_with_one_real_root() {
        let c = VarContext::unknowns(&["x"]).unwrap();
        let f = MPoly::parse(&c, "x^3 + x^2 - 1").unwrap();
        let r = complex_roots(&f, "x", &tol()).unwrap();
        assert_eq!(r.len(), 3);
        let real: Vec<_> = r.iter().filter(|c| c.value.im.abs() < 1e-9).collect();
        assert_eq!(real.len(), 1);
        // bisection on [0.7, 0.8]
        let (mut lo, mut hi) = (0.7f64, 0.8f64);
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if mid * mid * mid + mid * mid - 1.0 > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!((real[0].value.re - lo).abs() < 1e-9);
        assert!((lo - 0.754877666).abs() < 1e-9);
    }

    #[test]
    fn multiplicity_cluster() {
        let r = uni_roots(&UniPoly::from_ints(&[1, -2, 1]), &tol()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert!((r[0].value.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_roots_and_totals() {
        // x^2 (x - 2)^3 (x^2 + 1)
        let f = UniPoly::from_ints(&[0, 0, -8, 12, -6, 1])
            .mul(&UniPoly::from_ints(&[1, 0, 1]));
        let r = uni_roots(&f, &tol()).unwrap();
        assert_eq!(r.iter().map(|c| c.multiplicity).sum::<usize>(), 7);
        let zero = r.iter().find(|c| c.value.norm() < 1e-12).unwrap();
        assert_eq!(zero.multiplicity, 2);
        let two = r.iter().find(|c| (c.value.re - 2.0).abs() < 1e-9).unwrap();
        assert_eq!(two.multiplicity, 3);
    }

    #[test]
    fn float_coefficients() {
        // (z - i)(z + 2)
        let c = [Complex64::new(0.0, -2.0), Complex64::new(2.0, -1.0), Complex64::new(1.0, 0.0)];
        let r = float_roots(&c, &tol()).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().any(|c| (c.value - Complex64::new(0.0, 1.0)).norm() < 1e-12));
        assert!(r.iter().any(|c| (c.value - Complex64::new(-2.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(uni_roots(&UniPoly::zero(), &tol()).unwrap_err(), RootError::ZeroPolynomial);
        assert_eq!(uni_roots(&UniPoly::from_ints(&[3]), &tol()).unwrap_err(), RootError::Constant);
    }
}
