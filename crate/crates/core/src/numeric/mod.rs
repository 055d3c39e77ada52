//! Floating-point stages: root finding, critical points, likelihood.

pub mod mle;
pub mod roots;

use num_complex::Complex64;
use serde::Serialize;

use crate::poly::MPoly;

pub use roots::{aberth, complex_roots, float_roots, uni_roots, RootCluster, RootError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative residual at which a root iterate is frozen.
    pub convergence: f64,
    /// Largest acceptable equation residual.
    pub residual: f64,
    /// Root and point clustering radius.
    pub cluster: f64,
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            convergence: 1e-13,
            residual: 1e-9,
            cluster: 1e-7,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    PositiveRealSimplex,
    RealNonpositive,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPoint {
    #[serde(serialize_with = "ser_complex_vec")]
    pub coordinates: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub classification: PointClass,
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

pub const IMAG_TOL: f64 = 1e-9;

pub fn classify_point(p: &[Complex64]) -> PointClass {
    if p.iter().any(|z| z.im.abs() >= IMAG_TOL) {
        return PointClass::Complex;
    }
    let sum: f64 = p.iter().map(|z| z.re).sum();
    if p.iter().all(|z| z.re > 0.0) && (sum - 1.0).abs() < IMAG_TOL {
        PointClass::PositiveRealSimplex
    } else {
        PointClass::RealNonpositive
    }
}

impl CriticalPoint {
    pub fn new(coordinates: Vec<Complex64>, residuals: Vec<f64>) -> Self {
        let classification = classify_point(&coordinates);
        CriticalPoint {
            coordinates,
            residuals,
            classification,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn real(&self) -> Vec<f64> {
        self.coordinates.iter().map(|z| z.re).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRow {
    pub max_residual: f64,
    pub flagged: bool,
}

/// Largest absolute equation value per point; rows above `threshold` are flagged.
///
/// Points are aligned with the unknowns among the system's context variables.
pub fn residual_report(points: &[Vec<Complex64>], system: &[MPoly], threshold: f64) -> Vec<ResidualRow> {
    points
        .iter()
        .map(|p| {
            let max = system
                .iter()
                .map(|eq| eq.eval_slice(p).norm())
                .fold(0.0, f64::max);
            ResidualRow {
                max_residual: max,
                flagged: !(max <= threshold),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarContext;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn exact_point_has_zero_residual() {
        let ctx = VarContext::unknowns(&["x", "y", "z"]).unwrap();
        let sys = vec![
            MPoly::parse(&ctx, "4*x*y - z^2").unwrap(),
            MPoly::parse(&ctx, "x + y + z - 1").unwrap(),
        ];
        let rows = residual_report(&[vec![c(0.25), c(0.25), c(0.5)]], &sys, 1e-9);
        assert_eq!(rows[0].max_residual, 0.0);
        assert!(!rows[0].flagged);
        let rows = residual_report(&[vec![c(0.251), c(0.25), c(0.5)]], &sys, 1e-9);
        assert!(rows[0].max_residual > 1e-7 && rows[0].flagged);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_point(&[c(0.5), c(0.5)]), PointClass::PositiveRealSimplex);
        assert_eq!(classify_point(&[c(1.5), c(-0.5)]), PointClass::RealNonpositive);
        assert_eq!(
            classify_point(&[Complex64::new(0.5, 0.1), Complex64::new(0.5, -0.1)]),
            PointClass::Complex
        );
    }
}
