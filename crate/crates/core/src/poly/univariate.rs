//! Dense univariate polynomials over Q and their bridge to [`MPoly`].

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{MPoly, Monomial, PolyError, Result};

/// Dense polynomial, `coeffs[i]` multiplies `x^i`; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| super::rat(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Number of leading zero coefficients (multiplicity of the root 0).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = BigRational::one() / lc;
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * super::rat(i as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = divisor.lc().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `f / gcd(f, f')`, monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).unwrap().0.monic()
    }

    /// Yun's algorithm: monic `a_1, a_2, ...` with `f = lc * prod a_i^i`.
    pub fn squarefree_factors(&self) -> Vec<UniPoly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divrem(&a0).unwrap().0;
        let mut c = fp.divrem(&a0).unwrap().0;
        let mut d = c.sub(&b.derivative());
        loop {
            let a = b.gcd(&d);
            b = b.divrem(&a).unwrap().0;
            c = d.divrem(&a).unwrap().0;
            out.push(a.monic());
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Read an [`MPoly`] that only involves `var`.
    pub fn from_mpoly(p: &MPoly, var: &str) -> Result<Self> {
        let idx = p.ctx().require(var)?;
        let deg = p.degree_in(var)? as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (m, c) in p.terms() {
            if m.0.iter().enumerate().any(|(i, &e)| i != idx && e > 0) {
                return Err(PolyError::NotUnivariate(var.to_string()));
            }
            coeffs[m.0[idx] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_mpoly(&self, like: &MPoly, var: &str) -> Result<MPoly> {
        let ctx = like.ctx();
        let idx = ctx.require(var)?;
        let mut out = MPoly::zero(ctx);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0; ctx.len()];
            e[idx] = i as u32;
            out = &out + &MPoly::monomial(ctx, Monomial(e), c.clone());
        }
        Ok(out)
    }
}

/// Monic gcd of two polynomials univariate in `var`.
pub fn univariate_gcd(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly> {
    let a = UniPoly::from_mpoly(f, var)?;
    let b = UniPoly::from_mpoly(g, var)?;
    a.gcd(&b).to_mpoly(f, var)
}

/// `f / gcd(f, f')`; its degree is the number of distinct complex roots.
pub fn squarefree_part(f: &MPoly, var: &str) -> Result<MPoly> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    UniPoly::from_mpoly(f, var)?.squarefree().to_mpoly(f, var)
}

/// Yun decomposition of a univariate `f`: element `i` has multiplicity `i + 1`.
pub fn squarefree_decomposition(f: &MPoly, var: &str) -> Result<Vec<MPoly>> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    UniPoly::from_mpoly(f, var)?
        .squarefree_factors()
        .iter()
        .map(|p| p.to_mpoly(f, var))
        .collect()
}

/// Squarefree part of a binary form in `(a : b)`.
///
/// Returns the form together with its degree, which is the number of
/// distinct projective roots.
pub fn binary_form_squarefree(f: &MPoly, a: &str, b: &str) -> Result<(MPoly, u32)> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let others: Vec<&str> = f.support_vars().into_iter().filter(|v| *v != a && *v != b).collect();
    if !others.is_empty() || !f.is_homogeneous_in(&[a, b])? {
        return Err(PolyError::NotUnivariate(format!("({a}:{b})")));
    }
    let d = f.degree_in_vars(&[a, b])?;
    // dehomogenize at b = 1
    let dehom = f.substitute(&[(b, 1.into())])?;
    let uni = UniPoly::from_mpoly(&dehom, a)?;
    let sq = uni.squarefree();
    let sq_deg = sq.degree().unwrap_or(0) as u32;
    // roots at b = 0 show up as a degree drop
    let at_infinity = uni.degree().unwrap_or(0) < d as usize;
    let total = sq_deg + at_infinity as u32;
    let ctx = f.ctx();
    let bi = ctx.require(b)?;
    let ai = ctx.require(a)?;
    let mut out = MPoly::zero(ctx);
    for (i, c) in sq.coeffs().iter().enumerate() {
        let mut e = vec![0; ctx.len()];
        e[ai] = i as u32;
        e[bi] = total - i as u32;
        out = &out + &MPoly::monomial(ctx, Monomial(e), c.clone());
    }
    Ok((out, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Role, VarContext};

    fn ctx() -> std::sync::Arc<VarContext> {
        VarContext::new([("x", Role::Unknown), ("y", Role::Unknown), ("z", Role::Unknown)]).unwrap()
    }

    fn p(s: &str) -> MPoly {
        MPoly::parse(&ctx(), s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(univariate_gcd(&p("x^2-1"), &p("x-1"), "x").unwrap(), p("x-1"));
        assert_eq!(univariate_gcd(&p("x^2"), &p("x^3"), "x").unwrap(), p("x^2"));
        let restricted = p("(x-y)^2").substitute(&[("y", 1.into())]).unwrap();
        let line = p("x-y").substitute(&[("y", 1.into())]).unwrap();
        let g = univariate_gcd(&restricted, &line, "x").unwrap();
        assert_eq!(g, MPoly::parse(g.ctx(), "x - 1").unwrap());
        assert_eq!(
            univariate_gcd(&p("x*y"), &p("x"), "x").unwrap_err(),
            PolyError::NotUnivariate("x".into())
        );
    }

    #[test]
    fn squarefree_examples() {
        let s = squarefree_part(&p("(x-1)^2*(x+2)"), "x").unwrap();
        assert!(s.equal_up_to_scalar(&p("(x-1)*(x+2)")));
        assert_eq!(squarefree_part(&p("x^3"), "x").unwrap(), p("x"));
        assert_eq!(squarefree_part(&MPoly::zero(&ctx()), "x").unwrap_err(), PolyError::ZeroPolynomial);

        // the Hardy-Weinberg restriction to x + y + z = 0
        let hw = p("4*x*y - z^2").substitute(&[("z", p("-x-y").into())]).unwrap();
        assert_eq!(hw, p("-(x-y)^2"));
        let (sq, n) = binary_form_squarefree(&hw, "x", "y").unwrap();
        assert_eq!(n, 1);
        assert!(sq.equal_up_to_scalar(&p("x - y")));
    }

    #[test]
    fn binary_form_counts_root_at_infinity() {
        // y^2 * x: roots (1:0) twice and (0:1)
        let (sq, n) = binary_form_squarefree(&p("x*y^2"), "x", "y").unwrap();
        assert_eq!(n, 2);
        assert!(sq.equal_up_to_scalar(&p("x*y")));
        let (_, n) = binary_form_squarefree(&p("z^2"), "y", "z").unwrap();
        assert_eq!(n, 1);
    }

    #[test]
    fn yun_multiplicities() {
        let f = UniPoly::from_ints(&[0, 0, 1]).mul(&UniPoly::from_ints(&[-1, 1]).mul(&UniPoly::from_ints(&[-1, 1])).mul(&UniPoly::from_ints(&[-1, 1])));
        // x^2 (x-1)^3
        let fs = f.squarefree_factors();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0].degree(), Some(0));
        assert_eq!(fs[1], UniPoly::from_ints(&[0, 1]));
        assert_eq!(fs[2], UniPoly::from_ints(&[-1, 1]));
    }
}
