//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial carries a shared [`VarContext`]; terms are kept in a
//! `BTreeMap` keyed by graded-lexicographic monomials, so equal polynomials
//! always have identical term maps and rendering is deterministic.

mod matrix;
mod parse;
mod univariate;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use matrix::{determinant_fraction_free, resultant, sylvester_matrix, PolyMatrix};
pub use univariate::{
    binary_form_squarefree, squarefree_decomposition, squarefree_part, univariate_gcd, UniPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
    #[error("context has more than one lagrange symbol")]
    MultipleLagrange,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division is not exact")]
    NonExactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("both polynomials have degree 0 in `{0}`")]
    BothConstant(String),
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, PolyError>;

/// Role of a symbol in a [`VarContext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Unknown,
    Lagrange,
    Count,
    Constant,
}

/// Ordered list of distinct symbol names with their roles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    roles: Vec<Role>,
}

impl VarContext {
    pub fn new<I, S>(vars: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, Role)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut roles = Vec::new();
        for (name, role) in vars {
            let name = name.into();
            if names.contains(&name) {
                return Err(PolyError::DuplicateVariable(name));
            }
            if role == Role::Lagrange && roles.contains(&Role::Lagrange) {
                return Err(PolyError::MultipleLagrange);
            }
            names.push(name);
            roles.push(role);
        }
        Ok(Arc::new(Self { names, roles }))
    }

    /// Context where every name has role `Unknown`.
    pub fn unknowns<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|n| (n.as_ref().to_string(), Role::Unknown)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn role(&self, idx: usize) -> Role {
        self.roles[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// The same context with the given names removed.
    pub fn without(&self, drop: &[&str]) -> Arc<Self> {
        let (names, roles) = self
            .names
            .iter()
            .zip(&self.roles)
            .filter(|(n, _)| !drop.contains(&n.as_str()))
            .map(|(n, r)| (n.clone(), *r))
            .unzip();
        Arc::new(Self { names, roles })
    }
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Right-hand side of a substitution.
#[derive(Debug, Clone)]
pub enum Binding {
    Value(BigRational),
    Poly(MPoly),
}

impl From<BigRational> for Binding {
    fn from(v: BigRational) -> Self {
        Binding::Value(v)
    }
}

impl From<i64> for Binding {
    fn from(v: i64) -> Self {
        Binding::Value(BigRational::from_integer(v.into()))
    }
}

impl From<MPoly> for Binding {
    fn from(p: MPoly) -> Self {
        Binding::Poly(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

#[derive(Debug, Clone)]
pub struct MPoly {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

fn same_ctx(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl MPoly {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        MPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    pub fn constant(ctx: &Arc<VarContext>, c: BigRational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn int(ctx: &Arc<VarContext>, c: i64) -> Self {
        Self::constant(ctx, rat(c))
    }

    pub fn var(ctx: &Arc<VarContext>, name: &str) -> Result<Self> {
        let idx = ctx.require(name)?;
        let mut exps = vec![0; ctx.len()];
        exps[idx] = 1;
        Ok(Self::monomial(ctx, Monomial(exps), BigRational::one()))
    }

    pub fn monomial(ctx: &Arc<VarContext>, mono: Monomial, coeff: BigRational) -> Self {
        assert_eq!(mono.0.len(), ctx.len(), "exponent vector length");
        let mut p = Self::zero(ctx);
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    /// Parse canonical or hand-written text such as `Ke*x*y - z^2`.
    pub fn parse(ctx: &Arc<VarContext>, text: &str) -> Result<Self> {
        parse::parse_poly(ctx, text)
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn absorb(&mut self, other: MPoly) {
        for (m, c) in other.terms {
            self.add_term(m, c);
        }
    }

    fn check_ctx(&self, other: &MPoly) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ctx(other)?;
        let mut out = MPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ctx);
        }
        MPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative.
    pub fn partial_derivative(&self, var: &str) -> Result<MPoly> {
        let idx = self.ctx.require(var)?;
        let mut out = MPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(Monomial(exps), c * rat(e as i64));
        }
        Ok(out)
    }

    /// Exact substitution of variables by rationals or polynomials.
    ///
    /// With only rational bindings the result lives in this context minus the
    /// bound names. Polynomial bindings must share a context, which becomes the
    /// target; unbound variables are carried over to it by name.
    pub fn substitute(&self, bindings: &[(&str, Binding)]) -> Result<MPoly> {
        let mut bound: Vec<Option<&Binding>> = vec![None; self.ctx.len()];
        let mut target: Option<Arc<VarContext>> = None;
        for (name, b) in bindings {
            let idx = self.ctx.require(name)?;
            bound[idx] = Some(b);
            if let Binding::Poly(p) = b {
                match &target {
                    None => target = Some(p.ctx.clone()),
                    Some(t) if same_ctx(t, &p.ctx) => {}
                    Some(_) => return Err(PolyError::ContextMismatch),
                }
            }
        }
        let target = match target {
            Some(t) => t,
            None => {
                let names: Vec<&str> = bindings.iter().map(|(n, _)| *n).collect();
                self.ctx.without(&names)
            }
        };
        // place of each unbound source variable in the target
        let mut carry = vec![None; self.ctx.len()];
        for (i, name) in self.ctx.names.iter().enumerate() {
            if bound[i].is_none() {
                carry[i] = target.index_of(name);
            }
        }
        let mut powers: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut base = vec![0u32; target.len()];
            let mut term = MPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match bound[i] {
                    Some(Binding::Value(v)) => {
                        term = term.scale(&num_traits::pow(v.clone(), e as usize));
                    }
                    Some(Binding::Poly(p)) => {
                        let pw = powers.entry((i, e)).or_insert_with(|| p.pow(e));
                        term = &term * &*pw;
                    }
                    None => match carry[i] {
                        Some(j) => base[j] += e,
                        None => return Err(PolyError::ContextMismatch),
                    },
                }
            }
            let mono = MPoly::monomial(&target, Monomial(base), BigRational::one());
            out.absorb(&term * &mono);
        }
        Ok(out)
    }

    /// Re-express this polynomial in another context by matching names.
    pub fn embed(&self, ctx: &Arc<VarContext>) -> Result<MPoly> {
        if same_ctx(&self.ctx, ctx) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ctx.names.iter().map(|n| ctx.index_of(n)).collect();
        let mut out = MPoly::zero(ctx);
        for (m, c) in &self.terms {
            let mut exps = vec![0; ctx.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(PolyError::UnknownVariable(self.ctx.names[i].clone())),
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Floating evaluation in graded-lex term order.
    pub fn eval_complex(&self, point: &HashMap<String, Complex64>) -> Result<Complex64> {
        let mut values = Vec::with_capacity(self.ctx.len());
        for (i, name) in self.ctx.names.iter().enumerate() {
            match point.get(name) {
                Some(v) => values.push(*v),
                None if self.terms.keys().all(|m| m.0[i] == 0) => values.push(Complex64::new(0.0, 0.0)),
                None => return Err(PolyError::UnboundVariable(name.clone())),
            }
        }
        Ok(self.eval_slice(&values))
    }

    /// Evaluate with values aligned to the context order.
    pub fn eval_slice(&self, values: &[Complex64]) -> Complex64 {
        self.eval_with_scale(values).0
    }

    /// Value together with the sum of absolute term magnitudes, the natural
    /// scale for relative residuals.
    pub fn eval_with_scale(&self, values: &[Complex64]) -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (m, c) in self.terms.iter().rev() {
            let mut t = Complex64::new(rat_to_f64(c), 0.0);
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t *= v.powu(e);
                }
            }
            scale += t.norm();
            acc += t;
        }
        (acc, scale)
    }

    /// `|p(x)| / max(1, sum |term(x)|)`.
    pub fn scaled_residual(&self, values: &[Complex64]) -> f64 {
        let (v, s) = self.eval_with_scale(values);
        v.norm() / s.max(1.0)
    }

    pub fn degree_in(&self, var: &str) -> Result<u32> {
        let idx = self.ctx.require(var)?;
        Ok(self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0))
    }

    /// `(max exponent, min exponent)` of `var` over all terms.
    pub fn degree_profile(&self, var: &str) -> Result<(u32, u32)> {
        let idx = self.ctx.require(var)?;
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let deg = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0);
        let val = self.terms.keys().map(|m| m.0[idx]).min().unwrap_or(0);
        Ok((deg, val))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Total degree counting only the named variables.
    pub fn degree_in_vars(&self, vars: &[&str]) -> Result<u32> {
        let idx: Vec<usize> = vars.iter().map(|v| self.ctx.require(v)).collect::<Result<_>>()?;
        Ok(self
            .terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.0[i]).sum::<u32>())
            .max()
            .unwrap_or(0))
    }

    /// True when all terms have the same degree in the named variables.
    pub fn is_homogeneous_in(&self, vars: &[&str]) -> Result<bool> {
        let idx: Vec<usize> = vars.iter().map(|v| self.ctx.require(v)).collect::<Result<_>>()?;
        let mut degs = self
            .terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.0[i]).sum::<u32>());
        Ok(match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        })
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<&str> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.ctx.names[i].as_str())
            .collect()
    }

    /// Coefficients of `self` regarded as univariate in `var`; index = power.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MPoly>> {
        let idx = self.ctx.require(var)?;
        let deg = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(&self.ctx); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut exps = m.0.clone();
            exps[idx] = 0;
            out[e].add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`; fails if a remainder is left.
    pub fn exact_divide(&self, divisor: &MPoly) -> Result<MPoly> {
        self.check_ctx(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.ctx);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return Err(PolyError::NonExactDivision);
            }
            let qm = rm.quotient(&lm);
            let qc = rc / &lc;
            for (m, c) in &divisor.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Replace `var^k` by `replacement` until every exponent of `var` is below `k`.
    pub fn reduce_power(&self, var: &str, k: u32, replacement: &MPoly) -> Result<MPoly> {
        self.check_ctx(replacement)?;
        let idx = self.ctx.require(var)?;
        assert!(k > 0);
        let mut out = MPoly::zero(&self.ctx);
        let mut powers: HashMap<u32, MPoly> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let (q, r) = (e / k, e % k);
            let mut exps = m.0.clone();
            exps[idx] = r;
            let base = MPoly::monomial(&self.ctx, Monomial(exps), c.clone());
            if q == 0 {
                out.absorb(base);
            } else {
                let pw = powers.entry(q).or_insert_with(|| replacement.pow(q));
                out.absorb(&base * &*pw);
            }
        }
        Ok(out)
    }

    /// `Some(c)` with `self == c * other` for a nonzero rational `c`.
    pub fn scalar_ratio(&self, other: &MPoly) -> Option<BigRational> {
        if !same_ctx(&self.ctx, &other.ctx) || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m1, c1) = self.leading_term()?;
        let (m2, c2) = other.leading_term()?;
        if m1 != m2 {
            return None;
        }
        let c = c1 / c2;
        if other.scale(&c) == *self {
            Some(c)
        } else {
            None
        }
    }

    pub fn equal_up_to_scalar(&self, other: &MPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.scalar_ratio(other).is_some()
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(BigRational::one() / c)),
        }
    }
}

/// Arithmetic by operator tag; `b` is ignored for `Neg`.
pub fn arith(op: ArithOp, a: &MPoly, b: Option<&MPoly>) -> Result<MPoly> {
    match op {
        ArithOp::Neg => Ok(-a),
        _ => {
            let b = b.ok_or(PolyError::ContextMismatch)?;
            match op {
                ArithOp::Add => a.try_add(b),
                ArithOp::Sub => a.try_sub(b),
                ArithOp::Mul => a.try_mul(b),
                ArithOp::Neg => unreachable!(),
            }
        }
    }
}

pub fn rat_to_f64(c: &BigRational) -> f64 {
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // shift both parts into range
            let nb = c.numer().bits() as i64;
            let db = c.denom().bits() as i64;
            let shift = (nb - db).clamp(-1000, 1000);
            let scaled = if shift >= 0 {
                c / BigRational::from_integer(BigInt::one() << shift as usize)
            } else {
                c * BigRational::from_integer(BigInt::one() << (-shift) as usize)
            };
            let n = scaled.numer().to_f64().unwrap_or(0.0);
            let d = scaled.denom().to_f64().unwrap_or(1.0);
            (n / d) * 2f64.powi(shift as i32)
        }
    }
}

// Operator impls panic on context mismatch; internal callers always share a context.
macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl std::ops::$tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$try(rhs).expect("polynomial context mismatch")
            }
        }
        impl std::ops::$tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$try(&rhs).expect("polynomial context mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

fn fmt_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(fmt_rat(&abs));
            }
            for (name, &e) in self.ctx.names.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
