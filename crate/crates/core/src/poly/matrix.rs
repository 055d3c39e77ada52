//! Polynomial matrices, fraction-free determinants, Sylvester resultants.

use std::sync::Arc;

use super::{MPoly, PolyError, Result, VarContext};

/// Dense row-major matrix of polynomials sharing one context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MPoly>) -> Result<Self> {
        assert!(rows > 0 && cols > 0, "empty matrix");
        assert_eq!(entries.len(), rows * cols, "entry count");
        let ctx = entries[0].ctx().clone();
        if entries.iter().any(|e| e.ctx() != &ctx) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        self.entries[0].ctx()
    }

    pub fn get(&self, r: usize, c: usize) -> &MPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[MPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn determinant_fraction_free(m: &PolyMatrix) -> Result<MPoly> {
    if m.rows != m.cols {
        return Err(PolyError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let ctx = m.ctx().clone();
    let mut a: Vec<Vec<MPoly>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut negate = false;
    let mut prev = MPoly::one(&ctx);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            // prefer the sparsest nonzero pivot
            let pick = (k + 1..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| a[i][k].num_terms());
            match pick {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(MPoly::zero(&ctx)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev)?;
            }
            a[i][k] = MPoly::zero(&ctx);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Sylvester matrix of `f` and `g` as polynomials in `var`.
///
/// The first `deg g` rows carry the coefficients of `f` (highest power
/// first), the remaining `deg f` rows those of `g`.
pub fn sylvester_matrix(f: &MPoly, g: &MPoly, var: &str) -> Result<PolyMatrix> {
    if f.ctx() != g.ctx() {
        return Err(PolyError::ContextMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let fc = f.coefficients_in(var)?;
    let gc = g.coefficients_in(var)?;
    let (df, dg) = (fc.len() - 1, gc.len() - 1);
    if df + dg == 0 {
        return Err(PolyError::BothConstant(var.to_string()));
    }
    let n = df + dg;
    let ctx = f.ctx();
    let mut rows = Vec::with_capacity(n);
    for shift in 0..dg {
        let mut row = vec![MPoly::zero(ctx); n];
        for (k, c) in fc.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..df {
        let mut row = vec![MPoly::zero(ctx); n];
        for (k, c) in gc.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(rows)
}

/// `det(Syl(f, g, var))`.
pub fn resultant(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly> {
    determinant_fraction_free(&sylvester_matrix(f, g, var)?)
}
