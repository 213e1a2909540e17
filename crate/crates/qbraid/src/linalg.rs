//! Dense exact matrices over a single scalar field, indexed from 0.

use crate::error::{Error, Result};
use crate::scalar::{FieldContext, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A strictly increasing list of row or column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    /// Validates strict increase and `index < bound`.
    pub fn new(indices: Vec<usize>, bound: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ShapeMismatch(format!(
                "indices {indices:?} not strictly increasing"
            )));
        }
        if indices.last().is_some_and(|&i| i >= bound) {
            return Err(Error::ShapeMismatch(format!("index out of range in {indices:?}")));
        }
        Ok(IndexSubset(indices))
    }

    /// The contiguous range `start..end`.
    pub fn range(start: usize, end: usize) -> Self {
        IndexSubset((start..end).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A dense rows×cols matrix whose entries share one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    ctx: FieldContext,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    /// Builds from row-major data; every entry must live in `ctx`.
    pub fn new(rows: usize, cols: usize, ctx: FieldContext, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.ctx() != ctx) {
            return Err(Error::FieldMismatch(bad.ctx(), ctx));
        }
        Ok(ExactMatrix { rows, cols, ctx, data })
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: FieldContext, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert_eq!(v.ctx(), ctx);
                data.push(v);
            }
        }
        ExactMatrix { rows, cols, ctx, data }
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(ctx: FieldContext, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, ctx, rows.into_iter().flatten().collect())
    }

    /// Parses nested rows of scalar strings into `ctx`.
    pub fn parse_rows(ctx: FieldContext, rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| Scalar::parse_in(s, ctx)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ctx, parsed)
    }

    /// Integer matrix in `ctx`.
    pub fn from_ints(ctx: FieldContext, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, ctx, |i, j| Scalar::from_int(rows[i][j], ctx))
    }

    pub fn zeros(rows: usize, cols: usize, ctx: FieldContext) -> Self {
        Self::from_fn(rows, cols, ctx, |_, _| Scalar::zero(ctx))
    }

    pub fn identity(n: usize, ctx: FieldContext) -> Self {
        Self::from_fn(
            n,
            n,
            ctx,
            |i, j| if i == j { Scalar::one(ctx) } else { Scalar::zero(ctx) },
        )
    }

    /// Diagonal matrix; all entries must share a context.
    pub fn diag(ctx: FieldContext, d: &[Scalar]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, ctx, |i, j| if i == j { d[i].clone() } else { Scalar::zero(ctx) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.ctx(), self.ctx, "entry field mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Diagonal entries of a square matrix.
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch(self.ctx, other.ctx));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Applies `f` to every entry, producing a matrix over `ctx`.
    pub fn map(&self, ctx: FieldContext, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(self.rows, self.cols, ctx, data)
    }

    /// Coerces every entry into a larger field.
    pub fn coerce(&self, ctx: FieldContext) -> Result<Self> {
        self.map(ctx, |s| s.coerce(ctx))
    }

    /// Specializes q to `q0` in every entry.
    pub fn evaluate(&self, q0: &Scalar) -> Result<Self> {
        let ctx = self.ctx.base().join(q0.ctx());
        self.map(ctx, |s| s.evaluate(q0))
    }

    /// Substitutes q ↦ q^{-1} in every entry.
    pub fn invert_variable(&self) -> Self {
        let data = self.data.iter().map(Scalar::invert_variable).collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            data,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            data,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            data,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch(self.ctx, other.ctx));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = Scalar::zero(self.ctx);
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                data.push(acc);
            }
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            ctx: self.ctx,
            data,
        })
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.ctx() != self.ctx {
            return Err(Error::FieldMismatch(c.ctx(), self.ctx));
        }
        let data = self.data.iter().map(|a| a * c).collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            data,
        })
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(self.ctx), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Integer power (negative powers invert first).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let n = self.require_square()?;
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity(n, self.ctx);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Transpose about the main diagonal: a^t_{ij} = a_{ji}.
    pub fn transpose_t(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.ctx, |i, j| self.get(j, i).clone())
    }

    /// Transpose about the anti-diagonal: a^s_{ij} = a_{n−j,n−i}.
    pub fn transpose_s(&self) -> Result<Self> {
        let m = self.require_square()?;
        Ok(Self::from_fn(m, m, self.ctx, |i, j| {
            self.get(m - 1 - j, m - 1 - i).clone()
        }))
    }

    /// a^♯_{ij} = a_{n−i,n−j}; equals s∘t.
    pub fn sharp(&self) -> Result<Self> {
        let m = self.require_square()?;
        Ok(Self::from_fn(m, m, self.ctx, |i, j| {
            self.get(m - 1 - i, m - 1 - j).clone()
        }))
    }

    /// The k-th diagonal A_k of A = Σ A_r (entries with j − i = k), zero elsewhere.
    pub fn superdiagonal_component(&self, k: i64) -> Self {
        Self::from_fn(self.rows, self.cols, self.ctx, |i, j| {
            if j as i64 - i as i64 == k {
                self.get(i, j).clone()
            } else {
                Scalar::zero(self.ctx)
            }
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.transpose_t().is_upper_triangular()
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        self.is_square() && self.is_upper_triangular() && self.diagonal().iter().all(Scalar::is_one)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form and pivot columns (first nonzero pivot down each column).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            m.scale_row(r, &inv, c);
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    m.eliminate(i, r, &f, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, f: &Scalar, from: usize) {
        for j in from..self.cols {
            let v = self.get(r, j);
            if !v.is_zero() {
                self.data[r * self.cols + j] = v * f;
            }
        }
    }

    /// row_i ← row_i − f·row_r on columns `from..`.
    fn eliminate(&mut self, i: usize, r: usize, f: &Scalar, from: usize) {
        for j in from..self.cols {
            let x = self.get(r, j);
            if !x.is_zero() {
                let v = self.get(i, j) - &(f * x);
                self.data[i * self.cols + j] = v;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : Ax = 0}; each vector's first nonzero coordinate is 1.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(self.ctx); self.cols];
                v[f] = Scalar::one(self.ctx);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                let lead = v.iter().find(|x| !x.is_zero()).expect("basis vector nonzero").inv();
                let lead = lead.expect("nonzero");
                v.iter().map(|x| x * &lead).collect()
            })
            .collect()
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut aug = Self::from_fn(n, 2 * n, self.ctx, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one(self.ctx)
            } else {
                Scalar::zero(self.ctx)
            }
        });
        for c in 0..n {
            let p = (c..n).find(|&i| !aug.get(i, c).is_zero()).ok_or(Error::Singular)?;
            aug.swap_rows(c, p);
            let inv = aug.get(c, c).inv()?;
            aug.scale_row(c, &inv, c);
            for i in 0..n {
                if i != c && !aug.get(i, c).is_zero() {
                    let f = aug.get(i, c).clone();
                    aug.eliminate(i, c, &f, c);
                }
            }
        }
        Ok(Self::from_fn(n, n, self.ctx, |i, j| aug.get(i, j + n).clone()))
    }

    /// Determinant by elimination with a downward pivot search in each column.
    pub fn determinant(&self) -> Result<Scalar> {
        let n = self.require_square()?;
        let mut m = self.clone();
        let mut det = Scalar::one(self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero(self.ctx));
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in c + 1..n {
                if !m.get(i, c).is_zero() {
                    let f = m.get(i, c) * &inv;
                    m.eliminate(i, c, &f, c);
                }
            }
        }
        Ok(det)
    }

    /// Submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), self.ctx, |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// M^{rows}_{cols}: determinant of the selected square submatrix (1 when empty).
    pub fn minor(&self, rows: &IndexSubset, cols: &IndexSubset) -> Result<Scalar> {
        self.check_subsets(rows, cols)?;
        if rows.is_empty() {
            return Ok(Scalar::one(self.ctx));
        }
        self.submatrix(rows.as_slice(), cols.as_slice()).determinant()
    }

    /// A^{rows}_{cols}: signed complementary minor, (−1)^{Σrows+Σcols} times the
    /// minor on the remaining rows and columns.
    pub fn cofactor(&self, rows: &IndexSubset, cols: &IndexSubset) -> Result<Scalar> {
        self.require_square()?;
        self.check_subsets(rows, cols)?;
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !rows.0.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !cols.0.contains(j)).collect();
        let m = if keep_r.is_empty() {
            Scalar::one(self.ctx)
        } else {
            self.submatrix(&keep_r, &keep_c).determinant()?
        };
        let parity: usize = rows.0.iter().sum::<usize>() + cols.0.iter().sum::<usize>();
        Ok(if parity.is_multiple_of(2) { m } else { -m })
    }

    fn check_subsets(&self, rows: &IndexSubset, cols: &IndexSubset) -> Result<()> {
        if rows.len() != cols.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} rows vs {} columns in minor",
                rows.len(),
                cols.len()
            )));
        }
        if rows.0.last().is_some_and(|&i| i >= self.rows) || cols.0.last().is_some_and(|&j| j >= self.cols) {
            return Err(Error::ShapeMismatch("minor index out of range".into()));
        }
        Ok(())
    }

    /// Largest absolute q-exponent among the entries.
    pub fn degree_span(&self) -> u64 {
        self.data.iter().map(Scalar::degree_span).max().unwrap_or(0)
    }

    /// Canonical strings, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_string).collect())
            .collect()
    }

    /// Column-aligned plain text.
    pub fn pretty(&self) -> String {
        format_pretty(&self.to_strings())
    }

    /// Body of a LaTeX matrix environment.
    pub fn latex(&self) -> String {
        format_latex(&self.to_strings())
    }
}

/// Right-aligns each column of a table of cells, one row per line.
pub fn format_pretty(cells: &[Vec<String>]) -> String {
    let cols = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    cells
        .iter()
        .map(|r| {
            r.iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}", w = *w))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Rows joined by `\\`, cells by `&`.
pub fn format_latex(cells: &[Vec<String>]) -> String {
    cells.iter().map(|r| r.join(" & ")).collect::<Vec<_>>().join(" \\\\\n")
}

/// det(C + Σ λ_k E_kk), computed directly and via the expansion
/// det C + Σ_α λ_α A^α_α(C) over nonempty index sets α; the two must agree.
pub fn generalized_charpoly(c: &ExactMatrix, lambda: &[Scalar]) -> Result<Scalar> {
    let m = c.require_square()?;
    if lambda.len() != m {
        return Err(Error::ShapeMismatch(format!(
            "{} lambdas for a {m}x{m} matrix",
            lambda.len()
        )));
    }
    let mut shifted = c.clone();
    for (k, l) in lambda.iter().enumerate() {
        let v = shifted.get(k, k).checked_add(l)?;
        shifted.set(k, k, v);
    }
    let direct = shifted.determinant()?;
    let expansion = generalized_charpoly_expansion(c, lambda)?;
    if direct != expansion {
        return Err(Error::ConstraintViolated(format!(
            "direct determinant {direct} differs from cofactor expansion {expansion}"
        )));
    }
    Ok(direct)
}

/// The cofactor-sum side of [`generalized_charpoly`].
pub fn generalized_charpoly_expansion(c: &ExactMatrix, lambda: &[Scalar]) -> Result<Scalar> {
    let m = c.require_square()?;
    let mut total = Scalar::zero(c.ctx());
    for mask in 0u64..(1u64 << m) {
        let alpha: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
        let mut weight = Scalar::one(c.ctx());
        for &k in &alpha {
            weight = weight.checked_mul(&lambda[k])?;
        }
        let set = IndexSubset(alpha);
        let cof = c.cofactor(&set, &set)?;
        total = &total + &(&weight * &cof);
    }
    Ok(total)
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    /// Panics on shape or field mismatch.
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        let data = self.data.iter().map(|a| -a).collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            data,
        }
    }
}
