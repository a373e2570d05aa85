//! Dense matrices over the integers and their Smith normal form.
//!
//! Entries are unbounded: every result is exact.  The normal form
//! comes with the unimodular transforms, which is what turns it into
//! kernels (columns of `V` against zero diagonal entries), cokernels
//! (diagonal entries against the row count) and integer linear
//! solving.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
        }
        Ok(IntMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
        .expect("literal rows have equal lengths")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect())
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Fraction-free determinant (Bareiss); square matrices only.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut denom = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &denom;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            denom = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[a] += q * row[b]`
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(a, j) + q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// `col[a] += q * col[b]`
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, a) + q * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain of nonnegative entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SNFResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SNFResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Locates the entry of smallest nonzero absolute value in the
/// trailing submatrix starting at `(k, k)`, scanning row-major so the
/// choice is deterministic.
fn find_pivot(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SNFResult {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let t = a.rows().min(a.cols());
    for k in 0..t {
        'pivot: loop {
            let Some((pi, pj)) = find_pivot(&d, k) else { break };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            // Clear the pivot column, then the pivot row.  Truncated
            // division leaves remainders strictly smaller than the
            // pivot, so if anything survives the next sweep finds a
            // smaller pivot and the loop terminates.
            let mut dirty = false;
            for i in k + 1..d.rows() {
                if !d.get(i, k).is_zero() {
                    let q = -(d.get(i, k) / d.get(k, k));
                    d.add_row(i, k, &q);
                    u.add_row(i, k, &q);
                    dirty = dirty || !d.get(i, k).is_zero();
                }
            }
            for j in k + 1..d.cols() {
                if !d.get(k, j).is_zero() {
                    let q = -(d.get(k, j) / d.get(k, k));
                    d.add_col(j, k, &q);
                    v.add_col(j, k, &q);
                    dirty = dirty || !d.get(k, j).is_zero();
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the
            // trailing block by folding an offending row into this one.
            for i in k + 1..d.rows() {
                for j in k + 1..d.cols() {
                    if !(d.get(i, j) % d.get(k, k)).is_zero() {
                        d.add_row(k, i, &BigInt::one());
                        u.add_row(k, i, &BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    SNFResult { u, d, v }
}

/// A basis of the integer solution lattice of `a * x = 0`: the columns
/// of `V` that meet zero diagonal entries of `D`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let t = a.rows().min(a.cols());
    (0..a.cols())
        .filter(|&j| j >= t || snf.d.get(j, j).is_zero())
        .map(|j| snf.v.column(j))
        .collect()
}

/// How reliable a reported group is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    /// Closed-form or single-matrix computation: the value is the
    /// group, with no tower involved.
    Exact,
    /// A tower whose connecting maps were isomorphisms for the
    /// configured window, starting at this level.
    StabilizedAt(usize),
    /// The tower was exhausted without a full window of agreement.
    ApproximateUpTo(usize),
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::Exact => write!(f, "exact"),
            Stability::StabilizedAt(n) => write!(f, "stabilized at level {n}"),
            Stability::ApproximateUpTo(n) => write!(f, "approximate up to level {n}"),
        }
    }
}

/// A finitely generated abelian group `Z^r (+) Z/d1 (+) ...` with
/// `d1 | d2 | ...`, all factors at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    pub stable: Stability,
}

impl GroupPresentation {
    pub fn free(rank: usize) -> GroupPresentation {
        GroupPresentation { free_rank: rank, invariant_factors: Vec::new(), stable: Stability::Exact }
    }

    pub fn trivial() -> GroupPresentation {
        Self::free(0)
    }

    pub fn with_stability(mut self, stable: Stability) -> GroupPresentation {
        self.stable = stable;
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group equality, ignoring the stability flag.
    pub fn same_group(&self, other: &GroupPresentation) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.free_rank > 0 {
            write!(f, "Z^{}", self.free_rank)?;
            first = false;
        }
        for d in &self.invariant_factors {
            if !first {
                write!(f, " (+) ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// The cokernel `Z^rows / col-span(a)` as a canonical presentation.
pub fn cokernel(a: &IntMatrix) -> GroupPresentation {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    GroupPresentation {
        free_rank: a.rows() - rank,
        invariant_factors: diag.into_iter().filter(|x| *x > BigInt::one()).collect(),
        stable: Stability::Exact,
    }
}

/// One integer solution of `a * x = b`, if any exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), got: b.len() });
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b)?;
    let t = a.rows().min(a.cols());
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        let di = if i < t { snf.d.get(i, i).clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ubi.is_zero() {
                return Ok(None);
            }
        } else {
            if !(ubi % &di).is_zero() {
                return Ok(None);
            }
            if i < y.len() {
                y[i] = ubi / &di;
            }
        }
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}

/// Whether `x` lies in the integer column span of `a`.
pub fn in_column_span(a: &IntMatrix, x: &[BigInt]) -> Result<bool> {
    Ok(solve(a, x)?.is_some())
}

/// Pretty list form used by reports: `[1, 0, -2]`.
pub fn vec_string(xs: &[BigInt]) -> String {
    use core::fmt::Write;
    let mut out = String::from("[");
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            let _ = write!(out, ", ");
        }
        let _ = write!(out, "{x}");
    }
    out.push(']');
    out
}
