//! Exact rational linear algebra: Gauss-Jordan rank, solve and nullspace on
//! dense matrices, a reusable solver for repeated right-hand sides, and an
//! incremental sparse echelon form for large homogeneous systems.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};
use thiserror::Error;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix does not have full column rank ({rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact embedding of a coefficient ring into the rationals.
pub trait ToRational {
    fn to_rational(&self) -> Rational;
}

impl ToRational for BigInt {
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
}

impl ToRational for Rational {
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Dense row-major matrix of reduced rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.data[i * size + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if x.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut rows: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols);
        let reduced = RationalMatrix { rows: self.rows, cols: self.cols, data: rows.into_iter().flatten().collect() };
        (reduced, pivots)
    }
}

/// Gauss-Jordan on a row list; returns pivot columns. Rows past the rank end
/// up zero.
fn rref_in_place(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        if !inv.is_one() {
            for x in rows[next][col..].iter_mut() {
                *x *= &inv;
            }
        }
        let (before, rest) = rows.split_at_mut(next);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    /// Panics on a dimension mismatch; use [`RationalMatrix::checked_mul`]
    /// for a fallible product.
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_mul(rhs).expect("matrix dimensions")
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rank(a: &RationalMatrix) -> usize {
    a.rref().1.len()
}

/// Basis of the right nullspace `{x : A·x = 0}`, one vector per free column.
pub fn nullspace(a: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = a.rref();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); a.cols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -reduced.get(r, f).clone();
            }
            x
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    /// False when the system is underdetermined and `x` is one of many.
    pub unique: bool,
}

/// Solve `A·x = b` exactly. Free variables are set to zero.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Result<Solution, LinAlgError> {
    if b.len() != a.rows {
        return Err(LinAlgError::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let mut rows: Vec<Vec<Rational>> = (0..a.rows)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = rref_in_place(&mut rows, a.cols + 1);
    if pivots.last() == Some(&a.cols) {
        return Err(LinAlgError::NoSolution);
    }
    let mut x = vec![Rational::zero(); a.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = rows[r][a.cols].clone();
    }
    Ok(Solution { x, unique: pivots.len() == a.cols })
}

/// Precomputed left inverse of a full-column-rank matrix, for solving many
/// systems `A·x = b` that share `A`.
#[derive(Clone, Debug)]
pub struct Solver {
    matrix: RationalMatrix,
    pivot_rows: Vec<usize>,
    inverse: RationalMatrix,
}

impl Solver {
    pub fn new(a: RationalMatrix) -> Result<Self, LinAlgError> {
        // Independent rows of A are the pivot columns of A^T.
        let (_, pivot_rows) = a.transpose().rref();
        if pivot_rows.len() != a.cols {
            return Err(LinAlgError::RankDeficient { rank: pivot_rows.len(), cols: a.cols });
        }
        let k = a.cols;
        let mut aug: Vec<Vec<Rational>> = pivot_rows
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let mut row = a.row(r).to_vec();
                row.extend((0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        rref_in_place(&mut aug, 2 * k);
        let inverse = RationalMatrix::from_rows(aug.into_iter().map(|row| row[k..].to_vec()).collect())?;
        Ok(Self { matrix: a, pivot_rows, inverse })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// The unique candidate solution, computed from the pivot rows only.
    /// Callers must verify consistency themselves.
    pub fn solve_unchecked(&self, b: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if b.len() != self.matrix.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "expected right-hand side of length {}, got {}",
                self.matrix.rows,
                b.len()
            )));
        }
        let restricted: Vec<Rational> = self.pivot_rows.iter().map(|&r| b[r].clone()).collect();
        self.inverse.mul_vec(&restricted)
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        let x = self.solve_unchecked(b)?;
        if self.matrix.mul_vec(&x)? != b {
            return Err(LinAlgError::NoSolution);
        }
        Ok(x)
    }
}

/// Row echelon form built one sparse row at a time. Suited to tall, sparse
/// homogeneous systems where only the nullspace is wanted.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    cols: usize,
    /// Pivot column -> row normalised to 1 at the pivot, zero left of it.
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            *row.entry(c).or_insert_with(Rational::zero) += v;
        }
        row.retain(|_, v| !v.is_zero());

        let mut cursor = 0;
        loop {
            let next = row.range(cursor..).map(|(&c, _)| c).find(|c| self.rows.contains_key(c));
            let Some(c) = next else { break };
            let factor = row[&c].clone();
            for (&k, v) in &self.rows[&c] {
                let entry = row.entry(k).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(&k);
                }
            }
            cursor = c + 1;
        }

        let Some((&lead, lead_value)) = row.iter().next() else {
            return false;
        };
        let inv = lead_value.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.rows.insert(lead, row);
        true
    }

    /// Nullspace basis by back substitution, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (&p, row) in self.rows.iter().rev() {
                    let mut acc = Rational::zero();
                    for (&c, v) in row.range(p + 1..) {
                        if !x[c].is_zero() {
                            acc += v * &x[c];
                        }
                    }
                    x[p] = -acc;
                }
                x
            })
            .collect()
    }
}
