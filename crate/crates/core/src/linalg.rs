//! Exact integer and rational linear algebra over `i64`.
//!
//! Every routine works in `i128` internally and narrows back to `i64` at the
//! end; anything that does not fit is reported as [`Error::Overflow`] rather
//! than wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact inner product of two integer vectors.
pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc: i128 = 0;
    for (&x, &y) in a.iter().zip(b) {
        acc = add(acc, x as i128 * y as i128)?;
    }
    narrow(acc)
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row slices. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a `dim x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[i64]>>(dim: usize, columns: &[C]) -> Self {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), dim, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, indices.len());
        for (jj, &j) in indices.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        self.select_rows(rows).select_columns(cols)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc = add(acc, self[(i, k)] as i128 * other[(k, j)] as i128)?;
                }
                out[(i, j)] = narrow(acc)?;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    fn to_wide(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect()
    }

    fn from_wide(rows: usize, cols: usize, wide: &[Vec<i128>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in wide {
            for &x in r {
                data.push(narrow(x)?);
            }
        }
        Ok(Self { rows, cols, data })
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<i64> {
        self.require_square()?;
        narrow(bareiss_det(self.to_wide())?)
    }

    /// Rank over the rationals.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> Result<usize> {
        let mut a = self.to_wide();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..rows {
                if a[r][c] == 0 {
                    continue;
                }
                let (pv, x) = (a[rank][c], a[r][c]);
                let mut g = 0;
                for k in c..cols {
                    a[r][k] = sub(mul(a[r][k], pv)?, mul(a[rank][k], x)?)?;
                    g = gcd128(g, a[r][k]);
                }
                if g > 1 {
                    for k in c..cols {
                        a[r][k] /= g;
                    }
                }
            }
            rank += 1;
        }
        Ok(rank)
    }

    /// The adjugate `adj(m)`, so that `m * adj(m) = det(m) * id`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut adj = Self::zeros(n, n);
        let idx: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != j).collect();
                let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                adj[(i, j)] = if (i + j) % 2 == 0 {
                    minor
                } else {
                    minor.checked_neg().ok_or(Error::Overflow)?
                };
            }
        }
        Ok(adj)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, ")")
    }
}

fn bareiss_det(mut a: Vec<Vec<i128>>) -> Result<i128> {
    let n = a.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = sub(mul(a[i][j], a[k][k])?, mul(a[i][k], a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// A rational vector with a common denominator, stored fully reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector {
    numerators: Vec<i64>,
    denominator: i64,
}

impl RationalVector {
    pub fn new(numerators: Vec<i64>, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let g = numerators.iter().fold(denominator, |g, &x| gcd(g, x));
        let s = if denominator < 0 { -g } else { g };
        let numerators = numerators.iter().map(|&x| x / s).collect();
        Ok(Self {
            numerators,
            denominator: denominator / s,
        })
    }

    pub fn from_integers(v: Vec<i64>) -> Self {
        Self {
            numerators: v,
            denominator: 1,
        }
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.denominator == 1
    }

    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.is_integral().then(|| self.numerators.clone())
    }

    /// Pairing with an integer vector, returned as `(numerator, denominator)`
    /// over this vector's denominator (not reduced).
    pub fn pair(&self, x: &[i64]) -> Result<i64> {
        dot(&self.numerators, x)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.numerators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let g = gcd(*x, self.denominator);
            if self.denominator / g == 1 {
                write!(f, "{}", x / g)?;
            } else {
                write!(f, "{}/{}", x / g, self.denominator / g)?;
            }
        }
        write!(f, ")")
    }
}

/// Determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> Result<i64> {
    m.determinant()
}

/// True iff `m` is square with determinant ±1.
pub fn is_unimodular(m: &IntMatrix) -> Result<bool> {
    if !m.is_square() {
        return Ok(false);
    }
    Ok(m.determinant()?.abs() == 1)
}

/// Solves `m x = b` exactly for nonsingular square `m`.
pub fn solve_rational(m: &IntMatrix, b: &[i64]) -> Result<RationalVector> {
    m.require_square()?;
    let n = m.rows();
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a {n}x{n} system",
            b.len()
        )));
    }
    if n == 0 {
        return Ok(RationalVector::from_integers(Vec::new()));
    }
    // Bareiss forward elimination on [m | b]; the final pivot is ±det and
    // `det * x` is integral, which makes the back substitution exact.
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut r: Vec<i128> = m.row(i).iter().map(|&x| x as i128).collect();
            r.push(b[i] as i128);
            r
        })
        .collect();
    let mut prev: i128 = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            let r = (k + 1..n).find(|&r| a[r][k] != 0).ok_or(Error::Singular)?;
            a.swap(k, r);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = sub(mul(a[i][j], a[k][k])?, mul(a[i][k], a[k][j])?)?;
                a[i][j] = t / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    let det = a[n - 1][n - 1];
    let mut y = vec![0i128; n];
    for i in (0..n).rev() {
        let mut acc = mul(det, a[i][n])?;
        for j in i + 1..n {
            acc = sub(acc, mul(a[i][j], y[j])?)?;
        }
        if acc % a[i][i] != 0 {
            return Err(Error::Internal("inexact back substitution".into()));
        }
        y[i] = acc / a[i][i];
    }
    let g = y.iter().fold(det, |g, &x| gcd128(g, x));
    let s = if det < 0 { -g } else { g };
    let numerators = y
        .iter()
        .map(|&x| narrow(x / s))
        .collect::<Result<Vec<_>>>()?;
    RationalVector::new(numerators, narrow(det / s)?)
}

/// Gcd of all maximal minors of a `d x k` matrix with `k <= d`.
///
/// This is the index of the lattice spanned by the columns inside its
/// saturation. Fails with [`Error::RankDeficient`] if every minor vanishes.
pub fn gcd_of_maximal_minors(m: &IntMatrix) -> Result<i64> {
    let (d, k) = (m.rows(), m.cols());
    if k > d {
        return Err(Error::DimensionMismatch(format!(
            "{d}x{k} matrix has more columns than rows"
        )));
    }
    let cols: Vec<usize> = (0..k).collect();
    let mut g = 0;
    for rows in itertools::Itertools::combinations(0..d, k) {
        g = gcd(g, m.submatrix(&rows, &cols).determinant()?);
        if g == 1 {
            break;
        }
    }
    if g == 0 {
        return Err(Error::RankDeficient);
    }
    Ok(g)
}

/// Hermite normal form under left multiplication: returns `(h, u)` with
/// `u * l = h`, `u` unimodular and `h` lower triangular with positive
/// diagonal and `0 <= h[i][j] < h[j][j]` below the diagonal.
pub fn hermite_normal_form(l: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    l.require_square()?;
    let n = l.rows();
    let mut a = l.to_wide();
    let mut u = IntMatrix::identity(n).to_wide();
    hnf_in_place(&mut a, Some(&mut u))?;
    Ok((
        IntMatrix::from_wide(n, n, &a)?,
        IntMatrix::from_wide(n, n, &u)?,
    ))
}

/// The `h` part of [`hermite_normal_form`] without tracking the transform.
pub fn hermite_form_only(l: &IntMatrix) -> Result<IntMatrix> {
    l.require_square()?;
    let n = l.rows();
    let mut a = l.to_wide();
    hnf_in_place(&mut a, None)?;
    IntMatrix::from_wide(n, n, &a)
}

fn row_axpy(rows: &mut [Vec<i128>], target: usize, src: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for k in 0..rows[target].len() {
        let t = sub(rows[target][k], mul(q, rows[src][k])?)?;
        rows[target][k] = t;
    }
    Ok(())
}

pub(crate) fn hnf_in_place(a: &mut [Vec<i128>], mut u: Option<&mut Vec<Vec<i128>>>) -> Result<()> {
    let n = a.len();
    // Clear the strict upper triangle column by column from the right; the
    // rows below the current pivot are finished and must not be touched.
    for j in (0..n).rev() {
        loop {
            let pivot = (0..=j)
                .filter(|&i| a[i][j] != 0)
                .min_by_key(|&i| (a[i][j].abs(), std::cmp::Reverse(i)));
            let Some(p) = pivot else {
                return Err(Error::Singular);
            };
            if p != j {
                a.swap(p, j);
                if let Some(u) = u.as_deref_mut() {
                    u.swap(p, j);
                }
            }
            let mut done = true;
            for i in 0..j {
                if a[i][j] != 0 {
                    let q = a[i][j].div_euclid(a[j][j]);
                    row_axpy(a, i, j, q)?;
                    if let Some(u) = u.as_deref_mut() {
                        row_axpy(u, i, j, q)?;
                    }
                    if a[i][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[j][j] < 0 {
            for x in a[j].iter_mut() {
                *x = -*x;
            }
            if let Some(u) = u.as_deref_mut() {
                for x in u[j].iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    // Reduce below the diagonal; row j only touches columns <= j, so going
    // right to left never disturbs an already reduced column.
    for j in (0..n).rev() {
        for i in j + 1..n {
            let q = a[i][j].div_euclid(a[j][j]);
            if q != 0 {
                row_axpy(a, i, j, q)?;
                if let Some(u) = u.as_deref_mut() {
                    row_axpy(u, i, j, q)?;
                }
            }
        }
    }
    Ok(())
}

/// Checks the lower-triangular Hermite constraints on `h`.
pub fn is_hermite_normal_form(h: &IntMatrix) -> bool {
    if !h.is_square() {
        return false;
    }
    let n = h.rows();
    for i in 0..n {
        if h[(i, i)] <= 0 {
            return false;
        }
        for j in 0..n {
            let x = h[(i, j)];
            if j > i && x != 0 {
                return false;
            }
            if j < i && (x < 0 || x >= h[(j, j)]) {
                return false;
            }
        }
    }
    true
}
