//! Exact integer matrices.
//!
//! All arithmetic runs in `i128` with checked operations and is narrowed back
//! to `i64` on output; anything that does not fit is reported as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted input entry (in absolute value).
pub const MAX_INPUT_ENTRY: i64 = 1_000_000;
/// Largest accepted dimension.
pub const MAX_DIM: usize = 16;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Invalid("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows, e.g. `from_rows(&[[2, 1], [0, 3]])`.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(r, c, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m.data[i * n + i] = d;
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Checks the input restrictions (entry bound and dimension bound).
    pub fn validate_input(&self) -> Result<()> {
        if self.rows > MAX_DIM || self.cols > MAX_DIM {
            return Err(Error::Invalid(format!(
                "matrix {}x{} exceeds the {MAX_DIM}x{MAX_DIM} limit",
                self.rows, self.cols
            )));
        }
        if let Some(v) = self.data.iter().find(|v| v.abs() > MAX_INPUT_ENTRY) {
            return Err(Error::Invalid(format!(
                "entry {v} exceeds the bound {MAX_INPUT_ENTRY}"
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    let prod = (self.get(i, k) as i128)
                        .checked_mul(other.get(k, j) as i128)
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc
                        .checked_add(prod)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
                out.set(i, j, narrow(acc, "matrix product")?);
            }
        }
        Ok(out)
    }

    /// `A·x` for an integer vector.
    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        (0..self.rows)
            .map(|i| {
                let mut acc: i128 = 0;
                for (j, &xj) in x.iter().enumerate() {
                    acc = acc
                        .checked_add(self.get(i, j) as i128 * xj as i128)
                        .ok_or(Error::Overflow("matrix-vector product"))?;
                }
                narrow(acc, "matrix-vector product")
            })
            .collect()
    }

    /// `A·x` for a real vector.
    pub fn mul_vec_f64(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as f64 * b)
                    .sum()
            })
            .collect()
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        narrow(bareiss_det(self.to_i128())?, "determinant")
    }

    /// Classical adjoint, `A·adj(A) = det(A)·I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let full = self.to_i128();
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // adj[j][i] = (-1)^{i+j} det(minor without row i, col j)
                let minor: Vec<Vec<i128>> = full
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != i)
                    .map(|(_, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let mut d = bareiss_det(minor)?;
                if (i + j) % 2 == 1 {
                    d = -d;
                }
                adj.set(j, i, narrow(d, "adjugate")?);
            }
        }
        Ok(adj)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> Result<usize> {
        let mut m = self.to_i128();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev: i128 = 1;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for cc in c + 1..cols {
                    let v = m[r][cc]
                        .checked_mul(m[rank][c])
                        .and_then(|a| m[r][c].checked_mul(m[rank][cc]).and_then(|b| a.checked_sub(b)))
                        .ok_or(Error::Overflow("rank"))?;
                    m[r][cc] = v / prev;
                }
                m[r][c] = 0;
            }
            prev = m[rank][c];
            rank += 1;
        }
        Ok(rank)
    }

    /// Inverse of a unimodular matrix (`|det| = 1`), which is again integral.
    pub fn unimodular_inverse(&self) -> Result<Option<IntMatrix>> {
        let det = self.determinant()?;
        if det.abs() != 1 {
            return Ok(None);
        }
        let adj = self.adjugate()?;
        Ok(Some(adj.scaled(det)?))
    }

    pub fn scaled(&self, s: i64) -> Result<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|&v| v.checked_mul(s).ok_or(Error::Overflow("scaling")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn to_i128(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| v as i128).collect())
            .collect()
    }

    fn from_i128(m: &[Vec<i128>], what: &'static str) -> Result<IntMatrix> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let data = m
            .iter()
            .flatten()
            .map(|&v| narrow(v, what))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows, cols, data })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

fn bareiss_det(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j]
                    .checked_mul(m[k][k])
                    .ok_or(Error::Overflow("determinant"))?;
                let b = m[i][k]
                    .checked_mul(m[k][j])
                    .ok_or(Error::Overflow("determinant"))?;
                m[i][j] = a.checked_sub(b).ok_or(Error::Overflow("determinant"))? / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// `A = S·D·T` with `S`, `T` unimodular and `D` diagonal with
/// `d_1 | d_2 | …`, all `d_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Left factor, `rows × rows`.
    pub s: IntMatrix,
    /// Diagonal factor, same shape as the input.
    pub d: IntMatrix,
    /// Right factor, `cols × cols`.
    pub t: IntMatrix,
    /// `T^{-1}`, kept because pullback certificates need it.
    pub t_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, …, d_min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    /// Re-multiplies the factors and checks every structural invariant.
    pub fn verify(&self, a: &IntMatrix) -> Result<bool> {
        let prod = self.s.mul(&self.d)?.mul(&self.t)?;
        if &prod != a {
            return Ok(false);
        }
        if self.s.determinant()?.abs() != 1 || self.t.determinant()?.abs() != 1 {
            return Ok(false);
        }
        if self.t.mul(&self.t_inv)? != IntMatrix::identity(self.t.rows()) {
            return Ok(false);
        }
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && self.d.get(i, j) != 0 {
                    return Ok(false);
                }
            }
        }
        let f = self.invariant_factors();
        if f.iter().any(|&v| v < 0) {
            return Ok(false);
        }
        for w in f.windows(2) {
            let (a, b) = (w[0], w[1]);
            let divides = if a == 0 { b == 0 } else { b % a == 0 };
            if !divides {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct SnfState {
    d: Vec<Vec<i128>>,
    s: Vec<Vec<i128>>,
    t: Vec<Vec<i128>>,
    t_inv: Vec<Vec<i128>>,
}

fn identity_i128(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn axpy(dst: i128, c: i128, src: i128) -> Result<i128> {
    c.checked_mul(src)
        .and_then(|p| dst.checked_add(p))
        .ok_or(Error::Overflow("smith normal form"))
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.d.swap(i, j);
        for row in self.s.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.d.iter_mut() {
            row.swap(i, j);
        }
        self.t.swap(i, j);
        for row in self.t_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    /// `row_i += c·row_j` on D, compensated in S.
    fn add_row(&mut self, i: usize, j: usize, c: i128) -> Result<()> {
        for col in 0..self.d[0].len() {
            self.d[i][col] = axpy(self.d[i][col], c, self.d[j][col])?;
        }
        for row in self.s.iter_mut() {
            row[j] = axpy(row[j], -c, row[i])?;
        }
        Ok(())
    }

    /// `col_i += c·col_j` on D, compensated in T and T^{-1}.
    fn add_col(&mut self, i: usize, j: usize, c: i128) -> Result<()> {
        for row in self.d.iter_mut() {
            row[i] = axpy(row[i], c, row[j])?;
        }
        for col in 0..self.t[0].len() {
            self.t[j][col] = axpy(self.t[j][col], -c, self.t[i][col])?;
        }
        for row in self.t_inv.iter_mut() {
            row[i] = axpy(row[i], c, row[j])?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.d[i].iter_mut() {
            *v = -*v;
        }
        for row in self.s.iter_mut() {
            row[i] = -row[i];
        }
    }

    /// Smallest nonzero |entry| in the trailing block, first in row-major order on ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i128)> = None;
        for (i, row) in self.d.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.is_none_or(|(_, _, b)| v.abs() < b) {
                    best = Some((i, j, v.abs()));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

impl IntMatrix {
    /// Smith normal form `A = S·D·T`.
    ///
    /// Pivoting takes the smallest nonzero absolute value of the remaining
    /// block, ties broken by row-major position, so the output is
    /// deterministic.
    pub fn smith_normal_form(&self) -> Result<SmithDecomposition> {
        let (m, n) = (self.rows, self.cols);
        let mut st = SnfState {
            d: self.to_i128(),
            s: identity_i128(m),
            t: identity_i128(n),
            t_inv: identity_i128(n),
        };
        'diag: for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = st.pivot(t) else {
                    break 'diag;
                };
                st.swap_rows(t, pi);
                st.swap_cols(t, pj);
                let p = st.d[t][t];
                let mut clean = true;
                for i in t + 1..m {
                    let q = st.d[i][t] / p;
                    if q != 0 {
                        st.add_row(i, t, -q)?;
                    }
                    clean &= st.d[i][t] == 0;
                }
                for j in t + 1..n {
                    let q = st.d[t][j] / p;
                    if q != 0 {
                        st.add_col(j, t, -q)?;
                    }
                    clean &= st.d[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                let offender =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| st.d[i][j] % p != 0));
                match offender {
                    Some(i) => st.add_row(t, i, 1)?,
                    None => break,
                }
            }
            if st.d[t][t] < 0 {
                st.negate_row(t);
            }
        }
        Ok(SmithDecomposition {
            s: Self::from_i128(&st.s, "smith normal form")?,
            d: Self::from_i128(&st.d, "smith normal form")?,
            t: Self::from_i128(&st.t, "smith normal form")?,
            t_inv: Self::from_i128(&st.t_inv, "smith normal form")?,
        })
    }

    /// Builds `B` (`n × n`, `det B ≠ 0`) and `d ≠ 0` with `A·B = (d·I_m | 0)`.
    ///
    /// For square `A` this is just `B = adj(A)`, `d = det(A)`. Otherwise the
    /// Smith form gives a unimodular `T^{-1}` with `A·T^{-1} = (Ã | 0)`, and
    /// `B = T^{-1}·diag(adj(Ã), I)`.
    pub fn pullback_certificate(&self) -> Result<PullbackCertificate> {
        let (m, n) = (self.rows, self.cols);
        if m > n {
            return Err(Error::RankDeficient {
                rank: self.rank()?,
                expected: m,
            });
        }
        let rank = self.rank()?;
        if rank != m {
            return Err(Error::RankDeficient { rank, expected: m });
        }
        let cert = if m == n {
            PullbackCertificate {
                b: self.adjugate()?,
                d: self.determinant()?,
            }
        } else {
            let snf = self.smith_normal_form()?;
            let diag = IntMatrix::diagonal(&snf.invariant_factors());
            let a_tilde = snf.s.mul(&diag)?;
            let d = a_tilde.determinant()?;
            let adj = a_tilde.adjugate()?;
            let mut block = IntMatrix::identity(n);
            for i in 0..m {
                for j in 0..m {
                    block.set(i, j, adj.get(i, j));
                }
            }
            PullbackCertificate {
                b: snf.t_inv.mul(&block)?,
                d,
            }
        };
        if !cert.verify(self)? {
            return Err(Error::Domain("pullback certificate failed verification".into()));
        }
        Ok(cert)
    }
}

/// Witness that `A·B = (d·I_m | 0)` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackCertificate {
    pub b: IntMatrix,
    pub d: i64,
}

impl PullbackCertificate {
    pub fn verify(&self, a: &IntMatrix) -> Result<bool> {
        let prod = a.mul(&self.b)?;
        let mut expected = IntMatrix::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            expected.set(i, i, self.d);
        }
        Ok(self.d != 0 && prod == expected && self.b.determinant()? != 0)
    }
}

/// JSON form `{"rows": m, "cols": n, "data": [[…], …]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<i64>>,
}

impl From<&IntMatrix> for MatrixJson {
    fn from(m: &IntMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            data: m.to_rows(),
        }
    }
}

impl TryFrom<MatrixJson> for IntMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.data.len() != j.rows {
            return Err(Error::Invalid(format!(
                "\"data\" has {} rows, \"rows\" says {}",
                j.data.len(),
                j.rows
            )));
        }
        if let Some((i, row)) = j.data.iter().enumerate().find(|(_, r)| r.len() != j.cols) {
            return Err(Error::Invalid(format!(
                "row {i} has {} entries, \"cols\" says {}",
                row.len(),
                j.cols
            )));
        }
        let m = IntMatrix::from_rows(&j.data)?;
        m.validate_input()?;
        Ok(m)
    }
}

impl IntMatrix {
    pub fn from_json(s: &str) -> Result<Self> {
        let j: MatrixJson =
            serde_json::from_str(s).map_err(|e| Error::Invalid(format!("matrix JSON: {e}")))?;
        j.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("matrix serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(a: &[Vec<i64>]) -> i128 {
        let n = a.len();
        if n == 1 {
            return a[0][0] as i128;
        }
        let mut acc = 0i128;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * a[0][j] as i128 * cofactor_det(&minor);
        }
        acc
    }

    fn lcg(state: &mut u64) -> i64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*state >> 33) % 19) as i64 - 9
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(IntMatrix::identity(4).determinant().unwrap(), 1);
        assert_eq!(m(&[&[2, 1], &[0, 3]]).determinant().unwrap(), 6);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), 0);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), -1);
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        let mut s = 7u64;
        for _ in 0..50 {
            let rows: Vec<Vec<i64>> = (0..5).map(|_| (0..5).map(|_| lcg(&mut s)).collect()).collect();
            let a = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(a.determinant().unwrap() as i128, cofactor_det(&rows));
        }
    }

    #[test]
    fn determinant_overflow_is_reported() {
        let big = 1_000_000_000_000i64;
        let a = m(&[&[big, 0, 0], &[0, big, 0], &[0, 0, big]]);
        assert_eq!(a.determinant(), Err(Error::Overflow("determinant")));
    }

    #[test]
    fn adjugate_two_by_two() {
        let a = m(&[&[3, -7], &[5, 11]]);
        assert_eq!(a.adjugate().unwrap(), m(&[&[11, 7], &[-5, 3]]));
        assert_eq!(IntMatrix::identity(3).adjugate().unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn adjugate_identity_property() {
        let mut s = 11u64;
        for _ in 0..30 {
            let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| lcg(&mut s)).collect()).collect();
            let a = IntMatrix::from_rows(&rows).unwrap();
            let det = a.determinant().unwrap();
            let prod = a.mul(&a.adjugate().unwrap()).unwrap();
            assert_eq!(prod, IntMatrix::identity(4).scaled(det).unwrap());
        }
    }

    #[test]
    fn snf_examples() {
        let id = IntMatrix::identity(3);
        let snf = id.smith_normal_form().unwrap();
        assert_eq!(snf.d, id);
        assert_eq!(snf.s, id);
        assert_eq!(snf.t, id);

        let a = IntMatrix::diagonal(&[2, 3]);
        let snf = a.smith_normal_form().unwrap();
        assert_eq!(snf.invariant_factors(), vec![1, 6]);
        assert!(snf.verify(&a).unwrap());

        let a = m(&[&[2, 1], &[0, 3]]);
        let snf = a.smith_normal_form().unwrap();
        assert_eq!(snf.invariant_factors(), vec![1, 6]);
        assert!(snf.verify(&a).unwrap());
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let snf = a.smith_normal_form().unwrap();
        assert_eq!(snf.invariant_factors(), vec![2, 6, 12]);
        assert!(snf.verify(&a).unwrap());

        let z = IntMatrix::zeros(2, 3);
        let snf = z.smith_normal_form().unwrap();
        assert_eq!(snf.invariant_factors(), vec![0, 0]);
        assert!(snf.verify(&z).unwrap());

        let r = m(&[&[1, 2]]);
        let snf = r.smith_normal_form().unwrap();
        assert_eq!(snf.invariant_factors(), vec![1]);
        assert!(snf.verify(&r).unwrap());
    }

    #[test]
    fn rank_checks() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank().unwrap(), 1);
        assert_eq!(m(&[&[1, 2, 3]]).rank().unwrap(), 1);
        assert_eq!(IntMatrix::zeros(2, 2).rank().unwrap(), 0);
        assert_eq!(m(&[&[0, 1, 0], &[0, 0, 1]]).rank().unwrap(), 2);
    }

    #[test]
    fn pullback_examples() {
        let a = m(&[&[1, 2]]);
        let c = a.pullback_certificate().unwrap();
        assert_eq!(c.d, 1);
        assert_eq!(c.b, m(&[&[1, -2], &[0, 1]]));

        let c = IntMatrix::identity(3).pullback_certificate().unwrap();
        assert_eq!((c.b, c.d), (IntMatrix::identity(3), 1));

        let a = IntMatrix::diagonal(&[2, 3]);
        let c = a.pullback_certificate().unwrap();
        assert_eq!(c.d, 6);
        assert_eq!(c.b, IntMatrix::diagonal(&[3, 2]));
    }

    #[test]
    fn pullback_rejects_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(
            a.pullback_certificate(),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        );
    }

    #[test]
    fn json_schema() {
        let a = IntMatrix::from_json(r#"{"rows":2,"cols":2,"data":[[2,1],[0,3]]}"#).unwrap();
        assert_eq!(a, m(&[&[2, 1], &[0, 3]]));
        assert_eq!(IntMatrix::from_json(&a.to_json()).unwrap(), a);
        assert!(IntMatrix::from_json(r#"{"rows":2,"cols":2,"data":[[2,1]]}"#).is_err());
        assert!(IntMatrix::from_json(r#"{"rows":1,"cols":1,"data":[[2000000]]}"#).is_err());
    }
}
