//! Dense exact linear algebra over prime fields GF(p), p < 2^16.
//!
//! All elimination is deterministic: the pivot for each column is the first
//! nonzero entry scanning the remaining rows top-down, and solutions of
//! underdetermined systems zero every free variable. This keeps every
//! downstream canonical form reproducible across runs and platforms.

use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Index, IndexMut};

/// A prime modulus together with the arithmetic helpers for GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    /// Validates that `p` is prime and below 2^16.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 16)).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::Dimension("inverse of zero".into()));
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }

    fn check_entry(&self, v: u32) -> Result<u32> {
        if v < self.p {
            Ok(v)
        } else {
            Err(Error::EntryRange {
                value: v,
                modulus: self.p,
            })
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A row-major dense matrix over GF(p). Entries are canonical residues in
/// [0, p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeFieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PrimeFieldMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for &e in &entries {
            field.check_entry(e)?;
        }
        Ok(PrimeFieldMatrix {
            field,
            rows,
            cols,
            data: entries,
        })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        PrimeFieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m[[i, i]] = 1;
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row of length {} in a {cols}-column matrix",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self[[i, j]]).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> Result<Self> {
        for &j in keep {
            if j >= self.cols {
                return Err(Error::Dimension(format!(
                    "column {j} out of range for {} columns",
                    self.cols
                )));
            }
        }
        let mut out = Self::zero(self.field, self.rows, keep.len());
        for i in 0..self.rows {
            for (t, &j) in keep.iter().enumerate() {
                out[[i, t]] = self[[i, j]];
            }
        }
        Ok(out)
    }

    pub fn delete_column(&self, j: usize) -> Result<Self> {
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select_columns(&keep)
    }

    pub fn delete_row(&self, i: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * self.cols);
        for r in 0..self.rows {
            if r != i {
                data.extend_from_slice(self.row(r));
            }
        }
        PrimeFieldMatrix {
            field: self.field,
            rows: self.rows - 1,
            cols: self.cols,
            data,
        }
    }

    pub fn stack_rows(&self, below: &Self) -> Result<Self> {
        self.compatible(below)?;
        if self.cols != below.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {}-column over {}-column matrix",
                self.cols, below.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(PrimeFieldMatrix {
            field: self.field,
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn concat_columns(&self, right: &Self) -> Result<Self> {
        self.compatible(right)?;
        if self.rows != right.rows {
            return Err(Error::Dimension(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, right.rows
            )));
        }
        let mut out = Self::zero(self.field, self.rows, self.cols + right.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[[i, j]] = self[[i, j]];
            }
            for j in 0..right.cols {
                out[[i, self.cols + j]] = right[[i, j]];
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[[j, i]] = self[[i, j]];
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.compatible(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[[i, k]];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[[i, j]] = f.add(out[[i, j]], f.mul(a, rhs[[k, j]]));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        let mut out = vec![0u32; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u32;
            for j in 0..self.cols {
                acc = f.add(acc, f.mul(self[[i, j]], v[j]));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Reduced row echelon form with deterministic pivoting. Returns the
    /// reduced matrix and the pivot columns in increasing order.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| m[[r, col]] != 0);
            let Some(r) = found else { continue };
            m.swap_rows(pivot_row, r);
            let inv = f
                .inv(m[[pivot_row, col]])
                .expect("pivot entry nonzero by choice");
            m.scale_row(pivot_row, inv);
            for r2 in 0..m.rows {
                if r2 != pivot_row && m[[r2, col]] != 0 {
                    let factor = m[[r2, col]];
                    m.subtract_scaled_row(r2, pivot_row, factor);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `self * x = rhs` exactly, zeroing every free variable.
    pub fn solve(&self, rhs: &[u32]) -> Result<Vec<u32>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} against {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let rhs_col = PrimeFieldMatrix::new(
            self.field,
            self.rows,
            1,
            rhs.iter()
                .map(|&v| self.field.check_entry(v))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let aug = self.concat_columns(&rhs_col)?;
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![0u32; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = red[[row, self.cols]];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let aug = self.concat_columns(&Self::identity(self.field, self.rows))?;
        let (red, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::NoSolution);
        }
        let keep: Vec<usize> = (self.cols..2 * self.cols).collect();
        red.select_columns(&keep)
    }

    /// A basis of the right nullspace, one vector per non-pivot column, in
    /// increasing column order. Each vector has a 1 at its free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (red, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(red[[row, free]]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, factor: u32) {
        let f = self.field;
        for j in 0..self.cols {
            self[[r, j]] = f.mul(self[[r, j]], factor);
        }
    }

    /// row[target] -= factor * row[source]
    fn subtract_scaled_row(&mut self, target: usize, source: usize, factor: u32) {
        let f = self.field;
        for j in 0..self.cols {
            let s = f.mul(factor, self[[source, j]]);
            self[[target, j]] = f.sub(self[[target, j]], s);
        }
    }
}

impl Index<[usize; 2]> for PrimeFieldMatrix {
    type Output = u32;

    fn index(&self, idx: [usize; 2]) -> &u32 {
        &self.data[idx[0] * self.cols + idx[1]]
    }
}

impl IndexMut<[usize; 2]> for PrimeFieldMatrix {
    fn index_mut(&mut self, idx: [usize; 2]) -> &mut u32 {
        &mut self.data[idx[0] * self.cols + idx[1]]
    }
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "PrimeFieldMatrix GF({}) {}x{}",
            self.field.modulus(),
            self.rows,
            self.cols
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn mat(p: u64, rows: usize, cols: usize, entries: &[u32]) -> PrimeFieldMatrix {
        PrimeFieldMatrix::new(gf(p), rows, cols, entries.to_vec()).unwrap()
    }

    /// Oracle: all vectors in the row span of `m`, by enumerating every
    /// coefficient vector. Exponential; for tiny matrices only.
    fn row_span(m: &PrimeFieldMatrix) -> std::collections::HashSet<Vec<u32>> {
        let p = m.field().modulus();
        let mut out = std::collections::HashSet::new();
        let total = (p as u64).pow(m.rows() as u32);
        for code in 0..total {
            let mut c = code;
            let mut v = vec![0u32; m.cols()];
            for i in 0..m.rows() {
                let coef = (c % p as u64) as u32;
                c /= p as u64;
                for j in 0..m.cols() {
                    v[j] = m.field().add(v[j], m.field().mul(coef, m[[i, j]]));
                }
            }
            out.insert(v);
        }
        out
    }

    #[test]
    fn rejects_non_primes() {
        for bad in [0u64, 1, 4, 6, 9, 65536, 65537, 100000] {
            assert!(FieldSpec::new(bad).is_err(), "accepted {bad}");
        }
        for good in [2u64, 3, 5, 7, 65521] {
            assert!(FieldSpec::new(good).is_ok(), "rejected {good}");
        }
    }

    #[test]
    fn inverse_round_trips_over_gf251() {
        let f = gf(251);
        for a in 1..251u32 {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), 1, "a = {a}");
        }
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = PrimeFieldMatrix::identity(gf(2), 3);
        let (red, pivots) = id.rref();
        assert_eq!(red, id);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_collapses_duplicate_rows() {
        let m = mat(2, 2, 2, &[1, 1, 1, 1]);
        let (red, pivots) = m.rref();
        assert_eq!(red, mat(2, 2, 2, &[1, 1, 0, 0]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_preserves_row_space_gf3() {
        let m = mat(3, 3, 4, &[1, 2, 0, 1, 2, 1, 1, 0, 0, 2, 2, 2]);
        let (red, _) = m.rref();
        assert_eq!(row_span(&m), row_span(&red));
    }

    #[test]
    fn rank_matches_row_span_oracle() {
        let cases = [
            mat(2, 3, 3, &[1, 0, 1, 0, 1, 1, 1, 1, 0]),
            mat(2, 2, 5, &[0; 10]),
            mat(3, 3, 3, &[1, 1, 1, 2, 2, 2, 0, 1, 2]),
            mat(5, 2, 2, &[1, 2, 3, 4]),
        ];
        for m in cases {
            let span = row_span(&m);
            let p = m.field().modulus() as u64;
            let expected = (span.len() as f64).log(p as f64).round() as usize;
            assert_eq!(m.rank(), expected, "matrix {m:?}");
        }
    }

    #[test]
    fn dependent_rows_detected() {
        // row0 + row1 = row2 over GF(2)
        let m = mat(2, 3, 3, &[1, 0, 1, 0, 1, 1, 1, 1, 0]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_matches_exhaustive_search_gf3() {
        // columns (1,1) and (1,2); target (2,0); unique solution found by
        // trying all 9 coefficient pairs is (1,1).
        let m = mat(3, 2, 2, &[1, 1, 1, 2]);
        let target = vec![2u32, 0];
        let mut oracle = None;
        for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                let got = m.mul_vec(&[c0, c1]).unwrap();
                if got == target {
                    assert!(oracle.is_none(), "solution should be unique");
                    oracle = Some(vec![c0, c1]);
                }
            }
        }
        assert_eq!(m.solve(&target).unwrap(), oracle.unwrap());
        assert_eq!(m.solve(&target).unwrap(), vec![1, 1]);
    }

    #[test]
    fn solve_zeroes_free_variables() {
        // x + y = 1 over GF(2): solutions (1,0) and (0,1); the deterministic
        // answer zeroes the free column y.
        let m = mat(2, 1, 2, &[1, 1]);
        assert_eq!(m.solve(&[1]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = mat(2, 2, 1, &[1, 1]);
        assert!(matches!(m.solve(&[0, 1]), Err(Error::NoSolution)));
    }

    #[test]
    fn inverse_round_trips() {
        // det = 26 = 1 mod 5
        let m = mat(5, 3, 3, &[1, 2, 0, 0, 1, 4, 3, 0, 2]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), PrimeFieldMatrix::identity(gf(5), 3));
        assert_eq!(inv.mul(&m).unwrap(), PrimeFieldMatrix::identity(gf(5), 3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = mat(3, 2, 2, &[1, 2, 2, 1]);
        // det = 1 - 4 = -3 = 0 mod 3
        assert!(m.inverse().is_err());
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = mat(2, 1, 2, &[1, 1]);
        let ns = m.nullspace_basis();
        assert_eq!(ns, vec![vec![1, 1]]);
        let m2 = mat(3, 2, 4, &[1, 0, 2, 1, 0, 1, 1, 2]);
        let ns2 = m2.nullspace_basis();
        assert_eq!(ns2.len(), m2.cols() - m2.rank());
        for v in &ns2 {
            assert!(m2.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn select_columns_orders_and_bounds() {
        let m = mat(2, 2, 3, &[1, 0, 1, 0, 1, 1]);
        let s = m.select_columns(&[2, 0]).unwrap();
        assert_eq!(s, mat(2, 2, 2, &[1, 1, 1, 0]));
        assert!(m.select_columns(&[3]).is_err());
    }
}
