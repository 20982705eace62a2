//! Subspaces of GF(p)^n in canonical form.
//!
//! A subspace is stored as the reduced row echelon form of any spanning set,
//! with zero rows dropped, so equal subspaces compare equal entrywise and
//! hashing/equality are O(1) per entry.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, PrimeFieldMatrix};
use crate::pfm;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    /// RREF, full row rank, no zero rows.
    basis: PrimeFieldMatrix,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: PrimeFieldMatrix::zero(field, 0, ambient),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: PrimeFieldMatrix::identity(field, ambient),
        }
    }

    /// The span of the given vectors.
    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let m = PrimeFieldMatrix::from_rows(field, ambient, vectors)?;
        Ok(Self::from_rows_matrix(m))
    }

    /// The row space of a matrix.
    pub fn from_rows_matrix(m: PrimeFieldMatrix) -> Self {
        let ambient = m.cols();
        let field = m.field();
        let (red, pivots) = m.rref();
        let mut rows = Vec::with_capacity(pivots.len());
        for i in 0..pivots.len() {
            rows.push(red.row(i).to_vec());
        }
        let basis = PrimeFieldMatrix::from_rows(field, ambient, &rows)
            .expect("rows from rref have correct width");
        Subspace {
            field,
            ambient,
            basis,
        }
    }

    /// The span of a set of columns of a matrix.
    pub fn column_span(m: &PrimeFieldMatrix, cols: &[usize]) -> Result<Self> {
        let sub = m.select_columns(cols)?;
        Ok(Self::from_rows_matrix(sub.transpose()))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical basis rows.
    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        self.basis.row_vectors()
    }

    pub fn basis_matrix(&self) -> &PrimeFieldMatrix {
        &self.basis
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: v.len(),
            });
        }
        let f = self.field;
        let mut w: Vec<u32> = v.to_vec();
        for i in 0..self.basis.rows() {
            // canonical basis rows have leading 1 at distinct pivot columns
            let pivot = self
                .basis
                .row(i)
                .iter()
                .position(|&x| x != 0)
                .expect("no zero rows in canonical basis");
            if w[pivot] != 0 {
                let factor = w[pivot];
                for (j, out) in w.iter_mut().enumerate() {
                    *out = f.sub(*out, f.mul(factor, self.basis[[i, j]]));
                }
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for row in other.basis_rows() {
            if !self.contains_vector(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let stacked = self.basis.stack_rows(&other.basis)?;
        Ok(Self::from_rows_matrix(stacked))
    }

    /// Intersection by the Zassenhaus block construction: row reduce
    /// [B_self | B_self; B_other | 0]; rows whose left half vanished carry
    /// intersection vectors in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.ambient;
        let f = self.field;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for r in self.basis_rows() {
            let mut v = r.clone();
            v.extend_from_slice(&r);
            rows.push(v);
        }
        for r in other.basis_rows() {
            let mut v = r.clone();
            v.resize(2 * n, 0);
            rows.push(v);
        }
        let block = PrimeFieldMatrix::from_rows(f, 2 * n, &rows)?;
        let (red, pivots) = block.rref();
        let mut inter_rows = Vec::new();
        for i in 0..pivots.len() {
            let row = red.row(i);
            if row[..n].iter().all(|&x| x == 0) {
                inter_rows.push(row[n..].to_vec());
            }
        }
        Self::span(f, n, &inter_rows)
    }

    /// dim(self / other) = dim self - dim(self `intersect` other).
    pub fn quotient_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.dim() - self.intersect(other)?.dim())
    }

    /// Extends `seed` (required to lie inside `self`) to a basis of `self`
    /// by greedily taking rows of the canonical basis in order. Returns only
    /// the appended vectors.
    pub fn extend_basis(&self, seed: &Self) -> Result<Vec<Vec<u32>>> {
        self.check_compatible(seed)?;
        if !self.contains(seed)? {
            return Err(Error::Containment(
                "seed subspace is not contained in the target".into(),
            ));
        }
        let mut working = seed.basis_rows();
        let mut added = Vec::new();
        let mut current_dim = seed.dim();
        for row in self.basis_rows() {
            let mut candidate = working.clone();
            candidate.push(row.clone());
            let m = PrimeFieldMatrix::from_rows(self.field, self.ambient, &candidate)?;
            if m.rank() > current_dim {
                current_dim += 1;
                working.push(row.clone());
                added.push(row);
            }
            if current_dim == self.dim() {
                break;
            }
        }
        debug_assert_eq!(current_dim, self.dim());
        Ok(added)
    }

    pub fn to_pfm(&self) -> String {
        pfm::write(&self.basis, &pfm::default_labels(self.ambient))
    }

    pub fn from_pfm(text: &str) -> Result<Self> {
        let (m, _) = pfm::parse(text)?;
        Ok(Self::from_rows_matrix(m))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of GF({})^{})",
            self.dim(),
            self.field.modulus(),
            self.ambient
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn span_of_parallel_vectors_has_dim_one() {
        let s = Subspace::span(gf(3), 3, &[vec![1, 1, 0], vec![2, 2, 0]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_rows(), vec![vec![1, 1, 0]]);
    }

    #[test]
    fn empty_span_is_zero() {
        let s = Subspace::span(gf(3), 3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s, Subspace::zero(gf(3), 3));
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(gf(5), 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        let b = Subspace::span(gf(5), 2, &[vec![3, 1]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sum_and_intersect_dimension_formula() {
        // dim(X+Y) + dim(X∩Y) = dim X + dim Y, checked on a GF(2)^4 sample
        let x = Subspace::span(gf(2), 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let y = Subspace::span(gf(2), 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let s = x.sum(&y).unwrap();
        let i = x.intersect(&y).unwrap();
        assert_eq!(s.dim() + i.dim(), x.dim() + y.dim());
        assert_eq!(i.basis_rows(), vec![vec![0, 1, 0, 0]]);
    }

    #[test]
    fn intersect_matches_membership_oracle() {
        // brute-force oracle: enumerate all vectors of GF(3)^3, keep those in
        // both spaces, and compare spans.
        let x = Subspace::span(gf(3), 3, &[vec![1, 0, 2], vec![0, 1, 1]]).unwrap();
        let y = Subspace::span(gf(3), 3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let mut both = Vec::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    let v = vec![a, b, c];
                    if x.contains_vector(&v).unwrap() && y.contains_vector(&v).unwrap() {
                        both.push(v);
                    }
                }
            }
        }
        let oracle = Subspace::span(gf(3), 3, &both).unwrap();
        assert_eq!(x.intersect(&y).unwrap(), oracle);
    }

    #[test]
    fn quotient_dim_example() {
        let x = Subspace::span(gf(2), 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let a = Subspace::span(gf(2), 3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(x.quotient_dim(&a).unwrap(), 1);
    }

    #[test]
    fn extend_basis_is_greedy_and_minimal() {
        let full = Subspace::full(gf(2), 3);
        let seed = Subspace::span(gf(2), 3, &[vec![1, 1, 0]]).unwrap();
        let added = full.extend_basis(&seed).unwrap();
        // canonical basis rows of the full space are e1, e2, e3; e2 is
        // dependent on {seed, e1}, so the greedy answer is [e1, e3]
        assert_eq!(added, vec![vec![1, 0, 0], vec![0, 0, 1]]);
        let together: Vec<Vec<u32>> = seed.basis_rows().into_iter().chain(added).collect();
        let rebuilt = Subspace::span(gf(2), 3, &together).unwrap();
        assert_eq!(rebuilt, full);
    }

    #[test]
    fn extend_basis_rejects_non_contained_seed() {
        let target = Subspace::span(gf(2), 3, &[vec![1, 0, 0]]).unwrap();
        let seed = Subspace::span(gf(2), 3, &[vec![0, 1, 0]]).unwrap();
        assert!(matches!(
            target.extend_basis(&seed),
            Err(Error::Containment(_))
        ));
    }

    #[test]
    fn ambient_mismatch_detected() {
        let a = Subspace::zero(gf(2), 3);
        let b = Subspace::zero(gf(2), 4);
        assert!(matches!(a.sum(&b), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn pfm_round_trip() {
        let s = Subspace::span(gf(5), 4, &[vec![1, 2, 3, 4], vec![0, 1, 0, 2]]).unwrap();
        let t = Subspace::from_pfm(&s.to_pfm()).unwrap();
        assert_eq!(s, t);
    }
}
