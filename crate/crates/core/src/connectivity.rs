//! Connectivity functions on represented matroids: the two- and
//! one-parameter lambda functions, and the multi-block lambda-star on both
//! element partitions and subspace families.

use crate::error::{Error, Result};
use crate::matroid::RepresentedMatroid;
use crate::subspace::Subspace;

pub const BLOCK_GUARD: usize = 20;

/// An ordered family of pairwise disjoint element sets of one matroid,
/// held as column indices.
#[derive(Debug, Clone)]
pub struct PartitionFamily {
    blocks: Vec<Vec<usize>>,
}

impl PartitionFamily {
    pub fn from_indices(m: &RepresentedMatroid, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m.len()];
        for b in &blocks {
            for &j in b {
                if j >= m.len() {
                    return Err(Error::Dimension(format!(
                        "element index {j} out of range for {} elements",
                        m.len()
                    )));
                }
                if seen[j] {
                    return Err(Error::NotDisjoint(m.labels()[j].clone()));
                }
                seen[j] = true;
            }
        }
        Ok(PartitionFamily { blocks })
    }

    pub fn from_labels<S: AsRef<str>>(
        m: &RepresentedMatroid,
        blocks: &[Vec<S>],
    ) -> Result<Self> {
        let idx_blocks = blocks
            .iter()
            .map(|b| m.indices_of(b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(m, idx_blocks)
    }

    /// One block per element, in column order.
    pub fn singletons(m: &RepresentedMatroid) -> Self {
        PartitionFamily {
            blocks: (0..m.len()).map(|j| vec![j]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn check_disjoint(m: &RepresentedMatroid, x: &[usize], y: &[usize]) -> Result<()> {
    let mut seen = vec![false; m.len()];
    for &j in x {
        seen[j] = true;
    }
    for &j in y {
        if seen[j] {
            return Err(Error::NotDisjoint(m.labels()[j].clone()));
        }
    }
    Ok(())
}

/// lambda(X, Y) = rk X + rk Y - rk(X u Y) for disjoint X, Y.
pub fn lambda2(m: &RepresentedMatroid, x: &[usize], y: &[usize]) -> Result<usize> {
    check_disjoint(m, x, y)?;
    let rx = m.rank_of_indices(x);
    let ry = m.rank_of_indices(y);
    let mut both: Vec<usize> = x.iter().chain(y.iter()).copied().collect();
    both.sort_unstable();
    Ok(rx + ry - m.rank_of_indices(&both))
}

pub fn lambda2_labels<S: AsRef<str>>(
    m: &RepresentedMatroid,
    x: &[S],
    y: &[S],
) -> Result<usize> {
    lambda2(m, &m.indices_of(x)?, &m.indices_of(y)?)
}

/// lambda(X) = lambda(X, E - X).
pub fn lambda1(m: &RepresentedMatroid, x: &[usize]) -> Result<usize> {
    let mut member = vec![false; m.len()];
    for &j in x {
        if j >= m.len() {
            return Err(Error::Dimension(format!(
                "element index {j} out of range for {} elements",
                m.len()
            )));
        }
        member[j] = true;
    }
    let complement: Vec<usize> = (0..m.len()).filter(|&j| !member[j]).collect();
    lambda2(m, x, &complement)
}

/// lambda*(X_1, ..., X_k) = max over subsets I of lambda(U_I, U_rest).
/// By complement symmetry only subsets containing the first block are
/// enumerated. Full enumeration, no early exit, so results are reproducible.
pub fn lambda_star(m: &RepresentedMatroid, family: &PartitionFamily) -> Result<usize> {
    let k = family.len();
    if k > BLOCK_GUARD {
        return Err(Error::GuardExceeded {
            what: "lambda-star block count",
            limit: BLOCK_GUARD,
            got: k,
        });
    }
    if k == 0 {
        return Ok(0);
    }
    let mut best = 0usize;
    for i in 0..(1u32 << (k - 1)) {
        let mask = (i << 1) | 1;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (b, block) in family.blocks().iter().enumerate() {
            if mask >> b & 1 == 1 {
                left.extend_from_slice(block);
            } else {
                right.extend_from_slice(block);
            }
        }
        best = best.max(lambda2(m, &left, &right)?);
    }
    Ok(best)
}

pub fn lambda_star_labels<S: AsRef<str>>(
    m: &RepresentedMatroid,
    blocks: &[Vec<S>],
) -> Result<usize> {
    lambda_star(m, &PartitionFamily::from_labels(m, blocks)?)
}

/// lambda* on subspaces: max over subsets I of
/// dim(sum over I) + dim(sum over rest) - dim(sum over all).
pub fn lambda_star_spaces(spaces: &[Subspace]) -> Result<usize> {
    let k = spaces.len();
    if k > BLOCK_GUARD {
        return Err(Error::GuardExceeded {
            what: "lambda-star space count",
            limit: BLOCK_GUARD,
            got: k,
        });
    }
    if k == 0 {
        return Ok(0);
    }
    for s in &spaces[1..] {
        if s.field() != spaces[0].field() || s.ambient() != spaces[0].ambient() {
            return Err(Error::AmbientMismatch {
                left: spaces[0].ambient(),
                right: s.ambient(),
            });
        }
    }
    let field = spaces[0].field();
    let ambient = spaces[0].ambient();
    let mut total = Subspace::zero(field, ambient);
    for s in spaces {
        total = total.sum(s)?;
    }
    let mut best = 0usize;
    for i in 0..(1u32 << (k - 1)) {
        let mask = (i << 1) | 1;
        let mut left = Subspace::zero(field, ambient);
        let mut right = Subspace::zero(field, ambient);
        for (b, s) in spaces.iter().enumerate() {
            if mask >> b & 1 == 1 {
                left = left.sum(s)?;
            } else {
                right = right.sum(s)?;
            }
        }
        best = best.max(left.dim() + right.dim() - total.dim());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, PrimeFieldMatrix};
    use crate::generators;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn parallel_pair() -> RepresentedMatroid {
        let m = PrimeFieldMatrix::new(gf(2), 1, 2, vec![1, 1]).unwrap();
        RepresentedMatroid::with_default_labels(m).unwrap()
    }

    /// Independent oracle: enumerate every one of the 2^k subsets instead of
    /// the half the implementation visits.
    fn lambda_star_all_subsets(m: &RepresentedMatroid, family: &PartitionFamily) -> usize {
        let k = family.len();
        let mut best = 0;
        for mask in 0u32..(1 << k) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (b, block) in family.blocks().iter().enumerate() {
                if mask >> b & 1 == 1 {
                    left.extend_from_slice(block);
                } else {
                    right.extend_from_slice(block);
                }
            }
            best = best.max(lambda2(m, &left, &right).unwrap());
        }
        best
    }

    #[test]
    fn lambda2_empty_side_is_zero() {
        let m = parallel_pair();
        assert_eq!(lambda2(&m, &[], &[0, 1]).unwrap(), 0);
        assert_eq!(lambda2(&m, &[], &[]).unwrap(), 0);
    }

    #[test]
    fn lambda2_parallel_split() {
        let m = parallel_pair();
        assert_eq!(lambda2(&m, &[0], &[1]).unwrap(), 1);
    }

    #[test]
    fn lambda2_rejects_overlap() {
        let m = parallel_pair();
        assert!(matches!(
            lambda2(&m, &[0], &[0, 1]),
            Err(Error::NotDisjoint(_))
        ));
    }

    #[test]
    fn lambda1_of_empty_and_ground() {
        let m = parallel_pair();
        assert_eq!(lambda1(&m, &[]).unwrap(), 0);
        assert_eq!(lambda1(&m, &[0, 1]).unwrap(), 0);
    }

    #[test]
    fn lambda1_symmetric_under_complement() {
        let (m, _) = generators::fat_cycle(3, gf(2)).unwrap();
        for x in [vec![0], vec![0, 1, 2], vec![0, 3, 6], vec![1, 4, 5, 7]] {
            let comp: Vec<usize> = (0..m.len()).filter(|j| !x.contains(j)).collect();
            assert_eq!(lambda1(&m, &x).unwrap(), lambda1(&m, &comp).unwrap());
        }
    }

    #[test]
    fn fat_cycle_class_against_rest() {
        let (m, _) = generators::fat_cycle(3, gf(2)).unwrap();
        let class: Vec<usize> = (0..3).collect();
        assert_eq!(lambda1(&m, &class).unwrap(), 1);
    }

    #[test]
    fn lambda_star_single_block_and_free_singletons() {
        let m = parallel_pair();
        let whole = PartitionFamily::from_indices(&m, vec![vec![0, 1]]).unwrap();
        assert_eq!(lambda_star(&m, &whole).unwrap(), 0);

        let free = RepresentedMatroid::with_default_labels(PrimeFieldMatrix::identity(gf(3), 4))
            .unwrap();
        let singles = PartitionFamily::singletons(&free);
        assert_eq!(lambda_star(&free, &singles).unwrap(), 0);
    }

    #[test]
    fn fat_cycle_classes_have_lambda_star_one() {
        for n in [2usize, 3, 4] {
            let (m, _) = generators::fat_cycle(n, gf(2)).unwrap();
            let blocks: Vec<Vec<usize>> = (0..n)
                .map(|c| (c * n..(c + 1) * n).collect())
                .collect();
            let family = PartitionFamily::from_indices(&m, blocks).unwrap();
            assert_eq!(lambda_star(&m, &family).unwrap(), 1, "n = {n}");
            assert_eq!(lambda_star_all_subsets(&m, &family), 1, "oracle, n = {n}");
        }
    }

    #[test]
    fn half_enumeration_matches_full_oracle() {
        let m = PrimeFieldMatrix::new(
            gf(3),
            3,
            6,
            vec![1, 0, 0, 1, 1, 2, 0, 1, 0, 1, 2, 0, 0, 0, 1, 0, 1, 1],
        )
        .unwrap();
        let m = RepresentedMatroid::with_default_labels(m).unwrap();
        let partitions = vec![
            vec![vec![0, 1], vec![2, 3], vec![4, 5]],
            vec![vec![0], vec![1, 2], vec![3], vec![4, 5]],
            vec![vec![0, 5], vec![1, 4], vec![2, 3]],
            vec![vec![0, 1, 2, 3, 4, 5]],
        ];
        for blocks in partitions {
            let family = PartitionFamily::from_indices(&m, blocks).unwrap();
            assert_eq!(
                lambda_star(&m, &family).unwrap(),
                lambda_star_all_subsets(&m, &family)
            );
        }
    }

    #[test]
    fn lambda_star_guard() {
        let m = RepresentedMatroid::with_default_labels(PrimeFieldMatrix::new(
            gf(2),
            1,
            21,
            vec![1; 21],
        )
        .unwrap())
        .unwrap();
        let singles = PartitionFamily::singletons(&m);
        assert!(matches!(
            lambda_star(&m, &singles),
            Err(Error::GuardExceeded { limit: 20, .. })
        ));
    }

    #[test]
    fn spaces_agree_with_element_blocks() {
        let (m, _) = generators::fat_cycle(3, gf(2)).unwrap();
        let blocks: Vec<Vec<usize>> = (0..3).map(|c| (c * 3..(c + 1) * 3).collect()).collect();
        let spaces: Vec<Subspace> = blocks
            .iter()
            .map(|b| m.column_span(b).unwrap())
            .collect();
        assert_eq!(lambda_star_spaces(&spaces).unwrap(), 1);
        let family = PartitionFamily::from_indices(&m, blocks).unwrap();
        assert_eq!(
            lambda_star_spaces(&spaces).unwrap(),
            lambda_star(&m, &family).unwrap()
        );
    }

    #[test]
    fn spaces_trivial_cases() {
        let f = gf(5);
        let one = Subspace::span(f, 4, &[vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(lambda_star_spaces(&[one]).unwrap(), 0);

        let a = Subspace::span(f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let b = Subspace::span(f, 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(lambda_star_spaces(&[a, b]).unwrap(), 0);
    }

    #[test]
    fn spaces_ambient_mismatch() {
        let f = gf(5);
        let a = Subspace::span(f, 3, &[vec![1, 0, 0]]).unwrap();
        let b = Subspace::span(f, 4, &[vec![1, 0, 0, 0]]).unwrap();
        assert!(matches!(
            lambda_star_spaces(&[a, b]),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn lambda2_monotone_in_second_argument() {
        let (m, _) = generators::fat_cycle(3, gf(2)).unwrap();
        let triples = [
            (vec![0usize], vec![1usize], vec![2usize, 3]),
            (vec![0, 4], vec![1, 2], vec![5, 6, 7]),
            (vec![3, 4, 5], vec![0], vec![6, 7]),
        ];
        for (a, b, y) in triples {
            let mut by: Vec<usize> = b.iter().chain(y.iter()).copied().collect();
            by.sort_unstable();
            assert!(lambda2(&m, &a, &b).unwrap() <= lambda2(&m, &a, &by).unwrap());
        }
    }
}
