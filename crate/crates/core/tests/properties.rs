//! Randomized algebraic properties, driven by seeded instances so failures
//! replay. Matrices come from `random_instance`; proptest only picks the
//! seeds and shapes.

use matdepth_core::connectivity::lambda1;
use matdepth_core::depth::{cdd, verify_certificate, DepthMode};
use matdepth_core::field::FieldSpec;
use matdepth_core::generators::{random_instance, SplitMix64};
use matdepth_core::matroid::{MinorSchedule, RepresentedMatroid, ScheduleStep, StepKind};
use matdepth_core::subspace::Subspace;
use proptest::prelude::*;

fn gf(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

fn field_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

fn instance(seed: u64, rows: usize, cols: usize, p: u64) -> RepresentedMatroid {
    random_instance(seed, rows, cols, gf(p)).unwrap()
}

fn subset_of(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SplitMix64::new(seed);
    (0..n).filter(|_| rng.below(2) == 1).collect()
}

proptest! {
    #[test]
    fn rref_is_idempotent(seed: u64, rows in 1usize..6, cols in 1usize..8, p in field_strategy()) {
        let m = instance(seed, rows, cols, p);
        let (once, _) = m.matrix().rref();
        let (twice, _) = once.rref();
        prop_assert_eq!(&once, &twice);
    }

    #[test]
    fn rank_is_monotone_and_submodular(seed: u64, rows in 1usize..5, cols in 2usize..8, p in field_strategy()) {
        let m = instance(seed, rows, cols, p);
        let n = m.len();
        let x = subset_of(n, seed ^ 0x5eed_0001);
        let y = subset_of(n, seed ^ 0x5eed_0002);
        let union: Vec<usize> = (0..n).filter(|j| x.contains(j) || y.contains(j)).collect();
        let inter: Vec<usize> = x.iter().copied().filter(|j| y.contains(j)).collect();
        let sub: Vec<usize> = x.iter().copied().filter(|j| union.contains(j)).collect();
        prop_assert!(m.rank_of_indices(&sub) <= m.rank_of_indices(&union));
        prop_assert!(
            m.rank_of_indices(&union) + m.rank_of_indices(&inter)
                <= m.rank_of_indices(&x) + m.rank_of_indices(&y)
        );
    }

    #[test]
    fn lambda_is_symmetric(seed: u64, rows in 1usize..4, cols in 2usize..8, p in field_strategy()) {
        let m = instance(seed, rows, cols, p);
        let x = subset_of(m.len(), seed ^ 0x5eed_0003);
        let complement: Vec<usize> = (0..m.len()).filter(|j| !x.contains(j)).collect();
        prop_assert_eq!(lambda1(&m, &x).unwrap(), lambda1(&m, &complement).unwrap());
    }

    #[test]
    fn cdd_ignores_labels_and_column_order(seed: u64, rows in 1usize..4, cols in 2usize..7, p in field_strategy()) {
        let m = instance(seed, rows, cols, p);
        let (value, cert) = cdd(&m).unwrap();
        prop_assert_eq!(verify_certificate(&m, &cert, DepthMode::Cdd).unwrap(), value);
        let mut order: Vec<usize> = (0..m.len()).collect();
        let mut rng = SplitMix64::new(seed ^ 0x5eed_0004);
        for i in (1..order.len()).rev() {
            order.swap(i, rng.below(i as u64 + 1) as usize);
        }
        let shuffled = m.restrict_indices(&order).unwrap();
        let renamed = RepresentedMatroid::new(
            shuffled.matrix().clone(),
            (0..shuffled.len()).map(|j| format!("x{j}")).collect(),
        )
        .unwrap();
        prop_assert_eq!(cdd(&renamed).unwrap().0, value);
    }

    #[test]
    fn disjoint_schedule_steps_commute(seed: u64, rows in 1usize..4, cols in 2usize..7, p in field_strategy()) {
        let m = instance(seed, rows, cols, p);
        let mut rng = SplitMix64::new(seed ^ 0x5eed_0005);
        let i = rng.below(m.len() as u64) as usize;
        let mut j = rng.below(m.len() as u64) as usize;
        if i == j {
            j = (j + 1) % m.len();
        }
        if i == j {
            return Ok(());
        }
        let kinds = [StepKind::Contract, StepKind::Delete];
        let a = ScheduleStep { kind: kinds[rng.below(2) as usize], label: m.labels()[i].clone() };
        let b = ScheduleStep { kind: kinds[rng.below(2) as usize], label: m.labels()[j].clone() };
        let fwd = m.apply_schedule(&MinorSchedule::new(vec![a.clone(), b.clone()]).unwrap());
        let rev = m.apply_schedule(&MinorSchedule::new(vec![b, a]).unwrap());
        // a contraction can turn the other element into a loop, so one order
        // may be illegal; when both run they must agree.
        if let (Ok(x), Ok(y)) = (fwd, rev) {
            prop_assert_eq!(x.labels(), y.labels());
            prop_assert_eq!(x.matrix(), y.matrix());
        }
    }

    #[test]
    fn cdd_never_grows_under_single_step_minors(seed: u64, rows in 1usize..4, cols in 2usize..7, p in field_strategy()) {
        let m = instance(seed, rows, cols, p);
        let (value, _) = cdd(&m).unwrap();
        let mut rng = SplitMix64::new(seed ^ 0x5eed_0006);
        let label = m.labels()[rng.below(m.len() as u64) as usize].clone();
        let deleted = m.delete(&label).unwrap();
        if !deleted.is_empty() {
            prop_assert!(cdd(&deleted).unwrap().0 <= value);
        }
        if !m.is_loop(&label).unwrap() {
            let contracted = m.contract(&label).unwrap();
            if !contracted.is_empty() {
                prop_assert!(cdd(&contracted).unwrap().0 <= value);
            }
        }
    }

    #[test]
    fn subspace_dimension_formula(seed: u64, ambient in 1usize..7, p in field_strategy()) {
        let f = gf(p);
        let mut rng = SplitMix64::new(seed);
        let mut draw = |rows: usize| -> Subspace {
            let vectors: Vec<Vec<u32>> = (0..rows)
                .map(|_| (0..ambient).map(|_| rng.below(p) as u32).collect())
                .collect();
            Subspace::span(f, ambient, &vectors).unwrap()
        };
        let u = draw(1 + (seed % 3) as usize);
        let v = draw(1 + (seed % 2) as usize);
        let sum = u.sum(&v).unwrap();
        let inter = u.intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + inter.dim(), u.dim() + v.dim());
        prop_assert!(sum.contains(&u).unwrap() && sum.contains(&v).unwrap());
        prop_assert!(u.contains(&inter).unwrap() && v.contains(&inter).unwrap());
    }
}
