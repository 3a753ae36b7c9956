//! Norm identities on random integer class functions, driven by proptest.

use littlewood::littlewood::{lambda, lambda_norm, trace_norm_oracle};
use littlewood::{auto_table, CharacterTable, ClassFunction, ClassSet, Group};
use proptest::prelude::*;

fn fixture(spec: &str) -> (Group, CharacterTable) {
    let g = Group::build(&spec.parse().unwrap()).unwrap();
    let t = auto_table(&g).unwrap();
    (g, t)
}

fn values(g: &Group) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, g.class_count())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_and_oracle_norms_agree_on_s4(v in values(&fixture("S4").0)) {
        let (g, t) = fixture("S4");
        let f = ClassFunction::integers(&g, &v).unwrap();
        let rep = lambda_norm(&f, &t).unwrap();
        prop_assert!(rep.lambda.exact().is_some());
        let oracle = trace_norm_oracle(&f).unwrap();
        prop_assert!((rep.lambda.value() - oracle).abs() <= 1e-8 * (1.0 + oracle));
    }

    #[test]
    fn triangle_inequality_on_d6(a in values(&fixture("D6").0), b in values(&fixture("D6").0)) {
        let (g, t) = fixture("D6");
        let f1 = ClassFunction::integers(&g, &a).unwrap();
        let f2 = ClassFunction::integers(&g, &b).unwrap();
        let sum = lambda(&f1.add(&f2).unwrap(), &t).unwrap();
        prop_assert!(sum <= lambda(&f1, &t).unwrap() + lambda(&f2, &t).unwrap() + 1e-9);
    }

    #[test]
    fn set_norm_lies_between_one_and_square_root_of_size(mask in prop::collection::vec(any::<bool>(), 5)) {
        let (g, t) = fixture("S4");
        prop_assume!(mask.iter().any(|&b| b));
        let d = ClassSet::from_mask(&g, mask).unwrap();
        let l = lambda(&ClassFunction::indicator(&d), &t).unwrap();
        prop_assert!(l >= 1.0 - 1e-9);
        prop_assert!(l <= (d.size() as f64).sqrt() + 1e-9);
    }
}
