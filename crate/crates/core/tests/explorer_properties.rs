use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use spindle_homology::algebra::{OperationTable, Spindle};
use spindle_homology::chain::Variant;
use spindle_homology::explorer::{canonical_form, enumerate_spindles, is_isomorphic};
use spindle_homology::homology::homology;

fn one_based(rows: Vec<Vec<usize>>) -> OperationTable {
    OperationTable::from_one_based(rows).unwrap()
}

#[test]
fn size_four_classes_contain_both_examples() {
    let classes: Vec<OperationTable> = enumerate_spindles(4, true).unwrap().into_iter().map(|s| s.table().clone()).collect();
    let t1 = one_based(vec![vec![1, 2, 3, 4], vec![1, 2, 3, 4], vec![1, 2, 3, 4], vec![2, 1, 1, 4]]);
    let t2 = one_based(vec![vec![1, 2, 4, 3], vec![1, 2, 4, 3], vec![2, 1, 3, 4], vec![2, 1, 3, 4]]);
    for t in [t1, t2] {
        assert!(classes.contains(&canonical_form(&t).unwrap()));
    }
    for w in classes.windows(2) {
        assert!(w[0] < w[1]);
    }
}

#[test]
fn homology_is_invariant_under_relabeling() {
    let spindles = enumerate_spindles(3, false).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..25 {
        let s = &spindles[rng.gen_range(0..spindles.len())];
        let mut perm: Vec<usize> = (0..3).collect();
        perm.shuffle(&mut rng);
        let relabeled = Spindle::new(s.table().relabel(&perm)).unwrap();
        assert!(is_isomorphic(s.table(), relabeled.table()).unwrap());
        for variant in [Variant::Full, Variant::Normalized, Variant::Augmented] {
            let a = homology(s.as_shelf(), &variant, 0, 3).unwrap();
            let b = homology(relabeled.as_shelf(), &variant, 0, 3).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!(x.iso_eq(y), "{variant} on {:?} under {perm:?}", s.table().rows());
            }
        }
    }
}
