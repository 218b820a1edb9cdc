use spindle_homology::algebra::{
    analyze_orbit_graph, assemble_block_spindle, assemble_f_spindle, dihedral_quandle, sigma_function, trivial_spindle,
    Block, BlockSpindleSpec, FSpindleSpec, OperationTable, Spindle,
};
use spindle_homology::chain::Variant;
use spindle_homology::homology::*;
use spindle_homology::linalg::FGAbelianGroup;

fn all_functions(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=m).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

fn small_functions() -> Vec<FSpindleSpec> {
    (1..=3).flat_map(all_functions).map(|f| FSpindleSpec::new(f).unwrap()).collect()
}

fn t1() -> Spindle {
    assemble_f_spindle(&FSpindleSpec::new(vec![2, 1, 1]).unwrap()).unwrap()
}

fn t2() -> Spindle {
    Spindle::new(
        OperationTable::from_one_based(vec![vec![1, 2, 4, 3], vec![1, 2, 4, 3], vec![2, 1, 3, 4], vec![2, 1, 3, 4]])
            .unwrap(),
    )
    .unwrap()
}

fn assert_all(checks: Vec<IdentityCheck>) {
    for c in checks {
        assert!(c.holds, "{} in degree {}: {} vs {} {:?}", c.name, c.degree, c.lhs, c.rhs, c.detail);
    }
}

#[test]
fn closed_forms_match_snf_for_every_small_function() {
    let specs = small_functions();
    assert_eq!(specs.len(), 32);
    for spec in specs {
        assert_all(crosscheck_fspindle(&spec, 3).unwrap());
    }
}

#[test]
fn two_orbit_function_h1() {
    let spec = FSpindleSpec::new(vec![2, 1, 3, 3]).unwrap();
    let h1 = homology(assemble_f_spindle(&spec).unwrap().as_shelf(), &Variant::Full, 1, 1).unwrap();
    assert_eq!(h1[0], FGAbelianGroup::free(8));
}

#[test]
fn splitting_and_degenerate_decomposition() {
    for s in [t1(), t2(), trivial_spindle(3).unwrap(), dihedral_quandle(3).unwrap()] {
        for n in 0..=3 {
            assert_all(vec![verify_splitting(&s, n).unwrap(), verify_degenerate_decomposition(&s, n).unwrap()]);
        }
    }
    let hd2 = homology(t2().as_shelf(), &Variant::Degenerate, 2, 2).unwrap();
    assert_eq!(hd2[0], FGAbelianGroup::free(4));
}

#[test]
fn augmented_recursion_and_bending() {
    for spec in small_functions() {
        let s = assemble_f_spindle(&spec).unwrap();
        for n in 0..=3 {
            assert!(verify_augmented(&s, n).unwrap().holds);
            assert!(verify_bending_split(&s, 0, n).unwrap().holds, "{:?} n={n}", spec.f);
        }
        for n in 2..=3 {
            assert!(verify_recursion(&s, n).unwrap().holds, "{:?} n={n}", spec.f);
        }
    }
}

#[test]
fn relative_homology_examples() {
    let s = t1();
    for n in 0..=3 {
        assert!(relative_homology(&s, &[0, 1, 2, 3], n, false).unwrap().is_trivial());
        // C(X, b) computes reduced homology
        let rel = relative_homology(&s, &[0], n, false).unwrap();
        let reduced = homology(s.as_shelf(), &Variant::Augmented, n, n).unwrap().remove(0);
        assert_eq!(rel, reduced);
    }
    for spec in small_functions() {
        for n in 0..=2 {
            assert_all(vec![verify_relative_decomposition(&spec, n).unwrap()]);
        }
    }
}

#[test]
fn block_h1_matches_snf() {
    let cases = vec![
        vec![sigma_function(2, 1).unwrap(), sigma_function(3, 1).unwrap()],
        vec![vec![1], vec![1]],
        vec![vec![2, 1], vec![1, 1, 2]],
        vec![vec![2, 1, 1]],
        vec![vec![1, 1], vec![2, 1], vec![1]],
    ];
    for blocks in cases {
        let spec = BlockSpindleSpec {
            blocks: blocks.into_iter().map(|f| Block::new(f).unwrap()).collect(),
            add_singleton_block: true,
        };
        let s = assemble_block_spindle(&spec).unwrap();
        let h1 = homology(s.as_shelf(), &Variant::Full, 1, 1).unwrap().remove(0);
        assert_eq!(closed_form_h1_block(&spec).unwrap(), h1, "{spec:?}");
    }
}

#[test]
fn single_block_reduces_to_fspindle() {
    let f = vec![2, 1, 1];
    let spec = BlockSpindleSpec { blocks: vec![Block::new(f.clone()).unwrap()], add_singleton_block: true };
    let summary = analyze_orbit_graph(&FSpindleSpec::new(f).unwrap()).summary();
    assert_eq!(closed_form_h1_block(&spec).unwrap(), closed_form_h1_fspindle(&summary).unwrap());
}

#[test]
fn torsion_iff_initial_and_nontrivial_gcd() {
    for spec in (1..=4).flat_map(all_functions).map(|f| FSpindleSpec::new(f).unwrap()) {
        let summary = analyze_orbit_graph(&spec).summary();
        let h1 = homology(assemble_f_spindle(&spec).unwrap().as_shelf(), &Variant::Full, 1, 1).unwrap().remove(0);
        assert_eq!(!h1.is_free(), summary.initial > 0 && summary.ell > 1, "{:?}", spec.f);
    }
}
