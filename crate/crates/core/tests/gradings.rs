mod common;

use gradekit::autos::{inner_auto, AlgebraMap};
use gradekit::catalog::{build_entry, o4_catalog, pauli_generators, sl2_catalog, standard_k_list};
use gradekit::exactmath::{Field, ScalarMatrix, Subspace};
use gradekit::gradings::{
    coarsen, diag_group, displayed, fingerprint, grade_by, hierarchy_dot, is_finest, labels_multiply, refines,
    regrade_from_diag, same_subspaces, universal_group, verify_grading, FormKind, Grading, UniversalGroupResult,
    Violation,
};
use gradekit::liealg::make_sl;
use gradekit::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn gaussian() -> Field {
    Field::new(4).unwrap()
}

fn sl2(name: &str) -> Grading {
    sl2_catalog(&gaussian()).unwrap().into_iter().find(|(n, _)| n == name).unwrap().1
}

fn diag(f: &Field, xs: &[i64]) -> ScalarMatrix {
    ScalarMatrix::diagonal(f, &xs.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>())
}

#[test]
fn grade_by_reproduces_sl2_gradings() {
    let f = gaussian();
    let l = make_sl(&f, 2).unwrap();
    let g0 = grade_by(&l, &[inner_auto(&l, &diag(&f, &[1, -1])).unwrap()], &[]).unwrap();
    assert!(same_subspaces(&g0, &sl2("sl2.upsilon0")));
    let g1 = grade_by(&l, &[inner_auto(&l, &diag(&f, &[1, 2])).unwrap()], &[]).unwrap();
    assert!(same_subspaces(&g1, &sl2("sl2.upsilon1")));
    let gens = pauli_generators(&l).unwrap();
    let g2 = gens.grade(&l).unwrap();
    assert!(same_subspaces(&g2, &sl2("sl2.upsilon2")));
    for g in [&g0, &g1, &g2] {
        assert!(verify_grading(g).passed());
        assert!(labels_multiply(g));
    }
}

#[test]
fn grade_by_rejects_bad_generators() {
    let f = gaussian();
    let l = make_sl(&f, 2).unwrap();
    let d = inner_auto(&l, &diag(&f, &[2, 3])).unwrap();
    let (_, q) = gradekit::catalog::pauli_matrices(&f, 2).unwrap();
    let swap = inner_auto(&l, &q).unwrap();
    assert_eq!(grade_by(&l, &[d.clone(), swap], &[]), Err(Error::NonCommuting(0, 1)));
    let mut m = ScalarMatrix::identity(&f, 3);
    m.set(0, 0, f.from_int(2));
    let not_auto = AlgebraMap::from_matrix(&l, m, gradekit::autos::Provenance::User).unwrap();
    assert_eq!(grade_by(&l, &[not_auto], &[]), Err(Error::NotAutomorphism));
    assert_eq!(grade_by(&l, &[d], &[vec![f.one()]]), Err(Error::UnresolvedSpectrum(0)));
}

#[test]
fn verification_examples() {
    let f = gaussian();
    let l = make_sl(&f, 2).unwrap();
    assert!(verify_grading(&sl2("sl2.upsilon1")).passed());
    let v = |xs: [i64; 3]| xs.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
    let bad = Grading::from_spans(&l, vec![vec![v([1, 0, 0])], vec![v([0, 1, 1])], vec![v([0, 1, 0])]]).unwrap();
    let report = verify_grading(&bad);
    assert!(!report.passed());
    assert!(report.violations.iter().any(|x| matches!(x, Violation::BracketSplits(..))));
    let overlapping =
        Grading::from_spans(&l, vec![vec![v([1, 0, 0]), v([0, 1, 0])], vec![v([0, 1, 0]), v([0, 0, 1])]]).unwrap();
    assert!(verify_grading(&overlapping).violations.contains(&Violation::NotDirect { total: 4, join: 3 }));
    // H with the split root plane {E+F, E−F}: the bracket expansion lands line by line
    let split = Grading::from_spans(&l, vec![vec![v([1, 0, 0])], vec![v([0, 1, 1])], vec![v([0, 1, -1])]]).unwrap();
    assert!(verify_grading(&split).passed());
}

#[test]
fn refinement_examples() {
    let (u0, u1, u2, triv) = (sl2("sl2.upsilon0"), sl2("sl2.upsilon1"), sl2("sl2.upsilon2"), sl2("sl2.trivial"));
    assert!(refines(&u1, &u0).unwrap());
    for g in [&u0, &u1, &u2, &triv] {
        assert!(refines(g, &triv).unwrap());
        assert!(refines(g, g).unwrap());
    }
    assert!(!refines(&u1, &u2).unwrap());
    assert!(!refines(&u2, &u1).unwrap());
    assert!(!refines(&u0, &u1).unwrap());
    let all = [&u0, &u1, &u2, &triv];
    for a in all {
        for b in all {
            if refines(a, b).unwrap() && refines(b, a).unwrap() {
                assert!(same_subspaces(a, b));
            }
            for c in all {
                if refines(a, b).unwrap() && refines(b, c).unwrap() {
                    assert!(refines(a, c).unwrap());
                }
            }
        }
    }
}

#[test]
fn coarsening_examples() {
    let u1 = sl2("sl2.upsilon1");
    let merged = coarsen(&u1, &[vec![0], vec![1, 2]]).unwrap();
    assert!(same_subspaces(&merged, &sl2("sl2.upsilon0")));
    let all = coarsen(&u1, &[vec![0, 1, 2]]).unwrap();
    assert!(same_subspaces(&all, &sl2("sl2.trivial")));
    let u2 = sl2("sl2.upsilon2");
    let two = coarsen(&u2, &[vec![0], vec![1, 2]]).unwrap();
    assert!(same_subspaces(&two, &sl2("sl2.upsilon0")));
    // {H, E+F} with {E−F} is a Z_2-grading; {H, E} with {F} is not, since [E, F] = H
    assert!(coarsen(&u2, &[vec![0, 1], vec![2]]).is_ok());
    assert!(matches!(coarsen(&u1, &[vec![0, 1], vec![2]]), Err(Error::NotAGrading(_))));
    assert!(matches!(coarsen(&u1, &[vec![0], vec![1]]), Err(Error::InvalidPartition(_))));
    assert!(matches!(coarsen(&u1, &[vec![0, 1], vec![1, 2]]), Err(Error::InvalidPartition(_))));
}

#[test]
fn universal_group_examples() {
    match universal_group(&sl2("sl2.upsilon2")) {
        UniversalGroupResult::Group { free_rank, torsion, labels } => {
            assert_eq!(free_rank, 0);
            assert_eq!(torsion, vec![BigInt::from(2), BigInt::from(2)]);
            assert!(labels.iter().all(|l| l.iter().any(|x| *x != BigInt::from(0))));
        }
        other => panic!("{other:?}"),
    }
    match universal_group(&sl2("sl2.trivial")) {
        UniversalGroupResult::Group { free_rank, torsion, labels } => {
            assert_eq!((free_rank, torsion.len(), labels.len()), (0, 0, 1));
        }
        other => panic!("{other:?}"),
    }
    let refined = o4_catalog(&gaussian()).unwrap().remove(3).1;
    assert_eq!(universal_group(&refined), UniversalGroupResult::NotGroupIndexable { witness: (0, 3) });
    assert_eq!(universal_group(&sl2("sl2.upsilon1")).describe(), "Z");
}

#[test]
fn universal_group_agrees_with_hom_count_oracle() {
    let f = gaussian();
    let cases: Vec<(Grading, u32, Vec<u64>)> = vec![
        (sl2("sl2.upsilon1"), 1, vec![]),
        (sl2("sl2.upsilon2"), 0, vec![2, 2]),
        (sl2("sl2.upsilon0"), 0, vec![2]),
        (build_entry(&f, "sl4.pauli").unwrap().grading, 0, vec![4, 4]),
        (build_entry(&f, "sp4.cartan").unwrap().grading, 2, vec![]),
    ];
    for (g, r, t) in cases {
        for modulus in [2, 3, 4, 8] {
            assert_eq!(common::hom_count(&g, modulus), common::expected_hom_count(r, &t, modulus));
        }
        match universal_group(&g) {
            UniversalGroupResult::Group { free_rank, torsion, .. } => {
                assert_eq!(free_rank as u32, r);
                assert_eq!(torsion, t.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
            }
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn diag_group_examples() {
    let d1 = diag_group(&sl2("sl2.upsilon1")).unwrap();
    assert_eq!((d1.free_rank, d1.torsion.len()), (1, 0));
    let d2 = diag_group(&sl2("sl2.upsilon2")).unwrap();
    assert_eq!((d2.free_rank, d2.torsion.clone()), (0, vec![BigInt::from(2), BigInt::from(2)]));
    let dt = diag_group(&sl2("sl2.trivial")).unwrap();
    assert_eq!((dt.free_rank, dt.torsion.len(), dt.generators.len()), (0, 0, 0));
    for d in [&d1, &d2] {
        assert!(d.generators.iter().all(gradekit::autos::is_automorphism));
    }
}

#[test]
fn diag_group_reports_small_conductor() {
    // Z_3-grading of sl(3) by j − i mod 3, spanned by rational matrices
    let f = gaussian();
    let l = make_sl(&f, 3).unwrap();
    let unit = |i: usize, j: usize| l.coordinates(&ScalarMatrix::unit(&f, 3, i, j)).unwrap();
    let spans = vec![
        vec![l.unit_vector(0), l.unit_vector(1)],
        vec![unit(0, 1), unit(1, 2), unit(2, 0)],
        vec![unit(0, 2), unit(1, 0), unit(2, 1)],
    ];
    let g = Grading::from_spans(&l, spans).unwrap();
    assert!(verify_grading(&g).passed());
    assert_eq!(universal_group(&g).describe(), "Z_3");
    assert_eq!(diag_group(&g).unwrap_err(), Error::ConductorTooSmall { conductor: 4, needed: 12 });
    let f12 = Field::new(12).unwrap();
    let l12 = make_sl(&f12, 3).unwrap();
    let lifted = Grading::from_spans(
        &l12,
        g.parts()
            .iter()
            .map(|(_, s)| {
                s.basis()
                    .iter()
                    .map(|v| v.iter().map(|c| f12.from_rational(c.as_rational().unwrap().clone())).collect())
                    .collect()
            })
            .collect(),
    )
    .unwrap();
    let d = diag_group(&lifted).unwrap();
    assert_eq!((d.free_rank, d.torsion.clone()), (0, vec![BigInt::from(3)]));
    assert!(same_subspaces(&regrade_from_diag(&lifted).unwrap(), &lifted));
}

#[test]
fn theorem_one_on_sl2() {
    for name in ["sl2.trivial", "sl2.upsilon0", "sl2.upsilon1", "sl2.upsilon2"] {
        let g = sl2(name);
        assert!(same_subspaces(&regrade_from_diag(&g).unwrap(), &g), "{name}");
    }
    let refined = o4_catalog(&gaussian()).unwrap().remove(3).1;
    assert_eq!(regrade_from_diag(&refined), Err(Error::NotGroupIndexable(0, 3)));
}

#[test]
fn finest_examples() {
    assert!(is_finest(&sl2("sl2.upsilon2")));
    assert!(!is_finest(&sl2("sl2.upsilon0")));
    assert!(!is_finest(&build_entry(&gaussian(), "sl4.cartan").unwrap().grading));
}

#[test]
fn fingerprint_examples() {
    let (u1, u2) = (sl2("sl2.upsilon1"), sl2("sl2.upsilon2"));
    assert_ne!(fingerprint(&u1), fingerprint(&u2));
    assert_eq!(fingerprint(&u1).profile, fingerprint(&u2).profile);
    assert_eq!(fingerprint(&u2), fingerprint(&u2.reversed()));
    let pauli = build_entry(&gaussian(), "sl4.pauli").unwrap().grading;
    assert_eq!(fingerprint(&pauli), fingerprint(&pauli.reversed()));
    assert_eq!(fingerprint(&u2).to_string(), "profile: 3 x 1-dim; group: Z_2 x Z_2; brackets: 3 x (1,1)->1");
}

#[test]
fn displayed_examples() {
    let f = gaussian();
    let pauli = build_entry(&f, "sl4.pauli").unwrap().grading;
    // no standard K makes sp_K(4) or o_K(4) a sum of Pauli lines
    for (_, k, kind) in standard_k_list(&f, 4) {
        assert_eq!(displayed(&pauli, &k, kind).unwrap(), None);
    }
    let cartan = build_entry(&f, "sl4.cartan").unwrap().grading;
    let anti = standard_k_list(&f, 4).remove(1).1;
    assert_eq!(displayed(&cartan, &anti, FormKind::Orthogonal).unwrap(), None);
    // a torus adapted to K does display o_K(4)
    let sl4 = cartan.algebra().clone();
    let adapted = grade_by(
        &sl4,
        &[inner_auto(
            &sl4,
            &ScalarMatrix::diagonal(&f, &[f.from_int(2), f.from_int(3), f.from_ratio(1, 3), f.from_ratio(1, 2)]),
        )
        .unwrap()],
        &[],
    )
    .unwrap();
    let shown = displayed(&adapted, &anti, FormKind::Orthogonal).unwrap().unwrap();
    assert_eq!(shown.profile_string(), "1 x 2-dim + 4 x 1-dim");
    assert!(verify_grading(&shown).passed());
    for (_, s) in shown.parts() {
        let in_sl4: Vec<_> =
            s.basis().iter().map(|v| sl4.coordinates(&shown.algebra().matrix_of(v)).unwrap()).collect();
        let span = Subspace::canonicalize(&f, 15, in_sl4).unwrap();
        assert!(adapted.parts().iter().any(|(_, p)| p.contains(&span).unwrap()));
    }
    let i4 = ScalarMatrix::identity(&f, 4);
    assert_eq!(displayed(&adapted, &i4, FormKind::Orthogonal).unwrap(), None);
    assert!(matches!(displayed(&adapted, &i4, FormKind::Symplectic), Err(Error::WrongSymmetry(_))));
}

#[test]
fn hierarchy_of_sl2() {
    let entries = sl2_catalog(&gaussian()).unwrap();
    let dot = hierarchy_dot(&entries).unwrap();
    assert!(dot.contains("\"sl2.upsilon1\" -> \"sl2.upsilon0\";"));
    assert!(dot.contains("\"sl2.upsilon0\" -> \"sl2.trivial\";"));
    assert!(dot.contains("\"sl2.upsilon2\" -> \"sl2.upsilon0\";"));
    assert!(!dot.contains("\"sl2.upsilon1\" -> \"sl2.trivial\";"));
    assert_eq!(dot.matches("->").count(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_torus_gradings_verify_and_multiply(seed in any::<u64>()) {
        let g = common::random_torus_grading(seed, false);
        let (gens, cands) = common::random_torus_generators(seed, false);
        prop_assert!(same_subspaces(&grade_by(g.algebra(), &gens, &cands).unwrap(), &g));
        prop_assert!(verify_grading(&g).passed());
        prop_assert!(labels_multiply(&g));
        if let UniversalGroupResult::Group { free_rank, torsion, labels } = universal_group(&g) {
            let rels = common::relations(&g);
            let reduce = |v: Vec<BigInt>| -> Vec<BigInt> {
                v.into_iter().enumerate().map(|(i, x)| {
                    if i < free_rank { x } else {
                        let d = &torsion[i - free_rank];
                        ((x % d) + d) % d
                    }
                }).collect()
            };
            for (j, k, l) in rels {
                let sum = labels[j].iter().zip(&labels[k]).map(|(a, b)| a + b).collect();
                prop_assert_eq!(reduce(sum), labels[l].clone());
            }
        }
    }
}
