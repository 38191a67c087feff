use gradekit::autos::{inner_auto, outer_auto};
use gradekit::catalog::{build_entry, pauli_generators, standard_k_list, ENTRIES};
use gradekit::exactmath::{Field, ScalarMatrix};
use gradekit::gradings::{same_subspaces, verify_grading};
use gradekit::io::{
    parse_algebra, parse_generators, parse_grading, parse_map, parse_matrix, write_algebra, write_generators,
    write_grading, write_map, write_matrix, write_real_grading,
};
use gradekit::liealg::{make_orthogonal, make_sl, make_symplectic};
use gradekit::realforms::{fundamental_method, standard_conjugation};
use gradekit::Error;

fn gaussian() -> Field {
    Field::new(4).unwrap()
}

#[test]
fn catalog_gradings_round_trip_byte_for_byte() {
    let f = Field::new(12).unwrap();
    for e in ENTRIES {
        let Ok(built) = build_entry(&f, e.name) else { continue };
        let text = write_grading(&built.grading);
        let back = parse_grading(&text).unwrap();
        assert_eq!(write_grading(&back), text, "{}", e.name);
        assert!(same_subspaces(&back, &built.grading));
        assert_eq!(back.profile(), built.grading.profile());
    }
}

#[test]
fn rational_entries_survive() {
    let f = gaussian();
    let m = ScalarMatrix::from_rows(
        &f,
        vec![
            vec![f.from_ratio(1, 3), f.from_ratio(-7, 2)],
            vec![f.i().unwrap().scale(&"5/9".parse().unwrap()), f.zero()],
        ],
    )
    .unwrap();
    let text = write_matrix(&m);
    assert!(text.contains("\"1/3\""));
    let back = parse_matrix(&text).unwrap();
    assert_eq!(back, m);
    assert_eq!(write_matrix(&back), text);
}

#[test]
fn mixed_conductors_are_schema_errors() {
    let f = gaussian();
    let text = write_matrix(&ScalarMatrix::identity(&f, 2));
    // rewrite one entry to conductor 3 (same number of coefficients)
    let bad = text.replacen("\"conductor\": 4", "\"conductor\": 3", 1);
    assert!(matches!(parse_matrix(&bad), Err(Error::Schema(_))));
    let g = build_entry(&f, "sl2.upsilon1").unwrap().grading;
    let text = write_grading(&g);
    let pos = text.rfind("\"conductor\": 4").unwrap();
    let bad = format!("{}\"conductor\": 3{}", &text[..pos], &text[pos + "\"conductor\": 4".len()..]);
    match parse_grading(&bad) {
        Err(Error::Schema(msg)) => assert!(msg.contains("parts["), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_files_report_location() {
    match parse_grading("{\n  \"algebra\": 3\n}") {
        Err(Error::Schema(msg)) => assert!(msg.contains("line 2"), "{msg}"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_matrix("{\"rows\": 1, \"cols\": 2, \"entries\": [[]]}"), Err(Error::Schema(_))));
    let f = gaussian();
    let text = write_matrix(&ScalarMatrix::identity(&f, 1));
    let bad = text.replace("\"1\"", "\"1/0\"");
    assert!(matches!(parse_matrix(&bad), Err(Error::Schema(_))));
}

#[test]
fn algebras_round_trip_with_structure_rederived() {
    let f = gaussian();
    let ks = standard_k_list(&f, 4);
    let mut algebras = vec![make_sl(&f, 3).unwrap()];
    for (_, k, _) in &ks {
        algebras.push(if &k.transpose() == k { make_orthogonal(k).unwrap() } else { make_symplectic(k).unwrap() });
    }
    algebras.extend(make_orthogonal(&ScalarMatrix::identity(&f, 4)).unwrap().ideal_decomposition().unwrap());
    for l in algebras {
        let text = write_algebra(&l);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.name(), l.name());
        assert_eq!(back.killing_matrix(), l.killing_matrix());
        assert_eq!(write_algebra(&back), text);
    }
}

#[test]
fn tampered_basis_is_rejected() {
    let f = gaussian();
    let text = write_algebra(&make_sl(&f, 2).unwrap());
    let as_span = text.replacen("\"type\": \"special_linear\"", "\"type\": \"span\"", 1);
    assert!(parse_algebra(&as_span).is_ok());
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["basis"].as_array_mut().unwrap().swap(0, 1);
    assert!(matches!(parse_algebra(&v.to_string()), Err(Error::Schema(_))));
    // dropping H leaves {E, F}, which is not closed
    let mut v: serde_json::Value = serde_json::from_str(&as_span).unwrap();
    v["basis"].as_array_mut().unwrap().remove(0);
    match parse_algebra(&v.to_string()) {
        Err(Error::Schema(msg)) => assert!(msg.contains("not closed"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn maps_and_generators_round_trip() {
    let f = gaussian();
    let l = make_sl(&f, 3).unwrap();
    let a = ScalarMatrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let inner = inner_auto(&l, &a).unwrap();
    let outer = outer_auto(&l, &ScalarMatrix::identity(&f, 3)).unwrap();
    for g in [inner.clone(), outer.clone(), inner.compose(&outer).unwrap()] {
        let text = write_map(&g);
        let back = parse_map(&text).unwrap();
        assert_eq!(back.matrix(), g.matrix());
        assert_eq!(write_map(&back), text);
    }
    let l4 = make_sl(&f, 4).unwrap();
    let gens = pauli_generators(&l4).unwrap();
    for with in [true, false] {
        let text = write_generators(&l4, &gens, with);
        let (back_l, back) = parse_generators(&text).unwrap();
        assert_eq!(back_l, l4);
        assert_eq!(write_generators(&back_l, &back, with), text);
        let g = back.grade(&back_l).unwrap();
        assert_eq!(g.profile_string(), "15 x 1-dim");
    }
}

#[test]
fn real_gradings_have_rational_entries() {
    let f = gaussian();
    let g = build_entry(&f, "sl2.upsilon2").unwrap().grading;
    let rg = fundamental_method(&g, &standard_conjugation(g.algebra()).unwrap()).unwrap().unwrap();
    let text = write_real_grading(&rg);
    assert!(!text.contains("\"conductor\": 4"));
    let back = parse_grading(&text).unwrap();
    assert!(verify_grading(&back).passed());
    assert_eq!(write_grading(&back), text);
}
