use gradekit::exactmath::{Field, ScalarMatrix};
use gradekit::liealg::{bracket, make_orthogonal, make_sl, make_symplectic, MatrixLieAlgebra};
use gradekit::Error;

fn gaussian() -> Field {
    Field::new(4).unwrap()
}

fn block_symplectic(f: &Field, k: usize) -> ScalarMatrix {
    let mut j = ScalarMatrix::zeros(f, 2 * k, 2 * k);
    for i in 0..k {
        j.set(i, k + i, f.one());
        j.set(k + i, i, f.from_int(-1));
    }
    j
}

fn all_algebras() -> Vec<MatrixLieAlgebra> {
    let f = gaussian();
    let mut out = vec![];
    for m in 2..=4 {
        out.push(make_sl(&f, m).unwrap());
        out.push(make_orthogonal(&ScalarMatrix::identity(&f, m)).unwrap());
    }
    out.push(make_orthogonal(&ScalarMatrix::identity(&f, 5)).unwrap());
    out.push(make_symplectic(&block_symplectic(&f, 1)).unwrap());
    out.push(make_symplectic(&block_symplectic(&f, 2)).unwrap());
    out
}

#[test]
fn dimensions_match_formulas() {
    let f = gaussian();
    for m in 2..=5 {
        assert_eq!(make_sl(&f, m).unwrap().dim(), m * m - 1);
        let o = make_orthogonal(&ScalarMatrix::identity(&f, m)).unwrap();
        assert_eq!(o.dim(), m * (m - 1) / 2);
    }
    for k in 1..=2 {
        assert_eq!(make_symplectic(&block_symplectic(&f, k)).unwrap().dim(), k * (2 * k + 1));
    }
}

#[test]
fn every_basis_matrix_is_traceless_in_sl() {
    let f = gaussian();
    let l = make_sl(&f, 4).unwrap();
    assert_eq!(l.dim(), 15);
    assert!(l.basis().iter().all(|b| b.trace().is_zero()));
}

#[test]
fn jacobi_and_closure_on_all_constructions() {
    for l in all_algebras() {
        assert!(l.check_jacobi(), "{}", l.name());
        assert!(l.check_closure(), "{}", l.name());
    }
}

#[test]
fn sp2_equals_sl2_inside_gl2() {
    let f = gaussian();
    let sp2 = make_symplectic(&block_symplectic(&f, 1)).unwrap();
    let sl2 = make_sl(&f, 2).unwrap();
    assert!(sp2.basis().iter().all(|b| sl2.coordinates(b).is_some()));
    assert!(sl2.basis().iter().all(|b| sp2.coordinates(b).is_some()));
}

#[test]
fn odd_symplectic_rejected() {
    let f = gaussian();
    let k = ScalarMatrix::from_ints(&f, &[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
    assert_eq!(make_symplectic(&k), Err(Error::SingularMatrix));
}

#[test]
fn killing_form_of_sl4_is_nondegenerate() {
    let l = make_sl(&gaussian(), 4).unwrap();
    assert_eq!(l.killing_matrix().rank(), 15);
}

#[test]
fn abelian_algebra_has_zero_killing_form_and_no_decomposition() {
    let f = gaussian();
    let diag = vec![
        ScalarMatrix::diagonal(&f, &[f.one(), f.from_int(-1), f.zero()]),
        ScalarMatrix::diagonal(&f, &[f.zero(), f.one(), f.from_int(-1)]),
    ];
    let h = MatrixLieAlgebra::from_basis("h", &f, 3, diag).unwrap();
    assert!(h.killing_matrix().is_zero());
    assert_eq!(h.ideal_decomposition(), Err(Error::DegenerateKilling { radical: 2 }));
}

#[test]
fn o4_splits_into_two_commuting_sl2() {
    let f = gaussian();
    let o4 = make_orthogonal(&ScalarMatrix::identity(&f, 4)).unwrap();
    let ideals = o4.ideal_decomposition().unwrap();
    assert_eq!(ideals.len(), 2);
    assert!(ideals.iter().all(|i| i.dim() == 3));
    for x in ideals[0].basis() {
        for y in ideals[1].basis() {
            assert!(x.commutator(y).unwrap().is_zero());
        }
    }
    let sum: Vec<_> = ideals.iter().flat_map(|i| i.basis().iter().cloned()).collect();
    assert!(MatrixLieAlgebra::from_basis("sum", &f, 4, sum).unwrap().dim() == 6);
}

#[test]
fn simple_algebras_stay_whole() {
    let f = gaussian();
    assert_eq!(make_sl(&f, 4).unwrap().ideal_decomposition().unwrap().len(), 1);
    assert_eq!(make_symplectic(&block_symplectic(&f, 2)).unwrap().ideal_decomposition().unwrap().len(), 1);
}

#[test]
fn mixed_algebras_rejected() {
    let f = gaussian();
    let a = make_sl(&f, 2).unwrap();
    let b = make_sl(&f, 3).unwrap();
    assert_eq!(bracket(&a.basis_element(0), &b.basis_element(0)), Err(Error::AlgebraMismatch));
}

#[test]
fn non_closed_span_rejected() {
    let f = gaussian();
    let basis = vec![ScalarMatrix::unit(&f, 2, 0, 1), ScalarMatrix::unit(&f, 2, 1, 0)];
    assert_eq!(MatrixLieAlgebra::from_basis("x", &f, 2, basis).unwrap_err(), Error::NotClosed(0, 1));
}
