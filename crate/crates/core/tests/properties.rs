use std::sync::Arc;

use lsverify::exact::{int, ratio};
use lsverify::freeseries::{bracket, exp, log1p};
use lsverify::gauge::{gauge, is_mc, op_f, op_f_inv};
use lsverify::models::{d_squared_report, model_ls};
use lsverify::sampling::{free_target_alphabet, model_free_target};
use lsverify::{Alphabet, Series, Word};
use proptest::prelude::*;

const ORDER: usize = 6;

/// Sparse series over `al` whose words all have degree `degree` (any degree
/// when `None`), with no empty word.
fn series(al: Arc<Alphabet>, order: usize, degree: Option<i32>) -> impl Strategy<Value = Series> {
    let n = al.len() as u8;
    prop::collection::vec((prop::collection::vec(0..n, 1..=4), -5i64..=5, 1i64..=3), 1..6)
        .prop_map(move |raw| {
            let terms = raw
                .into_iter()
                .map(|(w, num, den)| (Word(w), ratio(num, den)))
                .filter(|(w, _)| degree.is_none_or(|d| al.word_degree(w) == d));
            Series::from_terms(&al, order, terms)
        })
        .prop_filter("nonzero", |s| !s.is_zero())
}

fn free(degree: Option<i32>) -> impl Strategy<Value = Series> {
    series(free_target_alphabet(), ORDER, degree)
}

fn sign(d: i32) -> lsverify::Rational {
    if d % 2 == 0 { int(1) } else { int(-1) }
}

/// Degree-0 series in the interval model: polynomials in `z`.
fn ls_degree_zero(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec((1usize..=4, -5i64..=5, 1i64..=3), 1..4).prop_map(move |raw| {
        let al = lsverify::models::ls_alphabet();
        let z = al.letter("z").unwrap().0;
        Series::from_terms(&al, order, raw.into_iter().map(|(k, n, d)| (Word(vec![z; k]), ratio(n, d))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative(a in free(None), b in free(None), c in free(None)) {
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn bracket_is_graded_antisymmetric(
        (da, a) in (-1i32..=1).prop_flat_map(|d| (Just(d), free(Some(d)))),
        (db, b) in (-1i32..=1).prop_flat_map(|d| (Just(d), free(Some(d)))),
    ) {
        let rhs = bracket(&b, &a).unwrap().scale(&(-sign(da * db)));
        prop_assert_eq!(bracket(&a, &b).unwrap(), rhs);
    }

    #[test]
    fn bracket_satisfies_graded_jacobi(
        (da, a) in (-1i32..=1).prop_flat_map(|d| (Just(d), free(Some(d)))),
        (db, b) in (-1i32..=1).prop_flat_map(|d| (Just(d), free(Some(d)))),
        c in free(Some(-1)),
    ) {
        // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
        let lhs = bracket(&a, &bracket(&b, &c).unwrap()).unwrap();
        let swapped = bracket(&b, &bracket(&a, &c).unwrap()).unwrap().scale(&sign(da * db));
        prop_assert_eq!(lhs, bracket(&bracket(&a, &b).unwrap(), &c).unwrap() + swapped);
    }

    #[test]
    fn truncation_commutes_with_product(a in free(None), b in free(None), k in 1usize..=ORDER) {
        prop_assert_eq!((&a * &b).truncate(k), a.truncate(k) * b.truncate(k));
    }

    #[test]
    fn differential_is_a_graded_derivation(
        (da, a) in (-1i32..=1).prop_flat_map(|d| (Just(d), free(Some(d)))),
        b in free(None),
    ) {
        let m = model_free_target(ORDER).unwrap();
        let lhs = m.d(&(&a * &b)).unwrap();
        let rhs = m.d(&a).unwrap() * &b + (&a * &m.d(&b).unwrap()).scale(&sign(da));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_and_log_are_inverse(a in free(None)) {
        let e = exp(&a).unwrap();
        let one = Series::one(a.alphabet(), ORDER);
        prop_assert_eq!(log1p(&(&e - &one)).unwrap(), a.clone());
        prop_assert_eq!(exp(&log1p(&a).unwrap()).unwrap(), &one + &a);
    }

    #[test]
    fn f_inverse_undoes_f(x in series(free_target_alphabet(), 10, Some(0)), y in series(free_target_alphabet(), 10, None)) {
        prop_assert_eq!(op_f_inv(&x, &op_f(&x, &y).unwrap()).unwrap(), y.clone());
        prop_assert_eq!(op_f(&x, &op_f_inv(&x, &y).unwrap()).unwrap(), y);
    }

    #[test]
    fn gauge_preserves_flat_elements(x in free(Some(0))) {
        let m = model_free_target(ORDER).unwrap();
        let moved = gauge(&m, &x, &m.generator("v").unwrap()).unwrap();
        prop_assert!(is_mc(&m, &moved).unwrap().flat);
    }

    #[test]
    fn gauge_preserves_flat_elements_in_ls(x in ls_degree_zero(ORDER), pick_a in any::<bool>()) {
        let m = model_ls(ORDER).unwrap();
        let v = m.generator(if pick_a { "a" } else { "b" }).unwrap();
        prop_assert!(is_mc(&m, &gauge(&m, &x, &v).unwrap()).unwrap().flat);
    }

    #[test]
    fn gauge_through_k_only_sees_inputs_through_k(x in free(Some(0)), a in free(Some(-1)), k in 2usize..ORDER) {
        let (big, small) = (model_free_target(ORDER).unwrap(), model_free_target(k).unwrap());
        let full = gauge(&big, &x, &a).unwrap().truncate(k);
        let local = gauge(&small, &x.truncate(k), &a.truncate(k)).unwrap();
        prop_assert_eq!(full, local);
    }
}

#[test]
fn ls_differential_is_coherent_under_truncation() {
    let top = model_ls(10).unwrap();
    for k in 2..10 {
        let m = model_ls(k).unwrap();
        for g in ["a", "b", "z"] {
            assert_eq!(m.image(g).unwrap(), &top.image(g).unwrap().truncate(k), "∂{g} at order {k}");
        }
        assert!(d_squared_report(&m).unwrap().passed());
    }
}
