use super::*;
use crate::field::Elem;
use crate::spectra::fbct_entry;

fn run(id: TheoremId, params: Params) -> TheoremVerdict {
    let v = verify(id, &params).unwrap();
    assert!(v.passed, "{}", v.to_json());
    v
}

#[test]
fn kloosterman_small_values() {
    assert_eq!(carlitz_kloosterman(1).unwrap(), 2);
    assert_eq!(carlitz_kloosterman(2).unwrap(), 4);
    for n in 1..=14 {
        let direct = kloosterman(n, KloostermanMethod::Direct).unwrap();
        assert_eq!(direct, kloosterman(n, KloostermanMethod::Carlitz).unwrap(), "n={n}");
        // Kloosterman sums over GF(2^n) are divisible by 4 and bounded by 2^(n/2+1).
        if n >= 3 {
            assert_eq!(direct.rem_euclid(4), 0);
        }
        assert!((direct - 1).pow(2) <= 1 << (n + 2));
    }
}

#[test]
fn carlitz_handles_large_n() {
    let k = carlitz_kloosterman(40).unwrap();
    assert_eq!(k.rem_euclid(4), 0);
    assert!(carlitz_kloosterman(41).is_err());
}

#[test]
fn inverse_map_cells() {
    let v = run(TheoremId::L1, Params::new(2, 4));
    assert_eq!(v.cells_checked, 225);
    run(TheoremId::L2, Params::new(2, 5));
}

#[test]
fn hypotheses_rejected() {
    for (id, p) in [
        (TheoremId::L1, Params::new(2, 5)),
        (TheoremId::L2, Params::new(2, 4)),
        (TheoremId::T1, Params::new(7, 1)),
        (TheoremId::T2, Params::new(5, 2).with_k(2)),
        (TheoremId::T2, Params::new(5, 1)),
        (TheoremId::T3, Params::new(3, 2)),
        (TheoremId::T4, Params::new(3, 2)),
        (TheoremId::CF1, Params::new(2, 4)),
        (TheoremId::CF3, Params::new(2, 3)),
        (TheoremId::T6, Params::new(2, 5)),
        (TheoremId::Thmt, Params::new(2, 5).with_t(5)),
        (TheoremId::T7, Params::new(2, 4).with_t(1)),
        (TheoremId::Table1, Params::new(2, 3)),
    ] {
        let e = verify(id, &p).unwrap_err();
        assert!(matches!(e, crate::Error::Hypothesis { .. }), "{id}: {e:?}");
    }
}

#[test]
fn odd_characteristic_families() {
    run(TheoremId::T1, Params::new(5, 1));
    run(TheoremId::T1, Params::new(5, 3));
    run(TheoremId::T2, Params::new(5, 1).with_k(1));
    run(TheoremId::T2, Params::new(7, 1).with_k(3));
    run(TheoremId::T3, Params::new(5, 2));
    run(TheoremId::T3, Params::new(7, 2));
    run(TheoremId::T4, Params::new(3, 3));
    run(TheoremId::T4, Params::new(3, 1));
}

#[test]
fn t2_value_set_not_reached_for_p11() {
    let v = verify(TheoremId::T2, &Params::new(11, 1).with_k(1)).unwrap();
    assert!(!v.passed);
    let m = v.first_mismatch.unwrap();
    assert_eq!(m.check, "cell");
    assert_eq!(m.observed, serde_json::json!(2));
    assert!(v.notes[0].contains("{0:40, 2:60}"), "{:?}", v.notes);
}

#[test]
fn table_rows() {
    run(TheoremId::Table1, Params::new(5, 2).with_k(1));
    run(TheoremId::Table1, Params::new(3, 3));
    run(TheoremId::Table1, Params::new(7, 1));
}

#[test]
fn mersenne_exponents_all_t() {
    for n in 3..=7 {
        run(TheoremId::Thmt, Params::new(2, n));
    }
}

#[test]
fn thmt_row_matches_direct_entries() {
    let p = Params::new(2, 6).with_t(4);
    let pred = Predictor::new(TheoremId::Thmt, &p).unwrap();
    let f = pred.function();
    for b in pred.field().elements() {
        let Prediction::Exact(v) = pred.predict(Elem::ONE, b) else { panic!() };
        assert_eq!(v, fbct_entry(f, Elem::ONE, b));
    }
}

#[test]
fn mersenne_corollaries() {
    run(TheoremId::CF1, Params::new(2, 6));
    run(TheoremId::CF1, Params::new(2, 8));
    run(TheoremId::CF2, Params::new(2, 7));
    run(TheoremId::CF2, Params::new(2, 9));
    run(TheoremId::CF3, Params::new(2, 7));
}

#[test]
fn cf2_beta_fails_when_s6_is_empty() {
    // n = 5: X^3 is APN, every nontrivial cell is 0, so beta = 0 rather than 4.
    let v = verify(TheoremId::CF2, &Params::new(2, 5)).unwrap();
    assert!(!v.passed);
    let m = v.first_mismatch.unwrap();
    assert_eq!((m.check.as_str(), m.predicted, m.observed), ("beta", 4.into(), 0.into()));
}

#[test]
fn vanishing_counts() {
    // X^3 over GF(16) is APN.
    assert_eq!(vanishing_count_formula(TheoremId::CF1Vb, 4, None).unwrap(), 0);
    assert_eq!(vanishing_count_formula(TheoremId::CF3Vb, 7, None).unwrap(), 889);
    assert_eq!(vanishing_count_formula(TheoremId::CF3Vb, 9, None).unwrap(), 11242);
    for n in [4, 6, 8] {
        run(TheoremId::CF1Vb, Params::new(2, n));
    }
    for n in [5, 7] {
        run(TheoremId::CF2Vb, Params::new(2, n));
        run(TheoremId::CF3Vb, Params::new(2, n));
    }
}

#[test]
fn general_count_matches_enumeration() {
    for n in 4..=7 {
        let field = crate::Field::new(2, n).unwrap();
        for t in 1..n {
            let f = crate::FunctionUnderTest::monomial(&field, (1 << t) - 1);
            let counted = crate::flats::vanishing_flats(&f, false).unwrap().vanishing_count as i64;
            assert_eq!(vanishing_count_formula(TheoremId::Thmt, n, Some(t)).unwrap(), counted, "n={n} t={t}");
        }
    }
}

#[test]
fn s6_formula_branches() {
    // 2^(n-2) - 5 vs 2^(n-2) + 1 differ by 6 before the factor 6/6.
    let k = carlitz_kloosterman(7).unwrap();
    assert_eq!(
        s6_count_formula(7, false, k).unwrap() - s6_count_formula(7, true, k).unwrap(),
        6
    );
}

#[test]
fn inverse_plus_trace() {
    let v = run(TheoremId::T6, Params::new(2, 4));
    assert!(v.notes.iter().any(|n| n.contains("{0:180, 4:30}")), "{:?}", v.notes);
    run(TheoremId::T6, Params::new(2, 6));
}

#[test]
fn gamma_family() {
    run(TheoremId::T7, Params::new(2, 4));
    let field = crate::Field::new(2, 6).unwrap();
    let (t, g) = crate::function::admissible_gammas(&field)[0];
    run(TheoremId::T7, Params::new(2, 6).with_t(t).with_gamma(field.format_element(g)));
}

#[test]
fn identity_and_apn_equivalence() {
    run(TheoremId::PropVb, Params::new(2, 4).with_seed(7));
    run(TheoremId::ApnIffFbct0, Params::new(2, 5));
    run(TheoremId::ApnIffFbct0, Params::new(2, 6));
}

#[test]
fn ids_round_trip() {
    for (id, summary, location) in list_theorems() {
        assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        assert!(!summary.is_empty() && !location.is_empty());
    }
    assert_eq!("c_f2_vb".parse::<TheoremId>().unwrap(), TheoremId::CF2Vb);
    assert!("T9".parse::<TheoremId>().is_err());
    assert_eq!(serde_json::to_string(&TheoremId::Thmt).unwrap(), "\"THMT\"");
}

#[test]
fn verdict_json_shape() {
    let v = run(TheoremId::L2, Params::new(2, 3));
    let j: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
    assert_eq!(j["theorem"], "L2");
    assert_eq!(j["params"]["p"], 2);
    assert_eq!(j["passed"], true);
    assert!(j["first_mismatch"].is_null());
}

#[test]
fn single_cell_predictions() {
    let f16 = crate::Field::new(2, 4).unwrap();
    let w = f16.cube_roots_of_unity().into_iter().find(|&w| w != Elem::ONE).unwrap();
    let p = Params::new(2, 4);
    assert_eq!(predict(TheoremId::L1, &p, Elem::ONE, w).unwrap(), Prediction::Exact(4));
    assert_eq!(predict(TheoremId::T1, &Params::new(5, 1), Elem(2), Elem(3)).unwrap(), Prediction::Exact(1));
    // b^6 = 1, b != 1 over GF(64), t = 3: B = 1, value 2^gcd(2,6).
    let f64 = crate::Field::new(2, 6).unwrap();
    let b = f64.primitive_root_of_unity(3).unwrap();
    let thmt = Params::new(2, 6).with_t(3);
    assert_eq!(predict(TheoremId::Thmt, &thmt, Elem::ONE, b).unwrap(), Prediction::Exact(4));
    assert!(matches!(
        predict(TheoremId::T2, &Params::new(7, 1).with_k(1), Elem::ONE, Elem(2)),
        Err(crate::Error::Unsupported(_))
    ));
    let (t, g) = crate::function::admissible_gammas(&f16)[0];
    let t7 = Params::new(2, 4).with_t(t).with_gamma(f16.format_element(g));
    assert_eq!(predict(TheoremId::T7, &t7, Elem(3), Elem(5)).unwrap(), Prediction::OneOf(vec![0, 4, 8]));
}
