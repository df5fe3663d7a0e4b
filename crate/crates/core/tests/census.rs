use galcount::census::fit::least_squares;
use galcount::census::{
    census, classify, exponent_fit, field_fingerprint, records_from_csv, records_to_csv, verify_lemmas, ActionCatalog,
    CensusOptions, CensusRecord, Suite, VerifyParams, NON_SEPARABLE, REDUCIBLE,
};
use galcount::poly::{BoxMode, IntPoly};
use galcount::Error;

fn opts() -> CensusOptions {
    CensusOptions { timing: false, ..Default::default() }
}

fn count(rs: &[CensusRecord], label: &str) -> u64 {
    rs.iter().filter(|r| r.label == label).map(|r| r.count).sum()
}

#[test]
fn exhaustive_censuses_cover_the_box() {
    for (n, h, total) in [(1, 3.0, 7), (2, 4.0, 81), (3, 5.0, 1331), (4, 1.0, 81)] {
        let cat = ActionCatalog::transitive(n).unwrap();
        let rs = census(n, &[h], BoxMode::Exhaustive, &cat, &opts()).unwrap();
        assert_eq!(rs.iter().map(|r| r.count).sum::<u64>(), total, "n={n}");
    }
}

#[test]
fn quadratic_counts_by_hand() {
    // x^2 + bx + c with |b|, |c| <= 2: discriminant b^2 - 4c.
    let mut want = (0, 0, 0);
    for b in -2i64..=2 {
        for c in -2i64..=2 {
            let d = b * b - 4 * c;
            let r = (d as f64).sqrt().round() as i64;
            if d == 0 {
                want.2 += 1;
            } else if d > 0 && r * r == d {
                want.1 += 1;
            } else {
                want.0 += 1;
            }
        }
    }
    let cat = ActionCatalog::transitive(2).unwrap();
    let rs = census(2, &[2.0], BoxMode::Exhaustive, &cat, &opts()).unwrap();
    assert_eq!((count(&rs, "C2_natural"), count(&rs, REDUCIBLE), count(&rs, NON_SEPARABLE)), want);
}

#[test]
fn custom_catalog_labels_and_other() {
    let cat = ActionCatalog::parse("quartic_sym degree=4 gens=(1,2);(1,2,3,4) points=natural\n").unwrap();
    let rs = census(4, &[1.0], BoxMode::Exhaustive, &cat, &opts()).unwrap();
    let labels: Vec<&str> = rs.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(labels, vec!["quartic_sym", "other", "reducible", "non-separable"]);
    assert!(count(&rs, "quartic_sym") > 0);
}

#[test]
fn sampled_replays_and_csv_round_trip() {
    let cat = ActionCatalog::transitive(3).unwrap();
    let mode = BoxMode::Sample { count: 400, seed: 21 };
    let a = census(3, &[6.0, 12.0], mode, &cat, &opts()).unwrap();
    let b = census(3, &[6.0, 12.0], mode, &cat, &CensusOptions { threads: 1, ..opts() }).unwrap();
    assert_eq!(records_to_csv(&a).unwrap(), records_to_csv(&b).unwrap());
    assert!(a.iter().all(|r| r.seed == Some(21) && r.mode == "sample:400"));
    assert_eq!(records_from_csv(&records_to_csv(&a).unwrap()).unwrap(), a);
}

#[test]
fn limits() {
    let cat = ActionCatalog::transitive(3).unwrap();
    let small = CensusOptions { budget: 100, ..opts() };
    assert!(matches!(census(3, &[5.0], BoxMode::Exhaustive, &cat, &small), Err(Error::BudgetExceeded { .. })));
    let capped = CensusOptions { degree_cap: 2, ..opts() };
    assert!(matches!(census(3, &[1.0], BoxMode::Exhaustive, &cat, &capped), Err(Error::DegreeTooLarge { .. })));
}

#[test]
fn field_fingerprints_group_by_splitting_field() {
    let cat = ActionCatalog::transitive(3).unwrap();
    let p = |s| IntPoly::parse(s).unwrap();
    // x^3 - 2 and x^3 - 16 generate the same splitting field; x^3 - 3 another.
    let a = classify(&p("x^3-2"), &cat, true).unwrap().fingerprint.unwrap();
    let b = classify(&p("x^3-16"), &cat, true).unwrap().fingerprint.unwrap();
    let c = classify(&p("x^3-3"), &cat, true).unwrap().fingerprint.unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    // The splitting field of x^3 - 3x - 1 is its own stem field.
    let d = classify(&p("x^3-3x-1"), &cat, true).unwrap().fingerprint.unwrap();
    assert_eq!(d, field_fingerprint(&[p("x^3-3x-1"), p("x^3-3x+1")]).unwrap());
}

#[test]
fn fit_slopes() {
    let rec = |h: f64, c: u64| CensusRecord { n: 2, h, mode: "exhaustive".into(), seed: None, label: "L".into(), count: c, runtime_ms: 0 };
    let f = exponent_fit(&[rec(1.0, 3), rec(2.0, 24), rec(4.0, 192)]).unwrap();
    assert!((f.slope - 3.0).abs() < 1e-12);
    assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
    assert!(exponent_fit(&[rec(1.0, 3), rec(2.0, 24)]).is_err());
    let (s, _, se) = least_squares(&[0.0, 1.0, 2.0, 3.0], &[1.0, 2.1, 2.9, 4.0]).unwrap();
    assert!((s - 0.98).abs() < 1e-9 && se > 0.0);
}

#[test]
fn quadratic_exponent_is_two() {
    // Irreducible quadratics fill most of a box of (2H+1)^2 points.
    let cat = ActionCatalog::transitive(2).unwrap();
    let rs = census(2, &[10.0, 20.0, 40.0, 80.0], BoxMode::Exhaustive, &cat, &opts()).unwrap();
    let c2: Vec<CensusRecord> = rs.into_iter().filter(|r| r.label == "C2_natural").collect();
    let f = exponent_fit(&c2).unwrap();
    assert!((f.slope - 2.0).abs() < 0.1, "{}", f.slope);
}

#[test]
fn all_suites_pass() {
    let r = verify_lemmas(Suite::All, &VerifyParams::default());
    assert!(r.passed(), "{r}");
    for suite in ["wreath", "families", "fields"] {
        assert!(r.checks.iter().any(|c| c.suite == suite));
    }
}
