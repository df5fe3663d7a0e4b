use galcount::poly::ball::expand_roots;
use galcount::poly::boxes::{box_coeffs, box_count};
use galcount::poly::height::{mahler_check_poly, mahler_measure};
use galcount::poly::{complex_roots, factor_squarefree, integer_recognize, is_irreducible, BoxMode, IntPoly};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> IntPoly {
    IntPoly::parse(s).unwrap()
}

#[test]
fn box_counts_match_enumeration() {
    for (n, h) in [(1, 0.0), (2, 1.0), (3, 2.5), (4, 1.0)] {
        let listed = box_coeffs(n, h, BoxMode::Exhaustive, u128::MAX).unwrap().count() as u128;
        let side = 2 * (h as i64) as u128 + 1;
        assert_eq!(listed, side.pow(n as u32));
        assert_eq!(box_count(n, h).unwrap(), listed);
    }
    assert!(box_coeffs(3, 10.0, BoxMode::Exhaustive, 100).is_err());
    let a: Vec<_> = box_coeffs(3, 4.0, BoxMode::Sample { count: 50, seed: 3 }, 1000).unwrap().collect();
    let b: Vec<_> = box_coeffs(3, 4.0, BoxMode::Sample { count: 50, seed: 3 }, 1000).unwrap().collect();
    assert_eq!(a, b);
    assert!(a.iter().flatten().all(|c| c.abs() <= 4));
}

#[test]
fn mahler_measure_closed_forms() {
    // M(x^n - a) = |a| for |a| >= 1; cyclotomic polynomials have M = 1;
    // M(x^2 - x - 1) is the golden ratio.
    let cases = [
        ("x^2-2", 2.0),
        ("x^3-2", 2.0),
        ("x^5-7", 7.0),
        ("x^4+x^3+x^2+x+1", 1.0),
        ("x^2-x-1", (1.0 + 5f64.sqrt()) / 2.0),
        ("x", 1.0),
    ];
    for (s, m) in cases {
        let got = mahler_measure(&p(s)).unwrap();
        assert!((got - m).abs() < 1e-9 * m.max(1.0), "{s}: {got} vs {m}");
        assert!(mahler_check_poly(&p(s)).unwrap().passes(), "{s}");
    }
}

#[test]
fn mahler_inequalities_on_random_irreducibles() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut tested = 0;
    while tested < 40 {
        let d = rng.gen_range(2..=6);
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-30..=30)).collect();
        c.push(1);
        let f = IntPoly::from_i64(&c);
        if !f.is_squarefree() || !is_irreducible(&f).unwrap() {
            continue;
        }
        let r = mahler_check_poly(&f).unwrap();
        assert!(r.passes(), "{f}: {r:?}");
        tested += 1;
    }
}

#[test]
fn roots_expand_back_to_the_polynomial() {
    for s in ["x^3-2", "x^4+x+1", "x^6+46x^4+529x^2+5431", "x^5-x-1"] {
        let f = p(s);
        let set = complex_roots(&f, 128).unwrap();
        assert!(set.pairwise_disjoint());
        assert!(set.expansion_matches());
        assert_eq!(set.len(), f.degree());
    }
}

#[test]
fn factorization_multiplies_back() {
    for s in ["x^4-1", "x^6-1", "x^5+x+1", "x^4+4", "x^3-2"] {
        let f = p(s);
        let parts = factor_squarefree(&f).unwrap();
        let prod = parts.iter().fold(IntPoly::one(), |acc, q| &acc * q);
        assert_eq!(prod, f, "{s}");
        assert!(parts.iter().all(|q| is_irreducible(q).unwrap()));
    }
    assert_eq!(factor_squarefree(&p("x^4+4")).unwrap().len(), 2);
    assert_eq!(factor_squarefree(&p("x^5+x+1")).unwrap().len(), 2);
}

#[test]
fn recognize_rejects_non_integers() {
    let set = complex_roots(&p("x^2-2"), 96).unwrap();
    let one = BigInt::from(1);
    // (x - sqrt 2) alone is not integral.
    assert!(integer_recognize(&expand_roots(&one, &set.roots[..1], set.prec)).is_none());
    assert_eq!(integer_recognize(&expand_roots(&one, &set.roots, set.prec)).unwrap(), p("x^2-2"));
}

#[test]
fn refined_roots_keep_their_labels() {
    // Conjugate pairs on the imaginary axis sort close to a 2^-40 boundary.
    for s in ["x^6 + 18x^4 + 81x^2 + 783", "x^4 + 1", "x^5 - x + 1"] {
        let f = p(s);
        let coarse = complex_roots(&f, 64).unwrap();
        let fine = coarse.refine(600).unwrap();
        assert!(fine.prec > coarse.prec);
        for (a, b) in coarse.roots.iter().zip(&fine.roots) {
            assert!(!a.with_prec(fine.prec).disjoint(b), "{s}: label moved");
        }
        let lc = BigInt::from(1);
        let back = integer_recognize(&expand_roots(&lc, &fine.roots, fine.prec)).unwrap();
        assert_eq!(back, f);
    }
}

#[test]
fn recognition_rejects_near_integers() {
    // sqrt(15) + 19 = 22.873 is an eighth away from 23.
    let set = complex_roots(&p("x^2 - 15"), 200).unwrap();
    let v = set.roots[1].add(&galcount::poly::ball::Ball::from_int(&BigInt::from(19), set.prec));
    assert!(integer_recognize(&[v]).is_none());
}
