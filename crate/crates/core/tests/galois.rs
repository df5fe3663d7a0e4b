use std::collections::BTreeSet;

use galcount::galois::compute::{galois_group, DEFAULT_MAX_DEGREE};
use galcount::galois::resolvent::{partial_resolvent, resolvent_identity_check, splitting_factorization};
use galcount::galois::templates::{parse_template, realize_action, template_kinds};
use galcount::iso::action_isomorphism;
use galcount::poly::modp::frobenius_cycle_types;
use galcount::poly::IntPoly;

fn p(s: &str) -> IntPoly {
    IntPoly::parse(s).unwrap()
}

#[test]
fn classical_group_orders() {
    let table = [
        ("x^2+1", 2),
        ("x^3-2", 6),
        ("x^3-3x-1", 3),
        ("x^4-2", 8),
        ("x^4+1", 4),
        ("x^4-10x^2+1", 4),
        ("x^4+x+1", 24),
        ("x^4+8x+12", 12),
        ("x^4+x^3+x^2+x+1", 4),
        ("x^5-2", 20),
        ("x^5-5x+12", 10),
        ("x^5-x-1", 120),
        ("x^6+x^5+x^4+x^3+x^2+x+1", 6),
    ];
    let mut cases: Vec<(IntPoly, usize)> = table.iter().map(|(s, o)| (p(s), *o)).collect();
    cases.push((&p("x^2-2") * &p("x^2-3"), 4));
    cases.push((&p("x^3-2") * &p("x^2+3"), 6));
    cases.push((&p("x^2-2") * &p("x^2-8"), 2));
    for (f, order) in cases {
        let s = f.to_string();
        let r = galois_group(&f, DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(r.order(), order, "{s}");
        assert!(r.dedekind_consistent(), "{s}");
    }
}

#[test]
fn frobenius_types_lie_in_the_group() {
    for s in ["x^4+3x^2+1", "x^5+2x+3", "x^6-3x^3+3", "x^4-4x^2+2", "x^5-5x+12"] {
        let f = p(s);
        let r = galois_group(&f, DEFAULT_MAX_DEGREE).unwrap();
        let types: BTreeSet<Vec<usize>> = r.perm_group().elements().iter().map(|e| e.cycle_type()).collect();
        for (prime, t) in frobenius_cycle_types(&f, 200) {
            assert!(types.contains(&t), "{s}: Frobenius at {prime} has type {t:?}");
        }
    }
}

#[test]
fn partial_resolvent_degrees() {
    let r = galois_group(&p("x^4+x+1"), DEFAULT_MAX_DEGREE).unwrap();
    for a in [vec![0], vec![0, 1], vec![0, 1, 2]] {
        let pr = partial_resolvent(&r, &a).unwrap();
        assert!(pr.degree_identity_holds());
        // S_4 acts on k-subsets with stabilizer index binom(4, k).
        let want = [4, 6, 4][a.len() - 1];
        assert_eq!(pr.stabilizer_index, want);
    }
}

#[test]
fn every_template_kind_realizes_its_action() {
    let kinds: Vec<&str> = template_kinds().iter().map(|(k, _)| *k).collect();
    for want in ["tuple", "subset", "primitive", "regular"] {
        assert!(kinds.contains(&want));
    }
    for spec in ["tuple(3,2)", "subset(4,2)", "primitive(2,2,1)", "regular(C3)", "regular(V4)", "regular(S3)"] {
        let t = parse_template(spec).unwrap();
        let inst = realize_action(t.as_ref(), 3, 6.0).unwrap();
        let target = t.target().unwrap();
        assert!(action_isomorphism(&target, &inst.galois.group).is_some(), "{spec}");
        let bundle = t.bundle().unwrap();
        for l in 0..bundle.s() {
            assert!(resolvent_identity_check(&inst.galois, &bundle, l).unwrap(), "{spec} orbit {l}");
        }
        let cert = splitting_factorization(&inst.galois, &bundle).unwrap();
        assert!(cert.all_ok(), "{spec}: {}", cert.to_json());
    }
    assert!(parse_template("tuple(3)").is_err());
    assert!(parse_template("nothing(1)").is_err());
}

#[test]
fn errors_for_unsupported_input() {
    assert!(galois_group(&p("x^2-2x+1"), DEFAULT_MAX_DEGREE).is_err());
    assert!(galois_group(&p("x^9-2"), DEFAULT_MAX_DEGREE).is_err());
}
