//! Field-side checks on seeded irreducible cubics.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::lemmas::{LemmaReport, VerifyParams};
use crate::action::k_subsets;
use crate::error::Result;
use crate::families::build_homogeneous_family;
use crate::galois::compute::{galois_group, DEFAULT_MAX_DEGREE};
use crate::galois::resolvent::{partial_resolvent, resolvent_identity_check, splitting_factorization};
use crate::poly::boxes::box_iterate;
use crate::poly::height::mahler_check_poly;
use crate::poly::{is_irreducible, BoxMode, IntPoly};

/// `count` irreducible cubics drawn from `B_3(h)` with `seed`.
pub fn seeded_cubics(count: usize, h: f64, seed: u64) -> Result<Vec<IntPoly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let draw = rand::Rng::gen::<u64>(&mut rng);
        for f in box_iterate(3, h, BoxMode::Sample { count: 64, seed: draw }, u128::MAX)? {
            if out.len() < count && f.is_squarefree() && is_irreducible(&f)? && !out.contains(&f) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

fn mahler_all(polys: &[&IntPoly]) -> Result<bool> {
    for p in polys {
        if !mahler_check_poly(p)?.passes() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn fields_suite(params: &VerifyParams, report: &mut LemmaReport) {
    const S: &str = "fields";
    let cubics = match seeded_cubics(params.cubics, params.cubic_height, params.seed) {
        Ok(c) => c,
        Err(e) => return report.push(S, "seeded-cubics", String::new(), Err(e)),
    };
    for f in cubics {
        let subject = f.to_string();
        let res = match galois_group(&f, DEFAULT_MAX_DEGREE) {
            Ok(r) => r,
            Err(e) => {
                report.push(S, "galois-group", subject, Err(e));
                continue;
            }
        };
        report.push(S, "galois-group", subject.clone(), Ok(res.dedekind_consistent() && res.orbit_stabilizer_holds()));
        for k in 1..=2 {
            for a in k_subsets(3, k) {
                let pr = partial_resolvent(&res, &a);
                let degree = pr.as_ref().map(|p| p.degree_identity_holds()).map_err(|e| e.clone());
                report.push(S, "coefficient-field-degree", format!("{subject} A={a:?}"), degree);
                let mahler = pr.and_then(|p| mahler_all(&p.coeffs.iter().map(|c| &c.minimal_poly).collect::<Vec<_>>()));
                report.push(S, "mahler-bounds", format!("{subject} coefficients of f_A A={a:?}"), mahler);
            }
        }
        let bundle = match build_homogeneous_family(res.perm_group(), 1) {
            Ok(b) => b,
            Err(e) => {
                report.push(S, "family", subject, Err(e));
                continue;
            }
        };
        for l in 0..bundle.s() {
            report.push(S, "resolvent-identity", format!("{subject} orbit={l}"), resolvent_identity_check(&res, &bundle, l));
        }
        match splitting_factorization(&res, &bundle) {
            Ok(cert) => {
                report.push(S, "splitting-factorization", subject.clone(), Ok(cert.all_ok()));
                let qs: Vec<&IntPoly> = cert.factors.iter().map(|c| &c.q).collect();
                report.push(S, "mahler-bounds", format!("{subject} generators"), mahler_all(&qs));
            }
            Err(e) => report.push(S, "splitting-factorization", subject, Err(e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_suite_passes() {
        let mut r = LemmaReport::default();
        fields_suite(&VerifyParams { cubics: 5, ..Default::default() }, &mut r);
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().any(|c| c.check == "resolvent-identity"));
    }

    #[test]
    fn cubics_are_seeded() {
        let a = seeded_cubics(6, 10.0, 3).unwrap();
        assert_eq!(a, seeded_cubics(6, 10.0, 3).unwrap());
        assert_eq!(a.len(), 6);
    }
}
