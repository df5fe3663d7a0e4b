//! Classification of a polynomial against an action catalog.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::Serialize;

use super::catalog::ActionCatalog;
use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::galois::compute::{galois_group, DEFAULT_MAX_DEGREE};
use crate::galois::resolvent::FactorizationCertificate;
use crate::group::PermGroup;
use crate::iso::action_isomorphism;
use crate::poly::factor::has_integer_root_i64;
use crate::poly::modp::{primes_in, ModPoly};
use crate::poly::{is_irreducible, IntPoly};
use std::sync::Arc;

pub const NON_SEPARABLE: &str = "non-separable";
pub const REDUCIBLE: &str = "reducible";
pub const OTHER: &str = "other";

/// Number of completely split primes recorded in a fingerprint.
pub const FINGERPRINT_PRIMES: usize = 8;
/// Fingerprint primes are taken from here upwards.
pub const FINGERPRINT_START: u64 = 1 << 20;

/// The first [`FINGERPRINT_PRIMES`] primes from [`FINGERPRINT_START`] that
/// split completely in the field. Primes dividing a discriminant of the
/// input are skipped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldFingerprint {
    pub primes: Vec<u64>,
}

impl fmt::Display for FieldFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "split:{}", ps.join(","))
    }
}

/// Fingerprint of the compositum of the splitting fields of `polys`, all
/// monic and separable.
pub fn field_fingerprint(polys: &[IntPoly]) -> Result<FieldFingerprint> {
    if polys.iter().any(|q| !q.is_monic() || !q.is_squarefree()) {
        return Err(Error::NotSeparable);
    }
    let mut primes = Vec::new();
    let mut lo = FINGERPRINT_START;
    while primes.len() < FINGERPRINT_PRIMES {
        if lo > FINGERPRINT_START + (1 << 24) {
            return Err(Error::Internal("too few split primes in the search window".into()));
        }
        for p in primes_in(lo, lo + 4096) {
            let reductions: Vec<ModPoly> = polys.iter().map(|q| ModPoly::from_int(q, p)).collect();
            if reductions.iter().any(|r| !r.is_squarefree()) {
                continue;
            }
            if reductions.iter().all(|r| r.degree() <= 1 || r.factor_degrees().iter().all(|&d| d == 1)) {
                primes.push(p);
                if primes.len() == FINGERPRINT_PRIMES {
                    break;
                }
            }
        }
        lo += 4096;
    }
    Ok(FieldFingerprint { primes })
}

/// Fingerprint of the compositum of the `Q(beta_l)` in a certificate.
pub fn certificate_fingerprint(cert: &FactorizationCertificate) -> Result<FieldFingerprint> {
    let qs: Vec<IntPoly> = cert.factors.iter().map(|f| f.q.clone()).collect();
    field_fingerprint(&qs)
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub label: String,
    /// `|Gal(f)|` when it was computed.
    pub group_order: Option<usize>,
    pub fingerprint: Option<FieldFingerprint>,
}

/// Matches Galois groups against a catalog, caching by the group's elements.
pub struct Classifier<'a> {
    catalog: &'a ActionCatalog,
    degree_cap: usize,
    cache: Mutex<HashMap<Vec<Vec<usize>>, String>>,
}

impl<'a> Classifier<'a> {
    pub fn new(catalog: &'a ActionCatalog, degree_cap: usize) -> Self {
        Classifier { catalog, degree_cap, cache: Mutex::new(HashMap::new()) }
    }

    /// The first catalog label isomorphic to `action`, or `other`.
    pub fn label_for_action(&self, action: &GroupAction) -> String {
        let order = action.group().order();
        self.catalog
            .entries
            .iter()
            .filter(|e| e.degree() == action.num_points() && e.action.group().order() == order)
            .find(|e| action_isomorphism(action, &e.action).is_some())
            .map_or_else(|| OTHER.to_string(), |e| e.label.clone())
    }

    pub fn label_for_group(&self, g: &Arc<PermGroup>) -> String {
        let key: Vec<Vec<usize>> = g.elements().iter().map(|p| p.images().to_vec()).collect();
        if let Some(l) = self.cache.lock().expect("label cache").get(&key) {
            return l.clone();
        }
        let label = self.label_for_action(&GroupAction::natural(g.clone()));
        self.cache.lock().expect("label cache").insert(key, label.clone());
        label
    }

    /// Reserved labels first, then the Galois group.
    pub fn classify(&self, f: &IntPoly) -> Result<Classification> {
        if f.degree() == 0 || !f.is_monic() {
            return Err(Error::InvalidParameters("expected a monic polynomial of positive degree".into()));
        }
        if f.degree() > self.degree_cap {
            return Err(Error::DegreeTooLarge { degree: f.degree(), cap: self.degree_cap });
        }
        if !f.is_squarefree() {
            return Ok(Classification { label: NON_SEPARABLE.into(), group_order: None, fingerprint: None });
        }
        let galois = galois_group(f, self.degree_cap)?;
        let label = if !is_irreducible(f)? {
            REDUCIBLE.to_string()
        } else {
            self.label_for_group(galois.perm_group())
        };
        Ok(Classification { label, group_order: Some(galois.order()), fingerprint: None })
    }

    /// Reserved labels without computing a Galois group for reducible input.
    pub(crate) fn census_label(&self, f: &IntPoly) -> Result<String> {
        if !f.is_squarefree() {
            return Ok(NON_SEPARABLE.into());
        }
        if !is_irreducible(f)? {
            return Ok(REDUCIBLE.into());
        }
        let galois = galois_group(f, self.degree_cap)?;
        Ok(self.label_for_group(galois.perm_group()))
    }
}

/// Label of the first isomorphic catalog action, `reducible`,
/// `non-separable` or `other`; with `with_field`, also the splitting-field
/// fingerprint of a separable `f`.
pub fn classify(f: &IntPoly, catalog: &ActionCatalog, with_field: bool) -> Result<Classification> {
    let mut c = Classifier::new(catalog, DEFAULT_MAX_DEGREE).classify(f)?;
    if with_field && c.label != NON_SEPARABLE {
        c.fingerprint = Some(field_fingerprint(std::slice::from_ref(f))?);
    }
    Ok(c)
}

/// Outcome of the direct tests for degree at most 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum SmallClass {
    NonSeparable,
    Reducible,
    Trivial,
    Cyclic2,
    Cyclic3,
    Symmetric3,
}

impl SmallClass {
    pub(crate) fn natural_group(self) -> Option<PermGroup> {
        match self {
            SmallClass::Trivial => Some(PermGroup::trivial(1)),
            SmallClass::Cyclic2 => Some(PermGroup::symmetric(2)),
            SmallClass::Cyclic3 => Some(PermGroup::alternating(3)),
            SmallClass::Symmetric3 => Some(PermGroup::symmetric(3)),
            _ => None,
        }
    }
}

fn is_square_i128(d: i128) -> bool {
    if d < 0 {
        return false;
    }
    let r = BigInt::from(d).sqrt();
    r.clone() * r == BigInt::from(d)
}

/// Coefficients `a_0 .. a_{n-1}` of a monic polynomial of degree `n <= 3`.
pub(crate) fn classify_small(c: &[i64]) -> SmallClass {
    match c.len() {
        1 => SmallClass::Trivial,
        2 => {
            let (a0, a1) = (c[0] as i128, c[1] as i128);
            let d = a1 * a1 - 4 * a0;
            if d == 0 {
                SmallClass::NonSeparable
            } else if is_square_i128(d) {
                SmallClass::Reducible
            } else {
                SmallClass::Cyclic2
            }
        }
        3 => {
            let (c0, b, a) = (c[0] as i128, c[1] as i128, c[2] as i128);
            let d = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c0 - 27 * c0 * c0 + 18 * a * b * c0;
            if d == 0 {
                SmallClass::NonSeparable
            } else if has_integer_root_i64(c) {
                SmallClass::Reducible
            } else if is_square_i128(d) {
                SmallClass::Cyclic3
            } else {
                SmallClass::Symmetric3
            }
        }
        _ => unreachable!("degree at most 3"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(n: usize) -> ActionCatalog {
        ActionCatalog::transitive(n).unwrap()
    }

    #[test]
    fn labels() {
        let c3 = cat(3);
        let p = |s| IntPoly::parse(s).unwrap();
        assert_eq!(classify(&p("x^3-2"), &c3, false).unwrap().label, "S3_natural");
        assert_eq!(classify(&p("x^3-3x-1"), &c3, false).unwrap().label, "C3_natural");
        assert_eq!(classify(&p("x^2-1"), &cat(2), false).unwrap().label, REDUCIBLE);
        assert_eq!(classify(&p("x^2-2x+1"), &cat(2), false).unwrap().label, NON_SEPARABLE);
        assert_eq!(classify(&p("x^4+x+1"), &cat(4), false).unwrap().label, "S4_natural");
        assert_eq!(classify(&p("x^4+1"), &cat(4), false).unwrap().label, "V4_natural");
        assert_eq!(classify(&p("x^3-2"), &cat(2), false).unwrap().label, OTHER);
    }

    #[test]
    fn small_kernel_agrees_with_engine() {
        let c3 = cat(3);
        let cl = Classifier::new(&c3, DEFAULT_MAX_DEGREE);
        for c in crate::poly::boxes::box_coeffs(3, 2.0, crate::poly::BoxMode::Exhaustive, u128::MAX).unwrap() {
            let f = crate::poly::boxes::monic_from(&c);
            let full = cl.census_label(&f).unwrap();
            let small = match classify_small(&c) {
                SmallClass::NonSeparable => NON_SEPARABLE.to_string(),
                SmallClass::Reducible => REDUCIBLE.to_string(),
                s => cl.label_for_group(&Arc::new(s.natural_group().unwrap())),
            };
            assert_eq!(full, small, "{f}");
        }
    }

    #[test]
    fn fingerprint_of_field_not_polynomial() {
        // x^2 - 2 and x^2 - 8 share a splitting field; x^2 - 3 does not.
        let p = |s| IntPoly::parse(s).unwrap();
        let a = field_fingerprint(&[p("x^2-2")]).unwrap();
        assert_eq!(a, field_fingerprint(&[p("x^2-8")]).unwrap());
        assert_ne!(a, field_fingerprint(&[p("x^2-3")]).unwrap());
        let f = classify(&p("x^3-2"), &cat(3), true).unwrap().fingerprint.unwrap();
        assert_eq!(f, field_fingerprint(&[p("x^3-2"), p("x^2+3")]).unwrap());
    }
}
