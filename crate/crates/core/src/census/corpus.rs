//! Generated corpora: polynomials realizing a template, with resolvent
//! identities and factorization certificates checked on each.

use serde::Serialize;

use super::classify::{certificate_fingerprint, field_fingerprint, FieldFingerprint};
use crate::error::{Error, Result};
use crate::galois::resolvent::{resolvent_identity_check, splitting_factorization, FactorizationCertificate};
use crate::galois::templates::{parse_template, realize_action, Instance};
use crate::poly::height::mahler_check_poly;
use crate::poly::{is_irreducible, IntPoly};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub instance: Instance,
    pub h_seed: f64,
    /// One flag per family orbit.
    pub identities: Vec<bool>,
    pub certificate: FactorizationCertificate,
    pub field: FieldFingerprint,
    pub compositum_field: FieldFingerprint,
    /// Mahler bounds on `f`, the irreducible seed polynomials and every `q_l`.
    pub mahler_ok: bool,
}

impl CorpusEntry {
    pub fn identities_ok(&self) -> bool {
        !self.identities.is_empty() && self.identities.iter().all(|&b| b)
    }

    pub fn fingerprints_agree(&self) -> bool {
        self.field == self.compositum_field
    }

    pub fn ok(&self) -> bool {
        self.identities_ok() && self.certificate.all_ok() && self.fingerprints_agree() && self.mahler_ok
    }

    pub fn max_ratio(&self) -> f64 {
        self.certificate.factors.iter().map(|f| f.measured_ratio).fold(0.0, f64::max)
    }

    pub fn row(&self) -> CorpusRow {
        let c = &self.certificate;
        CorpusRow {
            template: self.instance.template.clone(),
            h_seed: self.h_seed,
            seed: self.instance.seed,
            attempts: self.instance.attempts,
            poly: self.instance.poly.to_string(),
            degree: self.instance.poly.degree(),
            group_order: self.instance.galois.order(),
            nu: c.bundle.nus().iter().map(|n| n.to_string()).collect::<Vec<_>>().join(";"),
            q_degrees: c.factors.iter().map(|f| f.q.degree().to_string()).collect::<Vec<_>>().join(";"),
            identity_ok: self.identities_ok(),
            degree_ok: c.factors.iter().all(|f| f.degree_ok),
            galois_ok: c.factors.iter().all(|f| f.galois_ok),
            compositum_ok: c.compositum_ok,
            fingerprint_ok: self.fingerprints_agree(),
            mahler_ok: self.mahler_ok,
            max_ratio: format!("{:.6e}", self.max_ratio()),
            field: self.field.to_string(),
        }
    }
}

/// Flat record for CSV and JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusRow {
    pub template: String,
    pub h_seed: f64,
    pub seed: u64,
    pub attempts: usize,
    pub poly: String,
    pub degree: usize,
    pub group_order: usize,
    pub nu: String,
    pub q_degrees: String,
    pub identity_ok: bool,
    pub degree_ok: bool,
    pub galois_ok: bool,
    pub compositum_ok: bool,
    pub fingerprint_ok: bool,
    pub mahler_ok: bool,
    pub max_ratio: String,
    pub field: String,
}

fn mahler_ok(polys: &[&IntPoly]) -> Result<bool> {
    for p in polys {
        if !mahler_check_poly(p)?.passes() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Realizes `template` with `seed`, then checks everything on the result.
pub fn corpus_entry(template: &str, seed: u64, h_seed: f64) -> Result<CorpusEntry> {
    let t = parse_template(template)?;
    let instance = realize_action(t.as_ref(), seed, h_seed)?;
    let bundle = t.bundle()?;
    let identities =
        (0..bundle.s()).map(|l| resolvent_identity_check(&instance.galois, &bundle, l)).collect::<Result<Vec<_>>>()?;
    let certificate = splitting_factorization(&instance.galois, &bundle)?;
    let field = field_fingerprint(std::slice::from_ref(&instance.poly))?;
    let compositum_field = certificate_fingerprint(&certificate)?;
    let mut polys: Vec<&IntPoly> = vec![&instance.poly];
    for p in &instance.seed_polys {
        if p.degree() > 0 && p.is_squarefree() && is_irreducible(p)? {
            polys.push(p);
        }
    }
    polys.extend(certificate.factors.iter().map(|f| &f.q));
    let mahler_ok = mahler_ok(&polys)?;
    Ok(CorpusEntry { instance, h_seed, identities, certificate, field, compositum_field, mahler_ok })
}

/// `per_template` entries for every template and seed height, seeds
/// `seed, seed + 1, ..` in order.
pub fn generate_corpus(templates: &[&str], per_template: usize, h_seeds: &[f64], seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut jobs = Vec::new();
    for t in templates {
        for &h in h_seeds {
            for i in 0..per_template {
                jobs.push((t.to_string(), seed + i as u64, h));
            }
        }
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = jobs.len().div_ceil(threads).max(1);
    let results: Vec<Vec<Result<CorpusEntry>>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|(t, sd, h)| corpus_entry(t, *sd, *h)).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("corpus worker")).collect()
    });
    results.into_iter().flatten().collect()
}

pub fn corpus_to_csv(entries: &[CorpusEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in entries {
        w.serialize(e.row()).map_err(|e| Error::Internal(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn corpus_to_json(entries: &[CorpusEntry]) -> Result<String> {
    let rows: Vec<serde_json::Value> = entries
        .iter()
        .map(|e| {
            let mut v = serde_json::to_value(e.row()).expect("row serializes");
            v["certificate"] = e.certificate.to_json();
            v
        })
        .collect();
    serde_json::to_string_pretty(&rows).map_err(|e| Error::Internal(format!("json: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_checks_out() {
        let entries = generate_corpus(&["tuple(3,2)", "regular(C3)"], 2, &[5.0], 11).unwrap();
        assert_eq!(entries.len(), 4);
        for e in &entries {
            assert!(e.ok(), "{:?}", e.row());
        }
        let again = generate_corpus(&["tuple(3,2)", "regular(C3)"], 2, &[5.0], 11).unwrap();
        assert_eq!(corpus_to_csv(&entries).unwrap(), corpus_to_csv(&again).unwrap());
    }
}
