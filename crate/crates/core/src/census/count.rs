//! Counting `B_n(H)` by class.

use std::collections::HashMap;
use std::sync::atomic::{AtomicI64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use super::catalog::ActionCatalog;
use super::classify::{classify_small, Classifier, SmallClass, NON_SEPARABLE, OTHER, REDUCIBLE};
use crate::error::{Error, Result};
use crate::galois::compute::DEFAULT_MAX_DEGREE;
use crate::poly::boxes::{box_coeffs, box_count, height_floor, monic_from};
use crate::poly::BoxMode;

/// Largest degree served by the direct integer tests.
pub const SMALL_DEGREE: usize = 3;

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub budget: u128,
    pub threads: usize,
    /// When false, `runtime_ms` is written as 0 so repeated runs are
    /// byte-identical.
    pub timing: bool,
    pub degree_cap: usize,
    /// Use the Galois engine even where the direct tests apply.
    pub full_engine: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            budget: 50_000_000,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            timing: true,
            degree_cap: DEFAULT_MAX_DEGREE,
            full_engine: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    #[serde(rename = "H")]
    pub h: f64,
    /// `exhaustive` or `sample:COUNT`.
    pub mode: String,
    pub seed: Option<u64>,
    pub label: String,
    pub count: u64,
    pub runtime_ms: u64,
}

pub fn mode_name(mode: BoxMode) -> (String, Option<u64>) {
    match mode {
        BoxMode::Exhaustive => ("exhaustive".into(), None),
        BoxMode::Sample { count, seed } => (format!("sample:{count}"), Some(seed)),
    }
}

type Counts = HashMap<String, u64>;

struct Labeler<'a> {
    classifier: Classifier<'a>,
    small: HashMap<SmallClass, String>,
    use_small: bool,
}

impl Labeler<'_> {
    fn label(&self, c: &[i64]) -> Result<String> {
        if self.use_small {
            return Ok(self.small[&classify_small(c)].clone());
        }
        self.classifier.census_label(&monic_from(c))
    }
}

fn merge(into: &mut Counts, from: Counts) {
    for (k, v) in from {
        *into.entry(k).or_default() += v;
    }
}

/// Exhaustive count, one worker per `a_0` value at a time.
fn count_exhaustive(n: usize, h: i64, labeler: &Labeler, threads: usize) -> Result<Counts> {
    let next = AtomicI64::new(-h);
    let results: Vec<Result<Counts>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads.max(1))
            .map(|_| {
                s.spawn(|| -> Result<Counts> {
                    let mut local = Counts::new();
                    let mut c = vec![0i64; n];
                    loop {
                        let a0 = next.fetch_add(1, Ordering::Relaxed);
                        if a0 > h {
                            return Ok(local);
                        }
                        c[0] = a0;
                        for x in c.iter_mut().skip(1) {
                            *x = -h;
                        }
                        loop {
                            *local.entry(labeler.label(&c)?).or_default() += 1;
                            let mut i = n;
                            loop {
                                i -= 1;
                                if i == 0 {
                                    break;
                                }
                                if c[i] < h {
                                    c[i] += 1;
                                    break;
                                }
                                c[i] = -h;
                            }
                            if i == 0 {
                                break;
                            }
                        }
                    }
                })
            })
            .collect();
        handles.into_iter().map(|t| t.join().expect("census worker")).collect()
    });
    let mut total = Counts::new();
    for r in results {
        merge(&mut total, r?);
    }
    Ok(total)
}

fn count_sample(draws: &[Vec<i64>], labeler: &Labeler, threads: usize) -> Result<Counts> {
    let chunk = draws.len().div_ceil(threads.max(1)).max(1);
    let results: Vec<Result<Counts>> = std::thread::scope(|s| {
        let handles: Vec<_> = draws
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || -> Result<Counts> {
                    let mut local = Counts::new();
                    for c in part {
                        *local.entry(labeler.label(c)?).or_default() += 1;
                    }
                    Ok(local)
                })
            })
            .collect();
        handles.into_iter().map(|t| t.join().expect("census worker")).collect()
    });
    let mut total = Counts::new();
    for r in results {
        merge(&mut total, r?);
    }
    Ok(total)
}

/// Counts of `B_n(H)` by catalog label for each height, followed by
/// `other`, `reducible` and `non-separable`. Every label is listed, with
/// zero counts included.
pub fn census(
    n: usize,
    heights: &[f64],
    mode: BoxMode,
    catalog: &ActionCatalog,
    opts: &CensusOptions,
) -> Result<Vec<CensusRecord>> {
    if n == 0 {
        return Err(Error::InvalidParameters("degree must be positive".into()));
    }
    if n > opts.degree_cap {
        return Err(Error::DegreeTooLarge { degree: n, cap: opts.degree_cap });
    }
    let classifier = Classifier::new(catalog, opts.degree_cap);
    let mut small = HashMap::from([
        (SmallClass::NonSeparable, NON_SEPARABLE.to_string()),
        (SmallClass::Reducible, REDUCIBLE.to_string()),
    ]);
    for s in [SmallClass::Trivial, SmallClass::Cyclic2, SmallClass::Cyclic3, SmallClass::Symmetric3] {
        let g = s.natural_group().expect("group for irreducible class");
        small.insert(s, classifier.label_for_group(&Arc::new(g)));
    }
    let labeler = Labeler { classifier, small, use_small: n <= SMALL_DEGREE && !opts.full_engine };
    let mut labels: Vec<String> = catalog.labels().iter().map(|s| s.to_string()).collect();
    for r in [OTHER, REDUCIBLE, NON_SEPARABLE] {
        if !labels.iter().any(|l| l == r) {
            labels.push(r.to_string());
        }
    }
    let (mode_str, seed) = mode_name(mode);
    let mut out = Vec::new();
    for &h in heights {
        let hf = height_floor(h)?;
        let start = Instant::now();
        let counts = match mode {
            BoxMode::Exhaustive => {
                let total = box_count(n, h)?;
                if total > opts.budget {
                    return Err(Error::BudgetExceeded { count: total, budget: opts.budget });
                }
                let counts = count_exhaustive(n, hf, &labeler, opts.threads)?;
                if counts.values().map(|&v| v as u128).sum::<u128>() != total {
                    return Err(Error::Internal("census does not cover the box".into()));
                }
                counts
            }
            BoxMode::Sample { .. } => {
                let draws: Vec<Vec<i64>> = box_coeffs(n, h, mode, opts.budget)?.collect();
                count_sample(&draws, &labeler, opts.threads)?
            }
        };
        let runtime_ms = if opts.timing { start.elapsed().as_millis() as u64 } else { 0 };
        for label in &labels {
            out.push(CensusRecord {
                n,
                h,
                mode: mode_str.clone(),
                seed,
                label: label.clone(),
                count: counts.get(label).copied().unwrap_or(0),
                runtime_ms,
            });
        }
        if let Some(extra) = counts.keys().find(|k| !labels.contains(k)) {
            return Err(Error::Internal(format!("unlisted label `{extra}`")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(rs: &[CensusRecord], h: f64, label: &str) -> u64 {
        rs.iter().find(|r| r.h == h && r.label == label).unwrap().count
    }

    #[test]
    fn quadratics_height_one() {
        let cat = ActionCatalog::transitive(2).unwrap();
        let rs = census(2, &[1.0], BoxMode::Exhaustive, &cat, &CensusOptions::default()).unwrap();
        assert_eq!(get(&rs, 1.0, "C2_natural"), 5);
        assert_eq!(get(&rs, 1.0, REDUCIBLE), 3);
        assert_eq!(get(&rs, 1.0, NON_SEPARABLE), 1);
    }

    #[test]
    fn linear_single_class() {
        let cat = ActionCatalog::transitive(1).unwrap();
        let rs = census(1, &[4.0], BoxMode::Exhaustive, &cat, &CensusOptions::default()).unwrap();
        assert_eq!(get(&rs, 4.0, "C1_natural"), 9);
        assert_eq!(rs.iter().map(|r| r.count).sum::<u64>(), 9);
    }

    #[test]
    fn engines_agree_and_threads_do_not_matter() {
        let cat = ActionCatalog::transitive(3).unwrap();
        let fast = CensusOptions { timing: false, ..Default::default() };
        let full = CensusOptions { full_engine: true, threads: 1, ..fast.clone() };
        let a = census(3, &[2.0], BoxMode::Exhaustive, &cat, &fast).unwrap();
        let b = census(3, &[2.0], BoxMode::Exhaustive, &cat, &full).unwrap();
        assert_eq!(a, b);
        let s = BoxMode::Sample { count: 500, seed: 7 };
        assert_eq!(census(3, &[9.0], s, &cat, &fast).unwrap(), census(3, &[9.0], s, &cat, &full).unwrap());
    }

    #[test]
    fn quartic_box_is_conserved() {
        let cat = ActionCatalog::transitive(4).unwrap();
        let rs = census(4, &[1.0], BoxMode::Exhaustive, &cat, &CensusOptions::default()).unwrap();
        assert_eq!(rs.iter().map(|r| r.count).sum::<u64>(), 81);
        assert!(census(4, &[30.0], BoxMode::Exhaustive, &cat, &CensusOptions { budget: 1000, ..Default::default() })
            .is_err());
    }
}
