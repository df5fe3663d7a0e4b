//! Acceptance criteria 1 to 8. Prints one line per criterion and exits
//! non-zero when any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use galcount::catalog::{group_catalog, ABELIAN_UP_TO_16};
use galcount::census::corpus::{corpus_to_csv, corpus_to_json};
use galcount::census::fit::least_squares;
use galcount::census::{
    census, exponent_fit, generate_corpus, records_to_csv, records_to_json, verify_lemmas, ActionCatalog, CensusOptions,
    CensusRecord, CorpusEntry, Suite, VerifyParams, NON_SEPARABLE, REDUCIBLE,
};
use galcount::families::minimal_faithful_degree;
use galcount::group::PermGroup;
use galcount::poly::height::mahler_check_poly;
use galcount::poly::{is_irreducible, BoxMode, IntPoly};

const CRITERION1_SECONDS: f64 = 60.0;
const CRITERION2_SECONDS: f64 = 120.0;
const CENSUS_HEIGHTS: [f64; 3] = [2.0, 5.0, 10.0];
const CHELA_HEIGHTS: [f64; 6] = [10.0, 20.0, 30.0, 40.0, 50.0, 60.0];
const CHELA_SLOPE: f64 = 2.0;
const CHELA_TOLERANCE: f64 = 0.15;
const TEMPLATES: [&str; 5] = ["tuple(3,2)", "subset(4,2)", "primitive(2,2,1)", "regular(C3)", "regular(V4)"];
const SEED_HEIGHTS: [f64; 3] = [5.0, 10.0, 20.0];
const PER_TEMPLATE_AND_HEIGHT: usize = 10;
const CORPUS_SEED: u64 = 1000;
const MIN_INSTANCES: usize = 50;
const RATIO_SLOPE_TOLERANCE: f64 = 0.3;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

// ---- criterion 2 oracle -------------------------------------------------

/// `mu` of an abelian group: the sum of its primary cyclic factors.
fn abelian_mu(invariants: &[usize]) -> usize {
    let mut total = 0;
    for &n in invariants {
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                let mut q = 1;
                while m % p == 0 {
                    m /= p;
                    q *= p;
                }
                total += q;
            }
            p += 1;
        }
    }
    total.max(1)
}

/// Every subgroup as a bitmask, by closing all subsets generated from
/// pairs and then joining until nothing new appears.
fn subgroup_masks(g: &PermGroup) -> (Vec<u32>, Vec<Vec<usize>>, usize) {
    let n = g.order();
    assert!(n <= 32);
    let e = g.elements();
    let mul: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| g.index_of(&e[i].compose(&e[j])).unwrap()).collect()).collect();
    let id = g.identity_index();
    let close = |mut s: u32| {
        s |= 1 << id;
        loop {
            let mut t = s;
            for i in 0..n {
                if s >> i & 1 == 1 {
                    for j in 0..n {
                        if s >> j & 1 == 1 {
                            t |= 1 << mul[i][j];
                        }
                    }
                }
            }
            if t == s {
                return s;
            }
            s = t;
        }
    };
    let mut subs: BTreeSet<u32> = BTreeSet::new();
    for i in 0..n {
        for j in i..n {
            subs.insert(close(1 << i | 1 << j));
        }
    }
    loop {
        let list: Vec<u32> = subs.iter().copied().collect();
        let before = subs.len();
        for &a in &list {
            for &b in &list {
                subs.insert(close(a | b));
            }
        }
        if subs.len() == before {
            break;
        }
    }
    (subs.into_iter().collect(), mul, id)
}

/// Least total index over every collection of at most four proper
/// subgroups whose conjugates intersect trivially.
fn brute_mu(g: &PermGroup) -> usize {
    let n = g.order();
    if n == 1 {
        return 1;
    }
    let (subs, mul, id) = subgroup_masks(g);
    let inv: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| mul[i][j] == id).unwrap()).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let cores: Vec<(usize, u32)> = subs
        .iter()
        .filter(|&&h| h != full)
        .map(|&h| {
            let mut c = h;
            for x in 0..n {
                let conj = (0..n).filter(|y| h >> y & 1 == 1).fold(0u32, |acc, y| acc | 1 << mul[mul[x][y]][inv[x]]);
                c &= conj;
            }
            (n / h.count_ones() as usize, c)
        })
        .collect();
    let trivial = 1u32 << id;
    let mut best = usize::MAX;
    let k = cores.len();
    for a in 0..k {
        let (ia, ca) = cores[a];
        if ca == trivial {
            best = best.min(ia);
        }
        for b in a + 1..k {
            let (ib, cb) = cores[b];
            let cab = ca & cb;
            if cab == trivial {
                best = best.min(ia + ib);
            }
            for c in b + 1..k {
                let (ic, cc) = cores[c];
                let cabc = cab & cc;
                if cabc == trivial {
                    best = best.min(ia + ib + ic);
                }
                if ia + ib + ic >= best {
                    continue;
                }
                for d in c + 1..k {
                    let (id_, cd) = cores[d];
                    if cabc & cd == trivial {
                        best = best.min(ia + ib + ic + id_);
                    }
                }
            }
        }
    }
    best
}

// ---- criterion 3 oracle -------------------------------------------------

fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    // Fraction-free elimination.
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `-Res(f, f')` for monic `f = x^3 + a x^2 + b x + c`.
fn cubic_disc_by_resultant(a: i64, b: i64, c: i64) -> i128 {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let m = vec![
        vec![1, a, b, c, 0],
        vec![0, 1, a, b, c],
        vec![3, 2 * a, b, 0, 0],
        vec![0, 3, 2 * a, b, 0],
        vec![0, 0, 3, 2 * a, b],
    ];
    -det_i128(m)
}

fn eval3(a: i64, b: i64, c: i64, x: i64) -> i128 {
    let x = x as i128;
    ((x + a as i128) * x + b as i128) * x + c as i128
}

/// Class of `x^3 + a x^2 + b x + c`. A repeated root of a monic integer
/// cubic is an integer, and so is any rational root.
fn cubic_oracle(a: i64, b: i64, c: i64) -> &'static str {
    let bound = 1 + a.abs().max(b.abs()).max(c.abs());
    let mut rational_root = false;
    for x in -bound..=bound {
        if eval3(a, b, c, x) == 0 {
            rational_root = true;
            let deriv = (3 * x as i128 + 2 * a as i128) * x as i128 + b as i128;
            if deriv == 0 {
                return NON_SEPARABLE;
            }
        }
    }
    if rational_root {
        return REDUCIBLE;
    }
    let d = cubic_disc_by_resultant(a, b, c);
    let r = (d.max(0) as f64).sqrt() as i128;
    let square = (r.saturating_sub(2)..=r + 2).any(|s| s >= 0 && s * s == d);
    if square {
        "C3_natural"
    } else {
        "S3_natural"
    }
}

fn quadratic_oracle(b: i64, c: i64) -> &'static str {
    // Roots of x^2 + b x + c are integers iff one lies in [-2, 2] for |b|, |c| <= 1.
    let roots: Vec<i64> = (-3..=3).filter(|&x| x * x + b * x + c == 0).collect();
    match roots.len() {
        0 => "C2_natural",
        _ if b * b == 4 * c => NON_SEPARABLE,
        _ => REDUCIBLE,
    }
}

fn count(rs: &[CensusRecord], h: f64, label: &str) -> u64 {
    rs.iter().filter(|r| r.h == h && r.label == label).map(|r| r.count).sum()
}

// ---- criteria -----------------------------------------------------------

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut report = verify_lemmas(Suite::Wreath, &VerifyParams::default());
    let families = verify_lemmas(Suite::Families, &VerifyParams::default());
    report.checks.extend(families.checks.into_iter().filter(|c| c.check != "minimal-degree-matches-oracle"));
    let secs = start.elapsed().as_secs_f64();
    let needed = [
        "imprimitive-faithful",
        "orbit-is-top-orbit-times-block",
        "primitive-stabilizer-family",
        "induced-block-group-isomorphic",
        "pair-transitive-implies-transitive",
        "homogeneous-family-isomorphic",
        "tuple-family-isomorphic",
        "regular-family-isomorphic",
    ];
    let present = needed.iter().all(|n| report.checks.iter().any(|c| c.check == *n));
    let m2r2 = report.checks.iter().filter(|c| c.check == "imprimitive-faithful" && c.subject.starts_with("m=2 r=2")).count();
    let passed = report.passed() && present && m2r2 == 10 && secs < CRITERION1_SECONDS;
    outcome(
        passed,
        format!("{} checks, {} failed, {m2r2} subgroups of S2 wr S2, {secs:.2}s", report.checks.len(), report.failures().len()),
    )
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let catalog = group_catalog();
    for g in &catalog {
        let mu = minimal_faithful_degree(&g.group).map(|m| m.degree).unwrap_or(0);
        let oracle = brute_mu(&g.group);
        if mu != oracle {
            bad.push(format!("{}: {mu} vs {oracle}", g.name));
        }
        if let Some(inv) = ABELIAN_UP_TO_16.iter().find(|inv| g.name == inv.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x")) {
            if abelian_mu(inv) != mu {
                bad.push(format!("{}: {mu} vs primary sum {}", g.name, abelian_mu(inv)));
            }
        }
    }
    let spot: BTreeMap<&str, usize> = [("S3", 3), ("Q8", 8), ("C6", 5), ("C2xC2", 4)].into();
    for (name, want) in &spot {
        let g = catalog.iter().find(|g| g.name == *name).unwrap();
        let got = minimal_faithful_degree(&g.group).unwrap().degree;
        if got != *want {
            bad.push(format!("{name}: {got}, expected {want}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && catalog.len() == 32 && secs < CRITERION2_SECONDS,
        format!("{} groups, mismatches {:?}, {secs:.2}s", catalog.len(), bad),
    )
}

fn census_artifacts() -> (Vec<CensusRecord>, Vec<CensusRecord>) {
    let opts = CensusOptions { timing: false, ..Default::default() };
    let quad = census(2, &[1.0], BoxMode::Exhaustive, &ActionCatalog::transitive(2).unwrap(), &opts).unwrap();
    let cubic = census(3, &CENSUS_HEIGHTS, BoxMode::Exhaustive, &ActionCatalog::transitive(3).unwrap(), &opts).unwrap();
    (quad, cubic)
}

fn criterion3(quad: &[CensusRecord], cubic: &[CensusRecord]) -> Outcome {
    let mut want2: BTreeMap<&str, u64> = BTreeMap::new();
    for b in -1..=1 {
        for c in -1..=1 {
            *want2.entry(quadratic_oracle(b, c)).or_default() += 1;
        }
    }
    let quad_ok = want2 == BTreeMap::from([("C2_natural", 5), (REDUCIBLE, 3), (NON_SEPARABLE, 1)])
        && want2.iter().all(|(l, n)| count(quad, 1.0, l) == *n);
    let mut mismatches = Vec::new();
    for h in CENSUS_HEIGHTS {
        let hi = h as i64;
        let mut want: BTreeMap<&str, u64> = BTreeMap::new();
        for a in -hi..=hi {
            for b in -hi..=hi {
                for c in -hi..=hi {
                    *want.entry(cubic_oracle(a, b, c)).or_default() += 1;
                }
            }
        }
        for label in ["C3_natural", "S3_natural", REDUCIBLE, NON_SEPARABLE, "other"] {
            let w = want.get(label).copied().unwrap_or(0);
            if count(cubic, h, label) != w {
                mismatches.push(format!("H={h} {label}: {} vs {w}", count(cubic, h, label)));
            }
        }
    }
    let h5: u64 = cubic.iter().filter(|r| r.h == 5.0).map(|r| r.count).sum();
    outcome(
        quad_ok && mismatches.is_empty() && h5 == 1331,
        format!(
            "n=2 H=1 {:?}; n=3 H=10 C3={} S3={} reducible={} non-separable={}; mismatches {:?}",
            want2,
            count(cubic, 10.0, "C3_natural"),
            count(cubic, 10.0, "S3_natural"),
            count(cubic, 10.0, REDUCIBLE),
            count(cubic, 10.0, NON_SEPARABLE),
            mismatches
        ),
    )
}

/// Reducible cubics, separable or not, per height.
fn chela_records() -> Vec<CensusRecord> {
    let opts = CensusOptions { timing: false, ..Default::default() };
    let rs = census(3, &CHELA_HEIGHTS, BoxMode::Exhaustive, &ActionCatalog::transitive(3).unwrap(), &opts).unwrap();
    CHELA_HEIGHTS
        .iter()
        .map(|&h| CensusRecord {
            label: "reducible-all".into(),
            count: count(&rs, h, REDUCIBLE) + count(&rs, h, NON_SEPARABLE),
            ..rs.iter().find(|r| r.h == h).unwrap().clone()
        })
        .collect()
}

fn criterion4(records: &[CensusRecord]) -> Outcome {
    let fit = exponent_fit(records).unwrap();
    outcome(
        (fit.slope - CHELA_SLOPE).abs() <= CHELA_TOLERANCE,
        format!("slope {:.4} +- {:.4} (intercept {:.4}) over H in {:?}", fit.slope, fit.stderr, fit.intercept, CHELA_HEIGHTS),
    )
}

fn corpus() -> Vec<CorpusEntry> {
    generate_corpus(&TEMPLATES, PER_TEMPLATE_AND_HEIGHT, &SEED_HEIGHTS, CORPUS_SEED).unwrap()
}

fn criterion5(entries: &[CorpusEntry]) -> Outcome {
    let identities: usize = entries.iter().map(|e| e.identities.len()).sum();
    let failed = entries.iter().filter(|e| !e.identities_ok()).count();
    let templates: BTreeSet<&str> = entries.iter().map(|e| e.instance.template.as_str()).collect();
    outcome(
        entries.len() >= MIN_INSTANCES && failed == 0 && templates.len() == TEMPLATES.len(),
        format!("{} instances over {} templates, {identities} orbit identities, {failed} failed", entries.len(), templates.len()),
    )
}

fn criterion6(entries: &[CorpusEntry]) -> Outcome {
    let mut bad = Vec::new();
    for e in entries {
        let c = &e.certificate;
        if !c.factors.iter().all(|f| f.degree_ok) {
            bad.push(format!("{} seed {}: degree", e.instance.template, e.instance.seed));
        }
        if !c.factors.iter().all(|f| f.galois_ok) {
            bad.push(format!("{} seed {}: galois", e.instance.template, e.instance.seed));
        }
        if !c.compositum_ok {
            bad.push(format!("{} seed {}: compositum", e.instance.template, e.instance.seed));
        }
        if !e.fingerprints_agree() {
            bad.push(format!("{} seed {}: field fingerprint", e.instance.template, e.instance.seed));
        }
    }
    let tuple: Vec<&CorpusEntry> = entries.iter().filter(|e| e.instance.template == "tuple(3,2)").collect();
    let max_ratio = tuple.iter().map(|e| e.max_ratio()).fold(0.0, f64::max);
    let xs: Vec<f64> = tuple.iter().map(|e| e.h_seed.ln()).collect();
    let ys: Vec<f64> = tuple.iter().map(|e| e.max_ratio().ln()).collect();
    let (slope, _, stderr) = least_squares(&xs, &ys).unwrap();
    let nu_one = tuple.iter().all(|e| e.certificate.factors.iter().all(|f| f.nu.as_integer() == Some(1)));
    outcome(
        bad.is_empty() && max_ratio.is_finite() && nu_one && slope.abs() <= RATIO_SLOPE_TOLERANCE,
        format!(
            "tuple(3,2) max ratio {max_ratio:.4}, log-ratio slope {slope:.4} +- {stderr:.4}; {} certificate failures {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn criterion7(entries: &[CorpusEntry]) -> Outcome {
    let fields = verify_lemmas(Suite::Fields, &VerifyParams::default());
    let field_mahler: Vec<_> = fields.checks.iter().filter(|c| c.check == "mahler-bounds").collect();
    let mut checked = 0;
    let mut failed = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                let f = IntPoly::from_i64(&[c, b, a, 1]);
                if f.is_squarefree() && is_irreducible(&f).unwrap() {
                    checked += 1;
                    if !mahler_check_poly(&f).unwrap().passes() {
                        failed.push(f.to_string());
                    }
                }
            }
        }
    }
    for e in entries {
        let mut polys = vec![&e.instance.poly];
        polys.extend(e.certificate.factors.iter().map(|f| &f.q));
        polys.extend(e.certificate.factors.iter().map(|f| &f.beta.minimal_poly));
        for p in polys {
            checked += 1;
            if !mahler_check_poly(p).unwrap().passes() {
                failed.push(p.to_string());
            }
        }
    }
    let corpus_flags = entries.iter().all(|e| e.mahler_ok);
    let fields_ok = !field_mahler.is_empty() && field_mahler.iter().all(|c| c.passed);
    outcome(
        failed.is_empty() && corpus_flags && fields_ok,
        format!("{checked} minimal polynomials plus {} field-suite batches, failures {:?}", field_mahler.len(), failed),
    )
}

struct Artifacts {
    census_csv: String,
    census_json: String,
    chela_csv: String,
    sample_csv: String,
    corpus_csv: String,
    corpus_json: String,
}

fn artifacts(quad: &[CensusRecord], cubic: &[CensusRecord], chela: &[CensusRecord], corpus: &[CorpusEntry]) -> Artifacts {
    let mut all = quad.to_vec();
    all.extend_from_slice(cubic);
    let opts = CensusOptions { timing: false, ..Default::default() };
    let sample = census(4, &[3.0], BoxMode::Sample { count: 300, seed: 5 }, &ActionCatalog::transitive(4).unwrap(), &opts).unwrap();
    Artifacts {
        census_csv: records_to_csv(&all).unwrap(),
        census_json: records_to_json(&all).unwrap(),
        chela_csv: records_to_csv(chela).unwrap(),
        sample_csv: records_to_csv(&sample).unwrap(),
        corpus_csv: corpus_to_csv(corpus).unwrap(),
        corpus_json: corpus_to_json(corpus).unwrap(),
    }
}

fn criterion8(first: &Artifacts) -> Outcome {
    let (quad, cubic) = census_artifacts();
    let chela = chela_records();
    let entries = corpus();
    let second = artifacts(&quad, &cubic, &chela, &entries);
    let pairs = [
        ("census.csv", &first.census_csv, &second.census_csv),
        ("census.json", &first.census_json, &second.census_json),
        ("chela.csv", &first.chela_csv, &second.chela_csv),
        ("sample.csv", &first.sample_csv, &second.sample_csv),
        ("corpus.csv", &first.corpus_csv, &second.corpus_csv),
        ("corpus.json", &first.corpus_json, &second.corpus_json),
    ];
    let differing: Vec<&str> = pairs.iter().filter(|(_, a, b)| a != b).map(|(n, _, _)| *n).collect();
    let bytes: usize = pairs.iter().map(|(_, a, _)| a.len()).sum();
    outcome(differing.is_empty(), format!("{} artifacts, {bytes} bytes, differing {:?}", pairs.len(), differing))
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let mut results = Vec::new();
    let mut report = |n: usize, o: Outcome| {
        println!("criterion {n}: {} {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        results.push(o.passed);
    };
    report(1, criterion1());
    report(2, criterion2());
    let (quad, cubic) = census_artifacts();
    report(3, criterion3(&quad, &cubic));
    let chela = chela_records();
    report(4, criterion4(&chela));
    let entries = corpus();
    report(5, criterion5(&entries));
    report(6, criterion6(&entries));
    report(7, criterion7(&entries));
    let first = artifacts(&quad, &cubic, &chela, &entries);
    report(8, criterion8(&first));
    if results.iter().any(|&p| !p) {
        std::process::exit(1);
    }
}
