//! Invariant suites over wreath subgroups, stable families and fields.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::action::GroupAction;
use crate::catalog::{group_catalog, CatalogGroup};
use crate::error::{Error, Result};
use crate::families::{
    build_homogeneous_family, build_regular_family, build_transitive_tuple_family, minimal_faithful_degree, FamilyBundle,
};
use crate::group::PermGroup;
use crate::iso::action_isomorphism;
use crate::wreath::{
    curated_subgroups, imprimitive_on_subsets, imprimitive_orbits_from_primitive_transitivity, induced_block_group,
    primitive_stabilizer_family, top_orbits, wreath_action, WreathActionKind, WreathGroup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Wreath,
    Fields,
    Families,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "wreath" => Ok(Suite::Wreath),
            "fields" => Ok(Suite::Fields),
            "families" => Ok(Suite::Families),
            "all" => Ok(Suite::All),
            _ => Err(Error::Unknown { kind: "suite", name: s.to_string() }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Wreath => "wreath",
            Suite::Fields => "fields",
            Suite::Families => "families",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyParams {
    pub seed: u64,
    /// Seeded extra subgroups of `S_3 wr S_2`.
    pub curated_extra: usize,
    pub cubics: usize,
    pub cubic_height: f64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { seed: 1, curated_extra: 4, cubics: 20, cubic_height: 10.0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub check: &'static str,
    pub subject: String,
    pub passed: bool,
    /// What failed, when something did.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<CheckResult>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Pass and fail counts per check name, in first-seen order.
    pub fn summary(&self) -> Vec<(&'static str, &'static str, usize, usize)> {
        let mut out: Vec<(&'static str, &'static str, usize, usize)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(s, n, _, _)| *s == c.suite && *n == c.check) {
                Some(row) => {
                    if c.passed {
                        row.2 += 1
                    } else {
                        row.3 += 1
                    }
                }
                None => out.push((c.suite, c.check, c.passed as usize, (!c.passed) as usize)),
            }
        }
        out
    }

    pub(crate) fn push(&mut self, suite: &'static str, check: &'static str, subject: String, outcome: Result<bool>) {
        let (passed, witness) = match outcome {
            Ok(true) => (true, None),
            Ok(false) => (false, Some("check returned false".to_string())),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(CheckResult { suite, check, subject, passed, witness });
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (suite, check, ok, bad) in self.summary() {
            let status = if bad == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {suite}/{check} passed={ok} failed={bad}")?;
        }
        for c in self.failures() {
            writeln!(f, "  witness {}/{} {}: {}", c.suite, c.check, c.subject, c.witness.as_deref().unwrap_or(""))?;
        }
        Ok(())
    }
}

pub fn verify_lemmas(suite: Suite, params: &VerifyParams) -> LemmaReport {
    let mut report = LemmaReport::default();
    if matches!(suite, Suite::Wreath | Suite::All) {
        wreath_suite(params, &mut report);
    }
    if matches!(suite, Suite::Families | Suite::All) {
        families_suite(&mut report);
    }
    if matches!(suite, Suite::Fields | Suite::All) {
        super::field_checks::fields_suite(params, &mut report);
    }
    report
}

fn describe(g: &WreathGroup) -> String {
    let gens: Vec<String> = g.perm_group().small_generating_set().iter().map(|p| p.to_string()).collect();
    format!("m={} r={} order={} gens=<{}>", g.m(), g.r(), g.order(), gens.join(","))
}

fn check_wreath_subgroup(g: &WreathGroup, with_blocks: bool, report: &mut LemmaReport) {
    const S: &str = "wreath";
    let subject = describe(g);
    report.push(S, "imprimitive-faithful", subject.clone(), wreath_action(g, WreathActionKind::Imprimitive).map(|a| a.is_faithful()));
    let transitive = wreath_action(g, WreathActionKind::Primitive(1)).map(|a| a.is_transitive());
    if matches!(transitive, Ok(true)) {
        let orbits = imprimitive_orbits_from_primitive_transitivity(g);
        report.push(S, "orbit-is-top-orbit-times-block", subject.clone(), orbits.map(|o| o.len() == top_orbits(g).len()));
        if with_blocks {
            for t in top_orbits(g) {
                let outcome = induced_block_group(g, &t).map(|b| b.isomorphism.verify(&b.action, &b.gamma_action));
                report.push(S, "induced-block-group-isomorphic", format!("{subject} top={t:?}"), outcome);
            }
        }
    }
    let family = (|| -> Result<bool> {
        let stable = primitive_stabilizer_family(g, 1)?;
        let delta = imprimitive_on_subsets(g, 1)?;
        let sized = stable.family.len() == g.r() * g.m();
        let intertwines = (0..g.order())
            .all(|e| (0..delta.num_points()).all(|d| stable.action.act(e, stable.iota[d]) == stable.iota[delta.act(e, d)]));
        let iso = action_isomorphism(&delta, &stable.action).is_some_and(|i| i.verify(&delta, &stable.action));
        Ok(sized && intertwines && iso)
    })();
    report.push(S, "primitive-stabilizer-family", subject, family);
}

fn wreath_suite(params: &VerifyParams, report: &mut LemmaReport) {
    match WreathGroup::full(2, 2).and_then(|w| w.all_subgroups(1000)) {
        Ok(subs) => {
            for g in &subs {
                check_wreath_subgroup(g, true, report);
            }
        }
        Err(e) => report.push("wreath", "enumerate-subgroups", "m=2 r=2".into(), Err(e)),
    }
    match curated_subgroups(3, 2, params.seed, params.curated_extra) {
        Ok(subs) => {
            for g in &subs {
                check_wreath_subgroup(g, true, report);
            }
        }
        Err(e) => report.push("wreath", "enumerate-subgroups", "m=3 r=2".into(), Err(e)),
    }
    let s4 = PermGroup::symmetric(4);
    match s4.all_subgroups(1000) {
        Ok(subs) => {
            for h in subs {
                let h = Arc::new(h);
                if GroupAction::on_subsets(h.clone(), 2).is_transitive() {
                    let gens: Vec<String> = h.small_generating_set().iter().map(|p| p.to_string()).collect();
                    report.push(
                        "wreath",
                        "pair-transitive-implies-transitive",
                        format!("order={} gens=<{}>", h.order(), gens.join(",")),
                        Ok(h.is_transitive()),
                    );
                }
            }
        }
        Err(e) => report.push("wreath", "enumerate-subgroups", "S4".into(), Err(e)),
    }
}

fn bundle_checks(bundle: &FamilyBundle) -> bool {
    let iso = action_isomorphism(&bundle.index_action, &bundle.family_action)
        .is_some_and(|i| i.verify(&bundle.index_action, &bundle.family_action));
    bundle.index_isomorphism_holds() && bundle.degree_bookkeeping_holds() && iso
}

fn families_suite(report: &mut LemmaReport) {
    const S: &str = "families";
    for CatalogGroup { name, group } in group_catalog() {
        let mu = minimal_faithful_degree(&group).map(|m| m.degree);
        let oracle = mu_oracle(&group);
        let outcome = match (&mu, &oracle) {
            (Ok(a), Ok(b)) if a == b => Ok(true),
            (Ok(a), Ok(b)) => Err(Error::Internal(format!("search gives {a}, oracle gives {b}"))),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        report.push(S, "minimal-degree-matches-oracle", name.clone(), outcome);
        let regular = build_regular_family(&group, None).map(|b| bundle_checks(&b) && Ok(b.family.len()) == mu);
        report.push(S, "regular-family-isomorphic", name.clone(), regular);
        let m = group.degree();
        for k in 1..=m / 2 {
            if GroupAction::on_subsets(group.clone(), k).is_transitive() {
                let b = build_homogeneous_family(&group, k).map(|b| bundle_checks(&b));
                report.push(S, "homogeneous-family-isomorphic", format!("{name} k={k}"), b);
            }
        }
        for k in 1..=m.min(3) {
            if GroupAction::on_tuples(group.clone(), k).is_transitive() {
                let b = build_transitive_tuple_family(&group, k).map(|b| bundle_checks(&b));
                report.push(S, "tuple-family-isomorphic", format!("{name} k={k}"), b);
            }
        }
    }
}

/// `mu(G)` by a shortest-path search over intersections of cores, with
/// subgroups enumerated from scratch by joining cyclic subgroups. Orders up
/// to 64.
pub fn mu_oracle(g: &PermGroup) -> Result<usize> {
    let n = g.order();
    if n > 64 {
        return Err(Error::InvalidParameters(format!("oracle handles orders up to 64, got {n}")));
    }
    if n == 1 {
        return Ok(1);
    }
    let elems = g.elements();
    let idx: HashMap<Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p.images().to_vec(), i)).collect();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| idx[elems[i].compose(&elems[j]).images()]).collect())
        .collect();
    let id = (0..n).find(|&i| elems[i].is_identity()).expect("identity");
    let inv: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| mul[i][j] == id).expect("inverse")).collect();
    let close = |mut set: u64| -> u64 {
        set |= 1 << id;
        loop {
            let mut next = set;
            for i in (0..n).filter(|i| set >> i & 1 == 1) {
                for j in (0..n).filter(|j| set >> j & 1 == 1) {
                    next |= 1 << mul[i][j];
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    };
    let mut subgroups: BTreeSet<u64> = BTreeSet::from([close(0)]);
    let mut frontier: Vec<u64> = subgroups.iter().copied().collect();
    while let Some(h) = frontier.pop() {
        for x in 0..n {
            if h >> x & 1 == 0 {
                let k = close(h | 1 << x);
                if subgroups.insert(k) {
                    frontier.push(k);
                }
            }
        }
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let core = |h: u64| -> u64 {
        let mut c = h;
        for x in 0..n {
            let mut conj = 0u64;
            for y in (0..n).filter(|y| h >> y & 1 == 1) {
                conj |= 1 << mul[mul[x][y]][inv[x]];
            }
            c &= conj;
        }
        c
    };
    let edges: Vec<(usize, u64)> =
        subgroups.iter().filter(|&&h| h != full).map(|&h| (n / h.count_ones() as usize, core(h))).collect();
    let target = 1u64 << id;
    let mut dist: BTreeMap<u64, usize> = BTreeMap::from([(full, 0)]);
    let mut heap = BinaryHeap::from([Reverse((0usize, full))]);
    while let Some(Reverse((d, state))) = heap.pop() {
        if state == target {
            return Ok(d);
        }
        if dist.get(&state).is_some_and(|&best| best < d) {
            continue;
        }
        for &(cost, c) in &edges {
            let next = state & c;
            let nd = d + cost;
            if next != state && dist.get(&next).map_or(true, |&best| nd < best) {
                dist.insert(next, nd);
                heap.push(Reverse((nd, next)));
            }
        }
    }
    Err(Error::Internal("no faithful action found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_group;

    #[test]
    fn oracle_spot_values() {
        for (name, mu) in [("S3", 3), ("Q8", 8), ("C6", 5), ("C2xC2", 4), ("Dic3", 7), ("C2xC2xC2xC2", 8)] {
            assert_eq!(mu_oracle(&catalog_group(name).unwrap().group).unwrap(), mu, "{name}");
        }
    }

    #[test]
    fn wreath_and_families_pass() {
        let mut r = LemmaReport::default();
        wreath_suite(&VerifyParams::default(), &mut r);
        families_suite(&mut r);
        assert!(r.passed(), "{r}");
        let names: BTreeSet<_> = r.checks.iter().map(|c| c.check).collect();
        assert!(names.contains("induced-block-group-isomorphic"));
        assert!(names.contains("pair-transitive-implies-transitive"));
    }
}
