//! Transitive subgroups of `S_n` other than `A_n` and `S_n`, every conjugate
//! listed, for small `n`.
//!
//! Each class is found as a closure `<g1, g2>` with `g1` a cycle-type
//! representative, then expanded to all conjugates. Degrees up to 7 are
//! complete (every transitive group there is 2-generated). Degree 8 draws
//! `g2` from a seeded sample and may miss classes.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::PermGroup;
use crate::perm::{factorial, Permutation};

type P = [u8; 8];

/// Largest order of a transitive subgroup of `S_n` other than `A_n`, `S_n`.
fn order_cap(n: usize) -> usize {
    match n {
        0..=3 => 0,
        4 => 8,
        5 => 20,
        6 => 120,
        7 => 168,
        _ => 1344,
    }
}

const DEGREE8_SAMPLES: usize = 6000;

#[derive(Debug, Clone)]
pub struct Candidate {
    pub group: Arc<PermGroup>,
    /// Index of the conjugacy class within the table for this degree.
    pub class: usize,
}

#[derive(Debug)]
pub struct CandidateTable {
    pub degree: usize,
    /// Sorted by order, then class, then elements.
    pub candidates: Vec<Candidate>,
    /// Cycle types present in each class.
    pub class_cycle_types: Vec<BTreeSet<Vec<usize>>>,
    pub class_orders: Vec<usize>,
    /// Every transitive class is represented.
    pub complete: bool,
}

fn compose(a: &P, b: &P, n: usize) -> P {
    let mut out = [0u8; 8];
    for i in 0..n {
        out[i] = a[b[i] as usize];
    }
    out
}

fn to_p(p: &Permutation) -> P {
    let mut out = [0u8; 8];
    for (i, &x) in p.images().iter().enumerate() {
        out[i] = x as u8;
    }
    out
}

fn from_p(p: &P, n: usize) -> Permutation {
    Permutation::from_images(p[..n].iter().map(|&x| x as usize).collect()).expect("valid")
}

fn transitive_pair(a: &P, b: &P, n: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in [a, b] {
        for i in 0..n {
            let (x, y) = (find(&mut parent, i), find(&mut parent, g[i] as usize));
            parent[x] = y;
        }
    }
    let r = find(&mut parent, 0);
    (1..n).all(|i| find(&mut parent, i) == r)
}

fn closure(gens: &[P], n: usize, cap: usize) -> Option<Vec<P>> {
    let mut id = [0u8; 8];
    for (i, x) in id.iter_mut().enumerate().take(n) {
        *x = i as u8;
    }
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x, n);
            if seen.insert(y) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<P> = seen.into_iter().collect();
    v.sort_unstable();
    Some(v)
}

fn conjugate_set(set: &[P], x: &P, n: usize) -> Vec<P> {
    let mut inv = [0u8; 8];
    for i in 0..n {
        inv[x[i] as usize] = i as u8;
    }
    let mut v: Vec<P> = set.iter().map(|g| compose(&compose(x, g, n), &inv, n)).collect();
    v.sort_unstable();
    v
}

fn cycle_type_reps(n: usize) -> Vec<Permutation> {
    let mut reps = Vec::new();
    let mut parts = Vec::new();
    partitions(n, n, &mut parts, &mut reps);
    reps
}

fn partitions(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
    if rest == 0 {
        let n: usize = cur.iter().sum();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in cur.iter() {
            for i in 0..len {
                images[start + i] = start + (i + 1) % len;
            }
            start += len;
        }
        out.push(Permutation::from_images(images).expect("valid"));
        return;
    }
    for k in (1..=max.min(rest)).rev() {
        cur.push(k);
        partitions(rest - k, k, cur, out);
        cur.pop();
    }
}

fn build(n: usize) -> CandidateTable {
    let cap = order_cap(n);
    let mut classes: Vec<Vec<Vec<P>>> = Vec::new();
    let mut seen: HashSet<Vec<P>> = HashSet::new();
    if cap > 0 {
        let reps: Vec<P> = cycle_type_reps(n).iter().map(to_p).filter(|p| p[..n].iter().enumerate().any(|(i, &x)| x as usize != i)).collect();
        let total = factorial(n);
        let seconds: Vec<P> = if n <= 7 {
            (0..total).map(|r| to_p(&Permutation::unrank(n, r))).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
            (0..DEGREE8_SAMPLES).map(|_| to_p(&Permutation::unrank(n, rng.gen_range(0..total)))).collect()
        };
        let s_gens: Vec<P> = PermGroup::symmetric(n).generators().iter().map(to_p).collect();
        for g1 in &reps {
            for g2 in &seconds {
                if !transitive_pair(g1, g2, n) {
                    continue;
                }
                let Some(elems) = closure(&[*g1, *g2], n, cap) else { continue };
                if seen.contains(&elems) {
                    continue;
                }
                // All conjugates of this class.
                let mut class = vec![elems.clone()];
                seen.insert(elems);
                let mut i = 0;
                while i < class.len() {
                    for x in &s_gens {
                        let c = conjugate_set(&class[i], x, n);
                        if seen.insert(c.clone()) {
                            class.push(c);
                        }
                    }
                    i += 1;
                }
                classes.push(class);
            }
        }
    }
    classes.sort_by_key(|c| (c[0].len(), c.len()));
    let mut candidates = Vec::new();
    let mut class_cycle_types = Vec::new();
    let mut class_orders = Vec::new();
    for (ci, class) in classes.into_iter().enumerate() {
        class_orders.push(class[0].len());
        let types: BTreeSet<Vec<usize>> = class[0].iter().map(|p| from_p(p, n).cycle_type()).collect();
        class_cycle_types.push(types);
        let mut members: Vec<Vec<P>> = class;
        members.sort();
        for elems in members {
            let perms: Vec<Permutation> = elems.iter().map(|p| from_p(p, n)).collect();
            let group = PermGroup::from_closed_elements(n, perms, Vec::new());
            candidates.push(Candidate { group: Arc::new(group), class: ci });
        }
    }
    CandidateTable { degree: n, candidates, class_cycle_types, class_orders, complete: n <= 7 }
}

/// The cached table for degree `n` (at most 8).
pub fn candidate_table(n: usize) -> Arc<CandidateTable> {
    static TABLES: OnceLock<std::sync::Mutex<HashMap<usize, Arc<CandidateTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().expect("table lock").get(&n) {
        return t.clone();
    }
    let t = Arc::new(build(n));
    tables.lock().expect("table lock").entry(n).or_insert(t).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_tables() {
        // Transitive classes of degree n, minus A_n and S_n where distinct.
        for (n, classes, total) in [(3, 0, 0), (4, 3, 7), (5, 3, 18), (7, 5, 510)] {
            let t = candidate_table(n);
            assert_eq!(t.class_orders.len(), classes, "degree {n}");
            assert_eq!(t.candidates.len(), total, "degree {n}");
        }
        let t6 = candidate_table(6);
        assert_eq!(t6.class_orders.len(), 14);
        assert!(t6.candidates.iter().all(|c| c.group.is_transitive()));
    }
}
