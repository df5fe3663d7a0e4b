//! Isomorphism search between faithful group actions.
//!
//! Two faithful actions are isomorphic exactly when some bijection of the
//! point sets conjugates one permutation image onto the other. The search
//! fixes a small generating set `g_1..g_k` of the first image, picks targets
//! `h_i` of matching cycle type in the second (`h_1` only up to conjugacy),
//! and solves `pi g_i pi^-1 = h_i` by propagating along orbits.

use std::collections::{HashMap, HashSet};

use crate::action::GroupAction;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// `(phi, phi*)` between two actions: `element_map[i]` is the index in the
/// second group of `phi(g_i)`, `point_map[p]` is `phi*(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionIsomorphism {
    pub element_map: Vec<usize>,
    pub point_map: Vec<usize>,
}

impl ActionIsomorphism {
    /// Checks `phi(g)(phi*(w)) = phi*(g(w))` for every element and point,
    /// plus bijectivity and the homomorphism property on generators.
    pub fn verify(&self, a1: &GroupAction, a2: &GroupAction) -> bool {
        let n = a1.num_points();
        if n != a2.num_points() || self.point_map.len() != n {
            return false;
        }
        if self.element_map.len() != a1.group().order() || a1.group().order() != a2.group().order() {
            return false;
        }
        if self.point_map.iter().collect::<HashSet<_>>().len() != n {
            return false;
        }
        if self.element_map.iter().collect::<HashSet<_>>().len() != self.element_map.len() {
            return false;
        }
        for (e1, &e2) in self.element_map.iter().enumerate() {
            for w in 0..n {
                if a2.act(e2, self.point_map[w]) != self.point_map[a1.act(e1, w)] {
                    return false;
                }
            }
        }
        let g1 = a1.group();
        let g2 = a2.group();
        for g in g1.generators() {
            let gi = g1.index_of(g).unwrap();
            for (ti, t) in g1.elements().iter().enumerate() {
                let gt = g1.index_of(&g.compose(t)).unwrap();
                let lhs = g2.element(self.element_map[gt]);
                let rhs = g2.element(self.element_map[gi]).compose(g2.element(self.element_map[ti]));
                if *lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds an isomorphism between two faithful actions, or `None`.
pub fn action_isomorphism(a1: &GroupAction, a2: &GroupAction) -> Option<ActionIsomorphism> {
    if !a1.is_faithful() || !a2.is_faithful() {
        return None;
    }
    if a1.invariants() != a2.invariants() {
        return None;
    }
    let p1 = a1.image_group();
    let p2 = a2.image_group();
    let pi = conjugating_bijection(&p1, &p2)?;
    // phi(g) is the element of G2 whose image is pi * img(g) * pi^-1.
    let lookup: HashMap<&Permutation, usize> =
        (0..a2.group().order()).map(|e| (a2.image_of(e), e)).collect();
    let element_map = (0..a1.group().order())
        .map(|e| lookup.get(&pi.conjugate(a1.image_of(e))).copied())
        .collect::<Option<Vec<_>>>()?;
    let iso = ActionIsomorphism { element_map, point_map: pi.images().to_vec() };
    debug_assert!(iso.verify(a1, a2));
    Some(iso)
}

/// A bijection `pi` with `pi * g1 * pi^-1 = g2` as permutation groups.
pub fn conjugating_bijection(g1: &PermGroup, g2: &PermGroup) -> Option<Permutation> {
    let n = g1.degree();
    if n != g2.degree() || g1.order() != g2.order() {
        return None;
    }
    if g1.is_trivial() {
        return Some(Permutation::identity(n));
    }
    let gens: Vec<Permutation> = g1.small_generating_set();
    let types: Vec<Vec<usize>> = gens.iter().map(|g| g.cycle_type()).collect();
    let by_type = |t: &Vec<usize>| -> Vec<&Permutation> {
        g2.elements().iter().filter(|e| e.cycle_type() == *t).collect()
    };
    // h_1 only up to conjugacy in g2.
    let mut first: Vec<&Permutation> = Vec::new();
    let mut covered: HashSet<Permutation> = HashSet::new();
    for h in by_type(&types[0]) {
        if covered.contains(h) {
            continue;
        }
        for x in g2.elements() {
            covered.insert(x.conjugate(h));
        }
        first.push(h);
    }
    let rest: Vec<Vec<&Permutation>> = types[1..].iter().map(by_type).collect();
    let mut targets: Vec<&Permutation> = Vec::with_capacity(gens.len());
    for h1 in first {
        targets.clear();
        targets.push(h1);
        if let Some(pi) = search_targets(&gens, &rest, &mut targets, n) {
            return Some(pi);
        }
    }
    None
}

fn search_targets<'a>(
    gens: &[Permutation],
    rest: &[Vec<&'a Permutation>],
    targets: &mut Vec<&'a Permutation>,
    n: usize,
) -> Option<Permutation> {
    let depth = targets.len() - 1;
    if depth == rest.len() {
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        return solve_conjugacy(gens, targets, &mut map, &mut used);
    }
    for &h in &rest[depth] {
        targets.push(h);
        if let Some(pi) = search_targets(gens, rest, targets, n) {
            return Some(pi);
        }
        targets.pop();
    }
    None
}

/// Backtracking over orbit anchors: the least unassigned point is sent to
/// each free target in increasing order; images then propagate along the
/// generator edges.
fn solve_conjugacy(
    gens: &[Permutation],
    targets: &[&Permutation],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Permutation> {
    let n = map.len();
    let Some(x) = (0..n).find(|&p| map[p] == usize::MAX) else {
        return Permutation::from_images(map.clone()).ok();
    };
    for y in 0..n {
        if used[y] {
            continue;
        }
        let snapshot = map.clone();
        let used_snapshot = used.clone();
        if propagate(gens, targets, map, used, x, y) {
            if let Some(pi) = solve_conjugacy(gens, targets, map, used) {
                return Some(pi);
            }
        }
        *map = snapshot;
        *used = used_snapshot;
    }
    None
}

fn propagate(
    gens: &[Permutation],
    targets: &[&Permutation],
    map: &mut [usize],
    used: &mut [bool],
    x: usize,
    y: usize,
) -> bool {
    map[x] = y;
    used[y] = true;
    let mut stack = vec![x];
    while let Some(a) = stack.pop() {
        let b = map[a];
        for (g, h) in gens.iter().zip(targets) {
            let ga = g.apply(a);
            let hb = h.apply(b);
            if map[ga] == usize::MAX {
                if used[hb] {
                    return false;
                }
                map[ga] = hb;
                used[hb] = true;
                stack.push(ga);
            } else if map[ga] != hb {
                return false;
            }
        }
    }
    true
}
