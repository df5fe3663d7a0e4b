//! Minimal faithful permutation degree.
//!
//! `mu(G)` is the least `sum [G : H_i]` over subgroup collections whose
//! normal cores intersect trivially. Conjugate subgroups have equal cores
//! and indices, so one representative per class suffices and no class is
//! used twice.

use std::sync::Arc;

use crate::action::{GroupAction, Point};
use crate::error::{Error, Result};
use crate::group::PermGroup;

/// Upper bound on the number of subgroups enumerated.
pub const MAX_SUBGROUPS: usize = 20_000;

/// `mu(G)` together with the chosen subgroups.
#[derive(Debug, Clone)]
pub struct MinimalDegree {
    pub degree: usize,
    pub subgroups: Vec<PermGroup>,
    /// `G` acting on the disjoint union of coset spaces, points `0..degree`.
    pub action: GroupAction,
}

type Bits = Vec<u64>;

fn bits_of(g: &PermGroup, h: &PermGroup) -> Bits {
    let mut b = vec![0u64; g.order().div_ceil(64)];
    for e in h.elements() {
        let i = g.index_of(e).expect("subgroup element");
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn popcount(a: &Bits) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

struct Search<'a> {
    index: &'a [usize],
    cores: &'a [Bits],
    best: Option<(usize, usize, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, start: usize, inter: &Bits, sum: usize, chosen: &mut Vec<usize>) {
        if popcount(inter) == 1 {
            let cand = (sum, chosen.len(), chosen.clone());
            if self.best.as_ref().map_or(true, |b| cand < *b) {
                self.best = Some(cand);
            }
            return;
        }
        for c in start..self.index.len() {
            let s = sum + self.index[c];
            if let Some((b, _, _)) = &self.best {
                // Classes are sorted by index, so later ones cannot do better.
                if s > *b {
                    break;
                }
            }
            let next = and(inter, &self.cores[c]);
            if next == *inter {
                continue;
            }
            chosen.push(c);
            self.run(c + 1, &next, s, chosen);
            chosen.pop();
        }
    }
}

/// Exact `mu(G)` by branch and bound over subgroup classes. Ties are broken
/// by fewest subgroups, then by the lexicographically least class list.
pub fn minimal_faithful_degree(g: &Arc<PermGroup>) -> Result<MinimalDegree> {
    if g.is_trivial() {
        let action = GroupAction::new(g.clone(), vec![Point::Index(0)], |_, p| p.clone())?;
        return Ok(MinimalDegree { degree: 1, subgroups: vec![], action });
    }
    let mut classes = g.subgroup_classes(MAX_SUBGROUPS)?;
    classes.retain(|h| h.order() < g.order());
    classes.sort_by_key(|h| g.order() / h.order());
    let index: Vec<usize> = classes.iter().map(|h| g.order() / h.order()).collect();
    let cores: Vec<Bits> = classes.iter().map(|h| bits_of(g, &g.core(h))).collect();
    let full = bits_of(g, g);
    let mut search = Search { index: &index, cores: &cores, best: None };
    search.run(0, &full, 0, &mut Vec::new());
    let (degree, _, chosen) = search.best.ok_or_else(|| Error::Internal("no faithful action".into()))?;
    let subgroups: Vec<PermGroup> = chosen.iter().map(|&c| classes[c].clone()).collect();
    let action = coset_action(g, &subgroups)?;
    if action.num_points() != degree || !action.is_faithful() {
        return Err(Error::Internal("coset action does not realize the degree".into()));
    }
    Ok(MinimalDegree { degree, subgroups, action })
}

/// `G` acting by left multiplication on `G/H_1 ⊔ .. ⊔ G/H_s`. Cosets are
/// numbered by their least element; points are `0..sum [G:H_i]`.
pub fn coset_action(g: &Arc<PermGroup>, subgroups: &[PermGroup]) -> Result<GroupAction> {
    let n = g.order();
    let mut coset_of: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for h in subgroups {
        let mut label = vec![usize::MAX; n];
        let mut r = Vec::new();
        for e in 0..n {
            if label[e] != usize::MAX {
                continue;
            }
            let c = r.len();
            r.push(e);
            for x in h.elements() {
                let y = g.index_of(&g.element(e).compose(x)).expect("closed");
                label[y] = c;
            }
        }
        coset_of.push(label);
        reps.push(r);
    }
    let mut offsets = vec![0];
    for r in &reps {
        offsets.push(offsets.last().unwrap() + r.len());
    }
    let total = *offsets.last().unwrap();
    let locate = |t: usize| {
        let i = offsets.partition_point(|&o| o <= t) - 1;
        (i, t - offsets[i])
    };
    let points = (0..total).map(Point::Index).collect();
    GroupAction::new(g.clone(), points, |perm, p| {
        let Point::Index(t) = p else { unreachable!() };
        let (i, c) = locate(*t);
        let y = g.index_of(&perm.compose(g.element(reps[i][c]))).expect("closed");
        Point::Index(offsets[i] + coset_of[i][y])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::perm::Permutation;

    fn grp(n: usize, gens: &[&str]) -> Arc<PermGroup> {
        let gens = gens.iter().map(|s| Permutation::parse(n, s).unwrap()).collect();
        Arc::new(PermGroup::generate(n, gens, DEFAULT_CAP).unwrap())
    }

    #[test]
    fn small_values() {
        assert_eq!(minimal_faithful_degree(&Arc::new(PermGroup::symmetric(3))).unwrap().degree, 3);
        assert_eq!(minimal_faithful_degree(&grp(4, &["(1 2)", "(3 4)"])).unwrap().degree, 4);
        assert_eq!(minimal_faithful_degree(&grp(6, &["(1 2 3 4 5 6)"])).unwrap().degree, 5);
        assert_eq!(minimal_faithful_degree(&grp(1, &[])).unwrap().degree, 1);
    }

    #[test]
    fn c6_action_has_two_orbits() {
        let md = minimal_faithful_degree(&grp(6, &["(1 2 3 4 5 6)"])).unwrap();
        let mut sizes: Vec<usize> = md.action.orbit_partition().iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
    }
}
