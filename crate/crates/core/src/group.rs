//! Finitely generated permutation groups held as fully enumerated element lists.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on the enumerated group order.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens {:?})", self.degree, self.order(), self.generators)
    }
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_closed_elements(degree, vec![Permutation::identity(degree)], Vec::new())
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        if degree >= 3 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).unwrap());
        }
        Self::generate(degree, gens, DEFAULT_CAP).expect("symmetric group within cap")
    }

    pub fn alternating(degree: usize) -> Self {
        let gens = (2..degree)
            .map(|k| Permutation::from_cycles(degree, &[&[0, 1, k]]).unwrap())
            .collect();
        Self::generate(degree, gens, DEFAULT_CAP).expect("alternating group within cap")
    }

    /// Closure of `generators`; an empty list gives the trivial group.
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DomainMismatch { expected: degree, got: g.degree() });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::ClosureExceedsCap { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Permutation> = seen.into_iter().collect();
        Ok(Self::from_closed_elements(degree, elements, generators))
    }

    /// Wraps an element list that is already known to be a group.
    pub fn from_closed_elements(
        degree: usize,
        mut elements: Vec<Permutation>,
        generators: Vec<Permutation>,
    ) -> Self {
        elements.sort();
        elements.dedup();
        let lookup = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut g = PermGroup { degree, generators, elements, lookup };
        if g.generators.is_empty() && g.order() > 1 {
            g.generators = g.small_generating_set();
        }
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Sorted, deduplicated elements; index 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Permutation {
        &self.elements[idx]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.lookup.contains_key(p)
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    /// Greedy generating set in element order.
    pub fn small_generating_set(&self) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current: HashSet<Permutation> = HashSet::from([Permutation::identity(self.degree)]);
        for e in &self.elements {
            if current.contains(e) {
                continue;
            }
            gens.push(e.clone());
            current = closure_set(self.degree, &gens);
            if current.len() == self.order() {
                break;
            }
        }
        gens
    }

    /// Subgroup of elements satisfying `keep`. The predicate must cut out a subgroup.
    pub fn filter_subgroup<F: Fn(&Permutation) -> bool>(&self, keep: F) -> PermGroup {
        let elements = self.elements.iter().filter(|e| keep(e)).cloned().collect();
        PermGroup::from_closed_elements(self.degree, elements, Vec::new())
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Orbits on `0..degree`, sorted by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = self.orbit(p);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        self.filter_subgroup(|e| e.apply(point) == point)
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        self.filter_subgroup(|e| other.contains(e))
    }

    pub fn is_normal_subgroup(&self, sub: &PermGroup) -> bool {
        sub.is_subgroup_of(self)
            && self.generators.iter().all(|g| sub.generators.iter().all(|h| sub.contains(&g.conjugate(h))))
    }

    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        let elements = self.elements.iter().map(|e| g.conjugate(e)).collect();
        let gens = self.generators.iter().map(|e| g.conjugate(e)).collect();
        PermGroup::from_closed_elements(self.degree, elements, gens)
    }

    /// Normal core of `sub` in `self`: intersection of all conjugates.
    pub fn core(&self, sub: &PermGroup) -> PermGroup {
        sub.filter_subgroup(|h| {
            self.elements.iter().all(|g| sub.contains(&g.inverse().conjugate(h)))
        })
    }

    /// Multiset of cycle types, as a sorted map.
    pub fn cycle_type_counts(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut m = BTreeMap::new();
        for e in &self.elements {
            *m.entry(e.cycle_type()).or_insert(0) += 1;
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Every subgroup of the group, sorted by order then element list.
    pub fn all_subgroups(&self, max_count: usize) -> Result<Vec<PermGroup>> {
        let table = IndexedGroup::new(self);
        let subs = table.subgroup_lattice(max_count)?;
        Ok(subs
            .into_iter()
            .map(|s| {
                let elements = s.iter().map(|&i| self.elements[i].clone()).collect();
                PermGroup::from_closed_elements(self.degree, elements, Vec::new())
            })
            .collect())
    }

    /// One representative per conjugacy class of subgroups, sorted by order.
    pub fn subgroup_classes(&self, max_count: usize) -> Result<Vec<PermGroup>> {
        let all = self.all_subgroups(max_count)?;
        let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
        let mut reps = Vec::new();
        for h in all {
            if seen.contains(h.elements()) {
                continue;
            }
            for g in &self.elements {
                seen.insert(h.conjugate_by(g).elements().to_vec());
            }
            reps.push(h);
        }
        Ok(reps)
    }
}

fn closure_set(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// A group with elements numbered `0..n` and a full multiplication table.
pub(crate) struct IndexedGroup {
    n: usize,
    mul: Vec<u32>,
}

impl IndexedGroup {
    pub(crate) fn new(g: &PermGroup) -> Self {
        let n = g.order();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = g.element(i).compose(g.element(j));
                mul[i * n + j] = g.index_of(&p).expect("closed") as u32;
            }
        }
        IndexedGroup { n, mul }
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    fn closure(&self, start: &[u64], gens: &[usize]) -> Vec<u64> {
        let mut set = start.to_vec();
        let mut queue: Vec<usize> = bits(&set).collect();
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                if set[y / 64] & (1 << (y % 64)) == 0 {
                    set[y / 64] |= 1 << (y % 64);
                    queue.push(y);
                }
            }
        }
        set
    }

    fn subgroup_lattice(&self, max_count: usize) -> Result<Vec<Vec<usize>>> {
        let words = self.n.div_ceil(64);
        let mut trivial = vec![0u64; words];
        trivial[0] = 1;
        let mut cyclic: Vec<(Vec<u64>, usize)> = Vec::new();
        let mut cyclic_seen: HashSet<Vec<u64>> = HashSet::new();
        for e in 1..self.n {
            let c = self.closure(&trivial, &[e]);
            if cyclic_seen.insert(c.clone()) {
                cyclic.push((c, e));
            }
        }
        let mut known: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        known.insert(trivial.clone(), Vec::new());
        let mut queue: VecDeque<Vec<u64>> = VecDeque::from([trivial]);
        while let Some(k) = queue.pop_front() {
            let gens = known[&k].clone();
            for (c, e) in &cyclic {
                if c.iter().zip(&k).all(|(a, b)| a & !b == 0) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(*e);
                let j = self.closure(&k, &g2);
                if !known.contains_key(&j) {
                    if known.len() >= max_count {
                        return Err(Error::SubgroupLatticeTooLarge(known.len()));
                    }
                    known.insert(j.clone(), g2);
                    queue.push_back(j);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = known.keys().map(|s| bits(s).collect()).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(out)
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(PermGroup::generate(3, vec![p(3, "(1 2 3)")], DEFAULT_CAP).unwrap().order(), 3);
        let s3 = PermGroup::generate(3, vec![p(3, "(1 2)"), p(3, "(1 2 3)")], DEFAULT_CAP).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(PermGroup::generate(3, vec![], DEFAULT_CAP).unwrap().order(), 1);
        assert!(s3.element(0).is_identity());
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = PermGroup::generate(5, PermGroup::symmetric(5).generators().to_vec(), 50).unwrap_err();
        assert_eq!(err, Error::ClosureExceedsCap { cap: 50 });
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(PermGroup::symmetric(5).order(), 120);
        assert_eq!(PermGroup::alternating(5).order(), 60);
        assert_eq!(PermGroup::symmetric(1).order(), 1);
    }

    #[test]
    fn subgroup_counts() {
        // S3 has 6 subgroups in 4 classes, S4 has 30 subgroups in 11 classes.
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.all_subgroups(1000).unwrap().len(), 6);
        assert_eq!(s3.subgroup_classes(1000).unwrap().len(), 4);
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.all_subgroups(1000).unwrap().len(), 30);
        assert_eq!(s4.subgroup_classes(1000).unwrap().len(), 11);
    }

    #[test]
    fn core_of_point_stabilizer_in_s3_is_trivial() {
        let s3 = PermGroup::symmetric(3);
        let h = s3.point_stabilizer(0);
        assert_eq!(h.order(), 2);
        assert!(s3.core(&h).is_trivial());
        let a3 = PermGroup::alternating(3);
        assert_eq!(s3.core(&a3).order(), 3);
        assert!(s3.is_normal_subgroup(&a3));
    }
}
