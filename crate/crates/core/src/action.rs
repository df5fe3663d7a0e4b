//! Group actions on finite labeled point sets, with orbits, stabilizers,
//! kernels and the stable-family construction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Opaque, totally ordered point label. Indices inside labels are 0-based;
/// `Display` renders them 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Point {
    Index(usize),
    Pair(usize, usize),
    Tuple(Vec<usize>),
    Subset(Vec<usize>),
    Blocks(Vec<Vec<usize>>),
    Element(usize),
    Members(Vec<usize>),
}

fn join1(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Index(i) => write!(f, "{}", i + 1),
            Point::Pair(i, j) => write!(f, "({},{})", i + 1, j + 1),
            Point::Tuple(v) => write!(f, "({})", join1(v)),
            Point::Subset(v) => write!(f, "{{{}}}", join1(v)),
            Point::Blocks(bs) => {
                let parts: Vec<String> = bs.iter().map(|b| format!("{{{}}}", join1(b))).collect();
                write!(f, "({})", parts.join(","))
            }
            Point::Element(i) => write!(f, "g{}", i + 1),
            Point::Members(v) => write!(f, "[{}]", join1(v)),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A group acting on a sorted list of labeled points. The action is stored
/// as one permutation of point indices per group element.
#[derive(Clone)]
pub struct GroupAction {
    group: Arc<PermGroup>,
    points: Vec<Point>,
    table: Vec<Permutation>,
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAction(order {}, {} points)", self.group.order(), self.points.len())
    }
}

impl GroupAction {
    /// Builds the action from a labelwise rule. Labels are sorted; the
    /// action axioms are checked on generators against every element.
    pub fn new<F>(group: Arc<PermGroup>, mut points: Vec<Point>, act: F) -> Result<Self>
    where
        F: Fn(&Permutation, &Point) -> Point,
    {
        points.sort();
        points.dedup();
        let index: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut images = Vec::with_capacity(points.len());
            for p in &points {
                let q = act(g, p);
                let qi = *index
                    .get(&q)
                    .ok_or_else(|| Error::Internal(format!("image {q} of {p} is outside the point set")))?;
                images.push(qi);
            }
            table.push(
                Permutation::from_images(images)
                    .map_err(|_| Error::Internal("action map is not a bijection".into()))?,
            );
        }
        Self::from_table(group, points, table)
    }

    pub(crate) fn from_table(group: Arc<PermGroup>, points: Vec<Point>, table: Vec<Permutation>) -> Result<Self> {
        let a = GroupAction { group, points, table };
        a.check_axioms()?;
        Ok(a)
    }

    fn check_axioms(&self) -> Result<()> {
        if !self.table[self.group.identity_index()].is_identity() {
            return Err(Error::Internal("identity does not act trivially".into()));
        }
        for g in self.group.generators() {
            let gi = self.group.index_of(g).expect("generator in group");
            for (ti, t) in self.group.elements().iter().enumerate() {
                let gt = self.group.index_of(&g.compose(t)).expect("closed");
                if self.table[gt] != self.table[gi].compose(&self.table[ti]) {
                    return Err(Error::Internal("action is not a homomorphism".into()));
                }
            }
        }
        Ok(())
    }

    /// `(G, [m])` for a permutation group on `m` points.
    pub fn natural(group: Arc<PermGroup>) -> Self {
        let points = (0..group.degree()).map(Point::Index).collect();
        let table = group.elements().to_vec();
        GroupAction { group, points, table }
    }

    /// Action on `k`-subsets of `[m]`.
    pub fn on_subsets(group: Arc<PermGroup>, k: usize) -> Self {
        let points = k_subsets(group.degree(), k).into_iter().map(Point::Subset).collect();
        Self::new(group, points, |g, p| match p {
            Point::Subset(s) => {
                let mut t: Vec<usize> = s.iter().map(|&x| g.apply(x)).collect();
                t.sort_unstable();
                Point::Subset(t)
            }
            _ => unreachable!(),
        })
        .expect("subset action is an action")
    }

    /// Coordinatewise action on `[m]_k`.
    pub fn on_tuples(group: Arc<PermGroup>, k: usize) -> Self {
        let points = k_tuples(group.degree(), k).into_iter().map(Point::Tuple).collect();
        Self::new(group, points, |g, p| match p {
            Point::Tuple(v) => Point::Tuple(v.iter().map(|&x| g.apply(x)).collect()),
            _ => unreachable!(),
        })
        .expect("tuple action is an action")
    }

    /// Left multiplication of the group on itself.
    pub fn regular(group: Arc<PermGroup>) -> Self {
        let n = group.order();
        let points = (0..n).map(Point::Element).collect();
        let table = group
            .elements()
            .iter()
            .map(|g| {
                let images = group
                    .elements()
                    .iter()
                    .map(|h| group.index_of(&g.compose(h)).expect("closed"))
                    .collect();
                Permutation::from_images(images).expect("left multiplication is a bijection")
            })
            .collect();
        GroupAction { group, points, table }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn point_index(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Permutation of point indices induced by element `elem`.
    pub fn image_of(&self, elem: usize) -> &Permutation {
        &self.table[elem]
    }

    #[inline]
    pub fn act(&self, elem: usize, point: usize) -> usize {
        self.table[elem].apply(point)
    }

    pub fn act_on_set(&self, elem: usize, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.act(elem, x)).collect();
        out.sort_unstable();
        out
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.num_points()];
        seen[point] = true;
        let mut out = vec![point];
        let gens: Vec<usize> =
            self.group.generators().iter().map(|g| self.group.index_of(g).unwrap()).collect();
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for &g in &gens {
                let y = self.act(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Partition of the points into orbits, sorted by least label.
    pub fn orbit_partition(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.num_points()];
        let mut out = Vec::new();
        for p in 0..self.num_points() {
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
        self.num_points() <= 1 || self.orbit(0).len() == self.num_points()
    }

    /// `Stab_G(A) = {g : g(A) = A}`.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> PermGroup {
        let mut target = set.to_vec();
        target.sort_unstable();
        target.dedup();
        let keep: Vec<bool> =
            (0..self.group.order()).map(|e| self.act_on_set(e, &target) == target).collect();
        self.subgroup_by_index(&keep)
    }

    /// `Fix_G(A) = {g : g(a) = a for all a in A}`.
    pub fn pointwise_fixer(&self, set: &[usize]) -> PermGroup {
        let keep: Vec<bool> = (0..self.group.order())
            .map(|e| set.iter().all(|&x| self.act(e, x) == x))
            .collect();
        self.subgroup_by_index(&keep)
    }

    fn subgroup_by_index(&self, keep: &[bool]) -> PermGroup {
        let elements = self
            .group
            .elements()
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(e, _)| e.clone())
            .collect();
        PermGroup::from_closed_elements(self.group.degree(), elements, Vec::new())
    }

    /// Kernel of the action homomorphism and whether it is trivial.
    pub fn kernel_and_faithfulness(&self) -> (PermGroup, bool) {
        let all: Vec<usize> = (0..self.num_points()).collect();
        let ker = self.pointwise_fixer(&all);
        let faithful = ker.is_trivial();
        (ker, faithful)
    }

    pub fn is_faithful(&self) -> bool {
        self.table.iter().filter(|t| t.is_identity()).count() == 1
    }

    /// The permutation representation as a group on point indices.
    pub fn image_group(&self) -> PermGroup {
        let gens = self
            .group
            .generators()
            .iter()
            .map(|g| self.table[self.group.index_of(g).unwrap()].clone())
            .collect();
        PermGroup::from_closed_elements(self.num_points(), self.table.clone(), gens)
    }

    /// The image group acting on the same labels; always faithful.
    pub fn faithful_image(&self) -> GroupAction {
        let points = self.points.clone();
        GroupAction::natural(Arc::new(self.image_group())).relabel(|i| points[i].clone())
    }

    pub fn point_stabilizer_order(&self, point: usize) -> usize {
        (0..self.group.order()).filter(|&e| self.act(e, point) == point).count()
    }

    /// The same group acting on a stable subset of points.
    pub fn restrict(&self, subset: &[usize]) -> Result<GroupAction> {
        let mut sub = subset.to_vec();
        sub.sort_unstable();
        let pos: HashMap<usize, usize> = sub.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut table = Vec::with_capacity(self.table.len());
        for t in &self.table {
            let mut images = Vec::with_capacity(sub.len());
            for &p in &sub {
                let q = t.apply(p);
                images.push(*pos.get(&q).ok_or(Error::Internal("subset is not stable".into()))?);
            }
            table.push(Permutation::from_images(images).unwrap());
        }
        let points = sub.iter().map(|&p| self.points[p].clone()).collect();
        Ok(GroupAction { group: self.group.clone(), points, table })
    }

    /// Same action with point `i` renamed to `label(i)`; labels must be distinct.
    pub fn relabel<F: Fn(usize) -> Point>(self, label: F) -> GroupAction {
        let mut labeled: Vec<(Point, usize)> = (0..self.points.len()).map(|i| (label(i), i)).collect();
        labeled.sort();
        let mut rank = vec![0; labeled.len()];
        for (r, (_, i)) in labeled.iter().enumerate() {
            rank[*i] = r;
        }
        let table = self
            .table
            .iter()
            .map(|t| {
                let images = labeled.iter().map(|(_, i)| rank[t.apply(*i)]).collect();
                Permutation::from_images(images).expect("relabeling keeps bijections")
            })
            .collect();
        let points: Vec<Point> = labeled.into_iter().map(|(p, _)| p).collect();
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]), "labels must be distinct");
        GroupAction { group: self.group, points, table }
    }

    /// The action of a subgroup on the same points.
    pub fn restrict_group(&self, sub: Arc<PermGroup>) -> Result<GroupAction> {
        let mut table = Vec::with_capacity(sub.order());
        for e in sub.elements() {
            let idx = self
                .group
                .index_of(e)
                .ok_or_else(|| Error::Internal("not a subgroup".into()))?;
            table.push(self.table[idx].clone());
        }
        Ok(GroupAction { group: sub, points: self.points.clone(), table })
    }

    /// Induced action on a stable family of point subsets.
    pub fn on_family(&self, family: &SetFamily) -> Result<GroupAction> {
        let pos: HashMap<&Vec<usize>, usize> =
            family.members().iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut labeled: Vec<(Point, usize)> =
            family.members().iter().enumerate().map(|(i, m)| (Point::Members(m.clone()), i)).collect();
        labeled.sort();
        let order: Vec<usize> = labeled.iter().map(|(_, i)| *i).collect();
        let mut rank = vec![0; order.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let mut table = Vec::with_capacity(self.table.len());
        for e in 0..self.group.order() {
            let mut images = Vec::with_capacity(order.len());
            for &i in &order {
                let img = self.act_on_set(e, &family.members()[i]);
                let j = *pos.get(&img).ok_or(Error::Internal("family is not stable".into()))?;
                images.push(rank[j]);
            }
            table.push(Permutation::from_images(images).unwrap());
        }
        let points = labeled.into_iter().map(|(p, _)| p).collect();
        Ok(GroupAction { group: self.group.clone(), points, table })
    }

    /// Invariants compared before any isomorphism search.
    pub fn invariants(&self) -> ActionInvariants {
        let mut orbit_sizes: Vec<usize> = self.orbit_partition().iter().map(|o| o.len()).collect();
        orbit_sizes.sort_unstable();
        let mut cycle_types = BTreeMap::new();
        for t in &self.table {
            *cycle_types.entry(t.cycle_type()).or_insert(0usize) += 1;
        }
        let mut stabilizer_orders: Vec<usize> =
            (0..self.num_points()).map(|p| self.point_stabilizer_order(p)).collect();
        stabilizer_orders.sort_unstable();
        ActionInvariants {
            order: self.group.order(),
            points: self.num_points(),
            orbit_sizes,
            cycle_types,
            stabilizer_orders,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionInvariants {
    pub order: usize,
    pub points: usize,
    pub orbit_sizes: Vec<usize>,
    pub cycle_types: BTreeMap<Vec<usize>, usize>,
    pub stabilizer_orders: Vec<usize>,
}

/// A deduplicated list of subsets of some action's point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    members: Vec<Vec<usize>>,
}

impl SetFamily {
    /// Sorts each member; drops repeated members, keeping first occurrences.
    pub fn new(members: Vec<Vec<usize>>) -> Self {
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(members.len());
        for mut m in members {
            m.sort_unstable();
            m.dedup();
            if !out.contains(&m) {
                out.push(m);
            }
        }
        SetFamily { members: out }
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, member: &[usize]) -> Option<usize> {
        self.members.iter().position(|m| m == member)
    }
}

/// Result of [`stable_family_action`]: the family, the action of `G` on it,
/// and `iota`, mapping each point of `Delta` to its member (as an index into
/// the family's point list in `action`).
#[derive(Debug, Clone)]
pub struct StableFamily {
    pub family: SetFamily,
    pub action: GroupAction,
    pub iota: Vec<usize>,
}

/// Given actions `(G, Omega)` and `(G, Delta)` and sets `Lambda_delta`,
/// checks injectivity and `g(Lambda_delta) ⊆ Lambda_{g(delta)}` for every
/// `g, delta`, confirms equality, and returns the action on the family.
pub fn stable_family_action(
    omega: &GroupAction,
    delta: &GroupAction,
    members_by_delta: &[Vec<usize>],
) -> Result<StableFamily> {
    if omega.group().elements() != delta.group().elements() {
        return Err(Error::MismatchedAction("actions must share one group".into()));
    }
    if members_by_delta.len() != delta.num_points() {
        return Err(Error::DomainMismatch { expected: delta.num_points(), got: members_by_delta.len() });
    }
    let sorted: Vec<Vec<usize>> = members_by_delta
        .iter()
        .map(|m| {
            let mut m = m.clone();
            m.sort_unstable();
            m.dedup();
            m
        })
        .collect();
    let mut first: HashMap<&Vec<usize>, usize> = HashMap::new();
    for (d, m) in sorted.iter().enumerate() {
        if let Some(&e) = first.get(m) {
            return Err(Error::NotInjective(e, d));
        }
        first.insert(m, d);
    }
    for e in 0..omega.group().order() {
        for (d, m) in sorted.iter().enumerate() {
            let img = omega.act_on_set(e, m);
            let target = &sorted[delta.act(e, d)];
            let contained = img.iter().all(|x| target.binary_search(x).is_ok());
            if !contained {
                return Err(Error::NotEquivariant { delta: d });
            }
            if img != *target {
                return Err(Error::Internal("reverse inclusion failed".into()));
            }
        }
    }
    let family = SetFamily::new(sorted.clone());
    let action = omega.on_family(&family)?;
    let iota = sorted
        .iter()
        .map(|m| action.point_index(&Point::Members(m.clone())).expect("member present"))
        .collect();
    Ok(StableFamily { family, action, iota })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomogeneityMode {
    Subsets,
    Tuples,
}

/// Whether `g ≤ S_m` is transitive on `k`-subsets or on `k`-tuples of distinct points.
pub fn homogeneity_test(g: &Arc<PermGroup>, k: usize, mode: HomogeneityMode) -> Result<bool> {
    let m = g.degree();
    if k == 0 || k > m {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= m, got k={k}, m={m}")));
    }
    let action = match mode {
        HomogeneityMode::Subsets => GroupAction::on_subsets(g.clone(), k),
        HomogeneityMode::Tuples => GroupAction::on_tuples(g.clone(), k),
    };
    Ok(action.is_transitive())
}

pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            if m - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

pub fn k_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..m {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(m, k, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(m, k, &mut vec![false; m], &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn grp(n: usize, gens: &[&str]) -> Arc<PermGroup> {
        let gens = gens.iter().map(|s| Permutation::parse(n, s).unwrap()).collect();
        Arc::new(PermGroup::generate(n, gens, DEFAULT_CAP).unwrap())
    }

    #[test]
    fn orbit_examples() {
        let c3 = GroupAction::natural(grp(3, &["(1 2 3)"]));
        assert_eq!(c3.orbit_partition(), vec![vec![0, 1, 2]]);
        let triv = GroupAction::natural(grp(3, &[]));
        assert_eq!(triv.orbit_partition(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = Arc::new(PermGroup::symmetric(3));
        let pairs = GroupAction::on_subsets(s3.clone(), 2);
        let p12 = pairs.point_index(&Point::Subset(vec![0, 1])).unwrap();
        // Stab of the point {1,2} in the 2-subset action.
        assert_eq!(pairs.point_stabilizer_order(p12), 2);
        let nat = GroupAction::natural(s3.clone());
        assert_eq!(nat.setwise_stabilizer(&[0, 1]).order(), 2);
        assert_eq!(nat.setwise_stabilizer(&[0, 1, 2]).order(), 6);
        assert!(nat.pointwise_fixer(&[0, 1]).is_trivial());
        assert_eq!(nat.pointwise_fixer(&[]).order(), 6);
        let s4 = Arc::new(PermGroup::symmetric(4));
        let pairs4 = GroupAction::on_subsets(s4.clone(), 2);
        let q = pairs4.point_index(&Point::Subset(vec![0, 1])).unwrap();
        assert_eq!(pairs4.point_stabilizer_order(q), 4);
        assert_eq!(GroupAction::natural(s4).pointwise_fixer(&[0]).order(), 6);
    }

    #[test]
    fn regular_action_is_faithful() {
        let g = grp(4, &["(1 2 3 4)"]);
        let (ker, faithful) = GroupAction::regular(g).kernel_and_faithfulness();
        assert!(faithful);
        assert!(ker.is_trivial());
    }

    #[test]
    fn homogeneity_examples() {
        let a4 = Arc::new(PermGroup::alternating(4));
        assert!(homogeneity_test(&a4, 2, HomogeneityMode::Tuples).unwrap());
        let s4 = Arc::new(PermGroup::symmetric(4));
        assert!(homogeneity_test(&s4, 4, HomogeneityMode::Tuples).unwrap());
        assert!(homogeneity_test(&s4, 4, HomogeneityMode::Subsets).unwrap());
        let c4 = grp(4, &["(1 2 3 4)"]);
        assert!(!homogeneity_test(&c4, 2, HomogeneityMode::Subsets).unwrap());
        assert!(homogeneity_test(&c4, 0, HomogeneityMode::Subsets).is_err());
    }

    #[test]
    fn stable_family_degree_four() {
        // Lambda_i = 2-subsets containing i, for S4.
        let s4 = Arc::new(PermGroup::symmetric(4));
        let omega = GroupAction::on_subsets(s4.clone(), 2);
        let delta = GroupAction::natural(s4.clone());
        let members: Vec<Vec<usize>> = (0..4)
            .map(|i| {
                (0..omega.num_points())
                    .filter(|&p| matches!(&omega.points()[p], Point::Subset(s) if s.contains(&i)))
                    .collect()
            })
            .collect();
        let sf = stable_family_action(&omega, &delta, &members).unwrap();
        assert_eq!(sf.family.len(), 4);
        assert!(sf.action.is_faithful());
        for e in 0..s4.order() {
            for d in 0..4 {
                assert_eq!(sf.action.act(e, sf.iota[d]), sf.iota[delta.act(e, d)]);
            }
        }
    }

    #[test]
    fn stable_family_errors() {
        let s3 = Arc::new(PermGroup::symmetric(3));
        let omega = GroupAction::natural(s3.clone());
        let delta = GroupAction::natural(s3.clone());
        let err = stable_family_action(&omega, &delta, &[vec![0], vec![0], vec![2]]).unwrap_err();
        assert_eq!(err, Error::NotInjective(0, 1));
        let err = stable_family_action(&omega, &delta, &[vec![0], vec![2], vec![1]]).unwrap_err();
        assert!(matches!(err, Error::NotEquivariant { .. }));
        // One-member family {Omega} with the trivial one-point action.
        let one = GroupAction::new(s3.clone(), vec![Point::Index(0)], |_, p| p.clone()).unwrap();
        let sf = stable_family_action(&omega, &one, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(sf.action.num_points(), 1);
    }
}
