//! The wreath product `S_m wr S_r = S_m^r ⋊ S_r` and its top, primitive and
//! imprimitive actions.
//!
//! Subgroups are stored as permutation groups on `Omega^I = [r] x [m]`,
//! point `(i, j)` at index `i*m + j`. That action is faithful, so every
//! closure, orbit and subgroup computation happens there.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{k_subsets, stable_family_action, GroupAction, Point, StableFamily};
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_CAP};
use crate::iso::{action_isomorphism, ActionIsomorphism};
use crate::perm::Permutation;

/// `(tau, rho)` with `tau` in `S_m^r` and `rho` in `S_r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub tau: Vec<Permutation>,
    pub rho: Permutation,
}

impl WreathElement {
    pub fn new(tau: Vec<Permutation>, rho: Permutation) -> Result<Self> {
        let r = rho.degree();
        if tau.len() != r {
            return Err(Error::DomainMismatch { expected: r, got: tau.len() });
        }
        if let Some(first) = tau.first() {
            let m = first.degree();
            if let Some(bad) = tau.iter().find(|t| t.degree() != m) {
                return Err(Error::DomainMismatch { expected: m, got: bad.degree() });
            }
        }
        Ok(WreathElement { tau, rho })
    }

    pub fn identity(m: usize, r: usize) -> Self {
        WreathElement { tau: vec![Permutation::identity(m); r], rho: Permutation::identity(r) }
    }

    /// Base group element `(tau, id)`.
    pub fn base(tau: Vec<Permutation>) -> Self {
        let r = tau.len();
        WreathElement { tau, rho: Permutation::identity(r) }
    }

    /// Top group element `(id, rho)`.
    pub fn top(m: usize, rho: Permutation) -> Self {
        WreathElement { tau: vec![Permutation::identity(m); rho.degree()], rho }
    }

    pub fn m(&self) -> usize {
        self.tau.first().map_or(0, |t| t.degree())
    }

    pub fn r(&self) -> usize {
        self.rho.degree()
    }

    /// `(rho . tau)_i = tau_{rho^-1(i)}`.
    pub fn shift(rho: &Permutation, tau: &[Permutation]) -> Vec<Permutation> {
        let inv = rho.inverse();
        (0..tau.len()).map(|i| tau[inv.apply(i)].clone()).collect()
    }

    /// `(tau1, rho1)(tau2, rho2) = (tau1 (rho1 . tau2), rho1 rho2)`.
    pub fn multiply(&self, other: &WreathElement) -> WreathElement {
        let shifted = Self::shift(&self.rho, &other.tau);
        let tau = self.tau.iter().zip(&shifted).map(|(a, b)| a.compose(b)).collect();
        WreathElement { tau, rho: self.rho.compose(&other.rho) }
    }

    pub fn inverse(&self) -> WreathElement {
        // (tau, rho)^-1 = (rho^-1 . tau^-1, rho^-1)
        let rinv = self.rho.inverse();
        let tinv: Vec<Permutation> = self.tau.iter().map(|t| t.inverse()).collect();
        WreathElement { tau: Self::shift(&rinv, &tinv), rho: rinv }
    }

    pub fn is_identity(&self) -> bool {
        self.rho.is_identity() && self.tau.iter().all(|t| t.is_identity())
    }

    /// Image in `Sym(Omega^I)`: `(i, j) -> (rho(i), tau_{rho(i)}(j))`.
    pub fn to_imprimitive(&self) -> Permutation {
        let (m, r) = (self.m(), self.r());
        let mut images = vec![0; m * r];
        for i in 0..r {
            let t = self.rho.apply(i);
            for j in 0..m {
                images[i * m + j] = t * m + self.tau[t].apply(j);
            }
        }
        Permutation::from_images(images).expect("imprimitive image is a bijection")
    }

    /// Inverse of [`to_imprimitive`](Self::to_imprimitive); fails when `p`
    /// does not preserve the blocks `{i} x [m]`.
    pub fn from_imprimitive(m: usize, r: usize, p: &Permutation) -> Result<Self> {
        if p.degree() != m * r || m == 0 {
            return Err(Error::DomainMismatch { expected: m * r, got: p.degree() });
        }
        let mut rho = vec![0; r];
        let mut tau = vec![vec![0; m]; r];
        for i in 0..r {
            let t = p.apply(i * m) / m;
            rho[i] = t;
            for j in 0..m {
                let q = p.apply(i * m + j);
                if q / m != t {
                    return Err(Error::InvalidPermutation(format!("{p} does not preserve blocks")));
                }
                tau[t][j] = q % m;
            }
        }
        let rho = Permutation::from_images(rho)?;
        let tau = tau.into_iter().map(Permutation::from_images).collect::<Result<Vec<_>>>()?;
        Ok(WreathElement { tau, rho })
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let taus: Vec<String> = self.tau.iter().map(|t| t.to_image_string()).collect();
        write!(f, "({}; {})", self.rho.to_image_string(), taus.join(","))
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A point of one of the three wreath actions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WreathPoint {
    Top(usize),
    /// `(A_1, .., A_r)`, each a sorted `k`-subset of `[m]`.
    Primitive(Vec<Vec<usize>>),
    Imprimitive(usize, usize),
}

impl WreathPoint {
    /// Label used inside [`GroupAction`]. Primitive points with `k = 1` are
    /// tuples `(v_1, .., v_r)`.
    pub fn to_point(&self) -> Point {
        match self {
            WreathPoint::Top(i) => Point::Index(*i),
            WreathPoint::Primitive(blocks) if blocks.iter().all(|b| b.len() == 1) => {
                Point::Tuple(blocks.iter().map(|b| b[0]).collect())
            }
            WreathPoint::Primitive(blocks) => Point::Blocks(blocks.clone()),
            WreathPoint::Imprimitive(i, j) => Point::Pair(*i, *j),
        }
    }

    pub fn from_point(p: &Point) -> Option<WreathPoint> {
        match p {
            Point::Index(i) => Some(WreathPoint::Top(*i)),
            Point::Tuple(v) => Some(WreathPoint::Primitive(v.iter().map(|&x| vec![x]).collect())),
            Point::Blocks(b) => Some(WreathPoint::Primitive(b.clone())),
            Point::Pair(i, j) => Some(WreathPoint::Imprimitive(*i, *j)),
            _ => None,
        }
    }

    /// Image under `(tau, rho)`.
    pub fn act(&self, w: &WreathElement) -> WreathPoint {
        match self {
            WreathPoint::Top(i) => WreathPoint::Top(w.rho.apply(*i)),
            WreathPoint::Primitive(blocks) => {
                let inv = w.rho.inverse();
                let out = (0..blocks.len())
                    .map(|t| {
                        let mut a: Vec<usize> =
                            blocks[inv.apply(t)].iter().map(|&x| w.tau[t].apply(x)).collect();
                        a.sort_unstable();
                        a
                    })
                    .collect();
                WreathPoint::Primitive(out)
            }
            WreathPoint::Imprimitive(i, j) => {
                let t = w.rho.apply(*i);
                WreathPoint::Imprimitive(t, w.tau[t].apply(*j))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WreathActionKind {
    Top,
    Primitive(usize),
    Imprimitive,
}

/// A subgroup of `S_m wr S_r`, held through its imprimitive image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathGroup {
    m: usize,
    r: usize,
    group: Arc<PermGroup>,
}

/// Full `S_m wr S_r`, or the subgroup generated by `generators`.
pub fn wreath_group(m: usize, r: usize, generators: Option<&[WreathElement]>) -> Result<WreathGroup> {
    match generators {
        None => WreathGroup::full(m, r),
        Some(gens) => WreathGroup::generate(m, r, gens, DEFAULT_CAP),
    }
}

impl WreathGroup {
    pub fn full(m: usize, r: usize) -> Result<Self> {
        if m == 0 || r == 0 {
            return Err(Error::InvalidParameters("need m, r >= 1".into()));
        }
        let mut gens = Vec::new();
        for g in PermGroup::symmetric(m).generators() {
            let mut tau = vec![Permutation::identity(m); r];
            tau[0] = g.clone();
            gens.push(WreathElement::base(tau));
        }
        for g in PermGroup::symmetric(r).generators() {
            gens.push(WreathElement::top(m, g.clone()));
        }
        Self::generate(m, r, &gens, DEFAULT_CAP)
    }

    /// The base group `S_m^r`.
    pub fn base(m: usize, r: usize) -> Result<Self> {
        let mut gens = Vec::new();
        for i in 0..r {
            for g in PermGroup::symmetric(m).generators() {
                let mut tau = vec![Permutation::identity(m); r];
                tau[i] = g.clone();
                gens.push(WreathElement::base(tau));
            }
        }
        Self::generate(m, r, &gens, DEFAULT_CAP)
    }

    pub fn generate(m: usize, r: usize, gens: &[WreathElement], cap: usize) -> Result<Self> {
        for g in gens {
            if g.r() != r || (r > 0 && g.m() != m) {
                return Err(Error::DomainMismatch { expected: m * r, got: g.m() * g.r() });
            }
        }
        let perms = gens.iter().map(|g| g.to_imprimitive()).collect();
        let group = PermGroup::generate(m * r, perms, cap)?;
        Ok(WreathGroup { m, r, group: Arc::new(group) })
    }

    /// Wraps a block-preserving group on `Omega^I`.
    pub fn from_perm_group(m: usize, r: usize, group: PermGroup) -> Result<Self> {
        if group.degree() != m * r {
            return Err(Error::DomainMismatch { expected: m * r, got: group.degree() });
        }
        for g in group.generators() {
            WreathElement::from_imprimitive(m, r, g)?;
        }
        Ok(WreathGroup { m, r, group: Arc::new(group) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The imprimitive image, the canonical representation.
    pub fn perm_group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn element(&self, idx: usize) -> WreathElement {
        WreathElement::from_imprimitive(self.m, self.r, self.group.element(idx)).expect("block preserving")
    }

    pub fn elements(&self) -> Vec<WreathElement> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn generators(&self) -> Vec<WreathElement> {
        self.group
            .generators()
            .iter()
            .map(|g| WreathElement::from_imprimitive(self.m, self.r, g).expect("block preserving"))
            .collect()
    }

    /// All subgroups, wrapped. Only sensible for small groups.
    pub fn all_subgroups(&self, max_count: usize) -> Result<Vec<WreathGroup>> {
        self.group
            .all_subgroups(max_count)?
            .into_iter()
            .map(|h| WreathGroup::from_perm_group(self.m, self.r, h))
            .collect()
    }

    /// The induced subgroup of `S_N wr S_r`, `N = binom(m, k)`, where each
    /// `tau_t` acts on `k`-subsets (indexed in lexicographic order).
    pub fn on_k_subsets(&self, k: usize) -> Result<WreathGroup> {
        check_k(self.m, k)?;
        let subsets = k_subsets(self.m, k);
        let pos: HashMap<&Vec<usize>, usize> = subsets.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let lift = |t: &Permutation| {
            let images = subsets
                .iter()
                .map(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&x| t.apply(x)).collect();
                    img.sort_unstable();
                    pos[&img]
                })
                .collect();
            Permutation::from_images(images).expect("subset action is a bijection")
        };
        let gens: Vec<WreathElement> = self
            .generators()
            .into_iter()
            .map(|w| WreathElement { tau: w.tau.iter().map(lift).collect(), rho: w.rho })
            .collect();
        let n = subsets.len();
        let lifted = Self::generate(n, self.r, &gens, DEFAULT_CAP)?;
        if lifted.order() != self.order() {
            return Err(Error::Internal("subset lift is not faithful".into()));
        }
        Ok(lifted)
    }
}

fn check_k(m: usize, k: usize) -> Result<()> {
    if k == 0 || 2 * k > m.max(2) {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= m/2, got k={k}, m={m}")));
    }
    Ok(())
}

/// Points of `Omega^P(m, r, k)` in label order.
pub fn primitive_points(m: usize, r: usize, k: usize) -> Vec<WreathPoint> {
    let subsets = k_subsets(m, k);
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                subsets.iter().map(move |s| {
                    let mut w = v.clone();
                    w.push(s.clone());
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(WreathPoint::Primitive).collect()
}

/// The top, primitive (`k`-subsets) or imprimitive action of `g`.
pub fn wreath_action(g: &WreathGroup, kind: WreathActionKind) -> Result<GroupAction> {
    let (m, r) = (g.m, g.r);
    let points: Vec<WreathPoint> = match kind {
        WreathActionKind::Top => (0..r).map(WreathPoint::Top).collect(),
        WreathActionKind::Primitive(k) => {
            check_k(m, k)?;
            primitive_points(m, r, k)
        }
        WreathActionKind::Imprimitive => {
            return Ok(GroupAction::natural(g.group.clone()).relabel(|i| Point::Pair(i / m, i % m)));
        }
    };
    let labels = points.iter().map(|p| p.to_point()).collect();
    GroupAction::new(g.group.clone(), labels, |perm, p| {
        let w = WreathElement::from_imprimitive(m, r, perm).expect("block preserving");
        WreathPoint::from_point(p).expect("wreath label").act(&w).to_point()
    })
}

/// `(G, [r] x binom([m], k))` with `(i, A) -> (rho(i), tau_{rho(i)}(A))`,
/// labeled `Pair(i, a)` where `a` indexes `A` lexicographically.
pub fn imprimitive_on_subsets(g: &WreathGroup, k: usize) -> Result<GroupAction> {
    check_k(g.m, k)?;
    let (m, r) = (g.m, g.r);
    let subsets = k_subsets(m, k);
    let pos: HashMap<Vec<usize>, usize> = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let labels = (0..r).flat_map(|i| (0..subsets.len()).map(move |a| Point::Pair(i, a))).collect();
    GroupAction::new(g.group.clone(), labels, |perm, p| {
        let w = WreathElement::from_imprimitive(m, r, perm).expect("block preserving");
        let Point::Pair(i, a) = p else { unreachable!() };
        let t = w.rho.apply(*i);
        let mut img: Vec<usize> = subsets[*a].iter().map(|&x| w.tau[t].apply(x)).collect();
        img.sort_unstable();
        Point::Pair(t, pos[&img])
    })
}

/// Orbits of `g` on `Omega^T`, sorted by least label.
pub fn top_orbits(g: &WreathGroup) -> Vec<Vec<usize>> {
    let m = g.m;
    let mut seen = vec![false; g.r];
    let mut out = Vec::new();
    for i in 0..g.r {
        if seen[i] {
            continue;
        }
        let mut orbit: BTreeSet<usize> = BTreeSet::new();
        for p in g.group.orbit(i * m) {
            orbit.insert(p / m);
        }
        for &t in &orbit {
            seen[t] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// The `Omega^I` orbits of `g`, as lists of `(i, j)`, after checking that
/// each equals `(G.i) x [m]`. Requires the primitive action to be transitive.
pub fn imprimitive_orbits_from_primitive_transitivity(g: &WreathGroup) -> Result<Vec<Vec<(usize, usize)>>> {
    if !wreath_action(g, WreathActionKind::Primitive(1))?.is_transitive() {
        return Err(Error::PrimitiveNotTransitive);
    }
    let m = g.m;
    let tops = top_orbits(g);
    let mut out = Vec::new();
    for orbit in g.group.orbits() {
        let pairs: Vec<(usize, usize)> = orbit.iter().map(|&p| (p / m, p % m)).collect();
        let i = pairs[0].0;
        let top = tops.iter().find(|o| o.contains(&i)).expect("top orbit present");
        let expected: Vec<(usize, usize)> = top.iter().flat_map(|&t| (0..m).map(move |j| (t, j))).collect();
        if pairs != expected {
            return Err(Error::Internal(format!("orbit of ({},1) is not (G.{}) x [m]", i + 1, i + 1)));
        }
        out.push(pairs);
    }
    Ok(out)
}

/// `(G_l, (G.i_l) x [m])`, the canonical `Gamma_l <= S_m wr S_{r_l}` and a
/// verified isomorphism between that action and `(Gamma_l, Omega^I(m, r_l))`.
#[derive(Debug, Clone)]
pub struct InducedBlockGroup {
    pub action: GroupAction,
    pub gamma: WreathGroup,
    pub gamma_action: GroupAction,
    pub isomorphism: ActionIsomorphism,
}

/// Blocks of `top_orbit` are renumbered `0..r_l` in increasing order.
pub fn induced_block_group(g: &WreathGroup, top_orbit: &[usize]) -> Result<InducedBlockGroup> {
    if !wreath_action(g, WreathActionKind::Primitive(1))?.is_transitive() {
        return Err(Error::PrimitiveNotTransitive);
    }
    let m = g.m;
    let mut blocks = top_orbit.to_vec();
    blocks.sort_unstable();
    if !top_orbits(g).contains(&blocks) {
        return Err(Error::InvalidParameters("not a top orbit".into()));
    }
    let rl = blocks.len();
    let points: Vec<usize> = blocks.iter().flat_map(|&t| (0..m).map(move |j| t * m + j)).collect();
    let pos: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let restricted: Vec<Permutation> = g
        .group
        .elements()
        .iter()
        .map(|e| Permutation::from_images(points.iter().map(|&p| pos[&e.apply(p)]).collect()).unwrap())
        .collect();
    let gens: Vec<Permutation> = g
        .group
        .generators()
        .iter()
        .map(|e| Permutation::from_images(points.iter().map(|&p| pos[&e.apply(p)]).collect()).unwrap())
        .collect();
    let image = PermGroup::from_closed_elements(rl * m, restricted, gens);
    let gamma = WreathGroup::from_perm_group(m, rl, image.clone())?;
    let action = GroupAction::natural(Arc::new(image)).relabel(|i| Point::Pair(blocks[i / m], i % m));
    let gamma_action = wreath_action(&gamma, WreathActionKind::Imprimitive)?;
    if !gamma_action.is_transitive() {
        return Err(Error::Internal("induced block group is not transitive".into()));
    }
    let isomorphism = action_isomorphism(&action, &gamma_action)
        .ok_or_else(|| Error::Internal("induced block group is not isomorphic".into()))?;
    if !isomorphism.verify(&action, &gamma_action) {
        return Err(Error::Internal("isomorphism check failed".into()));
    }
    Ok(InducedBlockGroup { action, gamma, gamma_action, isomorphism })
}

/// The family `Lambda_{(i,A)} = {v in Omega^P(m,r,k) : v_i = A}`, checked
/// stable and isomorphic to the action on `[r] x binom([m],k)`.
pub fn primitive_stabilizer_family(g: &WreathGroup, k: usize) -> Result<StableFamily> {
    let omega = wreath_action(g, WreathActionKind::Primitive(k))?;
    let delta = imprimitive_on_subsets(g, k)?;
    let subsets = k_subsets(g.m, k);
    let members: Vec<Vec<usize>> = delta
        .points()
        .iter()
        .map(|d| {
            let Point::Pair(i, a) = d else { unreachable!() };
            (0..omega.num_points())
                .filter(|&v| match WreathPoint::from_point(&omega.points()[v]) {
                    Some(WreathPoint::Primitive(blocks)) => blocks[*i] == subsets[*a],
                    _ => false,
                })
                .collect()
        })
        .collect();
    stable_family_action(&omega, &delta, &members)
}

/// Full group, base group, top lift, diagonal subgroup and `extra` seeded
/// two-generator subgroups, each with transitive primitive action.
pub fn curated_subgroups(m: usize, r: usize, seed: u64, extra: usize) -> Result<Vec<WreathGroup>> {
    let full = WreathGroup::full(m, r)?;
    let mut out = vec![full.clone(), WreathGroup::base(m, r)?];
    let cyc = Permutation::from_images((0..r).map(|i| (i + 1) % r).collect())?;
    let sm = PermGroup::symmetric(m);
    let top_gens: Vec<WreathElement> = sm
        .generators()
        .iter()
        .map(|g| WreathElement::base(vec![g.clone(); r]))
        .chain(std::iter::once(WreathElement::top(m, cyc.clone())))
        .collect();
    out.push(WreathGroup::generate(m, r, &top_gens, DEFAULT_CAP)?);
    let mcyc = Permutation::from_images((0..m).map(|i| (i + 1) % m).collect())?;
    let diag = [WreathElement::base(vec![mcyc; r]), WreathElement::top(m, cyc)];
    out.push(WreathGroup::generate(m, r, &diag, DEFAULT_CAP)?);
    let elems = full.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    let mut added = 0;
    while added < extra && attempts < 50 * (extra + 1) {
        attempts += 1;
        let a = elems[rng.gen_range(0..elems.len())].clone();
        let b = elems[rng.gen_range(0..elems.len())].clone();
        let h = WreathGroup::generate(m, r, &[a, b], DEFAULT_CAP)?;
        if out.iter().any(|x| x.group.elements() == h.group.elements()) {
            continue;
        }
        if wreath_action(&h, WreathActionKind::Primitive(1))?.is_transitive() {
            out.push(h);
            added += 1;
        }
    }
    out.retain(|h| {
        wreath_action(h, WreathActionKind::Primitive(1)).map(|a| a.is_transitive()).unwrap_or(false)
    });
    Ok(out)
}
