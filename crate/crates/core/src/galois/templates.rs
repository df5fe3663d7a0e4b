//! Test instances with a prescribed Galois action.
//!
//! Each template draws seed polynomials, builds a candidate whose roots are
//! indexed by the target point set, and keeps it only when its computed
//! Galois action is isomorphic to the target.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::compute::{galois_group, GaloisResult, HARD_MAX_DEGREE};
use crate::action::{k_subsets, k_tuples, GroupAction};
use crate::catalog::catalog_group;
use crate::error::{Error, Result};
use crate::families::{
    build_homogeneous_family, build_primitive_family, build_regular_family, build_transitive_tuple_family, FamilyBundle,
};
use crate::group::PermGroup;
use crate::iso::action_isomorphism;
use crate::perm::factorial;
use crate::poly::ball::{expand_roots, Ball};
use crate::poly::recognize::integer_recognize;
use crate::poly::roots::{approximate, complex_roots, RootSet, MAX_PREC};
use crate::poly::IntPoly;
use crate::wreath::{wreath_action, WreathActionKind, WreathGroup};

pub const MAX_ATTEMPTS: usize = 40;
const SEED_DRAWS: usize = 400;

/// A prescribed action `(G, Omega)` with a way to produce candidates.
pub trait ActionTemplate: Send + Sync {
    /// Canonical spelling, e.g. `tuple(3,2)`.
    fn name(&self) -> String;
    fn target(&self) -> Result<GroupAction>;
    fn bundle(&self) -> Result<FamilyBundle>;
    /// One candidate polynomial and the seed polynomials behind it.
    fn candidate(&self, rng: &mut ChaCha8Rng, h_seed: i64) -> Result<(IntPoly, Vec<IntPoly>)>;
}

type Factory = fn(&[String]) -> Result<Box<dyn ActionTemplate>>;

/// Registered template kinds.
pub fn template_kinds() -> Vec<(&'static str, Factory)> {
    vec![
        ("tuple", |a| Ok(Box::new(TupleTemplate { m: num(a, 0)?, k: num(a, 1)? }))),
        ("subset", |a| Ok(Box::new(SubsetTemplate { m: num(a, 0)?, k: num(a, 1)? }))),
        ("primitive", |a| Ok(Box::new(PrimitiveTemplate { m: num(a, 0)?, r: num(a, 1)?, k: num(a, 2)? }))),
        ("regular", |a| {
            let name = a.first().ok_or_else(|| Error::Parse("regular needs a group name".into()))?;
            RegularTemplate::new(name).map(|t| Box::new(t) as Box<dyn ActionTemplate>)
        }),
    ]
}

fn num(args: &[String], i: usize) -> Result<usize> {
    args.get(i)
        .ok_or_else(|| Error::Parse(format!("missing parameter {}", i + 1)))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad parameter {:?}", args[i])))
}

/// Parses `kind(p1,p2,...)`.
pub fn parse_template(text: &str) -> Result<Box<dyn ActionTemplate>> {
    let text = text.trim();
    let (kind, rest) = text.split_once('(').ok_or_else(|| Error::Parse(format!("expected kind(params): {text}")))?;
    let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unclosed parameters: {text}")))?;
    let args: Vec<String> = inner.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    let (_, factory) = template_kinds()
        .into_iter()
        .find(|(name, _)| *name == kind.trim())
        .ok_or_else(|| Error::Unknown { kind: "template", name: kind.trim().to_string() })?;
    factory(&args)
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub template: String,
    pub seed: u64,
    pub attempts: usize,
    pub seed_polys: Vec<IntPoly>,
    pub poly: IntPoly,
    pub galois: GaloisResult,
}

/// A polynomial realizing `template`, verified by its Galois action.
pub fn realize_action(template: &dyn ActionTemplate, seed: u64, h_seed: f64) -> Result<Instance> {
    let h = h_seed.floor() as i64;
    if h < 1 {
        return Err(Error::InvalidParameters(format!("seed height must be at least 1, got {h_seed}")));
    }
    let target = template.target()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let Ok((poly, seed_polys)) = template.candidate(&mut rng, h) else { continue };
        if poly.degree() > HARD_MAX_DEGREE || !poly.is_squarefree() {
            continue;
        }
        let Ok(galois) = galois_group(&poly, HARD_MAX_DEGREE) else { continue };
        if action_isomorphism(&target, &galois.group).is_some() {
            return Ok(Instance { template: template.name(), seed, attempts: attempt, seed_polys, poly, galois });
        }
    }
    Err(Error::GenerationFailed(format!("{} after {MAX_ATTEMPTS} attempts", template.name())))
}

fn random_monic(rng: &mut ChaCha8Rng, degree: usize, h: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..degree).map(|_| rng.gen_range(-h..=h)).collect();
    c.push(1);
    IntPoly::from_i64(&c)
}

/// A monic polynomial of degree `m` and height at most `h` with group `S_m`.
fn symmetric_seed(rng: &mut ChaCha8Rng, m: usize, h: i64) -> Result<(IntPoly, RootSet)> {
    for _ in 0..SEED_DRAWS {
        let g = random_monic(rng, m, h);
        if g.coeff(0) == BigInt::from(0) || !g.is_squarefree() {
            continue;
        }
        if let Ok(r) = galois_group(&g, HARD_MAX_DEGREE) {
            if r.order() == factorial(m) && r.perm_group().is_transitive() {
                return Ok((g, r.roots));
            }
        }
    }
    Err(Error::GenerationFailed(format!("no S_{m} seed of height {h}")))
}

/// `prod (x - sum_t w_t alpha_{v_t})` over the index vectors, recognized exactly.
fn product_of_sums(seed: &IntPoly, points: &[Vec<(usize, i64)>]) -> Result<IntPoly> {
    let roots = complex_roots(seed, 64)?;
    let max_abs = approximate(&roots).iter().map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max);
    let weight: f64 = points.iter().map(|v| v.iter().map(|(_, w)| w.unsigned_abs() as f64).sum::<f64>()).fold(0.0, f64::max);
    let d = points.len() as f64;
    let mut bits = (d * (1.0 + weight * max_abs).log2() + 2.0 * (d + 1.0).log2() + 48.0) as u32;
    loop {
        let set = roots.refine(bits)?;
        let values: Vec<Ball> = points
            .iter()
            .map(|v| {
                v.iter().fold(Ball::zero(set.prec), |acc, &(i, w)| acc.add(&set.roots[i].mul_int(&BigInt::from(w))))
            })
            .collect();
        if let Some(p) = integer_recognize(&expand_roots(&BigInt::one(), &values, set.prec)) {
            return Ok(p);
        }
        bits *= 2;
        if bits > MAX_PREC {
            return Err(Error::PrecisionExhausted(bits));
        }
    }
}

fn symmetric(m: usize) -> Arc<PermGroup> {
    Arc::new(PermGroup::symmetric(m))
}

/// Roots `sum_t w_t alpha_{v_t}` over `v in [m]_k`, weights `(1, -1)` for
/// `k = 2`.
pub struct TupleTemplate {
    pub m: usize,
    pub k: usize,
}

impl TupleTemplate {
    fn weights(&self) -> Vec<i64> {
        match self.k {
            1 => vec![1],
            2 => vec![1, -1],
            k => (0..k).map(|t| 1 << t).collect(),
        }
    }
}

impl ActionTemplate for TupleTemplate {
    fn name(&self) -> String {
        format!("tuple({},{})", self.m, self.k)
    }

    fn target(&self) -> Result<GroupAction> {
        Ok(GroupAction::on_tuples(symmetric(self.m), self.k))
    }

    fn bundle(&self) -> Result<FamilyBundle> {
        build_transitive_tuple_family(&symmetric(self.m), self.k)
    }

    fn candidate(&self, rng: &mut ChaCha8Rng, h: i64) -> Result<(IntPoly, Vec<IntPoly>)> {
        let (g, _) = symmetric_seed(rng, self.m, h)?;
        let w = self.weights();
        let points: Vec<Vec<(usize, i64)>> =
            k_tuples(self.m, self.k).into_iter().map(|v| v.into_iter().zip(w.iter().copied()).collect()).collect();
        Ok((product_of_sums(&g, &points)?, vec![g]))
    }
}

/// Roots `sum_{i in A} alpha_i` over `A in binom([m], k)`.
pub struct SubsetTemplate {
    pub m: usize,
    pub k: usize,
}

impl ActionTemplate for SubsetTemplate {
    fn name(&self) -> String {
        format!("subset({},{})", self.m, self.k)
    }

    fn target(&self) -> Result<GroupAction> {
        Ok(GroupAction::on_subsets(symmetric(self.m), self.k))
    }

    fn bundle(&self) -> Result<FamilyBundle> {
        build_homogeneous_family(&symmetric(self.m), self.k)
    }

    fn candidate(&self, rng: &mut ChaCha8Rng, h: i64) -> Result<(IntPoly, Vec<IntPoly>)> {
        let (g, _) = symmetric_seed(rng, self.m, h)?;
        let points: Vec<Vec<(usize, i64)>> =
            k_subsets(self.m, self.k).into_iter().map(|a| a.into_iter().map(|i| (i, 1)).collect()).collect();
        Ok((product_of_sums(&g, &points)?, vec![g]))
    }
}

/// Product action of `S_m wr S_r` through `F = g(h(x))`: block `t` holds the
/// roots of `h(x) - gamma_t`, and each point `(A_1, ..., A_r)` becomes
/// `sum_t sum_{i in A_t} alpha^(t)_i`.
pub struct PrimitiveTemplate {
    pub m: usize,
    pub r: usize,
    pub k: usize,
}

impl PrimitiveTemplate {
    fn wreath(&self) -> Result<WreathGroup> {
        WreathGroup::full(self.m, self.r)
    }
}

impl ActionTemplate for PrimitiveTemplate {
    fn name(&self) -> String {
        format!("primitive({},{},{})", self.m, self.r, self.k)
    }

    fn target(&self) -> Result<GroupAction> {
        wreath_action(&self.wreath()?, WreathActionKind::Primitive(self.k))
    }

    fn bundle(&self) -> Result<FamilyBundle> {
        build_primitive_family(&self.wreath()?, self.k)
    }

    fn candidate(&self, rng: &mut ChaCha8Rng, h: i64) -> Result<(IntPoly, Vec<IntPoly>)> {
        let (m, r) = (self.m, self.r);
        let (g, _) = symmetric_seed(rng, r, h)?;
        let mut hc: Vec<i64> = (0..m).map(|_| rng.gen_range(-h..=h)).collect();
        hc[0] = 0;
        hc.push(1);
        let inner = IntPoly::from_i64(&hc);
        let big = g.compose(&inner);
        if !big.is_squarefree() {
            return Err(Error::NotSeparable);
        }
        // Blocks by the value of h at each root.
        let roots = complex_roots(&big, 64)?;
        let gamma = approximate(&complex_roots(&g, 64)?);
        let eval_h = |(re, im): (f64, f64)| {
            hc.iter().rev().fold((0.0, 0.0), |(a, b), &c| (a * re - b * im + c as f64, a * im + b * re))
        };
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); r];
        for (i, z) in approximate(&roots).into_iter().enumerate() {
            let hz = eval_h(z);
            let t = (0..r)
                .min_by(|&a, &b| {
                    let da = (hz.0 - gamma[a].0).hypot(hz.1 - gamma[a].1);
                    let db = (hz.0 - gamma[b].0).hypot(hz.1 - gamma[b].1);
                    da.total_cmp(&db)
                })
                .expect("r >= 1");
            blocks[t].push(i);
        }
        if blocks.iter().any(|b| b.len() != m) {
            return Err(Error::GenerationFailed("ambiguous blocks".into()));
        }
        let subsets = k_subsets(m, self.k);
        let mut points: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
        for block in &blocks {
            let mut next = Vec::new();
            for p in &points {
                for a in &subsets {
                    let mut q = p.clone();
                    q.extend(a.iter().map(|&i| (block[i], 1)));
                    next.push(q);
                }
            }
            points = next;
        }
        Ok((product_of_sums(&big, &points)?, vec![g, inner]))
    }
}

/// Regular action of a small group on a primitive element of a field with
/// that Galois group.
pub struct RegularTemplate {
    pub group: String,
    g: Arc<PermGroup>,
}

impl RegularTemplate {
    pub fn new(name: &str) -> Result<Self> {
        let canonical = match name {
            "C2" | "C3" | "S3" => name,
            "V4" | "C2xC2" => "C2xC2",
            _ => return Err(Error::Unknown { kind: "regular template group", name: name.to_string() }),
        };
        let g = catalog_group(canonical)?.group;
        let group = if canonical == "C2xC2" { "V4".to_string() } else { canonical.to_string() };
        Ok(RegularTemplate { group, g })
    }
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt().round() as i64;
        r * r == n
    }
}

impl ActionTemplate for RegularTemplate {
    fn name(&self) -> String {
        format!("regular({})", self.group)
    }

    fn target(&self) -> Result<GroupAction> {
        Ok(GroupAction::regular(self.g.clone()))
    }

    fn bundle(&self) -> Result<FamilyBundle> {
        build_regular_family(&self.g, None)
    }

    fn candidate(&self, rng: &mut ChaCha8Rng, h: i64) -> Result<(IntPoly, Vec<IntPoly>)> {
        match self.group.as_str() {
            "C2" => {
                for _ in 0..SEED_DRAWS {
                    let f = random_monic(rng, 2, h);
                    let (b, c) = (f.coeff(1), f.coeff(0));
                    let disc = &b * &b - BigInt::from(4) * c;
                    if !is_square(i64::try_from(disc).unwrap_or(0)) {
                        return Ok((f.clone(), vec![f]));
                    }
                }
                Err(Error::GenerationFailed("no irreducible quadratic".into()))
            }
            "C3" => {
                // x^3 - a x^2 - (a + 3) x - 1 is cyclic for every a.
                let a = rng.gen_range(-h..=h);
                let f = IntPoly::from_i64(&[-1, -(a + 3), -a, 1]);
                Ok((f.clone(), vec![f]))
            }
            "V4" => {
                let p = rng.gen_range(2..=h.max(3));
                let q = rng.gen_range(2..=h.max(3));
                if p == q || is_square(p) || is_square(q) || is_square(p * q) {
                    return Err(Error::GenerationFailed("degenerate biquadratic".into()));
                }
                // Minimal polynomial of sqrt(p) + sqrt(q).
                let f = IntPoly::from_i64(&[(p - q) * (p - q), 0, -2 * (p + q), 0, 1]);
                Ok((f, vec![IntPoly::from_i64(&[-p, 0, 1]), IntPoly::from_i64(&[-q, 0, 1])]))
            }
            "S3" => {
                let (g, _) = symmetric_seed(rng, 3, h)?;
                let points: Vec<Vec<(usize, i64)>> =
                    k_tuples(3, 2).into_iter().map(|v| vec![(v[0], 1), (v[1], -1)]).collect();
                Ok((product_of_sums(&g, &points)?, vec![g]))
            }
            other => Err(Error::Unknown { kind: "regular template group", name: other.to_string() }),
        }
    }
}
