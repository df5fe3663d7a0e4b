//! Galois groups through linear resolvents.
//!
//! With `theta = sum c_i alpha_i` injective over all of `S_n`, the polynomial
//! `P_K = prod_{s in K} (x - theta_s)`, `theta_s = sum c_i alpha_{s(i)}`, has
//! integer coefficients exactly when `Gal(f) <= K`. Candidates are tested in
//! increasing order, so the first integral one is the Galois group itself,
//! and `P_G` is its irreducible resolvent.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::candidates::candidate_table;
use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{factorial, Permutation};
use crate::poly::ball::{expand_roots, Ball, IntegerTest};
use crate::poly::factor::factor_squarefree;
use crate::poly::modp::frobenius_cycle_types;
use crate::poly::roots::{approximate, complex_roots, RootSet};
use crate::poly::IntPoly;

pub const DEFAULT_MAX_DEGREE: usize = 7;
pub const HARD_MAX_DEGREE: usize = 8;

const WEIGHT_RANGE: i64 = 10;
const WEIGHT_ATTEMPTS: usize = 24;
const FROBENIUS_PRIMES: usize = 24;
const SUBGROUP_LIMIT: usize = 20_000;
/// Coefficients count as integers only within `2^-TIGHT_BITS`.
const TIGHT_BITS: u32 = 30;

#[derive(Debug, Clone, Serialize)]
pub struct GaloisEvidence {
    /// Degree of `P_G`, the irreducible resolvent through `theta`.
    pub resolvent_degree: usize,
    pub frobenius: Vec<(u64, Vec<usize>)>,
    pub weights: Vec<i64>,
    pub candidates_tested: usize,
    /// `resolvent`, `discriminant`, `full` or `trivial`.
    pub method: &'static str,
}

#[derive(Debug, Clone)]
pub struct GaloisResult {
    pub poly: IntPoly,
    pub roots: RootSet,
    /// Natural action on root indices.
    pub group: GroupAction,
    pub evidence: GaloisEvidence,
}

impl GaloisResult {
    pub fn perm_group(&self) -> &Arc<PermGroup> {
        self.group.group()
    }

    pub fn order(&self) -> usize {
        self.group.group().order()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Every observed Frobenius cycle type occurs in the group.
    pub fn dedekind_consistent(&self) -> bool {
        let types: BTreeSet<Vec<usize>> = self.perm_group().elements().iter().map(|p| p.cycle_type()).collect();
        self.evidence.frobenius.iter().all(|(_, t)| types.contains(t))
    }

    /// Orbit sizes times stabilizer orders equal the group order.
    pub fn orbit_stabilizer_holds(&self) -> bool {
        let g = self.perm_group();
        (0..self.degree()).all(|i| g.orbit(i).len() * g.point_stabilizer(i).order() == g.order())
    }
}

pub fn galois_group(f: &IntPoly, max_degree: usize) -> Result<GaloisResult> {
    galois_group_seeded(f, max_degree, 0)
}

pub fn galois_group_seeded(f: &IntPoly, max_degree: usize, seed: u64) -> Result<GaloisResult> {
    let n = f.degree();
    if f.is_zero() || n == 0 || !f.is_monic() {
        return Err(Error::InvalidParameters(format!("{f} is not monic of positive degree")));
    }
    let cap = max_degree.min(HARD_MAX_DEGREE);
    if n > cap {
        return Err(Error::DegreeTooLarge { degree: n, cap });
    }
    if !f.is_squarefree() {
        return Err(Error::NotSeparable);
    }
    let roots = complex_roots(f, 64)?;
    let frobenius = frobenius_cycle_types(f, FROBENIUS_PRIMES);
    let solver = Solver::new(f, roots, seed)?;
    let (group, method, tested, resolvent_degree) = if n == 1 {
        (PermGroup::trivial(1), "trivial", 0, 1)
    } else {
        let factors = factor_squarefree(f)?;
        if factors.len() == 1 {
            solver.irreducible(&frobenius)?
        } else {
            solver.reducible(&factors, &frobenius)?
        }
    };
    let group = Arc::new(group);
    let result = GaloisResult {
        poly: f.clone(),
        roots: solver.roots,
        group: GroupAction::natural(group),
        evidence: GaloisEvidence { resolvent_degree, frobenius, weights: solver.weights, candidates_tested: tested, method },
    };
    if !result.dedekind_consistent() {
        return Err(Error::Internal(format!("Galois group of {f} misses a Frobenius cycle type")));
    }
    Ok(result)
}

enum Verdict {
    Yes,
    No,
    Unsure,
}

fn tight_integer(b: &Ball) -> Verdict {
    match b.integer_test() {
        IntegerTest::NotInteger => Verdict::No,
        IntegerTest::Unknown => Verdict::Unsure,
        IntegerTest::Integer(v) => {
            let p = b.prec as usize;
            if b.prec <= TIGHT_BITS {
                return Verdict::Unsure;
            }
            let tol = BigInt::one() << (p - TIGHT_BITS as usize);
            let off = (&b.re - (v << p)).abs();
            if off > b.rad || b.im.abs() > b.rad {
                return Verdict::No;
            }
            let dist = off + &b.rad;
            if dist <= tol && b.im.abs() + &b.rad <= tol {
                Verdict::Yes
            } else {
                Verdict::Unsure
            }
        }
    }
}

struct Solver {
    f: IntPoly,
    roots: RootSet,
    weights: Vec<i64>,
    /// `log2(1 + max |theta|)`.
    theta_bits: f64,
}

impl Solver {
    fn new(f: &IntPoly, roots: RootSet, seed: u64) -> Result<Self> {
        let n = f.degree();
        let approx = approximate(&roots);
        let max_root = approx.iter().map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a1_0153);
        for attempt in 0..WEIGHT_ATTEMPTS {
            // Roots with small linear relations need a wider range.
            let range = WEIGHT_RANGE << (attempt / 4);
            let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
            let bound: f64 = weights.iter().map(|c| c.unsigned_abs() as f64).sum::<f64>() * max_root;
            if n == 1 || injective(&approx, &weights, 1e-6 * (1.0 + bound)) {
                return Ok(Solver { f: f.clone(), roots, weights, theta_bits: (1.0 + bound).log2() });
            }
        }
        Err(Error::WeightCollision(WEIGHT_ATTEMPTS))
    }

    fn thetas(&self, set: &RootSet, group: &PermGroup) -> Vec<Ball> {
        group
            .elements()
            .iter()
            .map(|s| {
                let mut acc = Ball::zero(set.prec);
                for (i, &c) in self.weights.iter().enumerate() {
                    acc = acc.add(&set.roots[s.apply(i)].mul_int(&BigInt::from(c)));
                }
                acc
            })
            .collect()
    }

    fn bits_for(&self, degree: usize) -> u32 {
        (degree as f64 * self.theta_bits + 2.0 * (degree as f64 + 1.0).log2() + 48.0) as u32
    }

    /// `Some(P_K)` when `Gal <= K`, `None` otherwise.
    fn resolvent(&self, set: &RootSet, group: &PermGroup) -> Option<std::result::Result<IntPoly, ()>> {
        let thetas = self.thetas(set, group);
        // Cheap rejection by the second power sum.
        let mut p2 = Ball::zero(set.prec);
        for t in &thetas {
            p2 = p2.add(&t.mul(t));
        }
        if p2.integer_test() == IntegerTest::NotInteger {
            return None;
        }
        let coeffs = expand_roots(&BigInt::one(), &thetas, set.prec);
        let mut ints = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            match tight_integer(c) {
                Verdict::No => return None,
                Verdict::Unsure => return Some(Err(())),
                Verdict::Yes => match c.integer_test() {
                    IntegerTest::Integer(v) => ints.push(v),
                    _ => unreachable!(),
                },
            }
        }
        Some(Ok(IntPoly::new(ints)))
    }

    /// First candidate `K` (in the given order) with `Gal <= K`.
    fn search(&self, candidates: &[Arc<PermGroup>]) -> Result<(Option<Arc<PermGroup>>, usize)> {
        let Some(max_order) = candidates.iter().map(|k| k.order()).max() else {
            return Ok((None, 0));
        };
        let mut bits = self.bits_for(max_order);
        loop {
            let set = self.roots.refine(bits)?;
            let mut tested = 0;
            let mut unsure = false;
            for k in candidates {
                tested += 1;
                match self.resolvent(&set, k) {
                    None => {}
                    Some(Ok(_)) => return Ok((Some(k.clone()), tested)),
                    Some(Err(())) => {
                        unsure = true;
                        break;
                    }
                }
            }
            if !unsure {
                return Ok((None, tested));
            }
            bits *= 2;
            if bits > crate::poly::roots::MAX_PREC {
                return Err(Error::PrecisionExhausted(bits));
            }
        }
    }

    fn irreducible(&self, frobenius: &[(u64, Vec<usize>)]) -> Result<(PermGroup, &'static str, usize, usize)> {
        let n = self.f.degree();
        let disc = self.f.discriminant();
        let square = !disc.is_negative() && {
            let r = disc.sqrt();
            &r * &r == disc
        };
        let table = candidate_table(n);
        let seen: BTreeSet<&Vec<usize>> = frobenius.iter().map(|(_, t)| t).collect();
        let classes: Vec<bool> = table
            .class_cycle_types
            .iter()
            .map(|types| {
                let has_odd = types.iter().any(|t| t.iter().map(|l| l - 1).sum::<usize>() % 2 == 1);
                seen.iter().all(|t| types.contains(*t)) && has_odd != square
            })
            .collect();
        let candidates: Vec<Arc<PermGroup>> =
            table.candidates.iter().filter(|c| classes[c.class]).map(|c| c.group.clone()).collect();
        let (found, tested) = self.search(&candidates)?;
        Ok(match found {
            Some(k) => {
                let order = k.order();
                ((*k).clone(), "resolvent", tested, order)
            }
            None if square => (PermGroup::alternating(n), "discriminant", tested, factorial(n) / 2),
            None => (PermGroup::symmetric(n), "full", tested, factorial(n)),
        })
    }

    fn reducible(&self, factors: &[IntPoly], frobenius: &[(u64, Vec<usize>)]) -> Result<(PermGroup, &'static str, usize, usize)> {
        let n = self.f.degree();
        // Galois group of each factor, moved onto the roots of f.
        let mut lifted: Vec<Vec<Permutation>> = Vec::new();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut factor_orders = Vec::new();
        for q in factors {
            let sub = galois_group_seeded(q, HARD_MAX_DEGREE, 0)?;
            let place = locate(&sub.roots, &self.roots);
            let gens = sub
                .perm_group()
                .generators()
                .iter()
                .map(|g| {
                    let mut images: Vec<usize> = (0..n).collect();
                    for (j, &pj) in place.iter().enumerate() {
                        images[pj] = place[g.apply(j)];
                    }
                    Permutation::from_images(images)
                })
                .collect::<Result<Vec<_>>>()?;
            lifted.push(gens);
            orbits.push(place);
            factor_orders.push(sub.order());
        }
        let all_gens: Vec<Permutation> = lifted.iter().flatten().cloned().collect();
        let product = PermGroup::generate(n, all_gens, crate::group::DEFAULT_CAP)?;
        let nontrivial = factor_orders.iter().filter(|&&o| o > 1).count();
        if nontrivial <= 1 {
            let order = product.order();
            return Ok((product, "resolvent", 0, order));
        }
        let seen: BTreeSet<&Vec<usize>> = frobenius.iter().map(|(_, t)| t).collect();
        let mut candidates: Vec<Arc<PermGroup>> = product
            .all_subgroups(SUBGROUP_LIMIT)?
            .into_iter()
            .filter(|h| h.order() < product.order())
            .filter(|h| {
                orbits.iter().zip(&factor_orders).all(|(orb, &ord)| projection_order(h, orb) == ord)
            })
            .filter(|h| {
                let types: BTreeSet<Vec<usize>> = h.elements().iter().map(|p| p.cycle_type()).collect();
                seen.iter().all(|t| types.contains(*t))
            })
            .map(Arc::new)
            .collect();
        candidates.sort_by_key(|h| h.order());
        let (found, tested) = self.search(&candidates)?;
        Ok(match found {
            Some(k) => {
                let order = k.order();
                ((*k).clone(), "resolvent", tested, order)
            }
            None => {
                let order = product.order();
                (product, "full", tested, order)
            }
        })
    }
}

/// Order of the image of `h` restricted to `orbit`.
fn projection_order(h: &PermGroup, orbit: &[usize]) -> usize {
    let images: BTreeSet<Vec<usize>> =
        h.elements().iter().map(|p| orbit.iter().map(|&i| p.apply(i)).collect()).collect();
    images.len()
}

/// `place[j]` is the index in `outer` of root `j` of `inner`.
pub(crate) fn locate(inner: &RootSet, outer: &RootSet) -> Vec<usize> {
    let prec = inner.prec.max(outer.prec);
    let outer_balls: Vec<Ball> = outer.roots.iter().map(|b| b.with_prec(prec)).collect();
    inner
        .roots
        .iter()
        .map(|r| {
            let r = r.with_prec(prec);
            (0..outer_balls.len())
                .min_by_key(|&i| {
                    let dr = &outer_balls[i].re - &r.re;
                    let di = &outer_balls[i].im - &r.im;
                    &dr * &dr + &di * &di
                })
                .expect("nonempty")
        })
        .collect()
}

/// All `n!` values of `sum c_i z_{s(i)}` are pairwise farther than `margin`.
fn injective(z: &[(f64, f64)], c: &[i64], margin: f64) -> bool {
    let n = z.len();
    let mut vals: Vec<(f64, f64)> = (0..factorial(n))
        .map(|r| {
            let s = Permutation::unrank(n, r);
            c.iter().enumerate().fold((0.0, 0.0), |(a, b), (i, &w)| {
                let (x, y) = z[s.apply(i)];
                (a + w as f64 * x, b + w as f64 * y)
            })
        })
        .collect();
    vals.sort_by(|a, b| a.0.total_cmp(&b.0));
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[j].0 - vals[i].0 > margin {
                break;
            }
            if (vals[j].1 - vals[i].1).abs() <= margin {
                return false;
            }
        }
    }
    true
}

/// `disc(f)` is a nonzero square.
pub fn discriminant_is_square(f: &IntPoly) -> bool {
    let d = f.discriminant();
    !d.is_zero() && !d.is_negative() && {
        let r = d.sqrt();
        &r * &r == d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn order_of(c: &[i64]) -> usize {
        galois_group(&p(c), 7).unwrap().order()
    }

    #[test]
    fn small_examples() {
        assert_eq!(order_of(&[-2, 0, 1]), 2);
        assert_eq!(order_of(&[-2, 0, 0, 1]), 6);
        assert_eq!(order_of(&[-1, -3, 0, 1]), 3);
        let c5 = galois_group(&p(&[1, 1, 1, 1, 1]), 7).unwrap();
        assert_eq!(c5.order(), 4);
        assert!(c5.perm_group().is_abelian() && c5.perm_group().is_transitive());
        assert!(c5.perm_group().elements().iter().any(|e| e.order() == 4));
    }

    #[test]
    fn quartic_families() {
        // x^4 + 1: V4; x^4 - 2: D4; x^4 + x + 1: S4; x^4 - x^2 + 1 ... V4.
        assert_eq!(order_of(&[1, 0, 0, 0, 1]), 4);
        assert_eq!(order_of(&[-2, 0, 0, 0, 1]), 8);
        assert_eq!(order_of(&[1, 1, 0, 0, 1]), 24);
        // x^4 + 8x + 12 has group A4.
        assert_eq!(order_of(&[12, 8, 0, 0, 1]), 12);
    }

    #[test]
    fn reducible_products() {
        // Q(sqrt2, sqrt3): order 4 on 4 roots, two orbits.
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        let r = galois_group(&f, 7).unwrap();
        assert_eq!(r.order(), 4);
        assert!(!r.perm_group().is_transitive());
        // x^2-2 and x^2-8 share a splitting field: order 2.
        let g = &p(&[-2, 0, 1]) * &p(&[-8, 0, 1]);
        assert_eq!(galois_group(&g, 7).unwrap().order(), 2);
        // x^3 - 2 with x^2 + 3: the quadratic lies inside Q(2^(1/3), w).
        let h = &p(&[-2, 0, 0, 1]) * &p(&[3, 0, 1]);
        assert_eq!(galois_group(&h, 7).unwrap().order(), 6);
    }

    #[test]
    fn quintic_and_sextic() {
        // x^5 - 2: F20.
        assert_eq!(order_of(&[-2, 0, 0, 0, 0, 1]), 20);
        // Cyclotomic 7: C6.
        assert_eq!(order_of(&[1, 1, 1, 1, 1, 1, 1]), 6);
        // x^5 - x - 1: S5.
        assert_eq!(order_of(&[-1, -1, 0, 0, 0, 1]), 120);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(galois_group(&p(&[1, 2, 1]), 7), Err(Error::NotSeparable)));
        assert!(matches!(
            galois_group(&p(&[1, 0, 0, 0, 0, 0, 0, 0, 1]), 7),
            Err(Error::DegreeTooLarge { .. })
        ));
    }
}
