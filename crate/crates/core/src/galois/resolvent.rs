//! Partial resolvents `f_A`, their coefficient fields, subfield generators
//! and the splitting-field factorization certificate.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::compute::{galois_group, GaloisResult, HARD_MAX_DEGREE};
use crate::error::{Error, Result};
use crate::families::{FamilyBundle, Nu};
use crate::iso::action_isomorphism;
use crate::poly::ball::{expand_roots, Ball};
use crate::poly::factor::is_irreducible;
use crate::poly::height::AlgebraicInteger;
use crate::poly::recognize::integer_recognize;
use crate::poly::roots::{approximate, RootSet, MAX_PREC};
use crate::poly::IntPoly;

const GENERATOR_ATTEMPTS: usize = 24;
const GENERATOR_WEIGHT: i64 = 4;

/// Roots of `res.poly` to at least `bits`.
fn roots_at(res: &GaloisResult, bits: u32) -> Result<RootSet> {
    res.roots.refine(bits)
}

/// Bits for products of `count` values bounded by `max_abs`.
fn bits_for(count: usize, max_abs: f64) -> u32 {
    (count as f64 * (1.0 + max_abs).log2() + 2.0 * (count as f64 + 1.0).log2() + 48.0) as u32
}

fn max_root(res: &GaloisResult) -> f64 {
    approximate(&res.roots).iter().map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max)
}

/// `G`-orbit of a root subset, as sorted subsets, `A` first.
pub fn orbit_of_subset(res: &GaloisResult, a: &[usize]) -> Vec<Vec<usize>> {
    let mut start = a.to_vec();
    start.sort_unstable();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut out = vec![start];
    for s in res.perm_group().elements() {
        let mut img: Vec<usize> = a.iter().map(|&i| s.apply(i)).collect();
        img.sort_unstable();
        if seen.insert(img.clone()) {
            out.push(img);
        }
    }
    out
}

/// Coefficients of `f_B` for each `B`, constant first, monic.
fn subset_coeffs(set: &RootSet, subsets: &[Vec<usize>]) -> Vec<Vec<Ball>> {
    subsets
        .iter()
        .map(|b| {
            let roots: Vec<Ball> = b.iter().map(|&i| set.roots[i].clone()).collect();
            expand_roots(&BigInt::one(), &roots, set.prec)
        })
        .collect()
}

/// Overlap classes: indices grouped when their balls are not disjoint.
fn clusters(values: &[Ball]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        if reps.iter().all(|&r| values[r].disjoint(v)) {
            reps.push(i);
        }
    }
    reps
}

#[derive(Debug, Clone)]
pub struct PartialResolvent {
    pub subset: Vec<usize>,
    /// `b_0, ..., b_{|A|-1}`.
    pub coeffs: Vec<AlgebraicInteger>,
    /// `[G : Stab_G(A)]`.
    pub stabilizer_index: usize,
    /// `[Q(b_0, ..., b_{|A|-1}) : Q]`, counted as distinct conjugate tuples.
    pub field_degree: usize,
}

impl PartialResolvent {
    pub fn degree_identity_holds(&self) -> bool {
        self.field_degree == self.stabilizer_index
    }
}

pub fn partial_resolvent(res: &GaloisResult, a: &[usize]) -> Result<PartialResolvent> {
    if a.is_empty() {
        return Err(Error::InvalidParameters("empty root subset".into()));
    }
    if a.iter().any(|&i| i >= res.degree()) {
        return Err(Error::InvalidParameters("root index out of range".into()));
    }
    let orbit = orbit_of_subset(res, a);
    let k = a.len();
    let coeff_bound = (1.0 + max_root(res)).powi(k as i32);
    let mut bits = bits_for(orbit.len(), coeff_bound);
    'precision: loop {
        let set = roots_at(res, bits)?;
        let fa = subset_coeffs(&set, &orbit);
        let mut coeffs = Vec::with_capacity(k);
        for i in 0..k {
            let values: Vec<Ball> = fa.iter().map(|c| c[i].clone()).collect();
            let conj: Vec<Ball> = clusters(&values).into_iter().map(|j| values[j].clone()).collect();
            let Some(minpoly) = integer_recognize(&expand_roots(&BigInt::one(), &conj, set.prec)) else {
                bits *= 2;
                if bits > MAX_PREC {
                    return Err(Error::PrecisionExhausted(bits));
                }
                continue 'precision;
            };
            coeffs.push(AlgebraicInteger { minimal_poly: minpoly, embedding: values[0].clone() });
        }
        // Distinct conjugate tuples.
        let mut reps: Vec<usize> = Vec::new();
        for j in 0..fa.len() {
            let same = |r: usize| (0..k).all(|i| !fa[r][i].disjoint(&fa[j][i]));
            if !reps.iter().any(|&r| same(r)) {
                reps.push(j);
            }
        }
        return Ok(PartialResolvent {
            subset: orbit[0].clone(),
            coeffs,
            stabilizer_index: orbit.len(),
            field_degree: reps.len(),
        });
    }
}

/// Root index of each point of `bundle.base_action`.
pub fn root_labeling(res: &GaloisResult, bundle: &FamilyBundle) -> Result<Vec<usize>> {
    action_isomorphism(&bundle.base_action, &res.group)
        .map(|iso| iso.point_map)
        .ok_or_else(|| Error::MismatchedAction("bundle action is not isomorphic to the Galois action".into()))
}

fn orbit_members(bundle: &FamilyBundle, labels: &[usize], l: usize) -> Vec<Vec<usize>> {
    bundle.orbits[l]
        .members
        .iter()
        .map(|&p| {
            let mut m: Vec<usize> = bundle.member(p).iter().map(|&w| labels[w]).collect();
            m.sort_unstable();
            m
        })
        .collect()
}

/// `prod_{A in Lambda^(l)} f_A == f^{nu_l}`, compared exactly.
pub fn resolvent_identity_check(res: &GaloisResult, bundle: &FamilyBundle, l: usize) -> Result<bool> {
    if l >= bundle.s() {
        return Err(Error::InvalidParameters(format!("orbit {l} out of range")));
    }
    let labels = root_labeling(res, bundle)?;
    let members = orbit_members(bundle, &labels, l);
    let Some(nu) = bundle.orbits[l].nu.as_integer() else {
        return Ok(false);
    };
    let total: usize = members.iter().map(|m| m.len()).sum();
    let mut bits = bits_for(total, max_root(res));
    loop {
        let set = roots_at(res, bits)?;
        let all: Vec<Ball> = members.iter().flatten().map(|&i| set.roots[i].clone()).collect();
        if let Some(product) = integer_recognize(&expand_roots(&BigInt::one(), &all, set.prec)) {
            return Ok(product == res.poly.pow(nu as u32));
        }
        bits *= 2;
        if bits > MAX_PREC {
            return Err(Error::PrecisionExhausted(bits));
        }
    }
}

/// `beta = sum w_i b_i^(A)` with `[Q(beta) : Q] = [G : Stab_G(A)]`, and its
/// minimal polynomial `q`.
pub fn subfield_generator(res: &GaloisResult, a: &[usize], weights_seed: u64) -> Result<(AlgebraicInteger, IntPoly)> {
    let orbit = orbit_of_subset(res, a);
    let d = orbit.len();
    let k = a.len();
    let mut rng = ChaCha8Rng::seed_from_u64(weights_seed ^ 0x50b_f1e1d);
    let coeff_bound = (1.0 + max_root(res)).powi(k as i32);
    let low = roots_at(res, 64)?;
    let low_fa = subset_coeffs(&low, &orbit);
    for attempt in 0..GENERATOR_ATTEMPTS {
        // b_0 = +-prod(A) first, then b_{k-1} = -sum(A), then all ones, then
        // seeded weights.
        let mut w: Vec<i64> = match attempt {
            0 => (0..k).map(|i| i64::from(i == 0)).collect(),
            1 => (0..k).map(|i| i64::from(i + 1 == k)).collect(),
            2 => vec![1; k],
            _ => (0..k).map(|_| rng.gen_range(-GENERATOR_WEIGHT..=GENERATOR_WEIGHT)).collect(),
        };
        if w.iter().all(|&x| x == 0) {
            w[0] = 1;
        }
        let combine = |fa: &[Vec<Ball>], prec: u32| -> Vec<Ball> {
            fa.iter()
                .map(|c| {
                    let mut acc = Ball::zero(prec);
                    for (i, &wi) in w.iter().enumerate() {
                        acc = acc.add(&c[i].mul_int(&BigInt::from(wi)));
                    }
                    acc
                })
                .collect()
        };
        let approx = combine(&low_fa, low.prec);
        if clusters(&approx).len() != d {
            continue;
        }
        let bound = coeff_bound * w.iter().map(|x| x.unsigned_abs() as f64).sum::<f64>().max(1.0);
        let mut bits = bits_for(d, bound);
        loop {
            let set = roots_at(res, bits)?;
            let betas = combine(&subset_coeffs(&set, &orbit), set.prec);
            if let Some(q) = integer_recognize(&expand_roots(&BigInt::one(), &betas, set.prec)) {
                if q.degree() != d || !is_irreducible(&q)? {
                    return Err(Error::Internal(format!("generator polynomial {q} is not irreducible of degree {d}")));
                }
                let beta = AlgebraicInteger { minimal_poly: q.clone(), embedding: betas[0].clone() };
                return Ok((beta, q));
            }
            bits *= 2;
            if bits > MAX_PREC {
                return Err(Error::PrecisionExhausted(bits));
            }
        }
    }
    Err(Error::WeightCollision(GENERATOR_ATTEMPTS))
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorCertificate {
    pub orbit: usize,
    pub q: IntPoly,
    #[serde(skip)]
    pub beta: AlgebraicInteger,
    pub nu: Nu,
    /// `H(q) / H(f)^nu`.
    pub measured_ratio: f64,
    /// `deg q = |Lambda^(l)|`.
    pub degree_ok: bool,
    /// `Gal(q)` on its roots is isomorphic to `(G_l, Lambda^(l))`.
    pub galois_ok: bool,
}

#[derive(Debug, Clone)]
pub struct FactorizationCertificate {
    pub source: GaloisResult,
    pub bundle: FamilyBundle,
    pub factors: Vec<FactorCertificate>,
    pub compositum_ok: bool,
}

impl FactorizationCertificate {
    pub fn all_ok(&self) -> bool {
        self.compositum_ok && self.factors.iter().all(|f| f.degree_ok && f.galois_ok)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "polynomial": self.source.poly.to_string(),
            "group_order": self.source.order(),
            "family": self.bundle.builder,
            "nu": self.bundle.nus().iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            "factors": self.factors.iter().map(|f| json!({
                "orbit": f.orbit,
                "q": f.q.to_string(),
                "degree": f.q.degree(),
                "height": f.q.height().to_string(),
                "ratio": f.measured_ratio,
                "degree_ok": f.degree_ok,
                "galois_ok": f.galois_ok,
            })).collect::<Vec<_>>(),
            "compositum_ok": self.compositum_ok,
        })
    }
}

/// `H(q) / H(f)^nu` in floating point.
pub fn height_ratio(q: &IntPoly, f: &IntPoly, nu: Nu) -> f64 {
    let hq = q.height().to_f64().unwrap_or(f64::INFINITY);
    let hf = f.height().to_f64().unwrap_or(f64::INFINITY).max(1.0);
    hq / hf.powf(nu.num as f64 / nu.den as f64)
}

pub fn splitting_factorization(res: &GaloisResult, bundle: &FamilyBundle) -> Result<FactorizationCertificate> {
    if !res.perm_group().is_transitive() {
        return Err(Error::NotTransitive);
    }
    let labels = root_labeling(res, bundle)?;
    let mut factors = Vec::new();
    for (l, orbit) in bundle.orbits.iter().enumerate() {
        let a: Vec<usize> = orbit.representative.iter().map(|&w| labels[w]).collect();
        let (beta, q) = subfield_generator(res, &a, l as u64)?;
        let galois_ok = match galois_group(&q, HARD_MAX_DEGREE) {
            Ok(gq) => action_isomorphism(&gq.group, &orbit.target).is_some(),
            Err(Error::DegreeTooLarge { .. }) => false,
            Err(e) => return Err(e),
        };
        factors.push(FactorCertificate {
            orbit: l,
            degree_ok: q.degree() == orbit.members.len(),
            measured_ratio: height_ratio(&q, &res.poly, orbit.nu),
            nu: orbit.nu,
            q,
            beta,
            galois_ok,
        });
    }
    // The intersection of the Fix_G(Lambda^(l)) is the kernel on the family.
    let fam = &bundle.family_action;
    let kernel = (0..fam.group().order()).filter(|&e| (0..fam.num_points()).all(|p| fam.act(e, p) == p)).count();
    Ok(FactorizationCertificate { source: res.clone(), bundle: bundle.clone(), factors, compositum_ok: kernel == 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::compute::galois_group;

    fn res(c: &[i64]) -> GaloisResult {
        galois_group(&IntPoly::from_i64(c), 7).unwrap()
    }

    #[test]
    fn partial_resolvents_of_cube_root() {
        let r = res(&[-2, 0, 0, 1]);
        let all = partial_resolvent(&r, &[0, 1, 2]).unwrap();
        assert_eq!(all.stabilizer_index, 1);
        assert!(all.coeffs.iter().all(|b| b.degree() == 1));
        // Roots sort by real part: index 2 is the real root.
        let real = (0..3).find(|&i| r.roots.roots[i].im_f64().abs() < 1e-9).unwrap();
        let one = partial_resolvent(&r, &[real]).unwrap();
        assert_eq!(one.coeffs[0].minimal_poly, IntPoly::from_i64(&[2, 0, 0, 1]));
        assert!(one.degree_identity_holds());
        let pair: Vec<usize> = (0..3).filter(|&i| i != real).collect();
        let two = partial_resolvent(&r, &pair).unwrap();
        assert_eq!(two.stabilizer_index, 3);
        assert_eq!(two.coeffs[1].minimal_poly, IntPoly::from_i64(&[-2, 0, 0, 1]));
        assert_eq!(two.coeffs[0].minimal_poly, IntPoly::from_i64(&[-4, 0, 0, 1]));
    }

    #[test]
    fn generators_have_index_degree() {
        let r = res(&[-2, 0, 0, 1]);
        let (_, q) = subfield_generator(&r, &[0, 1, 2], 1).unwrap();
        assert_eq!(q.degree(), 1);
        let (b, q) = subfield_generator(&r, &[0], 1).unwrap();
        assert_eq!(q.degree(), 3);
        assert_eq!(b.degree(), 3);
    }
}
