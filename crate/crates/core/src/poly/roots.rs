//! Certified isolation of all complex roots of a squarefree integer
//! polynomial.
//!
//! Approximations come from Aberth iteration (first in `f64`, then in
//! fixed point). Each approximation `z_i` is certified by the disk of radius
//! `n |W_i|`, `W_i = f(z_i) / (lc prod_{j != i} (z_i - z_j))`; when these
//! disks are pairwise disjoint each holds exactly one root. `f(z_i)` and the
//! products are evaluated exactly on the dyadic midpoints.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use super::ball::{expand_roots, scaled_to_f64, Ball, IntegerTest};
use super::IntPoly;
use crate::error::{Error, Result};

pub const START_PREC: u32 = 128;
pub const MAX_PREC: u32 = 1 << 16;

/// All roots of `source` as pairwise disjoint balls.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Ball>,
    pub prec: u32,
    pub source: IntPoly,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `lc * prod (x - r)` re-rounds to the source coefficients.
    pub fn expansion_matches(&self) -> bool {
        let lc = self.source.leading();
        let coeffs = expand_roots(&lc, &self.roots, self.prec);
        coeffs.iter().enumerate().all(|(i, c)| c.integer_test() == IntegerTest::Integer(self.source.coeff(i)))
    }

    /// The same roots to radius at most `2^-bits`, in this set's order.
    pub fn refine(&self, bits: u32) -> Result<RootSet> {
        if self.prec >= bits + 16 {
            return Ok(self.clone());
        }
        let fresh = complex_roots(&self.source, bits)?;
        let mut taken = vec![false; fresh.len()];
        let mut roots = Vec::with_capacity(self.len());
        for old in &self.roots {
            let old = old.with_prec(fresh.prec);
            let dist = |b: &Ball| {
                let (dr, di) = (&b.re - &old.re, &b.im - &old.im);
                &dr * &dr + &di * &di
            };
            let hits: Vec<usize> = (0..fresh.len()).filter(|&j| !taken[j] && !fresh.roots[j].disjoint(&old)).collect();
            let j = match hits[..] {
                [j] => j,
                _ => (0..fresh.len()).filter(|&j| !taken[j]).min_by_key(|&j| dist(&fresh.roots[j])).ok_or(Error::PrecisionExhausted(fresh.prec))?,
            };
            taken[j] = true;
            roots.push(fresh.roots[j].clone());
        }
        Ok(RootSet { roots, prec: fresh.prec, source: fresh.source })
    }

    pub fn pairwise_disjoint(&self) -> bool {
        let n = self.roots.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.roots[i].disjoint(&self.roots[j])))
    }
}

#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

impl Fx {
    fn from_f64(re: f64, im: f64, p: u32) -> Fx {
        // 60 fractional bits carry the full f64 mantissa for |v| < 2^60.
        let to = |v: f64| {
            let head = BigInt::from_f64((v * 2f64.powi(60)).trunc()).unwrap_or_default();
            if p >= 60 {
                head << (p - 60) as usize
            } else {
                head >> (60 - p) as usize
            }
        };
        Fx { re: to(re), im: to(im) }
    }

    fn rescale(&self, from: u32, to: u32) -> Fx {
        if to >= from {
            let s = (to - from) as usize;
            Fx { re: &self.re << s, im: &self.im << s }
        } else {
            let s = (from - to) as usize;
            Fx { re: &self.re >> s, im: &self.im >> s }
        }
    }

    fn sub(&self, o: &Fx) -> Fx {
        Fx { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Fx, p: u32) -> Fx {
        let p = p as usize;
        Fx { re: (&self.re * &o.re - &self.im * &o.im) >> p, im: (&self.re * &o.im + &self.im * &o.re) >> p }
    }

    fn div(&self, o: &Fx, p: u32) -> Option<Fx> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let p = p as usize;
        let re = ((&self.re * &o.re + &self.im * &o.im) << p) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << p) / &den;
        Some(Fx { re, im })
    }

    fn l1(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }
}

/// Roots of `f` to radius at most `2^-bits`, starting at [`START_PREC`].
pub fn complex_roots(f: &IntPoly, bits: u32) -> Result<RootSet> {
    complex_roots_from(f, bits, START_PREC)
}

pub fn complex_roots_from(f: &IntPoly, bits: u32, start_prec: u32) -> Result<RootSet> {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return Err(Error::InvalidParameters("constant polynomial has no roots".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::NotSeparable);
    }
    let mut prec = start_prec.max(bits + 16).max(64);
    let mut approx = initial_f64(f);
    let mut z: Vec<Fx> = approx.drain(..).map(|(re, im)| Fx::from_f64(re, im, prec)).collect();
    let mut last_prec = prec;
    while prec <= MAX_PREC {
        z = z.iter().map(|x| x.rescale(last_prec, prec)).collect();
        last_prec = prec;
        aberth_fixed(f, &mut z, prec);
        if let Some(roots) = certify(f, &z, prec) {
            if roots.iter().all(|b| b.radius_below(bits)) {
                let mut set = RootSet { roots, prec, source: f.clone() };
                sort_roots(&mut set.roots);
                if set.expansion_matches() {
                    return Ok(set);
                }
            }
        }
        prec *= 2;
    }
    Err(Error::PrecisionExhausted(MAX_PREC))
}

/// Deterministic order: by real part, then imaginary part, at 2^-40 resolution.
fn sort_roots(roots: &mut [Ball]) {
    let key = |b: &Ball| {
        let s = b.prec.saturating_sub(40) as usize;
        ((&b.re >> s), (&b.im >> s))
    };
    roots.sort_by_cached_key(key);
}

fn coeffs_f64(f: &IntPoly) -> Option<Vec<f64>> {
    let c: Vec<f64> = f.coeffs().iter().map(|a| a.to_f64().unwrap_or(f64::INFINITY)).collect();
    c.iter().all(|x| x.is_finite()).then_some(c)
}

fn initial_f64(f: &IntPoly) -> Vec<(f64, f64)> {
    let n = f.degree();
    let fallback = |r: f64| -> Vec<(f64, f64)> {
        (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
                (r * t.cos(), r * t.sin())
            })
            .collect()
    };
    let Some(c) = coeffs_f64(f) else {
        return fallback(1.0);
    };
    let lc = c[n];
    let radius = (0..n)
        .map(|k| (c[k] / lc).abs().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z = fallback(radius);
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (zr, zi) = z[i];
            let (mut pr, mut pi, mut dr, mut di) = (c[n], 0.0, 0.0, 0.0);
            for k in (0..n).rev() {
                let (ndr, ndi) = (dr * zr - di * zi + pr, dr * zi + di * zr + pi);
                dr = ndr;
                di = ndi;
                let (npr, npi) = (pr * zr - pi * zi + c[k], pr * zi + pi * zr);
                pr = npr;
                pi = npi;
            }
            let dd = dr * dr + di * di;
            if dd == 0.0 {
                continue;
            }
            let (nr, ni) = ((pr * dr + pi * di) / dd, (pi * dr - pr * di) / dd);
            let (mut sr, mut si) = (0.0, 0.0);
            for (j, &(wr, wi)) in z.iter().enumerate() {
                if j != i {
                    let (ar, ai) = (zr - wr, zi - wi);
                    let aa = ar * ar + ai * ai;
                    if aa > 0.0 {
                        sr += ar / aa;
                        si -= ai / aa;
                    }
                }
            }
            let (tr, ti) = (1.0 - (nr * sr - ni * si), -(nr * si + ni * sr));
            let tt = tr * tr + ti * ti;
            if tt == 0.0 {
                continue;
            }
            let (wr, wi) = ((nr * tr + ni * ti) / tt, (ni * tr - nr * ti) / tt);
            if !(wr.is_finite() && wi.is_finite()) {
                return fallback(radius);
            }
            z[i] = (zr - wr, zi - wi);
            worst = worst.max(wr.hypot(wi) / (1.0 + zr.hypot(zi)));
        }
        if worst < 1e-15 {
            break;
        }
    }
    if z.iter().all(|(a, b)| a.is_finite() && b.is_finite()) {
        z
    } else {
        fallback(radius)
    }
}

/// `f(z)` and `f'(z)` in fixed point.
fn eval_fx(f: &IntPoly, z: &Fx, p: u32) -> (Fx, Fx) {
    let n = f.degree();
    let c = |k: usize| f.coeff(k) << p as usize;
    let mut val = Fx { re: c(n), im: BigInt::zero() };
    let mut der = Fx { re: BigInt::zero(), im: BigInt::zero() };
    for k in (0..n).rev() {
        let d = der.mul(z, p);
        der = Fx { re: d.re + &val.re, im: d.im + &val.im };
        let v = val.mul(z, p);
        val = Fx { re: v.re + c(k), im: v.im };
    }
    (val, der)
}

fn aberth_fixed(f: &IntPoly, z: &mut [Fx], p: u32) {
    let n = z.len();
    let one = Fx { re: BigInt::from(1) << p as usize, im: BigInt::zero() };
    let tol = BigInt::from(1) << (p / 2 + 8) as usize;
    let mut small_rounds = 0;
    for _ in 0..200 {
        let mut worst = BigInt::zero();
        for i in 0..n {
            let (val, der) = eval_fx(f, &z[i], p);
            let Some(newton) = val.div(&der, p) else {
                continue;
            };
            let mut s = Fx { re: BigInt::zero(), im: BigInt::zero() };
            for j in 0..n {
                if j != i {
                    if let Some(q) = one.div(&z[i].sub(&z[j]), p) {
                        s = Fx { re: s.re + q.re, im: s.im + q.im };
                    }
                }
            }
            let denom = one.sub(&newton.mul(&s, p));
            let Some(w) = newton.div(&denom, p) else {
                continue;
            };
            let size = w.l1();
            if size > worst {
                worst = size;
            }
            z[i] = z[i].sub(&w);
        }
        // Cubic convergence: once corrections drop below 2^-(p/2) one or two more rounds suffice.
        if worst <= tol {
            small_rounds += 1;
            if small_rounds >= 2 || worst.is_zero() {
                break;
            }
        }
    }
}

fn ceil_sqrt(q: &BigInt) -> BigInt {
    let s = q.sqrt();
    if &s * &s < *q {
        s + 1
    } else {
        s
    }
}

/// Exact certification of the approximations at precision `p`.
fn certify(f: &IntPoly, z: &[Fx], p: u32) -> Option<Vec<Ball>> {
    let n = z.len();
    let lc = f.leading();
    let pu = p as usize;
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        // F = 2^(pn) f(z_i), exactly.
        let (mut fr, mut fi) = (lc.clone(), BigInt::zero());
        for k in (0..n).rev() {
            let nr = &fr * &z[i].re - &fi * &z[i].im + (f.coeff(k) << (pu * (n - k)));
            let ni = &fr * &z[i].im + &fi * &z[i].re;
            fr = nr;
            fi = ni;
        }
        // P = 2^(p(n-1)) prod_{j != i} (z_i - z_j), exactly.
        let (mut pr, mut pi) = (BigInt::from(1), BigInt::zero());
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = z[i].sub(&z[j]);
            let nr = &pr * &d.re - &pi * &d.im;
            let ni = &pr * &d.im + &pi * &d.re;
            pr = nr;
            pi = ni;
        }
        let pp = &pr * &pr + &pi * &pi;
        if pp.is_zero() {
            return None;
        }
        // (2^p n |W_i|)^2 = n^2 |F|^2 / (lc^2 |P|^2).
        let num = BigInt::from(n * n) * (&fr * &fr + &fi * &fi);
        let den = &lc * &lc * pp;
        let q = (&num + &den - 1) / &den;
        radii.push(ceil_sqrt(&q).max(BigInt::from(1)));
    }
    let balls: Vec<Ball> = z
        .iter()
        .zip(radii)
        .map(|(x, rad)| Ball { re: x.re.clone(), im: x.im.clone(), rad, prec: p })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if !balls[i].disjoint(&balls[j]) {
                return None;
            }
        }
    }
    Some(balls)
}

/// Midpoints as `f64` pairs, for reporting.
pub fn approximate(set: &RootSet) -> Vec<(f64, f64)> {
    set.roots.iter().map(|b| (scaled_to_f64(&b.re, b.prec), scaled_to_f64(&b.im, b.prec))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let set = complex_roots(&IntPoly::from_i64(&[-2, 0, 1]), 100).unwrap();
        let a = approximate(&set);
        assert!((a[0].0 + 2f64.sqrt()).abs() < 1e-12);
        assert!((a[1].0 - 2f64.sqrt()).abs() < 1e-12);
        assert!(set.pairwise_disjoint());
        assert!(set.roots.iter().all(|b| b.radius_below(100)));
    }

    #[test]
    fn double_root_rejected() {
        assert_eq!(complex_roots(&IntPoly::from_i64(&[1, -2, 1]), 64).unwrap_err(), Error::NotSeparable);
    }

    #[test]
    fn cube_root_of_two() {
        let set = complex_roots(&IntPoly::from_i64(&[-2, 0, 0, 1]), 80).unwrap();
        let a = approximate(&set);
        let real: Vec<_> = a.iter().filter(|(_, im)| im.abs() < 1e-9).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].0 - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn large_coefficients_and_degree() {
        // (x - 1000)(x - 1001)(x^2 + 1)(x^3 - 5)
        let f = &(&IntPoly::from_i64(&[-1000, 1]) * &IntPoly::from_i64(&[-1001, 1]))
            * &(&IntPoly::from_i64(&[1, 0, 1]) * &IntPoly::from_i64(&[-5, 0, 0, 1]));
        let set = complex_roots(&f, 200).unwrap();
        assert_eq!(set.len(), 7);
        assert!(set.expansion_matches());
    }
}
