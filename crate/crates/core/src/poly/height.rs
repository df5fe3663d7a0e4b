//! Algebraic integers, Weil heights and the classical Mahler inequalities
//! `H(p) <= 2^d M(p)` and `M(p) <= H(p) sqrt(d + 1)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::ball::{scaled_to_f64, Ball};
use super::factor::is_irreducible;
use super::roots::{complex_roots, RootSet};
use super::IntPoly;
use crate::error::{Error, Result};

const HEIGHT_BITS: u32 = 64;

/// A root of a monic irreducible integer polynomial, pinned by a ball.
#[derive(Debug, Clone)]
pub struct AlgebraicInteger {
    pub minimal_poly: IntPoly,
    pub embedding: Ball,
}

impl AlgebraicInteger {
    /// Checks that `p` is monic and irreducible and that `embedding` holds a
    /// root of `p`.
    pub fn new(minimal_poly: IntPoly, embedding: Ball) -> Result<Self> {
        if !minimal_poly.is_monic() || minimal_poly.degree() == 0 {
            return Err(Error::InvalidParameters(format!("{minimal_poly} is not monic of positive degree")));
        }
        if !is_irreducible(&minimal_poly)? {
            return Err(Error::InvalidParameters(format!("{minimal_poly} is reducible")));
        }
        let a = AlgebraicInteger { minimal_poly, embedding };
        if !a.embedding_holds_root() {
            return Err(Error::InvalidParameters("embedding does not contain a root".into()));
        }
        Ok(a)
    }

    /// The rational integer `n`.
    pub fn integer(n: &BigInt) -> Self {
        AlgebraicInteger { minimal_poly: IntPoly::linear(n), embedding: Ball::from_int(n, 64) }
    }

    /// The root of `p` nearest to `approx`, certified. `p` is trusted to be
    /// monic and irreducible.
    pub fn nearest_root(p: &IntPoly, approx: &Ball) -> Result<Self> {
        let set = complex_roots(p, HEIGHT_BITS.max(approx.prec.min(256)))?;
        let target = approx.with_prec(set.prec);
        let best = set
            .roots
            .iter()
            .min_by_key(|r| {
                let dr = &r.re - &target.re;
                let di = &r.im - &target.im;
                &dr * &dr + &di * &di
            })
            .expect("positive degree");
        Ok(AlgebraicInteger { minimal_poly: p.clone(), embedding: best.clone() })
    }

    pub fn degree(&self) -> usize {
        self.minimal_poly.degree()
    }

    /// The embedding ball meets at least one root of the minimal polynomial.
    pub fn embedding_holds_root(&self) -> bool {
        let Ok(set) = complex_roots(&self.minimal_poly, HEIGHT_BITS) else {
            return false;
        };
        let e = self.embedding.with_prec(set.prec);
        let touching = set.roots.iter().filter(|r| !r.disjoint(&e)).count();
        touching >= 1
    }
}

/// `M(p) = |lc| prod max(1, |alpha|)` as lower and upper bounds.
pub fn mahler_bounds(set: &RootSet) -> (f64, f64) {
    let lc = set.source.leading().to_f64().unwrap_or(f64::INFINITY).abs();
    let (mut lo, mut hi) = (lc, lc);
    for r in &set.roots {
        let m = r.abs_f64();
        let rad = scaled_to_f64(&r.rad, r.prec);
        let up = m * (1.0 + 1e-14) + rad;
        let down = (m * (1.0 - 1e-14) - rad).max(0.0);
        hi *= up.max(1.0);
        lo *= down.max(1.0);
    }
    (lo, hi)
}

pub fn mahler_measure(p: &IntPoly) -> Result<f64> {
    let set = complex_roots(p, HEIGHT_BITS)?;
    let (lo, hi) = mahler_bounds(&set);
    Ok(0.5 * (lo + hi))
}

/// `H_w(b) = M(p_b)^(1/d_b)`.
pub fn weil_height(b: &AlgebraicInteger) -> Result<f64> {
    Ok(mahler_measure(&b.minimal_poly)?.powf(1.0 / b.degree() as f64))
}

#[derive(Debug, Clone, Serialize)]
pub struct MahlerReport {
    pub degree: usize,
    pub mahler: f64,
    pub height: f64,
    /// `H <= 2^d M`.
    pub lower_ok: bool,
    /// `M <= max(H, 1) sqrt(d + 1)`, the sup norm counting the leading 1.
    pub upper_ok: bool,
    /// `2^d M_lo - H`.
    pub lower_margin: f64,
    /// `max(H, 1) sqrt(d + 1) - M_hi`.
    pub upper_margin: f64,
}

pub fn mahler_check_poly(p: &IntPoly) -> Result<MahlerReport> {
    let set = complex_roots(p, HEIGHT_BITS)?;
    let (lo, hi) = mahler_bounds(&set);
    let d = p.degree();
    let h = p.height().to_f64().unwrap_or(f64::INFINITY);
    let lower_margin = 2f64.powi(d as i32) * lo - h;
    let upper_margin = h.max(1.0) * ((d + 1) as f64).sqrt() - hi;
    Ok(MahlerReport {
        degree: d,
        mahler: 0.5 * (lo + hi),
        height: h,
        lower_ok: lower_margin >= 0.0,
        upper_ok: upper_margin >= 0.0,
        lower_margin,
        upper_margin,
    })
}

pub fn mahler_check(b: &AlgebraicInteger) -> Result<MahlerReport> {
    mahler_check_poly(&b.minimal_poly)
}

impl MahlerReport {
    pub fn passes(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// `1` as an algebraic integer.
pub fn one() -> AlgebraicInteger {
    AlgebraicInteger::integer(&BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn heights() {
        let f = p(&[-2, 0, 1]);
        let set = complex_roots(&f, 64).unwrap();
        let b = AlgebraicInteger::new(f, set.roots[1].clone()).unwrap();
        assert!((weil_height(&b).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!((weil_height(&one()).unwrap() - 1.0).abs() < 1e-12);
        let i = AlgebraicInteger::nearest_root(&p(&[1, 0, 1]), &Ball::from_int(&BigInt::from(0), 64)).unwrap();
        assert!((weil_height(&i).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mahler_examples() {
        for (c, m, h) in [(vec![-2, 0, 1], 2.0, 2.0), (vec![-1, 1], 1.0, 1.0), (vec![-2, 0, 0, 1], 2.0, 2.0)] {
            let r = mahler_check_poly(&p(&c)).unwrap();
            assert!((r.mahler - m).abs() < 1e-9);
            assert_eq!(r.height, h);
            assert!(r.passes());
        }
    }

    #[test]
    fn rejects_reducible_minimal_polynomial() {
        let f = p(&[-1, 0, 1]);
        assert!(AlgebraicInteger::new(f, Ball::from_int(&BigInt::from(1), 64)).is_err());
    }
}
