//! Fixed-point complex balls. A ball at precision `p` is
//! `(re + i*im) / 2^p` with radius `rad / 2^p`, where `rad` is an upper
//! bound on the distance to the represented value.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    pub re: BigInt,
    pub im: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

/// Outcome of integer recognition on a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerTest {
    /// The ball lies within `1/4` of exactly this integer.
    Integer(BigInt),
    /// The ball contains no integer.
    NotInteger,
    /// Too wide to decide.
    Unknown,
}

fn shr_floor(x: BigInt, p: u32) -> BigInt {
    x >> p as usize
}

fn shr_ceil(x: BigInt, p: u32) -> BigInt {
    let one = BigInt::one() << p as usize;
    (x + &one - 1) >> p as usize
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball { re: BigInt::zero(), im: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Ball { re: n << prec as usize, im: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    /// A dyadic point with zero radius.
    pub fn exact(re: BigInt, im: BigInt, prec: u32) -> Self {
        Ball { re, im, rad: BigInt::zero(), prec }
    }

    fn check(&self, o: &Ball) {
        debug_assert_eq!(self.prec, o.prec, "balls at different precision");
    }

    /// `|re| + |im|`, an upper bound on the modulus of the midpoint.
    fn l1(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }

    pub fn add(&self, o: &Ball) -> Ball {
        self.check(o);
        Ball { re: &self.re + &o.re, im: &self.im + &o.im, rad: &self.rad + &o.rad, prec: self.prec }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        self.check(o);
        Ball { re: &self.re - &o.re, im: &self.im - &o.im, rad: &self.rad + &o.rad, prec: self.prec }
    }

    pub fn neg(&self) -> Ball {
        Ball { re: -&self.re, im: -&self.im, rad: self.rad.clone(), prec: self.prec }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        self.check(o);
        let p = self.prec;
        let re = shr_floor(&self.re * &o.re - &self.im * &o.im, p);
        let im = shr_floor(&self.re * &o.im + &self.im * &o.re, p);
        let spread = self.l1() * &o.rad + o.l1() * &self.rad + &self.rad * &o.rad;
        // Floor rounding moves each part by less than one unit.
        let rad = shr_ceil(spread, p) + 2;
        Ball { re, im, rad, prec: p }
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball { re: &self.re * k, im: &self.im * k, rad: &self.rad * k.abs(), prec: self.prec }
    }

    pub fn conj(&self) -> Ball {
        Ball { re: self.re.clone(), im: -&self.im, rad: self.rad.clone(), prec: self.prec }
    }

    /// Radius as `log2` (for reporting), `-inf` when exact.
    pub fn radius_log2(&self) -> f64 {
        if self.rad.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.rad.bits() as f64 - self.prec as f64
    }

    /// Radius at most `2^-bits`.
    pub fn radius_below(&self, bits: u32) -> bool {
        if bits >= self.prec {
            return self.rad.is_zero();
        }
        self.rad <= BigInt::one() << (self.prec - bits) as usize
    }

    pub fn re_f64(&self) -> f64 {
        scaled_to_f64(&self.re, self.prec)
    }

    pub fn im_f64(&self) -> f64 {
        scaled_to_f64(&self.im, self.prec)
    }

    /// Modulus of the midpoint, approximately.
    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    /// Decides whether the ball holds an integer, with margin `1/4`.
    pub fn integer_test(&self) -> IntegerTest {
        let p = self.prec as usize;
        let unit = BigInt::one() << p;
        let quarter = BigInt::one() << p.saturating_sub(2);
        if self.im.abs() > self.rad {
            return IntegerTest::NotInteger;
        }
        let (q, r) = self.re.div_mod_floor(&unit);
        // Nearest multiple of 2^p.
        let (n, dist) = if &r * 2 <= unit { (q, r) } else { (q + 1, &unit - r) };
        if dist <= self.rad && self.rad < quarter {
            return IntegerTest::Integer(n);
        }
        // Interval [re - rad, re + rad] contains a multiple of 2^p?
        let lo = &self.re - &self.rad;
        let hi = &self.re + &self.rad;
        let first = lo.div_ceil(&unit);
        if first * &unit > hi {
            IntegerTest::NotInteger
        } else {
            IntegerTest::Unknown
        }
    }

    /// `|self - o| > rad_self + rad_o` is certain.
    pub fn disjoint(&self, o: &Ball) -> bool {
        self.check(o);
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let r = &self.rad + &o.rad;
        &dr * &dr + &di * &di > &r * &r
    }

    /// The same value at a different precision (radius rounded up).
    pub fn with_prec(&self, prec: u32) -> Ball {
        if prec >= self.prec {
            let s = (prec - self.prec) as usize;
            return Ball { re: &self.re << s, im: &self.im << s, rad: &self.rad << s, prec };
        }
        let s = self.prec - prec;
        Ball {
            re: shr_floor(self.re.clone(), s),
            im: shr_floor(self.im.clone(), s),
            rad: shr_ceil(self.rad.clone(), s) + 2,
            prec,
        }
    }
}

pub(crate) fn scaled_to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::NAN) * (-(prec as f64)).exp2();
    }
    let shift = bits - 60;
    let top = (x >> shift as usize).to_f64().unwrap_or(f64::NAN);
    top * (shift as f64 - prec as f64).exp2()
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12} {:+.12}i ± 2^{:.1})", self.re_f64(), self.im_f64(), self.radius_log2())
    }
}

/// `lc * prod (x - r_i)` with ball coefficients, constant first.
pub fn expand_roots(lc: &BigInt, roots: &[Ball], prec: u32) -> Vec<Ball> {
    let mut poly = vec![Ball::from_int(lc, prec)];
    for r in roots {
        let mut next = vec![Ball::zero(prec); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(r));
        }
        poly = next;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_tests() {
        let p = 64;
        let two = Ball::from_int(&BigInt::from(2), p);
        assert_eq!(two.integer_test(), IntegerTest::Integer(BigInt::from(2)));
        let half = Ball::exact(BigInt::one() << 63usize, BigInt::zero(), p);
        assert_eq!(half.integer_test(), IntegerTest::NotInteger);
        let wide = Ball { rad: BigInt::one() << 63usize, ..half.clone() };
        assert_eq!(wide.integer_test(), IntegerTest::Unknown);
        let neg = Ball::from_int(&BigInt::from(-3), p);
        assert_eq!(neg.integer_test(), IntegerTest::Integer(BigInt::from(-3)));
    }

    #[test]
    fn multiplication_tracks_error() {
        let p = 80;
        // 1/3 rounded, squared, should stay within its radius of 1/9.
        let third = Ball { re: (BigInt::one() << 80usize) / 3, im: BigInt::zero(), rad: BigInt::one(), prec: p };
        let sq = third.mul(&third);
        let ninth = (BigInt::one() << 80usize) / 9;
        assert!(BigInt::abs(&(&sq.re - &ninth)) <= sq.rad);
        let poly = expand_roots(&BigInt::one(), &[third.clone(), third.neg()], p);
        assert_eq!(poly.len(), 3);
        assert_eq!(poly[1].integer_test(), IntegerTest::Integer(BigInt::zero()));
    }
}
