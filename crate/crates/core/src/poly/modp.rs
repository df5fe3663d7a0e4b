//! Polynomials over `F_p` for small primes, used for Frobenius cycle types.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::IntPoly;

/// Coefficients constant first, trimmed, reduced into `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

fn trim(mut c: Vec<u64>) -> Vec<u64> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl ModPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        ModPoly { p, c: trim(c.into_iter().map(|x| x % p).collect()) }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|a| {
                let r = a % &pb;
                let r = if r < BigInt::from(0) { r + &pb } else { r };
                r.to_u64().expect("reduced residue")
            })
            .collect();
        Self::new(p, c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn x(p: u64) -> Self {
        ModPoly { p, c: vec![0, 1] }
    }

    fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = inv_mod(l, self.p);
                ModPoly { p: self.p, c: self.c.iter().map(|&x| x * inv % self.p).collect() }
            }
        }
    }

    fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        ModPoly { p, c: trim(c) }
    }

    fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly { p: self.p, c: vec![] };
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        ModPoly { p, c: trim(c) }
    }

    fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let p = self.p;
        let n = d.degree();
        if self.c.len() < d.c.len() {
            return (ModPoly { p, c: vec![] }, self.clone());
        }
        let inv = inv_mod(*d.c.last().expect("nonzero divisor"), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len() - n];
        for k in (0..q.len()).rev() {
            let coef = r[k + n] * inv % p;
            q[k] = coef;
            if coef != 0 {
                for (i, &di) in d.c.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - coef * di % p) % p;
                }
            }
        }
        r.truncate(n);
        (ModPoly { p, c: trim(q) }, ModPoly { p, c: trim(r) })
    }

    fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> ModPoly {
        let p = self.p;
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| a * (i as u64 % p) % p).collect();
        ModPoly { p, c: trim(c) }
    }

    /// `base^e mod m`.
    fn pow_rem(base: &ModPoly, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut result = ModPoly { p: m.p, c: vec![1] }.rem(m);
        let mut b = base.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Degrees of the irreducible factors of a squarefree polynomial,
    /// sorted decreasing, by distinct-degree factorization.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.clone();
        let mut d = 0;
        while f.degree() > 0 {
            d += 1;
            if 2 * d > f.degree() {
                out.push(f.degree());
                break;
            }
            h = Self::pow_rem(&h, p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                for _ in 0..g.degree() / d {
                    out.push(d);
                }
                f = f.div_rem(&g).0.monic();
                h = h.rem(&f);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// Primes `lo <= p < hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..hi).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// Frobenius cycle types of a monic `f` at the first `count` primes not
/// dividing its discriminant.
pub fn frobenius_cycle_types(f: &IntPoly, count: usize) -> Vec<(u64, Vec<usize>)> {
    let mut out = Vec::new();
    let mut lo = 2;
    while out.len() < count {
        for p in primes_in(lo, lo + 500) {
            if out.len() >= count {
                break;
            }
            let fp = ModPoly::from_int(f, p);
            if fp.degree() != f.degree() || !fp.is_squarefree() {
                continue;
            }
            let mut t = fp.factor_degrees();
            t.sort_unstable_by(|a, b| b.cmp(a));
            out.push((p, t));
        }
        lo += 500;
        if lo > 1_000_000 {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_degrees_small() {
        // x^2 + 1 splits mod 5, stays irreducible mod 7.
        let f = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(ModPoly::from_int(&f, 5).factor_degrees(), vec![1, 1]);
        assert_eq!(ModPoly::from_int(&f, 7).factor_degrees(), vec![2]);
        // x^3 - 2 mod 7: 2 is not a cube mod 7.
        let g = IntPoly::from_i64(&[-2, 0, 0, 1]);
        assert_eq!(ModPoly::from_int(&g, 7).factor_degrees(), vec![3]);
        // mod 5 cubing is a bijection, so one root and a quadratic.
        assert_eq!(ModPoly::from_int(&g, 5).factor_degrees(), vec![2, 1]);
    }

    #[test]
    fn cyclotomic_frobenius() {
        let f = IntPoly::from_i64(&[1, 1, 1, 1, 1]);
        for (p, t) in frobenius_cycle_types(&f, 12) {
            let order = (1..=4).find(|k| (p.pow(*k as u32) - 1) % 5 == 0).unwrap();
            assert_eq!(t, vec![order; 4 / order]);
        }
    }
}
