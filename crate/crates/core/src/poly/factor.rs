//! Factorization of squarefree integer polynomials.
//!
//! Possible factor degrees are first cut down by factorizations modulo
//! several primes. Remaining candidates are products of root subsets (closed
//! under complex conjugation), recognized as integer polynomials and
//! confirmed by exact division. Factors are found in increasing degree, so
//! each one is irreducible.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ball::{expand_roots, Ball, IntegerTest};
use super::modp::{primes_in, ModPoly};
use super::roots::complex_roots;
use super::IntPoly;
use crate::error::{Error, Result};

const SCREEN_PRIMES: usize = 12;

/// Factor degrees compatible with every screened prime, as subset sums.
fn allowed_degrees(f: &IntPoly) -> BTreeSet<usize> {
    let n = f.degree();
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let lead = f.leading();
    let mut used = 0;
    for p in primes_in(2, 400) {
        if used >= SCREEN_PRIMES {
            break;
        }
        if (&lead % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = ModPoly::from_int(f, p);
        if fp.degree() != n || !fp.is_squarefree() {
            continue;
        }
        used += 1;
        let mut sums = BTreeSet::from([0usize]);
        for d in fp.factor_degrees() {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        allowed = allowed.intersection(&sums).copied().collect();
        if allowed.len() == 2 {
            break;
        }
    }
    allowed
}

/// Some prime gives an irreducible reduction of the same degree.
pub fn irreducible_mod_some_prime(f: &IntPoly) -> bool {
    let n = f.degree();
    let lead = f.leading();
    primes_in(2, 400).into_iter().take(40).any(|p| {
        if (&lead % BigInt::from(p)).is_zero() {
            return false;
        }
        let fp = ModPoly::from_int(f, p);
        fp.degree() == n && fp.is_squarefree() && fp.factor_degrees() == vec![n]
    })
}

/// Irreducible factors of a squarefree `f`, primitive with positive leading
/// coefficient, sorted by degree then coefficients. The content of `f` is
/// dropped.
pub fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    if f.is_zero() {
        return Err(Error::InvalidParameters("cannot factor zero".into()));
    }
    let f = f.primitive_part();
    if f.degree() == 0 {
        return Ok(vec![]);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSeparable);
    }
    let mut out = Vec::new();
    let mut rest = f.clone();
    // x divides f.
    if rest.coeff(0).is_zero() {
        out.push(IntPoly::from_i64(&[0, 1]));
        rest = rest.exact_div(&IntPoly::from_i64(&[0, 1])).expect("x divides");
    }
    if rest.degree() > 0 {
        split(&rest, &mut out)?;
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn split(f: &IntPoly, out: &mut Vec<IntPoly>) -> Result<()> {
    let n = f.degree();
    if n == 1 {
        out.push(f.primitive_part());
        return Ok(());
    }
    let allowed = allowed_degrees(f);
    let candidates: Vec<usize> = allowed.iter().copied().filter(|&d| d >= 1 && 2 * d <= n).collect();
    if candidates.is_empty() {
        out.push(f.primitive_part());
        return Ok(());
    }
    let maxabs = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let lead_bits = f.leading().abs().bits() as u32;
    let bound_bits = (maxabs.bits() as u32).saturating_sub(lead_bits) + 2;
    let mut bits = 40 + n as u32 * (bound_bits + 2) + lead_bits;
    for _ in 0..6 {
        match try_split(f, &candidates, bits)? {
            Split::Found(g, h) => {
                out.push(g);
                return split(&h, out);
            }
            Split::Irreducible => {
                out.push(f.primitive_part());
                return Ok(());
            }
            Split::NeedPrecision => bits *= 2,
        }
    }
    Err(Error::PrecisionExhausted(bits))
}

enum Split {
    Found(IntPoly, IntPoly),
    Irreducible,
    NeedPrecision,
}

fn try_split(f: &IntPoly, degrees: &[usize], bits: u32) -> Result<Split> {
    let set = complex_roots(f, bits)?;
    let n = set.len();
    let prec = set.prec;
    // Pair each root with its conjugate.
    let conj: Vec<usize> = (0..n)
        .map(|i| {
            let c = set.roots[i].conj();
            (0..n)
                .min_by(|&a, &b| {
                    let da = dist2(&set.roots[a], &c);
                    let db = dist2(&set.roots[b], &c);
                    da.cmp(&db)
                })
                .unwrap()
        })
        .collect();
    let lead = f.leading();
    let mut unsure = false;
    for &d in degrees {
        let mut chosen = Vec::new();
        let mut found = None;
        subsets(n, d, 0, &mut chosen, &mut |s: &[usize]| {
            if found.is_some() {
                return;
            }
            if s.iter().any(|&i| !s.contains(&conj[i])) {
                return;
            }
            let roots: Vec<Ball> = s.iter().map(|&i| set.roots[i].clone()).collect();
            // lead * g has integer coefficients for a factor g of f (Gauss).
            let coeffs = expand_roots(&lead, &roots, prec);
            let mut ints = Vec::with_capacity(coeffs.len());
            for c in &coeffs {
                match c.integer_test() {
                    IntegerTest::Integer(v) => ints.push(v),
                    IntegerTest::NotInteger => return,
                    IntegerTest::Unknown => {
                        unsure = true;
                        return;
                    }
                }
            }
            let g = IntPoly::new(ints).primitive_part();
            if let Some(h) = f.exact_div(&g) {
                found = Some((g, h));
            }
        });
        if let Some((g, h)) = found {
            return Ok(Split::Found(g, h));
        }
        if unsure {
            return Ok(Split::NeedPrecision);
        }
    }
    Ok(Split::Irreducible)
}

fn dist2(a: &Ball, b: &Ball) -> BigInt {
    let dr = &a.re - &b.re;
    let di = &a.im - &b.im;
    &dr * &dr + &di * &di
}

fn subsets<F: FnMut(&[usize])>(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut F) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, k, i + 1, cur, visit);
        cur.pop();
    }
}

pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    if f.degree() == 0 {
        return Ok(false);
    }
    if f.content() != BigInt::from(1) && f.content() != BigInt::from(-1) && f.degree() > 0 {
        return Ok(false);
    }
    if irreducible_mod_some_prime(f) {
        return Ok(true);
    }
    Ok(factor_squarefree(f)?.len() == 1)
}

/// Integer root test for monic `i64` polynomials of small degree: scans the
/// divisors of the constant term.
pub fn has_integer_root_i64(c: &[i64]) -> bool {
    // c: a_0 .. a_{n-1}, monic of degree c.len().
    let a0 = c[0];
    if a0 == 0 {
        return true;
    }
    let eval = |x: i64| -> i128 {
        let mut acc: i128 = 1;
        for &a in c.iter().rev() {
            acc = acc * x as i128 + a as i128;
        }
        acc
    };
    let m = a0.unsigned_abs();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            for q in [d, m / d] {
                let q = q as i64;
                if eval(q) == 0 || eval(-q) == 0 {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}
