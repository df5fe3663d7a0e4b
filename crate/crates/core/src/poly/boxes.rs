//! Boxes `B_n(H)` of monic integer polynomials of height at most `H`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::IntPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoxMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// `floor(H)` for a non-negative height.
pub fn height_floor(h: f64) -> Result<i64> {
    if !(h >= 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameters(format!("height must be finite and >= 0, got {h}")));
    }
    Ok(h.floor() as i64)
}

/// `(2 floor(H) + 1)^n`, saturating at `u128::MAX`.
pub fn box_count(n: usize, h: f64) -> Result<u128> {
    let side = 2 * height_floor(h)? as u128 + 1;
    Ok((0..n).try_fold(1u128, |acc, _| acc.checked_mul(side)).unwrap_or(u128::MAX))
}

/// Non-leading coefficient vectors `(a_0, .., a_{n-1})`.
pub enum BoxCoeffs {
    Exhaustive { h: i64, next: Option<Vec<i64>> },
    Sample { h: i64, n: usize, left: u64, rng: ChaCha8Rng },
}

impl Iterator for BoxCoeffs {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        match self {
            BoxCoeffs::Exhaustive { h, next } => {
                let cur = next.take()?;
                let mut succ = cur.clone();
                // Lexicographic: the last coordinate varies fastest.
                let mut i = succ.len();
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if succ[i] < *h {
                        succ[i] += 1;
                        *next = Some(succ);
                        break;
                    }
                    succ[i] = -*h;
                }
                Some(cur)
            }
            BoxCoeffs::Sample { h, n, left, rng } => {
                if *left == 0 {
                    return None;
                }
                *left -= 1;
                Some((0..*n).map(|_| rng.gen_range(-*h..=*h)).collect())
            }
        }
    }
}

/// Coefficient vectors of `B_n(H)`; exhaustive mode is lexicographic from
/// `(-H, .., -H)`, sampling draws uniformly with replacement from `seed`.
pub fn box_coeffs(n: usize, h: f64, mode: BoxMode, budget: u128) -> Result<BoxCoeffs> {
    let hf = height_floor(h)?;
    match mode {
        BoxMode::Exhaustive => {
            let count = box_count(n, h)?;
            if count > budget {
                return Err(Error::BudgetExceeded { count, budget });
            }
            Ok(BoxCoeffs::Exhaustive { h: hf, next: Some(vec![-hf; n]) })
        }
        BoxMode::Sample { count, seed } => {
            if count as u128 > budget {
                return Err(Error::BudgetExceeded { count: count as u128, budget });
            }
            Ok(BoxCoeffs::Sample { h: hf, n, left: count, rng: ChaCha8Rng::seed_from_u64(seed) })
        }
    }
}

/// Monic polynomial `x^n + a_{n-1} x^{n-1} + .. + a_0`.
pub fn monic_from(coeffs: &[i64]) -> IntPoly {
    let mut c = coeffs.to_vec();
    c.push(1);
    IntPoly::from_i64(&c)
}

pub fn box_iterate(n: usize, h: f64, mode: BoxMode, budget: u128) -> Result<impl Iterator<Item = IntPoly>> {
    Ok(box_coeffs(n, h, mode, budget)?.map(|c| monic_from(&c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(box_count(3, 2.0).unwrap(), 125);
        assert_eq!(box_count(1, 0.0).unwrap(), 1);
        assert_eq!(box_count(6, 1.0).unwrap(), 729);
        assert_eq!(box_count(2, 1.7).unwrap(), 9);
    }

    #[test]
    fn exhaustive_order_and_size() {
        let all: Vec<IntPoly> = box_iterate(2, 1.0, BoxMode::Exhaustive, 100).unwrap().collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 9);
        let zero: Vec<IntPoly> = box_iterate(3, 0.0, BoxMode::Exhaustive, 100).unwrap().collect();
        assert_eq!(zero, vec![IntPoly::from_i64(&[0, 0, 0, 1])]);
        assert!(box_iterate(3, 5.0, BoxMode::Exhaustive, 100).is_err());
    }

    #[test]
    fn sampling_replays() {
        let mode = BoxMode::Sample { count: 5, seed: 7 };
        let a: Vec<IntPoly> = box_iterate(2, 1.0, mode, 100).unwrap().collect();
        let b: Vec<IntPoly> = box_iterate(2, 1.0, mode, 100).unwrap().collect();
        assert_eq!(a.len(), 5);
        assert_eq!(a, b);
    }
}
