//! Turning ball coefficients into exact integers.

use super::ball::{Ball, IntegerTest};
use super::IntPoly;

/// The integer polynomial whose coefficients the balls pin down, or `None`
/// when some ball is not within `1/4` of a unique integer.
pub fn integer_recognize(values: &[Ball]) -> Option<IntPoly> {
    let coeffs = values
        .iter()
        .map(|b| match b.integer_test() {
            IntegerTest::Integer(n) => Some(n),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()?;
    Some(IntPoly::new(coeffs))
}

/// Whether some ball certainly excludes every integer.
pub fn certainly_not_integral(values: &[Ball]) -> bool {
    values.iter().any(|b| b.integer_test() == IntegerTest::NotInteger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ball::expand_roots;
    use crate::poly::roots::complex_roots;
    use num_bigint::BigInt;

    fn ball(v: f64, r: f64) -> Ball {
        let p = 60;
        let s = 2f64.powi(60);
        Ball { re: BigInt::from((v * s) as i128), im: BigInt::from(0), rad: BigInt::from((r * s) as i128), prec: p }
    }

    #[test]
    fn recognizes_near_integers() {
        let got = integer_recognize(&[ball(2.0000001, 1e-6), ball(-0.0000002, 1e-6)]).unwrap();
        assert_eq!(got, IntPoly::from_i64(&[2]));
        assert_eq!(got.coeffs().len(), 1);
        assert!(integer_recognize(&[ball(0.5, 0.3)]).is_none());
    }

    #[test]
    fn round_trip_cube_root() {
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let set = complex_roots(&f, 80).unwrap();
        let coeffs = expand_roots(&BigInt::from(1), &set.roots, set.prec);
        assert_eq!(integer_recognize(&coeffs).unwrap(), f);
    }
}
