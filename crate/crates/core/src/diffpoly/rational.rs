//! Exact rational coefficients.
//!
//! [`Rational`] is `num_rational::BigRational`: always reduced, positive
//! denominator, canonical zero `0/1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact binary value of a finite double. Non-finite input maps to zero.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fallback for values whose numerator and denominator both overflow.
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift > 0 {
            q / Rational::from_integer(BigInt::one() << shift as usize)
        } else {
            q * Rational::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// `n/d` without parentheses, `n` for integers.
pub fn fmt_plain(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Coefficient as it appears in front of a product: bare positive integers,
/// parenthesized otherwise.
pub fn fmt_coefficient(q: &Rational) -> String {
    if q.is_integer() && !q.is_negative() {
        q.numer().to_string()
    } else {
        format!("({})", fmt_plain(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(3, -6), ratio(-1, 2));
        assert_eq!(*ratio(0, 5).denom(), BigInt::one());
        assert_eq!(fmt_coefficient(&ratio(-1, 6)), "(-1/6)");
        assert_eq!(fmt_coefficient(&int(4)), "4");
        assert_eq!(fmt_coefficient(&int(-4)), "(-4)");
    }

    #[test]
    fn float_round_trip_is_exact() {
        for x in [0.1, -3.75, 1e-300, 12345.678] {
            assert_eq!(to_f64(&from_f64(x)), x);
        }
        assert_eq!(from_f64(0.5), ratio(1, 2));
    }

    proptest! {
        #[test]
        fn addition_matches_cross_multiplication(
            a in -1_000_000_000i64..1_000_000_000,
            b in 1i64..1_000_000_000,
            c in -1_000_000_000i64..1_000_000_000,
            d in 1i64..1_000_000_000,
        ) {
            let sum = ratio(a, b) + ratio(c, d);
            let num = BigInt::from(a) * BigInt::from(d) + BigInt::from(c) * BigInt::from(b);
            let den = BigInt::from(b) * BigInt::from(d);
            prop_assert_eq!(sum.numer() * &den, num * sum.denom());
            prop_assert!(sum.denom().is_positive());
        }
    }
}
