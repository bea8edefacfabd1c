//! Exact rational scalars and the small integer helpers used throughout the
//! crate. Everything here is arbitrary precision; no rounding ever happens.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator (both enforced by `num_rational`).
///
/// Serialized everywhere as the decimal string `p/q` in lowest terms, or just
/// `p` when the denominator is 1; that is exactly what `Display` produces.
pub type Rational = BigRational;

/// Shorthand for the rational n/d.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Ordinary binomial coefficient C(n, k), zero for k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Lossy conversion used only when handing exact values to the float oracle.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// True if the rational is an integer and |r| is small enough for i64.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// |r| < 1, used by q-parameter validation.
pub fn abs_less_than_one(r: &Rational) -> bool {
    r.numer().abs() < r.denom().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_lowest_terms_slash_format() {
        assert_eq!(rat(2, 4).to_string(), "1/2");
        assert_eq!(rat(-6, 9).to_string(), "-2/3");
        assert_eq!(rat(8, 4).to_string(), "2");
        assert_eq!(rat_int(0).to_string(), "0");
        assert_eq!(rat(5, -10).to_string(), "-1/2");
    }

    #[test]
    fn parse_round_trips() {
        let v: Rational = "-155/12".parse().unwrap();
        assert_eq!(v, rat(-155, 12));
        let w: Rational = "2073".parse().unwrap();
        assert_eq!(w, rat_int(2073));
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
