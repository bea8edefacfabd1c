//! The scalar-field abstraction shared by every computation route: exact
//! rationals, rational functions in `q`, and complex doubles all implement
//! [`Field`], so each closed form is written once and runs in any backend.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::characters::CharacterValue;
use crate::poly::QPolynomial;
use crate::ratfunc::QRationalFunction;
use crate::rational::Rational;

pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Self, Output = Self>
    + Sub<Self, Output = Self>
    + Mul<Self, Output = Self>
    + Div<Self, Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(v: &Rational) -> Self;
    /// Embed a character value; None when the value does not live in this
    /// field (roots of unity in an exact field).
    fn from_character_value(v: &CharacterValue) -> Option<Self>;

    fn div_ref(&self, other: &Self) -> Self {
        self.clone() / other
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents go through the inverse.
    fn pow_i64(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow_u64(e as u64)
        } else {
            self.inv().pow_u64(e.unsigned_abs())
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }
    fn from_character_value(v: &CharacterValue) -> Option<Self> {
        match v {
            CharacterValue::Int(i) => Some(Self::from_i64(*i as i64)),
            CharacterValue::Root { .. } => None,
        }
    }
}

impl Field for QRationalFunction {
    fn zero() -> Self {
        QRationalFunction::from_poly(QPolynomial::zero())
    }
    fn one() -> Self {
        QRationalFunction::from_poly(QPolynomial::one())
    }
    fn is_zero(&self) -> bool {
        QRationalFunction::is_zero(self)
    }
    fn inv(&self) -> Self {
        QRationalFunction::inv(self)
    }
    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }
    fn from_rational(v: &Rational) -> Self {
        QRationalFunction::from_rational(v)
    }
    fn from_character_value(v: &CharacterValue) -> Option<Self> {
        match v {
            CharacterValue::Int(i) => Some(Self::from_i64(*i as i64)),
            CharacterValue::Root { .. } => None,
        }
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Self {
        Complex64::new(1.0, 0.0) / self
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_rational(v: &Rational) -> Self {
        Complex64::new(v.to_f64().expect("rational out of f64 range"), 0.0)
    }
    fn from_character_value(v: &CharacterValue) -> Option<Self> {
        Some(v.to_complex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pow_checks<F: Field>(x: F) {
        assert_eq!(x.pow_u64(0), F::one());
        assert_eq!(x.pow_u64(3), x.clone() * &x * &x);
        assert_eq!(x.pow_i64(-2), (x.clone() * &x).inv());
    }

    #[test]
    fn pow_across_backends() {
        pow_checks(rat(2, 3));
        pow_checks(QRationalFunction::indeterminate());
        // the float backend is only approximately associative
        let z = Complex64::new(0.3, 0.1);
        assert_eq!(z.pow_u64(0), Complex64::new(1.0, 0.0));
        assert!((z.pow_u64(3) - z * z * z).norm() < 1e-15);
        assert!((z.pow_i64(-2) - (z * z).inv()).norm() < 1e-12);
    }

    #[test]
    fn character_embedding() {
        let minus = CharacterValue::Int(-1);
        let root = CharacterValue::root(1, 4);
        assert_eq!(Rational::from_character_value(&minus), Some(rat(-1, 1)));
        assert_eq!(Rational::from_character_value(&root), None);
        assert!(QRationalFunction::from_character_value(&root).is_none());
        let z = Complex64::from_character_value(&root).unwrap();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn symbolic_field_ops_reduce() {
        let q = QRationalFunction::indeterminate();
        // (1 - q^3)/(1 - q) = 1 + q + q^2
        let num = QRationalFunction::one() - &q.pow_u64(3);
        let den = QRationalFunction::one() - &q;
        let bracket = num.div_ref(&den);
        assert_eq!(
            bracket,
            QRationalFunction::from_poly(QPolynomial::from_i64_coeffs(&[1, 1, 1]))
        );
    }
}
