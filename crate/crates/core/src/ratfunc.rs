//! Rational functions in the indeterminate `q`, kept in a canonical reduced
//! form so that equality is plain structural comparison and the limit q -> 1
//! is well defined whenever the reduced denominator does not vanish there.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::QPolynomial;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFuncError {
    /// The reduced denominator vanishes at q = 1, so the limit does not exist
    /// as a rational number.
    #[error("pole at q = 1: reduced denominator vanishes there")]
    PoleAtOne,
}

/// Quotient of two `q`-polynomials in canonical form: numerator and
/// denominator are coprime, jointly scaled to integer coefficients with
/// overall content 1, and the denominator has a positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QRationalFunction {
    num: QPolynomial,
    den: QPolynomial,
}

impl QRationalFunction {
    /// Build and canonicalize. Panics if `den` is the zero polynomial.
    pub fn new(num: QPolynomial, den: QPolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return QRationalFunction {
                num: QPolynomial::zero(),
                den: QPolynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (n, d) = if g.degree().map_or(false, |k| k > 0) {
            (num.div_exact(&g), den.div_exact(&g))
        } else {
            (num, den)
        };
        Self::from_coprime(n, d)
    }

    /// Joint integer/content/sign normalization of an already coprime pair.
    fn from_coprime(num: QPolynomial, den: QPolynomial) -> Self {
        if num.is_zero() {
            return QRationalFunction {
                num: QPolynomial::zero(),
                den: QPolynomial::one(),
            };
        }
        let mut l = BigInt::one();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            l = l.lcm(c.denom());
        }
        let ints = |p: &QPolynomial| -> Vec<BigInt> {
            p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect()
        };
        let ni = ints(&num);
        let di = ints(&den);
        let mut content = BigInt::zero();
        for c in ni.iter().chain(di.iter()) {
            if !c.is_zero() {
                content = content.gcd(c);
            }
            if content.is_one() {
                break;
            }
        }
        if di.last().unwrap().is_negative() {
            content = -content;
        }
        let back = |v: Vec<BigInt>| -> QPolynomial {
            QPolynomial::from_coeffs(v.into_iter().map(|c| Rational::from_integer(c / &content)).collect())
        };
        QRationalFunction {
            num: back(ni),
            den: back(di),
        }
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        QRationalFunction::new(p, QPolynomial::one())
    }

    pub fn from_rational(r: &Rational) -> Self {
        QRationalFunction::from_poly(QPolynomial::constant(r.clone()))
    }

    /// The rational function `q`.
    pub fn indeterminate() -> Self {
        QRationalFunction::from_poly(QPolynomial::indeterminate())
    }

    pub fn num(&self) -> &QPolynomial {
        &self.num
    }

    pub fn den(&self) -> &QPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is a constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::from_coprime(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation at a rational point; None if the denominator
    /// vanishes there.
    pub fn eval_rational(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    /// The exact limit as q -> 1 of the reduced form.
    pub fn limit_at_one(&self) -> Result<Rational, RatFuncError> {
        let one = Rational::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(RatFuncError::PoleAtOne);
        }
        Ok(self.num.eval(&one) / d)
    }
}

impl Add<&QRationalFunction> for QRationalFunction {
    type Output = QRationalFunction;
    fn add(self, rhs: &QRationalFunction) -> QRationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self;
        }
        let g = self.den.gcd(&rhs.den);
        if g.degree() == Some(0) {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            if num.is_zero() {
                return QRationalFunction::from_coprime(num, QPolynomial::one());
            }
            // gcd(num, den) = 1 follows from pairwise coprimality
            return QRationalFunction::from_coprime(num, den);
        }
        let ad = self.den.div_exact(&g);
        let bd = rhs.den.div_exact(&g);
        let t = &(&self.num * &bd) + &(&rhs.num * &ad);
        if t.is_zero() {
            return QRationalFunction::from_coprime(QPolynomial::zero(), QPolynomial::one());
        }
        let h = t.gcd(&g);
        let (t, g) = if h.degree().map_or(false, |k| k > 0) {
            (t.div_exact(&h), g.div_exact(&h))
        } else {
            (t, g)
        };
        let den = &(&ad * &g) * &bd;
        QRationalFunction::from_coprime(t, den)
    }
}

impl Sub<&QRationalFunction> for QRationalFunction {
    type Output = QRationalFunction;
    fn sub(self, rhs: &QRationalFunction) -> QRationalFunction {
        self + &(-rhs.clone())
    }
}

impl Mul<&QRationalFunction> for QRationalFunction {
    type Output = QRationalFunction;
    fn mul(self, rhs: &QRationalFunction) -> QRationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return QRationalFunction::from_coprime(QPolynomial::zero(), QPolynomial::one());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let reduce = |p: &QPolynomial, g: &QPolynomial| -> QPolynomial {
            if g.degree().map_or(false, |k| k > 0) {
                p.div_exact(g)
            } else {
                p.clone()
            }
        };
        let num = &reduce(&self.num, &g1) * &reduce(&rhs.num, &g2);
        let den = &reduce(&self.den, &g2) * &reduce(&rhs.den, &g1);
        QRationalFunction::from_coprime(num, den)
    }
}

impl Div<&QRationalFunction> for QRationalFunction {
    type Output = QRationalFunction;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QRationalFunction) -> QRationalFunction {
        self * &rhs.inv()
    }
}

impl Add for QRationalFunction {
    type Output = QRationalFunction;
    fn add(self, rhs: QRationalFunction) -> QRationalFunction {
        self + &rhs
    }
}

impl Sub for QRationalFunction {
    type Output = QRationalFunction;
    fn sub(self, rhs: QRationalFunction) -> QRationalFunction {
        self - &rhs
    }
}

impl Mul for QRationalFunction {
    type Output = QRationalFunction;
    fn mul(self, rhs: QRationalFunction) -> QRationalFunction {
        self * &rhs
    }
}

impl Div for QRationalFunction {
    type Output = QRationalFunction;
    fn div(self, rhs: QRationalFunction) -> QRationalFunction {
        self / &rhs
    }
}

impl Neg for QRationalFunction {
    type Output = QRationalFunction;
    fn neg(self) -> QRationalFunction {
        QRationalFunction {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl fmt::Display for QRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPolynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn qp(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64_coeffs(c)
    }

    #[test]
    fn canonical_reduction() {
        // (q^2 - 1)/(q - 1) reduces to q + 1
        let f = QRationalFunction::new(qp(&[-1, 0, 1]), qp(&[-1, 1]));
        assert_eq!(f, QRationalFunction::from_poly(qp(&[1, 1])));
        assert!(f.is_polynomial());
    }

    #[test]
    fn sign_and_content_normalization() {
        // 2/( -2q - 2 ) -> (-1)/(1 + q)
        let f = QRationalFunction::new(qp(&[2]), qp(&[-2, -2]));
        assert_eq!(f.num(), &qp(&[-1]));
        assert_eq!(f.den(), &qp(&[1, 1]));
        assert_eq!(f.to_string(), "(-1)/(1 + q)");
    }

    #[test]
    fn arithmetic_matches_naive() {
        let a = QRationalFunction::new(qp(&[1]), qp(&[1, 1]));
        let b = QRationalFunction::new(qp(&[0, 1]), qp(&[-1, 1]));
        let sum = a.clone() + &b;
        // 1/(1+q) + q/(q-1) = (q-1 + q(1+q)) / ((1+q)(q-1)) = (q^2+2q-1)/(q^2-1)
        assert_eq!(sum, QRationalFunction::new(qp(&[-1, 2, 1]), qp(&[-1, 0, 1])));
        let prod = a.clone() * &b;
        assert_eq!(prod, QRationalFunction::new(qp(&[0, 1]), qp(&[-1, 0, 1])));
        let quot = a.clone() / &b;
        assert_eq!(quot, QRationalFunction::new(qp(&[-1, 1]), qp(&[0, 1, 1])));
        let diff = a.clone() - &a;
        assert!(diff.is_zero());
        assert_eq!(diff.den(), &QPolynomial::one());
    }

    #[test]
    fn limit_at_one() {
        // (1 - q^3)/(1 - q) -> 3
        let f = QRationalFunction::new(qp(&[1, 0, 0, -1]), qp(&[1, -1]));
        assert_eq!(f.limit_at_one().unwrap(), rat_int(3));
        // -3(1-q)/((1+q)(1+q^2)) -> 0
        let g = QRationalFunction::new(qp(&[-3, 3]), qp(&[1, 1, 1, 1]));
        assert_eq!(g.limit_at_one().unwrap(), rat_int(0));
        // 1/(1-q) has a pole
        let h = QRationalFunction::new(qp(&[1]), qp(&[1, -1]));
        assert_eq!(h.limit_at_one(), Err(RatFuncError::PoleAtOne));
    }

    #[test]
    fn eval_rational_matches_components() {
        let f = QRationalFunction::new(qp(&[-1]), qp(&[1, 1]));
        assert_eq!(f.eval_rational(&rat(1, 2)).unwrap(), rat(-2, 3));
        let g = QRationalFunction::new(qp(&[1]), qp(&[0, 1]));
        assert_eq!(g.eval_rational(&rat_int(0)), None);
    }

    #[test]
    fn inverse_round_trips() {
        let f = QRationalFunction::new(qp(&[1, 2]), qp(&[3, 0, 1]));
        let back = f.inv().inv();
        assert_eq!(back, f);
    }
}
