//! Dense univariate polynomials in the indeterminate `q` with exact rational
//! coefficients. This is the coefficient carrier behind [`crate::ratfunc`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Polynomial in `q`, stored dense: index = power of `q`, trailing zero
/// coefficients trimmed. The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPolynomial::from_coeffs(vec![c])
    }

    /// The polynomial `q` itself.
    pub fn indeterminate() -> Self {
        QPolynomial::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// c * q^degree.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    /// Convenience for tests: integer coefficients, index = power.
    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        QPolynomial::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of q^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by q^k.
    pub fn mul_qpow(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    /// Euclidean division over the rationals: self = quot * divisor + rem,
    /// deg rem < deg divisor. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (QPolynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let lead = divisor.coeffs.last().unwrap().clone();
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] / &lead;
            quot[i - dd] = factor.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let t = c * &factor;
                rem[i - dd + j] = &rem[i - dd + j] - t;
            }
        }
        (QPolynomial::from_coeffs(quot), QPolynomial::from_coeffs(rem))
    }

    /// Division known to be exact; asserts the remainder vanishes.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Greatest common divisor via a primitive pseudo-remainder sequence.
    /// The result has integer coefficients, content 1 and a positive leading
    /// coefficient; any nonzero constant gcd is normalized to 1.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return normalize_int(to_int_primitive(other));
        }
        if other.is_zero() {
            return normalize_int(to_int_primitive(self));
        }
        let mut a = to_int_primitive(self);
        let mut b = to_int_primitive(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                // constant divides everything: gcd is a unit
                return QPolynomial::one();
            }
            let r = int_pseudo_rem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        normalize_int(a)
    }
}

fn normalize_int(v: Vec<BigInt>) -> QPolynomial {
    if v.is_empty() {
        return QPolynomial::zero();
    }
    if v.len() == 1 {
        return QPolynomial::one();
    }
    QPolynomial::from_coeffs(v.into_iter().map(Rational::from_integer).collect())
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn int_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if !c.is_zero() {
            g = g.gcd(c);
        }
        if g.is_one() {
            break;
        }
    }
    g
}

/// Strip the integer content and force a positive leading coefficient.
fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = int_trim(v);
    if v.is_empty() {
        return v;
    }
    let mut c = int_content(&v);
    if v.last().unwrap().is_negative() {
        c = -c;
    }
    for x in v.iter_mut() {
        *x = &*x / &c;
    }
    v
}

/// Integer-coefficient primitive image of a rational polynomial.
fn to_int_primitive(p: &QPolynomial) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    int_primitive(ints)
}

/// Pseudo-remainder of a by b (both nonconstant, b nonzero): the remainder of
/// lc(b)^k * a divided by b, computed without fractions.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x = &*x * &lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - c * &lr;
        }
        r = int_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

impl Add<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        QPolynomial::from_coeffs(out)
    }
}

impl Sub<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        QPolynomial::from_coeffs(out)
    }
}

impl Mul<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        QPolynomial::from_coeffs(out)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", k)?;
                }
            }
        }
        Ok(())
    }
}
