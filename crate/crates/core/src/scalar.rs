//! Dynamic scalar values and the q-parameter. A [`Scalar`] holds a value in
//! one of the three backends; arithmetic between mismatched backends is an
//! error rather than a silent coercion.

use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::field::Field;
use crate::ratfunc::QRationalFunction;
use crate::rational::{abs_less_than_one, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Backend {
    Exact,
    Symbolic,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Symbolic => write!(f, "symbolic"),
            Backend::Float => write!(f, "float"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ScalarError {
    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(Backend, Backend),
}

/// A value in exactly one backend. Exact and symbolic arithmetic never
/// rounds; the complex backend carries no error bound (callers apply
/// tolerances).
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Rational(Rational),
    Symbolic(QRationalFunction),
    Complex(Complex64),
}

macro_rules! scalar_binop {
    ($name:ident, $op:tt) => {
        pub fn $name(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
            match (self, rhs) {
                (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a $op b)),
                (Scalar::Symbolic(a), Scalar::Symbolic(b)) => Ok(Scalar::Symbolic(a.clone() $op b)),
                (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a $op b)),
                _ => Err(ScalarError::BackendMismatch(self.backend(), rhs.backend())),
            }
        }
    };
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Rational(_) => Backend::Exact,
            Scalar::Symbolic(_) => Backend::Symbolic,
            Scalar::Complex(_) => Backend::Float,
        }
    }

    pub fn zero(backend: Backend) -> Scalar {
        match backend {
            Backend::Exact => Scalar::Rational(<Rational as Field>::zero()),
            Backend::Symbolic => Scalar::Symbolic(<QRationalFunction as Field>::zero()),
            Backend::Float => Scalar::Complex(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(backend: Backend) -> Scalar {
        match backend {
            Backend::Exact => Scalar::Rational(<Rational as Field>::one()),
            Backend::Symbolic => Scalar::Symbolic(<QRationalFunction as Field>::one()),
            Backend::Float => Scalar::Complex(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn from_rational_in(v: &Rational, backend: Backend) -> Scalar {
        match backend {
            Backend::Exact => Scalar::Rational(v.clone()),
            Backend::Symbolic => Scalar::Symbolic(QRationalFunction::from_rational(v)),
            Backend::Float => Scalar::Complex(Complex64::from_rational(v)),
        }
    }

    scalar_binop!(add, +);
    scalar_binop!(sub, -);
    scalar_binop!(mul, *);
    scalar_binop!(div, /);

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Symbolic(a) => Scalar::Symbolic(-a.clone()),
            Scalar::Complex(a) => Scalar::Complex(-a),
        }
    }

    pub fn pow_i64(&self, e: i64) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.pow_i64(e)),
            Scalar::Symbolic(a) => Scalar::Symbolic(a.pow_i64(e)),
            Scalar::Complex(a) => Scalar::Complex(a.pow_i64(e)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(a) => Field::is_zero(a),
            Scalar::Symbolic(a) => a.is_zero(),
            Scalar::Complex(a) => Field::is_zero(a),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_symbolic(&self) -> Option<&QRationalFunction> {
        match self {
            Scalar::Symbolic(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match self {
            Scalar::Complex(a) => Some(*a),
            _ => None,
        }
    }

    /// Numeric image for tolerance checks; None for symbolic values.
    pub fn to_complex_lossy(&self) -> Option<Complex64> {
        match self {
            Scalar::Rational(a) => a.to_f64().map(|x| Complex64::new(x, 0.0)),
            Scalar::Symbolic(_) => None,
            Scalar::Complex(a) => Some(*a),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(a) => write!(f, "{}", a),
            Scalar::Symbolic(a) => write!(f, "{}", a),
            Scalar::Complex(a) => write!(f, "{}", a),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum QParamError {
    #[error("q must be nonzero")]
    Zero,
    #[error("q must satisfy |q| < 1, got {0}")]
    OutOfRange(String),
    #[error("q must be finite")]
    NotFinite,
}

/// The deformation parameter: a rational with 0 < |q| < 1, the symbolic
/// indeterminate, or a complex double with 0 < |q| < 1.
#[derive(Clone, PartialEq, Debug)]
pub enum QParam {
    Rational(Rational),
    Symbolic,
    Complex(Complex64),
}

impl QParam {
    pub fn rational(q: Rational) -> Result<Self, QParamError> {
        if Field::is_zero(&q) {
            return Err(QParamError::Zero);
        }
        if !abs_less_than_one(&q) {
            return Err(QParamError::OutOfRange(q.to_string()));
        }
        Ok(QParam::Rational(q))
    }

    pub fn symbolic() -> Self {
        QParam::Symbolic
    }

    pub fn complex(q: Complex64) -> Result<Self, QParamError> {
        if !q.re.is_finite() || !q.im.is_finite() {
            return Err(QParamError::NotFinite);
        }
        if q.norm() == 0.0 {
            return Err(QParamError::Zero);
        }
        if q.norm() >= 1.0 {
            return Err(QParamError::OutOfRange(q.to_string()));
        }
        Ok(QParam::Complex(q))
    }

    pub fn backend(&self) -> Backend {
        match self {
            QParam::Rational(_) => Backend::Exact,
            QParam::Symbolic => Backend::Symbolic,
            QParam::Complex(_) => Backend::Float,
        }
    }

    /// The parameter as a display string (`q` for the indeterminate).
    pub fn label(&self) -> String {
        match self {
            QParam::Rational(v) => v.to_string(),
            QParam::Symbolic => "q".to_string(),
            QParam::Complex(v) => v.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn qparam_validation() {
        assert!(QParam::rational(rat(1, 2)).is_ok());
        assert!(QParam::rational(rat(-1, 3)).is_ok());
        assert_eq!(QParam::rational(rat_int(0)).unwrap_err(), QParamError::Zero);
        assert!(matches!(
            QParam::rational(rat_int(1)).unwrap_err(),
            QParamError::OutOfRange(_)
        ));
        assert!(matches!(
            QParam::rational(rat(3, 2)).unwrap_err(),
            QParamError::OutOfRange(_)
        ));
        assert!(QParam::complex(Complex64::new(0.3, 0.4)).is_ok());
        assert!(matches!(
            QParam::complex(Complex64::new(0.8, 0.8)).unwrap_err(),
            QParamError::OutOfRange(_)
        ));
    }

    #[test]
    fn mixing_backends_is_an_error() {
        let a = Scalar::Rational(rat(1, 2));
        let b = Scalar::Complex(Complex64::new(0.5, 0.0));
        assert_eq!(
            a.add(&b).unwrap_err(),
            ScalarError::BackendMismatch(Backend::Exact, Backend::Float)
        );
        assert_eq!(a.add(&a).unwrap(), Scalar::Rational(rat_int(1)));
    }

    #[test]
    fn scalar_arithmetic_and_pow() {
        let a = Scalar::Rational(rat(2, 3));
        assert_eq!(a.pow_i64(-1), Scalar::Rational(rat(3, 2)));
        let s = Scalar::Symbolic(QRationalFunction::indeterminate());
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq, s.pow_i64(2));
    }
}
