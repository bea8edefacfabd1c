//! Truncated formal power series in `t`, the engine behind every generating
//! function in [`crate::classical`]. Arithmetic is exact through the
//! truncation order; division requires a unit constant term.

use crate::field::Field;
use crate::rational::{factorial, Rational};

/// Power series sum_{k=0}^{N} c_k t^k, truncated at order N = coeffs.len()-1.
#[derive(Clone, PartialEq, Debug)]
pub struct PowerSeries<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> PowerSeries<F> {
    pub fn with_order(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![F::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        PowerSeries { coeffs }
    }

    /// The constant series 1 at the given truncation order.
    pub fn one(order: usize) -> Self {
        let mut s = Self::with_order(order);
        s.coeffs[0] = F::one();
        s
    }

    /// e^{a t} truncated: coefficients a^k / k!.
    pub fn exp_linear(a: &F, order: usize) -> Self {
            let mut coeffs = Vec::with_capacity(order + 1);
        let mut pow = F::one();
        for k in 0..=order as u64 {
            if k > 0 {
                pow = pow * a;
            }
            let kfact = Rational::from_integer(factorial(k));
            coeffs.push(pow.clone() * &F::from_rational(&kfact).inv());
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, v: F) {
        assert!(k < self.coeffs.len());
        self.coeffs[k] = v;
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    /// Cauchy product truncated to this series' order.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        let n = self.order();
        let mut out = vec![F::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Quotient self / rhs; rhs must have a unit constant term.
    pub fn div(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        assert!(
            !rhs.coeffs[0].is_zero(),
            "series division requires a unit constant term"
        );
        let n = self.order();
        let inv0 = rhs.coeffs[0].inv();
        let mut out: Vec<F> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeff(k);
            for i in 0..k {
                acc = acc - out[i].clone() * &rhs.coeffs[k - i];
            }
            out.push(acc * &inv0);
        }
        PowerSeries { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by t^k (shift coefficients up, truncating at the order).
    pub fn mul_tpow(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![F::zero(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            out[i + k] = self.coeffs[i].clone();
        }
        PowerSeries { coeffs: out }
    }
}
