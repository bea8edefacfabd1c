//! The exact q-arithmetic kernel: q-brackets, q-factorials, Gaussian
//! binomials, q-Pochhammer products and the two series expansions built from
//! them. Every operation exists in a generic form over any [`Field`] (the
//! `*_in` functions) and as a [`Scalar`]-level wrapper driven by a [`QParam`].

use crate::field::Field;
use crate::ratfunc::{QRationalFunction, RatFuncError};
use crate::rational::Rational;
use crate::scalar::{QParam, Scalar, ScalarError};

/// [x]_q = (1 - q^x)/(1 - q) = 1 + q + ... + q^{x-1}.
pub fn q_bracket_in<F: Field>(x: u64, q: &F) -> F {
    let one_minus_q = F::one() - q;
    if one_minus_q.is_zero() {
        // only reachable in the float backend; the limit value is x
        return F::from_i64(x as i64);
    }
    (F::one() - &q.pow_u64(x)).div_ref(&one_minus_q)
}

/// [n]_q! = [n]_q [n-1]_q ... [1]_q, with the empty product 1 for n = 0.
pub fn q_factorial_in<F: Field>(n: u64, q: &F) -> F {
    let mut acc = F::one();
    for k in 1..=n {
        acc = acc * &q_bracket_in(k, q);
    }
    acc
}

/// Gaussian binomial coefficient: [n]_q!/([n-k]_q! [k]_q!), computed as the
/// product form prod_{i=1..k} [n-k+i]_q / [i]_q. Zero for k outside 0..n.
pub fn gauss_binom_in<F: Field>(n: u64, k: i64, q: &F) -> F {
    if k < 0 || (k as u64) > n {
        return F::zero();
    }
    let k = k as u64;
    let mut num = F::one();
    let mut den = F::one();
    for i in 1..=k {
        num = num * &q_bracket_in(n - k + i, q);
        den = den * &q_bracket_in(i, q);
    }
    num.div_ref(&den)
}

/// (-x; q)_r = (1 + x)(1 + xq) ... (1 + xq^{r-1}), the empty product 1.
pub fn q_pochhammer_neg_in<F: Field>(x: &F, q: &F, r: u32) -> F {
    let mut acc = F::one();
    let mut term = x.clone();
    for j in 0..r {
        acc = acc * &(F::one() + &term);
        if j + 1 < r {
            term = term * q;
        }
    }
    acc
}

/// Coefficients c_i = C(n,i)_q q^{C(i,2)} (-1)^i such that
/// (x - y)(x - qy) ... (x - q^{n-1} y) = sum_i c_i x^{n-i} y^i.
pub fn q_binom_expand_in<F: Field>(n: u64, q: &F) -> Vec<F> {
    (0..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { F::one() } else { -F::one() };
            let tri = i * i.saturating_sub(1) / 2;
            sign * &gauss_binom_in(n, i as i64, q) * &q.pow_u64(tri)
        })
        .collect()
}

/// Terms t_m = C(m+r-1, m)_q (-z)^m for m = 0..=m_max, the expansion of
/// 1/(-z; q)_r.
pub fn inv_pochhammer_terms_in<F: Field>(z: &F, q: &F, r: u32, m_max: usize) -> Vec<F> {
    assert!(r >= 1, "inverse Pochhammer expansion needs r >= 1");
    let neg_z = -z.clone();
    let mut zpow = F::one();
    let mut out = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max as u64 {
        if m > 0 {
            zpow = zpow * &neg_z;
        }
        out.push(gauss_binom_in(m + r as u64 - 1, m as i64, q) * &zpow);
    }
    out
}

macro_rules! dispatch {
    ($q:expr, |$qv:ident| $body:expr) => {
        match $q {
            QParam::Rational($qv) => Scalar::Rational($body),
            QParam::Symbolic => {
                let ind = QRationalFunction::indeterminate();
                let $qv = &ind;
                Scalar::Symbolic($body)
            }
            QParam::Complex($qv) => Scalar::Complex($body),
        }
    };
}

/// [x]_q in the backend of `q`.
pub fn q_bracket(x: u64, q: &QParam) -> Scalar {
    dispatch!(q, |qv| q_bracket_in(x, qv))
}

/// [n]_q! in the backend of `q`.
pub fn q_factorial(n: u64, q: &QParam) -> Scalar {
    dispatch!(q, |qv| q_factorial_in(n, qv))
}

/// Gaussian binomial in the backend of `q`; zero outside 0 <= k <= n.
pub fn gauss_binom(n: u64, k: i64, q: &QParam) -> Scalar {
    dispatch!(q, |qv| gauss_binom_in(n, k, qv))
}

/// (-x; q)_r; the backend of `x` must match the backend of `q`.
pub fn q_pochhammer_neg(x: &Scalar, q: &QParam, r: u32) -> Result<Scalar, ScalarError> {
    match (x, q) {
        (Scalar::Rational(xv), QParam::Rational(qv)) => {
            Ok(Scalar::Rational(q_pochhammer_neg_in(xv, qv, r)))
        }
        (Scalar::Symbolic(xv), QParam::Symbolic) => Ok(Scalar::Symbolic(q_pochhammer_neg_in(
            xv,
            &QRationalFunction::indeterminate(),
            r,
        ))),
        (Scalar::Complex(xv), QParam::Complex(qv)) => {
            Ok(Scalar::Complex(q_pochhammer_neg_in(xv, qv, r)))
        }
        _ => Err(ScalarError::BackendMismatch(x.backend(), q.backend())),
    }
}

/// Expansion coefficients of (x - y)_q^n in the backend of `q`.
pub fn q_binom_expand(n: u64, q: &QParam) -> Vec<Scalar> {
    match q {
        QParam::Rational(qv) => q_binom_expand_in(n, qv).into_iter().map(Scalar::Rational).collect(),
        QParam::Symbolic => q_binom_expand_in(n, &QRationalFunction::indeterminate())
            .into_iter()
            .map(Scalar::Symbolic)
            .collect(),
        QParam::Complex(qv) => q_binom_expand_in(n, qv).into_iter().map(Scalar::Complex).collect(),
    }
}

/// Truncated expansion terms of 1/(-z; q)_r; backend of `z` must match `q`.
pub fn inv_pochhammer_series(
    z: &Scalar,
    q: &QParam,
    r: u32,
    m_max: usize,
) -> Result<Vec<Scalar>, ScalarError> {
    match (z, q) {
        (Scalar::Rational(zv), QParam::Rational(qv)) => Ok(inv_pochhammer_terms_in(zv, qv, r, m_max)
            .into_iter()
            .map(Scalar::Rational)
            .collect()),
        (Scalar::Symbolic(zv), QParam::Symbolic) => Ok(inv_pochhammer_terms_in(
            zv,
            &QRationalFunction::indeterminate(),
            r,
            m_max,
        )
        .into_iter()
        .map(Scalar::Symbolic)
        .collect()),
        (Scalar::Complex(zv), QParam::Complex(qv)) => Ok(inv_pochhammer_terms_in(zv, qv, r, m_max)
            .into_iter()
            .map(Scalar::Complex)
            .collect()),
        _ => Err(ScalarError::BackendMismatch(z.backend(), q.backend())),
    }
}

/// Exact limit of a reduced rational function as q -> 1.
pub fn ratfunc_limit_at_one(f: &QRationalFunction) -> Result<Rational, RatFuncError> {
    f.limit_at_one()
}
