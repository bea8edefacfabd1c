//! Independent numeric re-derivation of the q-Genocchi sums: the defining
//! series do not converge termwise, so they are Abel-summed -- each term is
//! damped by s^m (or s^{m_1+...+m_r}), the damped sums are evaluated at
//! s = 1 - 2^{-j}, and the results are Richardson-extrapolated in 1 - s.
//!
//! Float-only by design: these estimates guard the exact closed forms against
//! algebra errors but never participate in exact-equality acceptance.

use std::cell::RefCell;

use num_complex::Complex64;
use thiserror::Error;

/// First damping level: the smallest s used is 1 - 2^{-BASE_LEVEL}.
const BASE_LEVEL: u32 = 3;
/// Per-evaluation term budget.
const MAX_TERMS: usize = 1_000_000;
/// Relative increment threshold for truncating an inner sum.
const REL_EPS: f64 = 1e-15;
/// Consecutive sub-threshold increments required before stopping, so that
/// isolated zero terms (characters vanish off the units) cannot truncate the
/// sum early.
const QUIET_RUN: usize = 16;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("inner Abel sum did not meet the truncation threshold within {0} terms")]
    NonConvergentInnerSum(usize),
    #[error("lattice dimension {0} exceeds the supported maximum 3")]
    DimensionTooLarge(u32),
}

/// An Abel-summation estimate: the extrapolated value together with the
/// number of extrapolation levels and an honesty indicator (the difference
/// between the last two extrapolants).
#[derive(Clone, Copy, Debug)]
pub struct SummationEstimate {
    pub value: Complex64,
    pub extrapolation_levels: u32,
    pub residual: f64,
}

/// Abel sum of sum_m terms(m): evaluates the damped series at
/// s = 1 - 2^{-j} for j = BASE_LEVEL..=BASE_LEVEL+levels and extrapolates to
/// s -> 1. Terms must be bounded by a polynomial in m.
pub fn abel_sum_1d(
    mut terms: impl FnMut(u64) -> Complex64,
    levels: u32,
) -> Result<SummationEstimate, OracleError> {
    abel_sum_1d_capped(&mut terms, levels, MAX_TERMS)
}

fn abel_sum_1d_capped(
    terms: &mut impl FnMut(u64) -> Complex64,
    levels: u32,
    cap: usize,
) -> Result<SummationEstimate, OracleError> {
    assert!(levels >= 1, "extrapolation needs at least two levels");
    let mut nodes = Vec::with_capacity(levels as usize + 1);
    for j in BASE_LEVEL..=BASE_LEVEL + levels {
        let s = 1.0 - 0.5f64.powi(j as i32);
        nodes.push(abel_eval(terms, s, cap)?);
    }
    let (value, residual) = richardson(&nodes);
    Ok(SummationEstimate {
        value,
        extrapolation_levels: levels,
        residual,
    })
}

fn abel_eval(
    terms: &mut impl FnMut(u64) -> Complex64,
    s: f64,
    cap: usize,
) -> Result<Complex64, OracleError> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut spow = 1.0f64;
    let mut quiet = 0usize;
    for m in 0..cap {
        let inc = terms(m as u64) * spow;
        sum += inc;
        if !sum.is_finite() {
            // overflowed: genuinely divergent at this damping
            return Err(OracleError::NonConvergentInnerSum(cap));
        }
        if inc.norm() <= REL_EPS * (1.0 + sum.norm()) {
            quiet += 1;
            if quiet >= QUIET_RUN {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
        spow *= s;
    }
    Err(OracleError::NonConvergentInnerSum(cap))
}

/// Richardson extrapolation to h = 0 of values at h_j = 2^{-(BASE_LEVEL+i)}.
/// Returns the deepest extrapolant and the gap to the previous one.
fn richardson(nodes: &[Complex64]) -> (Complex64, f64) {
    let k = nodes.len();
    let mut table = nodes.to_vec();
    let mut diag = vec![table[0]];
    for col in 1..k {
        let factor = 2.0f64.powi(col as i32);
        for i in 0..k - col {
            table[i] = (table[i + 1] * factor - table[i]) / (factor - 1.0);
        }
        diag.push(table[0]);
    }
    let value = diag[k - 1];
    let residual = (diag[k - 1] - diag[k - 2]).norm();
    (value, residual)
}

/// Abel sum of an r-fold series sum_{m_1..m_r} term(m): substitutes
/// s^{m_1+...+m_r} and proceeds as [`abel_sum_1d`] over the series of
/// total-degree layers L_t = sum_{|m| = t} term(m). `degree_cap` bounds the
/// total degree of the truncated lattice.
pub fn abel_sum_multi(
    r: u32,
    term: impl Fn(&[u64]) -> Complex64,
    levels: u32,
    degree_cap: u64,
) -> Result<SummationEstimate, OracleError> {
    if r == 0 || r > 3 {
        return Err(OracleError::DimensionTooLarge(r));
    }
    if r == 1 {
        return abel_sum_1d(|m| term(&[m]), levels);
    }
    let layers: RefCell<Vec<Complex64>> = RefCell::new(Vec::new());
    let mut layered = |t: u64| -> Complex64 {
        let mut cache = layers.borrow_mut();
        while cache.len() <= t as usize {
            let t_new = cache.len() as u64;
            cache.push(layer_sum(r, t_new, &term));
        }
        cache[t as usize]
    };
    let cap = MAX_TERMS.min(degree_cap as usize + 1);
    abel_sum_1d_capped(&mut layered, levels, cap)
}

/// Sum of term over all r-tuples with m_1 + ... + m_r = t.
fn layer_sum(r: u32, t: u64, term: &impl Fn(&[u64]) -> Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    match r {
        2 => {
            for m1 in 0..=t {
                acc += term(&[m1, t - m1]);
            }
        }
        3 => {
            for m1 in 0..=t {
                for m2 in 0..=(t - m1) {
                    acc += term(&[m1, m2, t - m1 - m2]);
                }
            }
        }
        _ => unreachable!("dimension checked by caller"),
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grandi_series() {
        // sum (-1)^m = 1/2 under Abel summation
        let est = abel_sum_1d(|m| Complex64::new(if m % 2 == 0 { 1.0 } else { -1.0 }, 0.0), 5).unwrap();
        assert!((est.value.re - 0.5).abs() < 1e-10, "value {}", est.value);
        assert!(est.residual < 1e-8);
    }

    #[test]
    fn damped_geometric_series() {
        // sum (-1)^m q^m = 1/(1+q) at q = 1/2
        let est = abel_sum_1d(
            |m| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign * 0.5f64.powi(m as i32), 0.0)
            },
            5,
        )
        .unwrap();
        assert!((est.value.re - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn abel_sum_of_q_brackets() {
        // sum (-1)^m [m]_q at q = 1/2 equals -1/(2(1+q)) = -1/3
        let q: f64 = 0.5;
        let est = abel_sum_1d(
            |m| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign * (1.0 - q.powi(m as i32)) / (1.0 - q), 0.0)
            },
            6,
        )
        .unwrap();
        assert!((est.value.re + 1.0 / 3.0).abs() < 1e-8, "value {}", est.value);
    }

    #[test]
    fn multi_dimensional_grandi() {
        // two independent Grandi sums: 1/4
        let est = abel_sum_multi(
            2,
            |m| Complex64::new(if (m[0] + m[1]) % 2 == 0 { 1.0 } else { -1.0 }, 0.0),
            5,
            100_000,
        )
        .unwrap();
        assert!((est.value.re - 0.25).abs() < 1e-8, "value {}", est.value);
    }

    #[test]
    fn multi_reduces_to_1d() {
        let f = |m: u64| Complex64::new(if m % 2 == 0 { 1.0 } else { -1.0 }, 0.0) * 0.7f64.powi(m as i32);
        let a = abel_sum_1d(f, 4).unwrap();
        let b = abel_sum_multi(1, |m| f(m[0]), 4, 100_000).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn dimension_guard() {
        assert_eq!(
            abel_sum_multi(4, |_| Complex64::new(0.0, 0.0), 3, 10).unwrap_err(),
            OracleError::DimensionTooLarge(4)
        );
    }

    #[test]
    fn divergent_inner_sum_is_reported() {
        // terms grow geometrically: the damped sum at s near 1 diverges
        let err = abel_sum_1d(|m| Complex64::new(1.5f64.powi(m as i32), 0.0), 3).unwrap_err();
        assert_eq!(err, OracleError::NonConvergentInnerSum(MAX_TERMS));
    }

    #[test]
    fn residual_decreases_with_levels() {
        let f = |m: u64| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * (1.0 - 0.5f64.powi(m as i32)) / 0.5, 0.0)
        };
        let r2 = abel_sum_1d(f, 2).unwrap().residual;
        let r4 = abel_sum_1d(f, 4).unwrap().residual;
        let r6 = abel_sum_1d(f, 6).unwrap().residual;
        assert!(r4 < r2, "residuals {} {} {}", r2, r4, r6);
        assert!(r6 < r4, "residuals {} {} {}", r2, r4, r6);
    }
}
