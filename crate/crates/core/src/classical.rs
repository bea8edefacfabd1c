//! Classical (q-free) Genocchi machinery computed with the exact truncated
//! power-series engine: plain and higher-order Genocchi numbers/polynomials,
//! the character-twisted generalization, Bernoulli numbers, Euler polynomials
//! and the prime scan over |G_n|.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::characters::{CharacterError, DirichletCharacter};
use crate::field::Field;
use crate::rational::{factorial, rational_to_f64, Rational};
use crate::scalar::{Backend, Scalar};
use crate::series::PowerSeries;

/// Largest index accepted by [`genocchi_prime_scan`].
pub const PRIME_SCAN_BOUND: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum ClassicalError {
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("the symbolic backend does not apply to classical (q-free) values")]
    UnsupportedBackend,
    #[error("prime scan bound {0} exceeds the supported maximum {PRIME_SCAN_BOUND}")]
    ScanBoundExceeded(usize),
}

/// Every public value here is extracted from a series carried two orders past
/// what is needed, and the guard coefficients are cross-checked against a
/// recomputation two orders further out.
fn guarded_coeffs<F: Field>(order: usize, build: impl Fn(usize) -> PowerSeries<F>) -> Vec<F> {
    let a = build(order + 2);
    let b = build(order + 4);
    for k in 0..=order + 2 {
        assert_eq!(
            a.coeff(k),
            b.coeff(k),
            "truncated-series self-check failed at t^{}",
            k
        );
    }
    a.coeffs()[..=order].to_vec()
}

/// 2t/(e^t + 1) through the given order.
fn genocchi_kernel(order: usize) -> PowerSeries<Rational> {
    let mut num = PowerSeries::<Rational>::with_order(order);
    if order >= 1 {
        num.set_coeff(1, Rational::from_integer(2.into()));
    }
    let den = PowerSeries::exp_linear(&<Rational as Field>::one(), order)
        .add(&PowerSeries::one(order));
    num.div(&den)
}

/// 2t sum_a chi(a)(-1)^a e^{at} / (e^{dt} + 1) through the given order.
fn generalized_kernel<F: Field>(chi_vals: &[F], order: usize) -> PowerSeries<F> {
    let d = chi_vals.len() as i64;
    let mut num = PowerSeries::<F>::with_order(order);
    for (a, chi_a) in chi_vals.iter().enumerate() {
        if chi_a.is_zero() {
            continue;
        }
        let sign = if a % 2 == 0 { F::one() } else { -F::one() };
        let term = PowerSeries::exp_linear(&F::from_i64(a as i64), order).scale(&(sign * chi_a));
        num = num.add(&term);
    }
    let num = num.mul_tpow(1).scale(&F::from_i64(2));
    let den = PowerSeries::exp_linear(&F::from_i64(d), order).add(&PowerSeries::one(order));
    num.div(&den)
}

fn nth_from_series<F: Field>(n: usize, build: impl Fn(usize) -> PowerSeries<F>) -> F {
    let coeffs = guarded_coeffs(n, build);
    coeffs[n].clone() * &F::from_rational(&Rational::from_integer(factorial(n as u64)))
}

/// Genocchi numbers G_0..G_{n_max}: n! times the series coefficients of
/// 2t/(e^t + 1). These are integers.
pub fn genocchi_numbers(n_max: usize) -> Vec<Rational> {
    let coeffs = guarded_coeffs(n_max, genocchi_kernel);
    coeffs
        .into_iter()
        .enumerate()
        .map(|(n, c)| c * Rational::from_integer(factorial(n as u64)))
        .collect()
}

/// Genocchi polynomial value G_n(x).
pub fn genocchi_poly(n: usize, x: &Rational) -> Rational {
    nth_from_series(n, |ord| {
        genocchi_kernel(ord).mul(&PowerSeries::exp_linear(x, ord))
    })
}

/// Higher-order value G^{(r)}_n(x): n! times the t^n coefficient of
/// (2t/(e^t+1))^r e^{xt}. Vanishes for n < r.
pub fn higher_order_genocchi(n: usize, r: u32, x: &Rational) -> Rational {
    assert!(r >= 1, "order must be a positive integer");
    nth_from_series(n, |ord| {
        genocchi_kernel(ord).pow(r).mul(&PowerSeries::exp_linear(x, ord))
    })
}

/// Character-twisted higher-order value in the exact backend; the character
/// must be real valued.
pub fn generalized_genocchi_exact(
    n: usize,
    r: u32,
    chi: &DirichletCharacter,
    x: &Rational,
) -> Result<Rational, ClassicalError> {
    assert!(r >= 1, "order must be a positive integer");
    let vals: Vec<Rational> = chi.values_in()?;
    Ok(nth_from_series(n, |ord| {
        generalized_kernel(&vals, ord)
            .pow(r)
            .mul(&PowerSeries::exp_linear(x, ord))
    }))
}

/// Character-twisted higher-order value in the float backend; any character.
pub fn generalized_genocchi_complex(
    n: usize,
    r: u32,
    chi: &DirichletCharacter,
    x: Complex64,
) -> Complex64 {
    assert!(r >= 1, "order must be a positive integer");
    let vals: Vec<Complex64> = chi.values_in().expect("complex embeds every character");
    nth_from_series(n, |ord| {
        generalized_kernel(&vals, ord)
            .pow(r)
            .mul(&PowerSeries::exp_linear(&x, ord))
    })
}

/// Character-twisted value in the requested backend. The symbolic backend is
/// rejected: classical values contain no q.
pub fn generalized_genocchi(
    n: usize,
    r: u32,
    chi: &DirichletCharacter,
    x: &Rational,
    backend: Backend,
) -> Result<Scalar, ClassicalError> {
    match backend {
        Backend::Exact => Ok(Scalar::Rational(generalized_genocchi_exact(n, r, chi, x)?)),
        Backend::Float => Ok(Scalar::Complex(generalized_genocchi_complex(
            n,
            r,
            chi,
            Complex64::new(rational_to_f64(x), 0.0),
        ))),
        Backend::Symbolic => Err(ClassicalError::UnsupportedBackend),
    }
}

/// Bernoulli numbers B_0..B_{n_max} from t/(e^t - 1) (B_1 = -1/2).
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let build = |ord: usize| {
        // (e^t - 1)/t has coefficients 1/(k+1)!
        let coeffs: Vec<Rational> = (0..=ord as u64)
            .map(|k| Rational::new(BigInt::one(), factorial(k + 1)))
            .collect();
        PowerSeries::one(ord).div(&PowerSeries::from_coeffs(coeffs))
    };
    guarded_coeffs(n_max, build)
        .into_iter()
        .enumerate()
        .map(|(n, c)| c * Rational::from_integer(factorial(n as u64)))
        .collect()
}

/// Euler polynomial value E_n(x) from 2e^{xt}/(e^t + 1).
pub fn euler_poly(n: usize, x: &Rational) -> Rational {
    nth_from_series(n, |ord| {
        let num = PowerSeries::exp_linear(x, ord).scale(&Rational::from_integer(2.into()));
        let den = PowerSeries::exp_linear(&<Rational as Field>::one(), ord).add(&PowerSeries::one(ord));
        num.div(&den)
    })
}

/// Indices n <= n_max with |G_n| prime. Only n = 6 and n = 8 occur in range.
pub fn genocchi_prime_scan(n_max: usize) -> Result<Vec<usize>, ClassicalError> {
    if n_max > PRIME_SCAN_BOUND {
        return Err(ClassicalError::ScanBoundExceeded(n_max));
    }
    let numbers = genocchi_numbers(n_max);
    let mut out = Vec::new();
    for n in (2..=n_max).step_by(2) {
        let g = &numbers[n];
        assert!(g.is_integer(), "Genocchi numbers are integers");
        if is_probable_prime(&g.numer().abs()) {
            out.push(n);
        }
    }
    Ok(out)
}

/// Miller-Rabin with the first 25 primes as bases: deterministic for inputs
/// below 3.3e24 and overwhelming evidence for the magnitudes scanned here.
fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    const BASES: [u32; 25] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97,
    ];
    for p in BASES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 2 here");
    let d = &n_minus_1 >> s;
    'witness: for a in BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, rat, rat_int};

    #[test]
    fn genocchi_number_values() {
        let g = genocchi_numbers(12);
        assert_eq!(g[0], rat_int(0));
        assert_eq!(g[1], rat_int(1));
        let evens: Vec<Rational> = (1..=6).map(|k| g[2 * k].clone()).collect();
        let expect: Vec<Rational> = [-1, 1, -3, 17, -155, 2073].iter().map(|&v| rat_int(v)).collect();
        assert_eq!(evens, expect);
        for k in 1..=5 {
            assert_eq!(g[2 * k + 1], rat_int(0), "G_{} vanishes", 2 * k + 1);
        }
    }

    #[test]
    fn defining_recurrence() {
        // (e^t + 1) G(t) = 2t termwise: sum_k C(n,k) G_k + G_n is 2 at n=1, else 0
        let g = genocchi_numbers(30);
        for n in 1..=30usize {
            let mut acc = rat_int(0);
            for k in 0..=n {
                acc += Rational::from_integer(binomial(n as u64, k as u64)) * &g[k];
            }
            acc += &g[n];
            let expect = if n == 1 { rat_int(2) } else { rat_int(0) };
            assert_eq!(acc, expect, "recurrence at n = {}", n);
        }
    }

    #[test]
    fn genocchi_poly_values() {
        let g = genocchi_numbers(12);
        for n in 0..=12 {
            assert_eq!(genocchi_poly(n, &rat_int(0)), g[n], "G_{}(0)", n);
        }
        for x in [rat_int(2), rat(1, 3), rat(-5, 7)] {
            assert_eq!(genocchi_poly(1, &x), rat_int(1), "G_1({})", x);
        }
        // binomial convolution by hand: G_2(1) = G_2 + 2 G_1 = 1
        assert_eq!(genocchi_poly(2, &rat_int(1)), rat_int(1));
    }

    #[test]
    fn addition_theorem_spot_checks() {
        // G_n(x+y) = sum_k C(n,k) G_k(x) y^{n-k}
        for (x, y) in [(rat(1, 2), rat(1, 3)), (rat_int(2), rat(-1, 5))] {
            for n in 0..=6usize {
                let lhs = genocchi_poly(n, &(&x + &y));
                let mut rhs = rat_int(0);
                for k in 0..=n {
                    rhs += Rational::from_integer(binomial(n as u64, k as u64))
                        * genocchi_poly(k, &x)
                        * y.pow_u64((n - k) as u64);
                }
                assert_eq!(lhs, rhs, "addition theorem n={}", n);
            }
        }
    }

    #[test]
    fn higher_order_reduces_and_vanishes() {
        for n in 0..=10usize {
            for x in [rat_int(0), rat(2, 3)] {
                assert_eq!(higher_order_genocchi(n, 1, &x), genocchi_poly(n, &x));
            }
        }
        for r in 1..=5u32 {
            for n in 0..r as usize {
                assert_eq!(higher_order_genocchi(n, r, &rat_int(0)), rat_int(0));
            }
        }
    }

    #[test]
    fn higher_order_matches_series_square_oracle() {
        // oracle: Cauchy square of the order-1 coefficient sequence
        let order = 10;
        let g1 = genocchi_kernel(order);
        let squared = g1.mul(&g1);
        for n in 0..=8usize {
            let expect = squared.coeff(n) * Rational::from_integer(factorial(n as u64));
            assert_eq!(higher_order_genocchi(n, 2, &rat_int(0)), expect);
        }
    }

    #[test]
    fn generalized_reduces_at_d_one() {
        let chi = DirichletCharacter::principal(1).unwrap();
        for r in 1..=3u32 {
            for n in 0..=8usize {
                let lhs = generalized_genocchi_exact(n, r, &chi, &rat_int(0)).unwrap();
                assert_eq!(lhs, higher_order_genocchi(n, r, &rat_int(0)));
            }
        }
    }

    #[test]
    fn generalized_quadratic_mod_3() {
        let chi = DirichletCharacter::quadratic(3).unwrap();
        // oracle: exact series division of -2t(e^t + e^{2t})/(e^{3t} + 1)
        assert_eq!(
            generalized_genocchi_exact(0, 1, &chi, &rat_int(0)).unwrap(),
            rat_int(0)
        );
        assert_eq!(
            generalized_genocchi_exact(1, 1, &chi, &rat_int(0)).unwrap(),
            rat_int(-2)
        );
        // float backend agrees
        let f = generalized_genocchi_complex(1, 1, &chi, Complex64::new(0.0, 0.0));
        assert!((f - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        // symbolic backend is rejected
        assert_eq!(
            generalized_genocchi(1, 1, &chi, &rat_int(0), Backend::Symbolic).unwrap_err(),
            ClassicalError::UnsupportedBackend
        );
    }

    #[test]
    fn bernoulli_euler_bridge() {
        let g = genocchi_numbers(30);
        let b = bernoulli_numbers(30);
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(euler_poly(0, &rat(7, 3)), rat_int(1));
        for n in 1..=15usize {
            let two_pow = rat_int(2).pow_u64(2 * n as u64);
            let via_bernoulli = rat_int(2) * (rat_int(1) - &two_pow) * &b[2 * n];
            assert_eq!(g[2 * n], via_bernoulli, "Bernoulli bridge at 2n = {}", 2 * n);
            let via_euler = rat_int(2 * n as i64) * euler_poly(2 * n - 1, &rat_int(0));
            assert_eq!(g[2 * n], via_euler, "Euler bridge at 2n = {}", 2 * n);
        }
    }

    #[test]
    fn prime_scan_results() {
        assert_eq!(genocchi_prime_scan(10).unwrap(), vec![6, 8]);
        assert_eq!(genocchi_prime_scan(100).unwrap(), vec![6, 8]);
        assert_eq!(
            genocchi_prime_scan(101).unwrap_err(),
            ClassicalError::ScanBoundExceeded(101)
        );
    }

    #[test]
    fn miller_rabin_sanity() {
        assert!(is_probable_prime(&BigInt::from(2)));
        assert!(is_probable_prime(&BigInt::from(17)));
        assert!(!is_probable_prime(&BigInt::from(1)));
        assert!(!is_probable_prime(&BigInt::from(2073)));
        // 2^89 - 1 is a Mersenne prime
        let m89 = (BigInt::one() << 89) - BigInt::one();
        assert!(is_probable_prime(&m89));
        assert!(!is_probable_prime(&(m89 * BigInt::from(3))));
    }
}
