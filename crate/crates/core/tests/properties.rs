//! Property tests for the structural invariants: character algebra, rational
//! function arithmetic, q-binomial expansions and series round trips.

use num_complex::Complex64;
use proptest::prelude::*;

use genocchi::field::Field;
use genocchi::poly::QPolynomial;
use genocchi::qcalc::{gauss_binom_in, q_binom_expand_in};
use genocchi::ratfunc::QRationalFunction;
use genocchi::rational::{rat, Rational};
use genocchi::series::PowerSeries;
use genocchi::DirichletCharacter;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec(-6i64..=6, 1..5).prop_map(|c| QPolynomial::from_i64_coeffs(&c))
}

fn nonzero_poly() -> impl Strategy<Value = QPolynomial> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = QRationalFunction> {
    (small_poly(), nonzero_poly()).prop_map(|(n, d)| QRationalFunction::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_add_matches_naive(a in ratfunc(), b in ratfunc()) {
        let fast = a.clone() + &b;
        let naive = QRationalFunction::new(
            &(a.num() * b.den()) + &(b.num() * a.den()),
            a.den() * b.den(),
        );
        prop_assert_eq!(fast, naive);
    }

    #[test]
    fn ratfunc_mul_matches_naive(a in ratfunc(), b in ratfunc()) {
        let fast = a.clone() * &b;
        let naive = QRationalFunction::new(a.num() * b.num(), a.den() * b.den());
        prop_assert_eq!(fast, naive);
    }

    #[test]
    fn ratfunc_field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        // distributivity exercises add, mul and canonicalization together
        let lhs = a.clone() * &(b.clone() + &c);
        let rhs = a.clone() * &b + &(a.clone() * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_binom_expansion_equals_product(
        n in 0u64..=10,
        x in small_rational(),
        y in small_rational(),
        num in 1i64..=8,
        den in 2i64..=9,
        neg in any::<bool>(),
    ) {
        prop_assume!(num < den);
        let q = if neg { rat(-num, den) } else { rat(num, den) };
        let coeffs = q_binom_expand_in(n, &q);
        let mut sum = <Rational as Field>::zero();
        for (i, c) in coeffs.iter().enumerate() {
            sum = sum + c.clone() * &x.pow_u64(n - i as u64) * &y.pow_u64(i as u64);
        }
        let mut product = <Rational as Field>::one();
        let mut qp = <Rational as Field>::one();
        for _ in 0..n {
            product = product * &(x.clone() - &(qp.clone() * &y));
            qp = qp * &q;
        }
        prop_assert_eq!(sum, product);
    }

    #[test]
    fn gauss_binom_backend_coherence(n in 0u64..=12, k in 0i64..=12, num in 1i64..=8, den in 2i64..=9) {
        prop_assume!(num < den);
        let q0 = rat(num, den);
        let sym = gauss_binom_in(n, k, &QRationalFunction::indeterminate());
        let direct = gauss_binom_in(n, k, &q0);
        prop_assert_eq!(sym.eval_rational(&q0).unwrap(), direct);
    }

    #[test]
    fn series_mul_div_round_trip(a in small_rational(), b in small_rational()) {
        let s = PowerSeries::exp_linear(&a, 9);
        let mut t = PowerSeries::exp_linear(&b, 9);
        t.set_coeff(0, <Rational as Field>::one());
        let q = s.div(&t);
        prop_assert_eq!(q.mul(&t), s);
    }

    #[test]
    fn characters_are_multiplicative_and_periodic(
        d_index in 0usize..25,
        a in -300i64..300,
        b in -300i64..300,
    ) {
        let d = 2 * d_index as u64 + 1;
        for chi in DirichletCharacter::enumerate(d).unwrap() {
            // periodicity
            prop_assert_eq!(chi.value_at(a), chi.value_at(a + d as i64));
            // multiplicativity through the complex embedding
            let lhs = chi.value_at(a.rem_euclid(d as i64) * b.rem_euclid(d as i64)).to_complex();
            let rhs = chi.value_at(a).to_complex() * chi.value_at(b).to_complex();
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }
    }

    #[test]
    fn character_values_are_roots_of_unity_or_zero(d_index in 0usize..25, a in -100i64..100) {
        let d = 2 * d_index as u64 + 1;
        for chi in DirichletCharacter::enumerate(d).unwrap() {
            let v = chi.value_at(a).to_complex();
            let on_circle = (v.norm() - 1.0).abs() < 1e-12;
            let zero = v == Complex64::new(0.0, 0.0);
            prop_assert!(on_circle || zero);
        }
    }
}
