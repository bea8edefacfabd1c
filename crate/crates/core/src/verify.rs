//! Verification suites over the standard grids: each suite runs one family
//! of identity checks and returns the per-tuple verdict records in grid
//! order. Grids are evaluated in parallel; the output order is fixed by the
//! grid construction, never by scheduling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::characters::DirichletCharacter;
use crate::classical;
use crate::field::Field;
use crate::oracle;
use crate::qcalc::{gauss_binom_in, q_binom_expand_in};
use crate::qgenocchi::{
    self, check_distribution, check_shift, check_symmetry, classical_limit, exact_verdict,
    normalization, tol_verdict, unnormalized_at_index, GenocchiError, NormalizedGenocchiValue,
    QGenocchiParams, Verdict, VerdictStatus, Weight,
};
use crate::ratfunc::QRationalFunction;
use crate::rational::{rat, Rational};
use crate::scalar::{Backend, QParam};

pub fn all_passed(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.passed())
}

pub fn failures(verdicts: &[Verdict]) -> Vec<&Verdict> {
    verdicts.iter().filter(|v| !v.passed()).collect()
}

fn pmap(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// The characters used by the default grids: modulus 1 and both real
/// characters mod 3.
fn grid_characters(d_filter: Option<u64>) -> Vec<DirichletCharacter> {
    let mut out = Vec::new();
    if d_filter.map_or(true, |d| d == 1) {
        out.push(DirichletCharacter::principal(1).unwrap());
    }
    if d_filter.map_or(true, |d| d == 3) {
        out.push(DirichletCharacter::principal(3).unwrap());
        out.push(DirichletCharacter::quadratic(3).unwrap());
    }
    out
}

// ---------------------------------------------------------------------------
// q-calculus
// ---------------------------------------------------------------------------

/// Pascal rules, symmetry and polynomiality of the Gaussian binomials,
/// checked exactly in the symbolic backend for n up to `n_max`.
pub fn pascal_suite(n_max: u64) -> Vec<Verdict> {
    let q = QRationalFunction::indeterminate();
    let table: Vec<Vec<QRationalFunction>> = (0..(n_max + 2) as usize)
        .into_par_iter()
        .map(|n| {
            (0..(n_max + 2) as usize)
                .map(|k| {
                    if k <= n {
                        gauss_binom_in(n as u64, k as i64, &q)
                    } else {
                        QRationalFunction::zero()
                    }
                })
                .collect()
        })
        .collect();
    let binom = |n: u64, k: i64| -> QRationalFunction {
        if k < 0 || k as u64 > n {
            QRationalFunction::zero()
        } else {
            table[n as usize][k as usize].clone()
        }
    };
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 1..=n {
            let lhs = binom(n + 1, k as i64);
            let rule_a = binom(n, k as i64 - 1) + &(q.pow_u64(k) * &binom(n, k as i64));
            out.push(exact_verdict(
                "pascal-a",
                pmap(vec![("n", n.into()), ("k", k.into())]),
                Backend::Symbolic,
                &lhs,
                &rule_a,
            ));
            let rule_b = q.pow_u64(n + 1 - k) * &binom(n, k as i64 - 1) + &binom(n, k as i64);
            out.push(exact_verdict(
                "pascal-b",
                pmap(vec![("n", n.into()), ("k", k.into())]),
                Backend::Symbolic,
                &lhs,
                &rule_b,
            ));
        }
    }
    for n in 0..=n_max {
        for k in 0..=n {
            out.push(exact_verdict(
                "gauss-symmetry",
                pmap(vec![("n", n.into()), ("k", k.into())]),
                Backend::Symbolic,
                &binom(n, k as i64),
                &binom(n, (n - k) as i64),
            ));
            let is_poly = binom(n, k as i64).is_polynomial();
            out.push(Verdict {
                identity: "gauss-polynomial".into(),
                params: pmap(vec![("n", n.into()), ("k", k.into())]),
                backend: Backend::Symbolic.to_string(),
                status: if is_poly { VerdictStatus::ExactPass } else { VerdictStatus::Fail },
                lhs: "denominator 1".into(),
                rhs: if is_poly { "denominator 1".into() } else { "nontrivial denominator".into() },
                abs_diff: None,
            });
        }
    }
    out
}

fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    let num = rng.gen_range(-max_num..=max_num);
    let den = rng.gen_range(1..=max_den);
    rat(num, den)
}

/// Product-vs-expansion checks for (x - y)_q^n at seeded random rational
/// samples, and the truncated inverse-Pochhammer consistency, symbolic in z.
pub fn qcalc_suite(seed: u64) -> Vec<Verdict> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..=10u64 {
        for sample in 0..20u32 {
            let x = random_rational(&mut rng, 6, 4);
            let y = random_rational(&mut rng, 6, 4);
            // q nonzero with |q| < 1
            let den = rng.gen_range(2i64..=9);
            let mut num = rng.gen_range(1..den);
            if rng.gen_bool(0.5) {
                num = -num;
            }
            let q = rat(num, den);
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
            out.push(exact_verdict(
                "q-binom-product",
                pmap(vec![
                    ("n", n.into()),
                    ("sample", sample.into()),
                    ("x", x.to_string().into()),
                    ("y", y.to_string().into()),
                    ("q", q.to_string().into()),
                ]),
                Backend::Exact,
                &sum,
                &product,
            ));
        }
    }
    // truncated inverse-Pochhammer consistency, symbolic in z: the truncated
    // expansion times prod_{j<r}(1 + q^j z) is 1 + O(z^{M+1})
    let m_trunc = 12usize;
    let q = QRationalFunction::indeterminate();
    for r in 1..=4u32 {
        let terms: Vec<QRationalFunction> = (0..=m_trunc as u64)
            .map(|m| {
                let sign = if m % 2 == 0 {
                    QRationalFunction::one()
                } else {
                    -QRationalFunction::one()
                };
                sign * &gauss_binom_in(m + r as u64 - 1, m as i64, &q)
            })
            .collect();
        // z-polynomial of the product prod_{j=0}^{r-1}(1 + q^j z)
        let mut product = vec![QRationalFunction::one()];
        for j in 0..r as u64 {
            let mut next = vec![QRationalFunction::zero(); product.len() + 1];
            for (i, c) in product.iter().enumerate() {
                next[i] = next[i].clone() + c;
                next[i + 1] = next[i + 1].clone() + &(c.clone() * &q.pow_u64(j));
            }
            product = next;
        }
        let mut ok = true;
        for k in 0..=m_trunc {
            let mut coeff = QRationalFunction::zero();
            for (j, e) in product.iter().enumerate() {
                if j > k {
                    break;
                }
                coeff = coeff + &(terms[k - j].clone() * e);
            }
            let expect = if k == 0 {
                QRationalFunction::one()
            } else {
                QRationalFunction::zero()
            };
            if coeff != expect {
                ok = false;
                break;
            }
        }
        out.push(Verdict {
            identity: "inv-pochhammer".into(),
            params: pmap(vec![("r", r.into()), ("m", (m_trunc as u64).into())]),
            backend: Backend::Symbolic.to_string(),
            status: if ok { VerdictStatus::ExactPass } else { VerdictStatus::Fail },
            lhs: "truncation * product".into(),
            rhs: "1 + O(z^{m+1})".into(),
            abs_diff: None,
        });
    }
    out
}

// ---------------------------------------------------------------------------
// classical identities
// ---------------------------------------------------------------------------

/// G_{2n} = 2(1 - 2^{2n}) B_{2n} = 2n E_{2n-1}(0), exact, for 1 <= n <= n_max.
pub fn bridge_suite(n_max: usize) -> Vec<Verdict> {
    let g = classical::genocchi_numbers(2 * n_max);
    let b = classical::bernoulli_numbers(2 * n_max);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let two_pow = Rational::from_i64(2).pow_u64(2 * n as u64);
        let via_b = Rational::from_i64(2) * &(<Rational as Field>::one() - &two_pow) * &b[2 * n];
        out.push(exact_verdict(
            "bridge",
            pmap(vec![("n", (n as u64).into()), ("route", "bernoulli".into())]),
            Backend::Exact,
            &g[2 * n],
            &via_b,
        ));
        let via_e = Rational::from_i64(2 * n as i64)
            * &classical::euler_poly(2 * n - 1, &<Rational as Field>::zero());
        out.push(exact_verdict(
            "bridge",
            pmap(vec![("n", (n as u64).into()), ("route", "euler".into())]),
            Backend::Exact,
            &g[2 * n],
            &via_e,
        ));
    }
    out
}

/// The set of n <= n_max with |G_n| prime must be exactly {6, 8}.
pub fn prime_scan_suite(n_max: usize) -> Result<Vec<Verdict>, classical::ClassicalError> {
    let found = classical::genocchi_prime_scan(n_max)?;
    let lhs = found
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let expect: Vec<usize> = [6usize, 8].into_iter().filter(|&n| n <= n_max).collect();
    let rhs = expect
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",");
    Ok(vec![Verdict {
        identity: "prime-scan".into(),
        params: pmap(vec![("n_max", (n_max as u64).into())]),
        backend: Backend::Exact.to_string(),
        status: if found == expect { VerdictStatus::ExactPass } else { VerdictStatus::Fail },
        lhs,
        rhs,
        abs_diff: None,
    }])
}

// ---------------------------------------------------------------------------
// q-Genocchi identity grids
// ---------------------------------------------------------------------------

/// Distribution identity over h in 0..=3, r in 1..=3, n <= 6, x in {0, 1},
/// symbolic backend, moduli 1 and 3.
pub fn distribution_suite(d_filter: Option<u64>) -> Result<Vec<Verdict>, GenocchiError> {
    let mut grid = Vec::new();
    for chi in grid_characters(d_filter) {
        for h in 0..=3i64 {
            for r in 1..=3u32 {
                for n in 0..=6u32 {
                    for x in 0..=1u32 {
                        grid.push((h, r, n, x, chi.clone()));
                    }
                }
            }
        }
    }
    grid.par_iter()
        .map(|(h, r, n, x, chi)| check_distribution(*n, *r, *h, chi, *x, &QParam::symbolic(), 0.0))
        .collect()
}

/// Shift identity over the same grid as the distribution identity.
pub fn shift_suite(d_filter: Option<u64>) -> Result<Vec<Verdict>, GenocchiError> {
    let mut grid = Vec::new();
    for chi in grid_characters(d_filter) {
        for h in 0..=3i64 {
            for r in 1..=3u32 {
                for n in 0..=6u32 {
                    for x in 0..=1u32 {
                        grid.push((h, r, n, x, chi.clone()));
                    }
                }
            }
        }
    }
    grid.par_iter()
        .map(|(h, r, n, x, chi)| check_shift(*n, *r, *h, chi, *x, &QParam::symbolic(), 0.0))
        .collect()
}

/// Reflection symmetry over r in 1..=3, n <= 6, x in 0..=r (including the
/// x = r specialization), real characters mod 1 and 3, symbolic backend.
pub fn symmetry_suite(d_filter: Option<u64>) -> Result<Vec<Verdict>, GenocchiError> {
    let mut grid = Vec::new();
    for chi in grid_characters(d_filter) {
        for r in 1..=3u32 {
            for n in 0..=6u32 {
                for x in 0..=r {
                    grid.push((r, n, x, chi.clone()));
                }
            }
        }
    }
    grid.par_iter()
        .map(|(r, n, x, chi)| check_symmetry(*n, *r, chi, *x, &QParam::symbolic(), 0.0))
        .collect()
}

/// Classical limit over r in 1..=3, n + r <= 8, x in {0, 1, 2}.
pub fn limit_suite(
    d_filter: Option<u64>,
    r_filter: Option<u32>,
) -> Result<Vec<Verdict>, GenocchiError> {
    let mut grid = Vec::new();
    for chi in grid_characters(d_filter) {
        for r in 1..=3u32 {
            if r_filter.map_or(false, |rf| rf != r) {
                continue;
            }
            for x in 0..=2u32 {
                for n in 0..=(8 - r) {
                    grid.push((r, n, x, chi.clone()));
                }
            }
        }
    }
    grid.par_iter()
        .map(|(r, n, x, chi)| classical_limit(*n, *r, chi, *x))
        .collect()
}

// ---------------------------------------------------------------------------
// oracle agreement
// ---------------------------------------------------------------------------

/// Term of the defining multi-sum: prod_j chi(m_j) (-1)^{sum m_j}
/// [x + sum w_j m_j]_q^n, as a function on the summation lattice.
fn lattice_term(
    chi: &DirichletCharacter,
    n: u32,
    x: u32,
    weights: Vec<u64>,
    q: f64,
) -> impl Fn(&[u64]) -> Complex64 + Sync + Send {
    let d = chi.modulus();
    let chi_f64: Vec<f64> = chi
        .values()
        .iter()
        .map(|v| match v {
            crate::characters::CharacterValue::Int(i) => *i as f64,
            _ => panic!("oracle grid uses real characters"),
        })
        .collect();
    // q^y underflows to exactly 0 well before the table ends
    let mut table = Vec::with_capacity(4096);
    let mut acc = 1.0f64;
    for _ in 0..4096 {
        table.push(acc);
        acc *= q;
    }
    let one_minus_q = 1.0 - q;
    move |m: &[u64]| {
        let mut coeff = 1.0f64;
        let mut parity = 0u64;
        let mut y = x as u64;
        for (j, &mj) in m.iter().enumerate() {
            let cv = chi_f64[(mj % d) as usize];
            if cv == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            coeff *= cv;
            parity += mj;
            y += weights[j] * mj;
        }
        if parity % 2 == 1 {
            coeff = -coeff;
        }
        let qy = table.get(y as usize).copied().unwrap_or(0.0);
        let bracket = (1.0 - qy) / one_minus_q;
        Complex64::new(coeff * bracket.powi(n as i32), 0.0)
    }
}

/// Abel-summation estimates of the order-r and Barnes series against the
/// closed forms, within 1e-6 absolute, at q = 1/2 over the small grid.
pub fn oracle_suite() -> Result<Vec<Verdict>, GenocchiError> {
    let q_exact = rat(1, 2);
    let q_f64 = 0.5f64;
    let tol = 1e-6;
    // weight lists; empty marker means the plain order-r family
    let mut cases: Vec<(Option<Vec<u64>>, u32)> = vec![(None, 1), (None, 2)];
    for w in [vec![1u64], vec![2], vec![1, 1], vec![1, 2]] {
        let r = w.len() as u32;
        cases.push((Some(w), r));
    }
    let mut grid = Vec::new();
    for (weights, r) in cases {
        for d in [1u64, 3] {
            let chi = if d == 1 {
                DirichletCharacter::principal(1).unwrap()
            } else {
                DirichletCharacter::quadratic(3).unwrap()
            };
            for n in 0..=4u32 {
                for x in 0..=1u32 {
                    grid.push((weights.clone(), r, chi.clone(), n, x));
                }
            }
        }
    }
    grid.par_iter()
        .map(|(weights, r, chi, n, x)| {
            let qp = QParam::rational(q_exact.clone()).expect("valid q");
            let (closed, identity, wvec) = match weights {
                None => {
                    let p = QGenocchiParams::order_r(*n, *r, chi.clone(), *x, qp);
                    (
                        qgenocchi::q_genocchi_r(&p)?.g,
                        "oracle-order-r",
                        vec![1u64; *r as usize],
                    )
                }
                Some(w) => {
                    let ws = w.iter().map(|&v| Weight::Int(v)).collect();
                    let p = QGenocchiParams::barnes(*n, *r, ws, chi.clone(), *x, qp);
                    (qgenocchi::barnes_q_genocchi(&p)?.g, "oracle-barnes", w.clone())
                }
            };
            let closed_f64 = closed.to_complex_lossy().expect("exact value");
            let term = lattice_term(chi, *n, *x, wvec.clone(), q_f64);
            let levels = if *r == 1 { 6 } else { 5 };
            let est = oracle::abel_sum_multi(*r, term, levels, 100_000)?;
            let estimate = est.value * 2f64.powi(*r as i32);
            let mut params = pmap(vec![
                ("n", (*n).into()),
                ("r", (*r).into()),
                ("d", chi.modulus().into()),
                ("chi", chi.label().into()),
                ("x", (*x).into()),
                ("q", "1/2".into()),
                ("levels", levels.into()),
                ("residual", format!("{:e}", est.residual).into()),
            ]);
            if weights.is_some() {
                params.insert(
                    "w".into(),
                    Value::from(wvec.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
                );
            }
            Ok(tol_verdict(identity, params, &estimate, &closed_f64, tol))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// structural vanishing / normalization round-trip
// ---------------------------------------------------------------------------

/// For r <= 5 and every family: indices below r vanish and the normalized
/// representation round-trips exactly.
pub fn vanishing_suite() -> Result<Vec<Verdict>, GenocchiError> {
    let mut out = Vec::new();
    let backends = [QParam::rational(rat(1, 2)).expect("valid"), QParam::symbolic()];
    let chis = [
        DirichletCharacter::principal(1).unwrap(),
        DirichletCharacter::quadratic(3).unwrap(),
    ];
    for qp in &backends {
        for chi in &chis {
            for r in 1..=5u32 {
                let families: Vec<(&str, QGenocchiParams)> = vec![
                    (
                        "order-r",
                        QGenocchiParams::order_r(2, r, chi.clone(), 1, qp.clone()),
                    ),
                    (
                        "weighted-h",
                        QGenocchiParams::weighted_h(2, r, r as i64 + 1, chi.clone(), 1, qp.clone()),
                    ),
                    (
                        "barnes",
                        QGenocchiParams::barnes(
                            2,
                            r,
                            (0..r).map(|i| Weight::Int(1 + (i as u64) % 2)).collect(),
                            chi.clone(),
                            1,
                            qp.clone(),
                        ),
                    ),
                ];
                for (family, params) in families {
                    let base = pmap(vec![
                        ("family", family.into()),
                        ("r", r.into()),
                        ("d", chi.modulus().into()),
                        ("q", qp.label().into()),
                    ]);
                    for idx in 0..r {
                        let v = unnormalized_at_index(&params, idx)?;
                        let mut params_map = base.clone();
                        params_map.insert("index".into(), idx.into());
                        out.push(Verdict {
                            identity: "vanishing".into(),
                            params: params_map,
                            backend: qp.backend().to_string(),
                            status: if v.is_zero() {
                                VerdictStatus::ExactPass
                            } else {
                                VerdictStatus::Fail
                            },
                            lhs: v.to_string(),
                            rhs: "0".into(),
                            abs_diff: None,
                        });
                    }
                    // round-trip through the un-normalized value
                    let value = match family {
                        "order-r" => qgenocchi::q_genocchi_r(&params)?,
                        "weighted-h" => qgenocchi::q_genocchi_hr(&params)?,
                        _ => qgenocchi::barnes_q_genocchi(&params)?,
                    };
                    let back =
                        NormalizedGenocchiValue::renormalize(&value.unnormalized(), params.n, params.r);
                    let mut params_map = base.clone();
                    params_map.insert("n".into(), params.n.into());
                    params_map.insert(
                        "normalization".into(),
                        normalization(params.n, params.r).to_string().into(),
                    );
                    out.push(Verdict {
                        identity: "normalization-roundtrip".into(),
                        params: params_map,
                        backend: qp.backend().to_string(),
                        status: if back == value.g {
                            VerdictStatus::ExactPass
                        } else {
                            VerdictStatus::Fail
                        },
                        lhs: back.to_string(),
                        rhs: value.g.to_string(),
                        abs_diff: None,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_suite_passes() {
        let verdicts = pascal_suite(8);
        assert!(all_passed(&verdicts), "{:?}", failures(&verdicts));
    }

    #[test]
    fn qcalc_suite_passes() {
        let verdicts = qcalc_suite(7);
        assert!(all_passed(&verdicts), "{:?}", failures(&verdicts));
    }

    #[test]
    fn bridge_suite_passes() {
        let verdicts = bridge_suite(15);
        assert_eq!(verdicts.len(), 30);
        assert!(all_passed(&verdicts), "{:?}", failures(&verdicts));
    }

    #[test]
    fn prime_scan_small() {
        let verdicts = prime_scan_suite(10).unwrap();
        assert!(all_passed(&verdicts));
        assert_eq!(verdicts[0].lhs, "6,8");
    }

    #[test]
    fn vanishing_suite_passes() {
        let verdicts = vanishing_suite().unwrap();
        assert!(all_passed(&verdicts), "{:?}", failures(&verdicts));
    }

    #[test]
    fn small_symbolic_grids_pass() {
        let verdicts = limit_suite(Some(1), Some(1)).unwrap();
        assert!(!verdicts.is_empty());
        assert!(all_passed(&verdicts), "{:?}", failures(&verdicts));
    }
}
