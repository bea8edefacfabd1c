//! Normalized higher-order generalized q-Genocchi values attached to a
//! Dirichlet character, computed through exact finite closed-form sums.
//!
//! Everything here is stated for the normalized quantity
//! `g_n = G_{n+r} / (C(n+r, r) r!)`; indices below the order r vanish
//! structurally because only indices n + r with n >= 0 are representable.
//! Three families are provided:
//!
//! - the order-r family: `g_n(x) = 2^r/(1-q)^n sum_l C(n,l)(-q^x)^l A(l)^r /
//!   (1+q^{ld})^r` with `A(l) = sum_a chi(a)(-1)^a q^{la}`,
//! - the (h, r) family, which weights the j-th summation index by
//!   `q^{(h-j) m_j}`; its denominator factors are `1 + q^{d(h-j+l)}`,
//! - the Barnes family, which scales the j-th index by a positive weight
//!   `w_j`; its denominator factors are `1 + q^{d l w_j}`.
//!
//! The defining series of all three families diverge termwise, and are read
//! as their Abel sums; [`crate::oracle`] re-derives the same values
//! numerically from that reading.

use std::cell::RefCell;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::characters::{CharacterError, DirichletCharacter};
use crate::classical;
use crate::field::Field;
use crate::oracle::{self, OracleError, SummationEstimate};
use crate::ratfunc::{QRationalFunction, RatFuncError};
use crate::rational::{binomial, factorial, rational_to_f64, Rational};
use crate::scalar::{Backend, QParam, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum GenocchiError {
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Limit(#[from] RatFuncError),
    #[error("order r must be >= 1")]
    ZeroOrder,
    #[error("the (h, r) family requires the weight exponent h")]
    MissingH,
    #[error("the order-r family takes no weight exponent h")]
    UnexpectedH,
    #[error("the Barnes family requires a weight list")]
    MissingWeights,
    #[error("only the Barnes family takes weights")]
    UnexpectedWeights,
    #[error("weight list has length {got}, expected the order r = {expected}")]
    WeightCount { expected: u32, got: usize },
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("non-integer weight in an exact backend")]
    NonIntegerWeightInExactBackend,
    #[error("non-integer shift x in an exact backend")]
    NonIntegerShiftInExactBackend,
    #[error("a closed-form denominator factor vanishes at the given q")]
    DenominatorVanishes,
    #[error("operation not available in the {0} backend")]
    UnsupportedBackend(Backend),
    #[error("reflection check needs 0 <= x <= r")]
    ShiftOutOfRange,
    #[error("classical comparison failed: {0}")]
    Classical(String),
}

/// The argument shift x: a nonnegative integer in the exact and symbolic
/// backends (so q^x stays in the field), any real in the float backend.
#[derive(Clone, Debug, PartialEq)]
pub enum Shift {
    Int(u32),
    Real(f64),
}

impl Shift {
    pub fn as_int(&self) -> Option<u32> {
        match self {
            Shift::Int(x) => Some(*x),
            Shift::Real(_) => None,
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Int(x) => write!(f, "{}", x),
            Shift::Real(x) => write!(f, "{}", x),
        }
    }
}

/// A Barnes weight: a positive integer in the exact and symbolic backends,
/// any positive rational in the float backend.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Int(u64),
    Rat(Rational),
}

impl Weight {
    pub fn as_int(&self) -> Option<u64> {
        match self {
            Weight::Int(w) => Some(*w),
            Weight::Rat(_) => None,
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Weight::Int(w) => *w as f64,
            Weight::Rat(w) => rational_to_f64(w),
        }
    }

    fn is_positive(&self) -> bool {
        match self {
            Weight::Int(w) => *w > 0,
            Weight::Rat(w) => w > &<Rational as Field>::zero(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Int(w) => write!(f, "{}", w),
            Weight::Rat(w) => write!(f, "{}", w),
        }
    }
}

/// Parameters of a normalized value: index n, order r, optional weight
/// exponent h, character, shift x, q-parameter, optional Barnes weights.
#[derive(Clone, Debug)]
pub struct QGenocchiParams {
    pub n: u32,
    pub r: u32,
    pub h: Option<i64>,
    pub chi: DirichletCharacter,
    pub x: Shift,
    pub q: QParam,
    pub weights: Option<Vec<Weight>>,
}

impl QGenocchiParams {
    pub fn order_r(n: u32, r: u32, chi: DirichletCharacter, x: u32, q: QParam) -> Self {
        QGenocchiParams {
            n,
            r,
            h: None,
            chi,
            x: Shift::Int(x),
            q,
            weights: None,
        }
    }

    pub fn weighted_h(n: u32, r: u32, h: i64, chi: DirichletCharacter, x: u32, q: QParam) -> Self {
        QGenocchiParams {
            n,
            r,
            h: Some(h),
            chi,
            x: Shift::Int(x),
            q,
            weights: None,
        }
    }

    pub fn barnes(n: u32, r: u32, weights: Vec<Weight>, chi: DirichletCharacter, x: u32, q: QParam) -> Self {
        QGenocchiParams {
            n,
            r,
            h: None,
            chi,
            x: Shift::Int(x),
            q,
            weights: Some(weights),
        }
    }

    pub fn validate(&self) -> Result<(), GenocchiError> {
        if self.r == 0 {
            return Err(GenocchiError::ZeroOrder);
        }
        let exact_backend = self.q.backend() != Backend::Float;
        if exact_backend && self.x.as_int().is_none() {
            return Err(GenocchiError::NonIntegerShiftInExactBackend);
        }
        if let Some(ws) = &self.weights {
            if ws.len() != self.r as usize {
                return Err(GenocchiError::WeightCount {
                    expected: self.r,
                    got: ws.len(),
                });
            }
            if !ws.iter().all(|w| w.is_positive()) {
                return Err(GenocchiError::NonPositiveWeight);
            }
            if exact_backend && ws.iter().any(|w| w.as_int().is_none()) {
                return Err(GenocchiError::NonIntegerWeightInExactBackend);
            }
        }
        Ok(())
    }

    /// Parameter map for verdict records and reports.
    pub fn to_params_map(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("n".into(), self.n.into());
        m.insert("r".into(), self.r.into());
        if let Some(h) = self.h {
            m.insert("h".into(), h.into());
        }
        m.insert("d".into(), self.chi.modulus().into());
        m.insert("chi".into(), self.chi.label().into());
        m.insert("x".into(), self.x.to_string().into());
        m.insert("q".into(), self.q.label().into());
        if let Some(ws) = &self.weights {
            let list: Vec<Value> = ws.iter().map(|w| Value::from(w.to_string())).collect();
            m.insert("w".into(), Value::from(list));
        }
        m
    }
}

/// The normalization constant C(n+r, r) * r! relating g_n to G_{n+r}.
pub fn normalization(n: u32, r: u32) -> Rational {
    Rational::from_integer(binomial((n + r) as u64, r as u64) * factorial(r as u64))
}

/// A normalized value g_n together with its parameters.
#[derive(Clone, Debug)]
pub struct NormalizedGenocchiValue {
    pub g: Scalar,
    pub params: QGenocchiParams,
}

impl NormalizedGenocchiValue {
    /// The index n + r of the un-normalized value G_{n+r}.
    pub fn index(&self) -> u32 {
        self.params.n + self.params.r
    }

    /// G_{n+r} = g_n * C(n+r, r) * r!.
    pub fn unnormalized(&self) -> Scalar {
        let c = Scalar::from_rational_in(&normalization(self.params.n, self.params.r), self.g.backend());
        self.g.mul(&c).expect("same backend by construction")
    }

    /// Recover g_n from an un-normalized value; exact in exact backends.
    pub fn renormalize(unnorm: &Scalar, n: u32, r: u32) -> Scalar {
        let c = Scalar::from_rational_in(&normalization(n, r), unnorm.backend());
        unnorm.div(&c).expect("same backend by construction")
    }
}

fn parity_sign<F: Field>(k: u64) -> F {
    if k % 2 == 0 {
        F::one()
    } else {
        -F::one()
    }
}

fn binom_f<F: Field>(n: u32, l: u32) -> F {
    F::from_rational(&Rational::from_integer(binomial(n as u64, l as u64)))
}

/// 2^r / (1-q)^n.
fn prefactor<F: Field>(n: u32, r: u32, q: &F) -> F {
    F::from_i64(2).pow_u64(r as u64) * &(F::one() - q).pow_i64(-(n as i64))
}

/// Order-r family: g_n(x) = 2^r/(1-q)^n sum_{l=0}^n C(n,l)(-q^x)^l
/// [sum_a chi(a)(-1)^a q^{la}]^r / (1+q^{ld})^r.
fn closed_form_r<F: Field>(
    n: u32,
    r: u32,
    d: u64,
    chi_vals: &[F],
    q: &F,
    q_pow_x: &F,
) -> Result<F, GenocchiError> {
    let neg_qx = -q_pow_x.clone();
    let mut total = F::zero();
    for l in 0..=n {
        let mut a_sum = F::zero();
        for (a, cv) in chi_vals.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            let term = parity_sign::<F>(a as u64) * cv * &q.pow_u64(l as u64 * a as u64);
            a_sum = a_sum + term;
        }
        let denom = F::one() + &q.pow_u64(l as u64 * d);
        if denom.is_zero() {
            return Err(GenocchiError::DenominatorVanishes);
        }
        let term = binom_f::<F>(n, l)
            * &neg_qx.pow_u64(l as u64)
            * &a_sum.pow_u64(r as u64)
            * &denom.pow_u64(r as u64).inv();
        total = total + term;
    }
    Ok(prefactor(n, r, q) * &total)
}

/// (h, r) family: per summation slot j = 1..r the a-sum carries
/// chi(a)(-1)^a q^{(h-j+l)a} and the denominator factor is 1 + q^{d(h-j+l)}.
/// r = 0 is the empty family, which evaluates to [x]_q^n.
fn closed_form_hr<F: Field>(
    n: u32,
    r: u32,
    h: i64,
    d: u64,
    chi_vals: &[F],
    q: &F,
    q_pow_x: &F,
) -> Result<F, GenocchiError> {
    let neg_qx = -q_pow_x.clone();
    let mut total = F::zero();
    for l in 0..=n {
        let mut block = F::one();
        for j in 1..=r as i64 {
            let e = h - j + l as i64;
            let mut a_sum = F::zero();
            for (a, cv) in chi_vals.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let term = parity_sign::<F>(a as u64) * cv * &q.pow_i64(e * a as i64);
                a_sum = a_sum + term;
            }
            let denom = F::one() + &q.pow_i64(d as i64 * e);
            if denom.is_zero() {
                return Err(GenocchiError::DenominatorVanishes);
            }
            block = block * &a_sum.div_ref(&denom);
        }
        let term = binom_f::<F>(n, l) * &neg_qx.pow_u64(l as u64) * &block;
        total = total + term;
    }
    Ok(prefactor(n, r, q) * &total)
}

/// Barnes family with integer weights: per slot i the a-sum carries
/// chi(a)(-1)^a q^{l w_i a} and the denominator factor is 1 + q^{d l w_i}.
fn closed_form_barnes<F: Field>(
    n: u32,
    r: u32,
    d: u64,
    chi_vals: &[F],
    weights: &[u64],
    q: &F,
    q_pow_x: &F,
) -> Result<F, GenocchiError> {
    debug_assert_eq!(weights.len(), r as usize);
    let neg_qx = -q_pow_x.clone();
    let mut total = F::zero();
    for l in 0..=n {
        let mut block = F::one();
        for &w in weights {
            let mut a_sum = F::zero();
            for (a, cv) in chi_vals.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let term = parity_sign::<F>(a as u64) * cv * &q.pow_u64(l as u64 * w * a as u64);
                a_sum = a_sum + term;
            }
            let denom = F::one() + &q.pow_u64(d * l as u64 * w);
            if denom.is_zero() {
                return Err(GenocchiError::DenominatorVanishes);
            }
            block = block * &a_sum.div_ref(&denom);
        }
        let term = binom_f::<F>(n, l) * &neg_qx.pow_u64(l as u64) * &block;
        total = total + term;
    }
    Ok(prefactor(n, r, q) * &total)
}

/// Barnes family in the float backend with arbitrary positive real weights.
fn closed_form_barnes_f64(
    n: u32,
    r: u32,
    d: u64,
    chi_vals: &[Complex64],
    weights: &[f64],
    q: Complex64,
    q_pow_x: Complex64,
) -> Result<Complex64, GenocchiError> {
    debug_assert_eq!(weights.len(), r as usize);
    let neg_qx = -q_pow_x;
    let mut total = Complex64::new(0.0, 0.0);
    for l in 0..=n {
        let mut block = Complex64::new(1.0, 0.0);
        for &w in weights {
            let mut a_sum = Complex64::new(0.0, 0.0);
            for (a, cv) in chi_vals.iter().enumerate() {
                if Field::is_zero(cv) {
                    continue;
                }
                let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
                a_sum += sign * cv * q.powf(l as f64 * w * a as f64);
            }
            let denom = Complex64::new(1.0, 0.0) + q.powf(d as f64 * l as f64 * w);
            if Field::is_zero(&denom) {
                return Err(GenocchiError::DenominatorVanishes);
            }
            block *= a_sum / denom;
        }
        let term = Complex64::new(rational_to_f64(&Rational::from_integer(binomial(n as u64, l as u64))), 0.0)
            * neg_qx.pow_u64(l as u64)
            * block;
        total += term;
    }
    Ok(prefactor(n, r, &q) * total)
}

macro_rules! eval_in_backends {
    ($params:expr, |$q:ident, $qx:ident, $chi:ident| $body:expr) => {{
        let p = $params;
        match &p.q {
            QParam::Rational(qv) => {
                let $chi: Vec<Rational> = p.chi.values_in()?;
                let x = p.x.as_int().ok_or(GenocchiError::NonIntegerShiftInExactBackend)?;
                let $qx = qv.pow_u64(x as u64);
                let $q = qv;
                $body.map(Scalar::Rational)
            }
            QParam::Symbolic => {
                let $chi: Vec<QRationalFunction> = p.chi.values_in()?;
                let x = p.x.as_int().ok_or(GenocchiError::NonIntegerShiftInExactBackend)?;
                let ind = QRationalFunction::indeterminate();
                let $qx = ind.pow_u64(x as u64);
                let $q = &ind;
                $body.map(Scalar::Symbolic)
            }
            QParam::Complex(qv) => {
                let $chi: Vec<Complex64> = p.chi.values_in()?;
                let $qx = match &p.x {
                    Shift::Int(x) => qv.pow_u64(*x as u64),
                    Shift::Real(x) => qv.powf(*x),
                };
                let $q = qv;
                $body.map(Scalar::Complex)
            }
        }
    }};
}

/// Normalized order-r value (no h, no weights).
pub fn q_genocchi_r(params: &QGenocchiParams) -> Result<NormalizedGenocchiValue, GenocchiError> {
    params.validate()?;
    if params.h.is_some() {
        return Err(GenocchiError::UnexpectedH);
    }
    if params.weights.is_some() {
        return Err(GenocchiError::UnexpectedWeights);
    }
    let d = params.chi.modulus();
    let g = eval_in_backends!(params, |q, qx, chi| closed_form_r(
        params.n, params.r, d, &chi, q, &qx
    ))?;
    Ok(NormalizedGenocchiValue {
        g,
        params: params.clone(),
    })
}

/// Normalized (h, r) value; h must be present.
pub fn q_genocchi_hr(params: &QGenocchiParams) -> Result<NormalizedGenocchiValue, GenocchiError> {
    params.validate()?;
    if params.weights.is_some() {
        return Err(GenocchiError::UnexpectedWeights);
    }
    let h = params.h.ok_or(GenocchiError::MissingH)?;
    let d = params.chi.modulus();
    let g = eval_in_backends!(params, |q, qx, chi| closed_form_hr(
        params.n, params.r, h, d, &chi, q, &qx
    ))?;
    Ok(NormalizedGenocchiValue {
        g,
        params: params.clone(),
    })
}

/// Normalized Barnes value; weights must be present (length r, positive).
pub fn barnes_q_genocchi(params: &QGenocchiParams) -> Result<NormalizedGenocchiValue, GenocchiError> {
    params.validate()?;
    if params.h.is_some() {
        return Err(GenocchiError::UnexpectedH);
    }
    let weights = params.weights.as_ref().ok_or(GenocchiError::MissingWeights)?;
    let d = params.chi.modulus();
    let int_weights: Option<Vec<u64>> = weights.iter().map(|w| w.as_int()).collect();
    let g = match (&params.q, int_weights) {
        (QParam::Complex(qv), None) => {
            let chi: Vec<Complex64> = params.chi.values_in()?;
            let ws: Vec<f64> = weights.iter().map(|w| w.to_f64()).collect();
            let qx = match &params.x {
                Shift::Int(x) => qv.pow_u64(*x as u64),
                Shift::Real(x) => qv.powf(*x),
            };
            closed_form_barnes_f64(params.n, params.r, d, &chi, &ws, *qv, qx).map(Scalar::Complex)?
        }
        (_, Some(ws)) => eval_in_backends!(params, |q, qx, chi| closed_form_barnes(
            params.n, params.r, d, &chi, &ws, q, &qx
        ))?,
        (_, None) => return Err(GenocchiError::NonIntegerWeightInExactBackend),
    };
    Ok(NormalizedGenocchiValue {
        g,
        params: params.clone(),
    })
}

/// Un-normalized family value G_{idx}(x): zero below the order, otherwise
/// g_{idx-r} * C(idx, r) * r!. The family is chosen by the presence of h or
/// weights in the parameters.
pub fn unnormalized_at_index(params: &QGenocchiParams, idx: u32) -> Result<Scalar, GenocchiError> {
    if idx < params.r {
        return Ok(Scalar::zero(params.q.backend()));
    }
    let mut p = params.clone();
    p.n = idx - params.r;
    let v = if p.weights.is_some() {
        barnes_q_genocchi(&p)?
    } else if p.h.is_some() {
        q_genocchi_hr(&p)?
    } else {
        q_genocchi_r(&p)?
    };
    Ok(v.unnormalized())
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    #[serde(rename = "exact-pass")]
    ExactPass,
    #[serde(rename = "tol-pass")]
    TolPass,
    #[serde(rename = "fail")]
    Fail,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictStatus::ExactPass => write!(f, "exact-pass"),
            VerdictStatus::TolPass => write!(f, "tol-pass"),
            VerdictStatus::Fail => write!(f, "fail"),
        }
    }
}

/// One identity-check record, serialized as
/// `{"identity", "params", "backend", "status", "lhs", "rhs", "abs_diff"}`.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub identity: String,
    pub params: Map<String, Value>,
    pub backend: String,
    pub status: VerdictStatus,
    pub lhs: String,
    pub rhs: String,
    pub abs_diff: Option<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status != VerdictStatus::Fail
    }
}

pub(crate) fn exact_verdict<F: Field>(
    identity: &str,
    params: Map<String, Value>,
    backend: Backend,
    lhs: &F,
    rhs: &F,
) -> Verdict {
    let status = if lhs == rhs {
        VerdictStatus::ExactPass
    } else {
        VerdictStatus::Fail
    };
    Verdict {
        identity: identity.to_string(),
        params,
        backend: backend.to_string(),
        status,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        abs_diff: None,
    }
}

pub(crate) fn tol_verdict(
    identity: &str,
    params: Map<String, Value>,
    lhs: &Complex64,
    rhs: &Complex64,
    tol: f64,
) -> Verdict {
    let diff = (lhs - rhs).norm();
    Verdict {
        identity: identity.to_string(),
        params,
        backend: Backend::Float.to_string(),
        status: if diff <= tol {
            VerdictStatus::TolPass
        } else {
            VerdictStatus::Fail
        },
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        abs_diff: Some(format!("{:e}", diff)),
    }
}

macro_rules! check_dispatch {
    ($qparam:expr, $chi:expr, $tol:expr, $identity:expr, $pmap:expr, |$q:ident, $cv:ident| $sides:expr) => {{
        match $qparam {
            QParam::Rational(qv) => {
                let $cv: Vec<Rational> = $chi.values_in()?;
                let $q = qv;
                let (lhs, rhs) = $sides?;
                Ok(exact_verdict($identity, $pmap, Backend::Exact, &lhs, &rhs))
            }
            QParam::Symbolic => {
                let $cv: Vec<QRationalFunction> = $chi.values_in()?;
                let ind = QRationalFunction::indeterminate();
                let $q = &ind;
                let (lhs, rhs) = $sides?;
                Ok(exact_verdict($identity, $pmap, Backend::Symbolic, &lhs, &rhs))
            }
            QParam::Complex(qv) => {
                let $cv: Vec<Complex64> = $chi.values_in()?;
                let $q = qv;
                let (lhs, rhs) = $sides?;
                Ok(tol_verdict($identity, $pmap, &lhs, &rhs, $tol))
            }
        }
    }};
}

fn base_params_map(
    n: u32,
    r: u32,
    h: Option<i64>,
    chi: &DirichletCharacter,
    x: u32,
    q: &QParam,
) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), n.into());
    m.insert("r".into(), r.into());
    if let Some(h) = h {
        m.insert("h".into(), h.into());
    }
    m.insert("d".into(), chi.modulus().into());
    m.insert("chi".into(), chi.label().into());
    m.insert("x".into(), x.into());
    m.insert("q".into(), q.label().into());
    m
}

fn distribution_sides<F: Field>(
    n: u32,
    r: u32,
    h: i64,
    d: u64,
    cv: &[F],
    qf: &F,
    x: u32,
) -> Result<(F, F), GenocchiError> {
    let qx = |y: u32| qf.pow_u64(y as u64);
    let lhs = qf.pow_i64(d as i64 * (h - 1))
        * &closed_form_hr(n, r, h, d, cv, qf, &qx(x + d as u32))?
        + &closed_form_hr(n, r, h, d, cv, qf, &qx(x))?;
    let mut rhs = F::zero();
    for (l, chi_l) in cv.iter().enumerate() {
        if chi_l.is_zero() {
            continue;
        }
        let sub = closed_form_hr(n, r - 1, h - 1, d, cv, qf, &qx(x + l as u32))?;
        let term = parity_sign::<F>(l as u64) * chi_l * &qf.pow_i64((h - 1) * l as i64) * &sub;
        rhs = rhs + term;
    }
    rhs = F::from_i64(2) * &rhs;
    Ok((lhs, rhs))
}

/// Distribution identity of the (h, r) family:
/// `q^{d(h-1)} g^{(h,r)}_n(x+d) + g^{(h,r)}_n(x)
///   = 2 sum_{l<d} chi(l)(-1)^l q^{(h-1)l} g^{(h-1,r-1)}_n(x+l)`,
/// where the order-0 family on the right is `[y]_q^n`.
pub fn check_distribution(
    n: u32,
    r: u32,
    h: i64,
    chi: &DirichletCharacter,
    x: u32,
    q: &QParam,
    tol: f64,
) -> Result<Verdict, GenocchiError> {
    if r == 0 {
        return Err(GenocchiError::ZeroOrder);
    }
    let d = chi.modulus();
    let mut pmap = base_params_map(n, r, Some(h), chi, x, q);
    if r == 1 {
        pmap.insert("rhs_convention".into(), "order-0 family [y]_q^n".into());
    }
    check_dispatch!(q, chi, tol, "distribution", pmap, |qf, cv| {
        distribution_sides(n, r, h, d, &cv, qf, x)
    })
}

fn shift_sides<F: Field>(
    n: u32,
    r: u32,
    h: i64,
    d: u64,
    cv: &[F],
    qf: &F,
    x: u32,
) -> Result<(F, F), GenocchiError> {
    let qx = qf.pow_u64(x as u64);
    let lhs = qx.clone() * &closed_form_hr(n, r, h + 1, d, cv, qf, &qx)?;
    let rhs = (qf.clone() - &F::one()) * &closed_form_hr(n + 1, r, h, d, cv, qf, &qx)?
        + &closed_form_hr(n, r, h, d, cv, qf, &qx)?;
    Ok((lhs, rhs))
}

/// Shift identity of the (h, r) family:
/// `q^x g^{(h+1,r)}_n(x) = (q - 1) g^{(h,r)}_{n+1}(x) + g^{(h,r)}_n(x)`,
/// where g_{n+1} carries the index-(n+1) normalization C(n+r+1, r) r!.
pub fn check_shift(
    n: u32,
    r: u32,
    h: i64,
    chi: &DirichletCharacter,
    x: u32,
    q: &QParam,
    tol: f64,
) -> Result<Verdict, GenocchiError> {
    if r == 0 {
        return Err(GenocchiError::ZeroOrder);
    }
    let d = chi.modulus();
    let pmap = base_params_map(n, r, Some(h), chi, x, q);
    check_dispatch!(q, chi, tol, "shift", pmap, |qf, cv| {
        shift_sides(n, r, h, d, &cv, qf, x)
    })
}

fn symmetry_sides<F: Field>(
    n: u32,
    r: u32,
    d: u64,
    cv: &[F],
    qf: &F,
    x: u32,
) -> Result<(F, F), GenocchiError> {
    let qinv = qf.inv();
    let lhs = closed_form_hr(n, r, r as i64, d, cv, &qinv, &qinv.pow_u64((r - x) as u64))?;
    let exponent = n as u64 + (r as u64) * (r as u64 - 1) / 2;
    let rhs = parity_sign::<F>(n as u64)
        * &qf.pow_u64(exponent)
        * &closed_form_hr(n, r, r as i64, d, cv, qf, &qf.pow_u64(x as u64))?;
    Ok((lhs, rhs))
}

/// Reflection identity of the (r, r) family under q -> 1/q:
/// `g^{(r,r)}_{n, 1/q}(r - x) = (-1)^n q^{n + C(r,2)} g^{(r,r)}_{n, q}(x)`
/// for 0 <= x <= r. The left side is evaluated by exact substitution of the
/// reciprocal parameter.
pub fn check_symmetry(
    n: u32,
    r: u32,
    chi: &DirichletCharacter,
    x: u32,
    q: &QParam,
    tol: f64,
) -> Result<Verdict, GenocchiError> {
    if r == 0 {
        return Err(GenocchiError::ZeroOrder);
    }
    if x > r {
        return Err(GenocchiError::ShiftOutOfRange);
    }
    let d = chi.modulus();
    let pmap = base_params_map(n, r, Some(r as i64), chi, x, q);
    check_dispatch!(q, chi, tol, "symmetry", pmap, |qf, cv| {
        symmetry_sides(n, r, d, &cv, qf, x)
    })
}

/// Classical limit: the symbolic order-r value, un-normalized and evaluated
/// at q -> 1, must equal the classical character-twisted value.
pub fn classical_limit(
    n: u32,
    r: u32,
    chi: &DirichletCharacter,
    x: u32,
) -> Result<Verdict, GenocchiError> {
    if r == 0 {
        return Err(GenocchiError::ZeroOrder);
    }
    let d = chi.modulus();
    let cv: Vec<QRationalFunction> = chi.values_in()?;
    let ind = QRationalFunction::indeterminate();
    let g = closed_form_r(n, r, d, &cv, &ind, &ind.pow_u64(x as u64))?;
    let unnorm = g * &QRationalFunction::from_rational(&normalization(n, r));
    let lim = unnorm.limit_at_one()?;
    let classical_val = classical::generalized_genocchi_exact(
        (n + r) as usize,
        r,
        chi,
        &Rational::from_integer(x.into()),
    )
    .map_err(|e| GenocchiError::Classical(e.to_string()))?;
    let pmap = base_params_map(n, r, None, chi, x, &QParam::Symbolic);
    Ok(exact_verdict("limit", pmap, Backend::Symbolic, &lim, &classical_val))
}

// ---------------------------------------------------------------------------
// Series route for the (h, r) family
// ---------------------------------------------------------------------------

/// Numeric estimate of the (h, r) value from its m-series
/// `2^r sum_m C(m+r-1, m)_{q^d} (-1)^m q^{d(h-r)m} S_a(m)` with
/// `S_a(m) = sum_{a's} prod_j chi(a_j) q^{sum (h-j)a_j} [x + sum a_i + dm]_q^n`.
///
/// For h > r the series converges geometrically and `m_max` partial sums are
/// used, with the geometric tail bound as the residual. For h = r the series
/// is Abel-regularized through the oracle. For h < r the damped series
/// diverges at the oracle's evaluation points and the non-convergence is
/// surfaced as an error.
pub fn q_genocchi_hr_series(
    params: &QGenocchiParams,
    m_max: usize,
) -> Result<SummationEstimate, GenocchiError> {
    params.validate()?;
    let h = params.h.ok_or(GenocchiError::MissingH)?;
    let q: Complex64 = match &params.q {
        QParam::Rational(v) => Complex64::new(rational_to_f64(v), 0.0),
        QParam::Complex(v) => *v,
        QParam::Symbolic => return Err(GenocchiError::UnsupportedBackend(Backend::Symbolic)),
    };
    let x: f64 = match &params.x {
        Shift::Int(v) => *v as f64,
        Shift::Real(v) => *v,
    };
    let (n, r) = (params.n, params.r);
    let d = params.chi.modulus();
    let chi_vals: Vec<Complex64> = params.chi.values_in()?;
    let qd = q.powi(d as i32);
    let two_r = 2.0f64.powi(r as i32);

    // C(m+r-1, m)_{q^d} via the ratio recurrence, cached.
    let binoms: RefCell<Vec<Complex64>> = RefCell::new(vec![Complex64::new(1.0, 0.0)]);
    let gauss = |m: usize| -> Complex64 {
        let mut cache = binoms.borrow_mut();
        while cache.len() <= m {
            let k = cache.len() as i32;
            let prev = cache[cache.len() - 1];
            let ratio = (Complex64::new(1.0, 0.0) - qd.powi(k + r as i32 - 1))
                / (Complex64::new(1.0, 0.0) - qd.powi(k));
            cache.push(prev * ratio);
        }
        cache[m]
    };

    let bracket_pow = |y: f64| -> Complex64 {
        let b = (Complex64::new(1.0, 0.0) - q.powf(y)) / (Complex64::new(1.0, 0.0) - q);
        b.powi(n as i32)
    };

    // S_a(m): d^r-term sum over the character window, each tuple weighted by
    // prod chi(a_j) (-1)^{sum a_j} q^{sum (h-j) a_j}.
    let a_sum = |m: u64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut tuple = vec![0u64; r as usize];
        loop {
            let mut coeff = Complex64::new(1.0, 0.0);
            let mut total_a = 0u64;
            let mut exp = 0i64;
            let mut zero = false;
            for (j, &a) in tuple.iter().enumerate() {
                let cv = chi_vals[a as usize];
                if Field::is_zero(&cv) {
                    zero = true;
                    break;
                }
                coeff *= cv;
                total_a += a;
                exp += (h - (j as i64 + 1)) * a as i64;
            }
            if !zero {
                let sign = if total_a % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * coeff * q.powi(exp as i32) * bracket_pow(x + (total_a + d * m) as f64);
            }
            // odometer over [0, d)^r
            let mut pos = 0usize;
            loop {
                if pos == tuple.len() {
                    return acc;
                }
                tuple[pos] += 1;
                if tuple[pos] < d {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
        }
    };

    let term = |m: u64| -> Complex64 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        two_r * gauss(m as usize) * sign * q.powi((d as i64 * (h - r as i64) * m as i64) as i32) * a_sum(m)
    };

    if h > r as i64 {
        let mut value = Complex64::new(0.0, 0.0);
        let mut last = Complex64::new(0.0, 0.0);
        for m in 0..=m_max as u64 {
            last = term(m);
            value += last;
        }
        let ratio = q.norm().powi((d as i64 * (h - r as i64)) as i32);
        let residual = if ratio < 1.0 {
            last.norm() * ratio / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        Ok(SummationEstimate {
            value,
            extrapolation_levels: 0,
            residual,
        })
    } else {
        Ok(oracle::abel_sum_1d(term, 6)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QPolynomial;
    use crate::rational::{rat, rat_int};

    fn principal(d: u64) -> DirichletCharacter {
        DirichletCharacter::principal(d).unwrap()
    }

    fn quadratic(d: u64) -> DirichletCharacter {
        DirichletCharacter::quadratic(d).unwrap()
    }

    fn half() -> QParam {
        QParam::rational(rat(1, 2)).unwrap()
    }

    fn sym(num: &[i64], den: &[i64]) -> Scalar {
        Scalar::Symbolic(QRationalFunction::new(
            QPolynomial::from_i64_coeffs(num),
            QPolynomial::from_i64_coeffs(den),
        ))
    }

    #[test]
    fn order_r_base_cases() {
        // d=1, r=1, n=0: only l=0 survives, 2 * 1/2 = 1
        let p = QGenocchiParams::order_r(0, 1, principal(1), 0, half());
        assert_eq!(q_genocchi_r(&p).unwrap().g, Scalar::Rational(rat_int(1)));

        // n=1 symbolic: -1/(1+q); at q=1/2 the value is -2/3, unnormalized -4/3
        let p = QGenocchiParams::order_r(1, 1, principal(1), 0, QParam::symbolic());
        let v = q_genocchi_r(&p).unwrap();
        assert_eq!(v.g, sym(&[-1], &[1, 1]));
        let p = QGenocchiParams::order_r(1, 1, principal(1), 0, half());
        let v = q_genocchi_r(&p).unwrap();
        assert_eq!(v.g, Scalar::Rational(rat(-2, 3)));
        assert_eq!(v.unnormalized(), Scalar::Rational(rat(-4, 3)));

        // n=2 symbolic: -(1-q)/((1+q)(1+q^2)); its limit at q=1 matches G_3 = 0
        let p = QGenocchiParams::order_r(2, 1, principal(1), 0, QParam::symbolic());
        let v = q_genocchi_r(&p).unwrap();
        assert_eq!(v.g, sym(&[-1, 1], &[1, 1, 1, 1]));
        let f = v.g.as_symbolic().unwrap();
        assert_eq!(f.limit_at_one().unwrap(), rat_int(0));
    }

    #[test]
    fn order_r_n0_is_twisted_sign_sum_power() {
        // g_0 = (sum_a chi(a)(-1)^a)^r, here (-2)^r for the quadratic mod 3
        for r in 1..=4u32 {
            let p = QGenocchiParams::order_r(0, r, quadratic(3), 0, half());
            let expect = rat_int(-2).pow_u64(r as u64);
            assert_eq!(q_genocchi_r(&p).unwrap().g, Scalar::Rational(expect));
            let p = QGenocchiParams::order_r(0, r, quadratic(3), 0, QParam::symbolic());
            let v = q_genocchi_r(&p).unwrap();
            assert_eq!(v.g.as_symbolic().unwrap().limit_at_one().unwrap(), rat_int(-2).pow_u64(r as u64));
        }
    }

    #[test]
    fn hr_family_reduces_to_order_r_at_h_one_r_one() {
        for d in [1u64, 3] {
            let chi = if d == 1 { principal(1) } else { quadratic(3) };
            for n in 0..=6u32 {
                let a = QGenocchiParams::weighted_h(n, 1, 1, chi.clone(), 0, QParam::symbolic());
                let b = QGenocchiParams::order_r(n, 1, chi.clone(), 0, QParam::symbolic());
                assert_eq!(q_genocchi_hr(&a).unwrap().g, q_genocchi_r(&b).unwrap().g);
            }
        }
    }

    #[test]
    fn hr_example_value() {
        // r=1, h=2, d=1, n=0, q=1/2: 2/(1+q) = 4/3
        let p = QGenocchiParams::weighted_h(0, 1, 2, principal(1), 0, half());
        assert_eq!(q_genocchi_hr(&p).unwrap().g, Scalar::Rational(rat(4, 3)));
    }

    #[test]
    fn barnes_matches_order_r_at_unit_weights() {
        for d in [1u64, 3] {
            let chi = if d == 1 { principal(1) } else { quadratic(3) };
            for r in 1..=3u32 {
                for n in 0..=4u32 {
                    let w = vec![Weight::Int(1); r as usize];
                    let a = QGenocchiParams::barnes(n, r, w, chi.clone(), 0, QParam::symbolic());
                    let b = QGenocchiParams::order_r(n, r, chi.clone(), 0, QParam::symbolic());
                    assert_eq!(
                        barnes_q_genocchi(&a).unwrap().g,
                        q_genocchi_r(&b).unwrap().g,
                        "r={} n={} d={}",
                        r,
                        n,
                        d
                    );
                }
            }
        }
    }

    #[test]
    fn barnes_weight_two_example() {
        // r=1, d=1, w=(2), n=1: -(1+q)/(1+q^2)
        let p = QGenocchiParams::barnes(1, 1, vec![Weight::Int(2)], principal(1), 0, QParam::symbolic());
        assert_eq!(barnes_q_genocchi(&p).unwrap().g, sym(&[-1, -1], &[1, 0, 1]));
        // n=0 is weight independent
        for w in [1u64, 2, 5] {
            let p = QGenocchiParams::barnes(0, 2, vec![Weight::Int(w), Weight::Int(1)], quadratic(3), 0, half());
            assert_eq!(barnes_q_genocchi(&p).unwrap().g, Scalar::Rational(rat_int(4)));
        }
    }

    #[test]
    fn barnes_validation_errors() {
        let p = QGenocchiParams::barnes(0, 2, vec![Weight::Int(1)], principal(1), 0, half());
        assert_eq!(
            barnes_q_genocchi(&p).unwrap_err(),
            GenocchiError::WeightCount { expected: 2, got: 1 }
        );
        let p = QGenocchiParams::barnes(0, 1, vec![Weight::Rat(rat(1, 2))], principal(1), 0, half());
        assert_eq!(
            barnes_q_genocchi(&p).unwrap_err(),
            GenocchiError::NonIntegerWeightInExactBackend
        );
        let p = QGenocchiParams::barnes(
            0,
            1,
            vec![Weight::Rat(rat(1, 2))],
            principal(1),
            0,
            QParam::complex(Complex64::new(0.5, 0.0)).unwrap(),
        );
        assert!(barnes_q_genocchi(&p).is_ok());
    }

    #[test]
    fn normalization_round_trip() {
        let p = QGenocchiParams::order_r(3, 2, quadratic(3), 1, half());
        let v = q_genocchi_r(&p).unwrap();
        let un = v.unnormalized();
        let back = NormalizedGenocchiValue::renormalize(&un, 3, 2);
        assert_eq!(back, v.g);
        assert_eq!(v.index(), 5);
    }

    #[test]
    fn vanishing_below_order() {
        let p = QGenocchiParams::order_r(0, 3, quadratic(3), 0, half());
        for idx in 0..3u32 {
            assert!(unnormalized_at_index(&p, idx).unwrap().is_zero());
        }
        assert!(!unnormalized_at_index(&p, 3).unwrap().is_zero());
    }

    #[test]
    fn non_real_character_rejected_in_exact_backends() {
        let mod5 = DirichletCharacter::enumerate(5).unwrap();
        let nonreal = mod5.iter().find(|c| !c.is_real()).unwrap().clone();
        let p = QGenocchiParams::order_r(1, 1, nonreal.clone(), 0, half());
        assert_eq!(
            q_genocchi_r(&p).unwrap_err(),
            GenocchiError::Character(CharacterError::NonRealCharacterInExactBackend)
        );
        let p = QGenocchiParams::order_r(
            1,
            1,
            nonreal,
            0,
            QParam::complex(Complex64::new(0.5, 0.0)).unwrap(),
        );
        assert!(q_genocchi_r(&p).is_ok());
    }

    #[test]
    fn backend_coherence_on_a_grid() {
        let q0 = rat(1, 2);
        for d in [1u64, 3] {
            let chi = if d == 1 { principal(1) } else { quadratic(3) };
            for r in 1..=2u32 {
                for n in 0..=4u32 {
                    for x in 0..=1u32 {
                        let ps = QGenocchiParams::order_r(n, r, chi.clone(), x, QParam::symbolic());
                        let pe = QGenocchiParams::order_r(n, r, chi.clone(), x, half());
                        let sym_val = q_genocchi_r(&ps).unwrap().g;
                        let sym_at = sym_val.as_symbolic().unwrap().eval_rational(&q0).unwrap();
                        let exact = q_genocchi_r(&pe).unwrap().g;
                        assert_eq!(Some(&sym_at), exact.as_rational(), "r={} n={} d={} x={}", r, n, d, x);
                    }
                }
            }
        }
    }

    #[test]
    fn distribution_identity_smoke() {
        // d=1, exact backend
        let v = check_distribution(3, 2, 2, &principal(1), 0, &half(), 1e-9).unwrap();
        assert!(v.passed(), "{:?}", v);
        // d=3 quadratic, symbolic, x in {0, 1}
        for x in 0..=1u32 {
            let v = check_distribution(2, 2, 1, &quadratic(3), x, &QParam::symbolic(), 0.0).unwrap();
            assert_eq!(v.status, VerdictStatus::ExactPass, "{:?}", v);
        }
        // r = 1 exercises the order-0 convention
        for n in 0..=3u32 {
            let v = check_distribution(n, 1, 1, &quadratic(3), 1, &QParam::symbolic(), 0.0).unwrap();
            assert_eq!(v.status, VerdictStatus::ExactPass, "n={} {:?}", n, v);
        }
    }

    #[test]
    fn shift_identity_smoke() {
        for (n, r, h) in [(0u32, 1u32, 1i64), (2, 1, 1), (3, 2, 0), (1, 3, 2)] {
            let v = check_shift(n, r, h, &principal(1), 0, &QParam::symbolic(), 0.0).unwrap();
            assert_eq!(v.status, VerdictStatus::ExactPass, "{:?}", v);
        }
        // evaluated certificate at q = 1/3
        let q = QParam::rational(rat(1, 3)).unwrap();
        let v = check_shift(4, 1, 1, &principal(1), 0, &q, 0.0).unwrap();
        assert_eq!(v.status, VerdictStatus::ExactPass);
    }

    #[test]
    fn symmetry_identity_holds_for_modulus_one() {
        let v = check_symmetry(1, 1, &principal(1), 0, &half(), 0.0).unwrap();
        assert_eq!(v.status, VerdictStatus::ExactPass, "{:?}", v);
        for r in 1..=3u32 {
            for n in 0..=4u32 {
                for x in 0..=r {
                    let v = check_symmetry(n, r, &principal(1), x, &QParam::symbolic(), 0.0).unwrap();
                    assert_eq!(v.status, VerdictStatus::ExactPass, "r={} n={} x={} {:?}", r, n, x, v);
                }
            }
        }
        assert_eq!(
            check_symmetry(1, 1, &principal(1), 5, &half(), 0.0).unwrap_err(),
            GenocchiError::ShiftOutOfRange
        );
    }

    #[test]
    fn symmetry_identity_is_refuted_for_modulus_three() {
        // The reflection identity as stated is specific to modulus 1. For
        // modulus 3 the simplest nontrivial instance (r=1, n=1, x=0) already
        // fails for both real characters: substituting 1/q into the closed
        // form of g_1(x) gives
        //   quadratic: lhs = -2q^2/(1-q+q^2)   vs  rhs = +2q(1-q)/(1-q+q^2)
        //   principal: lhs =  2q/(1+q^3)       vs  rhs = -2q^2/(1+q^3)
        // and the Abel continuation of the defining series at 1/q agrees
        // with the substitution route, so this is not an evaluation-order
        // artifact. The suite reports these instances as failures.
        for chi in [principal(3), quadratic(3)] {
            let v = check_symmetry(1, 1, &chi, 0, &QParam::symbolic(), 0.0).unwrap();
            assert_eq!(v.status, VerdictStatus::Fail, "{:?}", v);
        }
    }

    #[test]
    fn classical_limit_reproduces_small_genocchi() {
        // d=1, r=1: limits give G_1..G_8 = 1, -1, 0, 1, 0, -3, 0, 17
        let expect = [1i64, -1, 0, 1, 0, -3, 0, 17];
        for (i, &e) in expect.iter().enumerate() {
            let n = i as u32; // index n+1
            let v = classical_limit(n, 1, &principal(1), 0).unwrap();
            assert_eq!(v.status, VerdictStatus::ExactPass, "G_{}: {:?}", n + 1, v);
            assert_eq!(v.lhs, e.to_string());
        }
        // d=3 quadratic, first index: -2
        let v = classical_limit(0, 1, &quadratic(3), 0).unwrap();
        assert_eq!(v.status, VerdictStatus::ExactPass);
        assert_eq!(v.lhs, "-2");
    }

    #[test]
    fn hr_series_routes() {
        // h > r: convergent partial sums against the closed form
        let p = QGenocchiParams::weighted_h(1, 1, 2, principal(1), 0, half());
        let est = q_genocchi_hr_series(&p, 60).unwrap();
        let closed = q_genocchi_hr(&p).unwrap().g;
        let closed = closed.to_complex_lossy().unwrap();
        assert!(
            (est.value - closed).norm() < 2f64.powi(-50),
            "difference {:e}",
            (est.value - closed).norm()
        );
        assert!(est.residual < 2f64.powi(-50));

        // h = r: Abel route
        let p = QGenocchiParams::weighted_h(2, 1, 1, quadratic(3), 0, half());
        let est = q_genocchi_hr_series(&p, 0).unwrap();
        let closed = q_genocchi_hr(&p).unwrap().g.to_complex_lossy().unwrap();
        assert!(
            (est.value - closed).norm() < 1e-6,
            "difference {:e}",
            (est.value - closed).norm()
        );

        // h < r diverges beyond the damped series' reach
        let p = QGenocchiParams::weighted_h(1, 2, 1, principal(1), 0, half());
        assert!(matches!(
            q_genocchi_hr_series(&p, 10).unwrap_err(),
            GenocchiError::Oracle(OracleError::NonConvergentInnerSum(_))
        ));
    }

    #[test]
    fn hr_series_route_equivalence_grid() {
        // convergent-series route vs closed form for h > r over the small grid
        for d in [1u64, 3] {
            let chi = if d == 1 { principal(1) } else { quadratic(3) };
            for r in 1..=2u32 {
                for h_off in 1..=2i64 {
                    for n in 0..=4u32 {
                        for x in 0..=1u32 {
                            let p = QGenocchiParams::weighted_h(
                                n,
                                r,
                                r as i64 + h_off,
                                chi.clone(),
                                x,
                                half(),
                            );
                            let est = q_genocchi_hr_series(&p, 200).unwrap();
                            let closed = q_genocchi_hr(&p).unwrap().g.to_complex_lossy().unwrap();
                            let diff = (est.value - closed).norm();
                            assert!(
                                diff <= est.residual + 1e-12,
                                "d={} r={} h={} n={} x={}: diff {:e} residual {:e}",
                                d,
                                r,
                                r as i64 + h_off,
                                n,
                                x,
                                diff,
                                est.residual
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn float_backend_allows_real_shift() {
        let qf = QParam::complex(Complex64::new(0.5, 0.0)).unwrap();
        let int_x = QGenocchiParams::order_r(2, 1, principal(1), 1, qf.clone());
        let real_x = QGenocchiParams {
            x: Shift::Real(1.0),
            ..int_x.clone()
        };
        let a = q_genocchi_r(&int_x).unwrap().g.as_complex().unwrap();
        let b = q_genocchi_r(&real_x).unwrap().g.as_complex().unwrap();
        assert!((a - b).norm() < 1e-12);
        // real shifts are rejected outside the float backend
        let bad = QGenocchiParams {
            x: Shift::Real(0.5),
            q: half(),
            ..int_x
        };
        assert_eq!(
            q_genocchi_r(&bad).unwrap_err(),
            GenocchiError::NonIntegerShiftInExactBackend
        );
    }

    #[test]
    fn symmetry_reports_for_non_real_characters_without_asserting() {
        // the float backend evaluates the verbatim statement for non-real
        // characters and reports; the statement happens to fail there just
        // as it does for real characters with modulus > 1
        let mod5 = DirichletCharacter::enumerate(5).unwrap();
        let nonreal = mod5.iter().find(|c| !c.is_real()).unwrap().clone();
        let q = QParam::complex(Complex64::new(0.5, 0.0)).unwrap();
        let v = check_symmetry(1, 1, &nonreal, 0, &q, 1e-9).unwrap();
        assert_eq!(v.backend, "float");
        assert!(v.abs_diff.is_some());
    }

    #[test]
    fn hr_series_m0_term_is_a_sum() {
        // with m_max = 0 and h > r the estimate is the m = 0 term alone
        let p = QGenocchiParams::weighted_h(2, 1, 3, quadratic(3), 1, half());
        let est = q_genocchi_hr_series(&p, 0).unwrap();
        // m = 0 term: 2 * sum_a chi(a)(-1)^a q^{(h-1)a} [x + a]_q^2
        // a=1: chi=1, sign=-1; a=2: chi=-1, sign=+1 -> both coefficients -1
        let q = 0.5f64;
        let mut expect = 0.0;
        for a in [1u32, 2] {
            let bracket = (1.0 - q.powi(1 + a as i32)) / (1.0 - q);
            expect -= q.powi(2 * a as i32) * bracket * bracket;
        }
        expect *= 2.0;
        assert!((est.value.re - expect).abs() < 1e-12, "{} vs {}", est.value.re, expect);
    }
}
