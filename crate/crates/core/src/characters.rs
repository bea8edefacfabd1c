//! Dirichlet characters with odd modulus: construction (principal, quadratic,
//! explicit table), validation, evaluation into any scalar backend, and
//! enumeration of all characters for small moduli.
//!
//! Real characters carry exact integer values -1, 0, +1 so that downstream
//! identities can be certified with exact equality; non-real characters carry
//! root-of-unity values and are confined to the floating backend.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Deserialize;
use thiserror::Error;

use crate::field::Field;
use crate::scalar::{Backend, Scalar};

/// Largest modulus accepted by [`DirichletCharacter::enumerate`].
pub const ENUMERATION_BOUND: u64 = 1000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("modulus {0} is not an odd positive integer")]
    InvalidModulus(u64),
    #[error("quadratic character needs modulus >= 3 (use principal for d = 1)")]
    QuadraticModulusOne,
    #[error("value table has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("support violation at residue {residue}: value must be zero exactly when gcd(residue, modulus) > 1")]
    SupportViolation { residue: u64 },
    #[error("not multiplicative at the residue pair ({a}, {b})")]
    NotMultiplicative { a: u64, b: u64 },
    #[error("modulus {0} exceeds the enumeration bound {ENUMERATION_BOUND}")]
    BoundExceeded(u64),
    #[error("non-real character used in an exact backend")]
    NonRealCharacterInExactBackend,
    #[error("integer value {0} is not a valid character value (only -1, 0, 1)")]
    InvalidIntValue(i64),
    #[error("malformed character file: {0}")]
    BadFile(String),
}

/// A single character value: an exact integer for real characters, or a root
/// of unity e^{2 pi i k/m} otherwise. Zero is always `Int(0)`.
///
/// Values are kept canonical: `Root` always has 0 < k < m, gcd(k, m) = 1 and
/// m >= 3 (the roots 1 and -1 collapse to `Int`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CharacterValue {
    Int(i8),
    Root { k: u32, m: u32 },
}

impl CharacterValue {
    pub fn zero() -> Self {
        CharacterValue::Int(0)
    }

    pub fn one() -> Self {
        CharacterValue::Int(1)
    }

    /// Canonical root of unity e^{2 pi i k/m}.
    pub fn root(k: u64, m: u64) -> Self {
        assert!(m > 0, "root order must be positive");
        let k = k % m;
        if k == 0 {
            return CharacterValue::Int(1);
        }
        let g = k.gcd(&m);
        let (k, m) = (k / g, m / g);
        if m == 1 {
            CharacterValue::Int(1)
        } else if m == 2 {
            CharacterValue::Int(-1)
        } else {
            CharacterValue::Root {
                k: k as u32,
                m: m as u32,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharacterValue::Int(0))
    }

    pub fn is_real(&self) -> bool {
        matches!(self, CharacterValue::Int(_))
    }

    /// Multiplicative order; 0 for the zero value.
    pub fn order(&self) -> u64 {
        match self {
            CharacterValue::Int(0) => 0,
            CharacterValue::Int(1) => 1,
            CharacterValue::Int(_) => 2,
            CharacterValue::Root { m, .. } => *m as u64,
        }
    }

    /// Angle as a fraction k/m of a full turn; None for zero.
    fn as_fraction(&self) -> Option<(u64, u64)> {
        match self {
            CharacterValue::Int(0) => None,
            CharacterValue::Int(1) => Some((0, 1)),
            CharacterValue::Int(_) => Some((1, 2)),
            CharacterValue::Root { k, m } => Some((*k as u64, *m as u64)),
        }
    }

    pub fn mul(&self, other: &CharacterValue) -> CharacterValue {
        match (self.as_fraction(), other.as_fraction()) {
            (Some((k1, m1)), Some((k2, m2))) => CharacterValue::root(k1 * m2 + k2 * m1, m1 * m2),
            _ => CharacterValue::Int(0),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self.as_fraction() {
            None => Complex64::new(0.0, 0.0),
            Some((0, _)) => Complex64::new(1.0, 0.0),
            Some((k, m)) if 2 * k == m => Complex64::new(-1.0, 0.0),
            Some((k, m)) => {
                let angle = std::f64::consts::TAU * (k as f64) / (m as f64);
                Complex64::new(angle.cos(), angle.sin())
            }
        }
    }
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterValue::Int(v) => write!(f, "{}", v),
            CharacterValue::Root { k, m } => write!(f, "e({}/{})", k, m),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CharacterKind {
    Principal,
    Quadratic,
    Table,
}

/// A Dirichlet character mod an odd `d`: completely multiplicative, periodic
/// with period `d`, and zero exactly on residues sharing a factor with `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    kind: CharacterKind,
    values: Vec<CharacterValue>,
}

fn check_modulus(d: u64) -> Result<(), CharacterError> {
    if d == 0 || d % 2 == 0 {
        Err(CharacterError::InvalidModulus(d))
    } else {
        Ok(())
    }
}

/// Jacobi symbol (a | n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> Result<i8, CharacterError> {
    check_modulus(n)?;
    let mut num = a.rem_euclid(n as i64) as u64;
    let mut den = n;
    let mut acc: i8 = 1;
    loop {
        num %= den;
        if num == 0 {
            return Ok(if den == 1 { acc } else { 0 });
        }
        while num % 2 == 0 {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                acc = -acc;
            }
        }
        if num == 1 {
            return Ok(acc);
        }
        if num.gcd(&den) > 1 {
            return Ok(0);
        }
        if num % 4 == 3 && den % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut num, &mut den);
    }
}

impl DirichletCharacter {
    /// Principal character: 1 on units, 0 elsewhere. For d = 1 it is
    /// identically 1 on all integers (including 0).
    pub fn principal(d: u64) -> Result<Self, CharacterError> {
        check_modulus(d)?;
        let values = (0..d)
            .map(|a| {
                if a.gcd(&d) == 1 {
                    CharacterValue::one()
                } else {
                    CharacterValue::zero()
                }
            })
            .collect();
        Ok(DirichletCharacter {
            modulus: d,
            kind: CharacterKind::Principal,
            values,
        })
    }

    /// The Jacobi-symbol character a -> (a | d); real valued.
    pub fn quadratic(d: u64) -> Result<Self, CharacterError> {
        check_modulus(d)?;
        if d == 1 {
            return Err(CharacterError::QuadraticModulusOne);
        }
        let values = (0..d)
            .map(|a| CharacterValue::Int(jacobi(a as i64, d).expect("modulus checked")))
            .collect();
        Ok(DirichletCharacter {
            modulus: d,
            kind: CharacterKind::Quadratic,
            values,
        })
    }

    /// Build from an explicit value table and validate support, chi(1) = 1
    /// and complete multiplicativity on all residue pairs.
    pub fn from_table(d: u64, values: Vec<CharacterValue>) -> Result<Self, CharacterError> {
        check_modulus(d)?;
        if values.len() != d as usize {
            return Err(CharacterError::WrongLength {
                expected: d as usize,
                got: values.len(),
            });
        }
        for v in &values {
            if let CharacterValue::Int(i) = v {
                if !(-1..=1).contains(i) {
                    return Err(CharacterError::InvalidIntValue(*i as i64));
                }
            }
        }
        for a in 0..d {
            let unit = a.gcd(&d) == 1;
            if unit == values[a as usize].is_zero() {
                return Err(CharacterError::SupportViolation { residue: a });
            }
        }
        if d > 1 && values[1] != CharacterValue::one() {
            return Err(CharacterError::NotMultiplicative { a: 1, b: 1 });
        }
        for a in 0..d {
            for b in a..d {
                let lhs = values[((a * b) % d) as usize];
                let rhs = values[a as usize].mul(&values[b as usize]);
                if lhs != rhs {
                    return Err(CharacterError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(DirichletCharacter {
            modulus: d,
            kind: CharacterKind::Table,
            values,
        })
    }

    /// All phi(d) characters mod d, constructed from the cyclic decomposition
    /// of the unit group over odd prime powers. Index 0 is the principal
    /// character; the order is deterministic.
    pub fn enumerate(d: u64) -> Result<Vec<Self>, CharacterError> {
        check_modulus(d)?;
        if d > ENUMERATION_BOUND {
            return Err(CharacterError::BoundExceeded(d));
        }
        if d == 1 {
            return Ok(vec![DirichletCharacter::principal(1)?]);
        }
        let components: Vec<Component> = factorize(d).into_iter().map(Component::new).collect();
        let counts: Vec<u64> = components.iter().map(|c| c.phi).collect();
        let total: u64 = counts.iter().product();
        let quadratic_table = DirichletCharacter::quadratic(d).ok().map(|c| c.values);
        let mut out = Vec::with_capacity(total as usize);
        for index in 0..total {
            // mixed-radix digits, last component fastest
            let mut rem = index;
            let mut digits = vec![0u64; components.len()];
            for (i, c) in counts.iter().enumerate().rev() {
                digits[i] = rem % c;
                rem /= c;
            }
            let mut values = Vec::with_capacity(d as usize);
            for a in 0..d {
                if a.gcd(&d) != 1 {
                    values.push(CharacterValue::zero());
                    continue;
                }
                let mut v = CharacterValue::one();
                for (comp, &digit) in components.iter().zip(&digits) {
                    v = v.mul(&comp.value(a, digit));
                }
                values.push(v);
            }
            let kind = if index == 0 {
                CharacterKind::Principal
            } else if quadratic_table.as_deref() == Some(&values[..]) {
                CharacterKind::Quadratic
            } else {
                CharacterKind::Table
            };
            out.push(DirichletCharacter {
                modulus: d,
                kind,
                values,
            });
        }
        Ok(out)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn kind(&self) -> CharacterKind {
        self.kind
    }

    pub fn values(&self) -> &[CharacterValue] {
        &self.values
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| matches!(v, CharacterValue::Int(0) | CharacterValue::Int(1)))
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.is_real())
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.values
            .iter()
            .filter(|v| !v.is_zero())
            .fold(1u64, |acc, v| acc.lcm(&v.order()))
    }

    /// Short human-readable label used in reports.
    pub fn label(&self) -> String {
        match self.kind {
            CharacterKind::Principal => format!("principal mod {}", self.modulus),
            CharacterKind::Quadratic => format!("quadratic mod {}", self.modulus),
            CharacterKind::Table => format!("table mod {}", self.modulus),
        }
    }

    /// Evaluation at any integer: the argument is reduced mod d.
    pub fn value_at(&self, a: i64) -> CharacterValue {
        let idx = a.rem_euclid(self.modulus as i64) as usize;
        self.values[idx]
    }

    /// Embed chi(a) into a scalar field. Exact fields reject non-real
    /// characters as a whole; the complex field accepts everything.
    pub fn value_in<F: Field>(&self, a: i64) -> Result<F, CharacterError> {
        let v = self.value_at(a);
        F::from_character_value(&v).ok_or(CharacterError::NonRealCharacterInExactBackend)
    }

    /// The full value table embedded into a scalar field; errors on a
    /// non-real character when the field is exact.
    pub fn values_in<F: Field>(&self) -> Result<Vec<F>, CharacterError> {
        self.values
            .iter()
            .map(|v| F::from_character_value(v).ok_or(CharacterError::NonRealCharacterInExactBackend))
            .collect()
    }

    /// chi(a) as a [`Scalar`] in the requested backend.
    pub fn value_scalar(&self, a: i64, backend: Backend) -> Result<Scalar, CharacterError> {
        match backend {
            Backend::Exact => {
                if !self.is_real() {
                    return Err(CharacterError::NonRealCharacterInExactBackend);
                }
                Ok(Scalar::Rational(self.value_in(a)?))
            }
            Backend::Symbolic => {
                if !self.is_real() {
                    return Err(CharacterError::NonRealCharacterInExactBackend);
                }
                Ok(Scalar::Symbolic(self.value_in(a)?))
            }
            Backend::Float => Ok(Scalar::Complex(self.value_at(a).to_complex())),
        }
    }

    /// Parse the JSON character specification:
    /// `{"modulus": d, "kind": "principal"|"quadratic"|"table", "values": [[k,m] or 0, ...]}`
    /// where `[k, m]` encodes e^{2 pi i k/m}. Table values are validated just
    /// like [`DirichletCharacter::from_table`].
    pub fn from_json_str(s: &str) -> Result<Self, CharacterError> {
        let spec: CharacterSpec =
            serde_json::from_str(s).map_err(|e| CharacterError::BadFile(e.to_string()))?;
        match spec.kind.as_str() {
            "principal" => DirichletCharacter::principal(spec.modulus),
            "quadratic" => DirichletCharacter::quadratic(spec.modulus),
            "table" => {
                let raw = spec
                    .values
                    .ok_or_else(|| CharacterError::BadFile("table kind requires a values array".into()))?;
                let mut values = Vec::with_capacity(raw.len());
                for v in raw {
                    values.push(v.into_value()?);
                }
                DirichletCharacter::from_table(spec.modulus, values)
            }
            other => Err(CharacterError::BadFile(format!("unknown kind {:?}", other))),
        }
    }
}

#[derive(Deserialize)]
struct CharacterSpec {
    modulus: u64,
    kind: String,
    #[serde(default)]
    values: Option<Vec<ValueSpec>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ValueSpec {
    Int(i64),
    Pair([u64; 2]),
}

impl ValueSpec {
    fn into_value(self) -> Result<CharacterValue, CharacterError> {
        match self {
            ValueSpec::Int(0) => Ok(CharacterValue::zero()),
            ValueSpec::Int(1) => Ok(CharacterValue::one()),
            ValueSpec::Int(-1) => Ok(CharacterValue::Int(-1)),
            ValueSpec::Int(v) => Err(CharacterError::InvalidIntValue(v)),
            ValueSpec::Pair([_, 0]) => Err(CharacterError::BadFile("root order must be positive".into())),
            ValueSpec::Pair([k, m]) => Ok(CharacterValue::root(k, m)),
        }
    }
}

/// One odd prime-power factor p^e of the modulus, with a generator of the
/// (cyclic) unit group and a discrete-log table.
struct Component {
    pe: u64,
    phi: u64,
    /// dlog[a] = t such that g^t = a (mod p^e), for units a; u64::MAX otherwise.
    dlog: Vec<u64>,
}

impl Component {
    fn new((p, e): (u64, u32)) -> Self {
        let pe = p.pow(e);
        let phi = pe / p * (p - 1);
        let g = find_generator(pe, phi);
        let mut dlog = vec![u64::MAX; pe as usize];
        let mut acc = 1u64;
        for t in 0..phi {
            dlog[acc as usize] = t;
            acc = acc * g % pe;
        }
        Component { pe, phi, dlog }
    }

    /// Value of the `digit`-th character of this component at residue a
    /// (a must be a unit mod p^e here).
    fn value(&self, a: u64, digit: u64) -> CharacterValue {
        let t = self.dlog[(a % self.pe) as usize];
        debug_assert_ne!(t, u64::MAX);
        CharacterValue::root(digit * t % self.phi, self.phi)
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Smallest generator of the cyclic group (Z/p^e)* for odd p.
fn find_generator(pe: u64, phi: u64) -> u64 {
    let factors = prime_factors(phi);
    for g in 2..pe {
        if g.gcd(&pe) != 1 {
            continue;
        }
        if factors.iter().all(|&f| pow_mod(g, phi / f, pe) != 1) {
            return g;
        }
    }
    unreachable!("cyclic group has a generator")
}
