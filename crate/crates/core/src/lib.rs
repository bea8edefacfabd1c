//! Exact computation of classical and q-deformed Genocchi number families
//! attached to Dirichlet characters.
//!
//! The crate is organized around three interchangeable scalar backends --
//! exact rationals, rational functions in the indeterminate `q`, and complex
//! doubles -- and provides:
//!
//! - [`qcalc`]: the q-arithmetic kernel (q-brackets, q-factorials, Gaussian
//!   binomials, q-Pochhammer products and expansions, the exact q -> 1 limit)
//! - [`characters`]: Dirichlet characters with odd modulus (construction,
//!   validation, evaluation, enumeration)
//! - [`classical`]: the exact power-series engine for classical, higher-order
//!   and character-twisted Genocchi numbers, plus Bernoulli numbers and Euler
//!   polynomials
//! - [`qgenocchi`]: normalized higher-order generalized q-Genocchi values via
//!   finite closed-form sums, together with the distribution, shift and
//!   reflection identity checks and the classical limit
//! - [`oracle`]: an independent numeric re-derivation of the same values by
//!   Abel summation with Richardson extrapolation
//! - [`verify`]: ready-made verification suites over the standard grids

pub mod characters;
pub mod classical;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod qcalc;
pub mod qgenocchi;
pub mod ratfunc;
pub mod rational;
pub mod scalar;
pub mod series;
pub mod verify;

pub use characters::{CharacterError, CharacterKind, CharacterValue, DirichletCharacter};
pub use field::Field;
pub use poly::QPolynomial;
pub use qgenocchi::{
    GenocchiError, NormalizedGenocchiValue, QGenocchiParams, Shift, Verdict, VerdictStatus, Weight,
};
pub use ratfunc::{QRationalFunction, RatFuncError};
pub use rational::Rational;
pub use scalar::{Backend, QParam, QParamError, Scalar, ScalarError};
pub use series::PowerSeries;
