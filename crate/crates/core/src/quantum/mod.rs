//! Quantum tori, compatible pairs, quantum seeds and quantum dilogarithm series.

mod dilog;
mod pair;
mod series;
mod torus;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::poly::{parse_rational, ParseError, RationalFunction};
use crate::quiver::QuiverError;
use crate::tropical::TropicalError;

pub use dilog::{
    adjoint_check, combinatorial_dt, dilog_factors, dilog_product, functional_equation_holds, pentagon_holds,
    verify_identity, AdjointReport, DtResult, IdentityReport, DEFAULT_TRUNCATION,
};
pub use pair::{CompatiblePair, QuantumSeed};
pub use series::{qdilog, qdilog_coefficient, qdilog_of, TruncatedSeries};
pub use torus::TorusElement;

/// Element of `Q(v)` with `v^2 = q`, stored as a reduced one-variable rational function.
pub type QCoefficient = RationalFunction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantumError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error("incompatible pair: {0}")]
    IncompatibleInput(String),
    #[error("quantum mutation left a non-Laurent remainder")]
    NonLaurent,
    #[error("coefficient has a pole at v = 1")]
    PoleAtOne,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("bad coefficient string: {0}")]
    Parse(#[from] ParseError),
}

/// The name of the coefficient variable.
pub fn v_names() -> Vec<String> {
    vec!["v".to_string()]
}

/// `v^e`.
pub fn v_pow(e: i64) -> QCoefficient {
    RationalFunction::laurent_monomial(1, &[BigInt::from(e)])
}

/// `q^e = v^{2e}`.
pub fn q_pow(e: i64) -> QCoefficient {
    v_pow(2 * e)
}

pub fn qc_one() -> QCoefficient {
    RationalFunction::one(1)
}

pub fn qc_int(c: i64) -> QCoefficient {
    RationalFunction::constant(1, BigInt::from(c))
}

/// Value at `v = 1`.
pub fn at_v_one(c: &QCoefficient) -> Result<BigRational, QuantumError> {
    c.eval(&[BigRational::one()]).ok_or(QuantumError::PoleAtOne)
}

/// Canonical string in the rational grammar over `v`.
pub fn qc_string(c: &QCoefficient) -> String {
    c.display_with(&v_names())
}

pub fn parse_qc(s: &str) -> Result<QCoefficient, QuantumError> {
    Ok(parse_rational(s, &v_names())?)
}
