//! Discovery of exact differentials on the two-dimensional state manifold of
//! an ideal gas.
//!
//! The crate is split along the pipeline:
//!
//! - [`units`]: dimension algebra over SI base units and the unit filter on
//!   monomial exponents.
//! - [`forms`]: exact symbolic exterior calculus in the `(p, V)` chart.
//! - [`enumerate`]: closed, unit-consistent candidate forms and linear theorem
//!   candidates under a complexity budget.
//! - [`experiment`]: the virtual ideal-gas experiment and its CSV records.
//! - [`validate`]: pullback line integrals, least-squares theorem fitting and
//!   the discovery ranking.
//!
//! Symbolic types are generic over a [`forms::Coefficient`] ring and numeric
//! types over [`num_traits::Float`]. The aliases below fix the usual choices:
//! exact `i64` rationals for symbols and `f64` for numerics.

pub mod enumerate;
pub mod experiment;
pub mod forms;
pub mod units;
pub mod validate;

pub use enumerate::{ExponentTuple, TheoremCandidate};
pub use units::{Dimension, Symbol, SymbolTable};

/// Exact coefficient type used for all symbolic work.
pub type Rational = num_rational::Rational64;

pub type Monomial = forms::Monomial<Rational>;
pub type ScalarField = forms::ScalarField<Rational>;
pub type OneForm = forms::OneForm<Rational>;
pub type TwoForm = forms::TwoForm<Rational>;
pub type Potential = forms::Potential<Rational>;
pub type CandidateForm = enumerate::CandidateForm<Rational>;
pub type SingletonTheorem = enumerate::SingletonTheorem<Rational>;

pub type GasSpec = experiment::GasSpec<f64>;
pub type PathSegment = experiment::PathSegment<f64>;
pub type Trajectory = experiment::Trajectory<f64>;
pub type ExperimentRecord = experiment::ExperimentRecord<f64>;
pub type SegmentIntegrals = validate::SegmentIntegrals<f64>;
pub type FitReport = validate::FitReport<f64>;
