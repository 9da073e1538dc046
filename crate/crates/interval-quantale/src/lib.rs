//! The quantale of open subsets of a finite disjoint union of rational closed
//! segments, with exact rational endpoints throughout.
//!
//! The carrier is infinite, so unlike the finite-table crates nothing here
//! materializes a carrier.  Instead the crate provides:
//!
//! - an exact interval algebra ([`IntervalOpen`], [`ClosedSet`]) with union,
//!   intersection, complement, interior and closure in canonical form;
//! - the filter families that admit closed-form saturation ([`IntervalFilter`]):
//!   `Above(U)` (everything containing `U`), `Comax(U)` (comaximal with `U`),
//!   `Dense`, and the specific sums/products of those that have exact
//!   membership rules;
//! - the saturation closed forms [`regularize`], [`heyting`], [`saturate_comax`],
//!   each validated against a brute-force witness search on rational grids;
//! - the two-step counterexample ([`two_step_counterexample`]) showing why
//!   gluing needs 1-step filters;
//! - solidity, normality and conormality deciders with constructive
//!   certificates, [`gnf_comax`], and the constructive Baire witness
//!   ([`baire_witness`]).

mod analysis;
mod filters;
mod sets;

use thiserror::Error;

pub use analysis::{
    dilate, is_binormal_interval, is_clopen, is_conormal_interval, is_normal_interval,
    is_solid_interval, normal_decomposition, rationals_of_space, sum_saturate_empty,
    two_step_counterexample, BaireOutcome, BinormalityReport, ConormalWitness,
    ConormalityVerdict, NormalDecomposition, NormalPiece, NormalityRefutation, NormalityVerdict,
    SolidityCertificate, SolidityReport, TwoStepReport,
};
pub use analysis::{baire_witness, conormal_witness, finite_subcover, gnf_comax};
pub use filters::{
    admits_witness, collar, dense_quotient_class, grid_opens, hbar, heyting, regularize,
    sample_opens, saturate1, saturate_comax, validate_closed_form, AttainmentEvidence,
    ClosedFormCheck, IntervalFilter,
};
pub use sets::{
    parse_closed, parse_open, rat, rat_int, ClosedSet, IntervalOpen, OpenJson, OpenPartJson, Rat,
    RatScalarPub, Space,
};

#[derive(Debug, Error)]
pub enum IntervalError {
    #[error("invalid space: {0}")]
    BadSpace(String),
    #[error("invalid set: {0}")]
    BadSet(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("no exact rule for this filter: {0}")]
    UnsupportedFilter(String),
    #[error("input set {index} is not nowhere dense")]
    NotNowhereDense { index: usize },
    #[error("bad instance: {0}")]
    BadInstance(String),
}
