//! Error type shared by every module of the crate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Vector or matrix dimensions do not agree.
    DimensionMismatch { expected: usize, got: usize },
    /// A point of the hyperboloid failed its normalization check.
    NotNormalized { residual: f64 },
    /// A candidate ray representative is not isotropic.
    NotIsotropic { residual: f64 },
    /// The zero vector cannot represent a boundary ray.
    ZeroVector,
    /// Candidate isometry does not preserve the bilinear form.
    FormNotPreserved { residual: f64 },
    /// Candidate isometry has determinant different from +1.
    DeterminantNotOne { det: f64 },
    /// Candidate isometry lies outside the identity component.
    NotIdentityComponent,
    /// A segment operation was applied to a non-spacelike pair.
    CausalViolation { product: f64 },
    /// Geodesic data violated its orthogonality or unit-norm precondition.
    BadTangent { residual: f64 },
    /// Input cannot be expressed in the requested chart.
    ChartDegenerate,
    /// An inner product of boundary rays vanished where transversality is required.
    TransversalityFailure { product: f64 },
    /// The cross-ratio radicand was negative beyond the consistency band.
    NegativeRadicand { value: f64 },
    /// Argument of a logarithm was zero.
    LogOfZero,
    /// Signs of the chosen lifts cannot be made coherent.
    LiftSelection { product: f64 },
    /// The finite window is not maximal; carries the offending region's vertices.
    NonMaximalWindow { region: Vec<f64> },
    /// A weight system violated a switch condition.
    SwitchCondition { switch: usize, residual: f64 },
    /// Weight systems defined on different train tracks were combined.
    TrackMismatch,
    /// Holonomy is not loxodromic where the operation requires it.
    NotLoxodromic(String),
    /// Paired boundary holonomies are not conjugate within tolerance.
    NotConjugate { residual: f64 },
    /// A gluing twist fails to commute with its boundary holonomy.
    CommutationFailure { residual: f64 },
    /// The assembled representation violates the surface-group relation.
    RelationResidual { residual: f64 },
    /// A word used an unknown generator name.
    UnknownGenerator(String),
    /// A boundary point could not be resolved to an isotropic ray.
    UnresolvableEndpoint(String),
    /// Generic precondition violation with a short description.
    InvalidInput(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotNormalized { residual } => {
                write!(f, "point not normalized: |<x,x>+1| = {residual:e}")
            }
            Error::NotIsotropic { residual } => {
                write!(f, "vector not isotropic: |<x,x>| = {residual:e}")
            }
            Error::ZeroVector => write!(f, "zero vector"),
            Error::FormNotPreserved { residual } => {
                write!(f, "form not preserved: |M^T J M - J| = {residual:e}")
            }
            Error::DeterminantNotOne { det } => write!(f, "determinant {det} is not +1"),
            Error::NotIdentityComponent => write!(f, "matrix lies outside the identity component"),
            Error::CausalViolation { product } => {
                write!(f, "pair is not spacelike-separated: <x,y> = {product}")
            }
            Error::BadTangent { residual } => {
                write!(f, "tangent violates orthogonality/unit-norm: residual {residual:e}")
            }
            Error::ChartDegenerate => write!(f, "input is degenerate in this chart"),
            Error::TransversalityFailure { product } => {
                write!(f, "transversality failure: inner product {product:e}")
            }
            Error::NegativeRadicand { value } => {
                write!(f, "cross-ratio radicand negative: {value:e}")
            }
            Error::LogOfZero => write!(f, "logarithm of zero"),
            Error::LiftSelection { product } => {
                write!(f, "no coherent lift: pairwise product {product:e}")
            }
            Error::NonMaximalWindow { region } => {
                write!(f, "window not maximal: {}-gon region", region.len())
            }
            Error::SwitchCondition { switch, residual } => {
                write!(f, "switch {switch} violated: residual {residual:e}")
            }
            Error::TrackMismatch => write!(f, "weight systems live on different tracks"),
            Error::NotLoxodromic(reason) => write!(f, "not loxodromic: {reason}"),
            Error::NotConjugate { residual } => {
                write!(f, "boundary holonomies not conjugate: residual {residual:e}")
            }
            Error::CommutationFailure { residual } => {
                write!(f, "twist does not commute with boundary holonomy: residual {residual:e}")
            }
            Error::RelationResidual { residual } => {
                write!(f, "surface-group relation violated: residual {residual:e}")
            }
            Error::UnknownGenerator(name) => write!(f, "unknown generator {name:?}"),
            Error::UnresolvableEndpoint(tag) => {
                write!(f, "boundary point {tag:?} has no resolvable ray")
            }
            Error::InvalidInput(msg) => write!(f, "{msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
