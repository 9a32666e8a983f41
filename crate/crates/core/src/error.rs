use thiserror::Error;

/// Errors raised by the geometric constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the admissible domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input sits exactly on a degenerate configuration that has a
    /// dedicated constructor (or none at all).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A length went to infinity (or a long edge to zero): the shape has
    /// reached an ideal limit and cannot be represented as a finite object.
    #[error("ideal limit reached: {0}")]
    IdealLimit(String),

    /// A bracketed root search could not find a sign change.
    #[error("root finder did not converge: {0}")]
    Convergence(String),

    /// Chart coordinates that name no point of the hexagon.
    #[error("coordinates outside the chart: {0}")]
    OutOfChart(String),

    /// A point that fails the hexagon containment test.
    #[error("point outside the hexagon: {0}")]
    OutsideHexagon(String),

    /// A point that is off the locus it was claimed to lie on.
    #[error("point off locus: {0}")]
    OffLocus(String),

    /// A reference to a surface edge or hexagon that does not exist.
    #[error("unknown edge: {0}")]
    UnknownEdge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
