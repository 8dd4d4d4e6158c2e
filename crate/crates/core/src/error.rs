use alloc::string::String;

use crate::rational::Rat01;

/// Errors raised by the constructions in this crate.
///
/// Variants that describe a theorem failing on a concrete instance
/// (`FactorizationInconsistent`, `IsoNotFound`, `SepClosureFailed`,
/// `LiftInconsistent`, `EmbeddingFailed`) are not recoverable states: they are
/// falsification evidence and carry a human readable witness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("partial sum {0} + {1} is undefined ({0} > neg {1})")]
    UndefinedPartialSum(Rat01, Rat01),
    #[error("value {0} is outside the unit interval")]
    OutOfUnitInterval(String),
    #[error("element budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("intensional algebra cannot be materialized")]
    IntensionalNotMaterializable,
    #[error("element is not a member of the algebra")]
    ElementNotInAlgebra,
    #[error("element list is not closed: {0}")]
    NotClosed(String),
    #[error("malformed table: {0}")]
    InvalidTable(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("ideal does not induce a congruence: {0}")]
    NotCongruence(String),
    #[error("algebra is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("operands come from different algebras")]
    MixedAlgebras,
    #[error("invalid lu-group: {0}")]
    InvalidGroup(String),
    #[error("degenerate one-element algebra is not allowed here")]
    DegenerateAlgebra,
    #[error("map is not a bimorphism: {0}")]
    NotABimorphism(String),
    #[error("universal factorization inconsistent: {0}")]
    FactorizationInconsistent(String),
    #[error("no isomorphism found: {0}")]
    IsoNotFound(String),
    #[error("factor embedding failed: {0}")]
    EmbeddingFailed(String),
    #[error("not closed under product: {0} . {1}")]
    NotProductClosed(String, String),
    #[error("scalar extension closure failed: {0}")]
    SepClosureFailed(String),
    #[error("lift inconsistent: {0}")]
    LiftInconsistent(String),
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("no decomposition found: {0}")]
    DecompositionNotFound(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("connective `{connective}` is not supported in the {context} context")]
    UnsupportedConnective {
        context: &'static str,
        connective: &'static str,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
