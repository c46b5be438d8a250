//! Endomorphism algebras of two-term silting complexes, their quiver
//! presentations, and the algebras `Λ^{p,q}_m` built directly from the tower.

mod compare;
mod end;
mod lambda_m;
mod present;

pub use compare::{compare, compare_dims, CompareReport, Correspondence};
pub use end::{end_algebra, EndAlgebra};
pub use lambda_m::{lambda_m_dims, make_lambda_m, LambdaM};
pub use present::{present, Arrow, QuiverPresentation};

use crate::algebra::AlgebraError;
use crate::complexes::ComplexError;
use crate::silting::SiltingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndoError {
    #[error("expected {expected} summands, got {got}")]
    Summands { expected: usize, got: usize },
    #[error("summands live over different algebras")]
    AlgebraMismatch,
    #[error("m must be non-negative, got {0}")]
    NegativeM(i64),
    #[error("tower for p = {tower} does not match p = {p}")]
    TowerMismatch { tower: usize, p: usize },
    #[error("tower depth {depth} too small for m = {m}")]
    TowerDepth { depth: usize, m: usize },
    #[error("a quiver presentation needs exactly two idempotents, got {0}")]
    Vertices(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Silting(#[from] SiltingError),
}
