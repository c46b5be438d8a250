//! Derived equivalences on objects: Ringel duality `ω`, the Serre functor
//! `ν`, reduction of tilting complexes to two terms, and the action of
//! `GL(A) × GL(B)` on complexes.

mod auto;
mod functor;
mod nakayama;
mod reduce;
mod ringel;

pub use auto::{apply_automorphism, check_comm, renaming_swap, AutoPair, CommReport};
pub use functor::Functor;
pub use nakayama::{nakayama_functor, nakayama_nu, resolution_complex, NuDirection};
pub use reduce::{reduce_to_two_term, Reduction};
pub use ringel::{omega_iterate, ringel_omega, ringel_omega_inv, OmegaBranch, RingelDuality};

use crate::algebra::AlgebraError;
use crate::complexes::ComplexError;
use crate::silting::SiltingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivError {
    #[error("inconsistent functor data: {0}")]
    Data(String),
    #[error("no null-homotopy for the length-{length} component starting in degree {degree}")]
    NoHomotopy { degree: i32, length: i32 },
    #[error("the image recipe for P_2 failed validation: {0}")]
    Recipe(String),
    #[error("input is not a tilting complex")]
    NotTilting,
    #[error("no two-term representative within {steps} steps; spans {trajectory:?}")]
    MaxSteps {
        steps: usize,
        trajectory: Vec<usize>,
    },
    #[error("{0}")]
    Automorphism(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Silting(#[from] SiltingError),
}
