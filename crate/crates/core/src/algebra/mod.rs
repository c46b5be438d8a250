//! The algebras Λ^{p,q}, generic finite-dimensional algebras, and modules.

mod algmatrix;
mod fd;
mod lambda;
mod modules;

pub use algmatrix::AlgMatrix;
pub use fd::FdAlgebra;
pub use lambda::{Basis, Elem, Lambda, QuasiHereditaryData, Vertex};
pub use modules::{nakayama_map, Cover, ModMap, ProjSum, QuiverRep, Resolution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("Λ^{{0,0}} is semisimple; need p + q ≥ 1")]
    Semisimple,
    #[error("the zero module has no projective cover")]
    ZeroModule,
    #[error("multiplication is not associative on basis triple {0}, {1}, {2}")]
    NotAssociative(usize, usize, usize),
    #[error("bad idempotents: {0}")]
    BadIdempotents(String),
    #[error("not a basic algebra: {0}")]
    NotBasic(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("action violates the relations β_j α_i = 0")]
    Relation,
    #[error("map does not factor through the given surjection")]
    NoLift,
}

/// `Λ^{p,q}`, rejecting the semisimple case.
pub fn make_lambda(p: usize, q: usize) -> Result<Lambda, AlgebraError> {
    Lambda::new(p, q)
}

pub fn cartan_matrix(l: &Lambda) -> [[usize; 2]; 2] {
    l.cartan_matrix()
}
