//! Exact computations in the homotopy category of projective modules over
//! the two-vertex quasi-hereditary algebras Λ^{p,q}.

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod endo;
pub mod equiv;
pub mod linalg;
pub mod silting;
