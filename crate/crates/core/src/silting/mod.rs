//! Two-term silting theory over `Λ^{p,q}`: the tower `A_m`, the closed-form
//! complexes, predicates, mutation, the walk and the fan.

pub mod closed;
pub mod fan;
pub mod mutation;
pub mod predicates;
pub mod sampling;
pub mod tower;

pub use closed::{
    closed_form_nodes, dual_star, make_c, make_c_bar, make_c_bar_star, pair_key, stilt,
    transpose_to_opposite, ClosedNode, ConeAlgebra,
};
pub use fan::{angle_cmp, fan, fan_report, Arc, Fan, FanNode, FanReport};
pub use mutation::{
    coherence, mutate, mutated_summand, mutation_walk, root_nodes, Coherence, Direction, WalkNode,
};
pub use predicates::{
    det, flags, is_presilting, is_pretilting, summands, Flags, HomTable, SiltingNode, Summands,
};
pub use sampling::{
    exceptional_scan, negative_space, ExceptionalReport, ExceptionalShape, NegativeShape, Shape,
};
pub use tower::{build_tower, tower_dim, AmTower};

use crate::algebra::AlgebraError;
use crate::complexes::ComplexError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SiltingError {
    #[error("the A_m tower needs p >= 2 (got p = {0}); use the explicit lists for p in {{0, 1}}")]
    TowerNeedsP2(usize),
    #[error("depth {0} is out of range")]
    Depth(usize),
    #[error("index m = {0} must be at least -1")]
    Index(i64),
    #[error("tower built for p = {tower} but the algebra has p = {algebra}")]
    TowerMismatch { tower: usize, algebra: usize },
    #[error("expected a two-term complex P_1^a -> P_2^b in degrees -1, 0")]
    NotUpShape,
    #[error("not a silting complex")]
    NotSilting,
    #[error("mutation at summand {summand} is not two-term; mutate at summand {other} instead")]
    NotTwoTerm { summand: usize, other: usize },
    #[error("fan arcs {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("sampling check failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
