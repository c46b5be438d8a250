//! Exact linear algebra over the rationals.

mod matrix;
mod scalar;
pub mod sparse;

pub use matrix::Matrix;
pub use scalar::{ParseQError, Q};
pub use sparse::{Echelon, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{op}: dimension mismatch {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c)
                .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(Q::from_int).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let n = m.nullspace();
            prop_assert_eq!(m.rank() + n.cols(), m.cols());
            prop_assert!(m.mul(&n).is_zero());
            prop_assert_eq!(n.rank(), n.cols());
        }

        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_is_exact(m in small_matrix(), seed in proptest::collection::vec(-3i64..=3, 6)) {
            let x: Vec<Q> = (0..m.cols()).map(|i| Q::from_int(seed[i % seed.len()])).collect();
            let b = Matrix::from_vec(m.rows(), 1, m.apply(&x));
            let sol = m.solve(&b).unwrap().expect("consistent system");
            prop_assert_eq!(m.mul(&sol), b);
        }
    }
}
