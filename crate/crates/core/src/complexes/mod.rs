//! Bounded complexes of projectives and their Hom spaces in the homotopy
//! category.

mod complex;
mod hom;
mod minimize;
mod ops;
pub mod twoterm;

pub(crate) use complex::Builder;
pub use complex::ProjComplex;
pub use hom::{
    hom_complex_dims, hom_dim, ChainMap, HomBasis, HomComplex, HomDims, HomotopySolver, MapSpace,
};
pub use minimize::minimize;
pub(crate) use ops::cone_unchecked;
pub use ops::{
    column_map, cone, end_algebra_of, g_vector, is_indecomposable, iso_in_homotopy,
    iso_in_homotopy_with, k0_class, random_radical_two_term, row_map,
    semisimple_quotient_dimension, split_blocks,
};

pub type GVector = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("complexes live over different algebras")]
    AlgebraMismatch,
    #[error("malformed complex: {0}")]
    Shape(String),
    #[error("differential entry in degree {0} lies in the wrong Hom space")]
    Misplaced(i32),
    #[error("d ∘ d ≠ 0 starting in degree {0}")]
    NotAComplex(i32),
    #[error("map is not a chain map")]
    NotAChainMap,
    #[error("the zero complex has no endomorphism quotient")]
    ZeroComplex,
    #[error("minimal representative occupies degrees {0}..{1}, not -1..0")]
    NotTwoTerm(i32, i32),
    #[error("parse error: {0}")]
    Parse(String),
}


#[cfg(test)]
mod proptests {
    use proptest::prelude::*;

    use super::strategies::*;
    use super::*;
    use crate::algebra::Lambda;

    fn lam() -> impl Strategy<Value = Lambda> {
        (1usize..=2, 0usize..=2).prop_map(|(p, q)| Lambda::new(p, q).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn fast_formulas_match_engine((x, y) in lam().prop_flat_map(|l| (up_complex(l, 3), up_complex(l, 3)))) {
            for r in -2..=2 {
                let fast = twoterm::hom_dim_fast(&x, &y, r).unwrap();
                prop_assert_eq!(fast, HomComplex::new(&x, &y).dims(r).h, "r = {}", r);
            }
        }

        #[test]
        fn transposed_formulas_match_engine((x, y) in lam().prop_flat_map(|l| (up_complex(l, 2), up_complex(l, 2)))) {
            let (tx, ty) = (x.transpose(), y.transpose());
            for r in -1..=1 {
                prop_assert_eq!(twoterm::hom_dim_fast(&tx, &ty, r).unwrap(), HomComplex::new(&tx, &ty).dims(r).h);
            }
        }

        #[test]
        fn euler_form(x in lam().prop_flat_map(|l| up_complex(l, 3))) {
            let l = x.lambda();
            let (a, b) = (x.term(-1).0 as i64, x.term(0).1 as i64);
            let (p, q) = (l.p as i64, l.q as i64);
            let alt: i64 = (-1..=1).map(|r| {
                let s = if r % 2 == 0 { 1 } else { -1 };
                s * hom_dim(&x, &x, r).unwrap() as i64
            }).sum();
            prop_assert_eq!(alt, a * a + b * b * (1 + p * q) - a * b * (p + q));
        }

        #[test]
        fn minimize_preserves_homs((x, t) in lam().prop_flat_map(|l| (mixed_complex(l), up_complex(l, 2)))) {
            let m = minimize(&x);
            prop_assert!(m.is_radical());
            prop_assert_eq!(minimize(&m), m.clone());
            prop_assert_eq!(k0_class(&m), k0_class(&x));
            for r in -1..=1 {
                prop_assert_eq!(HomComplex::new(&x, &t).dims(r).h, HomComplex::new(&m, &t).dims(r).h);
                prop_assert_eq!(HomComplex::new(&t, &x).dims(r).h, HomComplex::new(&t, &m).dims(r).h);
            }
        }

        #[test]
        fn double_transpose_is_identity(x in lam().prop_flat_map(mixed_complex)) {
            prop_assert_eq!(x.transpose().transpose(), x);
        }

        #[test]
        fn homs_vanish_beyond_overlap((x, y) in lam().prop_flat_map(|l| (mixed_complex(l), mixed_complex(l)))) {
            for r in [-3, -2, 2, 3] {
                prop_assert_eq!(HomComplex::new(&x, &y).dims(r).h, 0);
            }
        }
    }
}
