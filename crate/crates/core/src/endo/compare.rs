use serde::Serialize;

use super::present::present;
use super::{EndoError, LambdaM};
use crate::algebra::FdAlgebra;

/// Which vertex of the endomorphism algebra plays `e_1` (the summand `C_m`)
/// and which plays `e_2` (`C_{m−1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Correspondence {
    pub e1: usize,
    pub e2: usize,
}

impl Correspondence {
    /// The vertex with the larger endomorphism ring is `C_m`'s; on a tie the
    /// second summand is taken to be `C_m`.
    pub fn from_dims(d: &[[usize; 2]; 2]) -> Correspondence {
        if d[0][0] > d[1][1] {
            Correspondence { e1: 0, e2: 1 }
        } else {
            Correspondence { e1: 1, e2: 0 }
        }
    }

    /// Relabels a table indexed by vertices of the endomorphism algebra.
    pub fn apply(&self, d: &[[usize; 2]; 2]) -> [[usize; 2]; 2] {
        let v = [self.e1, self.e2];
        [
            [d[v[0]][v[0]], d[v[0]][v[1]]],
            [d[v[1]][v[0]], d[v[1]][v[1]]],
        ]
    }
}

/// Tables are indexed by the vertices of `Λ^{p,q}_m`, the endomorphism side
/// after relabelling.
#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub correspondence: Correspondence,
    pub graded: [[[usize; 2]; 2]; 2],
    pub graded_multiset: bool,
    pub totals: [usize; 2],
    /// Arrow counts `[s][t]`; absent when only dimensions were compared.
    pub arrows: Option<[[[usize; 2]; 2]; 2]>,
    pub relations: Option<[[[usize; 2]; 2]; 2]>,
    pub quadratic: Option<[bool; 2]>,
    pub mismatches: Vec<String>,
}

impl CompareReport {
    pub fn full_match(&self) -> bool {
        self.mismatches.is_empty() && self.arrows.is_some()
    }

    pub fn dims_match(&self) -> bool {
        self.graded[0] == self.graded[1] && self.totals[0] == self.totals[1]
    }
}

fn corner_dims(a: &FdAlgebra) -> Result<[[usize; 2]; 2], EndoError> {
    let mut d = [[0; 2]; 2];
    for c in a.corners() {
        let (i, j) = c.ok_or_else(|| {
            crate::algebra::AlgebraError::NotBasic("basis not adapted to idempotents".into())
        })?;
        d[i][j] += 1;
    }
    Ok(d)
}

/// Graded dimensions and totals only.
pub fn compare_dims(end: &[[usize; 2]; 2], lambda: &[[usize; 2]; 2]) -> CompareReport {
    let c = Correspondence::from_dims(end);
    let e = c.apply(end);
    let flat = |d: &[[usize; 2]; 2]| {
        let mut v = vec![d[0][0], d[0][1], d[1][0], d[1][1]];
        v.sort_unstable();
        v
    };
    let total = |d: &[[usize; 2]; 2]| d.iter().flatten().sum();
    let mut r = CompareReport {
        correspondence: c,
        graded: [e, *lambda],
        graded_multiset: flat(&e) == flat(lambda),
        totals: [total(&e), total(lambda)],
        arrows: None,
        relations: None,
        quadratic: None,
        mismatches: Vec::new(),
    };
    if !r.graded_multiset {
        r.mismatches
            .push(format!("graded dims {:?} vs {:?}", flat(&e), flat(lambda)));
    } else if e != *lambda {
        r.mismatches.push(format!(
            "graded dims {e:?} vs {lambda:?} under the vertex correspondence"
        ));
    }
    if r.totals[0] != r.totals[1] {
        r.mismatches
            .push(format!("total {} vs {}", r.totals[0], r.totals[1]));
    }
    r
}

/// The four-point comparison of an endomorphism algebra with `Λ^{p,q}_m`.
pub fn compare(a: &FdAlgebra, l: &LambdaM) -> Result<CompareReport, EndoError> {
    let mut r = compare_dims(&corner_dims(a)?, &l.dims);
    let c = r.correspondence;
    let (pa, pl) = (present(a)?, present(&l.algebra)?);
    let arrows = [c.apply(&pa.arrow_counts()), pl.arrow_counts()];
    let relations = [c.apply(&pa.relation_dims()), pl.relation_dims()];
    if arrows[0] != arrows[1] {
        r.mismatches
            .push(format!("arrows {:?} vs {:?}", arrows[0], arrows[1]));
    }
    if relations[0] != relations[1] {
        r.mismatches.push(format!(
            "relations {:?} vs {:?}",
            relations[0], relations[1]
        ));
    }
    for (name, pr) in [("endomorphism algebra", &pa), ("Λ_m", &pl)] {
        if !pr.quadratic {
            r.mismatches.push(format!(
                "{name} is not quadratic: presented {:?}, Loewy {:?}",
                pr.presented, pr.loewy
            ));
        }
    }
    r.arrows = Some(arrows);
    r.relations = Some(relations);
    r.quadratic = Some([pa.quadratic, pl.quadratic]);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Lambda, Vertex};
    use crate::complexes::ProjComplex;
    use crate::endo::{end_algebra, make_lambda_m};
    use crate::silting::{build_tower, make_c};

    #[test]
    fn lambda_is_lambda_0() {
        let t = build_tower(2, 2).unwrap();
        let l = Lambda::new(2, 1).unwrap();
        let e = end_algebra(&[
            ProjComplex::projective(l, Vertex::One, 0),
            ProjComplex::projective(l, Vertex::Two, 0),
        ])
        .unwrap();
        let r = compare(&e.algebra, &make_lambda_m(2, 1, 0, &t).unwrap()).unwrap();
        assert!(r.full_match(), "{:?}", r.mismatches);
        assert_eq!(r.correspondence, Correspondence { e1: 1, e2: 0 });
    }

    #[test]
    fn c0_c1() {
        let t = build_tower(2, 3).unwrap();
        let l = Lambda::new(2, 1).unwrap();
        let e = end_algebra(&[make_c(0, &t, l).unwrap(), make_c(1, &t, l).unwrap()]).unwrap();
        let lm = make_lambda_m(2, 1, 1, &t).unwrap();
        let r = compare(&e.algebra, &lm).unwrap();
        assert!(r.full_match(), "{:?}", r.mismatches);
        let a = r.arrows.unwrap()[0];
        // p arrows for A_1, q·a_1² for A_1 ⊗ B ⊗ A_1^*
        assert_eq!((a[0][1], a[1][0]), (2, 4));
        assert_eq!(r.relations.unwrap()[0].iter().flatten().sum::<usize>(), 8);
    }

    #[test]
    fn dims_only_mismatch_is_reported() {
        let r = compare_dims(&[[3, 5], [4, 7]], &[[7, 4], [5, 4]]);
        assert!(!r.dims_match());
        assert!(!r.full_match());
        assert_eq!(r.mismatches.len(), 2);
    }
}
