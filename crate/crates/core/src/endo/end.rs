use super::EndoError;
use crate::algebra::FdAlgebra;
use crate::complexes::{hom_dim, ChainMap, HomBasis, HomComplex, ProjComplex};
use crate::linalg::SparseVec;

/// `End_K(X_0 ⊕ … ⊕ X_{n−1})` with one idempotent per summand.
///
/// The corner `e_i A e_j` is `Hom_K(X_i, X_j)` and `x · y` is "`x`, then
/// `y`", i.e. the composite `y ∘ x`. This matches the display of `Λ^{p,q}_m`,
/// where `e_2Λ_me_1 ⊇ A_1` are the maps `C_{m−1} → C_m`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: FdAlgebra,
    /// `dims[i][j] = dim Hom_K(X_i, X_j)`.
    pub dims: Vec<Vec<usize>>,
    /// `Hom_K(X, X[r]) = 0` for `r > 0`. The algebra is computed either way.
    pub presilting: bool,
}

impl EndAlgebra {
    pub fn total(&self) -> usize {
        self.algebra.dim()
    }
}

/// Structure constants from composing chain-map representatives and taking
/// coordinates modulo null-homotopic maps.
pub fn end_algebra(summands: &[ProjComplex]) -> Result<EndAlgebra, EndoError> {
    let n = summands.len();
    if n == 0 {
        return Err(EndoError::Summands {
            expected: 2,
            got: 0,
        });
    }
    let l = summands[0].lambda();
    if summands.iter().any(|x| x.lambda() != l) {
        return Err(EndoError::AlgebraMismatch);
    }
    let bases: Vec<Vec<HomBasis>> = summands
        .iter()
        .map(|x| {
            summands
                .iter()
                .map(|y| HomComplex::new(x, y).basis(0))
                .collect()
        })
        .collect();
    let dims: Vec<Vec<usize>> = bases
        .iter()
        .map(|row| row.iter().map(HomBasis::dim).collect())
        .collect();

    // basis elements grouped by corner, row by row
    let mut corner = Vec::new();
    let mut offset = vec![vec![0; n]; n];
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            offset[i][j] = corner.len();
            for k in 0..dims[i][j] {
                corner.push((i, j, k));
                labels.push(format!("h{i}{j}_{k}"));
            }
        }
    }
    let reps: Vec<ChainMap> = corner.iter().map(|&(i, j, k)| bases[i][j].rep(k)).collect();
    let total = corner.len();
    let mut table = vec![SparseVec::new(); total * total];
    for (x, &(i, j, _)) in corner.iter().enumerate() {
        for k in 0..n {
            let basis = &bases[i][k];
            for y in offset[j][k]..offset[j][k] + dims[j][k] {
                let c = basis
                    .coords(&reps[y].compose(&l, &reps[x]))
                    .expect("composite of chain maps is a chain map");
                table[x * total + y] = SparseVec::from_pairs(
                    c.into_iter()
                        .enumerate()
                        .map(|(t, v)| (offset[i][k] + t, v))
                        .collect(),
                );
            }
        }
    }
    let idempotents = (0..n)
        .map(|i| {
            let c = bases[i][i]
                .coords(&ChainMap::identity(&summands[i]))
                .expect("identity is a chain map");
            SparseVec::from_pairs(
                c.into_iter()
                    .enumerate()
                    .map(|(t, v)| (offset[i][i] + t, v))
                    .collect(),
            )
        })
        .collect();
    let algebra = FdAlgebra::new_unchecked(labels, table, idempotents)?;

    let mut presilting = true;
    for x in summands {
        for y in summands {
            let span = (x.hi() - y.lo()).max(0);
            for r in 1..=span {
                presilting &= hom_dim(x, y, r)? == 0;
            }
        }
    }
    Ok(EndAlgebra {
        algebra,
        dims,
        presilting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Lambda, Vertex};
    use crate::silting::{build_tower, make_c};

    #[test]
    fn end_of_lambda() {
        let l = Lambda::new(2, 1).unwrap();
        let p1 = ProjComplex::projective(l, Vertex::One, 0);
        let p2 = ProjComplex::projective(l, Vertex::Two, 0);
        let e = end_algebra(&[p1, p2]).unwrap();
        assert_eq!(e.dims, vec![vec![1, 2], vec![1, 3]]);
        assert_eq!(e.total(), l.dim());
        assert!(e.presilting);
        e.algebra.check_associative().unwrap();
        e.algebra.check_idempotents().unwrap();
    }

    #[test]
    fn end_of_c0_c1() {
        let l = Lambda::new(2, 1).unwrap();
        let t = build_tower(2, 3).unwrap();
        let c0 = make_c(0, &t, l).unwrap();
        let c1 = make_c(1, &t, l).unwrap();
        let e = end_algebra(&[c0, c1]).unwrap();
        assert_eq!(e.dims, vec![vec![3, 5], vec![4, 7]]);
        assert_eq!(e.total(), 19);
        e.algebra.check_associative().unwrap();
        e.algebra.check_idempotents().unwrap();
    }

    #[test]
    fn non_tilting_nodes() {
        use crate::silting::{closed_form_nodes, ConeAlgebra};
        for (p, q) in [(2, 1), (3, 2), (1, 2)] {
            let l = Lambda::new(p, q).unwrap();
            let mut totals: Vec<usize> = closed_form_nodes(l, 3)
                .unwrap()
                .into_iter()
                .filter(|n| matches!(n.algebra, ConeAlgebra::Delta { .. }))
                .map(|n| {
                    let e = end_algebra(&n.summands).unwrap();
                    assert!(e.presilting);
                    e.total()
                })
                .collect();
            totals.sort_unstable();
            // the mirrored node is the same construction over Λ^{q,p}
            assert_eq!(totals, {
                let mut v = vec![2 + p, 2 + q];
                v.sort_unstable();
                v
            });
        }
    }
}
