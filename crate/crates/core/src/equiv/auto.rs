use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ringel_omega, EquivError};
use crate::algebra::{Basis, Elem, Lambda, Vertex};
use crate::complexes::{iso_in_homotopy, ProjComplex};
use crate::linalg::{Matrix, SparseVec, Q};

/// `(g, h) ∈ GL(A) × GL(B)` acting by `α_i ↦ Σ_k g_{ki} α_k` and
/// `β_j ↦ Σ_l h_{lj} β_l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutoPair {
    pub g: Vec<Vec<Q>>,
    pub h: Vec<Vec<Q>>,
}

fn square(rows: &[Vec<Q>], n: usize, name: &str) -> Result<Matrix, EquivError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(EquivError::Automorphism(format!("{name} must be {n}x{n}")));
    }
    let m = Matrix::from_rows(rows.to_vec(), n);
    if m.rank() != n {
        return Err(EquivError::Automorphism(format!("{name} is singular")));
    }
    Ok(m)
}

fn rows_of(m: &Matrix) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

impl AutoPair {
    pub fn new(g: &Matrix, h: &Matrix) -> AutoPair {
        AutoPair {
            g: rows_of(g),
            h: rows_of(h),
        }
    }

    pub fn identity(p: usize, q: usize) -> AutoPair {
        AutoPair::new(&Matrix::identity(p), &Matrix::identity(q))
    }

    /// `(λ·Id, λ^{-1}·Id)`, conjugation by `e_1 + λ e_2`.
    pub fn inner(p: usize, q: usize, lambda: &Q) -> AutoPair {
        AutoPair::new(
            &Matrix::identity(p).scale(lambda),
            &Matrix::identity(q).scale(&lambda.recip()),
        )
    }

    /// Entries in `[−2, 2]`, redrawn until both matrices are invertible.
    pub fn random(p: usize, q: usize, seed: u64) -> AutoPair {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |n: usize| loop {
            let data = (0..n * n)
                .map(|_| Q::from_int(rng.gen_range(-2..=2)))
                .collect();
            let m = Matrix::from_vec(n, n, data);
            if m.rank() == n {
                return m;
            }
        };
        let g = draw(p);
        let h = draw(q);
        AutoPair::new(&g, &h)
    }

    /// Both matrices as checked square invertible matrices for `Λ^{p,q}`.
    pub fn matrices(&self, l: Lambda) -> Result<(Matrix, Matrix), EquivError> {
        Ok((square(&self.g, l.p, "g")?, square(&self.h, l.q, "h")?))
    }

    fn act_with(l: Lambda, g: &Matrix, h: &Matrix, x: &Elem) -> Elem {
        let mut pairs = Vec::new();
        for (b, c) in x.entries() {
            match l.kind(*b) {
                Basis::E(_) => pairs.push((*b, c.clone())),
                Basis::Alpha(i) => {
                    for k in 0..l.p {
                        pairs.push((l.alpha(k), c * &g[(k, i)]));
                    }
                }
                Basis::Beta(j) => {
                    for k in 0..l.q {
                        pairs.push((l.beta(k), c * &h[(k, j)]));
                    }
                }
                Basis::AlphaBeta(i, j) => {
                    for k in 0..l.p {
                        for m in 0..l.q {
                            pairs.push((l.alpha_beta(k, m), &(c * &g[(k, i)]) * &h[(m, j)]));
                        }
                    }
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Image of an algebra element.
    pub fn act(&self, l: Lambda, x: &Elem) -> Result<Elem, EquivError> {
        let (g, h) = self.matrices(l)?;
        Ok(AutoPair::act_with(l, &g, &h, x))
    }
}

/// Every differential entry transformed by the automorphism; terms unchanged.
pub fn apply_automorphism(x: &ProjComplex, phi: &AutoPair) -> Result<ProjComplex, EquivError> {
    let l = x.lambda();
    let (g, h) = phi.matrices(l)?;
    Ok(x.map_coefficients(l, |e| AutoPair::act_with(l, &g, &h, e))?)
}

/// `Φ(g, h) = (h, g)` on `Λ^{q,p}`, whose `α` span has dimension `q`.
pub fn renaming_swap(phi: &AutoPair) -> AutoPair {
    AutoPair {
        g: phi.h.clone(),
        h: phi.g.clone(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommReport {
    pub p: usize,
    pub q: usize,
    pub seed: u64,
    pub pair: AutoPair,
    /// `ω(φ P_i) ≅ Φ(φ) ω(P_i)` for `i = 1, 2`.
    pub holds: [bool; 2],
}

impl CommReport {
    pub fn passed(&self) -> bool {
        self.holds.iter().all(|&b| b)
    }
}

/// Object-level check of `ω ∘ φ ≅ Φ(φ) ∘ ω` on the two projectives.
pub fn check_comm(phi: &AutoPair, p: usize, q: usize, seed: u64) -> Result<CommReport, EquivError> {
    let l = Lambda::new(p, q)?;
    let swapped = renaming_swap(phi);
    let mut holds = [false; 2];
    for v in Vertex::BOTH {
        let x = ProjComplex::projective(l, v, 0);
        let left = ringel_omega(&apply_automorphism(&x, phi)?)?;
        let right = apply_automorphism(&ringel_omega(&x)?, &swapped)?;
        holds[v.index()] = iso_in_homotopy(&left, &right, seed);
    }
    Ok(CommReport {
        p,
        q,
        seed,
        pair: phi.clone(),
        holds,
    })
}
