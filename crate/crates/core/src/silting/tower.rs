//! The spaces `A_m` with the maps `κ_{m,k}`, `ι_m` and `π_m`.
//!
//! `A_1 ⊗ A_m` is indexed by `k·a_m + j` for `α_k ⊗ e_j`. A vector space map
//! `U → V` is stored as a `dim V × dim U` matrix acting on columns.

use serde::Serialize;

use super::SiltingError;
use crate::linalg::{Echelon, Matrix, SparseVec, Q};

#[derive(Clone, Debug, Serialize)]
pub struct AmTower {
    pub p: usize,
    /// `a_0, …, a_{M+1}`.
    pub dims: Vec<usize>,
    /// `kappa[m][k]`: `A_m → A_{m+1}`, for `m = 0..=M`.
    pub kappa: Vec<Vec<Matrix>>,
    /// `iota[m]`: `A_{m−1} → A_1 ⊗ A_m`, for `m = 0..=M`.
    pub iota: Vec<Matrix>,
    /// `pi[m]`: `A_1 ⊗ A_m → A_{m+1}`, for `m = 0..=M`.
    pub pi: Vec<Matrix>,
}

/// `a_m` for `m ≥ −1` by the recursion, without building any maps.
pub fn tower_dim(p: usize, m: i64) -> i128 {
    let (mut prev, mut cur) = (0i128, 1i128);
    if m < 0 {
        return 0;
    }
    for _ in 0..m {
        (prev, cur) = (cur, p as i128 * cur - prev);
    }
    cur
}

/// Builds `A_0, …, A_{M+1}`.
pub fn build_tower(p: usize, depth: usize) -> Result<AmTower, SiltingError> {
    if p < 2 {
        return Err(SiltingError::TowerNeedsP2(p));
    }
    if depth < 1 {
        return Err(SiltingError::Depth(depth));
    }
    let mut dims = vec![1usize];
    let mut kappa: Vec<Vec<Matrix>> = Vec::new();
    let mut iota = Vec::new();
    let mut pi = Vec::new();
    // κ_{−1,k}: A_{−1} = 0 → A_0
    let mut prev_kappa: Vec<Matrix> = vec![Matrix::zeros(1, 0); p];
    for m in 0..=depth {
        let am = dims[m];
        let io = stack(&prev_kappa);
        let pr = cokernel(&io);
        let next = pr.rows();
        let ks: Vec<Matrix> = (0..p)
            .map(|k| {
                pr.submatrix(
                    &(0..next).collect::<Vec<_>>(),
                    &(k * am..(k + 1) * am).collect::<Vec<_>>(),
                )
            })
            .collect();
        dims.push(next);
        iota.push(io);
        pi.push(pr);
        kappa.push(ks.clone());
        prev_kappa = ks;
    }
    Ok(AmTower {
        p,
        dims,
        kappa,
        iota,
        pi,
    })
}

/// `x ↦ Σ_k α_k ⊗ K_k x`.
fn stack(ks: &[Matrix]) -> Matrix {
    let mut out = ks[0].clone();
    for k in &ks[1..] {
        out = out.vstack(k);
    }
    out
}

/// Projection onto the span of the coordinates that are not pivots of the
/// reduced image of `m`; a pivot coordinate `c` of a reduced image row `r`
/// maps to `−Σ_j r_j e_j` over the non-pivot `j`.
fn cokernel(m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut e = Echelon::new();
    for j in 0..m.cols() {
        e.insert(SparseVec::from_dense(&m.col(j)));
    }
    let rows = e.reduced_rows();
    let free: Vec<usize> = (0..n).filter(|c| !e.is_pivot(*c)).collect();
    let mut pos = vec![usize::MAX; n];
    for (t, &j) in free.iter().enumerate() {
        pos[j] = t;
    }
    let mut pr = Matrix::zeros(free.len(), n);
    for (t, &j) in free.iter().enumerate() {
        pr[(t, j)] = Q::ONE;
    }
    for r in &rows {
        let c = r.lead().unwrap();
        for (j, x) in &r.entries()[1..] {
            pr[(pos[*j], c)] = -x;
        }
    }
    pr
}

impl AmTower {
    /// Largest `m` with `A_m` and `A_{m+1}` available.
    pub fn depth(&self) -> usize {
        self.dims.len() - 2
    }

    /// `a_m`, with `a_{−1} = 0`.
    pub fn dim(&self, m: i64) -> usize {
        if m < 0 {
            0
        } else {
            self.dims[m as usize]
        }
    }

    /// `κ_{m,k}` for `m ≥ −1`.
    pub fn kappa(&self, m: i64, k: usize) -> Matrix {
        if m < 0 {
            Matrix::zeros(1, 0)
        } else {
            self.kappa[m as usize][k].clone()
        }
    }

    /// `(ι_m^* ⊗ Id)(Id ⊗ ι_m)` on `A_{m−1} ⊗ A_m^*`, written as
    /// `X ↦ Σ_k K_k X K_k` with `K_k = κ_{m−1,k}`, as sparse rows.
    pub fn iota_square_rows(&self, m: usize) -> Vec<SparseVec> {
        let ks: Vec<Matrix> = (0..self.p).map(|k| self.kappa(m as i64 - 1, k)).collect();
        let (r, c) = (self.dim(m as i64), self.dim(m as i64 - 1));
        // X is c × r (index i·r + j); the image is r × c (index s·c + t):
        // (K X K)[s][t] = Σ K[s][i] X[i][j] K[j][t]
        let mut rows = vec![Vec::new(); r * c];
        for k in &ks {
            for s in 0..r {
                for i in 0..c {
                    let a = &k[(s, i)];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..r {
                        for t in 0..c {
                            let b = &k[(j, t)];
                            if !b.is_zero() {
                                rows[s * c + t].push((i * r + j, a * b));
                            }
                        }
                    }
                }
            }
        }
        rows.into_iter().map(SparseVec::from_pairs).collect()
    }

    /// Checks every invariant on the levels `m ≤ max_square` for the
    /// invertibility statement and on all levels otherwise.
    pub fn check(&self, max_square: usize) -> Result<(), String> {
        let p = self.p;
        if self.dims[0] != 1 || self.dims[1] != p {
            return Err("a_0 = 1 and a_1 = p".into());
        }
        for m in 0..=self.depth() {
            let (am, am1, an) = (
                self.dim(m as i64),
                self.dim(m as i64 - 1),
                self.dim(m as i64 + 1),
            );
            if an + am1 != p * am {
                return Err(format!("recursion fails at m = {m}"));
            }
            if am * am + am1 * am1 != p * am * am1 + 1 {
                return Err(format!("quadratic identity fails at m = {m}"));
            }
            if !self.pi[m].mul(&self.iota[m]).is_zero() {
                return Err(format!("π_{m} ι_{m} ≠ 0"));
            }
            if self.pi[m].rank() != an {
                return Err(format!("π_{m} is not onto"));
            }
            for k in 0..p {
                // κ_{m,k} = π_m ∘ (α_k ⊗ −)
                let mut ins = Matrix::zeros(p * am, am);
                for j in 0..am {
                    ins[(k * am + j, j)] = Q::ONE;
                }
                if self.pi[m].mul(&ins) != self.kappa[m][k] {
                    return Err(format!("κ_{{{m},{k}}} is not π_{m} restricted"));
                }
            }
            if m >= 1 && m <= max_square {
                let rows = self.iota_square_rows(m);
                let n = rows.len();
                if crate::linalg::sparse::rank(rows) != n {
                    return Err(format!("(ι_{m}^* ⊗ Id)(Id ⊗ ι_{m}) is singular"));
                }
            }
        }
        Ok(())
    }
}
