use std::collections::{BTreeMap, BTreeSet};

use super::complex::vertex_list;
use super::ProjComplex;
use crate::algebra::{AlgMatrix, Elem, Lambda, Vertex};
use crate::linalg::Q;

/// A differential under elimination: rows, a column index, and the entries
/// with nonzero idempotent coefficient in row-major order.
struct Work {
    rows: Vec<BTreeMap<usize, Elem>>,
    cols: Vec<BTreeSet<usize>>,
    units: BTreeSet<(usize, usize)>,
}

impl Work {
    fn new(d: &AlgMatrix, src: &[Vertex], l: &Lambda) -> Work {
        let mut w = Work {
            rows: vec![BTreeMap::new(); d.rows()],
            cols: vec![BTreeSet::new(); d.cols()],
            units: BTreeSet::new(),
        };
        for (i, j, e) in d.entries() {
            w.put(i, j, e.clone(), src, l);
        }
        w
    }

    fn put(&mut self, i: usize, j: usize, e: Elem, src: &[Vertex], l: &Lambda) {
        if e.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
            self.units.remove(&(i, j));
            return;
        }
        if l.idempotent_coeff(&e, src[j]).is_zero() {
            self.units.remove(&(i, j));
        } else {
            self.units.insert((i, j));
        }
        self.rows[i].insert(j, e);
        self.cols[j].insert(i);
    }

    fn clear_row(&mut self, i: usize) {
        for (j, _) in std::mem::take(&mut self.rows[i]) {
            self.cols[j].remove(&i);
            self.units.remove(&(i, j));
        }
    }

    fn clear_col(&mut self, j: usize) {
        for i in std::mem::take(&mut self.cols[j]) {
            self.rows[i].remove(&j);
            self.units.remove(&(i, j));
        }
    }

    fn to_matrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> AlgMatrix {
        let mut new_col = vec![usize::MAX; self.cols.len()];
        for (n, &j) in keep_cols.iter().enumerate() {
            new_col[j] = n;
        }
        let mut m = AlgMatrix::zeros(keep_rows.len(), keep_cols.len());
        for (n, &i) in keep_rows.iter().enumerate() {
            for (j, e) in &self.rows[i] {
                m.set(n, new_col[*j], e.clone());
            }
        }
        m
    }
}

/// Homotopy-equivalent radical complex, obtained by repeatedly cancelling a
/// differential entry with nonzero idempotent coefficient. For such an entry
/// `φ` in `d = [[φ, δ], [γ, ε]]` the pair of summands is dropped, `d` becomes
/// `ε − γ φ^{-1} δ`, and the neighbouring differentials are restricted.
pub fn minimize(x: &ProjComplex) -> ProjComplex {
    if x.is_radical() {
        return x.clone();
    }
    let l = x.lambda();
    let degrees: Vec<i32> = x.degrees().collect();
    let verts: Vec<Vec<Vertex>> = degrees.iter().map(|&n| x.vertices(n)).collect();
    let mut alive: Vec<Vec<bool>> = verts.iter().map(|v| vec![true; v.len()]).collect();
    let mut work: Vec<Work> = degrees[..degrees.len() - 1]
        .iter()
        .enumerate()
        .map(|(k, &n)| Work::new(&x.diff(n), &verts[k], &l))
        .collect();

    for k in 0..work.len() {
        while let Some(&(t, s)) = work[k].units.iter().next() {
            let src = &verts[k];
            let w = &mut work[k];
            let v = src[s];
            let inv = l
                .local_inverse(&w.rows[t][&s], v)
                .expect("idempotent coefficient is nonzero");
            // γ: column s without row t; δ: row t without column s
            let gamma: Vec<(usize, Elem)> = w.cols[s]
                .iter()
                .filter(|&&i| i != t)
                .map(|&i| (i, w.rows[i][&s].clone()))
                .collect();
            let delta: Vec<(usize, Elem)> = w.rows[t]
                .iter()
                .filter(|(j, _)| **j != s)
                .map(|(j, e)| (*j, e.clone()))
                .collect();
            for (i, g) in &gamma {
                let g_inv = l.mul(g, &inv);
                for (j, dl) in &delta {
                    let corr = l.mul(&g_inv, dl);
                    if !corr.is_zero() {
                        let cur = w.rows[*i].get(j).cloned().unwrap_or_default();
                        w.put(*i, *j, cur.axpy(&-Q::ONE, &corr), src, &l);
                    }
                }
            }
            w.clear_row(t);
            w.clear_col(s);
            alive[k][s] = false;
            alive[k + 1][t] = false;
            if k > 0 {
                work[k - 1].clear_row(s);
            }
            if k + 1 < work.len() {
                work[k + 1].clear_col(t);
            }
        }
    }

    let keep: Vec<Vec<usize>> = alive
        .iter()
        .map(|a| (0..a.len()).filter(|&i| a[i]).collect())
        .collect();
    let terms: Vec<(usize, usize)> = keep
        .iter()
        .zip(&verts)
        .map(|(kp, vs)| {
            let a = kp.iter().filter(|&&i| vs[i] == Vertex::One).count();
            debug_assert_eq!(
                kp.iter().map(|&i| vs[i]).collect::<Vec<_>>(),
                vertex_list((a, kp.len() - a))
            );
            (a, kp.len() - a)
        })
        .collect();
    let new_diffs: Vec<AlgMatrix> = work
        .iter()
        .enumerate()
        .map(|(k, w)| w.to_matrix(&keep[k + 1], &keep[k]))
        .collect();
    let out = ProjComplex::new_unchecked(l, x.lo(), terms, new_diffs);
    debug_assert!(out.is_radical());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Lambda;
    use crate::complexes::{cone, hom_dim, ChainMap};
    use crate::linalg::{SparseVec, Q};

    #[test]
    fn contractible_vanishes() {
        let l = Lambda::new(1, 1).unwrap();
        let mut d = AlgMatrix::zeros(1, 1);
        d.set(0, 0, SparseVec::unit(0));
        let x = ProjComplex::two_term(l, (1, 0), (1, 0), d).unwrap();
        assert!(minimize(&x).is_zero());
    }

    #[test]
    fn radical_unchanged() {
        let l = Lambda::new(2, 1).unwrap();
        let mut d = AlgMatrix::zeros(2, 1);
        d.set(0, 0, SparseVec::unit(l.alpha(0)));
        d.set(1, 0, SparseVec::unit(l.alpha(1)));
        let x = ProjComplex::two_term(l, (1, 0), (0, 2), d).unwrap();
        assert_eq!(minimize(&x), x);
    }

    #[test]
    fn local_unit_with_radical_part() {
        // P_2 --(2 e2 + α1β1)--> P_2 is contractible; the correction term
        // reaches the neighbour P_1 --α1--> P_2.
        let l = Lambda::new(1, 1).unwrap();
        let mut d0 = AlgMatrix::zeros(1, 1);
        d0.set(0, 0, SparseVec::unit(l.alpha(0)));
        let x = ProjComplex::two_term(l, (1, 0), (0, 1), d0).unwrap();
        let mut u = AlgMatrix::zeros(1, 1);
        u.set(
            0,
            0,
            SparseVec::from_pairs(vec![(1, Q::from_int(2)), (l.alpha_beta(0, 0), Q::ONE)]),
        );
        let y = ProjComplex::new(l, 0, vec![(0, 1), (0, 1)], vec![u]).unwrap();
        let s = ProjComplex::direct_sum(&[&x, &y]);
        let m = minimize(&s);
        assert_eq!(m, x);
        let id = ChainMap::identity(&x);
        let c = minimize(&cone(&x, &x, &id).unwrap());
        assert!(c.is_zero());
        assert_eq!(hom_dim(&m, &m, 0).unwrap(), hom_dim(&x, &x, 0).unwrap());
    }
}
