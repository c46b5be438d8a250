//! Closed formulas for Hom spaces between two-term complexes of the pure
//! shape `P_1^a → P_2^b`.
//!
//! A chain map between `X = (P_1^a --Σ W_k α_k--> P_2^b)` and
//! `Y = (P_1^c --Σ V_k α_k--> P_2^d)` placed in the same degrees is a scalar
//! pair `(F, G_0)` with `V_k F = G_0 W_k` for all `k`, plus a free part in
//! `span{α_iβ_j}` from `P_2^b` to `P_2^d`; homotopies only hit the latter,
//! through `H_j ↦ (V_i H_j)_{i,j}`. The free part squares to zero, so
//! `End_K(X)` modulo it is the scalar algebra of pairs `(F, G_0)`.

use super::ProjComplex;
use crate::algebra::{Lambda, Vertex};
use crate::linalg::{sparse, Echelon, Matrix, SparseVec, Q};

/// `P_1^a` in degree `k − 1`, `P_2^b` in degree `k`, with the `α_i`
/// coefficient matrices `w[i]` (`b × a`) as sparse triplets.
#[derive(Clone, Debug)]
pub struct UpShape {
    pub k: i32,
    pub a: usize,
    pub b: usize,
    pub w: Vec<Vec<(usize, usize, Q)>>,
}

impl UpShape {
    pub fn of(x: &ProjComplex) -> Option<UpShape> {
        let l = x.lambda();
        if x.is_zero() {
            return None;
        }
        let (lo, hi) = (x.lo(), x.hi());
        let (k, a, b) = if lo == hi {
            match x.term(lo) {
                (a, 0) => (lo + 1, a, 0),
                (0, b) => (lo, 0, b),
                _ => return None,
            }
        } else if hi == lo + 1 {
            match (x.term(lo), x.term(hi)) {
                ((a, 0), (0, b)) => (hi, a, b),
                _ => return None,
            }
        } else {
            return None;
        };
        let mut w = vec![Vec::new(); l.p];
        if let Some(d) = x.diff_ref(k - 1) {
            for (r, c, e) in d.entries() {
                for (basis, coeff) in e.entries() {
                    // entries of a P_1 → P_2 map are combinations of the α_i
                    let crate::algebra::Basis::Alpha(i) = l.kind(*basis) else {
                        unreachable!()
                    };
                    w[i].push((r, c, coeff.clone()));
                }
            }
        }
        Some(UpShape { k, a, b, w })
    }

    /// The `α` matrices stacked into a `(p·b) × a` matrix, as sparse rows.
    fn stacked_rows(&self) -> Vec<SparseVec> {
        let p = self.w.len();
        let mut rows = vec![Vec::new(); p * self.b];
        for (i, wi) in self.w.iter().enumerate() {
            for (r, c, x) in wi {
                rows[i * self.b + r].push((*c, x.clone()));
            }
        }
        rows.into_iter().map(SparseVec::from_pairs).collect()
    }

    pub fn stacked_rank(&self) -> usize {
        sparse::rank(self.stacked_rows())
    }

    pub fn g_vector(&self) -> (i64, i64) {
        // P_1^a in degree k − 1 and P_2^b in degree k
        let sign = if self.k % 2 == 0 { 1 } else { -1 };
        (-(self.a as i64) * sign, self.b as i64 * sign)
    }
}

/// The linear system `Φ(F, G_0) = (V_k F − G_0 W_k)_k` with variables
/// `F` (`c × a`, row-major) followed by `G_0` (`d × b`, row-major).
pub struct ScalarSystem<'s> {
    pub x: &'s UpShape,
    pub y: &'s UpShape,
}

impl<'s> ScalarSystem<'s> {
    pub fn new(x: &'s UpShape, y: &'s UpShape) -> ScalarSystem<'s> {
        ScalarSystem { x, y }
    }

    pub fn num_vars(&self) -> usize {
        self.y.a * self.x.a + self.y.b * self.x.b
    }

    fn f_var(&self, i: usize, j: usize) -> usize {
        i * self.x.a + j
    }

    fn g_var(&self, i: usize, j: usize) -> usize {
        self.y.a * self.x.a + i * self.x.b + j
    }

    /// Equation index of entry `(r, c)` of the `k`-th component (`d × a`).
    fn eq(&self, k: usize, r: usize, c: usize) -> usize {
        (k * self.y.b + r) * self.x.a + c
    }

    /// Column images of `Φ`, one per variable.
    pub fn images(&self) -> Vec<SparseVec> {
        let (x, y) = (self.x, self.y);
        let p = x.w.len();
        let mut imgs: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.num_vars()];
        // V_k F: entry (r, c) += V_k[r][m] F[m][c]
        for k in 0..p {
            for (r, m, v) in &y.w[k] {
                for c in 0..x.a {
                    imgs[self.f_var(*m, c)].push((self.eq(k, *r, c), v.clone()));
                }
            }
        }
        // − G_0 W_k: entry (r, c) −= G_0[r][m] W_k[m][c]
        for k in 0..p {
            for (m, c, w) in &x.w[k] {
                for r in 0..y.b {
                    imgs[self.g_var(r, *m)].push((self.eq(k, r, *c), -w));
                }
            }
        }
        imgs.into_iter().map(SparseVec::from_pairs).collect()
    }

    pub fn rank(&self) -> usize {
        sparse::rank(self.images())
    }

    /// Basis of the solution space.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new();
        let mut ker = Vec::new();
        for (v, img) in self.images().into_iter().enumerate() {
            if img.is_zero() {
                ker.push(SparseVec::unit(v));
                continue;
            }
            let (res, tag) = e.reduce_tagged(&img, &SparseVec::unit(v));
            if res.is_zero() {
                ker.push(tag);
            } else {
                e.insert_tagged(img, SparseVec::unit(v));
            }
        }
        ker
    }

    /// Splits a solution into `(F, G_0)` as dense matrices.
    pub fn unpack(&self, v: &SparseVec) -> (Matrix, Matrix) {
        let (x, y) = (self.x, self.y);
        let mut f = Matrix::zeros(y.a, x.a);
        let mut g = Matrix::zeros(y.b, x.b);
        let nf = y.a * x.a;
        for (i, c) in v.entries() {
            if *i < nf {
                f[(i / x.a, i % x.a)] = c.clone();
            } else {
                let j = i - nf;
                g[(j / x.b, j % x.b)] = c.clone();
            }
        }
        (f, g)
    }
}

/// `dim Hom_K(X, Y[r])` when both are of pure shape `P_1^a → P_2^b`.
pub fn hom_dim_up(l: &Lambda, x: &UpShape, y: &UpShape, r: i32) -> usize {
    let (p, q) = (l.p, l.q);
    // position of Y[r]'s P_2 term relative to X's
    let delta = (y.k - r) - x.k;
    match delta {
        0 => {
            let z0 = x.a * y.a + x.b * y.b - ScalarSystem::new(x, y).rank();
            z0 + q * x.b * (p * y.b - y.stacked_rank())
        }
        -1 => p * x.a * y.b - ScalarSystem::new(x, y).rank(),
        1 => q * x.b * (y.a - y.stacked_rank()),
        _ => 0,
    }
}

/// Closed-form `dim Hom_K(X, Y[r])` when both complexes have pure shape,
/// directly or after transposing to the opposite algebra; `None` otherwise.
pub fn hom_dim_fast(x: &ProjComplex, y: &ProjComplex, r: i32) -> Option<usize> {
    if x.is_zero() || y.is_zero() {
        return Some(0);
    }
    let l = x.lambda();
    if let (Some(ux), Some(uy)) = (UpShape::of(x), UpShape::of(y)) {
        return Some(hom_dim_up(&l, &ux, &uy, r));
    }
    let (tx, ty) = (x.transpose(), y.transpose());
    if let (Some(ux), Some(uy)) = (UpShape::of(&tx), UpShape::of(&ty)) {
        // Hom(X, Y[r]) ≅ Hom(Y^∨, X^∨[r])
        return Some(hom_dim_up(&l.opposite(), &uy, &ux, r));
    }
    None
}

/// `dim End_K(X) / rad` for pure-shape `X`, via the trace form of the
/// faithful action of the scalar algebra on `k^a ⊕ k^b`.
pub fn semisimple_quotient_dim(x: &UpShape) -> usize {
    let sys = ScalarSystem::new(x, x);
    let nvars = sys.num_vars();
    if nvars - sys.rank() <= 1 {
        return nvars - sys.rank();
    }
    let basis: Vec<(Matrix, Matrix)> = sys.kernel().iter().map(|v| sys.unpack(v)).collect();
    let n = basis.len();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (fi, gi) = &basis[i];
            let (fj, gj) = &basis[j];
            gram[(i, j)] = trace_of_product(fi, fj) + trace_of_product(gi, gj);
        }
    }
    gram.rank()
}

fn trace_of_product(a: &Matrix, b: &Matrix) -> Q {
    let mut t = Q::ZERO;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = &a[(i, j)];
            if !x.is_zero() {
                t += &(x * &b[(j, i)]);
            }
        }
    }
    t
}

/// Which vertex the summands of the pure shape sit at, by degree.
pub fn vertex_at(shape: &UpShape, degree: i32) -> Option<Vertex> {
    if degree == shape.k {
        Some(Vertex::Two)
    } else if degree == shape.k - 1 {
        Some(Vertex::One)
    } else {
        None
    }
}
