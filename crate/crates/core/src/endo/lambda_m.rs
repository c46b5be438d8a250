use super::EndoError;
use crate::algebra::FdAlgebra;
use crate::linalg::{SparseVec, Q};
use crate::silting::AmTower;

/// `Λ^{p,q}_m` on the basis
/// `e_1, e_2, A_{m+1}⊗B⊗A_m^*, A_m⊗B⊗A_m^*, A_1, A_{m+1}⊗B⊗A_{m−1}^*, A_m⊗B⊗A_{m−1}^*`,
/// tensor factors indexed lexicographically.
#[derive(Clone, Debug)]
pub struct LambdaM {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    /// `dims[i][j] = dim e_{i+1}Λ_m e_{j+1}`.
    pub dims: [[usize; 2]; 2],
    pub algebra: FdAlgebra,
}

impl LambdaM {
    pub fn total(&self) -> usize {
        self.algebra.dim()
    }
}

/// Dimensions of the four corners `e_iΛ_me_j` from the tower alone.
pub fn lambda_m_dims(q: usize, m: usize, tower: &AmTower) -> [[usize; 2]; 2] {
    let a = |k: i64| tower.dim(k);
    let m = m as i64;
    [
        [1 + q * a(m + 1) * a(m), q * a(m) * a(m)],
        [tower.p + q * a(m + 1) * a(m - 1), 1 + q * a(m) * a(m - 1)],
    ]
}

/// Offsets and factor sizes of the pieces of the basis.
#[derive(Clone, Copy, Debug)]
struct Layout {
    q: usize,
    /// `a_{m−1}, a_m, a_{m+1}`.
    a: [usize; 3],
    x1: usize,
    y: usize,
    alpha: usize,
    z: usize,
    x2: usize,
    total: usize,
}

impl Layout {
    fn new(p: usize, q: usize, a: [usize; 3]) -> Layout {
        let x1 = 2;
        let y = x1 + a[2] * q * a[1];
        let alpha = y + a[1] * q * a[1];
        let z = alpha + p;
        let x2 = z + a[2] * q * a[0];
        let total = x2 + a[1] * q * a[0];
        Layout {
            q,
            a,
            x1,
            y,
            alpha,
            z,
            x2,
            total,
        }
    }

    fn idx(&self, start: usize, u: usize, v: usize, f: usize, nf: usize) -> usize {
        start + (u * self.q + v) * nf + f
    }

    fn split(&self, b: usize, start: usize, nf: usize) -> (usize, usize, usize) {
        let r = b - start;
        (r / (self.q * nf), r / nf % self.q, r % nf)
    }

    /// Left and right vertex (0 or 1) of a basis element.
    fn corner(&self, b: usize) -> (usize, usize) {
        match b {
            0 => (0, 0),
            1 => (1, 1),
            b if b < self.y => (0, 0),
            b if b < self.alpha => (0, 1),
            b if b < self.x2 => (1, 0),
            _ => (1, 1),
        }
    }
}

/// Builds `Λ^{p,q}_m` with products induced by `κ_{m,k}` on the left tensor
/// factor and `κ_{m−1,k}^*` on the right one, and checks associativity.
pub fn make_lambda_m(p: usize, q: usize, m: i64, tower: &AmTower) -> Result<LambdaM, EndoError> {
    if m < 0 {
        return Err(EndoError::NegativeM(m));
    }
    if tower.p != p {
        return Err(EndoError::TowerMismatch { tower: tower.p, p });
    }
    let mu = m as usize;
    if tower.depth() < mu {
        return Err(EndoError::TowerDepth {
            depth: tower.depth(),
            m: mu,
        });
    }
    let a = [tower.dim(m - 1), tower.dim(m), tower.dim(m + 1)];
    let lay = Layout::new(p, q, a);
    let n = lay.total;
    let kappa: Vec<_> = (0..p).map(|k| tower.kappa(m, k)).collect();
    let kappa_prev: Vec<_> = (0..p).map(|k| tower.kappa(m - 1, k)).collect();

    let mut table = vec![SparseVec::new(); n * n];
    let mut set = |x: usize, y: usize, v: SparseVec| table[x * n + y] = v;
    for b in 0..n {
        let (i, j) = lay.corner(b);
        set(i, b, SparseVec::unit(b));
        set(b, j, SparseVec::unit(b));
    }
    for k in 0..p {
        let al = lay.alpha + k;
        let kk = &kappa[k];
        let kp = &kappa_prev[k];
        // u ⊗ v ⊗ f ↦ κ_{m,k}(u) ⊗ v ⊗ f
        let left = |src: usize, dst: usize, nf: usize| {
            (0..a[1] * q * nf)
                .map(|r| {
                    let (u, v, f) = lay.split(src + r, src, nf);
                    let img = (0..a[2])
                        .filter(|&s| !kk[(s, u)].is_zero())
                        .map(|s| (lay.idx(dst, s, v, f, nf), kk[(s, u)].clone()))
                        .collect();
                    (src + r, SparseVec::from_pairs(img))
                })
                .collect::<Vec<_>>()
        };
        // u ⊗ v ⊗ f ↦ u ⊗ v ⊗ (f ∘ κ_{m−1,k})
        let right = |src: usize, dst: usize, nu: usize| {
            (0..nu * q * a[1])
                .map(|r| {
                    let (u, v, f) = lay.split(src + r, src, a[1]);
                    let img: Vec<(usize, Q)> = (0..a[0])
                        .filter(|&s| !kp[(f, s)].is_zero())
                        .map(|s| (lay.idx(dst, u, v, s, a[0]), kp[(f, s)].clone()))
                        .collect();
                    (src + r, SparseVec::from_pairs(img))
                })
                .collect::<Vec<_>>()
        };
        for (y, v) in left(lay.y, lay.x1, a[1]) {
            set(y, al, v);
        }
        for (x2, v) in left(lay.x2, lay.z, a[0]) {
            set(x2, al, v);
        }
        for (y, v) in right(lay.y, lay.x2, a[1]) {
            set(al, y, v);
        }
        for (x1, v) in right(lay.x1, lay.z, a[2]) {
            set(al, x1, v);
        }
    }
    let labels = (0..n).map(|b| label(&lay, b)).collect();
    let algebra = FdAlgebra::new(labels, table, vec![SparseVec::unit(0), SparseVec::unit(1)])?;
    Ok(LambdaM {
        p,
        q,
        m: mu,
        dims: lambda_m_dims(q, mu, tower),
        algebra,
    })
}

fn label(lay: &Layout, b: usize) -> String {
    let piece = |name: &str, start: usize, nf: usize| {
        let (u, v, f) = lay.split(b, start, nf);
        format!("{name}[{u},{v},{f}]")
    };
    match b {
        0 => "e1".into(),
        1 => "e2".into(),
        b if b < lay.y => piece("X1", lay.x1, lay.a[1]),
        b if b < lay.alpha => piece("Y", lay.y, lay.a[1]),
        b if b < lay.z => format!("a{}", b - lay.alpha),
        b if b < lay.x2 => piece("Z", lay.z, lay.a[0]),
        _ => piece("X2", lay.x2, lay.a[0]),
    }
}
