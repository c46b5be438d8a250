use serde::{Deserialize, Serialize};

use super::{AlgebraError, FdAlgebra};
use crate::linalg::{Matrix, SparseVec, Q};

/// A vertex of the two-vertex quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    One,
    Two,
}

impl Vertex {
    pub fn index(self) -> usize {
        match self {
            Vertex::One => 0,
            Vertex::Two => 1,
        }
    }

    pub fn from_index(i: usize) -> Vertex {
        match i {
            0 => Vertex::One,
            1 => Vertex::Two,
            _ => panic!("vertex index {i} out of range"),
        }
    }

    pub fn other(self) -> Vertex {
        match self {
            Vertex::One => Vertex::Two,
            Vertex::Two => Vertex::One,
        }
    }

    pub const BOTH: [Vertex; 2] = [Vertex::One, Vertex::Two];
}

/// Basis element of Λ^{p,q}, indices zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    E(Vertex),
    Alpha(usize),
    Beta(usize),
    /// The path `β_j` followed by `α_i`, written `α_i β_j`.
    AlphaBeta(usize, usize),
}

/// An element of an algebra, as coefficients on its basis.
pub type Elem = SparseVec;

/// The algebra Λ^{p,q}: the quiver with `p` arrows `α_i: 1 → 2` and `q`
/// arrows `β_j: 2 → 1`, modulo all `β_j α_i`.
///
/// Paths compose right to left, so `α_i β_j` runs `β_j` first and lies in
/// `e_2 Λ e_2`; a basis element of `e_t Λ e_s` is a map `P_s → P_t` between
/// the right projectives `P_v = e_v Λ`, acting by left multiplication.
///
/// Basis order: `e1, e2, α_1..α_p, β_1..β_q, α_1β_1, α_1β_2, .., α_pβ_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lambda {
    pub p: usize,
    pub q: usize,
}

impl Lambda {
    pub fn new(p: usize, q: usize) -> Result<Lambda, AlgebraError> {
        if p + q == 0 {
            return Err(AlgebraError::Semisimple);
        }
        Ok(Lambda { p, q })
    }

    pub fn dim(&self) -> usize {
        2 + self.p + self.q + self.p * self.q
    }

    /// The algebra with the arrow families swapped, identified with the
    /// opposite algebra via `α_i ↦ β_i`, `β_j ↦ α_j`.
    pub fn opposite(&self) -> Lambda {
        Lambda {
            p: self.q,
            q: self.p,
        }
    }

    pub fn e(&self, v: Vertex) -> usize {
        v.index()
    }

    pub fn alpha(&self, i: usize) -> usize {
        debug_assert!(i < self.p);
        2 + i
    }

    pub fn beta(&self, j: usize) -> usize {
        debug_assert!(j < self.q);
        2 + self.p + j
    }

    pub fn alpha_beta(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.p && j < self.q);
        2 + self.p + self.q + i * self.q + j
    }

    pub fn kind(&self, b: usize) -> Basis {
        let (p, q) = (self.p, self.q);
        match b {
            0 => Basis::E(Vertex::One),
            1 => Basis::E(Vertex::Two),
            _ if b < 2 + p => Basis::Alpha(b - 2),
            _ if b < 2 + p + q => Basis::Beta(b - 2 - p),
            _ => {
                let k = b - 2 - p - q;
                Basis::AlphaBeta(k / q, k % q)
            }
        }
    }

    pub fn label(&self, b: usize) -> String {
        match self.kind(b) {
            Basis::E(v) => format!("e{}", v.index() + 1),
            Basis::Alpha(i) => format!("a{}", i + 1),
            Basis::Beta(j) => format!("b{}", j + 1),
            Basis::AlphaBeta(i, j) => format!("a{}b{}", i + 1, j + 1),
        }
    }

    pub fn source(&self, b: usize) -> Vertex {
        match self.kind(b) {
            Basis::E(v) => v,
            Basis::Alpha(_) => Vertex::One,
            Basis::Beta(_) | Basis::AlphaBeta(..) => Vertex::Two,
        }
    }

    pub fn target(&self, b: usize) -> Vertex {
        match self.kind(b) {
            Basis::E(v) => v,
            Basis::Alpha(_) | Basis::AlphaBeta(..) => Vertex::Two,
            Basis::Beta(_) => Vertex::One,
        }
    }

    /// Path length (0 for idempotents).
    pub fn degree(&self, b: usize) -> usize {
        match self.kind(b) {
            Basis::E(_) => 0,
            Basis::Alpha(_) | Basis::Beta(_) => 1,
            Basis::AlphaBeta(..) => 2,
        }
    }

    /// Product of basis elements `x · y` (apply `y` first), which is zero or
    /// another basis element since the algebra is monomial.
    pub fn mul_basis(&self, x: usize, y: usize) -> Option<usize> {
        if self.source(x) != self.target(y) {
            return None;
        }
        match (self.kind(x), self.kind(y)) {
            (Basis::E(_), _) => Some(y),
            (_, Basis::E(_)) => Some(x),
            (Basis::Alpha(i), Basis::Beta(j)) => Some(self.alpha_beta(i, j)),
            _ => None,
        }
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut pairs = Vec::new();
        for (a, ca) in x.entries() {
            for (b, cb) in y.entries() {
                if let Some(c) = self.mul_basis(*a, *b) {
                    pairs.push((c, ca * cb));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Basis of `e_to Λ e_from`, i.e. of `Hom(P_from, P_to)`.
    pub fn hom_basis(&self, from: Vertex, to: Vertex) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.source(b) == from && self.target(b) == to)
            .collect()
    }

    /// Basis of `P_v = e_v Λ`.
    pub fn projective_basis(&self, v: Vertex) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.target(b) == v).collect()
    }

    pub fn unit_elem(&self, v: Vertex) -> Elem {
        SparseVec::unit(self.e(v))
    }

    /// Coefficient of the idempotent in an element of `e_v Λ e_v`.
    pub fn idempotent_coeff(&self, x: &Elem, v: Vertex) -> Q {
        x.get(self.e(v))
    }

    /// Inverse of an element of the local ring `e_v Λ e_v` with nonzero
    /// idempotent coefficient. Uses `(λ + n)^{-1} = λ^{-1} - λ^{-2} n`,
    /// valid because the radical of `e_v Λ e_v` squares to zero.
    pub fn local_inverse(&self, x: &Elem, v: Vertex) -> Option<Elem> {
        let lam = self.idempotent_coeff(x, v);
        if lam.is_zero() {
            return None;
        }
        let inv = lam.recip();
        let inv2 = -(&inv * &inv);
        let e = self.e(v);
        let pairs = x
            .entries()
            .iter()
            .map(|(b, c)| {
                if *b == e {
                    (*b, inv.clone())
                } else {
                    (*b, c * &inv2)
                }
            })
            .collect();
        Some(SparseVec::from_pairs(pairs))
    }

    /// Image of a basis element under the identification with the opposite
    /// algebra: `α_i ↦ β_i`, `β_j ↦ α_j`, `α_iβ_j ↦ α_jβ_i`.
    pub fn to_opposite_basis(&self, b: usize) -> usize {
        let op = self.opposite();
        match self.kind(b) {
            Basis::E(v) => op.e(v),
            Basis::Alpha(i) => op.beta(i),
            Basis::Beta(j) => op.alpha(j),
            Basis::AlphaBeta(i, j) => op.alpha_beta(j, i),
        }
    }

    pub fn to_opposite(&self, x: &Elem) -> Elem {
        x.map_cols(|b| self.to_opposite_basis(b))
    }

    /// `[[dim e_1Λe_1, dim e_1Λe_2], [dim e_2Λe_1, dim e_2Λe_2]]`.
    pub fn cartan_matrix(&self) -> [[usize; 2]; 2] {
        let mut c = [[0; 2]; 2];
        for i in Vertex::BOTH {
            for j in Vertex::BOTH {
                // e_i Λ e_j: target i, source j
                c[i.index()][j.index()] = self.hom_basis(j, i).len();
            }
        }
        c
    }

    pub fn basis_labels(&self) -> Vec<String> {
        (0..self.dim()).map(|b| self.label(b)).collect()
    }

    /// The same algebra as a generic structure-constant algebra with
    /// idempotents `e1, e2`.
    pub fn to_fd(&self) -> FdAlgebra {
        let n = self.dim();
        let mut table = vec![SparseVec::new(); n * n];
        for x in 0..n {
            for y in 0..n {
                if let Some(z) = self.mul_basis(x, y) {
                    table[x * n + y] = SparseVec::unit(z);
                }
            }
        }
        let idem = vec![SparseVec::unit(0), SparseVec::unit(1)];
        FdAlgebra::new(self.basis_labels(), table, idem).expect("Λ^{p,q} is a valid algebra")
    }

    /// Dimension vectors (vertex 1, vertex 2) of the standard modules
    /// `(S_2, P_1)` and the costandard modules `(I_1, S_2)`.
    pub fn quasi_hereditary_data(&self) -> QuasiHereditaryData {
        let p1 = self.projective_dims(Vertex::One);
        let i1 = (1, self.p);
        QuasiHereditaryData {
            standard: [(0, 1), p1],
            costandard: [i1, (0, 1)],
        }
    }

    /// Dimension vector of `P_v` as (vertex 1, vertex 2).
    pub fn projective_dims(&self, v: Vertex) -> (usize, usize) {
        let c = self.cartan_matrix();
        // P_v = e_v Λ; its vertex-w part is e_v Λ e_w
        (c[v.index()][0], c[v.index()][1])
    }

    /// Matrix of left multiplication by `x` on `Λ`, columns indexed by basis.
    pub fn left_mult_matrix(&self, x: &Elem) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for y in 0..n {
            let prod = self.mul(x, &SparseVec::unit(y));
            for (z, c) in prod.entries() {
                m[(*z, y)] = c.clone();
            }
        }
        m
    }
}

/// Standard and costandard dimension vectors, each `(dim at 1, dim at 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiHereditaryData {
    pub standard: [(usize, usize); 2],
    pub costandard: [(usize, usize); 2],
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let l = Lambda::new(1, 1).unwrap();
        assert_eq!(l.dim(), 5);
        let l = Lambda::new(2, 1).unwrap();
        assert_eq!(l.cartan_matrix()[1][1], 3);
        assert_eq!(l.projective_basis(Vertex::One).len(), 2);
        for p in 0..4 {
            for q in 0..4 {
                if p + q == 0 {
                    continue;
                }
                let l = Lambda::new(p, q).unwrap();
                assert_eq!(l.hom_basis(Vertex::One, Vertex::Two).len(), p);
                assert_eq!(l.dim(), 2 + p + q + p * q);
                assert_eq!(l.projective_basis(Vertex::One).len(), 1 + q);
                assert_eq!(l.projective_basis(Vertex::Two).len(), 1 + p + p * q);
            }
        }
    }

    #[test]
    fn semisimple_rejected() {
        assert_eq!(Lambda::new(0, 0), Err(AlgebraError::Semisimple));
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(Lambda::new(1, 1).unwrap().cartan_matrix(), [[1, 1], [1, 2]]);
        assert_eq!(Lambda::new(2, 3).unwrap().cartan_matrix(), [[1, 3], [2, 7]]);
        assert_eq!(Lambda::new(4, 0).unwrap().cartan_matrix(), [[1, 0], [4, 1]]);
    }

    #[test]
    fn relations_and_idempotents() {
        let l = Lambda::new(3, 2).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(l.mul_basis(l.beta(j), l.alpha(i)), None);
                assert_eq!(l.mul_basis(l.alpha(i), l.beta(j)), Some(l.alpha_beta(i, j)));
            }
        }
        assert_eq!(l.mul_basis(0, 1), None);
        assert_eq!(l.mul_basis(0, 0), Some(0));
        // e1 + e2 is the unit
        let one = SparseVec::from_pairs(vec![(0, Q::ONE), (1, Q::ONE)]);
        for b in 0..l.dim() {
            let x = SparseVec::unit(b);
            assert_eq!(l.mul(&one, &x), x);
            assert_eq!(l.mul(&x, &one), x);
        }
    }

    #[test]
    fn associative() {
        let l = Lambda::new(2, 2).unwrap();
        let n = l.dim();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let a = l.mul_basis(x, y).and_then(|xy| l.mul_basis(xy, z));
                    let b = l.mul_basis(y, z).and_then(|yz| l.mul_basis(x, yz));
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn qh_data() {
        let d = Lambda::new(1, 1).unwrap().quasi_hereditary_data();
        assert_eq!(d.standard, [(0, 1), (1, 1)]);
        let d = Lambda::new(3, 2).unwrap().quasi_hereditary_data();
        assert_eq!(d.costandard[0], (1, 3));
        assert_eq!(d.standard[0], (0, 1));
    }

    #[test]
    fn local_inverse() {
        let l = Lambda::new(2, 2).unwrap();
        let x = SparseVec::from_pairs(vec![
            (1, Q::from_int(2)),
            (l.alpha_beta(1, 0), Q::from_int(3)),
        ]);
        let inv = l.local_inverse(&x, Vertex::Two).unwrap();
        assert_eq!(l.mul(&x, &inv), l.unit_elem(Vertex::Two));
    }

    #[test]
    fn opposite_reverses_products() {
        let l = Lambda::new(2, 3).unwrap();
        let op = l.opposite();
        for x in 0..l.dim() {
            for y in 0..l.dim() {
                let lhs = l.mul_basis(x, y).map(|z| l.to_opposite_basis(z));
                let rhs = op.mul_basis(l.to_opposite_basis(y), l.to_opposite_basis(x));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
