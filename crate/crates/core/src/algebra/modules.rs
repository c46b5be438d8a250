//! Finite-dimensional right Λ^{p,q}-modules as quiver representations.
//!
//! Vectors are rows and maps act on the right: `v ↦ v·F`. A vector of the
//! whole module is the concatenation of its vertex-1 and vertex-2 parts.

use std::collections::HashMap;

use super::{AlgMatrix, AlgebraError, Basis, Elem, Lambda, Vertex};
use crate::linalg::{Matrix, SparseVec, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub lambda: Lambda,
    /// `(dim V_1, dim V_2)`.
    pub dims: [usize; 2],
    /// Action of `α_i`, a `dim V_2 × dim V_1` matrix.
    pub alpha: Vec<Matrix>,
    /// Action of `β_j`, a `dim V_1 × dim V_2` matrix.
    pub beta: Vec<Matrix>,
}

/// A module homomorphism as one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMap {
    pub f: [Matrix; 2],
}

impl ModMap {
    pub fn zero(src: &QuiverRep, tgt: &QuiverRep) -> ModMap {
        ModMap {
            f: [
                Matrix::zeros(src.dims[0], tgt.dims[0]),
                Matrix::zeros(src.dims[1], tgt.dims[1]),
            ],
        }
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &ModMap) -> ModMap {
        ModMap {
            f: [self.f[0].mul(&next.f[0]), self.f[1].mul(&next.f[1])],
        }
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        ModMap {
            f: [self.f[0].add(&other.f[0]), self.f[1].add(&other.f[1])],
        }
    }

    pub fn scale(&self, s: &Q) -> ModMap {
        ModMap {
            f: [self.f[0].scale(s), self.f[1].scale(s)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f[0].is_zero() && self.f[1].is_zero()
    }
}

impl QuiverRep {
    pub fn new(
        lambda: Lambda,
        dims: [usize; 2],
        alpha: Vec<Matrix>,
        beta: Vec<Matrix>,
    ) -> Result<QuiverRep, AlgebraError> {
        let r = QuiverRep {
            lambda,
            dims,
            alpha,
            beta,
        };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let l = self.lambda;
        if self.alpha.len() != l.p || self.beta.len() != l.q {
            return Err(AlgebraError::Shape("wrong number of arrow matrices".into()));
        }
        for a in &self.alpha {
            if (a.rows(), a.cols()) != (self.dims[1], self.dims[0]) {
                return Err(AlgebraError::Shape("α action has wrong shape".into()));
            }
        }
        for b in &self.beta {
            if (b.rows(), b.cols()) != (self.dims[0], self.dims[1]) {
                return Err(AlgebraError::Shape("β action has wrong shape".into()));
            }
        }
        for b in &self.beta {
            for a in &self.alpha {
                if !b.mul(a).is_zero() {
                    return Err(AlgebraError::Relation);
                }
            }
        }
        Ok(())
    }

    pub fn zero(lambda: Lambda) -> QuiverRep {
        QuiverRep {
            lambda,
            dims: [0, 0],
            alpha: vec![Matrix::zeros(0, 0); lambda.p],
            beta: vec![Matrix::zeros(0, 0); lambda.q],
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims[0] + self.dims[1]
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `(v, a)` with `v` a vector at the source vertex of the basis element.
    pub fn act_basis(&self, b: usize, v: &[Q], at: Vertex) -> Option<(Vec<Q>, Vertex)> {
        let l = self.lambda;
        if l.target(b) != at {
            return None;
        }
        let vec_mat = |m: &Matrix, v: &[Q]| {
            Matrix::from_vec(1, v.len(), v.to_vec())
                .mul(m)
                .entries()
                .to_vec()
        };
        let out = match l.kind(b) {
            Basis::E(_) => v.to_vec(),
            Basis::Alpha(i) => vec_mat(&self.alpha[i], v),
            Basis::Beta(j) => vec_mat(&self.beta[j], v),
            Basis::AlphaBeta(i, j) => vec_mat(&self.beta[j], &vec_mat(&self.alpha[i], v)),
        };
        Some((out, l.source(b)))
    }

    /// Simple module at `v`.
    pub fn simple(lambda: Lambda, v: Vertex) -> QuiverRep {
        let mut dims = [0, 0];
        dims[v.index()] = 1;
        QuiverRep {
            lambda,
            dims,
            alpha: vec![Matrix::zeros(dims[1], dims[0]); lambda.p],
            beta: vec![Matrix::zeros(dims[0], dims[1]); lambda.q],
        }
    }

    /// `P_v = e_v Λ` in the basis of [`ProjSum`].
    pub fn projective(lambda: Lambda, v: Vertex) -> QuiverRep {
        ProjSum::new(lambda, vec![v]).rep
    }

    /// `I_v = D(Λ e_v)` with dual basis `b^*`, `b ∈ Λ e_v` in basis order;
    /// `b^*` sits at the target vertex of `b`.
    pub fn injective(lambda: Lambda, v: Vertex) -> QuiverRep {
        let (coords, pos) = injective_coords(&lambda, v);
        let dims = [coords[0].len(), coords[1].len()];
        let mut alpha = vec![Matrix::zeros(dims[1], dims[0]); lambda.p];
        let mut beta = vec![Matrix::zeros(dims[0], dims[1]); lambda.q];
        // (b^*·a)(y) = b^*(a y): b^*·a = Σ_{a y = b} y^*
        for (w, list) in coords.iter().enumerate() {
            for (k, &b) in list.iter().enumerate() {
                for y in 0..lambda.dim() {
                    if lambda.source(y) != v {
                        continue;
                    }
                    for a in 0..lambda.dim() {
                        if lambda.degree(a) != 1 || lambda.mul_basis(a, y) != Some(b) {
                            continue;
                        }
                        let (yw, yk) = pos[&y];
                        match lambda.kind(a) {
                            Basis::Alpha(i) => {
                                debug_assert_eq!((w, yw), (1, 0));
                                alpha[i][(k, yk)] = Q::ONE;
                            }
                            Basis::Beta(j) => {
                                debug_assert_eq!((w, yw), (0, 1));
                                beta[j][(k, yk)] = Q::ONE;
                            }
                            _ => unreachable!(),
                        }
                    }
                }
            }
        }
        QuiverRep {
            lambda,
            dims,
            alpha,
            beta,
        }
    }

    /// Direct sum; coordinates at each vertex are concatenated in order.
    pub fn direct_sum(lambda: Lambda, parts: &[&QuiverRep]) -> QuiverRep {
        let dims = [
            parts.iter().map(|r| r.dims[0]).sum(),
            parts.iter().map(|r| r.dims[1]).sum(),
        ];
        let mut alpha = vec![Matrix::zeros(dims[1], dims[0]); lambda.p];
        let mut beta = vec![Matrix::zeros(dims[0], dims[1]); lambda.q];
        let (mut o1, mut o2) = (0, 0);
        for r in parts {
            for i in 0..lambda.p {
                paste(&mut alpha[i], o2, o1, &r.alpha[i]);
            }
            for j in 0..lambda.q {
                paste(&mut beta[j], o1, o2, &r.beta[j]);
            }
            o1 += r.dims[0];
            o2 += r.dims[1];
        }
        QuiverRep {
            lambda,
            dims,
            alpha,
            beta,
        }
    }

    pub fn is_hom(&self, tgt: &QuiverRep, f: &ModMap) -> bool {
        if (f.f[0].rows(), f.f[0].cols(), f.f[1].rows(), f.f[1].cols())
            != (self.dims[0], tgt.dims[0], self.dims[1], tgt.dims[1])
        {
            return false;
        }
        (0..self.lambda.p).all(|i| self.alpha[i].mul(&f.f[0]) == f.f[1].mul(&tgt.alpha[i]))
            && (0..self.lambda.q).all(|j| self.beta[j].mul(&f.f[1]) == f.f[0].mul(&tgt.beta[j]))
    }

    /// Rows spanning `M J` at each vertex.
    fn radical_rows(&self) -> [Vec<Vec<Q>>; 2] {
        let mut out: [Vec<Vec<Q>>; 2] = [Vec::new(), Vec::new()];
        for a in &self.alpha {
            out[0].extend((0..a.rows()).map(|r| a.row(r).to_vec()));
        }
        for b in &self.beta {
            out[1].extend((0..b.rows()).map(|r| b.row(r).to_vec()));
        }
        out
    }

    /// Dimensions of the top `M / M J` at each vertex.
    pub fn top_dims(&self) -> [usize; 2] {
        let rad = self.radical_rows();
        [0, 1].map(|w| {
            let rank = crate::linalg::sparse::rank(rad[w].iter().map(|r| SparseVec::from_dense(r)));
            self.dims[w] - rank
        })
    }

    /// Standard basis vectors completing `M J` to `M`, chosen greedily by index.
    fn top_generators(&self) -> [Vec<usize>; 2] {
        let rad = self.radical_rows();
        [0, 1].map(|w| {
            let mut e = crate::linalg::Echelon::new();
            for r in &rad[w] {
                e.insert(SparseVec::from_dense(r));
            }
            (0..self.dims[w])
                .filter(|&k| e.insert(SparseVec::unit(k)))
                .collect()
        })
    }

    /// Kernel of `f: self → tgt` with its inclusion.
    pub fn kernel(&self, f: &ModMap) -> (QuiverRep, ModMap) {
        let l = self.lambda;
        let basis: [Matrix; 2] = [0, 1].map(|w| f.f[w].transpose().nullspace().transpose());
        let dims = [basis[0].rows(), basis[1].rows()];
        let express = |src: &Matrix, w: usize| -> Matrix {
            // X with X · basis[w] = src
            if src.rows() == 0 || basis[w].rows() == 0 {
                return Matrix::zeros(src.rows(), basis[w].rows());
            }
            basis[w]
                .transpose()
                .solve(&src.transpose())
                .expect("shapes agree")
                .expect("kernel is a submodule")
                .transpose()
        };
        let alpha = self
            .alpha
            .iter()
            .map(|a| express(&basis[1].mul(a), 0))
            .collect();
        let beta = self
            .beta
            .iter()
            .map(|b| express(&basis[0].mul(b), 1))
            .collect();
        let k = QuiverRep {
            lambda: l,
            dims,
            alpha,
            beta,
        };
        let [b0, b1] = basis;
        (k, ModMap { f: [b0, b1] })
    }

    /// The minimal projective cover of a nonzero module.
    pub fn projective_cover(&self) -> Result<Cover, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroModule);
        }
        let gens = self.top_generators();
        let summands: Vec<Vertex> = Vertex::BOTH
            .iter()
            .flat_map(|&v| std::iter::repeat(v).take(gens[v.index()].len()))
            .collect();
        let sum = ProjSum::new(self.lambda, summands);
        let images: Vec<Vec<Q>> = Vertex::BOTH
            .iter()
            .flat_map(|&v| {
                gens[v.index()].iter().map(move |&k| {
                    let mut g = vec![Q::ZERO; self.dims[v.index()]];
                    g[k] = Q::ONE;
                    g
                })
            })
            .collect();
        let map = sum.map_from_generators(self, &images);
        let (kernel, inclusion) = sum.rep.kernel(&map);
        Ok(Cover {
            sum,
            map,
            kernel,
            inclusion,
        })
    }

    /// Minimal projective resolution; terminates since gldim ≤ 2.
    pub fn minimal_resolution(&self) -> Result<Resolution, AlgebraError> {
        let c0 = self.projective_cover()?;
        let mut terms = vec![c0.sum.clone()];
        let mut diffs: Vec<AlgMatrix> = Vec::new();
        let mut diff_maps: Vec<ModMap> = Vec::new();
        let aug = c0.map.clone();
        let (mut kernel, mut incl) = (c0.kernel, c0.inclusion);
        while !kernel.is_zero() {
            if terms.len() > 3 {
                return Err(AlgebraError::Shape(
                    "resolution longer than the global dimension".into(),
                ));
            }
            let c = kernel.projective_cover()?;
            let d = c.map.then(&incl);
            diffs.push(c.sum.modmap_to_alg(terms.last().unwrap(), &d));
            diff_maps.push(d);
            terms.push(c.sum);
            kernel = c.kernel;
            incl = c.inclusion;
        }
        Ok(Resolution {
            terms,
            diffs,
            diff_maps,
            aug,
        })
    }
}

fn paste(dst: &mut Matrix, r0: usize, c0: usize, src: &Matrix) {
    for i in 0..src.rows() {
        for j in 0..src.cols() {
            dst[(r0 + i, c0 + j)] = src[(i, j)].clone();
        }
    }
}

/// Coordinates of `D(Λ e_v)` per vertex and the position of each `b`.
fn injective_coords(l: &Lambda, v: Vertex) -> ([Vec<usize>; 2], HashMap<usize, (usize, usize)>) {
    let mut coords: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut pos = HashMap::new();
    for b in 0..l.dim() {
        if l.source(b) == v {
            let w = l.target(b).index();
            pos.insert(b, (w, coords[w].len()));
            coords[w].push(b);
        }
    }
    (coords, pos)
}

/// Right multiplication by `x ∈ e_t Λ e_s`, dualised: the map
/// `I_s → I_t`, `φ ↦ φ(− · x)`, which is the Nakayama image of `x`.
pub fn nakayama_map(l: &Lambda, x: &Elem, s: Vertex, t: Vertex) -> ModMap {
    let (src_coords, _) = injective_coords(l, s);
    let (_, tgt_pos) = injective_coords(l, t);
    let src = QuiverRep::injective(*l, s);
    let tgt = QuiverRep::injective(*l, t);
    let mut f = ModMap::zero(&src, &tgt);
    // b^* ↦ Σ_{y ∈ Λe_t, y·x ∋ b} coeff · y^*
    for (w, list) in src_coords.iter().enumerate() {
        for (k, &b) in list.iter().enumerate() {
            for (&y, &(yw, yk)) in &tgt_pos {
                let yx = l.mul(&SparseVec::unit(y), x);
                let c = yx.get(b);
                if !c.is_zero() {
                    debug_assert_eq!(yw, w);
                    f.f[w][(k, yk)] = c;
                }
            }
        }
    }
    f
}

/// A direct sum of indecomposable projectives `⊕ P_{v_s}` with its
/// coordinates: at vertex `w`, the pairs `(s, b)` with `b ∈ e_{v_s} Λ e_w`.
#[derive(Clone, Debug)]
pub struct ProjSum {
    pub lambda: Lambda,
    pub summands: Vec<Vertex>,
    pub coords: [Vec<(usize, usize)>; 2],
    index: HashMap<(usize, usize), (usize, usize)>,
    pub rep: QuiverRep,
}

impl ProjSum {
    pub fn new(lambda: Lambda, summands: Vec<Vertex>) -> ProjSum {
        let mut coords: [Vec<(usize, usize)>; 2] = [Vec::new(), Vec::new()];
        let mut index = HashMap::new();
        for (s, &v) in summands.iter().enumerate() {
            for b in lambda.projective_basis(v) {
                let w = lambda.source(b).index();
                index.insert((s, b), (w, coords[w].len()));
                coords[w].push((s, b));
            }
        }
        let dims = [coords[0].len(), coords[1].len()];
        let mut alpha = vec![Matrix::zeros(dims[1], dims[0]); lambda.p];
        let mut beta = vec![Matrix::zeros(dims[0], dims[1]); lambda.q];
        for (w, list) in coords.iter().enumerate() {
            for (k, &(s, b)) in list.iter().enumerate() {
                for a in 0..lambda.dim() {
                    if lambda.degree(a) != 1 {
                        continue;
                    }
                    if let Some(c) = lambda.mul_basis(b, a) {
                        let (cw, ck) = index[&(s, c)];
                        match lambda.kind(a) {
                            Basis::Alpha(i) => {
                                debug_assert_eq!((w, cw), (1, 0));
                                alpha[i][(k, ck)] = Q::ONE;
                            }
                            Basis::Beta(j) => {
                                debug_assert_eq!((w, cw), (0, 1));
                                beta[j][(k, ck)] = Q::ONE;
                            }
                            _ => unreachable!(),
                        }
                    }
                }
            }
        }
        let rep = QuiverRep {
            lambda,
            dims,
            alpha,
            beta,
        };
        ProjSum {
            lambda,
            summands,
            coords,
            index,
            rep,
        }
    }

    /// `(a, b)`: multiplicities of `P_1` and `P_2`.
    pub fn multiplicities(&self) -> (usize, usize) {
        let a = self.summands.iter().filter(|&&v| v == Vertex::One).count();
        (a, self.summands.len() - a)
    }

    pub fn coord(&self, s: usize, b: usize) -> (usize, usize) {
        self.index[&(s, b)]
    }

    /// The map sending the generator of summand `s` to `images[s]`, a vector
    /// at vertex `v_s` of `tgt`.
    pub fn map_from_generators(&self, tgt: &QuiverRep, images: &[Vec<Q>]) -> ModMap {
        let mut f = ModMap::zero(&self.rep, tgt);
        for (w, list) in self.coords.iter().enumerate() {
            for (k, &(s, b)) in list.iter().enumerate() {
                let (img, at) = tgt
                    .act_basis(b, &images[s], self.summands[s])
                    .expect("basis element starts at the summand vertex");
                debug_assert_eq!(at.index(), w);
                for (c, x) in img.into_iter().enumerate() {
                    f.f[w][(k, c)] = x;
                }
            }
        }
        f
    }

    /// Module map of an algebra matrix `self → tgt` (entry `(t, s)` in
    /// `e_{v_t} Λ e_{v_s}`).
    pub fn alg_to_modmap(&self, tgt: &ProjSum, m: &AlgMatrix) -> ModMap {
        let images: Vec<Vec<Q>> = (0..self.summands.len())
            .map(|s| {
                let v = self.summands[s].index();
                let mut g = vec![Q::ZERO; tgt.rep.dims[v]];
                for t in 0..tgt.summands.len() {
                    if let Some(x) = m.get(t, s) {
                        for (b, c) in x.entries() {
                            let (w, k) = tgt.coord(t, *b);
                            debug_assert_eq!(w, v);
                            g[k] += c;
                        }
                    }
                }
                g
            })
            .collect();
        self.map_from_generators(&tgt.rep, &images)
    }

    /// Algebra matrix of a module map between projective sums.
    pub fn modmap_to_alg(&self, tgt: &ProjSum, f: &ModMap) -> AlgMatrix {
        let mut m = AlgMatrix::zeros(tgt.summands.len(), self.summands.len());
        for (s, &v) in self.summands.iter().enumerate() {
            let (w, k) = self.coord(s, self.lambda.e(v));
            let row = f.f[w].row(k);
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    let (t, b) = tgt.coords[w][c];
                    m.add_to(t, s, &SparseVec::from_pairs(vec![(b, x.clone())]));
                }
            }
        }
        m
    }

    /// A map `θ: self → src` with `θ · phi = psi`, where `psi: self → N`
    /// and `phi: src → N` has image containing that of `psi`.
    pub fn lift(
        &self,
        psi: &ModMap,
        src: &ProjSum,
        phi: &ModMap,
    ) -> Result<AlgMatrix, AlgebraError> {
        let mut m = AlgMatrix::zeros(src.summands.len(), self.summands.len());
        for (s, &v) in self.summands.iter().enumerate() {
            let w = v.index();
            let (_, k) = self.coord(s, self.lambda.e(v));
            let y = Matrix::from_vec(psi.f[w].cols(), 1, psi.f[w].row(k).to_vec());
            if y.is_zero() {
                continue;
            }
            let x = phi.f[w]
                .transpose()
                .solve(&y)
                .expect("shapes agree")
                .ok_or(AlgebraError::NoLift)?;
            for c in 0..x.rows() {
                let coeff = &x[(c, 0)];
                if !coeff.is_zero() {
                    let (t, b) = src.coords[w][c];
                    m.add_to(t, s, &SparseVec::from_pairs(vec![(b, coeff.clone())]));
                }
            }
        }
        Ok(m)
    }
}

/// Projective cover `sum ↠ M` with kernel.
#[derive(Clone, Debug)]
pub struct Cover {
    pub sum: ProjSum,
    pub map: ModMap,
    pub kernel: QuiverRep,
    pub inclusion: ModMap,
}

/// `... → P_2 → P_1 → P_0 → M`, with `diffs[k-1]: P_k → P_{k-1}`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub terms: Vec<ProjSum>,
    pub diffs: Vec<AlgMatrix>,
    pub diff_maps: Vec<ModMap>,
    pub aug: ModMap,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Components `f_k: P_k → P'_k` of a chain map lifting `g: M → M'`.
    pub fn lift_map(&self, tgt: &Resolution, g: &ModMap) -> Result<Vec<AlgMatrix>, AlgebraError> {
        let l = self.terms[0].lambda;
        let empty = ProjSum::new(l, vec![]);
        let mut out = Vec::new();
        // `prev` is f_{k-1} as a module map
        let mut prev: Option<ModMap> = None;
        for (k, term) in self.terms.iter().enumerate() {
            let psi = match &prev {
                None => self.aug.then(g),
                Some(f) => self.diff_maps[k - 1].then(f),
            };
            let tgt_term = tgt.terms.get(k).unwrap_or(&empty);
            let m = if k < tgt.terms.len() {
                let phi = if k == 0 {
                    &tgt.aug
                } else {
                    &tgt.diff_maps[k - 1]
                };
                term.lift(&psi, tgt_term, phi)?
            } else if psi.is_zero() {
                AlgMatrix::zeros(0, term.summands.len())
            } else {
                return Err(AlgebraError::NoLift);
            };
            prev = Some(term.alg_to_modmap(tgt_term, &m));
            out.push(m);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(p: usize, q: usize) -> Lambda {
        Lambda::new(p, q).unwrap()
    }

    #[test]
    fn projective_and_injective_dims() {
        for (p, q) in [(1, 1), (2, 1), (3, 2), (0, 2), (2, 0)] {
            let l = lam(p, q);
            assert_eq!(QuiverRep::projective(l, Vertex::One).dims, [1, q]);
            assert_eq!(QuiverRep::projective(l, Vertex::Two).dims, [p, 1 + p * q]);
            assert_eq!(QuiverRep::injective(l, Vertex::One).dims, [1, p]);
            assert_eq!(QuiverRep::injective(l, Vertex::Two).dims, [q, 1 + p * q]);
            for v in Vertex::BOTH {
                let r = QuiverRep::injective(l, v);
                assert!(QuiverRep::new(l, r.dims, r.alpha.clone(), r.beta.clone()).is_ok());
                let r = QuiverRep::projective(l, v);
                assert!(QuiverRep::new(l, r.dims, r.alpha.clone(), r.beta.clone()).is_ok());
            }
        }
    }

    #[test]
    fn cover_of_projective() {
        let l = lam(2, 1);
        let c = QuiverRep::projective(l, Vertex::One)
            .projective_cover()
            .unwrap();
        assert_eq!(c.sum.multiplicities(), (1, 0));
        assert!(c.kernel.is_zero());
    }

    #[test]
    fn cover_of_simple_two() {
        for (p, q) in [(1, 1), (2, 3), (3, 1)] {
            let c = QuiverRep::simple(lam(p, q), Vertex::Two)
                .projective_cover()
                .unwrap();
            assert_eq!(c.sum.multiplicities(), (0, 1));
            assert_eq!(c.kernel.dims, [p, p * q]);
        }
    }

    #[test]
    fn zero_module_has_no_cover() {
        assert!(matches!(
            QuiverRep::zero(lam(1, 1)).projective_cover(),
            Err(AlgebraError::ZeroModule)
        ));
    }

    #[test]
    fn resolutions_are_short_and_exact() {
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 0), (0, 3)] {
            let l = lam(p, q);
            for v in Vertex::BOTH {
                for m in [QuiverRep::injective(l, v), QuiverRep::simple(l, v)] {
                    let r = m.minimal_resolution().unwrap();
                    assert!(r.len() <= 3);
                    // d ∘ d = 0 and augmentation kills the image
                    for k in 1..r.len() {
                        let d = &r.diff_maps[k - 1];
                        let next = if k == 1 {
                            r.aug.clone()
                        } else {
                            r.diff_maps[k - 2].clone()
                        };
                        assert!(d.then(&next).is_zero());
                        assert_eq!(r.terms[k].modmap_to_alg(&r.terms[k - 1], d), r.diffs[k - 1]);
                    }
                    // Euler characteristic of dimension vectors
                    let mut dv = [0i64; 2];
                    for (k, t) in r.terms.iter().enumerate() {
                        let s = if k % 2 == 0 { 1 } else { -1 };
                        dv[0] += s * t.rep.dims[0] as i64;
                        dv[1] += s * t.rep.dims[1] as i64;
                    }
                    assert_eq!(dv, [m.dims[0] as i64, m.dims[1] as i64]);
                }
            }
        }
    }

    #[test]
    fn injective_one_resolves_in_two_steps() {
        let r = QuiverRep::injective(lam(2, 1), Vertex::One)
            .minimal_resolution()
            .unwrap();
        assert!(r.len() <= 3);
    }

    #[test]
    fn alg_and_module_maps_agree() {
        let l = lam(2, 2);
        let src = ProjSum::new(l, vec![Vertex::One, Vertex::Two]);
        let tgt = ProjSum::new(l, vec![Vertex::Two, Vertex::Two, Vertex::One]);
        let mut m = AlgMatrix::zeros(3, 2);
        m.set(0, 0, SparseVec::unit(l.alpha(1)));
        m.set(
            1,
            1,
            SparseVec::from_pairs(vec![(1, Q::from_int(2)), (l.alpha_beta(0, 1), Q::ONE)]),
        );
        m.set(2, 1, SparseVec::unit(l.beta(0)));
        let f = src.alg_to_modmap(&tgt, &m);
        assert!(src.rep.is_hom(&tgt.rep, &f));
        assert_eq!(src.modmap_to_alg(&tgt, &f), m);
    }

    #[test]
    fn nakayama_maps_are_homs_and_functorial() {
        let l = lam(2, 1);
        let a = SparseVec::unit(l.alpha(0));
        let b = SparseVec::unit(l.beta(0));
        let na = nakayama_map(&l, &a, Vertex::One, Vertex::Two);
        let nb = nakayama_map(&l, &b, Vertex::Two, Vertex::One);
        let i1 = QuiverRep::injective(l, Vertex::One);
        let i2 = QuiverRep::injective(l, Vertex::Two);
        assert!(i1.is_hom(&i2, &na));
        assert!(i2.is_hom(&i1, &nb));
        // ν(β α) = 0 and ν(α β) = ν(β) then ν(α)
        assert!(na.then(&nb).is_zero());
        let nab = nakayama_map(
            &l,
            &SparseVec::unit(l.alpha_beta(0, 0)),
            Vertex::Two,
            Vertex::Two,
        );
        assert_eq!(nb.then(&na), nab);
    }
}
