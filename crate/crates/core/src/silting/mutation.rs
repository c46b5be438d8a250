//! Silting mutation and the breadth-first mutation walk.
//!
//! `mutate(X, k, +)` replaces `X_k` by the cone of a minimal left
//! `add X_{1−k}`-approximation `X_k → X_{1−k}^n`; `mutate(X, k, −)` replaces it
//! by the cocone of a minimal right approximation `X_{1−k}^n → X_k`.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::predicates::SiltingNode;
use super::SiltingError;
use crate::algebra::{AlgMatrix, Lambda, Vertex};
use crate::complexes::twoterm::{ScalarSystem, UpShape};
use crate::complexes::{
    column_map, cone_unchecked, end_algebra_of, minimize, row_map, ChainMap, GVector, HomComplex,
    ProjComplex,
};
use crate::linalg::{sparse, Echelon, Matrix, SparseVec, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }
}

/// Replaces summand `k` of a silting node.
pub fn mutate(node: &SiltingNode, k: usize, dir: Direction) -> Result<SiltingNode, SiltingError> {
    if !node.flags.silting {
        return Err(SiltingError::NotSilting);
    }
    let (x, y) = (&node.summands[k], &node.summands[1 - k]);
    let a = Approximation::new(x, y, dir);
    if !a.two_term() {
        return Err(SiltingError::NotTwoTerm {
            summand: k,
            other: 1 - k,
        });
    }
    let z = a.complex();
    if z.is_zero() || z.lo() < -1 || z.hi() > 0 {
        return Err(SiltingError::NotTwoTerm {
            summand: k,
            other: 1 - k,
        });
    }
    let mut parts = node.summands.clone();
    parts[k] = z;
    SiltingNode::new(&parts[0], &parts[1])
}

/// `μ^±_Y(X)`, minimised; not necessarily two-term.
pub fn mutated_summand(x: &ProjComplex, y: &ProjComplex, dir: Direction) -> ProjComplex {
    Approximation::new(x, y, dir).complex()
}

/// A minimal `add Y`-approximation of `X`, possibly computed on the
/// transposed side where `Hom(−, Λ)` exchanges left and right.
struct Approximation {
    x: ProjComplex,
    y: ProjComplex,
    dir: Direction,
    maps: Vec<ChainMap>,
    transposed: bool,
}

impl Approximation {
    fn new(x: &ProjComplex, y: &ProjComplex, dir: Direction) -> Approximation {
        let make = |x: &ProjComplex, y: &ProjComplex, dir, maps, transposed| Approximation {
            x: x.clone(),
            y: y.clone(),
            dir,
            maps,
            transposed,
        };
        if let Some(maps) = pure_shape(x, y, dir) {
            return make(x, y, dir, maps, false);
        }
        let (tx, ty) = (x.transpose().shift(1), y.transpose().shift(1));
        if let Some(maps) = pure_shape(&tx, &ty, dir.flip()) {
            return make(&tx, &ty, dir.flip(), maps, true);
        }
        make(x, y, dir, generic(x, y, dir), false)
    }

    /// For `X`, `Y` in degrees −1, 0: whether the (co)cone is homotopic to a
    /// complex in degrees −1, 0, i.e. its outer differential splits. That
    /// happens exactly when the top part of the approximation has full rank.
    fn two_term(&self) -> bool {
        let (x, y) = (&self.x, &self.y);
        if x.lo() < -1 || x.hi() > 0 || y.lo() < -1 || y.hi() > 0 {
            return true;
        }
        match self.dir {
            // cone(X → Y^n): the degree −1 part of X must split off
            Direction::Plus => {
                let a = x.rank(-1);
                if a == 0 {
                    return true;
                }
                let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); a];
                let mut off = 0;
                for f in &self.maps {
                    let m = f.comp(-1, y.rank(-1), a);
                    push_scalar_entries(&m, off, &mut cols, false);
                    off += m.rows();
                }
                push_scalar_entries(&x.diff(-1), off, &mut cols, false);
                sparse::rank(cols.into_iter().map(SparseVec::from_pairs)) == a
            }
            // cocone(Y^n → X): the degree 0 part of X must be covered
            Direction::Minus => {
                let b = x.rank(0);
                if b == 0 {
                    return true;
                }
                let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); b];
                let mut off = 0;
                for g in &self.maps {
                    let m = g.comp(0, b, y.rank(0));
                    push_scalar_entries(&m, off, &mut rows, true);
                    off += m.cols();
                }
                push_scalar_entries(&x.diff(-1), off, &mut rows, true);
                sparse::rank(rows.into_iter().map(SparseVec::from_pairs)) == b
            }
        }
    }

    fn complex(&self) -> ProjComplex {
        let (x, y) = (&self.x, &self.y);
        let z = match self.dir {
            Direction::Plus => {
                let (yn, f) = column_map(x, y, &self.maps);
                minimize(&cone_unchecked(x, &yn, &f))
            }
            Direction::Minus => {
                let (yn, g) = row_map(y, x, &self.maps);
                minimize(&cone_unchecked(&yn, x, &g).shift(-1))
            }
        };
        if self.transposed {
            minimize(&z.shift(-1).transpose())
        } else {
            z
        }
    }
}

/// Scalar parts of the entries of `m`, gathered by column (or by row when
/// `by_row`), with the other index offset by `off`.
fn push_scalar_entries(m: &AlgMatrix, off: usize, out: &mut [Vec<(usize, Q)>], by_row: bool) {
    for (i, j, e) in m.entries() {
        let c = e.get(0) + e.get(1);
        if !c.is_zero() {
            if by_row {
                out[i].push((off + j, c));
            } else {
                out[j].push((off + i, c));
            }
        }
    }
}

fn degree_zero_shape(x: &ProjComplex) -> Option<UpShape> {
    UpShape::of(x).filter(|u| u.k == 0)
}

fn chain_map(f: &Matrix, g: &Matrix) -> ChainMap {
    let mut m = ChainMap::zero(0);
    m.comps.insert(-1, scalar(f, Vertex::One));
    m.comps.insert(0, scalar(g, Vertex::Two));
    m
}

fn scalar(m: &Matrix, v: Vertex) -> AlgMatrix {
    let mut out = AlgMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = &m[(i, j)];
            if !c.is_zero() {
                out.set(i, j, SparseVec::from_pairs(vec![(v.index(), c.clone())]));
            }
        }
    }
    out
}

/// Flattens `(F, G)` into the variable order of a scalar system.
fn pack(f: &Matrix, g: &Matrix) -> SparseVec {
    let mut pairs = Vec::new();
    for (i, c) in f.entries().iter().enumerate() {
        if !c.is_zero() {
            pairs.push((i, c.clone()));
        }
    }
    let off = f.rows() * f.cols();
    for (i, c) in g.entries().iter().enumerate() {
        if !c.is_zero() {
            pairs.push((off + i, c.clone()));
        }
    }
    SparseVec::from_pairs(pairs)
}

fn trace(m: &Matrix) -> Q {
    (0..m.rows()).fold(Q::ZERO, |acc, i| acc + &m[(i, i)])
}

/// Radical of the scalar endomorphism algebra of an indecomposable `Y`:
/// the trace-zero solutions, since the algebra is local.
fn scalar_radical(uy: &UpShape) -> Vec<(Matrix, Matrix)> {
    let sys = ScalarSystem::new(uy, uy);
    if sys.num_vars() - sys.rank() <= 1 {
        return Vec::new();
    }
    let basis: Vec<(Matrix, Matrix)> = sys.kernel().iter().map(|v| sys.unpack(v)).collect();
    let t: Vec<Q> = basis.iter().map(|(f, g)| trace(f) + trace(g)).collect();
    let i0 = t
        .iter()
        .position(|x| !x.is_zero())
        .expect("the identity has nonzero trace");
    (0..basis.len())
        .filter(|&i| i != i0)
        .map(|i| {
            let s = &t[i] / &t[i0];
            (
                basis[i].0.sub(&basis[i0].0.scale(&s)),
                basis[i].1.sub(&basis[i0].1.scale(&s)),
            )
        })
        .collect()
}

/// Both complexes of shape `P_1^a → P_2^b` in degrees −1, 0. A map is a
/// scalar pair `(F, G)` plus a nilpotent part `T` with entries in
/// `span{α_iβ_j}` on the `P_2` terms, taken modulo homotopy.
///
/// For `μ^+` (maps `X → Y`) the radical products are `rad(S_Y)·E` on the
/// scalar part and, on the nilpotent part, `G'T`, `T'G` and the homotopies
/// `(Σ V_i α_i)·h`. Writing `T = Σ T_{ij} α_iβ_j`, all three are of the form
/// `(subspace of k^d ⊗ k^p) ⊗ k^b ⊗ k^q` or `k^d ⊗ k^p ⊗ (subspace of k^b) ⊗ k^q`,
/// so the quotient is spanned by single entries at complementary
/// coordinates. `μ^−` is the mirror image with rows and columns exchanged.
fn pure_shape(x: &ProjComplex, y: &ProjComplex, dir: Direction) -> Option<Vec<ChainMap>> {
    let (ux, uy) = (degree_zero_shape(x)?, degree_zero_shape(y)?);
    let l = x.lambda();
    let rad = scalar_radical(&uy);
    let (sys, sols);
    let mut ech = Echelon::new();
    match dir {
        Direction::Plus => {
            sys = ScalarSystem::new(&ux, &uy);
            sols = sys
                .kernel()
                .iter()
                .map(|v| sys.unpack(v))
                .collect::<Vec<(Matrix, Matrix)>>();
            for (rf, rg) in &rad {
                for (f, g) in &sols {
                    ech.insert(pack(&rf.mul(f), &rg.mul(g)));
                }
            }
        }
        Direction::Minus => {
            sys = ScalarSystem::new(&uy, &ux);
            sols = sys
                .kernel()
                .iter()
                .map(|v| sys.unpack(v))
                .collect::<Vec<(Matrix, Matrix)>>();
            for (rf, rg) in &rad {
                for (f, g) in &sols {
                    ech.insert(pack(&f.mul(rf), &g.mul(rg)));
                }
            }
        }
    }
    let mut maps: Vec<ChainMap> = sols
        .iter()
        .filter(|(f, g)| ech.insert(pack(f, g)))
        .map(|(f, g)| chain_map(f, g))
        .collect();
    if l.p * l.q > 0 {
        let (d, b) = (uy.b, ux.b);
        let gs = sols.iter().map(|(_, g)| g);
        let rg = rad.iter().map(|(_, g)| g);
        // coordinates (r, i) of the free side, and the plain coordinate s
        let (free_side, plain_side) = match dir {
            // T: d × b; W = U ⊗ k^p + im(V-stack), U = Σ im G'; R = Σ rowspace G
            Direction::Plus => (
                complement(d, l.p, rg.map(|g| g.transpose()), &uy),
                complement_plain(b, gs.map(|g| g.clone())),
            ),
            // T: b × d; W = C ⊗ k^p + im(W-stack), C = Σ colspace G; U' = Σ rowspace G'
            Direction::Minus => (
                complement(b, l.p, gs.map(|g| g.transpose()), &ux),
                complement_plain(d, rg.map(|g| g.clone())),
            ),
        };
        for &(r, i) in &free_side {
            for &s in &plain_side {
                for j in 0..l.q {
                    let entry = SparseVec::unit(l.alpha_beta(i, j));
                    let (rows, cols) = match dir {
                        Direction::Plus => (d, b),
                        Direction::Minus => (b, d),
                    };
                    let mut t = AlgMatrix::zeros(rows, cols);
                    t.set(r, s, entry);
                    let mut m = ChainMap::zero(0);
                    m.comps.insert(0, t);
                    maps.push(m);
                }
            }
        }
    }
    Some(maps)
}

/// Complement coordinates `(r, i)` in `k^n ⊗ k^p` (index `i·n + r`) of
/// `span{e_i ⊗ u : u column of some m}` plus the column span of the stacked
/// α matrices of `shape` (which has `n` copies of `P_2`).
fn complement(
    n: usize,
    p: usize,
    ms: impl Iterator<Item = Matrix>,
    shape: &UpShape,
) -> Vec<(usize, usize)> {
    let mut ech = Echelon::new();
    for m in ms {
        // rows of the transposed matrix are the columns
        for r in 0..m.rows() {
            let u = SparseVec::from_dense(m.row(r));
            if u.is_zero() {
                continue;
            }
            for i in 0..p {
                ech.insert(u.map_cols(|c| i * n + c));
            }
        }
    }
    let mut cols = vec![Vec::new(); shape.a];
    for (i, wi) in shape.w.iter().enumerate() {
        for (r, c, x) in wi {
            cols[*c].push((i * n + r, x.clone()));
        }
    }
    for c in cols {
        ech.insert(SparseVec::from_pairs(c));
    }
    (0..n * p)
        .filter(|c| !ech.is_pivot(*c))
        .map(|c| (c % n, c / n))
        .collect()
}

/// Complement coordinates in `k^n` of the joint row span of the matrices.
fn complement_plain(n: usize, ms: impl Iterator<Item = Matrix>) -> Vec<usize> {
    let mut ech = Echelon::new();
    for m in ms {
        for i in 0..m.rows() {
            ech.insert(SparseVec::from_dense(m.row(i)));
        }
        if ech.rank() == n {
            break;
        }
    }
    (0..n).filter(|c| !ech.is_pivot(*c)).collect()
}

/// Quotient of `Hom_K` by the radical action computed from full Hom bases.
fn generic(x: &ProjComplex, y: &ProjComplex, dir: Direction) -> Vec<ChainMap> {
    let l = x.lambda();
    let end = end_algebra_of(y);
    let eb = HomComplex::new(y, y).basis(0);
    let rad: Vec<ChainMap> = end.radical().iter().map(|v| combination(&eb, v)).collect();
    match dir {
        Direction::Plus => {
            let hb = HomComplex::new(x, y).basis(0);
            quotient_basis(&hb, |h| rad.iter().map(|r| r.compose(&l, h)).collect())
        }
        Direction::Minus => {
            let hb = HomComplex::new(y, x).basis(0);
            quotient_basis(&hb, |h| rad.iter().map(|r| h.compose(&l, r)).collect())
        }
    }
}

fn combination(basis: &crate::complexes::HomBasis, v: &SparseVec) -> ChainMap {
    v.entries()
        .iter()
        .fold(ChainMap::zero(basis.space.shift()), |acc, (k, c)| {
            acc.add(&basis.rep(*k).scale(c))
        })
}

/// Representatives of basis elements of `Hom` not in the span of the
/// products returned by `products`.
fn quotient_basis(
    hb: &crate::complexes::HomBasis,
    products: impl Fn(&ChainMap) -> Vec<ChainMap>,
) -> Vec<ChainMap> {
    let n = hb.dim();
    let reps: Vec<ChainMap> = (0..n).map(|k| hb.rep(k)).collect();
    let mut ech = Echelon::new();
    for h in &reps {
        for p in products(h) {
            let c = hb
                .coords(&p)
                .expect("a composite of chain maps is a chain map");
            ech.insert(SparseVec::from_dense(&c));
        }
    }
    (0..n)
        .filter(|&k| ech.insert(SparseVec::unit(k)))
        .map(|k| reps[k].clone())
        .collect()
}

/// The two-term silting complexes `Λ` and `Λ[1]` as nodes.
pub fn root_nodes(l: Lambda) -> Result<[SiltingNode; 2], SiltingError> {
    let p1 = ProjComplex::projective(l, Vertex::One, 0);
    let p2 = ProjComplex::projective(l, Vertex::Two, 0);
    Ok([
        SiltingNode::new(&p1, &p2)?,
        SiltingNode::new(&p1.shift(1), &p2.shift(1))?,
    ])
}

#[derive(Clone, Debug)]
pub struct WalkNode {
    pub node: SiltingNode,
    pub depth: usize,
    /// `(replaced summand, direction)` → key of the resulting node; only
    /// mutations that stay two-term appear.
    pub edges: BTreeMap<(usize, Direction), [GVector; 2]>,
}

impl WalkNode {
    /// The summands `k` at which a mutation in direction `dir` stayed
    /// two-term.
    pub fn valid(&self, dir: Direction) -> Vec<usize> {
        self.edges
            .keys()
            .filter(|(_, d)| *d == dir)
            .map(|(k, _)| *k)
            .collect()
    }
}

/// Breadth-first closure of `{Λ, Λ[1]}` under mutation, `depth` steps deep,
/// deduplicated by unordered g-vector pairs. Nodes at the last level have
/// their edges computed too.
pub fn mutation_walk(l: Lambda, depth: usize) -> Result<Vec<WalkNode>, SiltingError> {
    let mut nodes: Vec<WalkNode> = Vec::new();
    let mut index: BTreeMap<[GVector; 2], usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for n in root_nodes(l)? {
        index.insert(n.key(), nodes.len());
        queue.push_back(nodes.len());
        nodes.push(WalkNode {
            node: n,
            depth: 0,
            edges: BTreeMap::new(),
        });
    }
    while let Some(i) = queue.pop_front() {
        let d = nodes[i].depth;
        for dir in [Direction::Plus, Direction::Minus] {
            for k in 0..2 {
                let m = match mutate(&nodes[i].node, k, dir) {
                    Ok(m) => m,
                    Err(SiltingError::NotTwoTerm { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let key = m.key();
                nodes[i].edges.insert((k, dir), key);
                if !index.contains_key(&key) && d < depth {
                    index.insert(key, nodes.len());
                    queue.push_back(nodes.len());
                    nodes.push(WalkNode {
                        node: m,
                        depth: d + 1,
                        edges: BTreeMap::new(),
                    });
                }
            }
        }
    }
    Ok(nodes)
}

/// Checks of the exchange structure on a finished walk.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Coherence {
    /// Edges whose target lies in the walk, so the reverse could be checked.
    pub reversible_edges: usize,
    /// `(node, replaced summand, direction)` with no reverse mutation.
    pub inverse_failures: Vec<([GVector; 2], usize, Direction)>,
    /// Non-trivial nodes where the valid mutations are not `μ^+` at one
    /// summand together with `μ^−` at the other.
    pub dichotomy_failures: Vec<[GVector; 2]>,
}

impl Coherence {
    pub fn holds(&self) -> bool {
        self.inverse_failures.is_empty() && self.dichotomy_failures.is_empty()
    }
}

/// `μ^∓` undoes `μ^±` on every edge of the walk, and at every node other
/// than `Λ`, `Λ[1]` exactly one summand admits a two-term `μ^+` while the
/// other admits a two-term `μ^−`.
pub fn coherence(walk: &[WalkNode]) -> Coherence {
    let index: BTreeMap<[GVector; 2], &WalkNode> = walk.iter().map(|w| (w.node.key(), w)).collect();
    let mut c = Coherence::default();
    for w in walk {
        let key = w.node.key();
        for (&(k, dir), target) in &w.edges {
            let Some(t) = index.get(target) else { continue };
            c.reversible_edges += 1;
            let fresh = t.node.g.iter().position(|g| !w.node.g.contains(g));
            let back = fresh.and_then(|j| t.edges.get(&(j, dir.flip())));
            if back != Some(&key) {
                c.inverse_failures.push((key, k, dir));
            }
        }
        if w.node.is_trivial() {
            continue;
        }
        let valid: Vec<(usize, Direction)> = w.edges.keys().copied().collect();
        let ok = (0..2)
            .filter(|&j| valid == sorted_pair((j, Direction::Plus), (1 - j, Direction::Minus)))
            .count()
            == 1;
        if !ok {
            c.dichotomy_failures.push(key);
        }
    }
    c
}

fn sorted_pair(a: (usize, Direction), b: (usize, Direction)) -> Vec<(usize, Direction)> {
    let mut v = vec![a, b];
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::silting::{build_tower, make_c, pair_key};

    #[test]
    fn lambda_mutates_to_c0_c1() {
        let l = Lambda::new(2, 1).unwrap();
        let [lam, shifted] = root_nodes(l).unwrap();
        let m = mutate(&lam, 0, Direction::Plus).unwrap();
        assert_eq!(m.key(), pair_key((0, 1), (-1, 2)));
        let t = build_tower(2, 2).unwrap();
        assert!(crate::complexes::iso_in_homotopy(
            &m.summands[0],
            &make_c(1, &t, l).unwrap(),
            0
        ));
        assert!(matches!(
            mutate(&lam, 0, Direction::Minus),
            Err(SiltingError::NotTwoTerm { .. })
        ));
        let back = mutate(&m, 0, Direction::Minus).unwrap();
        assert_eq!(back.key(), lam.key());
        let s = mutate(&shifted, 1, Direction::Minus).unwrap();
        assert_eq!(s.key(), pair_key((-1, 0), (-2, 1)));
    }

    #[test]
    fn c_chain() {
        let l = Lambda::new(3, 2).unwrap();
        let t = build_tower(3, 4).unwrap();
        let mut node =
            SiltingNode::new(&make_c(0, &t, l).unwrap(), &make_c(1, &t, l).unwrap()).unwrap();
        for m in 1..4 {
            // replace C_{m−1} (summand 0) by μ^+ and reorder
            let next = mutate(&node, 0, Direction::Plus).unwrap();
            let want = make_c(m + 1, &t, l).unwrap();
            assert!(crate::complexes::iso_in_homotopy(
                &next.summands[0],
                &want,
                0
            ));
            assert!(next.flags.tilting);
            node = SiltingNode::new(&next.summands[1], &next.summands[0]).unwrap();
        }
    }

    #[test]
    fn split_test_predicts_two_term() {
        for (p, q) in [(2, 2), (1, 2), (3, 1), (2, 0)] {
            let l = Lambda::new(p, q).unwrap();
            for w in mutation_walk(l, 2).unwrap() {
                for dir in [Direction::Plus, Direction::Minus] {
                    for k in 0..2 {
                        let (x, y) = (&w.node.summands[k], &w.node.summands[1 - k]);
                        let a = Approximation::new(x, y, dir);
                        let z = a.complex();
                        let fits = !z.is_zero() && z.lo() >= -1 && z.hi() <= 0;
                        assert_eq!(a.two_term(), fits, "{p},{q} {x} {y} {dir:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn walk_small() {
        let l = Lambda::new(1, 1).unwrap();
        let w = mutation_walk(l, 6).unwrap();
        assert_eq!(w.len(), 6);
        assert!(w.iter().all(|n| n.node.flags.silting));
        assert_eq!(
            mutation_walk(l, 0)
                .unwrap()
                .iter()
                .filter(|n| n.depth == 0)
                .count(),
            2
        );
    }

    #[test]
    fn exchange_coherence() {
        for (p, q) in [(1, 1), (2, 1), (2, 2), (1, 3)] {
            let w = mutation_walk(Lambda::new(p, q).unwrap(), 3).unwrap();
            let c = coherence(&w);
            assert!(c.holds(), "{p},{q}: {c:?}");
            assert!(c.reversible_edges > 0);
        }
    }
}
