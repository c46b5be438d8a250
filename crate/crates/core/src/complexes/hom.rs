//! Hom spaces in the homotopy category by direct linear algebra on the
//! total Hom complex.

use std::collections::BTreeMap;

use super::{ComplexError, ProjComplex};
use crate::algebra::{AlgMatrix, Lambda, Vertex};
use crate::linalg::{sparse, Echelon, SparseVec, Q};

/// Graded map `X → Y` of degree `shift`: components `X_n → Y_{n+shift}`.
/// A chain map `X → Y[r]` is a cycle of degree `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub shift: i32,
    pub comps: BTreeMap<i32, AlgMatrix>,
}

impl ChainMap {
    pub fn zero(shift: i32) -> ChainMap {
        ChainMap {
            shift,
            comps: BTreeMap::new(),
        }
    }

    /// The identity of `x`.
    pub fn identity(x: &ProjComplex) -> ChainMap {
        let comps = x
            .degrees()
            .map(|n| {
                (
                    n,
                    AlgMatrix::identity(x.rank(n), |k| x.vertex(n, k).index()),
                )
            })
            .collect();
        ChainMap { shift: 0, comps }
    }

    /// Component `X_n → Y_{n+shift}` (zero matrix of the given shape if absent).
    pub fn comp(&self, n: i32, rows: usize, cols: usize) -> AlgMatrix {
        match self.comps.get(&n) {
            Some(m) => m.clone(),
            None => AlgMatrix::zeros(rows, cols),
        }
    }

    /// `self ∘ other` where `other: X → Y` and `self: Y → Z`.
    pub fn compose(&self, l: &Lambda, other: &ChainMap) -> ChainMap {
        let mut comps = BTreeMap::new();
        for (&n, f) in &other.comps {
            if let Some(g) = self.comps.get(&(n + other.shift)) {
                if g.cols() == f.rows() {
                    let gf = g.mul(l, f);
                    if !gf.is_zero() {
                        comps.insert(n, gf);
                    }
                }
            }
        }
        ChainMap {
            shift: self.shift + other.shift,
            comps,
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.shift, other.shift);
        let mut comps = self.comps.clone();
        for (&n, f) in &other.comps {
            let e = comps
                .entry(n)
                .or_insert_with(|| AlgMatrix::zeros(f.rows(), f.cols()));
            *e = e.add(f);
        }
        comps.retain(|_, m| !m.is_zero());
        ChainMap {
            shift: self.shift,
            comps,
        }
    }

    pub fn scale(&self, s: &Q) -> ChainMap {
        let mut comps: BTreeMap<i32, AlgMatrix> =
            self.comps.iter().map(|(&n, m)| (n, m.scale(s))).collect();
        comps.retain(|_, m| !m.is_zero());
        ChainMap {
            shift: self.shift,
            comps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(AlgMatrix::is_zero)
    }

    /// `d_Y f = (−1)^shift f d_X` in every degree.
    pub fn is_chain_map(&self, x: &ProjComplex, y: &ProjComplex) -> bool {
        let hc = HomComplex::new(x, y);
        let space = hc.space(self.shift);
        match space.encode(self) {
            Ok(v) => hc.apply_d(&space, &v).is_zero(),
            Err(_) => false,
        }
    }
}

/// Dimensions of chain maps, null-homotopic maps, and their quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomDims {
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

/// Basis of `e_to Λ e_from` for each vertex pair, plus each basis element's
/// position in its list.
#[derive(Clone, Debug)]
struct HomBases {
    lists: [[Vec<usize>; 2]; 2],
    pos: Vec<usize>,
}

impl HomBases {
    fn new(l: &Lambda) -> HomBases {
        let lists = [0, 1]
            .map(|f| [0, 1].map(|t| l.hom_basis(Vertex::from_index(f), Vertex::from_index(t))));
        let mut pos = vec![0; l.dim()];
        for f in 0..2 {
            for t in 0..2 {
                for (k, &b) in lists[f][t].iter().enumerate() {
                    pos[b] = k;
                }
            }
        }
        HomBases { lists, pos }
    }

    fn len(&self, from: usize, to: usize) -> usize {
        self.lists[from][to].len()
    }
}

#[derive(Clone, Debug)]
struct Block {
    n: i32,
    offset: usize,
    src: (usize, usize),
    tgt: (usize, usize),
    /// Start of each target row within the block.
    row_start: Vec<usize>,
    len: usize,
}

/// Coordinates on the space of graded maps `X → Y` of a fixed degree. The
/// variables are ordered by source degree, target summand, source summand,
/// then algebra basis element.
#[derive(Clone, Debug)]
pub struct MapSpace {
    shift: i32,
    blocks: Vec<Block>,
    by_degree: BTreeMap<i32, usize>,
    dim: usize,
    hb: HomBases,
}

fn vidx(term: (usize, usize), k: usize) -> usize {
    if k < term.0 {
        0
    } else {
        1
    }
}

impl MapSpace {
    fn new(l: &Lambda, x: &ProjComplex, y: &ProjComplex, shift: i32) -> MapSpace {
        let hb = HomBases::new(l);
        let mut blocks = Vec::new();
        let mut by_degree = BTreeMap::new();
        let mut offset = 0;
        if !x.is_zero() {
            for n in x.degrees() {
                let src = x.term(n);
                let tgt = y.term(n + shift);
                if src.0 + src.1 == 0 || tgt.0 + tgt.1 == 0 {
                    continue;
                }
                let mut row_start = Vec::with_capacity(tgt.0 + tgt.1);
                let mut len = 0;
                for t in 0..tgt.0 + tgt.1 {
                    row_start.push(len);
                    let vt = vidx(tgt, t);
                    len += src.0 * hb.len(0, vt) + src.1 * hb.len(1, vt);
                }
                by_degree.insert(n, blocks.len());
                blocks.push(Block {
                    n,
                    offset,
                    src,
                    tgt,
                    row_start,
                    len,
                });
                offset += len;
            }
        }
        MapSpace {
            shift,
            blocks,
            by_degree,
            dim: offset,
            hb,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Index of basis element `b` at entry `(t, c)` of the component at
    /// source degree `n`.
    fn index(&self, n: i32, t: usize, c: usize, b: usize) -> Option<usize> {
        let blk = &self.blocks[*self.by_degree.get(&n)?];
        Some(self.index_in(blk, t, c, b))
    }

    fn index_in(&self, blk: &Block, t: usize, c: usize, b: usize) -> usize {
        let vt = vidx(blk.tgt, t);
        let col_off = if c < blk.src.0 {
            c * self.hb.len(0, vt)
        } else {
            blk.src.0 * self.hb.len(0, vt) + (c - blk.src.0) * self.hb.len(1, vt)
        };
        blk.offset + blk.row_start[t] + col_off + self.hb.pos[b]
    }

    /// `(n, t, c, basis element)` of a variable.
    fn decode(&self, idx: usize) -> (i32, usize, usize, usize) {
        let k = self.blocks.partition_point(|b| b.offset + b.len <= idx);
        let blk = &self.blocks[k];
        let local = idx - blk.offset;
        let t = blk.row_start.partition_point(|&s| s <= local) - 1;
        let vt = vidx(blk.tgt, t);
        let within = local - blk.row_start[t];
        let l1 = self.hb.len(0, vt);
        let (c, vc, pos) = if within < blk.src.0 * l1 {
            (within / l1, 0, within % l1)
        } else {
            let l2 = self.hb.len(1, vt);
            let w = within - blk.src.0 * l1;
            (blk.src.0 + w / l2, 1, w % l2)
        };
        (blk.n, t, c, self.hb.lists[vc][vt][pos])
    }

    pub fn encode(&self, f: &ChainMap) -> Result<SparseVec, ComplexError> {
        if f.shift != self.shift {
            return Err(ComplexError::Shape("map has the wrong degree".into()));
        }
        let mut pairs = Vec::new();
        for (&n, m) in &f.comps {
            if m.is_zero() {
                continue;
            }
            let Some(&k) = self.by_degree.get(&n) else {
                return Err(ComplexError::Shape(format!(
                    "component in degree {n} has no target"
                )));
            };
            let blk = &self.blocks[k];
            if m.rows() != blk.tgt.0 + blk.tgt.1 || m.cols() != blk.src.0 + blk.src.1 {
                return Err(ComplexError::Shape(format!(
                    "component in degree {n} has the wrong shape"
                )));
            }
            for (t, c, x) in m.entries() {
                let (vt, vc) = (vidx(blk.tgt, t), vidx(blk.src, c));
                for (b, coeff) in x.entries() {
                    if self.hb.lists[vc][vt].get(self.hb.pos[*b]) != Some(b) {
                        return Err(ComplexError::Misplaced(n));
                    }
                    pairs.push((self.index_in(blk, t, c, *b), coeff.clone()));
                }
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn decode_map(&self, v: &SparseVec) -> ChainMap {
        let mut comps: BTreeMap<i32, AlgMatrix> = BTreeMap::new();
        for (idx, coeff) in v.entries() {
            let (n, t, c, b) = self.decode(*idx);
            let blk = &self.blocks[self.by_degree[&n]];
            let m = comps
                .entry(n)
                .or_insert_with(|| AlgMatrix::zeros(blk.tgt.0 + blk.tgt.1, blk.src.0 + blk.src.1));
            m.add_to(t, c, &SparseVec::from_pairs(vec![(b, coeff.clone())]));
        }
        ChainMap {
            shift: self.shift,
            comps,
        }
    }
}

/// The total Hom complex `Hom(X, Y)` with differential
/// `D f = d_Y f − (−1)^{|f|} f d_X`, whose cycles of degree `r` are the chain
/// maps `X → Y[r]` and whose boundaries are the null-homotopic ones.
pub struct HomComplex<'a> {
    lambda: Lambda,
    x: &'a ProjComplex,
    y: &'a ProjComplex,
    /// Columns of `d_Y` per source degree: `col[c] = [(row, entry)]`.
    dy_cols: BTreeMap<i32, Vec<Vec<(usize, SparseVec)>>>,
}

impl<'a> HomComplex<'a> {
    pub fn new(x: &'a ProjComplex, y: &'a ProjComplex) -> HomComplex<'a> {
        let mut dy_cols = BTreeMap::new();
        if !y.is_zero() {
            for n in y.lo()..y.hi() {
                let t = y.diff(n).transpose();
                dy_cols.insert(n, (0..t.rows()).map(|c| t.row(c).to_vec()).collect());
            }
        }
        HomComplex {
            lambda: x.lambda(),
            x,
            y,
            dy_cols,
        }
    }

    pub fn try_new(x: &'a ProjComplex, y: &'a ProjComplex) -> Result<HomComplex<'a>, ComplexError> {
        if x.lambda() != y.lambda() {
            return Err(ComplexError::AlgebraMismatch);
        }
        Ok(HomComplex::new(x, y))
    }

    pub fn space(&self, shift: i32) -> MapSpace {
        MapSpace::new(&self.lambda, self.x, self.y, shift)
    }

    /// `D` applied to one variable of `from`, in coordinates of the space of
    /// degree `from.shift + 1`.
    fn d_var(&self, from: &MapSpace, to: &MapSpace, var: usize) -> SparseVec {
        let l = &self.lambda;
        let (n, t, c, b) = from.decode(var);
        let s = from.shift;
        let mut pairs = Vec::new();
        // d_Y ∘ f: component n, entry (u, c) gets d_Y[u][t] · b
        if let Some(cols) = self.dy_cols.get(&(n + s)) {
            for (u, e) in &cols[t] {
                for (eb, ec) in e.entries() {
                    if let Some(z) = l.mul_basis(*eb, b) {
                        pairs.push((
                            to.index(n, *u, c, z).expect("target block exists"),
                            ec.clone(),
                        ));
                    }
                }
            }
        }
        // −(−1)^s f ∘ d_X: component n−1, entry (t, w) gets b · d_X[c][w]
        if let Some(dx) = self.x.diff_ref(n - 1) {
            let sign = if s % 2 == 0 { -Q::ONE } else { Q::ONE };
            for (w, e) in dx.row(c) {
                for (eb, ec) in e.entries() {
                    if let Some(z) = l.mul_basis(b, *eb) {
                        pairs.push((
                            to.index(n - 1, t, *w, z).expect("target block exists"),
                            ec * &sign,
                        ));
                    }
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    fn apply_d(&self, from: &MapSpace, v: &SparseVec) -> SparseVec {
        let to = self.space(from.shift + 1);
        let mut out = SparseVec::new();
        for (var, c) in v.entries() {
            out = out.axpy(c, &self.d_var(from, &to, *var));
        }
        out
    }

    fn d_images(&self, shift: i32) -> (MapSpace, Vec<SparseVec>) {
        let from = self.space(shift);
        let to = self.space(shift + 1);
        let imgs = (0..from.dim()).map(|v| self.d_var(&from, &to, v)).collect();
        (from, imgs)
    }

    /// `(Z, B, Z − B)` for chain maps `X → Y[r]`.
    pub fn dims(&self, r: i32) -> HomDims {
        let (space, imgs) = self.d_images(r);
        let z = space.dim() - sparse::rank(imgs);
        let (_, bimgs) = self.d_images(r - 1);
        let b = sparse::rank(bimgs);
        HomDims { z, b, h: z - b }
    }

    /// Basis of cycles of degree `r`.
    pub fn cycles(&self, r: i32) -> (MapSpace, Vec<SparseVec>) {
        let (space, imgs) = self.d_images(r);
        let mut e = Echelon::new();
        let mut kernel = Vec::new();
        for (v, img) in imgs.into_iter().enumerate() {
            if img.is_zero() {
                kernel.push(SparseVec::unit(v));
                continue;
            }
            let (res, tag) = e.reduce_tagged(&img, &SparseVec::unit(v));
            if res.is_zero() {
                kernel.push(tag);
            } else {
                e.insert_tagged(img, SparseVec::unit(v));
            }
        }
        (space, kernel)
    }

    /// Boundaries (null-homotopic maps) of degree `r`, as an echelon basis
    /// in the coordinates of the degree-`r` space.
    pub fn boundaries(&self, r: i32) -> Echelon {
        let (_, imgs) = self.d_images(r - 1);
        let mut e = Echelon::new();
        for v in imgs {
            if !v.is_zero() {
                e.insert(v);
            }
        }
        e
    }

    /// Solves `D h = g` for maps `g` of degree `shift`.
    pub fn homotopy_solver(&self, shift: i32) -> HomotopySolver {
        let to = self.space(shift);
        let from = self.space(shift - 1);
        let mut ech = Echelon::new();
        for var in 0..from.dim() {
            let img = self.d_var(&from, &to, var);
            if !img.is_zero() {
                ech.insert_tagged(img, SparseVec::unit(var));
            }
        }
        HomotopySolver { from, to, ech }
    }

    /// A graded map `h` of degree `g.shift − 1` with `D h = g`, if one exists.
    pub fn null_homotopy(&self, g: &ChainMap) -> Option<ChainMap> {
        self.homotopy_solver(g.shift).solve(g)
    }

    /// Chain-map representatives of a basis of `Hom_K(X, Y[r])`.
    pub fn basis(&self, r: i32) -> HomBasis {
        let (space, cycles) = self.cycles(r);
        let mut ech = self.boundaries(r);
        let mut reps = Vec::new();
        for z in cycles {
            let tag = SparseVec::unit(reps.len());
            if ech.insert_tagged(z.clone(), tag) {
                reps.push(z);
            }
        }
        HomBasis { space, reps, ech }
    }
}

/// The image of `D` on maps of one degree, tagged by preimages.
#[derive(Clone, Debug)]
pub struct HomotopySolver {
    from: MapSpace,
    to: MapSpace,
    ech: Echelon,
}

impl HomotopySolver {
    pub fn solve(&self, g: &ChainMap) -> Option<ChainMap> {
        let v = self.to.encode(g).ok()?;
        if v.is_zero() {
            return Some(ChainMap::zero(self.from.shift));
        }
        let (res, tag) = self.ech.reduce_tagged(&v, &SparseVec::new());
        res.is_zero()
            .then(|| self.from.decode_map(&tag.scale(&-Q::ONE)))
    }
}

/// A basis of a Hom space in the homotopy category with coordinates.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub space: MapSpace,
    pub reps: Vec<SparseVec>,
    ech: Echelon,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, k: usize) -> ChainMap {
        self.space.decode_map(&self.reps[k])
    }

    /// Coordinates of the homotopy class of a chain map, or `None` when the
    /// map is not a cycle of this space (not caught by reduction alone).
    pub fn coords_of_vec(&self, v: &SparseVec) -> Option<Vec<Q>> {
        let (res, tag) = self.ech.reduce_tagged(v, &SparseVec::new());
        if !res.is_zero() {
            return None;
        }
        Some((0..self.reps.len()).map(|k| -tag.get(k)).collect())
    }

    pub fn coords(&self, f: &ChainMap) -> Option<Vec<Q>> {
        self.coords_of_vec(&self.space.encode(f).ok()?)
    }

    /// Whether a cycle is null-homotopic.
    pub fn is_null(&self, f: &ChainMap) -> bool {
        self.coords(f).is_some_and(|c| c.iter().all(Q::is_zero))
    }
}

/// `(Z, B, H)` for `Hom(X, Y[r])`.
pub fn hom_complex_dims(x: &ProjComplex, y: &ProjComplex, r: i32) -> Result<HomDims, ComplexError> {
    Ok(HomComplex::try_new(x, y)?.dims(r))
}

/// `dim Hom_K(X, Y[r])`, using the closed formulas for two-term complexes
/// of pure shape when they apply.
pub fn hom_dim(x: &ProjComplex, y: &ProjComplex, r: i32) -> Result<usize, ComplexError> {
    if x.lambda() != y.lambda() {
        return Err(ComplexError::AlgebraMismatch);
    }
    if let Some(h) = super::twoterm::hom_dim_fast(x, y, r) {
        return Ok(h);
    }
    Ok(HomComplex::new(x, y).dims(r).h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::ComplexError;

    fn lam(p: usize, q: usize) -> Lambda {
        Lambda::new(p, q).unwrap()
    }

    fn c1(l: Lambda) -> ProjComplex {
        let mut d = AlgMatrix::zeros(l.p, 1);
        for i in 0..l.p {
            d.set(i, 0, SparseVec::unit(l.alpha(i)));
        }
        ProjComplex::two_term(l, (1, 0), (0, l.p), d).unwrap()
    }

    #[test]
    fn p2_endomorphisms() {
        let l = lam(2, 1);
        let p2 = ProjComplex::projective(l, Vertex::Two, 0);
        assert_eq!(
            hom_complex_dims(&p2, &p2, 0).unwrap(),
            HomDims { z: 3, b: 0, h: 3 }
        );
    }

    #[test]
    fn c0_to_c1() {
        let l = lam(2, 1);
        let p2 = ProjComplex::projective(l, Vertex::Two, 0);
        assert_eq!(
            hom_complex_dims(&p2, &c1(l), 0).unwrap(),
            HomDims { z: 6, b: 1, h: 5 }
        );
        assert_eq!(hom_complex_dims(&c1(l), &c1(l), 0).unwrap().h, 7);
    }

    #[test]
    fn algebra_mismatch() {
        let x = ProjComplex::regular(lam(1, 1));
        let y = ProjComplex::regular(lam(2, 1));
        assert!(matches!(
            hom_complex_dims(&x, &y, 0),
            Err(ComplexError::AlgebraMismatch)
        ));
    }

    #[test]
    fn encode_decode_round_trip() {
        let l = lam(2, 2);
        let x = c1(l);
        let y = ProjComplex::direct_sum(&[&c1(l), &ProjComplex::regular(l)]);
        let hc = HomComplex::new(&x, &y);
        for r in -1..=1 {
            let space = hc.space(r);
            for v in 0..space.dim() {
                let f = space.decode_map(&SparseVec::unit(v));
                assert_eq!(space.encode(&f).unwrap(), SparseVec::unit(v));
            }
        }
    }

    #[test]
    fn identity_is_a_nonzero_class() {
        let l = lam(2, 1);
        let x = c1(l);
        let id = ChainMap::identity(&x);
        assert!(id.is_chain_map(&x, &x));
        let hb = HomComplex::new(&x, &x).basis(0);
        assert_eq!(hb.dim(), 7);
        assert!(!hb.is_null(&id));
        let c = hb.coords(&id).unwrap();
        assert!(c.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn basis_reps_are_chain_maps() {
        let l = lam(1, 2);
        let x = c1(l);
        let y = ProjComplex::regular(l);
        for (a, b) in [(&x, &y), (&y, &x), (&x, &x)] {
            let hc = HomComplex::new(a, b);
            for r in -1..=1 {
                let hb = hc.basis(r);
                assert_eq!(hb.dim(), hc.dims(r).h);
                for k in 0..hb.dim() {
                    assert!(hb.rep(k).is_chain_map(a, b));
                }
            }
        }
    }
}
