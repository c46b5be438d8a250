use std::collections::{BTreeMap, HashMap};

use super::EquivError;
use crate::algebra::{AlgMatrix, Elem, Lambda, Vertex};
use crate::complexes::{
    minimize, Builder, ChainMap, ComplexError, HomComplex, HomotopySolver, ProjComplex,
};
use crate::linalg::Q;

/// A triangle functor `K^b(proj Λ) → K^b(proj Γ)` given on the additive
/// generators: complexes `F(P_1), F(P_2)` over `Γ` and a chain map `F(b)` for
/// every basis element `b` of `Λ`, with `F(x · y) ≃ F(x) ∘ F(y)`.
#[derive(Clone, Debug)]
pub struct Functor {
    source: Lambda,
    target: Lambda,
    images: [ProjComplex; 2],
    maps: Vec<ChainMap>,
}

/// `Col^n = ⊕ F(P_{v_c})` over the summands of `X^n`, and where each local
/// summand of each part sits in the sum.
struct Column {
    cx: ProjComplex,
    verts: Vec<Vertex>,
    pos: BTreeMap<i32, Vec<Vec<usize>>>,
    /// Inverse of `pos`: `(part, local index)` of each global index.
    owner: BTreeMap<i32, Vec<(usize, usize)>>,
}

impl Column {
    fn rank(&self, s: i32) -> usize {
        self.cx.rank(s)
    }
}

impl Functor {
    /// Checks that every `F(b)` is a chain map `F(P_{s(b)}) → F(P_{t(b)})`
    /// of degree zero and that idempotents go to identities.
    pub fn new(
        source: Lambda,
        target: Lambda,
        images: [ProjComplex; 2],
        maps: Vec<ChainMap>,
    ) -> Result<Functor, EquivError> {
        if images.iter().any(|x| x.lambda() != target) {
            return Err(ComplexError::AlgebraMismatch.into());
        }
        if maps.len() != source.dim() {
            return Err(EquivError::Data(format!(
                "{} maps for {} basis elements",
                maps.len(),
                source.dim()
            )));
        }
        for (b, f) in maps.iter().enumerate() {
            let (x, y) = (
                &images[source.source(b).index()],
                &images[source.target(b).index()],
            );
            if f.shift != 0 || !f.is_chain_map(x, y) {
                return Err(EquivError::Data(format!(
                    "image of {} is not a chain map",
                    source.label(b)
                )));
            }
        }
        for v in Vertex::BOTH {
            let id = ChainMap::identity(&images[v.index()]);
            if maps[source.e(v)]
                .add(&id.scale(&-Q::ONE))
                .comps
                .values()
                .any(|m| !m.is_zero())
            {
                return Err(EquivError::Data(format!(
                    "idempotent e{} is not sent to the identity",
                    v.index() + 1
                )));
            }
        }
        Ok(Functor {
            source,
            target,
            images,
            maps,
        })
    }

    pub fn source(&self) -> Lambda {
        self.source
    }

    pub fn target(&self) -> Lambda {
        self.target
    }

    pub fn image(&self, v: Vertex) -> &ProjComplex {
        &self.images[v.index()]
    }

    pub fn basis_map(&self, b: usize) -> &ChainMap {
        &self.maps[b]
    }

    /// `F(x)` for `x ∈ e_t Λ e_s`.
    pub fn map_of(&self, x: &Elem) -> ChainMap {
        let mut out = ChainMap::zero(0);
        for (b, c) in x.entries() {
            out = out.add(&self.maps[*b].scale(c));
        }
        out
    }

    fn column(&self, verts: &[Vertex]) -> Column {
        if verts.is_empty() {
            return Column {
                cx: ProjComplex::zero(self.target),
                verts: Vec::new(),
                pos: BTreeMap::new(),
                owner: BTreeMap::new(),
            };
        }
        let parts: Vec<&ProjComplex> = verts.iter().map(|v| &self.images[v.index()]).collect();
        let cx = ProjComplex::direct_sum(&parts);
        let mut pos = BTreeMap::new();
        let mut owner = BTreeMap::new();
        if !cx.is_zero() {
            for s in cx.degrees() {
                let (mut o1, mut o2) = (0, cx.term(s).0);
                let mut at = Vec::with_capacity(parts.len());
                for x in &parts {
                    let (a, b) = x.term(s);
                    let mut idx: Vec<usize> = (o1..o1 + a).collect();
                    idx.extend(o2..o2 + b);
                    o1 += a;
                    o2 += b;
                    at.push(idx);
                }
                let mut own = vec![(0, 0); cx.rank(s)];
                for (r, idx) in at.iter().enumerate() {
                    for (k, &g) in idx.iter().enumerate() {
                        own[g] = (r, k);
                    }
                }
                pos.insert(s, at);
                owner.insert(s, own);
            }
        }
        Column {
            cx,
            verts: verts.to_vec(),
            pos,
            owner,
        }
    }

    /// The matrix of chain maps `F(d)` between two columns.
    fn column_map(&self, d: &AlgMatrix, from: &Column, to: &Column) -> ChainMap {
        let mut comps: BTreeMap<i32, AlgMatrix> = BTreeMap::new();
        for (t, c, x) in d.entries() {
            for (b, coeff) in x.entries() {
                for (s, m) in &self.maps[*b].comps {
                    let (Some(rows), Some(cols)) = (to.pos.get(s), from.pos.get(s)) else {
                        continue;
                    };
                    let big = comps
                        .entry(*s)
                        .or_insert_with(|| AlgMatrix::zeros(to.rank(*s), from.rank(*s)));
                    for (i, j, e) in m.entries() {
                        big.add_to(rows[t][i], cols[c][j], &e.scale(coeff));
                    }
                }
            }
        }
        comps.retain(|_, m| !m.is_zero());
        ChainMap { shift: 0, comps }
    }

    /// `D h = g` between two columns, one pair of summands at a time, since
    /// `D` respects the direct sum decompositions.
    fn solve_blockwise(
        &self,
        g: &ChainMap,
        from: &Column,
        to: &Column,
        solvers: &mut HashMap<(usize, usize, i32), HomotopySolver>,
    ) -> Option<ChainMap> {
        let mut blocks: BTreeMap<(usize, usize), ChainMap> = BTreeMap::new();
        for (s, m) in &g.comps {
            let (Some(src), Some(tgt)) = (from.owner.get(s), to.owner.get(&(s + g.shift))) else {
                continue;
            };
            for (i, j, e) in m.entries() {
                let ((t, li), (c, lj)) = (tgt[i], src[j]);
                let shape = (
                    self.images[to.verts[t].index()].rank(s + g.shift),
                    self.images[from.verts[c].index()].rank(*s),
                );
                let blk = blocks
                    .entry((t, c))
                    .or_insert_with(|| ChainMap::zero(g.shift));
                blk.comps
                    .entry(*s)
                    .or_insert_with(|| AlgMatrix::zeros(shape.0, shape.1))
                    .add_to(li, lj, e);
            }
        }
        let sh = g.shift - 1;
        let mut comps: BTreeMap<i32, AlgMatrix> = BTreeMap::new();
        for ((t, c), blk) in blocks {
            let (vc, vt) = (from.verts[c].index(), to.verts[t].index());
            let solver = solvers.entry((vc, vt, g.shift)).or_insert_with(|| {
                HomComplex::new(&self.images[vc], &self.images[vt]).homotopy_solver(g.shift)
            });
            let h = solver.solve(&blk)?;
            for (s, m) in &h.comps {
                let (cols, rows) = (&from.pos[s], &to.pos[&(s + sh)]);
                let big = comps
                    .entry(*s)
                    .or_insert_with(|| AlgMatrix::zeros(to.rank(s + sh), from.rank(*s)));
                for (i, j, e) in m.entries() {
                    big.add_to(rows[t][i], cols[c][j], e);
                }
            }
        }
        Some(ChainMap { shift: sh, comps })
    }

    /// `F(X)` before minimisation: the totalisation of the columns `F(X^n)`
    /// with `δ_0 = (−1)^n d`, `δ_1 = F(d_X)` and higher components solving
    /// `D δ_k = −(−1)^{n+k} Σ_{i+j=k} δ_i δ_j`.
    pub fn apply_unminimized(&self, x: &ProjComplex) -> Result<ProjComplex, EquivError> {
        if x.lambda() != self.source {
            return Err(ComplexError::AlgebraMismatch.into());
        }
        if x.is_zero() {
            return Ok(ProjComplex::zero(self.target));
        }
        let gl = self.target;
        let (lo, hi) = (x.lo(), x.hi());
        let cols: BTreeMap<i32, Column> = x
            .degrees()
            .map(|n| (n, self.column(&x.vertices(n))))
            .collect();
        let mut delta: HashMap<(i32, i32), ChainMap> = HashMap::new();
        let mut solvers = HashMap::new();
        for n in lo..hi {
            delta.insert(
                (n, 1),
                self.column_map(&x.diff(n), &cols[&n], &cols[&(n + 1)]),
            );
        }
        for k in 2..=(hi - lo) {
            for n in lo..=hi - k {
                let mut g = ChainMap::zero(2 - k);
                for j in 1..k {
                    let f = delta[&(n + j, k - j)].compose(&gl, &delta[&(n, j)]);
                    g = g.add(&f);
                }
                g.comps.retain(|_, m| !m.is_zero());
                let h = if g.comps.is_empty() {
                    ChainMap::zero(1 - k)
                } else {
                    let sign = if (n + k) % 2 == 0 { -Q::ONE } else { Q::ONE };
                    self.solve_blockwise(&g.scale(&sign), &cols[&n], &cols[&(n + k)], &mut solvers)
                        .ok_or(EquivError::NoHomotopy {
                            degree: n,
                            length: k,
                        })?
                };
                delta.insert((n, k), h);
            }
        }

        let occupied = |n: i32, s: i32| cols[&n].rank(s) > 0;
        let t_lo = cols
            .iter()
            .filter(|(_, c)| !c.cx.is_zero())
            .map(|(n, c)| n + c.cx.lo())
            .min();
        let t_hi = cols
            .iter()
            .filter(|(_, c)| !c.cx.is_zero())
            .map(|(n, c)| n + c.cx.hi())
            .max();
        let (Some(t_lo), Some(t_hi)) = (t_lo, t_hi) else {
            return Ok(ProjComplex::zero(gl));
        };
        // (n, offset) of the blocks of Tot^N
        let layout = |big: i32| {
            let mut blocks = Vec::new();
            let mut off = 0;
            for n in lo..=hi {
                if occupied(n, big - n) {
                    blocks.push((n, off));
                    off += cols[&n].rank(big - n);
                }
            }
            (blocks, off)
        };
        let mut b = Builder::new(gl, t_lo);
        for big in t_lo..=t_hi {
            let verts = layout(big)
                .0
                .iter()
                .flat_map(|&(n, _)| cols[&n].cx.vertices(big - n))
                .collect();
            b.push_term(verts);
        }
        for big in t_lo..t_hi {
            let (src, ns) = layout(big);
            let (tgt, nt) = layout(big + 1);
            let mut d = AlgMatrix::zeros(nt, ns);
            for &(n, c0) in &src {
                let s = big - n;
                for &(m, r0) in &tgt {
                    let block = if m == n {
                        let dd = cols[&n].cx.diff(s);
                        if n % 2 == 0 {
                            dd
                        } else {
                            dd.neg()
                        }
                    } else if m > n {
                        match delta[&(n, m - n)].comps.get(&s) {
                            Some(blk) => blk.clone(),
                            None => continue,
                        }
                    } else {
                        continue;
                    };
                    d.add_block(r0, c0, &block);
                }
            }
            b.push_diff(d);
        }
        let tot = b.build();
        let terms = tot.degrees().map(|n| tot.term(n)).collect();
        let diffs = tot.diffs().to_vec();
        Ok(ProjComplex::new(gl, tot.lo(), terms, diffs)?)
    }

    /// `F(X)`, minimised.
    pub fn apply(&self, x: &ProjComplex) -> Result<ProjComplex, EquivError> {
        Ok(minimize(&self.apply_unminimized(x)?))
    }
}
