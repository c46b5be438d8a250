use std::collections::HashMap;

use serde::Serialize;

use super::EndoError;
use crate::algebra::FdAlgebra;
use crate::linalg::{Echelon, SparseVec, Q};

/// An element of `e_t (rad/rad²) e_s`, read as an arrow `s → t`.
#[derive(Clone, Debug, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
    #[serde(skip)]
    pub element: SparseVec,
}

/// Two vertices `0, 1`, arrows, and the relation space inside the span of
/// length-2 paths.
#[derive(Clone, Debug, Serialize)]
pub struct QuiverPresentation {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    /// `(a, b)` is the product `a · b` of two arrows, so `b` is traversed
    /// first.
    pub paths: Vec<(usize, usize)>,
    /// Sparse coefficient vectors over `paths`.
    pub relations: Vec<Vec<(usize, Q)>>,
    /// `dim rad^d / rad^{d+1}` of the source algebra.
    pub loewy: Vec<usize>,
    /// Degree pieces of the path algebra modulo the quadratic relations.
    pub presented: Vec<usize>,
    /// The quadratic relations present the source algebra.
    pub quadratic: bool,
}

impl QuiverPresentation {
    /// `counts[s][t]`: arrows `s → t`.
    pub fn arrow_counts(&self) -> [[usize; 2]; 2] {
        let mut c = [[0; 2]; 2];
        for a in &self.arrows {
            c[a.source][a.target] += 1;
        }
        c
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.len()
    }

    /// `dims[s][t]` of relations between paths `s → t`.
    pub fn relation_dims(&self) -> [[usize; 2]; 2] {
        let mut c = [[0; 2]; 2];
        for r in &self.relations {
            let (a, b) = self.paths[r[0].0];
            c[self.arrows[b].source][self.arrows[a].target] += 1;
        }
        c
    }
}

/// Arrows from an echelon complement of `rad²` in `rad`, corner by corner,
/// and relations from the kernel of multiplying length-2 paths.
pub fn present(a: &FdAlgebra) -> Result<QuiverPresentation, EndoError> {
    let n_idem = a.idempotents().len();
    if n_idem != 2 {
        return Err(EndoError::Vertices(n_idem));
    }
    let rad = a.radical_basic()?;
    let corners = a.corners();
    // (left, right) vertex of an element supported in one corner
    let corner_of = |v: &SparseVec| corners[v.lead().expect("nonzero")].expect("adapted basis");
    let by_corner = |vs: &[SparseVec]| {
        let mut g: [[Vec<SparseVec>; 2]; 2] = Default::default();
        for v in vs {
            let (i, j) = corner_of(v);
            g[i][j].push(v.clone());
        }
        g
    };
    let rad_c = by_corner(&rad);
    let mut rad2 = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for x in &rad_c[i][j] {
                    for y in &rad_c[j][k] {
                        let xy = a.mul(x, y);
                        if !xy.is_zero() {
                            rad2.push(xy);
                        }
                    }
                }
            }
        }
    }
    let mut ech2 = Echelon::new();
    for v in &rad2 {
        ech2.insert(v.clone());
    }
    let labels = a.labels();
    let mut arrows = Vec::new();
    let mut ext = ech2.clone();
    for (i, row) in rad_c.iter().enumerate() {
        for (j, vs) in row.iter().enumerate() {
            for v in vs {
                if ext.insert(v.clone()) {
                    let label = match v.entries() {
                        [(b, c)] if c.is_one() => labels[*b].clone(),
                        _ => format!("r{}", arrows.len()),
                    };
                    arrows.push(Arrow {
                        source: j,
                        target: i,
                        label,
                        element: v.clone(),
                    });
                }
            }
        }
    }

    let left = |x: usize| arrows[x].target;
    let right = |x: usize| arrows[x].source;
    let mut paths = Vec::new();
    let mut relations = Vec::new();
    let mut ech = Echelon::new();
    for x in 0..arrows.len() {
        for y in 0..arrows.len() {
            if right(x) != left(y) {
                continue;
            }
            let t = paths.len();
            paths.push((x, y));
            let xy = a.mul(&arrows[x].element, &arrows[y].element);
            let (res, tag) = ech.reduce_tagged(&xy, &SparseVec::unit(t));
            if res.is_zero() {
                relations.push(tag.into_entries());
            } else {
                ech.insert_tagged(res, tag);
            }
        }
    }

    let loewy = loewy_dims(a, &rad, &arrows);
    let presented = presented_dims(&arrows, &paths, &relations, a.dim());
    let quadratic = presented.iter().sum::<usize>() == a.dim();
    Ok(QuiverPresentation {
        vertices: 2,
        arrows,
        paths,
        relations,
        loewy,
        presented,
        quadratic,
    })
}

/// `rad^{d+1} = rad^d · (arrows)` for `d ≥ 1`.
fn loewy_dims(a: &FdAlgebra, rad: &[SparseVec], arrows: &[Arrow]) -> Vec<usize> {
    let mut dims = vec![a.dim() - rad.len()];
    let mut power: Vec<SparseVec> = rad.to_vec();
    while !power.is_empty() {
        let mut next = Echelon::new();
        for x in &power {
            for y in arrows {
                let xy = a.mul(x, &y.element);
                if !xy.is_zero() {
                    next.insert(xy);
                }
            }
        }
        dims.push(power.len() - next.rank());
        power = next.rows().to_vec();
    }
    dims
}

/// One degree of the quotient of the path algebra by the ideal of the
/// quadratic relations: a basis of words and, for each word of the previous
/// degree followed by an arrow, its coordinates in that basis.
struct Level {
    left: Vec<usize>,
    right: Vec<usize>,
    pairs: HashMap<(usize, usize), usize>,
    red: Vec<SparseVec>,
}

/// `dim B_d` with `B_d = (B_{d−1} ⊗ V) / (B_{d−2} ⊗ R)`, until `B_d = 0` or
/// the running total exceeds `cap`.
fn presented_dims(
    arrows: &[Arrow],
    paths: &[(usize, usize)],
    relations: &[Vec<(usize, Q)>],
    cap: usize,
) -> Vec<usize> {
    let b0 = Level {
        left: vec![0, 1],
        right: vec![0, 1],
        pairs: HashMap::new(),
        red: Vec::new(),
    };
    let mut b1 = Level {
        left: arrows.iter().map(|a| a.target).collect(),
        right: arrows.iter().map(|a| a.source).collect(),
        pairs: HashMap::new(),
        red: Vec::new(),
    };
    for (k, a) in arrows.iter().enumerate() {
        b1.pairs.insert((a.target, k), k);
        b1.red.push(SparseVec::unit(k));
    }
    let mut dims = vec![2, arrows.len()];
    let (mut prev, mut cur) = (b0, b1);
    while !cur.left.is_empty() && dims.iter().sum::<usize>() <= cap {
        let mut pairs = HashMap::new();
        let mut list = Vec::new();
        for w in 0..cur.left.len() {
            for (k, a) in arrows.iter().enumerate() {
                if cur.right[w] == a.target {
                    pairs.insert((w, k), list.len());
                    list.push((w, k));
                }
            }
        }
        let mut ech = Echelon::new();
        for u in 0..prev.left.len() {
            for r in relations {
                let mut terms = Vec::new();
                for (t, c) in r {
                    let (x, y) = paths[*t];
                    let Some(&pu) = cur.pairs.get(&(u, x)) else {
                        break;
                    };
                    for (w, cw) in cur.red[pu].entries() {
                        terms.push((pairs[&(*w, y)], c * cw));
                    }
                }
                let v = SparseVec::from_pairs(terms);
                if !v.is_zero() {
                    ech.insert(v);
                }
            }
        }
        let basis: Vec<usize> = (0..list.len()).filter(|&t| !ech.is_pivot(t)).collect();
        let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let red = (0..list.len())
            .map(|t| ech.reduce(&SparseVec::unit(t)).map_cols(|c| pos[&c]))
            .collect();
        let next = Level {
            left: basis.iter().map(|&t| cur.left[list[t].0]).collect(),
            right: basis.iter().map(|&t| arrows[list[t].1].source).collect(),
            pairs,
            red,
        };
        dims.push(basis.len());
        prev = cur;
        cur = next;
    }
    while dims.last() == Some(&0) {
        dims.pop();
    }
    dims
}
