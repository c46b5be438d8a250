//! The g-vector fan: each basic two-term silting complex spans a cone
//! between the rays of its two summands. Cones are ordered and compared with
//! exact integer cross products.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::closed::{closed_form_nodes, ConeAlgebra};
use super::mutation::WalkNode;
use super::predicates::{det, Flags, HomTable};
use super::{pair_key, SiltingError};
use crate::algebra::Lambda;
use crate::complexes::GVector;

/// A cone `{s·from + t·to : s, t ≥ 0}` with `to` counterclockwise of `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub from: GVector,
    pub to: GVector,
    /// Position of the node in the input list.
    pub node: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    /// Arcs in counterclockwise order of their first ray, starting from the
    /// positive x-axis.
    pub arcs: Vec<Arc>,
    /// Uncovered cones between consecutive arcs, counterclockwise.
    pub gaps: Vec<(GVector, GVector)>,
}

fn cross(a: GVector, b: GVector) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn dot(a: GVector, b: GVector) -> i128 {
    a.0 as i128 * b.0 as i128 + a.1 as i128 * b.1 as i128
}

/// `0` on the angle range `[0, π)`, `1` on `[π, 2π)`.
fn half(v: GVector) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise angle order from the positive x-axis; rays in the same
/// direction compare equal.
pub fn angle_cmp(a: GVector, b: GVector) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

fn same_ray(a: GVector, b: GVector) -> bool {
    cross(a, b) == 0 && dot(a, b) > 0
}

/// Whether `v` lies strictly inside the cone of `arc`.
fn strictly_inside(v: GVector, arc: &Arc) -> bool {
    cross(arc.from, v) > 0 && cross(v, arc.to) > 0
}

impl Arc {
    pub fn new(g: [GVector; 2], node: usize) -> Result<Arc, SiltingError> {
        match cross(g[0], g[1]).cmp(&0) {
            Ordering::Greater => Ok(Arc {
                from: g[0],
                to: g[1],
                node,
            }),
            Ordering::Less => Ok(Arc {
                from: g[1],
                to: g[0],
                node,
            }),
            Ordering::Equal => Err(SiltingError::NotSilting),
        }
    }

    /// Two open cones narrower than a half-plane meet exactly when one
    /// starts inside the other or both start on the same ray.
    pub fn overlaps(&self, other: &Arc) -> bool {
        strictly_inside(other.from, self)
            || strictly_inside(self.from, other)
            || same_ray(self.from, other.from)
    }
}

/// Orders the cones of the given g-vector pairs and checks that their
/// interiors are pairwise disjoint.
pub fn fan(pairs: &[[GVector; 2]]) -> Result<Fan, SiltingError> {
    let mut arcs = pairs
        .iter()
        .enumerate()
        .map(|(i, g)| Arc::new(*g, i))
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if arcs[i].overlaps(&arcs[j]) {
                return Err(SiltingError::Overlap(arcs[i].node, arcs[j].node));
            }
        }
    }
    arcs.sort_by(|a, b| angle_cmp(a.from, b.from));
    let mut gaps = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        let next = &arcs[(i + 1) % arcs.len()];
        if !same_ray(a.to, next.from) {
            gaps.push((a.to, next.from));
        }
    }
    Ok(Fan { arcs, gaps })
}

/// One cone of `fan.json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanNode {
    /// Summand g-vectors, counterclockwise.
    pub g: [GVector; 2],
    pub names: Option<[String; 2]>,
    pub algebra: Option<ConeAlgebra>,
    pub algebra_label: Option<String>,
    pub flags: Flags,
    pub homs: HomTable,
    pub depth: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanReport {
    pub p: usize,
    pub q: usize,
    pub depth: usize,
    /// Counterclockwise from the positive x-axis.
    pub nodes: Vec<FanNode>,
    pub gaps: Vec<(GVector, GVector)>,
}

/// Orders the walk's cones and attaches names and algebra labels from the
/// closed-form lists where the g-vector pairs agree.
pub fn fan_report(l: Lambda, walk: &[WalkNode], depth: usize) -> Result<FanReport, SiltingError> {
    let closed = closed_form_nodes(l, depth)?;
    let pairs: Vec<[GVector; 2]> = walk.iter().map(|w| w.node.g).collect();
    let f = fan(&pairs)?;
    let nodes = f
        .arcs
        .iter()
        .map(|a| {
            let w = &walk[a.node];
            let c = closed.iter().find(|c| c.key() == pair_key(a.from, a.to));
            let names = c.map(|c| {
                if c.g[0] == a.from {
                    c.names.clone()
                } else {
                    [c.names[1].clone(), c.names[0].clone()]
                }
            });
            FanNode {
                g: [a.from, a.to],
                names,
                algebra: c.map(|c| c.algebra),
                algebra_label: c.map(|c| c.algebra.to_string()),
                flags: w.node.flags,
                homs: w.node.homs.clone(),
                depth: w.depth,
            }
        })
        .collect();
    Ok(FanReport {
        p: l.p,
        q: l.q,
        depth,
        nodes,
        gaps: f.gaps,
    })
}

/// Whether `a_{m+1}/a_m` moves monotonically towards its limit: the exact
/// comparison `a_{m+1}·a_{m−1}` against `a_m²`.
pub fn ratios_decrease(dims: &[i128]) -> bool {
    dims.windows(3).all(|w| w[2] * w[0] <= w[1] * w[1])
}

/// The determinant of an arc's rays; `1` for every silting cone.
pub fn arc_det(a: &Arc) -> i64 {
    det(a.from, a.to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::silting::{closed_form_nodes, mutation_walk, tower_dim};

    #[test]
    fn quadrants() {
        let f = fan(&[[(1, 0), (0, 1)], [(-1, 0), (0, -1)]]).unwrap();
        assert_eq!(f.arcs[0].from, (1, 0));
        assert_eq!(f.arcs[1].from, (-1, 0));
        assert_eq!(f.gaps, vec![((0, 1), (-1, 0)), ((0, -1), (1, 0))]);
    }

    #[test]
    fn overlap_detected() {
        let r = fan(&[[(1, 0), (0, 1)], [(1, 1), (0, 1)]]);
        assert_eq!(r, Err(SiltingError::Overlap(0, 1)));
        assert!(fan(&[[(1, 0), (0, 1)], [(1, 0), (0, 1)]]).is_err());
        assert!(fan(&[[(1, 0), (0, 1)], [(0, 1), (-1, 1)]]).is_ok());
    }

    #[test]
    fn angles_cycle() {
        let rays = [
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
        ];
        for w in rays.windows(2) {
            assert_eq!(angle_cmp(w[0], w[1]), Ordering::Less);
        }
        assert_eq!(angle_cmp((2, 2), (1, 1)), Ordering::Equal);
    }

    #[test]
    fn two_gaps_for_large_p_q() {
        for (p, q) in [(2, 3), (3, 3)] {
            let l = Lambda::new(p, q).unwrap();
            let pairs: Vec<_> = closed_form_nodes(l, 4)
                .unwrap()
                .iter()
                .map(|n| n.g)
                .collect();
            let f = fan(&pairs).unwrap();
            assert_eq!(f.gaps.len(), 2);
            assert!(f.arcs.iter().all(|a| arc_det(a) == 1));
        }
        // p = q = 1: the six cones cover the plane
        let l = Lambda::new(1, 1).unwrap();
        let pairs: Vec<_> = closed_form_nodes(l, 3)
            .unwrap()
            .iter()
            .map(|n| n.g)
            .collect();
        assert!(fan(&pairs).unwrap().gaps.is_empty());
    }

    #[test]
    fn report_labels() {
        let l = Lambda::new(2, 1).unwrap();
        let w = mutation_walk(l, 3).unwrap();
        let r = fan_report(l, &w, 3).unwrap();
        assert!(r.nodes.iter().all(|n| n.algebra.is_some()));
        let delta: Vec<_> = r
            .nodes
            .iter()
            .filter(|n| matches!(n.algebra, Some(ConeAlgebra::Delta { .. })))
            .collect();
        assert_eq!(delta.len(), 2);
        assert!(delta.iter().all(|n| n.flags.silting && !n.flags.tilting));
        let dims: Vec<i128> = (0..8).map(|m| tower_dim(3, m)).collect();
        assert!(ratios_decrease(&dims));
    }
}
