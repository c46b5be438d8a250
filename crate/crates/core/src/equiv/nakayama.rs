use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{EquivError, Functor};
use crate::algebra::{nakayama_map, Lambda, QuiverRep, Resolution, Vertex};
use crate::complexes::{Builder, ChainMap, ProjComplex};
use crate::linalg::SparseVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NuDirection {
    Forward,
    Inverse,
}

impl NuDirection {
    pub fn flip(self) -> NuDirection {
        match self {
            NuDirection::Forward => NuDirection::Inverse,
            NuDirection::Inverse => NuDirection::Forward,
        }
    }
}

/// `P_k → … → P_0` in degrees `−k, …, 0`, each term reordered with `P_1`
/// first; `perm[n][new] = old`.
fn resolution_with_perms(r: &Resolution, l: Lambda) -> (ProjComplex, Vec<Vec<usize>>) {
    let len = r.len() as i32;
    let mut b = Builder::new(l, 1 - len);
    for k in (0..r.len()).rev() {
        b.push_term(r.terms[k].summands.clone());
    }
    for k in (1..r.len()).rev() {
        b.push_diff(r.diffs[k - 1].clone());
    }
    let (x, perms) = b.build_with_perms();
    // indexed by k = −degree
    let by_k = (0..r.len()).map(|k| perms[&-(k as i32)].clone()).collect();
    (x, by_k)
}

/// The minimal projective resolution as a complex ending in degree 0.
pub fn resolution_complex(r: &Resolution, l: Lambda) -> ProjComplex {
    resolution_with_perms(r, l).0
}

fn build(l: Lambda) -> Result<Functor, EquivError> {
    let res: Vec<Resolution> = Vertex::BOTH
        .iter()
        .map(|&v| QuiverRep::injective(l, v).minimal_resolution())
        .collect::<Result<_, _>>()?;
    let parts: Vec<(ProjComplex, Vec<Vec<usize>>)> =
        res.iter().map(|r| resolution_with_perms(r, l)).collect();
    let mut maps = Vec::with_capacity(l.dim());
    for b in 0..l.dim() {
        let (s, t) = (l.source(b), l.target(b));
        if l.degree(b) == 0 {
            maps.push(ChainMap::identity(&parts[s.index()].0));
            continue;
        }
        let g = nakayama_map(&l, &SparseVec::unit(b), s, t);
        let lift = res[s.index()].lift_map(&res[t.index()], &g)?;
        let (ps, pt) = (&parts[s.index()].1, &parts[t.index()].1);
        let mut f = ChainMap::zero(0);
        for (k, m) in lift.iter().enumerate() {
            if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
                continue;
            }
            f.comps.insert(-(k as i32), m.select(&pt[k], &ps[k]));
        }
        maps.push(f);
    }
    let [p1, p2]: [ProjComplex; 2] = parts
        .into_iter()
        .map(|(x, _)| x)
        .collect::<Vec<_>>()
        .try_into()
        .expect("two vertices");
    Functor::new(l, l, [p1, p2], maps)
}

/// `ν` on `K^b(proj Λ)`: `P_v ↦` the projective resolution of `I_v`, and
/// `b ↦` a lift of its Nakayama image. Built once per algebra.
pub fn nakayama_functor(l: Lambda) -> Result<Arc<Functor>, EquivError> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Functor>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("cache lock").get(&(l.p, l.q)) {
        return Ok(f.clone());
    }
    let f = Arc::new(build(l)?);
    cache
        .lock()
        .expect("cache lock")
        .insert((l.p, l.q), f.clone());
    Ok(f)
}

/// `ν(X)` or `ν^{-1}(X)`, minimised. The inverse is `ν` of the opposite
/// algebra conjugated by `Hom(−, Λ)`.
pub fn nakayama_nu(x: &ProjComplex, direction: NuDirection) -> Result<ProjComplex, EquivError> {
    match direction {
        NuDirection::Forward => nakayama_functor(x.lambda())?.apply(x),
        NuDirection::Inverse => {
            let t = x.transpose();
            Ok(nakayama_functor(t.lambda())?.apply(&t)?.transpose())
        }
    }
}
