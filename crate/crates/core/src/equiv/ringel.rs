use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::{EquivError, Functor};
use crate::algebra::{AlgMatrix, Lambda, Vertex};
use crate::complexes::{ChainMap, HomBasis, HomComplex, ProjComplex};
use crate::linalg::{Matrix, SparseVec, Q};
use crate::silting::{build_tower, dual_star, flags, make_c};

/// How `ω(P_2)` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaBranch {
    /// The generator recipe, validated.
    Recipe,
    /// `(C_2)^*` over `Λ^{q,p}`, used when the recipe fails validation.
    Fallback,
    /// `q = 0`, where `ω` swaps the two projectives.
    Degenerate,
}

/// `ω_{p,q}: K^b(proj Λ^{p,q}) → K^b(proj Λ^{q,p})`.
#[derive(Clone, Debug)]
pub struct RingelDuality {
    pub functor: Functor,
    pub branch: OmegaBranch,
}

/// `P_1^q → P_2` with differential `(α_1, …, α_q)`.
fn image_p1(g: Lambda) -> ProjComplex {
    let q = g.p;
    let mut d = AlgMatrix::zeros(1, q);
    for j in 0..q {
        d.set(0, j, SparseVec::unit(g.alpha(j)));
    }
    ProjComplex::two_term(g, (q, 0), (0, 1), d).expect("valid shape")
}

/// `P_1^{q²−1} → P_2^q`: generator `n = qi + j` (`0 ≤ i < q`, `1 ≤ j ≤ q`,
/// `n < q²`) goes to `ι_{i+1}(α_j)`, minus `ι_q(α_q)` when `i + 1 = j`.
fn image_p2_recipe(g: Lambda) -> ProjComplex {
    let q = g.p;
    let n_gen = q * q - 1;
    let mut d = AlgMatrix::zeros(q, n_gen);
    for i in 0..q {
        for j in 1..=q {
            let n = q * i + j;
            if n >= q * q {
                continue;
            }
            d.set(i, n - 1, SparseVec::unit(g.alpha(j - 1)));
            if i + 1 == j {
                d.add_to(
                    q - 1,
                    n - 1,
                    &SparseVec::from_pairs(vec![(g.alpha(q - 1), -Q::ONE)]),
                );
            }
        }
    }
    ProjComplex::two_term(g, (n_gen, 0), (0, q), d).expect("valid shape")
}

fn image_p2_fallback(g: Lambda) -> Result<ProjComplex, EquivError> {
    let t = build_tower(g.p, 2)?;
    Ok(dual_star(&make_c(2, &t, g)?)?)
}

/// Checks that `R_1 ⊕ R_2` is tilting with `Hom(R_a, R_b) ≅ Hom(P_a, P_b)`
/// and returns images of the basis of `Λ`: `α_i, β_j` go to bases of
/// `Hom(R_1, R_2)` and `Hom(R_2, R_1)`, `α_iβ_j` to the composites.
fn transport(l: Lambda, images: &[ProjComplex; 2]) -> Result<Vec<ChainMap>, String> {
    let g = images[0].lambda();
    let t = ProjComplex::direct_sum(&[&images[0], &images[1]]);
    let fl = flags(&t).map_err(|e| e.to_string())?.0;
    if !fl.tilting {
        return Err(format!("R_1 ⊕ R_2 is not tilting: {fl:?}"));
    }
    let hb: Vec<Vec<HomBasis>> = images
        .iter()
        .map(|x| {
            images
                .iter()
                .map(|y| HomComplex::new(x, y).basis(0))
                .collect()
        })
        .collect();
    for a in Vertex::BOTH {
        for b in Vertex::BOTH {
            let (got, want) = (hb[a.index()][b.index()].dim(), l.hom_basis(a, b).len());
            if got != want {
                return Err(format!(
                    "dim Hom(R_{}, R_{}) = {got}, expected {want}",
                    a.index() + 1,
                    b.index() + 1
                ));
            }
        }
    }
    let alpha: Vec<ChainMap> = (0..l.p).map(|i| hb[0][1].rep(i)).collect();
    let beta: Vec<ChainMap> = (0..l.q).map(|j| hb[1][0].rep(j)).collect();
    for a in &alpha {
        for b in &beta {
            if !hb[0][0].is_null(&b.compose(&g, a)) {
                return Err("R_1 → R_2 → R_1 is not null-homotopic".into());
            }
        }
    }
    let mut maps = Vec::with_capacity(l.dim());
    let mut end2 = vec![hb[1][1]
        .coords(&ChainMap::identity(&images[1]))
        .ok_or("identity is not a cycle")?];
    for b in 0..l.dim() {
        let m = match l.kind(b) {
            crate::algebra::Basis::E(v) => ChainMap::identity(&images[v.index()]),
            crate::algebra::Basis::Alpha(i) => alpha[i].clone(),
            crate::algebra::Basis::Beta(j) => beta[j].clone(),
            crate::algebra::Basis::AlphaBeta(i, j) => {
                let ab = alpha[i].compose(&g, &beta[j]);
                end2.push(hb[1][1].coords(&ab).ok_or("composite is not a cycle")?);
                ab
            }
        };
        maps.push(m);
    }
    let rank = Matrix::from_rows(end2, hb[1][1].dim()).rank();
    if rank != 1 + l.p * l.q {
        return Err(format!(
            "identity and the composites α_iβ_j span {rank} dimensions in End(R_2)"
        ));
    }
    Ok(maps)
}

impl RingelDuality {
    pub fn new(l: Lambda) -> Result<RingelDuality, EquivError> {
        let g = l.opposite();
        if l.q == 0 {
            let images = [
                ProjComplex::projective(g, Vertex::Two, 0),
                ProjComplex::projective(g, Vertex::One, 0),
            ];
            let maps = transport(l, &images).map_err(EquivError::Recipe)?;
            return Ok(RingelDuality {
                functor: Functor::new(l, g, images, maps)?,
                branch: OmegaBranch::Degenerate,
            });
        }
        let images = [image_p1(g), image_p2_recipe(g)];
        let (images, maps, branch) = match transport(l, &images) {
            Ok(maps) => (images, maps, OmegaBranch::Recipe),
            Err(e) if l.q < 2 => return Err(EquivError::Recipe(e)),
            Err(_) => {
                let images = [image_p1(g), image_p2_fallback(g)?];
                let maps = transport(l, &images).map_err(EquivError::Recipe)?;
                (images, maps, OmegaBranch::Fallback)
            }
        };
        Ok(RingelDuality {
            functor: Functor::new(l, g, images, maps)?,
            branch,
        })
    }

    /// Shared per algebra.
    pub fn cached(l: Lambda) -> Result<Arc<RingelDuality>, EquivError> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<RingelDuality>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = cache.lock().expect("cache lock").get(&(l.p, l.q)) {
            return Ok(r.clone());
        }
        let r = Arc::new(RingelDuality::new(l)?);
        cache
            .lock()
            .expect("cache lock")
            .insert((l.p, l.q), r.clone());
        Ok(r)
    }
}

/// `ω_{p,q}(X)` over `Λ^{q,p}`, minimised.
pub fn ringel_omega(x: &ProjComplex) -> Result<ProjComplex, EquivError> {
    RingelDuality::cached(x.lambda())?.functor.apply(x)
}

/// `ω_{p,q}^{-1}(Y)` for `Y` over `Λ^{q,p}`: `ω_{p,q}` conjugated by
/// `Hom(−, Λ)`.
pub fn ringel_omega_inv(y: &ProjComplex) -> Result<ProjComplex, EquivError> {
    Ok(ringel_omega(&y.transpose())?.transpose())
}

/// `ω(X), ω(ω(X)), …`, `t` steps, alternating between `Λ^{p,q}` and `Λ^{q,p}`.
pub fn omega_iterate(x: &ProjComplex, t: usize) -> Result<Vec<ProjComplex>, EquivError> {
    let mut out: Vec<ProjComplex> = Vec::with_capacity(t);
    let mut cur = x.clone();
    for _ in 0..t {
        cur = ringel_omega(&cur)?;
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::iso_in_homotopy;
    use crate::endo::end_algebra;
    use crate::equiv::{nakayama_nu, NuDirection};
    use crate::silting::is_pretilting;

    fn grid() -> Vec<(usize, usize)> {
        vec![
            (1, 1),
            (2, 1),
            (1, 2),
            (2, 2),
            (3, 2),
            (2, 3),
            (0, 2),
            (2, 0),
        ]
    }

    #[test]
    fn recipe_validates() {
        for (p, q) in grid() {
            let r = RingelDuality::new(Lambda::new(p, q).unwrap()).unwrap();
            let want = if q == 0 {
                OmegaBranch::Degenerate
            } else {
                OmegaBranch::Recipe
            };
            assert_eq!(r.branch, want, "({p},{q})");
        }
    }

    #[test]
    fn image_of_p1() {
        let l = Lambda::new(2, 3).unwrap();
        let x = ringel_omega(&ProjComplex::projective(l, Vertex::One, 0)).unwrap();
        assert_eq!(x.lambda(), l.opposite());
        assert_eq!((x.lo(), x.term(-1), x.term(0)), (-1, (3, 0), (0, 1)));
        assert!(is_pretilting(&x).unwrap());
    }

    #[test]
    fn image_of_lambda_has_the_right_end() {
        for (p, q) in [(2, 1), (2, 2), (1, 3)] {
            let l = Lambda::new(p, q).unwrap();
            let r = RingelDuality::new(l).unwrap();
            let e = end_algebra(&[
                r.functor.image(Vertex::One).clone(),
                r.functor.image(Vertex::Two).clone(),
            ])
            .unwrap();
            assert_eq!(e.dims, vec![vec![1, p], vec![q, 1 + p * q]]);
            assert!(e.presilting);
        }
    }

    #[test]
    fn inverse_of_p1() {
        // ω_{q,p}^{-1} on P_1 over Λ^{p,q}
        let l = Lambda::new(2, 3).unwrap();
        let x = ringel_omega_inv(&ProjComplex::projective(l, Vertex::One, 0)).unwrap();
        assert_eq!(x.lambda(), l.opposite());
        assert_eq!((x.lo(), x.term(0), x.term(1)), (0, (0, 1), (2, 0)));
    }

    #[test]
    fn inverse_round_trip() {
        let l = Lambda::new(2, 2).unwrap();
        let t = build_tower(2, 2).unwrap();
        for x in [
            ProjComplex::projective(l, Vertex::One, 0),
            ProjComplex::projective(l, Vertex::Two, 0),
            make_c(1, &t, l).unwrap(),
        ] {
            let y = ringel_omega_inv(&ringel_omega(&x).unwrap()).unwrap();
            assert!(iso_in_homotopy(&x, &y, 3), "{x} vs {y}");
        }
    }

    #[test]
    fn nu_is_omega_squared() {
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let l = Lambda::new(p, q).unwrap();
            for v in Vertex::BOTH {
                let x = ProjComplex::projective(l, v, 0);
                let a = nakayama_nu(&x, NuDirection::Forward).unwrap();
                let b = ringel_omega(&ringel_omega(&x).unwrap()).unwrap();
                assert!(
                    iso_in_homotopy(&a, &b, 5),
                    "({p},{q}) P{}: {a} vs {b}",
                    v.index() + 1
                );
            }
        }
    }

    #[test]
    fn span_grows_by_one() {
        let l = Lambda::new(2, 1).unwrap();
        let it = omega_iterate(&ProjComplex::regular(l), 3).unwrap();
        for (t, x) in it.iter().enumerate() {
            assert_eq!(x.span(), t + 2, "{x}");
        }
    }
}
