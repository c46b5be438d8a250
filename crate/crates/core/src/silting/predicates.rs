use serde::{Deserialize, Serialize};

use super::SiltingError;
use crate::complexes::{
    end_algebra_of, g_vector, hom_dim, is_indecomposable, iso_in_homotopy, k0_class, minimize,
    split_blocks, GVector, ProjComplex,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub presilting: bool,
    pub silting: bool,
    pub tilting: bool,
}

/// `dims[i][j][s]` is `dim Hom_K(X_i, X_j[shifts[s]])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomTable {
    pub shifts: Vec<i32>,
    pub dims: Vec<Vec<Vec<usize>>>,
}

impl HomTable {
    pub fn of(parts: &[&ProjComplex], shifts: &[i32]) -> Result<HomTable, SiltingError> {
        let mut dims = Vec::new();
        for x in parts {
            let mut row = Vec::new();
            for y in parts {
                row.push(
                    shifts
                        .iter()
                        .map(|&r| hom_dim(x, y, r))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            dims.push(row);
        }
        Ok(HomTable {
            shifts: shifts.to_vec(),
            dims,
        })
    }

    pub fn get(&self, i: usize, j: usize, shift: i32) -> Option<usize> {
        let s = self.shifts.iter().position(|&r| r == shift)?;
        Some(self.dims[i][j][s])
    }

    /// Whether every entry with a shift in `shifts` vanishes.
    fn vanishes_at(&self, pred: impl Fn(i32) -> bool) -> bool {
        self.dims.iter().flatten().all(|v| {
            v.iter()
                .zip(&self.shifts)
                .all(|(d, &r)| !pred(r) || *d == 0)
        })
    }
}

pub fn det(a: GVector, b: GVector) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// `Hom_K(X, X[r]) = 0` for every `r > 0`.
pub fn is_presilting(x: &ProjComplex) -> Result<bool, SiltingError> {
    let m = minimize(x);
    if m.is_zero() {
        return Ok(true);
    }
    for r in 1..=m.span() as i32 {
        if hom_dim(&m, &m, r)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Hom_K(X, X[r]) = 0` for every `r ≠ 0`.
pub fn is_pretilting(x: &ProjComplex) -> Result<bool, SiltingError> {
    let m = minimize(x);
    if !is_presilting(&m)? {
        return Ok(false);
    }
    for r in 1..=m.span() as i32 {
        if hom_dim(&m, &m, -r)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What is known about the indecomposable summands of a complex.
#[derive(Clone, Debug)]
pub enum Summands {
    /// Pairwise non-isomorphic indecomposable summands with multiplicities.
    Known(Vec<(ProjComplex, usize)>),
    /// Only the number of isomorphism classes.
    Count(usize),
}

impl Summands {
    pub fn count(&self) -> usize {
        match self {
            Summands::Known(v) => v.len(),
            Summands::Count(n) => *n,
        }
    }
}

/// Splits along the blocks of the differential and groups isomorphic blocks;
/// falls back to the centre of `End_K(X)/rad` when a block does not split.
pub fn summands(x: &ProjComplex, seed: u64) -> Result<Summands, SiltingError> {
    let m = minimize(x);
    let blocks = split_blocks(&m);
    let mut classes: Vec<(ProjComplex, usize)> = Vec::new();
    for b in blocks {
        if !is_indecomposable(&b)? {
            return Ok(Summands::Count(end_algebra_of(&m).center_mod_radical_dim()));
        }
        match classes
            .iter_mut()
            .find(|(c, _)| same_indecomposable(c, &b, seed))
        {
            Some((_, k)) => *k += 1,
            None => classes.push((b, 1)),
        }
    }
    Ok(Summands::Known(classes))
}

/// For two-term indecomposables with vanishing self-extension the g-vector
/// decides; otherwise a seeded search for an isomorphism.
fn same_indecomposable(x: &ProjComplex, y: &ProjComplex, seed: u64) -> bool {
    let two_term = |z: &ProjComplex| z.lo() >= -1 && z.hi() <= 0 && hom_dim(z, z, 1) == Ok(0);
    if two_term(x) && two_term(y) {
        return k0_class(x) == k0_class(y);
    }
    iso_in_homotopy(x, y, seed)
}

/// Flags of an arbitrary complex. Silting is decided for complexes in
/// degrees −1, 0 as presilting with exactly two non-isomorphic indecomposable
/// summands whose classes form a lattice basis; for longer complexes the same
/// criterion is reported.
pub fn flags(x: &ProjComplex) -> Result<(Flags, Summands), SiltingError> {
    let presilting = is_presilting(x)?;
    let s = summands(x, 0)?;
    let mut silting = presilting && s.count() == 2;
    if let Summands::Known(v) = &s {
        if silting {
            silting = det(k0_class(&v[0].0), k0_class(&v[1].0)).abs() == 1;
        }
    }
    let tilting = silting && is_pretilting(x)?;
    Ok((
        Flags {
            presilting,
            silting,
            tilting,
        },
        s,
    ))
}

/// A basic two-term silting candidate given by its two summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiltingNode {
    pub summands: [ProjComplex; 2],
    pub g: [GVector; 2],
    pub flags: Flags,
    /// Shifts −1, 0, 1.
    pub homs: HomTable,
}

impl SiltingNode {
    /// Minimises both summands and computes the flags and Hom table.
    pub fn new(x0: &ProjComplex, x1: &ProjComplex) -> Result<SiltingNode, SiltingError> {
        let (x0, x1) = (minimize(x0), minimize(x1));
        let g = [g_vector(&x0)?, g_vector(&x1)?];
        let homs = HomTable::of(&[&x0, &x1], &[-1, 0, 1])?;
        let presilting = homs.vanishes_at(|r| r > 0);
        let silting = presilting
            && det(g[0], g[1]).abs() == 1
            && is_indecomposable(&x0)?
            && is_indecomposable(&x1)?;
        let tilting = silting && homs.vanishes_at(|r| r < 0);
        Ok(SiltingNode {
            summands: [x0, x1],
            g,
            flags: Flags {
                presilting,
                silting,
                tilting,
            },
            homs,
        })
    }

    pub fn key(&self) -> [GVector; 2] {
        super::pair_key(self.g[0], self.g[1])
    }

    pub fn complex(&self) -> ProjComplex {
        ProjComplex::direct_sum(&[&self.summands[0], &self.summands[1]])
    }

    /// `Λ` or `Λ[1]`.
    pub fn is_trivial(&self) -> bool {
        let k = self.key();
        k == super::pair_key((1, 0), (0, 1)) || k == super::pair_key((-1, 0), (0, -1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Lambda, Vertex};
    use crate::silting::{build_tower, dual_star, make_c};

    #[test]
    fn regular_is_tilting() {
        let l = Lambda::new(2, 1).unwrap();
        let (f, s) = flags(&ProjComplex::regular(l)).unwrap();
        assert_eq!(
            f,
            Flags {
                presilting: true,
                silting: true,
                tilting: true
            }
        );
        assert_eq!(s.count(), 2);
        let n = SiltingNode::new(
            &ProjComplex::projective(l, Vertex::One, 0),
            &ProjComplex::projective(l, Vertex::Two, 0),
        )
        .unwrap();
        assert!(n.flags.tilting && n.is_trivial());
    }

    #[test]
    fn star_pair_is_silting_not_tilting() {
        for (p, q) in [(2, 1), (3, 2), (2, 3)] {
            let l = Lambda::new(p, q).unwrap();
            let t = build_tower(p, 2).unwrap();
            let s0 = dual_star(&make_c(0, &t, l).unwrap()).unwrap();
            let s1 = dual_star(&make_c(1, &t, l).unwrap()).unwrap();
            let n = SiltingNode::new(&s0, &s1).unwrap();
            assert!(n.flags.silting && !n.flags.tilting);
            assert_eq!(n.homs.get(1, 0, 0), Some(p));
            assert_eq!(n.homs.get(1, 0, -1), Some(q));
            assert_eq!(n.homs.get(0, 0, 0), Some(1));
            assert_eq!(n.homs.get(1, 1, 0), Some(1));
            for r in [-1, 0, 1] {
                assert_eq!(n.homs.get(0, 1, r), Some(0));
            }
            let (f, _) = flags(&ProjComplex::direct_sum(&[&s0, &s1])).unwrap();
            assert_eq!(f, n.flags);
        }
    }

    #[test]
    fn duplicated_summand_is_not_silting() {
        let l = Lambda::new(2, 2).unwrap();
        let t = build_tower(2, 2).unwrap();
        let c1 = make_c(1, &t, l).unwrap();
        let (f, s) = flags(&ProjComplex::direct_sum(&[&c1, &c1])).unwrap();
        assert!(f.presilting && !f.silting);
        assert_eq!(s.count(), 1);
    }
}
