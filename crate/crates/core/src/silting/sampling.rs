//! Seeded sampling over fixed two-term shapes: the region of the plane not
//! covered by the fan, and the classification of exceptional pretilting
//! complexes. Sampling gives evidence only.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SiltingError;
use crate::algebra::Lambda;
use crate::complexes::{
    hom_complex_dims, hom_dim, k0_class, minimize, random_radical_two_term, GVector, ProjComplex,
};

/// `P_1^a → P_2^b` (`Up`) or `P_2^a → P_1^b` (`Down`) in degrees −1, 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Shape {
    Up { a: usize, b: usize },
    Down { a: usize, b: usize },
}

impl Shape {
    /// Arrows from the degree −1 vertex to the degree 0 vertex, and back.
    fn arrows(&self, l: Lambda) -> (usize, usize) {
        match self {
            Shape::Up { .. } => (l.p, l.q),
            Shape::Down { .. } => (l.q, l.p),
        }
    }

    fn ab(&self) -> (usize, usize) {
        match *self {
            Shape::Up { a, b } | Shape::Down { a, b } => (a, b),
        }
    }

    /// `χ(X, X)` of the class: `a² + b²(1 + pq) − ab(p + q)` up to the
    /// vertex swap.
    pub fn euler(&self, l: Lambda) -> i64 {
        let (a, b) = self.ab();
        let (a, b, p, q) = (a as i64, b as i64, l.p as i64, l.q as i64);
        match self {
            Shape::Up { .. } => a * a + b * b * (1 + p * q) - a * b * (p + q),
            Shape::Down { .. } => b * b + a * a * (1 + p * q) - a * b * (p + q),
        }
    }

    pub fn sample(&self, l: Lambda, bound: i64, rng: &mut ChaCha8Rng) -> ProjComplex {
        match *self {
            Shape::Up { a, b } => random_radical_two_term(l, (a, 0), (0, b), bound, rng),
            Shape::Down { a, b } => random_radical_two_term(l, (0, a), (b, 0), bound, rng),
        }
    }

    /// Every shape of each orientation with `1 ≤ a + b ≤ n`.
    pub fn all(n: usize) -> Vec<Shape> {
        let mut out = Vec::new();
        for t in 1..=n {
            for a in 0..=t {
                out.push(Shape::Up { a, b: t - a });
                out.push(Shape::Down { a, b: t - a });
            }
        }
        out
    }
}

fn rng_for(seed: u64, shape: &Shape) -> ChaCha8Rng {
    let (a, b) = shape.ab();
    let tag = matches!(shape, Shape::Down { .. }) as u64;
    ChaCha8Rng::seed_from_u64(
        seed ^ ((a as u64) << 32 | (b as u64) << 8 | tag).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeShape {
    pub shape: Shape,
    pub samples: usize,
    /// Samples whose complex turned out presilting.
    pub presilting: usize,
    /// `dim` of chain maps `X → X[1]`, equal to `ab·(arrows)` on every sample.
    pub chain_maps: usize,
    pub max_null_homotopic: usize,
    /// `a² + b² − 1`.
    pub null_bound: usize,
}

impl NegativeShape {
    pub fn holds(&self) -> bool {
        self.presilting == 0 && self.max_null_homotopic <= self.null_bound
    }
}

/// For every shape with `a, b ≥ 1`, `a + b ≤ n` and `a² + b² ≤ (arrows)·ab`,
/// samples random differentials and checks that none is presilting and that
/// null-homotopic maps `X → X[1]` stay within `a² + b² − 1`.
pub fn negative_space(
    l: Lambda,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<NegativeShape>, SiltingError> {
    let mut out = Vec::new();
    for shape in Shape::all(n) {
        let (a, b) = shape.ab();
        let (arrows, _) = shape.arrows(l);
        if a == 0 || b == 0 || a * a + b * b > arrows * a * b {
            continue;
        }
        let mut rng = rng_for(seed, &shape);
        let mut r = NegativeShape {
            shape,
            samples,
            presilting: 0,
            chain_maps: arrows * a * b,
            max_null_homotopic: 0,
            null_bound: a * a + b * b - 1,
        };
        for _ in 0..samples {
            let x = shape.sample(l, 3, &mut rng);
            let d = hom_complex_dims(&x, &x, 1)?;
            if d.z != r.chain_maps {
                return Err(SiltingError::Sampling(format!(
                    "{shape:?}: {} chain maps, expected {}",
                    d.z, r.chain_maps
                )));
            }
            r.max_null_homotopic = r.max_null_homotopic.max(d.b);
            if d.h == 0 {
                r.presilting += 1;
            }
        }
        out.push(r);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalShape {
    pub shape: Shape,
    pub euler: i64,
    /// The only shapes the counting argument allows.
    pub forced: bool,
    pub samples: usize,
    /// Samples that are pretilting with `End_K = k`.
    pub found: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalReport {
    pub shapes: Vec<ExceptionalShape>,
    /// g-vectors of every exceptional complex found.
    pub found: BTreeSet<GVector>,
    /// `P_1`, `P_1[1]`, `P_1^p → P_2` and `P_2 → P_1^q`.
    pub expected: BTreeSet<GVector>,
}

impl ExceptionalReport {
    /// Every exceptional complex has one of the four expected classes, all
    /// four occur, and they occur only in forced shapes.
    pub fn holds(&self) -> bool {
        self.found == self.expected && self.shapes.iter().all(|s| s.found == 0 || s.forced)
    }
}

/// A stalk must be a single `P_1`; otherwise `χ = 1` and the `P_1` side
/// has exactly `arrows` times the rank of the `P_2` side.
fn forced_shape(shape: Shape, arrows: usize, euler: i64) -> bool {
    match shape {
        Shape::Up { a, b: 0 } => a == 1,
        Shape::Up { a, b } => euler == 1 && a == b * arrows,
        Shape::Down { a: 0, b } => b == 1,
        Shape::Down { a, b } => euler == 1 && b == a * arrows,
    }
}

/// Radical two-term complexes of every shape with `a + b ≤ n` that are
/// pretilting with one-dimensional endomorphism ring. Stalk shapes are
/// checked once; the others are sampled.
pub fn exceptional_scan(
    l: Lambda,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ExceptionalReport, SiltingError> {
    let (p, q) = (l.p as i64, l.q as i64);
    let expected: BTreeSet<GVector> = [(1, 0), (-1, 0), (-p, 1), (q, -1)].into_iter().collect();
    let mut report = ExceptionalReport {
        shapes: Vec::new(),
        found: BTreeSet::new(),
        expected,
    };
    for shape in Shape::all(n) {
        let (a, b) = shape.ab();
        let (arrows, _) = shape.arrows(l);
        let euler = shape.euler(l);
        let forced = forced_shape(shape, arrows, euler);
        let mut rng = rng_for(seed, &shape);
        let count = if a == 0 || b == 0 { 1 } else { samples };
        let mut found = 0;
        for _ in 0..count {
            let x = minimize(&shape.sample(l, 3, &mut rng));
            if hom_dim(&x, &x, 0)? == 1 && hom_dim(&x, &x, 1)? == 0 && hom_dim(&x, &x, -1)? == 0 {
                found += 1;
                report.found.insert(k0_class(&x));
            }
        }
        report.shapes.push(ExceptionalShape {
            shape,
            euler,
            forced,
            samples: count,
            found,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_region_has_no_presilting_samples() {
        let l = Lambda::new(3, 2).unwrap();
        let r = negative_space(l, 5, 10, 7).unwrap();
        // (1,1), (1,2), (2,1), (2,2) up, (1,1) and (2,2) down
        assert!(r.len() >= 6);
        assert!(r.iter().all(|s| s.holds()));
        // p = 1 leaves no room for a² + b² ≤ ab
        assert!(negative_space(Lambda::new(1, 1).unwrap(), 6, 5, 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn exceptional_complexes() {
        for (p, q) in [(1, 1), (2, 1), (2, 2)] {
            let l = Lambda::new(p, q).unwrap();
            let r = exceptional_scan(l, 4, 8, 1).unwrap();
            assert!(r.holds(), "{p},{q}: {:?}", r.found);
        }
    }

    #[test]
    fn kronecker_has_an_extra_exceptional_stalk() {
        // with q = 0 the stalk P_2 has End = k
        let r = exceptional_scan(Lambda::new(2, 0).unwrap(), 3, 4, 1).unwrap();
        assert!(r.found.contains(&(0, 1)));
        assert!(!r.holds());
    }
}
