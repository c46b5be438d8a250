use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::Builder;
use super::hom::{ChainMap, HomComplex};
use super::twoterm::{semisimple_quotient_dim, ScalarSystem, UpShape};
use super::{minimize, ComplexError, ProjComplex};
use crate::algebra::{AlgMatrix, FdAlgebra, Lambda, Vertex};
use crate::linalg::{Matrix, SparseVec, Q};

/// Mapping cone of a chain map `f: X → Y` of degree zero:
/// `Cone_n = X_{n+1} ⊕ Y_n` with differential `[[−d_X, 0], [f, d_Y]]`.
pub fn cone(x: &ProjComplex, y: &ProjComplex, f: &ChainMap) -> Result<ProjComplex, ComplexError> {
    if x.lambda() != y.lambda() {
        return Err(ComplexError::AlgebraMismatch);
    }
    if f.shift != 0 || !f.is_chain_map(x, y) {
        return Err(ComplexError::NotAChainMap);
    }
    Ok(cone_unchecked(x, y, f))
}

pub(crate) fn cone_unchecked(x: &ProjComplex, y: &ProjComplex, f: &ChainMap) -> ProjComplex {
    let l = x.lambda();
    let xs = x.shift(1);
    let nonzero: Vec<&ProjComplex> = [&xs, y].into_iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return ProjComplex::zero(l);
    }
    let lo = nonzero.iter().map(|c| c.lo()).min().unwrap();
    let hi = nonzero.iter().map(|c| c.hi()).max().unwrap();
    let mut b = Builder::new(l, lo);
    for n in lo..=hi {
        let mut v = xs.vertices(n);
        v.extend(y.vertices(n));
        b.push_term(v);
    }
    for n in lo..hi {
        let (xa, ya) = (xs.rank(n), y.rank(n));
        let (xb, yb) = (xs.rank(n + 1), y.rank(n + 1));
        let mut d = AlgMatrix::zeros(xb + yb, xa + ya);
        d.add_block(0, 0, &xs.diff(n));
        d.add_block(xb, xa, &y.diff(n));
        // f_{n+1}: X_{n+1} → Y_{n+1}
        d.add_block(xb, 0, &f.comp(n + 1, yb, xa));
        b.push_diff(d);
    }
    b.build()
}

/// `Y^n` with the map `(f_1; …; f_n): X → Y^n` of degree zero.
pub fn column_map(x: &ProjComplex, y: &ProjComplex, fs: &[ChainMap]) -> (ProjComplex, ChainMap) {
    let (yn, perms) = power(y, fs.len());
    let mut out = ChainMap::zero(0);
    for n in x.degrees() {
        let (rows, cols) = (y.rank(n), x.rank(n));
        if rows == 0 || cols == 0 || fs.is_empty() {
            continue;
        }
        let mut m = AlgMatrix::zeros(rows * fs.len(), cols);
        for (s, f) in fs.iter().enumerate() {
            m.add_block(s * rows, 0, &f.comp(n, rows, cols));
        }
        let all: Vec<usize> = (0..cols).collect();
        out.comps.insert(n, m.select(&perms[&n], &all));
    }
    (yn, out)
}

/// `Y^n` with the map `(g_1 … g_n): Y^n → X` of degree zero.
pub fn row_map(y: &ProjComplex, x: &ProjComplex, gs: &[ChainMap]) -> (ProjComplex, ChainMap) {
    let (yn, perms) = power(y, gs.len());
    let mut out = ChainMap::zero(0);
    for n in x.degrees() {
        let (rows, cols) = (x.rank(n), y.rank(n));
        if rows == 0 || cols == 0 || gs.is_empty() {
            continue;
        }
        let mut m = AlgMatrix::zeros(rows, cols * gs.len());
        for (s, g) in gs.iter().enumerate() {
            m.add_block(0, s * cols, &g.comp(n, rows, cols));
        }
        let all: Vec<usize> = (0..rows).collect();
        out.comps.insert(n, m.select(&all, &perms[&n]));
    }
    (yn, out)
}

fn power(y: &ProjComplex, n: usize) -> (ProjComplex, super::complex::Perms) {
    let l = y.lambda();
    if y.is_zero() || n == 0 {
        return (ProjComplex::zero(l), Default::default());
    }
    let mut b = Builder::new(l, y.lo());
    for d in y.degrees() {
        b.push_term((0..n).flat_map(|_| y.vertices(d)).collect());
    }
    for d in y.lo()..y.hi() {
        let blocks: Vec<AlgMatrix> = (0..n).map(|_| y.diff(d)).collect();
        b.push_diff(AlgMatrix::block_diag(&blocks.iter().collect::<Vec<_>>()));
    }
    b.build_with_perms()
}

/// Splits a complex along the connected components of its differential;
/// every summand not touched by the differential is its own component.
pub fn split_blocks(x: &ProjComplex) -> Vec<ProjComplex> {
    let l = x.lambda();
    if x.is_zero() {
        return Vec::new();
    }
    let degrees: Vec<i32> = x.degrees().collect();
    let mut offset = vec![0usize];
    for &n in &degrees {
        offset.push(offset.last().unwrap() + x.rank(n));
    }
    let total = *offset.last().unwrap();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (k, &n) in degrees[..degrees.len() - 1].iter().enumerate() {
        if let Some(d) = x.diff_ref(n) {
            for (r, c, _) in d.entries() {
                let (a, b) = (
                    find(&mut parent, offset[k + 1] + r),
                    find(&mut parent, offset[k] + c),
                );
                parent[a] = b;
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut comp_of = vec![0usize; total];
    for i in 0..total {
        let r = find(&mut parent, i);
        comp_of[i] = match roots.iter().position(|&x| x == r) {
            Some(c) => c,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
    }
    (0..roots.len())
        .map(|c| {
            let idx: Vec<Vec<usize>> = degrees
                .iter()
                .enumerate()
                .map(|(k, _)| {
                    (0..offset[k + 1] - offset[k])
                        .filter(|&i| comp_of[offset[k] + i] == c)
                        .collect()
                })
                .collect();
            let terms = degrees
                .iter()
                .enumerate()
                .map(|(k, &n)| {
                    let a = idx[k]
                        .iter()
                        .filter(|&&i| x.vertex(n, i) == Vertex::One)
                        .count();
                    (a, idx[k].len() - a)
                })
                .collect();
            let diffs = degrees[..degrees.len() - 1]
                .iter()
                .enumerate()
                .map(|(k, &n)| x.diff(n).select(&idx[k + 1], &idx[k]))
                .collect();
            ProjComplex::new(l, x.lo(), terms, diffs).expect("a block of a complex is a complex")
        })
        .collect()
}

/// Alternating sum `Σ (−1)^n (a_n, b_n)`, the class in the Grothendieck
/// group; equals the g-vector for two-term complexes in degrees −1, 0.
pub fn k0_class(x: &ProjComplex) -> (i64, i64) {
    x.degrees().fold((0, 0), |(g1, g2), n| {
        let (a, b) = x.term(n);
        let s = if n % 2 == 0 { 1 } else { -1 };
        (g1 + s * a as i64, g2 + s * b as i64)
    })
}

/// `(c − a, d − b)` of the minimal representative in degrees −1, 0.
pub fn g_vector(x: &ProjComplex) -> Result<(i64, i64), ComplexError> {
    let m = minimize(x);
    if !m.is_zero() && (m.lo() < -1 || m.hi() > 0) {
        return Err(ComplexError::NotTwoTerm(m.lo(), m.hi()));
    }
    Ok(k0_class(&m))
}

/// Structure constants of `End_K(X)` on a basis of chain-map representatives.
pub fn end_algebra_of(x: &ProjComplex) -> FdAlgebra {
    let l = x.lambda();
    let hc = HomComplex::new(x, x);
    let basis = hc.basis(0);
    let n = basis.dim();
    let reps: Vec<ChainMap> = (0..n).map(|k| basis.rep(k)).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &reps {
        for b in &reps {
            let c = basis
                .coords(&a.compose(&l, b))
                .expect("composite of chain maps is a chain map");
            table.push(SparseVec::from_dense(&c));
        }
    }
    let id = basis
        .coords(&ChainMap::identity(x))
        .expect("identity is a chain map");
    FdAlgebra::new_unchecked(
        (0..n).map(|k| format!("f{k}")).collect(),
        table,
        vec![SparseVec::from_dense(&id)],
    )
    .expect("table has the right shape")
}

/// Whether `End_K(X)/rad` is one-dimensional.
pub fn is_indecomposable(x: &ProjComplex) -> Result<bool, ComplexError> {
    let m = minimize(x);
    if m.is_zero() {
        return Err(ComplexError::ZeroComplex);
    }
    Ok(semisimple_quotient_dimension(&m) == 1)
}

/// `dim End_K(X)/rad End_K(X)`.
pub fn semisimple_quotient_dimension(x: &ProjComplex) -> usize {
    let m = minimize(x);
    if let Some(u) = UpShape::of(&m) {
        return semisimple_quotient_dim(&u);
    }
    if let Some(u) = UpShape::of(&m.transpose()) {
        return semisimple_quotient_dim(&u);
    }
    let e = end_algebra_of(&m);
    e.dim() - e.radical().len()
}

/// Whether `x` and `y` are isomorphic in the homotopy category. Both are
/// minimised; for radical complexes a chain map is a homotopy equivalence
/// exactly when every component is invertible modulo the radical, so a
/// seeded random chain map is tested for that, up to `attempts` times.
pub fn iso_in_homotopy(x: &ProjComplex, y: &ProjComplex, seed: u64) -> bool {
    iso_in_homotopy_with(x, y, seed, 32)
}

pub fn iso_in_homotopy_with(x: &ProjComplex, y: &ProjComplex, seed: u64, attempts: usize) -> bool {
    if x.lambda() != y.lambda() {
        return false;
    }
    let (mx, my) = (minimize(x), minimize(y));
    if mx.is_zero() || my.is_zero() {
        return mx.is_zero() && my.is_zero();
    }
    if mx.lo() != my.lo() || mx.terms_map() != my.terms_map() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let (Some(ux), Some(uy)) = (UpShape::of(&mx), UpShape::of(&my)) {
        let sys = ScalarSystem::new(&ux, &uy);
        let ker = sys.kernel();
        for _ in 0..attempts {
            let v = random_combination(&ker, &mut rng);
            let (f, g) = sys.unpack(&v);
            if f.rank() == f.rows() && g.rank() == g.rows() {
                return true;
            }
        }
        return false;
    }
    let hc = HomComplex::new(&mx, &my);
    let (space, cycles) = hc.cycles(0);
    for _ in 0..attempts {
        let v = random_combination(&cycles, &mut rng);
        let f = space.decode_map(&v);
        if mx.degrees().all(|n| invertible_mod_radical(&f, &mx, n)) {
            return true;
        }
    }
    false
}

/// A two-term complex `P_1^a ⊕ P_2^b → P_1^c ⊕ P_2^d` in degrees −1, 0 whose
/// differential entries are random radical elements with integer
/// coefficients in `[−bound, bound]`.
pub fn random_radical_two_term(
    l: Lambda,
    src: (usize, usize),
    tgt: (usize, usize),
    bound: i64,
    rng: &mut impl Rng,
) -> ProjComplex {
    let (sv, tv) = (vertex_list(src), vertex_list(tgt));
    let mut d = AlgMatrix::zeros(tv.len(), sv.len());
    for (i, &to) in tv.iter().enumerate() {
        for (j, &from) in sv.iter().enumerate() {
            let pairs = l
                .hom_basis(from, to)
                .into_iter()
                .filter(|&b| l.degree(b) > 0)
                .map(|b| (b, Q::from_int(rng.gen_range(-bound..=bound))))
                .collect();
            d.set(i, j, SparseVec::from_pairs(pairs));
        }
    }
    ProjComplex::two_term(l, src, tgt, d)
        .expect("radical differentials square to zero in two terms")
}

fn vertex_list((a, b): (usize, usize)) -> Vec<Vertex> {
    std::iter::repeat(Vertex::One)
        .take(a)
        .chain(std::iter::repeat(Vertex::Two).take(b))
        .collect()
}

fn random_combination(basis: &[SparseVec], rng: &mut ChaCha8Rng) -> SparseVec {
    let mut v = SparseVec::new();
    for b in basis {
        let c = Q::from_int(rng.gen_range(-9..=9));
        v = v.axpy(&c, b);
    }
    v
}

/// The component in degree `n` is square and its idempotent coefficients
/// form invertible matrices at both vertices.
fn invertible_mod_radical(f: &ChainMap, x: &ProjComplex, n: i32) -> bool {
    let (a, b) = x.term(n);
    let m = f.comp(n, a + b, a + b);
    for (v, range) in [(Vertex::One, 0..a), (Vertex::Two, a..a + b)] {
        let k = range.len();
        let mut s = Matrix::zeros(k, k);
        for (i, r) in range.clone().enumerate() {
            for (j, c) in range.clone().enumerate() {
                if let Some(e) = m.get(r, c) {
                    s[(i, j)] = e.get(v.index());
                }
            }
        }
        if s.rank() != k {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Lambda;

    fn c1(l: Lambda) -> ProjComplex {
        let mut d = AlgMatrix::zeros(l.p, 1);
        for i in 0..l.p {
            d.set(i, 0, SparseVec::unit(l.alpha(i)));
        }
        ProjComplex::two_term(l, (1, 0), (0, l.p), d).unwrap()
    }

    #[test]
    fn g_vectors() {
        let l = Lambda::new(3, 2).unwrap();
        assert_eq!(
            g_vector(&ProjComplex::projective(l, Vertex::One, 0)).unwrap(),
            (1, 0)
        );
        assert_eq!(
            g_vector(&ProjComplex::projective(l, Vertex::Two, 0)).unwrap(),
            (0, 1)
        );
        assert_eq!(
            g_vector(&ProjComplex::projective(l, Vertex::One, -1)).unwrap(),
            (-1, 0)
        );
        assert_eq!(g_vector(&c1(l)).unwrap(), (-1, 3));
        assert!(matches!(
            g_vector(&c1(l).shift(1)),
            Err(ComplexError::NotTwoTerm(-2, -1))
        ));
    }

    #[test]
    fn indecomposability() {
        let l = Lambda::new(2, 2).unwrap();
        assert!(is_indecomposable(&ProjComplex::projective(l, Vertex::One, 0)).unwrap());
        assert!(!is_indecomposable(&ProjComplex::regular(l)).unwrap());
        assert!(is_indecomposable(&c1(l)).unwrap());
        assert!(!is_indecomposable(&ProjComplex::direct_sum(&[&c1(l), &c1(l)])).unwrap());
        assert!(matches!(
            is_indecomposable(&ProjComplex::zero(l)),
            Err(ComplexError::ZeroComplex)
        ));
    }

    #[test]
    fn general_and_fast_quotients_agree() {
        let l = Lambda::new(2, 1).unwrap();
        for x in [
            c1(l),
            ProjComplex::direct_sum(&[&c1(l), &c1(l)]),
            ProjComplex::stalk(l, 0, 3, 0),
        ] {
            let e = end_algebra_of(&x);
            assert_eq!(
                semisimple_quotient_dimension(&x),
                e.dim() - e.radical().len()
            );
        }
    }

    #[test]
    fn cone_of_zero_map() {
        let l = Lambda::new(2, 1).unwrap();
        let x = c1(l);
        let y = ProjComplex::projective(l, Vertex::Two, 0);
        let c = cone(&x, &y, &ChainMap::zero(0)).unwrap();
        assert!(iso_in_homotopy(
            &c,
            &ProjComplex::direct_sum(&[&x.shift(1), &y]),
            1
        ));
    }

    #[test]
    fn cone_rejects_non_chain_maps() {
        let l = Lambda::new(1, 1).unwrap();
        let x = c1(l);
        let mut f = ChainMap::zero(0);
        // a map P_1 → P_1 in degree −1 alone does not commute with α
        let mut m = AlgMatrix::zeros(1, 1);
        m.set(0, 0, SparseVec::unit(0));
        f.comps.insert(-1, m);
        assert!(matches!(cone(&x, &x, &f), Err(ComplexError::NotAChainMap)));
    }

    #[test]
    fn iso_checks() {
        let l = Lambda::new(2, 1).unwrap();
        let x = c1(l);
        assert!(iso_in_homotopy(&x, &x, 0));
        let p1 = ProjComplex::projective(l, Vertex::One, 0);
        let p2 = ProjComplex::projective(l, Vertex::Two, 0);
        assert!(!iso_in_homotopy(&p1, &p2, 0));
        // a different basis of A_1 gives an isomorphic complex
        let mut d = AlgMatrix::zeros(2, 1);
        d.set(
            0,
            0,
            SparseVec::from_pairs(vec![(l.alpha(0), Q::ONE), (l.alpha(1), Q::ONE)]),
        );
        d.set(
            1,
            0,
            SparseVec::from_pairs(vec![(l.alpha(1), Q::from_int(-1))]),
        );
        let y = ProjComplex::two_term(l, (1, 0), (0, 2), d).unwrap();
        assert!(iso_in_homotopy(&x, &y, 3));
        // but (α1; 0) ⊕ stuff is not
        let mut d = AlgMatrix::zeros(2, 1);
        d.set(0, 0, SparseVec::unit(l.alpha(0)));
        let z = ProjComplex::two_term(l, (1, 0), (0, 2), d).unwrap();
        assert!(!iso_in_homotopy(&x, &z, 3));
    }
}
