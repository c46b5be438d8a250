//! The complexes `C_m`, their duals `C_m^*`, the transposed families `C̄_m`
//! and `C̄_m^*`, and the closed-form lists of basic silting complexes.

use serde::{Deserialize, Serialize};

use super::tower::{build_tower, AmTower};
use super::SiltingError;
use crate::algebra::{AlgMatrix, Lambda, Vertex};
use crate::complexes::twoterm::UpShape;
use crate::complexes::{GVector, ProjComplex};
use crate::linalg::SparseVec;

/// `C_m = (A_{m−1} ⊗ P_1 → A_m ⊗ P_2)` with differential `Σ_k κ_{m−1,k} ⊗ α_k`;
/// `C_{−1} = P_1`.
pub fn make_c(m: i64, tower: &AmTower, l: Lambda) -> Result<ProjComplex, SiltingError> {
    if m < -1 {
        return Err(SiltingError::Index(m));
    }
    if tower.p != l.p {
        return Err(SiltingError::TowerMismatch {
            tower: tower.p,
            algebra: l.p,
        });
    }
    if m == -1 {
        return Ok(ProjComplex::projective(l, Vertex::One, 0));
    }
    if m as usize > tower.depth() + 1 {
        return Err(SiltingError::Depth(m as usize));
    }
    let (a, b) = (tower.dim(m - 1), tower.dim(m));
    let mut d = AlgMatrix::zeros(b, a);
    for k in 0..l.p {
        let kk = tower.kappa(m - 1, k);
        for r in 0..b {
            for c in 0..a {
                let x = &kk[(r, c)];
                if !x.is_zero() {
                    d.add_to(r, c, &SparseVec::from_pairs(vec![(l.alpha(k), x.clone())]));
                }
            }
        }
    }
    Ok(ProjComplex::two_term(l, (a, 0), (0, b), d)?)
}

/// `(P_1^a --W--> P_2^b)^* = (P_1^b --W^T--> P_2^a)`, both in degrees −1, 0.
pub fn dual_star(x: &ProjComplex) -> Result<ProjComplex, SiltingError> {
    let l = x.lambda();
    let shape = UpShape::of(x)
        .filter(|u| u.k == 0)
        .ok_or(SiltingError::NotUpShape)?;
    let d = x
        .diff_ref(-1)
        .cloned()
        .unwrap_or_else(|| AlgMatrix::zeros(shape.b, shape.a));
    Ok(ProjComplex::two_term(
        l,
        (shape.b, 0),
        (0, shape.a),
        d.transpose(),
    )?)
}

/// `Hom_Λ(−, Λ)` degreewise, landing over the opposite algebra.
pub fn transpose_to_opposite(x: &ProjComplex) -> ProjComplex {
    x.transpose()
}

/// `C̄_m`: the transpose of `C_m^{q,p}[−1]`, i.e.
/// `(A^{q,p}_m)^* ⊗ P_2 → (A^{q,p}_{m−1})^* ⊗ P_1`.
pub fn make_c_bar(m: i64, tower_qp: &AmTower, l: Lambda) -> Result<ProjComplex, SiltingError> {
    Ok(make_c(m, tower_qp, l.opposite())?.shift(-1).transpose())
}

/// `C̄_m^* = (A^{q,p}_{m−1} ⊗ P_2 → A^{q,p}_m ⊗ P_1)`, the transpose of
/// `(C_m^{q,p})^*` shifted by one.
pub fn make_c_bar_star(m: i64, tower_qp: &AmTower, l: Lambda) -> Result<ProjComplex, SiltingError> {
    Ok(dual_star(&make_c(m, tower_qp, l.opposite())?)?
        .transpose()
        .shift(1))
}

/// The algebra derived equivalent to `Λ^{p,q}` through a silting node,
/// as written in the cone of the fan picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeAlgebra {
    /// `Λ^{p,q}_m`; `m = 0` is `Λ^{p,q}` itself.
    Lambda { p: usize, q: usize, m: usize },
    /// `(Λ^{p,q}_m)^op`.
    LambdaOp { p: usize, q: usize, m: usize },
    /// The graded `(p+q)`-Kronecker algebra `δ_{p,q}`.
    Delta { p: usize, q: usize },
}

impl ConeAlgebra {
    /// `(Λ^{p,q}_0)^op = Λ^{q,p}`, so the `m = 0` cases are normalised.
    pub fn lambda(p: usize, q: usize, m: usize) -> ConeAlgebra {
        ConeAlgebra::Lambda { p, q, m }
    }

    pub fn lambda_op(p: usize, q: usize, m: usize) -> ConeAlgebra {
        if m == 0 {
            ConeAlgebra::Lambda { p: q, q: p, m: 0 }
        } else {
            ConeAlgebra::LambdaOp { p, q, m }
        }
    }

    /// The opposite algebra; graded Kronecker algebras are self-opposite.
    pub fn op(self) -> ConeAlgebra {
        match self {
            ConeAlgebra::Lambda { p, q, m } => ConeAlgebra::lambda_op(p, q, m),
            ConeAlgebra::LambdaOp { p, q, m } => ConeAlgebra::Lambda { p, q, m },
            d => d,
        }
    }
}

impl std::fmt::Display for ConeAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            ConeAlgebra::Lambda { p, q, m: 0 } => write!(f, "Λ^{{{p},{q}}}"),
            ConeAlgebra::Lambda { p, q, m } => write!(f, "Λ^{{{p},{q}}}_{m}"),
            ConeAlgebra::LambdaOp { p, q, m } => write!(f, "(Λ^{{{p},{q}}}_{m})^op"),
            ConeAlgebra::Delta { p, q } => write!(f, "δ_{{{p},{q}}}"),
        }
    }
}

/// Where a closed-form node sits relative to the two roots of the walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedNode {
    /// Names of the two summands, as on the rays of the fan picture.
    pub names: [String; 2],
    pub algebra: ConeAlgebra,
    pub summands: [ProjComplex; 2],
    pub g: [GVector; 2],
    /// Mutation distance from `Λ` and from `Λ[1]` along the family.
    pub from_lambda: Option<usize>,
    pub from_shift: Option<usize>,
}

impl ClosedNode {
    fn new(
        names: [&str; 2],
        algebra: ConeAlgebra,
        x0: ProjComplex,
        x1: ProjComplex,
        from_lambda: Option<usize>,
        from_shift: Option<usize>,
    ) -> Self {
        let g = [
            crate::complexes::k0_class(&x0),
            crate::complexes::k0_class(&x1),
        ];
        let names = names.map(String::from);
        ClosedNode {
            names,
            algebra,
            summands: [x0, x1],
            g,
            from_lambda,
            from_shift,
        }
    }

    pub fn depth(&self) -> usize {
        self.from_lambda
            .unwrap_or(usize::MAX)
            .min(self.from_shift.unwrap_or(usize::MAX))
    }

    /// Unordered g-vector pair, sorted.
    pub fn key(&self) -> [GVector; 2] {
        pair_key(self.g[0], self.g[1])
    }

    pub fn label(&self) -> String {
        format!("{}+{}", self.names[0], self.names[1])
    }

    fn mirrored(self, l: Lambda) -> ClosedNode {
        // Hom(−[−1], Λ^{q,p}): a node of stilt_{q,p} becomes one over Λ^{p,q};
        // distances from Λ' and Λ'[1] become distances from Λ[1] and Λ.
        let [x0, x1] = self.summands;
        let t = |x: ProjComplex| x.shift(-1).transpose();
        let names = self.names.clone().map(|n| bar_name(&n));
        let (y0, y1) = (t(x0), t(x1));
        debug_assert_eq!(y0.lambda(), l);
        // End(Hom(X, Λ)) = End(X)^op
        let names = [names[0].as_str(), names[1].as_str()];
        ClosedNode::new(
            names,
            self.algebra.op(),
            y0,
            y1,
            self.from_shift,
            self.from_lambda,
        )
    }
}

pub fn pair_key(a: GVector, b: GVector) -> [GVector; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// `stilt_{p,q}` with families indexed up to `m ≤ depth`.
pub fn stilt(l: Lambda, depth: usize) -> Result<Vec<ClosedNode>, SiltingError> {
    let p1 = ProjComplex::projective(l, Vertex::One, 0);
    let p2 = ProjComplex::projective(l, Vertex::Two, 0);
    let p1s = ProjComplex::projective(l, Vertex::One, -1);
    let (p, q) = (l.p, l.q);
    let delta = ConeAlgebra::Delta { p, q };
    let mut out = vec![ClosedNode::new(
        ["P1", "P2"],
        ConeAlgebra::lambda(p, q, 0),
        p1.clone(),
        p2.clone(),
        Some(0),
        None,
    )];
    match l.p {
        0 => {
            let p2_p1s = ClosedNode::new(["P2", "P1[1]"], delta, p2, p1s, Some(1), Some(1));
            out.push(p2_p1s);
        }
        1 => {
            let mut d = AlgMatrix::zeros(1, 1);
            d.set(0, 0, SparseVec::unit(l.alpha(0)));
            let c1 = ProjComplex::two_term(l, (1, 0), (0, 1), d)?;
            out.push(ClosedNode::new(
                ["P2", "C1"],
                ConeAlgebra::lambda(p, q, 1),
                p2,
                c1.clone(),
                Some(1),
                None,
            ));
            out.push(ClosedNode::new(
                ["C1", "P1[1]"],
                delta,
                c1,
                p1s,
                None,
                Some(1),
            ));
        }
        _ => {
            let tower = build_tower(p, depth.max(1))?;
            let cs: Vec<ProjComplex> = (-1..=depth as i64)
                .map(|m| make_c(m, &tower, l))
                .collect::<Result<_, _>>()?;
            let c = |m: i64| &cs[(m + 1) as usize];
            for m in 1..=depth as i64 {
                let a = ConeAlgebra::lambda(p, q, m as usize);
                out.push(ClosedNode::new(
                    [&c_name(m - 1), &c_name(m)],
                    a,
                    c(m - 1).clone(),
                    c(m).clone(),
                    Some(m as usize),
                    None,
                ));
            }
            for m in 1..=depth as i64 {
                let (s0, s1) = (dual_star(c(m - 1))?, dual_star(c(m))?);
                let names = [
                    if m == 1 {
                        "P1[1]".to_string()
                    } else {
                        format!("C{}*", m - 1)
                    },
                    format!("C{m}*"),
                ];
                let a = if m == 1 {
                    delta
                } else {
                    ConeAlgebra::lambda_op(p, q, m as usize - 2)
                };
                // C_0^* = P_1[1] is a summand of Λ[1]'s first mutation
                out.push(ClosedNode::new(
                    [&names[0], &names[1]],
                    a,
                    s0,
                    s1,
                    None,
                    Some(m as usize),
                ));
            }
        }
    }
    Ok(out)
}

/// `stilt_{p,q} ∪ bar-stilt_{q,p}` up to `depth`, deduplicated by g-vector
/// pair and keeping the smallest depth.
pub fn closed_form_nodes(l: Lambda, depth: usize) -> Result<Vec<ClosedNode>, SiltingError> {
    let mut all = stilt(l, depth)?;
    for n in stilt(l.opposite(), depth)? {
        all.push(n.mirrored(l));
    }
    let mut out: Vec<ClosedNode> = Vec::new();
    for n in all {
        match out.iter_mut().find(|m| m.key() == n.key()) {
            Some(m) => {
                m.from_lambda = min_opt(m.from_lambda, n.from_lambda);
                m.from_shift = min_opt(m.from_shift, n.from_shift);
            }
            None => out.push(n),
        }
    }
    out.retain(|n| n.depth() <= depth);
    Ok(out)
}

fn c_name(m: i64) -> String {
    match m {
        -1 => "P1".into(),
        0 => "P2".into(),
        m => format!("C{m}"),
    }
}

/// Name of `Hom(X[−1], Λ)` for a complex named `name` over the opposite
/// algebra.
fn bar_name(name: &str) -> String {
    match name {
        "P1" => "P1[1]".into(),
        "P2" => "P2[1]".into(),
        "P1[1]" => "P1".into(),
        "P2[1]" => "P2".into(),
        n => format!("bar{n}"),
    }
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{g_vector, is_indecomposable};

    #[test]
    fn first_complexes() {
        let l = Lambda::new(2, 1).unwrap();
        let t = build_tower(2, 3).unwrap();
        assert_eq!(
            make_c(0, &t, l).unwrap(),
            ProjComplex::projective(l, Vertex::Two, 0)
        );
        assert_eq!(
            make_c(-1, &t, l).unwrap(),
            ProjComplex::projective(l, Vertex::One, 0)
        );
        let c1 = make_c(1, &t, l).unwrap();
        let mut d = AlgMatrix::zeros(2, 1);
        d.set(0, 0, SparseVec::unit(l.alpha(0)));
        d.set(1, 0, SparseVec::unit(l.alpha(1)));
        assert_eq!(c1, ProjComplex::two_term(l, (1, 0), (0, 2), d).unwrap());
        assert_eq!(g_vector(&make_c(2, &t, l).unwrap()).unwrap(), (-2, 3));
        assert!(matches!(make_c(-2, &t, l), Err(SiltingError::Index(-2))));
        for m in 0..=4 {
            assert!(is_indecomposable(&make_c(m, &t, l).unwrap()).unwrap());
        }
    }

    #[test]
    fn stars() {
        let l = Lambda::new(2, 1).unwrap();
        let t = build_tower(2, 3).unwrap();
        let c0 = make_c(0, &t, l).unwrap();
        assert_eq!(
            dual_star(&c0).unwrap(),
            ProjComplex::projective(l, Vertex::One, -1)
        );
        for m in 0..=3 {
            let c = make_c(m, &t, l).unwrap();
            assert_eq!(dual_star(&dual_star(&c).unwrap()).unwrap(), c);
        }
        let c1s = dual_star(&make_c(1, &t, l).unwrap()).unwrap();
        assert_eq!(
            c1s.terms_map().into_iter().collect::<Vec<_>>(),
            vec![(-1, (2, 0)), (0, (0, 1))]
        );
        assert!(dual_star(&ProjComplex::projective(l, Vertex::One, 0)).is_err());
    }

    #[test]
    fn bar_shapes() {
        let l = Lambda::new(1, 3).unwrap();
        let t = build_tower(3, 3).unwrap();
        let cb = make_c_bar(2, &t, l).unwrap();
        // (A_2)^* ⊗ P_2 → (A_1)^* ⊗ P_1 in degrees −1, 0
        assert_eq!(
            cb.terms_map().into_iter().collect::<Vec<_>>(),
            vec![(-1, (0, 8)), (0, (3, 0))]
        );
        let cbs = make_c_bar_star(2, &t, l).unwrap();
        assert_eq!(
            cbs.terms_map().into_iter().collect::<Vec<_>>(),
            vec![(-1, (0, 3)), (0, (8, 0))]
        );
    }

    #[test]
    fn closed_lists() {
        let l = Lambda::new(1, 1).unwrap();
        let nodes = closed_form_nodes(l, 6).unwrap();
        assert_eq!(nodes.len(), 6);
        let l = Lambda::new(2, 2).unwrap();
        let nodes = closed_form_nodes(l, 2).unwrap();
        // Λ, Λ[1], and two nodes per family at distance 1 and 2
        assert_eq!(nodes.len(), 2 + 4 * 2);
    }
}
