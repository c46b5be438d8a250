use super::AlgebraError;
use crate::linalg::{sparse, Echelon, Matrix, SparseVec, Q};

/// A finite-dimensional algebra given by structure constants on a basis,
/// together with a complete set of orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    labels: Vec<String>,
    /// `table[x * dim + y]` is the product of basis elements `x · y`.
    table: Vec<SparseVec>,
    idempotents: Vec<SparseVec>,
}

impl FdAlgebra {
    /// Validates associativity on all basis triples and the idempotent data.
    pub fn new(
        labels: Vec<String>,
        table: Vec<SparseVec>,
        idempotents: Vec<SparseVec>,
    ) -> Result<FdAlgebra, AlgebraError> {
        let a = FdAlgebra::new_unchecked(labels, table, idempotents)?;
        a.check_associative()?;
        a.check_idempotents()?;
        Ok(a)
    }

    /// Only shape checks; callers vouch for the algebra axioms.
    pub fn new_unchecked(
        labels: Vec<String>,
        table: Vec<SparseVec>,
        idempotents: Vec<SparseVec>,
    ) -> Result<FdAlgebra, AlgebraError> {
        let n = labels.len();
        if table.len() != n * n {
            return Err(AlgebraError::Shape(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if table
            .iter()
            .chain(&idempotents)
            .any(|v| v.entries().iter().any(|(c, _)| *c >= n))
        {
            return Err(AlgebraError::Shape("basis index out of range".into()));
        }
        Ok(FdAlgebra {
            labels,
            table,
            idempotents,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn idempotents(&self) -> &[SparseVec] {
        &self.idempotents
    }

    pub fn basis_product(&self, x: usize, y: usize) -> &SparseVec {
        &self.table[x * self.dim() + y]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (a, ca) in x.entries() {
            for (b, cb) in y.entries() {
                let c = ca * cb;
                for (z, cz) in self.basis_product(*a, *b).entries() {
                    pairs.push((*z, &c * cz));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn unit(&self) -> SparseVec {
        self.idempotents
            .iter()
            .fold(SparseVec::new(), |acc, e| acc.add(e))
    }

    /// Exhaustive over basis triples; triples with `xy = 0` and `yz = 0`
    /// are skipped since both sides vanish there.
    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let nonzero = |x: usize| (0..n).filter(move |&y| !self.basis_product(x, y).is_zero());
        for x in 0..n {
            for y in nonzero(x) {
                for z in 0..n {
                    self.check_triple(x, y, z)?;
                }
            }
        }
        for y in 0..n {
            for z in nonzero(y) {
                for x in 0..n {
                    if self.basis_product(x, y).is_zero() {
                        self.check_triple(x, y, z)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn check_triple(&self, x: usize, y: usize, z: usize) -> Result<(), AlgebraError> {
        let lhs = self.mul(self.basis_product(x, y), &SparseVec::unit(z));
        let rhs = self.mul(&SparseVec::unit(x), self.basis_product(y, z));
        if lhs != rhs {
            return Err(AlgebraError::NotAssociative(x, y, z));
        }
        Ok(())
    }

    pub fn check_idempotents(&self) -> Result<(), AlgebraError> {
        for (i, e) in self.idempotents.iter().enumerate() {
            for (j, f) in self.idempotents.iter().enumerate() {
                let ef = self.mul(e, f);
                let expected = if i == j { e.clone() } else { SparseVec::new() };
                if ef != expected {
                    return Err(AlgebraError::BadIdempotents(format!(
                        "e{i} e{j} has the wrong value"
                    )));
                }
            }
        }
        let one = self.unit();
        for b in 0..self.dim() {
            let x = SparseVec::unit(b);
            if self.mul(&one, &x) != x || self.mul(&x, &one) != x {
                return Err(AlgebraError::BadIdempotents(
                    "idempotents do not sum to the unit".into(),
                ));
            }
        }
        Ok(())
    }

    /// Trace of left multiplication by each basis element.
    fn traces(&self) -> Vec<Q> {
        let n = self.dim();
        (0..n)
            .map(|b| {
                (0..n)
                    .map(|w| self.basis_product(b, w).get(w))
                    .fold(Q::ZERO, |a, x| a + x)
            })
            .collect()
    }

    /// Basis of the Jacobson radical as the radical of the trace form
    /// `tr(L_x L_y)`, valid in characteristic zero.
    pub fn radical(&self) -> Vec<SparseVec> {
        let n = self.dim();
        let t = self.traces();
        let mut form = Matrix::zeros(n, n);
        for x in 0..n {
            for y in 0..n {
                form[(x, y)] = self
                    .basis_product(x, y)
                    .entries()
                    .iter()
                    .fold(Q::ZERO, |acc, (z, c)| acc + c * &t[*z]);
            }
        }
        let k = form.nullspace();
        (0..k.cols())
            .map(|j| SparseVec::from_dense(&k.col(j)))
            .collect()
    }

    /// Dimension of the centre of `A / rad A`: the number of simple factors
    /// when the quotient is split.
    pub fn center_mod_radical_dim(&self) -> usize {
        let n = self.dim();
        let rad = self.radical();
        let mut ech = Echelon::new();
        for r in &rad {
            ech.insert(r.clone());
        }
        let images: Vec<SparseVec> = (0..n)
            .map(|b| {
                let x = SparseVec::unit(b);
                let mut pairs = Vec::new();
                for j in 0..n {
                    let y = SparseVec::unit(j);
                    let c = ech.reduce(&self.mul(&x, &y).sub(&self.mul(&y, &x)));
                    pairs.extend(c.entries().iter().map(|(k, v)| (j * n + k, v.clone())));
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        n - sparse::rank(images) - rad.len()
    }

    /// Which corner `e_i A e_j` each basis element lies in, if any.
    pub fn corners(&self) -> Vec<Option<(usize, usize)>> {
        (0..self.dim())
            .map(|b| {
                let x = SparseVec::unit(b);
                for (i, e) in self.idempotents.iter().enumerate() {
                    let ex = self.mul(e, &x);
                    if ex != x {
                        continue;
                    }
                    for (j, f) in self.idempotents.iter().enumerate() {
                        if self.mul(&ex, f) == x {
                            return Some((i, j));
                        }
                    }
                }
                None
            })
            .collect()
    }

    /// Radical of a basic algebra whose basis is adapted to the idempotents:
    /// every off-diagonal corner together with the radicals of the local
    /// corner rings. Much cheaper than [`FdAlgebra::radical`] on large
    /// algebras since only the diagonal corners need a trace form.
    pub fn radical_basic(&self) -> Result<Vec<SparseVec>, AlgebraError> {
        let corners = self.corners();
        if corners.iter().any(|c| c.is_none()) {
            return Err(AlgebraError::NotBasic(
                "basis not adapted to idempotents".into(),
            ));
        }
        let mut out = Vec::new();
        for i in 0..self.idempotents.len() {
            let local: Vec<usize> = (0..self.dim())
                .filter(|&b| corners[b] == Some((i, i)))
                .collect();
            let pos = |b: usize| local.iter().position(|&x| x == b).unwrap();
            let m = local.len();
            // trace of left multiplication inside the corner ring
            let tr: Vec<Q> = local
                .iter()
                .map(|&b| {
                    local
                        .iter()
                        .fold(Q::ZERO, |a, &w| a + self.basis_product(b, w).get(w))
                })
                .collect();
            let mut form = Matrix::zeros(m, m);
            for (xi, &x) in local.iter().enumerate() {
                for (yi, &y) in local.iter().enumerate() {
                    form[(xi, yi)] = self
                        .basis_product(x, y)
                        .entries()
                        .iter()
                        .fold(Q::ZERO, |acc, (z, c)| acc + c * &tr[pos(*z)]);
                }
            }
            let k = form.nullspace();
            if m - k.cols() != 1 {
                return Err(AlgebraError::NotBasic(format!(
                    "corner ring {i} has semisimple quotient of dim {}",
                    m - k.cols()
                )));
            }
            for j in 0..k.cols() {
                out.push(SparseVec::from_pairs(
                    k.col(j)
                        .into_iter()
                        .enumerate()
                        .map(|(r, c)| (local[r], c))
                        .collect(),
                ));
            }
        }
        for (b, c) in corners.iter().enumerate() {
            let (i, j) = c.unwrap();
            if i != j {
                out.push(SparseVec::unit(b));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Lambda;

    #[test]
    fn radical_of_lambda11() {
        let a = Lambda::new(1, 1).unwrap().to_fd();
        let r = a.radical();
        assert_eq!(r.len(), 3);
        // spans α, β, αβ: all vanish on e1, e2
        for v in &r {
            assert!(v.get(0).is_zero() && v.get(1).is_zero());
        }
    }

    #[test]
    fn centre_counts_simple_factors() {
        assert_eq!(
            Lambda::new(2, 1).unwrap().to_fd().center_mod_radical_dim(),
            2
        );
        // the 2 × 2 matrices have a one-dimensional centre
        let mut table = vec![SparseVec::new(); 16];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    table[(i * 2 + j) * 4 + j * 2 + k] = SparseVec::unit(i * 2 + k);
                }
            }
        }
        let m2 = FdAlgebra::new(
            (0..4).map(|i| format!("E{i}")).collect(),
            table,
            vec![SparseVec::unit(0), SparseVec::unit(3)],
        )
        .unwrap();
        assert!(m2.radical().is_empty());
        assert_eq!(m2.center_mod_radical_dim(), 1);
    }

    #[test]
    fn radical_of_field_is_empty() {
        let a = FdAlgebra::new(
            vec!["1".into()],
            vec![SparseVec::unit(0)],
            vec![SparseVec::unit(0)],
        )
        .unwrap();
        assert!(a.radical().is_empty());
    }

    #[test]
    fn radical_cubes_to_zero() {
        for (p, q) in [(1, 2), (2, 2), (3, 1)] {
            let l = Lambda::new(p, q).unwrap();
            let a = l.to_fd();
            let r = a.radical();
            assert_eq!(r.len(), p + q + p * q);
            assert_eq!(sparse::rank(a.radical_basic().unwrap()), r.len());
            let mut r2 = Vec::new();
            for x in &r {
                for y in &r {
                    r2.push(a.mul(x, y));
                }
            }
            assert_eq!(sparse::rank(r2.clone()), p * q);
            for x in &r2 {
                for y in &r {
                    assert!(a.mul(x, y).is_zero());
                }
            }
        }
    }

    #[test]
    fn non_associative_rejected() {
        // basis {1, x} with x·x = 1 but 1·x = 0: broken unit
        let table = vec![
            SparseVec::unit(0),
            SparseVec::new(),
            SparseVec::unit(1),
            SparseVec::unit(0),
        ];
        let r = FdAlgebra::new(
            vec!["1".into(), "x".into()],
            table,
            vec![SparseVec::unit(0)],
        );
        assert!(r.is_err());
    }
}
