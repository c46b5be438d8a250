use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ComplexError;
use crate::algebra::{AlgMatrix, Elem, Lambda, Vertex};
use crate::linalg::{SparseVec, Q};

/// A bounded complex of projectives `⊕_n (P_1^{a_n} ⊕ P_2^{b_n})` with
/// differential of degree one. Within each term the `P_1` summands come
/// first. `diffs[k]` maps the term in degree `lo + k` to degree `lo + k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjComplex {
    lambda: Lambda,
    lo: i32,
    terms: Vec<(usize, usize)>,
    diffs: Vec<AlgMatrix>,
}

impl ProjComplex {
    /// Validates shapes, that every entry lives in the right Hom space, and
    /// `d ∘ d = 0`. Zero terms at either end are trimmed.
    pub fn new(
        lambda: Lambda,
        lo: i32,
        terms: Vec<(usize, usize)>,
        diffs: Vec<AlgMatrix>,
    ) -> Result<ProjComplex, ComplexError> {
        if terms.len() > 1 && diffs.len() != terms.len() - 1
            || terms.len() <= 1 && !diffs.is_empty()
        {
            return Err(ComplexError::Shape(format!(
                "{} terms need {} differentials",
                terms.len(),
                terms.len().saturating_sub(1)
            )));
        }
        let x = ProjComplex {
            lambda,
            lo,
            terms,
            diffs,
        };
        x.validate()?;
        Ok(x.trimmed())
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for (k, d) in self.diffs.iter().enumerate() {
            let (src, tgt) = (self.terms[k], self.terms[k + 1]);
            if d.rows() != tgt.0 + tgt.1 || d.cols() != src.0 + src.1 {
                return Err(ComplexError::Shape(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    self.lo + k as i32,
                    d.rows(),
                    d.cols(),
                    tgt.0 + tgt.1,
                    src.0 + src.1
                )));
            }
            let rv: Vec<usize> = vertex_list(tgt).iter().map(|v| v.index()).collect();
            let cv: Vec<usize> = vertex_list(src).iter().map(|v| v.index()).collect();
            if d.entries()
                .any(|(_, _, x)| x.entries().iter().any(|(b, _)| *b >= self.lambda.dim()))
            {
                return Err(ComplexError::Shape(
                    "coefficient index outside the algebra".into(),
                ));
            }
            if !d.entries_well_placed(&self.lambda, &rv, &cv) {
                return Err(ComplexError::Misplaced(self.lo + k as i32));
            }
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k]
                .mul(&self.lambda, &self.diffs[k - 1])
                .is_zero()
            {
                return Err(ComplexError::NotAComplex(self.lo + k as i32 - 1));
            }
        }
        Ok(())
    }

    pub(crate) fn new_unchecked(
        lambda: Lambda,
        lo: i32,
        terms: Vec<(usize, usize)>,
        diffs: Vec<AlgMatrix>,
    ) -> ProjComplex {
        let x = ProjComplex {
            lambda,
            lo,
            terms,
            diffs,
        };
        debug_assert!(x.validate().is_ok(), "{:?}", x.validate());
        x.trimmed()
    }

    fn trimmed(mut self) -> ProjComplex {
        while let Some(&(a, b)) = self.terms.last() {
            if a + b != 0 {
                break;
            }
            self.terms.pop();
            self.diffs.pop();
        }
        let lead = self.terms.iter().take_while(|&&(a, b)| a + b == 0).count();
        if lead > 0 {
            self.terms.drain(..lead);
            self.diffs.drain(..lead.min(self.diffs.len()));
            self.lo += lead as i32;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn zero(lambda: Lambda) -> ProjComplex {
        ProjComplex {
            lambda,
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `P_1^a ⊕ P_2^b` concentrated in one degree.
    pub fn stalk(lambda: Lambda, a: usize, b: usize, degree: i32) -> ProjComplex {
        ProjComplex {
            lambda,
            lo: degree,
            terms: vec![(a, b)],
            diffs: Vec::new(),
        }
        .trimmed()
    }

    pub fn projective(lambda: Lambda, v: Vertex, degree: i32) -> ProjComplex {
        match v {
            Vertex::One => ProjComplex::stalk(lambda, 1, 0, degree),
            Vertex::Two => ProjComplex::stalk(lambda, 0, 1, degree),
        }
    }

    /// The regular module `Λ = P_1 ⊕ P_2` in degree 0.
    pub fn regular(lambda: Lambda) -> ProjComplex {
        ProjComplex::stalk(lambda, 1, 1, 0)
    }

    /// Two-term complex `P_1^a ⊕ P_2^b → P_1^c ⊕ P_2^d` in degrees −1, 0.
    pub fn two_term(
        lambda: Lambda,
        src: (usize, usize),
        tgt: (usize, usize),
        d: AlgMatrix,
    ) -> Result<ProjComplex, ComplexError> {
        ProjComplex::new(lambda, -1, vec![src, tgt], vec![d])
    }

    pub fn lambda(&self) -> Lambda {
        self.lambda
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest nonzero degree (`lo − 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// Number of degrees between the extreme nonzero terms, plus one.
    pub fn span(&self) -> usize {
        self.terms.len()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn term(&self, n: i32) -> (usize, usize) {
        if n < self.lo || n > self.hi() {
            return (0, 0);
        }
        self.terms[(n - self.lo) as usize]
    }

    pub fn rank(&self, n: i32) -> usize {
        let (a, b) = self.term(n);
        a + b
    }

    pub fn vertices(&self, n: i32) -> Vec<Vertex> {
        vertex_list(self.term(n))
    }

    pub fn vertex(&self, n: i32, k: usize) -> Vertex {
        if k < self.term(n).0 {
            Vertex::One
        } else {
            Vertex::Two
        }
    }

    /// Differential from degree `n` to `n + 1` (a zero matrix of the right
    /// shape outside the stored range).
    pub fn diff(&self, n: i32) -> AlgMatrix {
        match self.diff_ref(n) {
            Some(d) => d.clone(),
            None => AlgMatrix::zeros(self.rank(n + 1), self.rank(n)),
        }
    }

    pub fn diff_ref(&self, n: i32) -> Option<&AlgMatrix> {
        if n < self.lo || n >= self.hi() {
            return None;
        }
        Some(&self.diffs[(n - self.lo) as usize])
    }

    pub fn terms_map(&self) -> BTreeMap<i32, (usize, usize)> {
        self.degrees().map(|n| (n, self.term(n))).collect()
    }

    /// Total multiplicities `(Σ a_n, Σ b_n)`.
    pub fn total_multiplicities(&self) -> (usize, usize) {
        self.terms
            .iter()
            .fold((0, 0), |(x, y), &(a, b)| (x + a, y + b))
    }

    /// `X[r]`: `X[r]_n = X_{n+r}` with differential `(−1)^r d`.
    pub fn shift(&self, r: i32) -> ProjComplex {
        let diffs = if r % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.neg()).collect()
        };
        let lo = if self.is_zero() { 0 } else { self.lo - r };
        ProjComplex {
            lambda: self.lambda,
            lo,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// `Hom_Λ(−, Λ)` applied degreewise, read over the opposite algebra
    /// `Λ^{q,p}`: the term in degree `n` is the dual of `X_{−n}` and the
    /// differential is the transpose with arrows renamed `α ↔ β`.
    pub fn transpose(&self) -> ProjComplex {
        let l = self.lambda;
        let op = l.opposite();
        if self.is_zero() {
            return ProjComplex::zero(op);
        }
        let terms = (-self.hi()..=-self.lo).map(|n| self.term(-n)).collect();
        let diffs = (-self.hi()..-self.lo)
            .map(|n| {
                self.diff(-n - 1)
                    .transpose()
                    .map_entries(|x| l.to_opposite(x))
            })
            .collect();
        ProjComplex::new_unchecked(op, -self.hi(), terms, diffs)
    }

    /// Direct sum; in each degree the `P_1` summands of all parts come first,
    /// each group in the order of the parts.
    pub fn direct_sum(parts: &[&ProjComplex]) -> ProjComplex {
        let lambda = parts[0].lambda;
        let lo = parts
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.lo)
            .min()
            .unwrap_or(0);
        let hi = parts
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.hi())
            .max()
            .unwrap_or(-1);
        let mut b = Builder::new(lambda, lo);
        for n in lo..=hi {
            b.push_term(parts.iter().flat_map(|x| x.vertices(n)).collect());
        }
        for n in lo..hi {
            let blocks: Vec<AlgMatrix> = parts.iter().map(|x| x.diff(n)).collect();
            let refs: Vec<&AlgMatrix> = blocks.iter().collect();
            b.push_diff(AlgMatrix::block_diag(&refs));
        }
        b.build()
    }

    /// Entrywise image under a map of coefficient vectors, landing over a
    /// possibly different algebra with the same term shapes.
    pub fn map_coefficients(
        &self,
        target: Lambda,
        f: impl Fn(&Elem) -> Elem,
    ) -> Result<ProjComplex, ComplexError> {
        let diffs = self.diffs.iter().map(|d| d.map_entries(&f)).collect();
        ProjComplex::new(target, self.lo, self.terms.clone(), diffs)
    }

    /// Number of nonzero idempotent coefficients in the differential.
    pub fn non_radical_entries(&self) -> usize {
        self.diffs
            .iter()
            .flat_map(|d| d.entries())
            .filter(|(_, _, x)| x.entries().iter().any(|(b, _)| self.lambda.degree(*b) == 0))
            .count()
    }

    pub fn is_radical(&self) -> bool {
        self.non_radical_entries() == 0
    }

    pub(crate) fn diffs(&self) -> &[AlgMatrix] {
        &self.diffs
    }
}

impl fmt::Display for ProjComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .degrees()
            .map(|n| {
                let (a, b) = self.term(n);
                let mut s = Vec::new();
                if a > 0 {
                    s.push(if a == 1 {
                        "P1".to_string()
                    } else {
                        format!("P1^{a}")
                    });
                }
                if b > 0 {
                    s.push(if b == 1 {
                        "P2".to_string()
                    } else {
                        format!("P2^{b}")
                    });
                }
                if s.is_empty() {
                    s.push("0".into());
                }
                format!("[{}]{}", n, s.join("+"))
            })
            .collect();
        write!(f, "{}", parts.join(" -> "))
    }
}

pub(crate) fn vertex_list((a, b): (usize, usize)) -> Vec<Vertex> {
    let mut v = vec![Vertex::One; a];
    v.extend(std::iter::repeat(Vertex::Two).take(b));
    v
}

/// Assembles a complex whose terms are given as arbitrary vertex lists and
/// reorders each term so that `P_1` summands come first.
pub(crate) struct Builder {
    lambda: Lambda,
    lo: i32,
    terms: Vec<Vec<Vertex>>,
    diffs: Vec<AlgMatrix>,
}

/// For each degree, `perm[new] = old` summand positions.
pub(crate) type Perms = BTreeMap<i32, Vec<usize>>;

impl Builder {
    pub fn new(lambda: Lambda, lo: i32) -> Builder {
        Builder {
            lambda,
            lo,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn push_term(&mut self, t: Vec<Vertex>) {
        self.terms.push(t);
    }

    pub fn push_diff(&mut self, d: AlgMatrix) {
        self.diffs.push(d);
    }

    pub fn build_with_perms(self) -> (ProjComplex, Perms) {
        let perms: Vec<Vec<usize>> = self
            .terms
            .iter()
            .map(|t| {
                let mut idx: Vec<usize> = (0..t.len()).collect();
                idx.sort_by_key(|&i| t[i]);
                idx
            })
            .collect();
        let terms: Vec<(usize, usize)> = self
            .terms
            .iter()
            .map(|t| {
                let a = t.iter().filter(|&&v| v == Vertex::One).count();
                (a, t.len() - a)
            })
            .collect();
        let diffs: Vec<AlgMatrix> = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| d.select(&perms[k + 1], &perms[k]))
            .collect();
        let perm_map: Perms = perms
            .into_iter()
            .enumerate()
            .map(|(k, p)| (self.lo + k as i32, p))
            .collect();
        let lo = self.lo;
        let x = ProjComplex::new_unchecked(self.lambda, lo, terms, diffs);
        (x, perm_map)
    }

    pub fn build(self) -> ProjComplex {
        self.build_with_perms().0
    }
}

// JSON interchange

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    p: usize,
    q: usize,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    algebra: AlgebraJson,
    terms: BTreeMap<String, [usize; 2]>,
    #[serde(default)]
    diff: BTreeMap<String, Vec<Vec<Vec<Q>>>>,
}

impl ProjComplex {
    pub fn to_json_value(&self) -> serde_json::Value {
        let l = self.lambda;
        let mut terms = BTreeMap::new();
        let mut diff = BTreeMap::new();
        for n in self.degrees() {
            let (a, b) = self.term(n);
            terms.insert(n.to_string(), [a, b]);
        }
        for n in self.lo..self.hi() {
            let d = self.diff(n);
            let rows: Vec<Vec<Vec<Q>>> = (0..d.rows())
                .map(|i| {
                    (0..d.cols())
                        .map(|j| d.entry(i, j).to_dense(l.dim()))
                        .collect()
                })
                .collect();
            diff.insert(n.to_string(), rows);
        }
        let j = ComplexJson {
            algebra: AlgebraJson { p: l.p, q: l.q },
            terms,
            diff,
        };
        serde_json::to_value(j).expect("complex serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("complex serializes")
    }

    pub fn from_json(s: &str) -> Result<ProjComplex, ComplexError> {
        let j: ComplexJson =
            serde_json::from_str(s).map_err(|e| ComplexError::Parse(e.to_string()))?;
        let lambda = Lambda::new(j.algebra.p, j.algebra.q)
            .map_err(|e| ComplexError::Parse(e.to_string()))?;
        let mut terms: BTreeMap<i32, (usize, usize)> = BTreeMap::new();
        for (k, [a, b]) in &j.terms {
            let n: i32 = k
                .parse()
                .map_err(|_| ComplexError::Parse(format!("bad degree key {k:?}")))?;
            terms.insert(n, (*a, *b));
        }
        let mut diffs_in: BTreeMap<i32, &Vec<Vec<Vec<Q>>>> = BTreeMap::new();
        for (k, d) in &j.diff {
            let n: i32 = k
                .parse()
                .map_err(|_| ComplexError::Parse(format!("bad degree key {k:?}")))?;
            diffs_in.insert(n, d);
        }
        let Some((&lo, _)) = terms.iter().next() else {
            return Ok(ProjComplex::zero(lambda));
        };
        let hi = *terms.keys().last().unwrap();
        for &n in diffs_in.keys() {
            if n < lo || n >= hi {
                return Err(ComplexError::Shape(format!(
                    "differential in degree {n} outside the term range"
                )));
            }
        }
        let term_list: Vec<(usize, usize)> = (lo..=hi)
            .map(|n| terms.get(&n).copied().unwrap_or((0, 0)))
            .collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let (src, tgt) = (
                term_list[(n - lo) as usize],
                term_list[(n - lo + 1) as usize],
            );
            let (rows, cols) = (tgt.0 + tgt.1, src.0 + src.1);
            let mut m = AlgMatrix::zeros(rows, cols);
            if let Some(d) = diffs_in.get(&n) {
                if d.len() != rows || d.iter().any(|r| r.len() != cols) {
                    return Err(ComplexError::Shape(format!(
                        "differential in degree {n} has the wrong block shape"
                    )));
                }
                for (i, row) in d.iter().enumerate() {
                    for (jj, v) in row.iter().enumerate() {
                        if v.len() != lambda.dim() {
                            return Err(ComplexError::Shape(format!(
                                "coefficient vector of length {} (algebra has dimension {})",
                                v.len(),
                                lambda.dim()
                            )));
                        }
                        m.set(i, jj, SparseVec::from_dense(v));
                    }
                }
            }
            diffs.push(m);
        }
        ProjComplex::new(lambda, lo, term_list, diffs)
    }
}
