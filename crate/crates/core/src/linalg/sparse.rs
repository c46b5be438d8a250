//! Sparse vectors and an incremental echelon basis.
//!
//! Every row of an [`Echelon`] is normalised so that its leading (smallest)
//! column has coefficient one, and no two rows share a leading column. Rows
//! are not mutually reduced, so reduction must sweep columns in increasing
//! order, which is what [`Echelon::reduce`] does.

use std::collections::HashMap;

use super::Q;

/// Sorted `(column, nonzero value)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec {
            entries: Vec::new(),
        }
    }

    /// Entries need not be sorted; duplicates are summed and zeros dropped.
    pub fn from_pairs(mut pairs: Vec<(usize, Q)>) -> SparseVec {
        pairs.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(usize, Q)> = Vec::with_capacity(pairs.len());
        for (c, x) in pairs {
            match entries.last_mut() {
                Some((lc, lx)) if *lc == c => *lx += &x,
                _ => entries.push((c, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Q]) -> SparseVec {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize) -> SparseVec {
        SparseVec {
            entries: vec![(i, Q::ONE)],
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut v = vec![Q::ZERO; len];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Q {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::ZERO,
        }
    }

    pub fn scale(&self, s: &Q) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(c, x)| (*c, x * s)).collect(),
        }
    }

    /// `self + s · other`.
    pub fn axpy(&self, s: &Q, other: &SparseVec) -> SparseVec {
        if s.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, s * &b[j].1));
                j += 1;
            } else {
                let x = &a[i].1 + &(s * &b[j].1);
                if !x.is_zero() {
                    out.push((a[i].0, x));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Q::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Q::ONE, other)
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (mut i, mut j) = (0, 0);
        let mut s = Q::ZERO;
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (&self.entries[i], &other.entries[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s += &(&a.1 * &b.1);
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    /// Remap column indices; `f` must be injective on the support.
    pub fn map_cols(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .map(|(c, x)| (f(*c), x.clone()))
                .collect(),
        )
    }
}

/// Incremental echelon basis over the rationals, optionally tracking for each
/// row the combination of tagged inputs it came from.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot.contains_key(&col)
    }

    /// Reduce `v` against the basis; returns the residual and the tag
    /// combination subtracted (so `v = residual + Σ tag-weighted rows`).
    pub fn reduce_tagged(&self, v: &SparseVec, tag: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut tag = tag.clone();
        let mut start = 0;
        loop {
            let next = v.entries[start..]
                .iter()
                .position(|(c, _)| self.pivot.contains_key(c))
                .map(|k| k + start);
            let Some(k) = next else { break };
            let (c, x) = v.entries[k].clone();
            let r = self.pivot[&c];
            let f = -x;
            v = v.axpy(&f, &self.rows[r]);
            if !self.tags[r].is_zero() {
                tag = tag.axpy(&f, &self.tags[r]);
            }
            // Entries before `k` are untouched since row `r` starts at `c`.
            start = k;
        }
        (v, tag)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tagged(v, &SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`; returns true when it was independent of the current rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tagged(v, SparseVec::new())
    }

    pub fn insert_tagged(&mut self, v: SparseVec, tag: SparseVec) -> bool {
        let (r, t) = self.reduce_tagged(&v, &tag);
        let Some(c) = r.lead() else { return false };
        let inv = r.entries[0].1.recip();
        let r = r.scale(&inv);
        let t = t.scale(&inv);
        self.pivot.insert(c, self.rows.len());
        self.rows.push(r);
        self.tags.push(t);
        true
    }

    /// Fully reduced rows (each pivot column zero in every other row),
    /// sorted by pivot.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].lead());
        let mut done: Vec<SparseVec> = vec![SparseVec::new(); self.rows.len()];
        let mut partial = Echelon::new();
        // Back substitution from the last pivot up.
        for &r in order.iter().rev() {
            let row = &self.rows[r];
            let lead = row.lead().unwrap();
            let mut v = row.clone();
            let mut k = 1;
            while k < v.entries.len() {
                let c = v.entries[k].0;
                if let Some(&pr) = partial.pivot.get(&c) {
                    let f = -v.entries[k].1.clone();
                    v = v.axpy(&f, &partial.rows[pr]);
                } else {
                    k += 1;
                }
            }
            debug_assert_eq!(v.lead(), Some(lead));
            partial.pivot.insert(lead, partial.rows.len());
            partial.rows.push(v.clone());
            partial.tags.push(SparseVec::new());
            done[r] = v;
        }
        order
            .into_iter()
            .map(|r| std::mem::take(&mut done[r]))
            .collect()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Kernel basis of the system whose equations are `rows` (over `ncols`
/// unknowns), one vector per free column.
pub fn nullspace(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    kernel_of(&e, ncols)
}

pub fn kernel_of(e: &Echelon, ncols: usize) -> Vec<SparseVec> {
    let reduced = e.reduced_rows();
    // column -> list of (pivot col, coefficient) for rows that mention it
    let mut by_col: HashMap<usize, Vec<(usize, Q)>> = HashMap::new();
    for row in &reduced {
        let p = row.lead().unwrap();
        for (c, x) in &row.entries()[1..] {
            by_col.entry(*c).or_default().push((p, x.clone()));
        }
    }
    (0..ncols)
        .filter(|c| !e.is_pivot(*c))
        .map(|f| {
            let mut pairs = vec![(f, Q::ONE)];
            if let Some(list) = by_col.get(&f) {
                pairs.extend(list.iter().map(|(p, x)| (*p, -x)));
            }
            SparseVec::from_pairs(pairs)
        })
        .collect()
}
