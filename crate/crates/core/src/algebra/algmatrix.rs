use super::{Elem, Lambda};
use crate::linalg::{SparseVec, Q};

/// A sparse matrix with entries in Λ^{p,q}, describing a map between sums of
/// indecomposable projectives. Entry `(t, s)` maps summand `s` of the source
/// to summand `t` of the target and lies in `e_{v(t)} Λ e_{v(s)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgMatrix {
    rows: usize,
    cols: usize,
    /// Per row, `(col, nonzero entry)` sorted by column.
    data: Vec<Vec<(usize, Elem)>>,
}

impl AlgMatrix {
    pub fn zeros(rows: usize, cols: usize) -> AlgMatrix {
        AlgMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize, vertex_of: impl Fn(usize) -> usize) -> AlgMatrix {
        let mut m = AlgMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, SparseVec::unit(vertex_of(i)));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Elem)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Elem> {
        self.data[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .ok()
            .map(|k| &self.data[i][k].1)
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.get(i, j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        assert!(
            i < self.rows && j < self.cols,
            "entry ({i},{j}) outside {}x{}",
            self.rows,
            self.cols
        );
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                if x.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    row.insert(k, (j, x));
                }
            }
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Elem) {
        if x.is_zero() {
            return;
        }
        let cur = self.entry(i, j);
        self.set(i, j, cur.add(x));
    }

    /// All nonzero entries as `(row, col, entry)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Elem)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// `self · rhs`: apply `rhs` first.
    pub fn mul(&self, l: &Lambda, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.cols, rhs.rows, "AlgMatrix::mul shape mismatch");
        let mut out = AlgMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let mut acc: Vec<(usize, Elem)> = Vec::new();
            for (k, a) in &self.data[i] {
                for (j, b) in &rhs.data[*k] {
                    let prod = l.mul(a, b);
                    if !prod.is_zero() {
                        acc.push((*j, prod));
                    }
                }
            }
            acc.sort_by_key(|(j, _)| *j);
            let mut row: Vec<(usize, Elem)> = Vec::new();
            for (j, x) in acc {
                match row.last_mut() {
                    Some((lj, lx)) if *lj == j => *lx = lx.add(&x),
                    _ => row.push((j, x)),
                }
            }
            row.retain(|(_, x)| !x.is_zero());
            out.data[i] = row;
        }
        out
    }

    pub fn scale(&self, s: &Q) -> AlgMatrix {
        let mut out = AlgMatrix::zeros(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (i, r) in self.data.iter().enumerate() {
            out.data[i] = r.iter().map(|(j, x)| (*j, x.scale(s))).collect();
        }
        out
    }

    pub fn neg(&self) -> AlgMatrix {
        self.scale(&-Q::ONE)
    }

    pub fn add(&self, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "AlgMatrix::add shape mismatch"
        );
        let mut out = self.clone();
        for (i, j, x) in rhs.entries() {
            out.add_to(i, j, x);
        }
        out
    }

    pub fn sub(&self, rhs: &AlgMatrix) -> AlgMatrix {
        self.add(&rhs.neg())
    }

    /// Rows and columns picked out (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> AlgMatrix {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let mut out = AlgMatrix::zeros(rows.len(), cols.len());
        for (ni, &i) in rows.iter().enumerate() {
            let mut row: Vec<(usize, Elem)> = self.data[i]
                .iter()
                .filter(|(j, _)| col_pos[*j] != usize::MAX)
                .map(|(j, x)| (col_pos[*j], x.clone()))
                .collect();
            row.sort_by_key(|(j, _)| *j);
            out.data[ni] = row;
        }
        out
    }

    /// Copies `block` into the rectangle starting at `(r0, c0)`, adding to
    /// whatever is there.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &AlgMatrix) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for (i, j, x) in block.entries() {
            self.add_to(r0 + i, c0 + j, x);
        }
    }

    pub fn block_diag(blocks: &[&AlgMatrix]) -> AlgMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = AlgMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.add_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&Elem) -> Elem) -> AlgMatrix {
        let mut out = AlgMatrix::zeros(self.rows, self.cols);
        for (i, r) in self.data.iter().enumerate() {
            out.data[i] = r
                .iter()
                .map(|(j, x)| (*j, f(x)))
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
        out
    }

    pub fn transpose(&self) -> AlgMatrix {
        let mut out = AlgMatrix::zeros(self.cols, self.rows);
        for (i, j, x) in self.entries() {
            out.data[j].push((i, x.clone()));
        }
        out
    }

    /// Every entry lies in the Hom space dictated by the summand vertices.
    pub fn entries_well_placed(
        &self,
        l: &Lambda,
        row_vertex: &[usize],
        col_vertex: &[usize],
    ) -> bool {
        self.entries().all(|(i, j, x)| {
            x.entries().iter().all(|(b, _)| {
                l.target(*b).index() == row_vertex[i] && l.source(*b).index() == col_vertex[j]
            })
        })
    }
}
