use rayon::prelude::*;

use crate::exactpoly::{Poly, Rational};
use crate::linalg::Matrix;

/// Sparse matrix of polynomials, stored by columns with sorted row indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    n_vars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Poly)>>,
}

const PAR_THRESHOLD: usize = 64;

impl PolyMatrix {
    pub fn zero(n_vars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix { n_vars, rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n_vars: usize, k: usize) -> Self {
        let data = (0..k).map(|i| vec![(i, Poly::one(n_vars))]).collect();
        PolyMatrix { n_vars, rows: k, cols: k, data }
    }

    /// Scalar polynomial times the identity.
    pub fn diagonal(p: &Poly, k: usize) -> Self {
        let data = (0..k)
            .map(|i| if p.is_zero() { Vec::new() } else { vec![(i, p.clone())] })
            .collect();
        PolyMatrix { n_vars: p.n_vars(), rows: k, cols: k, data }
    }

    /// Build from (row, col, entry) triples; repeated positions are summed.
    pub fn from_triples(n_vars: usize, rows: usize, cols: usize, triples: Vec<(usize, usize, Poly)>) -> Self {
        let mut data: Vec<Vec<(usize, Poly)>> = vec![Vec::new(); cols];
        for (i, j, p) in triples {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            if !p.is_zero() {
                data[j].push((i, p));
            }
        }
        for col in &mut data {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Poly)> = Vec::with_capacity(col.len());
            for (i, p) in col.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == i => last.1.add_assign_ref(&p),
                    _ => merged.push((i, p)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *col = merged;
        }
        PolyMatrix { n_vars, rows, cols, data }
    }

    pub fn from_columns(n_vars: usize, rows: usize, data: Vec<Vec<(usize, Poly)>>) -> Self {
        let cols = data.len();
        let mut m = PolyMatrix { n_vars, rows, cols, data };
        for col in &mut m.data {
            col.retain(|e| !e.1.is_zero());
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
        }
        m
    }

    pub fn from_dense(n_vars: usize, rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut triples = Vec::new();
        for (i, row) in rows.into_iter().enumerate() {
            for (j, p) in row.into_iter().enumerate() {
                triples.push((i, j, p));
            }
        }
        PolyMatrix::from_triples(n_vars, r, c, triples)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Poly)] {
        &self.data[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, Poly)>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Poly> {
        let col = &self.data[j];
        col.binary_search_by_key(&i, |e| e.0).ok().map(|k| &col[k].1)
    }

    pub fn get_or_zero(&self, i: usize, j: usize) -> Poly {
        self.get(i, j).cloned().unwrap_or_else(|| Poly::zero(self.n_vars))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(j, c)| c.len() == 1 && c[0].0 == j && c[0].1.is_one())
    }

    /// Iterate nonzero entries as (row, col, entry).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.data.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, p)| (*i, j, p)))
    }

    /// Row-major view: for each row, the (col, entry) pairs.
    pub fn row_lists(&self) -> Vec<Vec<(usize, &Poly)>> {
        let mut out: Vec<Vec<(usize, &Poly)>> = vec![Vec::new(); self.rows];
        for (i, j, p) in self.entries() {
            out[i].push((j, p));
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let triples = self.entries().map(|(i, j, p)| (j, i, p.clone())).collect();
        PolyMatrix::from_triples(self.n_vars, self.cols, self.rows, triples)
    }

    fn mul_column(&self, col: &[(usize, Poly)]) -> Vec<(usize, Poly)> {
        if col.is_empty() {
            return Vec::new();
        }
        let mut acc: Vec<Option<Poly>> = vec![None; self.rows];
        let mut touched = Vec::new();
        for (k, b) in col {
            for (i, a) in &self.data[*k] {
                let t = a * b;
                match &mut acc[*i] {
                    Some(p) => p.add_assign_ref(&t),
                    slot => {
                        *slot = Some(t);
                        touched.push(*i);
                    }
                }
            }
        }
        touched.sort_unstable();
        touched
            .into_iter()
            .filter_map(|i| acc[i].take().filter(|p| !p.is_zero()).map(|p| (i, p)))
            .collect()
    }

    /// Matrix product self · other.
    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in product");
        let data: Vec<Vec<(usize, Poly)>> = if other.cols >= PAR_THRESHOLD && self.nnz() > PAR_THRESHOLD {
            other.data.par_iter().map(|c| self.mul_column(c)).collect()
        } else {
            other.data.iter().map(|c| self.mul_column(c)).collect()
        };
        PolyMatrix { n_vars: self.n_vars, rows: self.rows, cols: other.cols, data }
    }

    fn zip_columns(&self, other: &PolyMatrix, sign: bool) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut x, mut y) = (0, 0);
                while x < a.len() || y < b.len() {
                    if y == b.len() || (x < a.len() && a[x].0 < b[y].0) {
                        out.push(a[x].clone());
                        x += 1;
                    } else if x == a.len() || b[y].0 < a[x].0 {
                        out.push((b[y].0, if sign { -&b[y].1 } else { b[y].1.clone() }));
                        y += 1;
                    } else {
                        let v = if sign { &a[x].1 - &b[y].1 } else { &a[x].1 + &b[y].1 };
                        if !v.is_zero() {
                            out.push((a[x].0, v));
                        }
                        x += 1;
                        y += 1;
                    }
                }
                out
            })
            .collect();
        PolyMatrix { n_vars: self.n_vars, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        self.zip_columns(other, false)
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.zip_columns(other, true)
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        if c.is_zero() {
            return PolyMatrix::zero(self.n_vars, self.rows, self.cols);
        }
        let data = self.data.iter().map(|col| col.iter().map(|(i, p)| (*i, p.scale(c))).collect()).collect();
        PolyMatrix { n_vars: self.n_vars, rows: self.rows, cols: self.cols, data }
    }

    /// Multiply every entry by a polynomial.
    pub fn mul_poly(&self, q: &Poly) -> PolyMatrix {
        let data = self
            .data
            .iter()
            .map(|col| col.iter().map(|(i, p)| (*i, p * q)).filter(|e| !e.1.is_zero()).collect())
            .collect();
        PolyMatrix { n_vars: self.n_vars, rows: self.rows, cols: self.cols, data }
    }

    /// Constant terms of all entries.
    pub fn constant_part(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, j, p) in self.entries() {
            m.set(i, j, p.constant_term());
        }
        m
    }

    pub fn from_constant(n_vars: usize, m: &Matrix) -> PolyMatrix {
        let mut triples = Vec::new();
        for i in 0..m.rows {
            for j in 0..m.cols {
                let v = m.get(i, j);
                if !v.is_zero() {
                    triples.push((i, j, Poly::constant(n_vars, v.clone())));
                }
            }
        }
        PolyMatrix::from_triples(n_vars, m.rows, m.cols, triples)
    }

    /// Submatrix on the given rows and columns (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        let data = cols
            .iter()
            .map(|&j| {
                let mut c: Vec<(usize, Poly)> = self.data[j]
                    .iter()
                    .filter(|(i, _)| pos[*i] != usize::MAX)
                    .map(|(i, p)| (pos[*i], p.clone()))
                    .collect();
                c.sort_by_key(|e| e.0);
                c
            })
            .collect();
        PolyMatrix { n_vars: self.n_vars, rows: rows.len(), cols: cols.len(), data }
    }

    /// Sparse JSON form: shape plus [row, col, "poly"] triples.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> =
            self.entries().map(|(i, j, p)| serde_json::json!([i, j, p.to_string()])).collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    /// Render nonzero entries as "(i,j): poly" lines, for reports.
    pub fn describe(&self, limit: usize) -> Vec<String> {
        self.entries().take(limit).map(|(i, j, p)| format!("({i},{j}): {p}")).collect()
    }
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PolyMatrix {}x{} {:?}", self.rows, self.cols, self.describe(usize::MAX))
    }
}
