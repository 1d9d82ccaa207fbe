//! Exact linear algebra over the rationals: dense matrices and an incremental
//! sparse echelon form used for kernels and affine solves.

use std::collections::HashMap;

use crate::exactpoly::Rational;

/// Sparse vector: sorted (index, nonzero value) pairs.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a + c·b` for sorted sparse vectors.
pub fn axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_from_map(m: HashMap<usize, Rational>) -> SparseVec {
    let mut v: SparseVec = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by_key(|t| t.0);
    v
}

/// Row echelon form built one vector at a time, remembering each row as a
/// combination of the inserted vectors.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<(SparseVec, SparseVec)>,
    pivot: HashMap<usize, usize>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the rows; returns the residual and the combination
    /// of inserted vectors that was subtracted.
    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((k, c)) = v.first().cloned() {
            match self.pivot.get(&k) {
                Some(&r) => {
                    let neg = -&c;
                    v = axpy(&v, &neg, &self.rows[r].0);
                    combo = axpy(&combo, &neg, &self.rows[r].1);
                }
                None => break,
            }
        }
        (v, combo)
    }

    /// Insert the next vector; returns the kernel combination if it is dependent.
    pub fn insert(&mut self, v: SparseVec) -> Option<SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let (v, combo) = self.reduce(v, vec![(id, Rational::one())]);
        if v.is_empty() {
            return Some(combo);
        }
        let inv = v[0].1.recip();
        let v: SparseVec = v.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        let combo: SparseVec = combo.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        self.pivot.insert(v[0].0, self.rows.len());
        self.rows.push((v, combo));
        None
    }

    /// Returns x (as a combination of inserted vectors) with Σ x_i v_i = rhs.
    pub fn solve(&self, rhs: SparseVec) -> Option<SparseVec> {
        let (res, combo) = self.reduce(rhs, Vec::new());
        res.is_empty().then(|| combo.into_iter().map(|(k, c)| (k, -c)).collect())
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v, Vec::new()).0.is_empty()
    }
}

/// Kernel basis of the linear map sending unknown `u` to `columns[u]`.
pub fn sparse_kernel(columns: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    columns.into_iter().filter_map(|c| ech.insert(c)).collect()
}

/// Affine solution set {x : Σ x_u columns[u] = rhs}: particular solution and kernel basis.
pub fn sparse_solve(columns: Vec<SparseVec>, rhs: SparseVec) -> Option<(SparseVec, Vec<SparseVec>)> {
    let mut ech = Echelon::new();
    let kernel: Vec<SparseVec> = columns.into_iter().filter_map(|c| ech.insert(c)).collect();
    ech.solve(rhs).map(|x| (x, kernel))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<Rational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Matrix { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : M v = 0}, one vector per free column (set to 1).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Determinant by fraction-exact elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            let inv = piv.recip();
            for r in c + 1..n {
                let f = a.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Some x with M x = b, if consistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn dense_inverse_and_nullspace() {
        let m = Matrix::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let s = Matrix::from_rows(vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]]);
        assert_eq!(s.rank(), 1);
        let ns = s.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(s.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
        assert!(s.inverse().is_none());
        assert_eq!(m.solve(&[r(3), r(2)]).unwrap(), vec![r(1), r(1)]);
        assert!(s.solve(&[r(1), r(1)]).is_none());
    }

    #[test]
    fn sparse_kernel_and_solve() {
        let cols = vec![
            vec![(0, r(1)), (1, r(1))],
            vec![(1, r(1)), (2, r(1))],
            vec![(0, r(1)), (2, r(-1))],
        ];
        let k = sparse_kernel(cols.clone());
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![(0, r(-1)), (1, r(1)), (2, r(1))]);
        let (x, ker) = sparse_solve(cols.clone(), vec![(0, r(2)), (1, r(3)), (2, r(1))]).unwrap();
        assert_eq!(ker.len(), 1);
        let mut acc = SparseVec::new();
        for (u, c) in &x {
            acc = axpy(&acc, c, &cols[*u]);
        }
        assert_eq!(acc, vec![(0, r(2)), (1, r(3)), (2, r(1))]);
        assert!(sparse_solve(cols, vec![(0, r(1))]).is_none());
    }
}
