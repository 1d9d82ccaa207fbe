use std::sync::Arc;

use rayon::prelude::*;

use super::{tensor, Bimodule, PolyMatrix};
use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rational};

/// Homogeneous bimodule map; column j is the image of source basis element j.
#[derive(Clone)]
pub struct BimodMap {
    source: Arc<Bimodule>,
    target: Arc<Bimodule>,
    degree: i64,
    matrix: PolyMatrix,
}

impl BimodMap {
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, degree: i64, matrix: PolyMatrix) -> Result<Self> {
        if source.left() != target.left() || source.right() != target.right() {
            return Err(Error::RingMismatch("map between bimodules over different rings".into()));
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::SizeMismatch(format!(
                "matrix {}x{} for map of ranks {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        Ok(BimodMap { source, target, degree, matrix })
    }

    pub fn identity(m: &Arc<Bimodule>) -> Self {
        BimodMap { source: m.clone(), target: m.clone(), degree: 0, matrix: PolyMatrix::identity(m.n(), m.rank()) }
    }

    pub fn zero(source: &Arc<Bimodule>, target: &Arc<Bimodule>, degree: i64) -> Self {
        BimodMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            matrix: PolyMatrix::zero(source.n(), target.rank(), source.rank()),
        }
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Reinterpret with a different (equal) source/target presentation.
    pub fn retarget(&self, source: &Arc<Bimodule>, target: &Arc<Bimodule>) -> Result<Self> {
        if !self.source.same(source) || !self.target.same(target) {
            return Err(Error::SizeMismatch("retarget to a different bimodule".into()));
        }
        Ok(BimodMap { source: source.clone(), target: target.clone(), degree: self.degree, matrix: self.matrix.clone() })
    }

    /// self ∘ f.
    pub fn compose(&self, f: &BimodMap) -> Result<BimodMap> {
        if !f.target.same(&self.source) {
            return Err(Error::SizeMismatch(format!("compose: {:?} vs {:?}", f.target, self.source)));
        }
        Ok(BimodMap {
            source: f.source.clone(),
            target: self.target.clone(),
            degree: self.degree + f.degree,
            matrix: self.matrix.mul(&f.matrix),
        })
    }

    fn combine(&self, other: &BimodMap, sub: bool) -> Result<BimodMap> {
        if !self.source.same(&other.source) || !self.target.same(&other.target) {
            return Err(Error::SizeMismatch("sum of maps with different source or target".into()));
        }
        let degree = if self.is_zero() {
            other.degree
        } else if other.is_zero() || self.degree == other.degree {
            self.degree
        } else {
            return Err(Error::SizeMismatch(format!("degrees {} and {}", self.degree, other.degree)));
        };
        let matrix = if sub { self.matrix.sub(&other.matrix) } else { self.matrix.add(&other.matrix) };
        Ok(BimodMap { source: self.source.clone(), target: self.target.clone(), degree, matrix })
    }

    pub fn add(&self, other: &BimodMap) -> Result<BimodMap> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &BimodMap) -> Result<BimodMap> {
        self.combine(other, true)
    }

    pub fn scale(&self, c: &Rational) -> BimodMap {
        BimodMap { matrix: self.matrix.scale(c), ..self.clone() }
    }

    /// Exact equality of maps between the same bimodules.
    pub fn equals(&self, other: &BimodMap) -> bool {
        self.source.same(&other.source)
            && self.target.same(&other.target)
            && self.matrix == other.matrix
            && (self.degree == other.degree || self.is_zero())
    }

    /// Nonzero entries of self − other, rendered for reports.
    pub fn difference(&self, other: &BimodMap, limit: usize) -> Vec<String> {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return vec!["shape mismatch".into()];
        }
        self.matrix.sub(&other.matrix).describe(limit)
    }

    /// Checks homogeneity of entries and commutation with the right action.
    pub fn validate(&self) -> Result<()> {
        let (sd, td) = (self.source.degrees(), self.target.degrees());
        for (i, j, p) in self.matrix.entries() {
            let want = self.degree + sd[j] - td[i];
            if p.geometric_degree() != Some(want) {
                return Err(Error::Invalid(format!("entry ({i},{j}) = {p} should have degree {want}")));
            }
            if !self.source.left().contains(p) {
                return Err(Error::Invalid(format!("entry ({i},{j}) = {p} outside the left ring")));
            }
        }
        for (a, b) in self.source.action().iter().zip(self.target.action()) {
            if b.mul(&self.matrix) != self.matrix.mul(a) {
                return Err(Error::Invalid("map does not commute with the right action".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": { "rank": self.source.rank(), "shifts": self.source.degrees().iter().map(|d| -d).collect::<Vec<_>>() },
            "target": { "rank": self.target.rank(), "shifts": self.target.degrees().iter().map(|d| -d).collect::<Vec<_>>() },
            "degree": self.degree,
            "matrix": self.matrix.to_json(),
        })
    }

    /// Multiplication by a central polynomial (left ring element) on every entry.
    pub fn mul_poly(&self, q: &Poly, q_degree: i64) -> BimodMap {
        BimodMap { matrix: self.matrix.mul_poly(q), degree: self.degree + q_degree, ..self.clone() }
    }
}

impl std::fmt::Debug for BimodMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BimodMap(deg {}, {:?} -> {:?}, {:?})", self.degree, self.source, self.target, self.matrix)
    }
}

/// f ⊗ id_N.
pub fn tensor_id(f: &BimodMap, n: &Arc<Bimodule>) -> Result<BimodMap> {
    let source = tensor(&f.source, n)?;
    let target = tensor(&f.target, n)?;
    let rn = n.rank();
    let mut triples = Vec::with_capacity(f.matrix.nnz() * rn);
    for (i, j, p) in f.matrix.entries() {
        for b in 0..rn {
            triples.push((i * rn + b, j * rn + b, p.clone()));
        }
    }
    let matrix = PolyMatrix::from_triples(f.source.n(), target.rank(), source.rank(), triples);
    BimodMap::new(source, target, f.degree, matrix)
}

/// id_M ⊗ g: entries of g act on M from the right.
pub fn id_tensor(m: &Arc<Bimodule>, g: &BimodMap) -> Result<BimodMap> {
    let source = tensor(m, &g.source)?;
    let target = tensor(m, &g.target)?;
    let (rs, rt) = (g.source.rank(), g.target.rank());
    let entries: Vec<(usize, usize, &Poly)> = g.matrix.entries().collect();
    let chunks: Vec<Vec<(usize, usize, Poly)>> = entries
        .par_iter()
        .map(|&(bp, b, q)| {
            let mq = m.right_mult(q);
            mq.entries().map(|(a2, a1, e)| (a2 * rt + bp, a1 * rs + b, e.clone())).collect()
        })
        .collect();
    let triples = chunks.into_iter().flatten().collect();
    let matrix = PolyMatrix::from_triples(m.n(), target.rank(), source.rank(), triples);
    BimodMap::new(source, target, g.degree, matrix)
}

/// Horizontal composite f ⊗ g = (id ⊗ g) ∘ (f ⊗ id).
pub fn tensor_maps(f: &BimodMap, g: &BimodMap) -> Result<BimodMap> {
    let f_id = f.source.same(&f.target) && f.matrix.is_identity();
    let g_id = g.source.same(&g.target) && g.matrix.is_identity();
    match (f_id, g_id) {
        (true, true) => Ok(BimodMap::identity(&tensor(&f.source, &g.source)?)),
        (true, false) => id_tensor(&f.source, g),
        (false, true) => tensor_id(f, &g.source),
        (false, false) => id_tensor(&f.target, g)?.compose(&tensor_id(f, &g.source)?),
    }
}

/// id_{L1 ⊗ ⋯} ⊗ f ⊗ id_{⋯ ⊗ Rk}, with left factors tensored in order.
pub fn whisker(left: &[Arc<Bimodule>], f: &BimodMap, right: &[Arc<Bimodule>]) -> Result<BimodMap> {
    let mut acc = f.clone();
    for r in right {
        acc = tensor_id(&acc, r)?;
    }
    if !left.is_empty() {
        let l = super::tensor_all(left)?;
        acc = id_tensor(&l, &acc)?;
    }
    Ok(acc)
}
