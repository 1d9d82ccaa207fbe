use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use super::PolyMatrix;
use crate::demazure::InvariantRingId;
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly};

/// A graded (R^K, R^L)-bimodule presented as a free left R^K-module.
///
/// Basis element `a` sits in degree `degrees[a]` (geometric degrees, x_i in
/// degree 2; the grading shift ⟨k⟩ lowers all degrees by k). The right action
/// of a right-ring generator g sends b_j to Σ_i M_g[i, j] b_i.
pub struct Bimodule {
    left: InvariantRingId,
    right: InvariantRingId,
    degrees: Vec<i64>,
    kind: Kind,
    key: ModKey,
    action: OnceLock<Vec<Arc<PolyMatrix>>>,
    mult_cache: Mutex<HashMap<Poly, Arc<PolyMatrix>>>,
    mono_cache: Mutex<HashMap<Monomial, Arc<PolyMatrix>>>,
}

#[derive(Clone)]
enum Kind {
    Identity,
    Atomic,
    Tensor(Arc<Bimodule>, Arc<Bimodule>),
}

/// Structural identity: tensor factors (by content hash) plus total shift.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct ModKey {
    factors: Vec<u64>,
    shift: i64,
}

impl Bimodule {
    fn build(
        left: InvariantRingId,
        right: InvariantRingId,
        degrees: Vec<i64>,
        kind: Kind,
        key: ModKey,
        action: Option<Vec<Arc<PolyMatrix>>>,
    ) -> Arc<Bimodule> {
        let cell = OnceLock::new();
        if let Some(a) = action {
            let _ = cell.set(a);
        }
        Arc::new(Bimodule {
            left,
            right,
            degrees,
            kind,
            key,
            action: cell,
            mult_cache: Mutex::new(HashMap::new()),
            mono_cache: Mutex::new(HashMap::new()),
        })
    }

    /// The identity bimodule of a ring (rank 1, degree 0).
    pub fn identity(ring: &InvariantRingId) -> Arc<Bimodule> {
        let action = ring.generators().iter().map(|g| Arc::new(PolyMatrix::diagonal(g, 1))).collect();
        Bimodule::build(
            ring.clone(),
            ring.clone(),
            vec![0],
            Kind::Identity,
            ModKey { factors: Vec::new(), shift: 0 },
            Some(action),
        )
    }

    /// The zero bimodule.
    pub fn zero(left: &InvariantRingId, right: &InvariantRingId) -> Arc<Bimodule> {
        let action = right.generators().iter().map(|_| Arc::new(PolyMatrix::zero(left.n, 0, 0))).collect();
        Bimodule::build(
            left.clone(),
            right.clone(),
            Vec::new(),
            Kind::Atomic,
            ModKey { factors: vec![0], shift: 0 },
            Some(action),
        )
    }

    /// A module given by explicit right-action matrices, one per right generator.
    pub fn from_action(
        left: InvariantRingId,
        right: InvariantRingId,
        degrees: Vec<i64>,
        action: Vec<PolyMatrix>,
    ) -> Result<Arc<Bimodule>> {
        let gens = right.generators();
        if action.len() != gens.len() {
            return Err(Error::SizeMismatch(format!("{} action matrices for {} generators", action.len(), gens.len())));
        }
        let r = degrees.len();
        if r == 0 {
            return Ok(Bimodule::zero(&left, &right));
        }
        for m in &action {
            if m.rows() != r || m.cols() != r || m.n_vars() != left.n {
                return Err(Error::SizeMismatch("action matrix shape".into()));
            }
        }
        let mut h = DefaultHasher::new();
        left.hash(&mut h);
        right.hash(&mut h);
        degrees.hash(&mut h);
        action.hash(&mut h);
        let fp = h.finish() | 1;
        let action = action.into_iter().map(Arc::new).collect();
        Ok(Bimodule::build(left, right, degrees, Kind::Atomic, ModKey { factors: vec![fp], shift: 0 }, Some(action)))
    }

    pub fn left(&self) -> &InvariantRingId {
        &self.left
    }

    pub fn right(&self) -> &InvariantRingId {
        &self.right
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.left.n
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, Kind::Identity) && self.key.shift == 0
    }

    /// Number of tensor factors (identities excluded).
    pub fn factor_count(&self) -> usize {
        self.key.factors.len()
    }

    /// Right-action matrices of the right-ring generators.
    pub fn action(&self) -> &[Arc<PolyMatrix>] {
        self.action.get_or_init(|| self.right.generators().iter().map(|g| self.right_mult(g)).collect())
    }

    /// Matrix of right multiplication by an element of the right ring.
    pub fn right_mult(&self, p: &Poly) -> Arc<PolyMatrix> {
        if let Some(m) = self.mult_cache.lock().unwrap().get(p) {
            return m.clone();
        }
        let m = Arc::new(self.compute_right_mult(p));
        self.mult_cache.lock().unwrap().entry(p.clone()).or_insert(m).clone()
    }

    fn compute_right_mult(&self, p: &Poly) -> PolyMatrix {
        let r = self.rank();
        let n = self.n();
        if p.is_zero() || r == 0 {
            return PolyMatrix::zero(n, r, r);
        }
        match &self.kind {
            Kind::Identity => PolyMatrix::diagonal(p, 1),
            Kind::Atomic => {
                let q = self.right.express(p).expect("right multiplier must lie in the right ring");
                let mut acc = PolyMatrix::zero(n, r, r);
                for (m, c) in q.terms() {
                    acc = acc.add(&self.monomial_matrix(*m).scale(c));
                }
                acc
            }
            Kind::Tensor(a, b) => {
                let bp = b.right_mult(p);
                let rb = b.rank();
                let mut triples = Vec::new();
                for (c, bi, q) in bp.entries() {
                    let aq = a.right_mult(q);
                    for (ap, ai, e) in aq.entries() {
                        triples.push((ap * rb + c, ai * rb + bi, e.clone()));
                    }
                }
                PolyMatrix::from_triples(n, r, r, triples)
            }
        }
    }

    fn monomial_matrix(&self, m: Monomial) -> Arc<PolyMatrix> {
        if m == Monomial::ONE {
            return Arc::new(PolyMatrix::identity(self.n(), self.rank()));
        }
        if let Some(x) = self.mono_cache.lock().unwrap().get(&m) {
            return x.clone();
        }
        let g = (0..crate::exactpoly::MAX_VARS).find(|&i| m.exponent(i) > 0).unwrap();
        let rest = Monomial::var(g).div_into(m);
        let prev = self.monomial_matrix(rest);
        let gen = self.action.get().expect("atomic modules carry their action")[g].clone();
        let out = Arc::new(gen.mul(&prev));
        self.mono_cache.lock().unwrap().entry(m).or_insert(out).clone()
    }

    /// Same bimodule up to presentation: shared structure, else exact comparison.
    pub fn same(&self, other: &Bimodule) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.left != other.left || self.right != other.right || self.degrees != other.degrees {
            return false;
        }
        if self.key == other.key {
            return true;
        }
        self.action().iter().zip(other.action()).all(|(a, b)| a == b)
    }

    /// Grading shift ⟨k⟩: all basis degrees drop by k.
    pub fn shift(self: &Arc<Self>, k: i64) -> Arc<Bimodule> {
        if k == 0 {
            return self.clone();
        }
        let degrees = self.degrees.iter().map(|d| d - k).collect();
        let mut key = ModKey { factors: self.key.factors.clone(), shift: self.key.shift + k };
        let (kind, action) = match &self.kind {
            Kind::Tensor(a, b) => (Kind::Tensor(a.clone(), b.clone()), None),
            Kind::Identity => {
                // A shifted identity is no longer a unit for tensoring; give it a factor.
                key.factors = vec![2];
                (Kind::Atomic, Some(self.action().to_vec()))
            }
            Kind::Atomic => (Kind::Atomic, Some(self.action().to_vec())),
        };
        Bimodule::build(self.left.clone(), self.right.clone(), degrees, kind, key, action)
    }

    /// JSON form; `shifts` are the grading shifts ⟨k⟩ of the basis elements,
    /// the negatives of their degrees.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "left": self.left,
            "right": self.right,
            "rank": self.rank(),
            "shifts": self.degrees.iter().map(|d| -d).collect::<Vec<_>>(),
            "right_action": self.action().iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        })
    }

    /// Checks that the action matrices have homogeneous entries of the right
    /// degrees, commute pairwise, and stay in the left ring.
    pub fn validate(&self) -> Result<()> {
        let gens = self.right.generators();
        let act = self.action();
        for (g, m) in gens.iter().zip(act) {
            let dg = g.geometric_degree().unwrap_or(0);
            for (i, j, p) in m.entries() {
                let want = dg + self.degrees[j] - self.degrees[i];
                if p.geometric_degree() != Some(want) {
                    return Err(Error::Invalid(format!("action entry ({i},{j}) = {p} not of degree {want}")));
                }
                if !self.left.contains(p) {
                    return Err(Error::Invalid(format!("action entry ({i},{j}) = {p} not in the left ring")));
                }
            }
        }
        for a in 0..act.len() {
            for b in a + 1..act.len() {
                if act[a].mul(&act[b]) != act[b].mul(&act[a]) {
                    return Err(Error::Invalid(format!("action matrices {a} and {b} do not commute")));
                }
            }
        }
        Ok(())
    }
}

/// Tensor product over the common middle ring; basis (a, b) ↦ a·rank(N) + b.
pub fn tensor(m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
    if m.right != n.left {
        return Err(Error::RingMismatch(format!("{} vs {}", m.right, n.left)));
    }
    if m.is_identity() {
        return Ok(n.clone());
    }
    if n.is_identity() {
        return Ok(m.clone());
    }
    if m.rank() == 0 || n.rank() == 0 {
        return Ok(Bimodule::zero(&m.left, &n.right));
    }
    let mut degrees = Vec::with_capacity(m.rank() * n.rank());
    for a in &m.degrees {
        for b in &n.degrees {
            degrees.push(a + b);
        }
    }
    let mut factors = m.key.factors.clone();
    factors.extend_from_slice(&n.key.factors);
    let key = ModKey { factors, shift: m.key.shift + n.key.shift };
    Ok(Bimodule::build(m.left.clone(), n.right.clone(), degrees, Kind::Tensor(m.clone(), n.clone()), key, None))
}

/// Left-associated tensor product of a nonempty list.
pub fn tensor_all(ms: &[Arc<Bimodule>]) -> Result<Arc<Bimodule>> {
    let (first, rest) = ms.split_first().ok_or_else(|| Error::Invalid("empty tensor product".into()))?;
    let mut acc = first.clone();
    for m in rest {
        acc = tensor(&acc, m)?;
    }
    Ok(acc)
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule({} -> {}, rank {}, degrees {:?})", self.left, self.right, self.rank(), self.degrees)
    }
}
