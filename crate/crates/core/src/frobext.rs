//! Graded Frobenius extensions R^J ⊂ R^I (I ⊂ J): relative trace, dual bases,
//! and expansion of R^I elements over R^J.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::coxeter::{longest, ParabolicSet};
use crate::demazure::{demazure_word, InvariantRingId};
use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::linalg::Matrix;

#[derive(Clone, Debug, Serialize)]
pub struct FrobData {
    /// R^J, the smaller ring.
    pub inner: InvariantRingId,
    /// R^I, the larger ring.
    pub outer: InvariantRingId,
    /// ℓ(w_J) − ℓ(w_I).
    pub degree_l: usize,
    /// Reduced word of the minimal coset representative w̄ with w_J = w̄·w_I.
    pub trace_word: Vec<usize>,
    pub c_basis: Vec<Poly>,
    pub d_basis: Vec<Poly>,
}

type Key = (usize, ParabolicSet, ParabolicSet);

fn cache() -> &'static Mutex<HashMap<Key, Arc<FrobData>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<FrobData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached dual-basis data for the extension R^J ⊂ R^I.
pub fn dual_bases(inner: &InvariantRingId, outer: &InvariantRingId) -> Result<Arc<FrobData>> {
    let key = (inner.n, outer.j.clone(), inner.j.clone());
    if let Some(fd) = cache().lock().unwrap().get(&key) {
        return Ok(fd.clone());
    }
    let fd = Arc::new(compute_dual_bases(inner, outer)?);
    // First writer wins; a concurrent duplicate computed the same canonical data.
    Ok(cache().lock().unwrap().entry(key).or_insert(fd).clone())
}

/// Convenience wrapper taking the parabolic sets directly.
pub fn frob(n: usize, outer: &ParabolicSet, inner: &ParabolicSet) -> Result<Arc<FrobData>> {
    dual_bases(&InvariantRingId::new(n, inner.clone())?, &InvariantRingId::new(n, outer.clone())?)
}

fn compute_dual_bases(inner: &InvariantRingId, outer: &InvariantRingId) -> Result<FrobData> {
    let n = inner.n;
    if outer.n != n || !outer.j.is_subset(&inner.j) {
        return Err(Error::NotNested(format!("{outer} is not an extension of {inner}")));
    }
    let wj = longest(&inner.j, n)?;
    let wi = longest(&outer.j, n)?;
    let wbar = wj.compose(&wi.inverse());
    let degree_l = wj.length() - wi.length();
    if wbar.length() != degree_l {
        return Err(Error::Solver("coset representative is not length-additive".into()));
    }
    let trace_word = wbar.reduced_word();
    let mut fd = FrobData {
        inner: inner.clone(),
        outer: outer.clone(),
        degree_l,
        trace_word,
        c_basis: Vec::new(),
        d_basis: Vec::new(),
    };

    // Graded rank of R^I over R^J, from the Hilbert series quotient.
    let mut ranks = vec![0usize; degree_l + 1];
    for k in 0..=degree_l {
        let d = 2 * k as i64;
        let mut r = outer.graded_dim(d) as i64;
        for (m, &rm) in ranks.iter().enumerate().take(k) {
            r -= rm as i64 * inner.graded_dim(d - 2 * m as i64) as i64;
        }
        if r < 0 {
            return Err(Error::Solver("negative graded rank".into()));
        }
        ranks[k] = r as usize;
    }

    let candidates: Vec<Vec<Poly>> =
        (0..=degree_l).map(|k| outer.graded_basis(2 * k as i64)).collect::<Result<_>>()?;
    let constant = |p: &Poly| fd.trace_unchecked(p).constant_term();

    // Choose c's degree by degree: greedily keep candidates that raise the rank
    // of the constant-term pairing against the complementary degree.
    let mut c_by_degree: Vec<Vec<Poly>> = Vec::new();
    for k in 0..=degree_l {
        let comp = &candidates[degree_l - k];
        let mut chosen: Vec<Poly> = Vec::new();
        let mut rows: Vec<Vec<crate::Rational>> = Vec::new();
        for cand in &candidates[k] {
            if chosen.len() == ranks[k] {
                break;
            }
            let row: Vec<_> = comp.iter().map(|g| constant(&(cand * g))).collect();
            let mut trial = rows.clone();
            trial.push(row.clone());
            if Matrix::from_rows(trial).rank() == rows.len() + 1 {
                rows.push(row);
                chosen.push(cand.clone());
            }
        }
        if chosen.len() != ranks[k] {
            return Err(Error::Solver(format!("found {} of {} basis elements in degree {}", chosen.len(), ranks[k], 2 * k)));
        }
        c_by_degree.push(chosen);
    }

    // Preliminary duals d' with trace(c_a d'_b) = δ_ab inside each degree.
    let mut prelim_by_degree: Vec<Vec<Poly>> = Vec::new();
    for k in 0..=degree_l {
        let cs = &c_by_degree[k];
        let comp = &candidates[degree_l - k];
        let pairing: Vec<Vec<crate::Rational>> =
            cs.iter().map(|c| comp.iter().map(|g| constant(&(c * g))).collect()).collect();
        let mut cols: Vec<usize> = Vec::new();
        for j in 0..comp.len() {
            if cols.len() == cs.len() {
                break;
            }
            let mut trial = cols.clone();
            trial.push(j);
            let sub = Matrix::from_rows(pairing.iter().map(|r| trial.iter().map(|&t| r[t].clone()).collect()).collect());
            if sub.rank() == trial.len() {
                cols = trial;
            }
        }
        let sub = Matrix::from_rows(pairing.iter().map(|r| cols.iter().map(|&t| r[t].clone()).collect()).collect());
        let inv = sub.inverse().ok_or_else(|| Error::Solver(format!("degenerate pairing in degree {}", 2 * k)))?;
        let mut ds = Vec::new();
        for b in 0..cs.len() {
            let mut d = Poly::zero(n);
            for (t, &col) in cols.iter().enumerate() {
                let coef = inv.get(t, b);
                if !coef.is_zero() {
                    d.add_assign_ref(&comp[col].scale(coef));
                }
            }
            ds.push(d);
        }
        prelim_by_degree.push(ds);
    }

    let c: Vec<Poly> = c_by_degree.into_iter().flatten().collect();
    let dp: Vec<Poly> = prelim_by_degree.into_iter().flatten().collect();
    let m = c.len();
    // M_ab = trace(c_a d'_b) is unitriangular; d = d'·M^{-1} via the nilpotent series.
    let mut lower: Vec<Vec<Poly>> = vec![vec![Poly::zero(n); m]; m];
    for a in 0..m {
        for b in 0..m {
            if a != b {
                let t = fd.trace_unchecked(&(&c[a] * &dp[b]));
                if !t.is_zero() && (c[a].geometric_degree() <= c[b].geometric_degree()) {
                    return Err(Error::Solver("pairing is not unitriangular".into()));
                }
                lower[a][b] = t;
            }
        }
    }
    let mut inv: Vec<Vec<Poly>> = (0..m)
        .map(|a| (0..m).map(|b| if a == b { Poly::one(n) } else { Poly::zero(n) }).collect())
        .collect();
    let mut power = inv.clone();
    for _ in 0..m {
        // power <- power · (−L)
        let mut next = vec![vec![Poly::zero(n); m]; m];
        for a in 0..m {
            for k in 0..m {
                if power[a][k].is_zero() {
                    continue;
                }
                for b in 0..m {
                    if !lower[k][b].is_zero() {
                        let t = &power[a][k] * &lower[k][b];
                        next[a][b] = &next[a][b] - &t;
                    }
                }
            }
        }
        if next.iter().flatten().all(|p| p.is_zero()) {
            break;
        }
        for a in 0..m {
            for b in 0..m {
                inv[a][b].add_assign_ref(&next[a][b]);
            }
        }
        power = next;
    }
    let d: Vec<Poly> = (0..m)
        .map(|b| {
            let mut acc = Poly::zero(n);
            for k in 0..m {
                if !inv[k][b].is_zero() {
                    acc.add_assign_ref(&(&dp[k] * &inv[k][b]));
                }
            }
            acc
        })
        .collect();
    fd.c_basis = c;
    fd.d_basis = d;
    for a in 0..m {
        for b in 0..m {
            let t = fd.trace_unchecked(&(&fd.c_basis[a] * &fd.d_basis[b]));
            let ok = if a == b { t.is_one() } else { t.is_zero() };
            if !ok {
                return Err(Error::Solver(format!("dual basis check failed at ({a},{b})")));
            }
        }
    }
    Ok(fd)
}

impl FrobData {
    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn rank(&self) -> usize {
        self.c_basis.len()
    }

    fn trace_unchecked(&self, f: &Poly) -> Poly {
        demazure_word(f, &self.trace_word)
    }

    /// Relative trace R^I → R^J.
    pub fn trace(&self, f: &Poly) -> Result<Poly> {
        if !self.outer.contains(f) {
            return Err(Error::NotInvariant(format!("{f} under {}", self.outer.j)));
        }
        Ok(self.trace_unchecked(f))
    }

    /// Coefficients a_i ∈ R^J with f = Σ a_i c_i.
    pub fn expand(&self, f: &Poly) -> Result<Vec<Poly>> {
        if !self.outer.contains(f) {
            return Err(Error::NotInvariant(format!("{f} under {}", self.outer.j)));
        }
        Ok(self.d_basis.iter().map(|d| self.trace_unchecked(&(f * d))).collect())
    }

    /// Geometric degrees of the c basis.
    pub fn c_degrees(&self) -> Vec<i64> {
        self.c_basis.iter().map(|p| p.geometric_degree().unwrap_or(0)).collect()
    }

    pub fn d_degrees(&self) -> Vec<i64> {
        self.d_basis.iter().map(|p| p.geometric_degree().unwrap_or(0)).collect()
    }

    /// Σ_i c_i d_i.
    pub fn casimir(&self) -> Poly {
        let mut acc = Poly::zero(self.n());
        for (c, d) in self.c_basis.iter().zip(&self.d_basis) {
            acc.add_assign_ref(&(c * d));
        }
        acc
    }

    pub fn report(&self) -> serde_json::Value {
        serde_json::json!({
            "inner": self.inner.j,
            "outer": self.outer.j,
            "n": self.n(),
            "degree_l": self.degree_l,
            "trace_word": self.trace_word,
            "c_basis": self.c_basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "c_degrees": self.c_degrees(),
            "d_basis": self.d_basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "d_degrees": self.d_degrees(),
        })
    }
}
