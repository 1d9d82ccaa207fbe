//! Deformed Grassmannian cohomology H_k^Σ = Sym_k(𝕏) / ⟨h_{N−k+i}(𝕏 − Σ) | i > 0⟩,
//! normal forms in the box-Schur basis, central idempotents and the local
//! tensor factorization.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coxeter::Partition;
use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rational};
use crate::linalg::Matrix;
use crate::symfunc::{box_partitions, complete_table, elem_scalar_table, elem_table, schur, Alphabet};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Distinct values of a sorted multiset with their multiplicities.
pub fn multiplicities(s: &[Rational]) -> Vec<(Rational, usize)> {
    let mut v = s.to_vec();
    v.sort();
    let mut out: Vec<(Rational, usize)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// All size-`k` multisubsets of `s`, each sorted, in lexicographic order.
pub fn multisubsets(s: &[Rational], k: usize) -> Vec<Vec<Rational>> {
    fn rec(groups: &[(Rational, usize)], k: usize, cur: &mut Vec<Rational>, out: &mut Vec<Vec<Rational>>) {
        let Some(((x, n), rest)) = groups.split_first() else {
            if k == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let cap: usize = rest.iter().map(|g| g.1).sum();
        for take in (0..=(*n).min(k)).rev() {
            if k - take > cap {
                continue;
            }
            cur.extend(std::iter::repeat(x.clone()).take(take));
            rec(rest, k - take, cur, out);
            cur.truncate(cur.len() - take);
        }
    }
    let mut out = Vec::new();
    rec(&multiplicities(s), k, &mut Vec::new(), &mut out);
    out
}

fn lex_lead(p: &Poly, k: usize) -> Option<(Vec<u32>, Rational)> {
    p.terms()
        .iter()
        .map(|(m, c)| (m.exponents(k), c))
        .max_by(|a, b| a.0.cmp(&b.0))
        .map(|(e, c)| (e, c.clone()))
}

fn add_scaled(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

fn kron(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

#[derive(Default)]
struct Cache {
    schur: HashMap<Partition, Poly>,
    normal: HashMap<Partition, Vec<Rational>>,
}

/// H_k^Σ with its structure constants in the Schur basis of the k × (N−k) box.
pub struct DeformAlg {
    sigma: Vec<Rational>,
    k: usize,
    basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
    table: Vec<Vec<Vec<Rational>>>,
    e_sigma: Vec<Rational>,
    cache: Mutex<Cache>,
}

impl std::fmt::Debug for DeformAlg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DeformAlg").field("sigma", &self.sigma).field("k", &self.k).field("dim", &self.dim()).finish()
    }
}

impl DeformAlg {
    pub fn build(sigma: &[Rational], k: usize) -> Result<DeformAlg> {
        let mut sigma = sigma.to_vec();
        sigma.sort();
        let n = sigma.len();
        if k > n {
            return Err(Error::Invalid(format!("k = {k} exceeds |Σ| = {n}")));
        }
        if k > 8 {
            return Err(Error::Invalid(format!("k = {k} exceeds the 8-variable limit")));
        }
        let basis = box_partitions(k, n - k);
        let index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut alg = DeformAlg {
            e_sigma: elem_scalar_table(&sigma, n),
            sigma,
            k,
            basis,
            index,
            table: Vec::new(),
            cache: Mutex::new(Cache::default()),
        };
        let dim = alg.dim();
        if dim != binomial(n, k) {
            return Err(Error::Solver(format!("basis has {dim} elements, expected C({n},{k})")));
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let p = &alg.schur_poly(&alg.basis[i])? * &alg.schur_poly(&alg.basis[j])?;
                let v = alg.reduce_symmetric(&p)?;
                table[j][i] = v.clone();
                table[i][j] = v;
            }
        }
        alg.table = table;
        for i in 1..=k {
            let r = alg.reduce(&alg.deformed_complete(n - k + i))?;
            if r.iter().any(|c| !c.is_zero()) {
                return Err(Error::Solver(format!("relation h_{}(X−Σ) does not reduce to zero", n - k + i)));
            }
        }
        Ok(alg)
    }

    pub fn sigma(&self) -> &[Rational] {
        &self.sigma
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    /// Coordinates of b_i · b_j.
    pub fn struct_const(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    pub fn unit(&self) -> Vec<Rational> {
        self.basis_vector(0)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                add_scaled(&mut out, &(x * y), &self.table[i][j]);
            }
        }
        out
    }

    /// Matrix of multiplication by `a` (column j = a · b_j).
    pub fn mult_operator(&self, a: &[Rational]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(a, &self.basis_vector(j));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// h_m(𝕏 − Σ) = Σ_j (−1)^j e_j(Σ) h_{m−j}(𝕏) as a polynomial in k variables.
    pub fn deformed_complete(&self, m: usize) -> Poly {
        let h = complete_table(self.k, &(1..=self.k).collect::<Vec<_>>(), m);
        let mut out = Poly::zero(self.k);
        for j in 0..=m.min(self.n()) {
            let c = if j % 2 == 0 { self.e_sigma[j].clone() } else { -self.e_sigma[j].clone() };
            out.add_assign_ref(&h[m - j].scale(&c));
        }
        out
    }

    pub fn elementary(&self, i: usize) -> Poly {
        elem_table(self.k, &(1..=self.k).collect::<Vec<_>>(), i).pop().unwrap()
    }

    fn schur_poly(&self, lam: &[usize]) -> Result<Poly> {
        if let Some(p) = self.cache.lock().unwrap().schur.get(lam) {
            return Ok(p.clone());
        }
        let p = schur(lam, &Alphabet::all_vars(self.k))?;
        self.cache.lock().unwrap().schur.insert(lam.to_vec(), p.clone());
        Ok(p)
    }

    /// Expansion of a symmetric polynomial in k variables into Schur polynomials.
    fn schur_expand(&self, p: &Poly) -> Result<Vec<(Partition, Rational)>> {
        let mut rest = p.clone();
        let mut out = Vec::new();
        while let Some((e, c)) = lex_lead(&rest, self.k) {
            if e.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotInvariant(format!("{p} is not symmetric in {} variables", self.k)));
            }
            let lam: Partition = e.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
            let s = self.schur_poly(&lam)?;
            rest = &rest - &s.scale(&c);
            out.push((lam, c));
        }
        Ok(out)
    }

    /// s_{λ'/μ'}(Σ) as det(e_{λ_i − μ_j − i + j}(Σ)).
    fn dual_skew(&self, lam: &[usize], mu: &[usize]) -> Rational {
        let l = lam.len();
        let m = Matrix::from_rows(
            (0..l)
                .map(|i| {
                    (0..l)
                        .map(|j| {
                            let idx = lam[i] as i64 - mu.get(j).copied().unwrap_or(0) as i64 - i as i64 + j as i64;
                            if idx < 0 || idx as usize >= self.e_sigma.len() {
                                Rational::zero()
                            } else {
                                self.e_sigma[idx as usize].clone()
                            }
                        })
                        .collect()
                })
                .collect(),
        );
        m.det()
    }

    /// Box-Schur coordinates of s_λ(𝕏).
    ///
    /// Outside the box, s_λ(𝕏 − Σ) lies in the ideal (first Jacobi–Trudi row) and
    /// s_λ(𝕏 − Σ) = Σ_{μ ⊆ λ} (−1)^{|λ/μ|} s_{λ'/μ'}(Σ) s_μ(𝕏) solves for s_λ(𝕏).
    fn normal_form(&self, lam: &[usize]) -> Vec<Rational> {
        if let Some(&i) = self.index.get(lam) {
            return self.basis_vector(i);
        }
        if lam.len() > self.k {
            return vec![Rational::zero(); self.dim()];
        }
        if let Some(v) = self.cache.lock().unwrap().normal.get(lam) {
            return v.clone();
        }
        let size: usize = lam.iter().sum();
        let mut out = vec![Rational::zero(); self.dim()];
        for mu in sub_partitions(lam) {
            let d = size - mu.iter().sum::<usize>();
            if d == 0 {
                continue;
            }
            let mut c = self.dual_skew(lam, &mu);
            if c.is_zero() {
                continue;
            }
            if d % 2 == 0 {
                c = -c;
            }
            let v = self.normal_form(&mu);
            add_scaled(&mut out, &c, &v);
        }
        self.cache.lock().unwrap().normal.insert(lam.to_vec(), out.clone());
        out
    }

    fn reduce_symmetric(&self, p: &Poly) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (lam, c) in self.schur_expand(p)? {
            add_scaled(&mut out, &c, &self.normal_form(&lam));
        }
        Ok(out)
    }

    /// Box-Schur coordinates of a symmetric polynomial in k variables.
    pub fn reduce(&self, p: &Poly) -> Result<Vec<Rational>> {
        if p.n_vars() != self.k {
            return Err(Error::VarMismatch(p.n_vars(), self.k));
        }
        for i in 1..self.k {
            if p.swap_vars(i, i + 1) != *p {
                return Err(Error::NotInvariant(format!("{p} is not symmetric")));
            }
        }
        self.reduce_symmetric(p)
    }

    /// Value of an element under the character 𝕏 ↦ A.
    pub fn character(&self, v: &[Rational], a: &[Rational]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            acc += &(c * &self.schur_poly(&self.basis[i])?.eval(a));
        }
        Ok(acc)
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|l| {
                    let a = self.mul(&self.table[i][j], &self.basis_vector(l));
                    let b = self.mul(&self.basis_vector(i), &self.table[j][l]);
                    a == b
                })
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn struct_consts_json(&self) -> serde_json::Value {
        let mut entries = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                for (l, c) in self.table[i][j].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    entries.push(serde_json::json!([i, j, l, c.to_string()]));
                }
            }
        }
        serde_json::Value::Array(entries)
    }

    /// Dump with basis, structure constants, idempotents and component dimensions.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let idems = idempotents(self)?;
        let dims = component_dims(self, &idems);
        Ok(serde_json::json!({
            "sigma": self.sigma.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "k": self.k,
            "dim": self.dim(),
            "basis": self.basis,
            "struct_consts": self.struct_consts_json(),
            "idempotents": idems.iter().map(|e| serde_json::json!({
                "colour": e.colour.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "element": e.element.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "component_dims": dims,
        }))
    }
}

/// Partitions contained in `lam` (including `lam`).
fn sub_partitions(lam: &[usize]) -> Vec<Partition> {
    fn rec(lam: &[usize], i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == lam.len() {
            out.push(cur.iter().copied().filter(|&x| x > 0).collect());
            return;
        }
        for p in 0..=lam[i].min(max) {
            cur.push(p);
            rec(lam, i + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lam, 0, usize::MAX, &mut Vec::new(), &mut out);
    out
}

pub fn build(sigma: &[Rational], k: usize) -> Result<DeformAlg> {
    DeformAlg::build(sigma, k)
}

pub fn reduce(alg: &DeformAlg, p: &Poly) -> Result<Vec<Rational>> {
    alg.reduce(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralIdem {
    pub colour: Vec<Rational>,
    pub element: Vec<Rational>,
}

// Univariate polynomials as coefficient vectors, lowest degree first.
fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Coefficients of p(s + a) in s.
fn upoly_shift(p: &[Rational], a: &Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for c in p.iter().rev() {
        // out = out·(s + a) + c
        let mut next = vec![Rational::zero(); out.len() + 1];
        for (i, x) in out.iter().enumerate() {
            next[i + 1] += x;
            next[i] += &(x * a);
        }
        next[0] += c;
        out = next;
    }
    out
}

/// Power-series inverse of p to order m (requires p(0) ≠ 0).
fn series_inverse(p: &[Rational], m: usize) -> Vec<Rational> {
    let inv0 = p[0].recip();
    let mut g = vec![Rational::zero(); m];
    for i in 0..m {
        let mut acc = if i == 0 { Rational::one() } else { Rational::zero() };
        for j in 1..=i.min(p.len() - 1) {
            acc -= &(&p[j] * &g[i - j]);
        }
        g[i] = &acc * &inv0;
    }
    g
}

/// Nilpotent index bound of (M − a): dimension of the generalized eigenspace.
fn generalized_multiplicity(m: &Matrix, a: &Rational) -> usize {
    let n = m.rows;
    let shifted = m.sub(&Matrix::identity(n).scale(a));
    let mut pow = shifted.clone();
    let mut rank = pow.rank();
    loop {
        let next = pow.mul(&shifted);
        let r = next.rank();
        if r == rank {
            return n - rank;
        }
        pow = next;
        rank = r;
    }
}

/// Complete orthogonal central idempotents, one per size-k multisubset A ⊂ Σ.
pub fn idempotents(alg: &DeformAlg) -> Result<Vec<CentralIdem>> {
    let colours = multisubsets(&alg.sigma, alg.k);
    if colours.len() == 1 {
        return Ok(vec![CentralIdem { colour: colours[0].clone(), element: alg.unit() }]);
    }
    let e: Vec<Vec<Rational>> = (1..=alg.k).map(|i| alg.reduce(&alg.elementary(i))).collect::<Result<_>>()?;
    let e_at: Vec<Vec<Rational>> = colours.iter().map(|a| elem_scalar_table(a, alg.k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut coeffs: Vec<i64> = (0..alg.k).map(|i| if i == 0 { 1 } else { 0 }).collect();
    for _attempt in 0..64 {
        let values: Vec<Rational> = e_at
            .iter()
            .map(|ea| coeffs.iter().enumerate().fold(Rational::zero(), |acc, (i, &c)| acc + &ea[i + 1] * &Rational::from(c)))
            .collect();
        let mut sorted = values.clone();
        sorted.sort();
        if sorted.windows(2).all(|w| w[0] != w[1]) {
            return crt_idempotents(alg, &colours, &values, &e, &coeffs);
        }
        coeffs = (0..alg.k).map(|_| rng.gen_range(-9..=9)).collect();
    }
    Err(Error::Solver(format!("no separating element found for Σ = {:?}, k = {}", alg.sigma, alg.k)))
}

fn crt_idempotents(
    alg: &DeformAlg,
    colours: &[Vec<Rational>],
    values: &[Rational],
    e: &[Vec<Rational>],
    coeffs: &[i64],
) -> Result<Vec<CentralIdem>> {
    let mut u = vec![Rational::zero(); alg.dim()];
    for (i, &c) in coeffs.iter().enumerate() {
        add_scaled(&mut u, &Rational::from(c), &e[i]);
    }
    let mu = alg.mult_operator(&u);
    let mults: Vec<usize> = values.iter().map(|a| generalized_multiplicity(&mu, a)).collect();
    if mults.iter().sum::<usize>() != alg.dim() {
        return Err(Error::Solver(format!("generalized eigenspaces {mults:?} do not fill dimension {}", alg.dim())));
    }
    let mut out = Vec::with_capacity(colours.len());
    for (a, colour) in colours.iter().enumerate() {
        let mut h = vec![Rational::one()];
        for (b, vb) in values.iter().enumerate() {
            if b != a {
                for _ in 0..mults[b] {
                    h = upoly_mul(&h, &[-vb.clone(), Rational::one()]);
                }
            }
        }
        let va = &values[a];
        let g = series_inverse(&upoly_shift(&h, va), mults[a].max(1));
        let g_t = upoly_shift(&g, &-va.clone());
        let f = upoly_mul(&g_t, &h);
        // Horner evaluation of f(u)·1.
        let one = alg.unit();
        let mut v = vec![Rational::zero(); alg.dim()];
        for c in f.iter().rev() {
            v = mu.mul_vec(&v);
            add_scaled(&mut v, c, &one);
        }
        out.push(CentralIdem { colour: colour.clone(), element: v });
    }
    let report = check_idempotents(alg, &out);
    if !report.all() {
        return Err(Error::Solver(format!("idempotent verification failed: {report:?}")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdemReport {
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
    pub central: bool,
}

impl IdemReport {
    pub fn all(&self) -> bool {
        self.idempotent && self.orthogonal && self.complete && self.central
    }
}

pub fn check_idempotents(alg: &DeformAlg, idems: &[CentralIdem]) -> IdemReport {
    let zero = vec![Rational::zero(); alg.dim()];
    let idempotent = idems.iter().all(|e| alg.mul(&e.element, &e.element) == e.element);
    let orthogonal = idems
        .iter()
        .enumerate()
        .all(|(i, a)| idems[..i].iter().all(|b| alg.mul(&a.element, &b.element) == zero));
    let mut sum = zero.clone();
    for e in idems {
        add_scaled(&mut sum, &Rational::one(), &e.element);
    }
    let complete = sum == alg.unit();
    let central = alg.is_commutative();
    IdemReport { idempotent, orthogonal, complete, central }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDim {
    pub colour: Vec<Rational>,
    pub dim: usize,
    /// ∏ C(N_i, k_i) over the distinct roots.
    pub expected: usize,
}

pub fn expected_component_dim(sigma: &[Rational], colour: &[Rational]) -> usize {
    let mc = multiplicities(colour);
    multiplicities(sigma)
        .iter()
        .map(|(x, n)| binomial(*n, mc.iter().find(|(y, _)| y == x).map_or(0, |p| p.1)))
        .product()
}

pub fn component_dims(alg: &DeformAlg, idems: &[CentralIdem]) -> Vec<ComponentDim> {
    idems
        .iter()
        .map(|e| ComponentDim {
            colour: e.colour.clone(),
            dim: alg.mult_operator(&e.element).rank(),
            expected: expected_component_dim(&alg.sigma, &e.colour),
        })
        .collect()
}

/// Tensor product of deformed algebras, multiplied factorwise; basis index is
/// the mixed-radix multi-index with the first factor most significant.
#[derive(Debug)]
pub struct TensorAlg {
    pub factors: Vec<DeformAlg>,
}

impl TensorAlg {
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).product()
    }

    fn split_index(&self, mut i: usize) -> Vec<usize> {
        let mut idx = vec![0; self.factors.len()];
        for (f, slot) in self.factors.iter().zip(idx.iter_mut()).rev() {
            *slot = i % f.dim();
            i /= f.dim();
        }
        idx
    }

    pub fn unit(&self) -> Vec<Rational> {
        self.factors.iter().fold(vec![Rational::one()], |acc, f| kron(&acc, &f.unit()))
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Rational> {
        let (a, b) = (self.split_index(i), self.split_index(j));
        self.factors
            .iter()
            .enumerate()
            .fold(vec![Rational::one()], |acc, (f, alg)| kron(&acc, alg.struct_const(a[f], b[f])))
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                add_scaled(&mut out, &(x * y), &self.basis_product(i, j));
            }
        }
        out
    }
}

/// ⊗_i H_{a_i}^Σ for a sequence of labels.
pub fn end_ring(labels: &[usize], sigma: &[Rational]) -> Result<TensorAlg> {
    if let Some(&a) = labels.iter().find(|&&a| a > sigma.len()) {
        return Err(Error::Invalid(format!("label {a} exceeds N = {}", sigma.len())));
    }
    let factors = labels.iter().map(|&a| DeformAlg::build(sigma, a)).collect::<Result<_>>()?;
    Ok(TensorAlg { factors })
}

/// Expansion of a polynomial symmetric in each block of consecutive variables
/// into products of Schur polynomials of the blocks.
fn block_schur_expand(p: &Poly, blocks: &[usize]) -> Result<Vec<(Vec<Partition>, Rational)>> {
    let k: usize = blocks.iter().sum();
    let mut cache: HashMap<Vec<Partition>, Poly> = HashMap::new();
    let mut rest = p.clone();
    let mut out = Vec::new();
    while let Some((e, c)) = lex_lead(&rest, k) {
        let mut parts = Vec::with_capacity(blocks.len());
        let mut start = 0;
        for &b in blocks {
            let seg = &e[start..start + b];
            if seg.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotInvariant(format!("{p} is not block-symmetric for {blocks:?}")));
            }
            parts.push(seg.iter().map(|&x| x as usize).filter(|&x| x > 0).collect::<Partition>());
            start += b;
        }
        if !cache.contains_key(&parts) {
            let mut prod = Poly::one(k);
            let mut start = 1;
            for (b, lam) in blocks.iter().zip(&parts) {
                prod = &prod * &schur(lam, &Alphabet::range(k, start, *b))?;
                start += b;
            }
            cache.insert(parts.clone(), prod);
        }
        rest = &rest - &cache[&parts].scale(&c);
        out.push((parts, c));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlignReport {
    pub colour: Vec<Rational>,
    /// (root, N_i, k_i) for each root with k_i > 0.
    pub factors: Vec<(Rational, usize, usize)>,
    pub component_dim: usize,
    pub tensor_dim: usize,
    pub unital: bool,
    pub multiplicative: bool,
    pub separates: bool,
    pub bijective: bool,
    /// Each factor H_{k_i}^{λ_i^{N_i}} matches H_{k_i}^{0^{N_i}} through x ↦ x + λ_i.
    pub shift_aligned: bool,
    pub ok: bool,
    /// Both structure-constant tables when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<(serde_json::Value, Vec<serde_json::Value>)>,
}

/// Image of the basis of `alg` under p(𝕏) ↦ p(𝕏_1 ⊔ … ⊔ 𝕏_r) into ⊗ factors.
fn restriction_images(alg: &DeformAlg, t: &TensorAlg, blocks: &[usize]) -> Result<Vec<Vec<Rational>>> {
    alg.basis
        .iter()
        .map(|lam| {
            let p = alg.schur_poly(lam)?;
            let mut out = vec![Rational::zero(); t.dim()];
            for (parts, c) in block_schur_expand(&p, blocks)? {
                let v = t
                    .factors
                    .iter()
                    .zip(&parts)
                    .fold(vec![Rational::one()], |acc, (f, mu)| kron(&acc, &f.normal_form(mu)));
                add_scaled(&mut out, &c, &v);
            }
            Ok(out)
        })
        .collect()
}

fn apply(images: &[Vec<Rational>], v: &[Rational], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (c, img) in v.iter().zip(images) {
        add_scaled(&mut out, c, img);
    }
    out
}

/// Checks that a linear map given on basis images is a unital algebra isomorphism.
fn is_algebra_iso(
    images: &[Vec<Rational>],
    dim_tgt: usize,
    src_mul: &dyn Fn(usize, usize) -> Vec<Rational>,
    tgt_mul: &dyn Fn(&[Rational], &[Rational]) -> Vec<Rational>,
) -> bool {
    let n = images.len();
    if n != dim_tgt {
        return false;
    }
    let m = Matrix::from_rows(images.to_vec());
    if m.rank() != n {
        return false;
    }
    (0..n).all(|i| (i..n).all(|j| apply(images, &src_mul(i, j), dim_tgt) == tgt_mul(&images[i], &images[j])))
}

/// Verifies 𝟙_A·H_k^Σ ≅ ⊗_i H_{k_i}^{λ_i^{N_i}} through the restriction map, and
/// each factor against the undeformed algebra through the shift x ↦ x + λ_i.
pub fn tensor_align_check(alg: &DeformAlg, colour: &[Rational]) -> Result<AlignReport> {
    tensor_align_check_with(alg, colour, &idempotents(alg)?)
}

/// As [`tensor_align_check`], reusing precomputed idempotents.
pub fn tensor_align_check_with(alg: &DeformAlg, colour: &[Rational], idems: &[CentralIdem]) -> Result<AlignReport> {
    let mut colour = colour.to_vec();
    colour.sort();
    if colour.len() != alg.k {
        return Err(Error::Invalid(format!("colour {colour:?} does not have size {}", alg.k)));
    }
    let sm = multiplicities(&alg.sigma);
    let mut factors = Vec::new();
    for (x, ki) in multiplicities(&colour) {
        let ni = sm.iter().find(|(y, _)| *y == x).map_or(0, |p| p.1);
        if ki > ni {
            return Err(Error::Invalid(format!("colour {colour:?} is not a multisubset of Σ")));
        }
        factors.push((x, ni, ki));
    }
    let t = TensorAlg {
        factors: factors.iter().map(|(x, n, k)| DeformAlg::build(&vec![x.clone(); *n], *k)).collect::<Result<_>>()?,
    };
    let blocks: Vec<usize> = factors.iter().map(|f| f.2).collect();
    let psi = restriction_images(alg, &t, &blocks)?;
    let unital = psi[0] == t.unit();
    let multiplicative = (0..alg.dim())
        .all(|i| (i..alg.dim()).all(|j| apply(&psi, &alg.table[i][j], t.dim()) == t.mul(&psi[i], &psi[j])));

    let zero = vec![Rational::zero(); t.dim()];
    let mut separates = true;
    let mut own = None;
    for e in idems {
        let img = apply(&psi, &e.element, t.dim());
        if e.colour == colour {
            separates &= img == t.unit();
            own = Some(e.element.clone());
        } else {
            separates &= img == zero;
        }
    }
    let own = own.ok_or_else(|| Error::Invalid(format!("no idempotent for colour {colour:?}")))?;
    let component: Vec<Vec<Rational>> = (0..alg.dim()).map(|j| alg.mul(&own, &alg.basis_vector(j))).collect();
    let component_dim = Matrix::from_rows(component.clone()).rank();
    let image_rank = Matrix::from_rows(component.iter().map(|v| apply(&psi, v, t.dim())).collect()).rank();
    let bijective = component_dim == t.dim() && image_rank == t.dim();

    let mut shift_aligned = true;
    for ((x, n, k), f) in factors.iter().zip(&t.factors) {
        let undeformed = DeformAlg::build(&vec![Rational::zero(); *n], *k)?;
        let shifted: Vec<Poly> = (1..=*k).map(|i| &Poly::var(*k, i) + &Poly::constant(*k, x.clone())).collect();
        let images: Vec<Vec<Rational>> = f
            .basis
            .iter()
            .map(|lam| undeformed.reduce(&f.schur_poly(lam)?.substitute(&shifted)))
            .collect::<Result<_>>()?;
        shift_aligned &= is_algebra_iso(
            &images,
            undeformed.dim(),
            &|i, j| f.table[i][j].clone(),
            &|a, b| undeformed.mul(a, b),
        );
    }

    let ok = unital && multiplicative && separates && bijective && shift_aligned;
    let tables = (!ok).then(|| (alg.struct_consts_json(), t.factors.iter().map(|f| f.struct_consts_json()).collect()));
    Ok(AlignReport {
        colour,
        factors,
        component_dim,
        tensor_dim: t.dim(),
        unital,
        multiplicative,
        separates,
        bijective,
        shift_aligned,
        ok,
        tables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn binomials_and_multisubsets() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(multisubsets(&q(&[1, 1, -1, -1]), 2), vec![q(&[-1, -1]), q(&[-1, 1]), q(&[1, 1])]);
        assert_eq!(multisubsets(&q(&[0, 0]), 1).len(), 1);
        assert_eq!(multisubsets(&q(&[3]), 0), vec![Vec::<Rational>::new()]);
    }

    #[test]
    fn trivial_and_lee() {
        let a = build(&q(&[3]), 1).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.reduce(&parse_poly("x1", 1).unwrap()).unwrap(), q(&[3]));

        let lee = build(&q(&[1, -1]), 1).unwrap();
        assert_eq!(lee.dim(), 2);
        let x = lee.reduce(&parse_poly("x1", 1).unwrap()).unwrap();
        assert_eq!(x, q(&[0, 1]));
        assert_eq!(lee.mul(&x, &x), q(&[1, 0]));
        let idems = idempotents(&lee).unwrap();
        let half = Rational::new(1, 2);
        assert_eq!(idems[0].colour, q(&[-1]));
        assert_eq!(idems[0].element, vec![half.clone(), -half.clone()]);
        assert_eq!(idems[1].element, vec![half.clone(), half]);
    }

    #[test]
    fn deformed_polynomial_vanishes() {
        let s = q(&[2, -1, 0, 1]);
        let a = build(&s, 1).unwrap();
        let p = s.iter().fold(Poly::one(1), |acc, r| &acc * &(&Poly::var(1, 1) - &Poly::constant(1, r.clone())));
        assert!(a.reduce(&p).unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn undeformed_dimensions_and_products() {
        for n in 0..=5 {
            for k in 0..=n {
                let a = build(&vec![Rational::zero(); n], k).unwrap();
                assert_eq!(a.dim(), binomial(n, k));
                assert!(a.is_associative());
                assert_eq!(idempotents(&a).unwrap().len(), 1);
            }
        }
        // Gr(2,4): s_1^2 = s_2 + s_11, s_1 s_21 = s_22, s_2^2 = s_22.
        let a = build(&vec![Rational::zero(); 4], 2).unwrap();
        let idx = |p: &[usize]| a.basis().iter().position(|b| b == p).unwrap();
        let s1 = a.basis_vector(idx(&[1]));
        let sq = a.mul(&s1, &s1);
        let mut expect = vec![Rational::zero(); 6];
        expect[idx(&[2])] = Rational::one();
        expect[idx(&[1, 1])] = Rational::one();
        assert_eq!(sq, expect);
        let s2 = a.basis_vector(idx(&[2]));
        assert_eq!(a.mul(&s2, &s2), a.basis_vector(idx(&[2, 2])));
        assert_eq!(a.mul(&s2, &a.basis_vector(idx(&[1, 1]))), vec![Rational::zero(); 6]);
    }

    #[test]
    fn complete_substitution_rule() {
        // h_m(𝕏) = Σ_{j≥1} (−1)^{j+1} e_j(Σ) h_{m−j}(𝕏) in the quotient, for m > N − k.
        let s = q(&[1, 2, -1, 0, 2]);
        for k in 1..=3 {
            let a = build(&s, k).unwrap();
            let vars: Vec<usize> = (1..=k).collect();
            let h = complete_table(k, &vars, 8);
            let e = elem_scalar_table(&s, s.len());
            for m in s.len() - k + 1..=8 {
                let lhs = a.reduce(&h[m]).unwrap();
                let mut rhs = vec![Rational::zero(); a.dim()];
                for j in 1..=m.min(s.len()) {
                    let c = if j % 2 == 1 { e[j].clone() } else { -e[j].clone() };
                    add_scaled(&mut rhs, &c, &a.reduce(&h[m - j]).unwrap());
                }
                assert_eq!(lhs, rhs, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn idempotents_and_components() {
        let a = build(&q(&[1, 1, -1]), 1).unwrap();
        let idems = idempotents(&a).unwrap();
        let dims = component_dims(&a, &idems);
        assert_eq!(dims.iter().map(|d| (d.dim, d.expected)).collect::<Vec<_>>(), vec![(1, 1), (2, 2)]);

        let b = build(&q(&[1, 1, -1, -1]), 2).unwrap();
        let idems = idempotents(&b).unwrap();
        assert!(check_idempotents(&b, &idems).all());
        let dims: Vec<usize> = component_dims(&b, &idems).iter().map(|d| d.dim).collect();
        assert_eq!(dims, vec![1, 4, 1]);
    }

    #[test]
    fn characters_separate_components() {
        let a = build(&q(&[2, 0, -1]), 2).unwrap();
        for e in idempotents(&a).unwrap() {
            for other in multisubsets(a.sigma(), 2) {
                let v = a.character(&e.element, &other).unwrap();
                assert_eq!(v, if other == e.colour { Rational::one() } else { Rational::zero() });
            }
        }
    }

    #[test]
    fn alignment() {
        let a = build(&q(&[1, 1, -1]), 1).unwrap();
        let r = tensor_align_check(&a, &q(&[1])).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!((r.component_dim, r.tensor_dim), (2, 2));

        let b = build(&q(&[1, 1, -1, -1]), 2).unwrap();
        for c in multisubsets(b.sigma(), 2) {
            let r = tensor_align_check(&b, &c).unwrap();
            assert!(r.ok, "{r:?}");
        }
        let full = build(&q(&[2, -1, 2]), 3).unwrap();
        assert!(tensor_align_check(&full, &q(&[2, -1, 2])).unwrap().ok);
    }

    #[test]
    fn lee_end_ring() {
        let s = q(&[1, -1]);
        for l in 0..=4 {
            let t = end_ring(&vec![1; l], &s).unwrap();
            assert_eq!(t.dim(), 1 << l);
        }
        assert!(end_ring(&[3], &s).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        let a = build(&q(&[1, 2, 3]), 2).unwrap();
        assert!(a.reduce(&parse_poly("x1", 2).unwrap()).is_err());
        assert!(build(&q(&[1]), 2).is_err());
    }
}
