//! Progressive webs as slice lists, admissible multisubset colourings and the
//! object-splitting bookkeeping for coloured foam objects.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::Rational;
use crate::grasscohom::{binomial, build, component_dims, idempotents, multiplicities, multisubsets};

/// A sequence of edge labels; zero labels are erased.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WebObject(Vec<usize>);

impl WebObject {
    pub fn new(labels: impl IntoIterator<Item = usize>) -> Self {
        WebObject(labels.into_iter().filter(|&a| a > 0).collect())
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceKind {
    /// a + b at `pos` becomes a, b.
    Split,
    /// a, b at `pos`, `pos + 1` become a + b.
    Merge,
}

/// One trivalent vertex; `pos` is one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slice {
    pub kind: SliceKind,
    pub pos: usize,
    pub a: usize,
    pub b: usize,
}

impl Slice {
    pub fn split(pos: usize, a: usize, b: usize) -> Self {
        Slice { kind: SliceKind::Split, pos, a, b }
    }

    pub fn merge(pos: usize, a: usize, b: usize) -> Self {
        Slice { kind: SliceKind::Merge, pos, a, b }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Web {
    pub source: WebObject,
    pub slices: Vec<Slice>,
}

impl Web {
    pub fn identity(source: WebObject) -> Self {
        Web { source, slices: Vec::new() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("web serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Web> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Stacks `other` on top of `self`.
    pub fn then(&self, other: &Web) -> Result<Web> {
        if validate_web(self)? != other.source {
            return Err(Error::Invalid("webs do not compose".into()));
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&other.slices);
        Ok(Web { source: self.source.clone(), slices })
    }
}

fn apply_slice(cur: &mut Vec<usize>, s: &Slice, step: usize) -> Result<()> {
    let bad = |msg: String| Err(Error::Invalid(format!("slice {step}: {msg}")));
    if s.a == 0 || s.b == 0 {
        return bad("zero label".into());
    }
    if s.pos == 0 {
        return bad("positions are one-based".into());
    }
    let p = s.pos - 1;
    match s.kind {
        SliceKind::Split => {
            if p >= cur.len() {
                return bad(format!("split position {} out of range for {cur:?}", s.pos));
            }
            if cur[p] != s.a + s.b {
                return bad(format!("cannot split {} into {} + {}", cur[p], s.a, s.b));
            }
            cur.splice(p..=p, [s.a, s.b]);
        }
        SliceKind::Merge => {
            if p + 1 >= cur.len() {
                return bad(format!("merge position {} out of range for {cur:?}", s.pos));
            }
            if (cur[p], cur[p + 1]) != (s.a, s.b) {
                return bad(format!("expected ({}, {}), found ({}, {})", s.a, s.b, cur[p], cur[p + 1]));
            }
            cur.splice(p..=p + 1, [s.a + s.b]);
        }
    }
    Ok(())
}

/// Runs the slices and returns the target object.
pub fn validate_web(w: &Web) -> Result<WebObject> {
    let mut cur = w.source.0.clone();
    for (i, s) in w.slices.iter().enumerate() {
        apply_slice(&mut cur, s, i)?;
    }
    Ok(WebObject(cur))
}

/// Edges of a web: the source strands first, then the edges created by each slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLayout {
    pub labels: Vec<usize>,
    /// For each slice, (incoming edge ids, outgoing edge ids).
    pub vertices: Vec<(Vec<usize>, Vec<usize>)>,
    pub target: Vec<usize>,
}

pub fn edge_layout(w: &Web) -> Result<EdgeLayout> {
    validate_web(w)?;
    let mut labels = w.source.0.clone();
    let mut live: Vec<usize> = (0..labels.len()).collect();
    let mut vertices = Vec::new();
    for s in &w.slices {
        let p = s.pos - 1;
        match s.kind {
            SliceKind::Split => {
                let (ea, eb) = (labels.len(), labels.len() + 1);
                labels.extend([s.a, s.b]);
                vertices.push((vec![live[p]], vec![ea, eb]));
                live.splice(p..=p, [ea, eb]);
            }
            SliceKind::Merge => {
                let e = labels.len();
                labels.push(s.a + s.b);
                vertices.push((vec![live[p], live[p + 1]], vec![e]));
                live.splice(p..=p + 1, [e]);
            }
        }
    }
    Ok(EdgeLayout { labels, vertices, target: live })
}

/// Per-edge multisubsets, indexed as in [`edge_layout`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Colouring {
    pub edges: Vec<Vec<Rational>>,
}

fn union(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut v = [a, b].concat();
    v.sort();
    v
}

fn is_submultiset(a: &[Rational], s: &[Rational]) -> bool {
    let ms = multiplicities(s);
    multiplicities(a).iter().all(|(x, n)| ms.iter().any(|(y, m)| y == x && n <= m))
}

fn difference(c: &[Rational], a: &[Rational]) -> Vec<Rational> {
    let mut out = c.to_vec();
    for x in a {
        let i = out.iter().position(|y| y == x).expect("submultiset");
        out.remove(i);
    }
    out
}

/// All colourings by multisubsets of Σ satisfying the flow condition A ⊎ B = C
/// at every vertex, in lexicographic order of source colours then split choices.
pub fn enumerate_admissible(w: &Web, sigma: &[Rational]) -> Result<Vec<Colouring>> {
    let layout = edge_layout(w)?;
    let n = sigma.len();
    if let Some(&a) = layout.labels.iter().find(|&&a| a > n) {
        return Err(Error::Invalid(format!("label {a} exceeds N = {n}")));
    }
    let mut sources: Vec<Vec<Vec<Rational>>> = vec![Vec::new()];
    for &a in w.source.labels() {
        let choices = multisubsets(sigma, a);
        sources = sources
            .into_iter()
            .flat_map(|s| {
                choices.iter().map(move |c| {
                    let mut t = s.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    let out: Vec<Vec<Colouring>> = sources
        .into_par_iter()
        .map(|src| {
            let mut edges: Vec<Option<Vec<Rational>>> = vec![None; layout.labels.len()];
            for (i, c) in src.into_iter().enumerate() {
                edges[i] = Some(c);
            }
            let mut acc = Vec::new();
            extend_colouring(&layout, sigma, 0, &mut edges, &mut acc);
            acc
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

fn extend_colouring(
    layout: &EdgeLayout,
    sigma: &[Rational],
    v: usize,
    edges: &mut Vec<Option<Vec<Rational>>>,
    out: &mut Vec<Colouring>,
) {
    let Some((ins, outs)) = layout.vertices.get(v) else {
        out.push(Colouring { edges: edges.iter().map(|e| e.clone().expect("edge coloured")).collect() });
        return;
    };
    if ins.len() == 2 {
        let c = union(edges[ins[0]].as_ref().unwrap(), edges[ins[1]].as_ref().unwrap());
        if !is_submultiset(&c, sigma) {
            return;
        }
        edges[outs[0]] = Some(c);
        extend_colouring(layout, sigma, v + 1, edges, out);
        edges[outs[0]] = None;
    } else {
        let c = edges[ins[0]].clone().unwrap();
        for a in multisubsets(&c, layout.labels[outs[0]]) {
            let b = difference(&c, &a);
            edges[outs[0]] = Some(a);
            edges[outs[1]] = Some(b);
            extend_colouring(layout, sigma, v + 1, edges, out);
        }
        edges[outs[0]] = None;
        edges[outs[1]] = None;
    }
}

/// Distinct (source colours, target colours) pairs carried by admissible colourings.
pub fn boundary_colourings(w: &Web, sigma: &[Rational]) -> Result<Vec<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)>> {
    let layout = edge_layout(w)?;
    let mut out: Vec<_> = enumerate_admissible(w, sigma)?
        .into_iter()
        .map(|c| {
            let src = (0..w.source.len()).map(|e| c.edges[e].clone()).collect();
            let tgt = layout.target.iter().map(|&e| c.edges[e].clone()).collect();
            (src, tgt)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Inserts a split of the strand at `pos` into (a, b) immediately merged back.
pub fn insert_bubble(w: &Web, after: usize, pos: usize, a: usize) -> Result<Web> {
    let mut prefix = Web { source: w.source.clone(), slices: w.slices[..after.min(w.slices.len())].to_vec() };
    let mid = validate_web(&prefix)?;
    let label = *mid.labels().get(pos.wrapping_sub(1)).ok_or_else(|| Error::Invalid(format!("no strand at {pos}")))?;
    if a == 0 || a >= label {
        return Err(Error::Invalid(format!("cannot split {label} with part {a}")));
    }
    prefix.slices.push(Slice::split(pos, a, label - a));
    prefix.slices.push(Slice::merge(pos, a, label - a));
    prefix.slices.extend_from_slice(&w.slices[after.min(w.slices.len())..]);
    validate_web(&prefix)?;
    Ok(prefix)
}

/// Flow condition check for a given colouring.
pub fn is_admissible(w: &Web, sigma: &[Rational], c: &Colouring) -> Result<bool> {
    let layout = edge_layout(w)?;
    if c.edges.len() != layout.labels.len() {
        return Ok(false);
    }
    let sizes = c.edges.iter().zip(&layout.labels).all(|(e, &l)| e.len() == l && is_submultiset(e, sigma));
    let flow = layout.vertices.iter().all(|(ins, outs)| {
        let lhs = ins.iter().fold(Vec::new(), |acc, &e| union(&acc, &c.edges[e]));
        let rhs = outs.iter().fold(Vec::new(), |acc, &e| union(&acc, &c.edges[e]));
        lhs == rhs
    });
    Ok(sizes && flow)
}

/// A label together with a colour of the same size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColouredPoint {
    pub label: usize,
    pub colour: Vec<Rational>,
    /// Dimension of the endomorphism algebra, when known.
    pub end_dim: Option<usize>,
}

/// k ≃ ⊞_A k[A], with the End-algebra dimension of each summand.
pub fn split_object(k: usize, sigma: &[Rational]) -> Result<Vec<ColouredPoint>> {
    let alg = build(sigma, k)?;
    let idems = idempotents(&alg)?;
    Ok(component_dims(&alg, &idems)
        .into_iter()
        .map(|d| ColouredPoint { label: k, colour: d.colour, end_dim: Some(d.dim) })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refinement {
    pub points: Vec<ColouredPoint>,
    pub split_web: Web,
    pub merge_web: Web,
}

/// k[A] ≃ ⊠_i k_i[λ_i^{k_i}] through minimal caterpillar trees, roots ascending.
pub fn refine_object(k: usize, colour: &[Rational]) -> Result<Refinement> {
    if colour.len() != k {
        return Err(Error::Invalid(format!("colour {colour:?} does not have size {k}")));
    }
    let groups = multiplicities(colour);
    let points: Vec<ColouredPoint> = groups
        .iter()
        .map(|(x, m)| ColouredPoint { label: *m, colour: vec![x.clone(); *m], end_dim: None })
        .collect();
    let sizes: Vec<usize> = groups.iter().map(|g| g.1).collect();
    let l = sizes.len();
    let mut merges = Vec::new();
    let mut acc = sizes.first().copied().unwrap_or(0);
    for &s in sizes.iter().skip(1) {
        merges.push(Slice::merge(1, acc, s));
        acc += s;
    }
    let mut splits = Vec::new();
    let mut rest = k;
    for i in (1..l).rev() {
        splits.push(Slice::split(1, rest - sizes[i], sizes[i]));
        rest -= sizes[i];
    }
    Ok(Refinement {
        points,
        split_web: Web { source: WebObject::new([k]), slices: splits },
        merge_web: Web { source: WebObject::new(sizes), slices: merges },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    /// (root λ_i, N_i, k_i) for every distinct root.
    pub parts: Vec<(Rational, usize, usize)>,
    /// ∏ C(N_i, k_i).
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub k: usize,
    pub n: usize,
    pub summands: Vec<Summand>,
    pub total: usize,
    pub binomial: usize,
    pub vandermonde: bool,
}

/// k ≃ ⊞_{Σ k_i = k} ⊠_i k_i[λ_i^{N_i}] counted by binomial products.
pub fn decomposition_counts(k: usize, sigma: &[Rational]) -> Result<DecompositionReport> {
    let n = sigma.len();
    if k > n {
        return Err(Error::Invalid(format!("k = {k} exceeds N = {n}")));
    }
    let groups = multiplicities(sigma);
    let mut summands = Vec::new();
    let mut ks = vec![0usize; groups.len()];
    fn rec(groups: &[(Rational, usize)], i: usize, left: usize, ks: &mut Vec<usize>, out: &mut Vec<Summand>) {
        if i == groups.len() {
            if left == 0 {
                let parts: Vec<_> = groups.iter().zip(ks.iter()).map(|((x, n), &k)| (x.clone(), *n, k)).collect();
                let dim = parts.iter().map(|(_, n, k)| binomial(*n, *k)).product();
                out.push(Summand { parts, dim });
            }
            return;
        }
        for ki in 0..=groups[i].1.min(left) {
            ks[i] = ki;
            rec(groups, i + 1, left - ki, ks, out);
        }
        ks[i] = 0;
    }
    rec(&groups, 0, k, &mut ks, &mut summands);
    let total = summands.iter().map(|s| s.dim).sum();
    let b = binomial(n, k);
    Ok(DecompositionReport { k, n, summands, total, binomial: b, vandermonde: total == b })
}
