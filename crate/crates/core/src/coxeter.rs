//! Symmetric-group combinatorics: words, lengths, parabolic longest elements,
//! RSK shapes, and the rainbow-conjugation search.
//!
//! Convention: a permutation acts on positions, `from_word([i1, .., ik])` is the
//! product s_{i1} ⋯ s_{ik} composed right to left.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Permutation of {1..n} in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

/// Subset of simple transpositions, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParabolicSet(Vec<usize>);

/// A partition as a weakly decreasing list of positive parts.
pub type Partition = Vec<usize>;

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((1..=n).collect())
    }

    pub fn from_one_line(v: Vec<usize>) -> Result<Self> {
        let n = v.len();
        let mut seen = vec![false; n + 1];
        for &x in &v {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Invalid(format!("{v:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm(v))
    }

    pub fn simple(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut p = Perm::identity(n);
        p.0.swap(i - 1, i);
        Ok(p)
    }

    pub fn from_word(word: &[usize], n: usize) -> Result<Self> {
        let mut p = Perm::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange(i));
            }
            p = p.right_mul_simple(i);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// w(j), one-based.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n(), "permutation size mismatch");
        Perm(other.0.iter().map(|&j| self.0[j - 1]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (j, &w) in self.0.iter().enumerate() {
            inv[w - 1] = j + 1;
        }
        Perm(inv)
    }

    /// self · s_i (swap positions i, i+1 of the one-line word).
    pub fn right_mul_simple(&self, i: usize) -> Perm {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Perm(v)
    }

    /// s_i · self (swap values i and i+1).
    pub fn left_mul_simple(&self, i: usize) -> Perm {
        Perm(
            self.0
                .iter()
                .map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x })
                .collect(),
        )
    }

    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut inv = 0;
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                if v[a] > v[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &w)| w == j + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// Reduced word obtained by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.n()).find(|&i| w.has_right_descent(i)) {
            rev.push(i);
            w = w.right_mul_simple(i);
        }
        rev.reverse();
        rev
    }

    /// Zero-based one-line notation, as used by polynomial actions.
    pub fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x - 1).collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        if self.n() < 10 {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of [`word_ops`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordInfo {
    pub perm: Perm,
    pub length: usize,
    pub reduced_word: Vec<usize>,
}

pub fn word_ops(word: &[usize], n: usize) -> Result<WordInfo> {
    let perm = Perm::from_word(word, n)?;
    Ok(WordInfo { length: perm.length(), reduced_word: perm.reduced_word(), perm })
}

impl ParabolicSet {
    pub fn new(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        ParabolicSet(v)
    }

    pub fn empty() -> Self {
        ParabolicSet(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        ParabolicSet((1..n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &ParabolicSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i >= n) {
            Some(&i) => Err(Error::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// Variable blocks (start, size), one-based starts, covering x1..xn.
    pub fn blocks(&self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 1;
        while start <= n {
            let mut end = start;
            while end < n && self.contains(end) {
                end += 1;
            }
            out.push((start, end - start + 1));
            start = end + 1;
        }
        out
    }

    /// |W_J| as the product of factorials of the block sizes.
    pub fn group_order(&self, n: usize) -> u64 {
        self.blocks(n).iter().map(|&(_, b)| (1..=b as u64).product::<u64>()).product()
    }

    /// ℓ(w_J).
    pub fn longest_length(&self, n: usize) -> usize {
        self.blocks(n).iter().map(|&(_, b)| b * (b - 1) / 2).sum()
    }

    /// All subsets of {1..n−1}, ordered by size then lexicographically.
    pub fn all(n: usize) -> Vec<ParabolicSet> {
        let gens = n.saturating_sub(1);
        let mut out: Vec<ParabolicSet> = (0u32..(1 << gens))
            .map(|mask| ParabolicSet((1..=gens).filter(|i| mask & (1 << (i - 1)) != 0).collect()))
            .collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
        out
    }
}

impl fmt::Display for ParabolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for ParabolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Longest element of the parabolic subgroup: reverses each variable block.
pub fn longest(j: &ParabolicSet, n: usize) -> Result<Perm> {
    j.validate(n)?;
    let mut v = Vec::with_capacity(n);
    for (start, size) in j.blocks(n) {
        v.extend((start..start + size).rev());
    }
    Ok(Perm(v))
}

/// Shape of the RSK insertion tableau of the one-line word.
pub fn rsk_shape(w: &Perm) -> Partition {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &x in w.one_line() {
        let mut carry = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![carry]);
                break;
            }
            let row = &mut rows[r];
            match row.iter().position(|&y| y > carry) {
                Some(p) => {
                    carry = std::mem::replace(&mut row[p], carry);
                    r += 1;
                }
                None => {
                    row.push(carry);
                    break;
                }
            }
        }
    }
    rows.iter().map(|r| r.len()).collect()
}

/// A parabolic longest element together with the conjugating sequence
/// (s_1, .., s_k), innermost first: d = s_k ⋯ s_1 w_J s_1 ⋯ s_k.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Rainbow {
    pub parabolic: ParabolicSet,
    pub longest: Perm,
    pub sequence: Vec<usize>,
}

fn parabolic_of(w: &Perm) -> Option<ParabolicSet> {
    let n = w.n();
    let desc: Vec<usize> = (1..n).filter(|&i| w.has_right_descent(i)).collect();
    let j = ParabolicSet(desc);
    (longest(&j, n).ok()? == *w).then_some(j)
}

/// All ways of writing `d` as a rainbow sandwich of a parabolic longest element
/// with at most `max_k` length-reducing simple conjugations, every intermediate
/// element staying in the two-sided cell (RSK shape) of `d`.
pub fn rainbow_search(d: &Perm, max_k: usize) -> Result<Vec<Rainbow>> {
    if !d.is_involution() {
        return Err(Error::NotInvolution(d.to_string()));
    }
    let shape = rsk_shape(d);
    let mut found = BTreeSet::new();
    // Each state is an element together with the outer layers peeled so far (outermost first).
    let mut queue: VecDeque<(Perm, Vec<usize>)> = VecDeque::new();
    let mut seen: HashSet<(Perm, Vec<usize>)> = HashSet::new();
    queue.push_back((d.clone(), Vec::new()));
    while let Some((w, peeled)) = queue.pop_front() {
        if let Some(j) = parabolic_of(&w) {
            let mut seq = peeled.clone();
            seq.reverse();
            found.insert(Rainbow { parabolic: j, longest: w.clone(), sequence: seq });
        }
        if peeled.len() == max_k {
            continue;
        }
        let len = w.length();
        for s in 1..w.n() {
            let v = w.left_mul_simple(s).right_mul_simple(s);
            if v.length() + 2 != len || rsk_shape(&v) != shape {
                continue;
            }
            let mut next = peeled.clone();
            next.push(s);
            if seen.insert((v.clone(), next.clone())) {
                queue.push_back((v, next));
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Length-decreasing simple conjugations of `d` that preserve its RSK shape.
pub fn cell_preserving_descents(d: &Perm) -> Vec<usize> {
    let shape = rsk_shape(d);
    let len = d.length();
    (1..d.n())
        .filter(|&s| {
            let v = d.left_mul_simple(s).right_mul_simple(s);
            v.length() + 2 == len && rsk_shape(&v) == shape
        })
        .collect()
}
