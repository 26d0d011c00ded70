//! Permutations of `{0, .., n-1}` in one-line notation.
//!
//! Composition is fixed once for the whole crate: `p.compose(&q)` is the
//! permutation `i -> p(q(i))`, i.e. `q` acts first.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from 0-indexed images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles given with 0-indexed points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint in S_{n}"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: other.n() });
        }
        Ok(Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `g⁻¹ ∘ self ∘ g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        g.inverse().compose(&self.compose(g)?)
    }

    /// Disjoint cycles including fixed points, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// Number of moved points.
    pub fn support(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i != x).count()
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| self.images[x] == i)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i64 {
        self.cycle_type().sign()
    }

    /// Adjacent transpositions `s_{j_1}, .., s_{j_k}` (with `s_j = (j j+1)`)
    /// such that `self = s_{j_1} ∘ .. ∘ s_{j_k}`, found by bubble sort.
    pub fn adjacent_word(&self) -> Vec<usize> {
        // Swapping positions j, j+1 of the one-line array of p yields p ∘ s_j.
        let mut a = self.images.clone();
        let mut swaps = Vec::new();
        let n = a.len();
        for pass in 0..n {
            let mut done = true;
            for j in 0..n.saturating_sub(1 + pass) {
                if a[j] > a[j + 1] {
                    a.swap(j, j + 1);
                    swaps.push(j);
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        // p ∘ s_{w1} ∘ .. ∘ s_{wk} = id, so p = s_{wk} ∘ .. ∘ s_{w1}.
        swaps.reverse();
        swaps
    }

    /// 1-indexed cycle notation without fixed points, e.g. `(1 2)(3 4)`; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect();
        if cycles.is_empty() {
            "()".to_string()
        } else {
            cycles.concat()
        }
    }

    /// Parses 1-indexed cycle notation such as `(1 2)(3 4)` or `()`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let bad = || Error::InvalidPermutation(format!("cannot parse cycles {text:?}"));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in text.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('(').ok_or_else(bad)?;
            let pts = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(n, &refs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

// JSON form: array of 1-indexed images.
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.images.iter().map(|x| x + 1).collect();
        one_based.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let one_based = Vec::<usize>::deserialize(d)?;
        let images = one_based
            .into_iter()
            .map(|x| x.checked_sub(1).ok_or_else(|| serde::de::Error::custom("images are 1-indexed")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Permutation::from_images(images).map_err(serde::de::Error::custom)
    }
}

/// Cycle type of a permutation: weakly decreasing cycle lengths summing to n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn identity(n: usize) -> Self {
        CycleType { parts: vec![1; n] }
    }

    /// The class of fixed-point-free involutions, `(2, 2, .., 2)`.
    pub fn matching(n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) || n == 0 {
            return Err(Error::MatchingClassUndefined(n));
        }
        Ok(CycleType { parts: vec![2; n / 2] })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn sign(&self) -> i64 {
        let n = self.n();
        if (n - self.parts.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of points moved by any permutation of this type.
    pub fn support(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 1).sum()
    }

    /// A canonical representative: consecutive cycles on `0, 1, ..`.
    pub fn representative(&self) -> Permutation {
        let n = self.n();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in &self.parts {
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Permutation { images }
    }
}

/// All `n!` permutations of `S_n` in lexicographic order of their one-line images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { images: current.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// The fixed-point-free involutions of `S_n` (cycle type `(2, .., 2)`).
///
/// Enumeration pairs the smallest unmatched point with each larger unmatched
/// point in increasing order, so the output order is deterministic.
pub fn matching_class(n: usize) -> Result<Vec<Permutation>> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(Error::MatchingClassUndefined(n));
    }
    fn recurse(images: &mut Vec<usize>, unmatched: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if unmatched.is_empty() {
            out.push(Permutation { images: images.clone() });
            return;
        }
        let first = unmatched.remove(0);
        for k in 0..unmatched.len() {
            let partner = unmatched.remove(k);
            images[first] = partner;
            images[partner] = first;
            recurse(images, unmatched, out);
            unmatched.insert(k, partner);
        }
        unmatched.insert(0, first);
    }
    let mut images: Vec<usize> = (0..n).collect();
    let mut unmatched: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    recurse(&mut images, &mut unmatched, &mut out);
    Ok(out)
}

/// Embeds `(a, b) ∈ S_n × S_n` into the Young subgroup `S_{n,n} ≤ S_{2n}`:
/// `a` acts on `{0..n-1}` and `b` on `{n..2n-1}`.
pub fn young_subgroup_embed(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch { expected: a.n(), found: b.n() });
    }
    let n = a.n();
    let mut images = a.images.clone();
    images.extend(b.images.iter().map(|&x| x + n));
    Ok(Permutation { images })
}

/// The involution `(0 n)(1 n+1)..(n-1 2n-1)` of `S_{2n}` swapping the two blocks.
pub fn block_swap(n: usize) -> Permutation {
    let images = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
    Permutation { images }
}

/// `(2m-1)!! = 1·3·5·..·(2m-1)` for `n = 2m`, the size of the matching class.
pub fn double_factorial_odd(n: usize) -> u128 {
    (1..n).step_by(2).map(|x| x as u128).product()
}
