//! Young diagrams: conjugation, hooks, dimensions and partition counts.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition `λ₁ ≥ λ₂ ≥ .. ≥ λ_t > 0`.
///
/// `Ord` is the canonical reverse-lexicographic order: `(n)` sorts first and
/// `(1, .., 1)` last.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row diagram `(n)`.
    pub fn row(n: usize) -> Self {
        Partition { parts: if n == 0 { vec![] } else { vec![n] } }
    }

    /// The one-column diagram `(1, .., 1)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// Parses `"4,2,1"` (also accepting spaces).
    pub fn parse(text: &str) -> Result<Self> {
        let parts = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::InvalidPartition(format!("cannot parse {text:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// First row length `λ₁` (0 for the empty diagram).
    pub fn first_row(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// First column length `λ′₁`.
    pub fn first_column(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first_row();
        let parts = (1..=width).map(|j| self.parts.iter().take_while(|&&r| r >= j).count()).collect();
        Partition { parts }
    }

    /// Hook length of the 1-indexed cell `(row, col)`.
    pub fn hook_length(&self, row: usize, col: usize) -> Result<usize> {
        if row == 0 || col == 0 || row > self.parts.len() || col > self.parts[row - 1] {
            return Err(Error::CellOutsideDiagram { row, col });
        }
        let arm = self.parts[row - 1] - col;
        let leg = self.parts[row..].iter().take_while(|&&r| r >= col).count();
        Ok(arm + leg + 1)
    }

    /// All hook lengths, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.n());
        for (i, &r) in self.parts.iter().enumerate() {
            for j in 0..r {
                out.push((r - j - 1) + (conj.parts[j] - i - 1) + 1);
            }
        }
        out
    }

    /// `d^λ = n! / ∏ hook(c)`, exact.
    pub fn dimension(&self) -> BigUint {
        let hook_product: BigUint = self.hooks().into_iter().map(BigUint::from).product();
        let (q, r) = num_integer::Integer::div_rem(&factorial(self.n()), &hook_product);
        debug_assert!(r.is_zero(), "hook product must divide n!");
        q
    }

    /// `d^λ` as `u64`; panics when it does not fit (only for n ≥ ~30).
    pub fn dimension_u64(&self) -> u64 {
        u64::try_from(self.dimension()).expect("dimension overflows u64")
    }

    /// Content `col − row` of each cell, in row-major order (0-indexed).
    pub fn contents(&self) -> Vec<i64> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| j as i64 - i as i64))
            .collect()
    }

    /// Membership in `Λ_c`: `λ₁ ≥ (1−c)n` or `λ′₁ ≥ (1−c)n`, compared exactly.
    pub fn in_lambda_c(&self, c: Rational64) -> Result<bool> {
        check_threshold(c)?;
        let n = self.n() as i64;
        let bound = (Rational64::one() - c) * Rational64::from_integer(n);
        let row = Rational64::from_integer(self.first_row() as i64);
        let col = Rational64::from_integer(self.first_column() as i64);
        Ok(row >= bound || col >= bound)
    }
}

pub(crate) fn check_threshold(c: Rational64) -> Result<()> {
    if c <= Rational64::zero() || c >= Rational64::new(1, 4) {
        return Err(Error::InvalidThreshold(c.to_string()));
    }
    Ok(())
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn recurse(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            current.push(part);
            recurse(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    recurse(n, n, &mut Vec::new(), &mut out);
    out
}

/// Signed variant accepting negative input, for callers parsing user data.
pub fn enumerate_partitions_checked(n: i64) -> Result<Vec<Partition>> {
    if n < 0 {
        return Err(Error::InvalidPartition(format!("cannot partition negative n = {n}")));
    }
    Ok(enumerate_partitions(n as usize))
}

/// `p(n)` via Euler's pentagonal-number recurrence.
pub fn partition_count(n: usize) -> BigUint {
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += &p[m - g1] * sign;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += &p[m - g2] * sign;
            }
        }
        p.push(acc);
    }
    p[n].to_biguint().expect("p(n) is positive")
}

/// The partition(s) of `n` of maximal dimension, in canonical order.
pub fn max_dimension_partitions(n: usize) -> Vec<Partition> {
    let all = enumerate_partitions(n);
    let dims: Vec<BigUint> = all.iter().map(Partition::dimension).collect();
    let max = dims.iter().max().cloned().unwrap_or_default();
    all.into_iter().zip(dims).filter(|(_, d)| *d == max).map(|(p, _)| p).collect()
}
