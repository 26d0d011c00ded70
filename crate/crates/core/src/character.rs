//! Exact irreducible characters of `S_n` by the Murnaghan–Nakayama rule.
//!
//! Values are memoised per `(shape, remaining cycle parts)` in a process-wide
//! table guarded by an `RwLock`: lookups take the read lock, insertions the
//! write lock. Every value is deterministic so racing inserts are harmless.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, factorial, Partition};
use crate::perm::CycleType;

type MemoKey = (Vec<usize>, Vec<usize>);

static MEMO: LazyLock<RwLock<HashMap<MemoKey, i64>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// `χ^λ(C)` for a partition `λ` and a cycle type `C` of the same size.
pub fn character(lambda: &Partition, class: &CycleType) -> Result<i64> {
    if lambda.n() != class.n() {
        return Err(Error::SizeMismatch { expected: lambda.n(), found: class.n() });
    }
    Ok(mn(lambda.parts(), class.parts()))
}

fn mn(shape: &[usize], cycles: &[usize]) -> i64 {
    if cycles.is_empty() {
        return 1;
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = MEMO.read().expect("character memo poisoned").get(&key) {
        return v;
    }
    let k = cycles[0];
    let rest = &cycles[1..];
    let value: i64 = remove_rim_hooks(shape, k).into_iter().map(|(sign, smaller)| sign * mn(&smaller, rest)).sum();
    MEMO.write().expect("character memo poisoned").insert(key, value);
    value
}

/// Every way of removing a rim hook of length `k`, with the sign `(-1)^height`.
fn remove_rim_hooks(shape: &[usize], k: usize) -> Vec<(i64, Vec<usize>)> {
    // Beta-numbers: β_i = λ_i + (t − 1 − i) are distinct; a rim hook of
    // length k corresponds to moving one bead from β to β − k.
    let t = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &r)| r + (t - 1 - i)).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> =
            moved.iter().enumerate().map(|(j, &x)| x - (t - 1 - j)).filter(|&r| r > 0).collect();
        out.push((sign, parts));
    }
    out
}

/// The conjugacy classes of `S_n`, labelled by cycle type, in canonical order.
pub fn classes(n: usize) -> Vec<CycleType> {
    enumerate_partitions(n)
        .into_iter()
        .map(|p| CycleType::new(p.parts().to_vec()).expect("partitions are valid cycle types"))
        .collect()
}

/// `z_C = ∏ i^{m_i} m_i!`, the centraliser order.
pub fn centralizer_order(class: &CycleType) -> BigUint {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in class.parts() {
        *counts.entry(p).or_default() += 1;
    }
    counts.into_iter().map(|(i, m)| BigUint::from(i).pow(m as u32) * factorial(m)).product()
}

pub fn class_size(class: &CycleType) -> BigUint {
    factorial(class.n()) / centralizer_order(class)
}

/// `χ^λ(C) / d^λ` as an exact rational.
pub fn normalized_character(lambda: &Partition, class: &CycleType) -> Result<BigRational> {
    let chi = character(lambda, class)?;
    Ok(BigRational::new(BigInt::from(chi), BigInt::from(lambda.dimension())))
}

/// A real class function on `S_n`, one exact value per class of [`classes`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    n: usize,
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn new(n: usize, values: Vec<BigRational>) -> Result<Self> {
        let expected = classes(n).len();
        if values.len() != expected {
            return Err(Error::SizeMismatch { expected, found: values.len() });
        }
        Ok(ClassFunction { n, values })
    }

    pub fn character(lambda: &Partition) -> Self {
        let n = lambda.n();
        let values = classes(n)
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(mn(lambda.parts(), c.parts()))))
            .collect();
        ClassFunction { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Pointwise product (the character of the tensor product).
    pub fn product(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { expected: self.n, found: other.n });
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { n: self.n, values })
    }
}

/// `⟨f, h⟩ = (1/n!) Σ_C |C| f(C) h(C)`; characters of `S_n` are real.
pub fn inner_product(f: &ClassFunction, h: &ClassFunction) -> Result<BigRational> {
    if f.n != h.n {
        return Err(Error::SizeMismatch { expected: f.n, found: h.n });
    }
    let mut acc = BigRational::zero();
    for ((class, a), b) in classes(f.n).iter().zip(&f.values).zip(&h.values) {
        acc += BigRational::from_integer(BigInt::from(class_size(class))) * a * b;
    }
    Ok(acc / BigRational::from_integer(BigInt::from(factorial(f.n))))
}

/// Multiplicity of `S^μ` in `S^λ ⊗ S^λ*`, i.e. `⟨χ^μ, (χ^λ)²⟩`.
pub fn tensor_square_multiplicity(mu: &Partition, lambda: &Partition) -> Result<u64> {
    if mu.n() != lambda.n() {
        return Err(Error::SizeMismatch { expected: lambda.n(), found: mu.n() });
    }
    let n = lambda.n();
    let mut acc = BigInt::zero();
    for class in classes(n) {
        let cl = mn(lambda.parts(), class.parts());
        let cm = mn(mu.parts(), class.parts());
        acc += BigInt::from(class_size(&class)) * BigInt::from(cm) * BigInt::from(cl) * BigInt::from(cl);
    }
    let fact = BigInt::from(factorial(n));
    debug_assert!((&acc % &fact).is_zero());
    let m = acc / fact;
    debug_assert!(!m.is_negative());
    Ok(m.to_u64().expect("multiplicity fits u64"))
}

/// The constituents `(μ, mult)` of `S^λ ⊗ S^λ*` with nonzero multiplicity.
pub fn tensor_square_constituents(lambda: &Partition) -> Vec<(Partition, u64)> {
    enumerate_partitions(lambda.n())
        .into_iter()
        .filter_map(|mu| {
            let m = tensor_square_multiplicity(&mu, lambda).expect("same n");
            (m > 0).then_some((mu, m))
        })
        .collect()
}

/// The full character table of `S_n`: rows are partitions, columns cycle
/// types, both in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub n: usize,
    pub rows: Vec<Partition>,
    pub classes: Vec<CycleType>,
    pub class_sizes: Vec<BigUint>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn build(n: usize) -> Self {
        let rows = enumerate_partitions(n);
        let classes = classes(n);
        let class_sizes = classes.iter().map(class_size).collect();
        let values = rows
            .iter()
            .map(|lam| classes.iter().map(|c| mn(lam.parts(), c.parts())).collect())
            .collect();
        CharacterTable { n, rows, classes, class_sizes, values }
    }

    pub fn value(&self, lambda: &Partition, class: &CycleType) -> Option<i64> {
        let i = self.rows.iter().position(|r| r == lambda)?;
        let j = self.classes.iter().position(|c| c == class)?;
        Some(self.values[i][j])
    }

    /// Exact Gram matrix of the rows under the class inner product, scaled by n!.
    pub fn scaled_gram(&self) -> Vec<Vec<BigInt>> {
        let k = self.rows.len();
        let mut gram = vec![vec![BigInt::zero(); k]; k];
        for (i, a) in self.values.iter().enumerate() {
            for (j, b) in self.values.iter().enumerate().skip(i) {
                let mut acc = BigInt::zero();
                for ((size, x), y) in self.class_sizes.iter().zip(a).zip(b) {
                    acc += BigInt::from(size.clone()) * *x * *y;
                }
                gram[i][j] = acc.clone();
                gram[j][i] = acc;
            }
        }
        gram
    }

    /// Rows as CSV: header `lambda,<class>,..`, partitions and classes
    /// written space-separated so the file stays comma-delimited.
    pub fn to_csv(&self) -> String {
        let label = |parts: &[usize]| parts.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = String::from("lambda");
        for c in &self.classes {
            out.push(',');
            out.push_str(&label(c.parts()));
        }
        out.push('\n');
        for (row, vals) in self.rows.iter().zip(&self.values) {
            out.push_str(&label(row.parts()));
            for v in vals {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}
