//! The wreath product `K = S_n ≀ Z_2 = (S_n × S_n) ⋊ Z_2`.
//!
//! An element `((a, b), t)` embeds in `S_{2n}` as `embed(a, b) ∘ s^t`, where
//! `s` swaps the two halves. With that convention the product is
//!
//! ```text
//! (a₁, b₁, t₁)(a₂, b₂, t₂) = (a₁a₂', b₁b₂', t₁ ⊕ t₂),  (a₂', b₂') = t₁ ? (b₂, a₂) : (a₂, b₂)
//! ```

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::character::character;
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, factorial, Partition};
use crate::perm::{all_permutations, block_swap, young_subgroup_embed, Permutation};
use crate::rep::RepBlock;

/// Largest `n` for which [`all_elements`] enumerates `K` (`|K| = 2(n!)²`).
pub const WREATH_ENUM_MAX_N: usize = 4;
pub const WREATH_REPORT_MAX_N: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WreathElement {
    pub a: Permutation,
    pub b: Permutation,
    pub t: bool,
}

impl WreathElement {
    pub fn new(a: Permutation, b: Permutation, t: bool) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::SizeMismatch { expected: a.n(), found: b.n() });
        }
        Ok(WreathElement { a, b, t })
    }

    pub fn identity(n: usize) -> Self {
        WreathElement { a: Permutation::identity(n), b: Permutation::identity(n), t: false }
    }

    /// `((1, 1), 1)`.
    pub fn swap(n: usize) -> Self {
        WreathElement { a: Permutation::identity(n), b: Permutation::identity(n), t: true }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn is_identity(&self) -> bool {
        !self.t && self.a.is_identity() && self.b.is_identity()
    }

    pub fn inverse(&self) -> Self {
        if self.t {
            WreathElement { a: self.b.inverse(), b: self.a.inverse(), t: true }
        } else {
            WreathElement { a: self.a.inverse(), b: self.b.inverse(), t: false }
        }
    }

    /// The image in `S_{2n}`.
    pub fn to_permutation(&self) -> Permutation {
        let base = young_subgroup_embed(&self.a, &self.b).expect("halves have equal degree");
        if self.t {
            base.compose(&block_swap(self.n())).expect("same degree")
        } else {
            base
        }
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), {})", self.a.cycle_notation(), self.b.cycle_notation(), u8::from(self.t))
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn wreath_multiply(x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch { expected: x.n(), found: y.n() });
    }
    let (ya, yb) = if x.t { (&y.b, &y.a) } else { (&y.a, &y.b) };
    Ok(WreathElement { a: x.a.compose(ya)?, b: x.b.compose(yb)?, t: x.t ^ y.t })
}

/// `g x g⁻¹`.
pub fn conjugate(x: &WreathElement, g: &WreathElement) -> Result<WreathElement> {
    wreath_multiply(&wreath_multiply(g, x)?, &g.inverse())
}

/// Every element of `K`, `t = 0` first, then by `(a, b)` in lexicographic order.
pub fn all_elements(n: usize) -> Result<Vec<WreathElement>> {
    if n > WREATH_ENUM_MAX_N {
        return Err(Error::TooLarge { what: "enumeration of S_n ≀ Z_2", n, limit: WREATH_ENUM_MAX_N });
    }
    let perms = all_permutations(n);
    let mut out = Vec::with_capacity(2 * perms.len() * perms.len());
    for t in [false, true] {
        for a in &perms {
            for b in &perms {
                out.push(WreathElement { a: a.clone(), b: b.clone(), t });
            }
        }
    }
    Ok(out)
}

/// `{((α, α⁻¹), 1) : α ∈ S_n}`.
pub fn matched_involution_class(n: usize) -> Vec<WreathElement> {
    all_permutations(n).into_iter().map(|a| WreathElement { b: a.inverse(), a, t: true }).collect()
}

/// The `K`-conjugacy class of `x`, sorted and deduplicated.
pub fn conjugacy_class(x: &WreathElement) -> Result<Vec<WreathElement>> {
    let mut orbit = all_elements(x.n())?
        .par_iter()
        .map(|g| conjugate(x, g))
        .collect::<Result<Vec<_>>>()?;
    orbit.sort_by_key(sort_key);
    orbit.dedup();
    Ok(orbit)
}

/// All conjugacy classes of `K`, each sorted, ordered by first element.
pub fn conjugacy_classes(n: usize) -> Result<Vec<Vec<WreathElement>>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in all_elements(n)? {
        if seen.contains(&x) {
            continue;
        }
        let class = conjugacy_class(&x)?;
        seen.extend(class.iter().cloned());
        out.push(class);
    }
    Ok(out)
}

fn sort_key(x: &WreathElement) -> (bool, Vec<usize>, Vec<usize>) {
    (x.t, x.a.images().to_vec(), x.b.images().to_vec())
}

fn chi(lambda: &Partition, p: &Permutation) -> Result<i64> {
    character(lambda, &p.cycle_type())
}

/// Character of `Ind_{S_n × S_n}^K (ρ ⊠ σ)`.
pub fn induced_character(rho: &Partition, sigma: &Partition, x: &WreathElement) -> Result<i64> {
    if rho.n() != x.n() || sigma.n() != x.n() {
        return Err(Error::SizeMismatch { expected: x.n(), found: rho.n().max(sigma.n()) });
    }
    if x.t {
        return Ok(0);
    }
    Ok(chi(rho, &x.a)? * chi(sigma, &x.b)? + chi(sigma, &x.a)? * chi(rho, &x.b)?)
}

/// The `Z_2` twist of a split component: the swap acts as `+SWAP` or `−SWAP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Twist {
    Trivial,
    Sign,
}

impl Twist {
    fn sign(self) -> f64 {
        match self {
            Twist::Trivial => 1.0,
            Twist::Sign => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Twist::Trivial => "trivial",
            Twist::Sign => "sign",
        }
    }
}

/// `ρ ⊠ ρ ⊗ ε` on `V_ρ ⊗ V_ρ`: `((α, β), t) ↦ (ρ(α) ⊗ ρ(β)) (±SWAP)^t`.
pub struct SplitRepresentation {
    rep: RepBlock,
    twist: Twist,
    swap: DMatrix<f64>,
}

impl SplitRepresentation {
    pub fn new(rep: RepBlock, twist: Twist) -> Self {
        let d = rep.dim();
        let mut swap = DMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                swap[(i * d + j, j * d + i)] = twist.sign();
            }
        }
        SplitRepresentation { rep, twist, swap }
    }

    pub fn lambda(&self) -> &Partition {
        self.rep.lambda()
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn dim(&self) -> usize {
        self.rep.dim() * self.rep.dim()
    }

    pub fn matrix(&self, x: &WreathElement) -> Result<DMatrix<f64>> {
        let base = self.rep.rep_matrix(&x.a)?.kronecker(&self.rep.rep_matrix(&x.b)?);
        Ok(if x.t { base * &self.swap } else { base })
    }

    /// Trace of [`Self::matrix`].
    pub fn trace(&self, x: &WreathElement) -> Result<f64> {
        Ok(self.matrix(x)?.trace())
    }
}

/// Exact character of a split component, read off from the action:
/// `tr(A ⊗ B) = χ(α)χ(β)` and `tr((A ⊗ B) SWAP) = tr(AB) = χ(αβ)`.
pub fn split_character(rho: &Partition, twist: Twist, x: &WreathElement) -> Result<i64> {
    if x.t {
        let v = chi(rho, &x.a.compose(&x.b)?)?;
        Ok(if twist == Twist::Sign { -v } else { v })
    } else {
        Ok(chi(rho, &x.a)? * chi(rho, &x.b)?)
    }
}

/// The closed form displayed alongside the split components, which uses
/// `χ(α) + χ(β)` for `t = 0`. Kept only to report where it departs from
/// [`split_character`].
pub fn displayed_split_character(rho: &Partition, twist: Twist, x: &WreathElement) -> Result<i64> {
    if x.t {
        split_character(rho, twist, x)
    } else {
        Ok(chi(rho, &x.a)? + chi(rho, &x.b)?)
    }
}

/// An irreducible representation of `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum KIrrep {
    /// `Ind(ρ ⊠ σ)` with `ρ ≠ σ`, stored with `ρ` before `σ` in canonical order.
    Induced(Partition, Partition),
    Split(Partition, Twist),
}

impl KIrrep {
    pub fn dimension(&self) -> u64 {
        match self {
            KIrrep::Induced(r, s) => 2 * r.dimension_u64() * s.dimension_u64(),
            KIrrep::Split(r, _) => r.dimension_u64().pow(2),
        }
    }

    pub fn character(&self, x: &WreathElement) -> Result<i64> {
        match self {
            KIrrep::Induced(r, s) => induced_character(r, s, x),
            KIrrep::Split(r, tw) => split_character(r, *tw, x),
        }
    }

    pub fn label(&self) -> String {
        match self {
            KIrrep::Induced(r, s) => format!("ind{r}{s}"),
            KIrrep::Split(r, tw) => format!("split{r}:{}", tw.name()),
        }
    }
}

/// `{Ind(ρ ⊠ σ)}_{ρ≠σ} ∪ {ρ ⊠ ρ ⊗ 1, ρ ⊠ ρ ⊗ π}`.
pub fn irreducibles(n: usize) -> Vec<KIrrep> {
    let parts = enumerate_partitions(n);
    let mut out = Vec::new();
    for (i, r) in parts.iter().enumerate() {
        for s in &parts[i + 1..] {
            out.push(KIrrep::Induced(r.clone(), s.clone()));
        }
    }
    for r in &parts {
        out.push(KIrrep::Split(r.clone(), Twist::Trivial));
        out.push(KIrrep::Split(r.clone(), Twist::Sign));
    }
    out
}

/// `|K| = 2(n!)²`.
pub fn order(n: usize) -> BigInt {
    let f = BigInt::from(factorial(n));
    BigInt::from(2) * &f * &f
}

/// `⟨f, h⟩_K = (1/|K|) Σ_x f(x) h(x)` for real-valued class functions.
pub fn k_inner_product<F, H>(n: usize, f: F, h: H) -> Result<BigRational>
where
    F: Fn(&WreathElement) -> Result<i64> + Sync,
    H: Fn(&WreathElement) -> Result<i64> + Sync,
{
    let terms = all_elements(n)?.par_iter().map(|x| Ok(f(x)? * h(x)?)).collect::<Result<Vec<i64>>>()?;
    Ok(BigRational::new(BigInt::from(terms.iter().sum::<i64>()), order(n)))
}

/// Whether the embedding into `S_{2n}` is an injective homomorphism, exhaustively.
pub fn embedding_is_isomorphism(n: usize) -> Result<bool> {
    let elements = all_elements(n)?;
    let images: Vec<Permutation> = elements.iter().map(WreathElement::to_permutation).collect();
    let mut distinct = images.clone();
    distinct.sort_by(|p, q| p.images().cmp(q.images()));
    distinct.dedup();
    if distinct.len() != images.len() {
        return Ok(false);
    }
    let ok = (0..elements.len()).into_par_iter().all(|i| {
        (0..elements.len()).all(|j| {
            let prod = wreath_multiply(&elements[i], &elements[j]).expect("same n");
            prod.to_permutation() == images[i].compose(&images[j]).expect("same degree")
        })
    });
    Ok(ok)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuredRow {
    pub irrep: String,
    pub dimension: u64,
    /// Character at `((1, 1), 1)`, a representative of the matched class.
    pub value: i64,
    /// `value / dimension`.
    #[serde(serialize_with = "ratio_str")]
    pub normalized: BigRational,
    /// `dimension² / |K|`.
    #[serde(serialize_with = "ratio_str")]
    pub plancherel: BigRational,
    /// The displayed closed form at the identity, for split components.
    pub displayed_identity: Option<i64>,
}

fn ratio_str<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Normalized characters of every irreducible of `K` at the matched class.
pub fn structured_normalized_character_report(n: usize) -> Result<Vec<StructuredRow>> {
    if n > WREATH_REPORT_MAX_N {
        return Err(Error::TooLarge { what: "structured character report", n, limit: WREATH_REPORT_MAX_N });
    }
    let x = WreathElement::swap(n);
    let e = WreathElement::identity(n);
    let k = order(n);
    irreducibles(n)
        .into_iter()
        .map(|irr| {
            let dim = irr.dimension();
            let value = irr.character(&x)?;
            let displayed_identity = match &irr {
                KIrrep::Split(r, tw) => Some(displayed_split_character(r, *tw, &e)?),
                KIrrep::Induced(..) => None,
            };
            Ok(StructuredRow {
                irrep: irr.label(),
                dimension: dim,
                value,
                normalized: BigRational::new(value.into(), dim.into()),
                plancherel: BigRational::new(BigInt::from(dim) * BigInt::from(dim), k.clone()),
                displayed_identity,
            })
        })
        .collect()
}

/// Plancherel mass of `K` on irreducibles with `|χ(x)/dim| ≥ threshold` at the matched class.
pub fn large_character_mass(rows: &[StructuredRow], threshold: &BigRational) -> BigRational {
    rows.iter().filter(|r| &r.normalized.abs() >= threshold).fold(BigRational::zero(), |acc, r| acc + &r.plancherel)
}

/// Multiplicity of each `K` irreducible in the restriction of `χ^λ` from `S_{2n}`.
pub fn restriction_multiplicities(lambda: &Partition) -> Result<Vec<(KIrrep, BigRational)>> {
    let n = lambda.n() / 2;
    if lambda.n() != 2 * n {
        return Err(Error::MatchingClassUndefined(lambda.n()));
    }
    irreducibles(n)
        .into_iter()
        .map(|irr| {
            let m = k_inner_product(n, |x| chi(lambda, &x.to_permutation()), |x| irr.character(x))?;
            Ok((irr, m))
        })
        .collect()
}

/// Weak sampling over `K` for `H = {1, x}`: `P(τ) = d_τ (χ_τ(1) + χ_τ(x)) / |K|`.
pub fn weak_distribution_k(x: &WreathElement) -> Result<Vec<(KIrrep, BigRational)>> {
    let n = x.n();
    let e = WreathElement::identity(n);
    let k = order(n);
    irreducibles(n)
        .into_iter()
        .map(|irr| {
            let d = BigInt::from(irr.dimension());
            let sum = BigInt::from(irr.character(&e)? + if x.is_identity() { 0 } else { irr.character(x)? });
            Ok((irr, BigRational::new(d * sum, k.clone())))
        })
        .collect()
}

/// The `S_{2n}` weak law predicted from the `K` law:
/// `P_G(λ) = Σ_τ mult(τ, Res λ) d^λ P_K(τ) / (d_τ [G : K])`.
pub fn lift_weak_distribution(x: &WreathElement) -> Result<Vec<(Partition, BigRational)>> {
    let n = x.n();
    let pk = weak_distribution_k(x)?;
    let index = BigRational::new(BigInt::from(factorial(2 * n)), order(n));
    enumerate_partitions(2 * n)
        .into_iter()
        .map(|lam| {
            let d = BigInt::from(lam.dimension());
            let mults = restriction_multiplicities(&lam)?;
            let total = mults.iter().zip(&pk).fold(BigRational::zero(), |acc, ((irr, mult), (_, p))| {
                acc + mult * p * BigRational::from_integer(d.clone()) / BigInt::from(irr.dimension())
            });
            Ok((lam, total / &index))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::build_rep;
    use crate::sampling::{oracle_sample_distribution, weak_distribution_exact};
    use num_traits::{One, ToPrimitive};

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn group_axioms_n2() {
        let k = all_elements(2).unwrap();
        assert_eq!(k.len(), 8);
        let e = WreathElement::identity(2);
        for x in &k {
            assert_eq!(wreath_multiply(x, &x.inverse()).unwrap(), e);
            assert_eq!(wreath_multiply(&e, x).unwrap(), *x);
            for y in &k {
                assert!(k.contains(&wreath_multiply(x, y).unwrap()));
                for z in &k {
                    let l = wreath_multiply(&wreath_multiply(x, y).unwrap(), z).unwrap();
                    let r = wreath_multiply(x, &wreath_multiply(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let s = WreathElement::swap(3);
        assert!(wreath_multiply(&s, &s).unwrap().is_identity());
        let a = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let b = Permutation::transposition(3, 0, 1);
        let x = WreathElement::new(a.clone(), b.clone(), false).unwrap();
        let c = wreath_multiply(&wreath_multiply(&s.inverse(), &x).unwrap(), &s).unwrap();
        assert_eq!(c, WreathElement::new(b, a, false).unwrap());
        assert!(WreathElement::new(Permutation::identity(2), Permutation::identity(3), false).is_err());
        assert!(wreath_multiply(&WreathElement::swap(2), &s).is_err());
    }

    #[test]
    fn embedding_matches_s2n_multiplication() {
        for n in 1..=3 {
            assert!(embedding_is_isomorphism(n).unwrap());
        }
        assert_eq!(WreathElement::swap(2).to_permutation(), block_swap(2));
    }

    #[test]
    fn matched_class_properties() {
        assert_eq!(matched_involution_class(1).len(), 1);
        let c2 = matched_involution_class(2);
        assert_eq!(c2.len(), 2);
        assert!(c2.iter().all(|x| wreath_multiply(x, x).unwrap().is_identity()));
        for n in 1..=3 {
            let mut class = matched_involution_class(n);
            class.sort_by_key(sort_key);
            assert_eq!(conjugacy_class(&WreathElement::swap(n)).unwrap(), class);
            assert!(class.iter().all(|x| x.to_permutation().support() == 2 * n));
        }
    }

    #[test]
    fn class_equation() {
        for n in 1..=3 {
            let classes = conjugacy_classes(n).unwrap();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(BigInt::from(total), order(n));
            assert_eq!(classes.len(), irreducibles(n).len());
        }
    }

    #[test]
    fn induced_character_examples() {
        let (triv, sgn) = (Partition::row(2), Partition::column(2));
        for x in all_elements(2).unwrap().iter().filter(|x| x.t) {
            assert_eq!(induced_character(&triv, &sgn, x).unwrap(), 0);
        }
        let e = WreathElement::identity(3);
        assert_eq!(induced_character(&part(&[2, 1]), &Partition::row(3), &e).unwrap(), 4);
        let ip = k_inner_product(2, |x| induced_character(&triv, &sgn, x), |x| induced_character(&triv, &sgn, x));
        assert!(ip.unwrap().is_one());
    }

    #[test]
    fn induced_inner_products_n_le_3() {
        for n in 1..=3 {
            let parts = enumerate_partitions(n);
            for r in &parts {
                for s in &parts {
                    let ip = k_inner_product(n, |x| induced_character(r, s, x), |x| induced_character(r, s, x)).unwrap();
                    let expected = if r == s { 2 } else { 1 };
                    assert_eq!(ip, BigRational::from_integer(expected.into()), "{r} {s}");
                }
            }
        }
    }

    #[test]
    fn irreducible_classification_n_le_3() {
        for n in 1..=3 {
            let irr = irreducibles(n);
            let total: u64 = irr.iter().map(|i| i.dimension().pow(2)).sum();
            assert_eq!(BigInt::from(total), order(n));
            for (i, a) in irr.iter().enumerate() {
                for (j, b) in irr.iter().enumerate() {
                    let ip = k_inner_product(n, |x| a.character(x), |x| b.character(x)).unwrap();
                    assert_eq!(ip, BigRational::from_integer(BigInt::from(u8::from(i == j))), "{a:?} {b:?}");
                }
            }
        }
        for n in 4..=6 {
            let total: u64 = irreducibles(n).iter().map(|i| i.dimension().pow(2)).sum();
            assert_eq!(BigInt::from(total), order(n));
        }
    }

    #[test]
    fn split_representations() {
        for n in 1..=3 {
            let k = all_elements(n).unwrap();
            for rho in enumerate_partitions(n) {
                let d = rho.dimension_u64() as i64;
                for tw in [Twist::Trivial, Twist::Sign] {
                    let sr = SplitRepresentation::new(build_rep(&rho), tw);
                    let mats: Vec<DMatrix<f64>> = k.iter().map(|x| sr.matrix(x).unwrap()).collect();
                    for (i, x) in k.iter().enumerate() {
                        let exact = split_character(&rho, tw, x).unwrap();
                        assert!((mats[i].trace() - exact as f64).abs() < 1e-10);
                        for (j, y) in k.iter().enumerate() {
                            let xy = wreath_multiply(x, y).unwrap();
                            let idx = k.iter().position(|z| *z == xy).unwrap();
                            assert!((&mats[i] * &mats[j] - &mats[idx]).norm() < 1e-10);
                        }
                    }
                    for x in matched_involution_class(n) {
                        assert_eq!(split_character(&rho, tw, &x).unwrap().abs(), d);
                    }
                    let e = WreathElement::identity(n);
                    assert!((sr.trace(&e).unwrap() - (d * d) as f64).abs() < 1e-12);
                }
                let distinct = k.iter().any(|x| {
                    split_character(&rho, Twist::Trivial, x).unwrap() != split_character(&rho, Twist::Sign, x).unwrap()
                });
                assert!(distinct);
            }
        }
        let sgn = Partition::column(2);
        for tw in [Twist::Trivial, Twist::Sign] {
            let ip = k_inner_product(2, |x| split_character(&sgn, tw, x), |x| split_character(&sgn, tw, x));
            assert!(ip.unwrap().is_one());
        }
    }

    #[test]
    fn displayed_formula_departs_at_identity() {
        let e = WreathElement::identity(3);
        let rho = part(&[2, 1]);
        assert_eq!(displayed_split_character(&rho, Twist::Trivial, &e).unwrap(), 4);
        assert_eq!(split_character(&rho, Twist::Trivial, &e).unwrap(), 4);
        let rho = Partition::row(3);
        assert_eq!(displayed_split_character(&rho, Twist::Trivial, &e).unwrap(), 2);
        assert_eq!(split_character(&rho, Twist::Trivial, &e).unwrap(), 1);
    }

    #[test]
    fn structured_report_n4() {
        let rows = structured_normalized_character_report(4).unwrap();
        assert!(rows.iter().filter(|r| r.irrep.starts_with("ind")).all(|r| r.normalized.is_zero()));
        let splits: Vec<BigRational> =
            rows.iter().filter(|r| r.irrep.ends_with(":trivial")).map(|r| r.normalized.clone()).collect();
        assert_eq!(splits, vec![q(1, 1), q(1, 3), q(1, 2), q(1, 3), q(1, 1)]);
        let top = rows.iter().find(|r| r.irrep == "split(4):sign").unwrap();
        assert_eq!(top.normalized, q(-1, 1));
        let total = rows.iter().fold(BigRational::zero(), |a, r| a + &r.plancherel);
        assert!(total.is_one());
        assert_eq!(large_character_mass(&rows, &q(1, 1)), q(4, 1152));
        assert!(matches!(structured_normalized_character_report(7), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn coset_refinement_n2() {
        let x = WreathElement::swap(2);
        let lifted = lift_weak_distribution(&x).unwrap();
        let m = x.to_permutation();
        assert_eq!(lifted, weak_distribution_exact(4, &m).unwrap());
        let oracle = oracle_sample_distribution(4, &m).unwrap().partition_marginal();
        for ((l1, p), (l2, o)) in lifted.iter().zip(&oracle) {
            assert_eq!(l1, l2);
            assert!((p.to_f64().unwrap() - o).abs() < 1e-10);
        }
        let pk = weak_distribution_k(&x).unwrap();
        assert!(pk.iter().fold(BigRational::zero(), |a, (_, p)| a + p).is_one());
    }
}
