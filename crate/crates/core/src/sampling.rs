//! Weak and strong Fourier sampling of coset states for `H = {1, m}`.
//!
//! Strong sampling measures a frame `{(b_j, a_j)}` in the column space of the
//! observed irreducible. The conditional law of `b_j` given `λ` is
//! `a_j ‖Π_m b_j‖² / rk Π_m`; for trivial `H` it reduces to the natural
//! distribution `a_j / d^λ`.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::character::character;
use crate::error::{Error, Result};
use crate::numeric::{dot, haar_orthogonal, norm_sq, pairwise_sum};
use crate::partition::{enumerate_partitions, factorial, Partition};
use crate::perm::{all_permutations, Permutation};
use crate::rep::{factorial_f64, RepBlock};

/// Tolerance on the unit norm of frame vectors.
pub const UNIT_TOL: f64 = 1e-10;
/// Tolerance on the completeness condition `Σ a_j |b_j⟩⟨b_j| = 1`.
pub const COMPLETENESS_TOL: f64 = 1e-8;
/// Tolerance on probabilities summing to one.
pub const DISTRIBUTION_TOL: f64 = 1e-9;
/// Largest `n` for the explicit coset-state oracle.
pub const ORACLE_MAX_N: usize = 5;

/// A finite probability distribution over labelled outcomes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution<L> {
    outcomes: Vec<L>,
    probabilities: Vec<f64>,
}

impl<L: Clone + PartialEq> Distribution<L> {
    pub fn new(outcomes: Vec<L>, probabilities: Vec<f64>) -> Result<Self> {
        if outcomes.len() != probabilities.len() {
            return Err(Error::MismatchedOutcomes);
        }
        if probabilities.iter().any(|&p| p < -DISTRIBUTION_TOL || !p.is_finite()) {
            return Err(Error::InvalidFrame("negative or non-finite probability".into()));
        }
        let total = pairwise_sum(&probabilities);
        if (total - 1.0).abs() > DISTRIBUTION_TOL {
            return Err(Error::InvalidFrame(format!("probabilities sum to {total}")));
        }
        Ok(Distribution { outcomes, probabilities })
    }

    pub fn outcomes(&self) -> &[L] {
        &self.outcomes
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn get(&self, outcome: &L) -> Option<f64> {
        self.outcomes.iter().position(|o| o == outcome).map(|i| self.probabilities[i])
    }

    /// `count` independent draws by inverse CDF with a seeded generator.
    pub fn draw(&self, count: usize, seed: u64) -> Vec<L> {
        use rand::Rng;
        let mut cumulative = Vec::with_capacity(self.len());
        let mut acc = 0.0;
        for p in &self.probabilities {
            acc += p;
            cumulative.push(acc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let u = rng.random::<f64>() * acc;
                let idx = cumulative.partition_point(|&c| c <= u).min(self.len() - 1);
                self.outcomes[idx].clone()
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, f64)> {
        self.outcomes.iter().zip(self.probabilities.iter().copied())
    }
}

/// A weighted frame `{(b_j, a_j)}` in the space of `S^λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    lambda: Partition,
    vectors: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

/// How frames are generated for experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameSpec {
    /// The Young orthogonal basis itself.
    Yor,
    /// A Haar-random orthonormal basis.
    RandomOrthonormal,
    /// Two Haar-random bases, every vector with weight ½.
    Overcomplete2x,
}

impl FrameSpec {
    pub fn name(&self) -> &'static str {
        match self {
            FrameSpec::Yor => "yor",
            FrameSpec::RandomOrthonormal => "random-orthonormal",
            FrameSpec::Overcomplete2x => "overcomplete-2x",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "yor" => Some(FrameSpec::Yor),
            "random-orthonormal" => Some(FrameSpec::RandomOrthonormal),
            "overcomplete-2x" => Some(FrameSpec::Overcomplete2x),
            _ => None,
        }
    }
}

impl Frame {
    /// Validates unit norms, completeness and `Σ a_j = d^λ`.
    pub fn new(lambda: Partition, vectors: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let d = lambda.dimension_u64() as usize;
        if vectors.len() != weights.len() || vectors.is_empty() {
            return Err(Error::InvalidFrame("need one positive weight per vector".into()));
        }
        let mut gram = DMatrix::<f64>::zeros(d, d);
        for (v, &a) in vectors.iter().zip(&weights) {
            if v.len() != d {
                return Err(Error::SizeMismatch { expected: d, found: v.len() });
            }
            if a <= 0.0 || !a.is_finite() {
                return Err(Error::InvalidFrame(format!("weight {a} is not positive")));
            }
            if (norm_sq(v).sqrt() - 1.0).abs() > UNIT_TOL {
                return Err(Error::InvalidFrame("frame vectors must have unit length".into()));
            }
            let col = DVector::from_column_slice(v);
            gram += &col * col.transpose() * a;
        }
        let deviation = (gram - DMatrix::identity(d, d)).abs().max();
        if deviation > COMPLETENESS_TOL {
            return Err(Error::CompletenessViolated(deviation));
        }
        let total: f64 = pairwise_sum(&weights);
        if (total - d as f64).abs() > COMPLETENESS_TOL {
            return Err(Error::InvalidFrame(format!("weights sum to {total}, expected {d}")));
        }
        Ok(Frame { lambda, vectors, weights })
    }

    /// The coordinate (Young orthogonal) basis.
    pub fn coordinate(lambda: &Partition) -> Self {
        let d = lambda.dimension_u64() as usize;
        let vectors = (0..d)
            .map(|j| {
                let mut e = vec![0.0; d];
                e[j] = 1.0;
                e
            })
            .collect();
        Frame { lambda: lambda.clone(), vectors, weights: vec![1.0; d] }
    }

    /// Columns of a Haar-random orthogonal matrix.
    pub fn random_orthonormal(lambda: &Partition, seed: u64) -> Result<Self> {
        let d = lambda.dimension_u64() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = haar_orthogonal(d, &mut rng);
        let vectors = (0..d).map(|j| q.column(j).iter().copied().collect()).collect();
        Frame::new(lambda.clone(), vectors, vec![1.0; d])
    }

    /// Union of two independent Haar bases, each vector weighted ½.
    pub fn overcomplete(lambda: &Partition, seed: u64) -> Result<Self> {
        let d = lambda.dimension_u64() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vectors = Vec::with_capacity(2 * d);
        for _ in 0..2 {
            let q = haar_orthogonal(d, &mut rng);
            vectors.extend((0..d).map(|j| q.column(j).iter().copied().collect::<Vec<f64>>()));
        }
        Frame::new(lambda.clone(), vectors, vec![0.5; 2 * d])
    }

    pub fn from_spec(lambda: &Partition, spec: FrameSpec, seed: u64) -> Result<Self> {
        match spec {
            FrameSpec::Yor => Ok(Frame::coordinate(lambda)),
            FrameSpec::RandomOrthonormal => Frame::random_orthonormal(lambda, seed),
            FrameSpec::Overcomplete2x => Frame::overcomplete(lambda, seed),
        }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Whether this is the coordinate basis (lets samplers read diagonals).
    fn is_coordinate(&self) -> bool {
        self.weights.iter().all(|&a| a == 1.0)
            && self.vectors.iter().enumerate().all(|(j, v)| v.iter().enumerate().all(|(i, &x)| x == f64::from(i == j)))
    }
}

fn check_subgroup_generator(n: usize, m: &Permutation) -> Result<()> {
    if m.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: m.n() });
    }
    if !m.is_involution() {
        return Err(Error::NotAnInvolution);
    }
    Ok(())
}

/// `|H|` for `H = {1, m}` (1 when `m` is the identity).
fn subgroup_order(m: &Permutation) -> u64 {
    if m.is_identity() {
        1
    } else {
        2
    }
}

/// Exact weak Fourier sampling law `P(λ) = d^λ |H| rk Π_H / n!`, with the
/// rank `(d^λ + χ^λ(m))/2` (or `d^λ` for trivial `H`).
pub fn weak_distribution_exact(n: usize, m: &Permutation) -> Result<Vec<(Partition, BigRational)>> {
    check_subgroup_generator(n, m)?;
    let order = subgroup_order(m);
    let class = m.cycle_type();
    let fact = BigInt::from(factorial(n));
    enumerate_partitions(n)
        .into_iter()
        .map(|lam| {
            let d = BigInt::from(lam.dimension());
            let chi = BigInt::from(character(&lam, &class)?);
            // |H| rk Π_H = Σ_{h∈H} χ(h)
            let h_rank = if order == 1 { d.clone() } else { &d + chi };
            Ok((lam, BigRational::new(d * h_rank, fact.clone())))
        })
        .collect()
}

/// Weak Fourier sampling distribution over partitions of `n`.
pub fn weak_distribution(n: usize, m: &Permutation) -> Result<Distribution<Partition>> {
    let exact = weak_distribution_exact(n, m)?;
    let (outcomes, probs): (Vec<_>, Vec<_>) =
        exact.into_iter().map(|(l, p)| (l, p.to_f64().expect("finite probability"))).unzip();
    Distribution::new(outcomes, probs)
}

/// The natural distribution `a_j / d^λ` on a frame.
pub fn natural_distribution(frame: &Frame) -> Result<Distribution<usize>> {
    let d = frame.lambda.dimension_u64() as f64;
    let probs = frame.weights.iter().map(|a| a / d).collect();
    Distribution::new((0..frame.len()).collect(), probs)
}

/// `‖Π_m b‖²` for every frame vector, with `Π_m = (1 + ρ(m))/2`.
fn projected_norms(rep: &RepBlock, frame: &Frame, m: &Permutation) -> Result<Vec<f64>> {
    if m.is_identity() {
        return Ok(frame.vectors.iter().map(|v| norm_sq(v)).collect());
    }
    if frame.is_coordinate() {
        let rm = rep.rep_matrix(m)?;
        return Ok((0..frame.len()).map(|j| 0.5 * (1.0 + rm[(j, j)])).collect());
    }
    // ‖Π_m b‖² = ⟨b, Π_m b⟩ = (‖b‖² + ⟨b, m b⟩)/2
    frame
        .vectors
        .iter()
        .map(|b| Ok(0.5 * (norm_sq(b) + dot(b, &rep.apply(m, b)?))))
        .collect()
}

/// Rank of `Π_m` in `S^λ` from the exact character.
pub fn involution_rank(lambda: &Partition, m: &Permutation) -> Result<usize> {
    let d = lambda.dimension_u64() as i64;
    if m.is_identity() {
        return Ok(d as usize);
    }
    let chi = character(lambda, &m.cycle_type())?;
    Ok(((d + chi) / 2) as usize)
}

/// Strong sampling conditional law `P_m(b_j) = a_j ‖Π_m b_j‖² / rk Π_m`.
pub fn conditional_distribution(rep: &RepBlock, frame: &Frame, m: &Permutation) -> Result<Distribution<usize>> {
    if rep.lambda() != frame.lambda() {
        return Err(Error::InvalidFrame(format!("frame is for {} but rep is {}", frame.lambda(), rep.lambda())));
    }
    check_subgroup_generator(rep.n(), m)?;
    let rank = involution_rank(rep.lambda(), m)?;
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    let norms = projected_norms(rep, frame, m)?;
    let probs = norms.iter().zip(&frame.weights).map(|(x, a)| a * x / rank as f64).collect();
    Distribution::new((0..frame.len()).collect(), probs)
}

/// Symmetrises POVM elements on `C[S_n]`: `μ' = (1/|G|) Σ_g L_g† μ L_g`.
///
/// Operators are indexed by the elements of [`all_permutations`]`(n)`.
pub fn symmetrize_povm(n: usize, operators: &[DMatrix<f64>]) -> Result<Vec<DMatrix<f64>>> {
    let group = all_permutations(n);
    let size = group.len();
    check_povm(size, operators)?;
    let index: HashMap<&Permutation, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    // left[g][a] = index of g∘a
    let left: Vec<Vec<usize>> = group
        .iter()
        .map(|g| group.iter().map(|a| index[&g.compose(a).expect("same n")]).collect())
        .collect();
    Ok(operators
        .iter()
        .map(|mu| {
            DMatrix::from_fn(size, size, |a, b| {
                // (L_g† μ L_g)_{a,b} = μ_{ga, gb}
                let terms: Vec<f64> = left.iter().map(|lg| mu[(lg[a], lg[b])]).collect();
                pairwise_sum(&terms) / size as f64
            })
        })
        .collect())
}

fn check_povm(size: usize, operators: &[DMatrix<f64>]) -> Result<()> {
    let mut total = DMatrix::<f64>::zeros(size, size);
    for op in operators {
        if op.nrows() != size || op.ncols() != size {
            return Err(Error::SizeMismatch { expected: size, found: op.nrows() });
        }
        total += op;
    }
    let deviation = (total - DMatrix::identity(size, size)).abs().max();
    if deviation > COMPLETENESS_TOL {
        return Err(Error::CompletenessViolated(deviation));
    }
    Ok(())
}

/// A random POVM with `outcomes` elements on `R^size`: `μ_j = S^{-1/2} A_j S^{-1/2}`
/// for Wishart-like `A_j = G_j G_jᵀ` and `S = Σ A_j`.
pub fn random_povm<R: rand::Rng + ?Sized>(size: usize, outcomes: usize, rng: &mut R) -> Vec<DMatrix<f64>> {
    let raw: Vec<DMatrix<f64>> = (0..outcomes)
        .map(|_| {
            let g = DMatrix::from_fn(size, 2, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
            &g * g.transpose()
        })
        .collect();
    let total = raw.iter().fold(DMatrix::zeros(size, size), |acc, a| acc + a);
    let eig = total.symmetric_eigen();
    let inv_sqrt = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x.sqrt()))
        * eig.eigenvectors.transpose();
    raw.iter().map(|a| &inv_sqrt * a * &inv_sqrt).collect()
}

/// The left translation `L_x` on `C[S_n]` as a permutation matrix.
pub fn left_translation(x: &Permutation) -> DMatrix<f64> {
    let group = all_permutations(x.n());
    let index: HashMap<&Permutation, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut m = DMatrix::zeros(group.len(), group.len());
    for (h, g) in group.iter().enumerate() {
        m[(index[&x.compose(g).expect("same n")], h)] = 1.0;
    }
    m
}

/// Outcome probabilities `P_j = (1/|G|) Σ_c ⟨cHg| μ_j |cHg⟩` of a POVM on the
/// uniformly random left coset of `Hg`.
pub fn povm_coset_probabilities(
    operators: &[DMatrix<f64>],
    subgroup: &[Permutation],
    g: &Permutation,
) -> Result<Vec<f64>> {
    let n = g.n();
    crate::rep::validate_subgroup(subgroup)?;
    let group = all_permutations(n);
    check_povm(group.len(), operators)?;
    let index: HashMap<&Permutation, usize> = group.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let hg: Vec<Permutation> = subgroup.iter().map(|h| h.compose(g)).collect::<Result<_>>()?;
    let amp = 1.0 / (subgroup.len() as f64).sqrt();
    let mut density = DMatrix::<f64>::zeros(group.len(), group.len());
    for c in &group {
        let support: Vec<usize> =
            hg.iter().map(|x| c.compose(x).map(|y| index[&y])).collect::<Result<_>>()?;
        for &i in &support {
            for &j in &support {
                density[(i, j)] += amp * amp;
            }
        }
    }
    density /= group.len() as f64;
    Ok(operators.iter().map(|mu| (mu * &density).trace()).collect())
}

/// The group Fourier transform over `S_n` with Young's orthogonal form.
pub struct FourierTransform {
    n: usize,
    group: Vec<Permutation>,
    reps: Vec<RepBlock>,
    /// `matrices[k][g]` = `ρ_k(group[g])`.
    matrices: Vec<Vec<DMatrix<f64>>>,
}

impl FourierTransform {
    pub fn new(n: usize) -> Result<Self> {
        let group = all_permutations(n);
        let reps: Vec<RepBlock> =
            enumerate_partitions(n).iter().map(crate::cache::rep_for).collect::<Result<_>>()?;
        let matrices = reps
            .iter()
            .map(|r| group.iter().map(|g| r.rep_matrix(g)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(FourierTransform { n, group, reps, matrices })
    }

    pub fn group(&self) -> &[Permutation] {
        &self.group
    }

    pub fn reps(&self) -> &[RepBlock] {
        &self.reps
    }

    /// Blocks `f̂(λ) = √(d/n!) Σ_g f(g) ρ(g)` for a state indexed like [`Self::group`].
    pub fn transform(&self, f: &[Complex64]) -> Vec<DMatrix<Complex64>> {
        let norm = factorial_f64(self.n);
        self.reps
            .iter()
            .zip(&self.matrices)
            .map(|(rep, mats)| {
                let d = rep.dim();
                let mut acc = DMatrix::<Complex64>::zeros(d, d);
                for (value, r) in f.iter().zip(mats) {
                    if *value != Complex64::new(0.0, 0.0) {
                        acc += r.map(|x| *value * x);
                    }
                }
                acc * Complex64::new((d as f64 / norm).sqrt(), 0.0)
            })
            .collect()
    }
}

/// Result of simulating the full measurement pipeline.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub n: usize,
    pub m: Permutation,
    /// Per partition, `probs[(i, j)]` = probability of observing `(λ, row i, column j)`
    /// averaged over the random left coset.
    pub blocks: Vec<(Partition, DMatrix<f64>)>,
}

impl OracleReport {
    pub fn partition_marginal(&self) -> Vec<(Partition, f64)> {
        self.blocks.iter().map(|(l, p)| (l.clone(), p.sum())).collect()
    }

    /// Column law conditioned on `λ`.
    pub fn column_conditional(&self, lambda: &Partition) -> Option<Vec<f64>> {
        let (_, p) = self.blocks.iter().find(|(l, _)| l == lambda)?;
        let total = p.sum();
        Some((0..p.ncols()).map(|j| p.column(j).sum() / total).collect())
    }

    /// Row law conditioned on `λ`.
    pub fn row_conditional(&self, lambda: &Partition) -> Option<Vec<f64>> {
        let (_, p) = self.blocks.iter().find(|(l, _)| l == lambda)?;
        let total = p.sum();
        Some((0..p.nrows()).map(|i| p.row(i).sum() / total).collect())
    }

    /// Joint law over `(λ, column)` in canonical order.
    pub fn joint(&self) -> Result<Distribution<(Partition, usize)>> {
        let mut outcomes = Vec::new();
        let mut probs = Vec::new();
        for (l, p) in &self.blocks {
            for j in 0..p.ncols() {
                outcomes.push((l.clone(), j));
                probs.push(p.column(j).sum());
            }
        }
        Distribution::new(outcomes, probs)
    }
}

/// Runs the standard method end to end for `H = {1, m}`: prepares every
/// coset state `|cH⟩`, applies the Fourier transform, and averages the
/// squared amplitudes over the uniformly random coset.
pub fn oracle_sample_distribution(n: usize, m: &Permutation) -> Result<OracleReport> {
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge { what: "the coset-state oracle (desk-scale only)", n, limit: ORACLE_MAX_N });
    }
    check_subgroup_generator(n, m)?;
    let ft = FourierTransform::new(n)?;
    let group = ft.group();
    let index: HashMap<&Permutation, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let subgroup: Vec<Permutation> =
        if m.is_identity() { vec![m.clone()] } else { vec![Permutation::identity(n), m.clone()] };
    let amp = Complex64::new(1.0 / (subgroup.len() as f64).sqrt(), 0.0);

    // one representative per left coset cH
    let mut seen = vec![false; group.len()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for (i, c) in group.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let members: Vec<usize> =
            subgroup.iter().map(|h| index[&c.compose(h).expect("same n")]).collect();
        for &k in &members {
            seen[k] = true;
        }
        cosets.push(members);
    }

    let mut blocks: Vec<(Partition, DMatrix<f64>)> =
        ft.reps().iter().map(|r| (r.lambda().clone(), DMatrix::zeros(r.dim(), r.dim()))).collect();
    for members in &cosets {
        let mut state = vec![Complex64::new(0.0, 0.0); group.len()];
        for &k in members {
            state[k] = amp;
        }
        for ((_, acc), block) in blocks.iter_mut().zip(ft.transform(&state)) {
            *acc += block.map(|z| z.norm_sqr());
        }
    }
    let count = cosets.len() as f64;
    for (_, acc) in &mut blocks {
        *acc /= count;
    }
    Ok(OracleReport { n, m: m.clone(), blocks })
}

/// Joint law of `(λ, b_j)` when each block is measured in `frames[λ]`:
/// `a_j ‖f̂(λ) b_j‖²` averaged over cosets. Computed from the oracle's blocks.
pub fn oracle_frame_joint(n: usize, m: &Permutation, frames: &[Frame]) -> Result<Vec<(Partition, Vec<f64>)>> {
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge { what: "the coset-state oracle (desk-scale only)", n, limit: ORACLE_MAX_N });
    }
    check_subgroup_generator(n, m)?;
    let ft = FourierTransform::new(n)?;
    let group = ft.group();
    let index: HashMap<&Permutation, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let subgroup: Vec<Permutation> =
        if m.is_identity() { vec![m.clone()] } else { vec![Permutation::identity(n), m.clone()] };
    let amp = Complex64::new(1.0 / (subgroup.len() as f64).sqrt(), 0.0);
    let mut out: Vec<(Partition, Vec<f64>)> = Vec::new();
    for (k, rep) in ft.reps().iter().enumerate() {
        let frame = frames
            .iter()
            .find(|f| f.lambda() == rep.lambda())
            .ok_or_else(|| Error::InvalidFrame(format!("no frame for {}", rep.lambda())))?;
        let mut probs = vec![0.0; frame.len()];
        for c in group {
            let mut state = vec![Complex64::new(0.0, 0.0); group.len()];
            for h in &subgroup {
                state[index[&c.compose(h)?]] = amp;
            }
            // Each coset appears |H| times over c ∈ G; averaging over G is the same law.
            let block = &ft.transform(&state)[k];
            for (j, (b, a)) in frame.vectors().iter().zip(frame.weights()).enumerate() {
                let bc = DVector::from_iterator(b.len(), b.iter().map(|&x| Complex64::new(x, 0.0)));
                probs[j] += a * (block * bc).norm_squared();
            }
        }
        for p in &mut probs {
            *p /= group.len() as f64;
        }
        out.push((rep.lambda().clone(), probs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::matching_class;
    use crate::rep::build_rep;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn m4() -> Permutation {
        Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()
    }

    #[test]
    fn weak_trivial_is_plancherel() {
        let d = weak_distribution(5, &Permutation::identity(5)).unwrap();
        for (lam, p) in d.iter() {
            let dim = lam.dimension_u64() as f64;
            assert!((p - dim * dim / 120.0).abs() < 1e-15);
        }
    }

    #[test]
    fn weak_s4_matching() {
        let expected = [1.0 / 12.0, 0.25, 1.0 / 3.0, 0.25, 1.0 / 12.0];
        for m in matching_class(4).unwrap() {
            let d = weak_distribution(4, &m).unwrap();
            for (p, e) in d.probabilities().iter().zip(expected) {
                assert!((p - e).abs() < 1e-15);
            }
        }
        let exact = weak_distribution_exact(4, &m4()).unwrap();
        let sum: BigRational = exact.iter().map(|(_, p)| p.clone()).sum();
        assert_eq!(sum, BigRational::from_integer(1.into()));
    }

    #[test]
    fn weak_rejects_non_involution() {
        let c = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(weak_distribution(4, &c).unwrap_err(), Error::NotAnInvolution);
    }

    #[test]
    fn weak_uses_same_rank_as_projector() {
        for n in [4, 6] {
            let m = &matching_class(n).unwrap()[2];
            let d = weak_distribution(n, m).unwrap();
            for (lam, p) in d.iter() {
                let rank = build_rep(lam).involution_projector(m).unwrap().rank() as f64;
                let dim = lam.dimension_u64() as f64;
                assert!((p - dim * 2.0 * rank / factorial_f64(n)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn natural_distribution_examples() {
        let f = Frame::coordinate(&part(&[2, 2]));
        assert_eq!(natural_distribution(&f).unwrap().probabilities(), &[0.5, 0.5]);
        let over = Frame::overcomplete(&part(&[3, 1]), 9).unwrap();
        for &p in natural_distribution(&over).unwrap().probabilities() {
            assert!((p - 1.0 / 6.0).abs() < 1e-15);
        }
    }

    #[test]
    fn frame_validation() {
        let lam = part(&[2, 1]);
        assert!(matches!(
            Frame::new(lam.clone(), vec![vec![1.0, 0.0]], vec![1.0]),
            Err(Error::CompletenessViolated(_))
        ));
        assert!(Frame::new(lam.clone(), vec![vec![2.0, 0.0], vec![0.0, 1.0]], vec![1.0, 1.0]).is_err());
        assert!(Frame::new(lam.clone(), vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, -1.0]).is_err());
        assert!(Frame::new(lam, vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, 1.0]).is_ok());
    }

    #[test]
    fn conditional_examples() {
        let lam = part(&[2, 2]);
        let rep = build_rep(&lam);
        for m in matching_class(4).unwrap() {
            let d = conditional_distribution(&rep, &Frame::coordinate(&lam), &m).unwrap();
            assert_eq!(d.probabilities(), &[0.5, 0.5]);
        }
        // λ = (3,1): Π_m has rank 1, so P_m(e_j) = ‖Π_m e_j‖² = ⟨u, e_j⟩² for the unit u spanning it.
        let lam = part(&[3, 1]);
        let rep = build_rep(&lam);
        let proj = rep.involution_projector(&m4()).unwrap();
        assert_eq!(proj.rank(), 1);
        let d = conditional_distribution(&rep, &Frame::coordinate(&lam), &m4()).unwrap();
        for (j, p) in d.probabilities().iter().enumerate() {
            assert!((p - proj.matrix()[(j, j)]).abs() < 1e-14);
        }
        assert!((d.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        // trivial H recovers the natural distribution
        let f = Frame::overcomplete(&lam, 1).unwrap();
        let a = conditional_distribution(&rep, &f, &Permutation::identity(4)).unwrap();
        let b = natural_distribution(&f).unwrap();
        for (x, y) in a.probabilities().iter().zip(b.probabilities()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugation_covariance() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [4, 6] {
            let group = all_permutations(n);
            let m = &matching_class(n).unwrap()[0];
            for lam in enumerate_partitions(n) {
                // P(λ) = 0 when Π_m vanishes, e.g. the sign rep of S_6
                if involution_rank(&lam, m).unwrap() == 0 {
                    continue;
                }
                let rep = build_rep(&lam);
                let frame = Frame::random_orthonormal(&lam, rng.random()).unwrap();
                for _ in 0..3 {
                    let g = &group[rng.random_range(0..group.len())];
                    let conj = m.conjugate_by(g).unwrap();
                    let lhs = conditional_distribution(&rep, &frame, &conj).unwrap();
                    let moved: Vec<Vec<f64>> = frame.vectors().iter().map(|b| rep.apply(g, b).unwrap()).collect();
                    let moved = Frame::new(lam.clone(), moved, frame.weights().to_vec()).unwrap();
                    let rhs = conditional_distribution(&rep, &moved, m).unwrap();
                    for (x, y) in lhs.probabilities().iter().zip(rhs.probabilities()) {
                        assert!((x - y).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn random_frames_sum_to_one_n6() {
        let m = &matching_class(6).unwrap()[4];
        for (k, lam) in enumerate_partitions(6).iter().enumerate() {
            if involution_rank(lam, m).unwrap() == 0 {
                assert_eq!(lam, &Partition::column(6));
                continue;
            }
            let rep = build_rep(lam);
            let f = Frame::overcomplete(lam, 100 + k as u64).unwrap();
            let d = conditional_distribution(&rep, &f, m).unwrap();
            assert!((pairwise_sum(d.probabilities()) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn oracle_matches_weak_and_conditional() {
        let report = oracle_sample_distribution(4, &m4()).unwrap();
        let weak = weak_distribution(4, &m4()).unwrap();
        for ((lam, p), (lam2, q)) in report.partition_marginal().iter().zip(weak.iter()) {
            assert_eq!(lam, lam2);
            assert!((p - q).abs() < 1e-10);
            let rep = build_rep(lam);
            let cond = conditional_distribution(&rep, &Frame::coordinate(lam), &m4()).unwrap();
            for (x, y) in report.column_conditional(lam).unwrap().iter().zip(cond.probabilities()) {
                assert!((x - y).abs() < 1e-10);
            }
            let d = lam.dimension_u64() as f64;
            for x in report.row_conditional(lam).unwrap() {
                assert!((x - 1.0 / d).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn oracle_trivial_subgroup() {
        let report = oracle_sample_distribution(4, &Permutation::identity(4)).unwrap();
        for (lam, block) in &report.blocks {
            let d = lam.dimension_u64() as f64;
            for x in block.iter() {
                assert!((x - d * d / 24.0 / (d * d)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn oracle_limits() {
        let m = &matching_class(6).unwrap()[0];
        assert!(matches!(oracle_sample_distribution(6, m), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn draws_follow_the_law() {
        let d = Distribution::new(vec!['a', 'b', 'c'], vec![0.5, 0.0, 0.5]).unwrap();
        let draws = d.draw(4000, 3);
        assert_eq!(draws, d.draw(4000, 3));
        assert!(!draws.contains(&'b'));
        let a = draws.iter().filter(|&&c| c == 'a').count() as f64 / 4000.0;
        assert!((a - 0.5).abs() < 0.05);
    }

    #[test]
    fn frame_joint_factorises() {
        let n = 4;
        let frames: Vec<Frame> = enumerate_partitions(n)
            .iter()
            .enumerate()
            .map(|(k, l)| Frame::overcomplete(l, k as u64).unwrap())
            .collect();
        let joint = oracle_frame_joint(n, &m4(), &frames).unwrap();
        let weak = weak_distribution(n, &m4()).unwrap();
        for ((lam, probs), frame) in joint.iter().zip(&frames) {
            let rep = build_rep(lam);
            let cond = conditional_distribution(&rep, frame, &m4()).unwrap();
            let p_lam = weak.get(lam).unwrap();
            for (x, y) in probs.iter().zip(cond.probabilities()) {
                assert!((x - p_lam * y).abs() < 1e-9);
            }
        }
    }

    fn random_rank_one_povm(seed: u64, size: usize) -> Vec<DMatrix<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = haar_orthogonal(size, &mut rng);
        (0..size).map(|j| q.column(j) * q.column(j).transpose()).collect()
    }

    #[test]
    fn symmetrised_povm_commutes_and_preserves() {
        let n = 3;
        let group = all_permutations(n);
        let povm = random_rank_one_povm(77, 6);
        let sym = symmetrize_povm(n, &povm).unwrap();
        for x in &group {
            let l = left_translation(x);
            for mu in &sym {
                assert!((&l * mu - mu * &l).abs().max() < 1e-8);
            }
        }
        let h = vec![Permutation::identity(3), Permutation::transposition(3, 0, 1)];
        for g in &group {
            let before = povm_coset_probabilities(&povm, &h, g).unwrap();
            let after = povm_coset_probabilities(&sym, &h, g).unwrap();
            for (a, b) in before.iter().zip(&after) {
                assert!((a - b).abs() < 1e-9);
            }
        }
        // fixed point
        let again = symmetrize_povm(n, &sym).unwrap();
        for (a, b) in again.iter().zip(&sym) {
            assert!((a - b).abs().max() < 1e-10);
        }
    }

    #[test]
    fn symmetrize_rejects_incomplete() {
        let mut povm = random_rank_one_povm(1, 6);
        povm.pop();
        assert!(matches!(symmetrize_povm(3, &povm), Err(Error::CompletenessViolated(_))));
    }
}
