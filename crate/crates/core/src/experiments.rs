//! Finite-n experiments: L₁ distances of strong sampling laws, Plancherel
//! tables and sampling, normalized-character profiles and `Λ_c` statistics.
//!
//! `‖P − Q‖₁` is always the plain sum `Σ |P − Q|`, with no factor ½.

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::character::normalized_character;
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use crate::partition::{check_threshold, enumerate_partitions, factorial, max_dimension_partitions, partition_count, Partition};
use crate::perm::{matching_class, CycleType, Permutation};
use crate::rep::{tensor_square_vector, Projector};
use crate::sampling::{
    conditional_distribution, involution_rank, natural_distribution, weak_distribution_exact, Distribution, Frame,
    FrameSpec,
};

/// Largest `n` with an exhaustive sweep over `M_n`.
pub const EXHAUSTIVE_SWEEP_MAX_N: usize = 8;
/// Largest `n` for exact Plancherel tables (`20! < 2⁶³`).
pub const PLANCHEREL_MAX_N: usize = 20;
pub const ROICHMAN_MAX_N: usize = 14;
pub const WEAK_VS_PLANCHEREL_MAX_N: usize = 10;
/// Slack allowed on the frame-sum inequality.
pub const FRAMESUM_TOL: f64 = 1e-8;

/// `Σ |P − Q|` over a common outcome set.
pub fn tv_distance<L: Clone + PartialEq>(p: &Distribution<L>, q: &Distribution<L>) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::MismatchedOutcomes);
    }
    let diffs = p
        .iter()
        .map(|(o, x)| q.get(o).map(|y| (x - y).abs()).ok_or(Error::MismatchedOutcomes))
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&diffs))
}

/// Exact `Σ |P − Q|` for rational laws listed over the same outcomes.
pub fn tv_distance_exact<L: PartialEq>(p: &[(L, BigRational)], q: &[(L, BigRational)]) -> Result<BigRational> {
    if p.len() != q.len() {
        return Err(Error::MismatchedOutcomes);
    }
    p.iter().try_fold(BigRational::zero(), |acc, (o, x)| {
        let (_, y) = q.iter().find(|(k, _)| k == o).ok_or(Error::MismatchedOutcomes)?;
        Ok(acc + (x - y).abs())
    })
}

/// Which involutions of the matching class to visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    All,
    /// `k` seeded uniform conjugates of the base matching.
    Sample(usize),
}

impl Sweep {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "all" => Some(Sweep::All),
            _ => text.strip_prefix("sample:").or(text.strip_prefix("sample ")).and_then(|k| k.trim().parse().ok()).map(Sweep::Sample),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Sweep::All => "all".into(),
            Sweep::Sample(k) => format!("sample:{k}"),
        }
    }
}

/// The involutions visited by a sweep, in a deterministic order.
pub fn sweep_involutions(n: usize, sweep: Sweep, seed: u64) -> Result<Vec<Permutation>> {
    match sweep {
        Sweep::All => {
            if n > EXHAUSTIVE_SWEEP_MAX_N {
                return Err(Error::TooLarge { what: "exhaustive matching sweep", n, limit: EXHAUSTIVE_SWEEP_MAX_N });
            }
            matching_class(n)
        }
        Sweep::Sample(k) => {
            let base = CycleType::matching(n)?.representative();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..k)
                .map(|_| {
                    let mut images: Vec<usize> = (0..n).collect();
                    images.shuffle(&mut rng);
                    base.conjugate_by(&Permutation::from_images(images)?)
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TVRecord {
    pub n: usize,
    pub lambda: Partition,
    pub frame: String,
    /// Cycle notation of `m`, or `"all"` for aggregated records.
    pub m: String,
    pub tv: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

pub fn summarize(values: &[f64]) -> Summary {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let count = sorted.len();
    let median = match count {
        0 => f64::NAN,
        c if c % 2 == 1 => sorted[c / 2],
        c => 0.5 * (sorted[c / 2 - 1] + sorted[c / 2]),
    };
    Summary {
        count,
        mean: pairwise_sum(&sorted) / count as f64,
        min: sorted.first().copied().unwrap_or(f64::NAN),
        median,
        max: sorted.last().copied().unwrap_or(f64::NAN),
    }
}

/// `‖P_m − N‖₁` for every `m` of a sweep, with one frame for all `m`.
pub fn tv_experiment(n: usize, lambda: &Partition, spec: FrameSpec, sweep: Sweep, seed: u64) -> Result<Vec<TVRecord>> {
    if lambda.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: lambda.n() });
    }
    let rep = crate::cache::rep_for(lambda)?;
    let frame = Frame::from_spec(lambda, spec, seed)?;
    let natural = natural_distribution(&frame)?;
    let involutions = sweep_involutions(n, sweep, seed)?;
    involutions
        .par_iter()
        .map(|m| {
            let p = conditional_distribution(&rep, &frame, m)?;
            Ok(TVRecord {
                n,
                lambda: lambda.clone(),
                frame: spec.name().into(),
                m: m.cycle_notation(),
                tv: tv_distance(&p, &natural)?,
                seed,
            })
        })
        .collect()
}

/// The maximal-dimension partition used for trend checks (first in canonical order on ties).
pub fn max_dim_partition(n: usize) -> Partition {
    max_dimension_partitions(n).into_iter().next().expect("n has a partition")
}

/// Mean `‖P_m − N‖₁` over all of `M_n` for the maximal-dimension `λ ⊢ n`.
pub fn mean_tv_trend(ns: &[usize], spec: FrameSpec, seed: u64) -> Result<Vec<(usize, f64)>> {
    ns.iter()
        .map(|&n| {
            let recs = tv_experiment(n, &max_dim_partition(n), spec, Sweep::All, seed)?;
            let tvs: Vec<f64> = recs.iter().map(|r| r.tv).collect();
            Ok((n, summarize(&tvs).mean))
        })
        .collect()
}

pub fn strictly_decreasing<T: PartialOrd>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlancherelRecord {
    pub n: usize,
    pub lambda: Partition,
    pub probability: BigRational,
    pub dimension: BigUint,
}

fn check_plancherel_n(n: usize) -> Result<()> {
    if n > PLANCHEREL_MAX_N {
        return Err(Error::TooLarge { what: "exact Plancherel table", n, limit: PLANCHEREL_MAX_N });
    }
    Ok(())
}

/// `(d^λ)²/n!` for every `λ ⊢ n`, in canonical order.
pub fn plancherel_table(n: usize) -> Result<Vec<PlancherelRecord>> {
    check_plancherel_n(n)?;
    let fact = BigInt::from(factorial(n));
    Ok(enumerate_partitions(n)
        .into_iter()
        .map(|lambda| {
            let d = lambda.dimension();
            let sq = BigInt::from(&d * &d);
            PlancherelRecord { n, lambda, probability: BigRational::new(sq, fact.clone()), dimension: d }
        })
        .collect())
}

/// Plancherel mass on `{λ : d^λ ≤ threshold}`.
pub fn plancherel_tail(n: usize, threshold: &BigUint) -> Result<BigRational> {
    Ok(plancherel_table(n)?
        .into_iter()
        .filter(|r| &r.dimension <= threshold)
        .fold(BigRational::zero(), |acc, r| acc + r.probability))
}

/// Independent Plancherel samples by exact inverse CDF on integers `[0, n!)`.
pub fn sample_plancherel(n: usize, count: usize, seed: u64) -> Result<Vec<Partition>> {
    let table = plancherel_table(n)?;
    let mut cumulative = Vec::with_capacity(table.len());
    let mut acc: u64 = 0;
    for r in &table {
        acc += (&r.dimension * &r.dimension).to_u64().expect("d² ≤ n! < 2⁶³");
        cumulative.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let u = rng.random_range(0..total);
            let idx = cumulative.partition_point(|&c| c <= u);
            table[idx].lambda.clone()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoichmanRow {
    pub lambda: Partition,
    /// `|χ^λ(M_n)/d^λ|`.
    pub normalized: BigRational,
    /// `max(λ₁, λ′₁)/n`.
    pub max_ratio: BigRational,
    pub dimension: BigUint,
}

/// Normalized characters at the matching class against `max(λ₁, λ′₁)/n`.
pub fn roichman_profile(n: usize) -> Result<Vec<RoichmanRow>> {
    if n > ROICHMAN_MAX_N {
        return Err(Error::TooLarge { what: "normalized-character profile", n, limit: ROICHMAN_MAX_N });
    }
    let class = CycleType::matching(n)?;
    enumerate_partitions(n)
        .into_par_iter()
        .map(|lambda| {
            let normalized = normalized_character(&lambda, &class)?.abs();
            if normalized > BigRational::one() {
                return Err(Error::InvariantViolated(format!("|χ/d| = {normalized} > 1 at {lambda}")));
            }
            let top = lambda.first_row().max(lambda.first_column());
            Ok(RoichmanRow {
                max_ratio: BigRational::new(BigInt::from(top), BigInt::from(n)),
                dimension: lambda.dimension(),
                normalized,
                lambda,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaCReport {
    pub n: usize,
    pub c: Rational64,
    pub members: Vec<Partition>,
    /// `2⌈cn⌉ p(⌈cn⌉)`.
    pub count_bound: BigUint,
    /// `2(⌊cn⌋ + 1) p(⌊cn⌋)`, which always dominates the exact count.
    pub count_bound_floor: BigUint,
    pub max_dimension: BigUint,
    /// Whether `d^μ < n^{cn}` holds for every member, compared exactly.
    pub dimension_bound_holds: bool,
    /// `n^{cn}` as a float, for display.
    pub dimension_bound: f64,
    /// Weak-sampling mass on `Λ_c` for `H = {1, m}`; `None` for odd `n`.
    pub weak_mass: Option<BigRational>,
    /// `(λ, in Λ_c, rk Π_m/d^λ)` for every `λ ⊢ n`; empty for odd `n`.
    pub rank_ratios: Vec<(Partition, bool, BigRational)>,
}

fn ceil_floor(c: Rational64, n: usize) -> (usize, usize) {
    let cn = c * Rational64::from_integer(n as i64);
    (cn.ceil().to_integer() as usize, cn.floor().to_integer() as usize)
}

/// `d < n^{cn}` exactly, as `d^q < n^{p n}` for `c = p/q`.
fn below_power(d: &BigUint, n: usize, c: Rational64) -> bool {
    let (p, q) = (*c.numer() as u32, *c.denom() as u32);
    d.pow(q) < BigUint::from(n).pow(p * n as u32)
}

pub fn lambda_c_report(n: usize, c: Rational64) -> Result<LambdaCReport> {
    check_threshold(c)?;
    let all = enumerate_partitions(n);
    let members: Vec<Partition> =
        all.iter().filter_map(|l| l.in_lambda_c(c).map(|inside| inside.then(|| l.clone())).transpose()).collect::<Result<_>>()?;
    let (ceil, floor) = ceil_floor(c, n);
    let count_bound = BigUint::from(2 * ceil) * partition_count(ceil);
    let count_bound_floor = BigUint::from(2 * (floor + 1)) * partition_count(floor);
    let max_dimension = members.iter().map(Partition::dimension).max().unwrap_or_default();
    let dimension_bound_holds = members.iter().all(|l| below_power(&l.dimension(), n, c));
    let c_f = *c.numer() as f64 / *c.denom() as f64;
    let dimension_bound = (n as f64).powf(c_f * n as f64);
    let (weak_mass, rank_ratios) = if n.is_multiple_of(2) && n > 0 {
        let m = CycleType::matching(n)?.representative();
        let weak = weak_distribution_exact(n, &m)?;
        let mass = weak.iter().filter(|(l, _)| members.contains(l)).fold(BigRational::zero(), |acc, (_, p)| acc + p);
        let ratios = all
            .iter()
            .map(|l| {
                let r = BigRational::new(BigInt::from(involution_rank(l, &m)?), BigInt::from(l.dimension()));
                Ok((l.clone(), members.contains(l), r))
            })
            .collect::<Result<_>>()?;
        (Some(mass), ratios)
    } else {
        (None, Vec::new())
    };
    Ok(LambdaCReport {
        n,
        c,
        members,
        count_bound,
        count_bound_floor,
        max_dimension,
        dimension_bound_holds,
        dimension_bound,
        weak_mass,
        rank_ratios,
    })
}

/// Exact `‖P_weak − Plancherel‖₁` for `H = {1, m}`.
pub fn weak_vs_plancherel_for(n: usize, m: &Permutation) -> Result<BigRational> {
    if n > WEAK_VS_PLANCHEREL_MAX_N {
        return Err(Error::TooLarge { what: "weak vs Plancherel distance", n, limit: WEAK_VS_PLANCHEREL_MAX_N });
    }
    let weak = weak_distribution_exact(n, m)?;
    let planch: Vec<(Partition, BigRational)> =
        plancherel_table(n)?.into_iter().map(|r| (r.lambda, r.probability)).collect();
    tv_distance_exact(&weak, &planch)
}

/// [`weak_vs_plancherel_for`] at the first element of `M_n`.
pub fn weak_vs_plancherel(n: usize) -> Result<BigRational> {
    weak_vs_plancherel_for(n, &CycleType::matching(n)?.representative())
}

/// `Σ_b a_b ‖Π_L(b ⊗ b)‖²`, failing if it exceeds `dim L`.
pub fn framesum_check(frame: &Frame, subspace: &Projector) -> Result<f64> {
    let d = frame.lambda().dimension_u64() as usize;
    if subspace.dim() != d * d {
        return Err(Error::SizeMismatch { expected: d * d, found: subspace.dim() });
    }
    let terms: Vec<f64> = frame
        .vectors()
        .iter()
        .zip(frame.weights())
        .map(|(b, a)| a * subspace.norm_sq_of_image(&tensor_square_vector(b)))
        .collect();
    let sum = pairwise_sum(&terms);
    if sum > subspace.rank() as f64 + FRAMESUM_TOL {
        return Err(Error::InvariantViolated(format!("frame sum {sum} exceeds dim L = {}", subspace.rank())));
    }
    Ok(sum)
}

/// A seeded random subspace of `R^dim` with dimension in `1..=dim`.
pub fn random_subspace(dim: usize, rng: &mut ChaCha8Rng) -> Result<Projector> {
    let k = rng.random_range(1..=dim);
    let q = crate::numeric::haar_orthogonal(dim, rng);
    let cols: DMatrix<f64> = q.columns(0, k).into_owned();
    Projector::onto_orthonormal_columns(&cols)
}

/// One random `(frame, L)` trial per seed at the given `λ`, alternating frame kinds.
pub fn framesum_trials(lambda: &Partition, trials: usize, seed: u64) -> Result<Vec<(f64, usize)>> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = seed.wrapping_add(t as u64);
            let spec = if t % 2 == 0 { FrameSpec::RandomOrthonormal } else { FrameSpec::Overcomplete2x };
            let frame = Frame::from_spec(lambda, spec, s)?;
            let d = frame.lambda().dimension_u64() as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x9e37_79b9_7f4a_7c15);
            let l = random_subspace(d * d, &mut rng)?;
            Ok((framesum_check(&frame, &l)?, l.rank()))
        })
        .collect()
}

/// Plancherel probabilities as floats, for [`tv_distance`] against float laws.
pub fn plancherel_distribution(n: usize) -> Result<Distribution<Partition>> {
    let (o, p): (Vec<_>, Vec<_>) = plancherel_table(n)?
        .into_iter()
        .map(|r| (r.lambda, r.probability.to_f64().expect("finite")))
        .unzip();
    Distribution::new(o, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{build_rep, TensorSquare};
    use crate::sampling::weak_distribution;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn tv_distance_examples() {
        let p = plancherel_distribution(4).unwrap();
        assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
        let a = Distribution::new(vec![0, 1], vec![1.0, 0.0]).unwrap();
        let b = Distribution::new(vec![0, 1], vec![0.0, 1.0]).unwrap();
        assert_eq!(tv_distance(&a, &b).unwrap(), 2.0);
        let c = Distribution::new(vec![0, 2], vec![0.0, 1.0]).unwrap();
        assert_eq!(tv_distance(&a, &c), Err(Error::MismatchedOutcomes));

        // term by term: |1/12−1/24| + |1/4−3/8| + |1/3−1/6| + |1/4−3/8| + |1/12−1/24|
        let oracle = q(1, 24) + q(1, 8) + q(1, 6) + q(1, 8) + q(1, 24);
        assert_eq!(oracle, q(1, 2));
        assert_eq!(weak_vs_plancherel(4).unwrap(), oracle);
        let m = CycleType::matching(4).unwrap().representative();
        let float = tv_distance(&weak_distribution(4, &m).unwrap(), &p).unwrap();
        assert!((float - 0.5).abs() < 1e-12);
    }

    #[test]
    fn weak_vs_plancherel_trivial_h_and_trend() {
        assert!(weak_vs_plancherel_for(6, &Permutation::identity(6)).unwrap().is_zero());
        let values: Vec<BigRational> = [4, 6, 8].iter().map(|&n| weak_vs_plancherel(n).unwrap()).collect();
        assert!(strictly_decreasing(&values), "{values:?}");
        assert!(matches!(weak_vs_plancherel(12), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn tv_experiment_examples() {
        let recs = tv_experiment(4, &part(&[2, 2]), FrameSpec::Yor, Sweep::All, 0).unwrap();
        assert_eq!(recs.len(), 3);
        assert!(recs.iter().all(|r| r.tv.abs() < 1e-12));
        for spec in [FrameSpec::Yor, FrameSpec::RandomOrthonormal, FrameSpec::Overcomplete2x] {
            let recs = tv_experiment(6, &Partition::row(6), spec, Sweep::All, 3).unwrap();
            assert_eq!(recs.len(), 15);
            assert!(recs.iter().all(|r| r.tv.abs() < 1e-12));
        }
        let recs = tv_experiment(6, &part(&[3, 2, 1]), FrameSpec::Overcomplete2x, Sweep::All, 1).unwrap();
        assert!(recs.iter().all(|r| (0.0..=2.0).contains(&r.tv)));
    }

    #[test]
    fn sampled_sweep_is_seeded_and_in_class() {
        let a = sweep_involutions(10, Sweep::Sample(200), 11).unwrap();
        let b = sweep_involutions(10, Sweep::Sample(200), 11).unwrap();
        assert_eq!(a, b);
        let target = CycleType::matching(10).unwrap();
        assert!(a.iter().all(|m| m.cycle_type() == target));
        assert!(matches!(sweep_involutions(10, Sweep::All, 0), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn mean_tv_decreases_yor() {
        let trend = mean_tv_trend(&[4, 6, 8], FrameSpec::Yor, 0).unwrap();
        let means: Vec<f64> = trend.iter().map(|t| t.1).collect();
        assert!(strictly_decreasing(&means), "{trend:?}");
    }

    #[test]
    fn mean_tv_decreases_overcomplete() {
        let trend = mean_tv_trend(&[4, 6, 8], FrameSpec::Overcomplete2x, 2024).unwrap();
        let means: Vec<f64> = trend.iter().map(|t| t.1).collect();
        assert!(strictly_decreasing(&means), "{trend:?}");
    }

    #[test]
    fn plancherel_examples() {
        let t = plancherel_table(4).unwrap();
        let probs: Vec<BigRational> = t.iter().map(|r| r.probability.clone()).collect();
        assert_eq!(probs, vec![q(1, 24), q(9, 24), q(4, 24), q(9, 24), q(1, 24)]);
        for n in 0..=PLANCHEREL_MAX_N {
            let total = plancherel_table(n).unwrap().into_iter().fold(BigRational::zero(), |a, r| a + r.probability);
            assert!(total.is_one());
        }
        let best = t.iter().map(|r| r.probability.clone()).max().unwrap();
        let argmax: Vec<_> = t.iter().filter(|r| r.probability == best).map(|r| r.lambda.clone()).collect();
        assert_eq!(argmax, vec![part(&[3, 1]), part(&[2, 1, 1])]);
        assert!(plancherel_tail(4, &BigUint::from(3u8)).unwrap().is_one());
        assert_eq!(plancherel_tail(4, &BigUint::from(1u8)).unwrap(), q(1, 12));
        assert!(plancherel_tail(10, &BigUint::from(768u32)).unwrap().is_one());
        assert!(matches!(plancherel_table(21), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn plancherel_sampler_frequencies() {
        let samples = sample_plancherel(4, 24_000, 5).unwrap();
        assert_eq!(samples, sample_plancherel(4, 24_000, 5).unwrap());
        for r in plancherel_table(4).unwrap() {
            let freq = samples.iter().filter(|l| **l == r.lambda).count() as f64 / 24_000.0;
            assert!((freq - r.probability.to_f64().unwrap()).abs() < 0.015);
        }
        assert_eq!(sample_plancherel(20, 3, 1).unwrap().len(), 3);
    }

    #[test]
    fn roichman_examples() {
        let rows = roichman_profile(4).unwrap();
        let row = |p: &[usize]| rows.iter().find(|r| r.lambda == part(p)).unwrap().clone();
        assert!(row(&[4]).normalized.is_one() && row(&[4]).max_ratio.is_one());
        assert_eq!(row(&[3, 1]).normalized, q(1, 3));
        assert!(row(&[2, 2]).normalized.is_one());
        assert_eq!(row(&[2, 2]).max_ratio, q(1, 2));
        assert_eq!(roichman_profile(12).unwrap().len(), 77);
        assert!(matches!(roichman_profile(5), Err(Error::MatchingClassUndefined(5))));
    }

    #[test]
    fn lambda_c_examples() {
        let r = lambda_c_report(8, Rational64::new(1, 8)).unwrap();
        assert_eq!(r.members, vec![part(&[8]), part(&[7, 1]), part(&[2, 1, 1, 1, 1, 1, 1]), part(&[1; 8])]);
        assert!(!part(&[4, 4]).in_lambda_c(Rational64::new(1, 8)).unwrap());
        assert_eq!(r.max_dimension, BigUint::from(7u8));
        assert!(r.dimension_bound_holds);
        let tiny = lambda_c_report(20, Rational64::new(1, 21)).unwrap();
        assert_eq!(tiny.members, vec![Partition::row(20), Partition::column(20)]);
        let masses: Vec<BigRational> =
            [4, 6, 8].iter().map(|&n| lambda_c_report(n, Rational64::new(1, 5)).unwrap().weak_mass.unwrap()).collect();
        assert!(strictly_decreasing(&masses), "{masses:?}");
        assert!(lambda_c_report(7, Rational64::new(1, 5)).unwrap().weak_mass.is_none());
    }

    #[test]
    fn lambda_c_counts() {
        for n in 1..=30 {
            for c in [Rational64::new(1, 8), Rational64::new(1, 5)] {
                let r = lambda_c_report(n, c).unwrap();
                assert!(BigUint::from(r.members.len()) <= r.count_bound_floor, "n={n} c={c}");
                if n >= 2 {
                    assert!(r.dimension_bound_holds, "n={n} c={c}");
                }
            }
        }
    }

    #[test]
    fn lambda_c_literal_count_bound_fails_when_cn_is_one() {
        for (n, c) in [(8, Rational64::new(1, 8)), (5, Rational64::new(1, 5))] {
            let r = lambda_c_report(n, c).unwrap();
            assert_eq!(r.members.len(), 4);
            assert_eq!(r.count_bound, BigUint::from(2u8));
        }
        let failures: Vec<(usize, Rational64)> = (1..=30)
            .flat_map(|n| [Rational64::new(1, 8), Rational64::new(1, 5)].map(|c| (n, c)))
            .filter(|&(n, c)| {
                let r = lambda_c_report(n, c).unwrap();
                BigUint::from(r.members.len()) > r.count_bound
            })
            .collect();
        assert!(failures.iter().all(|&(n, c)| c * Rational64::from_integer(n as i64) < Rational64::from_integer(2)));
    }

    #[test]
    fn framesum_examples() {
        let lam = part(&[3, 2, 1]);
        let d = 16;
        let frame = Frame::coordinate(&lam);
        let full = Projector::from_matrix(DMatrix::identity(d * d, d * d)).unwrap();
        assert!((framesum_check(&frame, &full).unwrap() - d as f64).abs() < 1e-12);
        let ts = TensorSquare::new(&build_rep(&lam)).unwrap();
        let triv = ts.isotypic_projector(&Partition::row(6)).unwrap();
        for seed in 0..4 {
            let f = Frame::overcomplete(&lam, seed).unwrap();
            assert!(framesum_check(&f, &triv).unwrap() <= 1.0 + FRAMESUM_TOL);
        }
        let results = framesum_trials(&part(&[4, 2]), 50, 17).unwrap();
        assert_eq!(results.len(), 50);
        assert!(results.iter().all(|(s, k)| *s <= *k as f64 + FRAMESUM_TOL));
    }

    #[test]
    fn sweep_parse() {
        assert_eq!(Sweep::parse("all"), Some(Sweep::All));
        assert_eq!(Sweep::parse("sample:200"), Some(Sweep::Sample(200)));
        assert_eq!(Sweep::parse("bogus"), None);
    }
}
