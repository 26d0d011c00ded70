//! First and second moments of `⟨b, m b⟩` and `‖Π_m b‖²` over the matching
//! class `M_n`, by character formulas and by exhaustive averaging.
//!
//! The Young orthogonal basis is real, so `b ⊗ b*` is realised as `b ⊗ b`
//! and `ρ ⊗ ρ*` as the Kronecker square of `ρ`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::character::{classes, normalized_character, tensor_square_constituents};
use crate::error::{Error, Result};
use crate::numeric::{dot, norm_sq, pairwise_sum};
use crate::partition::Partition;
use crate::perm::{matching_class, CycleType, Permutation};
use crate::rep::{rank_from_trace, Projector, RepBlock, TensorSquare, ISOTYPIC_MAX_N};

/// Largest `n` for exhaustive averaging over `M_n` (`|M_8| = 105`).
pub const BRUTE_FORCE_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub lambda: Partition,
    pub b: Vec<f64>,
    /// `Exp_m ⟨b, m b⟩`.
    pub expectation: f64,
    /// `Exp_m |⟨b, m b⟩|²`.
    pub second_moment: f64,
    /// `Exp_m ‖Π_m b‖²`.
    pub projection_mean: f64,
    /// `Var_m ‖Π_m b‖²`.
    pub variance_exact: f64,
    /// The bound obtained by dropping the negative term of the exact variance.
    pub variance_bound: f64,
    /// `rk Π_m / d^λ`.
    #[serde(serialize_with = "serialize_ratio")]
    pub rank_ratio: BigRational,
}

fn serialize_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn matching_type(n: usize) -> Result<CycleType> {
    CycleType::matching(n)
}

fn check_vector(lambda: &Partition, b: &[f64]) -> Result<()> {
    let d = lambda.dimension_u64() as usize;
    if b.len() != d {
        return Err(Error::SizeMismatch { expected: d, found: b.len() });
    }
    Ok(())
}

/// `χ^λ(M)/d^λ` for the matching class.
pub fn matching_ratio(lambda: &Partition) -> Result<BigRational> {
    normalized_character(lambda, &matching_type(lambda.n())?)
}

/// `Exp_m ⟨b, m b⟩ = (χ^λ(M)/d^λ) ‖b‖²`.
pub fn expected_inner(lambda: &Partition, b: &[f64]) -> Result<f64> {
    check_vector(lambda, b)?;
    let ratio = matching_ratio(lambda)?;
    Ok(ratio.to_f64().expect("finite") * norm_sq(b))
}

/// The tensor-square data needed for second moments of one irreducible.
pub struct MomentContext {
    rep: RepBlock,
    ratio: BigRational,
    /// `(μ, χ^μ(M)/d^μ, Π_μ)` for every constituent of `S^λ ⊗ S^λ`.
    constituents: Vec<(Partition, f64, Projector)>,
    tensor: TensorSquare,
}

impl MomentContext {
    pub fn new(rep: RepBlock) -> Result<Self> {
        let lambda = rep.lambda().clone();
        let n = lambda.n();
        let ratio = matching_ratio(&lambda)?;
        if n > ISOTYPIC_MAX_N {
            return Err(Error::TooLarge { what: "second-moment formulas", n, limit: ISOTYPIC_MAX_N });
        }
        let tensor = TensorSquare::new(&rep)?;
        let constituents = tensor_square_constituents(&lambda)
            .into_iter()
            .map(|(mu, _)| {
                let r = matching_ratio(&mu)?.to_f64().expect("finite");
                let p = tensor.isotypic_projector(&mu)?;
                Ok((mu, r, p))
            })
            .collect::<Result<_>>()?;
        Ok(MomentContext { rep, ratio, constituents, tensor })
    }

    pub fn rep(&self) -> &RepBlock {
        &self.rep
    }

    pub fn lambda(&self) -> &Partition {
        self.rep.lambda()
    }

    pub fn constituents(&self) -> &[(Partition, f64, Projector)] {
        &self.constituents
    }

    pub fn tensor(&self) -> &TensorSquare {
        &self.tensor
    }

    pub fn expected_inner(&self, b: &[f64]) -> Result<f64> {
        expected_inner(self.lambda(), b)
    }

    /// `Exp_m |⟨b, m b⟩|² = Σ_μ (χ^μ(M)/d^μ) ‖Π_μ(b ⊗ b)‖²`.
    pub fn second_moment(&self, b: &[f64]) -> Result<f64> {
        check_vector(self.lambda(), b)?;
        let bb = crate::rep::tensor_square_vector(b);
        let terms: Vec<f64> = self.constituents.iter().map(|(_, r, p)| r * p.norm_sq_of_image(&bb)).collect();
        Ok(pairwise_sum(&terms))
    }

    /// Expectation, exact variance and its bound for `‖Π_m b‖²`.
    pub fn variance_report(&self, b: &[f64]) -> Result<MomentReport> {
        let norm2 = norm_sq(b);
        let x = self.ratio.to_f64().expect("finite");
        let expectation = self.expected_inner(b)?;
        let s = self.second_moment(b)?;
        Ok(MomentReport {
            lambda: self.lambda().clone(),
            b: b.to_vec(),
            expectation,
            second_moment: s,
            projection_mean: 0.5 * norm2 * (1.0 + x),
            variance_exact: 0.25 * (s - x * x * norm2 * norm2),
            variance_bound: 0.25 * s,
            rank_ratio: (BigRational::from_integer(BigInt::from(1)) + &self.ratio) / BigInt::from(2),
        })
    }
}

/// `Exp_m ⟨v, m v⟩` in the reducible representation `ρ ⊗ ρ` via its isotypic
/// decomposition, for arbitrary `v` in the tensor square.
pub fn expected_inner_reducible(ctx: &MomentContext, v: &[f64]) -> Result<f64> {
    let d2 = ctx.tensor.dim();
    if v.len() != d2 {
        return Err(Error::SizeMismatch { expected: d2, found: v.len() });
    }
    let terms: Vec<f64> = ctx.constituents.iter().map(|(_, r, p)| r * p.norm_sq_of_image(v)).collect();
    Ok(pairwise_sum(&terms))
}

/// The same expectation by averaging `⟨v, (ρ ⊗ ρ)(m) v⟩` over the class sum of `M_n`.
pub fn expected_inner_reducible_brute(ctx: &MomentContext, v: &[f64]) -> Result<f64> {
    let n = ctx.lambda().n();
    let mt = matching_type(n)?;
    let idx = classes(n).iter().position(|c| *c == mt).expect("matching class exists");
    let sum: &DMatrix<f64> = ctx.tensor.class_sum(idx);
    let size = matching_class(n)?.len() as f64;
    let vv = nalgebra::DVector::from_column_slice(v);
    Ok(vv.dot(&(sum * &vv)) / size)
}

/// Exhaustive average over every `m ∈ M_n` using explicit representation matrices.
pub fn brute_force_moments(rep: &RepBlock, b: &[f64]) -> Result<MomentReport> {
    let lambda = rep.lambda().clone();
    let n = lambda.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge { what: "exhaustive averaging over M_n", n, limit: BRUTE_FORCE_MAX_N });
    }
    check_vector(&lambda, b)?;
    let class = matching_class(n)?;
    let norm2 = norm_sq(b);
    let inner: Vec<f64> =
        class.par_iter().map(|m| rep.apply(m, b).map(|mb| dot(b, &mb))).collect::<Result<Vec<_>>>()?;
    let count = inner.len() as f64;
    let squares: Vec<f64> = inner.iter().map(|x| x * x).collect();
    let projections: Vec<f64> = inner.iter().map(|x| 0.5 * (norm2 + x)).collect();
    let mean_proj = pairwise_sum(&projections) / count;
    let deviations: Vec<f64> = projections.iter().map(|p| (p - mean_proj).powi(2)).collect();
    let second = pairwise_sum(&squares) / count;
    let d = rep.dim();
    let rank = rank_from_trace(rep.involution_projector(&class[0])?.matrix().trace())?;
    Ok(MomentReport {
        lambda,
        b: b.to_vec(),
        expectation: pairwise_sum(&inner) / count,
        second_moment: second,
        projection_mean: mean_proj,
        variance_exact: pairwise_sum(&deviations) / count,
        variance_bound: 0.25 * second,
        rank_ratio: BigRational::new(BigInt::from(rank), BigInt::from(d)),
    })
}

/// `Exp_m ‖Π_m b‖²` by brute force for a fixed involution list (used for basis averages).
pub fn projection_norms_over_class(rep: &RepBlock, b: &[f64], class: &[Permutation]) -> Result<Vec<f64>> {
    let norm2 = norm_sq(b);
    class.iter().map(|m| Ok(0.5 * (norm2 + dot(b, &rep.apply(m, b)?)))).collect()
}

/// `trials` seeded unit vectors in `R^d`.
pub fn trial_vectors(d: usize, trials: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| crate::numeric::random_unit_vector(d, &mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::random_unit_vector;
    use crate::partition::enumerate_partitions;
    use crate::rep::build_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn expected_inner_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random_unit_vector(2, &mut rng);
        assert!((expected_inner(&part(&[2, 2]), &b).unwrap() - 1.0).abs() < 1e-12);
        let b = random_unit_vector(3, &mut rng);
        let e = expected_inner(&part(&[3, 1]), &b).unwrap();
        assert!((e + 1.0 / 3.0).abs() < 1e-12);
        let brute = brute_force_moments(&build_rep(&part(&[3, 1])), &b).unwrap();
        assert!((brute.expectation - e).abs() < 1e-12);
        assert!((expected_inner(&Partition::row(4), &[1.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(expected_inner(&Partition::row(5), &[1.0]), Err(Error::MatchingClassUndefined(5))));
    }

    #[test]
    fn second_moment_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ctx = MomentContext::new(build_rep(&part(&[2, 2]))).unwrap();
        let consts: Vec<_> = ctx.constituents().iter().map(|(mu, _, _)| mu.clone()).collect();
        assert_eq!(consts, vec![part(&[4]), part(&[2, 2]), part(&[1, 1, 1, 1])]);
        for _ in 0..5 {
            let b = random_unit_vector(2, &mut rng);
            assert!((ctx.second_moment(&b).unwrap() - 1.0).abs() < 1e-12);
        }
        let ctx = MomentContext::new(build_rep(&Partition::row(4))).unwrap();
        assert!((ctx.second_moment(&[1.0]).unwrap() - 1.0).abs() < 1e-12);

        let rep = build_rep(&part(&[3, 1]));
        let ctx = MomentContext::new(rep.clone()).unwrap();
        let class = matching_class(4).unwrap();
        for _ in 0..20 {
            let b = random_unit_vector(3, &mut rng);
            let oracle: f64 =
                class.iter().map(|m| dot(&b, &rep.apply(m, &b).unwrap()).powi(2)).sum::<f64>() / 3.0;
            assert!((ctx.second_moment(&b).unwrap() - oracle).abs() < 1e-10);
        }
    }

    #[test]
    fn variance_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ctx = MomentContext::new(build_rep(&part(&[2, 2]))).unwrap();
        let b = random_unit_vector(2, &mut rng);
        let r = ctx.variance_report(&b).unwrap();
        assert!(r.variance_exact.abs() < 1e-12);
        let ctx = MomentContext::new(build_rep(&Partition::row(6))).unwrap();
        assert!(ctx.variance_report(&[1.0]).unwrap().variance_exact.abs() < 1e-12);

        let rep = build_rep(&part(&[4, 2]));
        let ctx = MomentContext::new(rep.clone()).unwrap();
        let b = random_unit_vector(rep.dim(), &mut rng);
        let formula = ctx.variance_report(&b).unwrap();
        let brute = brute_force_moments(&rep, &b).unwrap();
        assert!((formula.variance_exact - brute.variance_exact).abs() < 1e-9);
        assert!(formula.variance_exact <= formula.variance_bound + 1e-9);
        assert!((formula.projection_mean - brute.projection_mean).abs() < 1e-9);
        assert_eq!(formula.rank_ratio, brute.rank_ratio);
    }

    #[test]
    fn brute_force_agreement_s4() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for lam in enumerate_partitions(4) {
            let rep = build_rep(&lam);
            let ctx = MomentContext::new(rep.clone()).unwrap();
            for _ in 0..10 {
                let b = random_unit_vector(rep.dim(), &mut rng);
                let brute = brute_force_moments(&rep, &b).unwrap();
                assert!((brute.expectation - ctx.expected_inner(&b).unwrap()).abs() < 1e-10);
                assert!((brute.second_moment - ctx.second_moment(&b).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rank_ratio_integral_s6() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for lam in enumerate_partitions(6) {
            let rep = build_rep(&lam);
            let b = random_unit_vector(rep.dim(), &mut rng);
            let r = brute_force_moments(&rep, &b).unwrap();
            assert!((r.rank_ratio.clone() * BigInt::from(rep.dim())).is_integer());
            assert_eq!(r.rank_ratio, ctx_ratio(&lam));
        }
    }

    fn ctx_ratio(lam: &Partition) -> BigRational {
        (BigRational::from_integer(1.into()) + matching_ratio(lam).unwrap()) / BigInt::from(2)
    }

    #[test]
    fn basis_average_equals_rank_ratio() {
        for lam in enumerate_partitions(6) {
            let rep = build_rep(&lam);
            let class = matching_class(6).unwrap();
            let mut total = 0.0;
            for j in 0..rep.dim() {
                let mut e = vec![0.0; rep.dim()];
                e[j] = 1.0;
                let norms = projection_norms_over_class(&rep, &e, &class).unwrap();
                total += norms.iter().sum::<f64>() / norms.len() as f64;
            }
            let ratio = ctx_ratio(&lam).to_f64().unwrap();
            assert!((total / rep.dim() as f64 - ratio).abs() < 1e-9);
        }
    }

    #[test]
    fn reducible_case_on_tensor_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for lam in enumerate_partitions(4) {
            let ctx = MomentContext::new(build_rep(&lam)).unwrap();
            let v = random_unit_vector(ctx.tensor().dim(), &mut rng);
            let a = expected_inner_reducible(&ctx, &v).unwrap();
            let b = expected_inner_reducible_brute(&ctx, &v).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(MomentContext::new(build_rep(&part(&[7, 1]))), Err(Error::TooLarge { .. })));
        assert!(matches!(
            brute_force_moments(&build_rep(&part(&[9, 1])), &[0.0; 9]),
            Err(Error::TooLarge { .. })
        ));
    }
}
