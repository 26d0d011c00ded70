use hsplab::cache::rep_for;
use hsplab::character::character;
use hsplab::experiments::{framesum_check, random_subspace, tv_distance};
use hsplab::moments::brute_force_moments;
use hsplab::moments::MomentContext;
use hsplab::partition::{enumerate_partitions, Partition};
use hsplab::perm::{matching_class, Permutation};
use hsplab::rep::{ALGEBRAIC_TOL, TRACE_TOL};
use hsplab::sampling::{
    conditional_distribution, natural_distribution, weak_distribution_exact, Frame, FrameSpec,
};
use hsplab::wreath::{wreath_multiply, WreathElement};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn sized_perms(max: usize, k: usize) -> impl Strategy<Value = Vec<Permutation>> {
    (1..=max).prop_flat_map(move |n| proptest::collection::vec(perm(n), k))
}

fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    let all = enumerate_partitions(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn wreath(n: usize) -> impl Strategy<Value = WreathElement> {
    (perm(n), perm(n), any::<bool>()).prop_map(|(a, b, t)| WreathElement::new(a, b, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_laws(ps in sized_perms(9, 3)) {
        let (p, q, r) = (&ps[0], &ps[1], &ps[2]);
        let left = p.compose(q).unwrap().compose(r).unwrap();
        let right = p.compose(&q.compose(r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert_eq!(p.compose(q).unwrap().sign(), p.sign() * q.sign());
        prop_assert_eq!(p.conjugate_by(q).unwrap().cycle_type(), p.cycle_type());
    }

    #[test]
    fn cycle_notation_round_trips(ps in sized_perms(10, 1)) {
        let p = &ps[0];
        prop_assert_eq!(&Permutation::parse_cycles(p.n(), &p.cycle_notation()).unwrap(), p);
    }

    #[test]
    fn yor_is_an_orthogonal_homomorphism(
        (lambda, g, h) in (2usize..=6).prop_flat_map(|n| (partition_of(n), perm(n), perm(n)))
    ) {
        let rep = rep_for(&lambda).unwrap();
        let (rg, rh) = (rep.rep_matrix(&g).unwrap(), rep.rep_matrix(&h).unwrap());
        let gh = rep.rep_matrix(&g.compose(&h).unwrap()).unwrap();
        prop_assert!((&rg * &rh - gh).norm() <= ALGEBRAIC_TOL);
        let id = nalgebra::DMatrix::<f64>::identity(rep.dim(), rep.dim());
        prop_assert!((rg.transpose() * &rg - id).norm() <= ALGEBRAIC_TOL);
        let chi = character(&lambda, &g.cycle_type()).unwrap() as f64;
        prop_assert!((rg.trace() - chi).abs() <= TRACE_TOL);
    }

    #[test]
    fn weak_law_is_a_distribution_on_every_matching(
        (n, idx) in prop_oneof![Just(2usize), Just(4), Just(6)].prop_flat_map(|n| (Just(n), 0usize..15))
    ) {
        let class = matching_class(n).unwrap();
        let m = &class[idx % class.len()];
        let law = weak_distribution_exact(n, m).unwrap();
        let total = law.iter().fold(BigRational::zero(), |a, (_, p)| a + p);
        prop_assert!(total.is_one());
        prop_assert!(law.iter().all(|(_, p)| *p >= BigRational::zero()));
        // the law is a class function of m
        prop_assert_eq!(law, weak_distribution_exact(n, &class[0]).unwrap());
    }

    #[test]
    fn strong_law_and_tv_are_well_formed(
        (lambda, seed, spec) in (4usize..=6)
            .prop_filter("even", |n| n % 2 == 0)
            .prop_flat_map(|n| (partition_of(n), any::<u64>(), prop_oneof![
                Just(FrameSpec::Yor), Just(FrameSpec::RandomOrthonormal), Just(FrameSpec::Overcomplete2x)
            ]))
    ) {
        let rep = rep_for(&lambda).unwrap();
        let m = matching_class(lambda.n()).unwrap()[0].clone();
        let frame = Frame::from_spec(&lambda, spec, seed).unwrap();
        match conditional_distribution(&rep, &frame, &m) {
            Ok(law) => {
                let total: f64 = law.probabilities().iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-9);
                let tv = tv_distance(&law, &natural_distribution(&frame).unwrap()).unwrap();
                prop_assert!((0.0..=2.0 + 1e-12).contains(&tv));
            }
            Err(hsplab::Error::ZeroRank) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn moment_formulas_agree_with_averaging(
        (lambda, b) in partition_of(4).prop_flat_map(|l| {
            let d = l.dimension_u64() as usize;
            (Just(l), proptest::collection::vec(-1.0f64..1.0, d))
        })
    ) {
        let norm: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let b: Vec<f64> = b.iter().map(|x| x / norm).collect();
        let ctx = MomentContext::new(rep_for(&lambda).unwrap()).unwrap();
        let formula = ctx.variance_report(&b).unwrap();
        let brute = brute_force_moments(ctx.rep(), &b).unwrap();
        prop_assert!((formula.expectation - brute.expectation).abs() < 1e-9);
        prop_assert!((formula.second_moment - brute.second_moment).abs() < 1e-9);
        prop_assert!(formula.variance_exact <= formula.variance_bound + 1e-12);
    }

    #[test]
    fn frame_sum_never_exceeds_subspace_dimension(
        (lambda, seed, spec) in partition_of(6).prop_flat_map(|l| (Just(l), any::<u64>(), prop_oneof![
            Just(FrameSpec::Yor), Just(FrameSpec::RandomOrthonormal), Just(FrameSpec::Overcomplete2x)
        ]))
    ) {
        let frame = Frame::from_spec(&lambda, spec, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = frame.vectors()[0].len();
        let l = random_subspace(d * d, &mut rng).unwrap();
        let sum = framesum_check(&frame, &l).unwrap();
        prop_assert!(sum <= l.rank() as f64 + 1e-8);
    }

    #[test]
    fn wreath_multiplication_is_a_faithful_action(
        (x, y, z) in (1usize..=4).prop_flat_map(|n| (wreath(n), wreath(n), wreath(n)))
    ) {
        let xy = wreath_multiply(&x, &y).unwrap();
        prop_assert_eq!(
            wreath_multiply(&xy, &z).unwrap(),
            wreath_multiply(&x, &wreath_multiply(&y, &z).unwrap()).unwrap()
        );
        prop_assert!(wreath_multiply(&x, &x.inverse()).unwrap().is_identity());
        prop_assert_eq!(xy.to_permutation(), x.to_permutation().compose(&y.to_permutation()).unwrap());
    }
}
