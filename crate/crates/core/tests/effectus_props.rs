mod common;

use eja_core::effectus::dagger::{check_and_fundamental_identity, check_and_square_root, check_filter_preserves_idempotent, corner_idempotent};
use eja_core::effectus::diamond::default_idempotent_samples;
use eja_core::effectus::*;
use eja_core::maps::is_unital_order_iso;
use eja_core::random;
use eja_core::spectral::{self, SpectralFn};
use eja_core::{Algebra, FactorSpec, LinOp, PositiveMap};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

/// Least-squares solution of `a x = b` for `a` of full column rank, by
/// Householder QR.
fn solve_full_rank(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let qr = a.clone().qr();
    qr.r().solve_upper_triangular(&(qr.q().transpose() * b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn corner_universal_property(i in 0usize..6, seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let q = random::effect(alg, &mut rng).unwrap();
        let fl = spectral::floor_of_effect(&q).unwrap();
        let g = PositiveMap::quadratic(&random::gaussian(alg, &mut rng)).compose(&PositiveMap::quadratic(&fl)).unwrap();
        let pi = standard_corner(alg, &q).unwrap();
        let bar = mediate_corner(&g, &q).unwrap();
        let scale = 1.0 + g.op().op_norm();
        prop_assert!(bar.compose(&pi).unwrap().distance(&g).unwrap() <= 1e-7 * scale);
        // any solution of h ∘ π = g agrees with the mediator on the corner
        if pi.codomain().dim() > 0 {
            let other = solve_full_rank(&pi.matrix().transpose(), &g.matrix().transpose()).unwrap().transpose();
            prop_assert!((bar.matrix() - other).norm() <= 1e-7 * scale);
        }
    }

    #[test]
    fn filter_universal_property(i in 0usize..6, seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let q = random::effect(alg, &mut rng).unwrap();
        let b = random::effect(alg, &mut rng).unwrap();
        // f(1) = Q_√q(b²) ≤ q
        let root = spectral::apply_function(&q, SpectralFn::Sqrt).unwrap();
        let f = PositiveMap::quadratic(&root).compose(&PositiveMap::quadratic(&b)).unwrap();
        let xi = standard_filter(alg, &q).unwrap();
        let bar = mediate_filter(&f, &q).unwrap();
        prop_assert!(xi.compose(&bar).unwrap().distance(&f).unwrap() <= 1e-7);
        if xi.domain().dim() > 0 {
            let other = solve_full_rank(xi.matrix(), f.matrix()).unwrap();
            prop_assert!((bar.matrix() - other).norm() <= 1e-7);
        }
    }

    #[test]
    fn polar_claims(i in 0usize..6, seed in any::<u64>(), singular in any::<bool>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let (p, q) = if singular {
            (random::rank_deficient_positive(alg, &mut rng).unwrap(), random::positive(alg, &mut rng))
        } else {
            (random::positive(alg, &mut rng), random::positive(alg, &mut rng))
        };
        let d = polar_decompose(&p, &q).unwrap();
        prop_assert!(d.claims.max_scaled() <= 1e-7, "{:?}", d.claims);
    }

    #[test]
    fn exchange_rewrites_corner_after_filter(i in 0usize..6, seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let p = random::idempotent(alg, &mut rng).unwrap();
        let q = random::effect(alg, &mut rng).unwrap();
        let w = exchange(alg, &p, &q).unwrap();
        prop_assert!(w.verify(20, seed).unwrap().passes(1e-7));
        prop_assert!(w.iso_isometry_residual().unwrap() <= 1e-7);
        let pq = sequential_product(&p, &q).unwrap();
        prop_assert!(w.filter_effect().to_root().dist(&pq) <= 1e-8);
        let qp = sequential_product(&q, &p).unwrap();
        prop_assert!(w.corner_idempotent().to_root().dist(&spectral::ceiling(&qp).unwrap()) <= 1e-8);
    }

    #[test]
    fn pure_maps_compose_and_dualize(i in 0usize..6, seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let w1 = PurityWitness::standard(alg, &random::effect(alg, &mut rng).unwrap()).unwrap();
        let w2 = PurityWitness::standard(alg, &random::effect(alg, &mut rng).unwrap()).unwrap();
        let c = compose_pure(&w1, &w2).unwrap();
        prop_assert!(c.verify(20, seed).unwrap().passes(1e-7));
        let a = adjoint_witness(&c).unwrap();
        prop_assert!(a.verify(20, seed).unwrap().passes(1e-7));
        prop_assert!(a.composed().distance(&c.composed().adjoint()).unwrap() <= 1e-7);
    }

    #[test]
    fn quadratic_reps_are_diamond_self_adjoint(i in 0usize..6, seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let samples = default_idempotent_samples(alg, &mut rng, 5).unwrap();
        let a = random::gaussian(alg, &mut rng);
        let f = PositiveMap::quadratic(&a);
        prop_assert!(is_diamond_self_adjoint(&f, &samples).unwrap());
        prop_assert!(galois_violation(&f, &samples, 1e-6).unwrap().is_none());
        let b = random::positive(alg, &mut rng);
        let root = PositiveMap::quadratic(&spectral::apply_function(&b, SpectralFn::Sqrt).unwrap());
        prop_assert!(is_diamond_positive_witnessed(&PositiveMap::quadratic(&b), &root, &samples, 1e-7 * (1.0 + b.norm2().powi(2))).unwrap());
    }

    #[test]
    fn normal_form_of_pure_diamond_positive_maps(i in 0usize..6, seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let b = random::positive(alg, &mut common::rng(seed));
        let r = check_pure_diamond_positive_normal_form(&b).unwrap();
        prop_assert!(r <= 1e-7 * (1.0 + b.q_op().op_norm()));
    }

    #[test]
    fn dagger_effectus_conditions(i in 0usize..6, seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let p = random::effect(alg, &mut rng).unwrap();
        let q = random::effect(alg, &mut rng).unwrap();
        let (square, agree) = check_and_square_root(&p).unwrap();
        prop_assert!(square <= 1e-7 && agree <= 1e-7);
        prop_assert!(check_and_fundamental_identity(&p, &q).unwrap() <= 1e-7);
        let e = random::idempotent(alg, &mut rng).unwrap();
        let sub = corner_idempotent(&e, &mut rng).unwrap();
        prop_assert!(check_filter_preserves_idempotent(&e, &sub).unwrap() <= 1e-7);
    }
}

/// Positive maps on ℝ³ from several constructions.
fn cube_maps(seed: u64) -> Vec<PositiveMap> {
    let alg = Algebra::real_diagonal(3).unwrap();
    let mut rng = common::rng(seed);
    let mut out = Vec::new();
    for k in 0..20 {
        let m = match k % 4 {
            0 => DMatrix::from_fn(3, 3, |_, _| if rng.random::<f64>() < 0.5 { 0.0 } else { rng.random::<f64>() }),
            1 => {
                let perm = [0usize, 1, 2].map(|_| rng.random_range(0..3));
                DMatrix::from_fn(3, 3, |r, c| if perm[c] == r { 1.0 } else { 0.0 })
            }
            2 => random::positive(&alg, &mut rng).q_op().matrix().clone(),
            _ => DMatrix::from_fn(3, 3, |r, c| if r == c && rng.random::<bool>() { rng.random::<f64>() } else { 0.0 }),
        };
        out.push(PositiveMap::sampled(LinOp::new(alg.clone(), alg.clone(), m).unwrap(), 30, 1e-9, k).unwrap());
    }
    out
}

#[test]
fn galois_connection_on_the_full_cube() {
    let alg = Algebra::real_diagonal(3).unwrap();
    let lattice = idempotent_lattice(&alg).unwrap();
    assert_eq!(lattice.len(), 8);
    for f in cube_maps(21) {
        assert!(galois_violation(&f, &lattice, 1e-9).unwrap().is_none());
        // the lower adjoint is the image of Q_q ∘ f
        for q in &lattice {
            let qf = PositiveMap::quadratic(q).compose(&f).unwrap();
            assert!(diamond_lower(&f, q).unwrap().dist(&eja_core::maps::image(&qf).unwrap()) <= 1e-12);
        }
    }
}

#[test]
fn asymmetric_map_is_not_diamond_self_adjoint() {
    let alg = Algebra::real_diagonal(2).unwrap();
    let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let f = PositiveMap::sampled(LinOp::new(alg.clone(), alg.clone(), m).unwrap(), 20, 1e-9, 0).unwrap();
    let lattice = idempotent_lattice(&alg).unwrap();
    assert!(!is_diamond_self_adjoint(&f, &lattice).unwrap());
    let sym = PositiveMap::sampled(LinOp::new(alg.clone(), alg.clone(), DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 0.0])).unwrap(), 20, 1e-9, 0).unwrap();
    assert!(is_diamond_self_adjoint(&sym, &lattice).unwrap());
}

#[test]
fn standard_pieces_examples() {
    let alg = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
    let one = alg.unit();
    assert!(standard_corner(&alg, &one).unwrap().op().distance(&LinOp::identity(&alg)).unwrap() < 1e-12);
    assert!(standard_filter(&alg, &one).unwrap().op().distance(&LinOp::identity(&alg)).unwrap() < 1e-12);
    let q = alg.diagonal(&[1.0, 0.5]).unwrap();
    let pi = standard_corner(&alg, &q).unwrap();
    assert_eq!(pi.codomain().dim(), 1);
    let x = alg.from_real_matrix(&DMatrix::from_row_slice(2, 2, &[3.0, 1.0, 1.0, -2.0])).unwrap();
    assert!((pi.apply(&x).unwrap().coords()[0].abs() - 3.0).abs() < 1e-12);
    let sym3 = Algebra::single(FactorSpec::RealSym { n: 3 }).unwrap();
    assert_eq!(peirce_corner(&sym3, &sym3.diagonal(&[1.0, 1.0, 0.0]).unwrap()).unwrap().dim(), 3);
}

#[test]
fn filter_after_corner_is_quadratic_root() {
    for alg in common::benchmark() {
        let mut rng = common::rng(2);
        let q = random::effect(&alg, &mut rng).unwrap();
        let top = spectral::ceiling(&q).unwrap();
        let lhs = standard_filter(&alg, &q).unwrap().compose(&standard_corner(&alg, &top).unwrap()).unwrap();
        let rhs = spectral::apply_function(&q, SpectralFn::Sqrt).unwrap().q_op();
        assert!(lhs.op().distance(&rhs).unwrap() <= 1e-9);
    }
}

#[test]
fn exchange_of_commuting_diagonals_has_identity_middle() {
    let alg = Algebra::real_diagonal(3).unwrap();
    let p = alg.diagonal(&[1.0, 1.0, 0.0]).unwrap();
    let q = alg.diagonal(&[0.25, 0.0, 0.5]).unwrap();
    let w = exchange(&alg, &p, &q).unwrap();
    assert_eq!(w.iso().domain().dim(), 1);
    assert!(w.iso().op().distance(&LinOp::identity(w.iso().domain())).unwrap() < 1e-12);
    assert!(w.reconstruction_residual().unwrap() < 1e-12);
    assert!(is_unital_order_iso(w.iso(), 10));
}

#[test]
fn polar_of_commuting_diagonals_is_a_projection() {
    let alg = Algebra::real_diagonal(3).unwrap();
    let p = alg.diagonal(&[2.0, 0.0, 1.0]).unwrap();
    let q = alg.diagonal(&[0.5, 3.0, 0.0]).unwrap();
    let d = polar_decompose(&p, &q).unwrap();
    let support = alg.diagonal(&[1.0, 0.0, 0.0]).unwrap();
    assert!(d.phi.distance(&support.q_op()).unwrap() < 1e-12);
    let one = polar_decompose(&alg.unit(), &alg.unit()).unwrap();
    assert!(one.phi.distance(&LinOp::identity(&alg)).unwrap() < 1e-14);
    assert!(one.claims.max() < 1e-14);
}

#[test]
fn sequential_product_examples() {
    let alg = Algebra::real_diagonal(2).unwrap();
    let a = alg.diagonal(&[0.5, 0.2]).unwrap();
    let b = alg.diagonal(&[0.4, 0.9]).unwrap();
    assert!(sequential_product(&a, &b).unwrap().dist(&alg.diagonal(&[0.2, 0.18]).unwrap()) < 1e-14);
    assert!(sequential_product(&alg.unit(), &b).unwrap().dist(&b) < 1e-14);
    assert!(sequential_product(&a, &alg.unit()).unwrap().dist(&a) < 1e-14);
    assert!(sequential_product(&alg.diagonal(&[2.0, 0.0]).unwrap(), &b).is_err());
}
