mod common;

use eja_core::random;
use eja_core::spectral::{self, SpectralFn};
use eja_core::{Algebra, FactorSpec, LinOp};
use proptest::prelude::*;

fn commutator(a: &LinOp, b: &LinOp) -> LinOp {
    a.compose(b).unwrap().sub(&b.compose(a).unwrap()).unwrap()
}

fn alg_index() -> impl Strategy<Value = usize> {
    0usize..6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jordan_identity(i in alg_index(), seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let a = random::gaussian(alg, &mut rng);
        let b = random::gaussian(alg, &mut rng);
        let aa = a.square();
        let lhs = &(&a * &b) * &aa;
        let rhs = &a * &(&b * &aa);
        let scale = 1.0 + a.norm2().powi(3) * b.norm2();
        prop_assert!(lhs.dist(&rhs) <= 1e-8 * scale);
    }

    #[test]
    fn power_associativity(i in alg_index(), seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let a = random::gaussian(alg, &mut common::rng(seed)).scale(0.5);
        for n in 1..8u32 {
            for m in 1..=(8 - n) {
                let r = (&a.pow(n) * &a.pow(m)).dist(&a.pow(n + m));
                prop_assert!(r <= 1e-8 * (1.0 + a.norm2().powi((n + m) as i32)));
            }
        }
    }

    #[test]
    fn commutator_identities(i in alg_index(), seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let a = random::gaussian(alg, &mut rng);
        let b = random::gaussian(alg, &mut rng);
        let c = random::gaussian(alg, &mut rng);
        let scale = (1.0 + a.norm2()).powi(2) * (1.0 + b.norm2()) * (1.0 + c.norm2());

        let jordan = commutator(&a.l_op(), &a.square().l_op()).op_norm();
        prop_assert!(jordan <= 1e-8 * scale);

        let lhs = commutator(&b.l_op(), &a.square().l_op());
        let rhs = commutator(&(&a * &b).l_op(), &a.l_op()).scale(2.0);
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-8 * scale);

        let cyclic = commutator(&a.l_op(), &(&b * &c).l_op())
            .add(&commutator(&b.l_op(), &(&c * &a).l_op())).unwrap()
            .add(&commutator(&c.l_op(), &(&a * &b).l_op())).unwrap();
        prop_assert!(cyclic.op_norm() <= 1e-8 * scale);
    }

    #[test]
    fn fundamental_equality(i in alg_index(), seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let a = random::gaussian(alg, &mut rng);
        let b = random::gaussian(alg, &mut rng);
        let qa = a.q_op();
        let lhs = qa.apply(&b).unwrap().q_op();
        let rhs = qa.compose(&b.q_op()).unwrap().compose(&qa).unwrap();
        let scale = 1.0 + a.norm2().powi(4) * b.norm2().powi(2);
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-7 * scale);
    }

    #[test]
    fn quadratic_rep_of_inverse(i in alg_index(), seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let a = random::positive_in_range(alg, &mut common::rng(seed), 0.3, 3.0).unwrap();
        let inv = spectral::apply_function(&a, SpectralFn::PseudoInverse).unwrap();
        let r = a.q_op().compose(&inv.q_op()).unwrap().distance(&LinOp::identity(alg)).unwrap();
        prop_assert!(r <= 1e-7);
    }

    #[test]
    fn quadratic_rep_is_positive(i in alg_index(), seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let a = random::gaussian(alg, &mut rng);
        let b = random::gaussian(alg, &mut rng);
        let y = a.q_op().apply(&b.square()).unwrap();
        prop_assert!(spectral::min_eigenvalue(&y).unwrap() >= -1e-8 * (1.0 + y.norm2()));
    }

    #[test]
    fn self_duality(i in alg_index(), seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        let a = random::positive(alg, &mut rng);
        let b = random::positive(alg, &mut rng);
        prop_assert!(a.inner(&b).unwrap() >= -1e-10 * (1.0 + a.norm2() * b.norm2()));
    }

    #[test]
    fn zero_products_agree(i in alg_index(), seed in any::<u64>()) {
        let alg = &common::benchmark()[i];
        let mut rng = common::rng(seed);
        // orthogonal positives supported on complementary idempotents
        let p = random::proper_idempotent(alg, &mut rng).unwrap();
        let x = random::positive(alg, &mut rng);
        let y = random::positive(alg, &mut rng);
        let a = p.q_op().apply(&x).unwrap();
        let a = a.scale(1.0 / a.norm2());
        let b = p.complement().q_op().apply(&y).unwrap();
        let tol = 1e-8 * (1.0 + a.norm2()) * (1.0 + b.norm2());
        prop_assert!(a.q_op().apply(&b).unwrap().norm2() <= tol);
        prop_assert!(b.q_op().apply(&a).unwrap().norm2() <= tol);
        prop_assert!((&a * &b).norm2() <= tol);

        // a perturbation off the orthogonal pair breaks all three at once:
        // a*e = a/10, Q_a e = a²/10 and Q_e a = a/100
        let e = &b + &p.scale(0.1);
        let big = 1e-4 * (1.0 + e.norm2());
        let qa = a.q_op().apply(&e).unwrap().norm2() > big;
        let qb = e.q_op().apply(&a).unwrap().norm2() > big;
        let ab = (&a * &e).norm2() > big;
        prop_assert!(qa && qb && ab);
    }
}

#[test]
fn spin_positivity_matches_the_cone_inequality() {
    let alg = Algebra::single(FactorSpec::Spin { d: 4 }).unwrap();
    let mut rng = common::rng(11);
    let mut disagreements = 0;
    for _ in 0..1000 {
        let x = random::gaussian(&alg, &mut rng);
        let c = x.coords();
        let vec_norm = c.rows(0, 4).norm();
        let t = c[4];
        if (t - vec_norm).abs() <= 1e-9 {
            continue;
        }
        if spectral::is_positive(&x, 1e-12) != (t >= vec_norm) {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn luders_map_on_real_symmetric_matrices() {
    let alg = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
    let a = alg.diagonal(&[1.0, 2.0]).unwrap();
    let b = alg.from_real_matrix(&nalgebra::DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
    let want = alg.from_real_matrix(&nalgebra::DMatrix::from_row_slice(2, 2, &[0.0, 2.0, 2.0, 0.0])).unwrap();
    assert!(a.q_op().apply(&b).unwrap().dist(&want) < 1e-14);
}

#[test]
fn peirce_eigenvalues_of_an_idempotent() {
    let alg = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
    let mut rng = common::rng(3);
    let p = random::proper_idempotent(&alg, &mut rng).unwrap();
    let eig = p.l_op().matrix().clone().symmetric_eigenvalues();
    for l in eig.iter() {
        assert!([0.0, 0.5, 1.0].iter().any(|v| (l - v).abs() < 1e-12), "eigenvalue {l}");
    }
}
