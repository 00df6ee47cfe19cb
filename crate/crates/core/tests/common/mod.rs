#![allow(dead_code)]

use eja_core::{Algebra, FactorSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The six algebras every suite runs on.
pub fn benchmark() -> Vec<Algebra> {
    let specs = vec![
        vec![FactorSpec::RealSym { n: 3 }],
        vec![FactorSpec::ComplexHerm { n: 2 }],
        vec![FactorSpec::QuatHerm { n: 2 }],
        vec![FactorSpec::Spin { d: 4 }],
        vec![FactorSpec::Albert],
        vec![FactorSpec::RealSym { n: 2 }, FactorSpec::ComplexHerm { n: 2 }, FactorSpec::Spin { d: 3 }],
    ];
    specs.into_iter().map(|s| Algebra::new(s).unwrap()).collect()
}

/// Benchmark algebras without Albert, for the slower properties.
pub fn small() -> Vec<Algebra> {
    benchmark().into_iter().filter(|a| a.dim() != 27).collect()
}

pub fn albert() -> Algebra {
    Algebra::single(FactorSpec::Albert).unwrap()
}
