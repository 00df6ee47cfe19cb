//! The subcommands of `eja`, as functions from parsed inputs to JSON values.

use eja_core::effectus::diamond::default_idempotent_samples;
use eja_core::effectus::{diamond, diamond_lower, exchange as exchange_witness, idempotent_lattice, polar_decompose, PolarClaims, WitnessDescriptor};
use eja_core::spectral::{self, refine_atomic, SpectralResiduals};
use eja_core::{Algebra, AlgebraDescriptor, Element, PositiveMap, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::laws::{run_suite, SuiteSelection};
use crate::report::LawsOutput;

/// `eja laws`: one report per algebra.
pub fn laws(algebras: &[Algebra], suite: SuiteSelection, seed: u64, trials: usize, tol: f64) -> LawsOutput {
    let reports: Vec<_> = algebras.iter().map(|a| run_suite(a, suite, seed, trials, tol)).collect();
    LawsOutput { pass: reports.iter().all(|r| r.pass), reports }
}

#[derive(Debug, Serialize)]
pub struct SpectralPair {
    pub eigenvalue: f64,
    pub idempotent: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct SpectralOutput {
    pub algebra: AlgebraDescriptor,
    pub atomic: bool,
    pub pairs: Vec<SpectralPair>,
    pub residuals: Residuals,
}

#[derive(Debug, Serialize)]
pub struct Residuals {
    pub reconstruction: f64,
    pub idempotency: f64,
    pub orthogonality: f64,
    pub completeness: f64,
}

impl From<SpectralResiduals> for Residuals {
    fn from(r: SpectralResiduals) -> Self {
        Residuals { reconstruction: r.reconstruction, idempotency: r.idempotency, orthogonality: r.orthogonality, completeness: r.completeness }
    }
}

/// `eja spectral`: distinct eigenvalues and spectral idempotents, split
/// into atoms with `atomic`.
pub fn spectral(a: &Element, atomic: bool, seed: u64) -> Result<SpectralOutput> {
    let mut d = a.spectral()?;
    if atomic {
        d = refine_atomic(&d, seed)?;
    }
    Ok(SpectralOutput {
        algebra: a.algebra().descriptor(),
        atomic: d.is_atomic(),
        pairs: d.pairs().iter().map(|(l, p)| SpectralPair { eigenvalue: *l, idempotent: p.coords().iter().copied().collect() }).collect(),
        residuals: d.residuals(a).into(),
    })
}

#[derive(Debug, Serialize)]
pub struct PolarOutput {
    pub algebra: AlgebraDescriptor,
    /// Row-major matrix of `Φ`.
    pub phi: Vec<Vec<f64>>,
    pub claims: PolarClaims,
}

/// `eja polar`.
pub fn polar(p: &Element, q: &Element) -> Result<PolarOutput> {
    let d = polar_decompose(p, q)?;
    Ok(PolarOutput {
        algebra: p.algebra().descriptor(),
        phi: d.phi.matrix().row_iter().map(|r| r.iter().copied().collect()).collect(),
        claims: d.claims,
    })
}

#[derive(Debug, Serialize)]
pub struct ExchangeOutput {
    pub witness: WitnessDescriptor,
    pub reconstruction_residual: f64,
    pub iso_isometry_residual: f64,
}

/// `eja exchange`: the witness for `π_p ∘ ξ_q`.
pub fn exchange(p: &Element, q: &Element) -> Result<ExchangeOutput> {
    let w = exchange_witness(p.algebra(), p, q)?;
    Ok(ExchangeOutput {
        witness: w.descriptor(),
        reconstruction_residual: w.reconstruction_residual()?,
        iso_isometry_residual: w.iso_isometry_residual()?,
    })
}

#[derive(Debug, Serialize)]
pub struct DiamondTableRow {
    pub p: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct DiamondTableOutput {
    pub algebra: AlgebraDescriptor,
    /// `true` when the rows cover every idempotent of the algebra.
    pub exhaustive: bool,
    pub rows: Vec<DiamondTableRow>,
}

/// `eja diamond-table`: `(p, f^⋄(p), f_⋄(p))` over the whole idempotent
/// lattice of `ℝⁿ`, or over sampled idempotents with `samples` random
/// ceilings elsewhere.
pub fn diamond_table(f: &PositiveMap, samples: usize, seed: u64) -> Result<DiamondTableOutput> {
    let alg = f.domain();
    let (ps, exhaustive) = match idempotent_lattice(alg) {
        Some(l) => (l, true),
        None => (default_idempotent_samples(alg, &mut ChaCha8Rng::seed_from_u64(seed), samples)?, false),
    };
    let coords = |x: &Element| x.coords().iter().copied().collect::<Vec<f64>>();
    let rows = ps
        .iter()
        .map(|p| Ok(DiamondTableRow { p: coords(p), upper: coords(&diamond(f, p)?), lower: coords(&diamond_lower(f, p)?) }))
        .collect::<Result<_>>()?;
    Ok(DiamondTableOutput { algebra: alg.descriptor(), exhaustive, rows })
}

/// Check that an element is positive before handing it to `polar`.
pub fn require_positive(name: &str, x: &Element) -> Result<()> {
    if spectral::is_positive(x, 1e-8 * (1.0 + x.norm2())) {
        Ok(())
    } else {
        Err(eja_core::EjaError::Domain(format!("{name} must be positive")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eja_core::FactorSpec;

    #[test]
    fn spectral_of_a_repeated_diagonal_has_two_pairs() {
        let alg = Algebra::single(FactorSpec::RealSym { n: 3 }).unwrap();
        let out = spectral(&alg.diagonal(&[3.0, 3.0, 5.0]).unwrap(), false, 0).unwrap();
        assert_eq!(out.pairs.len(), 2);
        assert!(!out.atomic);
        let atoms = spectral(&alg.diagonal(&[3.0, 3.0, 5.0]).unwrap(), true, 0).unwrap();
        assert_eq!(atoms.pairs.len(), 3);
        assert!(atoms.atomic);
    }

    #[test]
    fn polar_of_units_has_zero_claims() {
        let alg = Algebra::single(FactorSpec::QuatHerm { n: 2 }).unwrap();
        let out = polar(&alg.unit(), &alg.unit()).unwrap();
        assert!(out.claims.max() < 1e-14);
    }

    #[test]
    fn diamond_table_of_a_quadratic_map_on_the_cube() {
        let alg = Algebra::real_diagonal(3).unwrap();
        let a = alg.element(vec![2.0, 0.0, 1.0]).unwrap();
        let out = diamond_table(&PositiveMap::quadratic(&a), 10, 0).unwrap();
        assert!(out.exhaustive);
        assert_eq!(out.rows.len(), 8);
        // the outputs are again lattice elements
        for r in &out.rows {
            for x in r.upper.iter().chain(&r.lower) {
                assert!(*x == 0.0 || *x == 1.0);
            }
        }
    }
}
