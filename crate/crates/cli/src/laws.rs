//! The catalog of randomized laws, grouped into suites.
//!
//! Every law draws its inputs from its own ChaCha stream, selected from the
//! run seed by a hash of the law id, so a law's trials do not depend on
//! which other laws ran before it. Each trial returns a residual already
//! divided by the law's scale, and the inputs that produced it.

use std::fmt;
use std::str::FromStr;

use eja_core::effectus::dagger::{check_and_fundamental_identity, check_and_square_root, check_filter_preserves_idempotent, corner_idempotent};
use eja_core::effectus::diamond::default_idempotent_samples;
use eja_core::effectus::{
    adjoint_witness, check_pure_diamond_positive_normal_form, compose_pure, diamond, diamond_lower, exchange, galois_violation,
    is_diamond_positive_witnessed, is_diamond_self_adjoint, support_noise, mediate_corner, mediate_filter, polar_decompose, standard_corner,
    standard_filter, PurityWitness, EFFECT_ZERO,
};
use eja_core::maps::image;
use eja_core::spectral::{self, default_cluster_tol, refine_atomic, SpectralFn};
use eja_core::{random, Algebra, EjaError, Element, FactorSpec, LinOp, PositiveMap, Result};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{FailureWitness, LawResult, LawSuiteReport, NamedElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Core,
    Spectral,
    CornerFilter,
    Polar,
    Exchange,
    Diamond,
    DaggerEffectus,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Core, Suite::Spectral, Suite::CornerFilter, Suite::Polar, Suite::Exchange, Suite::Diamond, Suite::DaggerEffectus];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Spectral => "spectral",
            Suite::CornerFilter => "corner_filter",
            Suite::Polar => "polar",
            Suite::Exchange => "exchange",
            Suite::Diamond => "diamond",
            Suite::DaggerEffectus => "dagger_effectus",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name, or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    One(Suite),
    All,
}

impl SuiteSelection {
    pub fn name(self) -> &'static str {
        match self {
            SuiteSelection::One(s) => s.name(),
            SuiteSelection::All => "all",
        }
    }

    pub fn contains(self, s: Suite) -> bool {
        match self {
            SuiteSelection::One(t) => t == s,
            SuiteSelection::All => true,
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "all" {
            return Ok(SuiteSelection::All);
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .map(SuiteSelection::One)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of core, spectral, corner_filter, polar, exchange, diamond, dagger_effectus, all"))
    }
}

/// Outcome of one trial.
pub struct Trial {
    pub residual: f64,
    pub inputs: Vec<(&'static str, Element)>,
}

impl Trial {
    fn new(residual: f64, inputs: Vec<(&'static str, &Element)>) -> Trial {
        Trial { residual, inputs: inputs.into_iter().map(|(n, e)| (n, e.clone())).collect() }
    }

    /// `0` if `ok`, else `1`: for laws that count disagreements.
    fn count(ok: bool, inputs: Vec<(&'static str, &Element)>) -> Trial {
        Trial::new(if ok { 0.0 } else { 1.0 }, inputs)
    }
}

type TrialFn = fn(&Algebra, &mut ChaCha8Rng) -> Result<Trial>;

pub struct Law {
    pub id: &'static str,
    pub suite: Suite,
    /// Tolerance of this law relative to the run tolerance.
    pub tol_factor: f64,
    /// What each residual is divided by.
    pub scale: &'static str,
    /// A suite run with `n` trials gives this law `ceil(n / cost)`.
    pub cost: usize,
    applies: fn(&Algebra) -> bool,
    trial: TrialFn,
}

impl Law {
    pub fn applies_to(&self, alg: &Algebra) -> bool {
        (self.applies)(alg)
    }

    /// Stream index of this law, a hash of its id.
    pub fn stream(&self) -> u64 {
        // FNV-1a
        self.id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
    }

    pub fn run_trial(&self, alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<Trial> {
        (self.trial)(alg, rng)
    }

    /// Exactly `trials` trials against an absolute `tolerance`.
    pub fn run(&self, alg: &Algebra, seed: u64, trials: usize, tolerance: f64) -> LawResult {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self.stream());
        let mut worst = 0.0f64;
        let mut witness: Option<FailureWitness> = None;
        for t in 0..trials {
            let (residual, inputs, error) = match (self.trial)(alg, &mut rng) {
                Ok(tr) => (if tr.residual.is_nan() { f64::INFINITY } else { tr.residual }, tr.inputs, None),
                Err(e) => (f64::INFINITY, Vec::new(), Some(format!("{}: {e}", e.name()))),
            };
            if witness.is_none() || residual > worst {
                worst = worst.max(residual);
                witness = Some(FailureWitness {
                    trial: t,
                    seed,
                    stream: self.stream(),
                    residual: residual.is_finite().then_some(residual),
                    inputs: inputs.into_iter().map(|(n, e)| NamedElement { name: n.to_string(), element: e.descriptor() }).collect(),
                    error: error.clone(),
                });
            }
            if error.is_some() {
                break;
            }
        }
        let pass = worst <= tolerance;
        LawResult {
            law_id: self.id.to_string(),
            trials,
            max_residual: worst.is_finite().then_some(worst),
            tolerance,
            scale: self.scale.to_string(),
            pass,
            witness: if pass { None } else { witness },
        }
    }
}

/// Run every applicable law of `suites` on `alg`.
pub fn run_suite(alg: &Algebra, suites: SuiteSelection, seed: u64, trials: usize, tol: f64) -> LawSuiteReport {
    let results = catalog()
        .iter()
        .filter(|l| suites.contains(l.suite) && l.applies_to(alg))
        .map(|l| l.run(alg, seed, trials.div_ceil(l.cost).max(1), tol * l.tol_factor))
        .collect();
    LawSuiteReport::new(suites.name(), alg.descriptor(), trials, seed, tol, results)
}

pub fn find(id: &str) -> Option<&'static Law> {
    catalog().iter().find(|l| l.id == id)
}

fn always(_: &Algebra) -> bool {
    true
}

fn has_spin(alg: &Algebra) -> bool {
    alg.factors().is_some_and(|f| f.iter().any(|s| matches!(s, FactorSpec::Spin { .. })))
}

fn lambda_min(a: &Element) -> Result<f64> {
    if a.algebra().dim() == 0 {
        return Ok(0.0);
    }
    spectral::min_eigenvalue(a)
}

fn commutator(a: &LinOp, b: &LinOp) -> Result<LinOp> {
    a.compose(b)?.sub(&b.compose(a)?)
}

/// `Σ w_i p_i` over a frame.
fn combine(alg: &Algebra, frame: &[Element], w: &[f64]) -> Element {
    frame.iter().zip(w).fold(alg.zero(), |acc, (p, x)| &acc + &p.scale(*x))
}

/// Positive elements `x ≥ 0` supported under `p` and `y ≥ 0` under `1 − p`.
fn orthogonal_pair(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<(Element, Element, Element)> {
    let p = random::proper_idempotent(alg, rng)?;
    let a = p.q_op().apply(&random::positive(alg, rng))?;
    let b = p.complement().q_op().apply(&random::positive(alg, rng))?;
    Ok((p, a, b))
}

/// A positive endomap from one of several constructions.
fn random_endomap(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<PositiveMap> {
    let a = random::gaussian(alg, rng);
    let qa = PositiveMap::quadratic(&a);
    Ok(match rng.random_range(0..4) {
        0 => qa,
        1 => qa.compose(&PositiveMap::quadratic(&random::gaussian(alg, rng)))?,
        2 => qa.sum(&PositiveMap::quadratic(&random::rank_deficient_positive(alg, rng)?))?,
        _ => {
            let q = random::effect(alg, rng)?;
            let top = spectral::ceiling(&q)?;
            standard_filter(alg, &q)?.compose(&standard_corner(alg, &top)?)?.compose(&qa)?
        }
    })
}

/// At least 60 idempotents: frame atoms, pairwise sums, and ceilings.
fn idempotent_samples(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<Vec<Element>> {
    let r = alg.rank();
    let structured = 2 + r + r * (r.saturating_sub(1)) / 2;
    default_idempotent_samples(alg, rng, 60usize.saturating_sub(structured).max(8))
}

/// Lower end of the nonzero spectrum of effects fed to the exchange laws;
/// below it the witnesses lose accuracy with the condition number.
const EFFECT_GAP: f64 = 0.01;

/// Smallest positive spectral value allowed for the filter effect of a
/// composite in `adjoint_witness`. Mediators divide by its square root.
const COMPOSITE_GAP: f64 = 1e-3;

/// Two gapped effects whose composite witness has a gapped filter effect,
/// redrawn up to 32 times.
fn gapped_composite(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<(Element, Element, PurityWitness)> {
    let mut attempt = 0;
    loop {
        let q1 = random::gapped_effect(alg, rng, EFFECT_GAP)?;
        let q2 = random::gapped_effect(alg, rng, EFFECT_GAP)?;
        let c = compose_pure(&PurityWitness::standard(alg, &q1)?, &PurityWitness::standard(alg, &q2)?)?;
        let spec = c.filter_effect().spectral()?;
        let gapped = spec.pairs().iter().all(|(l, _)| *l <= EFFECT_ZERO || *l >= COMPOSITE_GAP);
        attempt += 1;
        if gapped || attempt == 32 {
            return Ok((q1, q2, c));
        }
    }
}

fn witness_residual(w: &PurityWitness, rng: &mut ChaCha8Rng) -> Result<f64> {
    let check = w.verify(20, rng.random())?;
    if check.iso_failure.is_some() {
        return Ok(f64::INFINITY);
    }
    Ok(check.reconstruction.max(check.iso_jordan_residual))
}

macro_rules! law {
    ($id:literal, $suite:ident, $tol:expr, $scale:literal, $cost:expr, $applies:expr, $f:expr) => {
        Law { id: $id, suite: Suite::$suite, tol_factor: $tol, scale: $scale, cost: $cost, applies: $applies, trial: $f }
    };
}

pub fn catalog() -> &'static [Law] {
    &CATALOG
}

static CATALOG: [Law; 43] = [
    // core
    law!("jordan_identity", Core, 0.1, "1 + |a|^3 |b|", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let b = random::gaussian(alg, rng);
        let aa = a.square();
        let r = (&(&a * &b) * &aa).dist(&(&a * &(&b * &aa)));
        Ok(Trial::new(r / (1.0 + a.norm2().powi(3) * b.norm2()), vec![("a", &a), ("b", &b)]))
    }),
    law!("power_associativity", Core, 0.1, "1 + |a|^(n+m), n + m <= 8", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let powers: Vec<Element> = (0..=8).map(|k| a.pow(k)).collect();
        let mut worst = 0.0f64;
        for n in 1..8usize {
            for m in 1..=(8 - n) {
                let r = (&powers[n] * &powers[m]).dist(&powers[n + m]);
                worst = worst.max(r / (1.0 + a.norm2().powi((n + m) as i32)));
            }
        }
        Ok(Trial::new(worst, vec![("a", &a)]))
    }),
    law!("commutator_jordan", Core, 0.1, "1 + |a|^3", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let r = commutator(&a.l_op(), &a.square().l_op())?.op_norm();
        Ok(Trial::new(r / (1.0 + a.norm2().powi(3)), vec![("a", &a)]))
    }),
    law!("commutator_linearized", Core, 0.1, "1 + |a|^2 |b|", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let b = random::gaussian(alg, rng);
        let lhs = commutator(&b.l_op(), &a.square().l_op())?;
        let rhs = commutator(&(&a * &b).l_op(), &a.l_op())?.scale(2.0);
        Ok(Trial::new(lhs.distance(&rhs)? / (1.0 + a.norm2().powi(2) * b.norm2()), vec![("a", &a), ("b", &b)]))
    }),
    law!("commutator_cyclic", Core, 0.1, "1 + |a| |b| |c|", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let b = random::gaussian(alg, rng);
        let c = random::gaussian(alg, rng);
        let sum = commutator(&a.l_op(), &(&b * &c).l_op())?
            .add(&commutator(&b.l_op(), &(&c * &a).l_op())?)?
            .add(&commutator(&c.l_op(), &(&a * &b).l_op())?)?;
        Ok(Trial::new(sum.op_norm() / (1.0 + a.norm2() * b.norm2() * c.norm2()), vec![("a", &a), ("b", &b), ("c", &c)]))
    }),
    law!("fundamental_equality", Core, 1.0, "1 + |a|^4 |b|^2", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let b = random::gaussian(alg, rng);
        let qa = a.q_op();
        let lhs = qa.apply(&b)?.q_op();
        let rhs = qa.compose(&b.q_op())?.compose(&qa)?;
        Ok(Trial::new(lhs.distance(&rhs)? / (1.0 + a.norm2().powi(4) * b.norm2().powi(2)), vec![("a", &a), ("b", &b)]))
    }),
    law!("quadratic_inverse", Core, 1.0, "1", 1, always, |alg, rng| {
        // invertible with |λ| in [0.3, 3] and random signs
        let frame = random::atomic_frame(alg, rng)?;
        let w: Vec<f64> = frame.iter().map(|_| rng.random_range(0.3..3.0) * if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
        let a = combine(alg, &frame, &w);
        let inv = spectral::apply_function(&a, SpectralFn::Power(-1))?;
        let r = a.q_op().compose(&inv.q_op())?.distance(&LinOp::identity(alg))?;
        Ok(Trial::new(r, vec![("a", &a)]))
    }),
    law!("quadratic_positive", Core, 1.0, "1 + |a|^2 |b|^2", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let b = random::gaussian(alg, rng);
        let y = a.q_op().apply(&b.square())?;
        let r = (-lambda_min(&y)?).max(0.0);
        Ok(Trial::new(r / (1.0 + (a.norm2() * b.norm2()).powi(2)), vec![("a", &a), ("b", &b)]))
    }),
    law!("zero_products", Core, 0.1, "(1 + |a|)^2 (1 + |b|)^2", 1, always, |alg, rng| {
        let (_, a, b) = orthogonal_pair(alg, rng)?;
        let r = a.q_op().apply(&b)?.norm2().max(b.q_op().apply(&a)?.norm2()).max((&a * &b).norm2());
        Ok(Trial::new(r / ((1.0 + a.norm2()) * (1.0 + b.norm2())).powi(2), vec![("a", &a), ("b", &b)]))
    }),
    law!("self_duality", Core, 1e-3, "1 (raw negative part of <a,b>)", 1, always, |alg, rng| {
        // half generic pairs, half orthogonal pairs on the boundary of the cone
        let (a, b) = if rng.random::<bool>() {
            (random::positive(alg, rng), random::positive(alg, rng))
        } else {
            let (_, a, b) = orthogonal_pair(alg, rng)?;
            (a, b)
        };
        Ok(Trial::new((-a.inner(&b)?).max(0.0), vec![("a", &a), ("b", &b)]))
    }),
    law!("spin_positivity", Core, 0.0, "count of disagreements with t >= |v|", 1, has_spin, |alg, rng| {
        // one spin block varies, the other blocks hold the unit
        let factors = alg.factors().expect("factor algebra");
        let spins: Vec<usize> = (0..factors.len()).filter(|&i| matches!(factors[i], FactorSpec::Spin { .. })).collect();
        let block = alg.factor_range(spins[rng.random_range(0..spins.len())]).expect("factor index");
        let mut coords = alg.unit().into_coords();
        let d = block.len() - 1;
        let v: Vec<f64> = (0..d).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let t = match rng.random_range(0..3) {
            0 => rng.random::<f64>() * 4.0 - 2.0,
            1 => vn * (1.0 + 1e-6),
            _ => vn * (1.0 - 1e-6),
        };
        for (k, x) in v.iter().enumerate() {
            coords[block.start + k] = *x;
        }
        coords[block.end - 1] = t;
        let x = alg.element_from_vector(coords)?;
        Ok(Trial::count(spectral::is_positive(&x, 1e-12) == (t >= vn), vec![("x", &x)]))
    }),
    // spectral
    law!("spectral_decomposition", Spectral, 0.1, "1 + |a|", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let d = a.spectral()?;
        let gaps_ok = d.eigenvalues().windows(2).all(|w| w[1] - w[0] > default_cluster_tol(&a));
        let r = if gaps_ok { d.residuals(&a).max() } else { f64::INFINITY };
        Ok(Trial::new(r / (1.0 + a.norm2()), vec![("a", &a)]))
    }),
    law!("refine_atomic_rank", Spectral, 0.0, "count of non-atomic outputs plus |#atoms - rank|", 1, always, |alg, rng| {
        let a = repeated_spectrum(alg, rng)?;
        let d = refine_atomic(&a.spectral()?, rng.random())?;
        let bad = d.idempotents().filter(|p| spectral::peirce_rank(p) != 1).count() + d.len().abs_diff(alg.rank());
        Ok(Trial::new(bad as f64, vec![("a", &a)]))
    }),
    law!("refine_atomic_reconstruction", Spectral, 0.1, "1 + |a|", 1, always, |alg, rng| {
        let a = repeated_spectrum(alg, rng)?;
        let d = refine_atomic(&a.spectral()?, rng.random())?;
        Ok(Trial::new(d.residuals(&a).max() / (1.0 + a.norm2()), vec![("a", &a)]))
    }),
    law!("ceiling_floor", Spectral, 0.1, "1", 1, always, |alg, rng| {
        // weights 0, 1 or in between on a random frame; the frame gives the answer
        let frame = random::atomic_frame(alg, rng)?;
        let w: Vec<f64> = frame
            .iter()
            .map(|_| match rng.random_range(0..3) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.random_range(0.05..0.95),
            })
            .collect();
        let q = combine(alg, &frame, &w);
        let up = combine(alg, &frame, &w.iter().map(|x| f64::from(u8::from(*x > 0.0))).collect::<Vec<_>>());
        let down = combine(alg, &frame, &w.iter().map(|x| f64::from(u8::from(*x >= 1.0))).collect::<Vec<_>>());
        let r = spectral::ceiling(&q)?.dist(&up).max(spectral::floor_of_effect(&q)?.dist(&down));
        Ok(Trial::new(r, vec![("q", &q)]))
    }),
    law!("functional_calculus", Spectral, 0.1, "1 + |q| for the root, 1 + |q| |q^+| for the pseudo-inverse", 1, always, |alg, rng| {
        let q = if rng.random::<bool>() { random::positive(alg, rng) } else { random::rank_deficient_positive(alg, rng)? };
        let root = spectral::apply_function(&q, SpectralFn::Sqrt)?;
        let inv = spectral::apply_function(&q, SpectralFn::PseudoInverse)?;
        // q ∘ q⁺ loses accuracy with the condition number of q on its support
        let cond = 1.0 + spectral::order_unit_norm(&q) * spectral::order_unit_norm(&inv);
        let r = (root.square().dist(&q) / (1.0 + q.norm2())).max((&q * &inv).dist(&spectral::ceiling(&q)?) / cond);
        Ok(Trial::new(r, vec![("q", &q)]))
    }),
    law!("norm_sandwich", Spectral, 0.1, "1 + |a|_2", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let n = spectral::order_unit_norm(&a);
        let unit = alg.unit().norm2();
        let smallest_atom = random::atomic_frame(alg, rng)?.iter().map(Element::norm2).fold(f64::INFINITY, f64::min);
        let r = (a.norm2() - n * unit).max(n * smallest_atom - a.norm2()).max(0.0);
        Ok(Trial::new(r / (1.0 + a.norm2()), vec![("a", &a)]))
    }),
    law!("archimedean", Spectral, 0.1, "1 + |a|_2", 1, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let top = alg.unit().scale(a.spectral()?.max_eigenvalue());
        Ok(Trial::new((-lambda_min(&(&top - &a))?).max(0.0) / (1.0 + a.norm2()), vec![("a", &a)]))
    }),
    law!("order_sharp_witness", Spectral, 0.1, "1", 1, always, |alg, rng| {
        // a non-idempotent effect has q = min(λ, 1-λ) p_λ ≠ 0 below a and a^⊥
        let a = random::effect(alg, rng)?;
        let d = a.spectral()?;
        let Some((l, p)) = d.pairs().iter().find(|(l, _)| *l > 1e-6 && *l < 1.0 - 1e-6).cloned() else {
            return Ok(Trial::new(0.0, vec![("a", &a)]));
        };
        let q = p.scale(l.min(1.0 - l));
        let below = (-lambda_min(&(&a - &q))?).max(-lambda_min(&(&a.complement() - &q))?).max(0.0);
        let nonzero = if spectral::order_unit_norm(&q) > 1e-7 { 0.0 } else { f64::INFINITY };
        Ok(Trial::new(below.max(nonzero), vec![("a", &a)]))
    }),
    law!("peirce_quadratic", Spectral, 0.1, "1", 1, always, |alg, rng| {
        let p = random::proper_idempotent(alg, rng)?;
        let qp = p.q_op();
        let perp = p.complement().q_op().apply(&random::effect(alg, rng)?)?;
        let below = qp.apply(&random::effect(alg, rng)?)?;
        let r = perp
            .inner(&p)?
            .abs()
            .max(qp.apply(&perp)?.norm2())
            .max(qp.apply(&below)?.dist(&below))
            .max((&p * &below).dist(&below))
            .max((-lambda_min(&(&p - &below))?).max(0.0));
        Ok(Trial::new(r, vec![("p", &p), ("orthogonal", &perp), ("below", &below)]))
    }),
    // corner_filter
    law!("corner_universal", CornerFilter, 1.0, "1 + |g|", 1, always, |alg, rng| {
        let (q, g) = corner_instance(alg, rng)?;
        let bar = mediate_corner(&g, &q)?;
        let pi = standard_corner(alg, &q)?;
        Ok(Trial::new(bar.compose(&pi)?.distance(&g)? / (1.0 + g.op().op_norm()), vec![("q", &q)]))
    }),
    law!("corner_uniqueness", CornerFilter, 1.0, "1 + |g|", 1, always, |alg, rng| {
        // any h with h ∘ π_q = g agrees with the mediator on the corner basis
        let (q, g) = corner_instance(alg, rng)?;
        let bar = mediate_corner(&g, &q)?;
        let pi = standard_corner(alg, &q)?;
        let r = if pi.codomain().dim() == 0 {
            0.0
        } else {
            // h π = g with π onto: solve πᵀ hᵀ = gᵀ
            let other = solve_full_rank(&pi.matrix().transpose(), &g.matrix().transpose())
                .ok_or_else(|| EjaError::Numerical("corner is not onto".into()))?;
            (bar.matrix() - other.transpose()).norm()
        };
        Ok(Trial::new(r / (1.0 + g.op().op_norm()), vec![("q", &q)]))
    }),
    law!("filter_universal", CornerFilter, 1.0, "1", 1, always, |alg, rng| {
        let (q, b, f) = filter_instance(alg, rng)?;
        let bar = mediate_filter(&f, &q)?;
        let xi = standard_filter(alg, &q)?;
        Ok(Trial::new(xi.compose(&bar)?.distance(&f)?, vec![("q", &q), ("b", &b)]))
    }),
    law!("filter_uniqueness", CornerFilter, 1.0, "1", 1, always, |alg, rng| {
        let (q, b, f) = filter_instance(alg, rng)?;
        let bar = mediate_filter(&f, &q)?;
        let xi = standard_filter(alg, &q)?;
        let r = if xi.domain().dim() == 0 {
            0.0
        } else {
            let other = solve_full_rank(xi.matrix(), f.matrix()).ok_or_else(|| EjaError::Numerical("filter is not injective".into()))?;
            (bar.matrix() - other).norm()
        };
        Ok(Trial::new(r, vec![("q", &q), ("b", &b)]))
    }),
    law!("filter_after_corner", CornerFilter, 1.0, "1", 1, always, |alg, rng| {
        let q = random::effect(alg, rng)?;
        let top = spectral::ceiling(&q)?;
        let lhs = standard_filter(alg, &q)?.compose(&standard_corner(alg, &top)?)?;
        let rhs = spectral::apply_function(&q, SpectralFn::Sqrt)?.q_op();
        Ok(Trial::new(lhs.op().distance(&rhs)?, vec![("q", &q)]))
    }),
    law!("corner_filter_adjoint", CornerFilter, 1.0, "1", 1, always, |alg, rng| {
        let p = random::idempotent(alg, rng)?;
        let pi = standard_corner(alg, &p)?;
        let xi = standard_filter(alg, &p)?;
        let r = (pi.adjoint().matrix() - xi.matrix()).norm().max((xi.adjoint().matrix() - pi.matrix()).norm());
        Ok(Trial::new(r, vec![("p", &p)]))
    }),
    law!("floor_keeps_fixed_point", CornerFilter, 1.0, "1 + |g(1)|", 1, always, |alg, rng| {
        // g kills 1 - p, so g(q) = g(1) for every effect q ≥ p
        let p = random::proper_idempotent(alg, rng)?;
        let a = random::gaussian(alg, rng);
        let g = PositiveMap::quadratic(&a).compose(&PositiveMap::quadratic(&p))?;
        let q = &p + &p.complement().q_op().apply(&random::effect(alg, rng)?)?;
        let g1 = g.unit_image();
        let r = g.apply(&q)?.dist(&g1).max(g.apply(&spectral::floor_of_effect(&q)?)?.dist(&g1));
        Ok(Trial::new(r / (1.0 + g1.norm2()), vec![("p", &p), ("a", &a), ("q", &q)]))
    }),
    law!("factor_through_image", CornerFilter, 1.0, "1 + |g|", 1, always, |alg, rng| {
        let p = random::proper_idempotent(alg, rng)?;
        let a = random::gaussian(alg, rng);
        let g = PositiveMap::quadratic(&a).compose(&PositiveMap::quadratic(&p))?;
        let qp = PositiveMap::quadratic(&p);
        let r = g.compose(&qp)?.distance(&g)?.max(g.apply(&p)?.dist(&g.unit_image()));
        Ok(Trial::new(r / (1.0 + g.op().op_norm()), vec![("p", &p), ("a", &a)]))
    }),
    law!("image_least_fixed", CornerFilter, 1.0, "1 + |f|", 1, always, |alg, rng| {
        let q = random::rank_deficient_positive(alg, rng)?;
        let f = PositiveMap::quadratic(&q);
        let im = image(&f)?;
        let r = f.apply(&im)?.dist(&f.unit_image()).max(im.dist(&spectral::ceiling(&q)?));
        Ok(Trial::new(r / (1.0 + f.op().op_norm()), vec![("q", &q)]))
    }),
    // polar
    law!("polar_claims", Polar, 1.0, "claims residuals; factorization by 1 + |Q_q| |Q_p|", 1, always, |alg, rng| {
        let p = random::positive(alg, rng);
        let q = random::positive(alg, rng);
        Ok(Trial::new(polar_decompose(&p, &q)?.claims.max_scaled(), vec![("p", &p), ("q", &q)]))
    }),
    law!("polar_claims_singular", Polar, 1.0, "claims residuals; factorization by 1 + |Q_q| |Q_p|", 4, always, |alg, rng| {
        let (p, q) = match rng.random_range(0..3) {
            0 => (random::rank_deficient_positive(alg, rng)?, random::positive(alg, rng)),
            1 => (random::positive(alg, rng), random::rank_deficient_positive(alg, rng)?),
            _ => (random::rank_deficient_positive(alg, rng)?, random::rank_deficient_positive(alg, rng)?),
        };
        Ok(Trial::new(polar_decompose(&p, &q)?.claims.max_scaled(), vec![("p", &p), ("q", &q)]))
    }),
    // exchange
    law!("exchange_recomposition", Exchange, 1.0, "1", 1, always, |alg, rng| {
        let p = random::idempotent(alg, rng)?;
        let q = random::gapped_effect(alg, rng, EFFECT_GAP)?;
        let w = exchange(alg, &p, &q)?;
        Ok(Trial::new(witness_residual(&w, rng)?, vec![("p", &p), ("q", &q)]))
    }),
    law!("exchange_isometry", Exchange, 1.0, "1", 1, always, |alg, rng| {
        let p = random::idempotent(alg, rng)?;
        let q = random::gapped_effect(alg, rng, EFFECT_GAP)?;
        Ok(Trial::new(exchange(alg, &p, &q)?.iso_isometry_residual()?, vec![("p", &p), ("q", &q)]))
    }),
    law!("compose_pure", Exchange, 1.0, "1", 2, always, |alg, rng| {
        let q1 = random::gapped_effect(alg, rng, EFFECT_GAP)?;
        let q2 = random::gapped_effect(alg, rng, EFFECT_GAP)?;
        let c = compose_pure(&PurityWitness::standard(alg, &q1)?, &PurityWitness::standard(alg, &q2)?)?;
        Ok(Trial::new(witness_residual(&c, rng)?, vec![("q1", &q1), ("q2", &q2)]))
    }),
    law!("adjoint_witness", Exchange, 1.0, "1", 2, always, |alg, rng| {
        let (q1, q2, c) = gapped_composite(alg, rng)?;
        let a = adjoint_witness(&c)?;
        let r = witness_residual(&a, rng)?.max(a.composed().distance(&c.composed().adjoint())?);
        Ok(Trial::new(r, vec![("q1", &q1), ("q2", &q2)]))
    }),
    // diamond
    law!("galois_connection", Diamond, 0.0, "count of violating maps", 25, always, |alg, rng| {
        let f = random_endomap(alg, rng)?;
        let samples = idempotent_samples(alg, rng)?;
        let bad = galois_violation(&f, &samples, 1e-6)?;
        let inputs = bad.as_ref().map_or(vec![], |v| vec![("p", &v.p), ("q", &v.q)]);
        Ok(Trial::count(bad.is_none(), inputs))
    }),
    law!("quadratic_diamond_self_adjoint", Diamond, 0.0, "count of failing elements", 10, always, |alg, rng| {
        let a = random::gaussian(alg, rng);
        let samples = idempotent_samples(alg, rng)?;
        Ok(Trial::count(is_diamond_self_adjoint(&PositiveMap::quadratic(&a), &samples)?, vec![("a", &a)]))
    }),
    law!("diamond_positive_witness", Diamond, 0.0, "count of failing elements", 10, always, |alg, rng| {
        let b = random::positive(alg, rng);
        let samples = idempotent_samples(alg, rng)?;
        let root = PositiveMap::quadratic(&spectral::apply_function(&b, SpectralFn::Sqrt)?);
        let g = PositiveMap::quadratic(&b);
        let ok = is_diamond_positive_witnessed(&g, &root, &samples, 1e-7 * (1.0 + g.op().op_norm()))?;
        Ok(Trial::count(ok, vec![("b", &b)]))
    }),
    law!("lower_diamond_is_image", Diamond, 1.0, "1 + |x| / smallest positive spectral value of x, x = f*(q)", 10, always, |alg, rng| {
        let f = random_endomap(alg, rng)?;
        let samples = idempotent_samples(alg, rng)?;
        let mut worst = 0.0f64;
        for q in &samples {
            let qf = PositiveMap::quadratic(q).compose(&f)?;
            // support projectors move by up to |x| / λ⁺_min times the round-off in x
            let x = f.op().adjoint().apply(q)?;
            let cut = support_noise(&f, q);
            let lmin = x.spectral()?.pairs().iter().map(|(l, _)| *l).filter(|l| *l > cut).fold(f64::INFINITY, f64::min);
            let cond = 1.0 + spectral::order_unit_norm(&x) / lmin;
            worst = worst.max(diamond_lower(&f, q)?.dist(&image(&qf)?) / cond);
            // both adjoints return idempotents
            let up = diamond(&f, q)?;
            worst = worst.max(up.square().dist(&up));
        }
        Ok(Trial::new(worst, vec![]))
    }),
    law!("pure_normal_form", Diamond, 1.0, "1 + |Q_b|", 1, always, |alg, rng| {
        let b = random::positive(alg, rng);
        let r = check_pure_diamond_positive_normal_form(&b)?;
        Ok(Trial::new(r / (1.0 + b.q_op().op_norm()), vec![("b", &b)]))
    }),
    // dagger_effectus
    law!("and_square_root", DaggerEffectus, 1.0, "1", 1, always, |alg, rng| {
        let p = if rng.random::<bool>() { random::effect(alg, rng)? } else { random::idempotent(alg, rng)? };
        let (square, agree) = check_and_square_root(&p)?;
        Ok(Trial::new(square.max(agree), vec![("p", &p)]))
    }),
    law!("and_fundamental_identity", DaggerEffectus, 1.0, "1", 1, always, |alg, rng| {
        let p = random::effect(alg, rng)?;
        let q = random::effect(alg, rng)?;
        Ok(Trial::new(check_and_fundamental_identity(&p, &q)?, vec![("p", &p), ("q", &q)]))
    }),
    law!("filter_preserves_idempotents", DaggerEffectus, 1.0, "1", 1, always, |alg, rng| {
        let p = random::idempotent(alg, rng)?;
        let e = corner_idempotent(&p, rng)?;
        Ok(Trial::new(check_filter_preserves_idempotent(&p, &e)?, vec![("p", &p), ("e", &e)]))
    }),
];

/// `2p − (1 − p)`, so that refinement has repeated eigenvalues to split.
fn repeated_spectrum(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<Element> {
    if rng.random::<bool>() {
        return Ok(random::gaussian(alg, rng));
    }
    let p = random::idempotent(alg, rng)?;
    Ok(&p.scale(2.0) - &p.complement())
}

/// `g = Q_a ∘ Q_⌊q⌋`, which satisfies `g(q) = g(1)`.
fn corner_instance(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<(Element, PositiveMap)> {
    let q = random::effect(alg, rng)?;
    let fl = spectral::floor_of_effect(&q)?;
    let g = PositiveMap::quadratic(&random::gaussian(alg, rng)).compose(&PositiveMap::quadratic(&fl))?;
    Ok((q, g))
}

/// `f = Q_√q ∘ Q_b` for effects `q`, `b`, so `f(1) = Q_√q(b²) ≤ q`.
fn filter_instance(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<(Element, Element, PositiveMap)> {
    let q = random::effect(alg, rng)?;
    let b = random::effect(alg, rng)?;
    let root = spectral::apply_function(&q, SpectralFn::Sqrt)?;
    let f = PositiveMap::quadratic(&root).compose(&PositiveMap::quadratic(&b))?;
    Ok((q, b, f))
}

/// Least-squares solution of `a x = b` for `a` of full column rank, by
/// Householder QR.
fn solve_full_rank(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let qr = a.clone().qr();
    qr.r().solve_upper_triangular(&(qr.q().transpose() * b))
}

/// The six algebras used when no `--algebra` is given.
pub fn benchmark_algebras() -> Vec<Algebra> {
    [
        vec![FactorSpec::RealSym { n: 3 }],
        vec![FactorSpec::ComplexHerm { n: 2 }],
        vec![FactorSpec::QuatHerm { n: 2 }],
        vec![FactorSpec::Spin { d: 4 }],
        vec![FactorSpec::Albert],
        vec![FactorSpec::RealSym { n: 2 }, FactorSpec::ComplexHerm { n: 2 }, FactorSpec::Spin { d: 3 }],
    ]
    .into_iter()
    .map(|s| Algebra::new(s).expect("benchmark algebras are valid"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_streams_distinct() {
        let mut ids: Vec<_> = catalog().iter().map(|l| l.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), catalog().len());
        let mut streams: Vec<_> = catalog().iter().map(Law::stream).collect();
        streams.sort();
        streams.dedup();
        assert_eq!(streams.len(), catalog().len());
    }

    #[test]
    fn every_suite_has_laws() {
        for s in Suite::ALL {
            assert!(catalog().iter().any(|l| l.suite == s), "{s}");
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<SuiteSelection>().unwrap(), SuiteSelection::One(s));
        }
        assert_eq!("all".parse::<SuiteSelection>().unwrap(), SuiteSelection::All);
        assert!("everything".parse::<SuiteSelection>().is_err());
    }

    #[test]
    fn a_law_replays_from_its_seed() {
        let alg = Algebra::single(FactorSpec::Spin { d: 3 }).unwrap();
        let law = find("fundamental_equality").unwrap();
        assert_eq!(law.run(&alg, 9, 5, 1e-7), law.run(&alg, 9, 5, 1e-7));
        let failed = law.run(&alg, 9, 5, 1e-300);
        assert!(!failed.pass);
        assert_eq!(failed.witness.as_ref().unwrap().inputs.len(), 2);
    }

    #[test]
    fn spin_law_only_where_there_is_a_spin_factor() {
        let law = find("spin_positivity").unwrap();
        assert!(!law.applies_to(&Algebra::single(FactorSpec::Albert).unwrap()));
        let mixed = &benchmark_algebras()[5];
        assert!(law.applies_to(mixed));
        assert!(law.run(mixed, 3, 200, 0.0).pass);
    }
}
