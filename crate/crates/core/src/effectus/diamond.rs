//! Diamond adjoints on idempotent lattices.
//!
//! For a positive endomap `f` the upper map is `f^⋄(p) = ⌈f(p)⌉` and the
//! lower map is `f_⋄(q) = ⌈f*(q)⌉`; they form a Galois connection
//! `f^⋄(p) ≤ q^⊥ ⟺ f_⋄(q) ≤ p^⊥`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, ElementDescriptor};
use crate::error::{EjaError, Result};
use crate::maps::PositiveMap;
use crate::random;
use crate::spectral::{self, SpectralFn};

/// Tolerance for comparing idempotents.
pub const DEFAULT_DIAMOND_TOL: f64 = 1e-6;

fn check_endo(f: &PositiveMap) -> Result<()> {
    if !f.op().is_endo() {
        return Err(EjaError::AlgebraMismatch { expected: f.domain().to_string(), found: f.codomain().to_string() });
    }
    Ok(())
}

fn check_idempotent(p: &Element) -> Result<()> {
    if !spectral::is_idempotent(p, spectral::DEFAULT_IDEM_TOL * (1.0 + p.norm2())) {
        return Err(EjaError::Domain("diamond maps take idempotent arguments".into()));
    }
    Ok(())
}

/// `f^⋄(p) = ⌈f(p)⌉`.
pub fn diamond(f: &PositiveMap, p: &Element) -> Result<Element> {
    check_endo(f)?;
    check_idempotent(p)?;
    spectral::ceiling_abs(&f.apply(p)?, support_noise(f, p))
}

/// `f_⋄(q) = ⌈f*(q)⌉`, which equals `im(Q_q ∘ f)`.
pub fn diamond_lower(f: &PositiveMap, q: &Element) -> Result<Element> {
    check_endo(f)?;
    check_idempotent(q)?;
    spectral::ceiling_abs(&f.op().adjoint().apply(q)?, support_noise(f, q))
}

/// Round-off bound for `f(p)`: it scales with `‖f‖ ‖p‖`, not with `‖f(p)‖`.
/// Spectral values of `f(p)` below it count as zero.
pub fn support_noise(f: &PositiveMap, p: &Element) -> f64 {
    spectral::DEFAULT_EIG_TOL * f.op().matrix().norm() * p.norm2()
}

/// A pair `(p, q)` on which the two sides of the Galois connection disagree.
#[derive(Debug, Clone)]
pub struct GaloisViolation {
    pub p: Element,
    pub q: Element,
    pub upper_side: bool,
    pub lower_side: bool,
}

/// Check `f^⋄(p) ≤ q^⊥ ⟺ f_⋄(q) ≤ p^⊥` on every pair from `samples`.
pub fn galois_violation(f: &PositiveMap, samples: &[Element], tol: f64) -> Result<Option<GaloisViolation>> {
    let uppers: Vec<Element> = samples.iter().map(|p| diamond(f, p)).collect::<Result<_>>()?;
    let lowers: Vec<Element> = samples.iter().map(|q| diamond_lower(f, q)).collect::<Result<_>>()?;
    // s ≤ t tested as ‖Q_t s − s‖₂ ≤ tol, with Q_t built once per sample
    let perps: Vec<_> = samples.iter().map(|x| x.complement().q_op()).collect();
    let leq = |s: &Element, t: usize| -> Result<bool> { Ok(perps[t].apply(s)?.dist(s) <= tol) };
    for (i, p) in samples.iter().enumerate() {
        for (j, q) in samples.iter().enumerate() {
            let upper_side = leq(&uppers[i], j)?;
            let lower_side = leq(&lowers[j], i)?;
            if upper_side != lower_side {
                return Ok(Some(GaloisViolation { p: p.clone(), q: q.clone(), upper_side, lower_side }));
            }
        }
    }
    Ok(None)
}

/// Frame atoms, sums of pairs of them, and ceilings of random
/// rank-deficient positive elements.
pub fn default_idempotent_samples<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R, random_ceilings: usize) -> Result<Vec<Element>> {
    let mut out = vec![alg.zero(), alg.unit()];
    let frame = random::atomic_frame(alg, rng)?;
    for (i, p) in frame.iter().enumerate() {
        out.push(p.clone());
        for q in &frame[i + 1..] {
            out.push(p + q);
        }
    }
    for _ in 0..random_ceilings {
        out.push(spectral::ceiling(&random::rank_deficient_positive(alg, rng)?)?);
    }
    Ok(out)
}

/// `⌈f(p)⌉ = ⌈f*(p)⌉` on every sample.
pub fn is_diamond_self_adjoint(f: &PositiveMap, samples: &[Element]) -> Result<bool> {
    is_diamond_self_adjoint_tol(f, samples, DEFAULT_DIAMOND_TOL)
}

pub fn is_diamond_self_adjoint_tol(f: &PositiveMap, samples: &[Element], tol: f64) -> Result<bool> {
    if samples.is_empty() {
        return Err(EjaError::Domain("need at least one idempotent sample".into()));
    }
    for p in samples {
        if diamond(f, p)?.dist(&diamond_lower(f, p)?) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f` is ⋄-self-adjoint on `samples` and `‖g − f∘f‖ ≤ tol`.
pub fn is_diamond_positive_witnessed(g: &PositiveMap, f: &PositiveMap, samples: &[Element], tol: f64) -> Result<bool> {
    if !is_diamond_self_adjoint(f, samples)? {
        return Ok(false);
    }
    Ok(g.distance(&f.compose(f)?)? <= tol)
}

/// For positive `b`: `g = Q_√b ∘ Q_√b`, `p = g(1)`, and `‖g − Q_√p‖`.
pub fn check_pure_diamond_positive_normal_form(b: &Element) -> Result<f64> {
    if !spectral::is_positive(b, 1e-8 * (1.0 + b.norm2())) {
        return Err(EjaError::Domain("normal form check needs a positive element".into()));
    }
    let q = spectral::apply_function(b, SpectralFn::Sqrt)?.q_op();
    let g = q.compose(&q)?;
    let p = g.apply_unchecked(&b.algebra().unit());
    let root = spectral::apply_function(&p, SpectralFn::Sqrt)?;
    g.distance(&root.q_op())
}

/// Every idempotent of `ℝ^n` (the `2^n` coordinate indicator vectors), or
/// `None` for other algebras.
pub fn idempotent_lattice(alg: &Algebra) -> Option<Vec<Element>> {
    if !alg.is_real_diagonal() || alg.dim() > 16 {
        return None;
    }
    let n = alg.dim();
    Some(
        (0..1u32 << n)
            .map(|mask| {
                let coords = (0..n).map(|i| if mask >> i & 1 == 1 { 1.0 } else { 0.0 }).collect();
                alg.element(coords).expect("n coordinates")
            })
            .collect(),
    )
}

/// One row of a diamond table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiamondRow {
    pub p: ElementDescriptor,
    pub upper: ElementDescriptor,
    pub lower: ElementDescriptor,
}

/// `(p, f^⋄(p), f_⋄(p))` for each sample.
pub fn diamond_table(f: &PositiveMap, samples: &[Element]) -> Result<Vec<DiamondRow>> {
    samples
        .iter()
        .map(|p| {
            Ok(DiamondRow {
                p: p.descriptor(),
                upper: diamond(f, p)?.descriptor(),
                lower: diamond_lower(f, p)?.descriptor(),
            })
        })
        .collect()
}
