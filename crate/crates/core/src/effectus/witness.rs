//! Pure maps in normal form `ξ_q ∘ Θ ∘ π_p`, the exchange rewrite of a
//! corner after a filter, composition and adjoints of witnesses.

use serde::{Deserialize, Serialize};

use super::corner::{corner_map, corner_of_ceiling, corner_of_floor, mediate_corner, mediate_filter, standard_corner, standard_filter, EFFECT_ZERO};
use crate::algebra::{Algebra, Element, ElementDescriptor};
use crate::error::{EjaError, Result};
use crate::linop::LinOp;
use crate::maps::{self, MapDescriptor, PositiveMap};
use crate::spectral::{self, SpectralFn};

/// A pure map `composed` together with a factorization
/// `composed = ξ_q ∘ Θ ∘ π_p` through a unital order isomorphism `Θ`.
#[derive(Debug, Clone)]
pub struct PurityWitness {
    filter_effect: Element,
    iso: PositiveMap,
    corner_idempotent: Element,
    filter: PositiveMap,
    corner: PositiveMap,
    composed: PositiveMap,
}

/// Outcome of [`PurityWitness::verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCheck {
    /// `‖composed − ξ_q ∘ Θ ∘ π_p‖`.
    pub reconstruction: f64,
    /// `None` when `Θ` passed the unital order-isomorphism test.
    pub iso_failure: Option<String>,
    /// `max ‖Θ(a*b) − Θ(a)*Θ(b)‖₂` over sampled pairs.
    pub iso_jordan_residual: f64,
}

impl WitnessCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.reconstruction <= tol && self.iso_failure.is_none() && self.iso_jordan_residual <= tol
    }
}

/// JSON form of a witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessDescriptor {
    pub filter_effect: ElementDescriptor,
    pub iso: MapDescriptor,
    pub corner_idempotent: ElementDescriptor,
    pub composed: MapDescriptor,
}

impl PurityWitness {
    pub fn filter_effect(&self) -> &Element {
        &self.filter_effect
    }

    pub fn iso(&self) -> &PositiveMap {
        &self.iso
    }

    pub fn corner_idempotent(&self) -> &Element {
        &self.corner_idempotent
    }

    /// `ξ_q`.
    pub fn filter(&self) -> &PositiveMap {
        &self.filter
    }

    /// `π_p`.
    pub fn corner(&self) -> &PositiveMap {
        &self.corner
    }

    /// The map this witness certifies.
    pub fn composed(&self) -> &PositiveMap {
        &self.composed
    }

    pub fn domain(&self) -> &Algebra {
        self.composed.domain()
    }

    pub fn codomain(&self) -> &Algebra {
        self.composed.codomain()
    }

    /// `ξ_q ∘ Θ ∘ π_p`.
    pub fn normal_form(&self) -> Result<PositiveMap> {
        self.filter.compose(&self.iso)?.compose(&self.corner)
    }

    pub fn reconstruction_residual(&self) -> Result<f64> {
        self.composed.distance(&self.normal_form()?)
    }

    /// Reconstruction residual and order-isomorphism checks on `Θ`.
    pub fn verify(&self, trials: usize, seed: u64) -> Result<WitnessCheck> {
        Ok(WitnessCheck {
            reconstruction: self.reconstruction_residual()?,
            iso_failure: maps::order_iso_failure(&self.iso, trials, seed),
            iso_jordan_residual: maps::check_jordan_homomorphism_seeded(&self.iso, trials, seed),
        })
    }

    /// `‖Θ*Θ − id‖` and `‖ΘΘ* − id‖`, the larger of the two.
    pub fn iso_isometry_residual(&self) -> Result<f64> {
        let t = self.iso.op();
        let a = t.adjoint().compose(t)?.distance(&LinOp::identity(t.domain()))?;
        let b = t.compose(&t.adjoint())?.distance(&LinOp::identity(t.codomain()))?;
        Ok(a.max(b))
    }

    /// Witness for `Q_√q = ξ_q ∘ π_⌈q⌉` with the identity in the middle.
    pub fn standard(alg: &Algebra, q: &Element) -> Result<PurityWitness> {
        let filter = standard_filter(alg, q)?;
        let top = spectral::ceiling_abs(q, EFFECT_ZERO)?;
        let corner = standard_corner(alg, &top)?;
        let iso = PositiveMap::identity(filter.domain());
        corner.codomain().ensure_same(iso.domain())?;
        let composed = PositiveMap::quadratic(&spectral::apply_function_abs(q, SpectralFn::Sqrt, EFFECT_ZERO)?);
        Ok(PurityWitness { filter_effect: q.clone(), iso, corner_idempotent: top, filter, corner, composed })
    }

    /// Build the normal form of `L ∘ K` where `L` behaves as a filter and `K`
    /// as a corner, each up to an isomorphism: `π_d` with `d = im K`,
    /// `ξ_e` with `e = L(1)`, and `Θ = L̄ ∘ K̄` from the two mediators.
    pub fn assemble(filter_side: &PositiveMap, corner_side: &PositiveMap, composed: PositiveMap) -> Result<PurityWitness> {
        let d = maps::image(corner_side)?;
        let k_bar = mediate_corner(corner_side, &d)?;
        let e = filter_side.unit_image();
        let l_bar = mediate_filter(filter_side, &e)?;
        let iso = l_bar.compose(&k_bar)?;
        let filter = standard_filter(filter_side.codomain(), &e)?;
        let corner = standard_corner(corner_side.domain(), &d)?;
        let iso = PositiveMap::relabel(iso.op().clone(), "unital order isomorphism");
        Ok(PurityWitness { filter_effect: e, iso, corner_idempotent: d, filter, corner, composed })
    }

    pub fn descriptor(&self) -> WitnessDescriptor {
        WitnessDescriptor {
            filter_effect: self.filter_effect.descriptor(),
            iso: self.iso.descriptor(),
            corner_idempotent: self.corner_idempotent.descriptor(),
            composed: self.composed.descriptor(),
        }
    }
}

/// `a & b = Q_√a(b)` for effects `a`, `b`.
pub fn sequential_product(a: &Element, b: &Element) -> Result<Element> {
    a.algebra().ensure_same(b.algebra())?;
    for x in [a, b] {
        if !spectral::is_effect(x, 1e-8 * (1.0 + x.norm2())) {
            return Err(EjaError::Domain("sequential product needs effects".into()));
        }
    }
    Ok(spectral::apply_function_abs(a, SpectralFn::Sqrt, EFFECT_ZERO)?.q_op().apply_unchecked(b))
}

/// Rewrite `π_p ∘ ξ_q` (idempotent `p`, effect `q`) as `ξ_{p&q} ∘ Φ ∘ π_{⌈q&p⌉}`.
///
/// With `f = π_p ∘ ξ_q` the corner side is `π_c` for `c = ⌈f*(1)⌉`, the
/// image of `f`, and the filter side is `f ∘ ι_c`; both compose back to `f`.
/// If `p&q = 0` every corner is zero-dimensional.
pub fn exchange(alg: &Algebra, p: &Element, q: &Element) -> Result<PurityWitness> {
    alg.ensure_same(p.algebra())?;
    let pi_p = standard_corner(alg, p)?;
    let xi_q = standard_filter(alg, q)?;
    let f = pi_p.compose(&xi_q)?;
    let c = spectral::ceiling_abs(&f.adjoint().unit_image(), EFFECT_ZERO)?;
    let corner_side = standard_corner(f.domain(), &c)?;
    let inclusion = corner_of_floor(f.domain(), &c)?.embedding().clone();
    let filter_side = f.compose(&PositiveMap::relabel(inclusion, "corner inclusion"))?;
    PurityWitness::assemble(&filter_side, &corner_side, f)
}

/// Witness for `w1.composed ∘ w2.composed`.
pub fn compose_pure(w1: &PurityWitness, w2: &PurityWitness) -> Result<PurityWitness> {
    w1.domain().ensure_same(w2.codomain())?;
    let x = exchange(w2.codomain(), &w1.corner_idempotent, &w2.filter_effect)?;
    let filter_side = w1.filter.compose(&w1.iso)?.compose(&x.filter)?.compose(&x.iso)?;
    let corner_side = x.corner.compose(&w2.iso)?.compose(&w2.corner)?;
    let composed = w1.composed.compose(&w2.composed)?;
    PurityWitness::assemble(&filter_side, &corner_side, composed)
}

/// Witness for the adjoint `π_p* ∘ Θ* ∘ ξ_q*`, whose pieces are
/// `ξ_p ∘ Θ* ∘ Q_√(r q)` on the filter side and `π_⌈q⌉` on the corner side.
pub fn adjoint_witness(w: &PurityWitness) -> Result<PurityWitness> {
    let e = w.codomain();
    let d = w.domain();
    let c = corner_of_ceiling(e, &w.filter_effect)?;
    let restricted = c.projection().apply(&w.filter_effect)?;
    let inner_filter = standard_filter(c.algebra(), &restricted)?;
    let outer_filter = standard_filter(d, &w.corner_idempotent)?;
    let filter_side = outer_filter.compose(&w.iso.adjoint())?.compose(&inner_filter)?;
    // built from `c` itself: rebuilding the floor of ⌈r q⌉ can land on a different corner
    let corner_side = corner_map(&c)?;
    // the inner filter acts on the corner of ⌈r q⌉, which is all of `c`
    let corner_side = if inner_filter.domain() == corner_side.codomain() {
        corner_side
    } else {
        let inner = corner_of_ceiling(c.algebra(), &restricted)?;
        PositiveMap::relabel(inner.projection().clone(), "corner restriction").compose(&corner_side)?
    };
    PurityWitness::assemble(&filter_side, &corner_side, w.composed.adjoint())
}
