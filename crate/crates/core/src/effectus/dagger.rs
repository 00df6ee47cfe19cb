//! The three structural conditions on sequential products and filters:
//! unique square roots under `&`, the fundamental identity for `&`, and
//! idempotent filters preserving idempotents.

use crate::algebra::Element;
use crate::error::{EjaError, Result};
use crate::spectral::{self, SpectralFn};

use super::corner::{peirce_corner, standard_filter};
use super::witness::sequential_product;

const NEWTON_SCHULZ_MAX_ITER: usize = 200;

/// Square root of an effect by the coupled Newton–Schulz iteration
/// `Y ← ½ (3Y − Q_Y Z)`, `Z ← ½ (3Z − Q_Z Y)` with `Y₀ = p`, `Z₀ = 1`.
/// All iterates are polynomials in `p`. The sandwich form keeps round-off
/// in the Peirce ½ spaces bounded; the form `½ Y(3 − ZY)` amplifies it.
pub fn and_square_root(p: &Element) -> Result<Element> {
    if !spectral::is_effect(p, 1e-8 * (1.0 + p.norm2())) {
        return Err(EjaError::Domain("square root under & needs an effect".into()));
    }
    let mut y = p.clone();
    let mut z = p.algebra().unit();
    let sandwich = |a: &Element, b: &Element| a.q_op().apply_unchecked(b);
    let mut last_step = f64::INFINITY;
    for _ in 0..NEWTON_SCHULZ_MAX_ITER {
        let y_next = (&y.scale(3.0) - &sandwich(&y, &z)).scale(0.5);
        let z_next = (&z.scale(3.0) - &sandwich(&z, &y)).scale(0.5);
        let step = y_next.dist(&y);
        y = y_next;
        z = z_next;
        // quadratic convergence ends when the step stops shrinking
        if step <= 1e-15 * (1.0 + y.norm2()) || (step < 1e-10 && step >= last_step) {
            break;
        }
        last_step = step;
    }
    if !y.is_finite() || !spectral::is_effect(&y, 1e-6) {
        return Err(EjaError::Numerical("Newton-Schulz iteration diverged".into()));
    }
    Ok(y)
}

/// `q = √p` under `&`: returns `(‖q&q − p‖₂, ‖q − spectral √p‖₂)`.
pub fn check_and_square_root(p: &Element) -> Result<(f64, f64)> {
    let q = and_square_root(p)?;
    let qq = sequential_product(&q, &q)?;
    let spectral_root = spectral::apply_function(p, SpectralFn::Sqrt)?;
    Ok((qq.dist(p), q.dist(&spectral_root)))
}

/// `‖Q_{√(p&q)}² − Q_√p Q_√q² Q_√p‖` for effects `p`, `q`.
pub fn check_and_fundamental_identity(p: &Element, q: &Element) -> Result<f64> {
    let pq = sequential_product(p, q)?;
    let lhs = spectral::apply_function(&pq, SpectralFn::Sqrt)?.q_op();
    let lhs = lhs.compose(&lhs)?;
    let sp = spectral::apply_function(p, SpectralFn::Sqrt)?.q_op();
    let sq = spectral::apply_function(q, SpectralFn::Sqrt)?.q_op();
    let rhs = sp.compose(&sq)?.compose(&sq)?.compose(&sp)?;
    lhs.distance(&rhs)
}

/// For idempotent `p` and idempotent `e` of its corner, `‖x² − x‖₂` for
/// `x = ξ_p(e)`.
pub fn check_filter_preserves_idempotent(p: &Element, e: &Element) -> Result<f64> {
    let xi = standard_filter(p.algebra(), p)?;
    let x = xi.apply(e)?;
    Ok(x.square().dist(&x))
}

/// Idempotents of the corner of `p` drawn from a random frame there.
pub fn corner_idempotent<R: rand::Rng + ?Sized>(p: &Element, rng: &mut R) -> Result<Element> {
    let c = peirce_corner(p.algebra(), p)?;
    if c.dim() == 0 {
        return Ok(c.algebra().zero());
    }
    crate::random::idempotent(c.algebra(), rng)
}
