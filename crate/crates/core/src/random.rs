//! Random elements for property tests and law suites.
//!
//! Coordinates are standard Gaussian in the canonical basis. Positive
//! elements are squares, effects and idempotents are built on a random
//! atomic frame (a complete set of orthogonal atomic idempotents).

use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Algebra, Element};
use crate::error::Result;
use crate::spectral::{refine_atomic, SpectralDecomposition};

pub fn gaussian<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Element {
    let coords = (0..alg.dim()).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    alg.element(coords).expect("coordinate count matches")
}

/// `b²` for Gaussian `b`.
pub fn positive<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Element {
    gaussian(alg, rng).square()
}

/// Orthogonal atomic idempotents summing to the unit.
pub fn atomic_frame<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Result<Vec<Element>> {
    // close spectral values give atoms accurate only to ε / gap, so redraw
    let mut tries = 0;
    let d = loop {
        let d = gaussian(alg, rng).spectral()?;
        tries += 1;
        if tries >= 32 || min_relative_gap(&d) >= 1e-3 {
            break d;
        }
    };
    let d = refine_atomic(&d, rng.random())?;
    Ok(d.idempotents().cloned().collect())
}

/// Smallest distance over `1 + max |λ|` between two spectral values, or
/// between a spectral value and an eigenvalue `(λ_i + λ_j) / 2` of `L_x`.
fn min_relative_gap(d: &SpectralDecomposition) -> f64 {
    let ls: Vec<f64> = d.pairs().iter().map(|(l, _)| *l).collect();
    let scale = 1.0 + ls.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let mut gap = f64::INFINITY;
    for (k, lk) in ls.iter().enumerate() {
        for (i, li) in ls.iter().enumerate() {
            if i != k {
                gap = gap.min((lk - li).abs());
            }
            for (j, lj) in ls.iter().enumerate().skip(i + 1) {
                if i != k && j != k {
                    gap = gap.min((lk - (li + lj) / 2.0).abs());
                }
            }
        }
    }
    gap / scale
}

/// `Σ λ_i p_i` over a random atomic frame with `λ_i` uniform in `[0, 1]`.
pub fn effect<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Result<Element> {
    let frame = atomic_frame(alg, rng)?;
    Ok(combine(alg, &frame, |_| rng.random::<f64>()))
}

/// Effect whose spectral values are `0` (with probability 1/4) or uniform
/// in `[gap, 1]`: singular but not nearly singular.
pub fn gapped_effect<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R, gap: f64) -> Result<Element> {
    let frame = atomic_frame(alg, rng)?;
    Ok(combine(alg, &frame, |_| if rng.random::<f64>() < 0.25 { 0.0 } else { rng.random_range(gap..=1.0) }))
}

/// Sum of a random subset of a random atomic frame.
pub fn idempotent<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Result<Element> {
    let frame = atomic_frame(alg, rng)?;
    Ok(combine(alg, &frame, |_| if rng.random::<bool>() { 1.0 } else { 0.0 }))
}

/// Idempotent strictly between 0 and 1 whenever the rank allows it.
pub fn proper_idempotent<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Result<Element> {
    let frame = atomic_frame(alg, rng)?;
    let k = frame.len();
    if k < 2 {
        return Ok(combine(alg, &frame, |_| 1.0));
    }
    // at least one atom in and one out
    let first_in = rng.random_range(0..k);
    let first_out = (first_in + rng.random_range(1..k)) % k;
    Ok(combine(alg, &frame, |i| {
        if i == first_in {
            1.0
        } else if i == first_out || !rng.random::<bool>() {
            0.0
        } else {
            1.0
        }
    }))
}

/// Positive element with at least one zero spectral value; the others are
/// uniform in `[0.2, 2]` or zero.
pub fn rank_deficient_positive<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Result<Element> {
    let frame = atomic_frame(alg, rng)?;
    let k = frame.len();
    let forced_zero = rng.random_range(0..k.max(1));
    Ok(combine(alg, &frame, |i| {
        if i == forced_zero || rng.random::<f64>() < 0.25 {
            0.0
        } else {
            rng.random_range(0.2..2.0)
        }
    }))
}

/// Positive element with spectrum in `[lo, hi]`.
pub fn positive_in_range<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R, lo: f64, hi: f64) -> Result<Element> {
    let frame = atomic_frame(alg, rng)?;
    Ok(combine(alg, &frame, |_| rng.random_range(lo..=hi)))
}

fn combine(alg: &Algebra, frame: &[Element], mut weight: impl FnMut(usize) -> f64) -> Element {
    let mut out = alg.zero();
    for (i, p) in frame.iter().enumerate() {
        let w = weight(i);
        if w != 0.0 {
            out += &p.scale(w);
        }
    }
    out
}
