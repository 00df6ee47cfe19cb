//! Peirce corners, the standard corner and filter maps, and their mediators.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::algebra::{Algebra, Element};
use crate::error::{EjaError, Result};
use crate::linop::LinOp;
use crate::maps::PositiveMap;
use crate::spectral::{self, SpectralFn};

/// Default residual bound for the mediator preconditions.
pub const DEFAULT_MEDIATE_TOL: f64 = 1e-7;

/// The Peirce 1-space `Q_p(E)` of an idempotent, as a subalgebra with unit `p`.
#[derive(Debug, Clone)]
pub struct CornerAlgebra {
    parent: Algebra,
    idempotent: Element,
    algebra: Algebra,
    embedding: LinOp,
    projection: LinOp,
}

impl CornerAlgebra {
    pub fn parent(&self) -> &Algebra {
        &self.parent
    }

    pub fn idempotent(&self) -> &Element {
        &self.idempotent
    }

    /// The corner itself.
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `ι`: corner → parent.
    pub fn embedding(&self) -> &LinOp {
        &self.embedding
    }

    /// `r`: parent → corner, with `r ∘ ι = id`.
    pub fn projection(&self) -> &LinOp {
        &self.projection
    }

    /// Corner element with the same root coordinates as `x`, which must lie
    /// in `Q_p(E)`.
    pub fn restrict(&self, x: &Element) -> Result<Element> {
        self.projection.apply(x)
    }

    pub fn include(&self, x: &Element) -> Result<Element> {
        self.embedding.apply(x)
    }
}

fn check_idempotent(p: &Element) -> Result<()> {
    let r = p.square().dist(p);
    if r > spectral::DEFAULT_IDEM_TOL * (1.0 + p.norm2()) {
        return Err(EjaError::Domain(format!("expected an idempotent, |p*p - p| = {r:e}")));
    }
    Ok(())
}

/// Orthonormal basis of the range of `Q_p`, read off the eigenvectors of
/// `Q_p` with eigenvalue above ½.
pub fn peirce_corner(alg: &Algebra, p: &Element) -> Result<CornerAlgebra> {
    alg.ensure_same(p.algebra())?;
    check_idempotent(p)?;
    let n = alg.dim();
    let (vectors, keep) = if n > 0 {
        let e = SymmetricEigen::try_new(p.q_op().matrix().clone(), f64::EPSILON, 10_000)
            .ok_or_else(|| EjaError::Numerical("eigensolver failed on Q_p".into()))?;
        let keep: Vec<usize> = (0..n).filter(|&i| e.eigenvalues[i] > 0.5).collect();
        (e.eigenvectors, keep)
    } else {
        (DMatrix::zeros(0, 0), vec![])
    };
    if keep.len() == n {
        return Ok(CornerAlgebra {
            parent: alg.clone(),
            idempotent: p.clone(),
            algebra: alg.clone(),
            embedding: LinOp::identity(alg),
            projection: LinOp::identity(alg),
        });
    }
    let u = DMatrix::from_fn(n, keep.len(), |i, j| vectors[(i, keep[j])]);
    let unit = u.tr_mul(p.coords());
    let corner = alg.subalgebra(u.clone(), unit);
    let embedding = LinOp::new(corner.clone(), alg.clone(), u.clone())?;
    let projection = LinOp::new(alg.clone(), corner.clone(), u.transpose())?;
    Ok(CornerAlgebra { parent: alg.clone(), idempotent: p.clone(), algebra: corner, embedding, projection })
}

/// Spectral values of an effect below this are zero. Effects live on the
/// scale of the unit, so the cut is absolute.
pub const EFFECT_ZERO: f64 = spectral::DEFAULT_EIG_TOL;

fn check_effect(q: &Element) -> Result<()> {
    if !spectral::is_effect(q, 1e-8 * (1.0 + q.norm2())) {
        return Err(EjaError::Domain("expected an effect 0 <= q <= 1".into()));
    }
    Ok(())
}

/// `{E|q}`: the corner of `⌊q⌋`.
pub fn corner_of_floor(alg: &Algebra, q: &Element) -> Result<CornerAlgebra> {
    check_effect(q)?;
    peirce_corner(alg, &spectral::floor_abs(q, EFFECT_ZERO)?)
}

/// `E_q`: the corner of `⌈q⌉`.
pub fn corner_of_ceiling(alg: &Algebra, q: &Element) -> Result<CornerAlgebra> {
    check_effect(q)?;
    peirce_corner(alg, &spectral::ceiling_abs(q, EFFECT_ZERO)?)
}

/// `π_q = r ∘ Q_⌊q⌋ : E → {E|q}`.
pub fn standard_corner(alg: &Algebra, q: &Element) -> Result<PositiveMap> {
    corner_map(&corner_of_floor(alg, q)?)
}

/// `r ∘ Q_p` for the idempotent `p` of a corner.
pub fn corner_map(c: &CornerAlgebra) -> Result<PositiveMap> {
    let op = c.projection.compose(&c.idempotent.q_op())?;
    Ok(PositiveMap::constructed(op, "standard corner"))
}

/// `ξ_q = Q_√q ∘ ι : E_q → E`.
pub fn standard_filter(alg: &Algebra, q: &Element) -> Result<PositiveMap> {
    let c = corner_of_ceiling(alg, q)?;
    let root = spectral::apply_function_abs(q, SpectralFn::Sqrt, EFFECT_ZERO)?;
    let op = root.q_op().compose(&c.embedding)?;
    Ok(PositiveMap::constructed(op, "standard filter"))
}

/// The unique `ḡ` with `ḡ ∘ π_q = g`, given `g(q) = g(1)`.
pub fn mediate_corner(g: &PositiveMap, q: &Element) -> Result<PositiveMap> {
    mediate_corner_tol(g, q, DEFAULT_MEDIATE_TOL)
}

pub fn mediate_corner_tol(g: &PositiveMap, q: &Element, tol: f64) -> Result<PositiveMap> {
    g.domain().ensure_same(q.algebra())?;
    let g1 = g.unit_image();
    let gap = g.apply_unchecked(q).dist(&g1);
    if gap > tol * (1.0 + g1.norm2()) {
        return Err(EjaError::Domain(format!("corner mediator needs g(q) = g(1), but |g(q) - g(1)| = {gap:e}")));
    }
    let c = corner_of_floor(g.domain(), q)?;
    g.compose(&PositiveMap::constructed(c.embedding.clone(), "corner inclusion"))
}

/// The unique `f̄` with `ξ_q ∘ f̄ = f`, given `f(1) ≤ q`.
pub fn mediate_filter(f: &PositiveMap, q: &Element) -> Result<PositiveMap> {
    mediate_filter_tol(f, q, DEFAULT_MEDIATE_TOL)
}

pub fn mediate_filter_tol(f: &PositiveMap, q: &Element, tol: f64) -> Result<PositiveMap> {
    f.codomain().ensure_same(q.algebra())?;
    let slack = q - &f.unit_image();
    let low = spectral::min_eigenvalue(&slack)?;
    if low < -tol * (1.0 + q.norm2()) {
        return Err(EjaError::Domain(format!("filter mediator needs f(1) <= q, but q - f(1) has eigenvalue {low:e}")));
    }
    let c = corner_of_ceiling(f.codomain(), q)?;
    let root_inv = spectral::apply_function_abs(q, SpectralFn::PseudoInverseSqrt, EFFECT_ZERO)?;
    let op = c.projection.compose(&root_inv.q_op())?.compose(f.op())?;
    let back = PositiveMap::constructed(op, "filter mediator");
    Ok(back)
}
