//! Spectral decomposition, atomic refinement, functional calculus,
//! ceilings and floors, and the order predicates.
//!
//! For `a = Σ λ_i p_i` the unit is `Σ p_i` and each `p_i` is an eigenvector
//! of `L_a` with eigenvalue `λ_i`, while the remaining eigenvectors of `L_a`
//! (Peirce ½-spaces, eigenvalues `(λ_i + λ_j)/2`) are orthogonal to the
//! unit. So the projection of the unit onto the `λ`-eigenspace of `L_a` is
//! exactly the spectral idempotent for `λ`, and no eigenvalue gap is ever
//! divided by.

use nalgebra::{DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::error::{EjaError, Result};

/// Default relative threshold below which a spectral value counts as zero.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;
/// Default residual bound for `‖p² − p‖₂` in the idempotent predicates.
pub const DEFAULT_IDEM_TOL: f64 = 1e-8;

// Inputs this close to an idempotent are returned as-is by ceiling and floor,
// so that corners built from the same idempotent are bit-identical.
const IDEMPOTENT_PASSTHROUGH: f64 = 1e-10;
const MAX_PROBES: usize = 16;

/// `1e-8 · (1 + ‖a‖₂)`.
pub fn default_cluster_tol(a: &Element) -> f64 {
    1e-8 * (1.0 + a.norm2())
}

/// Eigenvalue/idempotent pairs with distinct eigenvalues (or, after
/// [`refine_atomic`], atomic idempotents with possibly repeated eigenvalues),
/// sorted by eigenvalue.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    algebra: Algebra,
    pairs: Vec<(f64, Element)>,
    atomic: bool,
}

/// Largest residuals of the defining identities of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralResiduals {
    pub reconstruction: f64,
    pub idempotency: f64,
    pub orthogonality: f64,
    pub completeness: f64,
}

impl SpectralResiduals {
    pub fn max(&self) -> f64 {
        self.reconstruction.max(self.idempotency).max(self.orthogonality).max(self.completeness)
    }
}

impl SpectralDecomposition {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn pairs(&self) -> &[(f64, Element)] {
        &self.pairs
    }

    pub fn is_atomic(&self) -> bool {
        self.atomic
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|(l, _)| *l).collect()
    }

    pub fn idempotents(&self) -> impl Iterator<Item = &Element> {
        self.pairs.iter().map(|(_, p)| p)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.pairs.iter().map(|(l, _)| *l).fold(f64::INFINITY, f64::min)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.pairs.iter().map(|(l, _)| *l).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `Σ λ_i p_i`.
    pub fn reconstruct(&self) -> Element {
        self.map(|l| l)
    }

    /// `Σ f(λ_i) p_i`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Element {
        let mut out = self.algebra.zero();
        for (l, p) in &self.pairs {
            let c = f(*l);
            if c != 0.0 {
                out += &p.scale(c);
            }
        }
        out
    }

    /// Residuals of reconstruction against `a`, idempotency, pairwise
    /// orthogonality and `Σ p_i = 1`.
    pub fn residuals(&self, a: &Element) -> SpectralResiduals {
        let reconstruction = self.reconstruct().dist(a);
        let mut idempotency: f64 = 0.0;
        let mut orthogonality: f64 = 0.0;
        let mut sum = self.algebra.zero();
        for (i, (_, p)) in self.pairs.iter().enumerate() {
            idempotency = idempotency.max(p.square().dist(p));
            for (_, q) in &self.pairs[i + 1..] {
                orthogonality = orthogonality.max((p * q).norm2());
            }
            sum += p;
        }
        let completeness = sum.dist(&self.algebra.unit());
        SpectralResiduals { reconstruction, idempotency, orthogonality, completeness }
    }
}

/// Decompose `a` into distinct eigenvalues and orthogonal spectral
/// idempotents. Eigenvalues within `cluster_tol` of their neighbour are merged.
pub fn spectral_decompose(a: &Element, cluster_tol: f64) -> Result<SpectralDecomposition> {
    if !(cluster_tol > 0.0) {
        return Err(EjaError::Domain(format!("cluster tolerance must be positive, got {cluster_tol}")));
    }
    if !a.is_finite() {
        return Err(EjaError::Numerical("element has non-finite coordinates".into()));
    }
    let unit = a.algebra().unit();
    let pairs = decompose_from(a, &unit, cluster_tol)?;
    Ok(SpectralDecomposition { algebra: a.algebra().clone(), pairs, atomic: false })
}

impl Element {
    /// Spectral decomposition with the default clustering tolerance.
    pub fn spectral(&self) -> Result<SpectralDecomposition> {
        spectral_decompose(self, default_cluster_tol(self))
    }
}

/// Decomposition of `a` inside the Peirce corner of the idempotent `e`,
/// assuming `a = Q_e a`. The idempotents sum to `e`.
pub(crate) fn decompose_from(a: &Element, e: &Element, cluster_tol: f64) -> Result<Vec<(f64, Element)>> {
    let alg = a.algebra();
    let n = alg.dim();
    if n == 0 || e.norm2() == 0.0 {
        return Ok(Vec::new());
    }
    let la = a.l_op();
    let eig = SymmetricEigen::try_new(la.matrix().clone(), f64::EPSILON, 10_000).ok_or_else(|| {
        EjaError::Numerical(format!("symmetric eigensolver did not converge on L_a for {alg}"))
    })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    // group neighbouring eigenvalues, project e onto each group's eigenspace
    let mut groups: Vec<(f64, f64, DVector<f64>)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for i in order {
        let l = eig.eigenvalues[i];
        let u = eig.eigenvectors.column(i);
        let w = u.dot(e.coords());
        let part = u * w;
        match groups.last_mut() {
            Some((sum_l, weight, p)) if l - last <= cluster_tol => {
                *sum_l += l * w * w;
                *weight += w * w;
                *p += part;
            }
            _ => groups.push((l * w * w, w * w, part)),
        }
        last = l;
    }
    Ok(groups
        .into_iter()
        // Peirce ½-spaces are orthogonal to e; every true idempotent has ⟨p, e⟩ ≥ ½
        .filter(|(_, weight, _)| *weight > 0.25)
        .map(|(sum_l, weight, p)| {
            (sum_l / weight, alg.element_from_vector(p).expect("eigenvectors live in the algebra"))
        })
        .collect())
}

/// Number of eigenvalues of `Q_p` above ½; for an idempotent this is the
/// dimension of its Peirce 1-space.
pub fn peirce_rank(p: &Element) -> usize {
    let q = p.q_op();
    if q.matrix().is_empty() {
        return 0;
    }
    q.matrix().clone().symmetric_eigenvalues().iter().filter(|&&l| l > 0.5).count()
}

/// Split every idempotent of `d` into orthogonal atomic idempotents with the
/// same eigenvalue. Random probes come from a generator seeded with `rng_seed`.
pub fn refine_atomic(d: &SpectralDecomposition, rng_seed: u64) -> Result<SpectralDecomposition> {
    if d.atomic {
        return Ok(d.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut pairs = Vec::new();
    for (l, p) in &d.pairs {
        let mut atoms = Vec::new();
        split_atomic(p, &mut rng, &mut atoms, 0)?;
        pairs.extend(atoms.into_iter().map(|a| (*l, a)));
    }
    Ok(SpectralDecomposition { algebra: d.algebra.clone(), pairs, atomic: true })
}

fn split_atomic(p: &Element, rng: &mut ChaCha8Rng, out: &mut Vec<Element>, depth: usize) -> Result<()> {
    let rank = peirce_rank(p);
    if rank == 0 {
        return Ok(());
    }
    if rank == 1 {
        out.push(p.clone());
        return Ok(());
    }
    if depth > p.algebra().dim() {
        return Err(EjaError::Numerical("atomic refinement recursed past the algebra dimension".into()));
    }
    let qp = p.q_op();
    for _ in 0..MAX_PROBES {
        let x = crate::random::gaussian(p.algebra(), rng);
        let y = qp.apply_unchecked(&x);
        let scale = 1.0 + y.norm2();
        let parts = decompose_from(&y, p, default_cluster_tol(&y))?;
        // a probe with a tiny gap would give poorly conditioned idempotents
        let min_gap = parts.windows(2).map(|w| w[1].0 - w[0].0).fold(f64::INFINITY, f64::min);
        if parts.len() >= 2 && min_gap > 1e-4 * scale {
            for (_, q) in parts {
                split_atomic(&q, rng, out, depth + 1)?;
            }
            return Ok(());
        }
    }
    Err(EjaError::Numerical(format!(
        "no random probe split an idempotent of Peirce rank {rank} after {MAX_PROBES} tries"
    )))
}

/// Number of distinct eigenvalues of a generic element.
pub(crate) fn generic_rank(alg: &Algebra) -> usize {
    if alg.dim() == 0 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_4a4b);
    let mut best = 0;
    for _ in 0..3 {
        let x = crate::random::gaussian(alg, &mut rng);
        if let Ok(d) = x.spectral() {
            best = best.max(d.len());
        }
    }
    best
}

/// Spectral decomposition in which groups merged by the default clustering
/// tolerance are split again inside their own Peirce corner, down to the
/// rounding level of `a`. Used wherever a function of the eigenvalues or a
/// zero threshold is applied.
pub(crate) fn resolved_spectral(a: &Element) -> Result<SpectralDecomposition> {
    let d = a.spectral()?;
    let floor = 1e3 * f64::EPSILON * (1.0 + a.norm2());
    let pairs = resolve_clusters(a, d.pairs, floor, 3)?;
    Ok(SpectralDecomposition { algebra: d.algebra, pairs, atomic: false })
}

fn resolve_clusters(a: &Element, pairs: Vec<(f64, Element)>, floor: f64, depth: usize) -> Result<Vec<(f64, Element)>> {
    let mut out = Vec::with_capacity(pairs.len());
    for (l, c) in pairs {
        let r = &a.jordan_unchecked(&c) - &c.scale(l);
        if depth == 0 || r.norm2() <= floor {
            out.push((l, c));
            continue;
        }
        let sub = decompose_from(&r, &c, floor)?;
        if sub.len() <= 1 {
            out.push((l, c));
            continue;
        }
        // the eigenvectors of L_r are only resolved up to the small gaps inside
        // the cluster; compressing by Q_c removes the resulting Peirce ½ leakage
        let qc = c.q_op();
        let sub = sub.into_iter().map(|(m, p)| (l + m, qc.apply_unchecked(&p))).collect();
        out.extend(resolve_clusters(a, sub, floor, depth - 1)?);
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(out)
}

/// Functions applied eigenvalue-wise by [`apply_function`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralFn {
    Sqrt,
    PseudoInverse,
    Power(i32),
    PseudoInverseSqrt,
    Abs,
}

/// `f(a) = Σ f(λ_i) p_i` with the default zero threshold.
pub fn apply_function(a: &Element, f: SpectralFn) -> Result<Element> {
    apply_function_tol(a, f, DEFAULT_EIG_TOL)
}

/// As [`apply_function`], treating `|λ| ≤ eig_tol · ‖a‖` as zero.
pub fn apply_function_tol(a: &Element, f: SpectralFn, eig_tol: f64) -> Result<Element> {
    if fixes_idempotents(f) && near_idempotent(a) {
        return Ok(a.clone());
    }
    let d = resolved_spectral(a)?;
    let norm = d.pairs.iter().map(|(l, _)| l.abs()).fold(0.0, f64::max);
    // eigenvalues this small are rounding noise; √ would lift them to ~1e-8
    apply_with_zero(&d, f, eig_tol * norm, 8.0 * f64::EPSILON * norm)
}

/// Functional calculus with spectral values in `[-zero, zero]` treated as
/// zero, for elements such as effects whose scale is fixed in advance.
pub fn apply_function_abs(a: &Element, f: SpectralFn, zero: f64) -> Result<Element> {
    if fixes_idempotents(f) && near_idempotent(a) {
        return Ok(a.clone());
    }
    apply_with_zero(&resolved_spectral(a)?, f, zero, zero)
}

/// `f(p) = p` for idempotents. Computing it would turn round-off of size δ
/// in the spectral values into errors of size √δ.
fn fixes_idempotents(f: SpectralFn) -> bool {
    matches!(f, SpectralFn::Sqrt | SpectralFn::PseudoInverse | SpectralFn::PseudoInverseSqrt | SpectralFn::Abs)
}

/// `noise` is the cut below which `√` returns zero.
fn apply_with_zero(d: &SpectralDecomposition, f: SpectralFn, zero: f64, noise: f64) -> Result<Element> {
    let needs_positive = matches!(f, SpectralFn::Sqrt | SpectralFn::PseudoInverseSqrt);
    if needs_positive && d.min_eigenvalue() < -zero {
        return Err(EjaError::Domain(format!(
            "{f:?} needs a positive element, smallest eigenvalue is {:e}",
            d.min_eigenvalue()
        )));
    }
    if let SpectralFn::Power(n) = f {
        if n < 0 && d.pairs.iter().any(|(l, _)| l.abs() <= zero) {
            return Err(EjaError::Domain(format!("power {n} of a non-invertible element")));
        }
    }
    Ok(d.map(|l| match f {
        SpectralFn::Sqrt => {
            if l <= noise {
                0.0
            } else {
                l.sqrt()
            }
        }
        SpectralFn::PseudoInverse => {
            if l.abs() <= zero {
                0.0
            } else {
                1.0 / l
            }
        }
        SpectralFn::Power(n) => l.powi(n),
        SpectralFn::PseudoInverseSqrt => {
            if l <= zero {
                0.0
            } else {
                1.0 / l.sqrt()
            }
        }
        SpectralFn::Abs => l.abs(),
    }))
}

impl Element {
    pub fn sqrt(&self) -> Result<Element> {
        apply_function(self, SpectralFn::Sqrt)
    }

    pub fn pseudo_inverse(&self) -> Result<Element> {
        apply_function(self, SpectralFn::PseudoInverse)
    }

    /// Inverse; fails when `a` has a zero eigenvalue.
    pub fn inverse(&self) -> Result<Element> {
        apply_function(self, SpectralFn::Power(-1))
    }
}

fn near_idempotent(a: &Element) -> bool {
    a.square().dist(a) <= IDEMPOTENT_PASSTHROUGH * (1.0 + a.norm2())
}

/// Relative size of a negative spectral value that `ceiling` rejects.
pub const CEILING_NEG_TOL: f64 = 1e-9;

/// Least idempotent above the positive element `a`.
pub fn ceiling(a: &Element) -> Result<Element> {
    ceiling_tol(a, DEFAULT_EIG_TOL)
}

/// Ceiling keeping the spectral values above `eig_tol · ‖a‖`.
pub fn ceiling_tol(a: &Element, eig_tol: f64) -> Result<Element> {
    if near_idempotent(a) {
        return Ok(a.clone());
    }
    let d = resolved_spectral(a)?;
    let norm = d.pairs.iter().map(|(l, _)| l.abs()).fold(0.0, f64::max);
    ceiling_of(&d, eig_tol * norm)
}

/// Ceiling treating spectral values in `[-zero, zero]` as zero, for
/// elements computed with an absolute error of about `zero`.
pub fn ceiling_abs(a: &Element, zero: f64) -> Result<Element> {
    if near_idempotent(a) {
        return Ok(a.clone());
    }
    let d = resolved_spectral(a)?;
    ceiling_of(&d, zero)
}

fn ceiling_of(d: &SpectralDecomposition, zero: f64) -> Result<Element> {
    // values in [-zero, zero] count as zero; only clearly negative ones are rejected
    let norm = d.pairs.iter().map(|(l, _)| l.abs()).fold(0.0, f64::max);
    if d.min_eigenvalue() < -zero.max(CEILING_NEG_TOL * norm) {
        return Err(EjaError::Domain(format!(
            "ceiling needs a positive element, smallest eigenvalue is {:e}",
            d.min_eigenvalue()
        )));
    }
    Ok(d.map(|l| if l > zero { 1.0 } else { 0.0 }))
}

/// Greatest idempotent below the effect `q`, as `1 − ⌈1 − q⌉`.
pub fn floor_of_effect(q: &Element) -> Result<Element> {
    floor_tol(q, DEFAULT_EIG_TOL)
}

/// Floor with spectral values of `1 − q` in `[-zero, zero]` treated as zero.
pub fn floor_abs(q: &Element, zero: f64) -> Result<Element> {
    if near_idempotent(q) {
        return Ok(q.clone());
    }
    Ok(ceiling_abs(&q.complement(), zero)?.complement())
}

pub fn floor_tol(q: &Element, eig_tol: f64) -> Result<Element> {
    if near_idempotent(q) {
        return Ok(q.clone());
    }
    if !is_effect(q, CEILING_NEG_TOL * (1.0 + q.norm2())) {
        return Err(EjaError::Domain("floor needs an effect 0 <= q <= 1".into()));
    }
    Ok(ceiling_tol(&q.complement(), eig_tol)?.complement())
}

impl Element {
    pub fn ceiling(&self) -> Result<Element> {
        ceiling(self)
    }

    pub fn floor(&self) -> Result<Element> {
        floor_of_effect(self)
    }
}

/// `max |λ_i|`.
pub fn order_unit_norm(a: &Element) -> f64 {
    match a.spectral() {
        Ok(d) => d.pairs.iter().map(|(l, _)| l.abs()).fold(0.0, f64::max),
        // the eigenvalues of L_a are the averages (λ_i + λ_j)/2
        Err(_) => {
            let m = a.l_op().matrix().clone();
            if m.is_empty() {
                0.0
            } else {
                m.symmetric_eigenvalues().iter().fold(0.0f64, |acc, l| acc.max(l.abs()))
            }
        }
    }
}

pub fn min_eigenvalue(a: &Element) -> Result<f64> {
    Ok(a.spectral()?.min_eigenvalue())
}

pub fn is_positive(a: &Element, tol: f64) -> bool {
    if a.algebra().dim() == 0 {
        return true;
    }
    a.spectral().is_ok_and(|d| d.min_eigenvalue() >= -tol)
}

pub fn is_effect(a: &Element, tol: f64) -> bool {
    if a.algebra().dim() == 0 {
        return true;
    }
    a.spectral().is_ok_and(|d| d.min_eigenvalue() >= -tol && d.max_eigenvalue() <= 1.0 + tol)
}

pub fn is_idempotent(a: &Element, tol: f64) -> bool {
    a.square().dist(a) <= tol
}

pub fn is_atomic(p: &Element, tol: f64) -> bool {
    is_idempotent(p, tol) && peirce_rank(p) == 1
}

/// `s ≤ t` for idempotents, tested as `‖Q_t s − s‖₂ ≤ tol`.
pub fn idempotent_leq(s: &Element, t: &Element, tol: f64) -> bool {
    t.q_op().apply_unchecked(s).dist(s) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FactorSpec;

    fn sym3() -> Algebra {
        Algebra::single(FactorSpec::RealSym { n: 3 }).unwrap()
    }

    #[test]
    fn diagonal_with_repeated_eigenvalue() {
        let alg = sym3();
        let a = alg.diagonal(&[3.0, 3.0, 5.0]).unwrap();
        let d = a.spectral().unwrap();
        assert_eq!(d.len(), 2);
        assert!((d.pairs()[0].0 - 3.0).abs() < 1e-12);
        assert!(d.pairs()[0].1.dist(&alg.diagonal(&[1.0, 1.0, 0.0]).unwrap()) < 1e-12);
        assert!((d.pairs()[1].0 - 5.0).abs() < 1e-12);
        assert!(d.pairs()[1].1.dist(&alg.diagonal(&[0.0, 0.0, 1.0]).unwrap()) < 1e-12);
    }

    #[test]
    fn refine_splits_the_eigenplane() {
        let alg = sym3();
        let a = alg.diagonal(&[3.0, 3.0, 5.0]).unwrap();
        let d = refine_atomic(&a.spectral().unwrap(), 11).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.is_atomic());
        assert_eq!(d.eigenvalues().iter().filter(|&&l| (l - 3.0).abs() < 1e-10).count(), 2);
        for p in d.idempotents() {
            assert_eq!(peirce_rank(p), 1);
        }
        assert!(d.residuals(&a).max() < 1e-10);
    }

    #[test]
    fn spin_closed_form() {
        let alg = Algebra::single(FactorSpec::Spin { d: 3 }).unwrap();
        let x = alg.element(vec![3.0, 0.0, 4.0, 1.0]).unwrap();
        let d = x.spectral().unwrap();
        assert_eq!(d.eigenvalues().len(), 2);
        assert!((d.pairs()[0].0 + 4.0).abs() < 1e-12);
        assert!((d.pairs()[1].0 - 6.0).abs() < 1e-12);
        let plus = alg.element(vec![0.3, 0.0, 0.4, 0.5]).unwrap();
        assert!(d.pairs()[1].1.dist(&plus) < 1e-12);
    }

    #[test]
    fn spin_unit_refines_to_two_atoms() {
        let alg = Algebra::single(FactorSpec::Spin { d: 4 }).unwrap();
        let d = refine_atomic(&alg.unit().spectral().unwrap(), 3).unwrap();
        assert_eq!(d.len(), 2);
        for p in d.idempotents() {
            // ½(±u, 1) with ‖u‖ = 1
            let c = p.coords();
            assert!((c[4] - 0.5).abs() < 1e-12);
            assert!((c.rows(0, 4).norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn idempotent_decomposes_into_itself_and_complement() {
        let alg = sym3();
        let p = alg.diagonal(&[1.0, 0.0, 1.0]).unwrap();
        let d = p.spectral().unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.pairs()[1].1.dist(&p) < 1e-12);
        assert!(d.pairs()[0].1.dist(&p.complement()) < 1e-12);
    }

    #[test]
    fn functional_calculus_examples() {
        let alg = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
        let a = alg.diagonal(&[4.0, 9.0]).unwrap();
        assert!(a.sqrt().unwrap().dist(&alg.diagonal(&[2.0, 3.0]).unwrap()) < 1e-12);
        let neg = alg.diagonal(&[-1.0, 1.0]).unwrap();
        assert!(matches!(neg.sqrt(), Err(EjaError::Domain(_))));
        assert!((order_unit_norm(&alg.diagonal(&[-2.0, 1.0]).unwrap()) - 2.0).abs() < 1e-12);
        let p = alg.diagonal(&[1.0, 0.0]).unwrap();
        assert!(p.sqrt().unwrap().dist(&p) < 1e-12);
        assert!(p.pseudo_inverse().unwrap().dist(&p) < 1e-12);
        assert!(p.inverse().is_err());
    }

    #[test]
    fn ceiling_and_floor_examples() {
        let alg = sym3();
        assert_eq!(ceiling(&alg.zero()).unwrap(), alg.zero());
        assert_eq!(ceiling(&alg.unit()).unwrap(), alg.unit());
        let a = alg.diagonal(&[0.5, 0.0, 0.3]).unwrap();
        assert!(ceiling(&a).unwrap().dist(&alg.diagonal(&[1.0, 0.0, 1.0]).unwrap()) < 1e-12);
        let q = alg.diagonal(&[1.0, 0.7, 0.0]).unwrap();
        assert!(floor_of_effect(&q).unwrap().dist(&alg.diagonal(&[1.0, 0.0, 0.0]).unwrap()) < 1e-12);
        assert!(floor_of_effect(&alg.diagonal(&[2.0, 0.0, 0.0]).unwrap()).is_err());
    }

    #[test]
    fn atomicity_by_peirce_rank() {
        let alg = sym3();
        assert!(!is_atomic(&alg.diagonal(&[1.0, 1.0, 0.0]).unwrap(), 1e-10));
        assert!(is_atomic(&alg.diagonal(&[1.0, 0.0, 0.0]).unwrap(), 1e-10));
        assert!(!is_atomic(&alg.diagonal(&[0.5, 0.0, 0.0]).unwrap(), 1e-10));
    }

    #[test]
    fn spin_positivity_is_the_light_cone() {
        let alg = Algebra::single(FactorSpec::Spin { d: 2 }).unwrap();
        assert!(is_positive(&alg.element(vec![3.0, 4.0, 5.0]).unwrap(), 1e-12));
        assert!(!is_positive(&alg.element(vec![3.0, 4.0, 4.9]).unwrap(), 1e-12));
    }

    #[test]
    fn bad_cluster_tolerance_is_rejected() {
        let alg = sym3();
        assert!(spectral_decompose(&alg.unit(), 0.0).is_err());
    }
}
