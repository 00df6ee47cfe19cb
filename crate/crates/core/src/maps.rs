//! Positive linear maps between algebras.
//!
//! Positivity of an arbitrary matrix is not decided. A map either carries a
//! provenance chain built only from positivity-preserving steps, or a
//! sampled certificate recording how many random positive probes it passed.

use std::fmt;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraDescriptor, Element};
use crate::error::{EjaError, Result};
use crate::linop::LinOp;
use crate::random;
use crate::spectral;

const UNIT_TOL: f64 = 1e-8;
const SAMPLE_SEED: u64 = 0x9e37_79b9_7f4a_7c15;
pub const DEFAULT_POSITIVITY_TRIALS: usize = 500;

/// Why a map is believed to be positive.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Built from quadratic representations, corners, filters, order
    /// isomorphisms, nonnegative combinations and compositions. The strings
    /// name the steps, innermost last.
    Constructed(Vec<String>),
    /// Checked on `trials` random positive elements and an atomic frame;
    /// heuristic.
    Sampled { trials: usize, tol: f64 },
}

impl Certificate {
    fn label(&self) -> &'static str {
        match self {
            Certificate::Constructed(_) => "constructed",
            Certificate::Sampled { .. } => "sampled",
        }
    }
}

/// A positive linear map with cached unitality flags.
#[derive(Clone)]
pub struct PositiveMap {
    op: LinOp,
    certificate: Certificate,
    subunital: bool,
    unital: bool,
}

impl PositiveMap {
    pub(crate) fn constructed(op: LinOp, step: impl Into<String>) -> PositiveMap {
        PositiveMap::with_certificate(op, Certificate::Constructed(vec![step.into()]))
    }

    fn with_certificate(op: LinOp, certificate: Certificate) -> PositiveMap {
        let f1 = op.apply_unchecked(&op.domain().unit());
        let one = op.codomain().unit();
        let unital = f1.dist(&one) <= UNIT_TOL * (1.0 + one.norm2());
        let subunital = unital || spectral::is_effect(&f1, UNIT_TOL * (1.0 + f1.norm2()));
        PositiveMap { op, certificate, subunital, unital }
    }

    pub fn identity(alg: &Algebra) -> PositiveMap {
        PositiveMap::constructed(LinOp::identity(alg), "identity")
    }

    pub fn zero(domain: &Algebra, codomain: &Algebra) -> PositiveMap {
        PositiveMap::constructed(LinOp::zero(domain, codomain), "zero")
    }

    /// `Q_a`, positive for every `a`.
    pub fn quadratic(a: &Element) -> PositiveMap {
        PositiveMap::constructed(a.q_op(), "Q_a")
    }

    /// Accept a user-supplied operator after checking positivity on `trials`
    /// random positive elements and on every atom of a random atomic frame.
    pub fn sampled(op: LinOp, trials: usize, tol: f64, seed: u64) -> Result<PositiveMap> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dom = op.domain().clone();
        let mut probes: Vec<Element> = if dom.dim() > 0 { random::atomic_frame(&dom, &mut rng)? } else { vec![] };
        probes.push(dom.unit());
        for _ in 0..trials {
            probes.push(random::positive(&dom, &mut rng));
        }
        for x in &probes {
            let y = op.apply_unchecked(x);
            let scale = 1.0 + y.norm2();
            if !spectral::is_positive(&y, tol * scale) {
                return Err(EjaError::Domain(format!(
                    "map sends a positive element to one with smallest eigenvalue {:e}",
                    spectral::min_eigenvalue(&y).unwrap_or(f64::NAN)
                )));
            }
        }
        Ok(PositiveMap::with_certificate(op, Certificate::Sampled { trials, tol }))
    }

    pub fn op(&self) -> &LinOp {
        &self.op
    }

    pub fn domain(&self) -> &Algebra {
        self.op.domain()
    }

    pub fn codomain(&self) -> &Algebra {
        self.op.codomain()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        self.op.matrix()
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn is_subunital(&self) -> bool {
        self.subunital
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.op.apply(x)
    }

    pub(crate) fn apply_unchecked(&self, x: &Element) -> Element {
        self.op.apply_unchecked(x)
    }

    /// `f(1)`.
    pub fn unit_image(&self) -> Element {
        self.op.apply_unchecked(&self.domain().unit())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PositiveMap) -> Result<PositiveMap> {
        let op = self.op.compose(&other.op)?;
        let certificate = match (&self.certificate, &other.certificate) {
            (Certificate::Constructed(a), Certificate::Constructed(b)) => {
                Certificate::Constructed(a.iter().chain(b).cloned().collect())
            }
            (Certificate::Sampled { trials: t1, tol: e1 }, Certificate::Sampled { trials: t2, tol: e2 }) => {
                Certificate::Sampled { trials: (*t1).min(*t2), tol: e1.max(*e2) }
            }
            (Certificate::Sampled { trials, tol }, _) | (_, Certificate::Sampled { trials, tol }) => {
                Certificate::Sampled { trials: *trials, tol: *tol }
            }
        };
        Ok(PositiveMap::with_certificate(op, certificate))
    }

    /// `s · self` for `s ≥ 0`.
    pub fn scale(&self, s: f64) -> Result<PositiveMap> {
        if !(s >= 0.0) {
            return Err(EjaError::Domain(format!("positive maps only scale by s >= 0, got {s}")));
        }
        let mut cert = self.certificate.clone();
        if let Certificate::Constructed(chain) = &mut cert {
            chain.insert(0, format!("scale {s}"));
        }
        Ok(PositiveMap::with_certificate(self.op.scale(s), cert))
    }

    /// `self + other`.
    pub fn sum(&self, other: &PositiveMap) -> Result<PositiveMap> {
        let op = self.op.add(&other.op)?;
        let cert = match (&self.certificate, &other.certificate) {
            (Certificate::Constructed(a), Certificate::Constructed(b)) => {
                let mut chain = vec!["sum".to_string()];
                chain.extend(a.iter().cloned());
                chain.extend(b.iter().cloned());
                Certificate::Constructed(chain)
            }
            (Certificate::Sampled { trials, tol }, _) | (_, Certificate::Sampled { trials, tol }) => {
                Certificate::Sampled { trials: *trials, tol: *tol }
            }
        };
        Ok(PositiveMap::with_certificate(op, cert))
    }

    /// `‖self − other‖` in operator norm.
    pub fn distance(&self, other: &PositiveMap) -> Result<f64> {
        self.op.distance(&other.op)
    }

    /// Tag the map as a verified order isomorphism or other positive step.
    pub(crate) fn relabel(op: LinOp, step: &str) -> PositiveMap {
        PositiveMap::constructed(op, step)
    }

    pub fn descriptor(&self) -> MapDescriptor {
        MapDescriptor {
            domain: self.domain().descriptor(),
            codomain: self.codomain().descriptor(),
            matrix: self.matrix().row_iter().map(|r| r.iter().copied().collect()).collect(),
            certificate: self.certificate.label().to_string(),
        }
    }

    /// Rebuild a map from JSON. The matrix is always re-checked by sampling,
    /// whatever certificate the document claims.
    pub fn from_descriptor(desc: &MapDescriptor) -> Result<PositiveMap> {
        let domain = Algebra::from_descriptor(&desc.domain)?;
        let codomain = Algebra::from_descriptor(&desc.codomain)?;
        if !matches!(desc.certificate.as_str(), "constructed" | "sampled") {
            return Err(EjaError::Structural(format!("unknown certificate {:?}", desc.certificate)));
        }
        let rows = desc.matrix.len();
        let cols = desc.matrix.first().map_or(domain.dim(), Vec::len);
        if desc.matrix.iter().any(|r| r.len() != cols) {
            return Err(EjaError::Structural("matrix rows have unequal lengths".into()));
        }
        let m = DMatrix::from_fn(rows, cols, |i, j| desc.matrix[i][j]);
        let op = LinOp::new(domain, codomain, m)?;
        PositiveMap::sampled(op, DEFAULT_POSITIVITY_TRIALS, 1e-9, SAMPLE_SEED)
    }
}

impl fmt::Debug for PositiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PositiveMap")
            .field("op", &self.op)
            .field("certificate", &self.certificate)
            .field("subunital", &self.subunital)
            .field("unital", &self.unital)
            .finish()
    }
}

/// JSON form: `{"domain", "codomain", "matrix" (row-major), "certificate"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapDescriptor {
    pub domain: AlgebraDescriptor,
    pub codomain: AlgebraDescriptor,
    pub matrix: Vec<Vec<f64>>,
    pub certificate: String,
}

/// Transpose. Positivity survives by self-duality; unitality is recomputed.
pub fn adjoint(f: &PositiveMap) -> PositiveMap {
    let cert = match &f.certificate {
        Certificate::Constructed(chain) => {
            let mut c = vec!["adjoint".to_string()];
            c.extend(chain.iter().cloned());
            Certificate::Constructed(c)
        }
        other => other.clone(),
    };
    PositiveMap::with_certificate(f.op.adjoint(), cert)
}

impl PositiveMap {
    pub fn adjoint(&self) -> PositiveMap {
        adjoint(self)
    }
}

/// Least idempotent `p` with `f(p) = f(1)`, computed as `⌈f*(1)⌉`.
pub fn image(f: &PositiveMap) -> Result<Element> {
    let unit = f.codomain().unit();
    let dual_unit = f.op.adjoint().apply_unchecked(&unit);
    // round-off in f*(1) scales with ‖f‖, not with ‖f*(1)‖
    spectral::ceiling_abs(&dual_unit, spectral::DEFAULT_EIG_TOL * f.op.matrix().norm() * unit.norm2())
}

/// `f(a) = 0 ⟹ a = 0` on positives, i.e. the image is the unit.
pub fn is_faithful(f: &PositiveMap) -> bool {
    match image(f) {
        Ok(p) => p.dist(&f.domain().unit()) <= spectral::DEFAULT_IDEM_TOL * (1.0 + p.norm2()),
        Err(_) => false,
    }
}

/// Invertible, unital, and both `f` and `f⁻¹` positive on `trials` random
/// positive elements and a random atomic frame. Uses a fixed seed.
pub fn is_unital_order_iso(f: &PositiveMap, trials: usize) -> bool {
    is_unital_order_iso_seeded(f, trials, SAMPLE_SEED)
}

pub fn is_unital_order_iso_seeded(f: &PositiveMap, trials: usize, seed: u64) -> bool {
    order_iso_failure(f, trials, seed).is_none()
}

/// Reason an order-isomorphism check fails, if it does.
pub fn order_iso_failure(f: &PositiveMap, trials: usize, seed: u64) -> Option<String> {
    let dom = f.domain();
    let cod = f.codomain();
    if dom.dim() != cod.dim() {
        return Some(format!("dimensions differ: {} vs {}", dom.dim(), cod.dim()));
    }
    if dom.dim() == 0 {
        return None;
    }
    let m = f.matrix();
    let sv = m.clone().singular_values();
    let (smin, smax) = (sv.min(), sv.max());
    if !(smin > 1e-10 * smax.max(1.0)) {
        return Some(format!("not invertible: singular values in [{smin:e}, {smax:e}]"));
    }
    let one = cod.unit();
    let d1 = f.unit_image().dist(&one);
    if d1 > UNIT_TOL * (1.0 + one.norm2()) {
        return Some(format!("not unital: |f(1) - 1| = {d1:e}"));
    }
    let Some(inv) = m.clone().try_inverse() else {
        return Some("matrix inversion failed".into());
    };
    let inv = LinOp::new(cod.clone(), dom.clone(), inv).expect("inverse has transposed shape");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (op, alg) in [(f.op(), dom), (&inv, cod)] {
        let mut probes = match random::atomic_frame(alg, &mut rng) {
            Ok(fr) => fr,
            Err(e) => return Some(format!("could not sample a frame: {e}")),
        };
        for _ in 0..trials {
            probes.push(random::positive(alg, &mut rng));
        }
        for x in probes {
            let y = op.apply_unchecked(&x);
            let tol = 1e-8 * (1.0 + y.norm2());
            if !spectral::is_positive(&y, tol) {
                return Some("a positive element maps outside the cone".into());
            }
        }
    }
    None
}

/// `max ‖f(a*b) − f(a)*f(b)‖₂` over `trials` Gaussian pairs.
pub fn check_jordan_homomorphism(f: &PositiveMap, trials: usize) -> f64 {
    check_jordan_homomorphism_seeded(f, trials, SAMPLE_SEED)
}

pub fn check_jordan_homomorphism_seeded(f: &PositiveMap, trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let a = random::gaussian(f.domain(), &mut rng);
        let b = random::gaussian(f.domain(), &mut rng);
        let lhs = f.apply_unchecked(&(&a * &b));
        let rhs = &f.apply_unchecked(&a) * &f.apply_unchecked(&b);
        worst = worst.max(lhs.dist(&rhs));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FactorSpec;

    #[test]
    fn identity_is_faithful_unital_iso() {
        let alg = Algebra::single(FactorSpec::ComplexHerm { n: 2 }).unwrap();
        let id = PositiveMap::identity(&alg);
        assert!(id.is_unital() && id.is_subunital());
        assert!(image(&id).unwrap().dist(&alg.unit()) < 1e-12);
        assert!(is_faithful(&id));
        assert!(is_unital_order_iso(&id, 20));
        assert!(check_jordan_homomorphism(&id, 20) <= 1e-12);
    }

    #[test]
    fn q_of_idempotent_is_not_faithful() {
        let alg = Algebra::single(FactorSpec::RealSym { n: 3 }).unwrap();
        let p = alg.diagonal(&[1.0, 0.0, 1.0]).unwrap();
        let qp = PositiveMap::quadratic(&p);
        assert!(image(&qp).unwrap().dist(&p) < 1e-12);
        assert!(!is_faithful(&qp));
        assert!(!is_unital_order_iso(&qp, 10));
        let a = alg.diagonal(&[2.0, -1.0, 0.5]).unwrap();
        assert!(is_faithful(&PositiveMap::quadratic(&a)));
    }

    #[test]
    fn adjoint_of_quadratic_is_itself() {
        let alg = Algebra::single(FactorSpec::QuatHerm { n: 2 }).unwrap();
        let a = alg.element((0..6).map(|i| (i as f64).cos()).collect()).unwrap();
        let q = PositiveMap::quadratic(&a);
        assert!(adjoint(&q).distance(&q).unwrap() < 1e-12);
        assert!(adjoint(&adjoint(&q)).distance(&q).unwrap() == 0.0);
    }

    #[test]
    fn spin_rotation_is_an_order_automorphism() {
        let alg = Algebra::single(FactorSpec::Spin { d: 2 }).unwrap();
        let (c, s) = (0.6f64, 0.8f64);
        let m = DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]);
        let rot = PositiveMap::sampled(LinOp::new(alg.clone(), alg.clone(), m).unwrap(), 100, 1e-10, 1).unwrap();
        assert!(is_unital_order_iso(&rot, 50));
        assert!(check_jordan_homomorphism(&rot, 50) <= 1e-9);
    }

    #[test]
    fn sampling_rejects_a_non_positive_map() {
        let alg = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
        let op = LinOp::identity(&alg).scale(-1.0);
        assert!(matches!(PositiveMap::sampled(op, 10, 1e-10, 0), Err(EjaError::Domain(_))));
    }

    #[test]
    fn descriptor_round_trip() {
        let alg = Algebra::real_diagonal(3).unwrap();
        let p = alg.diagonal(&[1.0, 0.0, 1.0]).unwrap();
        let f = PositiveMap::quadratic(&p);
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        assert!(json.contains("\"certificate\":\"constructed\""));
        let back = PositiveMap::from_descriptor(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.matrix(), f.matrix());
        assert!(matches!(back.certificate(), Certificate::Sampled { .. }));
    }

    #[test]
    fn compose_concatenates_provenance() {
        let alg = Algebra::real_diagonal(2).unwrap();
        let a = PositiveMap::quadratic(&alg.unit());
        let c = a.compose(&PositiveMap::identity(&alg)).unwrap();
        assert_eq!(c.certificate(), &Certificate::Constructed(vec!["Q_a".into(), "identity".into()]));
        assert!(a.scale(-1.0).is_err());
    }
}
