//! Polar decomposition of `Q_q Q_p` for positive `p`, `q`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element};
use crate::error::{EjaError, Result};
use crate::linop::LinOp;
use crate::precise::{self, Dd, Structure};
use crate::spectral;

/// Residuals of the five identities satisfied by the partial isometry,
/// each as an operator-norm (or, for the two unit images, Euclidean) distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarClaims {
    /// `‖Q_q Q_p − Φ Q_{√(Q_p q²)}‖`.
    pub factorization: f64,
    /// `‖Φ(1) − ⌈Q_q p⌉‖₂`.
    pub phi_unit: f64,
    /// `‖Φ*(1) − ⌈Q_p q⌉‖₂`.
    pub phi_adjoint_unit: f64,
    /// `‖Φ*Φ − Q_{⌈Q_p q⌉}‖`.
    pub phi_star_phi: f64,
    /// `‖ΦΦ* − Q_{⌈Q_q p⌉}‖`.
    pub phi_phi_star: f64,
    /// `1 + ‖Q_q‖·‖Q_p‖`, the natural size of the factorization residual.
    pub scale: f64,
}

impl PolarClaims {
    pub fn max(&self) -> f64 {
        self.factorization
            .max(self.phi_unit)
            .max(self.phi_adjoint_unit)
            .max(self.phi_star_phi)
            .max(self.phi_phi_star)
    }

    /// Largest residual after dividing the factorization residual by `scale`.
    pub fn max_scaled(&self) -> f64 {
        (self.factorization / self.scale)
            .max(self.phi_unit)
            .max(self.phi_adjoint_unit)
            .max(self.phi_star_phi)
            .max(self.phi_phi_star)
    }
}

#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    pub phi: LinOp,
    pub claims: PolarClaims,
}

/// `Φ = Q_q Q_p Q_{(Q_p q²)^{-1/2}}` with pseudo-inverse square root, and
/// the residuals of its defining identities.
///
/// The small eigenvalues of `Q_p q²` carry relative error proportional to its
/// condition number, which is the square of that of `Q_q Q_p`'s singular
/// values, so `Φ` is assembled in double-double and rounded once. Spectral
/// values of `Q_p q²` below `DEFAULT_EIG_TOL²` of the largest count as zero,
/// and the two reference ceilings are cut at the same rank.
pub fn polar_decompose(p: &Element, q: &Element) -> Result<PolarDecomposition> {
    p.algebra().ensure_same(q.algebra())?;
    for (name, x) in [("p", p), ("q", q)] {
        if !spectral::is_positive(x, 1e-8 * (1.0 + x.norm2())) {
            return Err(EjaError::Domain(format!("polar decomposition needs {name} positive")));
        }
    }
    let alg = p.algebra();
    let s = alg.structure();
    let pd = precise::to_dd(p.coords());
    let qd = precise::to_dd(q.coords());
    let qp_dd = s.q_dd(&pd);
    let qq_dd = s.q_dd(&qd);
    let b = qp_dd.mul_vec(&s.product_dd(&qd, &qd));
    let pairs = s.spectral_dd(&b);
    let top = pairs.iter().map(|(l, _)| l.hi()).fold(0.0, f64::max);
    let zero = spectral::DEFAULT_EIG_TOL.powi(2) * top;
    let mut root = vec![Dd::from(0.0); alg.dim()];
    let mut inv_root = root.clone();
    let mut support = root.clone();
    for (l, c) in &pairs {
        if l.hi() <= zero {
            continue;
        }
        let r = l.sqrt();
        let ir = r.recip();
        for i in 0..c.len() {
            root[i] += r * c[i];
            inv_root[i] += ir * c[i];
            support[i] += c[i];
        }
    }
    let phi = qq_dd.mul(&qp_dd).mul(&s.q_dd(&inv_root)).to_f64();
    let phi = LinOp::new(alg.clone(), alg.clone(), phi)?;
    let phi_star = phi.adjoint();
    let root = alg.element_from_vector(precise::to_f64(&root))?;
    let support = alg.element_from_vector(precise::to_f64(&support))?;

    let corner_dim = spectral::peirce_rank(&support);
    let left = ceiling_of_dim(s, &qq_dd.mul_vec(&pd), corner_dim, alg)?;
    let right = ceiling_of_dim(s, &qp_dd.mul_vec(&qd), corner_dim, alg)?;

    let qp = p.q_op();
    let qq = q.q_op();
    let qq_qp = qq.compose(&qp)?;
    let one = alg.unit();
    let claims = PolarClaims {
        factorization: qq_qp.distance(&phi.compose(&root.q_op())?)?,
        phi_unit: phi.apply_unchecked(&one).dist(&left),
        phi_adjoint_unit: phi_star.apply_unchecked(&one).dist(&right),
        phi_star_phi: phi_star.compose(&phi)?.distance(&right.q_op())?,
        phi_phi_star: phi.compose(&phi_star)?.distance(&left.q_op())?,
        scale: 1.0 + qq.op_norm() * qp.op_norm(),
    };
    Ok(PolarDecomposition { phi, claims })
}

// Sum of the spectral idempotents of `a`, largest eigenvalue first, until
// the Peirce 1-space of the sum has dimension `dim`.
fn ceiling_of_dim(s: &Structure, a: &[Dd], dim: usize, alg: &Algebra) -> Result<Element> {
    let mut acc = alg.zero();
    if dim == 0 {
        return Ok(acc);
    }
    let mut pairs = s.spectral_dd(a);
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite eigenvalues"));
    for (_, c) in &pairs {
        acc += &alg.element_from_vector(precise::to_f64(c))?;
        let d = spectral::peirce_rank(&acc);
        if d >= dim {
            if d > dim {
                return Err(EjaError::Numerical(format!("no spectral ceiling with a corner of dimension {dim}")));
            }
            break;
        }
    }
    Ok(acc)
}
