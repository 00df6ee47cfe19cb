//! Dense linear operators between algebras, and the operators `L_a`, `Q_a`.

use std::fmt;

use nalgebra::DMatrix;

use crate::algebra::{Algebra, Element};
use crate::error::{EjaError, Result};

/// A linear map `domain → codomain`, stored as a `codomain.dim × domain.dim`
/// matrix in the canonical orthonormal bases.
#[derive(Clone, PartialEq)]
pub struct LinOp {
    domain: Algebra,
    codomain: Algebra,
    matrix: DMatrix<f64>,
}

impl LinOp {
    pub fn new(domain: Algebra, codomain: Algebra, matrix: DMatrix<f64>) -> Result<LinOp> {
        if matrix.nrows() != codomain.dim() || matrix.ncols() != domain.dim() {
            return Err(EjaError::Structural(format!(
                "matrix is {}x{}, expected {}x{} for {domain} -> {codomain}",
                matrix.nrows(),
                matrix.ncols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(LinOp { domain, codomain, matrix })
    }

    pub fn identity(alg: &Algebra) -> LinOp {
        LinOp { domain: alg.clone(), codomain: alg.clone(), matrix: DMatrix::identity(alg.dim(), alg.dim()) }
    }

    pub fn zero(domain: &Algebra, codomain: &Algebra) -> LinOp {
        LinOp {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: DMatrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    pub fn domain(&self) -> &Algebra {
        &self.domain
    }

    pub fn codomain(&self) -> &Algebra {
        &self.codomain
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn is_endo(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.domain.ensure_same(x.algebra())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Element) -> Element {
        self.codomain
            .element_from_vector(&self.matrix * x.coords())
            .expect("matrix rows match codomain dimension")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinOp) -> Result<LinOp> {
        self.domain.ensure_same(&other.codomain)?;
        Ok(LinOp {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Transpose; the bases are orthonormal.
    pub fn adjoint(&self) -> LinOp {
        LinOp { domain: self.codomain.clone(), codomain: self.domain.clone(), matrix: self.matrix.transpose() }
    }

    pub fn add(&self, other: &LinOp) -> Result<LinOp> {
        self.domain.ensure_same(&other.domain)?;
        self.codomain.ensure_same(&other.codomain)?;
        Ok(LinOp { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn sub(&self, other: &LinOp) -> Result<LinOp> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> LinOp {
        LinOp { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix: &self.matrix * s }
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }

    /// Largest singular value, as the root of the top eigenvalue of the
    /// smaller Gram matrix. nalgebra's SVD loses accuracy on the heavily
    /// repeated singular values of quadratic representations.
    pub fn op_norm(&self) -> f64 {
        let m = &self.matrix;
        if m.is_empty() {
            return 0.0;
        }
        let gram = if m.nrows() <= m.ncols() { m * m.transpose() } else { m.transpose() * m };
        gram.symmetric_eigenvalues().max().max(0.0).sqrt()
    }

    /// `‖self − other‖` in operator norm, after checking shapes.
    pub fn distance(&self, other: &LinOp) -> Result<f64> {
        Ok(self.sub(other)?.op_norm())
    }

    /// Same matrix, reinterpreted between structurally equal algebras.
    pub fn with_algebras(&self, domain: &Algebra, codomain: &Algebra) -> Result<LinOp> {
        LinOp::new(domain.clone(), codomain.clone(), self.matrix.clone())
    }
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinOp({} -> {}) {:?}", self.domain, self.codomain, self.matrix)
    }
}

/// `L_a : b ↦ a*b`, built column by column from the basis.
pub fn mult_operator(a: &Element) -> LinOp {
    let alg = a.algebra();
    let m = alg.mult_matrix(a.coords());
    // exact symmetry; the product is self-adjoint up to rounding
    let m = (&m + m.transpose()) * 0.5;
    LinOp { domain: alg.clone(), codomain: alg.clone(), matrix: m }
}

/// `Q_a = 2 L_a² − L_{a²}`.
pub fn quadratic_rep(a: &Element) -> LinOp {
    let la = mult_operator(a);
    let la2 = mult_operator(&a.square());
    let m = &la.matrix * &la.matrix * 2.0 - &la2.matrix;
    let m = (&m + m.transpose()) * 0.5;
    LinOp { domain: la.domain, codomain: la.codomain, matrix: m }
}

impl Element {
    pub fn l_op(&self) -> LinOp {
        mult_operator(self)
    }

    pub fn q_op(&self) -> LinOp {
        quadratic_rep(self)
    }
}
