//! Algebras built from the five families of simple factors, their elements,
//! and the Jordan product and trace inner product.
//!
//! Every algebra carries a canonical orthonormal basis, so an element is a
//! flat coordinate vector and the inner product is the Euclidean dot product
//! of coordinates. Matrix factors use the diagonal units `E_ii` followed by
//! the symmetrized off-diagonal units `(E_ij u + E_ji conj(u)) / √2`, one per
//! pair `i < j` (lexicographic) and per basis unit `u` of the scalar algebra.
//! Spin factors `H ⊕ ℝ` use `(e_i, 0)` followed by `(0, 1)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{EjaError, Result};
use crate::precise::Structure;
use crate::scalar::{DivisionAlgebra, Scalar};

/// One simple summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorSpec {
    /// Real symmetric `n × n` matrices.
    RealSym { n: usize },
    /// Complex Hermitian `n × n` matrices.
    ComplexHerm { n: usize },
    /// Quaternionic Hermitian `n × n` matrices.
    QuatHerm { n: usize },
    /// Spin factor `ℝ^d ⊕ ℝ`.
    Spin { d: usize },
    /// Octonionic Hermitian `3 × 3` matrices (the exceptional factor).
    Albert,
}

impl FactorSpec {
    pub fn dim(&self) -> usize {
        match *self {
            FactorSpec::RealSym { n } => n * (n + 1) / 2,
            FactorSpec::ComplexHerm { n } => n * n,
            FactorSpec::QuatHerm { n } => n * (2 * n - 1),
            FactorSpec::Spin { d } => d + 1,
            FactorSpec::Albert => 27,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            FactorSpec::RealSym { n } | FactorSpec::ComplexHerm { n } | FactorSpec::QuatHerm { n } => n,
            FactorSpec::Spin { .. } => 2,
            FactorSpec::Albert => 3,
        }
    }

    /// Scalar algebra and matrix size for the matrix families.
    pub fn matrix_shape(&self) -> Option<(DivisionAlgebra, usize)> {
        match *self {
            FactorSpec::RealSym { n } => Some((DivisionAlgebra::R, n)),
            FactorSpec::ComplexHerm { n } => Some((DivisionAlgebra::C, n)),
            FactorSpec::QuatHerm { n } => Some((DivisionAlgebra::H, n)),
            FactorSpec::Albert => Some((DivisionAlgebra::O, 3)),
            FactorSpec::Spin { .. } => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let size = match *self {
            FactorSpec::RealSym { n } | FactorSpec::ComplexHerm { n } | FactorSpec::QuatHerm { n } => n,
            FactorSpec::Spin { d } => d,
            FactorSpec::Albert => 1,
        };
        if size == 0 {
            return Err(EjaError::Structural(format!("{self} needs a size parameter of at least 1")));
        }
        Ok(())
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorSpec::RealSym { n } => write!(f, "RealSym({n})"),
            FactorSpec::ComplexHerm { n } => write!(f, "ComplexHerm({n})"),
            FactorSpec::QuatHerm { n } => write!(f, "QuatHerm({n})"),
            FactorSpec::Spin { d } => write!(f, "Spin({d})"),
            FactorSpec::Albert => write!(f, "Albert"),
        }
    }
}

/// A Hermitian matrix over one of the four division algebras, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    field: DivisionAlgebra,
    entries: Vec<Scalar>,
}

impl HermitianMatrix {
    pub fn zeros(field: DivisionAlgebra, n: usize) -> Self {
        HermitianMatrix { n, field, entries: vec![Scalar::zero(field); n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> DivisionAlgebra {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    /// Plain matrix product. The result need not be Hermitian.
    pub fn matmul(&self, other: &HermitianMatrix) -> HermitianMatrix {
        let n = self.n;
        let mut out = HermitianMatrix::zeros(self.field, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero(self.field);
                for l in 0..n {
                    acc = acc + self.get(i, l) * other.get(l, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &HermitianMatrix) -> HermitianMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| *a + *b).collect();
        HermitianMatrix { n: self.n, field: self.field, entries }
    }

    pub fn scale(&self, s: f64) -> HermitianMatrix {
        let entries = self.entries.iter().map(|a| a.scale(s)).collect();
        HermitianMatrix { n: self.n, field: self.field, entries }
    }

    /// `Re tr(self)`.
    pub fn re_trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re()).sum()
    }
}

#[derive(Debug)]
struct Block {
    spec: FactorSpec,
    offset: usize,
}

impl Block {
    fn dim(&self) -> usize {
        self.spec.dim()
    }

    fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.dim()
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // position of (i, j), i < j, in the lexicographic list of pairs
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn coords_to_matrix(field: DivisionAlgebra, n: usize, x: &[f64]) -> HermitianMatrix {
    let fd = field.dim();
    let mut m = HermitianMatrix::zeros(field, n);
    for i in 0..n {
        m.set(i, i, Scalar::real(field, x[i]));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let base = n + pair_index(n, i, j) * fd;
            let v = Scalar::from_coeffs(field, &x[base..base + fd])
                .expect("coefficient slice has field dimension")
                .scale(std::f64::consts::FRAC_1_SQRT_2);
            m.set(i, j, v);
            m.set(j, i, v.conj());
        }
    }
    m
}

fn matrix_to_coords(m: &HermitianMatrix, out: &mut [f64]) {
    let n = m.size();
    let fd = m.field().dim();
    for i in 0..n {
        out[i] = m.get(i, i).re();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let base = n + pair_index(n, i, j) * fd;
            let upper = m.get(i, j);
            let lower = m.get(j, i).conj();
            for k in 0..fd {
                out[base + k] = std::f64::consts::FRAC_1_SQRT_2 * (upper.coeff(k) + lower.coeff(k));
            }
        }
    }
}

fn factor_product(spec: &FactorSpec, x: &[f64], y: &[f64], out: &mut [f64]) {
    match spec.matrix_shape() {
        Some((field, n)) => {
            if field == DivisionAlgebra::R {
                real_sym_product(n, x, y, out);
                return;
            }
            let a = coords_to_matrix(field, n, x);
            let b = coords_to_matrix(field, n, y);
            let jordan = a.matmul(&b).add(&b.matmul(&a)).scale(0.5);
            matrix_to_coords(&jordan, out);
        }
        None => {
            // (a, t)(b, s) = (s a + t b, <a, b> + t s)
            let d = x.len() - 1;
            let (t, s) = (x[d], y[d]);
            let mut dot = 0.0;
            for i in 0..d {
                out[i] = s * x[i] + t * y[i];
                dot += x[i] * y[i];
            }
            out[d] = dot + t * s;
        }
    }
}

// Real symmetric fast path; same layout as `coords_to_matrix`.
fn real_sym_product(n: usize, x: &[f64], y: &[f64], out: &mut [f64]) {
    let to_dense = |c: &[f64]| {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c[i];
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let v = c[n + pair_index(n, i, j)] * std::f64::consts::FRAC_1_SQRT_2;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    };
    let a = to_dense(x);
    let b = to_dense(y);
    let ab = &a * &b;
    for i in 0..n {
        out[i] = ab[(i, i)];
    }
    for i in 0..n {
        for j in (i + 1)..n {
            // ½(AB + BA)_ij scaled to the off-diagonal unit
            out[n + pair_index(n, i, j)] =
                std::f64::consts::FRAC_1_SQRT_2 * (ab[(i, j)] + ab[(j, i)]);
        }
    }
}

fn factor_unit(spec: &FactorSpec, out: &mut [f64]) {
    match spec.matrix_shape() {
        Some((_, n)) => out[..n].iter_mut().for_each(|c| *c = 1.0),
        None => *out.last_mut().expect("spin factor has dimension >= 2") = 1.0,
    }
}

enum AlgebraKind {
    Factors { specs: Vec<FactorSpec>, blocks: Vec<Block> },
    /// Subalgebra of a factor algebra spanned by the orthonormal columns of
    /// `embedding` (root coordinates). Nested subalgebras are flattened.
    Sub { root: Algebra, embedding: DMatrix<f64> },
}

struct AlgebraInner {
    kind: AlgebraKind,
    dim: usize,
    unit: DVector<f64>,
    rank: OnceLock<usize>,
    structure: OnceLock<Arc<Structure>>,
}

/// A finite-dimensional Euclidean Jordan algebra. Cheap to clone.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraInner>);

impl Algebra {
    /// Direct sum of the given simple factors.
    pub fn new(specs: Vec<FactorSpec>) -> Result<Algebra> {
        if specs.is_empty() {
            return Err(EjaError::Structural("an algebra needs at least one factor".into()));
        }
        let mut blocks = Vec::with_capacity(specs.len());
        let mut offset = 0;
        for spec in &specs {
            spec.validate()?;
            blocks.push(Block { spec: *spec, offset });
            offset += spec.dim();
        }
        let mut unit = DVector::zeros(offset);
        for b in &blocks {
            factor_unit(&b.spec, &mut unit.as_mut_slice()[b.range()]);
        }
        let rank = OnceLock::new();
        let _ = rank.set(specs.iter().map(FactorSpec::rank).sum());
        Ok(Algebra(Arc::new(AlgebraInner {
            kind: AlgebraKind::Factors { specs, blocks },
            dim: offset,
            unit,
            rank,
            structure: OnceLock::new(),
        })))
    }

    pub fn single(spec: FactorSpec) -> Result<Algebra> {
        Algebra::new(vec![spec])
    }

    /// `ℝ^n` as the associative algebra `RealSym(1)^n`.
    pub fn real_diagonal(n: usize) -> Result<Algebra> {
        Algebra::new(vec![FactorSpec::RealSym { n: 1 }; n])
    }

    pub fn from_descriptor(desc: &AlgebraDescriptor) -> Result<Algebra> {
        match desc {
            AlgebraDescriptor::Factors { factors } => Algebra::new(factors.clone()),
            AlgebraDescriptor::Subalgebra { root, embedding } => {
                let root = Algebra::new(root.factors.clone())?;
                let rows = embedding.len();
                if rows != root.dim() {
                    return Err(EjaError::Structural(format!(
                        "embedding has {rows} rows but the root algebra has dimension {}",
                        root.dim()
                    )));
                }
                let cols = embedding.first().map_or(0, Vec::len);
                if embedding.iter().any(|r| r.len() != cols) {
                    return Err(EjaError::Structural("embedding rows have unequal lengths".into()));
                }
                let basis = DMatrix::from_fn(rows, cols, |i, j| embedding[i][j]);
                let gram = basis.transpose() * &basis;
                if (gram - DMatrix::identity(cols, cols)).norm() > 1e-8 {
                    return Err(EjaError::Structural("embedding columns are not orthonormal".into()));
                }
                // unit of the subalgebra = projection of the root unit; must be an idempotent
                let unit = basis.transpose() * root.unit_coords();
                Ok(root.subalgebra(basis, unit))
            }
        }
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        match &self.0.kind {
            AlgebraKind::Factors { specs, .. } => AlgebraDescriptor::Factors { factors: specs.clone() },
            AlgebraKind::Sub { root, embedding } => AlgebraDescriptor::Subalgebra {
                root: FactorsDescriptor { factors: root.factors().expect("root is a factor algebra").to_vec() },
                embedding: embedding.row_iter().map(|r| r.iter().copied().collect()).collect(),
            },
        }
    }

    /// Subalgebra spanned by the orthonormal columns of `basis` (coordinates
    /// in `self`), with the given unit (coordinates in the subalgebra).
    /// The caller guarantees closure under the product.
    pub(crate) fn subalgebra(&self, basis: DMatrix<f64>, unit: DVector<f64>) -> Algebra {
        let (root, embedding) = match &self.0.kind {
            AlgebraKind::Factors { .. } => (self.clone(), basis),
            AlgebraKind::Sub { root, embedding } => (root.clone(), embedding * basis),
        };
        let dim = embedding.ncols();
        Algebra(Arc::new(AlgebraInner {
            kind: AlgebraKind::Sub { root, embedding },
            dim,
            unit,
            rank: OnceLock::new(),
            structure: OnceLock::new(),
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Number of atomic idempotents in a decomposition of the unit.
    pub fn rank(&self) -> usize {
        *self.0.rank.get_or_init(|| crate::spectral::generic_rank(self))
    }

    /// Factor list, for algebras built directly from factors.
    pub fn factors(&self) -> Option<&[FactorSpec]> {
        match &self.0.kind {
            AlgebraKind::Factors { specs, .. } => Some(specs),
            AlgebraKind::Sub { .. } => None,
        }
    }

    pub fn is_subalgebra(&self) -> bool {
        matches!(self.0.kind, AlgebraKind::Sub { .. })
    }

    /// The factor algebra this one lives in (itself for factor algebras).
    pub fn root(&self) -> Algebra {
        match &self.0.kind {
            AlgebraKind::Factors { .. } => self.clone(),
            AlgebraKind::Sub { root, .. } => root.clone(),
        }
    }

    /// Columns are the basis of `self` in root coordinates.
    pub fn root_embedding(&self) -> DMatrix<f64> {
        match &self.0.kind {
            AlgebraKind::Factors { .. } => DMatrix::identity(self.dim(), self.dim()),
            AlgebraKind::Sub { embedding, .. } => embedding.clone(),
        }
    }

    /// Coordinate range of factor `i`, for factor algebras.
    pub fn factor_range(&self, i: usize) -> Option<std::ops::Range<usize>> {
        match &self.0.kind {
            AlgebraKind::Factors { blocks, .. } => blocks.get(i).map(Block::range),
            AlgebraKind::Sub { .. } => None,
        }
    }

    /// True when every factor is one-dimensional, i.e. the algebra is `ℝ^n`
    /// and its idempotents form a finite Boolean lattice.
    pub fn is_real_diagonal(&self) -> bool {
        self.factors().is_some_and(|f| f.iter().all(|s| s.dim() == 1))
    }

    /// Structure constants, computed on first use.
    pub(crate) fn structure(&self) -> &Structure {
        self.0.structure.get_or_init(|| Arc::new(Structure::new(self)))
    }

    pub(crate) fn unit_coords(&self) -> &DVector<f64> {
        &self.0.unit
    }

    pub fn unit(&self) -> Element {
        Element { algebra: self.clone(), coords: self.0.unit.clone() }
    }

    pub fn zero(&self) -> Element {
        Element { algebra: self.clone(), coords: DVector::zeros(self.dim()) }
    }

    /// The `i`-th canonical basis element.
    pub fn basis(&self, i: usize) -> Element {
        let mut coords = DVector::zeros(self.dim());
        coords[i] = 1.0;
        Element { algebra: self.clone(), coords }
    }

    pub fn element(&self, coords: Vec<f64>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(EjaError::Structural(format!(
                "{self} has dimension {}, got {} coordinates",
                self.dim(),
                coords.len()
            )));
        }
        Ok(Element { algebra: self.clone(), coords: DVector::from_vec(coords) })
    }

    pub fn element_from_vector(&self, coords: DVector<f64>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(EjaError::Structural(format!(
                "{self} has dimension {}, got {} coordinates",
                self.dim(),
                coords.len()
            )));
        }
        Ok(Element { algebra: self.clone(), coords })
    }

    /// Jordan product of coordinate vectors.
    pub(crate) fn product_coords(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        match &self.0.kind {
            AlgebraKind::Factors { .. } => self.structure().product(x.as_slice(), y.as_slice()),
            AlgebraKind::Sub { root, embedding } => {
                let xr = embedding * x;
                let yr = embedding * y;
                embedding.tr_mul(&root.product_coords(&xr, &yr))
            }
        }
    }

    /// `L_x` as a matrix.
    pub(crate) fn mult_matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        match &self.0.kind {
            AlgebraKind::Factors { .. } => self.structure().l_matrix(x.as_slice()),
            AlgebraKind::Sub { root, embedding } => {
                let l = root.mult_matrix(&(embedding * x));
                embedding.tr_mul(&(l * embedding))
            }
        }
    }

    /// The product computed from the matrix or spin model directly.
    pub(crate) fn direct_product(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        match &self.0.kind {
            AlgebraKind::Factors { blocks, .. } => {
                let mut out = DVector::zeros(self.dim());
                for b in blocks {
                    let r = b.range();
                    factor_product(
                        &b.spec,
                        &x.as_slice()[r.clone()],
                        &y.as_slice()[r.clone()],
                        &mut out.as_mut_slice()[r],
                    );
                }
                out
            }
            AlgebraKind::Sub { root, embedding } => {
                let xr = embedding * x;
                let yr = embedding * y;
                embedding.tr_mul(&root.product_coords(&xr, &yr))
            }
        }
    }

    /// Matrix of factor `i` for a matrix-family factor.
    pub fn hermitian_block(&self, x: &Element, i: usize) -> Option<HermitianMatrix> {
        let AlgebraKind::Factors { blocks, .. } = &self.0.kind else {
            return None;
        };
        let b = blocks.get(i)?;
        let (field, n) = b.spec.matrix_shape()?;
        Some(coords_to_matrix(field, n, &x.coords.as_slice()[b.range()]))
    }

    /// Element of a single-factor matrix algebra from a Hermitian matrix.
    pub fn from_hermitian(&self, m: &HermitianMatrix) -> Result<Element> {
        let specs = self.factors().ok_or_else(|| EjaError::Structural("not a factor algebra".into()))?;
        match specs {
            [spec] if spec.matrix_shape() == Some((m.field(), m.size())) => {
                let mut out = vec![0.0; self.dim()];
                matrix_to_coords(m, &mut out);
                self.element(out)
            }
            _ => Err(EjaError::Structural(format!(
                "{self} is not a single {}-matrix factor of size {}",
                m.field(),
                m.size()
            ))),
        }
    }

    /// Element of a single-factor real algebra from a (symmetrized) dense matrix.
    pub fn from_real_matrix(&self, m: &DMatrix<f64>) -> Result<Element> {
        let n = m.nrows();
        let mut h = HermitianMatrix::zeros(DivisionAlgebra::R, n);
        for i in 0..n {
            for j in 0..n {
                h.set(i, j, Scalar::real(DivisionAlgebra::R, 0.5 * (m[(i, j)] + m[(j, i)])));
            }
        }
        self.from_hermitian(&h)
    }

    /// Diagonal element `diag(d)` of a single matrix factor, or the element
    /// with coordinates `d` of `ℝ^n`.
    pub fn diagonal(&self, d: &[f64]) -> Result<Element> {
        if self.is_real_diagonal() {
            return self.element(d.to_vec());
        }
        match self.factors() {
            Some([spec]) if spec.matrix_shape().map(|(_, n)| n) == Some(d.len()) => {
                let mut coords = vec![0.0; self.dim()];
                coords[..d.len()].copy_from_slice(d);
                self.element(coords)
            }
            _ => Err(EjaError::Structural(format!("{self} has no diagonal of length {}", d.len()))),
        }
    }

    pub fn ptr_eq(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn ensure_same(&self, other: &Algebra) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(EjaError::AlgebraMismatch { expected: self.to_string(), found: other.to_string() })
        }
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (AlgebraKind::Factors { specs: a, .. }, AlgebraKind::Factors { specs: b, .. }) => a == b,
            (AlgebraKind::Sub { root: ra, embedding: ea }, AlgebraKind::Sub { root: rb, embedding: eb }) => {
                ra == rb && ea == eb
            }
            _ => false,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            AlgebraKind::Factors { specs, .. } => {
                for (i, s) in specs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
            AlgebraKind::Sub { root, .. } => write!(f, "subalgebra[dim {}] of {root}", self.dim()),
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({self})")
    }
}

/// JSON form of an algebra.
///
/// `{"factors":[{"kind":"real_sym","n":3},{"kind":"spin","d":4}]}` for a
/// direct sum; subalgebras (corners) add the root algebra and a row-major
/// orthonormal embedding matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraDescriptor {
    Subalgebra { root: FactorsDescriptor, embedding: Vec<Vec<f64>> },
    Factors { factors: Vec<FactorSpec> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorsDescriptor {
    pub factors: Vec<FactorSpec>,
}

/// JSON form of an element: `{"algebra": <descriptor>, "coords": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementDescriptor {
    pub algebra: AlgebraDescriptor,
    pub coords: Vec<f64>,
}

/// An element of an [`Algebra`], stored as coordinates in its orthonormal basis.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Algebra,
    coords: DVector<f64>,
}

impl Element {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn into_coords(self) -> DVector<f64> {
        self.coords
    }

    pub fn from_descriptor(desc: &ElementDescriptor) -> Result<Element> {
        Algebra::from_descriptor(&desc.algebra)?.element(desc.coords.clone())
    }

    pub fn descriptor(&self) -> ElementDescriptor {
        ElementDescriptor { algebra: self.algebra.descriptor(), coords: self.coords.iter().copied().collect() }
    }

    /// Jordan product; fails when the elements live in different algebras.
    pub fn jordan(&self, other: &Element) -> Result<Element> {
        self.algebra.ensure_same(&other.algebra)?;
        Ok(self.jordan_unchecked(other))
    }

    pub(crate) fn jordan_unchecked(&self, other: &Element) -> Element {
        Element { algebra: self.algebra.clone(), coords: self.algebra.product_coords(&self.coords, &other.coords) }
    }

    /// Trace inner product.
    pub fn inner(&self, other: &Element) -> Result<f64> {
        self.algebra.ensure_same(&other.algebra)?;
        Ok(self.coords.dot(&other.coords))
    }

    /// Euclidean norm `sqrt(<a, a>)`.
    pub fn norm2(&self) -> f64 {
        self.coords.norm()
    }

    pub fn square(&self) -> Element {
        self.jordan_unchecked(self)
    }

    /// `a^n` for `n >= 0`, by repeated multiplication (`a^0 = 1`).
    pub fn pow(&self, n: u32) -> Element {
        let mut out = self.algebra.unit();
        for _ in 0..n {
            out = out.jordan_unchecked(self);
        }
        out
    }

    pub fn scale(&self, s: f64) -> Element {
        Element { algebra: self.algebra.clone(), coords: &self.coords * s }
    }

    /// `1 - a`.
    pub fn complement(&self) -> Element {
        Element { algebra: self.algebra.clone(), coords: self.algebra.unit_coords() - &self.coords }
    }

    /// Coordinates of this element in the root factor algebra.
    pub fn to_root(&self) -> Element {
        match &self.algebra.0.kind {
            AlgebraKind::Factors { .. } => self.clone(),
            AlgebraKind::Sub { root, embedding } => Element { algebra: root.clone(), coords: embedding * &self.coords },
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    /// `‖self − other‖₂`; panics on mismatched algebras.
    pub fn dist(&self, other: &Element) -> f64 {
        (self - other).norm2()
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.coords == other.coords
    }
}

fn assert_same(a: &Algebra, b: &Algebra) {
    if a != b {
        panic!("algebra mismatch: {a} vs {b}");
    }
}

impl Add<&Element> for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        assert_same(&self.algebra, &rhs.algebra);
        Element { algebra: self.algebra.clone(), coords: &self.coords + &rhs.coords }
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        assert_same(&self.algebra, &rhs.algebra);
        Element { algebra: self.algebra.clone(), coords: &self.coords - &rhs.coords }
    }
}

impl Add for Element {
    type Output = Element;

    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;

    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert_same(&self.algebra, &rhs.algebra);
        self.coords += &rhs.coords;
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Neg for Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Element {
    type Output = Element;

    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

impl Mul<f64> for Element {
    type Output = Element;

    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

/// Jordan product. Panics on mismatched algebras; see [`Element::jordan`].
impl Mul<&Element> for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        assert_same(&self.algebra, &rhs.algebra);
        self.jordan_unchecked(rhs)
    }
}

/// Free-function form of [`Algebra::new`].
pub fn make_algebra(specs: Vec<FactorSpec>) -> Result<Algebra> {
    Algebra::new(specs)
}

pub fn jordan_product(a: &Element, b: &Element) -> Result<Element> {
    a.jordan(b)
}

pub fn inner(a: &Element, b: &Element) -> Result<f64> {
    a.inner(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_kinds() -> Vec<FactorSpec> {
        vec![
            FactorSpec::RealSym { n: 3 },
            FactorSpec::ComplexHerm { n: 2 },
            FactorSpec::QuatHerm { n: 3 },
            FactorSpec::Spin { d: 4 },
            FactorSpec::Albert,
        ]
    }

    #[test]
    fn dimensions_and_ranks() {
        let a = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
        assert_eq!((a.dim(), a.rank()), (3, 2));
        let s = Algebra::single(FactorSpec::Spin { d: 3 }).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.unit().coords().as_slice(), &[0.0, 0.0, 0.0, 1.0]);
        let alb = Algebra::single(FactorSpec::Albert).unwrap();
        assert_eq!((alb.dim(), alb.rank()), (27, 3));
        assert_eq!(FactorSpec::ComplexHerm { n: 3 }.dim(), 9);
        assert_eq!(FactorSpec::QuatHerm { n: 3 }.dim(), 15);
        let mixed = Algebra::new(all_kinds()).unwrap();
        assert_eq!(mixed.rank(), 3 + 2 + 3 + 2 + 3);
    }

    #[test]
    fn empty_or_degenerate_specs_are_rejected() {
        assert!(matches!(Algebra::new(vec![]), Err(EjaError::Structural(_))));
        assert!(Algebra::single(FactorSpec::RealSym { n: 0 }).is_err());
        assert!(Algebra::single(FactorSpec::Spin { d: 0 }).is_err());
    }

    // Orthonormality checked through Re tr(A∘B) on the explicit matrices.
    #[test]
    fn matrix_bases_are_orthonormal_under_trace_form() {
        for spec in [FactorSpec::RealSym { n: 3 }, FactorSpec::ComplexHerm { n: 3 }, FactorSpec::QuatHerm { n: 2 }, FactorSpec::Albert] {
            let alg = Algebra::single(spec).unwrap();
            let mats: Vec<_> = (0..alg.dim()).map(|i| alg.hermitian_block(&alg.basis(i), 0).unwrap()).collect();
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let a = &mats[i];
                    let b = &mats[j];
                    let jordan = a.matmul(b).add(&b.matmul(a)).scale(0.5);
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((jordan.re_trace() - expected).abs() < 1e-12, "{spec} basis {i},{j}");
                }
            }
        }
    }

    #[test]
    fn unit_is_identity_on_basis() {
        for spec in all_kinds() {
            let alg = Algebra::single(spec).unwrap();
            let one = alg.unit();
            for i in 0..alg.dim() {
                let b = alg.basis(i);
                assert!((&one * &b).dist(&b) < 1e-12, "{spec} basis {i}");
            }
        }
    }

    #[test]
    fn anticommuting_pauli_pair() {
        let alg = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
        let a = alg.from_real_matrix(&DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        let b = alg.diagonal(&[1.0, -1.0]).unwrap();
        assert!((&a * &b).norm2() < 1e-15);
    }

    #[test]
    fn spin_orthogonal_vectors_multiply_to_zero() {
        let alg = Algebra::single(FactorSpec::Spin { d: 2 }).unwrap();
        let a = alg.element(vec![1.0, 0.0, 0.0]).unwrap();
        let b = alg.element(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!((&a * &b).coords().as_slice(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn trace_of_unit_is_rank_for_matrix_factors() {
        let alg = Algebra::single(FactorSpec::RealSym { n: 3 }).unwrap();
        assert!((alg.unit().inner(&alg.unit()).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn mismatched_algebras_error() {
        let a = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
        let b = Algebra::single(FactorSpec::Spin { d: 2 }).unwrap();
        assert!(matches!(a.unit().jordan(&b.unit()), Err(EjaError::AlgebraMismatch { .. })));
        assert!(a.unit().inner(&b.unit()).is_err());
        // same specs built twice compare equal
        let a2 = Algebra::single(FactorSpec::RealSym { n: 2 }).unwrap();
        assert!(a.unit().jordan(&a2.unit()).is_ok());
    }

    #[test]
    fn descriptor_json_shape() {
        let alg = Algebra::new(vec![FactorSpec::RealSym { n: 3 }, FactorSpec::Spin { d: 4 }]).unwrap();
        let json = serde_json::to_string(&alg.descriptor()).unwrap();
        assert_eq!(json, r#"{"factors":[{"kind":"real_sym","n":3},{"kind":"spin","d":4}]}"#);
        let back: AlgebraDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(Algebra::from_descriptor(&back).unwrap(), alg);
        let albert: AlgebraDescriptor = serde_json::from_str(r#"{"factors":[{"kind":"albert"}]}"#).unwrap();
        assert_eq!(Algebra::from_descriptor(&albert).unwrap().dim(), 27);
    }

    #[test]
    fn octonion_matrix_product_is_hermitian_jordan() {
        let alg = Algebra::single(FactorSpec::Albert).unwrap();
        let x = alg.element((0..27).map(|i| (i as f64 * 0.37).sin()).collect()).unwrap();
        let y = alg.element((0..27).map(|i| (i as f64 * 0.91).cos()).collect()).unwrap();
        let p = &x * &y;
        let q = &y * &x;
        assert!(p.dist(&q) < 1e-13);
        // round trip through the matrix view
        let m = alg.hermitian_block(&p, 0).unwrap();
        assert!(alg.from_hermitian(&m).unwrap().dist(&p) < 1e-13);
    }
}
