//! Coordinate scalars for Hermitian matrix factors: ℝ, ℂ, ℍ and 𝕆.
//!
//! All four algebras are produced by the Cayley–Dickson doubling
//! `(a, b)(c, d) = (ac − conj(d) b, d a + b conj(c))`, applied to the
//! lower half and upper half of the coefficient array. Coefficient `0` is
//! the real part; `1..dim` are the imaginary units `e1, e2, ...`. With this
//! convention the quaternion units satisfy `e1 e2 = e3` (`i j = k`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{EjaError, Result};

/// The four normed division algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DivisionAlgebra {
    R,
    C,
    H,
    O,
}

impl DivisionAlgebra {
    /// Real dimension: 1, 2, 4 or 8.
    pub const fn dim(self) -> usize {
        match self {
            DivisionAlgebra::R => 1,
            DivisionAlgebra::C => 2,
            DivisionAlgebra::H => 4,
            DivisionAlgebra::O => 8,
        }
    }

    pub const fn is_associative(self) -> bool {
        !matches!(self, DivisionAlgebra::O)
    }
}

impl fmt::Display for DivisionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DivisionAlgebra::R => "R",
            DivisionAlgebra::C => "C",
            DivisionAlgebra::H => "H",
            DivisionAlgebra::O => "O",
        };
        f.write_str(s)
    }
}

/// An element of ℝ, ℂ, ℍ or 𝕆 stored as a fixed-length coefficient array.
///
/// Only the first `tag.dim()` coefficients are meaningful; the rest are kept
/// at zero so that derived equality works.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar {
    tag: DivisionAlgebra,
    coeffs: [f64; 8],
}

impl Scalar {
    pub fn zero(tag: DivisionAlgebra) -> Self {
        Scalar { tag, coeffs: [0.0; 8] }
    }

    pub fn one(tag: DivisionAlgebra) -> Self {
        Self::real(tag, 1.0)
    }

    pub fn real(tag: DivisionAlgebra, re: f64) -> Self {
        let mut coeffs = [0.0; 8];
        coeffs[0] = re;
        Scalar { tag, coeffs }
    }

    /// The basis unit `e_k` (`e_0 = 1`).
    pub fn unit(tag: DivisionAlgebra, k: usize) -> Result<Self> {
        if k >= tag.dim() {
            return Err(EjaError::Structural(format!(
                "unit e{k} does not exist in {tag} (dimension {})",
                tag.dim()
            )));
        }
        let mut coeffs = [0.0; 8];
        coeffs[k] = 1.0;
        Ok(Scalar { tag, coeffs })
    }

    pub fn from_coeffs(tag: DivisionAlgebra, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != tag.dim() {
            return Err(EjaError::Structural(format!(
                "{tag} needs {} coefficients, got {}",
                tag.dim(),
                coeffs.len()
            )));
        }
        let mut c = [0.0; 8];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Scalar { tag, coeffs: c })
    }

    pub fn tag(&self) -> DivisionAlgebra {
        self.tag
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..self.tag.dim()]
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn re(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for c in &mut out.coeffs[1..] {
            *c = -*c;
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of coefficient arrays, `Re(x conj(y))`.
    pub fn dot(&self, other: &Scalar) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for c in &mut out.coeffs {
            *c *= s;
        }
        out
    }

    /// Cayley–Dickson product; fails when the tags differ.
    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.tag != other.tag {
            return Err(EjaError::Structural(format!(
                "cannot multiply {} scalar by {} scalar",
                self.tag, other.tag
            )));
        }
        let n = self.tag.dim();
        let mut out = [0.0; 8];
        cd_mul(&self.coeffs[..n], &other.coeffs[..n], &mut out[..n]);
        Ok(Scalar { tag: self.tag, coeffs: out })
    }
}

/// Free-function form of [`Scalar::checked_mul`].
pub fn cayley_dickson_multiply(x: &Scalar, y: &Scalar) -> Result<Scalar> {
    x.checked_mul(y)
}

fn cd_conj(x: &[f64], out: &mut [f64]) {
    out[0] = x[0];
    for k in 1..x.len() {
        out[k] = -x[k];
    }
}

// (a, b)(c, d) = (ac − conj(d) b, d a + b conj(c)), recursing on halves.
fn cd_mul(x: &[f64], y: &[f64], out: &mut [f64]) {
    let n = x.len();
    if n == 1 {
        out[0] = x[0] * y[0];
        return;
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let mut t1 = [0.0; 4];
    let mut t2 = [0.0; 4];
    let mut conj_buf = [0.0; 4];

    cd_mul(a, c, &mut t1[..h]);
    cd_conj(d, &mut conj_buf[..h]);
    cd_mul(&conj_buf[..h], b, &mut t2[..h]);
    for k in 0..h {
        out[k] = t1[k] - t2[k];
    }

    cd_mul(d, a, &mut t1[..h]);
    cd_conj(c, &mut conj_buf[..h]);
    cd_mul(b, &conj_buf[..h], &mut t2[..h]);
    for k in 0..h {
        out[h + k] = t1[k] + t2[k];
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    /// Panics when the tags differ; use [`Scalar::checked_mul`] for a fallible product.
    fn mul(self, rhs: Scalar) -> Scalar {
        self.checked_mul(&rhs).expect("scalar tag mismatch")
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.tag, rhs.tag, "scalar tag mismatch");
        let mut out = self;
        for (o, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *o += r;
        }
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TAGS: [DivisionAlgebra; 4] =
        [DivisionAlgebra::R, DivisionAlgebra::C, DivisionAlgebra::H, DivisionAlgebra::O];

    fn e(tag: DivisionAlgebra, k: usize) -> Scalar {
        Scalar::unit(tag, k).unwrap()
    }

    #[test]
    fn quaternion_table() {
        let h = DivisionAlgebra::H;
        assert_eq!(e(h, 1) * e(h, 2), e(h, 3));
        assert_eq!(e(h, 2) * e(h, 3), e(h, 1));
        assert_eq!(e(h, 3) * e(h, 1), e(h, 2));
        assert_eq!(e(h, 2) * e(h, 1), -e(h, 3));
        assert_eq!(e(h, 1) * e(h, 1), Scalar::real(h, -1.0));
    }

    #[test]
    fn identity_is_neutral() {
        for tag in TAGS {
            let x = Scalar::from_coeffs(tag, &[0.3, -1.2, 2.0, 0.5, 1.0, -0.7, 0.1, 4.0][..tag.dim()])
                .unwrap();
            assert_eq!(Scalar::one(tag) * x, x);
            assert_eq!(x * Scalar::one(tag), x);
        }
    }

    #[test]
    fn conj_and_re() {
        let r = Scalar::real(DivisionAlgebra::R, 3.0);
        assert_eq!(r.conj(), r);
        let q = Scalar::from_coeffs(DivisionAlgebra::H, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(q.conj().coeffs(), &[1.0, -2.0, -3.0, -4.0]);
        let i = e(DivisionAlgebra::C, 1);
        assert_eq!((i * i).re(), -1.0);
    }

    #[test]
    fn tag_mismatch_is_structural_error() {
        let a = Scalar::one(DivisionAlgebra::H);
        let b = Scalar::one(DivisionAlgebra::O);
        assert!(matches!(a.checked_mul(&b), Err(EjaError::Structural(_))));
        assert!(Scalar::unit(DivisionAlgebra::C, 2).is_err());
    }

    #[test]
    fn octonion_basis_squares_and_anticommutes() {
        let o = DivisionAlgebra::O;
        for i in 1..8 {
            assert_eq!(e(o, i) * e(o, i), Scalar::real(o, -1.0));
            for j in 1..8 {
                if i != j {
                    assert_eq!(e(o, i) * e(o, j), -(e(o, j) * e(o, i)));
                }
            }
        }
    }

    // Brute-force over the 7^3 imaginary unit triples: with any Cayley–Dickson
    // sign convention some triple anti-associates.
    #[test]
    fn octonions_are_not_associative() {
        let o = DivisionAlgebra::O;
        let mut anti = Vec::new();
        for i in 1..8 {
            for j in 1..8 {
                for k in 1..8 {
                    let l = (e(o, i) * e(o, j)) * e(o, k);
                    let r = e(o, i) * (e(o, j) * e(o, k));
                    if l == -r && l != r {
                        anti.push((i, j, k));
                    }
                }
            }
        }
        assert!(anti.contains(&(1, 2, 4)));
        let l = (e(o, 1) * e(o, 2)) * e(o, 4);
        let r = e(o, 1) * (e(o, 2) * e(o, 4));
        assert_eq!(l, -r);
    }

    fn scalar_strategy(tag: DivisionAlgebra) -> impl Strategy<Value = Scalar> {
        prop::collection::vec(-3.0f64..3.0, tag.dim())
            .prop_map(move |v| Scalar::from_coeffs(tag, &v).unwrap())
    }

    fn close(a: &Scalar, b: &Scalar, rel: f64, scale: f64) -> bool {
        (*a - *b).norm() <= rel * scale.max(1.0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn associative_below_octonions(tag in prop::sample::select(vec![DivisionAlgebra::R, DivisionAlgebra::C, DivisionAlgebra::H]),
                                       raw in prop::collection::vec(-3.0f64..3.0, 24)) {
            let n = tag.dim();
            let x = Scalar::from_coeffs(tag, &raw[0..n]).unwrap();
            let y = Scalar::from_coeffs(tag, &raw[8..8 + n]).unwrap();
            let z = Scalar::from_coeffs(tag, &raw[16..16 + n]).unwrap();
            let l = (x * y) * z;
            let r = x * (y * z);
            prop_assert!(close(&l, &r, 1e-12, x.norm() * y.norm() * z.norm()));
        }

        #[test]
        fn octonions_alternative_and_moufang(x in scalar_strategy(DivisionAlgebra::O),
                                             y in scalar_strategy(DivisionAlgebra::O),
                                             z in scalar_strategy(DivisionAlgebra::O)) {
            let s = x.norm() * x.norm() * y.norm();
            prop_assert!(close(&(x * (x * y)), &((x * x) * y), 1e-12, s));
            prop_assert!(close(&((y * x) * x), &(y * (x * x)), 1e-12, s));
            // Moufang: z(x(zy)) = ((zx)z)y
            let s = z.norm() * z.norm() * x.norm() * y.norm();
            prop_assert!(close(&(z * (x * (z * y))), &(((z * x) * z) * y), 1e-12, s));
        }

        #[test]
        fn norm_is_multiplicative(tag in prop::sample::select(TAGS.to_vec()), raw in prop::collection::vec(-3.0f64..3.0, 16)) {
            let n = tag.dim();
            let x = Scalar::from_coeffs(tag, &raw[..n]).unwrap();
            let y = Scalar::from_coeffs(tag, &raw[8..8 + n]).unwrap();
            let lhs = (x * y).norm();
            let rhs = x.norm() * y.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300) + 1e-300);
        }

        #[test]
        fn conj_involution_and_real_part_symmetry(tag in prop::sample::select(TAGS.to_vec()), raw in prop::collection::vec(-3.0f64..3.0, 16)) {
            let n = tag.dim();
            let x = Scalar::from_coeffs(tag, &raw[..n]).unwrap();
            let y = Scalar::from_coeffs(tag, &raw[8..8 + n]).unwrap();
            prop_assert_eq!(x.conj().conj(), x);
            prop_assert!(((x * y).re() - (y * x).re()).abs() <= 1e-12 * (1.0 + x.norm() * y.norm()));
            // conj(xy) = conj(y) conj(x)
            prop_assert!(close(&(x * y).conj(), &(y.conj() * x.conj()), 1e-12, x.norm() * y.norm()));
        }
    }
}
