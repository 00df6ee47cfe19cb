//! Double-double evaluation of Jordan products, quadratic representations
//! and spectral decompositions, for computations whose f64 error grows with
//! the square of a condition number.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use twofloat::TwoFloat;

use crate::algebra::Algebra;

pub(crate) type Dd = TwoFloat;

const ZERO: Dd = TwoFloat::from_f64(0.0);
const JACOBI_MAX_SWEEPS: usize = 12;

/// Nonzero structure constants `e_i ∘ e_j = Σ_k c_ijk e_k`.
#[derive(Debug)]
pub(crate) struct Structure {
    dim: usize,
    terms: Vec<(u32, u32, u32, f64, Dd)>,
    unit: Vec<Dd>,
}

// The canonical bases only produce constants of the form ±2^-k or ±2^-k·√2^±1.
// Recovering them exactly keeps products of exact inputs at double-double accuracy.
fn snap(c: f64) -> Dd {
    let a = c.abs();
    let sign = c.signum();
    for k in 0..8 {
        let s = (0.5f64).powi(k);
        if (a - s).abs() <= 4.0 * f64::EPSILON * a {
            return Dd::from(sign * s);
        }
        for r in [twofloat::consts::FRAC_1_SQRT_2, twofloat::consts::SQRT_2] {
            let v = r * s;
            if (a - v.hi()).abs() <= 4.0 * f64::EPSILON * a {
                return v * sign;
            }
        }
    }
    Dd::from(c)
}

impl Structure {
    pub(crate) fn new(alg: &Algebra) -> Structure {
        let n = alg.dim();
        let mut terms = Vec::new();
        let mut ei = DVector::zeros(n);
        let mut ej = DVector::zeros(n);
        for i in 0..n {
            ei[i] = 1.0;
            for j in i..n {
                ej[j] = 1.0;
                let prod = alg.direct_product(&ei, &ej);
                for (k, &c) in prod.iter().enumerate() {
                    if c.abs() > 1e-14 {
                        let d = snap(c);
                        terms.push((i as u32, j as u32, k as u32, c, d));
                        if i != j {
                            terms.push((j as u32, i as u32, k as u32, c, d));
                        }
                    }
                }
                ej[j] = 0.0;
            }
            ei[i] = 0.0;
        }
        let unit = alg.unit_coords().iter().map(|&u| snap(u)).collect();
        Structure { dim: n, terms, unit }
    }

    /// `L_a` in f64.
    pub(crate) fn l_matrix(&self, a: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(i, j, k, c, _) in &self.terms {
            m[(k as usize, j as usize)] += c * a[i as usize];
        }
        m
    }

    /// `x ∘ y` in f64.
    pub(crate) fn product(&self, x: &[f64], y: &[f64]) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for &(i, j, k, c, _) in &self.terms {
            out[k as usize] += c * x[i as usize] * y[j as usize];
        }
        out
    }

    pub(crate) fn product_dd(&self, x: &[Dd], y: &[Dd]) -> Vec<Dd> {
        let mut out = vec![ZERO; self.dim];
        for &(i, j, k, _, c) in &self.terms {
            out[k as usize] += c * x[i as usize] * y[j as usize];
        }
        out
    }

    pub(crate) fn l_dd(&self, a: &[Dd]) -> DdMatrix {
        let mut m = DdMatrix::zeros(self.dim);
        for &(i, j, k, _, c) in &self.terms {
            let v = m.get(k as usize, j as usize) + c * a[i as usize];
            m.set(k as usize, j as usize, v);
        }
        m
    }

    /// `Q_a = 2 L_a² − L_{a²}`.
    pub(crate) fn q_dd(&self, a: &[Dd]) -> DdMatrix {
        let l = self.l_dd(a);
        let l2 = self.l_dd(&self.product_dd(a, a));
        let mut m = l.mul(&l);
        for (v, w) in m.data.iter_mut().zip(&l2.data) {
            *v = *v * 2.0 - *w;
        }
        m
    }

    /// Spectral pairs `(λ, p)` of `a` with distinct eigenvalues, by a
    /// double-double eigendecomposition of `L_a` and projection of the unit
    /// onto its eigenspaces.
    pub(crate) fn spectral_dd(&self, a: &[Dd]) -> Vec<(Dd, Vec<Dd>)> {
        let n = self.dim;
        if n == 0 {
            return Vec::new();
        }
        let (vals, vecs) = eigh(&self.l_dd(a));
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).expect("finite eigenvalues"));
        let scale = vals.iter().map(|v| v.hi().abs()).fold(0.0, f64::max);
        let tol = 1e-26 * scale.max(f64::MIN_POSITIVE);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match groups.last_mut() {
                Some(g) if (vals[i] - vals[*g.last().unwrap()]).hi() <= tol => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        let mut out = Vec::new();
        for g in groups {
            let mut p = vec![ZERO; n];
            for &c in &g {
                let mut w = ZERO;
                for r in 0..n {
                    w += vecs.get(r, c) * self.unit[r];
                }
                for (r, pr) in p.iter_mut().enumerate() {
                    *pr += vecs.get(r, c) * w;
                }
            }
            let weight = dot(&p, &self.unit);
            if weight.hi() <= 0.25 {
                continue;
            }
            let lambda = dot(&p, a) / dot(&p, &p);
            out.push((lambda, p));
        }
        out
    }
}

pub(crate) fn dot(x: &[Dd], y: &[Dd]) -> Dd {
    x.iter().zip(y).fold(ZERO, |acc, (a, b)| acc + *a * *b)
}

pub(crate) fn to_dd(x: &DVector<f64>) -> Vec<Dd> {
    x.iter().map(|&v| Dd::from(v)).collect()
}

pub(crate) fn to_f64(x: &[Dd]) -> DVector<f64> {
    DVector::from_iterator(x.len(), x.iter().map(|v| v.hi() + v.lo()))
}

/// Square double-double matrix, row-major.
#[derive(Debug, Clone)]
pub(crate) struct DdMatrix {
    n: usize,
    data: Vec<Dd>,
}

impl DdMatrix {
    pub(crate) fn zeros(n: usize) -> DdMatrix {
        DdMatrix { n, data: vec![ZERO; n * n] }
    }

    pub(crate) fn from_f64(m: &DMatrix<f64>) -> DdMatrix {
        let n = m.nrows();
        let mut out = DdMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, Dd::from(m[(r, c)]));
            }
        }
        out
    }

    #[inline]
    pub(crate) fn get(&self, r: usize, c: usize) -> Dd {
        self.data[r * self.n + c]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, v: Dd) {
        self.data[r * self.n + c] = v;
    }

    pub(crate) fn mul(&self, other: &DdMatrix) -> DdMatrix {
        let n = self.n;
        let mut out = DdMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.hi() == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[r * n..(r + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * *b;
                }
            }
        }
        out
    }

    pub(crate) fn transpose(&self) -> DdMatrix {
        let mut out = DdMatrix::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub(crate) fn mul_vec(&self, x: &[Dd]) -> Vec<Dd> {
        (0..self.n).map(|r| dot(&self.data[r * self.n..(r + 1) * self.n], x)).collect()
    }

    pub(crate) fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |r, c| {
            let v = self.get(r, c);
            v.hi() + v.lo()
        })
    }
}

/// Eigenvalues and orthonormal eigenvectors (columns) of a symmetric matrix.
/// An f64 eigenbasis is re-orthonormalised in double-double and then
/// polished by cyclic Jacobi sweeps.
pub(crate) fn eigh(a: &DdMatrix) -> (Vec<Dd>, DdMatrix) {
    let n = a.n;
    let f = a.to_f64();
    let f = (&f + f.transpose()) * 0.5;
    let start = SymmetricEigen::new(f).eigenvectors;
    let mut v = DdMatrix::from_f64(&start);
    // one Newton–Schulz step V ← V(3 − VᵀV)/2 brings VᵀV to I at double-double level
    let mut g = v.transpose().mul(&v);
    for (i, x) in g.data.iter_mut().enumerate() {
        *x = -*x;
        if i % (n + 1) == 0 {
            *x += 3.0;
        }
        *x *= 0.5;
    }
    v = v.mul(&g);
    let mut m = v.transpose().mul(&a.mul(&v));
    let norm = m.data.iter().map(|x| x.hi() * x.hi()).sum::<f64>().sqrt();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m.get(p, q).hi().powi(2);
            }
        }
        if off.sqrt() <= 1e-31 * norm {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq.hi().abs() <= 1e-34 * norm {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (apq * 2.0);
                let t = if theta.hi() >= 0.0 {
                    (theta + (theta * theta + 1.0).sqrt()).recip()
                } else {
                    -(-theta + (theta * theta + 1.0).sqrt()).recip()
                };
                let c = (t * t + 1.0).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    ((0..n).map(|i| m.get(i, i)).collect(), v)
}
