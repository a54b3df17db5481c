//! Exact (Gaussian-rational) vectors, matrices and spanning sets.
//!
//! Exact certification works on "siblings": spanning sets with rational
//! amplitudes whose span is the object being certified (or a member of the
//! same family with rescaled amplitude ratios). Columns need not be
//! normalized; only the span matters.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use num_traits::Zero;

use crate::constructions::Subspace;
use crate::linalg::{self, C64, CMatrix};
use crate::polysys::{self, GaussianRational, Rational};
use crate::tensor::{Bipartition, Dims, FactorizationScheme};
use crate::{Error, Result};

/// Largest denominator accepted when reading floating point data as rationals.
pub const DEFAULT_MAX_DEN: u64 = 100_000;

/// Residual accepted when reading floating point data as rationals.
pub const DEFAULT_RATIONAL_TOL: f64 = 1e-12;

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    /// Integer entries p scaled by 1/den.
    pub fn from_integers(rows: usize, cols: usize, entries: &[i64], den: i64) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(ExactMatrix { rows, cols, data: entries.iter().map(|&p| GaussianRational::ratio(p, den)).collect() })
    }

    /// Reads a floating point matrix entrywise as rationals.
    pub fn rationalize(m: &CMatrix, max_den: u64, tol: f64) -> Result<Self> {
        let data = m.as_slice().iter().map(|&z| rationalize_c64(z, max_den, tol)).collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { rows: m.rows(), cols: m.cols(), data })
    }

    /// Relabeling (and optional unitary) of a factorization scheme, exactly.
    pub fn from_scheme(scheme: &FactorizationScheme) -> Result<Self> {
        let d = scheme.basis_map.len();
        let d2 = scheme.new_dims.1;
        let p = Self::from_fn(d, d, |r, l| {
            let (a, b) = scheme.basis_map[l];
            if a * d2 + b == r { GaussianRational::one() } else { GaussianRational::zero() }
        });
        match &scheme.unitary {
            Some(u) => Ok(p.matmul(&Self::rationalize(u, DEFAULT_MAX_DEN, DEFAULT_RATIONAL_TOL)?)),
            None => Ok(p),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn matmul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(self.cols, v.len(), "vector length differs");
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, x) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn kron(&self, o: &ExactMatrix) -> ExactMatrix {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| &self[(i / o.rows, j / o.cols)] * &o[(i % o.rows, j % o.cols)])
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_vec(self.rows, self.cols, self.data.iter().map(|z| z.to_c64()).collect()).expect("consistent shape")
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;

    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

/// Reads one complex number as a Gaussian rational.
pub fn rationalize_c64(z: C64, max_den: u64, tol: f64) -> Result<GaussianRational> {
    let part = |x: f64| {
        if x.abs() <= tol {
            return Some(Rational::zero());
        }
        polysys::rationalize(x, max_den, tol)
    };
    match (part(z.re), part(z.im)) {
        (Some(re), Some(im)) => Ok(GaussianRational::new(re, im)),
        _ => Err(Error::Irrational(format!("{z}"))),
    }
}

/// Rescales `v` so that its largest-magnitude amplitude is 1 and reads the
/// result as Gaussian rationals. Succeeds exactly when all amplitude ratios
/// are (approximately) rational.
pub fn rationalize_vector(v: &[C64], max_den: u64, tol: f64) -> Result<Vec<GaussianRational>> {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
        .filter(|z| z.norm_sqr() > 0.0)
        .ok_or_else(|| Error::Irrational("zero vector".into()))?;
    v.iter().map(|&z| rationalize_c64(z / pivot, max_den, tol)).collect()
}

/// Applies `m` to one subsystem of an exact flat vector (cf.
/// [`crate::tensor::apply_local_slice`]).
pub fn apply_local_exact(amps: &[GaussianRational], dims: &[usize], subsystem: usize, m: &ExactMatrix) -> Vec<GaussianRational> {
    let left: usize = dims[..subsystem].iter().product();
    let right: usize = dims[subsystem + 1..].iter().product();
    let din = dims[subsystem];
    let dout = m.rows();
    let mut out = vec![GaussianRational::zero(); left * dout * right];
    for l in 0..left {
        for j in 0..din {
            for r in 0..right {
                let a = &amps[(l * din + j) * right + r];
                if a.is_zero() {
                    continue;
                }
                for i in 0..dout {
                    let c = &m[(i, j)];
                    if !c.is_zero() {
                        let idx = (l * dout + i) * right + r;
                        out[idx] = &out[idx] + &(c * a);
                    }
                }
            }
        }
    }
    out
}

/// Linearly independent spanning set with Gaussian-rational amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSubspace {
    dims: Dims,
    basis: Vec<Vec<GaussianRational>>,
    /// The span belongs to a rescaled family member rather than to the
    /// floating point subspace it was derived from.
    span_sibling: bool,
}

impl ExactSubspace {
    /// Validates lengths and linear independence.
    pub fn new(dims: Dims, basis: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = dims.total();
        if let Some(v) = basis.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        let numeric: Vec<Vec<C64>> = basis.iter().map(|v| v.iter().map(|z| z.to_c64()).collect()).collect();
        if basis.is_empty() || linalg::gram_schmidt(&numeric, 1e-10).len() != basis.len() {
            return Err(Error::InvalidDims("exact spanning set is empty or linearly dependent".into()));
        }
        Ok(ExactSubspace { dims, basis, span_sibling: false })
    }

    /// Builds a spanning set from sparse integer terms: each vector is a list
    /// of (coefficient, digits).
    pub fn from_terms(dims: Dims, vectors: &[Vec<(i64, Vec<usize>)>]) -> Result<Self> {
        let basis = vectors
            .iter()
            .map(|terms| {
                let mut v = vec![GaussianRational::zero(); dims.total()];
                for (c, digits) in terms {
                    let i = dims.flat(digits);
                    v[i] = &v[i] + &GaussianRational::from_integer(*c);
                }
                v
            })
            .collect();
        Self::new(dims, basis)
    }

    /// Exact spanning set of a floating point subspace whose vectors have
    /// rational amplitude ratios.
    pub fn rationalize(sub: &Subspace, max_den: u64, tol: f64) -> Result<Self> {
        let basis = sub.basis().iter().map(|s| rationalize_vector(s.amplitudes(), max_den, tol)).collect::<Result<Vec<_>>>()?;
        Self::new(sub.dims().clone(), basis)
    }

    pub fn with_span_sibling(mut self, flag: bool) -> Self {
        self.span_sibling = flag;
        self
    }

    pub fn span_sibling(&self) -> bool {
        self.span_sibling
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn basis(&self) -> &[Vec<GaussianRational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Applies a local map on `subsystem`, splitting it into `new_locals`.
    pub fn apply_local(&self, m: &ExactMatrix, subsystem: usize, new_locals: &[usize]) -> Result<Self> {
        let locals = self.dims.locals();
        if subsystem >= locals.len() {
            return Err(Error::OutOfRange(format!("subsystem {subsystem}")));
        }
        if m.cols() != locals[subsystem] {
            return Err(Error::DimensionMismatch { expected: locals[subsystem], found: m.cols() });
        }
        let prod: usize = new_locals.iter().product();
        if prod != m.rows() {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: prod });
        }
        let dims = crate::tensor::split_dims(&self.dims, subsystem, new_locals)?;
        let basis = self.basis.iter().map(|v| apply_local_exact(v, locals, subsystem, m)).collect();
        Ok(ExactSubspace { dims, basis, span_sibling: self.span_sibling })
    }

    /// Exact counterpart of [`crate::tensor::factorize_subsystem`].
    pub fn factorize(&self, scheme: &FactorizationScheme) -> Result<Self> {
        scheme.validate(&self.dims)?;
        let (d1, d2) = scheme.new_dims;
        self.apply_local(&ExactMatrix::from_scheme(scheme)?, scheme.source_subsystem, &[d1, d2])
    }

    /// Coefficient matrices a^(μ) of every spanning vector across `cut`.
    pub fn matricize(&self, cut: &Bipartition) -> Result<Vec<ExactMatrix>> {
        cut.check(&self.dims)?;
        Ok(self
            .basis
            .iter()
            .map(|v| {
                let (r, c, data) = crate::tensor::matricize_slice(v, &self.dims, cut);
                ExactMatrix { rows: r, cols: c, data }
            })
            .collect())
    }

    /// Orthonormal floating point basis of the same span.
    pub fn to_subspace(&self) -> Result<Subspace> {
        let numeric: Vec<Vec<C64>> = self.basis.iter().map(|v| v.iter().map(|z| z.to_c64()).collect()).collect();
        Subspace::orthonormalized(self.dims.clone(), &numeric)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(p: i64) -> GaussianRational {
        GaussianRational::from_integer(p)
    }

    #[test]
    fn matmul_and_kron_match_floating_point() {
        let a = ExactMatrix::from_integers(2, 2, &[1, 2, -3, 4], 3).unwrap();
        let b = ExactMatrix::from_fn(2, 2, |i, j| GaussianRational::from_parts(((i + j) as i64, 1), (1, 2)));
        let p = a.matmul(&b).to_cmatrix();
        assert!(p.max_abs_diff(&a.to_cmatrix().matmul(&b.to_cmatrix())) < 1e-15);
        let k = a.kron(&b).to_cmatrix();
        assert!(k.max_abs_diff(&a.to_cmatrix().kron(&b.to_cmatrix())) < 1e-15);
    }

    #[test]
    fn vector_rationalization_divides_by_pivot() {
        let s = 0.5f64.sqrt();
        let v = [C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(-2.0 * s / 3.0, 0.0)];
        let q = rationalize_vector(&v, 1000, 1e-12).unwrap();
        assert_eq!(q, vec![gr(1), gr(0), GaussianRational::ratio(-2, 3)]);
        let w = [C64::new(1.0, 0.0), C64::new(2f64.sqrt(), 0.0)];
        assert!(matches!(rationalize_vector(&w, 1000, 1e-12), Err(Error::Irrational(_))));
    }

    #[test]
    fn local_application_agrees_with_numeric() {
        let dims = Dims::new(vec![2, 3]).unwrap();
        let sub = ExactSubspace::from_terms(dims, &[vec![(1, vec![0, 0]), (2, vec![1, 2])], vec![(1, vec![1, 1])]]).unwrap();
        let m = ExactMatrix::from_integers(4, 3, &[1, 0, 1, 0, 1, 0, 2, 0, -1, 0, 0, 1], 1).unwrap();
        let out = sub.apply_local(&m, 1, &[2, 2]).unwrap();
        assert_eq!(out.dims().locals(), &[2, 2, 2]);
        let numeric = crate::tensor::apply_local_slice(&sub.basis()[0].iter().map(|z| z.to_c64()).collect::<Vec<_>>(), &[2, 3], 1, &m.to_cmatrix());
        for (a, b) in out.basis()[0].iter().zip(&numeric) {
            assert!((a.to_c64() - b).norm() < 1e-15);
        }
    }

    #[test]
    fn dependent_sets_are_rejected() {
        let dims = Dims::new(vec![2, 2]).unwrap();
        let r = ExactSubspace::from_terms(dims, &[vec![(1, vec![0, 0])], vec![(3, vec![0, 0])]]);
        assert!(r.is_err());
    }
}
