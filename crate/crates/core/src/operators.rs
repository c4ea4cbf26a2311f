//! Dense linear operators on 𝔽^n.

use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{Float, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::radius::{candidates_unchecked, EngineConfig};
use crate::scalar::{Real, Scalar};
use crate::spaces::{Functional, NormedSpace, Vector};

/// Square matrix acting on column vectors, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Operator<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Operator<S> {
    /// Builds an operator from its rows.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Precondition("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            entries.extend(row);
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Operator { dim, entries })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&c| S::from_real(S::Real::lit(c))).collect()).collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Operator { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| S::zero())
    }

    pub fn diagonal(diag: &[S]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { S::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> S {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.dim).map(<[S]>::to_vec).collect()
    }

    pub fn apply(&self, x: &Vector<S>) -> Result<Vector<S>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(Vector::new(self.apply_slice(x.coords())))
    }

    pub(crate) fn apply_slice(&self, x: &[S]) -> Vec<S> {
        self.entries.chunks(self.dim).map(|row| row.iter().zip(x).map(|(&a, &b)| a * b).sum()).collect()
    }

    pub fn scaled(&self, c: S) -> Self {
        Operator { dim: self.dim, entries: self.entries.iter().map(|&a| a * c).collect() }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: S, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(Operator {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + c * b).collect(),
        })
    }

    pub fn max_abs_entry(&self) -> S::Real {
        self.entries.iter().map(|z| z.modulus()).fold(S::Real::zero(), |m, v| m.max(v))
    }

    /// A unit vector (in `space`) spanning part of the kernel, if the
    /// matrix is singular up to a relative pivot tolerance `rel_tol`.
    pub fn kernel_vector(&self, space: &NormedSpace<S>, rel_tol: f64) -> Result<Option<Vector<S>>> {
        space.check_dim(self.dim)?;
        let n = self.dim;
        let scale = self.max_abs_entry();
        if scale == S::Real::zero() {
            return Ok(Some(Vector::basis(n, 0)));
        }
        let thr = scale * S::Real::lit(rel_tol);
        // Gauss-Jordan elimination with partial pivoting to reduced row echelon form.
        let mut a = self.rows();
        let mut pivots: Vec<Option<usize>> = vec![None; n];
        let mut row = 0;
        for col in 0..n {
            if row == n {
                break;
            }
            let p = (row..n)
                .max_by(|&i, &k| a[i][col].modulus().partial_cmp(&a[k][col].modulus()).expect("finite"))
                .expect("nonempty range");
            if a[p][col].modulus() <= thr {
                continue;
            }
            a.swap(row, p);
            let inv = S::one() / a[row][col];
            for v in a[row].iter_mut() {
                *v = *v * inv;
            }
            for i in 0..n {
                if i != row {
                    let factor = a[i][col];
                    if factor != S::zero() {
                        let pivot = a[row].clone();
                        for (aij, &t) in a[i].iter_mut().zip(&pivot) {
                            *aij = *aij - factor * t;
                        }
                    }
                }
            }
            pivots[col] = Some(row);
            row += 1;
        }
        let Some(free) = (0..n).find(|&c| pivots[c].is_none()) else {
            return Ok(None);
        };
        let mut x = vec![S::zero(); n];
        x[free] = S::one();
        for (col, p) in pivots.iter().enumerate() {
            if let Some(r) = *p {
                x[col] = -a[r][free];
            }
        }
        space.normalize(&Vector::new(x))
    }
}

impl<S: Scalar> fmt::Debug for Operator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.dim)).finish()
    }
}

impl<S: Scalar> Serialize for Operator<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> core::result::Result<Ser::Ok, Ser::Error> {
        s.collect_seq(self.entries.chunks(self.dim))
    }
}

impl<S: Scalar> Add for &Operator<S> {
    type Output = Operator<S>;

    /// Panics on a dimension mismatch; use [`Operator::add_scaled`] for a fallible sum.
    fn add(self, rhs: Self) -> Operator<S> {
        self.add_scaled(S::one(), rhs).expect("operator dimensions agree")
    }
}

impl<S: Scalar> Sub for &Operator<S> {
    type Output = Operator<S>;

    fn sub(self, rhs: Self) -> Operator<S> {
        self.add_scaled(-S::one(), rhs).expect("operator dimensions agree")
    }
}

impl<S: Scalar> Neg for &Operator<S> {
    type Output = Operator<S>;

    fn neg(self) -> Operator<S> {
        self.scaled(-S::one())
    }
}

/// The rank-one operator `z ↦ x*(z)·x`, with matrix entries `x_i·x*_j`.
pub fn rank_one<S: Scalar>(xstar: &Functional<S>, x: &Vector<S>) -> Result<Operator<S>> {
    if xstar.dim() != x.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: xstar.dim() });
    }
    Ok(Operator::from_fn(x.dim(), |i, j| x[i] * xstar[j]))
}

/// `sup{‖Tx‖ : ‖x‖ = 1}` found by the sphere engine (a certified lower bound).
pub fn operator_norm<S: Scalar>(space: &NormedSpace<S>, t: &Operator<S>, cfg: &EngineConfig) -> Result<S::Real> {
    space.check_dim(t.dim())?;
    cfg.validate()?;
    Ok(norm_unchecked(space, t, cfg))
}

pub(crate) fn norm_unchecked<S: Scalar>(space: &NormedSpace<S>, t: &Operator<S>, cfg: &EngineConfig) -> S::Real {
    candidates_unchecked(space, |x: &[S]| space.norm_of(&t.apply_slice(x)), cfg)[0].value
}

/// Operators that recur in the worked examples.
pub mod fixtures {
    use super::*;

    /// `(x, y) ↦ (0, x)`.
    pub fn shift<S: Scalar>() -> Operator<S> {
        Operator::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).expect("2x2")
    }

    /// `(x, y) ↦ (y, x)`.
    pub fn swap<S: Scalar>() -> Operator<S> {
        Operator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2")
    }

    /// Planar rotation by `theta`.
    pub fn rotation<S: Scalar>(theta: f64) -> Operator<S> {
        let (s, c) = theta.sin_cos();
        Operator::from_real_rows(&[&[c, -s], &[s, c]]).expect("2x2")
    }
}
