//! Scalar fields.
//!
//! Every space, operator and search in this crate is generic over a
//! [`Scalar`]: `f32`/`f64` for real spaces and `Complex<f32>`/`Complex<f64>`
//! for complex ones. The field of a space is therefore a type-level choice,
//! and [`Scalar::IS_COMPLEX`] tells the algorithms which unimodular set
//! they are working with.

use core::fmt::{Debug, Display};
use core::iter::Sum;
use core::ops::{AddAssign, Neg};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive, Zero};
use serde::Serialize;

/// Real floating-point type underlying a field.
pub trait Real:
    Float
    + num_traits::NumAssign
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + Sum
    + AddAssign
    + Serialize
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal; every value used as a literal is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Element of the scalar field 𝔽 ∈ {ℝ, ℂ}.
pub trait Scalar:
    Num + Copy + PartialEq + Neg<Output = Self> + AddAssign + Sum + Debug + Serialize + Send + Sync + 'static
{
    type Real: Real;

    const IS_COMPLEX: bool;

    /// Dimension of 𝔽 as a real vector space.
    const REAL_DIM: usize = if Self::IS_COMPLEX { 2 } else { 1 };

    fn from_real(r: Self::Real) -> Self;

    /// Builds `re + i·im`; the imaginary part is dropped for real fields.
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;

    fn re(self) -> Self::Real;

    fn im(self) -> Self::Real;

    fn conj(self) -> Self;

    fn modulus(self) -> Self::Real;

    fn scale(self, r: Self::Real) -> Self;

    fn is_finite(self) -> bool {
        self.re().is_finite() && self.im().is_finite()
    }

    /// `z/|z|`, with `phase(0) = 1`.
    fn phase(self) -> Self {
        let m = self.modulus();
        if m == Self::Real::zero() {
            Self::one()
        } else {
            self.scale(m.recip())
        }
    }

    /// `e^{iθ}` for complex fields. For real fields only θ ∈ {0, π} are
    /// meaningful and the sign of `cos θ` is returned.
    fn unimodular(theta: Self::Real) -> Self;
}

macro_rules! impl_real_scalar {
    ($($t:ty),*) => {
        $(
            impl Scalar for $t {
                type Real = $t;

                const IS_COMPLEX: bool = false;

                #[inline]
                fn from_real(r: $t) -> Self {
                    r
                }

                #[inline]
                fn from_parts(re: $t, _im: $t) -> Self {
                    re
                }

                #[inline]
                fn re(self) -> $t {
                    self
                }

                #[inline]
                fn im(self) -> $t {
                    0.0
                }

                #[inline]
                fn conj(self) -> Self {
                    self
                }

                #[inline]
                fn modulus(self) -> $t {
                    self.abs()
                }

                #[inline]
                fn scale(self, r: $t) -> Self {
                    self * r
                }

                #[inline]
                fn unimodular(theta: $t) -> Self {
                    if theta.cos() >= 0.0 {
                        1.0
                    } else {
                        -1.0
                    }
                }
            }
        )*
    };
}

impl_real_scalar!(f32, f64);

impl<R: Real> Scalar for Complex<R> {
    type Real = R;

    const IS_COMPLEX: bool = true;

    #[inline]
    fn from_real(r: R) -> Self {
        Complex::new(r, R::zero())
    }

    #[inline]
    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
    }

    #[inline]
    fn re(self) -> R {
        self.re
    }

    #[inline]
    fn im(self) -> R {
        self.im
    }

    #[inline]
    fn conj(self) -> Self {
        Complex::conj(&self)
    }

    #[inline]
    fn modulus(self) -> R {
        self.norm()
    }

    #[inline]
    fn scale(self, r: R) -> Self {
        Complex::new(self.re * r, self.im * r)
    }

    #[inline]
    fn unimodular(theta: R) -> Self {
        Complex::new(theta.cos(), theta.sin())
    }
}

/// Signed/unsigned helpers shared by the search code.
pub(crate) fn sign<R: Real>(r: R) -> R {
    if r < R::zero() {
        -R::one()
    } else {
        R::one()
    }
}
