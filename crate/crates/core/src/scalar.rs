//! Scalar abstraction shared by every numeric type in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar: `f32` or `f64`.
///
/// The associated constants carry the precision-dependent thresholds used by
/// the checked constructors. The `f64` values are the contract values; `f32`
/// values are scaled to its epsilon.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Bound on residuals of identities that hold exactly in exact arithmetic.
    const IDENTITY_TOL: f64;
    /// Allowed deviation of an input from unit norm.
    const INPUT_NORM_TOL: f64;
    /// Smallest `|w x I|` or `|sigma_pm chi|` accepted before a construction is
    /// declared degenerate.
    const DEGENERACY_EPS: f64;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    #[inline]
    fn identity_tol() -> Self {
        Self::lit(Self::IDENTITY_TOL)
    }

    #[inline]
    fn input_norm_tol() -> Self {
        Self::lit(Self::INPUT_NORM_TOL)
    }

    #[inline]
    fn degeneracy_eps() -> Self {
        Self::lit(Self::DEGENERACY_EPS)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const IDENTITY_TOL: f64 = 1e-12;
    const INPUT_NORM_TOL: f64 = 1e-9;
    const DEGENERACY_EPS: f64 = 1e-8;
}

impl Real for f32 {
    const IDENTITY_TOL: f64 = 1e-5;
    const INPUT_NORM_TOL: f64 = 1e-5;
    const DEGENERACY_EPS: f64 = 1e-4;
}

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn i_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Reduce an angle to the branch `(-pi, pi]`.
pub fn wrap_angle<T: Real>(angle: T) -> T {
    let two_pi = T::TAU();
    let mut a = angle % two_pi;
    if a > T::PI() {
        a -= two_pi;
    } else if a <= -T::PI() {
        a += two_pi;
    }
    a
}
