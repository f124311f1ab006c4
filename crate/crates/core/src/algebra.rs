//! Fixed-size complex and real linear algebra for spin-1/2 systems, the Pauli
//! vector and the spin polarization vector (SPV) map.
//!
//! Pauli matrices use the standard basis in which `sigma_z` is diagonal.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Result, SpinError};
use crate::scalar::{cplx, i_unit, Real};

/// Complex two-component spinor.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor<T> {
    pub c0: Complex<T>,
    pub c1: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn new(c0: Complex<T>, c1: Complex<T>) -> Self {
        Self { c0, c1 }
    }

    pub fn from_reals(re0: T, im0: T, re1: T, im1: T) -> Self {
        Self::new(cplx(re0, im0), cplx(re1, im1))
    }

    /// Spin up along `z`.
    pub fn up() -> Self {
        Self::new(Complex::from(T::one()), Complex::from(T::zero()))
    }

    /// Spin down along `z`.
    pub fn down() -> Self {
        Self::new(Complex::from(T::zero()), Complex::from(T::one()))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn norm_sqr(&self) -> T {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Hermitian inner product `<self|other> = self^dagger other`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        Self::new(self.c0 * z, self.c1 * z)
    }

    pub fn scale_real(&self, a: T) -> Self {
        Self::new(self.c0 * a, self.c1 * a)
    }

    /// Returns `self / |self|`, or `None` for the zero spinor.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero() && n.is_finite()).then(|| self.scale_real(n.recip()))
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm() - T::one()).abs() <= tol
    }

    /// Errors with [`SpinError::NotNormalized`] if the norm deviates from one
    /// by more than the input tolerance.
    pub fn check_normalized(&self, what: &'static str) -> Result<()> {
        if self.is_normalized(T::input_norm_tol()) {
            Ok(())
        } else {
            Err(SpinError::NotNormalized { what, norm: self.norm().as_f64() })
        }
    }

    pub fn as_array(&self) -> [Complex<T>; 2] {
        [self.c0, self.c1]
    }

    pub fn is_finite(&self) -> bool {
        [self.c0.re, self.c0.im, self.c1.re, self.c1.im].iter().all(|x| x.is_finite())
    }
}

impl<T: Real> Add for Spinor<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl<T: Real> AddAssign for Spinor<T> {
    fn add_assign(&mut self, rhs: Self) {
        self.c0 += rhs.c0;
        self.c1 += rhs.c1;
    }
}

impl<T: Real> Sub for Spinor<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl<T: Real> Neg for Spinor<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c0, -self.c1)
    }
}

impl<T: Real> Mul<Complex<T>> for Spinor<T> {
    type Output = Self;
    fn mul(self, z: Complex<T>) -> Self {
        self.scale(z)
    }
}

/// Generalized Jones vector: the coefficients of a spinor in an eigenspinor
/// basis `(chi_plus, chi_minus)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector<T> {
    pub alpha1: Complex<T>,
    pub alpha2: Complex<T>,
}

impl<T: Real> JonesVector<T> {
    /// Checked constructor; the pair must have unit norm.
    pub fn new(alpha1: Complex<T>, alpha2: Complex<T>) -> Result<Self> {
        let v = Self { alpha1, alpha2 };
        v.as_spinor().check_normalized("Jones vector")?;
        Ok(v)
    }

    /// Scales a nonzero pair to unit norm.
    pub fn normalize(alpha1: Complex<T>, alpha2: Complex<T>) -> Result<Self> {
        let s = Spinor::new(alpha1, alpha2)
            .normalized()
            .ok_or(SpinError::NotNormalized { what: "Jones vector", norm: 0.0 })?;
        Ok(Self { alpha1: s.c0, alpha2: s.c1 })
    }

    /// `(1, 0)`: pure `+` eigen component.
    pub fn plus() -> Self {
        Self { alpha1: Complex::from(T::one()), alpha2: Complex::from(T::zero()) }
    }

    /// `(0, 1)`: pure `-` eigen component.
    pub fn minus() -> Self {
        Self { alpha1: Complex::from(T::zero()), alpha2: Complex::from(T::one()) }
    }

    pub fn as_spinor(&self) -> Spinor<T> {
        Spinor::new(self.alpha1, self.alpha2)
    }
}

impl<T: Real> Default for JonesVector<T> {
    fn default() -> Self {
        Self::plus()
    }
}

/// Real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RVec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> RVec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn unit_x() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn unit_y() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn unit_z() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, a: T) -> Self {
        Self::new(self.x * a, self.y * a, self.z * a)
    }

    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero() && n.is_finite()).then(|| self.scale(n.recip()))
    }

    pub fn is_unit(&self, tol: T) -> bool {
        (self.norm() - T::one()).abs() <= tol
    }

    pub fn check_unit(&self, what: &'static str) -> Result<()> {
        if self.is_unit(T::input_norm_tol()) {
            Ok(())
        } else {
            Err(SpinError::NotNormalized { what, norm: self.norm().as_f64() })
        }
    }

    pub fn to_complex(&self) -> CVec3<T> {
        CVec3::new(self.x.into(), self.y.into(), self.z.into())
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.as_f64(), self.y.as_f64(), self.z.as_f64()]
    }
}

impl<T: Real> Add for RVec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> AddAssign for RVec3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> Sub for RVec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for RVec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for RVec3<T> {
    type Output = Self;
    fn mul(self, a: T) -> Self {
        self.scale(a)
    }
}

impl<T> Index<usize> for RVec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("RVec3 index {i} out of range"),
        }
    }
}

/// Complex 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3<T> {
    pub x: Complex<T>,
    pub y: Complex<T>,
    pub z: Complex<T>,
}

impl<T: Real> CVec3<T> {
    pub fn new(x: Complex<T>, y: Complex<T>, z: Complex<T>) -> Self {
        Self { x, y, z }
    }

    /// `re + i im` built from two real vectors.
    pub fn from_parts(re: &RVec3<T>, im: &RVec3<T>) -> Self {
        Self::new(cplx(re.x, im.x), cplx(re.y, im.y), cplx(re.z, im.z))
    }

    /// Bilinear (non-conjugating) product `a . b`.
    pub fn dot(&self, o: &Self) -> Complex<T> {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Hermitian product `a . b*`.
    pub fn hermitian_dot(&self, o: &Self) -> Complex<T> {
        self.x * o.x.conj() + self.y * o.y.conj() + self.z * o.z.conj()
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    pub fn norm(&self) -> T {
        self.hermitian_dot(self).re.sqrt()
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        Self::new(self.x * z, self.y * z, self.z * z)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    pub fn re(&self) -> RVec3<T> {
        RVec3::new(self.x.re, self.y.re, self.z.re)
    }

    pub fn im(&self) -> RVec3<T> {
        RVec3::new(self.x.im, self.y.im, self.z.im)
    }

    pub fn as_array(&self) -> [Complex<T>; 3] {
        [self.x, self.y, self.z]
    }
}

impl<T: Real> Add for CVec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for CVec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// 2x2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2C<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Mat2C<T> {
    pub fn new(m: [[Complex<T>; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::diag(T::one().into(), T::one().into())
    }

    pub fn diag(a: Complex<T>, b: Complex<T>) -> Self {
        let z = Complex::from(T::zero());
        Self::new([[a, z], [z, b]])
    }

    /// Matrix whose columns are the given spinors.
    pub fn from_columns(a: &Spinor<T>, b: &Spinor<T>) -> Self {
        Self::new([[a.c0, b.c0], [a.c1, b.c1]])
    }

    pub fn column(&self, j: usize) -> Spinor<T> {
        Spinor::new(self.m[0][j], self.m[1][j])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|e| *e *= z);
        out
    }

    pub fn apply(&self, s: &Spinor<T>) -> Spinor<T> {
        Spinor::new(self.m[0][0] * s.c0 + self.m[0][1] * s.c1, self.m[1][0] * s.c0 + self.m[1][1] * s.c1)
    }

    pub fn frobenius_norm(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |acc, e| acc + e.norm_sqr()).sqrt()
    }

    /// `|| self - other ||_F`.
    pub fn distance(&self, other: &Self) -> T {
        (*self - *other).frobenius_norm()
    }

    /// `|| A^dagger A - 1 ||_F`.
    pub fn unitarity_residual(&self) -> T {
        (self.adjoint() * *self).distance(&Self::identity())
    }

    /// `|| A - A^dagger ||_F`.
    pub fn hermiticity_residual(&self) -> T {
        self.distance(&self.adjoint())
    }

    /// `self^dagger m self`.
    pub fn conjugate(&self, m: &Self) -> Self {
        self.adjoint() * *m * *self
    }

    /// Quadratic form `a^dagger M b`.
    pub fn sandwich(&self, a: &Spinor<T>, b: &Spinor<T>) -> Complex<T> {
        a.inner(&self.apply(b))
    }
}

impl<T: Real> Add for Mat2C<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self;
        for (a, b) in out.m.iter_mut().flatten().zip(o.m.iter().flatten()) {
            *a += *b;
        }
        out
    }
}

impl<T: Real> Sub for Mat2C<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut out = self;
        for (a, b) in out.m.iter_mut().flatten().zip(o.m.iter().flatten()) {
            *a -= *b;
        }
        out
    }
}

impl<T: Real> Neg for Mat2C<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-Complex::from(T::one()))
    }
}

impl<T: Real> Mul for Mat2C<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Self::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl<T: Real> Mul<Spinor<T>> for Mat2C<T> {
    type Output = Spinor<T>;
    fn mul(self, s: Spinor<T>) -> Spinor<T> {
        self.apply(&s)
    }
}

impl<T: Real> Mul<Complex<T>> for Mat2C<T> {
    type Output = Self;
    fn mul(self, z: Complex<T>) -> Self {
        self.scale(z)
    }
}

/// 3x3 real matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat3R<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Real> Mat3R<T> {
    pub fn new(m: [[T; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let mut m = [[T::zero(); 3]; 3];
        (0..3).for_each(|i| m[i][i] = T::one());
        Self::new(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[j][i];
            }
        }
        Self::new(m)
    }

    pub fn det(&self) -> T {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn apply(&self, v: &RVec3<T>) -> RVec3<T> {
        let row = |i: usize| self.m[i][0] * v.x + self.m[i][1] * v.y + self.m[i][2] * v.z;
        RVec3::new(row(0), row(1), row(2))
    }

    /// Applies the matrix to a complex vector (real and imaginary parts separately).
    pub fn apply_complex(&self, v: &CVec3<T>) -> CVec3<T> {
        CVec3::from_parts(&self.apply(&v.re()), &self.apply(&v.im()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |acc, e| acc + *e * *e).sqrt()
    }

    pub fn distance(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for (a, b) in self.m.iter().flatten().zip(other.m.iter().flatten()) {
            acc += (*a - *b) * (*a - *b);
        }
        acc.sqrt()
    }

    /// `|| R^T R - 1 ||_F`.
    pub fn orthogonality_residual(&self) -> T {
        (self.transpose() * *self).distance(&Self::identity())
    }
}

impl<T: Real> Mul for Mat3R<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).fold(T::zero(), |acc, k| acc + self.m[i][k] * o.m[k][j]);
            }
        }
        Self::new(m)
    }
}

impl<T: Real> Mul<RVec3<T>> for Mat3R<T> {
    type Output = RVec3<T>;
    fn mul(self, v: RVec3<T>) -> RVec3<T> {
        self.apply(&v)
    }
}

/// The Pauli matrices `[sigma_x, sigma_y, sigma_z]`.
pub fn pauli<T: Real>() -> [Mat2C<T>; 3] {
    let o = Complex::from(T::zero());
    let l = Complex::from(T::one());
    let i = i_unit::<T>();
    [Mat2C::new([[o, l], [l, o]]), Mat2C::new([[o, -i], [i, o]]), Mat2C::new([[l, o], [o, -l]])]
}

/// `a . sigma` for a complex vector `a`.
pub fn dot_sigma<T: Real>(a: &CVec3<T>) -> Mat2C<T> {
    let i = i_unit::<T>();
    Mat2C::new([[a.z, a.x - i * a.y], [a.x + i * a.y, -a.z]])
}

/// `a . sigma` for a real vector `a`.
pub fn dot_sigma_real<T: Real>(a: &RVec3<T>) -> Mat2C<T> {
    dot_sigma(&a.to_complex())
}

/// `(a . sigma)(b . sigma)`.
pub fn sigma_product<T: Real>(a: &RVec3<T>, b: &RVec3<T>) -> Mat2C<T> {
    dot_sigma_real(a) * dot_sigma_real(b)
}

/// Spin polarization vector `s = chi^dagger sigma chi` of a normalized spinor.
pub fn spv<T: Real>(chi: &Spinor<T>) -> Result<RVec3<T>> {
    chi.check_normalized("spinor")?;
    Ok(spin_density(chi))
}

/// `chi^dagger sigma chi` without a normalization check; for a normalized
/// spinor this is the SPV, otherwise it carries the factor `chi^dagger chi`.
pub fn spin_density<T: Real>(chi: &Spinor<T>) -> RVec3<T> {
    let cross = chi.c0.conj() * chi.c1;
    let two = T::lit(2.0);
    RVec3::new(two * cross.re, two * cross.im, chi.c0.norm_sqr() - chi.c1.norm_sqr())
}

/// `|| (w . sigma) chi - lambda chi ||_2`.
pub fn eigen_residual<T: Real>(w: &RVec3<T>, chi: &Spinor<T>, lambda: T) -> T {
    (dot_sigma_real(w).apply(chi) - chi.scale_real(lambda)).norm()
}
