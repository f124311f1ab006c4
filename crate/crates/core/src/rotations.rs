//! SO(3) and SU(2) rotation matrices, the `Sigma` generators, the 2-to-1
//! correspondence between them, and residual checkers for the two rotation
//! laws of `I`-characterized spinors.
//!
//! Residuals of matrix identities use the Frobenius norm. Phase comparisons
//! are done on complex numbers, never by subtracting angles, so angles outside
//! `[0, 2pi)` are accepted everywhere.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::algebra::{dot_sigma_real, spv, JonesVector, Mat2C, Mat3R, RVec3};
use crate::error::{Result, SpinError};
use crate::frames::{compose_spinor, eigen_spinors, mapping_matrix, Frame, ReferenceSpinors};
use crate::scalar::{i_unit, Real};

/// Rotation through `angle` radians about a unit `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle<T> {
    pub axis: RVec3<T>,
    pub angle: T,
}

impl<T: Real> AxisAngle<T> {
    /// Checked constructor: the axis must be a unit vector and the angle finite.
    pub fn new(axis: RVec3<T>, angle: T) -> Result<Self> {
        axis.check_unit("rotation axis")?;
        if !angle.is_finite() {
            return Err(SpinError::NonFinite("rotation angle"));
        }
        Ok(Self { axis, angle })
    }

    pub(crate) fn unchecked(axis: RVec3<T>, angle: T) -> Self {
        Self { axis, angle }
    }

    /// Same axis, angle scaled by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self { axis: self.axis, angle: self.angle * factor }
    }
}

/// 3x3 complex matrix; only needed for the `Sigma` generators.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat3C<T> {
    pub m: [[Complex<T>; 3]; 3],
}

impl<T: Real> Mat3C<T> {
    pub fn from_real(r: &Mat3R<T>) -> Self {
        let mut m = [[Complex::from(T::zero()); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = r.m[i][j].into();
            }
        }
        Self { m }
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|e| *e *= z);
        out
    }

    pub fn apply(&self, v: &RVec3<T>) -> [Complex<T>; 3] {
        let a = v.as_array();
        std::array::from_fn(|i| (0..3).fold(Complex::from(T::zero()), |acc, k| acc + self.m[i][k] * a[k]))
    }

    /// Real part, plus the largest imaginary magnitude that was dropped.
    pub fn real_part(&self) -> (Mat3R<T>, T) {
        let mut r = [[T::zero(); 3]; 3];
        let mut max_im = T::zero();
        for (i, row) in r.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[i][j].re;
                max_im = max_im.max(self.m[i][j].im.abs());
            }
        }
        (Mat3R::new(r), max_im)
    }
}

impl<T: Real> Add for Mat3C<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self;
        for (a, b) in out.m.iter_mut().flatten().zip(o.m.iter().flatten()) {
            *a += *b;
        }
        out
    }
}

impl<T: Real> Sub for Mat3C<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut out = self;
        for (a, b) in out.m.iter_mut().flatten().zip(o.m.iter().flatten()) {
            *a -= *b;
        }
        out
    }
}

impl<T: Real> Mul<Complex<T>> for Mat3C<T> {
    type Output = Self;
    fn mul(self, z: Complex<T>) -> Self {
        self.scale(z)
    }
}

/// `[Sigma_x, Sigma_y, Sigma_z]`, the spin-1 generators with
/// `a x b = -i (a . Sigma) b`.
pub fn sigma_generators<T: Real>() -> [Mat3C<T>; 3] {
    let o = Complex::from(T::zero());
    let i = i_unit::<T>();
    [
        Mat3C { m: [[o, o, o], [o, o, -i], [o, i, o]] },
        Mat3C { m: [[o, o, i], [o, o, o], [-i, o, o]] },
        Mat3C { m: [[o, -i, o], [i, o, o], [o, o, o]] },
    ]
}

/// `a . Sigma`.
pub fn dot_generators<T: Real>(a: &RVec3<T>) -> Mat3C<T> {
    let [sx, sy, sz] = sigma_generators::<T>();
    sx * Complex::from(a.x) + sy * Complex::from(a.y) + sz * Complex::from(a.z)
}

/// `R = cos(phi) - i (w . Sigma) sin(phi) + (1 - cos(phi)) w w^T`.
pub fn so3_rotation<T: Real>(r: &AxisAngle<T>) -> Mat3R<T> {
    let (s, c) = r.angle.sin_cos();
    let w = r.axis.as_array();
    let mut outer = [[T::zero(); 3]; 3];
    for (i, row) in outer.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = (T::one() - c) * w[i] * w[j];
        }
    }
    let diag = Mat3C::from_real(&Mat3R::identity()) * Complex::from(c);
    let gen = dot_generators(&r.axis) * (-i_unit::<T>() * s);
    let full = diag + gen + Mat3C::from_real(&Mat3R::new(outer));
    // -i (w . Sigma) is real, so the imaginary part is exactly zero.
    full.real_part().0
}

/// `U = cos(phi/2) - i (w . sigma) sin(phi/2)`.
pub fn su2_rotation<T: Real>(r: &AxisAngle<T>) -> Mat2C<T> {
    let half = r.angle * T::lit(0.5);
    let (s, c) = half.sin_cos();
    Mat2C::identity().scale(c.into()) - dot_sigma_real(&r.axis).scale(i_unit::<T>() * s)
}

/// `|| (R a) . sigma - U (a . sigma) U^dagger ||_F`.
pub fn correspondence_residual<T: Real>(r: &AxisAngle<T>, a: &RVec3<T>) -> T {
    let rot = so3_rotation(r);
    let u = su2_rotation(r);
    let lhs = dot_sigma_real(&rot.apply(a));
    let rhs = u * dot_sigma_real(a) * u.adjoint();
    lhs.distance(&rhs)
}

/// Rotates `I` about the frame's own axis `w` by `phi` and rebuilds the triad.
pub fn rotate_characterization<T: Real>(f: &Frame<T>, phi: T) -> Frame<T> {
    let r = so3_rotation(&AxisAngle::unchecked(f.w, phi));
    Frame::new_unchecked(f.w, r.apply(&f.i_vec))
}

/// Residuals of the eigenspinor phase law under `I' = R(Phi w) I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseLawResiduals<T> {
    /// `|| chi_+(I') - e^{-i Phi} chi_+(I) ||`
    pub plus: T,
    /// `|| chi_-(I') - e^{+i Phi} chi_-(I) ||`
    pub minus: T,
    /// `|| chi_+(I') - U(2 Phi w) chi_+(I) ||`
    pub su2_plus: T,
    /// `|| chi_-(I') - U(2 Phi w) chi_-(I) ||`
    pub su2_minus: T,
}

impl<T: Real> PhaseLawResiduals<T> {
    pub fn max(&self) -> T {
        self.plus.max(self.minus).max(self.su2_plus).max(self.su2_minus)
    }
}

pub fn phase_law_residuals<T: Real>(f: &Frame<T>, phi: T, refs: &ReferenceSpinors<T>) -> Result<PhaseLawResiduals<T>> {
    let rotated = rotate_characterization(f, phi);
    let before = eigen_spinors(f, refs)?;
    let after = eigen_spinors(&rotated, refs)?;
    let phase = Complex::from_polar(T::one(), -phi);
    let u2 = su2_rotation(&AxisAngle::unchecked(f.w, phi + phi));
    Ok(PhaseLawResiduals {
        plus: (after.chi_plus - before.chi_plus.scale(phase)).norm(),
        minus: (after.chi_minus - before.chi_minus.scale(phase.conj())).norm(),
        su2_plus: (after.chi_plus - u2.apply(&before.chi_plus)).norm(),
        su2_minus: (after.chi_minus - u2.apply(&before.chi_minus)).norm(),
    })
}

/// Residuals of the spinor and SPV laws for `chi(I) = varpi(I) alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpvLawResiduals<T> {
    /// `|| chi(I') - U(2 Phi w) chi(I) ||`
    pub spinor: T,
    /// `| s(I') - R(2 Phi w) s(I) |`
    pub spv: T,
}

impl<T: Real> SpvLawResiduals<T> {
    pub fn max(&self) -> T {
        self.spinor.max(self.spv)
    }
}

pub fn spv_law_residuals<T: Real>(
    f: &Frame<T>,
    phi: T,
    alpha: &JonesVector<T>,
    refs: &ReferenceSpinors<T>,
) -> Result<SpvLawResiduals<T>> {
    let rotated = rotate_characterization(f, phi);
    let chi = compose_spinor(&mapping_matrix(f, refs)?, alpha);
    let chi_rot = compose_spinor(&mapping_matrix(&rotated, refs)?, alpha);
    let double = AxisAngle::unchecked(f.w, phi + phi);
    let spinor = (chi_rot - su2_rotation(&double).apply(&chi)).norm();
    let s_pred = so3_rotation(&double).apply(&spv(&chi)?);
    let spv_res = (spv(&chi_rot)? - s_pred).norm();
    Ok(SpvLawResiduals { spinor, spv: spv_res })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Spinor;
    use crate::frames::build_frame;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    type V = RVec3<f64>;
    type C = Complex<f64>;

    fn axis_angle(axis: V, angle: f64) -> AxisAngle<f64> {
        AxisAngle::new(axis, angle).unwrap()
    }

    /// Rodrigues' formula written with cross products only.
    fn rodrigues(axis: &V, angle: f64, a: &V) -> V {
        let (s, c) = angle.sin_cos();
        a.scale(c) + axis.cross(a).scale(s) + axis.scale(axis.dot(a) * (1.0 - c))
    }

    /// `exp(-i phi/2 w.sigma)` by a truncated power series.
    fn su2_series(axis: &V, angle: f64) -> Mat2C<f64> {
        let gen = dot_sigma_real(axis).scale(C::new(0.0, -angle / 2.0));
        let mut term = Mat2C::identity();
        let mut sum = Mat2C::identity();
        for n in 1..60 {
            term = (term * gen).scale(C::from(1.0 / n as f64));
            sum = sum + term;
        }
        sum
    }

    #[test]
    fn generators_cross_product() {
        let z = dot_generators(&V::unit_z());
        let out = z.apply(&V::unit_x());
        let v: Vec<C> = out.iter().map(|e| *e * C::new(0.0, -1.0)).collect();
        assert!((v[0] - C::from(0.0)).norm() < 1e-15);
        assert!((v[1] - C::from(1.0)).norm() < 1e-15);
        assert!((v[2] - C::from(0.0)).norm() < 1e-15);
    }

    #[test]
    fn generators_match_printed_entries() {
        let [sx, sy, sz] = sigma_generators::<f64>();
        let i = C::i();
        assert_eq!(sx.m[1][2], -i);
        assert_eq!(sx.m[2][1], i);
        assert_eq!(sy.m[0][2], i);
        assert_eq!(sy.m[2][0], -i);
        assert_eq!(sz.m[0][1], -i);
        assert_eq!(sz.m[1][0], i);
    }

    #[test]
    fn so3_fixtures() {
        assert!(so3_rotation(&axis_angle(V::unit_z(), 0.0)).distance(&Mat3R::identity()) < 1e-15);
        let r = so3_rotation(&axis_angle(V::unit_z(), FRAC_PI_2));
        assert!((r.apply(&V::unit_x()) - V::unit_y()).norm() < 1e-15);
    }

    #[test]
    fn su2_fixtures() {
        assert!(su2_rotation(&axis_angle(V::unit_z(), 0.0)).distance(&Mat2C::identity()) < 1e-15);
        let full = su2_rotation(&axis_angle(V::unit_z(), 2.0 * PI));
        assert!(full.distance(&(-Mat2C::identity())) < 1e-15);
        let quarter = su2_rotation(&axis_angle(V::unit_z(), FRAC_PI_2));
        let expected = Mat2C::diag(C::from_polar(1.0, -PI / 4.0), C::from_polar(1.0, PI / 4.0));
        assert!(quarter.distance(&expected) < 1e-15);
    }

    #[test]
    fn correspondence_fixtures() {
        assert!(correspondence_residual(&axis_angle(V::unit_z(), FRAC_PI_2), &V::unit_x()) < 1e-15);
        let n = V::new(1.0, 2.0, 3.0).normalized().unwrap();
        assert!(correspondence_residual(&axis_angle(n, 0.0), &V::new(0.3, -0.1, 2.0)) < 1e-15);
    }

    #[test]
    fn rotate_characterization_fixtures() {
        let f = build_frame(V::unit_z(), V::unit_x()).unwrap();
        assert!((rotate_characterization(&f, FRAC_PI_2).i_vec - V::unit_y()).norm() < 1e-15);
        assert!((rotate_characterization(&f, 2.0 * PI).i_vec - V::unit_x()).norm() < 1e-15);
    }

    #[test]
    fn phase_law_fixtures() {
        let refs = ReferenceSpinors::standard();
        let f = build_frame(V::unit_z(), V::unit_x()).unwrap();
        let rotated = rotate_characterization(&f, FRAC_PI_2);
        let pair = eigen_spinors(&rotated, &refs).unwrap();
        assert!((pair.chi_plus - Spinor::new(C::new(0.0, -1.0), C::from(0.0))).norm() < 1e-15);
        assert!(phase_law_residuals(&f, FRAC_PI_2, &refs).unwrap().max() < 1e-15);
        assert!(phase_law_residuals(&f, 2.0 * PI, &refs).unwrap().max() < 1e-15);
        let full = eigen_spinors(&rotate_characterization(&f, 2.0 * PI), &refs).unwrap();
        assert!((full.chi_plus - eigen_spinors(&f, &refs).unwrap().chi_plus).norm() < 1e-15);
    }

    #[test]
    fn spv_law_fixtures() {
        let refs = ReferenceSpinors::standard();
        let f = build_frame(V::unit_z(), V::unit_x()).unwrap();
        let a = JonesVector::new(C::from(FRAC_1_SQRT_2), C::from(FRAC_1_SQRT_2)).unwrap();
        let chi = compose_spinor(&mapping_matrix(&f, &refs).unwrap(), &a);
        assert!((spv(&chi).unwrap() - V::unit_y()).norm() < 1e-15);
        let g = rotate_characterization(&f, FRAC_PI_2);
        let chi_g = compose_spinor(&mapping_matrix(&g, &refs).unwrap(), &a);
        assert!((spv(&chi_g).unwrap() + V::unit_y()).norm() < 1e-15);
        assert!(spv_law_residuals(&f, FRAC_PI_2, &a, &refs).unwrap().max() < 1e-15);

        // alpha = (1,0): SPV stays on w.
        for phi in [0.3, 1.7, -2.0] {
            let g = rotate_characterization(&f, phi);
            let chi = compose_spinor(&mapping_matrix(&g, &refs).unwrap(), &JonesVector::plus());
            assert!((spv(&chi).unwrap() - V::unit_z()).norm() < 1e-15);
        }

        // Phi = pi: SPV returns to itself for any alpha.
        let b = JonesVector::normalize(C::new(0.3, 0.4), C::new(-0.2, 0.9)).unwrap();
        let g = rotate_characterization(&f, PI);
        let s0 = spv(&compose_spinor(&mapping_matrix(&f, &refs).unwrap(), &b)).unwrap();
        let s1 = spv(&compose_spinor(&mapping_matrix(&g, &refs).unwrap(), &b)).unwrap();
        assert!((s0 - s1).norm() < 1e-14);
    }

    fn unit_vec() -> impl Strategy<Value = V> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("nonzero", |(x, y, z)| x * x + y * y + z * z > 1e-2)
            .prop_map(|(x, y, z)| V::new(x, y, z).normalized().unwrap())
    }

    fn frame() -> impl Strategy<Value = Frame<f64>> {
        (unit_vec(), unit_vec())
            .prop_filter_map("usable", |(w, i)| (w.z > -0.99).then(|| build_frame(w, i).ok()).flatten())
    }

    proptest! {
        #[test]
        fn so3_matches_rodrigues(n in unit_vec(), phi in -10.0..10.0f64, a in unit_vec()) {
            let r = so3_rotation(&axis_angle(n, phi));
            prop_assert!((r.apply(&a) - rodrigues(&n, phi, &a)).norm() < 1e-12);
            prop_assert!(r.orthogonality_residual() < 1e-12);
            prop_assert!((r.det() - 1.0).abs() < 1e-12);
            prop_assert!((r.apply(&n) - n).norm() < 1e-12);
        }

        #[test]
        fn su2_matches_series(n in unit_vec(), phi in -7.0..7.0f64) {
            let u = su2_rotation(&axis_angle(n, phi));
            prop_assert!(u.distance(&su2_series(&n, phi)) < 1e-12);
            prop_assert!(u.unitarity_residual() < 1e-12);
            prop_assert!((u.det() - C::from(1.0)).norm() < 1e-12);
        }

        #[test]
        fn so3_group_law(n in unit_vec(), a in -5.0..5.0f64, b in -5.0..5.0f64) {
            let lhs = so3_rotation(&axis_angle(n, a)) * so3_rotation(&axis_angle(n, b));
            prop_assert!(lhs.distance(&so3_rotation(&axis_angle(n, a + b))) < 1e-12);
        }

        #[test]
        fn su2_double_cover(n in unit_vec(), phi in -5.0..5.0f64) {
            let u = su2_rotation(&axis_angle(n, phi + 2.0 * PI));
            prop_assert!(u.distance(&(-su2_rotation(&axis_angle(n, phi)))) < 1e-12);
        }

        #[test]
        fn correspondence(n in unit_vec(), phi in -10.0..10.0f64, a in unit_vec(), scale in 0.1..3.0f64) {
            prop_assert!(correspondence_residual(&axis_angle(n, phi), &a.scale(scale)) < 1e-12);
        }

        #[test]
        fn generator_action_on_triad(f in frame()) {
            let ws = dot_generators(&f.w);
            let wu = ws.apply(&f.u);
            let wv = ws.apply(&f.v);
            for k in 0..3 {
                prop_assert!((wu[k] - C::new(0.0, f.v[k])).norm() < 1e-12);
                prop_assert!((wv[k] - C::new(0.0, -f.u[k])).norm() < 1e-12);
            }
        }

        #[test]
        fn triad_covariance(f in frame(), phi in -7.0..7.0f64) {
            let g = rotate_characterization(&f, phi);
            let r = so3_rotation(&axis_angle(f.w, phi));
            prop_assert!((g.u - r.apply(&f.u)).norm() < 1e-12);
            prop_assert!((g.v - r.apply(&f.v)).norm() < 1e-12);
        }

        #[test]
        fn phase_law(f in frame(), phi in 0.0..(4.0 * PI)) {
            let res = phase_law_residuals(&f, phi, &ReferenceSpinors::standard()).unwrap();
            prop_assert!(res.max() < 1e-12, "{:?}", res);
        }

        #[test]
        fn spv_law(f in frame(), phi in 0.0..(4.0 * PI), a in proptest::array::uniform4(-1.0..1.0f64)) {
            if let Ok(alpha) = JonesVector::normalize(C::new(a[0], a[1]), C::new(a[2], a[3])) {
                let res = spv_law_residuals(&f, phi, &alpha, &ReferenceSpinors::standard()).unwrap();
                prop_assert!(res.max() < 1e-12, "{:?}", res);
            }
        }
    }
}
