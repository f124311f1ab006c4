//! The `(u, v, w)` triad built from a quantization axis `w` and a
//! characterization vector `I`, the ladder operators it induces, and the
//! eigenspinors of `w . sigma` whose phases are fixed by `I`.

use num_complex::Complex;

use crate::algebra::{dot_sigma, dot_sigma_real, CVec3, JonesVector, Mat2C, RVec3, Spinor};
use crate::error::{Branch, Result, SpinError};
use crate::scalar::{cplx, wrap_angle, Real};

/// Right-handed orthonormal triad derived from `(w, I)`.
///
/// `v = (w x I)/|w x I|` and `u = v x w`. Only the azimuth of `I` about `w`
/// affects `u` and `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame<T> {
    pub w: RVec3<T>,
    pub i_vec: RVec3<T>,
    pub u: RVec3<T>,
    pub v: RVec3<T>,
}

impl<T: Real> Frame<T> {
    /// Builds the triad; fails with [`SpinError::DegenerateFrame`] when `I` is
    /// (anti)parallel to `w`.
    pub fn new(w: RVec3<T>, i_vec: RVec3<T>) -> Result<Self> {
        w.check_unit("quantization axis w")?;
        i_vec.check_unit("characterization vector I")?;
        let cross = w.cross(&i_vec);
        let cross_norm = cross.norm();
        if !(cross_norm >= T::degeneracy_eps()) {
            return Err(SpinError::DegenerateFrame { cross_norm: cross_norm.as_f64() });
        }
        Ok(Self::from_cross(w, i_vec, cross, cross_norm))
    }

    /// Construction without the degeneracy check, for `I` already known to be
    /// well separated from `w`.
    pub(crate) fn new_unchecked(w: RVec3<T>, i_vec: RVec3<T>) -> Self {
        let cross = w.cross(&i_vec);
        let n = cross.norm();
        Self::from_cross(w, i_vec, cross, n)
    }

    fn from_cross(w: RVec3<T>, i_vec: RVec3<T>, cross: RVec3<T>, cross_norm: T) -> Self {
        let v = cross.scale(cross_norm.recip());
        let u = v.cross(&w);
        Self { w, i_vec, u, v }
    }

    /// `[u, v, w]`.
    pub fn triad(&self) -> [RVec3<T>; 3] {
        [self.u, self.v, self.w]
    }

    /// Largest deviation from a right-handed orthonormal triad.
    pub fn orthonormality_residual(&self) -> T {
        let [u, v, w] = self.triad();
        let norms = [u, v, w].iter().map(|e| (e.norm() - T::one()).abs()).fold(T::zero(), T::max);
        let dots = u.dot(&v).abs().max(v.dot(&w).abs()).max(w.dot(&u).abs());
        let handed = (u.cross(&v) - w).norm();
        norms.max(dots).max(handed)
    }
}

/// `build_frame(w, I)`.
pub fn build_frame<T: Real>(w: RVec3<T>, i_vec: RVec3<T>) -> Result<Frame<T>> {
    Frame::new(w, i_vec)
}

/// Fixed spinors `(chi1, chi2)` that set the phase reference of the
/// eigenspinors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceSpinors<T> {
    pub chi1: Spinor<T>,
    pub chi2: Spinor<T>,
}

impl<T: Real> ReferenceSpinors<T> {
    pub fn new(chi1: Spinor<T>, chi2: Spinor<T>) -> Result<Self> {
        chi1.check_normalized("reference spinor chi1")?;
        chi2.check_normalized("reference spinor chi2")?;
        Ok(Self { chi1, chi2 })
    }

    /// `chi1 = (0, 1)`, `chi2 = (1, 0)`. Annihilated only for `w = -z`.
    pub fn standard() -> Self {
        Self { chi1: Spinor::down(), chi2: Spinor::up() }
    }

    /// `chi1 = (1, 0)`, `chi2 = (0, 1)`. Annihilated only for `w = +z`.
    ///
    /// Switching to this pair changes the phase convention of every
    /// eigenspinor, so it is never substituted silently.
    pub fn fallback() -> Self {
        Self { chi1: Spinor::up(), chi2: Spinor::down() }
    }
}

impl<T: Real> Default for ReferenceSpinors<T> {
    fn default() -> Self {
        Self::standard()
    }
}

/// Normalized eigenspinors of `w . sigma` and their normalization constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair<T> {
    pub chi_plus: Spinor<T>,
    pub chi_minus: Spinor<T>,
    pub n_plus: T,
    pub n_minus: T,
}

impl<T: Real> EigenPair<T> {
    pub fn get(&self, branch: Branch) -> Spinor<T> {
        match branch {
            Branch::Plus => self.chi_plus,
            Branch::Minus => self.chi_minus,
        }
    }
}

/// `w_+ = (u + i v)/sqrt2`, `w_- = (v + i u)/sqrt2`.
pub fn complex_basis<T: Real>(f: &Frame<T>) -> (CVec3<T>, CVec3<T>) {
    let s = cplx(T::FRAC_1_SQRT_2(), T::zero());
    let plus = CVec3::from_parts(&f.u, &f.v).scale(s);
    let minus = CVec3::from_parts(&f.v, &f.u).scale(s);
    (plus, minus)
}

/// Ladder operators `sigma_pm = w_pm . sigma`.
pub fn ladder_operators<T: Real>(f: &Frame<T>) -> (Mat2C<T>, Mat2C<T>) {
    let (wp, wm) = complex_basis(f);
    (dot_sigma(&wp), dot_sigma(&wm))
}

/// `N_+ = [chi1^dagger (1 - w.sigma) chi1]^(-1/2)`,
/// `N_- = [chi2^dagger (1 + w.sigma) chi2]^(-1/2)`.
///
/// These depend on `w` and the references only, not on `I`. The returned
/// values are the bracketed quantities' square roots, i.e. `1/N_pm`.
fn inverse_normalizations<T: Real>(w: &RVec3<T>, refs: &ReferenceSpinors<T>) -> (T, T) {
    let ws = dot_sigma_real(w);
    let one = Mat2C::identity();
    let plus = (one - ws).sandwich(&refs.chi1, &refs.chi1).re;
    let minus = (one + ws).sandwich(&refs.chi2, &refs.chi2).re;
    (plus.max(T::zero()).sqrt(), minus.max(T::zero()).sqrt())
}

/// `chi_+ = N_+ sigma_+ chi1`, `chi_- = N_- sigma_- chi2`.
pub fn eigen_spinors<T: Real>(f: &Frame<T>, refs: &ReferenceSpinors<T>) -> Result<EigenPair<T>> {
    let (sp, sm) = ladder_operators(f);
    let (inv_plus, inv_minus) = inverse_normalizations(&f.w, refs);
    let eps = T::degeneracy_eps();
    if !(inv_plus >= eps) {
        return Err(SpinError::ReferenceAnnihilated { branch: Branch::Plus, norm: inv_plus.as_f64() });
    }
    if !(inv_minus >= eps) {
        return Err(SpinError::ReferenceAnnihilated { branch: Branch::Minus, norm: inv_minus.as_f64() });
    }
    let n_plus = inv_plus.recip();
    let n_minus = inv_minus.recip();
    Ok(EigenPair {
        chi_plus: sp.apply(&refs.chi1).scale_real(n_plus),
        chi_minus: sm.apply(&refs.chi2).scale_real(n_minus),
        n_plus,
        n_minus,
    })
}

/// Eigenspinors with an explicit fallback reference pair, tried only when the
/// primary pair is annihilated. The flag reports whether the fallback was used.
pub fn eigen_spinors_with_fallback<T: Real>(
    f: &Frame<T>,
    primary: &ReferenceSpinors<T>,
    fallback: &ReferenceSpinors<T>,
) -> Result<(EigenPair<T>, bool)> {
    match eigen_spinors(f, primary) {
        Ok(pair) => Ok((pair, false)),
        Err(SpinError::ReferenceAnnihilated { .. }) => eigen_spinors(f, fallback).map(|p| (p, true)),
        Err(e) => Err(e),
    }
}

/// The ladder constants `c`, `c'` defined by `sigma_+ chi_- = c chi_+` and
/// `sigma_- chi_+ = c' chi_-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderConstants<T> {
    pub c: Complex<T>,
    pub c_prime: Complex<T>,
    /// `2 N_+ N_- chi1^dagger sigma_- chi2`, the closed form for `c`.
    pub c_closed_form: Complex<T>,
    /// Largest of `|| sigma_+ chi_- - c chi_+ ||` and `|| sigma_- chi_+ - c' chi_- ||`.
    pub proportionality_residual: T,
}

/// Computes `c` and `c'` by projection and reports how well the ladder
/// relations hold.
pub fn ladder_constants<T: Real>(f: &Frame<T>, refs: &ReferenceSpinors<T>) -> Result<LadderConstants<T>> {
    let pair = eigen_spinors(f, refs)?;
    let (sp, sm) = ladder_operators(f);
    let raised = sp.apply(&pair.chi_minus);
    let lowered = sm.apply(&pair.chi_plus);
    let c = pair.chi_plus.inner(&raised);
    let c_prime = pair.chi_minus.inner(&lowered);
    let residual = (raised - pair.chi_plus.scale(c)).norm().max((lowered - pair.chi_minus.scale(c_prime)).norm());
    let c_closed_form = sm.sandwich(&refs.chi1, &refs.chi2) * (T::lit(2.0) * pair.n_plus * pair.n_minus);
    Ok(LadderConstants { c, c_prime, c_closed_form, proportionality_residual: residual })
}

/// `phi_0` with `exp(i phi_0) = sqrt2 N_+ N_- chi1^dagger sigma_- chi2`,
/// reported on `(-pi, pi]`.
pub fn phase_factor<T: Real>(f: &Frame<T>, refs: &ReferenceSpinors<T>) -> Result<T> {
    let pair = eigen_spinors(f, refs)?;
    let (_, sm) = ladder_operators(f);
    let e = sm.sandwich(&refs.chi1, &refs.chi2) * (T::SQRT_2() * pair.n_plus * pair.n_minus);
    Ok(wrap_angle(e.arg()))
}

/// Mapping matrix with columns `(chi_+, chi_-)`.
pub fn mapping_matrix<T: Real>(f: &Frame<T>, refs: &ReferenceSpinors<T>) -> Result<Mat2C<T>> {
    let pair = eigen_spinors(f, refs)?;
    Ok(Mat2C::from_columns(&pair.chi_plus, &pair.chi_minus))
}

/// `chi = varpi alpha`.
pub fn compose_spinor<T: Real>(varpi: &Mat2C<T>, alpha: &JonesVector<T>) -> Spinor<T> {
    varpi.apply(&alpha.as_spinor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eigen_residual, spv};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};

    type V = RVec3<f64>;
    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn frame_zx() -> Frame<f64> {
        build_frame(V::unit_z(), V::unit_x()).unwrap()
    }

    #[test]
    fn build_frame_fixtures() {
        let f = frame_zx();
        assert_eq!(f.u, V::unit_x());
        assert_eq!(f.v, V::unit_y());
        let f = build_frame(V::unit_z(), V::unit_y()).unwrap();
        assert!((f.u - V::unit_y()).norm() < 1e-15);
        assert!((f.v + V::unit_x()).norm() < 1e-15);
    }

    #[test]
    fn build_frame_degenerate() {
        assert!(matches!(build_frame(V::unit_z(), V::unit_z()), Err(SpinError::DegenerateFrame { .. })));
        assert!(matches!(build_frame(V::unit_z(), -V::unit_z()), Err(SpinError::DegenerateFrame { .. })));
        let nearly = V::new(1e-9, 0.0, 1.0).normalized().unwrap();
        assert!(matches!(build_frame(V::unit_z(), nearly), Err(SpinError::DegenerateFrame { .. })));
        let ok = V::new(1e-7, 0.0, 1.0).normalized().unwrap();
        assert!(build_frame(V::unit_z(), ok).is_ok());
    }

    #[test]
    fn build_frame_rejects_non_unit() {
        let err = build_frame(V::new(0.0, 0.0, 2.0), V::unit_x()).unwrap_err();
        assert!(matches!(err, SpinError::NotNormalized { .. }));
    }

    #[test]
    fn complex_basis_fixture() {
        let (wp, wm) = complex_basis(&frame_zx());
        let s = FRAC_1_SQRT_2;
        assert_eq!(wp, CVec3::new(c(s, 0.), c(0., s), c(0., 0.)));
        assert_eq!(wm, CVec3::new(c(0., s), c(s, 0.), c(0., 0.)));
        assert!(wp.hermitian_dot(&wm).norm() < 1e-15);
        assert!((wp.norm() - 1.0).abs() < 1e-15);
        assert!((wm.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ladder_operator_fixtures() {
        let (sp, sm) = ladder_operators(&frame_zx());
        let z = c(0., 0.);
        assert!(sp.distance(&Mat2C::new([[z, c(SQRT_2, 0.)], [z, z]])) < 1e-15);
        assert!(sm.distance(&Mat2C::new([[z, z], [c(0., SQRT_2), z]])) < 1e-15);
        assert!((sp * sp).frobenius_norm() < 1e-15);
        assert!((sm * sm).frobenius_norm() < 1e-15);
    }

    #[test]
    fn eigen_spinor_fixtures() {
        let refs = ReferenceSpinors::standard();
        let pair = eigen_spinors(&frame_zx(), &refs).unwrap();
        assert!((pair.chi_plus - Spinor::up()).norm() < 1e-15);
        assert!((pair.chi_minus - Spinor::new(c(0., 0.), c(0., 1.))).norm() < 1e-15);
        assert!((pair.n_plus - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((pair.n_minus - FRAC_1_SQRT_2).abs() < 1e-15);

        let pair = eigen_spinors(&build_frame(V::unit_z(), V::unit_y()).unwrap(), &refs).unwrap();
        assert!((pair.chi_plus - Spinor::new(c(0., -1.), c(0., 0.))).norm() < 1e-15);
    }

    #[test]
    fn annihilated_reference() {
        let refs = ReferenceSpinors::new(Spinor::up(), Spinor::up()).unwrap();
        let err = eigen_spinors(&frame_zx(), &refs).unwrap_err();
        assert!(matches!(err, SpinError::ReferenceAnnihilated { branch: Branch::Plus, .. }));
        let refs = ReferenceSpinors::new(Spinor::down(), Spinor::down()).unwrap();
        let err = eigen_spinors(&frame_zx(), &refs).unwrap_err();
        assert!(matches!(err, SpinError::ReferenceAnnihilated { branch: Branch::Minus, .. }));
    }

    #[test]
    fn fallback_only_when_requested() {
        let f = build_frame(-V::unit_z(), V::unit_x()).unwrap();
        assert!(eigen_spinors(&f, &ReferenceSpinors::standard()).is_err());
        let (pair, used) =
            eigen_spinors_with_fallback(&f, &ReferenceSpinors::standard(), &ReferenceSpinors::fallback()).unwrap();
        assert!(used);
        assert!(eigen_residual(&f.w, &pair.chi_plus, 1.0) < 1e-12);
        let (_, used) =
            eigen_spinors_with_fallback(&frame_zx(), &ReferenceSpinors::standard(), &ReferenceSpinors::fallback())
                .unwrap();
        assert!(!used);
    }

    #[test]
    fn phase_factor_fixture() {
        let refs = ReferenceSpinors::standard();
        let phi0 = phase_factor(&frame_zx(), &refs).unwrap();
        assert!((phi0 - FRAC_PI_2).abs() < 1e-15);
        let k = ladder_constants(&frame_zx(), &refs).unwrap();
        assert!((k.c - c(0., SQRT_2)).norm() < 1e-15);
        assert!((k.c_prime - c(SQRT_2, 0.)).norm() < 1e-15);
        assert!((k.c_closed_form - k.c).norm() < 1e-15);
    }

    #[test]
    fn phase_factor_branch() {
        let refs = ReferenceSpinors::standard();
        // I = -y is x rotated by -pi/2 about z: phi0 = 0.
        let f = build_frame(V::unit_z(), -V::unit_y()).unwrap();
        assert!(phase_factor(&f, &refs).unwrap().abs() < 1e-15);
        // I = -x is a half turn: phi0 = 3pi/2, reported as -pi/2.
        let f = build_frame(V::unit_z(), -V::unit_x()).unwrap();
        assert!((phase_factor(&f, &refs).unwrap() + FRAC_PI_2).abs() < 1e-15);
        // I = y: phi0 = pi, within the (-pi, pi] branch up to rounding.
        let f = build_frame(V::unit_z(), V::unit_y()).unwrap();
        let phi = phase_factor(&f, &refs).unwrap();
        assert!(phi > -PI && phi <= PI);
        assert!((phi.abs() - PI).abs() < 1e-15);
    }

    #[test]
    fn mapping_matrix_fixture() {
        let m = mapping_matrix(&frame_zx(), &ReferenceSpinors::standard()).unwrap();
        assert!(m.distance(&Mat2C::diag(c(1., 0.), c(0., 1.))) < 1e-15);
        assert!(m.unitarity_residual() < 1e-15);
        assert_eq!(compose_spinor(&m, &JonesVector::plus()), m.column(0));
    }

    #[test]
    fn compose_spinor_fixtures() {
        let m = mapping_matrix(&frame_zx(), &ReferenceSpinors::standard()).unwrap();
        assert!((compose_spinor(&m, &JonesVector::plus()) - Spinor::up()).norm() < 1e-15);
        assert!((compose_spinor(&m, &JonesVector::minus()) - Spinor::new(c(0., 0.), c(0., 1.))).norm() < 1e-15);
        let a = JonesVector::new(c(FRAC_1_SQRT_2, 0.), c(FRAC_1_SQRT_2, 0.)).unwrap();
        let chi = compose_spinor(&m, &a);
        assert!((chi - Spinor::new(c(FRAC_1_SQRT_2, 0.), c(0., FRAC_1_SQRT_2))).norm() < 1e-15);
        assert!((spv(&chi).unwrap() - V::unit_y()).norm() < 1e-15);
    }

    /// Independent oracle for the +1 eigenvector of `w . sigma`: the standard
    /// polar-angle parametrization `(cos(theta/2), e^{i phi} sin(theta/2))`.
    fn polar_eigenvector(w: &V) -> Spinor<f64> {
        let theta = w.z.clamp(-1.0, 1.0).acos();
        let phi = w.y.atan2(w.x);
        Spinor::new(c((theta / 2.0).cos(), 0.), C::from_polar((theta / 2.0).sin(), phi))
    }

    fn unit_vec() -> impl Strategy<Value = V> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("nonzero", |(x, y, z)| x * x + y * y + z * z > 1e-2)
            .prop_map(|(x, y, z)| V::new(x, y, z).normalized().unwrap())
    }

    fn frame() -> impl Strategy<Value = Frame<f64>> {
        (unit_vec(), unit_vec()).prop_filter_map("non-degenerate, away from w = -z", |(w, i)| {
            (w.z > -0.99).then(|| build_frame(w, i).ok()).flatten()
        })
    }

    fn spinor() -> impl Strategy<Value = Spinor<f64>> {
        proptest::array::uniform4(-1.0..1.0f64)
            .prop_filter_map("nonzero", |a| Spinor::from_reals(a[0], a[1], a[2], a[3]).normalized())
    }

    proptest! {
        #[test]
        fn triad_orthonormal(f in frame()) {
            prop_assert!(f.orthonormality_residual() < 1e-12);
        }

        #[test]
        fn polar_angle_is_degenerate(f in frame(), t in 0.05..0.95f64) {
            // Same azimuth, different polar angle.
            let i2 = (f.w.scale(t.cos() * 0.9) + f.u.scale(t.sin())).normalized().unwrap();
            let g = build_frame(f.w, i2).unwrap();
            prop_assert!((g.u - f.u).norm() < 1e-12);
            prop_assert!((g.v - f.v).norm() < 1e-12);
        }

        #[test]
        fn eigen_pair_invariants(f in frame()) {
            let pair = eigen_spinors(&f, &ReferenceSpinors::standard()).unwrap();
            prop_assert!(eigen_residual(&f.w, &pair.chi_plus, 1.0) < 1e-12);
            prop_assert!(eigen_residual(&f.w, &pair.chi_minus, -1.0) < 1e-12);
            prop_assert!((pair.chi_plus.norm() - 1.0).abs() < 1e-12);
            prop_assert!((pair.chi_minus.norm() - 1.0).abs() < 1e-12);
            prop_assert!(pair.chi_plus.inner(&pair.chi_minus).norm() < 1e-12);
            // Agrees with the polar parametrization up to a phase.
            let oracle = polar_eigenvector(&f.w);
            prop_assert!((pair.chi_plus.inner(&oracle).norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn eigen_pair_random_references(f in frame(), r1 in spinor(), r2 in spinor()) {
            let refs = ReferenceSpinors::new(r1, r2).unwrap();
            if let Ok(pair) = eigen_spinors(&f, &refs) {
                prop_assert!(eigen_residual(&f.w, &pair.chi_plus, 1.0) < 1e-10);
                prop_assert!(eigen_residual(&f.w, &pair.chi_minus, -1.0) < 1e-10);
            }
        }

        #[test]
        fn ladder_relations(f in frame()) {
            let (sp, sm) = ladder_operators(&f);
            let ws = dot_sigma_real(&f.w);
            prop_assert!((ws * sp).distance(&sp) < 1e-12);
            prop_assert!((ws * sm).distance(&(-sm)) < 1e-12);
            prop_assert!((sp * ws).distance(&(-sp)) < 1e-12);
            prop_assert!((sm * ws).distance(&sm) < 1e-12);
            prop_assert!((sp * sp).frobenius_norm() < 1e-12);
            prop_assert!((sm * sm).frobenius_norm() < 1e-12);
            let pair = eigen_spinors(&f, &ReferenceSpinors::standard()).unwrap();
            prop_assert!(sp.apply(&pair.chi_plus).norm() < 1e-12);
            prop_assert!(sm.apply(&pair.chi_minus).norm() < 1e-12);
        }

        #[test]
        fn normalizations_independent_of_azimuth(f in frame(), phi in 0.0..std::f64::consts::TAU) {
            let refs = ReferenceSpinors::standard();
            let (c, s) = (phi.cos(), phi.sin());
            let i2 = f.u.scale(c) + f.v.scale(s);
            let g = build_frame(f.w, i2).unwrap();
            let a = eigen_spinors(&f, &refs).unwrap();
            let b = eigen_spinors(&g, &refs).unwrap();
            prop_assert!((a.n_plus - b.n_plus).abs() < 1e-12);
            prop_assert!((a.n_minus - b.n_minus).abs() < 1e-12);
        }

        #[test]
        fn ladder_constant_relations(f in frame()) {
            let k = ladder_constants(&f, &ReferenceSpinors::standard()).unwrap();
            prop_assert!((k.c.norm() - SQRT_2).abs() < 1e-12);
            prop_assert!((k.c_prime.norm() - SQRT_2).abs() < 1e-12);
            prop_assert!((k.c - C::i() * k.c_prime.conj()).norm() < 1e-12);
            prop_assert!((k.c - k.c_closed_form).norm() < 1e-12);
            prop_assert!(k.proportionality_residual < 1e-12);
            let phi0 = phase_factor(&f, &ReferenceSpinors::standard()).unwrap();
            prop_assert!((C::from_polar(SQRT_2, phi0) - k.c).norm() < 1e-12);
        }

        #[test]
        fn mapping_matrix_unitary(f in frame()) {
            let m = mapping_matrix(&f, &ReferenceSpinors::standard()).unwrap();
            prop_assert!(m.unitarity_residual() < 1e-12);
        }
    }
}
