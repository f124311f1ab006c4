//! Heisenberg-picture Pauli vector `sigma^H(I) = varpi^dagger sigma varpi`.
//!
//! The vector is kept as three 2x2 matrices attached to the triad `(u, v, w)`:
//! SO(3) rotations act on the triad vectors, SU(2) conjugations act on the
//! matrices. An SU(2) rotation is conjugated into the Jones-vector
//! representation, `varpi^dagger U varpi`, before it is applied to
//! `sigma^H`; there `w . sigma` becomes `sigma^H_w = diag(1, -1)`.

use num_complex::Complex;

use crate::algebra::{dot_sigma_real, spin_density, JonesVector, Mat2C, RVec3};
use crate::error::{Result, SpinError};
use crate::frames::{mapping_matrix, phase_factor, Frame, ReferenceSpinors};
use crate::rotations::{rotate_characterization, so3_rotation, su2_rotation, AxisAngle};
use crate::scalar::{i_unit, Real};

/// `sigma^H(I) = u sigma^H_u + v sigma^H_v + w sigma^H_w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergSigma<T> {
    pub sigma_u: Mat2C<T>,
    pub sigma_v: Mat2C<T>,
    pub sigma_w: Mat2C<T>,
    pub frame: Frame<T>,
    pub phi0: T,
}

/// A vector whose Cartesian components are 2x2 matrices.
pub type MatrixVector<T> = [Mat2C<T>; 3];

impl<T: Real> HeisenbergSigma<T> {
    /// `[sigma^H_u, sigma^H_v, sigma^H_w]`.
    pub fn components(&self) -> MatrixVector<T> {
        [self.sigma_u, self.sigma_v, self.sigma_w]
    }

    /// Cartesian (lab) components of the expansion on the triad.
    pub fn lab_components(&self) -> MatrixVector<T> {
        expand_on_triad(&self.frame.triad(), &self.components())
    }

    /// Cartesian components of `R sigma^H`: triad rotated, matrices fixed.
    pub fn rotated(&self, r: &crate::algebra::Mat3R<T>) -> MatrixVector<T> {
        let triad = self.frame.triad().map(|e| r.apply(&e));
        expand_on_triad(&triad, &self.components())
    }

    /// `alpha^dagger sigma^H alpha` as a Cartesian vector.
    pub fn expectation(&self, alpha: &JonesVector<T>) -> RVec3<T> {
        let a = alpha.as_spinor();
        let triad = self.frame.triad();
        let mut out = RVec3::zero();
        for (e, m) in triad.iter().zip(self.components().iter()) {
            out += e.scale(m.sandwich(&a, &a).re);
        }
        out
    }

    /// SU(2) rotation about the frame axis expressed in the Jones-vector basis,
    /// `varpi^dagger U(phi w) varpi = cos(phi/2) - i sigma^H_w sin(phi/2)`.
    pub fn jones_rotation(&self, phi: T) -> Mat2C<T> {
        let (s, c) = (phi * T::lit(0.5)).sin_cos();
        Mat2C::identity().scale(c.into()) - self.sigma_w.scale(i_unit::<T>() * s)
    }
}

fn expand_on_triad<T: Real>(triad: &[RVec3<T>; 3], comps: &MatrixVector<T>) -> MatrixVector<T> {
    std::array::from_fn(|axis| {
        triad.iter().zip(comps.iter()).fold(Mat2C::zero(), |acc, (e, m)| acc + m.scale(e[axis].into()))
    })
}

fn conjugate_all<T: Real>(u: &Mat2C<T>, v: &MatrixVector<T>) -> MatrixVector<T> {
    v.map(|m| u.conjugate(&m))
}

fn max_distance<T: Real>(a: &MatrixVector<T>, b: &MatrixVector<T>) -> T {
    a.iter().zip(b.iter()).map(|(x, y)| x.distance(y)).fold(T::zero(), T::max)
}

/// Closed forms in terms of `phi_0`:
/// `sigma^H_u = [[0, e^{i phi0}], [e^{-i phi0}, 0]]`,
/// `sigma^H_v = [[0, -i e^{i phi0}], [i e^{-i phi0}, 0]]`,
/// `sigma^H_w = diag(1, -1)`.
pub fn closed_form<T: Real>(phi0: T) -> MatrixVector<T> {
    let o = Complex::from(T::zero());
    let e = Complex::from_polar(T::one(), phi0);
    let i = i_unit::<T>();
    [
        Mat2C::new([[o, e], [e.conj(), o]]),
        Mat2C::new([[o, -i * e], [i * e.conj(), o]]),
        Mat2C::diag(T::one().into(), (-T::one()).into()),
    ]
}

/// Direct conjugation `varpi^dagger (e . sigma) varpi` for `e` in the triad,
/// cross-checked against [`closed_form`].
pub fn sigma_h<T: Real>(f: &Frame<T>, refs: &ReferenceSpinors<T>) -> Result<HeisenbergSigma<T>> {
    let varpi = mapping_matrix(f, refs)?;
    let phi0 = phase_factor(f, refs)?;
    let direct = f.triad().map(|e| varpi.conjugate(&dot_sigma_real(&e)));
    let deviation = max_distance(&direct, &closed_form(phi0));
    if !(deviation <= T::identity_tol()) {
        return Err(SpinError::InconsistentClosedForm { deviation: deviation.as_f64() });
    }
    let [sigma_u, sigma_v, sigma_w] = direct;
    Ok(HeisenbergSigma { sigma_u, sigma_v, sigma_w, frame: *f, phi0 })
}

/// Residuals of the three rotation laws of `sigma^H` under `I' = R(Phi w) I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationLawResiduals<T> {
    /// `sigma^H_j(I') = U^dagger(Phi w) sigma^H_j(I) U(Phi w)` for `j = u, v, w`,
    /// and `sigma^H_w(I') = sigma^H_w(I)`.
    pub component: T,
    /// `sigma^H(I') = U^dagger(2 Phi w) sigma^H(I) U(2 Phi w)` on Cartesian components.
    pub su2: T,
    /// `sigma^H(I') = R(2 Phi w) sigma^H(I)` with the triad rotated.
    pub so3: T,
    /// `exp(i phi0(I')) = exp(i Phi) exp(i phi0(I))`.
    pub phase: T,
}

impl<T: Real> RotationLawResiduals<T> {
    pub fn max(&self) -> T {
        self.component.max(self.su2).max(self.so3).max(self.phase)
    }
}

pub fn sigma_h_rotation_residual<T: Real>(
    f: &Frame<T>,
    phi: T,
    refs: &ReferenceSpinors<T>,
) -> Result<RotationLawResiduals<T>> {
    let before = sigma_h(f, refs)?;
    let after = sigma_h(&rotate_characterization(f, phi), refs)?;

    let u1 = before.jones_rotation(phi);
    let component = max_distance(&after.components(), &conjugate_all(&u1, &before.components()))
        .max(after.sigma_w.distance(&before.sigma_w));

    let u2 = before.jones_rotation(phi + phi);
    let su2 = max_distance(&after.lab_components(), &conjugate_all(&u2, &before.lab_components()));

    let r2 = so3_rotation(&AxisAngle::unchecked(f.w, phi + phi));
    let so3 = max_distance(&after.lab_components(), &before.rotated(&r2));

    let shifted = Complex::from_polar(T::one(), before.phi0 + phi);
    let phase = (Complex::from_polar(T::one(), after.phi0) - shifted).norm();

    Ok(RotationLawResiduals { component, su2, so3, phase })
}

/// Deviation of `R(Phi w) sigma^H(I)` from `U^dagger(Phi w) sigma^H(I) U(Phi w)`.
pub fn equivalence_residual<T: Real>(f: &Frame<T>, phi: T, refs: &ReferenceSpinors<T>) -> Result<T> {
    let h = sigma_h(f, refs)?;
    let r = so3_rotation(&AxisAngle::unchecked(f.w, phi));
    let u = h.jones_rotation(phi);
    Ok(max_distance(&h.rotated(&r), &conjugate_all(&u, &h.lab_components())))
}

/// `varpi^dagger U varpi` for an arbitrary lab-frame SU(2) rotation.
pub fn to_jones_basis<T: Real>(varpi: &Mat2C<T>, u: &Mat2C<T>) -> Mat2C<T> {
    varpi.conjugate(u)
}

/// Largest deviation of the triad-labelled algebra
/// `H_u H_v = i H_w`, `H_v H_w = i H_u`, `H_w H_u = i H_v`, plus the
/// anticommutators and `H_j^2 = 1`.
pub fn algebra_residual<T: Real>(h: &HeisenbergSigma<T>) -> T {
    let [a, b, c] = h.components();
    let i = i_unit::<T>();
    let one = Mat2C::identity();
    let cyclic = [(a, b, c), (b, c, a), (c, a, b)];
    let mut worst = T::zero();
    for (x, y, z) in cyclic {
        worst = worst.max((x * y).distance(&z.scale(i)));
        worst = worst.max((x * y + y * x).frobenius_norm());
        worst = worst.max((x * x).distance(&one));
        worst = worst.max(x.hermiticity_residual());
        worst = worst.max(x.trace().norm());
        worst = worst.max((x.det() + Complex::from(T::one())).norm());
    }
    worst
}

/// `| alpha^dagger sigma^H alpha - spv(varpi alpha) |`.
pub fn expectation_residual<T: Real>(f: &Frame<T>, alpha: &JonesVector<T>, refs: &ReferenceSpinors<T>) -> Result<T> {
    let h = sigma_h(f, refs)?;
    let varpi = mapping_matrix(f, refs)?;
    let schrodinger = spin_density(&varpi.apply(&alpha.as_spinor()));
    Ok((h.expectation(alpha) - schrodinger).norm())
}

/// Consistency of the Jones-basis SU(2) rotation with the lab rotation:
/// `|| varpi^dagger U(phi w) varpi - (cos(phi/2) - i sigma^H_w sin(phi/2)) ||`.
pub fn jones_rotation_residual<T: Real>(f: &Frame<T>, phi: T, refs: &ReferenceSpinors<T>) -> Result<T> {
    let h = sigma_h(f, refs)?;
    let varpi = mapping_matrix(f, refs)?;
    let lab = su2_rotation(&AxisAngle::unchecked(f.w, phi));
    Ok(to_jones_basis(&varpi, &lab).distance(&h.jones_rotation(phi)))
}
