//! Seeded randomized property suites, one per module.
//!
//! Each suite draws its cases from its own `ChaCha8Rng` stream derived from
//! the user seed, so a suite's result does not depend on which other suites
//! run alongside it.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, UnitSphere};

use crate::algebra::{dot_sigma_real, eigen_residual, sigma_product, spv, JonesVector, Mat2C, RVec3, Spinor};
use crate::error::Result;
use crate::frames::{build_frame, eigen_spinors, ladder_constants, mapping_matrix, Frame, ReferenceSpinors};
use crate::heisenberg::{
    algebra_residual, equivalence_residual, expectation_residual, jones_rotation_residual, sigma_h,
    sigma_h_rotation_residual,
};
use crate::rotations::{
    correspondence_residual, phase_law_residuals, so3_rotation, spv_law_residuals, su2_rotation, AxisAngle,
};
use crate::wavepacket::{total_spin_i_sweep, Packet, PacketConfig, SpectralSample, Spectrum};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_CASES: usize = 1000;
/// Pass threshold for the algebraic suites.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Pass threshold for the wave-packet suite.
pub const PACKET_TOL: f64 = 1e-9;
/// Sampled geometry keeps `|w x I|` and `chi_ref^dagger (1 -+ w.sigma) chi_ref`
/// at least this large; closer to either singularity the eigenspinors lose
/// digits in proportion to the inverse distance.
pub const SAMPLING_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Algebra,
    Frames,
    Rotations,
    Heisenberg,
    Wavepacket,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Algebra, Suite::Frames, Suite::Rotations, Suite::Heisenberg, Suite::Wavepacket];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Frames => "frames",
            Suite::Rotations => "rotations",
            Suite::Heisenberg => "heisenberg",
            Suite::Wavepacket => "wavepacket",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Suite::Wavepacket => PACKET_TOL,
            _ => ALGEBRAIC_TOL,
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s.trim()).ok_or_else(|| {
            format!("unknown suite {s:?}; expected one of algebra, frames, rotations, heisenberg, wavepacket")
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    /// Worst residual over all checks; `inf` if a case raised an error, `NaN`
    /// if any residual was `NaN`.
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Running maximum that does not let `NaN` slip through `f64::max`.
#[derive(Debug, Default)]
struct Worst(f64);

impl Worst {
    fn push(&mut self, r: f64) {
        if r.is_nan() || self.0.is_nan() {
            self.0 = f64::NAN;
        } else {
            self.0 = self.0.max(r);
        }
    }

    fn push_result(&mut self, r: Result<f64>) {
        self.push(r.unwrap_or(f64::INFINITY));
    }
}

pub fn run_suite(suite: Suite, seed: u64, n_cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.stream());
    let mut worst = Worst::default();
    for _ in 0..n_cases {
        let case = match suite {
            Suite::Algebra => algebra_case(&mut rng),
            Suite::Frames => frames_case(&mut rng),
            Suite::Rotations => rotations_case(&mut rng),
            Suite::Heisenberg => heisenberg_case(&mut rng),
            Suite::Wavepacket => wavepacket_case(&mut rng),
        };
        worst.push_result(case);
    }
    let tolerance = suite.tolerance();
    SuiteReport { suite, cases: n_cases, max_residual: worst.0, tolerance, passed: worst.0 < tolerance }
}

pub fn run_suites(suites: &[Suite], seed: u64, n_cases: usize) -> Vec<SuiteReport> {
    suites.iter().map(|s| run_suite(*s, seed, n_cases)).collect()
}

fn unit(rng: &mut ChaCha8Rng) -> RVec3<f64> {
    RVec3::from_array(UnitSphere.sample(rng))
}

fn gaussian_vec(rng: &mut ChaCha8Rng) -> RVec3<f64> {
    RVec3::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn spinor(rng: &mut ChaCha8Rng) -> Spinor<f64> {
    loop {
        let s = Spinor::from_reals(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if let Some(s) = s.normalized() {
            return s;
        }
    }
}

fn jones(rng: &mut ChaCha8Rng) -> JonesVector<f64> {
    let s = spinor(rng);
    JonesVector::new(s.c0, s.c1).expect("normalized spinor")
}

fn angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.0..4.0 * std::f64::consts::PI)
}

/// Default references are annihilated only at `w = -z`.
fn usable_axis(w: &RVec3<f64>) -> bool {
    1.0 + w.z >= SAMPLING_MARGIN
}

fn frame(rng: &mut ChaCha8Rng) -> Frame<f64> {
    loop {
        let (w, i) = (unit(rng), unit(rng));
        if usable_axis(&w) && w.cross(&i).norm() >= SAMPLING_MARGIN {
            return build_frame(w, i).expect("sampled away from degeneracy");
        }
    }
}

fn algebra_case(rng: &mut ChaCha8Rng) -> Result<f64> {
    let chi = spinor(rng);
    let (a, b) = (gaussian_vec(rng), gaussian_vec(rng));
    let s = spv(&chi)?;
    let mut worst = (s.norm() - 1.0).abs().max(eigen_residual(&s, &chi, 1.0));
    let flipped = Spinor::new(-chi.c1.conj(), chi.c0.conj());
    worst = worst.max(eigen_residual(&s, &flipped, -1.0));
    let scale = a.norm() * b.norm();
    let product = sigma_product(&a, &b);
    let expected = Mat2C::identity().scale(Complex::from(a.dot(&b))) + dot_sigma_real(&a.cross(&b)).scale(Complex::i());
    worst = worst.max(product.distance(&expected) / scale);
    worst = worst.max(dot_sigma_real(&a).hermiticity_residual() / a.norm());
    Ok(worst)
}

fn frames_case(rng: &mut ChaCha8Rng) -> Result<f64> {
    let f = frame(rng);
    let refs = ReferenceSpinors::standard();
    let pair = eigen_spinors(&f, &refs)?;
    let k = ladder_constants(&f, &refs)?;
    let sqrt2 = std::f64::consts::SQRT_2;
    let residuals = [
        f.orthonormality_residual(),
        eigen_residual(&f.w, &pair.chi_plus, 1.0),
        eigen_residual(&f.w, &pair.chi_minus, -1.0),
        pair.chi_plus.inner(&pair.chi_minus).norm(),
        (pair.chi_plus.norm() - 1.0).abs(),
        (pair.chi_minus.norm() - 1.0).abs(),
        (k.c.norm() - sqrt2).abs(),
        (k.c_prime.norm() - sqrt2).abs(),
        (k.c - Complex::<f64>::i() * k.c_prime.conj()).norm(),
        (k.c - k.c_closed_form).norm(),
        k.proportionality_residual,
        mapping_matrix(&f, &refs)?.unitarity_residual(),
    ];
    Ok(residuals.into_iter().fold(0.0, f64::max))
}

fn rotations_case(rng: &mut ChaCha8Rng) -> Result<f64> {
    let r = AxisAngle::new(unit(rng), angle(rng))?;
    let a = gaussian_vec(rng);
    let mut worst = correspondence_residual(&r, &a) / a.norm();
    worst = worst.max(so3_rotation(&r).orthogonality_residual());
    worst = worst.max(su2_rotation(&r).unitarity_residual());
    let turn = AxisAngle::new(r.axis, 2.0 * std::f64::consts::PI)?;
    worst = worst.max(su2_rotation(&turn).distance(&-Mat2C::identity()));

    let f = frame(rng);
    let refs = ReferenceSpinors::standard();
    let phi = angle(rng);
    worst = worst.max(phase_law_residuals(&f, phi, &refs)?.max());
    worst = worst.max(spv_law_residuals(&f, phi, &jones(rng), &refs)?.max());
    Ok(worst)
}

fn heisenberg_case(rng: &mut ChaCha8Rng) -> Result<f64> {
    let f = frame(rng);
    let refs = ReferenceSpinors::standard();
    let phi = angle(rng);
    let h = sigma_h(&f, &refs)?;
    let diag = Mat2C::diag(Complex::from(1.0), Complex::from(-1.0));
    let residuals = [
        h.sigma_w.distance(&diag),
        algebra_residual(&h),
        sigma_h_rotation_residual(&f, phi, &refs)?.max(),
        equivalence_residual(&f, phi, &refs)?,
        jones_rotation_residual(&f, phi, &refs)?,
        expectation_residual(&f, &jones(rng), &refs)?,
    ];
    Ok(residuals.into_iter().fold(0.0, f64::max))
}

/// A random collinear spectrum along a usable axis, a random `I`, `alpha`
/// and sweep: checks the double-angle law of the total spin, linearity of the
/// eigen decomposition and the pointwise unit SPV.
fn wavepacket_case(rng: &mut ChaCha8Rng) -> Result<f64> {
    let f = frame(rng);
    let n = f.w;
    let samples: Vec<_> = (0..4)
        .map(|_| SpectralSample {
            k: n.scale(rng.random_range(1.0..5.0)),
            amplitude: Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
            weight: rng.random_range(0.1..1.0),
        })
        .collect();
    let spec = Spectrum::normalized(samples)?;
    let alpha = jones(rng);
    let cfg = PacketConfig::new(f.i_vec, alpha)?;

    let steps = 8;
    let rows = total_spin_i_sweep(&spec, &cfg, &n, steps)?;
    let mut worst = 0.0f64;
    for row in &rows {
        let r = so3_rotation(&AxisAngle::new(n, 2.0 * row.phi)?);
        worst = worst.max((row.spin - r.apply(&rows[0].spin)).norm());
        worst = worst.max((row.spin.norm() - 0.5).max(0.0));
    }

    let packet = Packet::new(&spec, &cfg)?;
    let x = gaussian_vec(rng);
    let t = rng.random_range(0.0..2.0);
    let psi = packet.wavefunction(&x, t);
    let (plus, minus) = packet.eigen_components(&x, t);
    let scale = plus.norm() + minus.norm();
    worst = worst.max((psi - (plus.scale(alpha.alpha1) + minus.scale(alpha.alpha2))).norm() / scale);
    if let Some(s) = packet.local_spv(&x, t).s {
        worst = worst.max((s.norm() - 1.0).abs());
    }
    Ok(worst)
}
