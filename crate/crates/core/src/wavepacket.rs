//! Plane-wave packets of a free spin-1/2 particle whose per-wave quantization
//! axis is the wave vector, `w = k/|k|`, with one global `I` for every wave.
//!
//! Integrals over `k` are quadrature sums over a [`Spectrum`]; every sum runs
//! in sample order so results do not depend on how grid points are scheduled
//! across threads.

use num_complex::Complex;
use rayon::prelude::*;

use crate::algebra::{spin_density, JonesVector, RVec3, Spinor};
use crate::error::{Branch, Result, SpinError};
use crate::frames::{compose_spinor, eigen_spinors, Frame, ReferenceSpinors};
use crate::heisenberg::sigma_h;
use crate::rotations::{so3_rotation, AxisAngle};
use crate::scalar::Real;

/// Relative floor on `|k|`, in units of the largest `|k|` in the spectrum.
pub const K_FLOOR_REL: f64 = 1e-6;
/// Relative floor on the density below which the local SPV is undefined.
pub const RHO_FLOOR_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSample<T> {
    /// Wave vector.
    pub k: RVec3<T>,
    /// Weighting function `A(k)`.
    pub amplitude: Complex<T>,
    /// Quadrature weight (cell volume in `k` space).
    pub weight: T,
}

/// Discrete `A(k)` with `sum weight |A|^2 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    samples: Vec<SpectralSample<T>>,
    /// Spacing of the Cartesian `k` lattice the samples sit on, when known.
    lattice_spacing: Option<T>,
}

impl<T: Real> Spectrum<T> {
    /// Validates normalization (within the input tolerance) and keeps every
    /// wave vector away from `k = 0`.
    pub fn new(samples: Vec<SpectralSample<T>>) -> Result<Self> {
        let spec = Self { samples, lattice_spacing: None };
        spec.validate()?;
        let norm = spec.norm_sqr();
        if (norm - T::one()).abs() > T::input_norm_tol() {
            return Err(SpinError::BadSpectrum(format!("sum of weight*|A|^2 is {norm}, expected 1")));
        }
        Ok(spec)
    }

    /// Rescales the amplitudes so that `sum weight |A|^2 = 1` exactly (up to rounding).
    pub fn normalized(mut samples: Vec<SpectralSample<T>>) -> Result<Self> {
        let norm = samples.iter().fold(T::zero(), |acc, s| acc + s.weight * s.amplitude.norm_sqr());
        if !(norm > T::zero() && norm.is_finite()) {
            return Err(SpinError::BadSpectrum(format!("cannot normalize spectrum with norm {norm}")));
        }
        let scale = norm.sqrt().recip();
        samples.iter_mut().for_each(|s| s.amplitude *= scale);
        let spec = Self { samples, lattice_spacing: None };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.samples.is_empty() {
            return Err(SpinError::BadSpectrum("spectrum has no samples".into()));
        }
        for (i, s) in self.samples.iter().enumerate() {
            let finite =
                s.k.as_array().iter().chain([s.amplitude.re, s.amplitude.im, s.weight].iter()).all(|x| x.is_finite());
            if !finite {
                return Err(SpinError::BadSpectrum(format!("sample {i} has non-finite entries")));
            }
            if !(s.weight > T::zero()) {
                return Err(SpinError::BadSpectrum(format!("sample {i} has non-positive weight {}", s.weight)));
            }
        }
        let k_max = self.samples.iter().map(|s| s.k.norm()).fold(T::zero(), T::max);
        let floor = k_max * T::lit(K_FLOOR_REL);
        for (i, s) in self.samples.iter().enumerate() {
            let kn = s.k.norm();
            if !(kn >= floor) || kn == T::zero() {
                return Err(SpinError::SpectrumNearOrigin { index: Some(i), k_norm: kn.as_f64() });
            }
        }
        Ok(())
    }

    pub fn samples(&self) -> &[SpectralSample<T>] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `sum weight |A|^2`.
    pub fn norm_sqr(&self) -> T {
        self.samples.iter().fold(T::zero(), |acc, s| acc + s.weight * s.amplitude.norm_sqr())
    }

    pub fn lattice_spacing(&self) -> Option<T> {
        self.lattice_spacing
    }

    /// One period of the position-space wave function of a lattice spectrum,
    /// sampled with `n` points per axis starting at `center - L/2`.
    ///
    /// The equispaced rule integrates every bilinear `Psi^dagger M Psi` exactly
    /// over this cell as long as `n` is at least the number of lattice points
    /// per axis.
    pub fn periodic_cell(&self, center: RVec3<T>, n: usize) -> Option<PositionGrid<T>> {
        let dk = self.lattice_spacing?;
        PositionGrid::periodic(center, T::TAU() / dk, n).ok()
    }
}

/// Gaussian spectrum `A(k) ~ exp(-|k - k0|^2 / (4 sigma_k^2))` on an `n^3`
/// Cartesian midpoint grid of half-width `span * sigma_k` per axis.
///
/// Samples are ordered lexicographically by `(ix, iy, iz)`.
pub fn gaussian_spectrum<T: Real>(k0: RVec3<T>, sigma_k: T, n_per_axis: usize, span: T) -> Result<Spectrum<T>> {
    if n_per_axis == 0 || n_per_axis.is_multiple_of(2) {
        return Err(SpinError::BadGrid(format!("points per axis must be odd, got {n_per_axis}")));
    }
    if !(span > T::zero()) || !span.is_finite() {
        return Err(SpinError::BadGrid(format!("span must be positive, got {span}")));
    }
    if !(sigma_k > T::zero()) || !sigma_k.is_finite() {
        return Err(SpinError::BadGrid(format!("sigma_k must be positive, got {sigma_k}")));
    }
    let k0_norm = k0.norm();
    if !(k0_norm > T::lit(3.0) * sigma_k) {
        return Err(SpinError::SpectrumNearOrigin { index: None, k_norm: k0_norm.as_f64() });
    }
    let n = n_per_axis;
    let half = span * sigma_k;
    let step = (half + half) / T::from_usize(n).unwrap();
    let offset = |i: usize| -half + step * (T::from_usize(i).unwrap() + T::lit(0.5));
    let weight = step * step * step;
    let denom = T::lit(4.0) * sigma_k * sigma_k;

    let mut samples = Vec::with_capacity(n * n * n);
    for ix in 0..n {
        for iy in 0..n {
            for iz in 0..n {
                let d = RVec3::new(offset(ix), offset(iy), offset(iz));
                let a = (-d.dot(&d) / denom).exp();
                samples.push(SpectralSample { k: k0 + d, amplitude: a.into(), weight });
            }
        }
    }
    let mut spec = Spectrum::normalized(samples)?;
    spec.lattice_spacing = Some(step);
    Ok(spec)
}

/// Global packet parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketConfig<T> {
    /// `I`, shared by every plane wave.
    pub i_vec: RVec3<T>,
    /// Generalized Jones vector.
    pub alpha: JonesVector<T>,
    pub refs: ReferenceSpinors<T>,
    pub hbar: T,
    /// Particle mass.
    pub mu: T,
}

impl<T: Real> PacketConfig<T> {
    pub fn new(i_vec: RVec3<T>, alpha: JonesVector<T>) -> Result<Self> {
        i_vec.check_unit("characterization vector I")?;
        alpha.as_spinor().check_normalized("Jones vector")?;
        Ok(Self { i_vec, alpha, ..Self::default() })
    }

    pub fn with_refs(mut self, refs: ReferenceSpinors<T>) -> Self {
        self.refs = refs;
        self
    }

    pub fn with_units(mut self, hbar: T, mu: T) -> Self {
        self.hbar = hbar;
        self.mu = mu;
        self
    }
}

impl<T: Real> Default for PacketConfig<T> {
    fn default() -> Self {
        Self {
            i_vec: RVec3::unit_x(),
            alpha: JonesVector::plus(),
            refs: ReferenceSpinors::standard(),
            hbar: T::one(),
            mu: T::one(),
        }
    }
}

/// `omega = hbar |k|^2 / (2 mu)`.
pub fn dispersion<T: Real>(k: &RVec3<T>, cfg: &PacketConfig<T>) -> T {
    cfg.hbar * k.dot(k) / (cfg.mu + cfg.mu)
}

#[derive(Debug, Clone, Copy)]
struct PreparedSample<T> {
    k: RVec3<T>,
    omega: T,
    /// `(2 pi)^{-3/2} weight A(k)`.
    coefficient: Complex<T>,
    frame: Frame<T>,
    chi_plus: Spinor<T>,
    chi_minus: Spinor<T>,
    chi: Spinor<T>,
}

/// A spectrum bound to a configuration, with per-sample frames and
/// eigenspinors computed once.
#[derive(Debug, Clone)]
pub struct Packet<T> {
    cfg: PacketConfig<T>,
    samples: Vec<PreparedSample<T>>,
    spectrum: Spectrum<T>,
}

/// Density and local SPV at one point; `s` is `None` at a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalSpv<T> {
    pub rho: T,
    pub s: Option<RVec3<T>>,
}

impl<T: Real> Packet<T> {
    /// Fails with [`SpinError::Sample`] naming the first sample whose frame or
    /// eigenspinors cannot be built.
    pub fn new(spectrum: &Spectrum<T>, cfg: &PacketConfig<T>) -> Result<Self> {
        cfg.i_vec.check_unit("characterization vector I")?;
        cfg.alpha.as_spinor().check_normalized("Jones vector")?;
        if !(cfg.hbar > T::zero()) || !(cfg.mu > T::zero()) {
            return Err(SpinError::BadSpectrum("hbar and mu must be positive".into()));
        }
        let pref = T::TAU().powf(T::lit(-1.5));
        let varpi_alpha = cfg.alpha;
        let samples = spectrum
            .samples()
            .iter()
            .enumerate()
            .map(|(index, s)| {
                let wrap = |e: SpinError| SpinError::Sample { index, k: s.k.to_f64(), cause: Box::new(e) };
                let w =
                    s.k.normalized()
                        .ok_or_else(|| wrap(SpinError::SpectrumNearOrigin { index: Some(index), k_norm: 0.0 }))?;
                let frame = Frame::new(w, cfg.i_vec).map_err(wrap)?;
                let pair = eigen_spinors(&frame, &cfg.refs).map_err(wrap)?;
                let varpi = crate::algebra::Mat2C::from_columns(&pair.chi_plus, &pair.chi_minus);
                Ok(PreparedSample {
                    k: s.k,
                    omega: dispersion(&s.k, cfg),
                    coefficient: s.amplitude * (pref * s.weight),
                    frame,
                    chi_plus: pair.chi_plus,
                    chi_minus: pair.chi_minus,
                    chi: compose_spinor(&varpi, &varpi_alpha),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { cfg: *cfg, samples, spectrum: spectrum.clone() })
    }

    pub fn config(&self) -> &PacketConfig<T> {
        &self.cfg
    }

    pub fn spectrum(&self) -> &Spectrum<T> {
        &self.spectrum
    }

    #[inline]
    fn plane_wave(s: &PreparedSample<T>, x: &RVec3<T>, t: T) -> Complex<T> {
        let (sin, cos) = (s.k.dot(x) - s.omega * t).sin_cos();
        s.coefficient * Complex::new(cos, sin)
    }

    /// `Psi(x, t; I)`, unnormalized.
    pub fn wavefunction(&self, x: &RVec3<T>, t: T) -> Spinor<T> {
        self.samples.iter().fold(Spinor::zero(), |acc, s| acc + s.chi.scale(Self::plane_wave(s, x, t)))
    }

    /// `Psi^p_+` or `Psi^p_-`.
    pub fn eigen_component(&self, branch: Branch, x: &RVec3<T>, t: T) -> Spinor<T> {
        self.samples.iter().fold(Spinor::zero(), |acc, s| {
            let chi = match branch {
                Branch::Plus => s.chi_plus,
                Branch::Minus => s.chi_minus,
            };
            acc + chi.scale(Self::plane_wave(s, x, t))
        })
    }

    /// `(Psi^p_+, Psi^p_-)` in one pass over the samples.
    pub fn eigen_components(&self, x: &RVec3<T>, t: T) -> (Spinor<T>, Spinor<T>) {
        self.samples.iter().fold((Spinor::zero(), Spinor::zero()), |(p, m), s| {
            let e = Self::plane_wave(s, x, t);
            (p + s.chi_plus.scale(e), m + s.chi_minus.scale(e))
        })
    }

    /// Density below which the local SPV is reported as undefined:
    /// `RHO_FLOOR_REL` times the a-priori peak bound `((2 pi)^{-3/2} sum w |A|)^2`.
    pub fn rho_floor(&self) -> T {
        let bound = self.samples.iter().fold(T::zero(), |acc, s| acc + s.coefficient.norm());
        T::lit(RHO_FLOOR_REL) * bound * bound
    }

    pub fn local_spv(&self, x: &RVec3<T>, t: T) -> LocalSpv<T> {
        let psi = self.wavefunction(x, t);
        let rho = psi.norm_sqr();
        let s = (rho >= self.rho_floor() && rho > T::zero()).then(|| spin_density(&psi).scale(rho.recip()));
        LocalSpv { rho, s }
    }

    /// `S(I) = (hbar/2) alpha^dagger [sum weight |A|^2 sigma^H(k_hat, I)] alpha`.
    pub fn total_spin(&self) -> Result<RVec3<T>> {
        let mut acc = RVec3::zero();
        for (index, (s, raw)) in self.samples.iter().zip(self.spectrum.samples()).enumerate() {
            let h = sigma_h(&s.frame, &self.cfg.refs).map_err(|e| SpinError::Sample {
                index,
                k: s.k.to_f64(),
                cause: Box::new(e),
            })?;
            acc += h.expectation(&self.cfg.alpha).scale(raw.weight * raw.amplitude.norm_sqr());
        }
        Ok(acc.scale(self.cfg.hbar * T::lit(0.5)))
    }

    /// Position-space quadrature of `rho` and of the spin density
    /// `(hbar/2) rho s` over `grid` at time `t`.
    pub fn position_moments(&self, grid: &PositionGrid<T>, t: T) -> PositionMoments<T> {
        let per_point: Vec<(T, RVec3<T>)> = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let psi = self.wavefunction(&grid.point(i), t);
                (psi.norm_sqr(), spin_density(&psi))
            })
            .collect();
        let w = grid.cell_volume();
        let (prob, spin) = per_point.iter().fold((T::zero(), RVec3::zero()), |(p, s), (rho, d)| (p + *rho, s + *d));
        PositionMoments { probability: prob * w, spin: spin.scale(w * self.cfg.hbar * T::lit(0.5)) }
    }

    /// Local density and SPV on every grid point, in grid order.
    pub fn field(&self, grid: &PositionGrid<T>, t: T) -> SpinField<T> {
        let samples = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let x = grid.point(i);
                let l = self.local_spv(&x, t);
                FieldSample { x, t, rho: l.rho, s: l.s }
            })
            .collect();
        SpinField { samples, cell_volume: grid.cell_volume() }
    }
}

/// Quadrature results over a position grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionMoments<T> {
    /// `int rho d^3x`.
    pub probability: T,
    /// `(hbar/2) int rho s d^3x`.
    pub spin: RVec3<T>,
}

/// Uniform Cartesian grid of positions with equal quadrature weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionGrid<T> {
    pub origin: RVec3<T>,
    pub step: T,
    pub counts: [usize; 3],
}

impl<T: Real> PositionGrid<T> {
    /// `n` points per axis spanning `[-half_width, half_width]` inclusive.
    pub fn symmetric(half_width: T, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(SpinError::BadGrid(format!("need at least 2 points per axis, got {n}")));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(SpinError::BadGrid(format!("half width must be positive, got {half_width}")));
        }
        let step = (half_width + half_width) / T::from_usize(n - 1).unwrap();
        Ok(Self { origin: RVec3::new(-half_width, -half_width, -half_width), step, counts: [n; 3] })
    }

    /// `n` points per axis covering one period `[c - L/2, c + L/2)`.
    pub fn periodic(center: RVec3<T>, period: T, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(SpinError::BadGrid("need at least one point per axis".into()));
        }
        if !(period > T::zero()) || !period.is_finite() {
            return Err(SpinError::BadGrid(format!("period must be positive, got {period}")));
        }
        let h = period * T::lit(0.5);
        Ok(Self { origin: center - RVec3::new(h, h, h), step: period / T::from_usize(n).unwrap(), counts: [n; 3] })
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> T {
        self.step * self.step * self.step
    }

    /// Point `i` in lexicographic `(ix, iy, iz)` order.
    pub fn point(&self, i: usize) -> RVec3<T> {
        let [_, ny, nz] = self.counts;
        let iz = i % nz;
        let iy = (i / nz) % ny;
        let ix = i / (ny * nz);
        let f = |j: usize| T::from_usize(j).unwrap() * self.step;
        self.origin + RVec3::new(f(ix), f(iy), f(iz))
    }

    pub fn points(&self) -> impl Iterator<Item = RVec3<T>> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub x: RVec3<T>,
    pub t: T,
    pub rho: T,
    /// `None` where `rho` is below the node floor.
    pub s: Option<RVec3<T>>,
}

/// Local SPV field sampled on a position grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinField<T> {
    pub samples: Vec<FieldSample<T>>,
    pub cell_volume: T,
}

impl<T: Real> SpinField<T> {
    /// `sum rho * cell_volume`.
    pub fn total_probability(&self) -> T {
        self.samples.iter().fold(T::zero(), |acc, s| acc + s.rho) * self.cell_volume
    }

    /// Density-weighted mean of `s` over the defined points.
    pub fn mean_spv(&self) -> Option<RVec3<T>> {
        let (num, den) = self.samples.iter().fold((RVec3::zero(), T::zero()), |(n, d), s| match s.s {
            Some(v) => (n + v.scale(s.rho), d + s.rho),
            None => (n, d),
        });
        (den > T::zero()).then(|| num.scale(den.recip()))
    }

    /// Largest `| |s| - 1 |` over defined points.
    pub fn max_unit_deviation(&self) -> T {
        self.samples.iter().filter_map(|s| s.s).map(|s| (s.norm() - T::one()).abs()).fold(T::zero(), T::max)
    }
}

/// `Psi(x, t; I)`.
pub fn evaluate_wavefunction<T: Real>(
    spec: &Spectrum<T>,
    cfg: &PacketConfig<T>,
    x: &RVec3<T>,
    t: T,
) -> Result<Spinor<T>> {
    Ok(Packet::new(spec, cfg)?.wavefunction(x, t))
}

/// `Psi^p_pm(x, t; I)`.
pub fn eigen_component<T: Real>(
    spec: &Spectrum<T>,
    cfg: &PacketConfig<T>,
    branch: Branch,
    x: &RVec3<T>,
    t: T,
) -> Result<Spinor<T>> {
    Ok(Packet::new(spec, cfg)?.eigen_component(branch, x, t))
}

pub fn local_spv<T: Real>(spec: &Spectrum<T>, cfg: &PacketConfig<T>, x: &RVec3<T>, t: T) -> Result<LocalSpv<T>> {
    Ok(Packet::new(spec, cfg)?.local_spv(x, t))
}

/// Total spin angular momentum, in the units of `cfg.hbar`.
pub fn total_spin<T: Real>(spec: &Spectrum<T>, cfg: &PacketConfig<T>) -> Result<RVec3<T>> {
    Packet::new(spec, cfg)?.total_spin()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T> {
    pub phi: T,
    pub spin: RVec3<T>,
}

/// Total spin for `I` rotated about `axis` by `Phi = 2 pi j / n_steps`,
/// `j = 0..n_steps`.
pub fn total_spin_i_sweep<T: Real>(
    spec: &Spectrum<T>,
    cfg: &PacketConfig<T>,
    axis: &RVec3<T>,
    n_steps: usize,
) -> Result<Vec<SweepRow<T>>> {
    if n_steps == 0 {
        return Err(SpinError::BadGrid("sweep needs at least one step".into()));
    }
    let axis = AxisAngle::new(*axis, T::zero())?.axis;
    (0..n_steps)
        .map(|j| {
            let phi = T::TAU() * T::from_usize(j).unwrap() / T::from_usize(n_steps).unwrap();
            let r = so3_rotation(&AxisAngle { axis, angle: phi });
            let rotated = PacketConfig { i_vec: r.apply(&cfg.i_vec), ..*cfg };
            Ok(SweepRow { phi, spin: total_spin(spec, &rotated)? })
        })
        .collect()
}
