//! Run configuration: an optional flat JSON file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use num_complex::Complex;
use serde::Deserialize;
use spinpol::frames::ReferenceSpinors;
use spinpol::verify::{Suite, DEFAULT_CASES, DEFAULT_SEED};
use spinpol::{JonesVector64, RVec3x64};

/// Renormalizing a vector input by more than this logs a warning.
const RENORM_WARN: f64 = 1e-6;

/// Every key is optional; a flag given on the command line wins over the
/// same key in the file.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub suites: Option<String>,
    pub n_cases: Option<usize>,
    /// Overrides every suite's pass threshold.
    pub tolerance: Option<f64>,

    pub spectrum: Option<PathBuf>,
    pub k0: Option<[f64; 3]>,
    pub sigma_k: Option<f64>,
    pub n_per_axis: Option<usize>,
    pub span: Option<f64>,

    pub i_vec: Option<[f64; 3]>,
    pub alpha: Option<[f64; 4]>,
    /// `standard` or `fallback`.
    pub refs: Option<String>,
    pub hbar: Option<f64>,
    pub mu: Option<f64>,

    pub half_width: Option<f64>,
    pub grid_points: Option<usize>,
    pub t: Option<f64>,

    pub axis: Option<[f64; 3]>,
    pub steps: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($f:ident),* $(,)?) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f; } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Fields set in `top` replace those in `self`.
    pub fn overlay(mut self, top: RunConfig) -> Self {
        overlay!(self, top;
            seed, out, suites, n_cases, tolerance,
            spectrum, k0, sigma_k, n_per_axis, span,
            i_vec, alpha, refs, hbar, mu,
            half_width, grid_points, t,
            axis, steps,
        );
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn n_cases(&self) -> usize {
        self.n_cases.unwrap_or(DEFAULT_CASES)
    }

    pub fn suites(&self) -> anyhow::Result<Vec<Suite>> {
        match &self.suites {
            None => Ok(Suite::ALL.to_vec()),
            Some(list) => {
                let mut out = Vec::new();
                for name in list.split(',').filter(|s| !s.trim().is_empty()) {
                    let s: Suite = name.parse().map_err(anyhow::Error::msg)?;
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
                if out.is_empty() {
                    bail!("no suites selected");
                }
                Ok(out)
            }
        }
    }

    pub fn k0(&self) -> RVec3x64 {
        RVec3x64::from_array(self.k0.unwrap_or([0.0, 0.0, 5.0]))
    }

    pub fn sigma_k(&self) -> f64 {
        self.sigma_k.unwrap_or(0.5)
    }

    pub fn n_per_axis(&self) -> usize {
        self.n_per_axis.unwrap_or(9)
    }

    pub fn span(&self) -> f64 {
        self.span.unwrap_or(4.0)
    }

    pub fn i_vec(&self) -> anyhow::Result<RVec3x64> {
        unit_vector("i_vec", self.i_vec.unwrap_or([1.0, 0.0, 0.0]))
    }

    pub fn axis(&self) -> anyhow::Result<RVec3x64> {
        unit_vector("axis", self.axis.unwrap_or([0.0, 0.0, 1.0]))
    }

    pub fn alpha(&self) -> anyhow::Result<JonesVector64> {
        let [a, b, c, d] = self.alpha.unwrap_or([1.0, 0.0, 0.0, 0.0]);
        let norm = (a * a + b * b + c * c + d * d).sqrt();
        check_renorm("alpha", norm)?;
        Ok(JonesVector64::new(Complex::new(a / norm, b / norm), Complex::new(c / norm, d / norm))?)
    }

    pub fn refs(&self) -> anyhow::Result<ReferenceSpinors<f64>> {
        match self.refs.as_deref().unwrap_or("standard") {
            "standard" => Ok(ReferenceSpinors::standard()),
            "fallback" => Ok(ReferenceSpinors::fallback()),
            other => bail!("unknown reference spinors {other:?}; expected standard or fallback"),
        }
    }

    pub fn units(&self) -> anyhow::Result<(f64, f64)> {
        let (hbar, mu) = (self.hbar.unwrap_or(1.0), self.mu.unwrap_or(1.0));
        if !(hbar > 0.0 && hbar.is_finite() && mu > 0.0 && mu.is_finite()) {
            bail!("hbar and mu must be positive and finite, got hbar = {hbar}, mu = {mu}");
        }
        Ok((hbar, mu))
    }

    pub fn half_width(&self) -> f64 {
        self.half_width.unwrap_or(6.0)
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points.unwrap_or(21)
    }

    pub fn t(&self) -> anyhow::Result<f64> {
        let t = self.t.unwrap_or(0.0);
        if !t.is_finite() {
            bail!("time must be finite");
        }
        Ok(t)
    }

    pub fn steps(&self) -> usize {
        self.steps.unwrap_or(8)
    }
}

fn check_renorm(what: &str, norm: f64) -> anyhow::Result<()> {
    if !(norm > 0.0 && norm.is_finite()) {
        bail!("{what} must be a nonzero finite vector");
    }
    if (norm - 1.0).abs() > RENORM_WARN {
        log::warn!("{what} had norm {norm}; renormalized");
    }
    Ok(())
}

fn unit_vector(what: &str, v: [f64; 3]) -> anyhow::Result<RVec3x64> {
    let v = RVec3x64::from_array(v);
    let norm = v.norm();
    check_renorm(what, norm)?;
    Ok(v.scale(norm.recip()))
}

/// Parses `x,y,z`.
pub fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    parse_list(s)
}

/// Parses `re1,im1,re2,im2`.
pub fn parse_vec4(s: &str) -> Result<[f64; 4], String> {
    parse_list(s)
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<f64> =
        s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"))).collect::<Result<_, _>>()?;
    parts.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}
