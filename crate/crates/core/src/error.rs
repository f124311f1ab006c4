use thiserror::Error;

/// Which eigen-branch of `w . sigma` a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    /// The eigenvalue `+1` or `-1`.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpinError {
    #[error("{what} is not normalized (norm {norm})")]
    NotNormalized { what: &'static str, norm: f64 },

    #[error("degenerate frame: |w x I| = {cross_norm:e}, I is (anti)parallel to the quantization axis")]
    DegenerateFrame { cross_norm: f64 },

    #[error(
        "reference spinor for branch {branch} is annihilated by the ladder operator (|sigma chi| = {norm:e}); \
         choose reference spinors that are not eigenspinors of the quantization axis"
    )]
    ReferenceAnnihilated { branch: Branch, norm: f64 },

    #[error("spectral sample {index} at k = ({:.6}, {:.6}, {:.6}): {cause}", k[0], k[1], k[2])]
    Sample {
        index: usize,
        k: [f64; 3],
        /// Not exposed as `source()`: the message above already includes it.
        cause: Box<SpinError>,
    },

    #[error("{}", near_origin_message(*index, *k_norm))]
    SpectrumNearOrigin { index: Option<usize>, k_norm: f64 },

    #[error("{0} is not finite")]
    NonFinite(&'static str),

    #[error("bad grid: {0}")]
    BadGrid(String),

    #[error("bad spectrum: {0}")]
    BadSpectrum(String),

    #[error("closed-form Heisenberg Pauli matrices disagree with direct conjugation by {deviation:e}")]
    InconsistentClosedForm { deviation: f64 },
}

impl SpinError {
    /// True for errors caused by the geometry of the inputs (parallel axes,
    /// annihilated references, wave vectors at the origin).
    pub fn is_geometric(&self) -> bool {
        match self {
            SpinError::DegenerateFrame { .. }
            | SpinError::ReferenceAnnihilated { .. }
            | SpinError::SpectrumNearOrigin { .. } => true,
            SpinError::Sample { cause, .. } => cause.is_geometric(),
            _ => false,
        }
    }
}

pub type Result<T, E = SpinError> = std::result::Result<T, E>;

fn near_origin_message(index: Option<usize>, k_norm: f64) -> String {
    match index {
        Some(i) => {
            format!("spectral sample {i} has |k| = {k_norm:e}, too close to k = 0 to define a quantization axis")
        }
        None => format!("spectrum center |k0| = {k_norm} must exceed 3 sigma_k to keep every sample away from k = 0"),
    }
}
