//! Spin polarization of spin-1/2 particles characterized by a unit vector `I`.
//!
//! Given a quantization axis `w`, the azimuth of a second unit vector `I`
//! about `w` fixes the phases of the eigenspinors of `w . sigma`. Rotating `I`
//! by `Phi` about `w` rotates every spinor built from those eigenspinors by
//! `2 Phi` in SU(2), and its spin polarization vector by `2 Phi` in SO(3).
//!
//! All numeric types are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below are the double-precision instantiations used by the CLI and
//! the verification suites.

// `!(x >= eps)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod error;
pub mod frames;
pub mod heisenberg;
pub mod io;
pub mod rotations;
pub mod scalar;
pub mod verify;
pub mod wavepacket;

pub use error::{Branch, Result, SpinError};
pub use scalar::Real;

pub type Spinor64 = algebra::Spinor<f64>;
pub type RVec3x64 = algebra::RVec3<f64>;
pub type CVec3x64 = algebra::CVec3<f64>;
pub type Mat2C64 = algebra::Mat2C<f64>;
pub type Mat3R64 = algebra::Mat3R<f64>;
pub type JonesVector64 = algebra::JonesVector<f64>;
pub type Frame64 = frames::Frame<f64>;
pub type ReferenceSpinors64 = frames::ReferenceSpinors<f64>;
pub type EigenPair64 = frames::EigenPair<f64>;
pub type AxisAngle64 = rotations::AxisAngle<f64>;
pub type HeisenbergSigma64 = heisenberg::HeisenbergSigma<f64>;
pub type Spectrum64 = wavepacket::Spectrum<f64>;
pub type PacketConfig64 = wavepacket::PacketConfig<f64>;
pub type Packet64 = wavepacket::Packet<f64>;
pub type PositionGrid64 = wavepacket::PositionGrid<f64>;
pub type SpinField64 = wavepacket::SpinField<f64>;
