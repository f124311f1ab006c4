//! Plain CSV files for spectra, SPV fields, total-spin sweeps and
//! verification reports.
//!
//! Every number is written with 17 significant digits (`{:.16e}`), which
//! round-trips an `f64` exactly, so identical inputs yield identical bytes.

use std::io::{Read, Write};

use num_complex::Complex;

use crate::algebra::RVec3;
use crate::error::SpinError;
use crate::verify::SuiteReport;
use crate::wavepacket::{SpectralSample, Spectrum, SpinField, SweepRow};

pub const SPECTRUM_HEADER: [&str; 6] = ["kx", "ky", "kz", "re_A", "im_A", "weight"];
pub const FIELD_HEADER: [&str; 8] = ["x", "y", "z", "t", "rho", "sx", "sy", "sz"];
pub const SWEEP_HEADER: [&str; 4] = ["phi", "Sx", "Sy", "Sz"];
pub const REPORT_HEADER: [&str; 5] = ["suite", "cases", "max_residual", "tolerance", "status"];

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error(transparent)]
    Spin(#[from] SpinError),
}

/// Formats a float with 17 significant digits.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

/// Reads a spectrum, header line required. The normalization invariant is
/// enforced, not repaired.
pub fn read_spectrum<R: Read>(r: R) -> std::result::Result<Spectrum<f64>, IoError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(r);
    let header = rdr.headers()?.clone();
    if header.iter().ne(SPECTRUM_HEADER.iter().copied()) {
        return Err(IoError::Parse {
            line: 1,
            msg: format!(
                "expected header {}, found {}",
                SPECTRUM_HEADER.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut samples = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 6 {
            return Err(IoError::Parse { line, msg: format!("expected 6 fields, found {}", rec.len()) });
        }
        let mut v = [0.0; 6];
        for (slot, field) in v.iter_mut().zip(rec.iter()) {
            *slot = field.parse().map_err(|e| IoError::Parse { line, msg: format!("{field:?}: {e}") })?;
        }
        samples.push(SpectralSample {
            k: RVec3::new(v[0], v[1], v[2]),
            amplitude: Complex::new(v[3], v[4]),
            weight: v[5],
        });
    }
    Ok(Spectrum::new(samples)?)
}

pub fn write_spectrum<W: Write>(w: W, spec: &Spectrum<f64>) -> std::result::Result<(), IoError> {
    let mut wtr = writer(w);
    wtr.write_record(SPECTRUM_HEADER)?;
    for s in spec.samples() {
        let [kx, ky, kz] = s.k.as_array();
        wtr.write_record([kx, ky, kz, s.amplitude.re, s.amplitude.im, s.weight].map(fmt))?;
    }
    wtr.flush()?;
    Ok(())
}

/// Node points (undefined `s`) are written with `nan` spin components.
pub fn write_field<W: Write>(w: W, field: &SpinField<f64>) -> std::result::Result<(), IoError> {
    let mut wtr = writer(w);
    wtr.write_record(FIELD_HEADER)?;
    for p in &field.samples {
        let [x, y, z] = p.x.as_array();
        let [sx, sy, sz] = p.s.map_or([f64::NAN; 3], |s| s.as_array());
        wtr.write_record([x, y, z, p.t, p.rho, sx, sy, sz].map(fmt))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_sweep<W: Write>(w: W, rows: &[SweepRow<f64>]) -> std::result::Result<(), IoError> {
    let mut wtr = writer(w);
    wtr.write_record(SWEEP_HEADER)?;
    for r in rows {
        let [sx, sy, sz] = r.spin.as_array();
        wtr.write_record([r.phi, sx, sy, sz].map(fmt))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_report<W: Write>(w: W, reports: &[SuiteReport]) -> std::result::Result<(), IoError> {
    let mut wtr = writer(w);
    wtr.write_record(REPORT_HEADER)?;
    for r in reports {
        wtr.write_record([
            r.suite.to_string(),
            r.cases.to_string(),
            fmt(r.max_residual),
            fmt(r.tolerance),
            if r.passed { "pass" } else { "fail" }.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}
