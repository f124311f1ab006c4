use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use spinpol::io::{read_spectrum, write_field, write_report, write_spectrum, write_sweep, IoError};
use spinpol::verify::{run_suite, SuiteReport};
use spinpol::wavepacket::{gaussian_spectrum, total_spin_i_sweep, Packet, PacketConfig, PositionGrid};
use spinpol::Spectrum64;

use crate::config::RunConfig;

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    VerificationFailed,
}

/// Lifts the library error out of an I/O error so the exit code can see it.
fn lift(e: IoError) -> anyhow::Error {
    match e {
        IoError::Spin(s) => s.into(),
        other => other.into(),
    }
}

fn with_output<F>(out: Option<&Path>, f: F) -> anyhow::Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<(), IoError>,
{
    match out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            f(&mut w).map_err(lift)?;
            w.flush().with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w).map_err(lift)?;
            w.flush()?;
        }
    }
    Ok(())
}

pub fn verify(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let suites = cfg.suites()?;
    let (seed, n) = (cfg.seed(), cfg.n_cases());
    let reports: Vec<SuiteReport> = suites
        .iter()
        .map(|s| {
            let mut r = run_suite(*s, seed, n);
            if let Some(tol) = cfg.tolerance {
                r.tolerance = tol;
                r.passed = r.max_residual < tol;
            }
            r
        })
        .collect();
    with_output(cfg.out.as_deref(), |w| write_report(w, &reports))?;
    for r in &reports {
        eprintln!(
            "{:<10} {:>6} cases  max residual {:.3e}  tolerance {:.0e}  {}",
            r.suite.name(),
            r.cases,
            r.max_residual,
            r.tolerance,
            if r.passed { "pass" } else { "FAIL" }
        );
    }
    Ok(if reports.iter().all(|r| r.passed) { Outcome::Ok } else { Outcome::VerificationFailed })
}

fn gaussian(cfg: &RunConfig) -> anyhow::Result<Spectrum64> {
    Ok(gaussian_spectrum(cfg.k0(), cfg.sigma_k(), cfg.n_per_axis(), cfg.span())?)
}

fn spectrum(cfg: &RunConfig) -> anyhow::Result<Spectrum64> {
    match &cfg.spectrum {
        Some(path) => {
            let file = File::open(path).with_context(|| format!("opening spectrum {}", path.display()))?;
            read_spectrum(io::BufReader::new(file))
                .map_err(lift)
                .with_context(|| format!("reading spectrum {}", path.display()))
        }
        None => gaussian(cfg),
    }
}

fn packet_config(cfg: &RunConfig) -> anyhow::Result<PacketConfig<f64>> {
    let (hbar, mu) = cfg.units()?;
    Ok(PacketConfig::new(cfg.i_vec()?, cfg.alpha()?)?.with_refs(cfg.refs()?).with_units(hbar, mu))
}

pub fn spectrum_gen(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let spec = gaussian(cfg)?;
    with_output(cfg.out.as_deref(), |w| write_spectrum(w, &spec))?;
    eprintln!("{} samples, sum weight*|A|^2 = {:.16e}", spec.len(), spec.norm_sqr());
    Ok(Outcome::Ok)
}

pub fn field(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let spec = spectrum(cfg)?;
    let packet = Packet::new(&spec, &packet_config(cfg)?)?;
    let grid = PositionGrid::symmetric(cfg.half_width(), cfg.grid_points())?;
    let field = packet.field(&grid, cfg.t()?);
    with_output(cfg.out.as_deref(), |w| write_field(w, &field))?;

    let nodes = field.samples.iter().filter(|s| s.s.is_none()).count();
    eprintln!("{} grid points, {} samples, {} nodes", field.samples.len(), spec.len(), nodes);
    eprintln!("total probability on grid {:.9}", field.total_probability());
    match field.mean_spv() {
        Some(m) => eprintln!("density-weighted mean s ({:.9}, {:.9}, {:.9})", m.x, m.y, m.z),
        None => eprintln!("density-weighted mean s undefined (no point above the node floor)"),
    }
    Ok(Outcome::Ok)
}

pub fn total_spin(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let spec = spectrum(cfg)?;
    let pc = packet_config(cfg)?;
    let rows = total_spin_i_sweep(&spec, &pc, &cfg.axis()?, cfg.steps())?;
    with_output(cfg.out.as_deref(), |w| write_sweep(w, &rows))?;
    let bound = pc.hbar / 2.0 + 1e-9;
    let max = rows.iter().map(|r| r.spin.norm()).fold(0.0, f64::max);
    eprintln!("{} rows, max |S| = {:.12} (bound {:.12})", rows.len(), max, bound);
    if max > bound {
        log::warn!("|S| exceeds hbar/2; the spectrum quadrature is not normalized");
    }
    Ok(Outcome::Ok)
}
