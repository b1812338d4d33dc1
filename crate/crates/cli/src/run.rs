use std::fs::File;
use std::io::{self, BufWriter, Write};

use jcspec_core::{
    find_peaks, fit_lorentzian, initial_guess, mode_descriptors, mode_summary_sweep,
    sample_spectrum, uniform_grid, weak_coupling_response, Spectrum, SweepOptions, SystemParams,
};
use log::warn;
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{GridRange, Mode, RunConfig};
use crate::output::{read_spectrum, CsvSink};

/// Grids are refined to at most this many points.
const MAX_REFINED_POINTS: usize = 2_000_001;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Domain(#[from] jcspec_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("input: {0}")]
    Input(String),
}

/// Executes `config`, writing CSV to `out`.
pub fn run<W: Write>(config: &RunConfig, out: W) -> Result<(), RunError> {
    match config.mode {
        Mode::Spectrum => spectrum(config, out),
        Mode::Chart => chart(config, out),
        Mode::Modes => modes(config, out),
        Mode::Weak => weak(config, out),
        Mode::Fit => fit(config, out),
    }
}

/// Runs and writes to the configured output file, or stdout when none is set.
pub fn run_to_destination(config: &RunConfig) -> Result<(), RunError> {
    match &config.output {
        Some(path) => {
            let file = BufWriter::new(File::create(path)?);
            run(config, file)
        }
        None => run(config, io::stdout().lock()),
    }
}

fn params(config: &RunConfig) -> Result<SystemParams, RunError> {
    let p = config.params.expect("physical parameters are resolved for every non-fit mode");
    Ok(p.validate()?)
}

/// Narrowest feature expected anywhere in the run.
fn narrowest_linewidth(p: &SystemParams) -> f64 {
    let m = mode_descriptors(p);
    [m.plus.kappa_eff, m.minus.kappa_eff, p.gamma, p.kappa]
        .into_iter()
        .filter(|k| *k > 0.0)
        .fold(f64::INFINITY, f64::min)
}

/// Grid with spacing at most a tenth of the narrowest linewidth.
fn resolving_points(range: &GridRange, linewidth: f64) -> usize {
    let target = linewidth / 10.0;
    if !target.is_finite() || range.step() <= target {
        return range.points;
    }
    let needed = ((range.max - range.min) / target * (1.0 - 1e-12)).ceil() as usize + 1;
    needed.min(MAX_REFINED_POINTS)
}

fn spectrum<W: Write>(config: &RunConfig, out: W) -> Result<(), RunError> {
    let p = params(config)?;
    let points = resolving_points(&config.omega, narrowest_linewidth(&p));
    if points != config.omega.points {
        warn!(
            "omega step {:.3e} is coarser than a tenth of the narrowest linewidth; refining to {points} points",
            config.omega.step()
        );
    }
    let s = sample_spectrum(&p, config.omega.min, config.omega.max, points)?;
    let mut sink = CsvSink::new(out, &["omega", "T"])?;
    for (w, t) in s.iter() {
        sink.floats(&[w, t])?;
    }
    Ok(sink.finish()?)
}

fn chart<W: Write>(config: &RunConfig, out: W) -> Result<(), RunError> {
    let template = params(config)?;
    let deltas = uniform_grid(config.delta.min, config.delta.max, config.delta.points)?;
    for &d in &deltas {
        template.with_delta(d).validate()?;
    }
    let narrowest = deltas
        .iter()
        .map(|&d| narrowest_linewidth(&template.with_delta(d)))
        .fold(f64::INFINITY, f64::min);
    if resolving_points(&config.omega, narrowest) != config.omega.points {
        warn!(
            "omega step {:.3e} does not resolve the narrowest linewidth {narrowest:.3e}; charts are not refined",
            config.omega.step()
        );
    }

    let rows: Vec<Spectrum> = deltas
        .par_iter()
        .map(|&d| sample_spectrum(&template.with_delta(d), config.omega.min, config.omega.max, config.omega.points))
        .collect::<Result<_, _>>()?;

    let mut sink = CsvSink::new(out, &["delta", "omega", "T"])?;
    for (d, s) in deltas.iter().zip(&rows) {
        for (w, t) in s.iter() {
            sink.floats(&[*d, w, t])?;
        }
    }
    Ok(sink.finish()?)
}

fn modes<W: Write>(config: &RunConfig, out: W) -> Result<(), RunError> {
    let template = params(config)?;
    let deltas = uniform_grid(config.delta.min, config.delta.max, config.delta.points)?;
    for &d in &deltas {
        template.with_delta(d).validate()?;
    }
    if !template.is_strong_coupling() {
        warn!("g <= max(kappa, gamma): effective-mode predictions are outside their validity range");
    }
    let rows = mode_summary_sweep(&template, &deltas, &SweepOptions::both_branches())?;

    let mut sink = CsvSink::new(
        out,
        &[
            "delta", "branch", "omega_mode", "kappa_c_eff", "kappa_eff", "T_peak_model", "T_peak_exact",
            "fwhm_exact", "flag",
        ],
    )?;
    for r in rows {
        let mut fields = vec![format_f(r.delta), r.branch.to_string()];
        fields.extend(
            [r.omega_mode, r.kappa_c_eff, r.kappa_eff, r.t_peak_model, r.t_peak_exact, r.fwhm_exact]
                .map(format_f),
        );
        fields.push(r.flag.to_string());
        sink.record(fields)?;
    }
    Ok(sink.finish()?)
}

fn weak<W: Write>(config: &RunConfig, out: W) -> Result<(), RunError> {
    let template = params(config)?;
    if !template.is_weak_coupling() {
        warn!("gamma <= g: the single-mode description does not apply");
    }
    let deltas = uniform_grid(config.delta.min, config.delta.max, config.delta.points)?;
    let rows: Vec<[f64; 5]> = deltas
        .par_iter()
        .map(|&d| {
            let p = template.with_delta(d).validate()?;
            let r = weak_coupling_response(&p);
            let s = sample_spectrum(&p, config.omega.min, config.omega.max, config.omega.points)?;
            let exact = match find_peaks(&s) {
                Ok(peaks) => peaks[0].t_peak,
                Err(_) => s.transmissions.iter().copied().fold(0.0, f64::max),
            };
            Ok([d, r.kappa_q, r.delta_omega_q, r.peak_transmission(&p), exact])
        })
        .collect::<Result<_, jcspec_core::Error>>()?;

    let mut sink = CsvSink::new(out, &["delta", "kappa_q", "delta_omega_q", "T_peak_approx", "T_peak_exact"])?;
    for row in rows {
        sink.floats(&row)?;
    }
    Ok(sink.finish()?)
}

fn fit<W: Write>(config: &RunConfig, out: W) -> Result<(), RunError> {
    let path = config.input.as_ref().expect("fit mode requires an input path");
    let file = File::open(path).map_err(|e| RunError::Input(format!("{}: {e}", path.display())))?;
    let data = read_spectrum(file).map_err(RunError::Input)?;
    let window = if config.omega_explicit {
        (config.omega.min, config.omega.max)
    } else {
        (data.omega_min(), data.omega_max())
    };
    let guess = initial_guess(&data, window)?;
    let fit = fit_lorentzian(&data, window, &guess)?;
    if !fit.converged {
        warn!("fit stopped after {} iterations without converging", fit.iterations);
    }

    let mut sink = CsvSink::new(
        out,
        &["omega_0", "kappa_fit", "kappa_c_fit", "rms_residual", "converged", "iterations"],
    )?;
    let mut fields: Vec<String> =
        [fit.omega_0, fit.kappa_fit, fit.kappa_c_fit, fit.rms_residual].map(format_f).into();
    fields.push(fit.converged.to_string());
    fields.push(fit.iterations.to_string());
    sink.record(fields)?;
    Ok(sink.finish()?)
}

fn format_f(x: f64) -> String {
    crate::output::format_float(x)
}
