//! Plot-ready artifacts: CSV tables and JSON summaries.
//!
//! Every CSV starts with `#`-prefixed header lines; the last of them carries
//! the full resolved configuration as compact JSON. Numbers use Rust's
//! shortest round-trip formatting with `.` as decimal separator.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use crate::error::Result;
use crate::grid::indices;
use crate::harness::{ExperimentConfig, ExperimentOutcome, TrialRecord};
use crate::signal::DataCube;
use crate::spectral::{Entry, Positivity, SpectrumField};

pub const RESULTS_FILE: &str = "results.csv";
pub const TIMINGS_FILE: &str = "timings.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const CONFIG_FILE: &str = "config.json";

pub fn config_line<C: Serialize>(cfg: &C) -> String {
    serde_json::to_string(cfg).expect("configs serialize")
}

/// One row per `(trial, window, estimator)`. Deterministic in the config.
pub fn write_results_csv<W: Write>(
    out: &mut W,
    cfg: &ExperimentConfig,
    records: &[TrialRecord],
) -> io::Result<()> {
    writeln!(out, "# radar-fusion results v1")?;
    writeln!(out, "# config: {}", config_line(cfg))?;
    writeln!(
        out,
        "trial,window,estimator,theta1,theta2,theta3,theta_hat1,theta_hat2,theta_hat3,error"
    )?;
    for rec in records {
        let t = rec.theta.as_array();
        for r in &rec.results {
            let h = r.theta_hat.as_array();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                rec.trial,
                r.window.tag(),
                r.estimator.tag(),
                t[0],
                t[1],
                t[2],
                h[0],
                h[1],
                h[2],
                r.error
            )?;
        }
    }
    Ok(())
}

/// Per-trial wall-clock times; kept apart from the deterministic results.
pub fn write_timings_csv<W: Write>(
    out: &mut W,
    cfg: &ExperimentConfig,
    records: &[TrialRecord],
) -> io::Result<()> {
    writeln!(out, "# radar-fusion timings v1")?;
    writeln!(out, "# config: {}", config_line(cfg))?;
    writeln!(out, "trial,micros")?;
    for rec in records {
        writeln!(out, "{},{}", rec.trial, rec.micros)?;
    }
    Ok(())
}

pub fn summary_json(cfg: &ExperimentConfig, outcome: &ExperimentOutcome) -> serde_json::Value {
    json!({
        "schema": "radar-fusion/summary/v1",
        "config": cfg,
        "variants": outcome.summaries,
        "timing": {
            "trials": outcome.records.len(),
            "mean_trial_micros": outcome.mean_trial_micros(),
        },
    })
}

/// Text table of the variant medians, one row per window.
pub fn median_table(cfg: &ExperimentConfig, outcome: &ExperimentOutcome) -> String {
    let mut s = format!("{:<8}", "window");
    for e in &cfg.estimators {
        s.push_str(&format!("{:>12}", e.tag()));
    }
    s.push('\n');
    for w in &cfg.windows {
        s.push_str(&format!("{:<8}", w.kind.tag()));
        for e in &cfg.estimators {
            let m = outcome.median(w.kind, *e).unwrap_or(f64::NAN);
            s.push_str(&format!("{m:>12.6}"));
        }
        s.push('\n');
    }
    s
}

/// Writes `config.json`, `results.csv`, `timings.csv` and `summary.json`.
pub fn write_experiment_artifacts(
    dir: &Path,
    cfg: &ExperimentConfig,
    outcome: &ExperimentOutcome,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(
        dir.join(CONFIG_FILE),
        serde_json::to_string_pretty(cfg).expect("configs serialize"),
    )?;

    let mut buf = Vec::new();
    write_results_csv(&mut buf, cfg, &outcome.records)?;
    fs::write(dir.join(RESULTS_FILE), buf)?;

    let mut buf = Vec::new();
    write_timings_csv(&mut buf, cfg, &outcome.records)?;
    fs::write(dir.join(TIMINGS_FILE), buf)?;

    let summary =
        serde_json::to_string_pretty(&summary_json(cfg, outcome)).expect("summary serializes");
    fs::write(dir.join(SUMMARY_FILE), summary)?;
    Ok(())
}

pub fn entry_label(e: Entry) -> &'static str {
    match e {
        Entry::E11 => "11",
        Entry::E22 => "22",
        Entry::E12 => "12",
    }
}

/// One entry of a spectrum field as `g1,g2,g3,omega1..3,re,im,magnitude,phase`.
pub fn write_spectrum_csv<W: Write, C: Serialize>(
    out: &mut W,
    spectrum: &SpectrumField,
    entry: Entry,
    window: &str,
    positivity: &Positivity,
    cfg: &C,
) -> io::Result<()> {
    let grid = spectrum.grid();
    writeln!(out, "# radar-fusion spectrum v1")?;
    writeln!(out, "# grid: {} {} {}", grid[0], grid[1], grid[2])?;
    writeln!(out, "# entry: {}", entry_label(entry))?;
    writeln!(out, "# window: {window}")?;
    writeln!(
        out,
        "# positivity: min_eigenvalue={} positive={}",
        positivity.min_eigenvalue, positivity.positive
    )?;
    writeln!(out, "# config: {}", config_line(cfg))?;
    writeln!(out, "g1,g2,g3,omega1,omega2,omega3,re,im,magnitude,phase")?;
    for (g, z) in spectrum.indices().zip(spectrum.entry(entry)) {
        let w = spectrum.frequency(g);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            g[0],
            g[1],
            g[2],
            w[0],
            w[1],
            w[2],
            z.re,
            z.im,
            z.norm(),
            z.arg()
        )?;
    }
    Ok(())
}

/// Raw cube as `t1,t2,t3,ch1_re,ch1_im,ch2_re,ch2_im`.
pub fn write_cube_csv<W: Write, C: Serialize>(
    out: &mut W,
    cube: &DataCube,
    cfg: &C,
) -> io::Result<()> {
    let d = cube.dims();
    writeln!(out, "# radar-fusion cube v1")?;
    writeln!(out, "# dims: {} {} {}", d[0], d[1], d[2])?;
    writeln!(out, "# config: {}", config_line(cfg))?;
    writeln!(out, "t1,t2,t3,ch1_re,ch1_im,ch2_re,ch2_im")?;
    for (i, t) in indices(d).enumerate() {
        let (a, b) = (cube.channel(0)[i], cube.channel(1)[i]);
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            t[0], t[1], t[2], a.re, a.im, b.re, b.im
        )?;
    }
    Ok(())
}
