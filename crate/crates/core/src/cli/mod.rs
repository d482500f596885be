//! The `robust-ising` command-line tool.
//!
//! Exit status: 0 on success, 1 when a verification fails or a run errors,
//! 2 for usage errors. `ROBUST_ISING_THREADS` caps sweep parallelism.

mod args;
mod config;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;
use serde::Serialize;

pub use args::{Claim, Cli, Command, DumpFormat};
pub use config::{
    parse_angle, parse_config_text, parse_eps_range, CommandKind, RunConfig, UsageError,
    DEFAULT_EPS, DEFAULT_THRESHOLD,
};

use crate::analysis::verify::{
    bb1_signed_coefficient, expansion_checks, flatness_check, range_ratio_check,
};
use crate::analysis::{linear_grid, robust_range, Family};
use crate::pulses::{dump_text, SequenceRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const THREADS_ENV: &str = "ROBUST_ISING_THREADS";

/// Parse `args` (including the program name), run, and return the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return e.exit_code();
        }
    };
    let cfg = match RunConfig::resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}\n\nFor more information, try '--help'.");
            return EXIT_USAGE;
        }
    };
    let pool = match thread_cap() {
        Ok(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.unwrap_or(0))
            .build(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match pool {
        Ok(pool) => {
            let (outcome, buf) = pool.install(|| {
                let mut buf = Vec::new();
                (execute(&cfg, &mut buf), buf)
            });
            stdout.write_all(&buf).map_err(io_err).and(outcome)
        }
        Err(e) => Err(e.to_string()),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILURE,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn thread_cap() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            )),
        },
    }
}

/// Returns whether every check passed.
fn execute(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<bool, String> {
    match cfg.command {
        CommandKind::Sweep => with_output(cfg, stdout, |out| cmd_sweep(cfg, out)),
        CommandKind::Verify => cmd_verify(cfg, stdout),
        CommandKind::Range => cmd_range(cfg, stdout),
        CommandKind::Dump => with_output(cfg, stdout, |out| cmd_dump(cfg, out)),
    }
}

fn with_output<F>(cfg: &RunConfig, stdout: &mut dyn Write, f: F) -> Result<bool, String>
where
    F: FnOnce(&mut dyn Write) -> Result<bool, String>,
{
    match &cfg.output {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            let ok = f(&mut w)?;
            w.flush().map_err(io_err)?;
            Ok(ok)
        }
        None => f(stdout),
    }
}

fn io_err(e: io::Error) -> String {
    e.to_string()
}

fn family(cfg: &RunConfig) -> Result<Family, String> {
    let (scheme, gate) = cfg.family.ok_or("--family is required")?;
    Family::with_options(scheme, gate, cfg.theta, cfg.options).map_err(|e| e.to_string())
}

pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, String> {
    let fam = family(cfg)?;
    let grid = linear_grid(cfg.eps_min, cfg.eps_max, cfg.eps_step).map_err(|e| e.to_string())?;
    let axis = cfg.axis.unwrap_or_else(|| fam.default_axis());
    let curve = fam.sweep(&grid, axis).map_err(|e| e.to_string())?;
    curve.write_csv(out).map_err(io_err)?;
    Ok(true)
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, String> {
    let mut ok = true;
    let claim = cfg.claim;
    if matches!(claim, Claim::Expansions | Claim::All) {
        let checks = expansion_checks(cfg.theta).map_err(|e| e.to_string())?;
        for c in &checks {
            writeln!(out, "{c}").map_err(io_err)?;
            ok &= c.passed();
        }
        writeln!(
            out,
            "note: bb1-1q signed bracket (theta^6 - 14 pi^2 theta^4 - 32 pi^4 theta^2)/9216 = {:.6}; compared by magnitude",
            bb1_signed_coefficient(cfg.theta)
        )
        .map_err(io_err)?;
    }
    if matches!(claim, Claim::Flatness | Claim::All) {
        let c = flatness_check().map_err(|e| e.to_string())?;
        writeln!(out, "{c}").map_err(io_err)?;
        ok &= c.passed();
    }
    if matches!(claim, Claim::RangeRatio | Claim::All) {
        let c = range_ratio_check(cfg.threshold).map_err(|e| e.to_string())?;
        writeln!(out, "{c}").map_err(io_err)?;
        ok &= c.passed();
    }
    Ok(ok)
}

pub fn cmd_range(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, String> {
    let fam = family(cfg)?;
    let axis = cfg.axis.unwrap_or_else(|| fam.default_axis());
    let measure = |f: &Family| {
        robust_range(|e| f.infidelity(e, axis), cfg.threshold, cfg.search_max)
            .map_err(|e| e.to_string())
    };
    let r = measure(&fam)?;
    writeln!(out, "family {}", fam.label()).map_err(io_err)?;
    writeln!(out, "theta_pi {}", fam.theta / std::f64::consts::PI).map_err(io_err)?;
    writeln!(out, "axis {}", axis.name()).map_err(io_err)?;
    writeln!(out, "threshold {:e}", cfg.threshold).map_err(io_err)?;
    writeln!(out, "epsilon_max {:.6e}", r.epsilon_max).map_err(io_err)?;
    writeln!(out, "saturated {}", r.saturated).map_err(io_err)?;
    if let Some((scheme, gate)) = cfg.baseline {
        let base = Family::with_options(scheme, gate, cfg.theta, cfg.options)
            .map_err(|e| e.to_string())?;
        let b = measure(&base)?;
        if b.epsilon_max == 0.0 {
            return Err(format!("baseline {} has zero robust range", base.label()));
        }
        writeln!(out, "baseline {}", base.label()).map_err(io_err)?;
        writeln!(out, "baseline_epsilon_max {:.6e}", b.epsilon_max).map_err(io_err)?;
        writeln!(out, "ratio {:.4}", r.epsilon_max / b.epsilon_max).map_err(io_err)?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct DumpRecord {
    family: String,
    theta_pi: f64,
    #[serde(flatten)]
    sequence: SequenceRecord,
}

pub fn cmd_dump(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, String> {
    let fam = family(cfg)?;
    let mut seq = fam.sequence().clone();
    if !cfg.logical {
        seq = seq.expand_tilted().map_err(|e| e.to_string())?;
    }
    if cfg.merge {
        seq = seq.merge_collinear_pulses().map_err(|e| e.to_string())?;
    }
    match cfg.format {
        DumpFormat::Text => {
            writeln!(
                out,
                "# family {} theta_pi {}",
                fam.label(),
                fam.theta / std::f64::consts::PI
            )
            .map_err(io_err)?;
            write!(out, "{}", dump_text(&seq)).map_err(io_err)?;
        }
        DumpFormat::Json => {
            let rec = DumpRecord {
                family: fam.label(),
                theta_pi: fam.theta / std::f64::consts::PI,
                sequence: SequenceRecord::from(&seq),
            };
            let text = serde_json::to_string_pretty(&rec).map_err(|e| e.to_string())?;
            writeln!(out, "{text}").map_err(io_err)?;
        }
    }
    Ok(true)
}
