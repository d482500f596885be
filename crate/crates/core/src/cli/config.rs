use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};

use super::args::{Claim, Cli, Command, DumpFormat, FamilyArgs};
use crate::analysis::{parse_family_name, ErrorAxis, GateKind, Scheme, DEFAULT_SEARCH_MAX};
use crate::pulses::BuildOptions;

/// Problems with the command line or config file; reported with exit status 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Sweep,
    Verify,
    Range,
    Dump,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub family: Option<(Scheme, GateKind)>,
    pub theta: f64,
    pub options: BuildOptions,
    pub eps_min: f64,
    pub eps_max: f64,
    pub eps_step: f64,
    pub axis: Option<ErrorAxis>,
    pub threshold: f64,
    pub search_max: f64,
    pub baseline: Option<(Scheme, GateKind)>,
    pub claim: Claim,
    pub format: DumpFormat,
    pub logical: bool,
    pub merge: bool,
    pub output: Option<PathBuf>,
}

pub const DEFAULT_EPS: (f64, f64, f64) = (-1.0, 1.0, 0.01);
pub const DEFAULT_THRESHOLD: f64 = 1e-6;

/// Parse `0.5pi`, `pi/2`, `-pi`, `90deg`, `1.2rad` or plain radians.
pub fn parse_angle(text: &str) -> Result<f64, UsageError> {
    let s = text.trim().to_ascii_lowercase();
    let bad = || usage(format!("cannot parse angle `{text}`"));
    let number = |v: &str| -> Result<f64, UsageError> {
        match v {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => v.parse::<f64>().map_err(|_| bad()),
        }
    };
    let value = if let Some(v) = s.strip_suffix("deg") {
        v.trim().parse::<f64>().map_err(|_| bad())?.to_radians()
    } else if let Some(v) = s.strip_suffix("rad") {
        v.trim().parse::<f64>().map_err(|_| bad())?
    } else if let Some((num, den)) = s.split_once("pi/") {
        let den: f64 = den.trim().parse().map_err(|_| bad())?;
        number(num.trim())? * PI / den
    } else if let Some(v) = s.strip_suffix("pi") {
        number(v.trim())? * PI
    } else {
        s.parse::<f64>().map_err(|_| bad())?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Parse `min:max:step`.
pub fn parse_eps_range(text: &str) -> Result<(f64, f64, f64), UsageError> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || usage(format!("error grid `{text}` must look like min:max:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((v[0], v[1], v[2]))
}

/// Flat `key = value` settings; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key = value", n + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(usage(format!("config line {}: unknown key `{key}`", n + 1)));
        }
        map.insert(key, v.trim().trim_matches('"').to_string());
    }
    Ok(map)
}

const KNOWN_KEYS: &[&str] = &[
    "family",
    "theta",
    "eps",
    "axis",
    "threshold",
    "search_max",
    "baseline",
    "claim",
    "format",
    "output",
    "robust_pulses",
    "merge",
    "logical",
];

fn load_config(path: Option<&Path>) -> Result<BTreeMap<String, String>, UsageError> {
    match path {
        None => Ok(BTreeMap::new()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| usage(format!("cannot read config {}: {e}", p.display())))?;
            parse_config_text(&text)
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, UsageError> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(usage(format!("`{key}` must be true or false, got `{v}`"))),
    }
}

fn parse_float(key: &str, v: &str) -> Result<f64, UsageError> {
    v.parse()
        .map_err(|_| usage(format!("`{key}` must be a number, got `{v}`")))
}

fn family(name: &str) -> Result<(Scheme, GateKind), UsageError> {
    parse_family_name(name).map_err(|e| usage(e.to_string()))
}

impl RunConfig {
    /// Merge flags over the config file over built-in defaults, then validate.
    pub fn resolve(cli: &Cli) -> Result<Self, UsageError> {
        let file = load_config(cli.config.as_deref())?;
        let get = |key: &str| file.get(key).map(String::as_str);

        let empty = FamilyArgs::default();
        let (command, fam_args) = match &cli.command {
            Command::Sweep(a) => (CommandKind::Sweep, &a.family),
            Command::Verify(_) => (CommandKind::Verify, &empty),
            Command::Range(a) => (CommandKind::Range, &a.family),
            Command::Dump(a) => (CommandKind::Dump, &a.family),
        };

        let family = match fam_args.family.as_deref().or(get("family")) {
            Some(name) => Some(family(name)?),
            None => None,
        };
        let theta_flag = match &cli.command {
            Command::Verify(a) => a.theta.as_deref(),
            _ => fam_args.theta.as_deref(),
        };
        let theta = match theta_flag.or(get("theta")) {
            Some(t) => parse_angle(t)?,
            None => FRAC_PI_2,
        };
        let robust_pulses = fam_args.robust_pulses
            || get("robust_pulses")
                .map(|v| parse_bool("robust_pulses", v))
                .transpose()?
                .unwrap_or(false);

        let eps_flag = match &cli.command {
            Command::Sweep(a) => a.eps.as_deref(),
            _ => None,
        };
        let (eps_min, eps_max, eps_step) = match eps_flag.or(get("eps")) {
            Some(e) => parse_eps_range(e)?,
            None => DEFAULT_EPS,
        };

        let axis_flag = match &cli.command {
            Command::Sweep(a) => a.axis.as_deref(),
            Command::Range(a) => a.axis.as_deref(),
            _ => None,
        };
        let axis = axis_flag
            .or(get("axis"))
            .map(|a| a.parse::<ErrorAxis>().map_err(|e| usage(e.to_string())))
            .transpose()?;

        let threshold_flag = match &cli.command {
            Command::Verify(a) => a.threshold,
            Command::Range(a) => a.threshold,
            _ => None,
        };
        let threshold = match threshold_flag {
            Some(t) => t,
            None => get("threshold")
                .map(|v| parse_float("threshold", v))
                .transpose()?
                .unwrap_or(DEFAULT_THRESHOLD),
        };

        let (search_max, baseline) = match &cli.command {
            Command::Range(a) => (a.search_max, a.baseline.clone()),
            _ => (None, None),
        };
        let search_max = match search_max {
            Some(s) => s,
            None => get("search_max")
                .map(|v| parse_float("search_max", v))
                .transpose()?
                .unwrap_or(DEFAULT_SEARCH_MAX),
        };
        let baseline = match baseline.as_deref().or(get("baseline")) {
            Some(name) => Some(self::family(name)?),
            None => None,
        };

        let claim = match &cli.command {
            Command::Verify(a) => a.claim,
            _ => None,
        };
        let claim = match claim {
            Some(c) => c,
            None => match get("claim") {
                None => Claim::Expansions,
                Some("expansions") => Claim::Expansions,
                Some("range-ratio") => Claim::RangeRatio,
                Some("flatness") => Claim::Flatness,
                Some("all") => Claim::All,
                Some(other) => return Err(usage(format!("unknown claim `{other}`"))),
            },
        };

        let (format, logical, merge, output) = match &cli.command {
            Command::Dump(a) => (a.format, a.logical, a.merge, a.output.clone()),
            Command::Sweep(a) => (None, false, false, a.output.clone()),
            _ => (None, false, false, None),
        };
        let format = match format {
            Some(f) => f,
            None => match get("format") {
                None | Some("text") => DumpFormat::Text,
                Some("json") => DumpFormat::Json,
                Some(other) => return Err(usage(format!("unknown format `{other}`"))),
            },
        };
        let flag_or_file = |flag: bool, key: &str| -> Result<bool, UsageError> {
            Ok(flag
                || get(key)
                    .map(|v| parse_bool(key, v))
                    .transpose()?
                    .unwrap_or(false))
        };
        let logical = flag_or_file(logical, "logical")?;
        let merge = flag_or_file(merge, "merge")?;
        let output = output.or_else(|| get("output").map(PathBuf::from));

        let cfg = RunConfig {
            command,
            family,
            theta,
            options: BuildOptions { robust_pulses },
            eps_min,
            eps_max,
            eps_step,
            axis,
            threshold,
            search_max,
            baseline,
            claim,
            format,
            logical,
            merge,
            output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), UsageError> {
        match self.command {
            CommandKind::Sweep => {
                if self.eps_step.is_nan() || self.eps_step <= 0.0 {
                    return Err(usage(format!("eps step {} must be > 0", self.eps_step)));
                }
                if self.eps_min.is_nan() || self.eps_max.is_nan() || self.eps_min >= self.eps_max {
                    return Err(usage(format!(
                        "eps min {} must be < max {}",
                        self.eps_min, self.eps_max
                    )));
                }
            }
            CommandKind::Range | CommandKind::Verify => {
                if !(self.threshold > 0.0 && self.threshold < 1.0) {
                    return Err(usage(format!(
                        "threshold {} must be in (0, 1)",
                        self.threshold
                    )));
                }
                if !(self.search_max > 0.0 && self.search_max.is_finite()) {
                    return Err(usage(format!(
                        "search bound {} must be > 0",
                        self.search_max
                    )));
                }
            }
            CommandKind::Dump => {}
        }
        if matches!(
            self.command,
            CommandKind::Sweep | CommandKind::Range | CommandKind::Dump
        ) && self.family.is_none()
        {
            return Err(usage("--family is required"));
        }
        Ok(())
    }
}
