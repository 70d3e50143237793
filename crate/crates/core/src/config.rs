//! Configuration ingestion: flat key=value files, flag overrides, defaults.
//!
//! Keys are exactly the physical-parameter field names plus grid, sweep and
//! output blocks. Unknown keys are a hard error; duplicate keys warn and
//! the last occurrence wins; flags override file values; every value is SI.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::error::{Error, Result, Warning};
use crate::params::{DetuningMode, PhysicalParams};
use crate::sweeps::{AxisName, AxisSpacing, SweepAxis, SweepSpec};

/// Output serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Response-frequency grid for spectra and for sweeps without an omega
/// axis. Bounds default to ±5% around ω_φ with 400 points.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl OmegaGrid {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        (0..self.points)
            .map(|i| self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64)
            .collect()
    }
}

/// Fully resolved run configuration; validated before any computation and
/// echoed into every output header.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: PhysicalParams,
    pub omega_grid: OmegaGrid,
    pub sweep_axes: Vec<SweepAxis>,
    /// Wavelength search half-window for the tuner (m).
    pub lambda_window: f64,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub no_timestamp: bool,
    pub threads: Option<usize>,
    /// Random-free determinism; always on, kept for forward compatibility.
    pub deterministic: bool,
}

impl RunConfig {
    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        if self.sweep_axes.is_empty() {
            return Err(Error::InvalidParams(
                "no sweep axes configured (set sweep_axis1 = omega|temperature|imbalance_percent|detuning|power)".into(),
            ));
        }
        let spec = SweepSpec {
            axes: self.sweep_axes.clone(),
            baseline: self.params.clone(),
            omega_grid: self.omega_grid.values(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Canonical key=value echo of the resolved configuration (stable
    /// ordering; this text is what gets hashed into output headers).
    pub fn echo(&self) -> Vec<(String, String)> {
        let p = &self.params;
        let f = |x: f64| crate::output::format_float(x);
        let mut kv: Vec<(String, String)> = vec![
            ("mass".into(), f(p.mass)),
            ("mirror_radius".into(), f(p.mirror_radius)),
            ("omega_z".into(), f(p.omega_z)),
            ("omega_phi".into(), f(p.omega_phi)),
            ("Q_z".into(), f(p.q_z)),
            ("Q_phi".into(), f(p.q_phi)),
            ("oam_charge".into(), p.oam_charge.to_string()),
            ("cavity_length".into(), f(p.cavity_length)),
            ("finesse".into(), f(p.finesse)),
            ("wavelength".into(), f(p.wavelength)),
            ("input_power".into(), f(p.input_power)),
            (
                "detuning_mode".into(),
                match p.detuning_mode {
                    DetuningMode::Feedback => "FEEDBACK".into(),
                    DetuningMode::Fixed => "FIXED".into(),
                },
            ),
            ("detuning_value".into(), f(p.detuning_value)),
            ("temperature".into(), f(p.temperature)),
            ("omega_min".into(), f(self.omega_grid.min)),
            ("omega_max".into(), f(self.omega_grid.max)),
            ("omega_points".into(), self.omega_grid.points.to_string()),
            ("lambda_window".into(), f(self.lambda_window)),
            ("deterministic".into(), "true".into()),
        ];
        for (i, ax) in self.sweep_axes.iter().enumerate() {
            let tag = format!("sweep_axis{}", i + 1);
            kv.push((tag.clone(), ax.name.label().into()));
            kv.push((format!("{tag}_min"), f(ax.min)));
            kv.push((format!("{tag}_max"), f(ax.max)));
            kv.push((format!("{tag}_points"), ax.points.to_string()));
            kv.push((
                format!("{tag}_spacing"),
                match ax.spacing {
                    AxisSpacing::Linear => "linear".into(),
                    AxisSpacing::Log => "log".into(),
                },
            ));
        }
        kv
    }
}

/// Raw key/value assignments in input order (file first, then flags).
#[derive(Debug, Default)]
pub struct RawConfig {
    entries: Vec<(String, String, usize)>, // key, value, line (0 = flag)
    warnings: Vec<Warning>,
}

const KNOWN_KEYS: &[&str] = &[
    "mass",
    "mirror_radius",
    "omega_z",
    "omega_phi",
    "Q_z",
    "Q_phi",
    "oam_charge",
    "cavity_length",
    "finesse",
    "wavelength",
    "input_power",
    "detuning_mode",
    "detuning_value",
    "temperature",
    "omega_min",
    "omega_max",
    "omega_points",
    "sweep_axis1",
    "sweep_axis1_min",
    "sweep_axis1_max",
    "sweep_axis1_points",
    "sweep_axis1_spacing",
    "sweep_axis2",
    "sweep_axis2_min",
    "sweep_axis2_max",
    "sweep_axis2_points",
    "sweep_axis2_spacing",
    "lambda_window",
    "output",
    "format",
    "no_timestamp",
    "threads",
    "deterministic",
];

impl RawConfig {
    /// Parses a flat key=value file. Blank lines and `#` comments allowed.
    pub fn from_file_text(text: &str) -> Result<RawConfig> {
        let mut raw = RawConfig::default();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let stripped = line.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                return Err(Error::ParseError {
                    line: lineno,
                    msg: format!("expected key=value, got `{stripped}`"),
                });
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Error::UnknownKey(key));
            }
            if let Some(first) = seen.insert(key.clone(), lineno) {
                let _ = first;
                raw.warnings.push(Warning::DuplicateKey {
                    key: key.clone(),
                    line: lineno,
                });
            }
            raw.entries.push((key, value, lineno));
        }
        Ok(raw)
    }

    /// Appends flag-level overrides (highest precedence).
    pub fn add_override(&mut self, key: &str, value: &str) -> Result<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::UnknownKey(key.to_string()));
        }
        self.entries.push((key.to_string(), value.to_string(), 0));
        Ok(())
    }

    /// Resolves defaults → file → flags into a validated [`RunConfig`].
    pub fn resolve(mut self) -> Result<(RunConfig, Vec<Warning>)> {
        let mut map: BTreeMap<String, (String, usize)> = BTreeMap::new();
        for (k, v, line) in self.entries.drain(..) {
            map.insert(k, (v, line));
        }
        let parse_f64 =
            |map: &BTreeMap<String, (String, usize)>, key: &str| -> Result<Option<f64>> {
                match map.get(key) {
                    None => Ok(None),
                    Some((v, line)) => v.parse::<f64>().map(Some).map_err(|_| Error::ParseError {
                        line: *line,
                        msg: format!("key `{key}`: `{v}` is not a number"),
                    }),
                }
            };
        let parse_usize = |map: &BTreeMap<String, (String, usize)>,
                           key: &str|
         -> Result<Option<usize>> {
            match map.get(key) {
                None => Ok(None),
                Some((v, line)) => v.parse::<usize>().map(Some).map_err(|_| Error::ParseError {
                    line: *line,
                    msg: format!("key `{key}`: `{v}` is not a non-negative integer"),
                }),
            }
        };

        let mut p = PhysicalParams::default();
        if let Some(v) = parse_f64(&map, "mass")? {
            p.mass = v;
        }
        if let Some(v) = parse_f64(&map, "mirror_radius")? {
            p.mirror_radius = v;
        }
        if let Some(v) = parse_f64(&map, "omega_z")? {
            p.omega_z = v;
        }
        if let Some(v) = parse_f64(&map, "omega_phi")? {
            p.omega_phi = v;
        }
        if let Some(v) = parse_f64(&map, "Q_z")? {
            p.q_z = v;
        }
        if let Some(v) = parse_f64(&map, "Q_phi")? {
            p.q_phi = v;
        }
        if let Some((v, line)) = map.get("oam_charge") {
            p.oam_charge = v.parse::<u64>().map_err(|_| Error::ParseError {
                line: *line,
                msg: format!("oam_charge: `{v}` is not a positive integer"),
            })?;
        }
        if let Some(v) = parse_f64(&map, "cavity_length")? {
            p.cavity_length = v;
        }
        if let Some(v) = parse_f64(&map, "finesse")? {
            p.finesse = v;
        }
        if let Some(v) = parse_f64(&map, "wavelength")? {
            p.wavelength = v;
        }
        if let Some(v) = parse_f64(&map, "input_power")? {
            p.input_power = v;
        }
        if let Some((v, line)) = map.get("detuning_mode") {
            p.detuning_mode = match v.as_str() {
                "FEEDBACK" => DetuningMode::Feedback,
                "FIXED" => DetuningMode::Fixed,
                other => {
                    return Err(Error::ParseError {
                        line: *line,
                        msg: format!("detuning_mode must be FEEDBACK or FIXED, got `{other}`"),
                    })
                }
            };
        }
        if let Some(v) = parse_f64(&map, "detuning_value")? {
            p.detuning_value = v;
        }
        if let Some(v) = parse_f64(&map, "temperature")? {
            p.temperature = v;
        }
        p.validate()?;

        // unit-sanity heuristics (non-fatal)
        if p.mass >= 1e-3 {
            self.warnings.push(Warning::UnitSanity(format!(
                "mass = {} kg is gram-scale or larger; the mass key expects kilograms",
                p.mass
            )));
        }
        if p.wavelength >= 1e-5 {
            self.warnings.push(Warning::UnitSanity(format!(
                "wavelength = {} m is far above optical scales; the wavelength key expects meters",
                p.wavelength
            )));
        }

        let omega_grid = OmegaGrid {
            min: parse_f64(&map, "omega_min")?.unwrap_or(0.95 * p.omega_phi),
            max: parse_f64(&map, "omega_max")?.unwrap_or(1.05 * p.omega_phi),
            points: parse_usize(&map, "omega_points")?.unwrap_or(400),
        };
        if omega_grid.points == 0 {
            return Err(Error::InvalidParams("omega_points must be >= 1".into()));
        }
        if !omega_grid.min.is_finite() || !omega_grid.max.is_finite() {
            return Err(Error::InvalidParams(
                "omega grid bounds must be finite".into(),
            ));
        }
        if omega_grid.points >= 2 && omega_grid.min >= omega_grid.max {
            return Err(Error::InvalidParams("omega_min must be < omega_max".into()));
        }
        if omega_grid.values().contains(&0.0) {
            return Err(Error::InvalidParams("the omega grid must exclude 0".into()));
        }

        let mut sweep_axes = Vec::new();
        for i in 1..=2 {
            let tag = format!("sweep_axis{i}");
            let Some((name_str, line)) = map.get(tag.as_str()) else {
                continue;
            };
            let name = AxisName::parse(name_str).ok_or_else(|| Error::ParseError {
                line: *line,
                msg: format!(
                    "{tag} must be one of omega|temperature|imbalance_percent|detuning|power, got `{name_str}`"
                ),
            })?;
            let min = parse_f64(&map, &format!("{tag}_min"))?
                .ok_or_else(|| Error::InvalidParams(format!("{tag}_min is required with {tag}")))?;
            let max = parse_f64(&map, &format!("{tag}_max"))?.unwrap_or(min);
            let points = parse_usize(&map, &format!("{tag}_points"))?.unwrap_or(1);
            let spacing = match map.get(format!("{tag}_spacing").as_str()) {
                None => AxisSpacing::Linear,
                Some((v, line)) => match v.as_str() {
                    "linear" => AxisSpacing::Linear,
                    "log" => AxisSpacing::Log,
                    other => {
                        return Err(Error::ParseError {
                            line: *line,
                            msg: format!("{tag}_spacing must be linear or log, got `{other}`"),
                        })
                    }
                },
            };
            sweep_axes.push(SweepAxis {
                name,
                min,
                max,
                points,
                spacing,
            });
        }
        if map.contains_key("sweep_axis2") && !map.contains_key("sweep_axis1") {
            return Err(Error::InvalidParams(
                "sweep_axis2 configured without sweep_axis1".into(),
            ));
        }

        let format = match map.get("format") {
            None => OutputFormat::Csv,
            Some((v, line)) => match v.as_str() {
                "csv" => OutputFormat::Csv,
                "json" => OutputFormat::Json,
                other => {
                    return Err(Error::ParseError {
                        line: *line,
                        msg: format!("format must be csv or json, got `{other}`"),
                    })
                }
            },
        };
        let parse_bool = |key: &str| -> Result<Option<bool>> {
            match map.get(key) {
                None => Ok(None),
                Some((v, line)) => match v.as_str() {
                    "true" => Ok(Some(true)),
                    "false" => Ok(Some(false)),
                    other => Err(Error::ParseError {
                        line: *line,
                        msg: format!("{key} must be true or false, got `{other}`"),
                    }),
                },
            }
        };
        if parse_bool("deterministic")? == Some(false) {
            return Err(Error::InvalidParams(
                "deterministic = false is not supported; every run is random-free".into(),
            ));
        }

        let config = RunConfig {
            params: p,
            omega_grid,
            sweep_axes,
            lambda_window: parse_f64(&map, "lambda_window")?.unwrap_or(5e-9),
            output: map.get("output").map(|(v, _)| PathBuf::from(v)),
            format,
            no_timestamp: parse_bool("no_timestamp")?.unwrap_or(false),
            threads: parse_usize(&map, "threads")?,
            deterministic: true,
        };
        Ok((config, self.warnings))
    }
}

/// Loads a config file (when given), applies overrides, resolves.
pub fn parse_config(
    file: Option<&std::path::Path>,
    overrides: &[(String, String)],
) -> Result<(RunConfig, Vec<Warning>)> {
    let mut raw = match file {
        Some(path) => RawConfig::from_file_text(&std::fs::read_to_string(path)?)?,
        None => RawConfig::default(),
    };
    for (k, v) in overrides {
        raw.add_override(k, v)?;
    }
    raw.resolve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_yields_exact_defaults() {
        let (cfg, warnings) = RawConfig::from_file_text("").unwrap().resolve().unwrap();
        assert_eq!(cfg.params, PhysicalParams::default());
        assert_eq!(cfg.omega_grid.points, 400);
        assert_eq!(cfg.format, OutputFormat::Csv);
        assert!(warnings.is_empty());
        // grid brackets the rotational resonance
        assert!(cfg.omega_grid.min < cfg.params.omega_phi);
        assert!(cfg.omega_grid.max > cfg.params.omega_phi);
    }

    #[test]
    fn flags_override_file_values() {
        let mut raw = RawConfig::from_file_text("omega_z = 1.0e6\n").unwrap();
        raw.add_override("omega_z", "6.283185e6").unwrap();
        let (cfg, _) = raw.resolve().unwrap();
        assert_eq!(cfg.params.omega_z, 6.283185e6);
    }

    #[test]
    fn duplicate_key_warns_and_last_wins() {
        let raw = RawConfig::from_file_text("mass = 1e-9\nmass = 2e-9\n").unwrap();
        let (cfg, warnings) = raw.resolve().unwrap();
        assert_eq!(cfg.params.mass, 2e-9);
        assert!(warnings
            .iter()
            .any(|w| matches!(w, Warning::DuplicateKey { key, .. } if key == "mass")));
    }

    #[test]
    fn unknown_key_is_hard_error() {
        assert!(matches!(
            RawConfig::from_file_text("masss = 1e-9\n"),
            Err(Error::UnknownKey(k)) if k == "masss"
        ));
        let mut raw = RawConfig::default();
        assert!(matches!(
            raw.add_override("nope", "1"),
            Err(Error::UnknownKey(_))
        ));
    }

    #[test]
    fn parse_error_carries_line_number() {
        match RawConfig::from_file_text("mass = 1e-9\nbroken line\n") {
            Err(Error::ParseError { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match RawConfig::from_file_text("\n\nmass = not_a_number\n")
            .unwrap()
            .resolve()
        {
            Err(Error::ParseError { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# full-line comment\n\nmass = 3e-9  # trailing comment\n";
        let (cfg, _) = RawConfig::from_file_text(text).unwrap().resolve().unwrap();
        assert_eq!(cfg.params.mass, 3e-9);
    }

    #[test]
    fn gram_scale_mass_triggers_unit_warning() {
        let raw = RawConfig::from_file_text("mass = 1.0\n").unwrap();
        let (_, warnings) = raw.resolve().unwrap();
        assert!(warnings.iter().any(|w| matches!(w, Warning::UnitSanity(_))));
    }

    #[test]
    fn zero_in_omega_grid_is_rejected() {
        let raw =
            RawConfig::from_file_text("omega_min = -1e6\nomega_max = 1e6\nomega_points = 3\n")
                .unwrap();
        assert!(raw.resolve().is_err());
    }

    #[test]
    fn sweep_axes_parse() {
        let text = "sweep_axis1 = omega\nsweep_axis1_min = 5.96e6\nsweep_axis1_max = 6.6e6\n\
                    sweep_axis1_points = 10\nsweep_axis2 = temperature\nsweep_axis2_min = 0.1\n\
                    sweep_axis2_max = 20\nsweep_axis2_points = 5\nsweep_axis2_spacing = log\n";
        let (cfg, _) = RawConfig::from_file_text(text).unwrap().resolve().unwrap();
        let spec = cfg.sweep_spec().unwrap();
        assert_eq!(spec.axes.len(), 2);
        assert_eq!(spec.axes[0].name, AxisName::Omega);
        assert_eq!(spec.axes[1].spacing, AxisSpacing::Log);
    }

    #[test]
    fn deterministic_false_is_rejected() {
        let raw = RawConfig::from_file_text("deterministic = false\n").unwrap();
        assert!(raw.resolve().is_err());
    }

    #[test]
    fn fixed_mode_parses() {
        let raw =
            RawConfig::from_file_text("detuning_mode = FIXED\ndetuning_value = 1e7\n").unwrap();
        let (cfg, _) = raw.resolve().unwrap();
        assert_eq!(cfg.params.detuning_mode, DetuningMode::Fixed);
    }
}
