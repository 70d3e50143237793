//! Command-line interface: one binary, subcommands mirroring the module
//! pipeline. Exit codes: 0 success, 2 config error, 3 numerical failure
//! (including the stability gate), 4 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rovib::config::{parse_config, OutputFormat, RunConfig};
use rovib::dynamics::build_linear_model;
use rovib::error::{Error, Result, Warning};
use rovib::output::{self, format_float};
use rovib::params::{derive_params, DetuningMode};
use rovib::spectra::{evaluate_curve, summarize_curve};
use rovib::steady::{steady_state_feedback, steady_state_fixed_detuning, steady_state_from_branch};
use rovib::sweeps::tune_couplings;

#[derive(Parser)]
#[command(
    name = "rovib",
    version,
    about = "Ro-vibrational optomechanical entanglement simulator",
    propagate_version = true
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Config file (flat key=value, SI units). Flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Suppress the timestamp header line (byte-reproducible output).
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Physical/grid overrides, keys as in the config file.
    #[arg(
        long = "mass",
        global = true,
        allow_hyphen_values = true,
        value_name = "KG"
    )]
    mass: Option<String>,
    #[arg(
        long = "mirror_radius",
        global = true,
        allow_hyphen_values = true,
        value_name = "M"
    )]
    mirror_radius: Option<String>,
    #[arg(
        long = "omega_z",
        global = true,
        allow_hyphen_values = true,
        value_name = "RAD_S"
    )]
    omega_z: Option<String>,
    #[arg(
        long = "omega_phi",
        global = true,
        allow_hyphen_values = true,
        value_name = "RAD_S"
    )]
    omega_phi: Option<String>,
    #[arg(
        long = "Q_z",
        global = true,
        allow_hyphen_values = true,
        value_name = "QZ"
    )]
    q_z: Option<String>,
    #[arg(
        long = "Q_phi",
        global = true,
        allow_hyphen_values = true,
        value_name = "QPHI"
    )]
    q_phi: Option<String>,
    #[arg(
        long = "oam_charge",
        global = true,
        allow_hyphen_values = true,
        value_name = "L"
    )]
    oam_charge: Option<String>,
    #[arg(
        long = "cavity_length",
        global = true,
        allow_hyphen_values = true,
        value_name = "M"
    )]
    cavity_length: Option<String>,
    #[arg(
        long = "finesse",
        global = true,
        allow_hyphen_values = true,
        value_name = "F"
    )]
    finesse: Option<String>,
    #[arg(
        long = "wavelength",
        global = true,
        allow_hyphen_values = true,
        value_name = "M"
    )]
    wavelength: Option<String>,
    #[arg(
        long = "input_power",
        global = true,
        allow_hyphen_values = true,
        value_name = "W"
    )]
    input_power: Option<String>,
    #[arg(
        long = "detuning_mode",
        global = true,
        allow_hyphen_values = true,
        value_name = "FEEDBACK|FIXED"
    )]
    detuning_mode: Option<String>,
    #[arg(
        long = "detuning_value",
        global = true,
        allow_hyphen_values = true,
        value_name = "RAD_S"
    )]
    detuning_value: Option<String>,
    #[arg(
        long = "temperature",
        global = true,
        allow_hyphen_values = true,
        value_name = "K"
    )]
    temperature: Option<String>,
    #[arg(
        long = "omega_min",
        global = true,
        allow_hyphen_values = true,
        value_name = "RAD_S"
    )]
    omega_min: Option<String>,
    #[arg(
        long = "omega_max",
        global = true,
        allow_hyphen_values = true,
        value_name = "RAD_S"
    )]
    omega_max: Option<String>,
    #[arg(
        long = "omega_points",
        global = true,
        allow_hyphen_values = true,
        value_name = "N"
    )]
    omega_points: Option<String>,
    #[arg(
        long = "lambda_window",
        global = true,
        allow_hyphen_values = true,
        value_name = "M"
    )]
    lambda_window: Option<String>,
    #[arg(long = "sweep_axis1", global = true)]
    sweep_axis1: Option<String>,
    #[arg(long = "sweep_axis1_min", global = true, allow_hyphen_values = true)]
    sweep_axis1_min: Option<String>,
    #[arg(long = "sweep_axis1_max", global = true, allow_hyphen_values = true)]
    sweep_axis1_max: Option<String>,
    #[arg(long = "sweep_axis1_points", global = true)]
    sweep_axis1_points: Option<String>,
    #[arg(long = "sweep_axis1_spacing", global = true)]
    sweep_axis1_spacing: Option<String>,
    #[arg(long = "sweep_axis2", global = true)]
    sweep_axis2: Option<String>,
    #[arg(long = "sweep_axis2_min", global = true, allow_hyphen_values = true)]
    sweep_axis2_min: Option<String>,
    #[arg(long = "sweep_axis2_max", global = true, allow_hyphen_values = true)]
    sweep_axis2_max: Option<String>,
    #[arg(long = "sweep_axis2_points", global = true)]
    sweep_axis2_points: Option<String>,
    #[arg(long = "sweep_axis2_spacing", global = true)]
    sweep_axis2_spacing: Option<String>,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Print every derived quantity (couplings, rates, resonance check).
    Derive,
    /// Classical working point; one CSV row per branch in fixed mode.
    Steady,
    /// Drift-matrix eigenvalues and the stability verdict as JSON.
    Stability,
    /// Entanglement spectrum E(ω) over the configured grid.
    Spectrum,
    /// Parameter sweep over 1 or 2 configured axes.
    Sweep,
    /// Balance the couplings by moving wavelength and cavity length.
    Tune,
    /// Run the internal oracle battery (hidden).
    #[command(hide = true)]
    Selfcheck,
}

impl CommonArgs {
    fn overrides(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = Vec::new();
        let mut push = |key: &str, val: &Option<String>| {
            if let Some(s) = val {
                v.push((key.to_string(), s.clone()));
            }
        };
        push("mass", &self.mass);
        push("mirror_radius", &self.mirror_radius);
        push("omega_z", &self.omega_z);
        push("omega_phi", &self.omega_phi);
        push("Q_z", &self.q_z);
        push("Q_phi", &self.q_phi);
        push("oam_charge", &self.oam_charge);
        push("cavity_length", &self.cavity_length);
        push("finesse", &self.finesse);
        push("wavelength", &self.wavelength);
        push("input_power", &self.input_power);
        push("detuning_mode", &self.detuning_mode);
        push("detuning_value", &self.detuning_value);
        push("temperature", &self.temperature);
        push("omega_min", &self.omega_min);
        push("omega_max", &self.omega_max);
        push("omega_points", &self.omega_points);
        push("lambda_window", &self.lambda_window);
        push("sweep_axis1", &self.sweep_axis1);
        push("sweep_axis1_min", &self.sweep_axis1_min);
        push("sweep_axis1_max", &self.sweep_axis1_max);
        push("sweep_axis1_points", &self.sweep_axis1_points);
        push("sweep_axis1_spacing", &self.sweep_axis1_spacing);
        push("sweep_axis2", &self.sweep_axis2);
        push("sweep_axis2_min", &self.sweep_axis2_min);
        push("sweep_axis2_max", &self.sweep_axis2_max);
        push("sweep_axis2_points", &self.sweep_axis2_points);
        push("sweep_axis2_spacing", &self.sweep_axis2_spacing);
        if let Some(p) = &self.output {
            v.push(("output".into(), p.display().to_string()));
        }
        if let Some(f) = &self.format {
            v.push(("format".into(), f.clone()));
        }
        if self.no_timestamp {
            v.push(("no_timestamp".into(), "true".into()));
        }
        if let Some(t) = self.threads {
            v.push(("threads".into(), t.to_string()));
        }
        v
    }
}

fn print_warnings(warnings: &[Warning]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

/// Resolves the working point respecting the detuning mode; bistable fixed
/// points are refused for spectral subcommands.
fn working_point(cfg: &RunConfig) -> Result<(rovib::DerivedParams, rovib::steady::SteadyState)> {
    let (d, warnings) = derive_params(&cfg.params)?;
    print_warnings(&warnings);
    let s = match cfg.params.detuning_mode {
        DetuningMode::Feedback => steady_state_feedback(&d, cfg.params.detuning_value),
        DetuningMode::Fixed => {
            let branches = steady_state_fixed_detuning(&d, cfg.params.detuning_value)?;
            if branches.len() != 1 {
                return Err(Error::NumericalFailure(
                    "fixed-detuning working point is bistable; use FEEDBACK mode or the `steady` \
                     subcommand to inspect branches"
                        .into(),
                ));
            }
            steady_state_from_branch(&d, cfg.params.detuning_value, &branches[0])
        }
    };
    Ok((d, s))
}

fn cmd_derive(cfg: &RunConfig) -> Result<()> {
    let (d, warnings) = derive_params(&cfg.params)?;
    print_warnings(&warnings);
    let mut sink = output::open_sink(cfg.output.as_deref())?;
    match cfg.format {
        OutputFormat::Json => output::write_json(&mut sink, cfg, "derive", &d)?,
        OutputFormat::Csv => {
            let columns = [
                "omega_c_rad_s",
                "mode_index",
                "wave_number_1_m",
                "moment_of_inertia_kg_m2",
                "g_z_1_s",
                "g_phi_1_s",
                "gamma_1_s",
                "gamma_z_1_s",
                "gamma_phi_1_s",
                "input_amplitude_sqrt_photons_s",
                "resonance_error",
            ];
            let row = vec![
                format_float(d.omega_c),
                d.mode_index.to_string(),
                format_float(d.wave_number),
                format_float(d.moment_of_inertia),
                format_float(d.g_z),
                format_float(d.g_phi),
                format_float(d.gamma),
                format_float(d.gamma_z),
                format_float(d.gamma_phi),
                format_float(d.input_amplitude),
                format_float(d.resonance_error),
            ];
            output::write_csv(
                &mut sink,
                &output::header_lines(cfg, "derive"),
                &columns,
                &[row],
            )?;
        }
    }
    Ok(())
}

fn cmd_steady(cfg: &RunConfig) -> Result<()> {
    let (d, warnings) = derive_params(&cfg.params)?;
    print_warnings(&warnings);
    let delta = cfg.params.detuning_value;
    let p_in = cfg.params.input_power;

    // one row per branch: delta_rad_s, P_in_W, photon_number, z_s, phi_s, stable
    let mut rows = Vec::new();
    match cfg.params.detuning_mode {
        DetuningMode::Feedback => {
            let s = steady_state_feedback(&d, delta);
            rows.push(vec![
                format_float(delta),
                format_float(p_in),
                format_float(s.photon_number),
                format_float(s.z_s),
                format_float(s.phi_s),
                "true".to_string(),
            ]);
        }
        DetuningMode::Fixed => {
            for b in steady_state_fixed_detuning(&d, delta)? {
                let s = steady_state_from_branch(&d, delta, &b);
                rows.push(vec![
                    format_float(delta),
                    format_float(p_in),
                    format_float(b.photon_number),
                    format_float(s.z_s),
                    format_float(s.phi_s),
                    b.stable.to_string(),
                ]);
            }
        }
    }
    let columns = [
        "delta_rad_s",
        "P_in_W",
        "photon_number",
        "z_s",
        "phi_s",
        "stable",
    ];
    let mut sink = output::open_sink(cfg.output.as_deref())?;
    match cfg.format {
        OutputFormat::Csv => output::write_csv(
            &mut sink,
            &output::header_lines(cfg, "steady"),
            &columns,
            &rows,
        )?,
        OutputFormat::Json => {
            let data: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "delta_rad_s": r[0], "P_in_W": r[1], "photon_number": r[2],
                        "z_s": r[3], "phi_s": r[4], "stable": r[5],
                    })
                })
                .collect();
            output::write_json(&mut sink, cfg, "steady", &data)?;
        }
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct StabilityReport {
    eigenvalues_re_1_s: Vec<f64>,
    eigenvalues_im_1_s: Vec<f64>,
    stable: bool,
}

fn cmd_stability(cfg: &RunConfig) -> Result<()> {
    let (d, s) = working_point(cfg)?;
    let m = build_linear_model(&d, &s);
    let report = StabilityReport {
        eigenvalues_re_1_s: m.eigenvalues.iter().map(|ev| ev.re).collect(),
        eigenvalues_im_1_s: m.eigenvalues.iter().map(|ev| ev.im).collect(),
        stable: m.stable,
    };
    let mut sink = output::open_sink(cfg.output.as_deref())?;
    output::write_json(&mut sink, cfg, "stability", &report)?;
    Ok(())
}

#[derive(serde::Serialize)]
struct SpectrumSummary {
    omega_peak_rad_s: f64,
    e_min: f64,
    entangled_band_rad_s: Option<(f64, f64)>,
}

fn cmd_spectrum(cfg: &RunConfig) -> Result<()> {
    let (d, s) = working_point(cfg)?;
    let m = build_linear_model(&d, &s);
    if !m.stable {
        // hard gate: refuse before any output row is produced
        return Err(Error::UnstableSystem);
    }
    let grid = cfg.omega_grid.values();
    let points = evaluate_curve(&m, &d, &grid, cfg.params.temperature)?;
    let summary = summarize_curve(&points).map(|c| SpectrumSummary {
        omega_peak_rad_s: c.omega_peak,
        e_min: c.e_min,
        entangled_band_rad_s: c.entangled_band,
    });

    let mut sink = output::open_sink(cfg.output.as_deref())?;
    match cfg.format {
        OutputFormat::Csv => {
            let columns = ["omega_rad_s", "E", "V_Ru", "V_Rv", "D"];
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    vec![
                        format_float(p.omega),
                        format_float(p.entanglement),
                        format_float(p.v_ru),
                        format_float(p.v_rv),
                        format_float(p.commutator_density),
                    ]
                })
                .collect();
            output::write_csv(
                &mut sink,
                &output::header_lines(cfg, "spectrum"),
                &columns,
                &rows,
            )?;
            drop(sink);
            // the JSON summary goes to stdout when the table went to a file,
            // to stderr otherwise (keeps the CSV stream clean)
            let summary_text = serde_json::to_string_pretty(&summary)
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            if cfg.output.is_some() {
                println!("{summary_text}");
            } else {
                eprintln!("{summary_text}");
            }
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({ "summary": summary, "points": points });
            output::write_json(&mut sink, cfg, "spectrum", &doc)?;
        }
    }
    Ok(())
}

fn cmd_sweep(cfg: &RunConfig) -> Result<()> {
    let spec = cfg.sweep_spec()?;
    let rows = rovib::sweeps::run_sweep(&spec)?;
    let mut sink = output::open_sink(cfg.output.as_deref())?;
    match cfg.format {
        OutputFormat::Csv => {
            let columns = [
                "axis1",
                "axis2",
                "E_extremum",
                "omega_peak_rad_s",
                "stable_flag",
            ];
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        format_float(r.axis1),
                        r.axis2.map(format_float).unwrap_or_default(),
                        r.e_extremum.map(format_float).unwrap_or_default(),
                        r.omega_peak.map(format_float).unwrap_or_default(),
                        r.stable.to_string(),
                    ]
                })
                .collect();
            output::write_csv(
                &mut sink,
                &output::header_lines(cfg, "sweep"),
                &columns,
                &table,
            )?;
        }
        OutputFormat::Json => output::write_json(&mut sink, cfg, "sweep", &rows)?,
    }
    Ok(())
}

fn cmd_tune(cfg: &RunConfig) -> Result<()> {
    match tune_couplings(&cfg.params, cfg.lambda_window) {
        Ok(t) => {
            let mut sink = output::open_sink(cfg.output.as_deref())?;
            output::write_json(&mut sink, cfg, "tune", &t)?;
            Ok(())
        }
        Err(Error::TargetUnreachable(best)) => {
            // report the best candidate anyway, then fail
            let mut sink = output::open_sink(cfg.output.as_deref())?;
            output::write_json(&mut sink, cfg, "tune", &*best)?;
            Err(Error::TargetUnreachable(best))
        }
        Err(e) => Err(e),
    }
}

fn cmd_selfcheck(cfg: &RunConfig) -> Result<()> {
    let reports = rovib::oracles::selfcheck(&cfg.params)?;
    let mut failures = 0usize;
    for r in &reports {
        println!("{r}");
        if !r.passed {
            failures += 1;
        }
    }
    if failures > 0 {
        return Err(Error::NumericalFailure(format!(
            "{failures} of {} oracle checks failed",
            reports.len()
        )));
    }
    println!("all {} oracle checks passed", reports.len());
    Ok(())
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    let (cfg, warnings) = parse_config(cli.common.config.as_deref(), &cli.common.overrides())?;
    print_warnings(&warnings);

    if let Some(n) = cfg.threads {
        // ignore the error when a pool already exists (e.g. repeated calls in tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }

    match cli.command {
        Command::Derive => cmd_derive(&cfg),
        Command::Steady => cmd_steady(&cfg),
        Command::Stability => cmd_stability(&cfg),
        Command::Spectrum => cmd_spectrum(&cfg),
        Command::Sweep => cmd_sweep(&cfg),
        Command::Tune => cmd_tune(&cfg),
        Command::Selfcheck => cmd_selfcheck(&cfg),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
