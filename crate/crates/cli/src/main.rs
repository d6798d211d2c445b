use std::f64::consts::TAU;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use pulsestream::format::sig;
use pulsestream::{
    census, classify_coherent, classify_fock, intensity_series, pulse_metrics, scan_phase,
    single_photon_state, unlocked_intensity, CavityDesign, CoherentSpec, Family, Label, LaserField,
    ModePhases, DEFAULT_TOL,
};
use serde_json::{json, Value};

mod output;

use output::{emit, envelope, object, to_json, to_key_value_csv, Format};

/// Tolerance for `classify --phase` when `--tol` is omitted. A decimal angle
/// typed by hand carries ~1e-8 rounding, far above the 1e-10 default used for
/// exact `--phase-frac` input.
const DECIMAL_PHASE_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "pulsestream",
    version,
    about = "Bright and dark multimode photon states and mode-locked pulse trains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the mode-locked intensity A(t')² and report pulse metrics
    PulseTrain(PulseTrainArgs),
    /// Classify a locked single-photon or coherent state as bright, dark or intermediate
    Classify(ClassifyArgs),
    /// Count dark states for π-multiple phases and for locked linear phases
    CountDark(CountDarkArgs),
    /// Estimate the mode count of a cavity and compare ratios
    EstimateCavity(CavityArgs),
    /// Classify the locked family over a uniform grid of Φ in [0, 2π)
    ScanPhase(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    SinglePhoton,
    Coherent,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::SinglePhoton => Family::SinglePhoton,
            FamilyArg::Coherent => Family::Coherent,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; relative paths land in $PULSESTREAM_OUTPUT_DIR when set
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PulseTrainArgs {
    /// Modes on each side of the carrier; M_tot = 2·n_side + 1
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n_side: u32,
    /// Mode spacing Δω, rad/s
    #[arg(long, default_value_t = 1.0)]
    delta_omega: f64,
    /// Inter-mode phase offset φ, rad
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Per-mode field amplitude
    #[arg(long, default_value_t = 1.0)]
    e0: f64,
    /// Samples per period
    #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    periods: u64,
    /// Draw independent random mode phases from this seed instead of locking them
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Number of modes
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    m: u64,
    #[arg(long, value_enum, default_value_t = FamilyArg::SinglePhoton)]
    family: FamilyArg,
    /// Locked phase step Φ, rad
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "phase_frac",
        required_unless_present = "phase_frac"
    )]
    phase: Option<f64>,
    /// Φ = 2πK/D entered exactly as K/D
    #[arg(long, value_parser = parse_fraction)]
    phase_frac: Option<(i64, u64)>,
    /// Band half-width relative to beta_max [default: 1e-10 with --phase-frac, 1e-6 with --phase]
    #[arg(long)]
    tol: Option<f64>,
    /// Per-mode coherent amplitude (coherent family)
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct CountDarkArgs {
    /// Number of modes
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    m: u64,
    /// Also enumerate balanced sign vectors (bounded to 24 modes)
    #[arg(long)]
    enumerate: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct CavityArgs {
    /// Centre wavelength λ₀, nm
    #[arg(long)]
    lambda0_nm: f64,
    /// Gain bandwidth Δλ_g, nm
    #[arg(long)]
    dlambda_nm: f64,
    /// Cavity length L, mm
    #[arg(long)]
    l_mm: f64,
    /// Refractive index
    #[arg(long, default_value_t = 1.0)]
    n: f64,
    /// Measured pulse duration, ns
    #[arg(long)]
    pulse_ns: f64,
    /// Repetition period, ms
    #[arg(long)]
    rep_ms: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Number of modes
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    m: u64,
    /// Grid points per period [default: 4·M]
    #[arg(long)]
    grid: Option<u64>,
    #[arg(long, value_enum, default_value_t = FamilyArg::SinglePhoton)]
    family: FamilyArg,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_fraction(s: &str) -> Result<(i64, u64), String> {
    let (k, d) = s
        .split_once('/')
        .ok_or_else(|| format!("expected K/D, got {s:?}"))?;
    let k: i64 = k.trim().parse().map_err(|e| format!("numerator: {e}"))?;
    let d: u64 = d.trim().parse().map_err(|e| format!("denominator: {e}"))?;
    if d == 0 {
        return Err("denominator must be positive".into());
    }
    Ok((k, d))
}

#[derive(Debug)]
enum Failure {
    Core(pulsestream::Error),
    Io(std::io::Error),
}

impl From<pulsestream::Error> for Failure {
    fn from(e: pulsestream::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        use pulsestream::Error::*;
        match self {
            Failure::Core(Resource { .. } | Cutoff { .. }) => 3,
            Failure::Core(_) => 2,
            Failure::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::PulseTrain(a) => pulse_train(a),
        Command::Classify(a) => classify(a),
        Command::CountDark(a) => count_dark(a),
        Command::EstimateCavity(a) => estimate_cavity(a),
        Command::ScanPhase(a) => scan(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn pulse_train(a: PulseTrainArgs) -> Result<(), Failure> {
    const COMMAND: &str = "pulse-train";
    let field = LaserField::new(a.n_side, a.e0, a.delta_omega, a.phi)?;
    let (samples, periods) = (a.samples as usize, a.periods as usize);
    let series = match a.seed {
        Some(seed) => unlocked_intensity(&field, seed, samples, periods)?,
        None => intensity_series(&field, samples, periods)?,
    };
    let (metrics, metrics_note) = match pulse_metrics(&series) {
        Ok(m) => (Some(m), None),
        Err(pulsestream::Error::Resolution(msg)) => (None, Some(msg)),
        Err(e) => return Err(e.into()),
    };
    let peak_theory = field.peak_intensity();
    let params = object([
        ("n_side", json!(a.n_side)),
        ("m_tot", json!(field.m_tot())),
        ("delta_omega", json!(a.delta_omega)),
        ("phi", json!(a.phi)),
        ("e0", json!(a.e0)),
        ("samples_per_period", json!(a.samples)),
        ("periods", json!(a.periods)),
        ("seed", json!(a.seed)),
    ]);
    let metrics_json = object([
        ("peak_theory", json!(peak_theory)),
        ("mean_theory", json!(field.mean_intensity())),
        ("peak", json!(metrics.map(|m| m.peak))),
        ("fwhm", json!(metrics.map(|m| m.fwhm))),
        ("period", json!(series.period())),
        ("duty_ratio", json!(metrics.map(|m| m.duty_ratio))),
        ("note", json!(metrics_note)),
    ]);
    let body = match a.format {
        Format::Json => {
            let results = object([
                ("resolution_warning", json!(series.resolution_warning)),
                ("metrics", metrics_json),
                (
                    "t_prime",
                    json!(series.points.iter().map(|p| p.0).collect::<Vec<_>>()),
                ),
                (
                    "intensity",
                    json!(series.points.iter().map(|p| p.1).collect::<Vec<_>>()),
                ),
            ]);
            to_json(&envelope(COMMAND, params, results))
        }
        Format::Csv => {
            let mut csv = series.to_csv();
            if let Some(w) = &series.resolution_warning {
                csv.push_str(&format!("# warning: {w}\n"));
            }
            csv.push_str(&format!("# peak_theory={}\n", sig(peak_theory)));
            csv.push_str(&format!("# mean_theory={}\n", sig(field.mean_intensity())));
            match metrics {
                Some(m) => csv.push_str(&format!(
                    "# peak={} fwhm={} period={} duty_ratio={}\n",
                    sig(m.peak),
                    sig(m.fwhm),
                    sig(m.period),
                    sig(m.duty_ratio)
                )),
                None => csv.push_str(&format!(
                    "# metrics unavailable: {}\n",
                    metrics_note.unwrap_or_default()
                )),
            }
            csv
        }
    };
    emit(COMMAND, a.format, a.out.output, &body)?;
    Ok(())
}

fn classify(a: ClassifyArgs) -> Result<(), Failure> {
    const COMMAND: &str = "classify";
    let modes = a.m as usize;
    let (phases, phi, tol) = match (a.phase_frac, a.phase) {
        (Some((k, d)), _) => (
            ModePhases::locked_fraction(modes, k, d)?,
            TAU * k as f64 / d as f64,
            a.tol.unwrap_or(DEFAULT_TOL),
        ),
        (None, Some(phi)) => (
            ModePhases::locked(modes, phi)?,
            phi,
            a.tol.unwrap_or(DECIMAL_PHASE_TOL),
        ),
        (None, None) => unreachable!("clap requires one phase flag"),
    };
    let detection = ModePhases::zeros(modes);
    let c = match a.family {
        FamilyArg::SinglePhoton => classify_fock(&single_photon_state(&phases)?, &detection, tol)?,
        FamilyArg::Coherent => {
            let spec = CoherentSpec::new(Complex64::new(a.alpha, 0.0), phases);
            classify_coherent(&spec, &detection, tol)?
        }
    };
    let params = object([
        ("m", json!(a.m)),
        ("family", json!(Family::from(a.family))),
        ("phase", json!(phi)),
        ("phase_frac", json!(a.phase_frac.map(|(k, d)| format!("{k}/{d}")))),
        ("tol", json!(tol)),
        (
            "alpha",
            json!(matches!(a.family, FamilyArg::Coherent).then_some(a.alpha)),
        ),
    ]);
    let results = object([
        ("label", json!(c.label)),
        ("beta", json!(c.beta)),
        ("beta_max", json!(c.beta_max)),
        ("beta_ratio", json!(c.beta / c.beta_max)),
    ]);
    let doc = envelope(COMMAND, params, results);
    write_report(COMMAND, a.format, a.out.output, &doc)
}

fn count_dark(a: CountDarkArgs) -> Result<(), Failure> {
    const COMMAND: &str = "count-dark";
    let c = census(a.m as usize, a.enumerate)?;
    let params = object([("m", json!(a.m)), ("enumerate", json!(a.enumerate))]);
    let analytic = match &c.analytic_count {
        Some(n) => json!(n.to_string()),
        None => json!("unsupported (odd M)"),
    };
    let results = object([
        ("analytic_count", analytic),
        ("enumerated_count", json!(c.enumerated_count)),
        ("locked_dark_count", json!(c.locked_dark_count)),
        ("bright_count", json!(c.bright_count)),
        ("bright_to_dark_ratio", json!(c.ratio)),
    ]);
    let doc = envelope(COMMAND, params, results);
    write_report(COMMAND, a.format, a.out.output, &doc)
}

fn estimate_cavity(a: CavityArgs) -> Result<(), Failure> {
    const COMMAND: &str = "estimate-cavity";
    let design = CavityDesign::from_lab_units(a.lambda0_nm, a.dlambda_nm, a.l_mm, a.n, a.pulse_ns, a.rep_ms);
    let report = design.ratio_report()?;
    let params = object([
        ("lambda0_nm", json!(a.lambda0_nm)),
        ("dlambda_nm", json!(a.dlambda_nm)),
        ("l_mm", json!(a.l_mm)),
        ("n", json!(a.n)),
        ("pulse_ns", json!(a.pulse_ns)),
        ("rep_ms", json!(a.rep_ms)),
    ]);
    let mut results = serde_json::to_value(report).map_err(std::io::Error::other)?;
    let quoted_gap = report.mode_count as f64 / report.quoted_m;
    results["M_vs_quoted"] = json!(quoted_gap);
    results["note"] = json!(
        "delta_omega and delta_omega_g in rad/s; M = floor(delta_omega_g/delta_omega); \
         quoted figures are reported as given and need not follow from these inputs"
    );
    let doc = envelope(COMMAND, params, results);
    write_report(COMMAND, a.format, a.out.output, &doc)
}

fn scan(a: ScanArgs) -> Result<(), Failure> {
    const COMMAND: &str = "scan-phase";
    let grid = a.grid.unwrap_or(4 * a.m);
    let points = scan_phase(a.m as usize, a.family.into(), grid as usize, a.tol)?;
    let count = |l: Label| points.iter().filter(|p| p.classification.label == l).count();
    let params = object([
        ("m", json!(a.m)),
        ("grid", json!(grid)),
        ("family", json!(Family::from(a.family))),
        ("tol", json!(a.tol)),
    ]);
    let body = match a.format {
        Format::Json => {
            let dark_phases: Vec<f64> = points
                .iter()
                .filter(|p| p.classification.label == Label::Dark)
                .map(|p| p.phi)
                .collect();
            let rows: Vec<Value> = points
                .iter()
                .map(|p| json!({ "phi": p.phi, "beta": p.classification.beta, "label": p.classification.label }))
                .collect();
            let results = object([
                ("dark_count", json!(count(Label::Dark))),
                ("bright_count", json!(count(Label::Bright))),
                ("intermediate_count", json!(count(Label::Intermediate))),
                (
                    "beta_max",
                    json!(points.first().map(|p| p.classification.beta_max)),
                ),
                ("dark_phases", json!(dark_phases)),
                ("points", json!(rows)),
            ]);
            to_json(&envelope(COMMAND, params, results))
        }
        Format::Csv => {
            let mut csv = format!(
                "# m={} grid={} family={} tol={}\nphi,beta,beta_max,label\n",
                a.m,
                grid,
                json!(Family::from(a.family)).as_str().unwrap_or_default(),
                sig(a.tol)
            );
            for p in &points {
                let c = p.classification;
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    sig(p.phi),
                    sig(c.beta),
                    sig(c.beta_max),
                    c.label
                ));
            }
            csv.push_str(&format!(
                "# dark={} bright={} intermediate={}\n",
                count(Label::Dark),
                count(Label::Bright),
                count(Label::Intermediate)
            ));
            csv
        }
    };
    emit(COMMAND, a.format, a.out.output, &body)?;
    Ok(())
}

fn write_report(command: &str, format: Format, output: Option<PathBuf>, doc: &Value) -> Result<(), Failure> {
    let body = match format {
        Format::Json => to_json(doc),
        Format::Csv => to_key_value_csv(doc),
    };
    emit(command, format, output, &body)?;
    Ok(())
}
