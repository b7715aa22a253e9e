use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use xyfid_core::contour::{crossing_locus_grid, CrossingLocus};
use xyfid_core::grid::{export_grid, fmt17, run_sweep, write_grid, Grid2D, OutputFormat, PointParams};
use xyfid_core::spectrum::{analytic_eigensystem, classify_ground_state, energy_gap, GroundStateTag};
use xyfid_core::thermal::{thermal_fidelity, zero_temperature_fidelity};
use xyfid_core::verify::{run_verification, DEFAULT_SAMPLES, DEFAULT_SEED};
use xyfid_core::yangian::{transition_fidelity, Transition, TransitionFidelity};
use xyfid_core::{Error, Result};

mod config;

use config::{resolve_format, resolve_point, resolve_sweep, ConfigFile, Family};

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "xyfid", version, about = "Two-qubit XY model: spectra, level crossings, thermal and Yangian fidelities")]
struct Cli {
    /// JSON config file; command-line flags take precedence over its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues, eigenvectors, gap and ground state at one point.
    Spectrum(CommonArgs),
    /// ΔE = E1 − E4 over a plane (default: gamma × b_field at lambda_field = 1).
    GapGrid(CommonArgs),
    /// Zero contour of the gap over a plane, as polylines.
    Crossing(CommonArgs),
    /// Thermal and post-transition fidelities at one point.
    Fidelity(CommonArgs),
    /// Thermal fidelity over a plane (default: lambda_field × b_field).
    FidelityGrid(CommonArgs),
    /// Fidelity after J+ or J− over a plane (default: lambda_field × b_field).
    YangianGrid(CommonArgs),
    /// Cross-check the closed forms against the dense-matrix oracle.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_field: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b_field: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub temperature: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_y: Option<f64>,
    /// gap, fidelity, zero_t_fidelity, fidelity_jplus or fidelity_jminus.
    #[arg(long)]
    pub quantity: Option<String>,
    /// First sweep axis as name:min:max:count.
    #[arg(long, value_name = "SPEC")]
    pub axis1: Option<String>,
    /// Second sweep axis as name:min:max:count.
    #[arg(long, value_name = "SPEC")]
    pub axis2: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// csv, json or svg.
    #[arg(long)]
    pub format: Option<String>,
    /// Worker threads for grid evaluation; 1 runs serially.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Free-form timestamp recorded in grid metadata.
    #[arg(long)]
    pub timestamp: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    verify_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// text (default) or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("xyfid: {e}");
            ExitCode::from(match e {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Spectrum(args) => spectrum(&file, &args).map(|_| 0),
        Command::Fidelity(args) => fidelity(&file, &args).map(|_| 0),
        Command::GapGrid(args) => grid(Family::Gap, &file, &args).map(|_| 0),
        Command::FidelityGrid(args) => grid(Family::Fidelity, &file, &args).map(|_| 0),
        Command::YangianGrid(args) => grid(Family::Yangian, &file, &args).map(|_| 0),
        Command::Crossing(args) => crossing(&file, &args).map(|_| 0),
        Command::Verify(args) => verify(&file, &args),
    }
}

fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn text_or_json(file: &ConfigFile, args: &CommonArgs) -> Result<bool> {
    match resolve_format(file, args)? {
        None | Some(OutputFormat::Csv) => Ok(false),
        Some(OutputFormat::Json) => Ok(true),
        Some(OutputFormat::Svg) => Err(Error::Usage("format: svg is only available for grids".into())),
    }
}

fn out_path<'a>(file: &'a ConfigFile, args: &'a CommonArgs) -> Option<&'a Path> {
    args.out.as_deref().or(file.out.as_deref())
}

fn tag_name(tag: GroundStateTag) -> &'static str {
    match tag {
        GroundStateTag::AnisotropyGround => "psi1 (anisotropy subspace)",
        GroundStateTag::IsotropyGround => "psi4 (isotropy subspace)",
        GroundStateTag::Degenerate => "psi1/psi4 degenerate",
    }
}

fn spectrum(file: &ConfigFile, args: &CommonArgs) -> Result<()> {
    let point = resolve_point(file, args);
    let p = point.params();
    p.validate()?;
    let es = analytic_eigensystem(&p);
    let class = classify_ground_state(&p);
    let body = if text_or_json(file, args)? {
        let mut s = serde_json::to_string_pretty(&json!({
            "params": p,
            "eigensystem": es,
            "gap": class.gap,
            "ground_state": class.tag,
        }))?;
        s.push('\n');
        s
    } else {
        let mut s = format!(
            "gamma = {}  lambda_field = {}  b_field = {}\nxi = {}  eta = {}\n",
            p.gamma, p.lambda_field, p.b_field, es.xi, es.eta
        );
        for k in 0..4 {
            s.push_str(&format!("E{} = {:>24}   psi{} = {}\n", k + 1, fmt17(es.energies[k]), k + 1, es.states[k]));
        }
        s.push_str(&format!("gap E1 - E4 = {}\nground state: {}\n", fmt17(class.gap), tag_name(class.tag)));
        s
    };
    emit(out_path(file, args), &body)
}

fn transition_value(point: &PointParams, which: Transition) -> Result<Option<f64>> {
    Ok(match transition_fidelity(&point.params(), &point.yangian(), which)? {
        TransitionFidelity::Value(f) => Some(f),
        TransitionFidelity::Annihilated { .. } => None,
    })
}

fn fidelity(file: &ConfigFile, args: &CommonArgs) -> Result<()> {
    let point = resolve_point(file, args);
    let p = point.params();
    p.validate()?;
    point.yangian().validate()?;
    let (f, fp, fm) = if p.temperature > 0.0 {
        (
            thermal_fidelity(&p)?,
            transition_value(&point, Transition::JPlus)?,
            transition_value(&point, Transition::JMinus)?,
        )
    } else {
        (zero_temperature_fidelity(&p), None, None)
    };
    let show = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), fmt17);
    let body = if text_or_json(file, args)? {
        let mut s = serde_json::to_string_pretty(&json!({
            "params": p,
            "yangian": point.yangian(),
            "fidelity": f,
            "fidelity_jplus": fp,
            "fidelity_jminus": fm,
        }))?;
        s.push('\n');
        s
    } else {
        format!(
            "gamma = {}  lambda_field = {}  b_field = {}  temperature = {}\nF   = {}\nF'  = {}\nF'' = {}\n",
            p.gamma,
            p.lambda_field,
            p.b_field,
            p.temperature,
            fmt17(f),
            if p.temperature > 0.0 { show(fp) } else { "NA (T = 0)".into() },
            if p.temperature > 0.0 { show(fm) } else { "NA (T = 0)".into() },
        )
    };
    emit(out_path(file, args), &body)
}

fn write_or_print(g: &Grid2D, format: OutputFormat, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_grid(g, format, path),
        None => {
            let mut stdout = io::stdout().lock();
            export_grid(g, format, &mut stdout)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn grid(family: Family, file: &ConfigFile, args: &CommonArgs) -> Result<()> {
    let cfg = resolve_sweep(family, file, args)?;
    let g = run_sweep(&cfg)?;
    write_or_print(&g, cfg.format, cfg.out.as_deref())
}

fn locus_csv(locus: &CrossingLocus) -> String {
    let mut s = format!("polyline,closed,{},{}\n", locus.x_axis, locus.y_axis);
    for (k, line) in locus.polylines.iter().enumerate() {
        for [x, y] in &line.points {
            s.push_str(&format!("{k},{},{},{}\n", line.closed, fmt17(*x), fmt17(*y)));
        }
    }
    s
}

fn crossing(file: &ConfigFile, args: &CommonArgs) -> Result<()> {
    let cfg = resolve_sweep(Family::Gap, file, args)?;
    let g = run_sweep(&cfg)?;
    if cfg.format == OutputFormat::Svg {
        return write_or_print(&g, OutputFormat::Svg, cfg.out.as_deref());
    }
    let locus = crossing_locus_grid(&g)?;
    let body = match cfg.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&json!({
                "fixed": g.fixed,
                "locus": locus,
            }))?;
            s.push('\n');
            s
        }
        _ => locus_csv(&locus),
    };
    // every exported point must sit on the locus
    for [x, y] in locus.points() {
        let gap = energy_gap(&g.point_at(x, y)?.params());
        if gap.abs() > xyfid_core::contour::LOCUS_TOL {
            return Err(Error::Consistency(format!("locus point ({x}, {y}) has gap {gap:e}")));
        }
    }
    emit(cfg.out.as_deref(), &body)
}

fn verify(file: &ConfigFile, args: &VerifyArgs) -> Result<u8> {
    let samples = args.verify_samples.or(file.verify_samples).unwrap_or(DEFAULT_SAMPLES);
    if samples == 0 {
        return Err(Error::Usage("verify-samples must be >= 1".into()));
    }
    let seed = args.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    let json_out = match args.format.as_deref() {
        None | Some("text") => false,
        Some("json") => true,
        Some(other) => return Err(Error::Usage(format!("format: unknown verify format '{other}' (expected text or json)"))),
    };
    let report = run_verification(seed, samples)?;
    let body = if json_out {
        let mut s = serde_json::to_string_pretty(&report)?;
        s.push('\n');
        s
    } else {
        format!("seed = {seed}\n{report}\n")
    };
    emit(args.out.as_deref().or(file.out.as_deref()), &body)?;
    Ok(report.exit_code() as u8)
}
