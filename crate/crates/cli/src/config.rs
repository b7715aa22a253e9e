//! Effective configuration: subcommand defaults, then the JSON config file,
//! then command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use xyfid_core::grid::{AxisName, AxisSpec, OutputFormat, PointParams, Quantity, SweepConfig};
use xyfid_core::{Error, Result};

use crate::CommonArgs;

/// Default sweep resolution per axis.
pub const DEFAULT_COUNT: usize = 301;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub quantity: Option<Quantity>,
    pub axis1: Option<AxisEntry>,
    pub axis2: Option<AxisEntry>,
    #[serde(default)]
    pub params: ParamsFile,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub threads: Option<usize>,
    pub timestamp: Option<String>,
    pub verify_samples: Option<usize>,
    pub seed: Option<u64>,
}

/// An axis either as an object or as `"name:min:max:count"`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum AxisEntry {
    Spec(AxisSpec),
    Text(String),
}

impl AxisEntry {
    fn resolve(&self) -> Result<AxisSpec> {
        match self {
            AxisEntry::Spec(a) => Ok(*a),
            AxisEntry::Text(s) => s.parse(),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub gamma: Option<f64>,
    pub lambda_field: Option<f64>,
    pub b_field: Option<f64>,
    pub temperature: Option<f64>,
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub lambda_y: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
        serde_json::from_str(&text).map_err(|e| Error::Usage(format!("config file {}: {e}", path.display())))
    }
}

/// Which sweep family a subcommand belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Gap,
    Fidelity,
    Yangian,
}

impl Family {
    fn allowed(self) -> &'static [Quantity] {
        match self {
            Family::Gap => &[Quantity::Gap],
            Family::Fidelity => &[Quantity::Fidelity, Quantity::ZeroTFidelity],
            Family::Yangian => &[Quantity::FidelityJplus, Quantity::FidelityJminus],
        }
    }

    fn default_axes(self) -> (AxisSpec, AxisSpec) {
        match self {
            Family::Gap => (
                AxisSpec::new(AxisName::Gamma, -1.5, 1.5, DEFAULT_COUNT),
                AxisSpec::new(AxisName::BField, -1.5, 1.5, DEFAULT_COUNT),
            ),
            Family::Fidelity | Family::Yangian => (
                AxisSpec::new(AxisName::LambdaField, -2.0, 2.0, DEFAULT_COUNT),
                AxisSpec::new(AxisName::BField, -2.0, 2.0, DEFAULT_COUNT),
            ),
        }
    }
}

fn apply_params(p: &mut PointParams, file: &ParamsFile, args: &CommonArgs) {
    let pairs: [(&mut f64, Option<f64>, Option<f64>); 7] = [
        (&mut p.gamma, file.gamma, args.gamma),
        (&mut p.lambda_field, file.lambda_field, args.lambda_field),
        (&mut p.b_field, file.b_field, args.b_field),
        (&mut p.temperature, file.temperature, args.temperature),
        (&mut p.mu, file.mu, args.mu),
        (&mut p.nu, file.nu, args.nu),
        (&mut p.lambda_y, file.lambda_y, args.lambda_y),
    ];
    for (slot, from_file, from_flag) in pairs {
        if let Some(v) = from_flag.or(from_file) {
            *slot = v;
        }
    }
}

/// Point parameters for the single-point subcommands.
pub fn resolve_point(file: &ConfigFile, args: &CommonArgs) -> PointParams {
    let mut p = PointParams::default();
    apply_params(&mut p, &file.params, args);
    p
}

pub fn resolve_format(file: &ConfigFile, args: &CommonArgs) -> Result<Option<OutputFormat>> {
    match &args.format {
        Some(s) => s.parse().map(Some),
        None => Ok(file.format),
    }
}

pub fn resolve_sweep(family: Family, file: &ConfigFile, args: &CommonArgs) -> Result<SweepConfig> {
    let quantity = match &args.quantity {
        Some(q) => q.parse()?,
        None => file.quantity.unwrap_or(family.allowed()[0]),
    };
    if !family.allowed().contains(&quantity) {
        let names: Vec<&str> = family.allowed().iter().map(|q| q.as_str()).collect();
        return Err(Error::Usage(format!(
            "quantity: {quantity} is not available here (expected {})",
            names.join(" or ")
        )));
    }
    let (mut axis1, mut axis2) = family.default_axes();
    if let Some(a) = &file.axis1 {
        axis1 = a.resolve()?;
    }
    if let Some(a) = &file.axis2 {
        axis2 = a.resolve()?;
    }
    if let Some(s) = &args.axis1 {
        axis1 = s.parse()?;
    }
    if let Some(s) = &args.axis2 {
        axis2 = s.parse()?;
    }
    let mut params = PointParams::default();
    apply_params(&mut params, &file.params, args);

    let cfg = SweepConfig {
        quantity,
        axis1,
        axis2,
        params,
        out: args.out.clone().or_else(|| file.out.clone()),
        format: resolve_format(file, args)?.unwrap_or_default(),
        threads: args.threads.or(file.threads),
        timestamp: args.timestamp.clone().or_else(|| file.timestamp.clone()),
    };
    cfg.validate()?;
    Ok(cfg)
}
