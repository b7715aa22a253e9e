//! Two-dimensional parameter sweeps and their CSV/JSON serialization.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Params;
use crate::spectrum::energy_gap;
use crate::thermal::{thermal_fidelity, zero_temperature_fidelity};
use crate::yangian::{transition_fidelity, Transition, TransitionFidelity, YangianParams};

pub const TOOL_NAME: &str = "xyfid";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    Gamma,
    LambdaField,
    BField,
    Temperature,
}

impl AxisName {
    pub const ALL: [AxisName; 4] =
        [AxisName::Gamma, AxisName::LambdaField, AxisName::BField, AxisName::Temperature];

    pub fn as_str(&self) -> &'static str {
        match self {
            AxisName::Gamma => "gamma",
            AxisName::LambdaField => "lambda_field",
            AxisName::BField => "b_field",
            AxisName::Temperature => "temperature",
        }
    }
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxisName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        // accept the CLI spelling with dashes as well
        let norm = s.trim().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == norm)
            .ok_or_else(|| Error::Usage(format!("unknown axis name '{s}' (expected gamma, lambda_field, b_field or temperature)")))
    }
}

/// One sweep axis: `count` equally spaced nodes from `min` to `max` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(name: AxisName, min: f64, max: f64, count: usize) -> Self {
        Self { name, min, max, count }
    }

    pub fn validate(&self, field: &str) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Usage(format!("{field}: count must be >= 2, got {}", self.count)));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Usage(format!("{field}: range must be finite")));
        }
        if self.min >= self.max {
            return Err(Error::Usage(format!(
                "{field}: range must satisfy min < max, got {}..{}",
                self.min, self.max
            )));
        }
        Ok(())
    }

    /// Node `k`; endpoints are exact.
    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * (k as f64) / ((self.count - 1) as f64)
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.value(k)).collect()
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / ((self.count - 1) as f64)
    }
}

impl FromStr for AxisSpec {
    type Err = Error;

    /// `name:min:max:count`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Usage(format!("axis '{s}' must have the form name:min:max:count")));
        }
        let num = |t: &str, what: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("axis '{s}': cannot parse {what} '{t}'")))
        };
        let count = parts[3]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Usage(format!("axis '{s}': cannot parse count '{}'", parts[3])))?;
        Ok(Self {
            name: parts[0].parse()?,
            min: num(parts[1], "min")?,
            max: num(parts[2], "max")?,
            count,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// ΔE = E₁ − E₄.
    Gap,
    /// ⟨ψ₁|ρ(T)|ψ₁⟩.
    Fidelity,
    /// Fidelity of ρ(T) with the normalized J₊ψ₁.
    FidelityJplus,
    /// Fidelity of ρ(T) with the normalized J₋ψ₁.
    FidelityJminus,
    /// T → 0 limit of the ψ₁ fidelity: 1, 0 or ½.
    ZeroTFidelity,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::Gap,
        Quantity::Fidelity,
        Quantity::FidelityJplus,
        Quantity::FidelityJminus,
        Quantity::ZeroTFidelity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::Gap => "gap",
            Quantity::Fidelity => "fidelity",
            Quantity::FidelityJplus => "fidelity_jplus",
            Quantity::FidelityJminus => "fidelity_jminus",
            Quantity::ZeroTFidelity => "zero_t_fidelity",
        }
    }

    /// Whether evaluation needs a strictly positive temperature.
    pub fn is_thermal(&self) -> bool {
        matches!(self, Quantity::Fidelity | Quantity::FidelityJplus | Quantity::FidelityJminus)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|q| q.as_str() == norm)
            .ok_or_else(|| Error::Usage(format!("unknown quantity '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            other => Err(Error::Usage(format!("unknown format '{other}' (expected csv, json or svg)"))),
        }
    }
}

/// Values of every physical and Yangian parameter at one point. Axis
/// parameters are overwritten per node during a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PointParams {
    pub gamma: f64,
    pub lambda_field: f64,
    pub b_field: f64,
    pub temperature: f64,
    pub mu: f64,
    pub nu: f64,
    pub lambda_y: f64,
}

impl Default for PointParams {
    fn default() -> Self {
        Self { gamma: 0.2, lambda_field: 1.0, b_field: 1.0, temperature: 0.2, mu: 1.0, nu: 1.0, lambda_y: 0.0 }
    }
}

impl PointParams {
    pub fn get(&self, axis: AxisName) -> f64 {
        match axis {
            AxisName::Gamma => self.gamma,
            AxisName::LambdaField => self.lambda_field,
            AxisName::BField => self.b_field,
            AxisName::Temperature => self.temperature,
        }
    }

    pub fn set(&mut self, axis: AxisName, v: f64) {
        match axis {
            AxisName::Gamma => self.gamma = v,
            AxisName::LambdaField => self.lambda_field = v,
            AxisName::BField => self.b_field = v,
            AxisName::Temperature => self.temperature = v,
        }
    }

    pub fn params(&self) -> Params {
        Params {
            gamma: self.gamma,
            lambda_field: self.lambda_field,
            b_field: self.b_field,
            temperature: self.temperature,
        }
    }

    pub fn yangian(&self) -> YangianParams {
        YangianParams { mu: self.mu, nu: self.nu, lambda_y: self.lambda_y }
    }

    fn named(&self) -> [(&'static str, f64); 7] {
        [
            ("gamma", self.gamma),
            ("lambda_field", self.lambda_field),
            ("b_field", self.b_field),
            ("temperature", self.temperature),
            ("mu", self.mu),
            ("nu", self.nu),
            ("lambda_y", self.lambda_y),
        ]
    }

    /// The non-axis parameters as `name → value`.
    pub fn fixed_map(&self, axes: [AxisName; 2]) -> BTreeMap<String, f64> {
        self.named()
            .into_iter()
            .filter(|(name, _)| axes.iter().all(|a| a.as_str() != *name))
            .map(|(name, v)| (name.to_string(), v))
            .collect()
    }

    /// Rebuild from a fixed-parameter map plus the two axis coordinates.
    pub fn from_fixed(fixed: &BTreeMap<String, f64>, axes: [(AxisName, f64); 2]) -> Result<Self> {
        let mut p = Self::default();
        let mut fields = p.named();
        for (name, value) in fields.iter_mut() {
            if axes.iter().any(|(a, _)| a.as_str() == *name) {
                continue;
            }
            *value = *fixed
                .get(*name)
                .ok_or_else(|| Error::InvalidInput(format!("grid has no fixed value for '{name}'")))?;
        }
        let [g, l, b, t, mu, nu, ly] = fields.map(|(_, v)| v);
        p = Self { gamma: g, lambda_field: l, b_field: b, temperature: t, mu, nu, lambda_y: ly };
        for (a, v) in axes {
            p.set(a, v);
        }
        Ok(p)
    }
}

/// Everything needed to run one sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub quantity: Quantity,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    #[serde(default)]
    pub params: PointParams,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
    /// Worker threads; `Some(1)` evaluates serially, `None` uses the rayon default.
    #[serde(default)]
    pub threads: Option<usize>,
    /// Recorded verbatim in the output metadata when present.
    #[serde(default)]
    pub timestamp: Option<String>,
}

impl SweepConfig {
    pub fn new(quantity: Quantity, axis1: AxisSpec, axis2: AxisSpec, params: PointParams) -> Self {
        Self { quantity, axis1, axis2, params, out: None, format: OutputFormat::Csv, threads: None, timestamp: None }
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate("axis1")?;
        self.axis2.validate("axis2")?;
        if self.axis1.name == self.axis2.name {
            return Err(Error::Usage(format!("axis1 and axis2 must differ (both are {})", self.axis1.name)));
        }
        for (name, v) in self.params.named() {
            if !v.is_finite() {
                return Err(Error::Usage(format!("{name} must be finite, got {v}")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::Usage("threads must be >= 1".into()));
        }
        let min_temperature = [self.axis1, self.axis2]
            .iter()
            .find(|a| a.name == AxisName::Temperature)
            .map_or(self.params.temperature, |a| a.min);
        if self.quantity.is_thermal() && min_temperature <= 0.0 {
            return Err(Error::Usage(format!(
                "temperature must be > 0 for quantity {} (got {min_temperature}); use zero_t_fidelity for T = 0",
                self.quantity
            )));
        }
        if min_temperature < 0.0 {
            return Err(Error::Usage(format!("temperature must be >= 0, got {min_temperature}")));
        }
        Ok(())
    }

    fn echo(&self) -> SweepEcho {
        SweepEcho { quantity: self.quantity, axis1: self.axis1, axis2: self.axis2, params: self.params }
    }
}

/// The physics-relevant part of a [`SweepConfig`], echoed into every output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEcho {
    pub quantity: Quantity,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub params: PointParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub tool: String,
    pub version: String,
    pub timestamp: Option<String>,
    pub config: SweepEcho,
}

/// A sampled scalar field. `values[i * axis2.count + j]` holds the value at
/// `(axis1[i], axis2[j])`; `None` marks an annihilated transition or an
/// otherwise undefined node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub fixed: BTreeMap<String, f64>,
    pub quantity: Quantity,
    pub values: Vec<Option<f64>>,
    pub metadata: GridMetadata,
}

impl Grid2D {
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.axis2.count + j]
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate("axis1")?;
        self.axis2.validate("axis2")?;
        if self.values.len() != self.axis1.count * self.axis2.count {
            return Err(Error::InvalidInput(format!(
                "grid has {} values, expected {}",
                self.values.len(),
                self.axis1.count * self.axis2.count
            )));
        }
        if self.values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("grid contains non-finite values".into()));
        }
        Ok(())
    }

    /// Parameters at an arbitrary point `(x, y)` of the plane.
    pub fn point_at(&self, x: f64, y: f64) -> Result<PointParams> {
        PointParams::from_fixed(&self.fixed, [(self.axis1.name, x), (self.axis2.name, y)])
    }

    /// Range of the numeric values, ignoring sentinels.
    pub fn value_range(&self) -> Option<(f64, f64)> {
        let mut it = self.values.iter().flatten().copied();
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(self.values.len() * 72 + 32);
        s.push_str(&format!("{},{},value\n", self.axis1.name, self.axis2.name));
        for i in 0..self.axis1.count {
            let x = fmt17(self.axis1.value(i));
            for j in 0..self.axis2.count {
                let v = self.get(i, j).map_or_else(|| "NA".to_string(), fmt17);
                s.push_str(&format!("{x},{},{v}\n", fmt17(self.axis2.value(j))));
            }
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: Self = serde_json::from_str(s)?;
        g.validate()?;
        Ok(g)
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Evaluate `quantity` at one point. `Ok(None)` means the Yangian
/// transition annihilated ψ₁ there.
pub fn evaluate(quantity: Quantity, point: &PointParams) -> Result<Option<f64>> {
    let p = point.params();
    p.validate()?;
    Ok(match quantity {
        Quantity::Gap => Some(energy_gap(&p)),
        Quantity::Fidelity => Some(thermal_fidelity(&p)?),
        Quantity::ZeroTFidelity => Some(zero_temperature_fidelity(&p)),
        Quantity::FidelityJplus | Quantity::FidelityJminus => {
            let which = if quantity == Quantity::FidelityJplus { Transition::JPlus } else { Transition::JMinus };
            match transition_fidelity(&p, &point.yangian(), which)? {
                TransitionFidelity::Value(f) => Some(f),
                TransitionFidelity::Annihilated { .. } => None,
            }
        }
    })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Grid2D> {
    cfg.validate()?;
    let (a1, a2) = (cfg.axis1, cfg.axis2);
    let n = a1.count * a2.count;
    let node = |k: usize| {
        let mut point = cfg.params;
        point.set(a1.name, a1.value(k / a2.count));
        point.set(a2.name, a2.value(k % a2.count));
        evaluate(cfg.quantity, &point)
    };

    let values: Result<Vec<Option<f64>>> = match cfg.threads {
        Some(1) => (0..n).map(node).collect(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Usage(format!("cannot build thread pool: {e}")))?
            .install(|| (0..n).into_par_iter().map(node).collect()),
        None => (0..n).into_par_iter().map(node).collect(),
    };

    Ok(Grid2D {
        axis1: a1,
        axis2: a2,
        fixed: cfg.params.fixed_map([a1.name, a2.name]),
        quantity: cfg.quantity,
        values: values?,
        metadata: GridMetadata {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            timestamp: cfg.timestamp.clone(),
            config: cfg.echo(),
        },
    })
}

pub fn export_grid<W: Write>(g: &Grid2D, format: OutputFormat, w: &mut W) -> Result<()> {
    let body = match format {
        OutputFormat::Csv => g.to_csv(),
        OutputFormat::Json => g.to_json()?,
        OutputFormat::Svg => crate::heatmap::render_heatmap(g)?,
    };
    w.write_all(body.as_bytes())?;
    Ok(())
}

pub fn write_grid(g: &Grid2D, format: OutputFormat, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    export_grid(g, format, &mut buf)?;
    fs::write(path, buf).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}
