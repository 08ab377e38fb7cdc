//! Per-model parameters, shared by command-line flags and config files.
//!
//! Angles are radians unless `degrees` is set. Prices are in currency units
//! and are converted to log-price internally; widths (`sigma`) and grid
//! bounds are already in log-price units.

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderArg {
    Ab,
    Ba,
    #[default]
    Both,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderEffectArgs {
    /// Context angle for question A.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    /// Framework offset of question B relative to A.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    pub order: OrderArg,
    /// Read angles in degrees.
    #[arg(long)]
    #[serde(default)]
    pub degrees: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterferenceArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long)]
    #[serde(default)]
    pub degrees: bool,
    /// Also estimate the measured protocol by collapse-and-continue sampling.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[arg(long, env = "QPROP_SEED")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn default_tol() -> f64 {
    1e-12
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceArgs {
    /// Number of random unitary pairs.
    #[arg(long)]
    pub trials: u64,
    #[arg(long, env = "QPROP_SEED")]
    pub seed: u64,
    #[arg(long, default_value_t = default_tol(), allow_hyphen_values = true)]
    #[serde(default = "default_tol")]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReversalArgs {
    /// Cost of the less attractive option.
    #[arg(long, allow_hyphen_values = true)]
    pub x1: f64,
    /// Cost of the more attractive option.
    #[arg(long, allow_hyphen_values = true)]
    pub x2: f64,
}

fn default_points() -> usize {
    201
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForceArgs {
    /// Preferred price (currency units).
    #[arg(long, allow_hyphen_values = true)]
    pub price: f64,
    /// Width of the propensity curve in log-price.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: f64,
    /// Entropic scale; defaults to ħω/2.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "one")]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "one")]
    pub hbar: f64,
    #[arg(long, default_value_t = default_points())]
    #[serde(default = "default_points")]
    pub points: usize,
    /// Lower grid bound in log-price; defaults to 4σ below the mean.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_min: Option<f64>,
    /// Upper grid bound in log-price; defaults to 4σ above the mean.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "one")]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "one")]
    pub hbar: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub buyer_price: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub buyer_sigma: f64,
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "fixed_price"
    )]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seller_price: Option<f64>,
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "fixed_price"
    )]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seller_sigma: Option<f64>,
    /// Seller refuses to negotiate away from this price.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["seller_price", "seller_sigma"])]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_price: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "one")]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "one")]
    pub hbar: f64,
    #[arg(long, default_value_t = default_points())]
    #[serde(default = "default_points")]
    pub points: usize,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub price: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: f64,
    /// Starting price of the mental state.
    #[arg(long, allow_hyphen_values = true)]
    pub from_price: f64,
    /// Target price of the mental state.
    #[arg(long, allow_hyphen_values = true)]
    pub to_price: f64,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "one")]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "one")]
    pub hbar: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub buyer_price: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub buyer_sigma: f64,
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "fixed_price"
    )]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seller_price: Option<f64>,
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "fixed_price"
    )]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seller_sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["seller_price", "seller_sigma"])]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_price: Option<f64>,
    /// Number of transaction prices to draw.
    #[arg(long)]
    pub n: usize,
    #[arg(long, env = "QPROP_SEED")]
    pub seed: u64,
}

/// A fully specified model run.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "model", content = "parameters", rename_all = "kebab-case")]
pub enum Model {
    OrderEffect(OrderEffectArgs),
    Interference(InterferenceArgs),
    Equivalence(EquivalenceArgs),
    Reversal(ReversalArgs),
    Force(ForceArgs),
    Oscillator(OscillatorArgs),
    Joint(JointArgs),
    Work(WorkArgs),
    Sample(SampleArgs),
}

impl Model {
    /// Seed driving the run, for stochastic models.
    pub fn seed(&self) -> Option<u64> {
        match self {
            Model::Interference(a) => a.seed,
            Model::Equivalence(a) => Some(a.seed),
            Model::Sample(a) => Some(a.seed),
            _ => None,
        }
    }
}
