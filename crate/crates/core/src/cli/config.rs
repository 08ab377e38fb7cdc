//! Config files for `qprop run`.
//!
//! A config is a TOML file with a top-level `model` key, an optional
//! `output` key, and exactly one table named after the model holding its
//! parameters:
//!
//! ```toml
//! model = "reversal"
//! output = "json"
//!
//! [reversal]
//! x1 = 1.0
//! x2 = 4.0
//! ```
//!
//! Unknown keys anywhere in the file are rejected.

use serde::Deserialize;

use super::args::*;
use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ModelName {
    OrderEffect,
    Interference,
    Equivalence,
    Reversal,
    Force,
    Oscillator,
    Joint,
    Work,
    Sample,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawConfig {
    model: ModelName,
    #[serde(default)]
    output: Option<OutputFormat>,
    order_effect: Option<OrderEffectArgs>,
    interference: Option<InterferenceArgs>,
    equivalence: Option<EquivalenceArgs>,
    reversal: Option<ReversalArgs>,
    force: Option<ForceArgs>,
    oscillator: Option<OscillatorArgs>,
    joint: Option<JointArgs>,
    work: Option<WorkArgs>,
    sample: Option<SampleArgs>,
}

/// A parsed and validated config file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: Model,
    pub output: OutputFormat,
}

fn section<T>(name: &str, value: Option<T>) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing [{name}] table for model \"{name}\"")))
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        let present = [
            ("order-effect", raw.order_effect.is_some()),
            ("interference", raw.interference.is_some()),
            ("equivalence", raw.equivalence.is_some()),
            ("reversal", raw.reversal.is_some()),
            ("force", raw.force.is_some()),
            ("oscillator", raw.oscillator.is_some()),
            ("joint", raw.joint.is_some()),
            ("work", raw.work.is_some()),
            ("sample", raw.sample.is_some()),
        ];
        let model = match raw.model {
            ModelName::OrderEffect => {
                Model::OrderEffect(section("order-effect", raw.order_effect)?)
            }
            ModelName::Interference => {
                let a = section("interference", raw.interference)?;
                if a.trials.is_some() && a.seed.is_none() {
                    return Err(CliError::Usage(
                        "config: [interference] sets trials but no seed".into(),
                    ));
                }
                Model::Interference(a)
            }
            ModelName::Equivalence => Model::Equivalence(section("equivalence", raw.equivalence)?),
            ModelName::Reversal => Model::Reversal(section("reversal", raw.reversal)?),
            ModelName::Force => Model::Force(section("force", raw.force)?),
            ModelName::Oscillator => Model::Oscillator(section("oscillator", raw.oscillator)?),
            ModelName::Joint => Model::Joint(section("joint", raw.joint)?),
            ModelName::Work => Model::Work(section("work", raw.work)?),
            ModelName::Sample => Model::Sample(section("sample", raw.sample)?),
        };
        let selected = model_table(&model);
        if let Some((name, _)) = present.iter().find(|(name, set)| *set && *name != selected) {
            return Err(CliError::Usage(format!(
                "config: table [{name}] does not belong to model \"{selected}\""
            )));
        }
        Ok(ScenarioConfig {
            model,
            output: raw.output.unwrap_or(OutputFormat::Json),
        })
    }
}

fn model_table(model: &Model) -> &'static str {
    match model {
        Model::OrderEffect(_) => "order-effect",
        Model::Interference(_) => "interference",
        Model::Equivalence(_) => "equivalence",
        Model::Reversal(_) => "reversal",
        Model::Force(_) => "force",
        Model::Oscillator(_) => "oscillator",
        Model::Joint(_) => "joint",
        Model::Work(_) => "work",
        Model::Sample(_) => "sample",
    }
}
