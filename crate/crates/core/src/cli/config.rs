use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::mc_harness::ExperimentSpec;

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_csv() -> String {
    "results.csv".into()
}

fn default_summary() -> String {
    "summary.json".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_csv")]
    pub csv: String,
    #[serde(default = "default_summary")]
    pub summary: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: default_dir(),
            csv: default_csv(),
            summary: default_summary(),
        }
    }
}

/// A run configuration: the experiment, where results go, and the worker
/// count (which never changes results).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub experiment: ExperimentSpec,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

/// Input of the `scaling` command: either an experiment or given points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalingInput {
    Points {
        points: Vec<(f64, f64)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected_exponent: Option<f64>,
    },
    Experiment(Config),
}

/// Sets the dotted `path` (e.g. `experiment.model.p`) in a JSON document.
/// The value is parsed as JSON when possible and kept as a string otherwise.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<()> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{assignment}` is not key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = doc;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, key) in keys.iter().enumerate() {
        if key.is_empty() {
            return Err(Error::Config(format!("empty key in `{path}`")));
        }
        let obj = node
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("`{}` is not an object", keys[..i].join("."))))?;
        if i + 1 == keys.len() {
            obj.insert(key.to_string(), value);
            return Ok(());
        }
        node = obj
            .entry(key.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!("split yields at least one key")
}

/// Reads a JSON document and applies the overrides in order.
pub fn load_config(path: &Path, overrides: &[String]) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut doc: Value =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    for o in overrides {
        apply_override(&mut doc, o)?;
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn dotted_overrides() {
        let mut doc = json!({"experiment": {"model": {"type": "cp", "p": 0.5}}});
        apply_override(&mut doc, "experiment.model.p=0.25").unwrap();
        apply_override(&mut doc, "output.dir=results").unwrap();
        assert_eq!(doc["experiment"]["model"]["p"], json!(0.25));
        assert_eq!(doc["output"]["dir"], json!("results"));
        assert!(apply_override(&mut doc, "nothing").is_err());
        assert!(apply_override(&mut doc, "experiment.model.p.x=1").is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        let doc = json!({
            "experiment": {"model": {"type": "cp", "p": 0.5}, "sizes": [10], "trials": 2,
                           "master_seed": 1, "outputs": ["range"]},
            "colour": "blue"
        });
        assert!(serde_json::from_value::<Config>(doc).is_err());
    }
}
