use serde::{Deserialize, Serialize};

use super::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OracleConfig {
    /// Domain half-width; chosen from the decay criterion when absent.
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    #[serde(rename = "M", default = "default_grid")]
    pub grid: usize,
    #[serde(rename = "k", default = "default_count")]
    pub count: usize,
}

fn default_grid() -> usize {
    4000
}

fn default_count() -> usize {
    8
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { half_width: None, grid: default_grid(), count: default_count() }
    }
}

/// Input of the `gaps` command, as read from `--config` and overridden by
/// flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub potential: String,
    #[serde(rename = "N")]
    pub order: usize,
    pub a0_family: String,
    pub e_range: [f64; 2],
    pub e_step: f64,
    /// One `[lo, hi]` per parameter; a single entry applies to all.
    #[serde(default)]
    pub lambda_box: Vec<[f64; 2]>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default)]
    pub seed: u64,
}

fn default_tol() -> f64 {
    1e-6
}

/// Partially specified configuration: every field optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PartialConfig {
    pub potential: Option<String>,
    #[serde(rename = "N")]
    pub order: Option<usize>,
    pub a0_family: Option<String>,
    pub e_range: Option<[f64; 2]>,
    pub e_step: Option<f64>,
    pub lambda_box: Option<Vec<[f64; 2]>>,
    pub tol: Option<f64>,
    pub oracle: Option<OracleConfig>,
    pub seed: Option<u64>,
}

impl PartialConfig {
    /// Fields set in `other` win.
    pub fn merge(self, other: PartialConfig) -> PartialConfig {
        PartialConfig {
            potential: other.potential.or(self.potential),
            order: other.order.or(self.order),
            a0_family: other.a0_family.or(self.a0_family),
            e_range: other.e_range.or(self.e_range),
            e_step: other.e_step.or(self.e_step),
            lambda_box: other.lambda_box.or(self.lambda_box),
            tol: other.tol.or(self.tol),
            oracle: other.oracle.or(self.oracle),
            seed: other.seed.or(self.seed),
        }
    }

    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let cfg = RunConfig {
            potential: self.potential.ok_or_else(|| CliError::Usage("missing potential (--potential)".into()))?,
            order: self.order.unwrap_or(2),
            a0_family: self.a0_family.ok_or_else(|| CliError::Usage("missing test-function family (--a0)".into()))?,
            e_range: self.e_range.unwrap_or([-2.0, 10.0]),
            e_step: self.e_step.unwrap_or(0.05),
            lambda_box: self.lambda_box.unwrap_or_default(),
            tol: self.tol.unwrap_or_else(default_tol),
            oracle: self.oracle.unwrap_or_default(),
            seed: self.seed.unwrap_or(0),
        };
        if cfg.order == 0 {
            return Err(CliError::Usage("N must be at least 1".into()));
        }
        if !(cfg.e_step > 0.0) {
            return Err(CliError::Usage("eStep must be positive".into()));
        }
        if !(cfg.tol > 0.0) {
            return Err(CliError::Usage("tolerance must be positive".into()));
        }
        if cfg.e_range.iter().any(|e| !e.is_finite()) {
            return Err(CliError::Usage("eRange must be finite".into()));
        }
        if cfg.oracle.grid < 100 {
            return Err(CliError::Usage("oracle grid M must be at least 100".into()));
        }
        if cfg.oracle.half_width.is_some_and(|l| !(l > 0.0)) {
            return Err(CliError::Usage("oracle half-width L must be positive".into()));
        }
        Ok(cfg)
    }
}

/// `lo:hi`.
pub fn parse_range(text: &str) -> Result<[f64; 2], String> {
    let (a, b) = text.split_once(':').ok_or_else(|| format!("expected lo:hi, got {text:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    Ok([lo, hi])
}

/// Comma-separated `lo:hi` ranges.
pub fn parse_box(text: &str) -> Result<Vec<[f64; 2]>, String> {
    text.split(',').map(parse_range).collect()
}
