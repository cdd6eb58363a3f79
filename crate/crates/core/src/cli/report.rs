use serde::Serialize;

use super::config::RunConfig;
use crate::gapcert::{GapInterval, Segment, Witness};
use crate::multidim::{CriticalOutcome, Null2dResult};
use crate::oracle::Spectrum;

pub const TOOL: &str = "specgap";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `eLow` is `null` when the interval extends to `−∞`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapReport {
    pub e_low: Option<f64>,
    pub e_high: f64,
    pub tol: f64,
    pub witnesses: Vec<Witness>,
    pub segments: Vec<SegmentReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SegmentReport {
    pub e_low: Option<f64>,
    pub e_high: f64,
    pub lambda: Vec<f64>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl From<&Segment> for SegmentReport {
    fn from(s: &Segment) -> Self {
        SegmentReport { e_low: finite(s.e_low), e_high: s.e_high, lambda: s.lambda.clone() }
    }
}

impl From<&GapInterval> for GapReport {
    fn from(g: &GapInterval) -> Self {
        GapReport {
            e_low: finite(g.e_low),
            e_high: g.e_high,
            tol: g.tol,
            witnesses: g.witnesses.clone(),
            segments: g.segments.iter().map(SegmentReport::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub gap: usize,
    pub eigenvalue: f64,
    pub conv_est: f64,
}

/// Output of `gaps`. Timings are reported on stderr only, so that identical
/// inputs give byte-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapsReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub potential: String,
    #[serde(rename = "N")]
    pub order: usize,
    pub family: String,
    pub certificate: String,
    pub gaps: Vec<GapReport>,
    pub oracle_spectrum: Spectrum,
    pub disjoint: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub potential: String,
    #[serde(flatten)]
    pub spectrum: Spectrum,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeriveReport {
    pub tool: &'static str,
    pub version: &'static str,
    #[serde(rename = "N")]
    pub order: usize,
    pub v_form: String,
    pub potential_form: String,
    pub a_n: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub what: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct D2Check {
    pub potential: String,
    pub field: [String; 2],
    #[serde(flatten)]
    pub result: Null2dResult,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MultidimReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub d: usize,
    pub potential: String,
    pub max_deg: u32,
    pub nullspace_dim: usize,
    pub expected_dim: Option<usize>,
    pub max_basis_degree: u32,
    pub critical_points: Vec<CriticalOutcome>,
    pub d2_integral_checks: Vec<D2Check>,
    pub pass: bool,
}
