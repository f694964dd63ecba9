//! JSON result documents and the CSV bound table.

use serde::Serialize;

use crate::pointset::PointSet;
use crate::saturation::{lunelli_sce_bound, theorem_bound, StopRule, TraceStep, Variant};

/// Rounds to 12 significant digits, the precision of every printed float.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Formats with 12 significant digits and no trailing zeros.
pub fn fmt_sig12(x: f64) -> String {
    sig12(x).to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Greedy,
    Random,
    Baer,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Greedy => "greedy",
            Method::Random => "random",
            Method::Baer => "baer",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(Method::Greedy),
            "random" => Ok(Method::Random),
            "baer" => Ok(Method::Baer),
            other => Err(format!("unknown method `{other}` (expected greedy|random|baer)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleStats {
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "Y")]
    pub y: usize,
}

/// Result of one construction. Field order is the key order of the JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub q: u32,
    pub n: usize,
    pub method: Method,
    pub variant: Option<Variant>,
    pub stop_rule: Option<String>,
    pub seed: Option<u64>,
    pub size: usize,
    pub points: Vec<u32>,
    pub verified: bool,
    pub bound_theorem: u64,
    pub bound_lunelli_sce: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SampleStats>,
    pub trace: Vec<TraceStep>,
}

impl ResultDocument {
    pub fn new(q: u32, method: Method, set: &PointSet, verified: bool) -> Self {
        ResultDocument {
            q,
            n: set.universe(),
            method,
            variant: None,
            stop_rule: None,
            seed: None,
            size: set.len(),
            points: set.to_vec(),
            verified,
            bound_theorem: theorem_bound(q),
            bound_lunelli_sce: sig12(lunelli_sce_bound(q)),
            stats: None,
            trace: Vec::new(),
        }
    }

    pub fn with_greedy(mut self, variant: Variant, stop: StopRule, trace: Vec<TraceStep>) -> Self {
        self.variant = Some(variant);
        self.stop_rule = Some(stop.to_string());
        self.trace = trace;
        self
    }

    pub fn with_random(mut self, seed: u64, stats: SampleStats) -> Self {
        self.seed = Some(seed);
        self.stats = Some(stats);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

pub const BOUNDS_CSV_HEADER: &str = "q,lower_bound,theorem_bound,greedy_size,random_mean_size";

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRow {
    pub q: u32,
    pub greedy_size: usize,
    pub random_mean_size: Option<f64>,
}

impl BoundsRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.q,
            fmt_sig12(lunelli_sce_bound(self.q)),
            theorem_bound(self.q),
            self.greedy_size,
            self.random_mean_size.map(fmt_sig12).unwrap_or_default()
        )
    }
}

pub fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from(BOUNDS_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}
