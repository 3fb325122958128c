use serde::{Deserialize, Serialize};

/// Schema tag carried by every report document.
pub const REPORT_SCHEMA: &str = "torind/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The bound fails only for inputs flagged as outside the intended scope
    /// (modules of finite projective dimension).
    OutOfScope,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Positive-degree basis elements of `A` with nonzero product.
    NonzeroProduct { factors: Vec<String> },
    /// A monomial of `R` of degree `>= n`, so `m_R^n != 0`.
    NonzeroPower { monomial: String, exponent: usize },
    /// A subset whose derived tensor product has amplitude above the bound.
    AmplitudeExceeded { subset: Vec<usize>, amp: i64, bound: i64 },
    /// A minimal resolution still acquiring generators at the cutoff.
    ResolutionGrowth { module: usize, cutoff: i64, semibasis_degrees: Vec<i64> },
    /// `Tor_degree(⊗_{subset} N, N_against) != 0`.
    TorNonvanishing { subset: Vec<usize>, against: usize, degree: usize, dim: usize },
}

/// One named check inside a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Step {
    pub name: String,
    pub holds: bool,
    pub detail: serde_json::Value,
}

impl Step {
    pub fn new(name: &str, holds: bool, detail: impl Serialize) -> Self {
        let detail = serde_json::to_value(detail).unwrap_or(serde_json::Value::Null);
        Step { name: name.to_string(), holds, detail }
    }
}

/// Outcome of a full verification of `n <= bound`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub schema: String,
    /// `dg` or `module`.
    pub theorem: String,
    pub n: usize,
    /// `amp H(A)` or `ecodepth R`.
    pub bound: i64,
    /// The claimed inequality, e.g. `2 ≤ ecodepth 2`.
    pub statement: String,
    /// Last degree through which every homological input was exact; `None`
    /// when nothing was truncated.
    pub certified_to: Option<i64>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub flags: Vec<String>,
    pub steps: Vec<Step>,
}

impl TheoremReport {
    pub(crate) fn new(theorem: &str, n: usize, bound: i64) -> Self {
        TheoremReport {
            schema: REPORT_SCHEMA.to_string(),
            theorem: theorem.to_string(),
            n,
            bound,
            statement: match theorem {
                "dg" => format!("{n} ≤ s = {bound}"),
                _ => format!("{n} ≤ ecodepth {bound}"),
            },
            certified_to: None,
            verdict: Verdict::Fail,
            witnesses: Vec::new(),
            flags: Vec::new(),
            steps: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub(crate) fn certify(&mut self, through: Option<i64>) {
        if let Some(c) = through {
            self.certified_to = Some(self.certified_to.map_or(c, |x| x.min(c)));
        }
    }

    pub fn all_steps_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}
