use std::cmp::Ordering;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::image::DigitalImage;
use crate::io::{image_to_file, ImageFile};

/// The concrete instance a check ran on, serialized so it can be replayed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<ImageFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<ImageFile>,
    /// Assignments of the maps involved, all `x -> y` (or `x -> x`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
}

impl Instance {
    pub fn new(description: impl Into<String>) -> Self {
        Instance {
            description: description.into(),
            x: None,
            y: None,
            maps: Vec::new(),
            i: None,
        }
    }

    pub fn with_x(mut self, x: &DigitalImage) -> Self {
        self.x = Some(image_to_file(x));
        self
    }

    pub fn with_y(mut self, y: &DigitalImage) -> Self {
        self.y = Some(image_to_file(y));
        self
    }

    pub fn with_maps(mut self, maps: Vec<Vec<usize>>) -> Self {
        self.maps = maps;
        self
    }

    pub fn with_i(mut self, i: usize) -> Self {
        self.i = Some(i);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    /// The instance violates the checked statement; `witness` holds the maps
    /// exhibiting it, in the instance's indexing.
    Fail {
        message: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        witness: Vec<Vec<usize>>,
    },
    /// A budget tripped before the check could be decided.
    Skipped { reason: String },
}

impl Verdict {
    pub fn fail(message: impl Into<String>) -> Self {
        Verdict::Fail {
            message: message.into(),
            witness: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Verdict::Skipped { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub instance: Instance,
    pub verdict: Verdict,
    pub seed: u64,
    pub elapsed_ms: f64,
    /// Computed values backing the verdict.
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl VerificationReport {
    pub fn new(check_id: &str, instance: Instance, verdict: Verdict, seed: u64, elapsed: Duration) -> Self {
        VerificationReport {
            check_id: check_id.to_owned(),
            instance,
            verdict,
            seed,
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            details: serde_json::Value::Null,
        }
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = details;
        self
    }

    /// Equality ignoring wall-clock time.
    pub fn same_outcome(&self, other: &VerificationReport) -> bool {
        self.check_id == other.check_id
            && self.instance == other.instance
            && self.verdict == other.verdict
            && self.seed == other.seed
            && self.details == other.details
    }

    /// Canonical report order: by check id, then instance description.
    pub fn canonical_cmp(&self, other: &VerificationReport) -> Ordering {
        self.check_id
            .cmp(&other.check_id)
            .then_with(|| self.instance.description.cmp(&other.instance.description))
    }

    /// One JSON object with sorted keys.
    pub fn to_json_line(&self) -> String {
        // serde_json::Value keeps object keys in a BTreeMap
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string(&value).expect("values serialize")
    }

    pub fn to_text_line(&self) -> String {
        let status = match &self.verdict {
            Verdict::Pass => "PASS".to_owned(),
            Verdict::Fail { message, .. } => format!("FAIL ({message})"),
            Verdict::Skipped { reason } => format!("SKIP ({reason})"),
        };
        format!(
            "{:<22} {:<48} {}",
            self.check_id, self.instance.description, status
        )
    }
}

/// 0 when nothing failed, 1 otherwise.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.verdict.is_fail()) {
        1
    } else {
        0
    }
}
