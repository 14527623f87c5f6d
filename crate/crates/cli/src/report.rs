//! The structured run report printed to stdout as JSON.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub kind: String,
    pub pass: bool,
    pub max_defect: f64,
    pub samples: usize,
    pub runtime_ms: u64,
    pub seed: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    /// One human-readable status line (suppressed by --quiet).
    pub fn summary(&self) -> String {
        format!(
            "{}: {} (max defect {:e}, {} samples, {} ms)",
            self.kind,
            if self.pass { "pass" } else { "FAIL" },
            self.max_defect,
            self.samples,
            self.runtime_ms
        )
    }
}
