//! Run reports and their JSON/TSV rendering.

use std::collections::BTreeMap;

use serde::Serialize;
use subadd::geometry::{sha256_hex, SuiteConfig, SuiteReport};

#[derive(Debug, Clone, Serialize)]
pub struct ReportBody {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: SuiteConfig,
    pub passed: bool,
    pub runs: Vec<SuiteReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    #[serde(flatten)]
    pub body: ReportBody,
    /// Hash of the body; timing is not part of it.
    pub report_fingerprint: String,
    pub timing_ms: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(command: String, config: SuiteConfig, runs: Vec<SuiteReport>, timing_ms: BTreeMap<String, u64>) -> Report {
        let passed = runs.iter().all(|r| r.passed());
        let body = ReportBody { tool: "subadd", version: env!("CARGO_PKG_VERSION"), command, config, passed, runs };
        let report_fingerprint = sha256_hex(serde_json::to_string(&body).expect("report serializes").as_bytes());
        Report { body, report_fingerprint, timing_ms }
    }

    pub fn passed(&self) -> bool {
        self.body.passed
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} {} {}\n", self.body.tool, self.body.version, self.body.command));
        out.push_str(&format!("# report_fingerprint\t{}\n", self.report_fingerprint));
        for (k, v) in &self.timing_ms {
            out.push_str(&format!("# timing_ms\t{k}\t{v}\n"));
        }
        out.push_str("run\tcorpus_fingerprint\tassertion\tpass\tcounterexample\n");
        for (i, run) in self.body.runs.iter().enumerate() {
            for a in &run.assertions {
                let ce = a.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default();
                out.push_str(&format!("{i}:{}\t{}\t{}\t{}\t{ce}\n", run.suite, run.corpus_fingerprint, a.name, a.pass));
            }
        }
        out
    }
}
