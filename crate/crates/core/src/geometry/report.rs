//! Experiment configuration and assertion reports shared by the suites.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::modrep::GroupDesc;

use super::corpus::{Corpus, CorpusConfig};

const MAX_COUNTEREXAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Assertion {
    pub fn holds(name: &str, pass: bool, detail: Value) -> Assertion {
        Assertion { name: name.to_string(), pass, counterexample: if pass { None } else { Some(detail) } }
    }

    /// Passes iff there are no failures; keeps the first few as the payload.
    pub fn from_failures(name: &str, mut failures: Vec<Value>) -> Assertion {
        let pass = failures.is_empty();
        failures.truncate(MAX_COUNTEREXAMPLES);
        Assertion { name: name.to_string(), pass, counterexample: if pass { None } else { Some(Value::Array(failures)) } }
    }
}

/// Outcome of one suite run on one corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub corpus_fingerprint: String,
    pub corpus_size: usize,
    /// Membership bitsets over corpus indices, keyed by function.
    pub censuses: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<Value>,
    pub data: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub assertions: Vec<Assertion>,
}

pub const CENSUS_NOTE: &str = "loci are decided on a finite corpus that contains a witness module for every enumerated closed point";

impl SuiteReport {
    pub fn new(suite: &str, corpus: &Corpus) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            corpus_fingerprint: corpus.fingerprint(),
            corpus_size: corpus.len(),
            censuses: BTreeMap::new(),
            poset: None,
            data: BTreeMap::new(),
            notes: vec![CENSUS_NOTE.to_string()],
            assertions: Vec::new(),
        }
    }

    pub fn push(&mut self, a: Assertion) {
        self.assertions.push(a);
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }

    /// Canonical ordering of the assertions.
    pub fn finish(mut self) -> SuiteReport {
        self.assertions.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    /// Appends the assertions and data of another report on the same corpus.
    pub fn absorb(&mut self, other: SuiteReport) {
        self.assertions.extend(other.assertions);
        self.censuses.extend(other.censuses);
        self.data.extend(other.data);
    }
}

/// Parameters of an experiment run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub p: u32,
    pub r: u32,
    /// k = GF(p^base_degree).
    pub base_degree: u32,
    /// Degrees n of the fields K = GF(p^n) whose points are enumerated.
    pub extension_degrees: Vec<u32>,
    pub seed: u64,
    pub corpus_size: usize,
    /// Tate window of the gap sweep.
    pub window: [i32; 2],
    /// Tate window of the census comparison.
    pub census_window: [i32; 2],
    /// Defaults to 2p.
    pub r_gap: Option<usize>,
    pub sum_cap: usize,
    pub max_dim: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            p: 2,
            r: 2,
            base_degree: 1,
            extension_degrees: vec![1, 2],
            seed: 0,
            corpus_size: 30,
            window: [-6, 8],
            census_window: [-3, 3],
            r_gap: None,
            sum_cap: 2,
            max_dim: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Config(s));
        GroupDesc::new(self.p, self.r).map_err(|e| Error::Config(e.to_string()))?;
        if self.base_degree == 0 {
            return bad("base degree must be at least 1".into());
        }
        if self.extension_degrees.is_empty() {
            return bad("at least one extension degree is required".into());
        }
        for &n in &self.extension_degrees {
            if n == 0 || n % self.base_degree != 0 {
                return bad(format!("extension degree {n} is not a positive multiple of {}", self.base_degree));
            }
            if n != self.base_degree && self.base_degree != 1 {
                return bad("proper extensions need a prime base field".into());
            }
        }
        for (name, w) in [("window", self.window), ("census window", self.census_window)] {
            if w[0] > 0 || w[1] < 0 {
                return bad(format!("{name} [{}, {}] must contain 0", w[0], w[1]));
            }
        }
        if self.r_gap == Some(0) {
            return bad("r_gap must be positive".into());
        }
        if !(1..=3).contains(&self.sum_cap) {
            return bad(format!("sum cap {} outside 1..=3", self.sum_cap));
        }
        if self.corpus_size < 8 || self.corpus_size > 400 {
            return bad(format!("corpus size {} outside 8..=400", self.corpus_size));
        }
        if self.max_dim == Some(0) {
            return bad("max_dim must be positive".into());
        }
        Ok(())
    }

    pub fn group(&self) -> Result<GroupDesc> {
        GroupDesc::new(self.p, self.r).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn field_of_degree(&self, n: u32) -> Result<Field> {
        Field::new(self.p, n, None).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn base_field(&self) -> Result<Field> {
        self.field_of_degree(self.base_degree)
    }

    pub fn extension_fields(&self) -> Result<Vec<Field>> {
        self.extension_degrees.iter().map(|&n| self.field_of_degree(n)).collect()
    }

    pub fn r_gap(&self) -> usize {
        self.r_gap.unwrap_or(2 * self.p as usize)
    }

    pub fn corpus_config(&self) -> Result<CorpusConfig> {
        self.validate()?;
        let mut c = CorpusConfig::new(self.group()?, &self.base_field()?, self.seed, self.corpus_size)
            .with_extensions(self.extension_fields()?);
        if let Some(d) = self.max_dim {
            c.max_dim = d;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let c = SuiteConfig::default();
        c.validate().unwrap();
        assert_eq!(c.r_gap(), 4);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<SuiteConfig>(&json).unwrap(), c);
    }

    #[test]
    fn invalid_configs() {
        let bad = [
            SuiteConfig { r: 0, ..Default::default() },
            SuiteConfig { p: 4, ..Default::default() },
            SuiteConfig { window: [1, 3], ..Default::default() },
            SuiteConfig { extension_degrees: vec![0], ..Default::default() },
            SuiteConfig { base_degree: 2, extension_degrees: vec![2, 4], ..Default::default() },
            SuiteConfig { sum_cap: 0, ..Default::default() },
        ];
        for c in bad {
            assert!(matches!(c.validate(), Err(Error::Config(_))), "{c:?}");
        }
    }

    #[test]
    fn failures_are_truncated() {
        let a = Assertion::from_failures("x", (0..20).map(Value::from).collect());
        assert!(!a.pass);
        assert_eq!(a.counterexample.unwrap().as_array().unwrap().len(), MAX_COUNTEREXAMPLES);
        assert!(Assertion::from_failures("y", Vec::new()).pass);
    }
}
