use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::report::{AxiomReport, Check, Equivalence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub name: String,
    /// Canonical rendering, `"0"` when the residual vanishes.
    pub residual: String,
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub evaluated: usize,
}

impl From<&Check> for CheckDoc {
    fn from(c: &Check) -> Self {
        CheckDoc {
            name: c.name.clone(),
            residual: c.residual.pretty(),
            verdict: c.verdict(),
            witness: c.witness.clone(),
            evaluated: c.evaluated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceDoc {
    pub name: String,
    pub holds: bool,
}

impl From<&Equivalence> for EquivalenceDoc {
    fn from(e: &Equivalence) -> Self {
        EquivalenceDoc {
            name: e.name.clone(),
            holds: e.holds,
        }
    }
}

/// The machine report of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub command: String,
    pub subject: String,
    pub verdict: bool,
    pub checks: Vec<CheckDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equivalences: Vec<EquivalenceDoc>,
    /// Command output that is not a residual, such as a classification or a
    /// twisted structure file.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub results: BTreeMap<String, Value>,
}

impl ReportDoc {
    pub fn new(command: impl Into<String>, subject: impl Into<String>) -> Self {
        ReportDoc {
            command: command.into(),
            subject: subject.into(),
            verdict: true,
            checks: Vec::new(),
            equivalences: Vec::new(),
            results: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, c: &Check) {
        self.checks.push(c.into());
        self.verdict &= c.verdict();
    }

    pub fn extend<'a>(&mut self, checks: impl IntoIterator<Item = &'a Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn push_equivalence(&mut self, e: &Equivalence) {
        self.equivalences.push(e.into());
        self.verdict &= e.holds;
    }

    pub fn add_axioms(&mut self, r: &AxiomReport) {
        self.extend(&r.checks);
        for e in &r.equivalences {
            self.push_equivalence(e);
        }
    }

    pub fn set_result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.into(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ReportDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Each check verdict is true iff its residual is `"0"`, and the overall
    /// verdict is the conjunction.
    pub fn validate(&self) -> Result<()> {
        for c in &self.checks {
            if c.verdict != (c.residual == "0") {
                return Err(Error::Input(format!(
                    "check {:?}: verdict disagrees with residual",
                    c.name
                )));
            }
        }
        let all =
            self.checks.iter().all(|c| c.verdict) && self.equivalences.iter().all(|e| e.holds);
        if all != self.verdict {
            return Err(Error::Input(
                "overall verdict disagrees with the checks".into(),
            ));
        }
        Ok(())
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.command, self.subject).unwrap();
        for c in &self.checks {
            let tag = if c.verdict { "PASS" } else { "FAIL" };
            write!(out, "  {tag}  {}: {}", c.name, c.residual).unwrap();
            if let Some(w) = &c.witness {
                write!(out, "  (at {w})").unwrap();
            }
            out.push('\n');
        }
        for e in &self.equivalences {
            let tag = if e.holds { "PASS" } else { "FAIL" };
            writeln!(out, "  {tag}  {}", e.name).unwrap();
        }
        for (k, v) in &self.results {
            match v {
                Value::String(s) => writeln!(out, "{k}: {s}").unwrap(),
                Value::Array(items) if items.iter().all(Value::is_string) => {
                    writeln!(out, "{k}:").unwrap();
                    for it in items {
                        writeln!(out, "  {}", it.as_str().unwrap()).unwrap();
                    }
                }
                other => writeln!(out, "{k}: {other}").unwrap(),
            }
        }
        writeln!(
            out,
            "verdict: {}",
            if self.verdict { "PASS" } else { "FAIL" }
        )
        .unwrap();
        out
    }
}
