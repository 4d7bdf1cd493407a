use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::numeric::{Precision, Tri};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A known disagreement with published values that sits within its
    /// documented margin.
    ExpectedMismatch,
    /// The error bounds straddle the decision; more precision is needed.
    Indeterminate,
}

impl Verdict {
    pub fn from_tri(tri: Tri) -> Verdict {
        match tri {
            Tri::Holds => Verdict::Pass,
            Tri::Violated => Verdict::Fail,
            Tri::Undecided => Verdict::Indeterminate,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ExpectedMismatch => "expected-mismatch",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// One checked item.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub item: String,
    pub values: BTreeMap<String, String>,
    pub verdict: Verdict,
    /// Relative slack of the check; negative when violated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
}

impl Record {
    pub fn new(item: impl Into<String>, verdict: Verdict) -> Record {
        Record {
            item: item.into(),
            values: BTreeMap::new(),
            verdict,
            margin: None,
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Record {
        self.values.insert(key.to_string(), value.to_string());
        self
    }

    pub fn margin(mut self, margin: f64) -> Record {
        self.margin = Some(margin);
        self
    }
}

/// Informational output that carries no verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub values: BTreeMap<String, String>,
}

impl Diagnostic {
    pub fn new(name: impl Into<String>) -> Diagnostic {
        Diagnostic {
            name: name.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Diagnostic {
        self.values.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub expected_mismatch: usize,
    pub indeterminate: usize,
    /// Smallest margin over the records that carry one.
    pub worst_margin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub params: BTreeMap<String, String>,
    pub items: Vec<Record>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
    pub summary: Summary,
    pub precision: Precision,
    pub version: String,
    /// Kept out of the JSON so repeated runs serialize identically.
    #[serde(skip)]
    pub wall_time: Option<Duration>,
}

impl CampaignReport {
    pub fn new(campaign: &str, precision: Precision) -> CampaignReport {
        CampaignReport {
            campaign: campaign.to_string(),
            params: BTreeMap::new(),
            items: Vec::new(),
            diagnostics: Vec::new(),
            summary: Summary::default(),
            precision,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> CampaignReport {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, record: Record) {
        self.items.push(record);
    }

    pub fn diagnose(&mut self, diagnostic: Diagnostic) {
        self.diagnostics.push(diagnostic);
    }

    /// Recomputes the summary from the items.
    pub fn finish(mut self) -> CampaignReport {
        let mut s = Summary::default();
        for r in &self.items {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::ExpectedMismatch => s.expected_mismatch += 1,
                Verdict::Indeterminate => s.indeterminate += 1,
            }
            if let Some(m) = r.margin {
                s.worst_margin = Some(s.worst_margin.map_or(m, |w: f64| w.min(m)));
            }
        }
        self.summary = s;
        self
    }

    pub fn records(&self, verdict: Verdict) -> impl Iterator<Item = &Record> {
        self.items.iter().filter(move |r| r.verdict == verdict)
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(std::slice::from_ref(self))
    }

    pub fn to_json(&self) -> crate::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> crate::Result<CampaignReport> {
        Ok(serde_json::from_str(text)?)
    }

    /// `item,verdict,margin,<value keys...>` with the union of value keys.
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<&String> = self.items.iter().flat_map(|r| r.values.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut out = String::from("item,verdict,margin");
        for k in &keys {
            out.push(',');
            out.push_str(k);
        }
        out.push('\n');
        for r in &self.items {
            out.push_str(&csv_field(&r.item));
            out.push(',');
            out.push_str(r.verdict.label());
            out.push(',');
            if let Some(m) = r.margin {
                out.push_str(&m.to_string());
            }
            for k in &keys {
                out.push(',');
                if let Some(v) = r.values.get(*k) {
                    out.push_str(&csv_field(v));
                }
            }
            out.push('\n');
        }
        out
    }

    /// One-line human summary.
    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        let mut line = format!(
            "{}: {} pass, {} fail, {} expected-mismatch, {} indeterminate",
            self.campaign, s.pass, s.fail, s.expected_mismatch, s.indeterminate
        );
        if let Some(m) = s.worst_margin {
            line.push_str(&format!(", worst margin {m:.3e}"));
        }
        line
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// 2 if anything failed, else 3 if anything is undecided, else 0.
pub fn exit_code(reports: &[CampaignReport]) -> i32 {
    let mut code = 0;
    for r in reports {
        if r.records(Verdict::Fail).next().is_some() {
            return 2;
        }
        if r.records(Verdict::Indeterminate).next().is_some() {
            code = 3;
        }
    }
    code
}
