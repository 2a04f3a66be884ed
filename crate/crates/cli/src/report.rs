//! Deterministic verdict reports.
//!
//! A report is a list of named items. A failing item always carries a
//! witness; passing and informational items never do, so the exit code can
//! be read off the items alone.

use std::fmt::Write as _;

use nearspace::{AxiomReport, FiniteSpace, Subset, Verdict, Witness};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// Masks and the matching label sets, side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub masks: Vec<u32>,
    pub sets: Vec<String>,
}

impl WitnessOut {
    /// `space` of `None` renders elements by index.
    pub fn new(space: Option<&FiniteSpace>, masks: &[Subset]) -> Self {
        let sets = masks
            .iter()
            .map(|&s| match space {
                Some(y) if s.bits() >> y.size() == 0 => y.format_subset(s),
                _ => {
                    let idx: Vec<String> = s.elements().map(|i| i.to_string()).collect();
                    format!("{{{}}}", idx.join(","))
                }
            })
            .collect();
        Self {
            masks: masks.iter().map(|s| s.bits()).collect(),
            sets,
        }
    }

    pub fn of(space: &FiniteSpace, w: &Witness) -> Self {
        Self::new(Some(space), w.masks())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verb: String,
    pub subject: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(verb: &str, subject: impl Into<String>) -> Self {
        Self {
            verb: verb.to_string(),
            subject: subject.into(),
            warnings: Vec::new(),
            items: Vec::new(),
        }
    }

    pub fn pass(&mut self, name: impl Into<String>) -> &mut Self {
        self.push(name, Status::Pass, None, None)
    }

    pub fn fail(
        &mut self,
        name: impl Into<String>,
        witness: WitnessOut,
        detail: Option<String>,
    ) -> &mut Self {
        self.push(name, Status::Fail, Some(witness), detail)
    }

    pub fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) -> &mut Self {
        self.push(name, Status::Info, None, Some(detail.into()))
    }

    /// Pass or fail; a failure is given `witness`.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> WitnessOut,
    ) -> &mut Self {
        if ok {
            self.pass(name)
        } else {
            self.fail(name, witness(), None)
        }
    }

    pub fn verdict(
        &mut self,
        name: impl Into<String>,
        v: &Verdict,
        space: &FiniteSpace,
    ) -> &mut Self {
        match v {
            Verdict::Pass => self.pass(name),
            Verdict::Fail(w) => self.fail(name, WitnessOut::of(space, w), None),
        }
    }

    /// One item per axiom, in report order, names prefixed by `prefix`.
    pub fn axioms(&mut self, prefix: &str, r: &AxiomReport, space: &FiniteSpace) -> &mut Self {
        for (ax, v) in r.iter() {
            self.verdict(format!("{prefix}{ax}"), v, space);
        }
        self
    }

    fn push(
        &mut self,
        name: impl Into<String>,
        status: Status,
        witness: Option<WitnessOut>,
        detail: Option<String>,
    ) -> &mut Self {
        self.items.push(Item {
            name: name.into(),
            status,
            witness,
            detail,
        });
        self
    }

    pub fn failed(&self) -> bool {
        self.items.iter().any(|i| i.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = format!("# {} {}\n", self.verb, self.subject);
        for w in &self.warnings {
            let _ = writeln!(s, "WARN  {w}");
        }
        for item in &self.items {
            let tag = match item.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            let _ = write!(s, "{tag}  {}", item.name);
            if let Some(w) = &item.witness {
                let masks: Vec<String> = w.masks.iter().map(u32::to_string).collect();
                let _ = write!(
                    s,
                    "  witness [{}] = ({})",
                    masks.join(", "),
                    w.sets.join(", ")
                );
            }
            if let Some(d) = &item.detail {
                let _ = write!(s, "  {d}");
            }
            s.push('\n');
        }
        let verdict = if self.failed() { "FAIL" } else { "PASS" };
        let _ = writeln!(s, "= {verdict}");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_carry_witnesses_and_set_the_exit_code() {
        let y = FiniteSpace::lettered(2).unwrap();
        let mut r = Report::new("check-axioms", "d");
        r.verdict("L1", &Verdict::Pass, &y);
        assert_eq!(r.exit_code(), 0);
        r.verdict(
            "L5",
            &Verdict::Fail(Witness::of([Subset(1), Subset(2)])),
            &y,
        );
        assert_eq!(r.exit_code(), 1);
        let text = r.render(Format::Text);
        assert!(
            text.contains("FAIL  L5  witness [1, 2] = ({a}, {b})"),
            "{text}"
        );
        assert!(text.ends_with("= FAIL\n"));
        let back: Report = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn unlabelled_witnesses_use_indices() {
        let w = WitnessOut::new(None, &[Subset(5), Subset::EMPTY]);
        assert_eq!(w.sets, ["{0,2}", "{}"]);
    }
}
