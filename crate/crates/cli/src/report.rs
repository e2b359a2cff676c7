//! Command results with human and JSON renderings.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub result: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    /// Headline lines for the human rendering.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, result: Value::Null, checks: Vec::new(), passed: true, lines: Vec::new() }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// A statement that is only asserted when its hypotheses hold.
    pub fn conditional(&mut self, name: &str, hypotheses: bool, conclusion: bool) {
        if hypotheses {
            self.check(name, conclusion, "hypotheses met");
        } else {
            self.check(name, true, format!("hypotheses not met (conclusion {conclusion})"));
        }
    }

    pub fn set_result<T: Serialize>(&mut self, value: &T) {
        self.result = serde_json::to_value(value).expect("reports serialize");
    }

    /// The first failing check, if any.
    pub fn failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("{tag} {}\n", c.name));
            } else {
                out.push_str(&format!("{tag} {} ({})\n", c.name, c.detail));
            }
        }
        if !self.checks.is_empty() {
            out.push_str(if self.passed { "pass\n" } else { "fail\n" });
        }
        out
    }
}
