//! Pass/fail records shared by every verification routine.

use serde::Serialize;

/// How many failing witnesses a report keeps verbatim.
const MAX_WITNESSES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// The identity or statement being tested, as a formula.
    pub anchor: String,
    pub mode: CheckMode,
    pub checked: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, mode: CheckMode) -> Self {
        CheckReport {
            name: name.into(),
            anchor: anchor.into(),
            mode,
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Count one case; `witness` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness);
        }
    }

    /// Fold in outcomes computed elsewhere (e.g. in parallel): `None` means pass.
    pub fn absorb(&mut self, outcomes: impl IntoIterator<Item = Option<String>>) {
        for o in outcomes {
            self.checked += 1;
            if let Some(w) = o {
                self.fail(w);
            }
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "{status} {} ({} cases, {} failures) [{}]",
            self.name, self.checked, self.failure_count, self.anchor
        )
    }
}
