use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
        })
    }
}

/// Counterexample record: the offending pair, the clause it violates and
/// the transitions that led there, all rendered as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub lhs: String,
    pub rhs: String,
    pub clause: String,
    pub trace: Vec<String>,
}

impl Witness {
    pub fn new(lhs: impl fmt::Display, rhs: impl fmt::Display, clause: impl Into<String>) -> Self {
        Witness {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            clause: clause.into(),
            trace: Vec::new(),
        }
    }

    pub fn with_trace(mut self, trace: Vec<String>) -> Self {
        self.trace = trace;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub diagnostics: Vec<String>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict {
            status: Status::Holds,
            witness: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn fails(witness: Witness) -> Self {
        Verdict {
            status: Status::Fails,
            witness: Some(witness),
            diagnostics: Vec::new(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Unknown,
            witness: None,
            diagnostics: vec![reason.into()],
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn note(mut self, diagnostic: impl Into<String>) -> Self {
        self.diagnostics.push(diagnostic.into());
        self
    }
}

/// Accumulates per-item outcomes: the first failure wins, otherwise any
/// unknown makes the whole result unknown.
#[derive(Debug, Default)]
pub struct VerdictBuilder {
    failure: Option<Witness>,
    unknown: Vec<String>,
    pub checked: usize,
}

impl VerdictBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fail(&mut self, witness: Witness) {
        if self.failure.is_none() {
            self.failure = Some(witness);
        }
    }

    pub fn unknown(&mut self, reason: impl Into<String>) {
        if self.unknown.len() < 8 {
            self.unknown.push(reason.into());
        }
    }

    pub fn has_failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn finish(self) -> Verdict {
        let mut v = match (self.failure, self.unknown.is_empty()) {
            (Some(w), _) => Verdict::fails(w),
            (None, true) => Verdict::holds(),
            (None, false) => Verdict {
                status: Status::Unknown,
                witness: None,
                diagnostics: self.unknown,
            },
        };
        v.diagnostics.push(format!("checked {}", self.checked));
        v
    }
}
