use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    /// Process exit code used by the command line.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of a check. A failing verdict always carries its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict<W> {
    pub status: Status,
    pub witness: Option<W>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_note: Option<String>,
}

impl<W> Verdict<W> {
    pub fn holds() -> Self {
        Verdict {
            status: Status::Holds,
            witness: None,
            budget_note: None,
        }
    }

    pub fn holds_within(note: impl Into<String>) -> Self {
        Verdict {
            status: Status::Holds,
            witness: None,
            budget_note: Some(note.into()),
        }
    }

    pub fn fails(witness: W) -> Self {
        Verdict {
            status: Status::Fails,
            witness: Some(witness),
            budget_note: None,
        }
    }

    pub fn inconclusive(note: impl Into<String>) -> Self {
        Verdict {
            status: Status::Inconclusive,
            witness: None,
            budget_note: Some(note.into()),
        }
    }

    pub fn holds_bool(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails_bool(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        Verdict {
            status: self.status,
            witness: self.witness.map(f),
            budget_note: self.budget_note,
        }
    }
}
