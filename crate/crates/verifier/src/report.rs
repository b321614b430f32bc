//! Check reports and the witness records they carry.

use std::fmt;

use pichar_cyclotomic::Cyclotomic;
use serde::{Deserialize, Serialize};

use crate::spec::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Violated,
    Inapplicable,
    Partial,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Violated => "violated",
            Status::Inapplicable => "inapplicable",
            Status::Partial => "partial",
        })
    }
}

/// What a report is about. `group` is kept so that witnesses can be
/// replayed from the report alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub fingerprint: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<String>,
    pub group: GroupSpec,
}

fn is_none<T>(v: &Option<T>) -> bool {
    v.is_none()
}

/// One re-checkable fact. Subgroups are member lists in ids of the target
/// group; `subgroup: None` means the target group itself. Characters of a
/// subgroup are indexed in the table of the subgroup realized on its sorted
/// members; partial characters by position in the computed basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Free text; nothing to replay.
    Note { text: String },
    /// Row `index` of the table has these values.
    Character {
        #[serde(default, skip_serializing_if = "is_none")]
        subgroup: Option<Vec<u32>>,
        index: usize,
        values: Vec<Cyclotomic>,
    },
    /// Sorted degree multiset of the table.
    Degrees { degrees: Vec<u64> },
    /// The members form a subgroup, normal or not as stated.
    Subgroup { label: String, members: Vec<u32>, normal: bool },
    /// The class function `values` on `subgroup` is irreducible and induces
    /// row `target`.
    Induction {
        subgroup: Vec<u32>,
        values: Vec<Cyclotomic>,
        target: usize,
    },
    /// Row `index` restricts to `values` on `subgroup`.
    Restriction {
        index: usize,
        subgroup: Vec<u32>,
        values: Vec<Cyclotomic>,
    },
    /// Whether the kernel of row `index` of `subgroup` contains `normal`.
    Kernel {
        #[serde(default, skip_serializing_if = "is_none")]
        subgroup: Option<Vec<u32>>,
        index: usize,
        normal: Vec<u32>,
        contains: bool,
    },
    /// `χ^π` is basis member `member` of `I_π(G)`.
    PartialLift { pi: String, index: usize, member: usize },
    /// `values` is a member of `I_π(subgroup)` inducing member `member` of
    /// `I_π(G)`.
    PartialInduction {
        pi: String,
        subgroup: Vec<u32>,
        values: Vec<Cyclotomic>,
        member: usize,
    },
    /// `μ` π-special and `λ` linear π′-special in `Irr(subgroup)`, `(μ^π)^G`
    /// is member `member` of `I_π(G)` and so is `((μλ)^G)^π`.
    ProductLift {
        pi: String,
        subgroup: Vec<u32>,
        mu: usize,
        lambda: usize,
        member: usize,
    },
    /// `M` is a Frobenius group with kernel `N`.
    Frobenius { group: Vec<u32>, kernel: Vec<u32> },
    /// Number of π-classes.
    PiClasses { pi: String, count: usize },
    /// A named predicate of one character (or basis member) and its value.
    Predicate {
        name: String,
        #[serde(default, skip_serializing_if = "is_none")]
        pi: Option<String>,
        #[serde(default, skip_serializing_if = "is_none")]
        subgroup: Option<Vec<u32>>,
        subject: usize,
        value: bool,
    },
    /// A named predicate of a subgroup (or the group) and its value.
    GroupPredicate {
        name: String,
        #[serde(default, skip_serializing_if = "is_none")]
        pi: Option<String>,
        #[serde(default, skip_serializing_if = "is_none")]
        subgroup: Option<Vec<u32>>,
        value: bool,
    },
}

impl Witness {
    pub fn note(text: impl Into<String>) -> Self {
        Witness::Note { text: text.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub target: Target,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub timing_ms: u64,
}

impl CheckReport {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}
