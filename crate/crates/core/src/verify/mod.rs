//! Executable registry of the bounds and identities on the general Albertson
//! index, with batch sweeps over enumerated universes and extremal scans over
//! all trees of an order.
//!
//! Each check evaluates a left-hand and right-hand side, compares them under
//! the claim's relation and, where the claim characterizes its equality
//! case, records whether that characterization agreed with what was
//! observed. Integer exponents are compared with exact big-integer
//! arithmetic; everything else with the relative tolerance [`tolerance`].

mod claims;
mod findings;
mod scan;
mod sweep;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::canon::{canonical_code, MAX_CANON_ORDER};
use crate::error::{Error, Result};
use crate::generators::TreeFamilySpec;
use crate::graph::Graph;
use crate::graph6;

pub use claims::{check, lemma_configurations, ClaimId, LemmaConfiguration, LemmaHypothesis};
pub use findings::{findings, findings_for, Finding};
pub use scan::{extremal_scan, second_minimum_assessment, Attainer, ExtremalScanResult, SecondMinimumAssessment};
pub use sweep::{sweep, ParamPoint, SweepConfig, SweepResult, SweepSummary, Universe};

/// Relative tolerance factor for floating-point comparisons.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

/// `1e-9 * (1 + |lhs| + |rhs|)`.
pub fn tolerance(lhs: f64, rhs: f64) -> f64 {
    RELATIVE_TOLERANCE * (1.0 + lhs.abs() + rhs.abs())
}

/// One side of a comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Exact(BigInt),
    Float(f64),
}

impl Quantity {
    pub fn exact(v: impl Into<BigInt>) -> Self {
        Quantity::Exact(v.into())
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Quantity::Exact(v) => v.to_string().parse().unwrap_or(f64::NAN),
            Quantity::Float(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Quantity::Exact(_))
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Quantity::Exact(v) => match i64::try_from(v) {
                Ok(small) => s.serialize_i64(small),
                Err(_) => s.serialize_str(&v.to_string()),
            },
            Quantity::Float(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Signed(i64),
            Unsigned(u64),
            Float(f64),
            Digits(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Signed(v) => Quantity::exact(v),
            Raw::Unsigned(v) => Quantity::exact(v),
            Raw::Float(v) => Quantity::Float(v),
            Raw::Digits(s) => Quantity::Exact(s.parse().map_err(serde::de::Error::custom)?),
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(v) => write!(f, "{v}"),
            Quantity::Float(v) => f.write_str(&crate::format::significant(*v)),
        }
    }
}

/// Exact when both sides are exact; otherwise within [`tolerance`].
pub fn compare(lhs: &Quantity, rhs: &Quantity) -> Ordering {
    match (lhs, rhs) {
        (Quantity::Exact(a), Quantity::Exact(b)) => a.cmp(b),
        _ => {
            let (a, b) = (lhs.as_f64(), rhs.as_f64());
            if (a - b).abs() <= tolerance(a, b) {
                Ordering::Equal
            } else if a < b {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}

/// How the two sides of a claim are meant to relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `lhs >= rhs`.
    AtLeast,
    /// `lhs <= rhs`.
    AtMost,
    /// `lhs > rhs`.
    Greater,
    /// `lhs < rhs`.
    Less,
    /// `lhs == rhs`.
    Equal,
}

impl Relation {
    pub fn status(self, ord: Ordering) -> Status {
        use Ordering::*;
        match (self, ord) {
            (Relation::AtLeast | Relation::AtMost | Relation::Equal, Equal) => Status::HoldsEquality,
            (Relation::AtLeast | Relation::Greater, Greater) => Status::HoldsStrict,
            (Relation::AtMost | Relation::Less, Less) => Status::HoldsStrict,
            _ => Status::Violated,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Greater => ">",
            Relation::Less => "<",
            Relation::Equal => "==",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsStrict,
    HoldsEquality,
    PreconditionSkipped,
    Violated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::HoldsStrict => "holds-strict",
            Status::HoldsEquality => "holds-equality",
            Status::PreconditionSkipped => "precondition-skipped",
            Status::Violated => "violated",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The object a claim is evaluated on.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Graph(Graph),
    Family(TreeFamilySpec),
}

impl Instance {
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Instance::Graph(g) => Ok(g.clone()),
            Instance::Family(spec) => spec.build(),
        }
    }

    pub fn describe(&self) -> InstanceRecord {
        match self {
            Instance::Graph(g) => InstanceRecord {
                graph6: Some(graph6::encode(g)),
                family: None,
            },
            Instance::Family(spec) => InstanceRecord {
                graph6: spec.build().ok().map(|g| graph6::encode(&g)),
                family: Some(spec.to_string()),
            },
        }
    }
}

impl From<Graph> for Instance {
    fn from(g: Graph) -> Self {
        Instance::Graph(g)
    }
}

impl From<TreeFamilySpec> for Instance {
    fn from(spec: TreeFamilySpec) -> Self {
        Instance::Family(spec)
    }
}

/// Serializable instance reference; enough to replay a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

impl InstanceRecord {
    pub fn to_instance(&self) -> Result<Instance> {
        if let Some(family) = &self.family {
            return Ok(Instance::Family(family.parse()?));
        }
        match &self.graph6 {
            Some(s) => Ok(Instance::Graph(graph6::decode(s)?)),
            None => Err(Error::InvalidParameter("report has no instance".into())),
        }
    }
}

/// Claim parameters. Unused fields stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Second exponent of the power-mean comparison.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    /// Length of an attached pendant path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    /// Pendant vertex receiving the path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<LemmaConfiguration>,
}

impl Params {
    pub fn with_p(p: f64) -> Self {
        Params {
            p: Some(p),
            ..Params::default()
        }
    }

    pub fn p_q(p: f64, q: f64) -> Self {
        Params {
            p: Some(p),
            q: Some(q),
            ..Params::default()
        }
    }
}

/// Agreement between a claim's stated equality characterization and the
/// observed outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierOutcome {
    /// The characterization predicts equality on this instance.
    pub predicts_equality: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub claim_id: String,
    pub instance: InstanceRecord,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<Relation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Quantity>,
    pub backing: Backing,
    /// Canonical code of the graph, for violated and equality reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classifier: Option<ClassifierOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backing {
    Exact,
    Float,
    None,
}

impl CheckReport {
    /// Re-runs the check described by this report.
    pub fn replay(&self) -> Result<CheckReport> {
        check(&self.claim_id, &self.instance.to_instance()?, &self.params)
    }

    pub fn classifier_disagrees(&self) -> bool {
        self.classifier.is_some_and(|c| !c.agrees)
    }
}

pub(crate) fn witness_for(g: &Graph) -> Option<String> {
    (g.n() <= MAX_CANON_ORDER)
        .then(|| canonical_code(g).ok().map(|c| c.to_hex()))
        .flatten()
}
