//! The claim registry and the single-instance check.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{
    compare, witness_for, Backing, CheckReport, ClassifierOutcome, Instance, Params, Quantity, Relation,
    Status,
};
use crate::error::{Error, Result};
use crate::generators::{bethe_closed_form, bethe_unshifted_form, kragujevac_closed_form, TreeFamilySpec};
use crate::graph::{Graph, Regularity};
use crate::indices::{forgotten, zagreb_second, Exponent, PowValue};

/// Stable identifiers of the registered claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    PowerMean,
    AlbertsonCauchy,
    ConjugateProduct,
    RootSum,
    Bernoulli,
    SigmaDominates,
    LineZagreb,
    LineZagrebPair,
    JoinIdentity,
    JoinDifferences,
    JoinDifferencesPrinted,
    PendantPath,
    PendantPathSigma,
    BranchShift,
    TreeLower,
    TreeUpper,
    SecondMinimum,
    Eccentricity,
    AlbertsonSpider,
    Limit,
    SigmaIdentity,
    BetheClosedForm,
    BetheUnshifted,
    BetheUniform,
    KragujevacClosedForm,
    KragujevacUniform,
}

const REGISTRY: [(ClaimId, &str, &str); 26] = [
    (ClaimId::PowerMean, "thm-3.1", "A_p >= m^(1/p-1/q) A_q for p > q; equality iff regular or semiregular bipartite"),
    (ClaimId::AlbertsonCauchy, "cor-3.1", "Alb <= sqrt(m (F - 2 M2)); equality iff regular or semiregular bipartite"),
    (ClaimId::ConjugateProduct, "thm-3.2", "A_p A_q >= F - 2 M2 for 1/p + 1/q = 1; equality iff p = 2, regular or semiregular bipartite"),
    (ClaimId::RootSum, "thm-3.3", "A_p <= (m-1)^(1-1/p) (A_(1/p))^(1/p) for integer p >= 1"),
    (ClaimId::Bernoulli, "thm-3.4", "A_p >= (m + p Alb)^(1/p) - m^(1/p) for p >= 1, reversed for p < 1"),
    (ClaimId::SigmaDominates, "thm-3.5", "A_p <= sqrt(F - 2 M2) for p >= 2; equality iff exactly one edge has unequal end degrees"),
    (ClaimId::LineZagreb, "thm-3.6", "A_p <= Z_p(L(G))^(1/p); equality iff star"),
    (ClaimId::LineZagrebPair, "cor-3.2", "Alb <= Z_2 - 2m and sigma <= Z_2(L(G)); equality iff star"),
    (ClaimId::JoinIdentity, "thm-3.7", "A_p^p(u v G) = Z_p(complement) + A_p^p(G)"),
    (ClaimId::JoinDifferences, "cor-3.3", "Alb(u v G) - Alb(G) = n(n-1) - 2m and sigma(u v G) - sigma(G) - Z_2 = n(n-1)^2 - 4m(n-1)"),
    (ClaimId::JoinDifferencesPrinted, "cor-3.3-printed", "Alb(u v G) - Alb(G) = n(n-1) - 2m and sigma(u v G) - sigma(G) + Z_2 = n(n-1)^2 - 4m(n-1)"),
    (ClaimId::PendantPath, "thm-3.8", "a path hung at a pendant vertex raises A_p for p < 1, keeps it for p = 1, lowers it for p > 1"),
    (ClaimId::PendantPathSigma, "cor-3.4", "a path hung at a pendant vertex strictly lowers sigma"),
    (ClaimId::BranchShift, "lemma-2.6", "moving the branch at w1 to the end of a pendant path at u strictly lowers A_p"),
    (ClaimId::TreeLower, "thm-4.1-lower", "A_p^p(T) >= 2 on trees with n >= 3; equality iff path"),
    (ClaimId::TreeUpper, "thm-4.1-upper", "A_p^p(T) <= (n-1)(n-2)^p on trees with n >= 3; equality iff star"),
    (ClaimId::SecondMinimum, "thm-4.2", "A_p^p(T) >= 6 (p >= 1) or 2^(p+1) + 2 (p < 1) on non-path trees with n >= 10"),
    (ClaimId::Eccentricity, "thm-4.3", "A_p(T) >= (Delta ecc(v)^(1-p))^(1/p) (Delta - 1) for every maximum-degree v, p >= 1"),
    (ClaimId::AlbertsonSpider, "cor-4.1", "Alb(T) >= Delta(Delta - 1); equality iff spider"),
    (ClaimId::Limit, "limit", "maxdiff <= A_p <= m^(1/p) maxdiff"),
    (ClaimId::SigmaIdentity, "sigma-identity", "sigma = F - 2 M2"),
    (ClaimId::BetheClosedForm, "thm-5.1", "closed form of A_p^p on generalized Bethe trees"),
    (ClaimId::BetheUnshifted, "thm-5.1-printed", "generalized Bethe sum with the level product running one level too far"),
    (ClaimId::BetheUniform, "cor-5.1", "A_p^p(B_(k,d)) = d + d^(p+k-1) and A_p^p(T_(k,d)) = d (d-1)^(p+k-2)"),
    (ClaimId::KragujevacClosedForm, "thm-5.2", "closed form of A_p^p on Kragujevac trees"),
    (ClaimId::KragujevacUniform, "cor-5.2", "closed form of A_p^p on Kragujevac trees with equal branches"),
];

impl ClaimId {
    pub fn all() -> impl Iterator<Item = ClaimId> {
        REGISTRY.iter().map(|&(id, _, _)| id)
    }

    fn entry(self) -> &'static (ClaimId, &'static str, &'static str) {
        REGISTRY
            .iter()
            .find(|(id, _, _)| *id == self)
            .expect("every claim is registered")
    }

    pub fn as_str(self) -> &'static str {
        self.entry().1
    }

    pub fn statement(self) -> &'static str {
        self.entry().2
    }

    /// False for claims that do not depend on an exponent.
    pub fn takes_exponent(self) -> bool {
        !matches!(
            self,
            ClaimId::AlbertsonCauchy
                | ClaimId::LineZagrebPair
                | ClaimId::JoinDifferences
                | ClaimId::JoinDifferencesPrinted
                | ClaimId::PendantPathSigma
                | ClaimId::AlbertsonSpider
                | ClaimId::SigmaIdentity
        )
    }

    /// Claims about closed forms, evaluated on family instances only.
    pub fn needs_family(self) -> bool {
        matches!(
            self,
            ClaimId::BetheClosedForm
                | ClaimId::BetheUnshifted
                | ClaimId::BetheUniform
                | ClaimId::KragujevacClosedForm
                | ClaimId::KragujevacUniform
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        REGISTRY
            .iter()
            .find(|(_, name, _)| *name == s)
            .map(|&(id, _, _)| id)
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ClaimId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Which of the three hypothesis sets of the branch shift is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaHypothesis {
    /// `d(u) > d(u_i)` for every other neighbour `u_i`.
    I,
    /// `p >= 1` and `d(u) >= d(u_i)`.
    II,
    /// `Delta = d(u) = 3`.
    III,
}

impl LemmaHypothesis {
    pub const ALL: [LemmaHypothesis; 3] = [LemmaHypothesis::I, LemmaHypothesis::II, LemmaHypothesis::III];
}

/// A branch-shift configuration: the branch at `w1` moves from `hub` to the
/// far end of the pendant path `path` hanging from `hub`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LemmaConfiguration {
    pub hub: usize,
    pub w1: usize,
    pub path: Vec<usize>,
    pub hypothesis: LemmaHypothesis,
}

/// Every branch-shift configuration of `g`, once per hypothesis set.
///
/// The hub has degree at least three, `path` is a maximal pendant path
/// starting at a neighbour of the hub, and `w1` is another neighbour of
/// degree at most two.
pub fn lemma_configurations(g: &Graph) -> Vec<LemmaConfiguration> {
    let mut out = Vec::new();
    for hub in 0..g.n() {
        if g.degree(hub) < 3 {
            continue;
        }
        for &v1 in g.neighbors(hub) {
            let Some(path) = pendant_path(g, hub, v1) else {
                continue;
            };
            for &w1 in g.neighbors(hub) {
                if w1 == v1 || g.degree(w1) > 2 || path.contains(&w1) {
                    continue;
                }
                for hypothesis in LemmaHypothesis::ALL {
                    out.push(LemmaConfiguration {
                        hub,
                        w1,
                        path: path.clone(),
                        hypothesis,
                    });
                }
            }
        }
    }
    out
}

fn pendant_path(g: &Graph, hub: usize, first: usize) -> Option<Vec<usize>> {
    let mut path = vec![first];
    let (mut prev, mut cur) = (hub, first);
    while g.degree(cur) == 2 {
        let next = g.neighbors(cur).iter().copied().find(|&x| x != prev)?;
        if next == hub || path.len() > g.n() {
            return None;
        }
        path.push(next);
        prev = cur;
        cur = next;
    }
    (g.degree(cur) == 1).then_some(path)
}

fn integer(p: f64) -> Option<u32> {
    (p >= 1.0 && p.fract() == 0.0 && p <= u32::MAX as f64).then_some(p as u32)
}

/// `base^p`, exact for integer `p`; `0^p = 0` and `x^0 = 1`.
pub(crate) fn power(base: u64, p: f64) -> Quantity {
    if p == 0.0 {
        return Quantity::exact(1);
    }
    match integer(p) {
        Some(k) => Quantity::Exact(BigInt::from(base).pow(k)),
        None if base == 0 => Quantity::Float(0.0),
        None => Quantity::Float((base as f64).powf(p)),
    }
}

/// `Σ x^p`, exact for integer `p`.
pub(crate) fn power_sum(terms: impl IntoIterator<Item = u64>, p: f64) -> Quantity {
    terms
        .into_iter()
        .fold(Quantity::exact(0), |acc, x| acc + power(x, p))
}

pub(crate) fn edge_differences(g: &Graph) -> Vec<u64> {
    g.edges()
        .map(|(u, v)| g.degree(u).abs_diff(g.degree(v)) as u64)
        .collect()
}

fn degree_terms(g: &Graph) -> Vec<u64> {
    g.degrees().into_iter().map(|d| d as u64).collect()
}

/// `(Σ x^p)^(1/p)` in floating point, scaled by the largest term.
fn norm(terms: &[u64], p: f64) -> f64 {
    let top = terms.iter().copied().max().unwrap_or(0);
    if top == 0 {
        return 0.0;
    }
    let top = top as f64;
    let scaled: f64 = terms.iter().map(|&x| (x as f64 / top).powf(p)).sum();
    top * scaled.powf(1.0 / p)
}

impl Quantity {
    fn pow(self, k: u32) -> Quantity {
        match self {
            Quantity::Exact(v) => Quantity::Exact(v.pow(k)),
            Quantity::Float(v) => Quantity::Float(v.powi(k as i32)),
        }
    }
}

macro_rules! quantity_op {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Quantity {
            type Output = Quantity;

            fn $method(self, rhs: Quantity) -> Quantity {
                match (self, rhs) {
                    (Quantity::Exact(a), Quantity::Exact(b)) => Quantity::Exact(a $op b),
                    (a, b) => Quantity::Float(a.as_f64() $op b.as_f64()),
                }
            }
        }
    };
}

quantity_op!(Add, add, +);
quantity_op!(Sub, sub, -);
quantity_op!(Mul, mul, *);

impl From<PowValue> for Quantity {
    fn from(v: PowValue) -> Self {
        match v {
            PowValue::Exact(x) => Quantity::exact(x),
            PowValue::Float(x) => Quantity::Float(x),
        }
    }
}

fn int(v: impl Into<BigInt>) -> Quantity {
    Quantity::exact(v)
}

/// `F - 2 M2`.
fn sigma_from_zagreb(g: &Graph) -> Quantity {
    int(forgotten(g)) - int(2u64 * zagreb_second(g))
}

fn albertson_sum(g: &Graph) -> Quantity {
    int(edge_differences(g).iter().sum::<u64>())
}

fn is_star(g: &Graph) -> bool {
    g.n() >= 2 && g.is_tree() && g.degree_summary().max == g.n() - 1
}

fn is_path(g: &Graph) -> bool {
    g.is_tree() && g.degree_summary().max <= 2
}

fn regular_or_semiregular(g: &Graph) -> Result<bool> {
    Ok(matches!(
        g.classify_regularity()?,
        Regularity::Regular | Regularity::SemiregularBipartite
    ))
}

struct Part {
    label: String,
    relation: Relation,
    lhs: Quantity,
    rhs: Quantity,
}

impl Part {
    fn new(label: impl Into<String>, relation: Relation, lhs: Quantity, rhs: Quantity) -> Self {
        Part {
            label: label.into(),
            relation,
            lhs,
            rhs,
        }
    }

    fn single(relation: Relation, lhs: Quantity, rhs: Quantity) -> Vec<Part> {
        vec![Part::new("", relation, lhs, rhs)]
    }

    fn status(&self) -> Status {
        self.relation.status(compare(&self.lhs, &self.rhs))
    }

    fn slack(&self) -> f64 {
        let (a, b) = (self.lhs.as_f64(), self.rhs.as_f64());
        (a - b).abs() / (1.0 + a.abs() + b.abs())
    }
}

enum Outcome {
    Skipped(String),
    Evaluated {
        parts: Vec<Part>,
        /// Whether the claim's own equality characterization predicts
        /// equality on this instance.
        predicts_equality: Option<bool>,
        note: Option<String>,
    },
}

fn skip(reason: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Skipped(reason.into()))
}

fn evaluated(parts: Vec<Part>, predicts_equality: Option<bool>) -> Result<Outcome> {
    Ok(Outcome::Evaluated {
        parts,
        predicts_equality,
        note: None,
    })
}

fn exponent(params: &Params, claim: ClaimId) -> Result<f64> {
    let p = params
        .p
        .ok_or_else(|| Error::InvalidParameter(format!("{claim} needs an exponent p")))?;
    Ok(Exponent::new(p)?.get())
}

/// Evaluates one claim on one instance.
pub fn check(claim_id: &str, instance: &Instance, params: &Params) -> Result<CheckReport> {
    let claim: ClaimId = claim_id.parse()?;
    let graph = instance.graph()?;
    let outcome = evaluate(claim, instance, &graph, params)?;
    let mut report = CheckReport {
        claim_id: claim.as_str().to_string(),
        instance: instance.describe(),
        params: params.clone(),
        status: Status::PreconditionSkipped,
        relation: None,
        lhs: None,
        rhs: None,
        backing: Backing::None,
        witness: None,
        classifier: None,
        note: None,
    };
    let (parts, predicts_equality, note) = match outcome {
        Outcome::Skipped(reason) => {
            report.note = Some(reason);
            return Ok(report);
        }
        Outcome::Evaluated {
            parts,
            predicts_equality,
            note,
        } => (parts, predicts_equality, note),
    };
    let statuses: Vec<Status> = parts.iter().map(Part::status).collect();
    let status = if statuses.contains(&Status::Violated) {
        Status::Violated
    } else if statuses.iter().all(|&s| s == Status::HoldsEquality) {
        Status::HoldsEquality
    } else {
        Status::HoldsStrict
    };
    let headline = statuses
        .iter()
        .position(|&s| s == Status::Violated)
        .unwrap_or_else(|| {
            (0..parts.len())
                .min_by(|&a, &b| parts[a].slack().total_cmp(&parts[b].slack()))
                .unwrap_or(0)
        });
    let exact = parts.iter().all(|p| p.lhs.is_exact() && p.rhs.is_exact());
    let mut notes: Vec<String> = note.into_iter().collect();
    if parts.len() > 1 {
        notes.extend(parts.iter().zip(&statuses).map(|(p, s)| {
            format!("{}: {} {} {} ({s})", p.label, p.lhs, p.relation.symbol(), p.rhs)
        }));
    }
    let head = parts.into_iter().nth(headline).expect("at least one part");
    report.status = status;
    report.relation = Some(head.relation);
    report.lhs = Some(head.lhs);
    report.rhs = Some(head.rhs);
    report.backing = if exact { Backing::Exact } else { Backing::Float };
    report.classifier = predicts_equality.map(|predicts| ClassifierOutcome {
        predicts_equality: predicts,
        agrees: predicts == (status == Status::HoldsEquality),
    });
    if matches!(status, Status::Violated | Status::HoldsEquality) {
        report.witness = witness_for(&graph);
    }
    if !notes.is_empty() {
        report.note = Some(notes.join("; "));
    }
    Ok(report)
}

fn evaluate(claim: ClaimId, instance: &Instance, g: &Graph, params: &Params) -> Result<Outcome> {
    if claim.needs_family() {
        let Instance::Family(spec) = instance else {
            return skip("closed forms are checked on family instances");
        };
        return evaluate_family(claim, spec, g, exponent(params, claim)?);
    }
    if claim == ClaimId::SigmaIdentity {
        let sigma = power_sum(edge_differences(g), 2.0);
        return evaluated(Part::single(Relation::Equal, sigma, sigma_from_zagreb(g)), None);
    }
    if !g.is_connected() {
        return skip("graph is disconnected");
    }
    let n = g.n() as u64;
    let m = g.m() as u64;
    let diffs = edge_differences(g);
    match claim {
        ClaimId::PowerMean => {
            let p = exponent(params, claim)?;
            let q = params
                .q
                .ok_or_else(|| Error::InvalidParameter("thm-3.1 needs a second exponent q".into()))?;
            let q = Exponent::new(q)?.get();
            if p <= q {
                return skip(format!("needs p > q, got p = {p}, q = {q}"));
            }
            if m == 0 {
                return skip("graph has no edges");
            }
            let parts = match (integer(p), integer(q)) {
                // S_p^q m^(p-q) >= S_q^p.
                (Some(a), Some(b)) => Part::single(
                    Relation::AtLeast,
                    power_sum(diffs.iter().copied(), p).pow(b) * int(m).pow(a - b),
                    power_sum(diffs.iter().copied(), q).pow(a),
                ),
                _ => Part::single(
                    Relation::AtLeast,
                    Quantity::Float(norm(&diffs, p)),
                    Quantity::Float((m as f64).powf(1.0 / p - 1.0 / q) * norm(&diffs, q)),
                ),
            };
            evaluated(parts, Some(regular_or_semiregular(g)?))
        }
        ClaimId::AlbertsonCauchy => {
            let alb = albertson_sum(g);
            let parts = Part::single(Relation::AtMost, alb.clone() * alb, int(m) * sigma_from_zagreb(g));
            evaluated(parts, Some(regular_or_semiregular(g)?))
        }
        ClaimId::ConjugateProduct => {
            let p = exponent(params, claim)?;
            if p <= 1.0 {
                return skip(format!("conjugate exponent needs p > 1, got {p}"));
            }
            let lhs = if p == 2.0 {
                power_sum(diffs.iter().copied(), 2.0)
            } else {
                let q = p / (p - 1.0);
                Quantity::Float(norm(&diffs, p) * norm(&diffs, q))
            };
            let predicts = p == 2.0 || regular_or_semiregular(g)?;
            evaluated(Part::single(Relation::AtLeast, lhs, sigma_from_zagreb(g)), Some(predicts))
        }
        ClaimId::RootSum => {
            let p = exponent(params, claim)?;
            let Some(k) = integer(p) else {
                return skip(format!("needs an integer exponent, got {p}"));
            };
            if m == 0 {
                return skip("graph has no edges");
            }
            let lhs = power_sum(diffs.iter().copied(), p);
            let rhs = if k == 1 {
                lhs.clone()
            } else {
                let root_sum: f64 = diffs.iter().map(|&x| (x as f64).powf(1.0 / p)).sum();
                Quantity::Float(((m - 1) as f64).powi(k as i32 - 1) * root_sum.powi(k as i32))
            };
            evaluated(Part::single(Relation::AtMost, lhs, rhs), None)
        }
        ClaimId::Bernoulli => {
            let p = exponent(params, claim)?;
            if m == 0 {
                return skip("graph has no edges");
            }
            let alb = diffs.iter().sum::<u64>();
            let relation = if p >= 1.0 { Relation::AtLeast } else { Relation::AtMost };
            let (lhs, rhs) = if p == 1.0 {
                (int(alb), int(m + alb) - int(m))
            } else {
                let rhs = (m as f64 + p * alb as f64).powf(1.0 / p) - (m as f64).powf(1.0 / p);
                (Quantity::Float(norm(&diffs, p)), Quantity::Float(rhs))
            };
            evaluated(Part::single(relation, lhs, rhs), None)
        }
        ClaimId::SigmaDominates => {
            let p = exponent(params, claim)?;
            if p < 2.0 {
                return skip(format!("needs p >= 2, got {p}"));
            }
            let sigma = sigma_from_zagreb(g);
            let (lhs, rhs) = match integer(p) {
                Some(k) => (power_sum(diffs.iter().copied(), p).pow(2), sigma.pow(k)),
                None => (Quantity::Float(norm(&diffs, p)), Quantity::Float(sigma.as_f64().sqrt())),
            };
            let single = diffs.iter().filter(|&&x| x != 0).count() == 1;
            evaluated(Part::single(Relation::AtMost, lhs, rhs), Some(single))
        }
        ClaimId::LineZagreb => {
            let p = exponent(params, claim)?;
            if m == 0 {
                return skip("graph has no edges");
            }
            let line = g.line_graph()?;
            let parts = Part::single(
                Relation::AtMost,
                power_sum(diffs, p),
                power_sum(degree_terms(&line), p),
            );
            evaluated(parts, Some(is_star(g)))
        }
        ClaimId::LineZagrebPair => {
            if m == 0 {
                return skip("graph has no edges");
            }
            let line = g.line_graph()?;
            let parts = vec![
                Part::new(
                    "alb",
                    Relation::AtMost,
                    albertson_sum(g),
                    power_sum(degree_terms(g), 2.0) - int(2 * m),
                ),
                Part::new(
                    "sigma",
                    Relation::AtMost,
                    power_sum(diffs, 2.0),
                    power_sum(degree_terms(&line), 2.0),
                ),
            ];
            evaluated(parts, Some(is_star(g)))
        }
        ClaimId::JoinIdentity => {
            let p = exponent(params, claim)?;
            let joined = g.join_apex();
            let parts = Part::single(
                Relation::Equal,
                power_sum(edge_differences(&joined), p),
                power_sum(degree_terms(&g.complement()), p) + power_sum(diffs, p),
            );
            evaluated(parts, None)
        }
        ClaimId::JoinDifferences | ClaimId::JoinDifferencesPrinted => {
            let joined = g.join_apex();
            let z2 = power_sum(degree_terms(g), 2.0);
            let sigma_gain = power_sum(edge_differences(&joined), 2.0) - power_sum(diffs, 2.0);
            let sigma_lhs = if claim == ClaimId::JoinDifferences {
                sigma_gain - z2
            } else {
                sigma_gain + z2
            };
            let parts = vec![
                Part::new(
                    "alb",
                    Relation::Equal,
                    albertson_sum(&joined) - albertson_sum(g),
                    int(n * n.saturating_sub(1)) - int(2 * m),
                ),
                Part::new(
                    "sigma",
                    Relation::Equal,
                    sigma_lhs,
                    int(n * n.saturating_sub(1).pow(2)) - int(4 * m * n.saturating_sub(1)),
                ),
            ];
            evaluated(parts, None)
        }
        ClaimId::PendantPath | ClaimId::PendantPathSigma => {
            let p = if claim == ClaimId::PendantPath {
                exponent(params, claim)?
            } else {
                2.0
            };
            let anchor = params
                .anchor
                .ok_or_else(|| Error::InvalidParameter(format!("{claim} needs an anchor vertex")))?;
            let t = params.t.unwrap_or(1);
            let attached = g.attach_pendant_path(anchor, t)?;
            if g.n() < 3 {
                return skip("needs n >= 3");
            }
            if !attached.anchor_was_pendant {
                return skip(format!("anchor {anchor} is not a pendant vertex"));
            }
            let relation = if claim == ClaimId::PendantPathSigma || p > 1.0 {
                Relation::Less
            } else if p < 1.0 {
                Relation::Greater
            } else {
                Relation::Equal
            };
            let neighbour = g.neighbors(anchor)[0];
            let note = (g.degree(neighbour) == 2)
                .then(|| format!("neighbour {neighbour} of the anchor has degree 2"));
            Ok(Outcome::Evaluated {
                parts: Part::single(
                    relation,
                    power_sum(edge_differences(&attached.graph), p),
                    power_sum(diffs, p),
                ),
                predicts_equality: None,
                note,
            })
        }
        ClaimId::BranchShift => {
            let p = exponent(params, claim)?;
            let config = params
                .shift
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("lemma-2.6 needs a shift configuration".into()))?;
            let shifted = match g.relocate_branch(config.hub, config.w1, &config.path) {
                Ok(h) => h,
                Err(Error::Precondition(reason)) => return skip(reason),
                Err(e) => return Err(e),
            };
            let du = g.degree(config.hub);
            let others: Vec<usize> = g
                .neighbors(config.hub)
                .iter()
                .filter(|&&x| x != config.w1 && x != config.path[0])
                .map(|&x| g.degree(x))
                .collect();
            let met = match config.hypothesis {
                LemmaHypothesis::I => others.iter().all(|&d| d < du),
                LemmaHypothesis::II => p >= 1.0 && others.iter().all(|&d| d <= du),
                LemmaHypothesis::III => du == 3 && g.degree_summary().max == 3,
            };
            if !met {
                return skip(format!("hypothesis {:?} does not hold", config.hypothesis));
            }
            let parts = Part::single(
                Relation::Greater,
                power_sum(diffs, p),
                power_sum(edge_differences(&shifted), p),
            );
            evaluated(parts, None)
        }
        ClaimId::TreeLower | ClaimId::TreeUpper | ClaimId::SecondMinimum | ClaimId::Eccentricity | ClaimId::AlbertsonSpider => {
            if !g.is_tree() {
                return skip("graph is not a tree");
            }
            evaluate_tree(claim, g, &diffs, params)
        }
        ClaimId::Limit => {
            let p = Exponent::new(params.p.unwrap_or(64.0))?.get();
            let top = g.max_edge_difference() as f64;
            let value = norm(&diffs, p);
            let parts = vec![
                Part::new("lower", Relation::AtLeast, Quantity::Float(value), Quantity::Float(top)),
                Part::new(
                    "upper",
                    Relation::AtMost,
                    Quantity::Float(value),
                    Quantity::Float((m as f64).powf(1.0 / p) * top),
                ),
            ];
            evaluated(parts, None)
        }
        ClaimId::SigmaIdentity
        | ClaimId::BetheClosedForm
        | ClaimId::BetheUnshifted
        | ClaimId::BetheUniform
        | ClaimId::KragujevacClosedForm
        | ClaimId::KragujevacUniform => unreachable!("handled above"),
    }
}

fn evaluate_tree(claim: ClaimId, g: &Graph, diffs: &[u64], params: &Params) -> Result<Outcome> {
    let n = g.n() as u64;
    let max_degree = g.degree_summary().max as u64;
    match claim {
        ClaimId::TreeLower | ClaimId::TreeUpper => {
            let p = exponent(params, claim)?;
            if n < 3 {
                return skip("needs n >= 3");
            }
            let value = power_sum(diffs.iter().copied(), p);
            if claim == ClaimId::TreeLower {
                evaluated(Part::single(Relation::AtLeast, value, int(2)), Some(is_path(g)))
            } else {
                let bound = int(n - 1) * power(n - 2, p);
                evaluated(Part::single(Relation::AtMost, value, bound), Some(is_star(g)))
            }
        }
        ClaimId::SecondMinimum => {
            let p = exponent(params, claim)?;
            if n < 10 {
                return skip("needs n >= 10");
            }
            if is_path(g) {
                return skip("the path is excluded");
            }
            let bound = if p >= 1.0 {
                int(6)
            } else {
                Quantity::Float(2f64.powf(p + 1.0) + 2.0)
            };
            let legs = g.spider_legs().unwrap_or_default();
            let predicts = if p > 1.0 {
                legs.len() == 3 && legs.iter().all(|&l| l >= 2)
            } else if p == 1.0 {
                legs.len() == 3
            } else {
                legs == [1, 1, g.n() - 3]
            };
            let value = power_sum(diffs.iter().copied(), p);
            evaluated(Part::single(Relation::AtLeast, value, bound), Some(predicts))
        }
        ClaimId::Eccentricity => {
            let p = exponent(params, claim)?;
            if p < 1.0 {
                return skip(format!("needs p >= 1, got {p}"));
            }
            if n < 2 {
                return skip("needs n >= 2");
            }
            let ecc = g.eccentricities()?;
            let value = power_sum(diffs.iter().copied(), p);
            let target = int(max_degree) * power(max_degree - 1, p);
            let parts = (0..g.n())
                .filter(|&v| g.degree(v) as u64 == max_degree)
                .map(|v| {
                    let e = ecc.ecc[v] as u64;
                    let label = format!("v={v}");
                    match integer(p) {
                        // S_p e^(p-1) >= Delta (Delta - 1)^p.
                        Some(k) => Part::new(
                            label,
                            Relation::AtLeast,
                            value.clone() * int(e).pow(k - 1),
                            target.clone(),
                        ),
                        None => Part::new(
                            label,
                            Relation::AtLeast,
                            value.clone(),
                            Quantity::Float((e as f64).powf(1.0 - p) * target.as_f64()),
                        ),
                    }
                })
                .collect();
            evaluated(parts, None)
        }
        ClaimId::AlbertsonSpider => {
            let bound = int(max_degree * max_degree.saturating_sub(1));
            evaluated(
                Part::single(Relation::AtLeast, int(diffs.iter().sum::<u64>()), bound),
                Some(g.is_spider()),
            )
        }
        _ => unreachable!("tree claims only"),
    }
}

fn evaluate_family(claim: ClaimId, spec: &TreeFamilySpec, g: &Graph, p: f64) -> Result<Outcome> {
    let exp = Exponent::new(p)?;
    let direct = power_sum(edge_differences(g), p);
    let rhs = match claim {
        ClaimId::BetheClosedForm | ClaimId::BetheUnshifted => {
            let Some(levels) = spec.bethe_levels() else {
                return skip("not a generalized Bethe tree");
            };
            let form = if claim == ClaimId::BetheClosedForm {
                bethe_closed_form(&levels, exp)?
            } else {
                bethe_unshifted_form(&levels, exp)?
            };
            Quantity::from(form.pow)
        }
        ClaimId::BetheUniform => match *spec {
            TreeFamilySpec::Bethe { k, d } => {
                if k < 3 {
                    return skip("needs k >= 3; with k = 2 there is no inner level");
                }
                let d = d as u64;
                int(d) + power(d, p + k as f64 - 1.0)
            }
            TreeFamilySpec::Dendrimer { k, d } => {
                let d = d as u64;
                int(d) * power(d - 1, p + k as f64 - 2.0)
            }
            _ => return skip("not a Bethe tree or dendrimer"),
        },
        ClaimId::KragujevacClosedForm => {
            let TreeFamilySpec::Kragujevac { branches } = spec else {
                return skip("not a Kragujevac tree");
            };
            Quantity::from(kragujevac_closed_form(branches, exp)?.pow)
        }
        ClaimId::KragujevacUniform => {
            let TreeFamilySpec::Kragujevac { branches } = spec else {
                return skip("not a Kragujevac tree");
            };
            if branches.windows(2).any(|w| w[0] != w[1]) {
                return skip("branches are not all equal");
            }
            let d = branches.len() as u64;
            let k = branches[0] as u64;
            let n = g.n() as u64;
            int((n - d - 1) / 2) + int(d * k) * power(k - 1, p) + int(d) * power((k + 1).abs_diff(d), p)
        }
        _ => unreachable!("family claims only"),
    };
    evaluated(Part::single(Relation::Equal, direct, rhs), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_path, make_spider, make_star};

    fn graph(n: usize, edges: &[(usize, usize)]) -> Instance {
        Instance::Graph(Graph::new(n, edges).unwrap())
    }

    fn family(s: &str) -> Instance {
        Instance::Family(s.parse().unwrap())
    }

    #[test]
    fn registry_round_trips() {
        for id in ClaimId::all() {
            assert_eq!(id.as_str().parse::<ClaimId>().unwrap(), id);
        }
        assert_eq!(ClaimId::all().count(), 26);
        assert!(matches!("thm-9.9".parse::<ClaimId>(), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn join_identity_on_p3() {
        let r = check("thm-3.7", &make_path(3).unwrap().into(), &Params::with_p(2.0)).unwrap();
        assert_eq!(r.status, Status::HoldsEquality);
        assert_eq!(r.lhs, Some(Quantity::exact(4)));
        assert_eq!(r.rhs, Some(Quantity::exact(4)));
        assert_eq!(r.backing, Backing::Exact);
        assert!(r.witness.is_some());
    }

    #[test]
    fn single_discrepant_edge_meets_sigma_bound() {
        // K4 minus an edge, a vertex joined to both ends of the gap, and a
        // pendant at that vertex: only the pendant edge has unequal degrees.
        let h = graph(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)]);
        let r = check("thm-3.5", &h, &Params::with_p(3.0)).unwrap();
        assert_eq!(r.status, Status::HoldsEquality);
        assert_eq!(r.lhs, Some(Quantity::exact(64)));
        assert!(r.classifier.unwrap().agrees);
    }

    #[test]
    fn pendant_path_on_claw_keeps_albertson() {
        let claw = make_star(4).unwrap().into();
        let params = Params {
            p: Some(1.0),
            t: Some(1),
            anchor: Some(1),
            ..Params::default()
        };
        let r = check("thm-3.8", &claw, &params).unwrap();
        assert_eq!(r.status, Status::HoldsEquality);
        assert_eq!(r.lhs, Some(Quantity::exact(6)));
        assert_eq!(r.rhs, Some(Quantity::exact(6)));
    }

    #[test]
    fn pendant_path_next_to_degree_two_is_neutral() {
        let params = Params {
            p: Some(2.0),
            t: Some(1),
            anchor: Some(0),
            ..Params::default()
        };
        let r = check("thm-3.8", &make_path(4).unwrap().into(), &params).unwrap();
        assert_eq!(r.status, Status::Violated);
        assert_eq!(r.lhs, r.rhs);
        let r = check("thm-3.8", &make_path(4).unwrap().into(), &Params { anchor: Some(1), ..params }).unwrap();
        assert_eq!(r.status, Status::PreconditionSkipped);
    }

    #[test]
    fn spider_meets_albertson_bound() {
        let r = check("cor-4.1", &make_spider(&[2, 2, 2]).unwrap().into(), &Params::default()).unwrap();
        assert_eq!(r.status, Status::HoldsEquality);
        assert_eq!(r.lhs, Some(Quantity::exact(6)));
        assert!(r.classifier.unwrap().agrees);
    }

    #[test]
    fn join_differences_sign() {
        let p3: Instance = make_path(3).unwrap().into();
        let fixed = check("cor-3.3", &p3, &Params::default()).unwrap();
        assert_eq!(fixed.status, Status::HoldsEquality);
        let printed = check("cor-3.3-printed", &p3, &Params::default()).unwrap();
        assert_eq!(printed.status, Status::Violated);
        assert_eq!(printed.lhs, Some(Quantity::exact(8)));
        assert_eq!(printed.rhs, Some(Quantity::exact(-4)));
    }

    #[test]
    fn constant_difference_tree_breaks_power_mean_characterization() {
        let spider = make_spider(&[2, 2, 2]).unwrap().into();
        let r = check("thm-3.1", &spider, &Params::p_q(2.0, 1.0)).unwrap();
        assert_eq!(r.status, Status::HoldsEquality);
        assert!(r.classifier_disagrees());
    }

    #[test]
    fn branch_shift_example() {
        // Spider (1,1,2): centre 0, leaves 1 and 2, long leg 3-4.
        let g = make_spider(&[1, 1, 2]).unwrap();
        let configs = lemma_configurations(&g);
        assert!(!configs.is_empty());
        let params = Params {
            p: Some(1.0),
            shift: Some(LemmaConfiguration {
                hub: 0,
                w1: 1,
                path: vec![3, 4],
                hypothesis: LemmaHypothesis::III,
            }),
            ..Params::default()
        };
        let r = check("lemma-2.6", &g.into(), &params).unwrap();
        assert_eq!(r.status, Status::HoldsStrict);
        assert_eq!(r.rhs, Some(Quantity::exact(2)));
    }

    #[test]
    fn family_closed_forms() {
        let r = check("cor-5.1", &family("bethe:k=3,d=2"), &Params::with_p(1.0)).unwrap();
        assert_eq!(r.status, Status::HoldsEquality);
        assert_eq!(r.lhs, Some(Quantity::exact(10)));
        let r = check("thm-5.2", &family("krag:2,2"), &Params::with_p(1.0)).unwrap();
        assert_eq!(r.status, Status::HoldsEquality);
        assert_eq!(r.lhs, Some(Quantity::exact(10)));
        let r = check("thm-5.1", &family("gbethe:3,4,2"), &Params::with_p(0.5)).unwrap();
        assert_eq!(r.status, Status::HoldsEquality);
        assert_eq!(r.backing, Backing::Float);
        let r = check("thm-5.1", &make_path(4).unwrap().into(), &Params::with_p(1.0)).unwrap();
        assert_eq!(r.status, Status::PreconditionSkipped);
    }

    #[test]
    fn limit_bracket_on_star() {
        let r = check("limit", &make_star(10).unwrap().into(), &Params::with_p(64.0)).unwrap();
        assert_ne!(r.status, Status::Violated);
    }

    #[test]
    fn missing_parameters_are_errors() {
        let p4: Instance = make_path(4).unwrap().into();
        assert!(check("thm-3.6", &p4, &Params::default()).is_err());
        assert!(check("thm-3.1", &p4, &Params::with_p(2.0)).is_err());
        assert!(check("thm-3.6", &p4, &Params::with_p(0.0)).is_err());
    }

    #[test]
    fn reports_replay() {
        let r = check("thm-3.4", &make_spider(&[1, 2, 3]).unwrap().into(), &Params::with_p(0.5)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.replay().unwrap(), r);
    }
}
