//! Batch checks of one claim over a universe of instances and exponents.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::claims::lemma_configurations;
use super::{check, Backing, CheckReport, ClaimId, Instance, Params, Status};
use crate::enumeration::{connected_graphs, free_trees, random_connected_graph, random_tree};
use crate::error::{Error, Result};
use crate::generators::TreeFamilySpec;
use crate::graph::Graph;

/// The instances a sweep runs over.
#[derive(Debug, Clone, PartialEq)]
pub enum Universe {
    /// All free trees with order in the range.
    Trees(RangeInclusive<usize>),
    /// All connected graphs with order in the range.
    Graphs(RangeInclusive<usize>),
    Families(Vec<TreeFamilySpec>),
    /// `count` random labelled trees of order `n`; instance `i` uses seed
    /// `seed + i`.
    RandomTrees { n: usize, count: usize, seed: u64 },
    RandomGraphs { n: usize, m: usize, count: usize, seed: u64 },
    /// Graphs supplied by the caller.
    Explicit(Vec<Graph>),
}

impl Universe {
    pub fn instances(&self) -> Result<Vec<Instance>> {
        Ok(match self {
            Universe::Trees(range) => {
                let mut out = Vec::new();
                for n in range.clone() {
                    out.extend(free_trees(n)?.map(Instance::Graph));
                }
                out
            }
            Universe::Graphs(range) => {
                let mut out = Vec::new();
                for n in range.clone() {
                    out.extend(connected_graphs(n)?.into_iter().map(Instance::Graph));
                }
                out
            }
            Universe::Families(specs) => specs.iter().cloned().map(Instance::Family).collect(),
            Universe::RandomTrees { n, count, seed } => (0..*count as u64)
                .map(|i| random_tree(*n, seed.wrapping_add(i)).map(Instance::Graph))
                .collect::<Result<_>>()?,
            Universe::RandomGraphs { n, m, count, seed } => (0..*count as u64)
                .map(|i| random_connected_graph(*n, *m, seed.wrapping_add(i)).map(Instance::Graph))
                .collect::<Result<_>>()?,
            Universe::Explicit(graphs) => graphs.iter().cloned().map(Instance::Graph).collect(),
        })
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::InvalidParameter(format!("`{s}` is not an order or an order range a..b"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => num(s).map(|n| n..=n),
    }
}

fn parse_keys(s: &str, keys: &[&str]) -> Result<Vec<u64>> {
    let mut values = vec![None; keys.len()];
    for part in s.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got `{part}`")))?;
        let slot = keys
            .iter()
            .position(|k| *k == key.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown key `{key}`")))?;
        values[slot] = Some(
            value
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("`{value}` is not a non-negative integer")))?,
        );
    }
    values
        .into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| Error::InvalidParameter(format!("missing key `{k}`"))))
        .collect()
}

/// `trees:4..9`, `graphs:2..6`, `family:bethe:k=3,d=2;krag:2,2`,
/// `random-trees:n=12,count=50,seed=7`,
/// `random-graphs:n=9,m=14,count=50,seed=7`.
impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("expected kind:spec, got `{s}`")))?;
        match kind.trim() {
            "trees" => Ok(Universe::Trees(parse_range(rest)?)),
            "graphs" => Ok(Universe::Graphs(parse_range(rest)?)),
            "family" => Ok(Universe::Families(
                rest.split(';').map(str::parse).collect::<Result<_>>()?,
            )),
            "random-trees" => {
                let v = parse_keys(rest, &["n", "count", "seed"])?;
                Ok(Universe::RandomTrees {
                    n: v[0] as usize,
                    count: v[1] as usize,
                    seed: v[2],
                })
            }
            "random-graphs" => {
                let v = parse_keys(rest, &["n", "m", "count", "seed"])?;
                Ok(Universe::RandomGraphs {
                    n: v[0] as usize,
                    m: v[1] as usize,
                    count: v[2] as usize,
                    seed: v[3],
                })
            }
            other => Err(Error::InvalidParameter(format!("unknown universe kind `{other}`"))),
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::Trees(r) => write!(f, "trees:{}..{}", r.start(), r.end()),
            Universe::Graphs(r) => write!(f, "graphs:{}..{}", r.start(), r.end()),
            Universe::Families(specs) => {
                let parts: Vec<String> = specs.iter().map(ToString::to_string).collect();
                write!(f, "family:{}", parts.join(";"))
            }
            Universe::RandomTrees { n, count, seed } => {
                write!(f, "random-trees:n={n},count={count},seed={seed}")
            }
            Universe::RandomGraphs { n, m, count, seed } => {
                write!(f, "random-graphs:n={n},m={m},count={count},seed={seed}")
            }
            Universe::Explicit(graphs) => write!(f, "explicit:{}", graphs.len()),
        }
    }
}

/// One exponent of a sweep grid; `q` is used by the power-mean claim only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamPoint {
    pub p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
}

impl ParamPoint {
    pub fn p(p: f64) -> Self {
        ParamPoint { p, q: None }
    }
}

/// `2` or `3:1`.
impl FromStr for ParamPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("`{t}` is not a number")))
        };
        match s.split_once(':') {
            Some((p, q)) => Ok(ParamPoint {
                p: num(p)?,
                q: Some(num(q)?),
            }),
            None => Ok(ParamPoint::p(num(s)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub p_grid: Vec<ParamPoint>,
    /// Path lengths for the pendant-path claims.
    pub t_grid: Vec<usize>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            p_grid: vec![ParamPoint::p(1.0)],
            t_grid: vec![1, 2],
            jobs: None,
        }
    }
}

impl SweepConfig {
    pub fn with_p(p_grid: &[f64]) -> Self {
        SweepConfig {
            p_grid: p_grid.iter().copied().map(ParamPoint::p).collect(),
            ..SweepConfig::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub reports: usize,
    pub holds_strict: usize,
    pub holds_equality: usize,
    pub precondition_skipped: usize,
    pub violated: usize,
    /// Reports where the claim's equality characterization disagreed with
    /// the observed status.
    pub classifier_disagreements: usize,
}

impl SweepSummary {
    fn add(&mut self, r: &CheckReport) {
        self.reports += 1;
        match r.status {
            Status::HoldsStrict => self.holds_strict += 1,
            Status::HoldsEquality => self.holds_equality += 1,
            Status::PreconditionSkipped => self.precondition_skipped += 1,
            Status::Violated => self.violated += 1,
        }
        if r.classifier_disagrees() {
            self.classifier_disagreements += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub claim_id: String,
    pub universe: String,
    pub summary: SweepSummary,
    pub reports: Vec<CheckReport>,
}

impl SweepResult {
    /// Any violated report fails the sweep.
    pub fn failed(&self) -> bool {
        self.summary.violated > 0
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| r.status == Status::Violated)
    }
}

fn skipped(claim: ClaimId, instance: &Instance, params: Params, reason: &str) -> CheckReport {
    CheckReport {
        claim_id: claim.as_str().to_string(),
        instance: instance.describe(),
        params,
        status: Status::PreconditionSkipped,
        relation: None,
        lhs: None,
        rhs: None,
        backing: Backing::None,
        witness: None,
        classifier: None,
        note: Some(reason.to_string()),
    }
}

fn reports_for(claim: ClaimId, instance: &Instance, config: &SweepConfig) -> Result<Vec<CheckReport>> {
    let base: Vec<Params> = if claim.takes_exponent() {
        config
            .p_grid
            .iter()
            .map(|pt| Params {
                p: Some(pt.p),
                q: if claim == ClaimId::PowerMean { pt.q } else { None },
                ..Params::default()
            })
            .collect()
    } else {
        vec![Params::default()]
    };
    let g = instance.graph()?;
    let mut out = Vec::new();
    for params in base {
        match claim {
            ClaimId::PendantPath | ClaimId::PendantPathSigma => {
                let anchors: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
                if g.n() < 3 || anchors.is_empty() {
                    out.push(skipped(claim, instance, params, "no pendant vertex in a graph with n >= 3"));
                    continue;
                }
                for &anchor in &anchors {
                    for &t in &config.t_grid {
                        let params = Params {
                            anchor: Some(anchor),
                            t: Some(t),
                            ..params.clone()
                        };
                        out.push(check(claim.as_str(), instance, &params)?);
                    }
                }
            }
            ClaimId::BranchShift => {
                let configs = lemma_configurations(&g);
                if configs.is_empty() {
                    out.push(skipped(claim, instance, params, "no branch-shift configuration"));
                    continue;
                }
                for shift in configs {
                    let params = Params {
                        shift: Some(shift),
                        ..params.clone()
                    };
                    out.push(check(claim.as_str(), instance, &params)?);
                }
            }
            _ => out.push(check(claim.as_str(), instance, &params)?),
        }
    }
    Ok(out)
}

/// Runs `claim_id` over every instance of `universe` and every grid point.
///
/// Reports come back in universe order, then grid order, independent of
/// the number of workers.
pub fn sweep(claim_id: &str, universe: &Universe, config: &SweepConfig) -> Result<SweepResult> {
    let claim: ClaimId = claim_id.parse()?;
    if claim.takes_exponent() && config.p_grid.is_empty() {
        return Err(Error::InvalidParameter("empty exponent grid".into()));
    }
    let instances = universe.instances()?;
    let run = || -> Result<Vec<Vec<CheckReport>>> {
        instances
            .par_iter()
            .map(|inst| reports_for(claim, inst, config))
            .collect()
    };
    let nested = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start {jobs} workers: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let reports: Vec<CheckReport> = nested.into_iter().flatten().collect();
    let mut summary = SweepSummary {
        instances: instances.len(),
        ..SweepSummary::default()
    };
    for r in &reports {
        summary.add(r);
    }
    Ok(SweepResult {
        claim_id: claim.as_str().to_string(),
        universe: universe.to_string(),
        summary,
        reports,
    })
}
