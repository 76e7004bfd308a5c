//! Degree- and eccentricity-based invariants.
//!
//! Every p-norm style index is carried in its p-th power ("pow") form,
//! `Σ |x|^p`, and only rooted on demand. For integer `p` the pow form is an
//! exact integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest exponent accepted. Beyond it the limit is served by
/// [`degree_gap`] and [`Graph::max_edge_difference`].
pub const MAX_EXPONENT: f64 = 64.0;

/// A positive real exponent `p` with `0 < p <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 && p <= MAX_EXPONENT {
            Ok(Exponent(p))
        } else {
            Err(Error::InvalidExponent {
                value: p,
                max: MAX_EXPONENT,
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `Some(k)` when `p` is a positive integer.
    pub fn as_integer(self) -> Option<u32> {
        (self.0.fract() == 0.0).then_some(self.0 as u32)
    }

    pub fn reciprocal(self) -> Result<Self> {
        Exponent::new(1.0 / self.0)
    }
}

impl TryFrom<f64> for Exponent {
    type Error = Error;
    fn try_from(p: f64) -> Result<Self> {
        Exponent::new(p)
    }
}

impl From<Exponent> for f64 {
    fn from(p: Exponent) -> f64 {
        p.0
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A power sum, exact when every term is an integer power that fits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backing", content = "value", rename_all = "kebab-case")]
pub enum PowValue {
    Exact(u128),
    Float(f64),
}

impl PowValue {
    pub fn as_f64(self) -> f64 {
        match self {
            PowValue::Exact(v) => v as f64,
            PowValue::Float(v) => v,
        }
    }

    pub fn exact(self) -> Option<u128> {
        match self {
            PowValue::Exact(v) => Some(v),
            PowValue::Float(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, PowValue::Exact(_))
    }

    pub fn is_zero(self) -> bool {
        self.as_f64() == 0.0
    }
}

/// `Σ x^p` over non-negative integer terms.
///
/// Integer exponents use checked `u128` arithmetic; on overflow the sum
/// falls back to floating point.
pub fn power_sum<I>(terms: I, p: Exponent) -> PowValue
where
    I: IntoIterator<Item = u64>,
    I::IntoIter: Clone,
{
    let terms = terms.into_iter();
    if let Some(k) = p.as_integer() {
        let exact = terms.clone().try_fold(0u128, |acc, x| {
            (x as u128).checked_pow(k).and_then(|t| acc.checked_add(t))
        });
        if let Some(v) = exact {
            return PowValue::Exact(v);
        }
    }
    PowValue::Float(terms.map(|x| (x as f64).powf(p.get())).sum())
}

/// An index value held in the pow domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexValue {
    pub pow: PowValue,
    pub p: Exponent,
    /// Set when the input graph was disconnected. The sum is still defined,
    /// but the bounds and identities only speak about connected graphs.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub disconnected: bool,
}

impl IndexValue {
    /// `pow^(1/p)`, with `0^(1/p) = 0`.
    pub fn value(&self) -> f64 {
        let s = self.pow.as_f64();
        if s == 0.0 {
            0.0
        } else {
            s.powf(1.0 / self.p.get())
        }
    }
}

fn edge_differences(g: &Graph) -> impl Iterator<Item = u64> + Clone + '_ {
    g.edges()
        .map(|(u, v)| g.degree(u).abs_diff(g.degree(v)) as u64)
}

/// General Albertson index `A_p`: pow form `Σ_{uv ∈ E} |d(u) - d(v)|^p`.
pub fn general_albertson(g: &Graph, p: Exponent) -> IndexValue {
    IndexValue {
        pow: power_sum(edge_differences(g), p),
        p,
        disconnected: !g.is_connected(),
    }
}

/// Albertson index `Σ_{uv ∈ E} |d(u) - d(v)|`.
pub fn albertson(g: &Graph) -> u64 {
    edge_differences(g).sum()
}

/// σ-index `Σ_{uv ∈ E} (d(u) - d(v))^2`.
pub fn sigma(g: &Graph) -> u64 {
    edge_differences(g).map(|x| x * x).sum()
}

/// First general Zagreb index `Σ_v d(v)^p` for any real `p`.
///
/// Non-negative integer exponents give an exact result. Negative exponents
/// are rejected on graphs with isolated vertices.
pub fn first_zagreb_general(g: &Graph, p: f64) -> Result<PowValue> {
    if !p.is_finite() {
        return Err(Error::InvalidParameter(format!("Zagreb exponent {p} is not finite")));
    }
    if p < 0.0 && g.degrees().contains(&0) {
        return Err(Error::Precondition(
            "negative Zagreb exponent needs minimum degree at least 1".into(),
        ));
    }
    let degs = g.degrees();
    if p >= 0.0 && p.fract() == 0.0 && p <= u32::MAX as f64 {
        let k = p as u32;
        let exact = degs.iter().try_fold(0u128, |acc, &d| {
            (d as u128).checked_pow(k).and_then(|t| acc.checked_add(t))
        });
        if let Some(v) = exact {
            return Ok(PowValue::Exact(v));
        }
    }
    Ok(PowValue::Float(degs.iter().map(|&d| (d as f64).powf(p)).sum()))
}

/// `Σ_v d(v)^k` for a non-negative integer `k`.
pub fn degree_power_sum(g: &Graph, k: u32) -> u128 {
    (0..g.n()).map(|v| (g.degree(v) as u128).pow(k)).sum()
}

/// Second Zagreb index `M2 = Σ_{uv ∈ E} d(u) d(v)`.
pub fn zagreb_second(g: &Graph) -> u64 {
    g.edges()
        .map(|(u, v)| (g.degree(u) * g.degree(v)) as u64)
        .sum()
}

/// Forgotten index `F = Σ_v d(v)^3`.
pub fn forgotten(g: &Graph) -> u64 {
    degree_power_sum(g, 3) as u64
}

/// Sombor index `Σ_{uv ∈ E} sqrt(d(u)^2 + d(v)^2)`.
pub fn sombor(g: &Graph) -> f64 {
    g.edges()
        .map(|(u, v)| (g.degree(u) as f64).hypot(g.degree(v) as f64))
        .sum()
}

/// `Δ - δ`.
pub fn degree_gap(g: &Graph) -> usize {
    let s = g.degree_summary();
    s.max - s.min
}

fn pair_differences(values: &[usize]) -> impl Iterator<Item = u64> + Clone + '_ {
    values.iter().enumerate().flat_map(move |(i, &a)| {
        values[i + 1..].iter().map(move |&b| a.abs_diff(b) as u64)
    })
}

/// General total irregularity: `Σ_{u,v} |d(u) - d(v)|^p` over all unordered
/// vertex pairs.
pub fn total_irregularity_general(g: &Graph, p: Exponent) -> IndexValue {
    let degs = g.degrees();
    IndexValue {
        pow: power_sum(pair_differences(&degs), p),
        p,
        disconnected: !g.is_connected(),
    }
}

/// General non-self-centrality: `Σ_{u,v} |ε(u) - ε(v)|^p` over all
/// unordered vertex pairs. Needs a connected graph.
pub fn nonselfcentrality_general(g: &Graph, p: Exponent) -> Result<IndexValue> {
    let ecc = g.eccentricities()?.ecc;
    Ok(IndexValue {
        pow: power_sum(pair_differences(&ecc), p),
        p,
        disconnected: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::new(leaves + 1, &edges).unwrap()
    }

    fn spider(legs: &[usize]) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(next, &edges).unwrap()
    }

    fn p(x: f64) -> Exponent {
        Exponent::new(x).unwrap()
    }

    #[test]
    fn exponent_validation() {
        assert!(Exponent::new(0.0).is_err());
        assert!(Exponent::new(-1.0).is_err());
        assert!(Exponent::new(64.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert_eq!(p(3.0).as_integer(), Some(3));
        assert_eq!(p(0.5).as_integer(), None);
    }

    #[test]
    fn general_albertson_values() {
        let a = general_albertson(&path(5), p(1.0));
        assert_eq!(a.pow, PowValue::Exact(2));
        assert_eq!(a.value(), 2.0);
        let s = general_albertson(&star(4), p(2.0));
        assert_eq!(s.pow, PowValue::Exact(36));
        assert_eq!(s.value(), 6.0);
        for x in [0.5, 1.0, 2.0, 7.3] {
            let c = general_albertson(&cycle(7), p(x));
            assert!(c.pow.is_zero());
            assert_eq!(c.value(), 0.0);
        }
        let t3 = general_albertson(&spider(&[2, 2, 2]), p(3.0));
        assert_eq!(t3.pow, PowValue::Exact(6));
        assert!((t3.value() - 6f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert_eq!(general_albertson(&path(2), p(1.0)).pow, PowValue::Exact(0));
    }

    #[test]
    fn disconnected_inputs_are_flagged() {
        let g = Graph::new(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let a = general_albertson(&g, p(1.0));
        assert!(a.disconnected);
        assert_eq!(a.pow, PowValue::Exact(2));
    }

    #[test]
    fn albertson_and_sigma() {
        assert_eq!(albertson(&star(5)), 20);
        for n in 3..9 {
            assert_eq!(albertson(&path(n)), 2);
        }
        assert_eq!(albertson(&spider(&[2, 3, 4])), 6);
        assert_eq!(sigma(&star(4)), 36);
        assert_eq!(forgotten(&star(4)), 68);
        assert_eq!(zagreb_second(&star(4)), 16);
        assert_eq!(sigma(&cycle(6)), 0);
        assert_eq!(sigma(&path(4)), 2);
    }

    #[test]
    fn zagreb_family() {
        assert_eq!(first_zagreb_general(&path(4), 2.0), Ok(PowValue::Exact(10)));
        assert_eq!(first_zagreb_general(&star(3), 3.0), Ok(PowValue::Exact(30)));
        assert_eq!(first_zagreb_general(&cycle(5), 1.0), Ok(PowValue::Exact(10)));
        assert!(first_zagreb_general(&Graph::empty(2), -1.0).is_err());
        let half = first_zagreb_general(&path(3), -1.0).unwrap().as_f64();
        assert!((half - 2.5).abs() < 1e-12);
        assert_eq!(zagreb_second(&cycle(5)), 20);
        assert_eq!(zagreb_second(&path(4)), 8);
        assert_eq!(forgotten(&cycle(6)), 48);
        assert_eq!(forgotten(&path(5)), 26);
    }

    #[test]
    fn sombor_values() {
        assert!((sombor(&path(2)) - 2f64.sqrt()).abs() < 1e-12);
        assert!((sombor(&cycle(4)) - 4.0 * 8f64.sqrt()).abs() < 1e-12);
        assert!((sombor(&star(3)) - 3.0 * 10f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn degree_gaps() {
        assert_eq!(degree_gap(&cycle(5)), 0);
        assert_eq!(degree_gap(&star(5)), 4);
        assert_eq!(degree_gap(&path(6)), 1);
    }

    #[test]
    fn pairwise_indices() {
        assert_eq!(total_irregularity_general(&star(3), p(1.0)).pow, PowValue::Exact(6));
        assert!(total_irregularity_general(&cycle(6), p(2.5)).pow.is_zero());
        let t = total_irregularity_general(&path(4), p(2.0));
        assert_eq!((t.pow, t.value()), (PowValue::Exact(4), 2.0));
        assert!(nonselfcentrality_general(&cycle(5), p(1.0)).unwrap().pow.is_zero());
        assert_eq!(
            nonselfcentrality_general(&path(4), p(1.0)).unwrap().pow,
            PowValue::Exact(4)
        );
        let s = nonselfcentrality_general(&star(4), p(2.0)).unwrap();
        assert_eq!((s.pow, s.value()), (PowValue::Exact(4), 2.0));
        let split = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(nonselfcentrality_general(&split, p(1.0)), Err(Error::Disconnected));
    }

    #[test]
    fn overflow_falls_back_to_float() {
        let v = power_sum([8u64, 8, 8], p(64.0));
        assert!(!v.is_exact());
        assert!((v.as_f64() / (3.0 * 8f64.powi(64)) - 1.0).abs() < 1e-12);
        assert_eq!(power_sum([3u64, 2], p(12.0)), PowValue::Exact(531441 + 4096));
    }
}
