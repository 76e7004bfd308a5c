//! Named graph families: paths, stars, spiders, generalized Bethe trees,
//! Bethe trees, regular dendrimers and Kragujevac trees, plus closed-form
//! general Albertson sums for the Bethe and Kragujevac families.
//!
//! Generated trees are numbered breadth-first from the root (or centre), so
//! their graph6 encodings are reproducible.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::indices::{Exponent, IndexValue, PowValue};

/// Builds a rooted tree breadth-first. `children(depth, index)` gives the
/// number of children of the `index`-th child of its parent at `depth`
/// (the root has depth 0, index 0).
fn bfs_tree(mut children: impl FnMut(usize, usize) -> usize) -> Graph {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![(0usize, 0usize)];
    let mut depth = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &(v, index) in &frontier {
            for c in 0..children(depth, index) {
                let id = adj.len();
                adj.push(vec![v]);
                adj[v].push(id);
                next.push((id, c));
            }
        }
        frontier = next;
        depth += 1;
    }
    Graph::from_adjacency(adj)
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Family("a path needs at least one vertex".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges)
}

/// Star `K_{1,n-1}` with the centre at vertex 0.
pub fn make_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Family("a star needs at least two vertices".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::new(n, &edges)
}

/// Centre joined to paths of the given lengths.
pub fn make_spider(legs: &[usize]) -> Result<Graph> {
    if legs.is_empty() {
        return Err(Error::Family("a spider needs at least one leg".into()));
    }
    if legs.contains(&0) {
        return Err(Error::Family("spider legs must have length at least 1".into()));
    }
    // Breadth-first: at each depth, extend every leg that is long enough.
    let mut tips = vec![0usize; legs.len()];
    let mut edges = Vec::new();
    let mut next = 1;
    for depth in 1..=legs.iter().copied().max().unwrap_or(0) {
        for (leg, tip) in tips.iter_mut().enumerate() {
            if legs[leg] >= depth {
                edges.push((*tip, next));
                *tip = next;
                next += 1;
            }
        }
    }
    Graph::new(next, &edges)
}

/// The four order-`n` trees of maximum degree three whose general Albertson
/// sums are minimal among non-path trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateShape {
    /// `spider(1, 1, n-3)`: sum `2^(p+1) + 2`.
    Broom,
    /// `spider(1, 2, n-4)`: sum `2^p + 4`.
    MidSpider,
    /// Path on `n-1` vertices with a pendant at its middle vertex: sum `2^p + 4`.
    Caterpillar,
    /// `spider(2, 2, n-5)`: sum `6`.
    LongSpider,
}

impl CandidateShape {
    pub const ALL: [CandidateShape; 4] = [
        CandidateShape::Broom,
        CandidateShape::MidSpider,
        CandidateShape::Caterpillar,
        CandidateShape::LongSpider,
    ];

    pub fn legs(self, n: usize) -> [usize; 3] {
        match self {
            CandidateShape::Broom => [1, 1, n - 3],
            CandidateShape::MidSpider => [1, 2, n - 4],
            CandidateShape::Caterpillar => {
                let a = (n - 2) / 2;
                [1, a, n - 2 - a]
            }
            CandidateShape::LongSpider => [2, 2, n - 5],
        }
    }

    pub fn pow_formula(self, p: Exponent) -> PowValue {
        let x = p.get();
        match (self, p.as_integer()) {
            (CandidateShape::Broom, Some(k)) => PowValue::Exact(2u128.pow(k + 1) + 2),
            (CandidateShape::MidSpider | CandidateShape::Caterpillar, Some(k)) => {
                PowValue::Exact(2u128.pow(k) + 4)
            }
            (CandidateShape::LongSpider, _) => PowValue::Exact(6),
            (CandidateShape::Broom, None) => PowValue::Float(2f64.powf(x + 1.0) + 2.0),
            (_, None) => PowValue::Float(2f64.powf(x) + 4.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalCandidate {
    pub shape: CandidateShape,
    pub graph: Graph,
}

pub fn extremal_candidates(n: usize) -> Result<Vec<ExtremalCandidate>> {
    if n < 10 {
        return Err(Error::Family(format!(
            "extremal candidates are defined for n >= 10, got {n}"
        )));
    }
    CandidateShape::ALL
        .iter()
        .map(|&shape| {
            Ok(ExtremalCandidate {
                shape,
                graph: make_spider(&shape.legs(n))?,
            })
        })
        .collect()
}

fn check_levels(levels: &[usize]) -> Result<()> {
    match levels.split_first() {
        None => Err(Error::Family("a generalized Bethe tree needs at least two levels".into())),
        Some((&root, _)) if root < 1 => Err(Error::Family("root degree must be at least 1".into())),
        Some((_, rest)) if rest.iter().any(|&d| d < 2) => Err(Error::Family(
            "internal level degrees must be at least 2".into(),
        )),
        Some(_) => Ok(()),
    }
}

/// Generalized Bethe tree from the degrees `d_1..d_{k-1}` of its non-leaf
/// levels; level `k` holds the leaves.
pub fn make_generalized_bethe(levels: &[usize]) -> Result<Graph> {
    check_levels(levels)?;
    Ok(bfs_tree(|depth, _| match depth {
        0 => levels[0],
        j if j < levels.len() => levels[j] - 1,
        _ => 0,
    }))
}

/// Vertex count `1 + d_1 (1 + Σ_{i=2}^{k-1} Π_{j=2}^{i} (d_j - 1))`.
pub fn generalized_bethe_order(levels: &[usize]) -> Result<usize> {
    check_levels(levels)?;
    let mut width = levels[0];
    let mut total = 1 + width;
    for &d in &levels[1..] {
        width *= d - 1;
        total += width;
    }
    Ok(total)
}

fn bethe_levels(k: usize, d: usize) -> Result<Vec<usize>> {
    if k < 2 || d < 2 {
        return Err(Error::Family(format!("Bethe tree needs k >= 2 and d >= 2, got k={k}, d={d}")));
    }
    let mut levels = vec![d];
    levels.resize(k - 1, d + 1);
    Ok(levels)
}

fn dendrimer_levels(k: usize, d: usize) -> Result<Vec<usize>> {
    if k < 2 || d < 2 {
        return Err(Error::Family(format!("dendrimer needs k >= 2 and d >= 2, got k={k}, d={d}")));
    }
    Ok(vec![d; k - 1])
}

/// Bethe tree `B_{k,d}`: root degree `d`, inner levels degree `d + 1`.
pub fn make_bethe(k: usize, d: usize) -> Result<Graph> {
    make_generalized_bethe(&bethe_levels(k, d)?)
}

/// Regular dendrimer `T_{k,d}`: every internal vertex has degree `d`.
pub fn make_dendrimer(k: usize, d: usize) -> Result<Graph> {
    make_generalized_bethe(&dendrimer_levels(k, d)?)
}

fn check_branches(branches: &[usize]) -> Result<()> {
    if branches.len() < 2 {
        return Err(Error::Family("a Kragujevac tree needs at least two branches".into()));
    }
    if branches.iter().any(|&k| k < 2) {
        return Err(Error::Family("Kragujevac branch sizes must be at least 2".into()));
    }
    Ok(())
}

/// Kragujevac tree: a central vertex joined to the roots of branches
/// `R_{k_i}`, each being `k_i` copies of `P_3` glued at a terminal vertex.
pub fn make_kragujevac(branches: &[usize]) -> Result<Graph> {
    check_branches(branches)?;
    Ok(bfs_tree(|depth, index| match depth {
        0 => branches.len(),
        1 => branches[index],
        2 => 1,
        _ => 0,
    }))
}

pub fn kragujevac_order(branches: &[usize]) -> usize {
    1 + branches.iter().map(|&k| 2 * k + 1).sum::<usize>()
}

/// Either an exact `Σ count · diff^p` or its float value.
fn weighted_power_sum(terms: &[(u128, u64)], p: Exponent) -> PowValue {
    if let Some(k) = p.as_integer() {
        let exact = terms.iter().try_fold(0u128, |acc, &(count, diff)| {
            (diff as u128)
                .checked_pow(k)
                .and_then(|t| t.checked_mul(count))
                .and_then(|t| acc.checked_add(t))
        });
        if let Some(v) = exact {
            return PowValue::Exact(v);
        }
    }
    PowValue::Float(
        terms
            .iter()
            .map(|&(count, diff)| {
                if diff == 0 {
                    0.0
                } else {
                    count as f64 * (diff as f64).powf(p.get())
                }
            })
            .sum(),
    )
}

/// Closed-form `A_p^p` of a generalized Bethe tree:
/// `d_1 |d_1 - d_2|^p + d_1 Σ_{i=3}^{k} |d_i - d_{i-1}|^p Π_{j=2}^{i-1} (d_j - 1)`
/// with `d_k = 1`.
pub fn bethe_closed_form(levels: &[usize], p: Exponent) -> Result<IndexValue> {
    check_levels(levels)?;
    let mut degs = levels.to_vec();
    degs.push(1);
    let mut terms = Vec::with_capacity(degs.len());
    // Edges between level i-1 and level i (1-based), i = 2..=k.
    let mut edges_here = degs[0] as u128;
    for i in 1..degs.len() {
        if i >= 2 {
            edges_here *= (degs[i - 1] - 1) as u128;
        }
        terms.push((edges_here, degs[i].abs_diff(degs[i - 1]) as u64));
    }
    Ok(IndexValue {
        pow: weighted_power_sum(&terms, p),
        p,
        disconnected: false,
    })
}

/// The generalized Bethe sum with the product running to `i` instead of
/// `i - 1` and the `i = 2` term inside the sum, i.e.
/// `d_1 (|d_1 - d_2|^p + Σ_{i=2}^{k} |d_i - d_{i-1}|^p Π_{j=2}^{i} (d_j - 1))`.
/// Kept to quantify how far that expression is from the tree's true sum.
pub fn bethe_unshifted_form(levels: &[usize], p: Exponent) -> Result<IndexValue> {
    check_levels(levels)?;
    let mut degs = levels.to_vec();
    degs.push(1);
    let d1 = degs[0] as u128;
    let mut terms = vec![(d1, degs[0].abs_diff(degs[1]) as u64)];
    let mut product = 1u128;
    for i in 1..degs.len() {
        product *= (degs[i] - 1) as u128;
        terms.push((d1 * product, degs[i].abs_diff(degs[i - 1]) as u64));
    }
    Ok(IndexValue {
        pow: weighted_power_sum(&terms, p),
        p,
        disconnected: false,
    })
}

/// Closed-form `A_p^p` of a Kragujevac tree:
/// `(n - d - 1)/2 + Σ_i (k_i (k_i - 1)^p + |k_i - d + 1|^p)`.
pub fn kragujevac_closed_form(branches: &[usize], p: Exponent) -> Result<IndexValue> {
    check_branches(branches)?;
    let d = branches.len();
    let n = kragujevac_order(branches);
    let mut terms = vec![((n - d - 1) as u128 / 2, 1u64)];
    for &k in branches {
        terms.push((k as u128, (k - 1) as u64));
        terms.push((1, (k + 1).abs_diff(d) as u64));
    }
    Ok(IndexValue {
        pow: weighted_power_sum(&terms, p),
        p,
        disconnected: false,
    })
}

/// Compact family descriptions: `path:6`, `star:5`, `spider:1,2,2`,
/// `gbethe:2,3,3`, `bethe:k=4,d=3`, `dendrimer:k=4,d=3`, `krag:2,2,3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TreeFamilySpec {
    Path { n: usize },
    Star { n: usize },
    Spider { legs: Vec<usize> },
    GeneralizedBethe { levels: Vec<usize> },
    Bethe { k: usize, d: usize },
    Dendrimer { k: usize, d: usize },
    Kragujevac { branches: Vec<usize> },
}

impl TreeFamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            TreeFamilySpec::Path { n } => make_path(*n),
            TreeFamilySpec::Star { n } => make_star(*n),
            TreeFamilySpec::Spider { legs } => make_spider(legs),
            TreeFamilySpec::GeneralizedBethe { levels } => make_generalized_bethe(levels),
            TreeFamilySpec::Bethe { k, d } => make_bethe(*k, *d),
            TreeFamilySpec::Dendrimer { k, d } => make_dendrimer(*k, *d),
            TreeFamilySpec::Kragujevac { branches } => make_kragujevac(branches),
        }
    }

    /// Level degrees when the family is a generalized Bethe tree.
    pub fn bethe_levels(&self) -> Option<Vec<usize>> {
        match self {
            TreeFamilySpec::GeneralizedBethe { levels } => Some(levels.clone()),
            TreeFamilySpec::Bethe { k, d } => bethe_levels(*k, *d).ok(),
            TreeFamilySpec::Dendrimer { k, d } => dendrimer_levels(*k, *d).ok(),
            _ => None,
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Family(format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

fn parse_kd(s: &str) -> Result<(usize, usize)> {
    let (mut k, mut d) = (None, None);
    for part in s.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Family(format!("expected key=value, got `{part}`")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| Error::Family(format!("`{value}` is not a non-negative integer")))?;
        match key.trim() {
            "k" => k = Some(value),
            "d" => d = Some(value),
            other => return Err(Error::Family(format!("unknown key `{other}`"))),
        }
    }
    match (k, d) {
        (Some(k), Some(d)) => Ok((k, d)),
        _ => Err(Error::Family("both k and d are required".into())),
    }
}

impl FromStr for TreeFamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Family(format!("expected kind:params, got `{s}`")))?;
        let single = |args: &str| -> Result<usize> {
            args.trim()
                .parse()
                .map_err(|_| Error::Family(format!("`{args}` is not a non-negative integer")))
        };
        match kind.trim() {
            "path" => Ok(TreeFamilySpec::Path { n: single(args)? }),
            "star" => Ok(TreeFamilySpec::Star { n: single(args)? }),
            "spider" => Ok(TreeFamilySpec::Spider { legs: parse_list(args)? }),
            "gbethe" => Ok(TreeFamilySpec::GeneralizedBethe { levels: parse_list(args)? }),
            "bethe" => parse_kd(args).map(|(k, d)| TreeFamilySpec::Bethe { k, d }),
            "dendrimer" => parse_kd(args).map(|(k, d)| TreeFamilySpec::Dendrimer { k, d }),
            "krag" => Ok(TreeFamilySpec::Kragujevac { branches: parse_list(args)? }),
            other => Err(Error::Family(format!("unknown family `{other}`"))),
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for TreeFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeFamilySpec::Path { n } => write!(f, "path:{n}"),
            TreeFamilySpec::Star { n } => write!(f, "star:{n}"),
            TreeFamilySpec::Spider { legs } => write!(f, "spider:{}", join(legs)),
            TreeFamilySpec::GeneralizedBethe { levels } => write!(f, "gbethe:{}", join(levels)),
            TreeFamilySpec::Bethe { k, d } => write!(f, "bethe:k={k},d={d}"),
            TreeFamilySpec::Dendrimer { k, d } => write!(f, "dendrimer:k={k},d={d}"),
            TreeFamilySpec::Kragujevac { branches } => write!(f, "krag:{}", join(branches)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use crate::indices::{albertson, general_albertson};

    fn p(x: f64) -> Exponent {
        Exponent::new(x).unwrap()
    }

    fn same_shape(a: &Graph, b: &Graph) -> bool {
        canonical_code(a).unwrap() == canonical_code(b).unwrap()
    }

    #[test]
    fn paths_and_stars() {
        let k2 = make_path(2).unwrap();
        assert!(general_albertson(&k2, p(1.5)).pow.is_zero());
        assert_eq!(albertson(&make_star(5).unwrap()), 12);
        assert_eq!(make_path(3).unwrap(), make_star(3).unwrap().relabel(&[1, 0, 2]).unwrap());
        assert!(make_path(0).is_err());
        assert!(make_star(1).is_err());
    }

    #[test]
    fn spiders() {
        assert!(same_shape(&make_spider(&[1, 1, 1]).unwrap(), &make_star(4).unwrap()));
        let s = make_spider(&[2, 2, 2]).unwrap();
        assert_eq!((s.n(), albertson(&s)), (7, 6));
        assert!(same_shape(&make_spider(&[5]).unwrap(), &make_path(6).unwrap()));
        assert!(make_spider(&[]).is_err());
        assert!(make_spider(&[2, 0]).is_err());
        let uneven = make_spider(&[3, 1, 4, 2]).unwrap();
        assert_eq!(uneven.n(), 11);
        assert!(uneven.is_spider());
        let mut degs = uneven.degrees();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 4]);
    }

    #[test]
    fn spider_numbering_is_breadth_first() {
        // Legs (1, 3): centre 0; depth 1: 1, 2; depth 2: 3; depth 3: 4.
        let s = make_spider(&[1, 3]).unwrap();
        assert_eq!(s.edge_list(), vec![(0, 1), (0, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn candidate_formulas_match_direct_sums() {
        for n in 10..15 {
            let cands = extremal_candidates(n).unwrap();
            for c in &cands {
                assert_eq!(c.graph.n(), n);
                assert_eq!(c.graph.degree_summary().max, 3);
                assert!(c.graph.is_spider());
                for x in [0.5, 1.0, 2.0, 3.0] {
                    let direct = general_albertson(&c.graph, p(x)).pow;
                    let formula = c.shape.pow_formula(p(x));
                    match (direct, formula) {
                        (PowValue::Exact(a), PowValue::Exact(b)) => assert_eq!(a, b),
                        (a, b) => assert!((a.as_f64() - b.as_f64()).abs() < 1e-9),
                    }
                }
            }
        }
        assert!(extremal_candidates(9).is_err());
    }

    #[test]
    fn candidate_values_at_n10() {
        let c = extremal_candidates(10).unwrap();
        let at = |x: f64| -> Vec<f64> {
            c.iter().map(|c| general_albertson(&c.graph, p(x)).pow.as_f64()).collect()
        };
        assert_eq!(at(1.0), vec![6.0; 4]);
        assert_eq!(at(2.0), vec![10.0, 8.0, 8.0, 6.0]);
        let half = at(0.5);
        let want = [2f64.powf(1.5) + 2.0, 2f64.sqrt() + 4.0, 2f64.sqrt() + 4.0, 6.0];
        for (a, b) in half.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((half[0] - 4.828).abs() < 1e-3 && (half[1] - 5.414).abs() < 1e-3);
    }

    #[test]
    fn bethe_shapes() {
        assert!(same_shape(&make_generalized_bethe(&[2]).unwrap(), &make_path(3).unwrap()));
        let b32 = make_generalized_bethe(&[2, 3]).unwrap();
        assert_eq!(b32.n(), 7);
        assert_eq!(generalized_bethe_order(&[2, 3]), Ok(7));
        assert_eq!(make_bethe(3, 2).unwrap(), b32);
        assert_eq!(make_dendrimer(4, 3).unwrap(), make_generalized_bethe(&[3, 3, 3]).unwrap());
        assert!(same_shape(&make_dendrimer(2, 3).unwrap(), &make_star(4).unwrap()));
        assert!(same_shape(&make_bethe(2, 5).unwrap(), &make_star(6).unwrap()));
        assert!(make_generalized_bethe(&[]).is_err());
        assert!(make_generalized_bethe(&[3, 1]).is_err());
        assert!(make_bethe(1, 3).is_err());
        assert!(make_dendrimer(3, 1).is_err());
    }

    #[test]
    fn bethe_orders_match_construction() {
        for levels in [vec![1], vec![3, 2, 4], vec![4, 4, 4, 2], vec![2, 5, 3]] {
            let g = make_generalized_bethe(&levels).unwrap();
            assert_eq!(generalized_bethe_order(&levels).unwrap(), g.n());
            assert!(g.is_tree());
        }
    }

    #[test]
    fn bethe_closed_form_values() {
        let v = bethe_closed_form(&[2, 3], p(1.0)).unwrap();
        assert_eq!(v.pow, PowValue::Exact(10));
        assert_eq!(albertson(&make_bethe(3, 2).unwrap()), 10);
        // A_p^p(T_{2,3}) = 3 * 2^p.
        assert_eq!(bethe_closed_form(&[3], p(2.0)).unwrap().pow, PowValue::Exact(12));
        // The unshifted product annihilates the leaf level.
        assert_eq!(bethe_unshifted_form(&[2, 3], p(1.0)).unwrap().pow, PowValue::Exact(6));
    }

    #[test]
    fn kragujevac_shapes_and_forms() {
        let kt = make_kragujevac(&[2, 2]).unwrap();
        assert_eq!((kt.n(), albertson(&kt)), (11, 10));
        assert_eq!(kragujevac_closed_form(&[2, 2], p(1.0)).unwrap().pow, PowValue::Exact(10));
        let three = make_kragujevac(&[2, 2, 2]).unwrap();
        assert_eq!(three.degree(0), 3);
        for &r in three.neighbors(0) {
            assert_eq!(three.degree(r), 3);
        }
        let mixed = make_kragujevac(&[3, 2]).unwrap();
        assert_eq!(
            kragujevac_closed_form(&[3, 2], p(2.0)).unwrap().pow,
            general_albertson(&mixed, p(2.0)).pow
        );
        assert!(make_kragujevac(&[2]).is_err());
        assert!(make_kragujevac(&[2, 1]).is_err());
    }

    #[test]
    fn family_strings_round_trip() {
        for s in [
            "path:6",
            "star:5",
            "spider:1,2,2",
            "gbethe:2,3,3",
            "bethe:k=4,d=3",
            "dendrimer:k=3,d=4",
            "krag:2,2,3",
        ] {
            let spec: TreeFamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert!(spec.build().unwrap().is_tree());
        }
        assert_eq!(
            "bethe:d=2,k=3".parse::<TreeFamilySpec>().unwrap(),
            TreeFamilySpec::Bethe { k: 3, d: 2 }
        );
        for bad in ["", "path", "tree:3", "bethe:k=3", "spider:1,x", "bethe:k=3,q=2"] {
            assert!(bad.parse::<TreeFamilySpec>().is_err(), "{bad}");
        }
        let json = serde_json::to_string(&TreeFamilySpec::Kragujevac { branches: vec![2, 3] }).unwrap();
        assert_eq!(json, r#"{"kind":"kragujevac","branches":[2,3]}"#);
    }
}
