//! Exhaustive streams of unlabeled trees and small connected graphs, and
//! seeded random samplers for spot checks beyond the exhaustive range.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_TREE_ORDER: usize = 20;
pub const MAX_GRAPH_ORDER: usize = 7;

/// Every free tree of a given order exactly once.
///
/// Trees are walked as canonical level sequences of rooted trees (in
/// decreasing order, Beyer–Hedetniemi successor), keeping only sequences
/// rooted at a centre with the left subtree not exceeding the rest, and
/// jumping over runs of rejected sequences (Wright, Richmond, Odlyzko and
/// McKay).
#[derive(Debug, Clone)]
pub struct FreeTrees {
    order: usize,
    layout: Option<Vec<usize>>,
    single_pending: bool,
}

pub fn free_trees(n: usize) -> Result<FreeTrees> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(Error::Guard {
            what: "tree order",
            value: n,
            range: "1..=20",
        });
    }
    let layout = (n >= 2).then(|| (0..=n / 2).chain(1..n.div_ceil(2)).collect());
    Ok(FreeTrees {
        order: n,
        layout,
        single_pending: n == 1,
    })
}

impl FreeTrees {
    pub fn order(&self) -> usize {
        self.order
    }
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.single_pending {
            self.single_pending = false;
            return Some(Graph::empty(1));
        }
        let mut candidate = self.layout.take()?;
        while !is_free_canonical(&candidate) {
            candidate = jump(&candidate)?;
        }
        let tree = layout_to_graph(&candidate);
        self.layout = next_rooted(&candidate, None);
        Some(tree)
    }
}

/// Splits a level sequence into the first subtree of the root (levels
/// shifted up by one) and the remainder with the root.
fn split(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let cut = layout
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..cut].iter().map(|l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[cut..].iter().copied()).collect();
    (left, rest)
}

fn is_free_canonical(layout: &[usize]) -> bool {
    let (left, rest) = split(layout);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    if rest_height != left_height {
        return rest_height > left_height;
    }
    left.len() < rest.len() || (left.len() == rest.len() && left <= rest)
}

fn jump(candidate: &[usize]) -> Option<Vec<usize>> {
    let (left, _) = split(candidate);
    let p = left.len();
    let mut next = next_rooted(candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split(&next);
        let height = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (slot, level) in next[len - height - 1..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(next)
}

/// Successor of a rooted level sequence, optionally from a forced position.
fn next_rooted(layout: &[usize], from: Option<usize>) -> Option<Vec<usize>> {
    let p = match from {
        Some(p) => p,
        None => layout.iter().rposition(|&l| l != 1)?,
    };
    if p == 0 {
        return None;
    }
    let q = (0..p).rev().find(|&q| layout[q] + 1 == layout[p])?;
    let mut next = layout.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

fn layout_to_graph(layout: &[usize]) -> Graph {
    let mut adj = vec![Vec::new(); layout.len()];
    // last[l] is the most recent vertex seen at level l.
    let mut last: Vec<usize> = Vec::with_capacity(layout.len());
    for (v, &level) in layout.iter().enumerate() {
        last.truncate(level);
        if let Some(&parent) = last.last() {
            adj[parent].push(v);
            adj[v].push(parent);
        }
        last.push(v);
    }
    Graph::from_adjacency(adj)
}

/// All connected unlabeled graphs of order `n` (`2 <= n <= 7`), sorted by
/// canonical code.
///
/// Graphs of order `k + 1` are generated by joining a new vertex to every
/// neighbour subset of each graph of order `k`, deduplicated by canonical
/// code; the connected ones of the final order are kept.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(2..=MAX_GRAPH_ORDER).contains(&n) {
        return Err(Error::Guard {
            what: "graph order",
            value: n,
            range: "2..=7",
        });
    }
    let mut level = vec![Graph::empty(1)];
    for k in 1..n {
        let mut seen: HashSet<CanonicalCode> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let edges = g.edge_list();
            for subset in 0u32..(1 << k) {
                let mut grown = edges.clone();
                grown.extend((0..k).filter(|&v| subset >> v & 1 == 1).map(|v| (v, k)));
                let h = Graph::new(k + 1, &grown)?;
                if seen.insert(canonical_code(&h)?) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    let mut out: Vec<(CanonicalCode, Graph)> = level
        .into_iter()
        .filter(Graph::is_connected)
        .map(|g| Ok((canonical_code(&g)?, g)))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// Decodes a Prüfer sequence over `0..n` into its labeled tree.
pub fn prufer_to_tree(n: usize, code: &[usize]) -> Result<Graph> {
    if n < 2 {
        return Graph::new(n, &[]);
    }
    if code.len() != n - 2 || code.iter().any(|&c| c >= n) {
        return Err(Error::InvalidParameter(format!(
            "Prüfer sequence for order {n} must have {} entries below {n}",
            n - 2
        )));
    }
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(std::cmp::Reverse(c));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().expect("two leaves remain");
    let std::cmp::Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    Graph::new(n, &edges)
}

/// Uniformly random labeled tree on `n` vertices from a random Prüfer
/// sequence; deterministic for a fixed seed.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("random tree needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    prufer_to_tree(n, &code)
}

/// Random spanning tree plus `m - (n - 1)` distinct extra edges.
pub fn random_connected_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n < 1 || m + 1 < n || m > n * (n - 1) / 2 {
        return Err(Error::InvalidParameter(format!(
            "no connected simple graph has n = {n} and m = {m}"
        )));
    }
    let tree = random_tree(n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut spare: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !tree.has_edge(u, v))
        .collect();
    spare.shuffle(&mut rng);
    let mut edges = tree.edge_list();
    edges.extend(spare.into_iter().take(m + 1 - n));
    Graph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| free_trees(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
    }

    #[test]
    fn emitted_trees_are_distinct_trees() {
        for n in 1..=10 {
            let mut seen = HashSet::new();
            for t in free_trees(n).unwrap() {
                assert_eq!(t.n(), n);
                assert!(t.is_tree());
                assert!(seen.insert(canonical_code(&t).unwrap()));
            }
        }
    }

    #[test]
    fn tree_stream_is_restartable() {
        let a: Vec<Graph> = free_trees(8).unwrap().collect();
        let b: Vec<Graph> = free_trees(8).unwrap().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn guards() {
        assert!(free_trees(0).unwrap_err().is_guard());
        assert!(free_trees(21).unwrap_err().is_guard());
        assert!(connected_graphs(1).unwrap_err().is_guard());
        assert!(connected_graphs(8).unwrap_err().is_guard());
    }

    #[test]
    fn small_connected_graph_counts() {
        let counts: Vec<usize> = (2..=5).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 21]);
    }

    #[test]
    fn prufer_decoding() {
        let star = prufer_to_tree(5, &[0, 0, 0]).unwrap();
        assert_eq!(star.degree(0), 4);
        let path = prufer_to_tree(4, &[1, 2]).unwrap();
        assert_eq!(path.edge_list(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(prufer_to_tree(4, &[1]).is_err());
    }

    #[test]
    fn random_samplers() {
        for seed in 0..20 {
            let t = random_tree(12, seed).unwrap();
            assert!(t.is_tree() && t.m() == 11);
            assert!(random_connected_graph(10, 9, seed).unwrap().is_tree());
            let g = random_connected_graph(9, 20, seed).unwrap();
            assert!(g.is_connected() && g.m() == 20);
        }
        assert_eq!(random_connected_graph(8, 12, 7), random_connected_graph(8, 12, 7));
        assert!(random_connected_graph(5, 3, 0).is_err());
        assert!(random_connected_graph(5, 11, 0).is_err());
        assert_eq!(random_tree(1, 3).unwrap().n(), 1);
    }
}
