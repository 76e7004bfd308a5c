//! Canonical codes for small graphs.
//!
//! Vertices are split into an equitable ordered partition by iterated
//! neighbour counting. While some cell is not a singleton, each vertex of the
//! first such cell is individualized in turn and the partition re-refined.
//! Every discrete partition yields a vertex order, and the code is the
//! lexicographically smallest upper-triangle adjacency bitstring among them.
//! Interchangeable twins are only branched on once.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`canonical_code`].
pub const MAX_CANON_ORDER: usize = 16;

/// Isomorphism-invariant byte string: equal iff the graphs are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_hex())
    }
}

type Cells = Vec<Vec<usize>>;

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    let n = g.n();
    if n > MAX_CANON_ORDER {
        return Err(Error::Guard {
            what: "canonical code order",
            value: n,
            range: "0..=16",
        });
    }
    let masks: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let mut best: Option<Vec<u8>> = None;
    let start: Cells = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
    search(&masks, start, &mut best);
    Ok(CanonicalCode(best.unwrap_or_else(|| vec![0])))
}

/// Code of the graph under an explicit vertex order (`order[k]` is the
/// vertex placed at position `k`).
pub fn code_for_order(g: &Graph, order: &[usize]) -> CanonicalCode {
    let masks: Vec<u64> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    CanonicalCode(encode(&masks, order))
}

fn encode(masks: &[u64], order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(1 + n * n / 16 + 1);
    out.push(n as u8);
    let mut byte = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            let bit = (masks[order[i]] >> order[j]) & 1;
            byte = (byte << 1) | bit as u8;
            filled += 1;
            if filled == 8 {
                out.push(byte);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(byte << (8 - filled));
    }
    out
}

fn search(masks: &[u64], cells: Cells, best: &mut Option<Vec<u8>>) {
    let cells = refine(masks, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = encode(masks, &order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        if tried.iter().any(|&w| are_twins(masks, v, w)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&x| x != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(masks, next, best);
    }
}

fn are_twins(masks: &[u64], v: usize, w: usize) -> bool {
    let strip = !((1u64 << v) | (1u64 << w));
    masks[v] & strip == masks[w] & strip
}

/// Splits cells by neighbour counts into earlier cells until the partition
/// is equitable. Sub-cells are ordered by increasing count.
fn refine(masks: &[u64], mut cells: Cells) -> Cells {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter = cells[s].iter().fold(0u64, |m, &v| m | (1 << v));
            for x in 0..cells.len() {
                if cells[x].len() == 1 {
                    continue;
                }
                let counts: Vec<u32> = cells[x]
                    .iter()
                    .map(|&v| (masks[v] & splitter).count_ones())
                    .collect();
                if counts.iter().all(|&c| c == counts[0]) {
                    continue;
                }
                let mut keys: Vec<u32> = counts.clone();
                keys.sort_unstable();
                keys.dedup();
                let parts: Vec<Vec<usize>> = keys
                    .iter()
                    .map(|&k| {
                        cells[x]
                            .iter()
                            .zip(&counts)
                            .filter(|&(_, &c)| c == k)
                            .map(|(&v, _)| v)
                            .collect()
                    })
                    .collect();
                cells.splice(x..=x, parts);
                continue 'restart;
            }
        }
        return cells;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn relabelled_paths_share_code() {
        let p = path(4);
        let q = p.relabel(&[3, 1, 0, 2]).unwrap();
        assert_eq!(canonical_code(&p).unwrap(), canonical_code(&q).unwrap());
    }

    #[test]
    fn star_differs_from_path() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_code(&star).unwrap(), canonical_code(&path(4)).unwrap());
    }

    #[test]
    fn order_guard() {
        assert!(canonical_code(&path(17)).unwrap_err().is_guard());
        assert!(canonical_code(&path(16)).is_ok());
    }

    #[test]
    fn large_twin_classes_are_fast() {
        let edges: Vec<_> = (1..16).map(|i| (0, i)).collect();
        let star = Graph::new(16, &edges).unwrap();
        assert!(canonical_code(&star).is_ok());
        let k = Graph::new(16, &[]).unwrap().complement();
        assert!(canonical_code(&k).is_ok());
    }

    #[test]
    fn empty_and_trivial() {
        assert_eq!(canonical_code(&Graph::empty(0)).unwrap().as_bytes(), &[0]);
        assert_ne!(
            canonical_code(&Graph::empty(1)).unwrap(),
            canonical_code(&Graph::empty(2)).unwrap()
        );
    }
}
