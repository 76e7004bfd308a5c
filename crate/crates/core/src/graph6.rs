//! graph6 encoding: an order header followed by the upper triangle of the
//! adjacency matrix in column-major order, packed six bits per printable
//! character (offset 63).

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;
const LONG: u8 = 126;

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_order(&mut out, n);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(chunk + BIAS);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(LONG);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([LONG, LONG]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&bad) = bytes.iter().find(|&&b| !(BIAS..=LONG).contains(&b)) {
        return Err(Error::Graph6(format!("character {:?} out of range", bad as char)));
    }
    let (n, body) = read_order(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let want = bits.div_ceil(6);
    if body.len() != want {
        return Err(Error::Graph6(format!(
            "order {n} needs {want} data characters, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - BIAS;
            if (chunk >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let tail = body[want - 1] - BIAS;
        let pad = 6 - bits % 6;
        if tail & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Graph::new(n, &edges)
}

fn read_order(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let take = |digits: &[u8]| digits.iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
    match bytes {
        [] => Err(Error::Graph6("empty input".into())),
        [LONG, LONG, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated order header".into()));
            }
            Ok((take(&rest[..6]), &rest[6..]))
        }
        [LONG, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated order header".into()));
            }
            Ok((take(&rest[..3]), &rest[3..]))
        }
        [first, rest @ ..] => Ok(((first - BIAS) as usize, rest)),
    }
}

/// Decodes one graph per non-empty line.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(decode)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        let k3 = decode("Bw").unwrap();
        assert_eq!((k3.n(), k3.m()), (3, 3));
        let p3 = decode("Bg").unwrap();
        assert_eq!(p3.edge_list(), vec![(0, 1), (1, 2)]);
        assert_eq!(encode(&k3), "Bw");
        assert_eq!(encode(&p3), "Bg");
        // Example from the petgraph test-suite: edges a-c, a-e, b-d, d-e.
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn malformed_inputs() {
        assert!(decode("").is_err());
        assert!(decode("B").is_err());
        assert!(decode("Bww").is_err());
        assert!(decode("Bx").is_err(), "padding bits set");
        assert!(decode("B\u{7f}").is_err());
        assert!(decode("~?").is_err());
    }

    #[test]
    fn long_orders() {
        let g = Graph::empty(100);
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn header_and_lines() {
        assert_eq!(decode(">>graph6<<Bw").unwrap().m(), 3);
        assert_eq!(decode_lines("Bw\n\nBg\n").unwrap().len(), 2);
        assert_eq!(decode("@").unwrap().n(), 1);
        assert_eq!(decode("?").unwrap().n(), 0);
    }
}
