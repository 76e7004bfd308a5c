//! Simple undirected graphs on dense vertex ids, with the structural
//! predicates and transforms that the index identities quantify over.
//!
//! Graphs are immutable once built. Every transform returns a fresh graph so
//! callers can hold the graph before and after a transform at the same time.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Per-vertex degrees together with their extremes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSummary {
    pub degrees: Vec<usize>,
    /// Minimum degree (0 for the empty vertex set).
    pub min: usize,
    /// Maximum degree.
    pub max: usize,
}

/// Eccentricity of every vertex of a connected graph, in hops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccentricityTable {
    pub ecc: Vec<usize>,
}

impl EccentricityTable {
    pub fn radius(&self) -> usize {
        self.ecc.iter().copied().min().unwrap_or(0)
    }

    pub fn diameter(&self) -> usize {
        self.ecc.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regularity {
    Regular,
    SemiregularBipartite,
    Other,
}

/// Result of hanging a new path off a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAttachment {
    pub graph: Graph,
    /// True when the anchor was a pendant vertex of a graph with at least
    /// three vertices, the setting in which the monotonicity claim applies.
    pub anchor_was_pendant: bool,
}

impl Graph {
    /// Builds a graph on vertices `0..n`, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    // Internal constructor for adjacency lists already known to be simple
    // and symmetric; only sorts.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice_m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            twice_m += list.len();
        }
        debug_assert!(twice_m % 2 == 0);
        Graph { adj, m: twice_m / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + Clone + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        let degrees = self.degrees();
        let min = degrees.iter().copied().min().unwrap_or(0);
        let max = degrees.iter().copied().max().unwrap_or(0);
        DegreeSummary { degrees, min, max }
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// A single vertex counts as connected. The order-zero graph does too.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    /// Tree with at most one vertex of degree greater than two.
    pub fn is_spider(&self) -> bool {
        self.is_tree() && self.adj.iter().filter(|l| l.len() > 2).count() <= 1
    }

    /// Leg lengths, ascending, of a spider with a vertex of degree at least
    /// three. `None` for paths and non-spiders.
    pub fn spider_legs(&self) -> Option<Vec<usize>> {
        if !self.is_spider() {
            return None;
        }
        let centre = (0..self.n()).find(|&v| self.degree(v) > 2)?;
        let mut legs: Vec<usize> = self.adj[centre]
            .iter()
            .map(|&first| {
                let (mut prev, mut cur, mut len) = (centre, first, 1);
                while self.degree(cur) == 2 {
                    let next = self.adj[cur][0] + self.adj[cur][1] - prev;
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            })
            .collect();
        legs.sort_unstable();
        Some(legs)
    }

    /// BFS two-colouring; `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for start in 0..self.n() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u]?;
                for &v in &self.adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn classify_regularity(&self) -> Result<Regularity> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let DegreeSummary { degrees, min, max } = self.degree_summary();
        if min == max {
            return Ok(Regularity::Regular);
        }
        let joins_extremes = self.edges().all(|(u, v)| {
            let (a, b) = (degrees[u].min(degrees[v]), degrees[u].max(degrees[v]));
            a == min && b == max
        });
        // Edges joining only min- and max-degree vertices already force a
        // bipartition; the colouring check is kept for clarity.
        if joins_extremes && self.is_bipartite() {
            Ok(Regularity::SemiregularBipartite)
        } else {
            Ok(Regularity::Other)
        }
    }

    pub fn eccentricities(&self) -> Result<EccentricityTable> {
        let mut ecc = Vec::with_capacity(self.n());
        for v in 0..self.n() {
            let mut far = 0;
            for d in self.distances_from(v) {
                far = far.max(d.ok_or(Error::Disconnected)?);
            }
            ecc.push(far);
        }
        Ok(EccentricityTable { ecc })
    }

    /// Largest `|d(u) - d(v)|` over the edges; 0 for an edgeless graph.
    pub fn max_edge_difference(&self) -> usize {
        self.edges()
            .map(|(u, v)| self.degree(u).abs_diff(self.degree(v)))
            .max()
            .unwrap_or(0)
    }

    /// Line graph. Vertex `i` of the result is the `i`-th edge of
    /// [`Graph::edges`].
    pub fn line_graph(&self) -> Result<Graph> {
        if self.m == 0 {
            return Err(Error::Edgeless);
        }
        let edges = self.edge_list();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut adj = vec![Vec::new(); edges.len()];
        for around in &incident {
            for (k, &a) in around.iter().enumerate() {
                for &b in &around[k + 1..] {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        // Two distinct simple edges share at most one endpoint, so no pair
        // is recorded twice.
        Ok(Graph::from_adjacency(adj))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Adds a new vertex (id `n`) adjacent to every existing vertex.
    pub fn join_apex(&self) -> Graph {
        let n = self.n();
        let mut adj = self.adj.clone();
        for list in adj.iter_mut() {
            list.push(n);
        }
        adj.push((0..n).collect());
        Graph::from_adjacency(adj)
    }

    /// Appends a path of `t` new vertices at `anchor`. New ids continue from
    /// `n` in order along the path.
    pub fn attach_pendant_path(&self, anchor: usize, t: usize) -> Result<PathAttachment> {
        if t < 1 {
            return Err(Error::InvalidParameter(
                "pendant path length must be at least 1".into(),
            ));
        }
        if anchor >= self.n() {
            return Err(Error::InvalidParameter(format!(
                "anchor {anchor} is not a vertex of a graph of order {}",
                self.n()
            )));
        }
        let anchor_was_pendant = self.n() >= 3 && self.degree(anchor) == 1;
        let n = self.n();
        let mut adj = self.adj.clone();
        adj.resize(n + t, Vec::new());
        let mut prev = anchor;
        for new in n..n + t {
            adj[prev].push(new);
            adj[new].push(prev);
            prev = new;
        }
        Ok(PathAttachment {
            graph: Graph::from_adjacency(adj),
            anchor_was_pendant,
        })
    }

    /// Moves the branch at `w1` from `hub` to the far end of the pendant path
    /// `path` hanging from `hub`: removes edge `hub–w1`, adds `path.last()–w1`.
    ///
    /// Requires `deg(hub) >= 3`, `hub` adjacent to `w1` and `path[0]`,
    /// `deg(w1) <= 2`, and `path` a pendant path (interior vertices of degree
    /// two, last vertex a leaf).
    pub fn relocate_branch(&self, hub: usize, w1: usize, path: &[usize]) -> Result<Graph> {
        let n = self.n();
        let fail = |msg: String| Err(Error::Precondition(msg));
        if hub >= n || w1 >= n || path.iter().any(|&v| v >= n) {
            return fail("vertex id out of range".into());
        }
        let Some((&first, _)) = path.split_first() else {
            return fail("pendant path is empty".into());
        };
        if self.degree(hub) < 3 {
            return fail(format!("deg(u) = {} < 3", self.degree(hub)));
        }
        if !self.has_edge(hub, w1) {
            return fail(format!("u = {hub} is not adjacent to w1 = {w1}"));
        }
        if !self.has_edge(hub, first) {
            return fail(format!("u = {hub} is not adjacent to v1 = {first}"));
        }
        if w1 == hub || path.contains(&w1) || path.contains(&hub) {
            return fail("w1 and u must lie off the pendant path".into());
        }
        if self.degree(w1) > 2 {
            return fail(format!("deg(w1) = {} > 2", self.degree(w1)));
        }
        for (i, &v) in path.iter().enumerate() {
            let last = i + 1 == path.len();
            let want = if last { 1 } else { 2 };
            if self.degree(v) != want {
                return fail(format!(
                    "path vertex {v} has degree {}, expected {want}",
                    self.degree(v)
                ));
            }
            if !last && !self.has_edge(v, path[i + 1]) {
                return fail(format!("path vertices {v} and {} are not adjacent", path[i + 1]));
            }
        }
        let end = *path.last().unwrap_or(&first);
        let mut adj = self.adj.clone();
        adj[hub].retain(|&x| x != w1);
        adj[w1].retain(|&x| x != hub);
        adj[end].push(w1);
        adj[w1].push(end);
        Ok(Graph::from_adjacency(adj))
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("relabelling is not a permutation".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        Ok(Graph::from_adjacency(adj))
    }
}
