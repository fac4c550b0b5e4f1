//! Undirected simple graphs with dense vertex ids and the primitive
//! queries everything else builds on: degrees, bipartition, balls in
//! `G - W`, the parity function `pi`, shortest cycles, and paths.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

/// Vertices are dense integers `0..n`.
pub type Vertex = usize;

/// Sentinel distance for unreachable vertices in BFS arrays.
pub const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range (graph has {n} vertices)")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("a path must contain at least one vertex")]
    Empty,
    #[error("repeated vertex {0} in path")]
    RepeatedVertex(Vertex),
    #[error("vertex {0} is not an endpoint of the path")]
    NotEndpoint(Vertex),
    #[error("requested subpath length {r} exceeds path length {len}")]
    LengthOutOfRange { r: usize, len: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PiError {
    #[error("pi is only defined on bipartite graphs")]
    NotBipartite,
    #[error("pi is only defined on connected graphs")]
    NotConnected,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing or malformed header line (expected \"p <n> <m>\")")]
    BadHeader,
    #[error("line {0}: malformed edge line")]
    BadEdgeLine(usize),
    #[error("line {line}: vertex {v} out of range (graph has {n} vertices)")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("header declares {declared} edges but {found} edge lines present")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// An undirected simple graph. Immutable once built; adjacency lists are
/// kept sorted ascending so every traversal is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    bipartition: Option<Vec<u8>>,
    connected: bool,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count)
    }
}

impl Graph {
    /// Build a graph from an edge list. Duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        edge_count /= 2;
        let mut g = Graph {
            adj,
            edge_count,
            bipartition: None,
            connected: false,
        };
        g.bipartition = g.compute_bipartition();
        g.connected = g.compute_connected();
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::from_edges(n, &[]).expect("edgeless graph is always valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Edges as (u, v) pairs with u < v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Side labels of the unique-per-component 2-coloring, if the graph is
    /// bipartite. Side 0 is assigned to the lowest-id vertex of each
    /// component.
    pub fn bipartition(&self) -> Option<&[u8]> {
        self.bipartition.as_deref()
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    fn compute_bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut side = vec![2u8; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if side[start] != 2 {
                continue;
            }
            side[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == 2 {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    fn compute_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let dist = self.bfs_dists(&[0], None, usize::MAX);
        dist.iter().all(|&d| d != UNREACHED)
    }

    /// Multi-source BFS distances in `G - blocked`, capped at `depth_cap`.
    /// Blocked sources are ignored. Returns `UNREACHED` past the cap.
    pub fn bfs_dists(
        &self,
        sources: &[Vertex],
        blocked: Option<&[bool]>,
        depth_cap: usize,
    ) -> Vec<u32> {
        let n = self.vertex_count();
        let mut dist = vec![UNREACHED; n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if blocked.map_or(false, |b| b[s]) || dist[s] != UNREACHED {
                continue;
            }
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            if du as usize >= depth_cap {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == UNREACHED && !blocked.map_or(false, |b| b[w]) {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Average, minimum and maximum degree. The empty graph reports zeros.
    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.vertex_count();
        if n == 0 {
            return DegreeStats {
                average: Ratio::new(0, 1),
                minimum: 0,
                maximum: 0,
            };
        }
        DegreeStats {
            average: Ratio::new(2 * self.edge_count, n),
            minimum: (0..n).map(|v| self.degree(v)).min().unwrap(),
            maximum: (0..n).map(|v| self.degree(v)).max().unwrap(),
        }
    }

    /// Average degree as a float, 0 for the empty graph.
    pub fn average_degree(&self) -> f64 {
        let n = self.vertex_count();
        if n == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / n as f64
        }
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// The ball `B^radius(x)` in `G - avoid`: all vertices reachable from
    /// `x` within `radius` steps once `avoid` is deleted. Contains `x`.
    /// Result is ascending.
    pub fn ball(&self, x: &[Vertex], radius: usize, avoid: &[Vertex]) -> Vec<Vertex> {
        let blocked = self.mask(avoid);
        let dist = self.bfs_dists(x, Some(&blocked), radius);
        dist.iter()
            .enumerate()
            .filter(|&(_, &d)| d != UNREACHED)
            .map(|(v, _)| v)
            .collect()
    }

    /// External neighborhood `N(X)` of a vertex set.
    pub fn neighborhood(&self, x: &[Vertex]) -> Vec<Vertex> {
        let in_x = self.mask(x);
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for &u in x {
            for &w in &self.adj[u] {
                if !in_x[w] && !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Parity class of `u, v` in a connected bipartite graph: 0 when
    /// `u == v`, 1 across sides, 2 on the same side.
    pub fn pi(&self, u: Vertex, v: Vertex) -> Result<u8, PiError> {
        let side = self.bipartition.as_ref().ok_or(PiError::NotBipartite)?;
        if !self.connected {
            return Err(PiError::NotConnected);
        }
        if u == v {
            Ok(0)
        } else if side[u] != side[v] {
            Ok(1)
        } else {
            Ok(2)
        }
    }

    /// Connected components, each sorted ascending, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Induced subgraph on `keep` (ascending ids assumed distinct).
    /// Returns the subgraph plus the new-id -> old-id map.
    pub fn induced(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let n = self.vertex_count();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in sorted.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &v in &sorted {
            for &w in &self.adj[v] {
                if v < w && new_id[w] != usize::MAX {
                    edges.push((new_id[v], new_id[w]));
                }
            }
        }
        let g = Graph::from_edges(sorted.len(), &edges).expect("induced subgraph is simple");
        (g, sorted)
    }

    /// A shortest cycle, if any exists. Ties are broken by the smallest
    /// lexicographic vertex sequence starting from the smallest vertex id
    /// on any shortest cycle. Forests return `None`.
    pub fn shortest_cycle(&self) -> Option<Path> {
        self.shortest_cycle_avoiding(&[])
    }

    /// Shortest cycle in `G - avoid`, same tie-breaking.
    pub fn shortest_cycle_avoiding(&self, avoid: &[Vertex]) -> Option<Path> {
        let blocked = self.mask(avoid);
        let girth = self.girth_masked(&blocked)?;
        for s in self.vertices() {
            if blocked[s] {
                continue;
            }
            if self.root_on_cycle_of_length(s, girth, &blocked) {
                let cycle = self.lex_min_cycle_through(s, girth, &blocked);
                debug_assert!(cycle.is_some(), "root test promised a cycle");
                return cycle;
            }
        }
        None
    }

    /// Girth of `G - blocked` via a truncated BFS sweep; `None` if acyclic.
    fn girth_masked(&self, blocked: &[bool]) -> Option<usize> {
        let n = self.vertex_count();
        let mut best = usize::MAX;
        let mut dist = vec![UNREACHED; n];
        let mut parent = vec![usize::MAX; n];
        let mut touched: Vec<Vertex> = Vec::new();
        for s in 0..n {
            if blocked[s] {
                continue;
            }
            for &v in &touched {
                dist[v] = UNREACHED;
                parent[v] = usize::MAX;
            }
            touched.clear();
            dist[s] = 0;
            touched.push(s);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let du = dist[u] as usize;
                // Expanding deeper cannot reveal a cycle shorter than best.
                if best != usize::MAX && 2 * du >= best {
                    continue;
                }
                for &w in &self.adj[u] {
                    if blocked[w] {
                        continue;
                    }
                    if dist[w] == UNREACHED {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if w != parent[u] && u != parent[w] {
                        let cand = du + dist[w] as usize + 1;
                        if cand < best {
                            best = cand;
                        }
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Does some cycle of exactly the girth length pass through `s`?
    fn root_on_cycle_of_length(&self, s: Vertex, girth: usize, blocked: &[bool]) -> bool {
        let n = self.vertex_count();
        let mut dist = vec![UNREACHED; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u] as usize;
            if 2 * du > girth {
                continue;
            }
            for &w in &self.adj[u] {
                if blocked[w] {
                    continue;
                }
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] && u != parent[w] {
                    let cand = du + dist[w] as usize + 1;
                    if cand == girth {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Lexicographically smallest cycle sequence of length `girth` that
    /// starts at `s`. DFS in ascending neighbor order with a
    /// distance-to-return prune; the first completed cycle is the minimum.
    fn lex_min_cycle_through(&self, s: Vertex, girth: usize, blocked: &[bool]) -> Option<Path> {
        let dist_s = self.bfs_dists(&[s], Some(blocked), girth);
        let mut stack = vec![s];
        let mut used = vec![false; self.vertex_count()];
        used[s] = true;
        if self.lex_cycle_dfs(s, girth, blocked, &dist_s, &mut stack, &mut used) {
            return Some(Path::new(stack).expect("DFS builds a simple sequence"));
        }
        None
    }

    fn lex_cycle_dfs(
        &self,
        s: Vertex,
        girth: usize,
        blocked: &[bool],
        dist_s: &[u32],
        stack: &mut Vec<Vertex>,
        used: &mut [bool],
    ) -> bool {
        let depth = stack.len();
        let u = *stack.last().unwrap();
        if depth == girth {
            return self.has_edge(u, s);
        }
        for &w in &self.adj[u] {
            if blocked[w] || used[w] || dist_s[w] == UNREACHED {
                continue;
            }
            // w sits at position `depth`; it must reach s in girth - depth steps.
            if dist_s[w] as usize > girth - depth {
                continue;
            }
            stack.push(w);
            used[w] = true;
            if self.lex_cycle_dfs(s, girth, blocked, dist_s, stack, used) {
                return true;
            }
            used[w] = false;
            stack.pop();
        }
        false
    }

    /// Boolean mask of a vertex set.
    pub fn mask(&self, verts: &[Vertex]) -> Vec<bool> {
        let mut m = vec![false; self.vertex_count()];
        for &v in verts {
            m[v] = true;
        }
        m
    }

    /// Check that every pair in adjacency is mirrored; construction
    /// guarantees this, ingestion paths assert it.
    pub fn adjacency_symmetric(&self) -> bool {
        self.vertices()
            .all(|u| self.adj[u].iter().all(|&w| self.has_edge(w, u)))
    }
}

/// Average/min/max degree record. The average is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub average: Ratio<usize>,
    pub minimum: usize,
    pub maximum: usize,
}

/// A simple path, stored as its vertex sequence. A single vertex is a
/// path of length 0. `shortest_cycle` also returns this type: the closing
/// edge from last back to first is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    verts: Vec<Vertex>,
}

impl Path {
    pub fn new(verts: Vec<Vertex>) -> Result<Path, PathError> {
        if verts.is_empty() {
            return Err(PathError::Empty);
        }
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(PathError::RepeatedVertex(pair[0]));
            }
        }
        Ok(Path { verts })
    }

    pub fn single(v: Vertex) -> Path {
        Path { verts: vec![v] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    /// Path length = number of edges.
    pub fn length(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn first(&self) -> Vertex {
        self.verts[0]
    }

    pub fn last(&self) -> Vertex {
        *self.verts.last().unwrap()
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.first(), self.last())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.contains(&v)
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self) -> &[Vertex] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }

    pub fn reversed(&self) -> Path {
        let mut verts = self.verts.clone();
        verts.reverse();
        Path { verts }
    }

    /// The same path oriented to start at `v` (an endpoint).
    pub fn oriented_from(&self, v: Vertex) -> Result<Path, PathError> {
        if self.first() == v {
            Ok(self.clone())
        } else if self.last() == v {
            Ok(self.reversed())
        } else {
            Err(PathError::NotEndpoint(v))
        }
    }

    /// Subpath of length `r` starting at endpoint `v`.
    pub fn prefix(&self, v: Vertex, r: usize) -> Result<Path, PathError> {
        let oriented = self.oriented_from(v)?;
        if r > oriented.length() {
            return Err(PathError::LengthOutOfRange {
                r,
                len: oriented.length(),
            });
        }
        Ok(Path {
            verts: oriented.verts[..=r].to_vec(),
        })
    }

    /// True when every consecutive pair is an edge of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.verts.iter().all(|&v| v < g.vertex_count())
            && self.verts.windows(2).all(|e| g.has_edge(e[0], e[1]))
    }

    /// Concatenate paths that chain end-to-start, e.g. a-b + b-c = a-c.
    /// Fails if the junction does not match or a vertex repeats.
    pub fn join(&self, next: &Path) -> Result<Path, PathError> {
        if self.last() != next.first() {
            return Err(PathError::NotEndpoint(next.first()));
        }
        let mut verts = self.verts.clone();
        verts.extend_from_slice(&next.verts[1..]);
        Path::new(verts)
    }
}

/// Result of parsing the edge-list text format.
#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// Duplicate edge lines collapsed during parsing.
    pub duplicate_edges: usize,
}

/// Parse the edge-list format: header `p <n> <m>`, then `m` lines
/// `<u> <v>`, `#`-lines are comments. Duplicates collapse with a counter.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines.next().ok_or(ParseError::BadHeader)?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("p") {
        return Err(ParseError::BadHeader);
    }
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError::BadHeader)?;
    let m: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError::BadHeader)?;
    if parts.next().is_some() {
        return Err(ParseError::BadHeader);
    }

    let mut edges = Vec::with_capacity(m);
    let mut found = 0usize;
    for (line_no, line) in lines {
        let mut nums = line.split_whitespace();
        let u: usize = nums
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError::BadEdgeLine(line_no))?;
        let v: usize = nums
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError::BadEdgeLine(line_no))?;
        if nums.next().is_some() {
            return Err(ParseError::BadEdgeLine(line_no));
        }
        if u >= n {
            return Err(ParseError::VertexOutOfRange { line: line_no, v: u, n });
        }
        if v >= n {
            return Err(ParseError::VertexOutOfRange { line: line_no, v, n });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line: line_no, v: u });
        }
        edges.push((u, v));
        found += 1;
    }
    if found != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found,
        });
    }
    let graph = Graph::from_edges(n, &edges).expect("edge list already validated");
    let duplicate_edges = m - graph.edge_count();
    Ok(ParsedGraph {
        graph,
        duplicate_edges,
    })
}

/// Render a graph in the edge-list format parsed by [`parse_edge_list`].
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn degree_stats_regular_and_empty() {
        let k4 = complete(4);
        let s = k4.degree_stats();
        assert_eq!(s.average, Ratio::new(3, 1));
        assert_eq!((s.minimum, s.maximum), (3, 3));

        let e5 = Graph::edgeless(5);
        let s = e5.degree_stats();
        assert_eq!(s.average, Ratio::new(0, 1));
        assert_eq!((s.minimum, s.maximum), (0, 0));
    }

    #[test]
    fn degree_stats_star() {
        let s = star(4).degree_stats();
        assert_eq!(s.average, Ratio::new(8, 5));
        assert_eq!((s.minimum, s.maximum), (1, 4));
    }

    #[test]
    fn bipartition_cycles() {
        let c6 = cycle(6);
        assert_eq!(c6.bipartition().unwrap(), &[0, 1, 0, 1, 0, 1]);
        assert!(cycle(5).bipartition().is_none());
    }

    #[test]
    fn bipartition_two_disjoint_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        // lowest id of each component lands on side 0
        assert_eq!(g.bipartition().unwrap(), &[0, 1, 0, 1]);
    }

    #[test]
    fn ball_examples() {
        let path3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path3.ball(&[0], 1, &[]), vec![0, 1]);
        assert_eq!(path3.ball(&[0], 0, &[]), vec![0]);

        let c6 = cycle(6);
        assert_eq!(c6.ball(&[0], 2, &[1]), vec![0, 4, 5]);
    }

    #[test]
    fn ball_monotone_in_radius() {
        let g = complete_bipartite(4, 4);
        let mut prev: Vec<Vertex> = vec![0];
        for r in 0..4 {
            let b = g.ball(&[0], r, &[2]);
            assert!(prev.iter().all(|v| b.contains(v)));
            prev = b;
        }
    }

    #[test]
    fn pi_on_c6() {
        let c6 = cycle(6);
        assert_eq!(c6.pi(0, 0).unwrap(), 0);
        assert_eq!(c6.pi(0, 1).unwrap(), 1);
        assert_eq!(c6.pi(0, 2).unwrap(), 2);
    }

    #[test]
    fn pi_rejects_bad_inputs() {
        assert_eq!(cycle(5).pi(0, 1), Err(PiError::NotBipartite));
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(disconnected.pi(0, 2), Err(PiError::NotConnected));
    }

    #[test]
    fn pi_additivity_mod_2() {
        let g = complete_bipartite(3, 4);
        for u in g.vertices() {
            for v in g.vertices() {
                for w in g.vertices() {
                    let lhs = g.pi(u, w).unwrap() % 2;
                    let rhs = (g.pi(u, v).unwrap() + g.pi(v, w).unwrap()) % 2;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn shortest_cycle_on_k33_is_4_cycle() {
        let g = complete_bipartite(3, 3);
        let c = g.shortest_cycle().unwrap();
        assert_eq!(c.vertices().len(), 4);
        // lex-min 4-cycle through vertex 0: 0,3,1,4
        assert_eq!(c.vertices(), &[0, 3, 1, 4]);
        assert!(c.is_valid_in(&g));
        assert!(g.has_edge(c.first(), c.last()));
    }

    #[test]
    fn shortest_cycle_absent_on_trees() {
        let t = star(5);
        assert!(t.shortest_cycle().is_none());
        assert!(Graph::edgeless(3).shortest_cycle().is_none());
    }

    #[test]
    fn shortest_cycle_c6_with_chord() {
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        let g = Graph::from_edges(6, &edges).unwrap();
        let c = g.shortest_cycle().unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn shortest_cycle_respects_avoid() {
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        let g = Graph::from_edges(6, &edges).unwrap();
        let c = g.shortest_cycle_avoiding(&[1]).unwrap();
        assert_eq!(c.vertices(), &[0, 3, 4, 5]);
    }

    // Independent girth oracle: for each edge, remove it and measure the
    // distance between its endpoints; girth = min dist + 1.
    fn girth_by_edge_deletion(g: &Graph) -> Option<usize> {
        let mut best = usize::MAX;
        for (u, v) in g.edges() {
            let mut dist = vec![UNREACHED; g.vertex_count()];
            dist[u] = 0;
            let mut queue = VecDeque::from([u]);
            while let Some(x) = queue.pop_front() {
                for &w in g.neighbors(x) {
                    if x == u && w == v {
                        continue;
                    }
                    if dist[w] == UNREACHED {
                        dist[w] = dist[x] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if dist[v] != UNREACHED {
                best = best.min(dist[v] as usize + 1);
            }
        }
        (best != usize::MAX).then_some(best)
    }

    #[test]
    fn girth_matches_edge_deletion_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [5usize, 8, 12, 20] {
            for _ in 0..20 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(0.25) {
                            edges.push((u, v));
                        }
                    }
                }
                let g = Graph::from_edges(n, &edges).unwrap();
                let oracle = girth_by_edge_deletion(&g);
                let got = g.shortest_cycle().map(|c| c.vertices().len());
                assert_eq!(got, oracle, "n={n} edges={edges:?}");
            }
        }
    }

    #[test]
    fn path_prefix_examples() {
        let p = Path::new(vec![10, 11, 12, 13]).unwrap();
        assert_eq!(p.prefix(10, 2).unwrap().vertices(), &[10, 11, 12]);
        assert_eq!(p.prefix(13, 0).unwrap().vertices(), &[13]);
        assert_eq!(p.prefix(13, 3).unwrap().vertices(), &[13, 12, 11, 10]);
        assert_eq!(p.prefix(11, 1), Err(PathError::NotEndpoint(11)));
        assert_eq!(
            p.prefix(10, 4),
            Err(PathError::LengthOutOfRange { r: 4, len: 3 })
        );
    }

    #[test]
    fn path_rejects_duplicates_and_empty() {
        assert!(Path::new(vec![]).is_err());
        assert_eq!(
            Path::new(vec![0, 1, 0]),
            Err(PathError::RepeatedVertex(0))
        );
    }

    #[test]
    fn graph_construction_rejections() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange { v: 5, n: 2 })
        );
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.adjacency_symmetric());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = complete_bipartite(3, 4);
        let text = write_edge_list(&g);
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(parsed.graph, g);
        assert_eq!(parsed.duplicate_edges, 0);
    }

    #[test]
    fn edge_list_parser_rejections() {
        assert_eq!(parse_edge_list("").unwrap_err(), ParseError::BadHeader);
        assert_eq!(
            parse_edge_list("p 3 1\n0 0\n").unwrap_err(),
            ParseError::SelfLoop { line: 2, v: 0 }
        );
        assert_eq!(
            parse_edge_list("p 3 1\n0 7\n").unwrap_err(),
            ParseError::VertexOutOfRange { line: 2, v: 7, n: 3 }
        );
        assert_eq!(
            parse_edge_list("p 3 2\n0 1\n").unwrap_err(),
            ParseError::EdgeCountMismatch {
                declared: 2,
                found: 1
            }
        );
    }

    #[test]
    fn edge_list_counts_duplicates_and_comments() {
        let text = "# a comment\np 3 3\n0 1\n# another\n1 0\n1 2\n";
        let parsed = parse_edge_list(text).unwrap();
        assert_eq!(parsed.graph.edge_count(), 2);
        assert_eq!(parsed.duplicate_edges, 1);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = complete(5);
        let (h, map) = g.induced(&[1, 3, 4]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(map, vec![1, 3, 4]);
    }

    #[test]
    fn components_ordering() {
        let g = Graph::from_edges(5, &[(3, 4), (0, 1)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }
}
