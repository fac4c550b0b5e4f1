//! Independent certificate verification and brute-force ground truth:
//! validate balanced-subdivision certificates clause by clause, read and
//! write the certificate text format, and exhaustively compute the
//! maximum balanced subdivision on small graphs.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::graph::{Graph, Path, Vertex};

/// A balanced-subdivision witness: `k` core vertices, one path per core
/// pair, all of length exactly `ell`, internally disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionCertificate {
    pub cores: Vec<Vertex>,
    /// Keyed by core pairs `(min, max)`.
    pub pair_paths: BTreeMap<(Vertex, Vertex), Path>,
    pub ell: usize,
}

impl SubdivisionCertificate {
    pub fn k(&self) -> usize {
        self.cores.len()
    }

    /// Trivial certificate with no pairs.
    pub fn trivial(cores: Vec<Vertex>, ell: usize) -> SubdivisionCertificate {
        SubdivisionCertificate {
            cores,
            pair_paths: BTreeMap::new(),
            ell,
        }
    }

    /// Translate vertex ids through `map` (new id -> old id), e.g. to lift
    /// a certificate built in an extracted subgraph back to the input.
    pub fn remap(&self, map: &[Vertex]) -> SubdivisionCertificate {
        SubdivisionCertificate {
            cores: self.cores.iter().map(|&v| map[v]).collect(),
            pair_paths: self
                .pair_paths
                .iter()
                .map(|(&(a, b), p)| {
                    let verts: Vec<Vertex> = p.vertices().iter().map(|&v| map[v]).collect();
                    let (na, nb) = (map[a], map[b]);
                    let key = (na.min(nb), na.max(nb));
                    (key, Path::new(verts).expect("remap keeps paths simple"))
                })
                .collect(),
            ell: self.ell,
        }
    }
}

/// A violated certificate clause. `clause()` names which of the five
/// checks failed: (a) pair coverage, (b) endpoints, (c) edges, (d)
/// lengths, (e) internal disjointness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateCore { v: Vertex },
    MissingPair { a: Vertex, b: Vertex },
    UnknownPair { a: Vertex, b: Vertex },
    WrongEndpoints { a: Vertex, b: Vertex },
    MissingEdge { a: Vertex, b: Vertex, u: Vertex, v: Vertex },
    WrongLength { a: Vertex, b: Vertex, got: usize, want: usize },
    InternalOverlap { v: Vertex },
    CoreOnInterior { v: Vertex },
}

impl Violation {
    pub fn clause(&self) -> char {
        match self {
            Violation::DuplicateCore { .. }
            | Violation::MissingPair { .. }
            | Violation::UnknownPair { .. } => 'a',
            Violation::WrongEndpoints { .. } => 'b',
            Violation::MissingEdge { .. } => 'c',
            Violation::WrongLength { .. } => 'd',
            Violation::InternalOverlap { .. } | Violation::CoreOnInterior { .. } => 'e',
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::DuplicateCore { v } => write!(f, "clause a: duplicate core {v}"),
            Violation::MissingPair { a, b } => write!(f, "clause a: missing pair {a},{b}"),
            Violation::UnknownPair { a, b } => write!(f, "clause a: unknown pair {a},{b}"),
            Violation::WrongEndpoints { a, b } => {
                write!(f, "clause b: path endpoints do not match pair {a},{b}")
            }
            Violation::MissingEdge { a, b, u, v } => {
                write!(f, "clause c: pair {a},{b} uses non-edge {u}-{v}")
            }
            Violation::WrongLength { a, b, got, want } => {
                write!(f, "clause d: pair {a},{b} has length {got}, expected {want}")
            }
            Violation::InternalOverlap { v } => {
                write!(f, "clause e: internal vertex {v} used twice")
            }
            Violation::CoreOnInterior { v } => {
                write!(f, "clause e: core {v} appears as an internal vertex")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub ok: bool,
    pub violation: Option<Violation>,
}

/// Check a certificate against a graph: all pairs covered exactly once,
/// endpoints match, every edge exists, every length is `ell`, interiors
/// pairwise disjoint and core-free. Stops at the first violation.
pub fn verify_subdivision(g: &Graph, cert: &SubdivisionCertificate) -> VerifyReport {
    let fail = |v: Violation| VerifyReport {
        ok: false,
        violation: Some(v),
    };
    let mut seen_core = vec![false; g.vertex_count().max(1)];
    for &c in &cert.cores {
        if c >= g.vertex_count() || seen_core[c] {
            return fail(Violation::DuplicateCore { v: c });
        }
        seen_core[c] = true;
    }
    // (a) the pair set is exactly all core pairs
    let mut expected: Vec<(Vertex, Vertex)> = Vec::new();
    for (i, &a) in cert.cores.iter().enumerate() {
        for &b in &cert.cores[i + 1..] {
            expected.push((a.min(b), a.max(b)));
        }
    }
    expected.sort_unstable();
    for &(a, b) in &expected {
        if !cert.pair_paths.contains_key(&(a, b)) {
            return fail(Violation::MissingPair { a, b });
        }
    }
    for &(a, b) in cert.pair_paths.keys() {
        if expected.binary_search(&(a, b)).is_err() {
            return fail(Violation::UnknownPair { a, b });
        }
    }
    let mut interior_used = vec![false; g.vertex_count()];
    for (&(a, b), path) in &cert.pair_paths {
        // (b) endpoints
        let (x, y) = path.endpoints();
        if (x.min(y), x.max(y)) != (a, b) {
            return fail(Violation::WrongEndpoints { a, b });
        }
        // (c) edges
        for e in path.vertices().windows(2) {
            if !g.has_edge(e[0], e[1]) {
                return fail(Violation::MissingEdge {
                    a,
                    b,
                    u: e[0],
                    v: e[1],
                });
            }
        }
        // (d) length
        if path.length() != cert.ell {
            return fail(Violation::WrongLength {
                a,
                b,
                got: path.length(),
                want: cert.ell,
            });
        }
        // (e) interiors
        for &v in path.interior() {
            if seen_core[v] {
                return fail(Violation::CoreOnInterior { v });
            }
            if interior_used[v] {
                return fail(Violation::InternalOverlap { v });
            }
            interior_used[v] = true;
        }
    }
    VerifyReport {
        ok: true,
        violation: None,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertParseError {
    #[error("missing or malformed header (expected \"tkcert k=<k> ell=<ell>\")")]
    BadHeader,
    #[error("missing or malformed cores line")]
    BadCores,
    #[error("line {0}: malformed path line")]
    BadPathLine(usize),
    #[error("header declares k={k} but {found} cores listed")]
    CoreCountMismatch { k: usize, found: usize },
    #[error("path line repeats or malforms a vertex sequence")]
    BadPath,
}

/// Render a certificate in the text format:
/// header `tkcert k=<k> ell=<ell>`, a `cores:` line, then one
/// `path <i> <j>: <v0> ... <vell>` line per pair.
pub fn write_certificate(cert: &SubdivisionCertificate) -> String {
    let mut out = format!("tkcert k={} ell={}\n", cert.k(), cert.ell);
    out.push_str("cores:");
    for &c in &cert.cores {
        out.push_str(&format!(" {c}"));
    }
    out.push('\n');
    for (&(a, b), path) in &cert.pair_paths {
        out.push_str(&format!("path {a} {b}:"));
        for &v in path.vertices() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<SubdivisionCertificate, CertParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or(CertParseError::BadHeader)?;
    let rest = header.strip_prefix("tkcert ").ok_or(CertParseError::BadHeader)?;
    let mut k: Option<usize> = None;
    let mut ell: Option<usize> = None;
    for piece in rest.split_whitespace() {
        if let Some(v) = piece.strip_prefix("k=") {
            k = v.parse().ok();
        } else if let Some(v) = piece.strip_prefix("ell=") {
            ell = v.parse().ok();
        } else {
            return Err(CertParseError::BadHeader);
        }
    }
    let (k, ell) = (
        k.ok_or(CertParseError::BadHeader)?,
        ell.ok_or(CertParseError::BadHeader)?,
    );

    let (_, cores_line) = lines.next().ok_or(CertParseError::BadCores)?;
    let cores_body = cores_line.strip_prefix("cores:").ok_or(CertParseError::BadCores)?;
    let cores: Vec<Vertex> = cores_body
        .split_whitespace()
        .map(|s| s.parse::<Vertex>().map_err(|_| CertParseError::BadCores))
        .collect::<Result<_, _>>()?;
    if cores.len() != k {
        return Err(CertParseError::CoreCountMismatch {
            k,
            found: cores.len(),
        });
    }

    let mut pair_paths = BTreeMap::new();
    for (line_no, line) in lines {
        let body = line
            .strip_prefix("path ")
            .ok_or(CertParseError::BadPathLine(line_no))?;
        let (pair_part, verts_part) = body
            .split_once(':')
            .ok_or(CertParseError::BadPathLine(line_no))?;
        let mut pair_nums = pair_part.split_whitespace();
        let a: Vertex = pair_nums
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(CertParseError::BadPathLine(line_no))?;
        let b: Vertex = pair_nums
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(CertParseError::BadPathLine(line_no))?;
        if pair_nums.next().is_some() {
            return Err(CertParseError::BadPathLine(line_no));
        }
        let verts: Vec<Vertex> = verts_part
            .split_whitespace()
            .map(|s| s.parse::<Vertex>().map_err(|_| CertParseError::BadPathLine(line_no)))
            .collect::<Result<_, _>>()?;
        let path = Path::new(verts).map_err(|_| CertParseError::BadPath)?;
        pair_paths.insert((a.min(b), a.max(b)), path);
    }
    Ok(SubdivisionCertificate {
        cores,
        pair_paths,
        ell,
    })
}

/// Search limits for the exhaustive oracle.
#[derive(Debug, Clone)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub node_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 14,
            node_budget: 50_000_000,
        }
    }
}

/// Ground truth for the maximum balanced subdivision a small graph
/// contains: the best `k`, the first length achieving it, a witness that
/// passes [`verify_subdivision`], and the search effort.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub best_k: usize,
    pub best_ell: usize,
    pub witness: SubdivisionCertificate,
    pub nodes_explored: u64,
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle capped at {cap} vertices, graph has {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("oracle budget exceeded; best-so-far is a lower bound")]
    BudgetExceeded { partial: Box<OracleResult> },
}

/// Exhaustive search over core sets and internally disjoint uniform-length
/// path systems, lengths ascending and core counts descending. Any graph
/// with an edge yields at least `k = 2`.
pub fn oracle_max_subdivision(
    g: &Graph,
    max_ell: usize,
    limits: &OracleLimits,
) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count();
    if n > limits.max_vertices {
        return Err(OracleError::TooLarge {
            n,
            cap: limits.max_vertices,
        });
    }
    let mut nodes = 0u64;
    if g.edge_count() == 0 {
        let cores: Vec<Vertex> = g.vertices().take(1).collect();
        let witness = SubdivisionCertificate::trivial(cores, 0);
        return Ok(OracleResult {
            best_k: witness.k(),
            best_ell: 0,
            witness,
            nodes_explored: 0,
        });
    }
    let (u, v) = g.edges().next().expect("edge exists");
    let mut base = SubdivisionCertificate::trivial(vec![u, v], 1);
    base.pair_paths
        .insert((u, v), Path::new(vec![u, v]).expect("edge path"));
    let mut best: Option<(usize, usize, SubdivisionCertificate)> = Some((2, 1, base));

    let mut failed: HashSet<(Vec<Vertex>, usize)> = HashSet::new();
    for ell in 1..=max_ell {
        let mut k = max_feasible_k(g, ell);
        let current_best = best.as_ref().map_or(0, |b| b.0);
        while k > current_best {
            match search_k_ell(g, k, ell, limits.node_budget, &mut nodes, &mut failed) {
                Ok(Some(cert)) => {
                    best = Some((k, ell, cert));
                    break;
                }
                Ok(None) => k -= 1,
                Err(()) => {
                    let (bk, be, w) = best.expect("baseline set");
                    return Err(OracleError::BudgetExceeded {
                        partial: Box::new(OracleResult {
                            best_k: bk,
                            best_ell: be,
                            witness: w,
                            nodes_explored: nodes,
                        }),
                    });
                }
            }
        }
    }
    let (best_k, best_ell, witness) = best.expect("baseline set");
    debug_assert!(verify_subdivision(g, &witness).ok);
    Ok(OracleResult {
        best_k,
        best_ell,
        witness,
        nodes_explored: nodes,
    })
}

/// The best `k >= 2` achievable at one exact length, with witness;
/// `None` when not even a single length-`ell` path exists.
pub fn oracle_best_k_for_ell(
    g: &Graph,
    ell: usize,
    limits: &OracleLimits,
) -> Result<Option<(usize, SubdivisionCertificate)>, OracleError> {
    let n = g.vertex_count();
    if n > limits.max_vertices {
        return Err(OracleError::TooLarge {
            n,
            cap: limits.max_vertices,
        });
    }
    let mut nodes = 0u64;
    let mut failed: HashSet<(Vec<Vertex>, usize)> = HashSet::new();
    let mut k = max_feasible_k(g, ell);
    while k >= 2 {
        match search_k_ell(g, k, ell, limits.node_budget, &mut nodes, &mut failed) {
            Ok(Some(cert)) => return Ok(Some((k, cert))),
            Ok(None) => k -= 1,
            Err(()) => {
                return Err(OracleError::BudgetExceeded {
                    partial: Box::new(OracleResult {
                        best_k: 0,
                        best_ell: ell,
                        witness: SubdivisionCertificate::trivial(vec![], ell),
                        nodes_explored: nodes,
                    }),
                })
            }
        }
    }
    Ok(None)
}

/// Counting/degree/parity cap on k at length ell.
fn max_feasible_k(g: &Graph, ell: usize) -> usize {
    let n = g.vertex_count();
    let mut k = 2usize;
    // vertex budget: k cores + C(k,2)(ell-1) interior vertices
    while k < n {
        let next = k + 1;
        if next + next * (next - 1) / 2 * (ell - 1) > n {
            break;
        }
        k = next;
    }
    // cores need degree >= k-1
    loop {
        let supply = g.vertices().filter(|&v| g.degree(v) >= k - 1).count();
        if supply >= k || k == 2 {
            break;
        }
        k -= 1;
    }
    // bipartite parity: odd lengths cross sides, so k >= 3 is impossible
    if g.is_bipartite() && ell % 2 == 1 {
        k = k.min(2);
    }
    k
}

/// Search for a TK^(ell)_k: choose core sets (ascending), then backtrack
/// over internally disjoint length-ell paths pair by pair. Err(()) means
/// budget exhausted.
fn search_k_ell(
    g: &Graph,
    k: usize,
    ell: usize,
    budget: u64,
    nodes: &mut u64,
    failed: &mut HashSet<(Vec<Vertex>, usize)>,
) -> Result<Option<SubdivisionCertificate>, ()> {
    let n = g.vertex_count();
    let candidates: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= k - 1).collect();
    if candidates.len() < k {
        return Ok(None);
    }
    // all-pairs distances for the reachability prune
    let dist: Vec<Vec<u32>> = (0..n).map(|v| g.bfs_dists(&[v], None, n)).collect();
    let side = g.bipartition().map(|s| s.to_vec());

    let mut chosen: Vec<Vertex> = Vec::with_capacity(k);
    search_cores(
        g, k, ell, &candidates, 0, &mut chosen, &dist, side.as_deref(), budget, nodes, failed,
    )
}

#[allow(clippy::too_many_arguments)]
fn search_cores(
    g: &Graph,
    k: usize,
    ell: usize,
    candidates: &[Vertex],
    from: usize,
    chosen: &mut Vec<Vertex>,
    dist: &[Vec<u32>],
    side: Option<&[u8]>,
    budget: u64,
    nodes: &mut u64,
    failed: &mut HashSet<(Vec<Vertex>, usize)>,
) -> Result<Option<SubdivisionCertificate>, ()> {
    if chosen.len() == k {
        if failed.contains(&(chosen.clone(), ell)) {
            return Ok(None);
        }
        let mut used = vec![false; g.vertex_count()];
        for &c in chosen.iter() {
            used[c] = true;
        }
        let mut acc: Vec<((Vertex, Vertex), Path)> = Vec::new();
        let pairs: Vec<(Vertex, Vertex)> = {
            let mut ps = Vec::new();
            for (i, &a) in chosen.iter().enumerate() {
                for &b in &chosen[i + 1..] {
                    ps.push((a.min(b), a.max(b)));
                }
            }
            ps
        };
        let found = place_pairs(g, ell, &pairs, 0, &mut used, &mut acc, budget, nodes)?;
        if found {
            let cert = SubdivisionCertificate {
                cores: chosen.clone(),
                pair_paths: acc.into_iter().collect(),
                ell,
            };
            return Ok(Some(cert));
        }
        failed.insert((chosen.clone(), ell));
        return Ok(None);
    }
    for idx in from..candidates.len() {
        let v = candidates[idx];
        // parity: with k >= 3 all cores share a side; with k = 2 any pair
        // whose distance parity matches ell works
        if let Some(side) = side {
            if k >= 3 && !chosen.is_empty() && side[v] != side[chosen[0]] {
                continue;
            }
            if k == 2 && !chosen.is_empty() {
                let cross = side[v] != side[chosen[0]];
                if cross != (ell % 2 == 1) {
                    continue;
                }
            }
        }
        if chosen
            .iter()
            .any(|&c| dist[c][v] == u32::MAX || dist[c][v] as usize > ell)
        {
            continue;
        }
        chosen.push(v);
        let r = search_cores(
            g, k, ell, candidates, idx + 1, chosen, dist, side, budget, nodes, failed,
        )?;
        chosen.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn place_pairs(
    g: &Graph,
    ell: usize,
    pairs: &[(Vertex, Vertex)],
    idx: usize,
    used: &mut Vec<bool>,
    acc: &mut Vec<((Vertex, Vertex), Path)>,
    budget: u64,
    nodes: &mut u64,
) -> Result<bool, ()> {
    if idx == pairs.len() {
        return Ok(true);
    }
    let (a, b) = pairs[idx];
    let mut stack = vec![a];
    enumerate_and_recurse(g, ell, pairs, idx, a, b, &mut stack, used, acc, budget, nodes)
}

/// DFS over simple a,b-paths of length ell whose interiors avoid `used`;
/// for each, commit and recurse into the next pair.
#[allow(clippy::too_many_arguments)]
fn enumerate_and_recurse(
    g: &Graph,
    ell: usize,
    pairs: &[(Vertex, Vertex)],
    idx: usize,
    a: Vertex,
    b: Vertex,
    stack: &mut Vec<Vertex>,
    used: &mut Vec<bool>,
    acc: &mut Vec<((Vertex, Vertex), Path)>,
    budget: u64,
    nodes: &mut u64,
) -> Result<bool, ()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(());
    }
    let depth = stack.len() - 1;
    let cur = *stack.last().unwrap();
    if depth == ell {
        if cur != b {
            return Ok(false);
        }
        let path = Path::new(stack.clone()).expect("DFS keeps paths simple");
        for &v in path.interior() {
            used[v] = true;
        }
        acc.push(((a, b), path.clone()));
        let done = place_pairs(g, ell, pairs, idx + 1, used, acc, budget, nodes)?;
        if done {
            return Ok(true);
        }
        acc.pop();
        for &v in path.interior() {
            used[v] = false;
        }
        return Ok(false);
    }
    for &w in g.neighbors(cur) {
        let last_step = depth + 1 == ell;
        if last_step {
            if w != b {
                continue;
            }
        } else if w == b || used[w] || stack.contains(&w) {
            continue;
        }
        stack.push(w);
        let done = enumerate_and_recurse(g, ell, pairs, idx, a, b, stack, used, acc, budget, nodes)?;
        stack.pop();
        if done {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Ground-truth existence of a simple path of exact length: plain
/// backtracking with only the counting prune (never the distance prune
/// the production search uses). `None` means the budget ran out before
/// the search completed.
pub fn exists_path_of_exact_length(
    g: &Graph,
    from: Vertex,
    to: Vertex,
    len: usize,
    avoid: &[Vertex],
    budget: u64,
) -> Option<bool> {
    let blocked = g.mask(avoid);
    if blocked[from] || blocked[to] {
        return Some(false);
    }
    if from == to {
        return Some(len == 0);
    }
    let free = blocked.iter().filter(|&&b| !b).count();
    if len + 1 > free {
        return Some(false);
    }
    let mut used = vec![false; g.vertex_count()];
    used[from] = true;
    let mut nodes = 0u64;
    exhaustive_dfs(g, from, to, len, &blocked, &mut used, &mut nodes, budget)
}

#[allow(clippy::too_many_arguments)]
fn exhaustive_dfs(
    g: &Graph,
    cur: Vertex,
    to: Vertex,
    remaining: usize,
    blocked: &[bool],
    used: &mut Vec<bool>,
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    if remaining == 0 {
        return Some(cur == to);
    }
    for &w in g.neighbors(cur) {
        if blocked[w] || used[w] {
            continue;
        }
        if w == to && remaining != 1 {
            continue;
        }
        used[w] = true;
        let r = exhaustive_dfs(g, w, to, remaining - 1, blocked, used, nodes, budget);
        used[w] = false;
        match r {
            Some(true) => return Some(true),
            Some(false) => {}
            None => return None,
        }
    }
    Some(false)
}
