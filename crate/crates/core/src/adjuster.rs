//! Adjuster gadgets: structures carrying a family of paths between two
//! rooted expansions whose lengths form an arithmetic progression of
//! difference 2. A simple adjuster comes from a shortest cycle; chaining
//! extends the range; the exact-length connector combines an adjuster
//! with a pair of disjoint paths whose total length lands in the
//! adjuster's window, then picks the family member that closes the gap.

use thiserror::Error;

use crate::connect::{connect_avoiding, grow_expansion_masked, ConnectError, Expansion, GrowError};
use crate::graph::{Graph, Path, Vertex, UNREACHED};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdjusterError {
    #[error("adjuster construction requires a bipartite graph")]
    NotBipartite,
    #[error("no cycle once the avoid set is deleted")]
    NoCycle,
    #[error("cannot grow disjoint expansions of size {target}: only {reachable} vertices available")]
    InsufficientExpansion { target: usize, reachable: usize },
    #[error("no connecting path between gadget stages")]
    NoPath,
    #[error("connecting path exceeds the radius budget {0}")]
    TooLong(usize),
}

/// Chaining failure: the stage (1-based) that failed, the cause, and the
/// largest adjuster assembled before the failure.
#[derive(Debug)]
pub struct ChainError {
    pub stage: usize,
    pub source: AdjusterError,
    pub partial: Option<Adjuster>,
}

/// `(v1, F1, v2, F2, A)` plus the stored path family: `path_family[i]`
/// is a `v1,v2`-path inside `A + {v1, v2}` of length `base_length + 2i`,
/// for `i = 0..=range`.
#[derive(Debug, Clone)]
pub struct Adjuster {
    pub v1: Vertex,
    pub v2: Vertex,
    pub f1: Expansion,
    pub f2: Expansion,
    /// Sorted ascending; disjoint from both expansions.
    pub a: Vec<Vertex>,
    pub range: usize,
    pub base_length: usize,
    pub path_family: Vec<Path>,
    /// Expansion size and radius budget used at construction.
    pub size_d: usize,
    pub radius_m: usize,
}

impl Adjuster {
    /// All gadget vertices: both expansions plus `A`.
    pub fn all_vertices(&self) -> Vec<Vertex> {
        let mut out = self.a.clone();
        out.extend_from_slice(self.f1.members());
        out.extend_from_slice(self.f2.members());
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Exact check of the four defining clauses with the given expansion size
/// and radius: disjointness, both expansions valid, `|A| <= 10 m k`, and
/// the full arithmetic progression of realized path lengths. The stored
/// base length is accepted as-is (no minimality requirement), but it must
/// satisfy `base <= |A| + 1`.
pub fn verify_adjuster(g: &Graph, adj: &Adjuster, d: usize, m: usize) -> bool {
    // A1: pairwise disjoint
    let in_a = g.mask(&adj.a);
    if adj.f1.members().iter().any(|&v| in_a[v]) || adj.f2.members().iter().any(|&v| in_a[v]) {
        return false;
    }
    if adj.f1.members().iter().any(|&v| adj.f2.contains(v)) {
        return false;
    }
    // A2: expansions of the right size and radius, rooted at v1 / v2
    if adj.f1.root() != adj.v1 || adj.f2.root() != adj.v2 {
        return false;
    }
    if !adj.f1.verify(g, d, m) || !adj.f2.verify(g, d, m) {
        return false;
    }
    // A3
    if adj.a.len() > 10 * m * adj.range {
        return false;
    }
    if adj.base_length > adj.a.len() + 1 {
        return false;
    }
    // A4
    if adj.path_family.len() != adj.range + 1 {
        return false;
    }
    for (i, p) in adj.path_family.iter().enumerate() {
        if p.length() != adj.base_length + 2 * i || !p.is_valid_in(g) {
            return false;
        }
        let (a, b) = p.endpoints();
        if (a, b) != (adj.v1, adj.v2) && (a, b) != (adj.v2, adj.v1) {
            return false;
        }
        if p.interior().iter().any(|&v| !in_a[v]) {
            return false;
        }
    }
    true
}

/// Build a simple adjuster (range 1) in `G - avoid`: take a shortest
/// cycle of length `2 l0`, pick the canonical pair at distance `l0 - 1`
/// along it so the two arcs have lengths `l0 - 1` and `l0 + 1`, and grow
/// disjoint expansions off the two picked vertices.
pub fn build_simple_adjuster(
    g: &Graph,
    size_d: usize,
    max_radius: usize,
    avoid: &[Vertex],
) -> Result<Adjuster, AdjusterError> {
    if !g.is_bipartite() {
        return Err(AdjusterError::NotBipartite);
    }
    let cycle = g
        .shortest_cycle_avoiding(avoid)
        .ok_or(AdjusterError::NoCycle)?;
    let c = cycle.vertices();
    debug_assert!(c.len() % 2 == 0, "bipartite graphs have even cycles");
    let half = c.len() / 2;
    let x1 = c[0];
    let x2 = c[half - 1];

    // arcs between positions 0 and half-1: lengths half-1 and half+1
    let arc_short = Path::new(c[..half].to_vec()).expect("cycle vertices are distinct");
    let mut long_verts = vec![c[0]];
    long_verts.extend(c[half - 1..].iter().rev());
    let arc_long = Path::new(long_verts).expect("cycle vertices are distinct");
    debug_assert_eq!(arc_short.length(), half - 1);
    debug_assert_eq!(arc_long.length(), half + 1);

    let mut blocked = g.mask(avoid);
    for &v in c {
        blocked[v] = true;
    }
    blocked[x1] = false;
    let f1 = grow_expansion_masked(g, x1, size_d, max_radius, &blocked).map_err(grow_err)?;
    blocked[x1] = true;
    for &v in f1.members() {
        blocked[v] = true;
    }
    blocked[x2] = false;
    let f2 = grow_expansion_masked(g, x2, size_d, max_radius, &blocked).map_err(grow_err)?;

    let mut a: Vec<Vertex> = c.iter().copied().filter(|&v| v != x1 && v != x2).collect();
    a.sort_unstable();
    Ok(Adjuster {
        v1: x1,
        v2: x2,
        f1,
        f2,
        a,
        range: 1,
        base_length: half - 1,
        path_family: vec![arc_short, arc_long],
        size_d,
        radius_m: max_radius,
    })
}

fn grow_err(e: GrowError) -> AdjusterError {
    match e {
        GrowError::Insufficient { target, reachable } => {
            AdjusterError::InsufficientExpansion { target, reachable }
        }
        GrowError::RootAvoided => AdjusterError::NoCycle,
    }
}

/// Chain simple adjusters into a range-`target_range` adjuster: each
/// round builds a fresh simple adjuster in the untouched part of the
/// graph, connects expansion-side to expansion-side with a short path,
/// and merges. The two unused roots become the composite's roots; the
/// composite base length is the sum of both base lengths plus the
/// connecting path through the consumed expansions.
pub fn chain_adjusters(
    g: &Graph,
    target_range: usize,
    size_d: usize,
    radius_m: usize,
    avoid: &[Vertex],
) -> Result<Adjuster, ChainError> {
    assert!(target_range >= 1);
    let mut acc = build_simple_adjuster(g, size_d, radius_m, avoid).map_err(|source| ChainError {
        stage: 1,
        source,
        partial: None,
    })?;
    for stage in 2..=target_range {
        match extend_by_one(g, &acc, size_d, radius_m, avoid) {
            Ok(next) => acc = next,
            Err(source) => {
                return Err(ChainError {
                    stage,
                    source,
                    partial: Some(acc),
                })
            }
        }
    }
    Ok(acc)
}

fn extend_by_one(
    g: &Graph,
    acc: &Adjuster,
    size_d: usize,
    radius_m: usize,
    avoid: &[Vertex],
) -> Result<Adjuster, AdjusterError> {
    let mut used = acc.all_vertices();
    used.extend_from_slice(avoid);
    used.sort_unstable();
    used.dedup();
    let fresh = build_simple_adjuster(g, size_d, radius_m, &used)?;

    // connect expansion side to expansion side, avoiding both A-sets
    let mut from = acc.f1.members().to_vec();
    from.extend_from_slice(acc.f2.members());
    let mut to = fresh.f1.members().to_vec();
    to.extend_from_slice(fresh.f2.members());
    let mut block = avoid.to_vec();
    block.extend_from_slice(&acc.a);
    block.extend_from_slice(&fresh.a);
    let p = connect_avoiding(g, &from, &to, &block, radius_m).map_err(|e| match e {
        ConnectError::NoPath => AdjusterError::NoPath,
        ConnectError::TooLong { .. } => AdjusterError::TooLong(radius_m),
        _ => AdjusterError::NoPath,
    })?;

    // which expansions did the connector land in?
    let (acc_used_root, acc_used_f, acc_kept_root, acc_kept_f) = if acc.f1.contains(p.first()) {
        (acc.v1, &acc.f1, acc.v2, &acc.f2)
    } else {
        (acc.v2, &acc.f2, acc.v1, &acc.f1)
    };
    let (fr_used_root, fr_used_f, fr_kept_root, fr_kept_f) = if fresh.f1.contains(p.last()) {
        (fresh.v1, &fresh.f1, fresh.v2, &fresh.f2)
    } else {
        (fresh.v2, &fresh.f2, fresh.v1, &fresh.f1)
    };

    // walk from the consumed roots to the connector endpoints inside the
    // consumed expansions
    let lead_in = path_inside(g, acc_used_f, acc_used_root, p.first())?;
    let lead_out = path_inside(g, fr_used_f, p.last(), fr_used_root)?;
    let q = lead_in
        .join(&p)
        .and_then(|q| q.join(&lead_out))
        .map_err(|_| AdjusterError::NoPath)?;

    let mut a_new = acc.a.clone();
    a_new.extend_from_slice(&fresh.a);
    a_new.extend_from_slice(q.vertices());
    a_new.sort_unstable();
    a_new.dedup();

    let base = acc.base_length + fresh.base_length + q.length();
    let range = acc.range + 1;
    let mut family = Vec::with_capacity(range + 1);
    for i in 0..=range {
        let i1 = i.min(acc.range);
        let i2 = i - i1;
        let part1 = acc.path_family[i1]
            .oriented_from(acc_kept_root)
            .expect("family endpoints are the adjuster roots");
        let part2 = fresh.path_family[i2]
            .oriented_from(fr_used_root)
            .expect("family endpoints are the adjuster roots");
        let composite = part1
            .join(&q)
            .and_then(|p| p.join(&part2))
            .expect("gadget pieces are disjoint by construction");
        debug_assert_eq!(composite.length(), base + 2 * i);
        family.push(composite);
    }

    Ok(Adjuster {
        v1: acc_kept_root,
        v2: fr_kept_root,
        f1: acc_kept_f.clone(),
        f2: fr_kept_f.clone(),
        a: a_new,
        range,
        base_length: base,
        path_family: family,
        size_d,
        radius_m,
    })
}

/// Shortest path between two members of an expansion, inside it.
fn path_inside(g: &Graph, f: &Expansion, from: Vertex, to: Vertex) -> Result<Path, AdjusterError> {
    let inside = g.mask(f.members());
    let outside: Vec<Vertex> = g.vertices().filter(|&v| !inside[v]).collect();
    connect_avoiding(g, &[from], &[to], &outside, g.vertex_count()).map_err(|_| AdjusterError::NoPath)
}

/// Find a simple path of exactly `len` edges from `from` to `to` in
/// `G - blocked`. DFS in ascending neighbor order, pruned by the BFS
/// distance to the target (and parity, when bipartite). `budget` bounds
/// the number of DFS expansions; exhaustion reports absence.
pub fn path_of_length(
    g: &Graph,
    from: Vertex,
    to: Vertex,
    len: usize,
    blocked: &[bool],
    budget: &mut u64,
) -> Option<Path> {
    if blocked[from] || blocked[to] {
        return None;
    }
    if from == to {
        return (len == 0).then(|| Path::single(from));
    }
    if len == 0 {
        return None;
    }
    let free = blocked.iter().filter(|&&b| !b).count();
    if len + 1 > free {
        return None;
    }
    let dist_to = g.bfs_dists(&[to], Some(blocked), len);
    if dist_to[from] == UNREACHED || dist_to[from] as usize > len {
        return None;
    }
    let parity_prune = g.is_bipartite();
    if parity_prune && dist_to[from] as usize % 2 != len % 2 {
        return None;
    }
    let mut stack = vec![from];
    let mut used = vec![false; g.vertex_count()];
    used[from] = true;
    if dfs_exact(g, to, len, blocked, &dist_to, &mut stack, &mut used, budget) {
        return Some(Path::new(stack).expect("DFS path is simple"));
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn dfs_exact(
    g: &Graph,
    to: Vertex,
    len: usize,
    blocked: &[bool],
    dist_to: &[u32],
    stack: &mut Vec<Vertex>,
    used: &mut [bool],
    budget: &mut u64,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let u = *stack.last().unwrap();
    let remaining = len - (stack.len() - 1);
    for &w in g.neighbors(u) {
        if blocked[w] || used[w] || dist_to[w] == UNREACHED {
            continue;
        }
        let need = remaining - 1;
        if dist_to[w] as usize > need {
            continue;
        }
        if w == to {
            if need == 0 {
                stack.push(w);
                return true;
            }
            continue;
        }
        if need == 0 {
            continue;
        }
        stack.push(w);
        used[w] = true;
        if dfs_exact(g, to, len, blocked, dist_to, stack, used, budget) {
            return true;
        }
        used[w] = false;
        stack.pop();
    }
    false
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairSumError {
    #[error("expansions must be pairwise disjoint and disjoint from the avoid set")]
    Precondition,
    #[error("no disjoint pair with length sum in [{target_sum}, {max}] found (best achievable sum seen: {best_sum:?})", max = target_sum + slack)]
    Unsatisfiable {
        target_sum: usize,
        slack: usize,
        best_sum: Option<usize>,
    },
}

/// Two vertex-disjoint paths connecting `{root(f1), root(f2)}` to
/// `{root(f3), root(f4)}` with total length inside
/// `[target_sum, target_sum + slack]`. `p` starts at `root(f1)` and `q`
/// at `root(f2)`. The first path is routed shortest-first and lengthened
/// step by step, the second in the remainder; both pairings of the
/// endpoints are tried.
pub fn connect_pair_sum_length(
    g: &Graph,
    f1: &Expansion,
    f2: &Expansion,
    f3: &Expansion,
    f4: &Expansion,
    target_sum: usize,
    slack: usize,
    avoid: &[Vertex],
    budget: &mut u64,
) -> Result<(Path, Path), PairSumError> {
    let all = [f1, f2, f3, f4];
    for (i, fa) in all.iter().enumerate() {
        for fb in &all[i + 1..] {
            if fa.members().iter().any(|&v| fb.contains(v)) {
                return Err(PairSumError::Precondition);
            }
        }
    }
    let avoid_mask = g.mask(avoid);
    if all
        .iter()
        .any(|f| f.members().iter().any(|&v| avoid_mask[v]))
    {
        return Err(PairSumError::Precondition);
    }

    let hi = target_sum + slack;
    let mut best_sum: Option<usize> = None;
    for &(fp, fq) in &[(f3, f4), (f4, f3)] {
        let (a, b) = (f1.root(), fp.root());
        let (c, d) = (f2.root(), fq.root());
        // P must leave the other pairing's expansions untouched
        let mut blocked_p = avoid_mask.clone();
        for &v in f2.members().iter().chain(fq.members()) {
            blocked_p[v] = true;
        }
        let dist_p = g.bfs_dists(&[a], Some(&blocked_p), g.vertex_count());
        if dist_p[b] == UNREACHED {
            continue;
        }
        let p_min = dist_p[b] as usize;
        let step = if g.is_bipartite() { 2 } else { 1 };
        let mut p_len = p_min;
        while p_len + 1 <= hi && *budget > 0 {
            if let Some(p) = path_of_length(g, a, b, p_len, &blocked_p, budget) {
                let mut blocked_q = avoid_mask.clone();
                for &v in p.vertices() {
                    blocked_q[v] = true;
                }
                let dist_q = g.bfs_dists(&[c], Some(&blocked_q), g.vertex_count());
                if dist_q[d] != UNREACHED {
                    let q_min = dist_q[d] as usize;
                    match best_sum {
                        Some(s) if s <= p_len + q_min => {}
                        _ => best_sum = Some(p_len + q_min),
                    }
                    let q_lo = q_min.max(target_sum.saturating_sub(p_len));
                    let q_start = q_min + (q_lo.saturating_sub(q_min)).div_ceil(step) * step;
                    let mut q_len = q_start;
                    while p_len + q_len <= hi && *budget > 0 {
                        if let Some(q) = path_of_length(g, c, d, q_len, &blocked_q, budget) {
                            if p_len + q_len >= target_sum {
                                return Ok((p, q));
                            }
                        }
                        q_len += step;
                    }
                }
            }
            p_len += step;
        }
    }
    Err(PairSumError::Unsatisfiable {
        target_sum,
        slack,
        best_sum,
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactLengthError {
    #[error("exact-length connection requires a bipartite graph")]
    NotBipartite,
    #[error("exact-length connection requires a connected graph")]
    NotConnected,
    #[error("target length {ell} has the wrong parity for endpoint class pi = {pi}")]
    ParityMismatch { pi: u8, ell: usize },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("no path of the target length found (stage: {stage}, shortest distance {shortest:?})")]
    Unsatisfiable {
        stage: &'static str,
        shortest: Option<usize>,
    },
}

/// Knobs for [`connect_exact_length`]: the adjuster recipe's expansion
/// size, radius budget and range, and the search budget.
#[derive(Debug, Clone)]
pub struct ExactLengthConfig {
    pub adjuster_size: usize,
    pub adjuster_radius: usize,
    pub adjuster_range: usize,
    pub node_budget: u64,
}

impl Default for ExactLengthConfig {
    fn default() -> Self {
        ExactLengthConfig {
            adjuster_size: 2,
            adjuster_radius: 8,
            adjuster_range: 3,
            node_budget: 500_000,
        }
    }
}

/// A `root(f1), root(f2)`-path of length exactly `ell` in `G - avoid`.
///
/// Straight to the answer when the shortest path already has the target
/// length; otherwise the adjuster recipe: build an adjuster clear of
/// everything, join the two expansions to its ends with a pair of
/// disjoint paths whose sum lands in the adjuster's window (the parity
/// chain makes the residual even), and select the family member that
/// finishes at exactly `ell`. A budgeted exact-length DFS is the last
/// resort for cramped instances where no gadget fits.
pub fn connect_exact_length(
    g: &Graph,
    f1: &Expansion,
    f2: &Expansion,
    ell: usize,
    avoid: &[Vertex],
    cfg: &ExactLengthConfig,
) -> Result<Path, ExactLengthError> {
    if !g.is_bipartite() {
        return Err(ExactLengthError::NotBipartite);
    }
    if !g.is_connected() {
        return Err(ExactLengthError::NotConnected);
    }
    let (r1, r2) = (f1.root(), f2.root());
    if f1.members().iter().any(|&v| f2.contains(v)) {
        return Err(ExactLengthError::Precondition("expansions overlap"));
    }
    let avoid_mask = g.mask(avoid);
    if f1
        .members()
        .iter()
        .chain(f2.members())
        .any(|&v| avoid_mask[v])
    {
        return Err(ExactLengthError::Precondition(
            "expansions intersect the avoid set",
        ));
    }
    let pi = g.pi(r1, r2).expect("bipartite + connected checked above");
    if ell % 2 != (pi as usize) % 2 {
        return Err(ExactLengthError::ParityMismatch { pi, ell });
    }

    // direct: the shortest path may already have the target length
    let dist = g.bfs_dists(&[r1], Some(&avoid_mask), g.vertex_count());
    if dist[r2] == UNREACHED {
        return Err(ExactLengthError::Unsatisfiable {
            stage: "direct",
            shortest: None,
        });
    }
    let shortest = dist[r2] as usize;
    if shortest > ell {
        return Err(ExactLengthError::Unsatisfiable {
            stage: "direct",
            shortest: Some(shortest),
        });
    }
    if shortest == ell {
        let p = connect_avoiding(g, &[r1], &[r2], avoid, ell)
            .expect("distance was just computed");
        return Ok(p);
    }

    let mut budget = cfg.node_budget;
    if let Some(p) = exact_via_adjuster(g, f1, f2, ell, avoid, cfg, &mut budget) {
        debug_assert_eq!(p.length(), ell);
        return Ok(p);
    }

    match path_of_length(g, r1, r2, ell, &avoid_mask, &mut budget) {
        Some(p) => Ok(p),
        None => Err(ExactLengthError::Unsatisfiable {
            stage: "search",
            shortest: Some(shortest),
        }),
    }
}

fn exact_via_adjuster(
    g: &Graph,
    f1: &Expansion,
    f2: &Expansion,
    ell: usize,
    avoid: &[Vertex],
    cfg: &ExactLengthConfig,
    budget: &mut u64,
) -> Option<Path> {
    let mut off_limits = avoid.to_vec();
    off_limits.extend_from_slice(f1.members());
    off_limits.extend_from_slice(f2.members());
    off_limits.sort_unstable();
    off_limits.dedup();
    let adj = match chain_adjusters(
        g,
        cfg.adjuster_range,
        cfg.adjuster_size,
        cfg.adjuster_radius,
        &off_limits,
    ) {
        Ok(adj) => adj,
        Err(ChainError {
            partial: Some(adj), ..
        }) => adj,
        Err(_) => return None,
    };
    let base = adj.base_length;
    let hi = ell.checked_sub(base)?;
    if hi < 2 {
        return None;
    }
    let lo = hi.saturating_sub(2 * adj.range).max(2);
    let mut pair_avoid = avoid.to_vec();
    pair_avoid.extend_from_slice(&adj.a);
    let (p, q) = connect_pair_sum_length(
        g,
        f1,
        f2,
        &adj.f1,
        &adj.f2,
        lo,
        hi - lo,
        &pair_avoid,
        budget,
    )
    .ok()?;
    let residual = ell - base - p.length() - q.length();
    debug_assert_eq!(residual % 2, 0, "parity chain guarantees an even residual");
    let i = residual / 2;
    let family_path = adj.path_family[i].oriented_from(p.last()).ok()?;
    let full = p.join(&family_path).ok()?.join(&q.reversed()).ok()?;
    debug_assert_eq!(full.length(), ell);
    debug_assert!(full.vertices().iter().all(|v| !avoid.contains(v)));
    Some(full)
}
