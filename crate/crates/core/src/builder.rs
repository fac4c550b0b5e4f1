//! Assembly pipelines: greedy maximal path collections between core
//! vertices connected at an exact common length, in three regimes (dense,
//! sparse with high-degree cores, sparse bounded-degree with far-apart
//! cores and path fans), plus the dispatcher that extracts a bipartite
//! expander first and routes by density. Every pipeline returns a
//! best-effort certificate that is re-verified before it leaves.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::adjuster::{connect_exact_length, ExactLengthConfig, ExactLengthError};
use crate::connect::{grow_ball_avoiding, grow_expansion_masked, Expansion, PathFan};
use crate::connect::check_consecutive_shortest;
use crate::expander::{extract_bipartite_expander, BipartiteExtractError, ExtractOptions};
use crate::graph::{Graph, Path, Vertex};
use crate::verify::{verify_subdivision, SubdivisionCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Desk,
    Theorem,
}

/// Pipeline configuration. Zero means "use the preset" for the sizing
/// fields. Desk presets replace the polylog formulas by small explicit
/// values; the trace records both.
#[derive(Debug, Clone)]
pub struct BuildConfig {
    pub epsilon1: f64,
    pub epsilon2: f64,
    /// Target path length; 0 picks the preset (desk: 4).
    pub ell: usize,
    /// Core count goal; 0 picks the preset.
    pub target_k: usize,
    /// Connection radius budget; 0 picks the preset.
    pub m: usize,
    /// Inner/outer ball radii for the bounded-degree pipeline.
    pub r1: usize,
    pub r2: usize,
    /// Density exponent for the dense/sparse dispatch.
    pub s: f64,
    /// High-degree threshold; 0 picks the preset.
    pub degree_threshold: usize,
    /// Expansion size; 0 picks the preset.
    pub expansion_size: usize,
    pub c: f64,
    pub t3: f64,
    pub t4: f64,
    pub seed: u64,
    /// Global budget of per-pair connection attempts.
    pub max_steps: usize,
    pub preset: Preset,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig::desk()
    }
}

impl BuildConfig {
    pub fn desk() -> BuildConfig {
        BuildConfig {
            epsilon1: 0.5,
            epsilon2: 0.1,
            ell: 0,
            target_k: 0,
            m: 0,
            r1: 1,
            r2: 2,
            s: 1.0,
            degree_threshold: 0,
            expansion_size: 0,
            c: 0.25,
            t3: 0.05,
            t4: 0.05,
            seed: 0,
            max_steps: 2000,
            preset: Preset::Desk,
        }
    }

    pub fn theorem() -> BuildConfig {
        BuildConfig {
            s: 20.0,
            preset: Preset::Theorem,
            ..BuildConfig::desk()
        }
    }

    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = ell;
        self
    }

    pub fn with_target_k(mut self, k: usize) -> Self {
        self.target_k = k;
        self
    }
}

/// Line-oriented record of every branch decision and parameter
/// resolution a pipeline run makes.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub lines: Vec<String>,
}

impl Trace {
    pub fn log(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Dense,
    SparseHighDeg,
    SparseBounded,
    Degenerate,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Dense => "dense",
            Branch::SparseHighDeg => "sparse-highdeg",
            Branch::SparseBounded => "sparse-bounded",
            Branch::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub failed_pairs: Vec<(Vertex, Vertex, String)>,
    pub warnings: Vec<String>,
    pub parity_mismatch: bool,
}

#[derive(Debug, Clone)]
pub struct BuildResult {
    pub cert: SubdivisionCertificate,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone)]
pub struct BuildOutcome {
    pub cert: SubdivisionCertificate,
    pub diagnostics: Diagnostics,
    pub branch: Branch,
    pub trace: Trace,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("pipeline requires a bipartite graph")]
    NotBipartite,
    #[error("pipeline requires a connected graph")]
    NotConnected,
    #[error("ell must be even when three or more cores share a bipartition side")]
    ParityMismatch,
    #[error("only {supply} vertices of one side reach degree {threshold}, need {needed}")]
    PreconditionUnmet {
        needed: usize,
        supply: usize,
        threshold: usize,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoreSelectionError {
    #[error("only {} of {requested} far-apart cores found", found.len())]
    Insufficient {
        requested: usize,
        found: Vec<Vertex>,
    },
}

/// Greedy maximal scattering: repeatedly pick the smallest-id vertex at
/// distance at least `min_dist` from everything chosen, optionally
/// restricted to one bipartition side.
pub fn select_far_apart_cores(
    g: &Graph,
    count: usize,
    min_dist: usize,
) -> Result<Vec<Vertex>, CoreSelectionError> {
    select_far_apart_cores_on_side(g, count, min_dist, None)
}

pub fn select_far_apart_cores_on_side(
    g: &Graph,
    count: usize,
    min_dist: usize,
    side: Option<u8>,
) -> Result<Vec<Vertex>, CoreSelectionError> {
    let labels = g.bipartition();
    let mut forbidden = vec![false; g.vertex_count()];
    let mut chosen = Vec::new();
    for v in g.vertices() {
        if chosen.len() == count {
            break;
        }
        if forbidden[v] {
            continue;
        }
        if let (Some(want), Some(labels)) = (side, labels) {
            if labels[v] != want {
                continue;
            }
        }
        chosen.push(v);
        if min_dist > 0 {
            for u in g.ball(&[v], min_dist - 1, &[]) {
                forbidden[u] = true;
            }
        }
    }
    if chosen.len() < count {
        return Err(CoreSelectionError::Insufficient {
            requested: count,
            found: chosen,
        });
    }
    Ok(chosen)
}

/// Remove every vertex whose degree reaches `threshold`.
#[derive(Debug, Clone)]
pub struct StripResult {
    pub subgraph: Graph,
    /// new id -> old id
    pub vertex_map: Vec<Vertex>,
    pub removed: Vec<Vertex>,
    pub min_degree_after: usize,
}

pub fn strip_high_degree(g: &Graph, threshold: usize) -> StripResult {
    let removed: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= threshold).collect();
    let keep: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) < threshold).collect();
    let (subgraph, vertex_map) = g.induced(&keep);
    let min_degree_after = subgraph.min_degree();
    StripResult {
        subgraph,
        vertex_map,
        removed,
        min_degree_after,
    }
}

/// Parameters resolved against a concrete graph, desk or theorem style.
#[derive(Debug, Clone)]
struct Resolved {
    ell: usize,
    m: usize,
    t_dense: usize,
    t_sparse: usize,
    delta_threshold: usize,
    d_exp: usize,
    r1: usize,
    r2: usize,
    min_dist: usize,
    dense_cut: f64,
    highdeg_need: usize,
    retries: usize,
    exact_cfg: ExactLengthConfig,
}

fn resolve(h: &Graph, cfg: &BuildConfig, trace: &mut Trace) -> Resolved {
    let n = h.vertex_count().max(2) as f64;
    let d = h.average_degree().max(1.0);
    let ln_n = n.ln();
    let lnln_n = ln_n.max(1.001).ln().max(0.1);

    let ell_formula = 2.0 * ln_n.powi(7).ceil();
    let ell = if cfg.ell != 0 {
        cfg.ell
    } else if cfg.preset == Preset::Theorem {
        cap(ell_formula)
    } else {
        4
    };
    trace.log(format!("param ell formula={ell_formula:.0} used={ell}"));

    let m_formula = 800.0 / cfg.epsilon1 * ln_n.powi(3);
    let m = if cfg.m != 0 {
        cfg.m
    } else if cfg.preset == Preset::Theorem {
        cap(m_formula)
    } else {
        (2.0 * ln_n).ceil().max(4.0) as usize
    };
    trace.log(format!("param m formula={m_formula:.0} used={m}"));

    let t_dense_formula = d.sqrt() / (2.0 * ln_n.powi(10));
    let t_dense = if cfg.target_k != 0 {
        cfg.target_k
    } else if cfg.preset == Preset::Theorem {
        cap(t_dense_formula).max(2)
    } else {
        (d.sqrt() as usize).max(2)
    };
    trace.log(format!(
        "param t_dense formula={t_dense_formula:.3} used={t_dense}"
    ));

    let t_sparse_formula = cfg.t3 * d;
    let t_sparse = if cfg.target_k != 0 {
        cfg.target_k
    } else {
        cap(t_sparse_formula).max(2)
    };
    trace.log(format!(
        "param t_sparse formula={t_sparse_formula:.3} used={t_sparse}"
    ));

    let delta_formula = cfg.c * cfg.c * d * d * ln_n.powi(10);
    let delta_threshold = if cfg.degree_threshold != 0 {
        cfg.degree_threshold
    } else if cfg.preset == Preset::Theorem {
        cap(delta_formula).max(1)
    } else {
        // desk replacement for ln^10 n is the fixed value 16
        (cfg.c * cfg.c * d * d * 16.0).ceil().max(1.0) as usize
    };
    trace.log(format!(
        "param delta_threshold formula={delta_formula:.0} used={delta_threshold}"
    ));

    let d_exp_formula = d / ln_n.powi(10);
    let d_exp = if cfg.expansion_size != 0 {
        cfg.expansion_size
    } else if cfg.preset == Preset::Theorem {
        cap(d_exp_formula).max(2)
    } else {
        2
    };
    trace.log(format!("param d_exp formula={d_exp_formula:.3} used={d_exp}"));

    let r1_formula = lnln_n.powi(5).ceil();
    let r2_formula = (ln_n / (300.0 * cfg.s.max(1.0) * lnln_n)).ceil();
    let (r1, r2) = if cfg.preset == Preset::Theorem {
        let r1 = cap(r1_formula).max(1);
        (r1, cap(r2_formula).max(r1 + 1))
    } else {
        (cfg.r1.max(1), cfg.r2.max(cfg.r1 + 1))
    };
    trace.log(format!(
        "param r1 formula={r1_formula:.0} used={r1}; r2 formula={r2_formula:.0} used={r2}"
    ));

    let dense_cut = ln_n.powf(cfg.s);
    trace.log(format!(
        "param dense_cut (ln n)^s = {dense_cut:.3} with s={}",
        cfg.s
    ));

    let highdeg_need = (2.0 * cfg.t3 * d).ceil().max(1.0) as usize;
    let min_dist = 3 * r2 + 1;

    Resolved {
        ell,
        m,
        t_dense,
        t_sparse,
        delta_threshold,
        d_exp,
        r1,
        r2,
        min_dist,
        dense_cut,
        highdeg_need,
        retries: 3,
        exact_cfg: ExactLengthConfig {
            adjuster_size: d_exp,
            adjuster_radius: m,
            adjuster_range: 3,
            node_budget: 500_000,
        },
    }
}

fn cap(x: f64) -> usize {
    if x.is_finite() && x > 0.0 {
        x.min(usize::MAX as f64 / 2.0) as usize
    } else {
        0
    }
}

/// Dense pipeline: core vertices on one bipartition side, greedy maximal
/// collection of pairwise internally disjoint exact-length paths, fresh
/// neighbor expansions per missing pair, connected by
/// [`connect_exact_length`]. On stubborn pairs the weakest core is
/// dropped and the loop re-runs on the survivors.
pub fn build_dense(g: &Graph, cfg: &BuildConfig) -> Result<BuildResult, BuildError> {
    let mut trace = Trace::default();
    let r = resolve(g, cfg, &mut trace);
    build_dense_resolved(g, cfg, &r)
}

fn build_dense_resolved(g: &Graph, cfg: &BuildConfig, r: &Resolved) -> Result<BuildResult, BuildError> {
    let side = check_dense_preconditions(g, r.ell)?;
    let mut diagnostics = Diagnostics::default();
    let mut cores = side_cores(g, side, r.t_dense, &mut diagnostics);
    let mut steps = cfg.max_steps;
    let committed = greedy_pair_rounds(g, &mut cores, r, &mut steps, &mut diagnostics);
    finish(g, cores, committed, r.ell, diagnostics)
}

fn check_dense_preconditions(g: &Graph, ell: usize) -> Result<u8, BuildError> {
    if !g.is_bipartite() {
        return Err(BuildError::NotBipartite);
    }
    if !g.is_connected() {
        return Err(BuildError::NotConnected);
    }
    if ell % 2 != 0 {
        return Err(BuildError::ParityMismatch);
    }
    let labels = g.bipartition().expect("checked bipartite");
    let side0 = labels.iter().filter(|&&s| s == 0).count();
    Ok(if 2 * side0 >= g.vertex_count() { 0 } else { 1 })
}

fn side_cores(g: &Graph, side: u8, want: usize, diagnostics: &mut Diagnostics) -> Vec<Vertex> {
    let labels = g.bipartition().expect("checked bipartite");
    let cores: Vec<Vertex> = g
        .vertices()
        .filter(|&v| labels[v] == side)
        .take(want)
        .collect();
    if cores.len() < want {
        diagnostics
            .warnings
            .push(format!("only {} of {} cores available on side {}", cores.len(), want, side));
    }
    cores
}

/// The shared greedy loop: try the missing pairs, then drop the weakest
/// core and retry the survivors, until the collection is complete.
fn greedy_pair_rounds(
    g: &Graph,
    cores: &mut Vec<Vertex>,
    r: &Resolved,
    steps: &mut usize,
    diagnostics: &mut Diagnostics,
) -> BTreeMap<(Vertex, Vertex), Path> {
    let mut committed: BTreeMap<(Vertex, Vertex), Path> = BTreeMap::new();
    loop {
        let pairs = all_pairs(cores);
        let mut progress = true;
        while progress {
            progress = false;
            for &(a, b) in &pairs {
                if committed.contains_key(&(a, b)) {
                    continue;
                }
                match attempt_pair(g, cores, &committed, a, b, r, steps) {
                    Ok(path) => {
                        committed.insert((a, b), path);
                        progress = true;
                    }
                    Err(reason) => {
                        diagnostics.failed_pairs.push((a, b, reason));
                    }
                }
            }
        }
        if pairs.iter().all(|p| committed.contains_key(p)) {
            return committed;
        }
        if cores.len() <= 2 {
            return committed;
        }
        drop_weakest_core(cores, &mut committed);
    }
}

fn all_pairs(cores: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let mut ps = Vec::new();
    for (i, &a) in cores.iter().enumerate() {
        for &b in &cores[i + 1..] {
            ps.push((a.min(b), a.max(b)));
        }
    }
    ps.sort_unstable();
    ps
}

fn drop_weakest_core(cores: &mut Vec<Vertex>, committed: &mut BTreeMap<(Vertex, Vertex), Path>) {
    let weakest = *cores
        .iter()
        .min_by_key(|&&c| {
            let wins = committed.keys().filter(|&&(a, b)| a == c || b == c).count();
            (wins, std::cmp::Reverse(c))
        })
        .expect("cores nonempty");
    cores.retain(|&c| c != weakest);
    committed.retain(|&(a, b), _| a != weakest && b != weakest);
}

/// One pair: grow disjoint fresh expansions off both cores (alternate
/// choices on retry), connect at the exact length avoiding everything
/// already used.
fn attempt_pair(
    g: &Graph,
    cores: &[Vertex],
    committed: &BTreeMap<(Vertex, Vertex), Path>,
    a: Vertex,
    b: Vertex,
    r: &Resolved,
    steps: &mut usize,
) -> Result<Path, String> {
    let mut avoid_mask = vec![false; g.vertex_count()];
    for path in committed.values() {
        for &v in path.vertices() {
            avoid_mask[v] = true;
        }
    }
    for &c in cores {
        avoid_mask[c] = true;
    }
    avoid_mask[a] = false;
    avoid_mask[b] = false;
    let avoid: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| avoid_mask[v]).collect();

    let mut taboo = avoid_mask.clone();
    let mut last = String::from("no attempt budget left");
    for _ in 0..r.retries {
        if *steps == 0 {
            break;
        }
        *steps -= 1;
        let fa = grow_best_effort(g, a, r.d_exp, r.m, &mut taboo, b);
        let fb = grow_best_effort(g, b, r.d_exp, r.m, &mut taboo, a);
        match connect_exact_length(g, &fa, &fb, r.ell, &avoid, &r.exact_cfg) {
            Ok(path) => return Ok(path),
            Err(e @ ExactLengthError::ParityMismatch { .. }) => return Err(e.to_string()),
            Err(e @ ExactLengthError::Unsatisfiable { stage: "direct", .. }) => {
                // unreachable or target below distance: retrying cannot help
                return Err(e.to_string());
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(last)
}

/// Grow an expansion of up to `want` vertices (degrading to a singleton),
/// marking the members taboo so the next retry picks alternates.
fn grow_best_effort(
    g: &Graph,
    root: Vertex,
    want: usize,
    radius: usize,
    taboo: &mut [bool],
    other_root: Vertex,
) -> Expansion {
    let mut blocked = taboo.to_vec();
    blocked[other_root] = true;
    blocked[root] = false;
    let mut size = want.max(1);
    let exp = loop {
        match grow_expansion_masked(g, root, size, radius, &blocked) {
            Ok(e) => break e,
            Err(_) if size > 1 => size /= 2,
            Err(_) => break Expansion::singleton(root),
        }
    };
    for &v in exp.members() {
        if v != root {
            taboo[v] = true;
        }
    }
    exp
}

fn finish(
    g: &Graph,
    mut cores: Vec<Vertex>,
    mut committed: BTreeMap<(Vertex, Vertex), Path>,
    ell: usize,
    diagnostics: Diagnostics,
) -> Result<BuildResult, BuildError> {
    // restrict to a core subset on which the collection is complete
    while !all_pairs(&cores).iter().all(|p| committed.contains_key(p)) {
        if cores.len() <= 1 {
            committed.clear();
            break;
        }
        drop_weakest_core(&mut cores, &mut committed);
    }
    let cert = SubdivisionCertificate {
        cores,
        pair_paths: committed,
        ell,
    };
    let report = verify_subdivision(g, &cert);
    assert!(
        report.ok,
        "pipeline produced an invalid certificate: {:?}",
        report.violation
    );
    Ok(BuildResult { cert, diagnostics })
}

/// Sparse high-degree pipeline: the same greedy loop with cores
/// restricted to one side's high-degree vertices, expansions drawn from
/// their neighborhoods.
pub fn build_sparse_highdeg(g: &Graph, cfg: &BuildConfig) -> Result<BuildResult, BuildError> {
    let mut trace = Trace::default();
    let r = resolve(g, cfg, &mut trace);
    build_sparse_highdeg_resolved(g, cfg, &r)
}

fn build_sparse_highdeg_resolved(
    g: &Graph,
    cfg: &BuildConfig,
    r: &Resolved,
) -> Result<BuildResult, BuildError> {
    let _ = check_dense_preconditions(g, r.ell)?;
    let labels = g.bipartition().expect("checked bipartite");
    let want = r.t_sparse;
    let high = |v: &Vertex| g.degree(*v) >= r.delta_threshold;
    let side_supply = |s: u8| {
        g.vertices()
            .filter(|&v| labels[v] == s && high(&v))
            .count()
    };
    let (s0, s1) = (side_supply(0), side_supply(1));
    let side = if s0 >= s1 { 0 } else { 1 };
    let supply = s0.max(s1);
    if supply < want {
        return Err(BuildError::PreconditionUnmet {
            needed: want,
            supply,
            threshold: r.delta_threshold,
        });
    }
    let mut diagnostics = Diagnostics::default();
    let mut cores: Vec<Vertex> = g
        .vertices()
        .filter(|&v| labels[v] == side && high(&v))
        .take(want)
        .collect();
    let mut steps = cfg.max_steps;
    // high-degree cores can afford wider expansions
    let mut r2 = r.clone();
    r2.d_exp = r.d_exp.max((r.delta_threshold / 4).clamp(2, 8));
    let committed = greedy_pair_rounds(g, &mut cores, &r2, &mut steps, &mut diagnostics);
    finish(g, cores, committed, r.ell, diagnostics)
}

/// Sparse bounded-degree pipeline: far-apart cores, inner balls reserved
/// per core, per-core path fans kept consecutive-shortest, regrown outer
/// balls per connection, and the containment clauses checked before every
/// commit.
pub fn build_sparse_bounded(g: &Graph, cfg: &BuildConfig) -> Result<BuildResult, BuildError> {
    let mut trace = Trace::default();
    let r = resolve(g, cfg, &mut trace);
    build_sparse_bounded_resolved(g, cfg, &r)
}

fn build_sparse_bounded_resolved(
    g: &Graph,
    cfg: &BuildConfig,
    r: &Resolved,
) -> Result<BuildResult, BuildError> {
    if !g.is_bipartite() {
        return Err(BuildError::NotBipartite);
    }
    if !g.is_connected() {
        return Err(BuildError::NotConnected);
    }
    let mut diagnostics = Diagnostics::default();
    let delta_bound = r.delta_threshold.max(g.min_degree() + 1);
    if g.max_degree() > delta_bound {
        diagnostics.warnings.push(format!(
            "max degree {} exceeds the bounded-degree hypothesis {}",
            g.max_degree(),
            delta_bound
        ));
    }

    let want = r.t_sparse;
    let odd = r.ell % 2 == 1;
    if odd && want > 2 {
        diagnostics.parity_mismatch = true;
        diagnostics.warnings.push(format!(
            "ell={} is odd: three or more same-side cores are impossible in a bipartite graph",
            r.ell
        ));
    }
    let cores = if odd {
        select_cross_pair(g, r.min_dist, &mut diagnostics)
    } else {
        select_relaxing(g, want, r.min_dist, &mut diagnostics)
    };
    if cores.len() < 2 {
        let cert = SubdivisionCertificate::trivial(cores, r.ell);
        return Ok(BuildResult { cert: cert_checked(g, cert), diagnostics });
    }

    let runner = BoundedRunner::new(g, cores.clone(), r, cfg);
    runner.run(diagnostics)
}

fn cert_checked(g: &Graph, cert: SubdivisionCertificate) -> SubdivisionCertificate {
    let report = verify_subdivision(g, &cert);
    assert!(report.ok, "invalid certificate: {:?}", report.violation);
    cert
}

fn select_relaxing(
    g: &Graph,
    want: usize,
    min_dist: usize,
    diagnostics: &mut Diagnostics,
) -> Vec<Vertex> {
    let labels = g.bipartition().expect("checked bipartite");
    let side0 = labels.iter().filter(|&&s| s == 0).count();
    let side = if 2 * side0 >= g.vertex_count() { 0 } else { 1 };
    let mut md = min_dist;
    loop {
        match select_far_apart_cores_on_side(g, want, md, Some(side)) {
            Ok(cores) => {
                if md < min_dist {
                    diagnostics.warnings.push(format!(
                        "core spacing relaxed from {min_dist} to {md}"
                    ));
                }
                return cores;
            }
            Err(CoreSelectionError::Insufficient { found, .. }) => {
                if md == 1 {
                    diagnostics.warnings.push(format!(
                        "only {} of {} far-apart cores found",
                        found.len(),
                        want
                    ));
                    return found;
                }
                md -= 1;
            }
        }
    }
}

/// Two far-apart cores on opposite sides, for odd target lengths.
fn select_cross_pair(g: &Graph, min_dist: usize, diagnostics: &mut Diagnostics) -> Vec<Vertex> {
    let labels = g.bipartition().expect("checked bipartite");
    let mut md = min_dist;
    loop {
        for a in g.vertices() {
            let dist = g.bfs_dists(&[a], None, g.vertex_count());
            if let Some(b) = g
                .vertices()
                .filter(|&b| labels[b] != labels[a])
                .filter(|&b| dist[b] != crate::graph::UNREACHED && dist[b] as usize >= md)
                .min()
            {
                if md < min_dist {
                    diagnostics
                        .warnings
                        .push(format!("core spacing relaxed from {min_dist} to {md}"));
                }
                return vec![a, b];
            }
        }
        if md == 1 {
            diagnostics
                .warnings
                .push("no cross-side core pair found".into());
            return Vec::new();
        }
        md -= 1;
    }
}

/// State for the bounded-degree pipeline run.
struct BoundedRunner<'a> {
    g: &'a Graph,
    cores: Vec<Vertex>,
    inner_balls: BTreeMap<Vertex, Vec<Vertex>>,
    r: Resolved,
    max_steps: usize,
}

impl<'a> BoundedRunner<'a> {
    fn new(g: &'a Graph, cores: Vec<Vertex>, r: &Resolved, cfg: &BuildConfig) -> Self {
        let inner_balls = cores
            .iter()
            .map(|&v| (v, g.ball(&[v], r.r1, &[])))
            .collect();
        BoundedRunner {
            g,
            cores,
            inner_balls,
            r: r.clone(),
            max_steps: cfg.max_steps,
        }
    }

    fn run(mut self, mut diagnostics: Diagnostics) -> Result<BuildResult, BuildError> {
        let g = self.g;
        let mut committed: BTreeMap<(Vertex, Vertex), Path> = BTreeMap::new();
        let mut fans: BTreeMap<Vertex, PathFan> = self
            .cores
            .iter()
            .map(|&v| (v, PathFan::new(v, self.inner_balls[&v].clone())))
            .collect();
        let mut steps = self.max_steps;
        loop {
            let pairs = all_pairs(&self.cores);
            let mut progress = true;
            while progress {
                progress = false;
                for &(a, b) in &pairs {
                    if committed.contains_key(&(a, b)) || steps == 0 {
                        continue;
                    }
                    steps -= 1;
                    match self.attempt_bounded_pair(a, b, &committed, &mut fans) {
                        Ok(path) => {
                            committed.insert((a, b), path);
                            progress = true;
                        }
                        Err(reason) => diagnostics.failed_pairs.push((a, b, reason)),
                    }
                }
            }
            if pairs.iter().all(|p| committed.contains_key(p)) || self.cores.len() <= 2 {
                break;
            }
            let before: Vec<Vertex> = self.cores.clone();
            drop_weakest_core(&mut self.cores, &mut committed);
            for gone in before.iter().filter(|v| !self.cores.contains(v)) {
                fans.remove(gone);
            }
            // rebuild fans from surviving committed paths
            for (&core, fan) in fans.iter_mut() {
                fan.paths = committed
                    .iter()
                    .filter(|(&(a, b), _)| a == core || b == core)
                    .map(|(_, p)| p.prefix(core, self.r.r1.min(p.length())).expect("core endpoint"))
                    .collect();
            }
        }
        finish(g, self.cores, committed, self.r.ell, diagnostics)
    }

    /// The avoid set for one pair: all committed path vertices plus every
    /// other core's inner ball, minus the endpoints.
    fn pair_avoid(
        &self,
        a: Vertex,
        b: Vertex,
        committed: &BTreeMap<(Vertex, Vertex), Path>,
    ) -> Vec<bool> {
        let g = self.g;
        let mut avoid = vec![false; g.vertex_count()];
        for path in committed.values() {
            for &v in path.vertices() {
                avoid[v] = true;
            }
        }
        for &q in &self.cores {
            if q == a || q == b {
                continue;
            }
            for &v in &self.inner_balls[&q] {
                avoid[v] = true;
            }
        }
        avoid[a] = false;
        avoid[b] = false;
        avoid
    }

    fn attempt_bounded_pair(
        &self,
        a: Vertex,
        b: Vertex,
        committed: &BTreeMap<(Vertex, Vertex), Path>,
        fans: &mut BTreeMap<Vertex, PathFan>,
    ) -> Result<Path, String> {
        let g = self.g;
        let r = &self.r;
        let avoid_mask = self.pair_avoid(a, b, committed);
        let avoid: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| avoid_mask[v]).collect();

        // surviving inner balls and regrown outer balls (growth reported
        // only; connection survives smaller balls at desk scale)
        let w: Vec<Vertex> = committed
            .values()
            .flat_map(|p| p.vertices().iter().copied())
            .filter(|&v| v != a && v != b)
            .collect();
        let grow_a = grow_ball_avoiding(g, &[a], &w, r.r1 + r.r2, r.d_exp);
        let grow_b = grow_ball_avoiding(g, &[b], &w, r.r1 + r.r2, r.d_exp);
        if grow_a.members.len() < 2 || grow_b.members.len() < 2 {
            return Err("core buried: regrown ball has no free neighbor".into());
        }

        if r.ell == 1 {
            if g.has_edge(a, b) {
                let p = Path::new(vec![a, b]).expect("edge path");
                return self.try_commit(a, b, p, committed, fans);
            }
            return Err("no direct edge for ell = 1".into());
        }

        if r.r1 == 1 {
            self.connect_with_exit_edges(a, b, &avoid_mask, &avoid, committed, fans)
        } else {
            // generic route: exact-length connection plus post-hoc checks
            let fa = Expansion::singleton(a);
            let fb = Expansion::singleton(b);
            let path = connect_exact_length(g, &fa, &fb, r.ell, &avoid, &r.exact_cfg)
                .map_err(|e| e.to_string())?;
            self.try_commit(a, b, path, committed, fans)
        }
    }

    /// Enumerate first/last edges so the path's interior provably stays
    /// out of both endpoints' residual neighborhoods (the containment
    /// clause at inner radius 1), searching the middle at length ell - 2.
    fn connect_with_exit_edges(
        &self,
        a: Vertex,
        b: Vertex,
        avoid_mask: &[bool],
        avoid: &[Vertex],
        committed: &BTreeMap<(Vertex, Vertex), Path>,
        fans: &mut BTreeMap<Vertex, PathFan>,
    ) -> Result<Path, String> {
        let g = self.g;
        let r = &self.r;
        let mut last = String::from("no usable exit-edge combination");
        let exits = |v: Vertex| -> Vec<Vertex> {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&x| !avoid_mask[x] && x != a && x != b)
                .collect()
        };
        let xs = exits(a);
        let ys = exits(b);
        let mut combos = 0usize;
        for &x in &xs {
            for &y in &ys {
                if combos >= 24 {
                    return Err(last);
                }
                if x == y {
                    if r.ell == 2 {
                        combos += 1;
                        let p = Path::new(vec![a, x, b]).expect("distinct");
                        if p.is_valid_in(g) {
                            match self.try_commit(a, b, p, committed, fans) {
                                Ok(p) => return Ok(p),
                                Err(e) => last = e,
                            }
                        }
                    }
                    continue;
                }
                if r.ell < 4 {
                    continue;
                }
                // interiors must not re-enter either residual neighborhood
                if g.has_edge(x, b) || g.has_edge(y, a) {
                    continue;
                }
                combos += 1;
                let mut mid_avoid: Vec<Vertex> = avoid.to_vec();
                mid_avoid.push(a);
                mid_avoid.push(b);
                mid_avoid.extend(g.neighbors(a).iter().copied().filter(|&v| v != x));
                mid_avoid.extend(g.neighbors(b).iter().copied().filter(|&v| v != y));
                mid_avoid.sort_unstable();
                mid_avoid.dedup();
                if mid_avoid.contains(&x) || mid_avoid.contains(&y) {
                    continue;
                }
                let middle = match connect_exact_length(
                    g,
                    &Expansion::singleton(x),
                    &Expansion::singleton(y),
                    r.ell - 2,
                    &mid_avoid,
                    &r.exact_cfg,
                ) {
                    Ok(p) => p,
                    Err(e) => {
                        last = e.to_string();
                        continue;
                    }
                };
                let lead = Path::new(vec![a, x]).expect("distinct");
                let tail = Path::new(vec![y, b]).expect("distinct");
                let full = match lead.join(&middle).and_then(|p| p.join(&tail)) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                match self.try_commit(a, b, full, committed, fans) {
                    Ok(p) => return Ok(p),
                    Err(e) => last = e,
                }
            }
        }
        Err(last)
    }

    /// Commit gate: fan orders must stay consecutive-shortest and the
    /// containment clause must hold for every core with the candidate
    /// added. On success the fans are updated.
    fn try_commit(
        &self,
        a: Vertex,
        b: Vertex,
        path: Path,
        committed: &BTreeMap<(Vertex, Vertex), Path>,
        fans: &mut BTreeMap<Vertex, PathFan>,
    ) -> Result<Path, String> {
        let g = self.g;
        let r = &self.r;
        // clause: disjoint from every other core's inner ball
        for &q in &self.cores {
            if q == a || q == b {
                continue;
            }
            if path
                .vertices()
                .iter()
                .any(|v| self.inner_balls[&q].contains(v))
            {
                return Err(format!("candidate touches the reserved ball of core {q}"));
            }
        }
        let pa = path.prefix(a, r.r1.min(path.length())).expect("a is an endpoint");
        let pb = path.prefix(b, r.r1.min(path.length())).expect("b is an endpoint");
        let mut fan_a = fans[&a].clone();
        fan_a.paths.push(pa);
        if !check_consecutive_shortest(g, &fan_a) {
            return Err("fan order would stop being consecutive-shortest".into());
        }
        let mut fan_b = fans[&b].clone();
        fan_b.paths.push(pb);
        if !check_consecutive_shortest(g, &fan_b) {
            return Err("fan order would stop being consecutive-shortest".into());
        }
        // containment: no path vertex outside a core's own prefixes may sit
        // in that core's residual inner ball
        let mut all_vertices: Vec<Vertex> = committed
            .values()
            .flat_map(|p| p.vertices().iter().copied())
            .collect();
        all_vertices.extend(path.vertices().iter().copied());
        all_vertices.sort_unstable();
        all_vertices.dedup();
        for (&core, fan) in fans.iter() {
            let fan_now = if core == a {
                &fan_a
            } else if core == b {
                &fan_b
            } else {
                fan
            };
            let prefix_verts = fan_now.used_vertices();
            let deleted: Vec<Vertex> = prefix_verts.iter().copied().filter(|&v| v != core).collect();
            let residual_ball = g.ball(&[core], r.r1, &deleted);
            for &v in &all_vertices {
                if prefix_verts.binary_search(&v).is_ok() {
                    continue;
                }
                if residual_ball.binary_search(&v).is_ok() {
                    return Err(format!(
                        "vertex {v} would invade the residual ball of core {core}"
                    ));
                }
            }
        }
        fans.insert(a, fan_a);
        fans.insert(b, fan_b);
        Ok(path)
    }
}

/// Top-level pipeline: extract a bipartite expander, then dispatch by
/// density (dense when the minimum degree clears `(ln n)^s`, otherwise by
/// high-degree supply), stripping high-degree vertices before the
/// bounded-degree pipeline. Never fails; the worst case is a trivial
/// certificate with full diagnostics. The certificate is translated back
/// to the input graph's vertex ids and re-verified there.
pub fn build_auto(g: &Graph, cfg: &BuildConfig) -> BuildOutcome {
    let mut trace = Trace::default();
    let mut diagnostics = Diagnostics::default();

    if g.edge_count() == 0 {
        trace.log("input has no edges: degenerate outcome");
        let cores: Vec<Vertex> = g.vertices().take(1).collect();
        return BuildOutcome {
            cert: SubdivisionCertificate::trivial(cores, cfg.ell.max(1)),
            diagnostics,
            branch: Branch::Degenerate,
            trace,
        };
    }

    // extraction, halving the degree target until it succeeds
    let d = g.average_degree();
    let mut d_target = (d / 8.0).max(0.5);
    trace.log(format!(
        "extraction: d(G)={d:.3}, initial min-degree target d0=d/8={d_target:.3}"
    ));
    let opts = ExtractOptions {
        epsilon1: cfg.epsilon1,
        ..ExtractOptions::default()
    };
    let ex = loop {
        match extract_bipartite_expander(g, d_target, cfg.epsilon2, &opts) {
            Ok(ex) => break ex,
            Err(BipartiteExtractError::Edgeless) => unreachable!("edge count checked"),
            Err(e) => {
                trace.log(format!("extraction at target {d_target:.3} failed: {e}"));
                d_target /= 2.0;
                if d_target < 0.5 {
                    d_target = 0.5;
                }
            }
        }
    };
    if ex.desk_relaxed {
        diagnostics
            .warnings
            .push("average degree below the 8d hypothesis; desk relaxation used".into());
    }
    trace.log(format!(
        "extraction: |V(H)|={}, delta(H)={}, d(H)={:.3}, expansion report mode={:?} holds={}",
        ex.subgraph.vertex_count(),
        ex.subgraph.min_degree(),
        ex.subgraph.average_degree(),
        ex.report.mode,
        ex.report.holds
    ));

    // continue inside the largest component
    let comps = ex.subgraph.components();
    let biggest = comps
        .iter()
        .max_by_key(|c| c.len())
        .expect("extracted graph nonempty")
        .clone();
    let (h, cmap) = ex.subgraph.induced(&biggest);
    let abs_map: Vec<Vertex> = cmap.iter().map(|&v| ex.vertex_map[v]).collect();
    if comps.len() > 1 {
        trace.log(format!(
            "restricting to the largest of {} components ({} vertices)",
            comps.len(),
            h.vertex_count()
        ));
    }

    let r = resolve(&h, cfg, &mut trace);
    if r.ell % 2 == 1 && r.t_dense.max(r.t_sparse) > 2 {
        diagnostics.parity_mismatch = true;
        diagnostics.warnings.push(format!(
            "ell={} odd: same-side cores need even lengths; capping at a cross-side pair",
            r.ell
        ));
    }

    let delta_h = h.min_degree() as f64;
    let (branch, result) = if delta_h >= r.dense_cut && r.ell % 2 == 0 {
        trace.log(format!(
            "branch dense: delta(H)={delta_h} >= (ln n)^s={:.3}",
            r.dense_cut
        ));
        (Branch::Dense, build_dense_resolved(&h, cfg, &r))
    } else {
        let high_count = h
            .vertices()
            .filter(|&v| h.degree(v) >= r.delta_threshold)
            .count();
        trace.log(format!(
            "branch sparse: delta(H)={delta_h} < (ln n)^s={:.3}; {high_count} vertices reach degree {}, need {}",
            r.dense_cut, r.delta_threshold, r.highdeg_need
        ));
        if high_count >= r.highdeg_need && r.ell % 2 == 0 {
            match build_sparse_highdeg_resolved(&h, cfg, &r) {
                Ok(res) => (Branch::SparseHighDeg, Ok(res)),
                Err(e) => {
                    trace.log(format!("high-degree pipeline unavailable: {e}"));
                    (Branch::SparseBounded, run_bounded_after_strip(&h, cfg, &r, &mut trace))
                }
            }
        } else {
            (Branch::SparseBounded, run_bounded_after_strip(&h, cfg, &r, &mut trace))
        }
    };

    match result {
        Ok(mut res) => {
            let cert = res.cert.remap(&abs_map);
            let report = verify_subdivision(g, &cert);
            assert!(report.ok, "remapped certificate invalid: {:?}", report.violation);
            diagnostics.warnings.append(&mut res.diagnostics.warnings);
            diagnostics.failed_pairs.append(&mut res.diagnostics.failed_pairs);
            diagnostics.parity_mismatch |= res.diagnostics.parity_mismatch;
            trace.log(format!("result k={} ell={}", cert.k(), cert.ell));
            BuildOutcome {
                cert,
                diagnostics,
                branch,
                trace,
            }
        }
        Err(e) => {
            trace.log(format!("pipeline failed: {e}; emitting trivial certificate"));
            diagnostics.warnings.push(e.to_string());
            let cert = trivial_edge_certificate(g);
            BuildOutcome {
                cert,
                diagnostics,
                branch: Branch::Degenerate,
                trace,
            }
        }
    }
}

/// Strip-then-bounded route inside the dispatcher. Certificates come back
/// in `h`'s vertex ids.
fn run_bounded_after_strip(
    h: &Graph,
    cfg: &BuildConfig,
    r: &Resolved,
    trace: &mut Trace,
) -> Result<BuildResult, BuildError> {
    let strip = strip_high_degree(h, r.delta_threshold);
    let claim = strip.min_degree_after as f64 > h.average_degree() / 3.0;
    trace.log(format!(
        "strip: removed {} vertices at threshold {}; delta after = {} (> d/3 claim: {claim})",
        strip.removed.len(),
        r.delta_threshold,
        strip.min_degree_after,
    ));
    if strip.subgraph.edge_count() == 0 {
        return Err(BuildError::PreconditionUnmet {
            needed: 1,
            supply: 0,
            threshold: r.delta_threshold,
        });
    }
    let comps = strip.subgraph.components();
    let biggest = comps.iter().max_by_key(|c| c.len()).expect("nonempty").clone();
    let (hh, cmap) = strip.subgraph.induced(&biggest);
    let res = build_sparse_bounded_resolved(&hh, cfg, r)?;
    let lift: Vec<Vertex> = cmap.iter().map(|&v| strip.vertex_map[v]).collect();
    Ok(BuildResult {
        cert: res.cert.remap(&lift),
        diagnostics: res.diagnostics,
    })
}

fn trivial_edge_certificate(g: &Graph) -> SubdivisionCertificate {
    match g.edges().next() {
        Some((u, v)) => {
            let mut cert = SubdivisionCertificate::trivial(vec![u, v], 1);
            cert.pair_paths
                .insert((u, v), Path::new(vec![u, v]).expect("edge"));
            debug_assert!(verify_subdivision(g, &cert).ok);
            cert
        }
        None => SubdivisionCertificate::trivial(g.vertices().take(1).collect(), 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn hypercube(dim: usize) -> Graph {
        let n = 1 << dim;
        let mut edges = Vec::new();
        for u in 0..n {
            for b in 0..dim {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn far_apart_on_path() {
        let g = path_graph(10);
        assert_eq!(select_far_apart_cores(&g, 2, 5).unwrap(), vec![0, 5]);
    }

    #[test]
    fn far_apart_min_dist_zero() {
        let g = path_graph(10);
        assert_eq!(select_far_apart_cores(&g, 3, 0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn far_apart_insufficient_on_k4() {
        let g = {
            let mut edges = Vec::new();
            for u in 0..4 {
                for v in u + 1..4 {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(4, &edges).unwrap()
        };
        let err = select_far_apart_cores(&g, 2, 2).unwrap_err();
        assert_eq!(
            err,
            CoreSelectionError::Insufficient {
                requested: 2,
                found: vec![0]
            }
        );
    }

    #[test]
    fn strip_star_removes_center() {
        let edges: Vec<_> = (1..=9).map(|v| (0, v)).collect();
        let g = Graph::from_edges(10, &edges).unwrap();
        let s = strip_high_degree(&g, 5);
        assert_eq!(s.removed, vec![0]);
        assert_eq!(s.subgraph.vertex_count(), 9);
        assert_eq!(s.subgraph.edge_count(), 0);
    }

    #[test]
    fn strip_regular_removes_nothing() {
        let g = cycle(8);
        let s = strip_high_degree(&g, 3);
        assert!(s.removed.is_empty());
        assert_eq!(s.subgraph.vertex_count(), 8);
    }

    #[test]
    fn strip_apex_only() {
        // K_{9,9} plus one vertex joined to everything
        let mut edges = Vec::new();
        for u in 0..9 {
            for v in 0..9 {
                edges.push((u, 9 + v));
            }
        }
        for v in 0..18 {
            edges.push((18, v));
        }
        let g = Graph::from_edges(19, &edges).unwrap();
        let s = strip_high_degree(&g, 18);
        assert_eq!(s.removed, vec![18]);
        // no surviving vertex had original degree >= threshold
        assert!(s
            .vertex_map
            .iter()
            .all(|&old| g.degree(old) < 18));
    }

    #[test]
    fn dense_k99_three_cores() {
        let g = complete_bipartite(9, 9);
        let cfg = BuildConfig::desk().with_ell(2).with_target_k(3);
        let res = build_dense(&g, &cfg).unwrap();
        assert_eq!(res.cert.k(), 3);
        assert_eq!(res.cert.ell, 2);
        assert!(verify_subdivision(&g, &res.cert).ok);
        let labels = g.bipartition().unwrap();
        let sides: Vec<u8> = res.cert.cores.iter().map(|&c| labels[c]).collect();
        assert!(sides.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn dense_single_core_trivial() {
        let g = complete_bipartite(4, 4);
        let cfg = BuildConfig::desk().with_ell(2).with_target_k(1);
        let res = build_dense(&g, &cfg).unwrap();
        assert_eq!(res.cert.k(), 1);
        assert!(res.cert.pair_paths.is_empty());
    }

    #[test]
    fn dense_c6_two_cores() {
        let g = cycle(6);
        let cfg = BuildConfig::desk().with_ell(2).with_target_k(2);
        let res = build_dense(&g, &cfg).unwrap();
        assert_eq!(res.cert.cores, vec![0, 2]);
        assert_eq!(res.cert.pair_paths[&(0, 2)].vertices(), &[0, 1, 2]);
    }

    #[test]
    fn dense_rejects_odd_ell() {
        let g = complete_bipartite(4, 4);
        let cfg = BuildConfig::desk().with_ell(3).with_target_k(3);
        assert_eq!(build_dense(&g, &cfg).unwrap_err(), BuildError::ParityMismatch);
    }

    #[test]
    fn highdeg_k99() {
        let g = complete_bipartite(9, 9);
        let mut cfg = BuildConfig::desk().with_ell(2).with_target_k(3);
        cfg.degree_threshold = 9;
        let res = build_sparse_highdeg(&g, &cfg).unwrap();
        assert_eq!(res.cert.k(), 3);
        assert!(verify_subdivision(&g, &res.cert).ok);
    }

    #[test]
    fn highdeg_threshold_unreachable() {
        let g = complete_bipartite(4, 4);
        let mut cfg = BuildConfig::desk().with_ell(2).with_target_k(2);
        cfg.degree_threshold = 99;
        assert!(matches!(
            build_sparse_highdeg(&g, &cfg).unwrap_err(),
            BuildError::PreconditionUnmet { supply: 0, .. }
        ));
    }

    #[test]
    fn bounded_hypercube_q6() {
        let g = hypercube(6);
        let cfg = BuildConfig::desk().with_ell(8).with_target_k(3);
        let res = build_sparse_bounded(&g, &cfg).unwrap();
        assert!(verify_subdivision(&g, &res.cert).ok);
        assert!(res.cert.k() >= 2, "at least a pair should connect");
    }

    #[test]
    fn bounded_c10_odd_ell_cross_pair() {
        let g = cycle(10);
        let cfg = BuildConfig::desk().with_ell(5).with_target_k(2);
        let res = build_sparse_bounded(&g, &cfg).unwrap();
        assert_eq!(res.cert.k(), 2);
        assert!(verify_subdivision(&g, &res.cert).ok);
        let p = res.cert.pair_paths.values().next().unwrap();
        assert_eq!(p.length(), 5);
    }

    #[test]
    fn bounded_odd_ell_many_cores_reports_parity() {
        let g = hypercube(4);
        let cfg = BuildConfig::desk().with_ell(5).with_target_k(3);
        let res = build_sparse_bounded(&g, &cfg).unwrap();
        assert!(res.diagnostics.parity_mismatch);
        assert!(res.cert.k() <= 2);
    }

    #[test]
    fn auto_dense_branch_on_k32() {
        let g = complete_bipartite(32, 32);
        let cfg = BuildConfig::desk().with_ell(2);
        let out = build_auto(&g, &cfg);
        assert_eq!(out.branch, Branch::Dense);
        assert!(verify_subdivision(&g, &out.cert).ok);
        assert!(out.cert.k() >= 3);
        assert!(out.trace.render().contains("branch dense"));
    }

    #[test]
    fn auto_dense_branch_on_hypercube() {
        // hypercubes have min degree log2 n = 1.44 ln n, above the desk cut
        let g = hypercube(8);
        let cfg = BuildConfig::desk().with_ell(4);
        let out = build_auto(&g, &cfg);
        assert_eq!(out.branch, Branch::Dense);
        assert!(verify_subdivision(&g, &out.cert).ok);
    }

    #[test]
    fn auto_bounded_branch_on_low_degree_graph() {
        let g = cycle(50);
        let cfg = BuildConfig::desk().with_ell(8).with_target_k(2);
        let out = build_auto(&g, &cfg);
        assert_eq!(out.branch, Branch::SparseBounded);
        assert!(verify_subdivision(&g, &out.cert).ok);
        assert_eq!(out.cert.k(), 2);
    }

    #[test]
    fn auto_on_disjoint_union() {
        let mut edges = Vec::new();
        for c in 0..10 {
            let base = c * 12;
            for u in 0..6 {
                for v in 0..6 {
                    edges.push((base + u, base + 6 + v));
                }
            }
        }
        let g = Graph::from_edges(120, &edges).unwrap();
        let out = build_auto(&g, &BuildConfig::desk().with_ell(2).with_target_k(3));
        assert!(verify_subdivision(&g, &out.cert).ok);
        assert!(out.cert.k() >= 3);
        // extraction isolated a single dense piece well below the union
        assert!(out
            .trace
            .render()
            .contains("|V(H)|=12"));
    }

    #[test]
    fn auto_never_fails_on_sparse_trees() {
        let g = path_graph(50);
        let out = build_auto(&g, &BuildConfig::desk().with_ell(4));
        assert!(verify_subdivision(&g, &out.cert).ok);
    }
}
