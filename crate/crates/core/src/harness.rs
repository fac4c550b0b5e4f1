//! Graph generators for the extremal and test families, enumeration of
//! all small connected graphs up to isomorphism, and the scaling
//! benchmark driving the full pipeline across a family sweep.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::builder::{build_auto, Branch, BuildConfig};
use crate::graph::{Graph, Vertex};
use crate::verify::verify_subdivision;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `copies` disjoint K_{d,d}: average degree d, the extremal family.
    CompleteBipartiteUnion { d: usize, copies: usize },
    Complete { n: usize },
    Hypercube { dim: usize },
    Cycle { n: usize },
    RandomBipartite { na: usize, nb: usize, p: f64 },
    RandomRegular { n: usize, d: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn label(&self) -> String {
        match &self.family {
            Family::CompleteBipartiteUnion { d, copies } => format!("kdd_union(d={d},c={copies})"),
            Family::Complete { n } => format!("complete(n={n})"),
            Family::Hypercube { dim } => format!("hypercube(dim={dim})"),
            Family::Cycle { n } => format!("cycle(n={n})"),
            Family::RandomBipartite { na, nb, p } => format!("rand_bip(na={na},nb={nb},p={p})"),
            Family::RandomRegular { n, d } => format!("rand_reg(n={n},d={d})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("random regular pairing failed to produce a simple graph")]
    PairingExhausted,
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("complete graph is simple")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::from_edges(a + b, &edges).expect("complete bipartite graph is simple")
}

pub fn hypercube(dim: usize) -> Graph {
    let n = 1usize << dim;
    let mut edges = Vec::new();
    for u in 0..n {
        for bit in 0..dim {
            let v = u ^ (1 << bit);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("hypercube is simple")
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle is simple")
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path is simple")
}

/// Outer 5-cycle 0..4, spokes to 5..9, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen is simple")
}

/// Deterministic generation for a fixed seed.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GenError> {
    match spec.family {
        Family::CompleteBipartiteUnion { d, copies } => {
            if d == 0 || copies == 0 {
                return Err(GenError::InvalidParameters(
                    "complete_bipartite_union needs d >= 1 and copies >= 1".into(),
                ));
            }
            let mut edges = Vec::new();
            for c in 0..copies {
                let base = c * 2 * d;
                for u in 0..d {
                    for v in 0..d {
                        edges.push((base + u, base + d + v));
                    }
                }
            }
            Ok(Graph::from_edges(copies * 2 * d, &edges).expect("union is simple"))
        }
        Family::Complete { n } => {
            if n == 0 {
                return Err(GenError::InvalidParameters("complete needs n >= 1".into()));
            }
            Ok(complete_graph(n))
        }
        Family::Hypercube { dim } => {
            if dim == 0 || dim > 20 {
                return Err(GenError::InvalidParameters(
                    "hypercube needs 1 <= dim <= 20".into(),
                ));
            }
            Ok(hypercube(dim))
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(GenError::InvalidParameters("cycle needs n >= 3".into()));
            }
            Ok(cycle_graph(n))
        }
        Family::RandomBipartite { na, nb, p } => {
            if na == 0 || nb == 0 || !(0.0..=1.0).contains(&p) {
                return Err(GenError::InvalidParameters(
                    "random_bipartite needs na, nb >= 1 and p in [0,1]".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut edges = Vec::new();
            for u in 0..na {
                for v in 0..nb {
                    if rng.gen_bool(p) {
                        edges.push((u, na + v));
                    }
                }
            }
            Ok(Graph::from_edges(na + nb, &edges).expect("bipartite sample is simple"))
        }
        Family::RandomRegular { n, d } => random_regular(n, d, spec.seed),
    }
}

/// Pairing-model regular graph: shuffle the d*n stubs, pair them up,
/// reject draws with loops or duplicate edges.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if n == 0 || d == 0 || d >= n || (n * d) % 2 != 0 {
        return Err(GenError::InvalidParameters(
            "random_regular needs 1 <= d < n with n*d even".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..200 {
        let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n * d / 2);
        let mut seen = std::collections::HashSet::new();
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Ok(Graph::from_edges(n, &edges).expect("pairing checked simple"));
    }
    Err(GenError::PairingExhausted)
}

// ---------------------------------------------------------------------
// Enumeration of small connected graphs up to isomorphism
// ---------------------------------------------------------------------

/// All connected graphs on exactly `n` vertices, one per isomorphism
/// class, built by vertex augmentation from the (n-1)-vertex classes.
pub fn enumerate_connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 1 && n <= 9, "enumeration is for small graphs");
    let mut level: Vec<Graph> = vec![Graph::from_edges(1, &[]).unwrap()];
    for k in 1..n {
        let mut next: Vec<Graph> = Vec::new();
        let mut index: HashMap<u64, Vec<usize>> = HashMap::new();
        for g in &level {
            for mask in 1u32..(1u32 << k) {
                let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
                for v in 0..k {
                    if mask >> v & 1 == 1 {
                        edges.push((v, k));
                    }
                }
                let cand = Graph::from_edges(k + 1, &edges).expect("augmented graph is simple");
                let key = invariant_key(&cand);
                let bucket = index.entry(key).or_default();
                if bucket
                    .iter()
                    .any(|&i| are_isomorphic(&next[i], &cand))
                {
                    continue;
                }
                bucket.push(next.len());
                next.push(cand);
            }
        }
        level = next;
    }
    level
}

/// Iterated neighborhood-color refinement signature, hashed. Isomorphic
/// graphs always agree on it.
fn wl_colors(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut colors: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    for _ in 0..3 {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut neigh: Vec<u64> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
            neigh.sort_unstable();
            let mut h = DefaultHasher::new();
            colors[v].hash(&mut h);
            neigh.hash(&mut h);
            next.push(h.finish());
        }
        colors = next;
    }
    colors
}

fn invariant_key(g: &Graph) -> u64 {
    let mut sig = wl_colors(g);
    sig.sort_unstable();
    let mut h = DefaultHasher::new();
    g.vertex_count().hash(&mut h);
    g.edge_count().hash(&mut h);
    sig.hash(&mut h);
    h.finish()
}

/// Backtracking isomorphism test with color-class pruning.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let c1 = wl_colors(g1);
    let c2 = wl_colors(g2);
    let mut s1 = c1.clone();
    let mut s2 = c2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return false;
    }
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // map vertices in order of rarest color first
    let mut order: Vec<Vertex> = (0..n).collect();
    let mut freq: HashMap<u64, usize> = HashMap::new();
    for &c in &c1 {
        *freq.entry(c).or_default() += 1;
    }
    order.sort_by_key(|&v| (freq[&c1[v]], v));
    extend_mapping(g1, g2, &c1, &c2, &order, 0, &mut mapping, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend_mapping(
    g1: &Graph,
    g2: &Graph,
    c1: &[u64],
    c2: &[u64],
    order: &[Vertex],
    idx: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    for w in 0..g2.vertex_count() {
        if used[w] || c2[w] != c1[v] {
            continue;
        }
        // adjacency with already-mapped vertices must match
        let ok = order[..idx].iter().all(|&u| {
            g1.has_edge(v, u) == g2.has_edge(w, mapping[u])
        });
        if !ok {
            continue;
        }
        mapping[v] = w;
        used[w] = true;
        if extend_mapping(g1, g2, c1, c2, order, idx + 1, mapping, used) {
            return true;
        }
        used[w] = false;
        mapping[v] = usize::MAX;
    }
    false
}

// ---------------------------------------------------------------------
// Scaling benchmark
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub d_avg: f64,
    pub k: usize,
    pub ell: usize,
    pub branch: &'static str,
    pub ms: u128,
    pub sqrt_d: f64,
    pub d_pow_c: f64,
    pub verified: bool,
    pub fallback: bool,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub warnings: Vec<String>,
}

/// Run the full pipeline over a sweep, verify every certificate, and
/// collect per-row stats. Rows run in parallel up to `workers` but are
/// reported in sweep order. Monotonicity of k against average degree is
/// a soft check: violations become warnings.
pub fn bench_scaling(sweep: &[GeneratorSpec], cfg: &BuildConfig, workers: usize) -> BenchReport {
    let workers = workers.max(1);
    let mut slots: Vec<Option<BenchRow>> = vec![None; sweep.len()];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..workers.min(sweep.len().max(1)) {
            let cfg = cfg.clone();
            let sweep = &sweep;
            handles.push(scope.spawn(move || {
                let mut mine = Vec::new();
                let mut i = worker;
                while i < sweep.len() {
                    mine.push((i, bench_one(&sweep[i], &cfg)));
                    i += workers;
                }
                mine
            }));
        }
        for handle in handles {
            for (i, row) in handle.join().expect("bench worker panicked") {
                slots[i] = Some(row);
            }
        }
    });
    let rows: Vec<BenchRow> = slots.into_iter().map(|r| r.expect("row filled")).collect();

    let mut warnings = Vec::new();
    for w in rows.windows(2) {
        if w[1].d_avg > w[0].d_avg && w[1].k < w[0].k {
            warnings.push(format!(
                "k drops from {} to {} while average degree grows from {:.2} to {:.2} ({} -> {})",
                w[0].k, w[1].k, w[0].d_avg, w[1].d_avg, w[0].label, w[1].label
            ));
        }
    }
    BenchReport { rows, warnings }
}

fn bench_one(spec: &GeneratorSpec, cfg: &BuildConfig) -> BenchRow {
    let label = spec.label();
    let g = match generate(spec) {
        Ok(g) => g,
        Err(e) => {
            return BenchRow {
                label: format!("{label} [generate failed: {e}]"),
                n: 0,
                m: 0,
                d_avg: 0.0,
                k: 0,
                ell: 0,
                branch: "none",
                ms: 0,
                sqrt_d: 0.0,
                d_pow_c: 0.0,
                verified: false,
                fallback: true,
            }
        }
    };
    let start = Instant::now();
    let out = build_auto(&g, cfg);
    let ms = start.elapsed().as_millis();
    let verified = verify_subdivision(&g, &out.cert).ok;
    let d = g.average_degree();
    BenchRow {
        label,
        n: g.vertex_count(),
        m: g.edge_count(),
        d_avg: d,
        k: out.cert.k(),
        ell: out.cert.ell,
        branch: out.branch.name(),
        ms,
        sqrt_d: d.sqrt(),
        d_pow_c: d.powf(cfg.c),
        verified,
        fallback: out.branch == Branch::Degenerate,
    }
}

/// Plain-text table with the reference columns.
pub fn render_table(report: &BenchReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<28} {:>6} {:>8} {:>8} {:>4} {:>4} {:>15} {:>8} {:>8} {:>8} {:>4} {:>5}\n",
        "family", "n", "m", "d", "k", "ell", "branch", "ms", "sqrt(d)", "d^c", "ok", "fall"
    ));
    for r in &report.rows {
        out.push_str(&format!(
            "{:<28} {:>6} {:>8} {:>8.3} {:>4} {:>4} {:>15} {:>8} {:>8.3} {:>8.3} {:>4} {:>5}\n",
            r.label,
            r.n,
            r.m,
            r.d_avg,
            r.k,
            r.ell,
            r.branch,
            r.ms,
            r.sqrt_d,
            r.d_pow_c,
            if r.verified { "yes" } else { "NO" },
            if r.fallback { "yes" } else { "" },
        ));
    }
    for w in &report.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

/// Machine-readable line per row.
pub fn render_results(report: &BenchReport) -> String {
    let mut out = String::new();
    for r in &report.rows {
        out.push_str(&format!(
            "row n={} m={} d={:.4} k={} ell={} branch={} ms={}\n",
            r.n, r.m, r.d_avg, r.k, r.ell, r.branch, r.ms
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_counts() {
        let g = generate(&GeneratorSpec {
            family: Family::CompleteBipartiteUnion { d: 3, copies: 2 },
            seed: 0,
        })
        .unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 18);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn hypercube_q3() {
        let g = generate(&GeneratorSpec {
            family: Family::Hypercube { dim: 3 },
            seed: 0,
        })
        .unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 12);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert!(g.is_bipartite());
    }

    #[test]
    fn cycle_c6() {
        let g = generate(&GeneratorSpec {
            family: Family::Cycle { n: 6 },
            seed: 0,
        })
        .unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn invalid_parameters_reported() {
        assert!(matches!(
            generate(&GeneratorSpec {
                family: Family::Cycle { n: 2 },
                seed: 0
            }),
            Err(GenError::InvalidParameters(_))
        ));
        assert!(matches!(
            generate(&GeneratorSpec {
                family: Family::RandomRegular { n: 5, d: 3 },
                seed: 0
            }),
            Err(GenError::InvalidParameters(_))
        ));
    }

    #[test]
    fn random_families_deterministic_and_valid() {
        for seed in [1u64, 7, 42] {
            let spec = GeneratorSpec {
                family: Family::RandomRegular { n: 24, d: 4 },
                seed,
            };
            let g1 = generate(&spec).unwrap();
            let g2 = generate(&spec).unwrap();
            assert_eq!(g1, g2);
            assert!(g1.vertices().all(|v| g1.degree(v) == 4));
            assert!(g1.adjacency_symmetric());

            let spec = GeneratorSpec {
                family: Family::RandomBipartite {
                    na: 10,
                    nb: 12,
                    p: 0.4,
                },
                seed,
            };
            let g1 = generate(&spec).unwrap();
            assert_eq!(g1, generate(&spec).unwrap());
            assert!(g1.is_bipartite());
        }
    }

    #[test]
    fn petersen_shape() {
        let g = petersen();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert!(!g.is_bipartite());
        assert_eq!(g.shortest_cycle().unwrap().vertices().len(), 5);
    }

    #[test]
    fn enumeration_matches_known_counts() {
        // connected graphs up to isomorphism on 1..=6 vertices
        let expected = [1usize, 1, 2, 6, 21, 112];
        for (i, &want) in expected.iter().enumerate() {
            let got = enumerate_connected_graphs(i + 1).len();
            assert_eq!(got, want, "n = {}", i + 1);
        }
    }

    #[test]
    fn enumeration_matches_known_counts_large() {
        assert_eq!(enumerate_connected_graphs(7).len(), 853);
        assert_eq!(enumerate_connected_graphs(8).len(), 11117);
    }

    #[test]
    fn isomorphism_basics() {
        // C6 vs two triangles: same degree sequence, not isomorphic
        let c6 = cycle_graph(6);
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic(&c6, &two_triangles));
        // relabelled C6
        let c6b = Graph::from_edges(6, &[(2, 4), (4, 0), (0, 5), (5, 1), (1, 3), (3, 2)]).unwrap();
        assert!(are_isomorphic(&c6, &c6b));
    }

    #[test]
    fn bench_sweep_smoke() {
        let sweep: Vec<GeneratorSpec> = [4usize, 8]
            .iter()
            .map(|&d| GeneratorSpec {
                family: Family::CompleteBipartiteUnion { d, copies: 1 },
                seed: 0,
            })
            .collect();
        let cfg = BuildConfig::desk().with_ell(2);
        let report = bench_scaling(&sweep, &cfg, 2);
        assert_eq!(report.rows.len(), 2);
        assert!(report.rows.iter().all(|r| r.verified));
        let results = render_results(&report);
        assert!(results.starts_with("row n=8 m=16"));
        let table = render_table(&report);
        assert!(table.contains("sqrt(d)"));
    }

    #[test]
    fn bench_empty_sweep() {
        let report = bench_scaling(&[], &BuildConfig::desk(), 4);
        assert!(report.rows.is_empty());
        assert!(render_results(&report).is_empty());
    }
}
