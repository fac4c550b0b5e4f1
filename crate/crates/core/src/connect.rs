//! Short connections in `G - W`, rooted vertex expansions with the
//! trimming property, ball growth with size targets, and the
//! consecutive-shortest-path bookkeeping used by the sparse pipeline.

use thiserror::Error;

use crate::graph::{Graph, Path, Vertex, UNREACHED};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectError {
    #[error("endpoint sets must be nonempty")]
    EmptyEndpointSet,
    #[error("endpoint sets must be disjoint from the avoid set")]
    EndpointAvoided,
    #[error("no path exists once the avoid set is deleted")]
    NoPath,
    #[error("shortest path has length {shortest}, over the cap {max_len}")]
    TooLong { shortest: usize, max_len: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrowError {
    #[error("root is inside the avoid set")]
    RootAvoided,
    #[error("expansion target {target} unreachable: only {reachable} vertices within the radius budget")]
    Insufficient { target: usize, reachable: usize },
}

/// A shortest path from `a` to `b` in `G - avoid`, rejected when longer
/// than `max_len`. `a` and `b` may intersect; then the smallest common
/// vertex is returned as a trivial path. Tie-breaking: among closest
/// `b`-vertices the smallest id, and each predecessor is the smallest-id
/// neighbor one layer closer to `a`.
pub fn connect_avoiding(
    g: &Graph,
    a: &[Vertex],
    b: &[Vertex],
    avoid: &[Vertex],
    max_len: usize,
) -> Result<Path, ConnectError> {
    if a.is_empty() || b.is_empty() {
        return Err(ConnectError::EmptyEndpointSet);
    }
    let blocked = g.mask(avoid);
    if a.iter().chain(b).any(|&v| blocked[v]) {
        return Err(ConnectError::EndpointAvoided);
    }
    if let Some(&common) = a.iter().filter(|v| b.contains(v)).min() {
        return Ok(Path::single(common));
    }
    let dist = g.bfs_dists(a, Some(&blocked), g.vertex_count());
    let target = b
        .iter()
        .copied()
        .filter(|&v| dist[v] != UNREACHED)
        .min_by_key(|&v| (dist[v], v))
        .ok_or(ConnectError::NoPath)?;
    let shortest = dist[target] as usize;
    if shortest > max_len {
        return Err(ConnectError::TooLong { shortest, max_len });
    }
    let mut verts = vec![target];
    let mut cur = target;
    while dist[cur] > 0 {
        let prev = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&w| dist[w] != UNREACHED && dist[w] + 1 == dist[cur])
            .min()
            .expect("BFS layer structure guarantees a predecessor");
        verts.push(prev);
        cur = prev;
    }
    verts.reverse();
    Ok(Path::new(verts).expect("BFS reconstruction is simple"))
}

/// A rooted connected vertex set of prescribed size with every member
/// within a bounded distance of the root inside the induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    root: Vertex,
    /// Sorted ascending; always contains the root.
    members: Vec<Vertex>,
    /// Radius actually realized (max induced distance from the root).
    radius: usize,
}

impl Expansion {
    pub fn singleton(root: Vertex) -> Expansion {
        Expansion {
            root,
            members: vec![root],
            radius: 0,
        }
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Exact check of the defining properties with the given size and
    /// radius bound: |F| = d, connected induced subgraph, all members
    /// within distance m of the root inside it.
    pub fn verify(&self, g: &Graph, d: usize, m: usize) -> bool {
        if self.members.len() != d || !self.contains(self.root) {
            return false;
        }
        self.induced_eccentricity(g).map_or(false, |ecc| ecc <= m)
    }

    /// Max distance from the root inside the induced set, `None` if the
    /// induced subgraph is disconnected.
    fn induced_eccentricity(&self, g: &Graph) -> Option<usize> {
        let keep = g.mask(&self.members);
        let blocked: Vec<bool> = keep.iter().map(|&k| !k).collect();
        let dist = g.bfs_dists(&[self.root], Some(&blocked), g.vertex_count());
        let mut ecc = 0usize;
        for &v in &self.members {
            if dist[v] == UNREACHED {
                return None;
            }
            ecc = ecc.max(dist[v] as usize);
        }
        Some(ecc)
    }

    /// Trim to a smaller size, keeping the root: whole BFS layers inside
    /// the current member set, then smallest ids within the last layer.
    /// Both invariants are preserved.
    pub fn trim(&self, g: &Graph, new_size: usize) -> Expansion {
        assert!(1 <= new_size && new_size <= self.size());
        let keep = g.mask(&self.members);
        let blocked: Vec<bool> = keep.iter().map(|&k| !k).collect();
        let dist = g.bfs_dists(&[self.root], Some(&blocked), g.vertex_count());
        let mut by_layer: Vec<Vertex> = self.members.clone();
        by_layer.sort_unstable_by_key(|&v| (dist[v], v));
        let mut members: Vec<Vertex> = by_layer[..new_size].to_vec();
        let radius = members.iter().map(|&v| dist[v] as usize).max().unwrap();
        members.sort_unstable();
        Expansion {
            root: self.root,
            members,
            radius,
        }
    }
}

/// Grow a `(target_size, <= max_radius)`-expansion of `v` in `G - avoid`
/// by whole BFS layers, trimming the last layer to the smallest ids.
pub fn grow_expansion(
    g: &Graph,
    v: Vertex,
    target_size: usize,
    max_radius: usize,
    avoid: &[Vertex],
) -> Result<Expansion, GrowError> {
    assert!(target_size >= 1);
    let blocked = g.mask(avoid);
    grow_expansion_masked(g, v, target_size, max_radius, &blocked)
}

/// Mask-level variant of [`grow_expansion`] for callers that maintain
/// their own avoid masks.
pub fn grow_expansion_masked(
    g: &Graph,
    v: Vertex,
    target_size: usize,
    max_radius: usize,
    blocked: &[bool],
) -> Result<Expansion, GrowError> {
    if blocked[v] {
        return Err(GrowError::RootAvoided);
    }
    let dist = g.bfs_dists(&[v], Some(blocked), max_radius);
    let mut reach: Vec<Vertex> = (0..g.vertex_count())
        .filter(|&w| dist[w] != UNREACHED)
        .collect();
    if reach.len() < target_size {
        return Err(GrowError::Insufficient {
            target: target_size,
            reachable: reach.len(),
        });
    }
    reach.sort_unstable_by_key(|&w| (dist[w], w));
    let mut members: Vec<Vertex> = reach[..target_size].to_vec();
    let radius = members.iter().map(|&w| dist[w] as usize).max().unwrap();
    members.sort_unstable();
    Ok(Expansion {
        root: v,
        members,
        radius,
    })
}

/// Result of [`grow_ball_avoiding`]: the grown ball and whether the size
/// target was met. Falling short is a reported condition, not an error.
#[derive(Debug, Clone)]
pub struct BallGrowth {
    pub members: Vec<Vertex>,
    pub target_met: bool,
}

/// The ball of the given radius around `y` in `G - w`, with a size-target
/// report standing in for the asymptotic growth thresholds.
pub fn grow_ball_avoiding(
    g: &Graph,
    y: &[Vertex],
    w: &[Vertex],
    radius: usize,
    target: usize,
) -> BallGrowth {
    let members = g.ball(y, radius, w);
    let target_met = members.len() >= target;
    BallGrowth {
        members,
        target_met,
    }
}

/// An ordered family of paths from one root inside a home set, recorded
/// in an order that witnesses the consecutive-shortest-paths property.
#[derive(Debug, Clone)]
pub struct PathFan {
    pub root: Vertex,
    /// The ball the fan lives in; must contain the root.
    pub home: Vec<Vertex>,
    pub paths: Vec<Path>,
}

impl PathFan {
    pub fn new(root: Vertex, home: Vec<Vertex>) -> PathFan {
        PathFan {
            root,
            home,
            paths: Vec::new(),
        }
    }

    /// Union of all fan path vertices, ascending.
    pub fn used_vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .paths
            .iter()
            .flat_map(|p| p.vertices().iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// True iff the fan's recorded order witnesses consecutive shortest
/// paths: each path starts at the root, stays inside the home set, and
/// has length equal to the distance between its endpoints in the home
/// set minus all earlier paths' vertices plus the root.
pub fn check_consecutive_shortest(g: &Graph, fan: &PathFan) -> bool {
    let home_mask = g.mask(&fan.home);
    if !home_mask[fan.root] {
        return false;
    }
    let mut removed = vec![false; g.vertex_count()];
    for (i, path) in fan.paths.iter().enumerate() {
        if path.first() != fan.root {
            return false;
        }
        if path.vertices().iter().any(|&v| !home_mask[v]) {
            return false;
        }
        // allowed set: home minus earlier paths, root always present
        let blocked: Vec<bool> = (0..g.vertex_count())
            .map(|v| !home_mask[v] || (removed[v] && v != fan.root))
            .collect();
        if path.vertices().iter().any(|&v| blocked[v] && v != fan.root) {
            return false;
        }
        let dist = g.bfs_dists(&[fan.root], Some(&blocked), g.vertex_count());
        let end = path.last();
        if dist[end] == UNREACHED || dist[end] as usize != path.length() {
            return false;
        }
        let _ = i;
        for &v in path.vertices() {
            removed[v] = true;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
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

    #[test]
    fn connect_c6_around_blocked_side() {
        let g = cycle(6);
        let p = connect_avoiding(&g, &[0], &[3], &[1], 5).unwrap();
        assert_eq!(p.vertices(), &[0, 5, 4, 3]);
    }

    #[test]
    fn connect_trivial_on_overlap() {
        let g = cycle(6);
        let p = connect_avoiding(&g, &[2, 4], &[4, 5], &[], 5).unwrap();
        assert_eq!(p.vertices(), &[4]);
        assert_eq!(p.length(), 0);
    }

    #[test]
    fn connect_distinct_errors() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            connect_avoiding(&g, &[0], &[2], &[1], 5).unwrap_err(),
            ConnectError::NoPath
        );
        let c6 = cycle(6);
        assert_eq!(
            connect_avoiding(&c6, &[0], &[3], &[1], 2).unwrap_err(),
            ConnectError::TooLong {
                shortest: 3,
                max_len: 2
            }
        );
        assert_eq!(
            connect_avoiding(&c6, &[], &[3], &[], 2).unwrap_err(),
            ConnectError::EmptyEndpointSet
        );
        assert_eq!(
            connect_avoiding(&c6, &[1], &[3], &[1], 2).unwrap_err(),
            ConnectError::EndpointAvoided
        );
    }

    #[test]
    fn connect_length_matches_independent_distance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = hypercube(4);
        for _ in 0..50 {
            let a = rng.gen_range(0..16);
            let b = rng.gen_range(0..16);
            if a == b {
                continue;
            }
            let avoid: Vec<Vertex> = (0..16)
                .filter(|&v| v != a && v != b && rng.gen_bool(0.2))
                .collect();
            let dist = g.bfs_dists(&[a], Some(&g.mask(&avoid)), 99);
            match connect_avoiding(&g, &[a], &[b], &avoid, 99) {
                Ok(p) => {
                    assert_eq!(p.length(), dist[b] as usize);
                    assert_eq!(p.first(), a);
                    assert_eq!(p.last(), b);
                    assert!(p.is_valid_in(&g));
                    assert!(p.vertices().iter().all(|v| !avoid.contains(v)));
                }
                Err(ConnectError::NoPath) => assert_eq!(dist[b], UNREACHED),
                Err(e) => panic!("unexpected error {e:?}"),
            }
        }
    }

    #[test]
    fn grow_star_keeps_smallest_leaves() {
        let g = star(9);
        let e = grow_expansion(&g, 0, 5, 1, &[]).unwrap();
        assert_eq!(e.members(), &[0, 1, 2, 3, 4]);
        assert_eq!(e.radius(), 1);
        assert!(e.verify(&g, 5, 1));
    }

    #[test]
    fn grow_insufficient_on_small_ball() {
        let g = cycle(6);
        assert_eq!(
            grow_expansion(&g, 0, 6, 2, &[]).unwrap_err(),
            GrowError::Insufficient {
                target: 6,
                reachable: 5
            }
        );
    }

    #[test]
    fn trim_preserves_invariants() {
        let g = hypercube(4);
        let e = grow_expansion(&g, 0, 10, 3, &[]).unwrap();
        assert!(e.verify(&g, 10, 3));
        let t = e.trim(&g, 4);
        assert!(t.verify(&g, 4, 3));
        assert_eq!(t.root(), 0);
        assert!(t.members().iter().all(|v| e.members().contains(v)));
    }

    #[test]
    fn grow_ball_hypercube_cut_off() {
        let g = hypercube(4);
        let w: Vec<Vertex> = g.neighbors(0).to_vec();
        let b = grow_ball_avoiding(&g, &[0], &w, 2, 2);
        assert_eq!(b.members, vec![0]);
        assert!(!b.target_met);
        let whole = grow_ball_avoiding(&g, &[0], &[], 4, 16);
        assert_eq!(whole.members.len(), 16);
        assert!(whole.target_met);
        let trivial = grow_ball_avoiding(&g, &[3], &[], 0, 1);
        assert!(trivial.target_met);
    }

    #[test]
    fn fan_empty_and_star() {
        let g = star(4);
        let fan = PathFan::new(0, vec![0, 1, 2, 3, 4]);
        assert!(check_consecutive_shortest(&g, &fan));
        let mut fan = fan;
        fan.paths.push(Path::new(vec![0, 1]).unwrap());
        fan.paths.push(Path::new(vec![0, 2]).unwrap());
        assert!(check_consecutive_shortest(&g, &fan));
    }

    #[test]
    fn fan_on_c6_detects_detour() {
        let g = cycle(6);
        let home: Vec<Vertex> = (0..6).collect();
        let mut fan = PathFan::new(0, home.clone());
        fan.paths.push(Path::new(vec![0, 1, 2]).unwrap());
        fan.paths.push(Path::new(vec![0, 5, 4]).unwrap());
        assert!(check_consecutive_shortest(&g, &fan));

        // a non-shortest detour in first position fails
        let mut bad = PathFan::new(0, home);
        bad.paths.push(Path::new(vec![0, 5, 4, 3, 2]).unwrap());
        assert!(!check_consecutive_shortest(&g, &bad));
    }

    #[test]
    fn fan_append_fresh_shortest_stays_consecutive() {
        let g = hypercube(3);
        let home: Vec<Vertex> = (0..8).collect();
        let mut fan = PathFan::new(0, home);
        for target in [3usize, 5, 6] {
            let avoid = fan.used_vertices();
            let avoid: Vec<Vertex> = avoid.into_iter().filter(|&v| v != 0).collect();
            if let Ok(p) = connect_avoiding(&g, &[0], &[target], &avoid, 8) {
                fan.paths.push(p);
                assert!(check_consecutive_shortest(&g, &fan));
            }
        }
        assert!(!fan.paths.is_empty());
    }
}
