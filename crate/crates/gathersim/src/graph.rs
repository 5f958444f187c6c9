//! Anonymous, connected, undirected graphs with local port numbering.
//!
//! Nodes carry no identifiers that agents can observe; each node `v`
//! numbers its incident edges `1..=d(v)` locally, and the two endpoints
//! of an edge may assign it different port numbers. Node indices exist
//! only for simulator bookkeeping.
//!
//! Besides the basic generators (ring, line, star, clique, tree) this
//! module provides the two composition constructions used by the
//! impossibility demos: gluing two graphs with a bridge edge, and the
//! star-line tree with two designated gathering nodes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A port number at some node, in `1..=d(v)`.
pub type Port = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("node index {0} out of range (graph has {1} nodes)")]
    NodeOutOfRange(usize, usize),
    #[error("port {port} at node {node} is not symmetric")]
    AsymmetricPort { node: usize, port: Port },
    #[error("graph is not connected (node {0} unreachable from node 0)")]
    NotConnected(usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("multi-edge between nodes {0} and {1}")]
    MultiEdge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// An anonymous port-labeled graph.
///
/// `adjacency[v][p-1] = (u, q)` means port `p` at node `v` leads to node
/// `u`, and the traveler arrives at `u` through `u`'s port `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortGraph {
    adjacency: Vec<Vec<(usize, Port)>>,
}

impl PortGraph {
    /// Builds a graph from an edge list, assigning ports in construction
    /// order: each endpoint of each edge gets the next free port.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if node_count == 0 {
            return Err(GraphError::InvalidSize("graph must have at least one node".into()));
        }
        let mut adjacency: Vec<Vec<(usize, Port)>> = vec![Vec::new(); node_count];
        for &(a, b) in edges {
            if a >= node_count {
                return Err(GraphError::NodeOutOfRange(a, node_count));
            }
            if b >= node_count {
                return Err(GraphError::NodeOutOfRange(b, node_count));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let pa = adjacency[a].len() + 1;
            let pb = adjacency[b].len() + 1;
            adjacency[a].push((b, pb));
            adjacency[b].push((a, pa));
        }
        let g = PortGraph { adjacency };
        g.validate()?;
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Follows port `p` out of node `v`; returns the destination node and
    /// the arrival port at the destination.
    pub fn traverse(&self, v: usize, p: Port) -> Option<(usize, Port)> {
        if p == 0 {
            return None;
        }
        self.adjacency.get(v)?.get(p - 1).copied()
    }

    /// Neighbors of `v` in port order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(u, _)| u)
    }

    /// Checks all structural invariants: ports are exactly `1..=d(v)`
    /// with symmetric reverse ports, the graph is simple, and connected.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.node_count();
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            let mut seen = vec![false; n];
            for (i, &(u, q)) in nbrs.iter().enumerate() {
                let p = i + 1;
                if u >= n {
                    return Err(GraphError::NodeOutOfRange(u, n));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if seen[u] {
                    return Err(GraphError::MultiEdge(v, u));
                }
                seen[u] = true;
                // Reverse port must point back at us through port p.
                match self.adjacency[u].get(q - 1) {
                    Some(&(back, back_port)) if back == v && back_port == p => {}
                    _ => return Err(GraphError::AsymmetricPort { node: v, port: p }),
                }
            }
        }
        // Connectivity via BFS from node 0.
        let mut visited = vec![false; n];
        let mut queue = std::collections::VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !visited[u] {
                    visited[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if let Some(v) = visited.iter().position(|&x| !x) {
            return Err(GraphError::NotConnected(v));
        }
        Ok(())
    }

    /// Breadth-first shortest path from `from` to `to`, as a list of
    /// outgoing ports. Used by omniscient adversary strategies.
    pub fn shortest_path_ports(&self, from: usize, to: usize) -> Vec<Port> {
        if from == to {
            return Vec::new();
        }
        let n = self.node_count();
        let mut prev: Vec<Option<(usize, Port)>> = vec![None; n];
        let mut visited = vec![false; n];
        visited[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for (i, &(u, _)) in self.adjacency[v].iter().enumerate() {
                if !visited[u] {
                    visited[u] = true;
                    prev[u] = Some((v, i + 1));
                    queue.push_back(u);
                }
            }
        }
        let mut ports = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, port) = prev[cur].expect("graph is connected");
            ports.push(port);
            cur = p;
        }
        ports.reverse();
        ports
    }

    // ------------------------------------------------------------------
    // Serialization: line 1 is `n`, then one line per node v with `d(v)`
    // followed by d(v) pairs `neighbor reverse_port` (0-based nodes,
    // 1-based ports).
    // ------------------------------------------------------------------

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.node_count());
        for nbrs in &self.adjacency {
            let mut line = format!("{}", nbrs.len());
            for &(u, q) in nbrs {
                line.push_str(&format!(" {} {}", u, q));
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| GraphError::Parse(format!("bad integer token `{t}`")))
        });
        let mut next = |what: &str| match tokens.next() {
            Some(t) => t,
            None => Err(GraphError::Parse(format!("unexpected end of input, expected {what}"))),
        };
        let n = next("node count")?;
        if n == 0 {
            return Err(GraphError::InvalidSize("node count must be positive".into()));
        }
        let mut adjacency = Vec::with_capacity(n);
        for _ in 0..n {
            let d = next("degree")?;
            let mut nbrs = Vec::with_capacity(d);
            for _ in 0..d {
                let u = next("neighbor")?;
                let q = next("reverse port")?;
                nbrs.push((u, q));
            }
            adjacency.push(nbrs);
        }
        let g = PortGraph { adjacency };
        g.validate()?;
        Ok(g)
    }
}

// ----------------------------------------------------------------------
// Generators
// ----------------------------------------------------------------------

/// An `n`-cycle. With `clockwise`, port 1 at every node points the same
/// rotational direction (port 1 leads to `v+1 mod n`, arriving on port 2),
/// so following port 1 repeatedly walks the whole ring. Without it, ports
/// are assigned in edge-construction order.
pub fn make_ring(n: usize, clockwise: bool) -> Result<PortGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidSize(format!("ring needs at least 3 nodes, got {n}")));
    }
    if clockwise {
        let adjacency = (0..n)
            .map(|v| vec![((v + 1) % n, 2), ((v + n - 1) % n, 1)])
            .collect();
        let g = PortGraph { adjacency };
        g.validate()?;
        Ok(g)
    } else {
        let edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        PortGraph::from_edges(n, &edges)
    }
}

/// A path of `n` nodes, `0 - 1 - ... - n-1`.
pub fn make_line(n: usize) -> Result<PortGraph, GraphError> {
    if n < 1 {
        return Err(GraphError::InvalidSize("line needs at least 1 node".into()));
    }
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    PortGraph::from_edges(n, &edges)
}

/// A star with the center at node 0 and `leaves` leaf nodes.
pub fn make_star(leaves: usize) -> Result<PortGraph, GraphError> {
    if leaves < 1 {
        return Err(GraphError::InvalidSize("star needs at least 1 leaf".into()));
    }
    let edges: Vec<(usize, usize)> = (1..=leaves).map(|l| (0, l)).collect();
    PortGraph::from_edges(leaves + 1, &edges)
}

/// The complete graph on `n` nodes.
pub fn make_clique(n: usize) -> Result<PortGraph, GraphError> {
    if n < 1 {
        return Err(GraphError::InvalidSize("clique needs at least 1 node".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    PortGraph::from_edges(n, &edges)
}

/// A rooted tree. `parent_list[i]` is the parent of node `i + 1` and must
/// refer to an already-numbered node (`parent_list[i] <= i`), so node 0 is
/// the root and the list encodes a valid tree by construction order.
pub fn make_tree(parent_list: &[usize]) -> Result<PortGraph, GraphError> {
    let n = parent_list.len() + 1;
    let mut edges = Vec::with_capacity(parent_list.len());
    for (i, &p) in parent_list.iter().enumerate() {
        let child = i + 1;
        if p >= child {
            return Err(GraphError::InvalidStructure(format!(
                "parent_list[{i}] = {p} does not refer to an earlier node"
            )));
        }
        edges.push((p, child));
    }
    PortGraph::from_edges(n, &edges)
}

/// Disjoint union of `g1` and `g2` plus one bridging edge `(v1, v2)`.
/// Nodes of `g1` keep their indices; nodes of `g2` are offset by
/// `g1.node_count()`. The bridge takes the next free port at each endpoint.
pub fn glue(g1: &PortGraph, v1: usize, g2: &PortGraph, v2: usize) -> Result<PortGraph, GraphError> {
    if v1 >= g1.node_count() {
        return Err(GraphError::NodeOutOfRange(v1, g1.node_count()));
    }
    if v2 >= g2.node_count() {
        return Err(GraphError::NodeOutOfRange(v2, g2.node_count()));
    }
    let offset = g1.node_count();
    let mut adjacency = g1.adjacency.clone();
    adjacency.extend(
        g2.adjacency
            .iter()
            .map(|nbrs| nbrs.iter().map(|&(u, q)| (u + offset, q)).collect::<Vec<_>>()),
    );
    let b2 = v2 + offset;
    let p1 = adjacency[v1].len() + 1;
    let p2 = adjacency[b2].len() + 1;
    adjacency[v1].push((b2, p2));
    adjacency[b2].push((v1, p1));
    let g = PortGraph { adjacency };
    g.validate()?;
    Ok(g)
}

/// The star-line tree with two designated gathering nodes.
#[derive(Debug, Clone)]
pub struct StarLineTree {
    pub graph: PortGraph,
    /// Centers of the two stars (the designated gathering nodes).
    pub centers: [usize; 2],
}

/// Builds the tree made of two stars with internal degrees `d1` and `d2`
/// and two lines of `n/2 - d1 - 1` and `n/2 - d2 - 1` nodes, joined by
/// three edges: star-leaf to star-leaf, and each star-leaf to its line.
pub fn make_t3(d1: usize, d2: usize, n: usize) -> Result<StarLineTree, GraphError> {
    if n % 2 != 0 {
        return Err(GraphError::InvalidSize(format!("total node count must be even, got {n}")));
    }
    let half = n / 2;
    if d1 < 1 || d2 < 1 || half < d1 + 2 || half < d2 + 2 {
        return Err(GraphError::InvalidSize(format!(
            "unsatisfiable sizes: need 1 <= d and d + 2 <= n/2 (d1={d1}, d2={d2}, n={n})"
        )));
    }
    let line1 = half - d1 - 1; // >= 1
    let line2 = half - d2 - 1;

    // Node layout: star 1 (center, then leaves), star 2, line 1, line 2.
    let c1 = 0;
    let s1_leaves = 1..=d1;
    let c2 = d1 + 1;
    let s2_leaves = (c2 + 1)..=(c2 + d2);
    let l1_start = c2 + d2 + 1;
    let l2_start = l1_start + line1;
    let total = l2_start + line2;
    debug_assert_eq!(total, n);

    let mut edges = Vec::new();
    for l in s1_leaves.clone() {
        edges.push((c1, l));
    }
    for l in s2_leaves.clone() {
        edges.push((c2, l));
    }
    for i in 0..line1.saturating_sub(1) {
        edges.push((l1_start + i, l1_start + i + 1));
    }
    for i in 0..line2.saturating_sub(1) {
        edges.push((l2_start + i, l2_start + i + 1));
    }
    // The three joining edges: a leaf of each star to the other star's
    // leaf, and a leaf of each star to an end node of its line.
    let u1 = *s1_leaves.clone().collect::<Vec<_>>().first().unwrap();
    let u2 = *s2_leaves.clone().collect::<Vec<_>>().first().unwrap();
    edges.push((u1, u2));
    edges.push((u1, l1_start));
    edges.push((u2, l2_start));

    let graph = PortGraph::from_edges(n, &edges)?;
    Ok(StarLineTree { graph, centers: [c1, c2] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let g = make_ring(3, true).unwrap();
        assert_eq!(g.node_count(), 3);
        assert!((0..3).all(|v| g.degree(v) == 2));
        assert!(make_ring(2, true).is_err());
    }

    #[test]
    fn ring_clockwise_port1_closes_cycle() {
        let g = make_ring(4, true).unwrap();
        let mut v = 0;
        for _ in 0..4 {
            v = g.traverse(v, 1).unwrap().0;
        }
        assert_eq!(v, 0);
    }

    /// An agent following the same port decisions on rings of different
    /// sizes sees identical (degree, arrival-port) observations until it
    /// would close the smaller cycle.
    #[test]
    fn ring_local_indistinguishability() {
        let small = make_ring(3, true).unwrap();
        let large = make_ring(8, true).unwrap();
        let decisions = [1, 1, 1];
        let (mut vs, mut vl) = (0usize, 0usize);
        for &p in &decisions {
            let (ns, qs) = small.traverse(vs, p).unwrap();
            let (nl, ql) = large.traverse(vl, p).unwrap();
            assert_eq!(small.degree(vs), large.degree(vl));
            assert_eq!(qs, ql);
            vs = ns;
            vl = nl;
        }
    }

    #[test]
    fn line_star_clique_degrees() {
        let line = make_line(3).unwrap();
        assert_eq!(line.degree(0), 1);
        assert_eq!(line.degree(1), 2);
        assert_eq!(line.degree(2), 1);

        let star = make_star(4).unwrap();
        assert_eq!(star.node_count(), 5);
        assert_eq!(star.degree(0), 4);
        assert!((1..5).all(|v| star.degree(v) == 1));

        let clique = make_clique(4).unwrap();
        assert!((0..4).all(|v| clique.degree(v) == 3));
    }

    #[test]
    fn tree_from_parent_list() {
        // 0 - 1, 0 - 2, 2 - 3
        let g = make_tree(&[0, 0, 2]).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(make_tree(&[1]).is_err()); // parent not yet constructed
    }

    #[test]
    fn glue_counts_and_invariants() {
        let r = make_ring(3, true).unwrap();
        let g = glue(&r, 1, &r, 0).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.degree(1), 3); // bridge endpoint in g1
        assert_eq!(g.degree(3), 3); // bridge endpoint in g2 (offset by 3)
        g.validate().unwrap();
        assert!(glue(&r, 7, &r, 0).is_err());
    }

    #[test]
    fn t3_construction() {
        let t = make_t3(2, 2, 12).unwrap();
        assert_eq!(t.graph.node_count(), 12);
        assert_eq!(t.graph.edge_count(), 11);
        assert_eq!(t.graph.degree(t.centers[0]), 2);
        assert_eq!(t.graph.degree(t.centers[1]), 2);
        t.graph.validate().unwrap();
        assert!(make_t3(2, 2, 7).is_err()); // odd
        assert!(make_t3(4, 4, 10).is_err()); // lines would be empty
    }

    #[test]
    fn text_round_trip() {
        let g = make_clique(4).unwrap();
        let text = g.to_text();
        let back = PortGraph::from_text(&text).unwrap();
        assert_eq!(g, back);
        assert!(PortGraph::from_text("2\n1 1 1\n1 0 1\n").is_ok());
        assert!(PortGraph::from_text("garbage").is_err());
    }

    #[test]
    fn validator_rejects_broken_ports() {
        // Port 1 of node 0 claims reverse port 1 at node 1, but node 1's
        // port 1 points elsewhere.
        let broken = PortGraph {
            adjacency: vec![vec![(1, 1)], vec![(2, 1)], vec![(1, 1)]],
        };
        assert!(broken.validate().is_err());
    }
}
