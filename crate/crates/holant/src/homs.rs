//! Graph homomorphism counting: brute force, the equivalent Holant grid
//! construction (edges of `K` become degree-2 vertices carrying the adjacency
//! matrix, vertices of `K` become equality vertices), and profiles over small
//! connected graphs.

use crate::gadget::SignatureGrid;
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::standard;
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HomError {
    #[error("adjacency matrix must be square and symmetric")]
    NotSymmetric,
    #[error("edge ({0},{1}) out of range for {2} vertices")]
    EdgeOutOfRange(usize, usize, usize),
}

/// A small multigraph given by an edge list (parallel edges and loops allowed).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, HomError> {
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(HomError::EdgeOutOfRange(u, v, vertices));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn cycle(n: usize) -> Graph {
        Graph { vertices: n, edges: (0..n).map(|i| (i, (i + 1) % n)).collect() }
    }

    pub fn path(n: usize) -> Graph {
        Graph { vertices: n, edges: (1..n).map(|i| (i - 1, i)).collect() }
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { vertices: n, edges }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.vertices;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph { vertices: self.vertices + other.vertices, edges }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Symmetric 0/1 adjacency matrix (multiplicities for parallel edges,
    /// loops on the diagonal).
    pub fn adjacency(&self) -> Mat {
        let mut m = Mat::zeros(self.vertices, self.vertices);
        for &(u, v) in &self.edges {
            let one = Scalar::one();
            m[(u, v)] = &m[(u, v)] + &one;
            if u != v {
                m[(v, u)] = &m[(v, u)] + &one;
            }
        }
        m
    }
}

/// A weighted target graph: a symmetric `q x q` matrix.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    adjacency: Mat,
}

impl WeightedGraph {
    pub fn new(adjacency: Mat) -> Result<Self, HomError> {
        if !adjacency.is_square() {
            return Err(HomError::NotSymmetric);
        }
        let n = adjacency.rows();
        for i in 0..n {
            for j in i + 1..n {
                if adjacency[(i, j)] != adjacency[(j, i)] {
                    return Err(HomError::NotSymmetric);
                }
            }
        }
        Ok(WeightedGraph { adjacency })
    }

    pub fn from_graph(g: &Graph) -> Self {
        WeightedGraph { adjacency: g.adjacency() }
    }

    pub fn q(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &Mat {
        &self.adjacency
    }

    /// The adjacency matrix as a binary signature.
    pub fn signature(&self) -> Signature {
        let m = &self.adjacency;
        Signature::from_fn(m.rows(), 2, |idx| m[(idx[0], idx[1])].clone())
    }
}

/// Brute-force weighted homomorphism count: sum over all vertex maps of the
/// product of edge weights.
pub fn hom_count(k: &Graph, x: &WeightedGraph) -> Scalar {
    let q = x.q();
    let mut total = Scalar::zero();
    let mut map = vec![0usize; k.vertices];
    loop {
        let mut weight = Scalar::one();
        for &(u, v) in &k.edges {
            weight *= &x.adjacency[(map[u], map[v])];
            if weight.is_zero() {
                break;
            }
        }
        total += &weight;
        if !crate::signature::increment(&mut map, q) {
            break;
        }
    }
    total
}

/// The grid whose Holant value counts homomorphisms from `K` to `X`:
/// each vertex of `K` becomes an equality vertex of its degree, each edge a
/// degree-2 vertex assigned the adjacency signature.
pub fn hom_grid(k: &Graph, x: &WeightedGraph) -> SignatureGrid {
    let q = x.q();
    let a_sig = x.signature();
    let mut sigs = vec![a_sig];
    let mut sig_index = BTreeMap::new();
    sig_index.insert(0usize, 0usize); // arity 2 placeholder below

    // Equality vertices first (one per K-vertex), then edge vertices.
    let mut table_of_eq: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    for v in 0..k.vertices {
        let deg = k.degree(v);
        let idx = *table_of_eq.entry(deg).or_insert_with(|| {
            sigs.push(standard::equality(deg, q));
            sigs.len() - 1
        });
        vertices.push(idx);
    }
    let a_vertex_start = vertices.len();
    vertices.extend(std::iter::repeat_n(0, k.edges.len()));

    // Port bookkeeping: next free slot per equality vertex.
    let mut next_slot = vec![0usize; k.vertices];
    let mut edges = Vec::new();
    for (e, &(u, v)) in k.edges.iter().enumerate() {
        let a_vertex = a_vertex_start + e;
        let su = next_slot[u];
        next_slot[u] += 1;
        edges.push(((u, su), (a_vertex, 0)));
        let sv = next_slot[v];
        next_slot[v] += 1;
        edges.push(((v, sv), (a_vertex, 1)));
    }
    SignatureGrid::from_edges(q, sigs, vertices, edges, 0).expect("hom grid is well-formed")
}

/// All connected simple graphs with 1..=max_size vertices, up to isomorphism,
/// in a deterministic order.
pub fn connected_graphs_up_to(max_size: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        let slots: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for mask in 0u64..(1 << slots.len()) {
            let edges: Vec<(usize, usize)> = slots
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph { vertices: n, edges };
            if !g.is_connected() {
                continue;
            }
            if seen.insert(canonical_adjacency(&g)) {
                out.push(g);
            }
        }
    }
    out
}

fn canonical_adjacency(g: &Graph) -> Vec<u64> {
    let n = g.vertices;
    let mut adj = vec![0u64; n * n];
    for &(u, v) in &g.edges {
        adj[u * n + v] = 1;
        adj[v * n + u] = 1;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let key: Vec<u64> = (0..n)
            .flat_map(|i| (0..n).map(|j| adj[perm[i] * n + perm[j]]).collect::<Vec<_>>())
            .collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        // next_permutation
        let mut i = n.saturating_sub(1);
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    let mut key = best.unwrap_or_default();
    key.insert(0, n as u64);
    key
}

/// Homomorphism counts from every connected graph with at most `max_size`
/// vertices, keyed by the graph.
pub fn hom_profile(x: &WeightedGraph, max_size: usize) -> BTreeMap<Graph, Scalar> {
    connected_graphs_up_to(max_size)
        .into_iter()
        .map(|k| {
            let count = hom_count(&k, x);
            (k, count)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_into_triangle() {
        let k3 = Graph::complete(3);
        let x = WeightedGraph::from_graph(&k3);
        assert_eq!(hom_count(&k3, &x), Scalar::from_int(6));
    }

    #[test]
    fn triangle_into_cycles() {
        let k3 = Graph::complete(3);
        let c6 = WeightedGraph::from_graph(&Graph::cycle(6));
        assert_eq!(hom_count(&k3, &c6), Scalar::zero());
        let c3c3 = WeightedGraph::from_graph(&Graph::cycle(3).disjoint_union(&Graph::cycle(3)));
        assert_eq!(hom_count(&k3, &c3c3), Scalar::from_int(12));
    }

    #[test]
    fn single_vertex_counts_targets() {
        let k1 = Graph::new(1, vec![]).unwrap();
        let x = WeightedGraph::from_graph(&Graph::cycle(5));
        assert_eq!(hom_count(&k1, &x), Scalar::from_int(5));
    }

    #[test]
    fn hom_grid_matches_brute_force() {
        let x = WeightedGraph::from_graph(&Graph::cycle(4));
        for k in [Graph::complete(3), Graph::cycle(4), Graph::path(3), Graph::cycle(3)] {
            let grid = hom_grid(&k, &x);
            assert_eq!(grid.holant(), hom_count(&k, &x), "graph {k:?}");
        }
    }

    /// All simple graphs on exactly n labelled vertices, up to isomorphism
    /// (connectivity not required).
    fn all_graphs(n: usize) -> Vec<Graph> {
        let slots: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mask in 0u64..(1 << slots.len()) {
            let edges: Vec<(usize, usize)> = slots
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph { vertices: n, edges };
            if seen.insert(canonical_adjacency(&g)) {
                out.push(g);
            }
        }
        out
    }

    #[test]
    fn hom_grid_matches_brute_force_exhaustively() {
        // Every graph K with <= 4 vertices into every X with <= 4 vertices:
        // the Holant grid construction agrees with the definition, exactly.
        let ks: Vec<Graph> = (1..=4).flat_map(all_graphs).collect();
        let xs: Vec<WeightedGraph> =
            (1..=4).flat_map(all_graphs).map(|g| WeightedGraph::from_graph(&g)).collect();
        assert_eq!(ks.len(), 1 + 2 + 4 + 11);
        for k in &ks {
            for x in &xs {
                assert_eq!(
                    hom_grid(k, x).holant(),
                    hom_count(k, x),
                    "K = {k:?}, X = {:?}",
                    x.adjacency()
                );
            }
        }
    }

    #[test]
    fn connected_graph_counts() {
        // 1, 1, 2, 6 connected simple graphs on 1..=4 vertices.
        assert_eq!(connected_graphs_up_to(1).len(), 1);
        assert_eq!(connected_graphs_up_to(2).len(), 2);
        assert_eq!(connected_graphs_up_to(3).len(), 4);
        assert_eq!(connected_graphs_up_to(4).len(), 10);
    }

    #[test]
    fn non_symmetric_adjacency_rejected() {
        let m = Mat::from_rows_int(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(WeightedGraph::new(m).unwrap_err(), HomError::NotSymmetric);
    }
}
