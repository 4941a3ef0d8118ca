//! Simple undirected graphs with vertex payloads, plus exchange graphs,
//! C-constant graphs, canonical certificates and the clique oracle.

mod canon;
mod exchange;
mod oracle;

pub use canon::{canonical_certificate, isomorphic, CanonicalCertificate};
pub use exchange::{
    cconstant_graph, exchange_graph, exchange_graph_with_budget, filter_containing, CConstantGraph, ExchangeGraph,
    DEFAULT_VERTEX_BUDGET,
};
pub(crate) use exchange::{explore, Explored};
pub use oracle::{brute_force_maximal_collections, ORACLE_LIMIT};

use std::collections::VecDeque;

use crate::error::{PlabError, Result};

/// A simple undirected graph whose vertices carry payloads of type `P`.
/// Adjacency lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph<P> {
    vertices: Vec<P>,
    adj: Vec<Vec<usize>>,
}

impl<P> LabeledGraph<P> {
    /// Loops are ignored and repeated edges collapse.
    pub fn new(vertices: Vec<P>, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(u, v) in edges {
            assert!(u < vertices.len() && v < vertices.len(), "edge ({u}, {v}) out of range");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        LabeledGraph { vertices, adj }
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[P] {
        &self.vertices
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn map<Q>(&self, f: impl FnMut(&P) -> Q) -> LabeledGraph<Q> {
        LabeledGraph {
            vertices: self.vertices.iter().map(f).collect(),
            adj: self.adj.clone(),
        }
    }

    /// Structure only; payloads become vertex indices.
    pub fn unlabeled(&self) -> LabeledGraph<usize> {
        LabeledGraph {
            vertices: (0..self.order()).collect(),
            adj: self.adj.clone(),
        }
    }

    /// Subgraph induced on `keep` (indices in the order given).
    pub fn induced(&self, keep: &[usize]) -> LabeledGraph<P>
    where
        P: Clone,
    {
        let mut index = vec![usize::MAX; self.order()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let mut edges = Vec::new();
        for (new_u, &old_u) in keep.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                let new_v = index[old_v];
                if new_v != usize::MAX && new_u < new_v {
                    edges.push((new_u, new_v));
                }
            }
        }
        LabeledGraph::new(keep.iter().map(|&v| self.vertices[v].clone()).collect(), &edges)
    }
}

impl LabeledGraph<usize> {
    /// Unlabeled graph on `0..order`.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Self {
        LabeledGraph::new((0..order).collect(), edges)
    }

    /// Builds a graph from one-based adjacency lists `v -> [w, ...]`, the
    /// format of the published graph catalog. Both directions need not be
    /// listed, but every listed neighbour must exist.
    pub fn from_adjacency_lists(lists: &[(usize, &[usize])]) -> Result<Self> {
        let order = lists.iter().map(|(v, _)| *v).max().unwrap_or(0);
        let mut edges = Vec::new();
        for &(v, nbrs) in lists {
            for &w in nbrs {
                if v == 0 || w == 0 || w > order {
                    return Err(PlabError::invalid(format!("edge {v} -> {w} out of range 1..={order}")));
                }
                edges.push((v - 1, w - 1));
            }
        }
        Ok(LabeledGraph::from_edges(order, &edges))
    }

    pub fn path(m: usize) -> Self {
        let edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        LabeledGraph::from_edges(m, &edges)
    }

    pub fn cycle(m: usize) -> Self {
        let edges: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        LabeledGraph::from_edges(m, &edges)
    }
}

/// Cartesian product: `(u1, u2) ~ (v1, v2)` iff one coordinate is equal and
/// the other adjacent. Vertex `(i, j)` sits at index `i * |V2| + j`.
pub fn cartesian_product<P: Clone, Q: Clone>(g1: &LabeledGraph<P>, g2: &LabeledGraph<Q>) -> LabeledGraph<(P, Q)> {
    let m = g2.order();
    let mut vertices = Vec::with_capacity(g1.order() * m);
    for p in &g1.vertices {
        for q in &g2.vertices {
            vertices.push((p.clone(), q.clone()));
        }
    }
    let mut edges = Vec::new();
    for i in 0..g1.order() {
        for (j1, j2) in g2.edges() {
            edges.push((i * m + j1, i * m + j2));
        }
    }
    for (i1, i2) in g1.edges() {
        for j in 0..m {
            edges.push((i1 * m + j, i2 * m + j));
        }
    }
    LabeledGraph::new(vertices, &edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "order")]
pub enum Shape {
    /// Includes the single vertex `Path(1)` and the single edge `Path(2)`.
    Path(usize),
    /// Simple cycle on at least three vertices.
    Cycle(usize),
    /// A tree that is not a path.
    Tree,
    Other,
}

pub fn shape<P>(g: &LabeledGraph<P>) -> Shape {
    let n = g.order();
    if n == 0 || !g.is_connected() {
        return Shape::Other;
    }
    let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    if g.size() + 1 == n {
        if max_deg <= 2 {
            Shape::Path(n)
        } else {
            Shape::Tree
        }
    } else if n >= 3 && (0..n).all(|v| g.degree(v) == 2) {
        Shape::Cycle(n)
    } else {
        Shape::Other
    }
}
