//! Stable multigraphs: dual graphs of nodal curves with per-vertex genus.
//!
//! Edges carry a reference orientation `tail -> head`. Loops and parallel
//! edges are allowed. A [`StableGraph`] is connected and satisfies
//! `2 g_v - 2 + valence(v) > 0` at every vertex; it also caches a
//! deterministic spanning tree and the fundamental circuits built from it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    DanglingEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} is unstable: 2*{genus} - 2 + {valence} <= 0")]
    Unstable {
        vertex: VertexId,
        genus: u32,
        valence: usize,
    },
    #[error("invalid spanning tree: {0}")]
    BadTree(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub genus: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Structurally well-formed multigraph: unique ids, no dangling endpoints.
/// May be disconnected or unstable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    // positional endpoints, parallel to `edges`
    ends: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut pos = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if pos.insert(v.id, i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id));
            }
        }
        let mut seen = BTreeSet::new();
        let mut ends = Vec::with_capacity(edges.len());
        for e in &edges {
            if !seen.insert(e.id) {
                return Err(GraphError::DuplicateEdge(e.id));
            }
            let lookup = |v: VertexId| {
                pos.get(&v).copied().ok_or(GraphError::DanglingEndpoint {
                    edge: e.id,
                    vertex: v,
                })
            };
            ends.push((lookup(e.tail)?, lookup(e.head)?));
        }
        Ok(Multigraph {
            vertices,
            edges,
            ends,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Positional `(tail, head)` of edge `i`.
    #[inline]
    pub fn endpoints(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: VertexId) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Valence of each vertex; a loop counts twice.
    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.vertices.len()];
        for &(t, h) in &self.ends {
            val[t] += 1;
            val[h] += 1;
        }
        val
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = n;
        for &(t, h) in &self.ends {
            let (a, b) = (find(&mut parent, t), find(&mut parent, h));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// First vertex violating `2g - 2 + valence > 0`, if any.
    pub fn first_unstable(&self) -> Option<GraphError> {
        self.vertices
            .iter()
            .zip(self.valences())
            .find(|(v, val)| 2 * v.genus as i64 - 2 + *val as i64 <= 0)
            .map(|(v, valence)| GraphError::Unstable {
                vertex: v.id,
                genus: v.genus,
                valence,
            })
    }

    pub fn validate_stable(&self) -> bool {
        self.is_connected() && self.first_unstable().is_none()
    }
}

/// Which way an edge is walked inside a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Reverse,
}

/// One step of a closed walk: edge position plus direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Traversal {
    pub edge: usize,
    pub direction: Direction,
}

/// A closed walk, stored as edge positions within the ambient graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    pub steps: Vec<Traversal>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Consecutive steps chain head-to-tail and the walk closes up.
    pub fn is_closed_in(&self, graph: &Multigraph) -> bool {
        if self.steps.is_empty() {
            return true;
        }
        let oriented = |s: &Traversal| {
            let (t, h) = graph.endpoints(s.edge);
            match s.direction {
                Direction::Forward => (t, h),
                Direction::Reverse => (h, t),
            }
        };
        let start = oriented(&self.steps[0]).0;
        let mut at = start;
        for s in &self.steps {
            let (from, to) = oriented(s);
            if from != at {
                return false;
            }
            at = to;
        }
        at == start
    }
}

/// Connected, stable multigraph with cached cycle data.
#[derive(Clone, PartialEq, Eq)]
pub struct StableGraph {
    graph: Multigraph,
    tree: Vec<usize>,
    circuits: Vec<Circuit>,
}

impl fmt::Debug for StableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StableGraph")
            .field("vertices", &self.graph.vertices)
            .field("edges", &self.graph.edges)
            .finish()
    }
}

impl TryFrom<Multigraph> for StableGraph {
    type Error = GraphError;

    fn try_from(graph: Multigraph) -> Result<Self, GraphError> {
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if let Some(err) = graph.first_unstable() {
            return Err(err);
        }
        let order: Vec<usize> = (0..graph.edge_count()).collect();
        let tree = dfs_tree(&graph, &order);
        let circuits = circuits_for_tree(&graph, &tree);
        Ok(StableGraph {
            graph,
            tree,
            circuits,
        })
    }
}

impl StableGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        StableGraph::try_from(Multigraph::new(vertices, edges)?)
    }

    /// Two vertices `0` and `1` joined by `k` parallel edges with ids `1..=k`.
    ///
    /// Edge 2 runs `1 -> 0`, every other edge `0 -> 1`. Vertices have genus 0
    /// when `k >= 3` and genus 1 otherwise (the minimum that keeps them stable).
    pub fn banana(k: usize) -> Self {
        assert!(k >= 1, "banana graph needs at least one edge");
        let genus = if k >= 3 { 0 } else { 1 };
        let vertices = vec![Vertex { id: 0, genus }, Vertex { id: 1, genus }];
        let edges = (1..=k as EdgeId)
            .map(|id| {
                let (tail, head) = if id == 2 { (1, 0) } else { (0, 1) };
                Edge { id, tail, head }
            })
            .collect();
        StableGraph::new(vertices, edges).expect("banana graphs are stable")
    }

    /// The three-edge banana graph.
    pub fn theta() -> Self {
        StableGraph::banana(3)
    }

    pub fn multigraph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.graph.vertices()
    }

    pub fn edges(&self) -> &[Edge] {
        self.graph.edges()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    #[inline]
    pub fn endpoints(&self, i: usize) -> (usize, usize) {
        self.graph.endpoints(i)
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.graph.edge_index(id)
    }

    /// `b1 = |E| - |V| + 1`.
    pub fn betti_number(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// `sum g_v + b1`.
    pub fn total_genus(&self) -> u64 {
        self.vertices().iter().map(|v| v.genus as u64).sum::<u64>() + self.betti_number() as u64
    }

    /// Edge positions of the cached spanning tree.
    pub fn tree_positions(&self) -> &[usize] {
        &self.tree
    }

    /// Edge ids of the cached spanning tree, in the order they were taken.
    pub fn spanning_tree(&self) -> Vec<EdgeId> {
        self.tree.iter().map(|&i| self.edges()[i].id).collect()
    }

    pub fn fundamental_circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// Spanning tree found by depth-first search from the lowest vertex id,
    /// trying edges in `edge_order` instead of input order.
    /// Used to confirm results do not depend on the fundamental system.
    pub fn spanning_tree_with_order(&self, edge_order: &[usize]) -> Result<Vec<usize>, GraphError> {
        let mut sorted = edge_order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.edge_count()).collect::<Vec<_>>() {
            return Err(GraphError::BadTree("edge order is not a permutation".into()));
        }
        Ok(dfs_tree(&self.graph, edge_order))
    }

    /// Fundamental circuits for an arbitrary spanning tree given by edge positions.
    pub fn circuits_for_tree(&self, tree: &[usize]) -> Result<Vec<Circuit>, GraphError> {
        if tree.len() + 1 != self.vertex_count() {
            return Err(GraphError::BadTree(format!(
                "{} edges for {} vertices",
                tree.len(),
                self.vertex_count()
            )));
        }
        let probe = Multigraph {
            vertices: self.graph.vertices.clone(),
            edges: tree.iter().map(|&i| self.graph.edges[i]).collect(),
            ends: tree.iter().map(|&i| self.graph.ends[i]).collect(),
        };
        if tree.iter().any(|&i| i >= self.edge_count()) || !probe.is_connected() {
            return Err(GraphError::BadTree("edges do not span".into()));
        }
        Ok(circuits_for_tree(&self.graph, tree))
    }
}

fn incidence(graph: &Multigraph, edge_order: &[usize]) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); graph.vertex_count()];
    for &i in edge_order {
        let (t, h) = graph.endpoints(i);
        if t != h {
            inc[t].push(i);
            inc[h].push(i);
        }
    }
    inc
}

/// Depth-first spanning tree from the vertex with the lowest id.
fn dfs_tree(graph: &Multigraph, edge_order: &[usize]) -> Vec<usize> {
    let inc = incidence(graph, edge_order);
    let root = (0..graph.vertex_count())
        .min_by_key(|&i| graph.vertices()[i].id)
        .unwrap_or(0);
    let mut visited = vec![false; graph.vertex_count()];
    let mut tree = Vec::new();
    let mut stack = vec![(root, 0usize)];
    visited[root] = true;
    while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
        if let Some(&e) = inc[v].get(*cursor) {
            *cursor += 1;
            let (t, h) = graph.endpoints(e);
            let w = if t == v { h } else { t };
            if !visited[w] {
                visited[w] = true;
                tree.push(e);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    tree
}

/// One circuit per non-tree edge, in edge order: the edge walked forward,
/// then the tree path from its head back to its tail.
fn circuits_for_tree(graph: &Multigraph, tree: &[usize]) -> Vec<Circuit> {
    let n = graph.vertex_count();
    let in_tree: BTreeSet<usize> = tree.iter().copied().collect();
    // parent edge and depth in the rooted tree
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let root = (0..n).min_by_key(|&i| graph.vertices()[i].id).unwrap_or(0);
    let inc = incidence(graph, tree);
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        for &e in &inc[v] {
            let (t, h) = graph.endpoints(e);
            let w = if t == v { h } else { t };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(e);
                depth[w] = depth[v] + 1;
                stack.push(w);
            }
        }
    }
    let step_up = |child: usize| -> (Traversal, usize) {
        let e = parent[child].expect("non-root vertex has a parent edge");
        let (t, h) = graph.endpoints(e);
        if t == child {
            (Traversal { edge: e, direction: Direction::Forward }, h)
        } else {
            (Traversal { edge: e, direction: Direction::Reverse }, t)
        }
    };

    (0..graph.edge_count())
        .filter(|i| !in_tree.contains(i))
        .map(|e| {
            let (tail, head) = graph.endpoints(e);
            let mut steps = vec![Traversal { edge: e, direction: Direction::Forward }];
            // walk from head up to the common ancestor, and from tail likewise
            let (mut u, mut w) = (head, tail);
            let mut up = Vec::new();
            let mut down = Vec::new();
            while depth[u] > depth[w] {
                let (s, p) = step_up(u);
                up.push(s);
                u = p;
            }
            while depth[w] > depth[u] {
                let (s, p) = step_up(w);
                down.push(s);
                w = p;
            }
            while u != w {
                let (s, p) = step_up(u);
                up.push(s);
                u = p;
                let (s, p) = step_up(w);
                down.push(s);
                w = p;
            }
            steps.extend(up);
            steps.extend(down.into_iter().rev().map(|s| Traversal {
                edge: s.edge,
                direction: match s.direction {
                    Direction::Forward => Direction::Reverse,
                    Direction::Reverse => Direction::Forward,
                },
            }));
            Circuit { steps }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(id: VertexId, genus: u32) -> Vertex {
        Vertex { id, genus }
    }

    fn e(id: EdgeId, tail: VertexId, head: VertexId) -> Edge {
        Edge { id, tail, head }
    }

    #[test]
    fn stability_examples() {
        let theta = Multigraph::new(vec![v(0, 0), v(1, 0)], vec![e(1, 0, 1), e(2, 1, 0), e(3, 0, 1)]).unwrap();
        assert!(theta.validate_stable());

        let rational_loop = Multigraph::new(vec![v(0, 0)], vec![e(1, 0, 0)]).unwrap();
        assert!(!rational_loop.validate_stable());
        assert!(matches!(
            StableGraph::try_from(rational_loop),
            Err(GraphError::Unstable { vertex: 0, genus: 0, valence: 2 })
        ));

        let elliptic_loop = Multigraph::new(vec![v(0, 1)], vec![e(1, 0, 0)]).unwrap();
        assert!(elliptic_loop.validate_stable());
    }

    #[test]
    fn structural_errors() {
        assert_eq!(Multigraph::new(vec![], vec![]), Err(GraphError::NoVertices));
        assert_eq!(
            Multigraph::new(vec![v(0, 1)], vec![e(1, 0, 5)]),
            Err(GraphError::DanglingEndpoint { edge: 1, vertex: 5 })
        );
        assert_eq!(
            Multigraph::new(vec![v(0, 1), v(0, 1)], vec![]),
            Err(GraphError::DuplicateVertex(0))
        );
        assert_eq!(
            Multigraph::new(vec![v(0, 1)], vec![e(1, 0, 0), e(1, 0, 0)]),
            Err(GraphError::DuplicateEdge(1))
        );
        assert_eq!(
            StableGraph::new(vec![v(0, 1), v(1, 1)], vec![]),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(StableGraph::theta().spanning_tree(), vec![1]);
        assert_eq!(StableGraph::banana(4).spanning_tree(), vec![1]);
        let loops = StableGraph::new(vec![v(0, 0)], vec![e(1, 0, 0), e(2, 0, 0)]).unwrap();
        assert!(loops.spanning_tree().is_empty());
    }

    #[test]
    fn theta_circuits() {
        let g = StableGraph::theta();
        let c = g.fundamental_circuits();
        assert_eq!(c.len(), 2);
        use Direction::*;
        // e2 (1 -> 0) forward then e1 (0 -> 1) forward
        assert_eq!(
            c[0].steps,
            vec![Traversal { edge: 1, direction: Forward }, Traversal { edge: 0, direction: Forward }]
        );
        // e3 (0 -> 1) forward then e1 backwards
        assert_eq!(
            c[1].steps,
            vec![Traversal { edge: 2, direction: Forward }, Traversal { edge: 0, direction: Reverse }]
        );
        for k in c {
            assert!(k.is_closed_in(g.multigraph()));
        }
    }

    #[test]
    fn tree_and_loop_circuits() {
        // path 0 - 1 - 2 with genus making the ends stable
        let path = StableGraph::new(vec![v(0, 1), v(1, 1), v(2, 1)], vec![e(1, 0, 1), e(2, 1, 2)]).unwrap();
        assert!(path.fundamental_circuits().is_empty());
        assert_eq!(path.betti_number(), 0);

        let g = StableGraph::new(vec![v(0, 1)], vec![e(7, 0, 0)]).unwrap();
        assert_eq!(g.fundamental_circuits().len(), 1);
        assert_eq!(g.fundamental_circuits()[0].len(), 1);
        assert_eq!(g.total_genus(), 2);
    }

    #[test]
    fn deeper_tree_paths_close() {
        // square with a diagonal and a loop
        let g = StableGraph::new(
            vec![v(3, 0), v(1, 0), v(2, 0), v(0, 1)],
            vec![e(1, 0, 1), e(2, 1, 2), e(3, 2, 3), e(4, 3, 0), e(5, 1, 3), e(6, 2, 2)],
        )
        .unwrap();
        assert_eq!(g.fundamental_circuits().len(), g.betti_number());
        assert_eq!(g.tree_positions().len(), g.vertex_count() - 1);
        for k in g.fundamental_circuits() {
            assert!(k.is_closed_in(g.multigraph()), "{k:?}");
        }
    }

    #[test]
    fn bad_tree_rejected() {
        let g = StableGraph::theta();
        assert!(g.circuits_for_tree(&[]).is_err());
        assert!(g.circuits_for_tree(&[0, 1]).is_err());
        assert!(g.spanning_tree_with_order(&[0, 0, 1]).is_err());
        let tree = g.spanning_tree_with_order(&[2, 1, 0]).unwrap();
        assert_eq!(tree, vec![2]);
        assert_eq!(g.circuits_for_tree(&tree).unwrap().len(), 2);
    }
}
