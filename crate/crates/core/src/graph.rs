//! Polarized metrized graphs: validation, genus, edge types and the
//! pointed-sum decomposition.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub q: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<S> {
    pub id: String,
    /// Vertex indices; equal for a loop.
    pub ends: (usize, usize),
    pub length: S,
}

impl<S> Edge<S> {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    /// The endpoint opposite to `v` (the same vertex for loops).
    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }
}

/// Unvalidated input: ids are strings, `q` may be negative.
#[derive(Clone, Debug, PartialEq)]
pub struct RawGraph<S> {
    pub vertices: Vec<RawVertex>,
    pub edges: Vec<RawEdge<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawVertex {
    pub id: String,
    pub q: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawEdge<S> {
    pub id: String,
    pub ends: [String; 2],
    pub length: S,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("vertex `{0}` has negative q")]
    NegativeQ(String),
    #[error("edge `{0}` has non-positive length")]
    NonPositiveLength(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("canonical divisor has negative coefficient at vertex `{0}`")]
    CanonicalNotEffective(String),
}

/// Every violation found while validating a [`RawGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid graph: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for ValidationError {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("offset outside edge `{0}`")]
    OffsetOutOfRange(String),
}

/// A validated polarized metrized graph.
///
/// Connected, `q >= 0`, positive lengths and an effective canonical divisor.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizedGraph<S> {
    vertices: Vec<Vertex>,
    edges: Vec<Edge<S>>,
}

/// A point of the graph: a vertex, or a position on an edge measured from
/// `ends.0`.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphPoint<S> {
    Vertex(usize),
    OnEdge { edge: usize, offset: S },
}

/// Finite formal sum of points.
#[derive(Clone, Debug, PartialEq)]
pub struct Divisor<S> {
    pub terms: Vec<(GraphPoint<S>, S)>,
}

impl<S: Scalar> Divisor<S> {
    pub fn degree(&self) -> S {
        self.terms
            .iter()
            .fold(S::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn is_effective(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }
}

pub fn validate<S: Scalar>(raw: &RawGraph<S>) -> Result<PolarizedGraph<S>, ValidationError> {
    let mut violations = Vec::new();
    if raw.vertices.is_empty() {
        violations.push(Violation::Empty);
    }
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if index.insert(v.id.as_str(), i).is_some() {
            violations.push(Violation::DuplicateVertex(v.id.clone()));
        }
        if v.q < 0 {
            violations.push(Violation::NegativeQ(v.id.clone()));
        }
    }
    let mut edge_ids: BTreeMap<&str, ()> = BTreeMap::new();
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        if edge_ids.insert(e.id.as_str(), ()).is_some() {
            violations.push(Violation::DuplicateEdge(e.id.clone()));
        }
        if !e.length.is_positive() {
            violations.push(Violation::NonPositiveLength(e.id.clone()));
        }
        let mut ends = [0usize; 2];
        let mut ok = true;
        for (k, name) in e.ends.iter().enumerate() {
            match index.get(name.as_str()) {
                Some(&i) => ends[k] = i,
                None => {
                    ok = false;
                    violations.push(Violation::UnknownVertex {
                        edge: e.id.clone(),
                        vertex: name.clone(),
                    });
                }
            }
        }
        if ok {
            edges.push(Edge {
                id: e.id.clone(),
                ends: (ends[0], ends[1]),
                length: e.length.clone(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(ValidationError { violations });
    }
    let graph = PolarizedGraph {
        vertices: raw
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id.clone(),
                q: v.q as u32,
            })
            .collect(),
        edges,
    };
    if graph.component_labels(&|_| true).1 != 1 {
        violations.push(Violation::NotConnected);
    }
    for (i, v) in graph.vertices.iter().enumerate() {
        if graph.canonical_order(i) < 0 {
            violations.push(Violation::CanonicalNotEffective(v.id.clone()));
        }
    }
    if violations.is_empty() {
        Ok(graph)
    } else {
        Err(ValidationError { violations })
    }
}

/// Fluent constructor used mostly by tests and generators.
#[derive(Clone, Debug)]
pub struct GraphBuilder<S> {
    raw: RawGraph<S>,
}

impl<S: Scalar> Default for GraphBuilder<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> GraphBuilder<S> {
    pub fn new() -> Self {
        GraphBuilder {
            raw: RawGraph {
                vertices: Vec::new(),
                edges: Vec::new(),
            },
        }
    }

    pub fn vertex(mut self, id: &str, q: i64) -> Self {
        self.raw.vertices.push(RawVertex {
            id: id.to_string(),
            q,
        });
        self
    }

    pub fn edge(mut self, id: &str, a: &str, b: &str, length: S) -> Self {
        self.raw.edges.push(RawEdge {
            id: id.to_string(),
            ends: [a.to_string(), b.to_string()],
            length,
        });
        self
    }

    pub fn raw(self) -> RawGraph<S> {
        self.raw
    }

    pub fn build(self) -> Result<PolarizedGraph<S>, ValidationError> {
        validate(&self.raw)
    }
}

/// One piece of the pointed-sum decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedComponent<S> {
    /// Component with each vertex's `q` replaced by the genus of the part of
    /// the graph hanging off it.
    pub graph: PolarizedGraph<S>,
    /// Indices (in the original graph) of the component's edges.
    pub edge_indices: Vec<usize>,
    /// `q` of each component vertex in the original graph.
    pub original_q: Vec<u32>,
    pub is_bridge: bool,
}

impl<S: Scalar> PolarizedGraph<S> {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, GraphError> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Number of edge ends at `v`; a loop counts twice.
    pub fn valence(&self, v: usize) -> u64 {
        self.edges
            .iter()
            .map(|e| (e.ends.0 == v) as u64 + (e.ends.1 == v) as u64)
            .sum()
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn betti(&self) -> u64 {
        (self.edges.len() + 1 - self.vertices.len()) as u64
    }

    /// `sum q + betti`.
    pub fn genus(&self) -> u64 {
        self.vertices.iter().map(|v| v.q as u64).sum::<u64>() + self.betti()
    }

    pub fn total_length(&self) -> S {
        self.edges
            .iter()
            .fold(S::zero(), |acc, e| acc + e.length.clone())
    }

    /// Coefficient `v(x) + 2 q(x) - 2` of the canonical divisor.
    pub fn canonical_order(&self, v: usize) -> i64 {
        self.valence(v) as i64 + 2 * self.vertices[v].q as i64 - 2
    }

    pub fn canonical_divisor(&self) -> Divisor<S> {
        Divisor {
            terms: (0..self.vertices.len())
                .filter(|&v| self.canonical_order(v) != 0)
                .map(|v| (GraphPoint::Vertex(v), S::from_i64(self.canonical_order(v))))
                .collect(),
        }
    }

    /// Check a point refers to an existing vertex or lies on an edge.
    pub fn check_point(&self, p: &GraphPoint<S>) -> Result<(), GraphError> {
        match p {
            GraphPoint::Vertex(v) if *v < self.vertices.len() => Ok(()),
            GraphPoint::Vertex(v) => Err(GraphError::UnknownVertex(v.to_string())),
            GraphPoint::OnEdge { edge, offset } => {
                let e = self.edges.get(*edge).ok_or(GraphError::UnknownEdge(*edge))?;
                if offset.is_negative() || (offset.clone() - e.length.clone()).is_positive() {
                    Err(GraphError::OffsetOutOfRange(e.id.clone()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Connected components over the edges accepted by `keep`.
    /// Returns per-vertex labels and the number of components.
    fn component_labels(&self, keep: &dyn Fn(usize) -> bool) -> (Vec<usize>, usize) {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) {
                adj[e.ends.0].push(e.ends.1);
                adj[e.ends.1].push(e.ends.0);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = count;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// `true` for every edge whose removal disconnects the graph.
    pub fn bridges(&self) -> Vec<bool> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.ends.0].push((e.ends.1, i));
                adj[e.ends.1].push((e.ends.0, i));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_bridge = vec![false; self.edges.len()];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Iterative DFS: (vertex, edge used to enter, next neighbor index).
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let (w, ei) = adj[v][*next];
                    *next += 1;
                    if ei == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, ei, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            is_bridge[via] = true;
                        }
                    }
                }
            }
        }
        is_bridge
    }

    /// Biconnected blocks as groups of edge indices. Loops form their own
    /// blocks.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                out.push(vec![i]);
            } else {
                adj[e.ends.0].push((e.ends.1, i));
                adj[e.ends.1].push((e.ends.0, i));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let (w, ei) = adj[v][*next];
                    *next += 1;
                    if ei == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(ei);
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, ei, 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(ei);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            let mut block = Vec::new();
                            while let Some(ei) = edge_stack.pop() {
                                block.push(ei);
                                if ei == via {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            out.push(block);
                        }
                    }
                }
            }
        }
        out.sort_by_key(|b| b[0]);
        out
    }

    /// Distinct vertices touched by a set of edges.
    pub fn vertices_of(&self, edges: &[usize]) -> Vec<usize> {
        let mut vs: Vec<usize> = Vec::new();
        for &e in edges {
            for v in [self.edges[e].ends.0, self.edges[e].ends.1] {
                if !vs.contains(&v) {
                    vs.push(v);
                }
            }
        }
        vs.sort_unstable();
        vs
    }

    /// Every edge lies on at most one cycle: each block is a bridge or a
    /// single cycle.
    pub fn is_elementary(&self) -> bool {
        self.blocks()
            .iter()
            .all(|b| b.len() == 1 || b.len() == self.vertices_of(b).len())
    }

    /// Genus of the part of the graph hanging off `v` once the edges in
    /// `removed` are deleted.
    pub fn fiber_genus(&self, removed: &[usize], v: usize) -> u64 {
        let keep = |i: usize| !removed.contains(&i);
        let (label, _) = self.component_labels(&keep);
        let in_set: Vec<bool> = label.iter().map(|&l| l == label[v]).collect();
        self.sub_genus(&in_set, &keep)
    }

    pub fn is_two_edge_connected(&self) -> bool {
        !self.bridges().iter().any(|&b| b)
    }

    /// Genus of the connected subgraph spanned by `vertex_set` and the
    /// edges accepted by `keep` lying inside it.
    fn sub_genus(&self, in_set: &[bool], keep: &dyn Fn(usize) -> bool) -> u64 {
        let vcount = in_set.iter().filter(|&&b| b).count() as u64;
        let qsum: u64 = (0..self.vertices.len())
            .filter(|&v| in_set[v])
            .map(|v| self.vertices[v].q as u64)
            .sum();
        let ecount = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| keep(*i) && in_set[e.ends.0])
            .count() as u64;
        qsum + ecount + 1 - vcount
    }

    /// Genus of the side of bridge `e` containing `ends.0`.
    fn bridge_side_genus(&self, e: usize) -> u64 {
        let keep = |i: usize| i != e;
        let (label, _) = self.component_labels(&keep);
        let side = label[self.edges[e].ends.0];
        let in_set: Vec<bool> = label.iter().map(|&l| l == side).collect();
        self.sub_genus(&in_set, &keep)
    }

    /// Type 0 for non-bridges; `min(h, g - h)` for a bridge separating
    /// genus `h` from genus `g - h`.
    pub fn edge_types(&self) -> Vec<u64> {
        let g = self.genus();
        self.bridges()
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                if b {
                    let h = self.bridge_side_genus(i);
                    h.min(g - h)
                } else {
                    0
                }
            })
            .collect()
    }

    /// Total length of edges of each type; only types that occur appear.
    pub fn type_lengths(&self) -> BTreeMap<u64, S> {
        let mut out: BTreeMap<u64, S> = BTreeMap::new();
        for (e, t) in self.edges.iter().zip(self.edge_types()) {
            let entry = out.entry(t).or_insert_with(S::zero);
            *entry = entry.clone() + e.length.clone();
        }
        out
    }

    /// Split into 2-edge-connected pieces and bridge segments, each
    /// polarized so that it has the same genus as the whole graph.
    /// Ordered by smallest original edge index.
    pub fn decompose_pointed_sum(&self) -> Vec<PointedComponent<S>> {
        let bridges = self.bridges();
        let non_bridge = |i: usize| !bridges[i];
        let (label, count) = self.component_labels(&non_bridge);
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); count];
        let mut pieces: Vec<(Vec<usize>, bool)> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if bridges[i] {
                pieces.push((vec![i], true));
            } else {
                groups[label[e.ends.0]].push(i);
            }
        }
        pieces.extend(groups.into_iter().filter(|g| !g.is_empty()).map(|g| (g, false)));
        pieces.sort_by_key(|(edges, _)| edges[0]);
        pieces
            .into_iter()
            .map(|(edges, is_bridge)| self.pointed_piece(&edges, is_bridge))
            .collect()
    }

    fn pointed_piece(&self, piece_edges: &[usize], is_bridge: bool) -> PointedComponent<S> {
        let mut in_piece = vec![false; self.edges.len()];
        for &e in piece_edges {
            in_piece[e] = true;
        }
        let verts = self.vertices_of(piece_edges);
        let keep = |i: usize| !in_piece[i];
        let (label, _) = self.component_labels(&keep);
        let fiber_genus = |v: usize| {
            let in_set: Vec<bool> = label.iter().map(|&l| l == label[v]).collect();
            self.sub_genus(&in_set, &keep)
        };
        let local = |v: usize| verts.iter().position(|&w| w == v).unwrap();
        let graph = PolarizedGraph {
            vertices: verts
                .iter()
                .map(|&v| Vertex {
                    id: self.vertices[v].id.clone(),
                    q: fiber_genus(v) as u32,
                })
                .collect(),
            edges: piece_edges
                .iter()
                .map(|&e| {
                    let edge = &self.edges[e];
                    Edge {
                        id: edge.id.clone(),
                        ends: (local(edge.ends.0), local(edge.ends.1)),
                        length: edge.length.clone(),
                    }
                })
                .collect(),
        };
        PointedComponent {
            graph,
            edge_indices: piece_edges.to_vec(),
            original_q: verts.iter().map(|&v| self.vertices[v].q).collect(),
            is_bridge,
        }
    }

    /// Same graph with the vertex `q` values replaced.
    pub fn with_q(&self, q: &[u32]) -> Result<Self, ValidationError> {
        let mut raw = self.to_raw();
        for (v, &qv) in raw.vertices.iter_mut().zip(q) {
            v.q = qv as i64;
        }
        validate(&raw)
    }

    /// Same graph with every length multiplied by `k > 0`.
    pub fn scaled(&self, k: &S) -> Self {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.length = e.length.clone() * k.clone();
        }
        out
    }

    pub fn to_raw(&self) -> RawGraph<S> {
        RawGraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| RawVertex {
                    id: v.id.clone(),
                    q: v.q as i64,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.id.clone(),
                    ends: [
                        self.vertices[e.ends.0].id.clone(),
                        self.vertices[e.ends.1].id.clone(),
                    ],
                    length: e.length.clone(),
                })
                .collect(),
        }
    }

    /// Convert lengths to another backend.
    pub fn map_lengths<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PolarizedGraph<T> {
        PolarizedGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    id: e.id.clone(),
                    ends: e.ends,
                    length: f(&e.length),
                })
                .collect(),
        }
    }

    /// Isometry of polarized graphs: a vertex bijection preserving `q` and,
    /// for every vertex pair, the multiset of connecting edge lengths.
    pub fn is_isometric(&self, other: &Self) -> bool {
        if self.vertices.len() != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let n = self.vertices.len();
        let sig = |g: &Self, v: usize| (g.vertices[v].q, g.valence(v));
        let pair_lengths = |g: &Self, a: usize, b: usize| -> Vec<S> {
            let mut ls: Vec<S> = g
                .edges
                .iter()
                .filter(|e| (e.ends == (a, b)) || (e.ends == (b, a)))
                .map(|e| e.length.clone())
                .collect();
            ls.sort_by(|x, y| x.to_f64().total_cmp(&y.to_f64()));
            ls
        };
        let same = |x: &[S], y: &[S]| x.len() == y.len() && x.iter().zip(y).all(|(a, b)| a.approx_eq(b));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];

        fn search<S: Scalar>(
            v: usize,
            n: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            ok: &dyn Fn(usize, usize, &[usize]) -> bool,
        ) -> bool {
            if v == n {
                return true;
            }
            for w in 0..n {
                if !used[w] && ok(v, w, map) {
                    map[v] = w;
                    used[w] = true;
                    if search::<S>(v + 1, n, map, used, ok) {
                        return true;
                    }
                    map[v] = usize::MAX;
                    used[w] = false;
                }
            }
            false
        }

        let ok = |v: usize, w: usize, map: &[usize]| -> bool {
            if sig(self, v) != sig(other, w) {
                return false;
            }
            if !same(&pair_lengths(self, v, v), &pair_lengths(other, w, w)) {
                return false;
            }
            (0..v).all(|u| same(&pair_lengths(self, u, v), &pair_lengths(other, map[u], w)))
        };
        search::<S>(0, n, &mut map, &mut used, &ok)
    }
}

/// Glue decomposition pieces back together using the recorded original `q`.
pub fn reassemble<S: Scalar>(pieces: &[PointedComponent<S>]) -> Result<PolarizedGraph<S>, ValidationError> {
    let mut raw = RawGraph {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    let mut edges: Vec<(usize, RawEdge<S>)> = Vec::new();
    for piece in pieces {
        let g = &piece.graph;
        for (v, &q) in g.vertices.iter().zip(&piece.original_q) {
            if !raw.vertices.iter().any(|w: &RawVertex| w.id == v.id) {
                raw.vertices.push(RawVertex {
                    id: v.id.clone(),
                    q: q as i64,
                });
            }
        }
        for (e, &orig) in g.edges.iter().zip(&piece.edge_indices) {
            edges.push((
                orig,
                RawEdge {
                    id: e.id.clone(),
                    ends: [g.vertices[e.ends.0].id.clone(), g.vertices[e.ends.1].id.clone()],
                    length: e.length.clone(),
                },
            ));
        }
    }
    edges.sort_by_key(|(i, _)| *i);
    raw.edges = edges.into_iter().map(|(_, e)| e).collect();
    validate(&raw)
}
