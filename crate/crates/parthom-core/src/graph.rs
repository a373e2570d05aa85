//! Finite directed graphs and their finite paths.
//!
//! An edge `e` points from its source vertex `s(e)` to its range vertex
//! `r(e)` and a path `e1.e2...en` is read left to right with the
//! composability rule `s(e_i) = r(e_{i+1})`.  Boundary paths are the
//! infinite paths together with the finite ones that end at a vertex
//! receiving no edge; they are never materialised, everything below
//! works with finite prefixes.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    name: String,
    range: VertexId,
    source: VertexId,
}

/// A finite directed graph with named vertices and edges.  Names are
/// `[A-Za-z0-9_]+` and pairwise distinct across both kinds, so a path
/// token is never ambiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    /// For each vertex `v`, the edges `e` with `r(e) = v` in declaration
    /// order: the ways a path arriving at `v` can continue.
    extensions: Vec<Vec<EdgeId>>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Graph {
    /// Builds a graph from vertex names and `(name, range, source)`
    /// edge triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut seen: BTreeMap<String, ()> = BTreeMap::new();
        let mut names = Vec::new();
        for v in vertices {
            let v = v.as_ref();
            if !valid_name(v) {
                return Err(Error::InvalidName(v.to_string()));
            }
            if seen.insert(v.to_string(), ()).is_some() {
                return Err(Error::DuplicateName(v.to_string()));
            }
            names.push(v.to_string());
        }
        let index = |n: &str| -> Option<VertexId> {
            names.iter().position(|m| m == n).map(|i| VertexId(i as u32))
        };
        let mut es = Vec::new();
        for (name, range, source) in edges {
            let (name, range, source) = (name.as_ref(), range.as_ref(), source.as_ref());
            if !valid_name(name) {
                return Err(Error::InvalidName(name.to_string()));
            }
            if seen.insert(name.to_string(), ()).is_some() {
                return Err(Error::DuplicateName(name.to_string()));
            }
            let range = index(range).ok_or_else(|| Error::UnknownVertex(range.to_string()))?;
            let source = index(source).ok_or_else(|| Error::UnknownVertex(source.to_string()))?;
            es.push(Edge { name: name.to_string(), range, source });
        }
        let mut extensions = alloc::vec![Vec::new(); names.len()];
        for (i, e) in es.iter().enumerate() {
            extensions[e.range.0 as usize].push(EdgeId(i as u32));
        }
        Ok(Graph { vertices: names, edges: es, extensions })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .map(|i| VertexId(i as u32))
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .map(|i| EdgeId(i as u32))
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0 as usize]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0 as usize].name
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0 as usize].range
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0 as usize].source
    }

    /// Edges that can continue a path arriving at `v`, i.e. all `e`
    /// with `r(e) = v`, in declaration order.
    pub fn extensions(&self, v: VertexId) -> &[EdgeId] {
        &self.extensions[v.0 as usize]
    }

    /// A vertex is terminal when it receives no edge; the boundary
    /// paths ending there are isolated points.
    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.extensions[v.0 as usize].is_empty()
    }

    pub fn empty_path(&self, v: VertexId) -> Path {
        Path { base: v, edges: Vec::new() }
    }

    /// Checks that a path's ids belong to this graph and compose.
    pub fn validate_path(&self, p: &Path) -> Result<()> {
        if p.base().0 as usize >= self.vertices.len() {
            return Err(Error::GraphMismatch);
        }
        let mut at = p.base();
        for &e in p.edges() {
            if e.0 as usize >= self.edges.len() {
                return Err(Error::GraphMismatch);
            }
            if self.range(e) != at {
                return Err(Error::NotComposable {
                    prev: self.vertex_name(at).to_string(),
                    next: self.edge_name(e).to_string(),
                });
            }
            at = self.source(e);
        }
        Ok(())
    }

    /// Builds and validates a path from a base vertex and edge list.
    pub fn path(&self, base: VertexId, edges: &[EdgeId]) -> Result<Path> {
        let mut at = base;
        for &e in edges {
            if self.range(e) != at {
                return Err(Error::NotComposable {
                    prev: self.vertex_name(at).to_string(),
                    next: self.edge_name(e).to_string(),
                });
            }
            at = self.source(e);
        }
        Ok(Path { base, edges: edges.to_vec() })
    }

    /// Parses a path token: a vertex name denotes the empty path at
    /// that vertex, otherwise edge names joined by `.`.
    pub fn parse_path(&self, token: &str) -> Result<Path> {
        if let Ok(v) = self.vertex(token) {
            return Ok(self.empty_path(v));
        }
        let mut edges = Vec::new();
        for part in token.split('.') {
            edges.push(self.edge(part)?);
        }
        let base = self.range(edges[0]);
        let mut prev = edges[0];
        for &e in &edges[1..] {
            if self.range(e) != self.source(prev) {
                return Err(Error::NotComposable {
                    prev: self.edge_name(prev).to_string(),
                    next: self.edge_name(e).to_string(),
                });
            }
            prev = e;
        }
        Ok(Path { base, edges })
    }

    pub fn path_string(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.base).to_string()
        } else {
            let parts: Vec<&str> = p.edges.iter().map(|&e| self.edge_name(e)).collect();
            parts.join(".")
        }
    }

    /// The path's end vertex `s(p)`: the source of its last edge, or
    /// the base vertex for an empty path.
    pub fn path_source(&self, p: &Path) -> VertexId {
        match p.edges.last() {
            Some(&e) => self.source(e),
            None => p.base,
        }
    }

    /// Extends `p` by one edge at its end.
    pub fn extend(&self, p: &Path, e: EdgeId) -> Result<Path> {
        if self.range(e) != self.path_source(p) {
            return Err(Error::NotComposable {
                prev: self.path_string(p),
                next: self.edge_name(e).to_string(),
            });
        }
        let mut edges = p.edges.clone();
        edges.push(e);
        Ok(Path { base: p.base, edges })
    }

    /// Concatenates `tail` (a continuation starting at `s(p)`) onto `p`.
    pub fn concat(&self, p: &Path, tail: &[EdgeId]) -> Result<Path> {
        let mut out = p.clone();
        for &e in tail {
            out = self.extend(&out, e)?;
        }
        Ok(out)
    }

    /// The cylinders of level `n`: every path of length `n` together
    /// with every shorter path ending at a terminal vertex.  Their
    /// cylinders partition the boundary-path space.  The list is sorted
    /// by base vertex and then lexicographically by edges.
    pub fn level_atoms(&self, n: usize) -> Vec<Path> {
        let mut out = Vec::new();
        for v in self.vertex_ids() {
            self.level_atoms_rec(self.empty_path(v), n, &mut out);
        }
        out
    }

    fn level_atoms_rec(&self, p: Path, n: usize, out: &mut Vec<Path>) {
        if p.len() == n {
            out.push(p);
            return;
        }
        let end = self.path_source(&p);
        if self.is_terminal(end) {
            out.push(p);
            return;
        }
        for &e in self.extensions(end) {
            let mut edges = p.edges.clone();
            edges.push(e);
            self.level_atoms_rec(Path { base: p.base, edges }, n, out);
        }
    }

    /// Every finite path of length at most `n`, in sorted order.
    pub fn paths_up_to(&self, n: usize) -> Vec<Path> {
        let mut out = Vec::new();
        for v in self.vertex_ids() {
            let mut stack = vec![self.empty_path(v)];
            while let Some(p) = stack.pop() {
                if p.len() < n {
                    let end = self.path_source(&p);
                    for &e in self.extensions(end) {
                        let mut edges = p.edges.clone();
                        edges.push(e);
                        stack.push(Path { base: p.base, edges });
                    }
                }
                out.push(p);
            }
        }
        out.sort();
        out
    }
}

/// A finite path, stored as a base vertex and edge ids.  The derived
/// order (base vertex, then edge sequence) is the order used for all
/// deterministic listings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    base: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether `self` is a prefix of `other` (equality included).
    /// `Z(p) ⊇ Z(q)` exactly when `p` is a prefix of `q`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.base == other.base
            && self.edges.len() <= other.edges.len()
            && self.edges == other.edges[..self.edges.len()]
    }

    pub fn comparable(&self, other: &Path) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Drops the last edge, returning the parent path and that edge.
    pub fn parent(&self) -> Option<(Path, EdgeId)> {
        let (&last, rest) = self.edges.split_last()?;
        Some((Path { base: self.base, edges: rest.to_vec() }, last))
    }

    /// The continuation `t` with `other = self.t`, if `self` is a
    /// prefix of `other`.
    pub fn tail_after<'a>(&self, other: &'a Path) -> Option<&'a [EdgeId]> {
        if self.is_prefix_of(other) {
            Some(&other.edges[self.edges.len()..])
        } else {
            None
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
