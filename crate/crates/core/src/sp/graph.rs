use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::SpTerm;
use crate::error::{Error, Result};
use crate::Vertex;

/// A finite simple graph with an optional ordered terminal pair.
///
/// Vertices are kept sorted; edges are stored as `(min, max)` pairs in
/// sorted order. Adjacency is indexed by position in the vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
    terminals: Option<(Vertex, Vertex)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Rejects self-loops, repeated edges, edges or terminals naming unknown
    /// vertices, and coinciding terminals.
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
        terminals: Option<(Vertex, Vertex)>,
    ) -> Result<Self> {
        let vertices: Vec<Vertex> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { v: u });
            }
            for w in [u, v] {
                if vertices.binary_search(&w).is_err() {
                    return Err(Error::UnknownVertex { v: w });
                }
            }
            let e = (u.min(v), u.max(v));
            if !edge_set.insert(e) {
                return Err(Error::MultiEdge { u: e.0, v: e.1 });
            }
        }
        if let Some((x, y)) = terminals {
            for w in [x, y] {
                if vertices.binary_search(&w).is_err() {
                    return Err(Error::UnknownVertex { v: w });
                }
            }
            if x == y {
                return Err(crate::error::precondition("terminals must be distinct"));
            }
        }
        let edges: Vec<_> = edge_set.into_iter().collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(u, v) in &edges {
            let (iu, iv) = (index(&vertices, u), index(&vertices, v));
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { vertices, edges, terminals, adj })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn terminals(&self) -> Option<(Vertex, Vertex)> {
        self.terminals
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_terminal(&self, v: Vertex) -> bool {
        self.terminals.is_some_and(|(x, y)| v == x || v == y)
    }

    pub(crate) fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub(crate) fn adj_indices(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.index_of(v).map_or(0, |i| self.adj[i].len())
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let slice: &[usize] = match self.index_of(v) {
            Some(i) => &self.adj[i],
            None => &[],
        };
        slice.iter().map(move |&j| self.vertices[j])
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            let mut comp: Vec<Vertex> = comp.into_iter().map(|i| self.vertices[i]).collect();
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff the graph is a single path: connected, acyclic and with at
    /// most two vertices of degree one.
    pub fn is_path(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() != n - 1 || self.components().len() != 1 {
            return false;
        }
        n == 1 || self.adj.iter().filter(|a| a.len() == 1).count() == 2
    }

    /// The induced subgraph on `keep`; terminals survive only if both are kept.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let vertices: Vec<Vertex> = self.vertices.iter().copied().filter(|v| keep.contains(v)).collect();
        let edges = self.edges.iter().copied().filter(|(u, v)| keep.contains(u) && keep.contains(v));
        let terminals = self.terminals.filter(|(x, y)| keep.contains(x) && keep.contains(y));
        Graph::new(vertices, edges, terminals).expect("induced subgraph of a valid graph")
    }

    /// The graph without the vertices in `drop`.
    pub fn without(&self, drop: &BTreeSet<Vertex>) -> Graph {
        let keep = self.vertices.iter().copied().filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }

    /// Relabels vertices to `0..n` in order, keeping terminals attached.
    fn compact(&self) -> Graph {
        let map = |v: Vertex| index(&self.vertices, v) as Vertex;
        Graph::new(
            0..self.vertices.len() as Vertex,
            self.edges.iter().map(|&(u, v)| (map(u), map(v))),
            self.terminals.map(|(x, y)| (map(x), map(y))),
        )
        .expect("relabelling preserves validity")
    }
}

fn index(vertices: &[Vertex], v: Vertex) -> usize {
    vertices.binary_search(&v).expect("vertex present")
}

/// Builds the graph of `term` with terminals `(0, 1)`; the remaining ids are
/// handed out in order of a left-to-right traversal.
pub fn realize(term: &SpTerm) -> Result<Graph> {
    term.validate()?;
    let mut next: Vertex = 2;
    let mut edges = Vec::with_capacity(term.leaf_count());
    build(term, 0, 1, &mut next, &mut edges);
    Graph::new(0..next, edges, Some((0, 1)))
}

fn build(term: &SpTerm, x: Vertex, y: Vertex, next: &mut Vertex, edges: &mut Vec<(Vertex, Vertex)>) {
    match term {
        SpTerm::Edge => edges.push((x, y)),
        SpTerm::Series(ch) => {
            let mut left = x;
            for (i, c) in ch.iter().enumerate() {
                let right = if i + 1 == ch.len() {
                    y
                } else {
                    *next += 1;
                    *next - 1
                };
                build(c, left, right, next, edges);
                left = right;
            }
        }
        SpTerm::Parallel(ch) => {
            for c in ch {
                build(c, x, y, next, edges);
            }
        }
    }
}

fn glue(g1: &Graph, g2: &Graph, parallel: bool) -> Result<Graph> {
    let (x1, y1) = g1.terminals.ok_or(Error::MissingTerminals)?;
    let (x2, y2) = g2.terminals.ok_or(Error::MissingTerminals)?;
    let offset = g1.vertices.last().map_or(0, |&v| v + 1);
    let mut map: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for &v in &g2.vertices {
        map.insert(v, v.checked_add(offset).ok_or(Error::Overflow)?);
    }
    map.insert(x2, if parallel { x1 } else { y1 });
    if parallel {
        map.insert(y2, y1);
    }
    let vertices = g1.vertices.iter().copied().chain(map.values().copied());
    let edges = g1.edges.iter().copied().chain(g2.edges.iter().map(|(u, v)| (map[u], map[v])));
    let terminals = if parallel { (x1, y1) } else { (x1, map[&y2]) };
    Ok(Graph::new(vertices, edges, Some(terminals))?.compact())
}

/// Identifies the right terminal of `g1` with the left terminal of `g2`.
/// The result is relabelled to `0..n`.
pub fn series_compose(g1: &Graph, g2: &Graph) -> Result<Graph> {
    glue(g1, g2, false)
}

/// Identifies both terminal pairs; fails if that would repeat an edge.
/// The result is relabelled to `0..n`.
pub fn parallel_compose(g1: &Graph, g2: &Graph) -> Result<Graph> {
    glue(g1, g2, true)
}
