//! Uniform clutters on the vertex set `1..=n`.
//!
//! A [`Hypergraph`] is immutable once built. Edges are stored as strictly
//! increasing vertex lists and the edge list is kept in lexicographic order,
//! so two hypergraphs with the same edge set compare equal.

mod families;
mod forest;

pub use families::{
    attach_pendants, complete_uniform, grid_example, loose_cycle, random_good_forest,
    random_linear, PendantSpec,
};
pub use forest::{good_forest_order, is_good_forest_order};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("a hypergraph needs at least one vertex")]
    NoVertices,
    #[error("edge #{0} is empty")]
    EmptyEdge(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: Vertex },
    #[error("edge {0:?} repeats a vertex")]
    DuplicateVertexInEdge(Vec<Vertex>),
    #[error("edges of size {expected} and {found} are mixed; only uniform hypergraphs are supported")]
    NonUniform { expected: usize, found: usize },
    #[error("edge {inner} is contained in edge {outer}")]
    NotAClutter { inner: Edge, outer: Edge },
    #[error("uniformity {r} is invalid for {n} vertices")]
    InvalidUniformity { n: Vertex, r: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("pendant anchor {0} is not a vertex of the host")]
    AnchorNotInHost(Vertex),
    #[error("fresh vertex {0} collides with an existing or earlier fresh vertex")]
    FreshVertexCollision(Vertex),
    #[error("{0} is not an edge of the host hypergraph")]
    NotAnEdge(Edge),
    #[error("matching edges {0} and {1} intersect")]
    NotDisjoint(Edge, Edge),
}

/// A strictly increasing list of vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vec<Vertex>);

impl Edge {
    /// Sorts the input; rejects repeated vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, HypergraphError> {
        let original = vertices.clone();
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateVertexInEdge(original));
        }
        Ok(Edge(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Edge(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersection_size(&self, other: &Edge) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn is_disjoint(&self, other: &Edge) -> bool {
        self.intersection_size(other) == 0
    }

    pub fn is_subset_of(&self, other: &Edge) -> bool {
        self.intersection_size(other) == self.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An `r`-uniform clutter on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphDoc", into = "HypergraphDoc")]
pub struct Hypergraph {
    n: Vertex,
    rank: usize,
    edges: Vec<Edge>,
}

/// Interchange form: `{"n": .., "edges": [[..], ..]}`. The optional `r`
/// is only written for edgeless hypergraphs, where it cannot be derived.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct HypergraphDoc {
    n: Vertex,
    edges: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
}

impl TryFrom<HypergraphDoc> for Hypergraph {
    type Error = HypergraphError;

    fn try_from(doc: HypergraphDoc) -> Result<Self, Self::Error> {
        let h = Hypergraph::new(doc.n, doc.edges)?;
        match doc.r {
            Some(r) if h.edges.is_empty() => Hypergraph::edgeless(doc.n, r),
            Some(r) if r != h.rank => Err(HypergraphError::NonUniform {
                expected: r,
                found: h.rank,
            }),
            _ => Ok(h),
        }
    }
}

impl From<Hypergraph> for HypergraphDoc {
    fn from(h: Hypergraph) -> Self {
        let r = (h.edges.is_empty() && h.rank > 0).then_some(h.rank);
        HypergraphDoc {
            n: h.n,
            edges: h.edges.into_iter().map(|e| e.0).collect(),
            r,
        }
    }
}

pub(crate) fn check_clutter(edges: &[Edge]) -> Result<(), HypergraphError> {
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            if a.is_subset_of(b) {
                return Err(HypergraphError::NotAClutter {
                    inner: a.clone(),
                    outer: b.clone(),
                });
            }
            if b.is_subset_of(a) {
                return Err(HypergraphError::NotAClutter {
                    inner: b.clone(),
                    outer: a.clone(),
                });
            }
        }
    }
    Ok(())
}

impl Hypergraph {
    /// Validates and normalizes an edge list. Duplicate edges are merged.
    /// The uniformity of an edgeless result is 0 (undeclared); use
    /// [`Hypergraph::edgeless`] to declare it.
    pub fn new<I, E>(n: Vertex, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        if n == 0 {
            return Err(HypergraphError::NoVertices);
        }
        let mut out: Vec<Edge> = Vec::new();
        for (i, raw) in edges.into_iter().enumerate() {
            let raw: Vec<Vertex> = raw.into();
            if raw.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            if let Some(&vertex) = raw.iter().find(|&&v| v == 0 || v > n) {
                return Err(HypergraphError::VertexOutOfRange { vertex, n });
            }
            out.push(Edge::new(raw)?);
        }
        let rank = out.first().map_or(0, Edge::len);
        if let Some(e) = out.iter().find(|e| e.len() != rank) {
            return Err(HypergraphError::NonUniform {
                expected: rank,
                found: e.len(),
            });
        }
        out.sort();
        out.dedup();
        check_clutter(&out)?;
        Ok(Hypergraph {
            n,
            rank,
            edges: out,
        })
    }

    pub fn edgeless(n: Vertex, r: usize) -> Result<Self, HypergraphError> {
        if n == 0 {
            return Err(HypergraphError::NoVertices);
        }
        Ok(Hypergraph {
            n,
            rank: r,
            edges: Vec::new(),
        })
    }

    /// Builds from edges already known to be valid, sorted and of size `rank`.
    pub(crate) fn from_parts(n: Vertex, rank: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == rank));
        Hypergraph { n, rank, edges }
    }

    pub fn n(&self) -> Vertex {
        self.n
    }

    /// Common edge size; 0 for an edgeless hypergraph without a declared size.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn edge_index(&self, e: &Edge) -> Option<usize> {
        self.edges.binary_search(e).ok()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), HypergraphError> {
        if v == 0 || v > self.n {
            Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, HypergraphError> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(v)).count())
    }

    /// Degrees indexed by vertex; index 0 is unused.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n as usize + 1];
        for e in &self.edges {
            for v in e.iter() {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn is_linear(&self) -> bool {
        self.edges
            .iter()
            .enumerate()
            .all(|(i, a)| self.edges[i + 1..].iter().all(|b| a.intersection_size(b) <= 1))
    }

    /// `H[A]`: the edges contained in `a`, with labels preserved.
    pub fn induced_on(&self, a: &BTreeSet<Vertex>) -> Result<Hypergraph, HypergraphError> {
        if let Some(&v) = a.iter().find(|&&v| v == 0 || v > self.n) {
            return Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.induced_unchecked(a))
    }

    pub(crate) fn induced_unchecked(&self, a: &BTreeSet<Vertex>) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| a.contains(&v)))
            .cloned()
            .collect();
        Hypergraph::from_parts(self.n, self.rank, edges)
    }

    /// The same hypergraph with the listed edges removed.
    pub fn without_edges<'a, I>(&self, removed: I) -> Hypergraph
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let removed: BTreeSet<&Edge> = removed.into_iter().collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| !removed.contains(e))
            .cloned()
            .collect();
        Hypergraph::from_parts(self.n, self.rank, edges)
    }

    /// Vertices that lie in at least one edge.
    pub fn covered_vertices(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(Edge::iter).collect()
    }
}

/// Pairwise disjoint edges of a host hypergraph, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(host: &Hypergraph, mut edges: Vec<Edge>) -> Result<Self, HypergraphError> {
        edges.sort();
        edges.dedup();
        if let Some(e) = edges.iter().find(|e| !host.contains_edge(e)) {
            return Err(HypergraphError::NotAnEdge(e.clone()));
        }
        for (i, a) in edges.iter().enumerate() {
            if let Some(b) = edges[i + 1..].iter().find(|b| !a.is_disjoint(b)) {
                return Err(HypergraphError::NotDisjoint(a.clone(), b.clone()));
            }
        }
        Ok(Matching { edges })
    }

    pub fn from_lists<I, E>(host: &Hypergraph, lists: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        let edges = lists
            .into_iter()
            .map(|l| Edge::new(l.into()))
            .collect::<Result<Vec<_>, _>>()?;
        Matching::new(host, edges)
    }

    /// Caller guarantees the edges are pairwise disjoint.
    pub(crate) fn from_disjoint(mut edges: Vec<Edge>) -> Self {
        edges.sort();
        debug_assert!(edges
            .iter()
            .enumerate()
            .all(|(i, a)| edges[i + 1..].iter().all(|b| a.is_disjoint(b))));
        Matching { edges }
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// `V_M`, the union of the matching's edges.
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(Edge::iter).collect()
    }

    /// The member containing `v`, if any.
    pub fn edge_containing(&self, v: Vertex) -> Option<&Edge> {
        self.edges.iter().find(|e| e.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_validates_and_normalizes() {
        let h = Hypergraph::new(4, vec![vec![3, 2, 1], vec![2, 3, 4], vec![1, 2, 3]]).unwrap();
        assert_eq!(h.rank(), 3);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edges()[0].vertices(), &[1, 2, 3]);
    }

    #[test]
    fn make_rejects_bad_input() {
        assert_eq!(
            Hypergraph::new(3, vec![vec![1, 2], vec![1, 2, 3]]),
            Err(HypergraphError::NonUniform {
                expected: 2,
                found: 3
            })
        );
        assert!(matches!(
            Hypergraph::new(3, vec![vec![1, 4, 2]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(matches!(
            Hypergraph::new(3, vec![vec![0, 1, 2]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 0, .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, vec![vec![1, 1, 2]]),
            Err(HypergraphError::DuplicateVertexInEdge(_))
        ));
        assert_eq!(
            Hypergraph::new(3, Vec::<Vec<Vertex>>::from([vec![]])),
            Err(HypergraphError::EmptyEdge(0))
        );
        assert_eq!(
            Hypergraph::new(0, Vec::<Vec<Vertex>>::new()),
            Err(HypergraphError::NoVertices)
        );
    }

    #[test]
    fn clutter_check_detects_containment() {
        let a = Edge::new(vec![1, 2]).unwrap();
        let b = Edge::new(vec![1, 2, 3]).unwrap();
        assert!(matches!(
            check_clutter(&[b.clone(), a.clone()]),
            Err(HypergraphError::NotAClutter { inner, .. }) if inner == a
        ));
        assert!(check_clutter(&[a, Edge::new(vec![2, 3]).unwrap()]).is_ok());
    }

    #[test]
    fn grid_degrees_and_linearity() {
        let h = grid_example();
        assert_eq!(h.edge_count(), 6);
        assert!((1..=9).all(|v| h.degree(v).unwrap() == 2));
        assert_eq!(h.degree(5), Ok(2));
        assert!(h.is_linear());
        assert_eq!(
            h.degree(10),
            Err(HypergraphError::VertexOutOfRange { vertex: 10, n: 9 })
        );
    }

    #[test]
    fn degrees_and_max_degree() {
        let k5 = complete_uniform(5, 3).unwrap();
        assert!((1..=5).all(|v| k5.degree(v).unwrap() == 6));
        assert_eq!(Hypergraph::edgeless(4, 3).unwrap().max_degree(), 0);
        assert!(!complete_uniform(4, 3).unwrap().is_linear());
    }

    #[test]
    fn induced_subhypergraphs() {
        let k6 = complete_uniform(6, 3).unwrap();
        let sub = k6.induced_on(&BTreeSet::from([1, 4, 5])).unwrap();
        assert_eq!(sub.edges(), &[Edge::new(vec![1, 4, 5]).unwrap()]);

        let grid = grid_example();
        let sub = grid.induced_on(&(1..=6).collect()).unwrap();
        assert_eq!(
            sub.edges(),
            &[Edge::new(vec![1, 2, 3]).unwrap(), Edge::new(vec![4, 5, 6]).unwrap()]
        );
        assert_eq!(grid.induced_on(&BTreeSet::new()).unwrap().edge_count(), 0);
        assert!(grid.induced_on(&BTreeSet::from([11])).is_err());
    }

    #[test]
    fn matching_validation() {
        let h = complete_uniform(6, 3).unwrap();
        let m = Matching::from_lists(&h, vec![vec![2, 3, 6], vec![1, 4, 5]]).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.vertex_set().len(), 6);
        assert!(matches!(
            Matching::from_lists(&h, vec![vec![1, 2, 3], vec![3, 4, 5]]),
            Err(HypergraphError::NotDisjoint(..))
        ));
        let g = grid_example();
        assert!(matches!(
            Matching::from_lists(&g, vec![vec![1, 5, 9]]),
            Err(HypergraphError::NotAnEdge(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let h = loose_cycle(3, 3).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"n":6,"edges":[[1,2,3],[1,5,6],[3,4,5]]}"#);
        let back: Hypergraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);

        let e = Hypergraph::edgeless(5, 3).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<Hypergraph>(&s).unwrap(), e);

        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":3,"edges":[[1,2],[1,2,3]]}"#).is_err());
    }
}
