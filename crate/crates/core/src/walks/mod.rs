//! Alternating closed walks and degree-regular subgraphs as witnesses of
//! non-positivity in linear hypergraphs.
//!
//! A walk is a list of traversals. Traversal `i` enters its edge at
//! `steps[i].vertex` and leaves it at the entry vertex of traversal `i+1`;
//! the last traversal leaves at the first entry vertex, which closes the walk.
//! Traversals alternate between edges of the matching and other edges,
//! starting with a matching edge. The vertices of a traversal other than its
//! entry and exit are its interior.

mod regular;
mod strong;
mod tree;

pub use regular::{find_regular_witness, find_regular_witness_with, RegularLimits, RegularWitness};
pub(crate) use regular::combinations;
pub use strong::{
    find_strong_closed_walk, find_strong_closed_walk_with, positive_by_walks,
    positive_by_walks_with, WalkSearch, WalkVerdict,
};
pub use tree::{alternate_rooted_tree, AlternatingWalk, RootedTree};

use crate::hypergraph::{Edge, Hypergraph, Matching, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("the hypergraph induced by the matching is not linear")]
    NotLinear,
    #[error("root {0} is not covered by the matching")]
    RootNotMatched(Vertex),
    #[error("search stopped after exploring {explored} nodes")]
    SearchBudgetExceeded { explored: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub vertex: Vertex,
    pub edge: Edge,
    pub in_matching: bool,
}

/// Why a walk fails to be a strong alternate closed walk.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkDefect {
    #[error("the walk has no steps")]
    Empty,
    #[error("a closed alternating walk has an even, positive number of steps; got {0}")]
    OddLength(usize),
    #[error("step {0} uses {1}, which is not an edge inside the matched vertex set")]
    ForeignEdge(usize, Edge),
    #[error("step {0} is flagged in_matching={1}, which disagrees with the matching")]
    WrongFlag(usize, bool),
    #[error("step {0} does not alternate with its predecessor")]
    NotAlternating(usize),
    #[error("step {0} must enter and leave {1} at distinct vertices of the edge")]
    BadPorts(usize, Edge),
    #[error("vertex {vertex} is interior to matching edges {on_matching} times and to other edges {off_matching} times")]
    Unbalanced {
        vertex: Vertex,
        on_matching: usize,
        off_matching: usize,
    },
}

/// A closed alternating walk, claimed to be strong.
///
/// JSON form: `{"walk": [{"vertex": v, "edge": [..], "in_matching": b}, ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WalkWitness {
    #[serde(rename = "walk")]
    steps: Vec<Step>,
}

impl WalkWitness {
    pub fn new(steps: Vec<Step>) -> Self {
        WalkWitness { steps }
    }

    /// Builds a walk from edges written in traversal order: each list starts
    /// at the entry vertex and ends at the exit vertex. Membership flags are
    /// taken from `m`.
    pub fn from_traversals<I, E>(m: &Matching, traversals: I) -> Result<Self, WalkDefect>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        let steps: Vec<Step> = traversals
            .into_iter()
            .map(|t| {
                let t: Vec<Vertex> = t.into();
                let vertex = *t.first().ok_or(WalkDefect::Empty)?;
                let edge = Edge::new(t).map_err(|_| WalkDefect::Empty)?;
                let in_matching = m.contains(&edge);
                Ok(Step {
                    vertex,
                    edge,
                    in_matching,
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(WalkWitness { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Exit vertex of step `i`.
    pub fn exit(&self, i: usize) -> Vertex {
        self.steps[(i + 1) % self.steps.len()].vertex
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.steps.iter().map(|s| &s.edge)
    }

    /// Interior occurrences per vertex as `(on matching edges, on other edges)`.
    pub fn interior_counts(&self) -> BTreeMap<Vertex, (usize, usize)> {
        let mut counts: BTreeMap<Vertex, (usize, usize)> = BTreeMap::new();
        for (i, s) in self.steps.iter().enumerate() {
            let exit = self.exit(i);
            for v in s.edge.iter().filter(|&v| v != s.vertex && v != exit) {
                let c = counts.entry(v).or_default();
                if s.in_matching {
                    c.0 += 1;
                } else {
                    c.1 += 1;
                }
            }
        }
        counts
    }

    /// Closed and alternating with respect to `m`, using only edges of
    /// `H[V_m]`, ports valid, and the flags consistent with `m`.
    pub fn check_alternating(&self, h: &Hypergraph, m: &Matching) -> Result<(), WalkDefect> {
        if self.steps.is_empty() {
            return Err(WalkDefect::Empty);
        }
        if self.steps.len() % 2 == 1 {
            return Err(WalkDefect::OddLength(self.steps.len()));
        }
        let scope = m.vertex_set();
        for (i, s) in self.steps.iter().enumerate() {
            if !h.contains_edge(&s.edge) || !s.edge.iter().all(|v| scope.contains(&v)) {
                return Err(WalkDefect::ForeignEdge(i, s.edge.clone()));
            }
            if s.in_matching != m.contains(&s.edge) {
                return Err(WalkDefect::WrongFlag(i, s.in_matching));
            }
            if s.in_matching != (i % 2 == 0) {
                return Err(WalkDefect::NotAlternating(i));
            }
            let exit = self.exit(i);
            if exit == s.vertex || !s.edge.contains(s.vertex) || !s.edge.contains(exit) {
                return Err(WalkDefect::BadPorts(i, s.edge.clone()));
            }
        }
        Ok(())
    }

    /// Full replay: alternating and closed, and every vertex is interior to
    /// matching edges exactly as often as to other edges.
    pub fn check_strong(&self, h: &Hypergraph, m: &Matching) -> Result<(), WalkDefect> {
        self.check_alternating(h, m)?;
        for (vertex, (on_matching, off_matching)) in self.interior_counts() {
            if on_matching != off_matching {
                return Err(WalkDefect::Unbalanced {
                    vertex,
                    on_matching,
                    off_matching,
                });
            }
        }
        Ok(())
    }

    pub fn is_strong(&self, h: &Hypergraph, m: &Matching) -> bool {
        self.check_strong(h, m).is_ok()
    }

    /// Canonical cyclic edge sequence: the least rotation of the sequence or
    /// of its reverse that starts on a matching edge. Two walks over the same
    /// cyclic edge order compare equal under this key regardless of root
    /// and direction.
    pub fn cyclic_edge_key(&self) -> Vec<Edge> {
        let fwd: Vec<Edge> = self.steps.iter().map(|s| s.edge.clone()).collect();
        let mut rev = fwd.clone();
        rev.reverse();
        let n = fwd.len();
        let mut best: Option<Vec<Edge>> = None;
        for seq in [fwd, rev] {
            for start in 0..n {
                let rot: Vec<Edge> = (0..n).map(|k| seq[(start + k) % n].clone()).collect();
                let starts_on_matching = self
                    .steps
                    .iter()
                    .find(|s| s.edge == rot[0])
                    .is_some_and(|s| s.in_matching);
                if starts_on_matching && best.as_ref().map_or(true, |b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Edge multiset of the walk.
    pub fn edge_multiset(&self) -> BTreeMap<Edge, usize> {
        let mut out = BTreeMap::new();
        for e in self.edges() {
            *out.entry(e.clone()).or_insert(0) += 1;
        }
        out
    }
}

/// The search space for walks: `H[V_m]` with members that cannot take part
/// in a strong walk removed. A member owning a vertex that lies in no other
/// edge would leave that vertex unbalanced.
pub(crate) fn walk_core(h: &Hypergraph, m: &Matching) -> (Hypergraph, Matching) {
    let core = crate::oracle::peel_private_members(h, m);
    let scope: BTreeSet<Vertex> = core.vertex_set();
    (h.induced_unchecked(&scope), core)
}
