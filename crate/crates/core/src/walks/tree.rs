use super::{Step, WalkError, WalkWitness};
use crate::hypergraph::{Edge, Hypergraph, Matching, Vertex};
use serde::{Deserialize, Serialize};

/// An open alternating walk from a root: traversals plus the final exit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingWalk {
    pub steps: Vec<Step>,
    pub end: Vertex,
}

impl AlternatingWalk {
    /// The closed walk, when the walk ends at its root after a complement
    /// edge.
    pub fn closed(&self) -> Option<WalkWitness> {
        let last_off = self.steps.last().is_some_and(|s| !s.in_matching);
        (last_off && self.end == self.steps[0].vertex).then(|| WalkWitness::new(self.steps.clone()))
    }
}

/// All root-to-leaf walks of the alternate rooted tree, in depth-first
/// order. `truncated` is set when the node budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub walks: Vec<AlternatingWalk>,
    pub truncated: bool,
}

impl RootedTree {
    /// Every root-returning prefix of every walk, as closed walks, without
    /// duplicates.
    pub fn closed_walks(&self) -> Vec<WalkWitness> {
        let mut out: Vec<WalkWitness> = Vec::new();
        for w in &self.walks {
            let root = w.steps[0].vertex;
            for k in (2..=w.steps.len()).step_by(2) {
                let end = w.steps.get(k).map_or(w.end, |s| s.vertex);
                if end == root {
                    let c = WalkWitness::new(w.steps[..k].to_vec());
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }
}

/// Matching edge through each vertex and complement edges incident to it.
pub(super) struct Adjacency<'a> {
    pub(super) matched: Vec<Option<&'a Edge>>,
    pub(super) complement: Vec<&'a Edge>,
    pub(super) incident: Vec<Vec<usize>>,
}

impl<'a> Adjacency<'a> {
    pub(super) fn new(h: &'a Hypergraph, m: &'a Matching) -> Self {
        let size = h.n() as usize + 1;
        let mut matched = vec![None; size];
        for e in m.edges() {
            for v in e.iter() {
                matched[v as usize] = Some(e);
            }
        }
        let complement: Vec<&Edge> = h.edges().iter().filter(|e| !m.contains(e)).collect();
        let mut incident = vec![Vec::new(); size];
        for (i, e) in complement.iter().enumerate() {
            for v in e.iter() {
                incident[v as usize].push(i);
            }
        }
        Adjacency {
            matched,
            complement,
            incident,
        }
    }
}

/// The rooted-tree construction: complement edges are not repeated along a
/// walk, matching edges may be, and a vertex is expanded only while it has
/// appeared fewer than `2(deg - 1)` times, counting every vertex of every
/// traversed edge.
struct TreeBuilder<'a> {
    adj: Adjacency<'a>,
    cap: Vec<usize>,
    count: Vec<usize>,
    used: Vec<bool>,
    steps: Vec<Step>,
    walks: Vec<AlternatingWalk>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl TreeBuilder<'_> {
    fn tick(&mut self) -> bool {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return false;
        }
        self.nodes += 1;
        true
    }

    fn may_expand(&self, v: Vertex) -> bool {
        self.count[v as usize] < self.cap[v as usize]
    }

    fn leaf(&mut self, end: Vertex) {
        self.walks.push(AlternatingWalk {
            steps: self.steps.clone(),
            end,
        });
    }

    fn enter(&mut self, v: Vertex, e: &Edge, in_matching: bool) {
        self.steps.push(Step {
            vertex: v,
            edge: e.clone(),
            in_matching,
        });
        for u in e.iter() {
            self.count[u as usize] += 1;
        }
    }

    fn leave(&mut self, e: &Edge) {
        for u in e.iter() {
            self.count[u as usize] -= 1;
        }
        self.steps.pop();
    }

    fn matching_step(&mut self, v: Vertex) {
        let Some(e) = self.adj.matched[v as usize] else {
            self.leaf(v);
            return;
        };
        for x in e.iter().filter(|&x| x != v) {
            if !self.tick() {
                return;
            }
            self.enter(v, e, true);
            if self.may_expand(x) {
                self.complement_step(x);
            } else {
                self.leaf(x);
            }
            self.leave(e);
        }
    }

    fn complement_step(&mut self, v: Vertex) {
        let options: Vec<usize> = self.adj.incident[v as usize]
            .iter()
            .copied()
            .filter(|&i| !self.used[i])
            .collect();
        if options.is_empty() {
            self.leaf(v);
            return;
        }
        for i in options {
            let f = self.adj.complement[i];
            for y in f.iter().filter(|&y| y != v) {
                if !self.tick() {
                    return;
                }
                self.enter(v, f, false);
                self.used[i] = true;
                if self.may_expand(y) {
                    self.matching_step(y);
                } else {
                    self.leaf(y);
                }
                self.used[i] = false;
                self.leave(f);
            }
        }
    }
}

pub(super) fn linear_scope(h: &Hypergraph, m: &Matching) -> Result<Hypergraph, WalkError> {
    let induced = h.induced_unchecked(&m.vertex_set());
    if induced.is_linear() {
        Ok(induced)
    } else {
        Err(WalkError::NotLinear)
    }
}

/// Enumerates the alternate rooted tree of `(H[V_N], N, root)`. A budget of
/// zero yields no walks.
pub fn alternate_rooted_tree(
    h: &Hypergraph,
    n_set: &Matching,
    root: Vertex,
    budget: u64,
) -> Result<RootedTree, WalkError> {
    if n_set.edge_containing(root).is_none() {
        return Err(WalkError::RootNotMatched(root));
    }
    let scope = linear_scope(h, n_set)?;
    let cap = scope
        .degrees()
        .into_iter()
        .map(|d| 2 * d.saturating_sub(1))
        .collect();
    let adj = Adjacency::new(&scope, n_set);
    let mut builder = TreeBuilder {
        count: vec![0; scope.n() as usize + 1],
        used: vec![false; adj.complement.len()],
        adj,
        cap,
        steps: Vec::new(),
        walks: Vec::new(),
        budget,
        nodes: 0,
        exhausted: false,
    };
    builder.matching_step(root);
    Ok(RootedTree {
        walks: builder.walks,
        truncated: builder.exhausted,
    })
}

