//! Search for strong alternate closed walks.
//!
//! A strong closed walk that traverses complement edge `f` exactly `d_f`
//! times and matching edge `e` exactly `c_e` times has, at every vertex `v`,
//! as many incidences on complement traversals as on matching traversals:
//! `Σ_{f ∋ v} d_f = c_{e(v)}`. The search enumerates such multiplicity
//! vectors with bounded entries, then realizes one as an actual walk:
//!
//! 1. a flow assigns interior vertices to traversals so that every vertex is
//!    interior equally often on both sides, which leaves the ports balanced;
//! 2. at every vertex the matching ports are paired with complement ports,
//!    which joins the traversals into alternating cycles;
//! 3. two cycles passing through a common port vertex are merged by
//!    exchanging partners there, until one cycle is left.
//!
//! Every returned walk is replayed before it is handed out.

use super::tree::linear_scope;
use super::{walk_core, Step, WalkError, WalkWitness};
use crate::hypergraph::{Edge, Hypergraph, Matching, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Limits for the strong-walk search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkSearch {
    /// Multiplicity assignments explored before giving up with an error.
    pub node_budget: u64,
    /// Largest number of times one complement edge may be traversed.
    pub max_multiplicity: u32,
}

impl Default for WalkSearch {
    fn default() -> Self {
        WalkSearch {
            node_budget: 20_000_000,
            max_multiplicity: 6,
        }
    }
}

pub fn find_strong_closed_walk(h: &Hypergraph, m: &Matching) -> Result<Option<WalkWitness>, WalkError> {
    find_strong_closed_walk_with(h, m, WalkSearch::default())
}

/// Searches `H[V_m]` for a strong alternate closed walk with respect to `m`.
/// Multiplicity vectors are tried with increasing maximum entry, and within
/// one maximum in lexicographic order of the complement edges.
pub fn find_strong_closed_walk_with(
    h: &Hypergraph,
    m: &Matching,
    rules: WalkSearch,
) -> Result<Option<WalkWitness>, WalkError> {
    linear_scope(h, m)?;
    let (core_h, core_m) = walk_core(h, m);
    if core_m.is_empty() {
        return Ok(None);
    }
    let sys = System::new(&core_h, &core_m);
    let mut nodes = 0;
    for bound in 1..=rules.max_multiplicity {
        let mut found = None;
        let mut dfs = Enumerator {
            sys: &sys,
            bound,
            budget: rules.node_budget,
            nodes: &mut nodes,
            d: vec![0; sys.complement.len()],
            sum: vec![0; sys.vertices.len()],
            open: sys.incident.iter().map(|l| l.len() as u32).collect(),
        };
        let complete = dfs.run(0, &mut |d, sum| {
            found = sys.realize(d, sum);
            found.is_some()
        });
        if let Some(w) = found {
            debug_assert_eq!(w.check_strong(&core_h, &core_m), Ok(()));
            return Ok(Some(w));
        }
        if !complete {
            return Err(WalkError::SearchBudgetExceeded { explored: nodes });
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkVerdict {
    pub positive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WalkWitness>,
}

/// Positivity decided combinatorially: positive iff no strong alternate
/// closed walk exists.
pub fn positive_by_walks(h: &Hypergraph, m: &Matching) -> Result<WalkVerdict, WalkError> {
    positive_by_walks_with(h, m, WalkSearch::default())
}

pub fn positive_by_walks_with(
    h: &Hypergraph,
    m: &Matching,
    rules: WalkSearch,
) -> Result<WalkVerdict, WalkError> {
    let witness = find_strong_closed_walk_with(h, m, rules)?;
    Ok(WalkVerdict {
        positive: witness.is_none(),
        witness,
    })
}

/// Index-based view of `H[V_m]`: vertices, matching edges and complement
/// edges as lists of vertex slots.
struct System<'a> {
    vertices: Vec<Vertex>,
    matching: Vec<&'a Edge>,
    complement: Vec<&'a Edge>,
    /// matching edge index per vertex slot
    owner: Vec<usize>,
    /// vertex slots per matching edge
    matching_slots: Vec<Vec<usize>>,
    /// vertex slots per complement edge
    complement_slots: Vec<Vec<usize>>,
    /// complement edges per vertex slot
    incident: Vec<Vec<usize>>,
    rank: usize,
}

impl<'a> System<'a> {
    fn new(h: &'a Hypergraph, m: &'a Matching) -> Self {
        let vertices: Vec<Vertex> = m.vertex_set().into_iter().collect();
        let mut slot_of = vec![usize::MAX; h.n() as usize + 1];
        for (i, &v) in vertices.iter().enumerate() {
            slot_of[v as usize] = i;
        }
        let slots = |e: &Edge| e.iter().map(|v| slot_of[v as usize]).collect::<Vec<_>>();
        let matching: Vec<&Edge> = m.edges().iter().collect();
        let complement: Vec<&Edge> = h.edges().iter().filter(|e| !m.contains(e)).collect();
        let mut owner = vec![0; vertices.len()];
        let matching_slots: Vec<Vec<usize>> = matching.iter().map(|e| slots(e)).collect();
        for (i, s) in matching_slots.iter().enumerate() {
            for &v in s {
                owner[v] = i;
            }
        }
        let complement_slots: Vec<Vec<usize>> = complement.iter().map(|e| slots(e)).collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, s) in complement_slots.iter().enumerate() {
            for &v in s {
                incident[v].push(i);
            }
        }
        System {
            vertices,
            matching,
            complement,
            owner,
            matching_slots,
            complement_slots,
            incident,
            rank: h.rank(),
        }
    }

    /// Realizes a balanced multiplicity vector as a strong closed walk, trying
    /// each connected piece of its support.
    fn realize(&self, d: &[u32], sum: &[u32]) -> Option<WalkWitness> {
        let c: Vec<u32> = self.matching_slots.iter().map(|s| sum[s[0]]).collect();
        let mut comp = UnionFind::new(self.vertices.len());
        for (f, s) in self.complement_slots.iter().enumerate() {
            if d[f] > 0 {
                s.windows(2).for_each(|w| comp.union(w[0], w[1]));
            }
        }
        for (e, s) in self.matching_slots.iter().enumerate() {
            if c[e] > 0 {
                s.windows(2).for_each(|w| comp.union(w[0], w[1]));
            }
        }
        let mut roots: Vec<usize> = (0..self.matching.len())
            .filter(|&e| c[e] > 0)
            .map(|e| comp.find(self.matching_slots[e][0]))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        for root in roots {
            let keep_f: Vec<u32> = (0..d.len())
                .map(|f| if comp.find(self.complement_slots[f][0]) == root { d[f] } else { 0 })
                .collect();
            let keep_e: Vec<u32> = (0..c.len())
                .map(|e| if comp.find(self.matching_slots[e][0]) == root { c[e] } else { 0 })
                .collect();
            if let Some(w) = self.realize_connected(&keep_f, &keep_e) {
                return Some(w);
            }
        }
        None
    }

    fn realize_connected(&self, d: &[u32], c: &[u32]) -> Option<WalkWitness> {
        let interior = self.rank.checked_sub(2)? as u32;
        let nv = self.vertices.len();
        let (nf, ne) = (d.len(), c.len());
        // flow network: source, complement edges, vertices, matching edges, sink
        let source = 0;
        let f_node = |f: usize| 1 + f;
        let v_node = |v: usize| 1 + nf + v;
        let e_node = |e: usize| 1 + nf + nv + e;
        let sink = 1 + nf + nv + ne;
        let mut net = FlowNet::new(sink + 1);
        let mut fv_arcs = Vec::new();
        let mut ve_arcs = vec![usize::MAX; nv];
        for f in 0..nf {
            if d[f] == 0 {
                continue;
            }
            net.add(source, f_node(f), interior * d[f]);
            for &v in &self.complement_slots[f] {
                fv_arcs.push((f, v, net.add(f_node(f), v_node(v), d[f])));
            }
        }
        for e in 0..ne {
            if c[e] == 0 {
                continue;
            }
            for &v in &self.matching_slots[e] {
                ve_arcs[v] = net.add(v_node(v), e_node(e), c[e]);
            }
            net.add(e_node(e), sink, interior * c[e]);
        }
        let need: u32 = interior * d.iter().sum::<u32>();
        if net.max_flow(source, sink) != need {
            return None;
        }

        // traversal instances with their two ports
        let mut instances: Vec<Instance> = Vec::new();
        for e in 0..ne {
            if c[e] == 0 {
                continue;
            }
            let counts: Vec<(usize, u32)> = self.matching_slots[e]
                .iter()
                .map(|&v| (v, net.flow(ve_arcs[v])))
                .collect();
            instances.extend(spread(&counts, c[e], &self.matching_slots[e], e, true));
        }
        for f in 0..nf {
            if d[f] == 0 {
                continue;
            }
            let counts: Vec<(usize, u32)> = fv_arcs
                .iter()
                .filter(|(g, _, _)| *g == f)
                .map(|&(_, v, arc)| (v, net.flow(arc)))
                .collect();
            instances.extend(spread(&counts, d[f], &self.complement_slots[f], f, false));
        }

        // pair matching ports with complement ports at every vertex
        let mut partner: Vec<[usize; 2]> = vec![[usize::MAX; 2]; instances.len()];
        let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for v in 0..nv {
            let on: Vec<usize> = (0..instances.len())
                .filter(|&i| instances[i].on_matching && instances[i].ports.contains(&v))
                .collect();
            let off: Vec<usize> = (0..instances.len())
                .filter(|&i| !instances[i].on_matching && instances[i].ports.contains(&v))
                .collect();
            if on.len() != off.len() {
                return None;
            }
            for (&a, &b) in on.iter().zip(&off) {
                partner[a][instances[a].port_index(v)] = b;
                partner[b][instances[b].port_index(v)] = a;
                links[v].push((a, b));
            }
        }

        // merge cycles through shared port vertices
        loop {
            let cycle = cycle_ids(&instances, &partner);
            let count = cycle.iter().max().map_or(0, |&x| x + 1);
            if count <= 1 {
                break;
            }
            let mut merged = false;
            'search: for v in 0..nv {
                for i in 0..links[v].len() {
                    for j in i + 1..links[v].len() {
                        let (a, b) = links[v][i];
                        let (a2, b2) = links[v][j];
                        if cycle[a] != cycle[a2] {
                            partner[a][instances[a].port_index(v)] = b2;
                            partner[b2][instances[b2].port_index(v)] = a;
                            partner[a2][instances[a2].port_index(v)] = b;
                            partner[b][instances[b].port_index(v)] = a2;
                            links[v][i] = (a, b2);
                            links[v][j] = (a2, b);
                            merged = true;
                            break 'search;
                        }
                    }
                }
            }
            if !merged {
                return None;
            }
        }

        // read the cycle off as a walk, starting at the first matching
        // instance and entering it at its lower port
        let start = 0;
        let mut steps = Vec::new();
        let mut at = start;
        let mut entry_port = 0;
        loop {
            let inst = &instances[at];
            let exit_port = 1 - entry_port;
            let edge = if inst.on_matching {
                self.matching[inst.edge]
            } else {
                self.complement[inst.edge]
            };
            steps.push(Step {
                vertex: self.vertices[inst.ports[entry_port]],
                edge: edge.clone(),
                in_matching: inst.on_matching,
            });
            let v = inst.ports[exit_port];
            let next = partner[at][exit_port];
            entry_port = instances[next].port_index(v);
            at = next;
            if at == start && entry_port == 0 {
                break;
            }
        }
        Some(WalkWitness::new(steps))
    }
}

/// One traversal of an edge; `ports` are vertex slots, lower first.
struct Instance {
    edge: usize,
    on_matching: bool,
    ports: [usize; 2],
}

impl Instance {
    fn port_index(&self, v: usize) -> usize {
        if self.ports[0] == v {
            0
        } else {
            debug_assert_eq!(self.ports[1], v);
            1
        }
    }
}

/// Splits `copies` traversals of an edge so that vertex `v` is interior to
/// exactly `count(v)` of them. Each count is at most `copies`, so dealing the
/// interior occurrences round-robin never gives one traversal the same
/// vertex twice.
fn spread(
    counts: &[(usize, u32)],
    copies: u32,
    slots: &[usize],
    edge: usize,
    on_matching: bool,
) -> Vec<Instance> {
    let mut interiors: Vec<Vec<usize>> = vec![Vec::new(); copies as usize];
    let deck = counts
        .iter()
        .flat_map(|&(v, k)| std::iter::repeat(v).take(k as usize));
    for (t, v) in deck.enumerate() {
        interiors[t % copies as usize].push(v);
    }
    interiors
        .into_iter()
        .map(|inner| {
            let ports: Vec<usize> = slots.iter().copied().filter(|v| !inner.contains(v)).collect();
            debug_assert_eq!(ports.len(), 2);
            Instance {
                edge,
                on_matching,
                ports: [ports[0], ports[1]],
            }
        })
        .collect()
}

fn cycle_ids(instances: &[Instance], partner: &[[usize; 2]]) -> Vec<usize> {
    let mut id = vec![usize::MAX; instances.len()];
    let mut next = 0;
    for s in 0..instances.len() {
        if id[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            if id[i] != usize::MAX {
                continue;
            }
            id[i] = next;
            stack.extend(partner[i].iter().copied().filter(|&j| id[j] == usize::MAX));
        }
        next += 1;
    }
    id
}

/// Depth-first enumeration of multiplicity vectors `d` with entries in
/// `0..=bound`, some entry equal to `bound`, such that every matching edge
/// sees the same incidence sum at each of its vertices.
struct Enumerator<'s, 'a> {
    sys: &'s System<'a>,
    bound: u32,
    budget: u64,
    nodes: &'s mut u64,
    d: Vec<u32>,
    sum: Vec<u32>,
    /// unassigned complement edges per vertex slot
    open: Vec<u32>,
}

impl Enumerator<'_, '_> {
    /// Returns false when the budget ran out.
    fn run(&mut self, k: usize, visit: &mut dyn FnMut(&[u32], &[u32]) -> bool) -> bool {
        self.go(k, visit).is_some()
    }

    /// `None` on budget exhaustion, `Some(true)` when the visitor stopped the
    /// search, `Some(false)` otherwise.
    fn go(&mut self, k: usize, visit: &mut dyn FnMut(&[u32], &[u32]) -> bool) -> Option<bool> {
        if k == self.d.len() {
            if self.d.iter().any(|&x| x == self.bound) {
                return Some(visit(&self.d, &self.sum));
            }
            return Some(false);
        }
        let slots = &self.sys.complement_slots[k];
        for val in 0..=self.bound {
            if *self.nodes >= self.budget {
                return None;
            }
            *self.nodes += 1;
            self.d[k] = val;
            for &v in slots {
                self.sum[v] += val;
                self.open[v] -= 1;
            }
            let ok = slots.iter().all(|&v| self.feasible(self.sys.owner[v]));
            let outcome = if ok { self.go(k + 1, visit) } else { Some(false) };
            for &v in slots {
                self.sum[v] -= val;
                self.open[v] += 1;
            }
            match outcome {
                Some(false) => {}
                other => {
                    self.d[k] = 0;
                    return other;
                }
            }
        }
        self.d[k] = 0;
        Some(false)
    }

    /// The vertices of matching edge `e` can still reach a common sum.
    fn feasible(&self, e: usize) -> bool {
        let slots = &self.sys.matching_slots[e];
        let lo = slots.iter().map(|&v| self.sum[v]).max().unwrap_or(0);
        let hi = slots
            .iter()
            .map(|&v| self.sum[v] + self.bound * self.open[v])
            .min()
            .unwrap_or(0);
        lo <= hi
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Integer max flow by shortest augmenting paths.
struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
    original: Vec<u32>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
        }
    }

    fn add(&mut self, a: usize, b: usize, cap: u32) -> usize {
        let id = self.to.len();
        self.head[a].push(id);
        self.to.push(b);
        self.cap.push(cap);
        self.original.push(cap);
        self.head[b].push(id + 1);
        self.to.push(a);
        self.cap.push(0);
        self.original.push(0);
        id
    }

    fn flow(&self, arc: usize) -> u32 {
        self.original[arc] - self.cap[arc]
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &a in &self.head[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        via[y] = a;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = u32::MAX;
            let mut y = t;
            while y != s {
                let a = via[y];
                push = push.min(self.cap[a]);
                y = self.to[a ^ 1];
            }
            let mut y = t;
            while y != s {
                let a = via[y];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                y = self.to[a ^ 1];
            }
            total += push;
        }
    }
}
