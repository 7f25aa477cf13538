use super::{Edge, Hypergraph, HypergraphError, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// All `r`-subsets of `1..=n`.
pub fn complete_uniform(n: Vertex, r: usize) -> Result<Hypergraph, HypergraphError> {
    if r == 0 || r > n as usize {
        return Err(HypergraphError::InvalidUniformity { n, r });
    }
    let mut edges = Vec::new();
    let mut current: Vec<Vertex> = (1..=r as Vertex).collect();
    loop {
        edges.push(Edge::from_sorted(current.clone()));
        // advance to the next combination in lexicographic order
        let mut i = r;
        while i > 0 && current[i - 1] == n - (r - i) as Vertex {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        current[i - 1] += 1;
        for j in i..r {
            current[j] = current[j - 1] + 1;
        }
    }
    Ok(Hypergraph::from_parts(n, r, edges))
}

/// The loose cycle with `m` edges of size `r` on `(r-1)m` vertices.
/// Edge `k` is `{k(r-1)+1, .., k(r-1)+r}` with the last vertex wrapping to 1.
pub fn loose_cycle(r: usize, m: usize) -> Result<Hypergraph, HypergraphError> {
    if r <= 2 || m <= 1 {
        return Err(HypergraphError::InvalidParameters(format!(
            "loose cycle needs r > 2 and m > 1, got r={r}, m={m}"
        )));
    }
    let n = ((r - 1) * m) as Vertex;
    let edges = (0..m).map(|k| {
        let start = (k * (r - 1)) as Vertex;
        (1..=r as Vertex)
            .map(|j| {
                let v = start + j;
                if v > n {
                    v - n
                } else {
                    v
                }
            })
            .collect::<Vec<_>>()
    });
    Hypergraph::new(n, edges)
}

/// The 3x3 grid on `[9]`: rows `{1,2,3},{4,5,6},{7,8,9}` and columns
/// `{1,4,7},{2,5,8},{3,6,9}`. Every vertex has degree 2.
pub fn grid_example() -> Hypergraph {
    Hypergraph::new(
        9,
        vec![
            vec![1, 2, 3],
            vec![4, 5, 6],
            vec![7, 8, 9],
            vec![1, 4, 7],
            vec![2, 5, 8],
            vec![3, 6, 9],
        ],
    )
    .expect("grid example is valid")
}

/// A pendant edge `{anchor} ∪ fresh` to be glued onto a host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantSpec {
    pub anchor: Vertex,
    pub fresh: Vec<Vertex>,
}

impl PendantSpec {
    pub fn new(anchor: Vertex, fresh: Vec<Vertex>) -> Self {
        PendantSpec { anchor, fresh }
    }
}

pub fn attach_pendants(
    h: &Hypergraph,
    specs: &[PendantSpec],
) -> Result<Hypergraph, HypergraphError> {
    if specs.is_empty() {
        return Ok(h.clone());
    }
    let r = h.rank();
    if r < 2 {
        return Err(HypergraphError::InvalidParameters(
            "pendants need a host of declared uniformity at least 2".into(),
        ));
    }
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut n = h.n();
    let mut edges: Vec<Vec<Vertex>> = h.edges().iter().map(|e| e.vertices().to_vec()).collect();
    for spec in specs {
        if spec.anchor == 0 || spec.anchor > h.n() {
            return Err(HypergraphError::AnchorNotInHost(spec.anchor));
        }
        if spec.fresh.len() != r - 1 {
            return Err(HypergraphError::InvalidParameters(format!(
                "pendant at {} needs {} fresh vertices, got {}",
                spec.anchor,
                r - 1,
                spec.fresh.len()
            )));
        }
        for &v in &spec.fresh {
            if v <= h.n() || !seen.insert(v) {
                return Err(HypergraphError::FreshVertexCollision(v));
            }
            n = n.max(v);
        }
        let mut e = spec.fresh.clone();
        e.push(spec.anchor);
        edges.push(e);
    }
    Hypergraph::new(n, edges)
}

/// Random linear `r`-uniform hypergraph: `attempts` uniformly drawn
/// `r`-subsets, each kept when it meets every kept edge in at most one vertex.
pub fn random_linear<R: Rng + ?Sized>(
    n: Vertex,
    r: usize,
    attempts: usize,
    rng: &mut R,
) -> Result<Hypergraph, HypergraphError> {
    if r < 2 || r > n as usize {
        return Err(HypergraphError::InvalidUniformity { n, r });
    }
    let pool: Vec<Vertex> = (1..=n).collect();
    let mut kept: Vec<Edge> = Vec::new();
    for _ in 0..attempts {
        let mut pick: Vec<Vertex> = pool.choose_multiple(rng, r).copied().collect();
        pick.sort_unstable();
        let e = Edge::from_sorted(pick);
        if kept.iter().all(|k| k.intersection_size(&e) <= 1) {
            kept.push(e);
        }
    }
    kept.sort();
    Ok(Hypergraph::from_parts(n, r, kept))
}

/// Random `r`-uniform good forest with `edge_count` edges. Each new edge
/// either starts a component or hangs off one existing vertex; labels are
/// shuffled afterwards.
pub fn random_good_forest<R: Rng + ?Sized>(
    edge_count: usize,
    r: usize,
    rng: &mut R,
) -> Result<Hypergraph, HypergraphError> {
    if r < 2 {
        return Err(HypergraphError::InvalidParameters(format!(
            "good forests need r >= 2, got {r}"
        )));
    }
    let mut raw: Vec<Vec<Vertex>> = Vec::new();
    let mut next: Vertex = 1;
    for k in 0..edge_count {
        let mut e = Vec::with_capacity(r);
        let fresh_count = if k == 0 || rng.gen_bool(0.1) {
            r
        } else {
            e.push(rng.gen_range(1..next));
            r - 1
        };
        for _ in 0..fresh_count {
            e.push(next);
            next += 1;
        }
        raw.push(e);
    }
    let n = (next - 1).max(1);
    let mut labels: Vec<Vertex> = (1..=n).collect();
    labels.shuffle(rng);
    let relabeled = raw
        .into_iter()
        .map(|e| e.into_iter().map(|v| labels[v as usize - 1]).collect::<Vec<_>>());
    if edge_count == 0 {
        return Hypergraph::edgeless(n, r);
    }
    Hypergraph::new(n, relabeled)
}
