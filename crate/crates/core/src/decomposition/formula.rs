use crate::hypergraph::{good_forest_order, Hypergraph, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// The family whose closed form produced a `pmd` value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyTag {
    /// `pmd = Δ`.
    GoodForest,
    /// `pmd` is 2 for an even and 3 for an odd number of edges.
    LooseCycle { edges: usize },
    /// `pmd = max(pmd(base), Δ)` after removing `stripped` pendant edges.
    Pendants { stripped: usize, base: Box<FamilyTag> },
}

/// `pmd(h)` by a closed form when `h` is a good forest, a loose cycle with
/// edges of size at least 3, or one of these with pendant edges added.
pub fn pmd_formula(h: &Hypergraph) -> Option<(usize, FamilyTag)> {
    if h.edge_count() <= 64 && good_forest_order(h).is_some() {
        return Some((h.max_degree(), FamilyTag::GoodForest));
    }
    if let Some(m) = loose_cycle_length(h) {
        return Some((if m % 2 == 0 { 2 } else { 3 }, FamilyTag::LooseCycle { edges: m }));
    }
    let deg = h.degrees();
    let r = h.rank();
    let (pendant, kept): (Vec<_>, Vec<_>) = h
        .edges()
        .iter()
        .cloned()
        .partition(|e| e.iter().filter(|&v| deg[v as usize] == 1).count() + 1 >= r);
    if pendant.is_empty() || kept.is_empty() {
        return None;
    }
    let base = Hypergraph::new(h.n(), kept.into_iter().map(|e| e.vertices().to_vec())).ok()?;
    let (p, tag) = pmd_formula(&base)?;
    Some((
        p.max(h.max_degree()),
        FamilyTag::Pendants {
            stripped: pendant.len(),
            base: Box::new(tag),
        },
    ))
}

/// The number of edges when `h` is a loose cycle `C_{(r-1)m}` with `r > 2`:
/// connected, every vertex of degree at most 2, and every edge holding
/// exactly two vertices of degree 2.
fn loose_cycle_length(h: &Hypergraph) -> Option<usize> {
    let m = h.edge_count();
    if h.rank() <= 2 || m < 2 {
        return None;
    }
    let deg = h.degrees();
    if deg.iter().any(|&d| d > 2) {
        return None;
    }
    if !h
        .edges()
        .iter()
        .all(|e| e.iter().filter(|&v| deg[v as usize] == 2).count() == 2)
    {
        return None;
    }
    // connectivity over shared vertices
    let mut reached: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let here: BTreeSet<Vertex> = h.edges()[i].iter().collect();
        for (j, f) in h.edges().iter().enumerate() {
            if !reached.contains(&j) && f.iter().any(|v| here.contains(&v)) {
                reached.insert(j);
                frontier.push(j);
            }
        }
    }
    (reached.len() == m).then_some(m)
}
