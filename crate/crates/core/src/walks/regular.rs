use super::WalkError;
use crate::hypergraph::{Edge, Hypergraph, Matching};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Size limits for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularLimits {
    /// Largest matching searched.
    pub max_inner: usize,
    /// Largest set of candidate outer edges per inner subset.
    pub max_candidates: usize,
}

impl Default for RegularLimits {
    fn default() -> Self {
        RegularLimits {
            max_inner: 12,
            max_candidates: 20,
        }
    }
}

/// `N ⊆ M` and `N ⊆ N₁ ⊆ H[V_N]` such that within `N₁` every vertex of a
/// member `e` of `N` has the same degree `k_e ≥ 2`.
///
/// JSON form: `{"inner": [[..]], "outer": [[..]], "degrees": {"<index into inner>": k}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularWitness {
    pub inner: Vec<Edge>,
    pub outer: Vec<Edge>,
    pub degrees: BTreeMap<usize, usize>,
}

impl RegularWitness {
    /// Whether one `k` serves every member of `inner`.
    pub fn has_uniform_degree(&self) -> bool {
        let mut ks = self.degrees.values();
        match ks.next() {
            Some(first) => ks.all(|k| k == first),
            None => true,
        }
    }

    /// Recounts degrees from scratch.
    pub fn check(&self, h: &Hypergraph, m: &Matching) -> bool {
        if self.inner.is_empty()
            || !self.inner.iter().all(|e| m.contains(e))
            || !self.inner.iter().all(|e| self.outer.contains(e))
            || !self.outer.iter().all(|e| h.contains_edge(e))
        {
            return false;
        }
        let scope: std::collections::BTreeSet<_> = self.inner.iter().flat_map(Edge::iter).collect();
        if !self.outer.iter().all(|e| e.iter().all(|v| scope.contains(&v))) {
            return false;
        }
        match regular_degrees(&self.inner, &self.outer) {
            Some(d) => d == self.degrees,
            None => false,
        }
    }
}

/// Per-member degree when every member is regular with degree at least 2.
fn regular_degrees(inner: &[Edge], outer: &[Edge]) -> Option<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for (i, e) in inner.iter().enumerate() {
        let mut ks = e.iter().map(|v| outer.iter().filter(|f| f.contains(v)).count());
        let k = ks.next()?;
        if k < 2 || !ks.all(|d| d == k) {
            return None;
        }
        out.insert(i, k);
    }
    Some(out)
}

pub fn find_regular_witness(h: &Hypergraph, m: &Matching) -> Result<Option<RegularWitness>, WalkError> {
    find_regular_witness_with(h, m, RegularLimits::default())
}

/// Exhaustive search, smallest `N` first (ties lexicographic), and for each
/// `N` the smallest extension `N₁` (ties lexicographic).
pub fn find_regular_witness_with(
    h: &Hypergraph,
    m: &Matching,
    limits: RegularLimits,
) -> Result<Option<RegularWitness>, WalkError> {
    let members = m.edges();
    if members.len() > limits.max_inner {
        return Err(WalkError::SearchBudgetExceeded {
            explored: members.len() as u64,
        });
    }
    let mut explored: u64 = 0;
    for size in 1..=members.len() {
        for pick in combinations(members.len(), size) {
            let inner: Vec<Edge> = pick.iter().map(|&i| members[i].clone()).collect();
            let scope = inner.iter().flat_map(Edge::iter).collect();
            let candidates: Vec<Edge> = h
                .induced_unchecked(&scope)
                .edges()
                .iter()
                .filter(|e| !inner.contains(e))
                .cloned()
                .collect();
            if candidates.len() > limits.max_candidates {
                return Err(WalkError::SearchBudgetExceeded { explored });
            }
            for extra in 1..=candidates.len() {
                for chosen in combinations(candidates.len(), extra) {
                    explored += 1;
                    let mut outer = inner.clone();
                    outer.extend(chosen.iter().map(|&i| candidates[i].clone()));
                    if let Some(degrees) = regular_degrees(&inner, &outer) {
                        outer.sort();
                        return Ok(Some(RegularWitness {
                            inner,
                            outer,
                            degrees,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let c = current.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{grid_example, loose_cycle};

    #[test]
    fn combinations_in_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn grid_is_two_regular() {
        let h = grid_example();
        let m = Matching::from_lists(&h, vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        let w = find_regular_witness(&h, &m).unwrap().unwrap();
        assert_eq!(w.inner, m.edges().to_vec());
        assert_eq!(w.outer, h.edges().to_vec());
        assert!(w.degrees.values().all(|&k| k == 2));
        assert!(w.has_uniform_degree());
        assert!(w.check(&h, &m));
    }

    #[test]
    fn absent_cases() {
        let h = Hypergraph::new(6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let m = Matching::from_lists(&h, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(find_regular_witness(&h, &m), Ok(None));
        let c = loose_cycle(3, 2).unwrap();
        let m = Matching::from_lists(&c, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(find_regular_witness(&c, &m), Ok(None));
    }
}
