use super::{DecomposedPart, DecompositionError, PmDecomposition, Provenance};
use crate::hypergraph::{Edge, Hypergraph, Matching};
use crate::oracle::{is_positive_matching, singleton_certificate, synthesize_weights};
use crate::walks::positive_by_walks;
use std::collections::HashMap;

/// Default node budget for [`pmd_exact`].
pub const DEFAULT_PART_BUDGET: u64 = 2_000_000;

/// Edge subsets as bitmasks over the host's edge list.
struct Masks<'a> {
    h: &'a Hypergraph,
    /// `conflict[i]`: edges sharing a vertex with edge `i`, itself included.
    conflict: Vec<u64>,
    positive: HashMap<(u64, u64), bool>,
}

impl<'a> Masks<'a> {
    fn new(h: &'a Hypergraph) -> Result<Self, DecompositionError> {
        let edges = h.edges();
        if edges.len() > 64 {
            return Err(DecompositionError::InvalidParameters(format!(
                "pmd search supports at most 64 edges, got {}",
                edges.len()
            )));
        }
        let conflict = edges
            .iter()
            .map(|a| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| !a.is_disjoint(b))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok(Masks {
            h,
            conflict,
            positive: HashMap::new(),
        })
    }

    fn edges_of(&self, mask: u64) -> Vec<Edge> {
        bits(mask).map(|i| self.h.edges()[i].clone()).collect()
    }

    /// `mask` as a hypergraph on the host's vertices.
    fn graph(&self, mask: u64) -> Hypergraph {
        Hypergraph::from_parts(self.h.n(), self.h.rank(), self.edges_of(mask))
    }

    fn max_degree(&self, mask: u64) -> usize {
        let mut deg = vec![0usize; self.h.n() as usize + 1];
        for i in bits(mask) {
            for v in self.h.edges()[i].iter() {
                deg[v as usize] += 1;
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Edges of `rem` inside the vertex set of `m`.
    fn induced(&self, rem: u64, m: u64) -> u64 {
        let mut inside = vec![false; self.h.n() as usize + 1];
        for i in bits(m) {
            for v in self.h.edges()[i].iter() {
                inside[v as usize] = true;
            }
        }
        bits(rem)
            .filter(|&i| self.h.edges()[i].iter().all(|v| inside[v as usize]))
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Positivity of `m` on `rem`, by walks when the induced part is linear.
    fn is_positive(&mut self, rem: u64, m: u64) -> bool {
        if m.count_ones() <= 1 {
            return true;
        }
        let local = self.induced(rem, m);
        if let Some(&b) = self.positive.get(&(local, m)) {
            return b;
        }
        let g = self.graph(local);
        let matching = Matching::from_disjoint(self.edges_of(m));
        let answer = match positive_by_walks(&g, &matching) {
            Ok(v) => v.positive,
            Err(_) => is_positive_matching(&g, &matching),
        };
        self.positive.insert((local, m), answer);
        answer
    }

    /// Inclusion-maximal positive matchings of `rem`, largest first, then in
    /// increasing order of their edge indices.
    ///
    /// Only maximal ones matter: positivity survives deleting non-member
    /// edges, so a larger first part never leaves a harder remainder.
    fn candidates(&mut self, rem: u64) -> Vec<u64> {
        let mut all = Vec::new();
        self.grow(rem, rem, 0, &mut all);
        let mut maximal: Vec<u64> = all
            .iter()
            .copied()
            .filter(|&m| !all.iter().any(|&o| o != m && o & m == m))
            .collect();
        maximal.sort_by(|a, b| {
            b.count_ones()
                .cmp(&a.count_ones())
                .then_with(|| lex_indices(*a).cmp(&lex_indices(*b)))
        });
        maximal
    }

    /// Positive matchings of `rem` extending `m` by edges from `free`.
    /// Subsets of a positive matching are positive, so branches stop at the
    /// first non-positive extension.
    fn grow(&mut self, rem: u64, free: u64, m: u64, out: &mut Vec<u64>) {
        if m != 0 {
            out.push(m);
        }
        let mut rest = free;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let next = m | 1 << i;
            if self.is_positive(rem, next) {
                self.grow(rem, rest & !self.conflict[i], next, out);
            }
        }
    }

    fn part(&self, rem: u64, m: u64) -> DecomposedPart {
        let edges = self.edges_of(m);
        let (certificate, provenance) = if let [e] = edges.as_slice() {
            (singleton_certificate(e), Provenance::Singleton)
        } else {
            let local = self.graph(self.induced(rem, m));
            let w = synthesize_weights(&local, &Matching::from_disjoint(edges.clone()))
                .expect("parts are chosen positive");
            (w, Provenance::LpFallback)
        };
        DecomposedPart {
            key: None,
            edges,
            certificate,
            provenance,
        }
    }

    fn decomposition(&self, parts: &[u64]) -> PmDecomposition {
        let mut rem = full(self.h.edge_count());
        let mut out = Vec::with_capacity(parts.len());
        for &m in parts {
            out.push(self.part(rem, m));
            rem &= !m;
        }
        PmDecomposition::new(self.h.clone(), out)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            i
        })
    })
}

fn lex_indices(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

fn full(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

struct Exact<'a> {
    masks: Masks<'a>,
    /// Largest part count known to be insufficient for each remainder.
    failed: HashMap<u64, usize>,
    explored: u64,
    budget: u64,
}

impl Exact<'_> {
    fn solve(&mut self, rem: u64, k: usize) -> Result<Option<Vec<u64>>, DecompositionError> {
        if rem == 0 {
            return Ok(Some(Vec::new()));
        }
        if k == 0 || self.failed.get(&rem).is_some_and(|&f| f >= k) {
            return Ok(None);
        }
        // all edges at a vertex pairwise meet, so each needs its own part
        if self.masks.max_degree(rem) > k {
            return Ok(None);
        }
        self.explored += 1;
        if self.explored > self.budget {
            return Err(DecompositionError::BudgetExceeded {
                explored: self.explored - 1,
            });
        }
        for m in self.masks.candidates(rem) {
            if let Some(mut tail) = self.solve(rem & !m, k - 1)? {
                tail.insert(0, m);
                return Ok(Some(tail));
            }
        }
        let f = self.failed.entry(rem).or_insert(0);
        *f = (*f).max(k);
        Ok(None)
    }
}

/// The minimum number of parts of a pm-decomposition of `h`, with a
/// witnessing decomposition. Deepens the part count from `Δ(h)` upward;
/// `part_budget` caps the number of search nodes expanded.
pub fn pmd_exact(h: &Hypergraph, part_budget: u64) -> Result<(usize, PmDecomposition), DecompositionError> {
    let mut search = Exact {
        masks: Masks::new(h)?,
        failed: HashMap::new(),
        explored: 0,
        budget: part_budget,
    };
    let all = full(h.edge_count());
    for k in h.max_degree()..=h.edge_count() {
        if let Some(parts) = search.solve(all, k)? {
            return Ok((parts.len(), search.masks.decomposition(&parts)));
        }
    }
    unreachable!("singleton parts always decompose")
}

/// A pm-decomposition built first-fit: each part takes the remaining edges
/// in lexicographic order whenever the part stays positive.
pub fn pmd_greedy(h: &Hypergraph) -> Result<PmDecomposition, DecompositionError> {
    let mut masks = Masks::new(h)?;
    let mut rem = full(h.edge_count());
    let mut parts = Vec::new();
    while rem != 0 {
        let mut m = 0u64;
        let mut blocked = 0u64;
        for i in bits(rem) {
            if blocked >> i & 1 == 1 {
                continue;
            }
            if masks.is_positive(rem, m | 1 << i) {
                m |= 1 << i;
                blocked |= masks.conflict[i];
            }
        }
        parts.push(m);
        rem &= !m;
    }
    Ok(masks.decomposition(&parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_uniform, loose_cycle};

    fn exact(h: &Hypergraph) -> usize {
        let (p, d) = pmd_exact(h, DEFAULT_PART_BUDGET).unwrap();
        assert_eq!(d.verify(), Ok(()));
        assert_eq!(d.count(), p);
        p
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(exact(&Hypergraph::edgeless(4, 3).unwrap()), 0);
        assert_eq!(exact(&Hypergraph::new(3, vec![vec![1, 2, 3]]).unwrap()), 1);
    }

    #[test]
    fn loose_cycles_by_parity() {
        assert_eq!(exact(&loose_cycle(3, 3).unwrap()), 3);
        assert_eq!(exact(&loose_cycle(3, 2).unwrap()), 2);
        assert_eq!(exact(&loose_cycle(4, 4).unwrap()), 2);
        assert_eq!(exact(&loose_cycle(3, 5).unwrap()), 3);
    }

    #[test]
    fn good_tree() {
        let h = Hypergraph::new(7, vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]).unwrap();
        assert_eq!(exact(&h), 2);
        let star = Hypergraph::new(7, vec![vec![1, 2, 3], vec![1, 4, 5], vec![1, 6, 7]]).unwrap();
        assert_eq!(exact(&star), 3);
        assert!(pmd_greedy(&star).unwrap().count() >= 3);
    }

    #[test]
    fn greedy_is_valid_and_not_better() {
        for h in [complete_uniform(5, 3).unwrap(), loose_cycle(3, 4).unwrap(), loose_cycle(4, 3).unwrap()] {
            let g = pmd_greedy(&h).unwrap();
            assert_eq!(g.verify(), Ok(()));
            assert!(g.count() >= exact(&h));
        }
    }

    #[test]
    fn budget_is_reported() {
        let h = complete_uniform(5, 3).unwrap();
        assert!(matches!(pmd_exact(&h, 0), Err(DecompositionError::BudgetExceeded { .. })));
    }
}
