use super::{DecompositionError, Part};
use crate::hypergraph::{Edge, Vertex};
use crate::walks::combinations;
use std::collections::BTreeMap;

/// Consecutive-pair sums `(x_1+x_2, .., x_{r-1}+x_r)` of a sorted edge.
pub fn band_key(e: &Edge) -> Vec<u32> {
    e.vertices().windows(2).map(|w| w[0] + w[1]).collect()
}

/// Admissible range of the `j`-th key component (1-based) for `r`-sets of
/// `1..=n`.
fn key_range(n: Vertex, r: usize, j: usize) -> (i64, i64) {
    let (n, r, j) = (n as i64, r as i64, j as i64);
    (2 * j + 1, 2 * n - 2 * r + 2 * j + 1)
}

fn check_key(n: Vertex, r: usize, key: &[u32]) -> Result<(), DecompositionError> {
    if key.len() + 1 != r {
        return Err(DecompositionError::InvalidParameters(format!(
            "a band key for r={r} has {} components, got {}",
            r - 1,
            key.len()
        )));
    }
    for (i, &l) in key.iter().enumerate() {
        let (lo, hi) = key_range(n, r, i + 1);
        if (l as i64) < lo || (l as i64) > hi {
            return Err(DecompositionError::RangeViolation {
                component: i + 1,
                value: l,
                lo,
                hi,
            });
        }
    }
    Ok(())
}

fn check_sizes(n: Vertex, r: usize) -> Result<(), DecompositionError> {
    if r < 2 || (n as usize) < r {
        return Err(DecompositionError::InvalidParameters(format!(
            "bands need n >= r >= 2, got n={n}, r={r}"
        )));
    }
    Ok(())
}

/// `E_{l1,l2}` of the complete 3-uniform hypergraph on `n` vertices, read
/// off the edge form `{l1-l2+λ, l2-λ, λ}` for `3 <= λ <= n`.
pub fn band_edges_3(n: Vertex, l1: u32, l2: u32) -> Result<Part, DecompositionError> {
    check_sizes(n, 3)?;
    check_key(n, 3, &[l1, l2])?;
    let (l1, l2) = (l1 as i64, l2 as i64);
    let mut edges = Vec::new();
    for lambda in 3..=n as i64 {
        let (a, b, c) = (l1 - l2 + lambda, l2 - lambda, lambda);
        if a >= 1 && a < b && b < c {
            edges.push(Edge::from_sorted(vec![a as Vertex, b as Vertex, c as Vertex]));
        }
    }
    Ok(Part::new(vec![l1 as u32, l2 as u32], edges))
}

/// All nonempty 3-uniform bands in increasing key order.
pub fn enumerate_bands_3(n: Vertex) -> Result<Vec<Part>, DecompositionError> {
    check_sizes(n, 3)?;
    let mut out = Vec::new();
    for l1 in 3..=2 * n - 3 {
        for l2 in 5..=2 * n - 1 {
            let part = band_edges_3(n, l1, l2)?;
            if !part.is_empty() {
                out.push(part);
            }
        }
    }
    Ok(out)
}

/// `(3n² - 15n + 20) / 2`, the number of nonempty 3-uniform bands.
pub fn band_count_3(n: u64) -> u64 {
    (3 * n * n + 20 - 15 * n) / 2
}

/// `E_key` of the complete `r`-uniform hypergraph. An edge is fixed by its
/// first vertex once the key is known, so each `x_1` is tried in turn.
pub fn band_edges_r(n: Vertex, r: usize, key: &[u32]) -> Result<Part, DecompositionError> {
    check_sizes(n, r)?;
    check_key(n, r, key)?;
    let mut edges = Vec::new();
    'first: for x1 in 1..=n as i64 {
        let mut row = vec![x1];
        for &l in key {
            let next = l as i64 - row[row.len() - 1];
            if next <= row[row.len() - 1] || next > n as i64 {
                continue 'first;
            }
            row.push(next);
        }
        edges.push(Edge::from_sorted(row.into_iter().map(|v| v as Vertex).collect()));
    }
    Ok(Part::new(key.to_vec(), edges))
}

/// All nonempty `r`-uniform bands in lexicographic key order, found by
/// grouping every `r`-subset by its key.
pub fn enumerate_bands_r(n: Vertex, r: usize) -> Result<Vec<Part>, DecompositionError> {
    check_sizes(n, r)?;
    let mut groups: BTreeMap<Vec<u32>, Vec<Edge>> = BTreeMap::new();
    for pick in combinations(n as usize, r) {
        let e = Edge::from_sorted(pick.into_iter().map(|i| i as Vertex + 1).collect());
        groups.entry(band_key(&e)).or_default().push(e);
    }
    Ok(groups.into_iter().map(|(k, es)| Part::new(k, es)).collect())
}

/// `binomial(2n - 3, r - 1)`, the upper bound on the number of bands.
pub fn band_bound_r(n: u64, r: u64) -> u128 {
    let top = (2 * n).saturating_sub(3) as u128;
    let k = r.saturating_sub(1) as u128;
    if k > top {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete_uniform;
    use std::collections::BTreeSet;

    fn lists(p: &Part) -> Vec<Vec<Vertex>> {
        p.edges().iter().map(|e| e.vertices().to_vec()).collect()
    }

    #[test]
    fn band_five_nine_of_six() {
        let p = band_edges_3(6, 5, 9).unwrap();
        assert_eq!(lists(&p), vec![vec![1, 4, 5], vec![2, 3, 6]]);
        assert_eq!(lists(&band_edges_3(4, 3, 5).unwrap()), vec![vec![1, 2, 3]]);
        assert!(matches!(
            band_edges_3(6, 3, 4),
            Err(DecompositionError::RangeViolation { component: 2, .. })
        ));
        assert!(matches!(
            band_edges_3(6, 10, 9),
            Err(DecompositionError::RangeViolation { component: 1, .. })
        ));
    }

    #[test]
    fn small_enumerations() {
        let keys: Vec<_> = enumerate_bands_3(4).unwrap().iter().map(|p| p.key().to_vec()).collect();
        assert_eq!(keys, vec![vec![3, 5], vec![3, 6], vec![4, 7], vec![5, 7]]);
        assert_eq!(enumerate_bands_3(5).unwrap().len(), 10);
        let six = enumerate_bands_3(6).unwrap();
        assert_eq!(six.len(), 19);
        assert_eq!(six.iter().map(Part::len).sum::<usize>(), 20);
        assert_eq!(six.iter().filter(|p| p.len() == 2).count(), 1);
    }

    #[test]
    fn counts_match_formula() {
        for n in 3..=30u32 {
            assert_eq!(enumerate_bands_3(n).unwrap().len() as u64, band_count_3(n as u64), "n={n}");
        }
    }

    #[test]
    fn general_path_agrees_with_three_uniform_path() {
        for n in 3..=12 {
            assert_eq!(enumerate_bands_r(n, 3).unwrap(), enumerate_bands_3(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn general_bands_partition_and_are_matchings() {
        for (n, r) in [(8, 4), (10, 4), (7, 5), (10, 5)] {
            let bands = enumerate_bands_r(n, r).unwrap();
            let all: BTreeSet<Edge> = bands.iter().flat_map(|p| p.edges().iter().cloned()).collect();
            let total: usize = bands.iter().map(Part::len).sum();
            let host = complete_uniform(n, r).unwrap();
            assert_eq!(total, host.edge_count());
            assert_eq!(all.into_iter().collect::<Vec<_>>(), host.edges().to_vec());
            for p in &bands {
                assert_eq!(band_edges_r(n, r, p.key()).unwrap(), *p);
                for (i, a) in p.edges().iter().enumerate() {
                    assert_eq!(band_key(a), p.key());
                    for b in &p.edges()[i + 1..] {
                        assert!(a.is_disjoint(b));
                    }
                }
            }
            assert!(bands.len() as u128 <= band_bound_r(n as u64, r as u64));
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(band_bound_r(7, 5), 330);
        assert_eq!(band_bound_r(10, 5), 2380);
        assert_eq!(band_bound_r(8, 4), 286);
    }

    #[test]
    fn layout_parameters() {
        let p = band_edges_3(6, 5, 9).unwrap();
        let l = p.layout();
        assert_eq!(l.rows, vec![vec![1, 4, 5], vec![2, 3, 6]]);
        assert_eq!((l.m, l.a), (6, 1));
        assert_eq!(l.lambdas, vec![5, 6]);
    }
}
