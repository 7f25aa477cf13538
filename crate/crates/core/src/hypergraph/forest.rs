use super::{Edge, Hypergraph};
use std::collections::HashSet;

/// An ordering `e_1, .., e_m` of all edges in which every edge meets the
/// union of the earlier ones in at most one vertex, or `None` if there is no
/// such ordering. Among valid orderings the one that is lexicographically
/// smallest by edge index is returned.
///
/// Depth-first over orderings, lowest index first, remembering placed-edge
/// sets that are known dead ends. Exponential in the worst case; supports up
/// to 64 edges.
pub fn good_forest_order(h: &Hypergraph) -> Option<Vec<Edge>> {
    let edges = h.edges();
    let m = edges.len();
    if m == 0 {
        return Some(Vec::new());
    }
    assert!(m <= 64, "good forest search supports at most 64 edges");

    let mut covered = vec![0u32; h.n() as usize + 1];
    let mut order = Vec::with_capacity(m);
    let mut dead: HashSet<u64> = HashSet::new();
    if search(edges, 0, &mut covered, &mut order, &mut dead) {
        Some(order.into_iter().map(|i| edges[i].clone()).collect())
    } else {
        None
    }
}

fn search(
    edges: &[Edge],
    placed: u64,
    covered: &mut [u32],
    order: &mut Vec<usize>,
    dead: &mut HashSet<u64>,
) -> bool {
    if order.len() == edges.len() {
        return true;
    }
    if dead.contains(&placed) {
        return false;
    }
    for (i, e) in edges.iter().enumerate() {
        if placed & (1 << i) != 0 {
            continue;
        }
        let overlap = e.iter().filter(|&v| covered[v as usize] > 0).count();
        if !order.is_empty() && overlap > 1 {
            continue;
        }
        for v in e.iter() {
            covered[v as usize] += 1;
        }
        order.push(i);
        if search(edges, placed | (1 << i), covered, order, dead) {
            return true;
        }
        order.pop();
        for v in e.iter() {
            covered[v as usize] -= 1;
        }
    }
    dead.insert(placed);
    false
}

/// Replays the defining condition on a candidate ordering.
pub fn is_good_forest_order(order: &[Edge]) -> bool {
    let mut union: HashSet<u32> = HashSet::new();
    for (i, e) in order.iter().enumerate() {
        if i > 0 && e.iter().filter(|v| union.contains(v)).count() > 1 {
            return false;
        }
        union.extend(e.iter());
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{loose_cycle, random_good_forest};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn loose_cycle_is_not_a_good_forest() {
        assert!(good_forest_order(&loose_cycle(3, 3).unwrap()).is_none());
        assert!(good_forest_order(&loose_cycle(4, 5).unwrap()).is_none());
    }

    #[test]
    fn path_and_single_edge() {
        let h = Hypergraph::new(5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert_eq!(good_forest_order(&h).unwrap(), h.edges().to_vec());
        let one = Hypergraph::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(good_forest_order(&one).unwrap().len(), 1);
        assert_eq!(
            good_forest_order(&Hypergraph::edgeless(3, 3).unwrap()),
            Some(vec![])
        );
    }

    #[test]
    fn needs_reordering() {
        // {1,2,3} and {4,5,6} are joined only through {3,4,7}
        let h = Hypergraph::new(7, vec![vec![1, 2, 3], vec![4, 5, 6], vec![3, 4, 7]]).unwrap();
        let order = good_forest_order(&h).unwrap();
        assert!(is_good_forest_order(&order));
        assert_eq!(order[0].vertices(), &[1, 2, 3]);
        assert_eq!(order[1].vertices(), &[3, 4, 7]);
    }

    proptest! {
        #[test]
        fn generated_forests_replay(seed in 0u64..500, m in 1usize..10, r in 2usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_good_forest(m, r, &mut rng).unwrap();
            let order = good_forest_order(&f).expect("generated forest must be recognized");
            prop_assert_eq!(order.len(), f.edge_count());
            prop_assert!(is_good_forest_order(&order));
        }
    }
}
