//! Positivity of a matching, decided by exact linear feasibility.
//!
//! A matching `M` is positive when some rational weighting of the vertices
//! gives every edge of `M` a positive sum and every other edge a negative
//! sum. Only edges inside `V_M` matter, so every check here works on the
//! induced hypergraph `H[V_M]`.

use crate::hypergraph::{Edge, Hypergraph, Matching, Vertex};
use crate::lp::{solve_at_least_one, Feasibility};
use crate::rational::{int, one, parse_fraction, to_fraction_string, zero, Rational};
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("certificate has no weight for vertex {0}")]
    ScopeMissingVertex(Vertex),
    #[error("{0} is not an edge of the hypergraph being checked")]
    ForeignEdge(Edge),
}

/// Exact vertex weights witnessing positivity of a matching.
///
/// JSON form: `{"weights": {"<vertex>": "<p>/<q>", ..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightCertificate {
    weights: BTreeMap<Vertex, Rational>,
}

impl WeightCertificate {
    pub fn new(weights: BTreeMap<Vertex, Rational>) -> Self {
        WeightCertificate { weights }
    }

    /// Every vertex of `vertices` gets `value`.
    pub fn constant<I: IntoIterator<Item = Vertex>>(vertices: I, value: Rational) -> Self {
        WeightCertificate {
            weights: vertices.into_iter().map(|v| (v, value.clone())).collect(),
        }
    }

    pub fn weight(&self, v: Vertex) -> Option<&Rational> {
        self.weights.get(&v)
    }

    pub fn weights(&self) -> &BTreeMap<Vertex, Rational> {
        &self.weights
    }

    pub fn scope(&self) -> BTreeSet<Vertex> {
        self.weights.keys().copied().collect()
    }

    pub fn scaled(&self, q: &Rational) -> Self {
        WeightCertificate {
            weights: self.weights.iter().map(|(&v, w)| (v, w * q)).collect(),
        }
    }

    pub fn edge_sum(&self, e: &Edge) -> Result<Rational, OracleError> {
        e.iter().try_fold(zero(), |acc, v| {
            self.weights
                .get(&v)
                .map(|w| acc + w)
                .ok_or(OracleError::ScopeMissingVertex(v))
        })
    }
}

impl Serialize for WeightCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            weights: BTreeMap<Vertex, String>,
        }
        Doc {
            weights: self
                .weights
                .iter()
                .map(|(&v, w)| (v, to_fraction_string(w)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Doc {
            weights: BTreeMap<Vertex, String>,
        }
        let doc = Doc::deserialize(d)?;
        let weights = doc
            .weights
            .into_iter()
            .map(|(v, s)| {
                parse_fraction(&s)
                    .map(|q| (v, q))
                    .ok_or_else(|| D::Error::custom(format!("bad rational {s:?} for vertex {v}")))
            })
            .collect::<Result<_, _>>()?;
        Ok(WeightCertificate { weights })
    }
}

/// Replays a certificate: strictly positive sums on `m`, strictly negative
/// sums on every other edge of `h` inside `V_m`.
pub fn verify_certificate(
    h: &Hypergraph,
    m: &Matching,
    w: &WeightCertificate,
) -> Result<bool, OracleError> {
    if let Some(e) = m.edges().iter().find(|e| !h.contains_edge(e)) {
        return Err(OracleError::ForeignEdge(e.clone()));
    }
    let scope = m.vertex_set();
    if let Some(&v) = scope.iter().find(|v| w.weight(**v).is_none()) {
        return Err(OracleError::ScopeMissingVertex(v));
    }
    for e in h.edges() {
        if !e.iter().all(|v| scope.contains(&v)) {
            continue;
        }
        let s = w.edge_sum(e)?;
        let ok = if m.contains(e) {
            s.is_positive()
        } else {
            s.is_negative()
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The margin-one system for `m`: one row per edge of `H[V_m]`, signed so
/// that feasibility of `row · w >= 1` means positivity. Columns follow the
/// sorted vertex order of `V_m`.
fn margin_system(h: &Hypergraph, m: &Matching) -> (Vec<Vertex>, Vec<Vec<Rational>>, Vec<Edge>) {
    let scope: Vec<Vertex> = m.vertex_set().into_iter().collect();
    let col: BTreeMap<Vertex, usize> = scope.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut rows = Vec::new();
    let mut row_edges = Vec::new();
    for e in h.edges() {
        if !e.iter().all(|v| col.contains_key(&v)) {
            continue;
        }
        let sign = if m.contains(e) { int(1) } else { int(-1) };
        let mut row = vec![zero(); scope.len()];
        for v in e.iter() {
            row[col[&v]] = sign.clone();
        }
        rows.push(row);
        row_edges.push(e.clone());
    }
    (scope, rows, row_edges)
}

/// A certificate for `m` if one exists. Strict inequalities are replaced by
/// margins of one, which loses nothing because the system is homogeneous.
/// The empty matching gets the empty certificate.
pub fn synthesize_weights(h: &Hypergraph, m: &Matching) -> Option<WeightCertificate> {
    if m.is_empty() {
        return Some(WeightCertificate::default());
    }
    let (scope, rows, _) = margin_system(h, m);
    match solve_at_least_one(&rows, scope.len()) {
        Feasibility::Feasible(w) => Some(WeightCertificate::new(scope.into_iter().zip(w).collect())),
        Feasibility::Infeasible(_) => None,
    }
}

/// Nonnegative edge multipliers proving `m` is not positive: the weighted
/// sum of the indicator vectors of `m`'s edges equals that of the other
/// edges of `H[V_m]`. `None` when `m` is positive.
pub fn infeasibility_multipliers(h: &Hypergraph, m: &Matching) -> Option<Vec<(Edge, Rational)>> {
    if m.is_empty() {
        return None;
    }
    let (scope, rows, edges) = margin_system(h, m);
    match solve_at_least_one(&rows, scope.len()) {
        Feasibility::Feasible(_) => None,
        Feasibility::Infeasible(y) => Some(
            edges
                .into_iter()
                .zip(y)
                .filter(|(_, y)| !y.is_zero())
                .collect(),
        ),
    }
}

/// Drops members that own a vertex lying in no other edge of the induced
/// hypergraph. Such members never decide positivity, so the answer for the
/// reduced matching equals the answer for `m`.
pub(crate) fn peel_private_members(h: &Hypergraph, m: &Matching) -> Matching {
    let mut current: Vec<Edge> = m.edges().to_vec();
    loop {
        let scope: BTreeSet<Vertex> = current.iter().flat_map(Edge::iter).collect();
        let induced = h.induced_unchecked(&scope);
        let deg = induced.degrees();
        let Some(pos) = current
            .iter()
            .position(|e| e.iter().any(|v| deg[v as usize] == 1))
        else {
            break;
        };
        current.remove(pos);
    }
    Matching::from_disjoint(current)
}

pub fn is_positive_matching(h: &Hypergraph, m: &Matching) -> bool {
    let core = peel_private_members(h, m);
    synthesize_weights(h, &core).is_some()
}

/// The all-ones weighting of a single edge. Valid for any singleton
/// matching of a clutter, since the edge is the only one on its vertices.
pub fn singleton_certificate(e: &Edge) -> WeightCertificate {
    WeightCertificate::constant(e.iter(), one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_uniform, grid_example, loose_cycle};

    fn cert(pairs: &[(Vertex, i64)]) -> WeightCertificate {
        WeightCertificate::new(pairs.iter().map(|&(v, w)| (v, int(w))).collect())
    }

    #[test]
    fn disjoint_pair_with_unit_weights() {
        let h = Hypergraph::new(6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let m = Matching::from_lists(&h, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let w = WeightCertificate::constant(1..=6, one());
        assert_eq!(verify_certificate(&h, &m, &w), Ok(true));
    }

    #[test]
    fn grid_unit_weights_fail() {
        let h = grid_example();
        let m = Matching::from_lists(&h, vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        let w = WeightCertificate::constant(1..=9, one());
        assert_eq!(verify_certificate(&h, &m, &w), Ok(false));
        assert!(synthesize_weights(&h, &m).is_none());
        assert!(!is_positive_matching(&h, &m));
        let y = infeasibility_multipliers(&h, &m).unwrap();
        assert_eq!(y.len(), 6);
    }

    #[test]
    fn band_certificate_replays_on_remainder() {
        // the stage remainder for band (5,9) of the complete 3-uniform
        // hypergraph on 6 vertices: all edges not in an earlier band
        let k6 = complete_uniform(6, 3).unwrap();
        let earlier: Vec<Edge> = k6
            .edges()
            .iter()
            .filter(|e| {
                let v = e.vertices();
                let key = (v[0] + v[1], v[1] + v[2]);
                key < (5, 9)
            })
            .cloned()
            .collect();
        let remaining = k6.without_edges(&earlier);
        let m = Matching::from_lists(&remaining, vec![vec![1, 4, 5], vec![2, 3, 6]]).unwrap();
        let w = cert(&[(1, 12), (2, 9), (3, 0), (4, -5), (5, -5), (6, -8)]);
        assert_eq!(verify_certificate(&remaining, &m, &w), Ok(true));
        assert!(is_positive_matching(&remaining, &m));
    }

    #[test]
    fn missing_weight_is_an_error() {
        let h = grid_example();
        let m = Matching::from_lists(&h, vec![vec![1, 2, 3]]).unwrap();
        let w = cert(&[(1, 1), (2, 1)]);
        assert_eq!(
            verify_certificate(&h, &m, &w),
            Err(OracleError::ScopeMissingVertex(3))
        );
    }

    #[test]
    fn empty_and_singleton_matchings() {
        let h = complete_uniform(6, 3).unwrap();
        let w = synthesize_weights(&h, &Matching::empty()).unwrap();
        assert!(w.scope().is_empty());
        assert!(is_positive_matching(&h, &Matching::empty()));

        let m = Matching::from_lists(&h, vec![vec![1, 2, 3]]).unwrap();
        let w = synthesize_weights(&h, &m).unwrap();
        assert_eq!(verify_certificate(&h, &m, &w), Ok(true));
        assert!(is_positive_matching(&h, &m));
        assert_eq!(
            verify_certificate(&h, &m, &singleton_certificate(&m.edges()[0])),
            Ok(true)
        );
    }

    #[test]
    fn loose_cycle_singleton_is_positive() {
        let h = loose_cycle(3, 2).unwrap();
        let m = Matching::from_lists(&h, vec![vec![1, 2, 3]]).unwrap();
        assert!(is_positive_matching(&h, &m));
    }

    #[test]
    fn certificate_json() {
        let w = WeightCertificate::new(BTreeMap::from([
            (10, crate::rational::frac(-6, 4)),
            (2, int(3)),
        ]));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"weights":{"2":"3/1","10":"-3/2"}}"#);
        assert_eq!(serde_json::from_str::<WeightCertificate>(&s).unwrap(), w);
        assert!(serde_json::from_str::<WeightCertificate>(r#"{"weights":{"1":"1/0"}}"#).is_err());
    }
}
