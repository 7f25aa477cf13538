//! Positive matching decompositions.
//!
//! Complete uniform hypergraphs are split into bands, the matchings of
//! edges sharing all consecutive-pair sums, each certified by explicit
//! weights. Small arbitrary hypergraphs get exact and greedy searches, and
//! good forests, loose cycles and pendant extensions get closed forms.

mod affine;
mod bands;
mod complete;
mod formula;
mod phi_psi;
mod rho;
mod search;

pub use affine::{minimal_natural_t, AffineExpr, Condition};
pub use bands::{
    band_bound_r, band_count_3, band_edges_3, band_edges_r, band_key, enumerate_bands_3,
    enumerate_bands_r,
};
pub use complete::{pm_decompose_complete_3, pm_decompose_complete_r, stage_remainder};
pub use formula::{pmd_formula, FamilyTag};
pub use phi_psi::{phi_psi_affine, phi_psi_weights};
pub use rho::{rho_affine, rho_weights, RhoCertificate};
pub use search::{pmd_exact, pmd_greedy, DEFAULT_PART_BUDGET};

use crate::hypergraph::{Edge, Hypergraph, HypergraphError, Matching, Vertex};
use crate::oracle::{verify_certificate, OracleError, WeightCertificate};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("key component l_{component} = {value} is outside {lo}..={hi}")]
    RangeViolation {
        component: usize,
        value: u32,
        lo: i64,
        hi: i64,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("band {key:?}: no natural t satisfies the side conditions")]
    NoAdmissibleT { key: Vec<u32> },
    #[error("band {key:?}: the constructed certificate fails replay")]
    CertificateRejected { key: Vec<u32> },
    #[error("band {key:?}: neither the construction nor the LP produced a certificate")]
    CertificateUnobtainable { key: Vec<u32> },
    #[error("search budget exhausted after {explored} nodes")]
    BudgetExceeded { explored: u64 },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl DecompositionError {
    /// Outcomes that the band theorems rule out. Reaching one means either
    /// a bug or a counterexample.
    pub fn contradicts_theorem(&self) -> bool {
        matches!(
            self,
            DecompositionError::NoAdmissibleT { .. }
                | DecompositionError::CertificateRejected { .. }
                | DecompositionError::CertificateUnobtainable { .. }
        )
    }
}

/// A band: the edges whose consecutive-pair sums equal `key`, sorted by
/// first vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    key: Vec<u32>,
    edges: Vec<Edge>,
}

/// The band as a matrix, one edge per row in increasing first column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub rows: Vec<Vec<Vertex>>,
    /// Largest last-column entry.
    pub m: Vertex,
    /// Row count minus one.
    pub a: usize,
    /// Last-column entry of each row; for `r = 3` this is the `λ` of the
    /// edge form `{l1-l2+λ, l2-λ, λ}`.
    pub lambdas: Vec<Vertex>,
}

impl Part {
    pub(crate) fn new(key: Vec<u32>, mut edges: Vec<Edge>) -> Self {
        edges.sort();
        Part { key, edges }
    }

    pub fn key(&self) -> &[u32] {
        &self.key
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn matching(&self) -> Matching {
        Matching::from_disjoint(self.edges.clone())
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(Edge::iter).collect()
    }

    pub fn layout(&self) -> Layout {
        let rows: Vec<Vec<Vertex>> = self.edges.iter().map(|e| e.vertices().to_vec()).collect();
        let lambdas: Vec<Vertex> = rows.iter().filter_map(|r| r.last().copied()).collect();
        Layout {
            m: lambdas.iter().copied().max().unwrap_or(0),
            a: rows.len().saturating_sub(1),
            rows,
            lambdas,
        }
    }
}

/// How a part's certificate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    /// From the band weight maps with a minimal parameter `t`.
    #[serde(rename = "constructive")]
    Constructive,
    /// Synthesized by the exact LP oracle.
    #[serde(rename = "LP-fallback")]
    LpFallback,
    /// All-ones weights on a one-edge part.
    #[serde(rename = "singleton")]
    Singleton,
}

/// One stage of a decomposition. `key` is absent for parts that are not
/// bands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposedPart {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<Vec<u32>>,
    pub edges: Vec<Edge>,
    pub certificate: WeightCertificate,
    pub provenance: Provenance,
}

impl DecomposedPart {
    pub fn matching(&self) -> Matching {
        Matching::from_disjoint(self.edges.clone())
    }
}

/// An ordered partition of `host`'s edges into certified positive matchings.
///
/// JSON form: `{"host": .., "parts": [..], "count": p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecompositionDoc", into = "DecompositionDoc")]
pub struct PmDecomposition {
    host: Hypergraph,
    parts: Vec<DecomposedPart>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionDoc {
    host: Hypergraph,
    parts: Vec<DecomposedPart>,
    count: usize,
}

impl TryFrom<DecompositionDoc> for PmDecomposition {
    type Error = String;

    fn try_from(doc: DecompositionDoc) -> Result<Self, String> {
        if doc.count != doc.parts.len() {
            return Err(format!("count {} disagrees with {} parts", doc.count, doc.parts.len()));
        }
        Ok(PmDecomposition {
            host: doc.host,
            parts: doc.parts,
        })
    }
}

impl From<PmDecomposition> for DecompositionDoc {
    fn from(d: PmDecomposition) -> Self {
        DecompositionDoc {
            count: d.parts.len(),
            host: d.host,
            parts: d.parts,
        }
    }
}

/// Why a decomposition failed replay.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("part {part} is empty")]
    EmptyPart { part: usize },
    #[error("part {part} contains {edge}, which is not a host edge")]
    ForeignEdge { part: usize, edge: Edge },
    #[error("{edge} appears in parts {first} and {second}")]
    RepeatedEdge { edge: Edge, first: usize, second: usize },
    #[error("host edge {0} is in no part")]
    UncoveredEdge(Edge),
    #[error("part {part} is not a matching")]
    NotAMatching { part: usize },
    #[error("part {part}: {source}")]
    Certificate { part: usize, source: OracleError },
    #[error("part {part}: certificate does not separate the part from the remaining edges")]
    Rejected { part: usize },
}

impl PmDecomposition {
    /// Assembles without checking; call [`PmDecomposition::verify`].
    pub fn new(host: Hypergraph, parts: Vec<DecomposedPart>) -> Self {
        PmDecomposition { host, parts }
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn parts(&self) -> &[DecomposedPart] {
        &self.parts
    }

    pub fn count(&self) -> usize {
        self.parts.len()
    }

    /// Index of the part holding each host edge, after checking that the
    /// parts are nonempty matchings partitioning the host's edges.
    fn owners(&self) -> Result<HashMap<&Edge, usize>, ReplayError> {
        let mut owner: HashMap<&Edge, usize> = HashMap::new();
        for (i, p) in self.parts.iter().enumerate() {
            if p.edges.is_empty() {
                return Err(ReplayError::EmptyPart { part: i });
            }
            let mut seen = BTreeSet::new();
            for e in &p.edges {
                if !self.host.contains_edge(e) {
                    return Err(ReplayError::ForeignEdge {
                        part: i,
                        edge: e.clone(),
                    });
                }
                if let Some(&first) = owner.get(e) {
                    return Err(ReplayError::RepeatedEdge {
                        edge: e.clone(),
                        first,
                        second: i,
                    });
                }
                if !e.iter().all(|v| seen.insert(v)) {
                    return Err(ReplayError::NotAMatching { part: i });
                }
                owner.insert(e, i);
            }
        }
        if let Some(e) = self.host.edges().iter().find(|e| !owner.contains_key(e)) {
            return Err(ReplayError::UncoveredEdge(e.clone()));
        }
        Ok(owner)
    }

    /// Replays every certificate against its stage remainder. The remainder
    /// of part `i` restricted to its vertices is every host edge on those
    /// vertices owned by a part `>= i`, so stages are checked independently.
    pub fn replay(&self) -> Result<Vec<Result<(), ReplayError>>, ReplayError> {
        let owner = self.owners()?;
        Ok(self
            .parts
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let scope: BTreeSet<Vertex> = p.edges.iter().flat_map(Edge::iter).collect();
                let local: Vec<Edge> = self
                    .host
                    .induced_unchecked(&scope)
                    .edges()
                    .iter()
                    .filter(|e| owner[e] >= i)
                    .cloned()
                    .collect();
                let stage = Hypergraph::from_parts(self.host.n(), self.host.rank(), local);
                match verify_certificate(&stage, &p.matching(), &p.certificate) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err(ReplayError::Rejected { part: i }),
                    Err(source) => Err(ReplayError::Certificate { part: i, source }),
                }
            })
            .collect())
    }

    /// `Ok` iff the parts partition the host and every certificate replays.
    pub fn verify(&self) -> Result<(), ReplayError> {
        self.replay()?.into_iter().collect()
    }
}
