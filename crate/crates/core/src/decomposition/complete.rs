use super::bands::{band_key, enumerate_bands_3, enumerate_bands_r};
use super::phi_psi::phi_psi_weights;
use super::rho::rho_weights;
use super::{DecomposedPart, DecompositionError, Part, PmDecomposition};
use crate::hypergraph::{complete_uniform, Edge, Hypergraph, Vertex};
use crate::walks::combinations;
use rayon::prelude::*;

/// The edges of the complete `r`-uniform hypergraph on `n` vertices that are
/// still present when `part` is removed, restricted to `part`'s vertices:
/// every `r`-subset of `V_part` whose band key is not smaller than `part`'s.
pub fn stage_remainder(n: Vertex, r: usize, part: &Part) -> Hypergraph {
    let scope: Vec<Vertex> = part.vertex_set().into_iter().collect();
    let edges = combinations(scope.len(), r)
        .map(|pick| Edge::from_sorted(pick.into_iter().map(|i| scope[i]).collect()))
        .filter(|e| band_key(e).as_slice() >= part.key())
        .collect();
    Hypergraph::from_parts(n, r, edges)
}

/// The band decomposition of the complete 3-uniform hypergraph, one part
/// per nonempty band in increasing key order, certified by `ρ`.
pub fn pm_decompose_complete_3(n: Vertex) -> Result<PmDecomposition, DecompositionError> {
    let bands = enumerate_bands_3(n)?;
    let parts = bands
        .par_iter()
        .map(|band| {
            let c = rho_weights(band, &stage_remainder(n, 3, band))?;
            Ok(DecomposedPart {
                key: Some(band.key().to_vec()),
                edges: band.edges().to_vec(),
                certificate: c.certificate,
                provenance: c.provenance,
            })
        })
        .collect::<Result<Vec<_>, DecompositionError>>()?;
    Ok(PmDecomposition::new(complete_uniform(n, 3)?, parts))
}

/// The band decomposition of the complete `r`-uniform hypergraph. Size 3
/// uses `ρ`; larger sizes use `φ`/`ψ` with the LP as a fallback.
pub fn pm_decompose_complete_r(n: Vertex, r: usize) -> Result<PmDecomposition, DecompositionError> {
    if r < 3 || (n as usize) < r {
        return Err(DecompositionError::InvalidParameters(format!(
            "complete decompositions need n >= r >= 3, got n={n}, r={r}"
        )));
    }
    if r == 3 {
        return pm_decompose_complete_3(n);
    }
    let bands = enumerate_bands_r(n, r)?;
    let parts = bands
        .par_iter()
        .map(|band| {
            let (certificate, provenance) = phi_psi_weights(band, &stage_remainder(n, r, band), r)?;
            Ok(DecomposedPart {
                key: Some(band.key().to_vec()),
                edges: band.edges().to_vec(),
                certificate,
                provenance,
            })
        })
        .collect::<Result<Vec<_>, DecompositionError>>()?;
    Ok(PmDecomposition::new(complete_uniform(n, r)?, parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{band_bound_r, band_count_3, band_edges_3, Provenance};

    #[test]
    fn stage_remainder_of_band_five_nine() {
        let part = band_edges_3(6, 5, 9).unwrap();
        let rest = stage_remainder(6, 3, &part);
        // of the 20 triples on {1..6}, keep those with key >= (5, 9)
        assert!(rest.edges().iter().all(|e| band_key(e) >= vec![5, 9]));
        assert!(rest.contains_edge(&part.edges()[0]));
        assert!(!rest.contains_edge(&Edge::new(vec![1, 2, 3]).unwrap()));
    }

    #[test]
    fn small_complete_three() {
        for n in 3..=8u32 {
            let d = pm_decompose_complete_3(n).unwrap();
            assert_eq!(d.count() as u64, band_count_3(n as u64));
            assert_eq!(d.verify(), Ok(()));
        }
    }

    #[test]
    fn general_agrees_on_three() {
        assert_eq!(pm_decompose_complete_r(7, 3).unwrap(), pm_decompose_complete_3(7).unwrap());
        assert!(pm_decompose_complete_r(5, 2).is_err());
    }

    #[test]
    fn eight_four_replays() {
        let d = pm_decompose_complete_r(8, 4).unwrap();
        assert_eq!(d.host().edge_count(), 70);
        assert!(d.count() as u128 <= band_bound_r(8, 4));
        assert_eq!(d.verify(), Ok(()));
        assert!(d.parts().iter().any(|p| p.provenance == Provenance::Constructive));
    }
}
