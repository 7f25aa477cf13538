use super::affine::{minimal_natural_t, AffineExpr, Condition};
use super::{DecompositionError, Part, Provenance};
use crate::hypergraph::Hypergraph;
use crate::oracle::{singleton_certificate, verify_certificate, WeightCertificate};
use crate::rational::{frac, int, Rational};
use num_bigint::BigInt;

/// A 3-uniform band certificate with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoCertificate {
    pub certificate: WeightCertificate,
    pub provenance: Provenance,
    /// The chosen parameter; absent for singleton bands.
    pub t: Option<BigInt>,
    /// `ρ(x_ij)` for row `i` and column `j` of the layout; empty for
    /// singleton bands.
    pub affine: Vec<Vec<AffineExpr>>,
}

impl RhoCertificate {
    /// The weights in layout order.
    pub fn evaluated(&self) -> Vec<Vec<Rational>> {
        let Some(t) = &self.t else {
            return Vec::new();
        };
        let t = Rational::from_integer(t.clone());
        self.affine
            .iter()
            .map(|row| row.iter().map(|x| x.eval(&t)).collect())
            .collect()
    }
}

/// The recurrences for `ρ` on a band of `rows >= 2` rows, as affine
/// expressions in `t`:
///
/// `ρ(x11) = t`, `ρ(x12) = ρ(x13) = 1 - t/2`; row 2 from row 1; every later
/// row `i` has `ρ(x_i1) = -(1 + ρ(x_{i-1,2}) + ρ(x_{i-2,2}))`,
/// `ρ(x_i3) = -(1 + ρ(x_{i-1,1}) + ρ(x_{i-1,2}))` and row sum 1.
pub fn rho_affine(rows: usize) -> Vec<Vec<AffineExpr>> {
    assert!(rows >= 2, "the recurrences start from two rows");
    let one = AffineExpr::one();
    let half = AffineExpr::new(int(1), frac(-1, 2));
    let mut r: Vec<Vec<AffineExpr>> = vec![vec![AffineExpr::t(), half.clone(), half]];
    let x21 = -&(&(&one + &r[0][1]) + &r[0][2]);
    let x23 = -&(&(&one + &r[0][0]) + &r[0][1]);
    let x22 = &one - &(&x21 + &x23);
    r.push(vec![x21, x22, x23]);
    for i in 2..rows {
        let xi1 = -&(&(&one + &r[i - 1][1]) + &r[i - 2][1]);
        let xi3 = -&(&(&one + &r[i - 1][0]) + &r[i - 1][1]);
        let xi2 = &one - &(&xi1 + &xi3);
        r.push(vec![xi1, xi2, xi3]);
    }
    r
}

/// Weights for a 3-uniform band against the edges that remain at its stage.
/// Multi-row bands take the minimal natural `t` with
/// `ρ(x_{a+1,1}) > 0` and `ρ(x_{a+1,2}) <= 0`.
pub fn rho_weights(part: &Part, remaining: &Hypergraph) -> Result<RhoCertificate, DecompositionError> {
    let key = part.key().to_vec();
    if part.edges().iter().any(|e| e.len() != 3) {
        return Err(DecompositionError::InvalidParameters(
            "ρ applies to 3-uniform bands only".into(),
        ));
    }
    let out = match part.edges() {
        [] => return Err(DecompositionError::InvalidParameters("empty band".into())),
        [e] => RhoCertificate {
            certificate: singleton_certificate(e),
            provenance: Provenance::Singleton,
            t: None,
            affine: Vec::new(),
        },
        edges => {
            let affine = rho_affine(edges.len());
            let last = &affine[edges.len() - 1];
            let conditions = [
                Condition::Positive(last[0].clone()),
                Condition::NonNegative(-&last[1]),
            ];
            let t = minimal_natural_t(&conditions)
                .ok_or_else(|| DecompositionError::NoAdmissibleT { key: key.clone() })?;
            let tq = Rational::from_integer(t.clone());
            let weights = edges
                .iter()
                .zip(&affine)
                .flat_map(|(e, row)| e.iter().zip(row.iter().map(|x| x.eval(&tq))))
                .collect();
            RhoCertificate {
                certificate: WeightCertificate::new(weights),
                provenance: Provenance::Constructive,
                t: Some(t),
                affine,
            }
        }
    };
    if !verify_certificate(remaining, &part.matching(), &out.certificate)? {
        return Err(DecompositionError::CertificateRejected { key });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{band_edges_3, stage_remainder};
    use crate::hypergraph::Vertex;

    #[test]
    fn band_five_nine_of_six() {
        let part = band_edges_3(6, 5, 9).unwrap();
        let rest = stage_remainder(6, 3, &part);
        let c = rho_weights(&part, &rest).unwrap();
        assert_eq!(c.t, Some(BigInt::from(12)));
        assert_eq!(c.affine[1][0], AffineExpr::new(int(-3), int(1)));
        assert_eq!(c.affine[1][1], AffineExpr::new(int(6), frac(-1, 2)));
        let expect: [(Vertex, i64); 6] = [(1, 12), (4, -5), (5, -5), (2, 9), (3, 0), (6, -8)];
        for (v, w) in expect {
            assert_eq!(c.certificate.weight(v), Some(&int(w)), "vertex {v}");
        }
        let sums: Vec<Rational> = c.evaluated().iter().map(|r| r.iter().sum()).collect();
        assert_eq!(sums, vec![int(2), int(1)]);
    }

    #[test]
    fn first_row_sums_to_two_for_every_t() {
        for rows in 2..8 {
            let r = rho_affine(rows);
            let s: AffineExpr = r[0].iter().sum();
            assert_eq!(s, AffineExpr::constant(int(2)));
            for row in &r[1..] {
                assert_eq!(row.iter().sum::<AffineExpr>(), AffineExpr::one());
            }
        }
    }

    #[test]
    fn singleton_is_all_ones() {
        let part = band_edges_3(4, 3, 5).unwrap();
        let rest = stage_remainder(4, 3, &part);
        let c = rho_weights(&part, &rest).unwrap();
        assert_eq!(c.provenance, Provenance::Singleton);
        assert!(c.certificate.weights().values().all(|w| *w == int(1)));
    }
}
