use super::affine::{minimal_natural_t, AffineExpr, Condition};
use super::{DecompositionError, Part, Provenance};
use crate::hypergraph::Hypergraph;
use crate::oracle::{singleton_certificate, synthesize_weights, verify_certificate, WeightCertificate};
use crate::rational::{int, zero, Rational};
use num_traits::Zero;
use std::collections::HashMap;

/// Cell `(row, column)` of the layout, both 0-based.
type Cell = (usize, usize);

/// The zigzag traversal: even columns top to bottom, odd columns bottom to
/// top, columns left to right.
fn zigzag(rows: usize, r: usize) -> Vec<Cell> {
    let mut seq = Vec::with_capacity(rows * r);
    for c in 0..r {
        if c % 2 == 0 {
            seq.extend((0..rows).map(|i| (i, c)));
        } else {
            seq.extend((0..rows).rev().map(|i| (i, c)));
        }
    }
    seq
}

/// Linear equations over the cells plus a trailing `t` column.
struct System {
    cols: usize,
    rows: Vec<(Vec<Rational>, Rational)>,
}

impl System {
    fn push(&mut self, terms: &[(usize, i64)], rhs: i64) {
        let mut coef = vec![zero(); self.cols + 1];
        for &(c, k) in terms {
            coef[c] += int(k);
        }
        self.rows.push((coef, int(rhs)));
    }
}

/// The weight equations for a band of `rows >= 2` edges of size `r`.
///
/// Row 1 starts at `t`, pairs its columns `(2,3), (4,5), ..` by equality and
/// sums to 1. Each prefix of a row plus the next `r - k` cells of the zigzag
/// after its successor sums to `-1`, so the corresponding edge is negative.
/// Later rows sum to 1. Odd `r` ties each row's last cell to the previous
/// row; even `r` ties it to the next row.
fn equations(rows: usize, r: usize) -> System {
    let seq = zigzag(rows, r);
    let pos: HashMap<Cell, usize> = seq.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let n = seq.len();
    let mut sys = System { cols: n, rows: Vec::new() };
    // cells after the successor of (l, k) in zigzag order
    let tail = |l: usize, k: usize, len: usize| -> Option<Vec<usize>> {
        let start = pos[&(l, k + 1)] + 1;
        (start + len <= n).then(|| (start..start + len).collect())
    };
    let prefix_plus_tail = |sys: &mut System, l: usize, k: usize| {
        if let Some(t) = tail(l, k, r - (k + 1)) {
            let mut terms: Vec<(usize, i64)> = (0..=k).map(|j| (pos[&(l, j)], 1)).collect();
            terms.extend(t.into_iter().map(|c| (c, 1)));
            sys.push(&terms, -1);
        }
    };

    sys.push(&[(pos[&(0, 0)], 1), (n, -1)], 0);
    let last_pair = if r % 2 == 1 { r - 1 } else { r - 2 };
    for i in (1..=last_pair).step_by(2) {
        if i + 1 >= r {
            break;
        }
        sys.push(&[(pos[&(0, i)], 1), (pos[&(0, i + 1)], -1)], 0);
        prefix_plus_tail(&mut sys, 0, i);
    }
    sys.push(&(0..r).map(|j| (pos[&(0, j)], 1)).collect::<Vec<_>>(), 1);

    for l in 1..rows {
        if r % 2 == 1 {
            let mut terms = vec![(pos[&(l, r - 1)], 1)];
            terms.extend((0..r - 1).map(|j| (pos[&(l - 1, j)], 1)));
            sys.push(&terms, -1);
        }
        for k in 0..r - 1 {
            prefix_plus_tail(&mut sys, l, k);
        }
        sys.push(&(0..r).map(|j| (pos[&(l, j)], 1)).collect::<Vec<_>>(), 1);
    }
    if r % 2 == 0 {
        for m in 0..rows - 1 {
            let mut terms = vec![(pos[&(m, r - 1)], 1)];
            terms.extend((0..r - 1).map(|j| (pos[&(m + 1, j)], 1)));
            sys.push(&terms, -1);
        }
    }
    sys
}

/// Every cell as an affine function of `t` when the equations determine
/// them uniquely and consistently for all `t`; `None` otherwise.
fn solve(mut sys: System) -> Option<Vec<AffineExpr>> {
    let n = sys.cols;
    let m = &mut sys.rows;
    let mut pivot_row = vec![usize::MAX; n];
    let mut next = 0;
    for col in 0..n {
        let p = (next..m.len()).find(|&i| !m[i].0[col].is_zero())?;
        m.swap(next, p);
        let pv = m[next].0[col].clone();
        m[next].0.iter_mut().for_each(|x| *x /= &pv);
        m[next].1 /= &pv;
        let src = m[next].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == next {
                continue;
            }
            if row.0[col].is_zero() {
                continue;
            }
            let f = row.0[col].clone();
            for (x, y) in row.0.iter_mut().zip(&src.0) {
                *x -= &f * y;
            }
            row.1 -= &f * &src.1;
        }
        pivot_row[col] = next;
        next += 1;
    }
    // leftover rows read 0 = rhs - c·t; any nonzero entry pins or breaks t
    if m[next..].iter().any(|(c, rhs)| !c[n].is_zero() || !rhs.is_zero()) {
        return None;
    }
    Some(
        (0..n)
            .map(|c| {
                let (row, rhs) = &m[pivot_row[c]];
                AffineExpr::new(rhs.clone(), -&row[n])
            })
            .collect(),
    )
}

/// `φ` (odd `r`) or `ψ` (even `r`) on a band with `rows >= 2` rows, in
/// layout order, or `None` when the recurrences do not pin every weight.
pub fn phi_psi_affine(rows: usize, r: usize) -> Option<Vec<Vec<AffineExpr>>> {
    assert!(rows >= 2 && r >= 3, "needs at least two rows of size at least 3");
    let seq = zigzag(rows, r);
    let values = solve(equations(rows, r))?;
    let mut out = vec![vec![AffineExpr::zero(); r]; rows];
    for (k, (i, j)) in seq.into_iter().enumerate() {
        out[i][j] = values[k].clone();
    }
    Some(out)
}

/// The stated side conditions: `x12 < 0`, rows non-increasing from the
/// second column of row 1 on, even columns strictly decreasing and odd
/// columns strictly increasing down the rows, `x_{a+1,1} > 0` and
/// `x_{a+1,2} <= 0`.
fn side_conditions(x: &[Vec<AffineExpr>]) -> Vec<Condition> {
    let rows = x.len();
    let r = x[0].len();
    let zero = AffineExpr::zero();
    let mut out = vec![Condition::greater(&zero, &x[0][1])];
    for j in 1..r - 1 {
        out.push(Condition::at_least(&x[0][j], &x[0][j + 1]));
    }
    for l in 1..rows {
        for j in 0..r - 1 {
            out.push(Condition::at_least(&x[l][j], &x[l][j + 1]));
        }
        for j in 0..r {
            out.push(if j % 2 == 0 {
                Condition::greater(&x[l - 1][j], &x[l][j])
            } else {
                Condition::greater(&x[l][j], &x[l - 1][j])
            });
        }
    }
    out.push(Condition::Positive(x[rows - 1][0].clone()));
    out.push(Condition::at_least(&zero, &x[rows - 1][1]));
    out
}

/// Weights for an `r`-uniform band against the edges that remain at its
/// stage. Tries the construction at the minimal natural `t`, then the LP.
pub fn phi_psi_weights(
    part: &Part,
    remaining: &Hypergraph,
    r: usize,
) -> Result<(WeightCertificate, Provenance), DecompositionError> {
    let key = part.key().to_vec();
    if r < 3 || part.edges().iter().any(|e| e.len() != r) {
        return Err(DecompositionError::InvalidParameters(format!(
            "band {key:?} is not a band of {r}-sets"
        )));
    }
    let matching = part.matching();
    let accept = |w: &WeightCertificate| verify_certificate(remaining, &matching, w);
    match part.edges() {
        [] => return Err(DecompositionError::InvalidParameters("empty band".into())),
        [e] => {
            let w = singleton_certificate(e);
            return if accept(&w)? {
                Ok((w, Provenance::Singleton))
            } else {
                Err(DecompositionError::CertificateRejected { key })
            };
        }
        edges => {
            if let Some(x) = phi_psi_affine(edges.len(), r) {
                if let Some(t) = minimal_natural_t(&side_conditions(&x)) {
                    let t = Rational::from_integer(t);
                    let w = WeightCertificate::new(
                        edges
                            .iter()
                            .zip(&x)
                            .flat_map(|(e, row)| e.iter().zip(row.iter().map(|v| v.eval(&t))))
                            .collect(),
                    );
                    if accept(&w)? {
                        return Ok((w, Provenance::Constructive));
                    }
                }
            }
        }
    }
    let scoped = remaining.induced_unchecked(&part.vertex_set());
    match synthesize_weights(&scoped, &matching) {
        Some(w) if accept(&w)? => Ok((w, Provenance::LpFallback)),
        _ => Err(DecompositionError::CertificateUnobtainable { key }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{enumerate_bands_r, stage_remainder};
    use num_traits::Signed;

    #[test]
    fn zigzag_order() {
        assert_eq!(zigzag(2, 3), vec![(0, 0), (1, 0), (1, 1), (0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn first_row_starts_at_t_and_sums_to_one() {
        for (rows, r) in [(2, 4), (3, 4), (2, 5), (3, 6)] {
            let Some(x) = phi_psi_affine(rows, r) else { continue };
            assert_eq!(x[0][0], AffineExpr::t());
            assert_eq!(x[0].iter().sum::<AffineExpr>(), AffineExpr::one());
            for row in &x[1..] {
                assert_eq!(row.iter().sum::<AffineExpr>(), AffineExpr::one());
            }
        }
    }

    #[test]
    fn multi_row_bands_replay() {
        for (n, r) in [(8, 4), (10, 4), (7, 5)] {
            for part in enumerate_bands_r(n, r).unwrap().iter().filter(|p| p.len() >= 2) {
                let rest = stage_remainder(n, r, part);
                let (w, _) = phi_psi_weights(part, &rest, r).unwrap();
                assert_eq!(verify_certificate(&rest, &part.matching(), &w), Ok(true));
            }
        }
    }

    #[test]
    fn two_row_bands_of_ten_four_are_constructive() {
        let bands = enumerate_bands_r(10, 4).unwrap();
        let mut seen = 0;
        for part in bands.iter().filter(|p| p.len() == 2) {
            let rest = stage_remainder(10, 4, part);
            let (w, prov) = phi_psi_weights(part, &rest, 4).unwrap();
            assert_eq!(prov, Provenance::Constructive, "band {:?}", part.key());
            assert!(part.edges().iter().all(|e| w.edge_sum(e).unwrap().is_positive()));
            seen += 1;
        }
        assert!(seen > 0);
    }
}
