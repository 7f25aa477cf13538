//! Lovász–Saks–Schrijver ideals `L_H(d)`, generated by
//! `f_e = Σ_{j=1..d} Π_{i∈e} x_ij` over the edges `e` of `H`.
//!
//! Nothing algebraic is computed here. Good forests are classified by
//! degree thresholds, and any presentation can be exported as a script for
//! an external computer-algebra system.

use crate::hypergraph::{good_forest_order, Hypergraph, Vertex};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LssError {
    #[error("d must be at least 1")]
    ZeroDimension,
    #[error("the hypergraph is not a good forest")]
    NotAGoodForest,
    #[error("unknown dialect {0:?}; expected macaulay2, singular or cocoa5")]
    UnknownDialect(String),
}

/// A monomial `Π x_ij`, listed as `(i, j)` pairs in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub vars: Vec<(Vertex, u32)>,
}

/// Generators of `L_H(d)`, one per edge in edge order, each a sum of `d`
/// monomials of degree `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LssPresentation {
    pub n: Vertex,
    pub d: u32,
    pub r: usize,
    pub generators: Vec<Vec<Monomial>>,
}

pub fn lss_generators(h: &Hypergraph, d: u32) -> Result<LssPresentation, LssError> {
    if d == 0 {
        return Err(LssError::ZeroDimension);
    }
    let generators = h
        .edges()
        .iter()
        .map(|e| {
            (1..=d)
                .map(|j| Monomial {
                    vars: e.iter().map(|i| (i, j)).collect(),
                })
                .collect()
        })
        .collect();
    Ok(LssPresentation {
        n: h.n(),
        d,
        r: h.rank(),
        generators,
    })
}

/// What the good-forest theorem says about `L_H(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealClassification {
    pub radical: bool,
    pub complete_intersection: bool,
    /// One-sided: `false` means the theorem gives no guarantee.
    pub prime_guaranteed: bool,
}

/// Radical for all `d`, a complete intersection iff `d >= Δ`, and prime
/// when `d >= Δ + 1`.
pub fn classify_good_forest_ideal(h: &Hypergraph, d: u32) -> Result<IdealClassification, LssError> {
    if d == 0 {
        return Err(LssError::ZeroDimension);
    }
    if h.edge_count() > 64 || good_forest_order(h).is_none() {
        return Err(LssError::NotAGoodForest);
    }
    let delta = h.max_degree();
    let d = d as usize;
    Ok(IdealClassification {
        radical: true,
        complete_intersection: d >= delta,
        prime_guaranteed: d > delta,
    })
}

/// Target syntax for [`export_cas_script`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Macaulay2,
    Singular,
    Cocoa5,
}

impl FromStr for Dialect {
    type Err = LssError;

    fn from_str(s: &str) -> Result<Self, LssError> {
        match s.to_ascii_lowercase().as_str() {
            "macaulay2" | "m2" => Ok(Dialect::Macaulay2),
            "singular" => Ok(Dialect::Singular),
            "cocoa5" | "cocoa" => Ok(Dialect::Cocoa5),
            _ => Err(LssError::UnknownDialect(s.to_string())),
        }
    }
}

fn var(d: Dialect, i: Vertex, j: u32) -> String {
    match d {
        Dialect::Cocoa5 => format!("x[{i},{j}]"),
        _ => format!("x_{i}_{j}"),
    }
}

fn polynomial(d: Dialect, g: &[Monomial]) -> String {
    g.iter()
        .map(|m| {
            m.vars
                .iter()
                .map(|&(i, j)| var(d, i, j))
                .collect::<Vec<_>>()
                .join("*")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A script declaring the ring in the `n·d` variables `x_ij` over the
/// rationals and the ideal `I` of the presentation, followed by radicality
/// and primality queries. Output depends only on the input.
pub fn export_cas_script(p: &LssPresentation, dialect: Dialect) -> String {
    let vars: Vec<String> = (1..=p.n)
        .flat_map(|i| (1..=p.d).map(move |j| (i, j)))
        .map(|(i, j)| var(dialect, i, j))
        .collect();
    let gens: Vec<String> = p.generators.iter().map(|g| polynomial(dialect, g)).collect();
    let mut s = String::new();
    let header = format!("LSS ideal: n={}, d={}, r={}, {} generators", p.n, p.d, p.r, gens.len());
    match dialect {
        Dialect::Macaulay2 => {
            let _ = writeln!(s, "-- {header}");
            let _ = writeln!(s, "R = QQ[{}];", vars.join(", "));
            if gens.is_empty() {
                let _ = writeln!(s, "I = ideal(0_R);");
            } else {
                let _ = writeln!(s, "I = ideal({});", gens.join(", "));
            }
            let _ = writeln!(s, "print(radical I == I);");
            let _ = writeln!(s, "print(isPrime I);");
        }
        Dialect::Singular => {
            let _ = writeln!(s, "// {header}");
            let _ = writeln!(s, "LIB \"primdec.lib\";");
            let _ = writeln!(s, "ring R = 0, ({}), dp;", vars.join(", "));
            if gens.is_empty() {
                let _ = writeln!(s, "ideal I = 0;");
            } else {
                let _ = writeln!(s, "ideal I = {};", gens.join(", "));
            }
            let _ = writeln!(s, "ideal J = std(I);");
            let _ = writeln!(s, "size(reduce(radical(I), J));");
            let _ = writeln!(s, "size(minAssGTZ(I));");
        }
        Dialect::Cocoa5 => {
            let _ = writeln!(s, "-- {header}");
            let _ = writeln!(s, "use R ::= QQ[x[1..{},1..{}]];", p.n, p.d);
            if gens.is_empty() {
                let _ = writeln!(s, "I := ideal(R, []);");
            } else {
                let _ = writeln!(s, "I := ideal({});", gens.join(", "));
            }
            let _ = writeln!(s, "println radical(I) = I;");
            let _ = writeln!(s, "println IsPrime(I);");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(vs: Vec<Vertex>) -> Hypergraph {
        let n = *vs.iter().max().unwrap();
        Hypergraph::new(n, vec![vs]).unwrap()
    }

    #[test]
    fn edge_ideal_case() {
        let p = lss_generators(&edge(vec![1, 2]), 1).unwrap();
        assert_eq!(p.generators, vec![vec![Monomial { vars: vec![(1, 1), (2, 1)] }]]);
        assert_eq!(lss_generators(&edge(vec![1, 2]), 0), Err(LssError::ZeroDimension));
    }

    #[test]
    fn two_term_cubic() {
        let p = lss_generators(&edge(vec![1, 2, 3]), 2).unwrap();
        assert_eq!(
            p.generators[0],
            vec![
                Monomial { vars: vec![(1, 1), (2, 1), (3, 1)] },
                Monomial { vars: vec![(1, 2), (2, 2), (3, 2)] },
            ]
        );
        let m2 = export_cas_script(&p, Dialect::Macaulay2);
        assert!(m2.contains("I = ideal(x_1_1*x_2_1*x_3_1 + x_1_2*x_2_2*x_3_2);"));
        let one = export_cas_script(&lss_generators(&edge(vec![1, 2, 3]), 1).unwrap(), Dialect::Macaulay2);
        assert!(one.contains("I = ideal(x_1_1*x_2_1*x_3_1);"));
        let cocoa = export_cas_script(&p, Dialect::Cocoa5);
        assert!(cocoa.contains("x[1,1]*x[2,1]*x[3,1] + x[1,2]*x[2,2]*x[3,2]"));
        assert_eq!(export_cas_script(&p, Dialect::Singular), export_cas_script(&p, Dialect::Singular));
    }

    #[test]
    fn dialect_names() {
        assert_eq!("M2".parse::<Dialect>(), Ok(Dialect::Macaulay2));
        assert_eq!("Singular".parse::<Dialect>(), Ok(Dialect::Singular));
        assert_eq!("maple".parse::<Dialect>(), Err(LssError::UnknownDialect("maple".into())));
    }

    #[test]
    fn thresholds() {
        let path = Hypergraph::new(7, vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]).unwrap();
        let c = |d| classify_good_forest_ideal(&path, d).unwrap();
        assert_eq!((c(2).radical, c(2).complete_intersection, c(2).prime_guaranteed), (true, true, false));
        assert!(c(3).prime_guaranteed);
        let star = Hypergraph::new(7, vec![vec![1, 2, 3], vec![1, 4, 5], vec![1, 6, 7]]).unwrap();
        let s = classify_good_forest_ideal(&star, 2).unwrap();
        assert!(s.radical && !s.complete_intersection && !s.prime_guaranteed);
        let cycle = crate::hypergraph::loose_cycle(3, 3).unwrap();
        assert_eq!(classify_good_forest_ideal(&cycle, 4), Err(LssError::NotAGoodForest));
    }

    #[test]
    fn json_shape() {
        let p = lss_generators(&edge(vec![1, 2]), 1).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":2,"d":1,"r":2,"generators":[[{"vars":[[1,1],[2,1]]}]]}"#);
        assert_eq!(serde_json::from_str::<LssPresentation>(&s).unwrap(), p);
    }
}
