use crate::rational::{ceil, floor, one, zero, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Neg, Sub};

/// `constant + t_coefficient · t` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineExpr {
    #[serde(with = "fraction")]
    pub constant: Rational,
    #[serde(with = "fraction")]
    pub t_coefficient: Rational,
}

impl AffineExpr {
    pub fn new(constant: Rational, t_coefficient: Rational) -> Self {
        AffineExpr {
            constant,
            t_coefficient,
        }
    }

    pub fn constant(c: Rational) -> Self {
        AffineExpr::new(c, zero())
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        AffineExpr::new(zero(), one())
    }

    pub fn zero() -> Self {
        AffineExpr::constant(zero())
    }

    pub fn one() -> Self {
        AffineExpr::constant(one())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.constant + &self.t_coefficient * t
    }
}

impl Add for &AffineExpr {
    type Output = AffineExpr;
    fn add(self, o: &AffineExpr) -> AffineExpr {
        AffineExpr::new(&self.constant + &o.constant, &self.t_coefficient + &o.t_coefficient)
    }
}

impl Sub for &AffineExpr {
    type Output = AffineExpr;
    fn sub(self, o: &AffineExpr) -> AffineExpr {
        AffineExpr::new(&self.constant - &o.constant, &self.t_coefficient - &o.t_coefficient)
    }
}

impl Neg for &AffineExpr {
    type Output = AffineExpr;
    fn neg(self) -> AffineExpr {
        AffineExpr::new(-&self.constant, -&self.t_coefficient)
    }
}

impl<'a> std::iter::Sum<&'a AffineExpr> for AffineExpr {
    fn sum<I: Iterator<Item = &'a AffineExpr>>(iter: I) -> AffineExpr {
        iter.fold(AffineExpr::zero(), |acc, x| &acc + x)
    }
}

/// A sign condition on an affine expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    Positive(AffineExpr),
    NonNegative(AffineExpr),
}

impl Condition {
    /// `a > b`.
    pub fn greater(a: &AffineExpr, b: &AffineExpr) -> Self {
        Condition::Positive(a - b)
    }

    /// `a >= b`.
    pub fn at_least(a: &AffineExpr, b: &AffineExpr) -> Self {
        Condition::NonNegative(a - b)
    }

    pub fn holds(&self, t: &Rational) -> bool {
        match self {
            Condition::Positive(e) => e.eval(t).is_positive(),
            Condition::NonNegative(e) => !e.eval(t).is_negative(),
        }
    }
}

/// Smallest natural `t >= 1` satisfying every condition, or `None` when the
/// admissible set contains no natural number.
pub fn minimal_natural_t(conditions: &[Condition]) -> Option<BigInt> {
    let mut lo = BigInt::from(1);
    let mut hi: Option<BigInt> = None;
    for c in conditions {
        let (e, strict) = match c {
            Condition::Positive(e) => (e, true),
            Condition::NonNegative(e) => (e, false),
        };
        let k = &e.t_coefficient;
        if k.is_zero() {
            let ok = if strict {
                e.constant.is_positive()
            } else {
                !e.constant.is_negative()
            };
            if !ok {
                return None;
            }
            continue;
        }
        // root of constant + k·t
        let b = -&e.constant / k;
        if k.is_positive() {
            let bound = if strict { floor(&b) + 1 } else { ceil(&b) };
            lo = lo.max(bound);
        } else {
            let bound = if strict { ceil(&b) - 1 } else { floor(&b) };
            hi = Some(match hi {
                Some(h) => h.min(bound),
                None => bound,
            });
        }
    }
    match hi {
        Some(h) if h < lo => None,
        _ => {
            debug_assert!(conditions
                .iter()
                .all(|c| c.holds(&Rational::from_integer(lo.clone()))));
            Some(lo)
        }
    }
}

mod fraction {
    use crate::rational::{parse_fraction, to_fraction_string, Rational};
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_fraction(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn evaluation_is_exact() {
        let e = AffineExpr::new(int(6), frac(-1, 2));
        assert_eq!(e.eval(&int(12)), int(0));
        assert_eq!(e.eval(&int(3)), frac(9, 2));
        assert_eq!((&e + &AffineExpr::t()).eval(&int(2)), int(7));
        assert_eq!((-&e).eval(&int(0)), int(-6));
    }

    #[test]
    fn band_five_nine_side_conditions() {
        // t - 3 > 0 and 6 - t/2 <= 0
        let x21 = AffineExpr::new(int(-3), int(1));
        let x22 = AffineExpr::new(int(6), frac(-1, 2));
        let conds = [
            Condition::Positive(x21),
            Condition::NonNegative(-&x22),
        ];
        assert_eq!(minimal_natural_t(&conds), Some(BigInt::from(12)));
    }

    #[test]
    fn empty_and_constant_intervals() {
        let conds = [
            Condition::Positive(AffineExpr::new(int(-5), int(1))),
            Condition::NonNegative(AffineExpr::new(int(4), int(-1))),
        ];
        assert_eq!(minimal_natural_t(&conds), None);
        assert_eq!(minimal_natural_t(&[Condition::Positive(AffineExpr::zero())]), None);
        assert_eq!(
            minimal_natural_t(&[Condition::NonNegative(AffineExpr::zero())]),
            Some(BigInt::from(1))
        );
        // t > 5/2 has minimal natural 3
        let half = [Condition::Positive(AffineExpr::new(frac(-5, 2), int(1)))];
        assert_eq!(minimal_natural_t(&half), Some(BigInt::from(3)));
    }

    #[test]
    fn json_uses_fractions() {
        let e = AffineExpr::new(int(6), frac(-1, 2));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"constant":"6/1","t_coefficient":"-1/2"}"#);
        assert_eq!(serde_json::from_str::<AffineExpr>(&s).unwrap(), e);
    }
}
