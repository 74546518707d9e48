use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, rational_string, Rational};

/// Finite Puiseux polynomial `Σ c_k t^{q_k}` with `0 < q_1 < q_2 < ...`.
///
/// The empty polynomial is allowed and stands for `0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxPoly {
    terms: Vec<(Rational, Rational)>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    #[serde(with = "rational_string")]
    q: Rational,
    #[serde(with = "rational_string")]
    c: Rational,
}

impl PuiseuxPoly {
    pub fn empty() -> Self {
        PuiseuxPoly::default()
    }

    /// Builds from `(exponent, coefficient)` pairs in any order.
    ///
    /// Repeated exponents are summed and zero coefficients dropped; a
    /// nonpositive exponent is rejected.
    pub fn new(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (q, c) in terms {
            if !q.is_positive() {
                return Err(Error::Input(format!(
                    "series exponent {} is not positive",
                    format_rational(&q)
                )));
            }
            *map.entry(q).or_insert_with(Rational::zero) += c;
        }
        Ok(PuiseuxPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Single term `c t^q`.
    pub fn monomial(q: Rational, c: Rational) -> Result<Self> {
        PuiseuxPoly::new([(q, c)])
    }

    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ramification index `N`: lcm of the exponent denominators (1 if empty).
    pub fn ramification(&self) -> u32 {
        let n = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (q, _)| acc.lcm(q.denom()));
        n.to_u32().expect("ramification index fits in u32")
    }

    /// Integer exponents `q·N` and coefficients of `φ̂(τ) = φ(τ^N)`.
    pub fn integral_terms(&self) -> Vec<(u32, Rational)> {
        let n = Rational::from_integer(BigInt::from(self.ramification()));
        self.terms
            .iter()
            .map(|(q, c)| {
                let e = (q * &n).to_integer();
                (e.to_u32().expect("exponent fits in u32"), c.clone())
            })
            .collect()
    }

    /// Exact value at `t = s^N` given `s`, i.e. `φ̂(s)`.
    pub fn eval_hat(&self, s: &Rational) -> Rational {
        self.integral_terms()
            .into_iter()
            .fold(Rational::zero(), |acc, (e, c)| acc + c * num_traits::pow(s.clone(), e as usize))
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (q, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{} ", format_rational(&abs))?;
            }
            if q.is_one() {
                f.write_str("t")?;
            } else if q.is_integer() {
                write!(f, "t^{}", q)?;
            } else {
                write!(f, "t^({})", format_rational(q))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PuiseuxPoly({self})")
    }
}

impl Serialize for PuiseuxPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<RawTerm> = self
            .terms
            .iter()
            .map(|(q, c)| RawTerm {
                q: q.clone(),
                c: c.clone(),
            })
            .collect();
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<RawTerm>::deserialize(d)?;
        let mut last: Option<&Rational> = None;
        for t in &raw {
            if last.is_some_and(|l| l >= &t.q) {
                return Err(serde::de::Error::custom("series exponents must be strictly increasing"));
            }
            if t.c.is_zero() {
                return Err(serde::de::Error::custom("series coefficients must be nonzero"));
            }
            last = Some(&t.q);
        }
        PuiseuxPoly::new(raw.into_iter().map(|t| (t.q, t.c))).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn ramification_and_hat() {
        let phi = PuiseuxPoly::new([(rat(3, 2), int(1)), (rat(5, 3), int(2))]).unwrap();
        assert_eq!(phi.ramification(), 6);
        assert_eq!(phi.integral_terms(), vec![(9, int(1)), (10, int(2))]);
        assert_eq!(PuiseuxPoly::empty().ramification(), 1);
    }

    #[test]
    fn serde_round_trip() {
        let phi = PuiseuxPoly::new([(int(2), int(1)), (int(3), rat(-1, 2))]).unwrap();
        let s = serde_json::to_string(&phi).unwrap();
        assert_eq!(s, r#"[{"q":"2","c":"1"},{"q":"3","c":"-1/2"}]"#);
        let back: PuiseuxPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, phi);
        assert!(serde_json::from_str::<PuiseuxPoly>(r#"[{"q":"0","c":"1"}]"#).is_err());
        assert!(serde_json::from_str::<PuiseuxPoly>(r#"[{"q":"2","c":"1"},{"q":"1","c":"1"}]"#).is_err());
    }

    #[test]
    fn display() {
        let phi = PuiseuxPoly::new([(rat(3, 2), int(-1)), (int(1), int(1))]).unwrap();
        assert_eq!(phi.to_string(), "t - t^(3/2)");
    }
}
