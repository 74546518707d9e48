//! Half-branch points and exact evaluation of signs and values.
//!
//! A point is `x = σ·t`, `y = φ(t) + s·u` with `0 < u ≪ t ≪ 1`. Writing
//! `t = τ^N` turns every polynomial into a polynomial in `(τ, u)`; its
//! lowest term for the order "`u`-degree first, then `τ`-degree" gives the
//! value `(k, q) = k·Ω + q` and the sign.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, rational_string, ExtValue, Rational, Sign};
use crate::polyring::{resultant_z, Poly2, PuiseuxPoly, RatFunc2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
    On,
}

impl Side {
    fn factor(self) -> i64 {
        match self {
            Side::Above => 1,
            Side::Below => -1,
            Side::On => 0,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Above => "above",
            Side::Below => "below",
            Side::On => "on",
        })
    }
}

/// A half-branch point of the real spectrum.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BranchPoint {
    orient: Sign,
    series: PuiseuxPoly,
    side: Side,
    center: (Rational, Rational),
}

/// Sign of an element at a point together with its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignValue {
    pub sign: Sign,
    pub value: ExtValue,
}

impl SignValue {
    pub fn zero() -> Self {
        SignValue {
            sign: Sign::Zero,
            value: ExtValue::Infinite,
        }
    }
}

/// Lowest term of an element at a point: value and its coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leading {
    pub value: ExtValue,
    pub coeff: Rational,
}

impl Leading {
    pub fn sign_value(&self) -> SignValue {
        SignValue {
            sign: Sign::of(&self.coeff),
            value: self.value.clone(),
        }
    }
}

fn sign_value_of(lead: Option<Leading>) -> SignValue {
    lead.map_or_else(SignValue::zero, |l| l.sign_value())
}

impl BranchPoint {
    pub fn new(orient: Sign, series: PuiseuxPoly, side: Side) -> Result<Self> {
        if orient == Sign::Zero {
            return Err(Error::Input("branch orientation must be + or -".into()));
        }
        Ok(BranchPoint {
            orient,
            series,
            side,
            center: (Rational::zero(), Rational::zero()),
        })
    }

    /// Same branch with its center moved to `(a, b)`.
    pub fn with_center(mut self, a: Rational, b: Rational) -> Self {
        self.center = (a, b);
        self
    }

    pub fn orient(&self) -> Sign {
        self.orient
    }

    pub fn series(&self) -> &PuiseuxPoly {
        &self.series
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn center(&self) -> &(Rational, Rational) {
        &self.center
    }

    pub fn is_origin_centered(&self) -> bool {
        self.center.0.is_zero() && self.center.1.is_zero()
    }

    pub fn ramification(&self) -> u32 {
        self.series.ramification()
    }

    /// Same orientation, series and center; only the side may differ.
    pub fn same_curve_germ(&self, other: &BranchPoint) -> bool {
        self.orient == other.orient && self.series == other.series && self.center == other.center
    }

    /// The point on the branch curve itself.
    pub fn on_curve(&self) -> BranchPoint {
        BranchPoint {
            side: Side::On,
            ..self.clone()
        }
    }

    /// Shifts the center by `(-a, -b)`, as when translating `(a, b)` to the origin.
    pub fn translated(&self, a: &Rational, b: &Rational) -> BranchPoint {
        BranchPoint {
            center: (&self.center.0 - a, &self.center.1 - b),
            ..self.clone()
        }
    }

    /// `f` as a polynomial in `(τ, u)`, stored in the `(x, y)` slots.
    pub fn expand(&self, f: &Poly2) -> Poly2 {
        let f = f.translate(&self.center.0, &self.center.1);
        let n = self.ramification();
        let sigma = Rational::from_integer(self.orient.as_i8().into());
        let px = Poly2::monomial(n, 0, sigma);
        let mut py = Poly2::zero();
        for (e, c) in self.series.integral_terms() {
            py.add_term((e, 0), c);
        }
        py.add_term((0, 1), Rational::from_integer(self.side.factor().into()));
        f.compose(&px, &py)
    }

    /// Lowest term of an expansion produced by [`BranchPoint::expand`].
    pub fn leading_of_expansion(&self, e: &Poly2) -> Option<Leading> {
        let ((i, j), c) = e.terms().min_by(|a, b| (a.0 .1, a.0 .0).cmp(&(b.0 .1, b.0 .0)))?;
        let n = Rational::from_integer(self.ramification().into());
        Some(Leading {
            value: ExtValue::new(i64::from(*j), Rational::from_integer((*i).into()) / n),
            coeff: c.clone(),
        })
    }

    /// Lowest term of a polynomial; `None` on the support.
    pub fn leading(&self, f: &Poly2) -> Option<Leading> {
        self.leading_of_expansion(&self.expand(f))
    }

    pub fn eval_poly(&self, f: &Poly2) -> SignValue {
        sign_value_of(self.leading(f))
    }

    pub fn value(&self, f: &Poly2) -> ExtValue {
        self.eval_poly(f).value
    }

    pub fn sign(&self, f: &Poly2) -> Sign {
        self.eval_poly(f).sign
    }

    /// Lowest term of a rational function; `None` when the numerator vanishes.
    pub fn leading_ratfunc(&self, f: &RatFunc2) -> Result<Option<Leading>> {
        let den = self
            .leading(f.denom())
            .ok_or_else(|| Error::domain("pole along branch"))?;
        let Some(num) = self.leading(f.numer()) else {
            return Ok(None);
        };
        let value = num
            .value
            .checked_sub(&den.value)
            .expect("finite denominator value");
        Ok(Some(Leading {
            value,
            coeff: num.coeff / den.coeff,
        }))
    }

    /// The defining polynomial of the branch curve in ambient coordinates.
    pub fn curve(&self) -> Poly2 {
        let f = curve_equation(&self.series);
        let sigma = Rational::from_integer(self.orient.as_i8().into());
        let px = Poly2::from_terms([((1, 0), sigma.clone()), ((0, 0), -(&sigma * &self.center.0))]);
        let py = Poly2::from_terms([((0, 1), Rational::one()), ((0, 0), -self.center.1.clone())]);
        f.compose(&px, &py).normalized()
    }
}

/// Sign and value of `f` at `α`.
pub fn eval_at_branch(f: &RatFunc2, alpha: &BranchPoint) -> Result<SignValue> {
    Ok(sign_value_of(alpha.leading_ratfunc(f)?))
}

/// Implicit equation of `y = φ(t)`, `x = t`: eliminates `z` from
/// `z^N − x` and `y − φ(z^N)`, normalized to a primitive integer polynomial.
pub fn curve_equation(phi: &PuiseuxPoly) -> Poly2 {
    if phi.is_empty() {
        return Poly2::y();
    }
    let n = phi.ramification() as usize;
    let mut f = vec![Poly2::zero(); n + 1];
    f[0] = -Poly2::x();
    f[n] = Poly2::one();
    let terms = phi.integral_terms();
    let top = terms.last().map_or(0, |t| t.0) as usize;
    let mut g = vec![Poly2::zero(); top + 1];
    g[0] = Poly2::y();
    for (e, c) in terms {
        g[e as usize] -= &Poly2::constant(c);
    }
    resultant_z(&f, &g)
        .expect("z^N - x has positive degree in z")
        .normalized()
}

/// Relative position of the centers of two points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommonCenter {
    Origin,
    Shared {
        #[serde(with = "rational_string")]
        x: Rational,
        #[serde(with = "rational_string")]
        y: Rational,
    },
    Distinct,
}

pub fn common_center(alpha: &BranchPoint, beta: &BranchPoint) -> CommonCenter {
    if alpha.center != beta.center {
        CommonCenter::Distinct
    } else if alpha.is_origin_centered() {
        CommonCenter::Origin
    } else {
        CommonCenter::Shared {
            x: alpha.center.0.clone(),
            y: alpha.center.1.clone(),
        }
    }
}

impl fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.orient, self.series, self.side)?;
        if !self.is_origin_centered() {
            write!(
                f,
                " at ({}, {})",
                format_rational(&self.center.0),
                format_rational(&self.center.1)
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for BranchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BranchPoint{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct RawBranch {
    orient: String,
    series: PuiseuxPoly,
    side: Side,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    center: Option<[String; 2]>,
}

impl Serialize for BranchPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawBranch {
            orient: self.orient.to_string(),
            series: self.series.clone(),
            side: self.side,
            center: (!self.is_origin_centered())
                .then(|| [format_rational(&self.center.0), format_rational(&self.center.1)]),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BranchPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawBranch::deserialize(d)?;
        let orient = match raw.orient.as_str() {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            other => return Err(D::Error::custom(format!("orient must be \"+\" or \"-\", got {other:?}"))),
        };
        let mut b = BranchPoint::new(orient, raw.series, raw.side).map_err(D::Error::custom)?;
        if let Some([cx, cy]) = raw.center {
            let cx = crate::exactnum::parse_rational(&cx).map_err(D::Error::custom)?;
            let cy = crate::exactnum::parse_rational(&cy).map_err(D::Error::custom)?;
            b = b.with_center(cx, cy);
        }
        Ok(b)
    }
}

/// `|c|` helper shared by callers that build multipliers from leading data.
pub(crate) fn abs_ratio(a: &Leading, b: &Leading) -> Rational {
    (&a.coeff / &b.coeff).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::polyring::parse_polynomial;

    fn p(s: &str) -> Poly2 {
        parse_polynomial(s).unwrap()
    }

    fn series(terms: &[(Rational, i64)]) -> PuiseuxPoly {
        PuiseuxPoly::new(terms.iter().map(|(q, c)| (q.clone(), int(*c)))).unwrap()
    }

    fn parabola(side: Side) -> BranchPoint {
        BranchPoint::new(Sign::Positive, series(&[(int(2), 1)]), side).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let a = parabola(Side::Above);
        let sv = a.eval_poly(&p("y - x^2 - 1/2 x^3"));
        assert_eq!(sv, SignValue { sign: Sign::Negative, value: ExtValue::int(3) });
        let sv = a.eval_poly(&p("y - x^2"));
        assert_eq!(sv, SignValue { sign: Sign::Positive, value: ExtValue::new(1, int(0)) });

        let neg = BranchPoint::new(Sign::Negative, series(&[(int(2), 1)]), Side::Above).unwrap();
        assert_eq!(neg.eval_poly(&p("x")), SignValue { sign: Sign::Negative, value: ExtValue::int(1) });

        assert_eq!(parabola(Side::On).eval_poly(&p("y - x^2")), SignValue::zero());
    }

    #[test]
    fn rational_functions() {
        let a = parabola(Side::Above);
        let y2 = RatFunc2::new(p("y - x^2"), p("x^2")).unwrap();
        let sv = eval_at_branch(&y2, &a).unwrap();
        assert_eq!(sv.value, ExtValue::new(1, int(-2)));
        assert_eq!(sv.sign, Sign::Positive);

        let pole = RatFunc2::new(p("x"), p("y - x^2")).unwrap();
        assert!(matches!(
            eval_at_branch(&pole, &parabola(Side::On)),
            Err(Error::Domain(m)) if m == "pole along branch"
        ));
    }

    #[test]
    fn curve_examples() {
        assert_eq!(curve_equation(&series(&[(int(2), 1)])), p("y - x^2"));
        assert_eq!(curve_equation(&series(&[(rat(3, 2), 1)])), p("y^2 - x^3"));
        assert_eq!(curve_equation(&series(&[(int(1), 1), (int(2), 1)])), p("y - x - x^2"));
        assert_eq!(curve_equation(&PuiseuxPoly::empty()), p("y"));
    }

    #[test]
    fn curve_vanishes_along_branch() {
        for (phi, orient) in [
            (series(&[(rat(3, 2), 1), (int(2), -2)]), Sign::Positive),
            (series(&[(rat(5, 3), 2)]), Sign::Negative),
            (series(&[(int(1), 1), (int(3), 4)]), Sign::Negative),
        ] {
            let b = BranchPoint::new(orient, phi, Side::On).unwrap();
            assert!(b.expand(&b.curve()).is_zero(), "{b}");
        }
    }

    #[test]
    fn centers() {
        let a = parabola(Side::Above);
        let moved = parabola(Side::Above).with_center(int(1), int(2));
        assert_eq!(common_center(&a, &a), CommonCenter::Origin);
        assert_eq!(common_center(&a, &moved), CommonCenter::Distinct);
        assert!(matches!(common_center(&moved, &moved), CommonCenter::Shared { .. }));
        // (x - 1)^2 evaluated near (1, 2) is t^2
        assert_eq!(moved.value(&p("x^2 - 2x + 1")), ExtValue::int(2));
        assert_eq!(moved.curve(), p("3 - y - 2x + x^2"));
    }

    #[test]
    fn serde_shape() {
        let b = BranchPoint::new(Sign::Positive, series(&[(rat(3, 2), 1)]), Side::Below).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"orient":"+","series":[{"q":"3/2","c":"1"}],"side":"below"}"#);
        assert_eq!(serde_json::from_str::<BranchPoint>(&s).unwrap(), b);
        let c: BranchPoint = serde_json::from_str(
            r#"{"orient":"-","series":[],"side":"on","center":["1/2","0"]}"#,
        )
        .unwrap();
        assert_eq!(c.center(), &(rat(1, 2), int(0)));
    }

    /// Signs agree with exact evaluation at `τ = 10⁻³`, `u = τ^K`.
    #[test]
    fn hierarchical_epsilon_oracle() {
        let points = [
            parabola(Side::Above),
            parabola(Side::Below),
            BranchPoint::new(Sign::Negative, series(&[(rat(3, 2), 1), (int(2), -1)]), Side::Above).unwrap(),
            BranchPoint::new(Sign::Positive, PuiseuxPoly::empty(), Side::Below).unwrap(),
        ];
        let polys = ["y - x^2 - 1/2 x^3", "x - y", "y^2 - x^3 + x^4", "3 x y - 2 y^2 + x^5", "y - x^2 + x^3 y"];
        for b in &points {
            for s in polys {
                let f = p(s);
                let e = b.expand(&f);
                let k = e.degree_x() + 2;
                let tau = rat(1, 1000);
                let u = num_traits::pow(tau.clone(), k as usize);
                let side = match b.side() {
                    Side::Above => int(1),
                    Side::Below => int(-1),
                    Side::On => int(0),
                };
                let sigma = int(b.orient().as_i8().into());
                let x = sigma * num_traits::pow(tau.clone(), b.ramification() as usize);
                let y = b.series().eval_hat(&tau) + side * u;
                let numeric = f.eval(&x, &y);
                assert_eq!(Sign::of(&numeric), b.sign(&f), "{s} at {b}");
            }
        }
    }
}
