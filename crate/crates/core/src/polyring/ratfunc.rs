use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use super::poly::poly_powers;
use super::Poly2;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Quotient of two bivariate polynomials.
///
/// Kept reduced by monomial content only; a full gcd is never computed.
/// The denominator's first canonical coefficient is normalized to `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc2 {
    num: Poly2,
    den: Poly2,
}

impl RatFunc2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        Ok(RatFunc2::reduce(num, den))
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFunc2 {
            num: p,
            den: Poly2::one(),
        }
    }

    pub fn x() -> Self {
        RatFunc2::from_poly(Poly2::x())
    }

    pub fn y() -> Self {
        RatFunc2::from_poly(Poly2::y())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc2::from_poly(Poly2::constant(c))
    }

    fn reduce(mut num: Poly2, mut den: Poly2) -> Self {
        if num.is_zero() {
            return RatFunc2::from_poly(Poly2::zero());
        }
        let (na, nb) = num.monomial_content();
        let (da, db) = den.monomial_content();
        let (a, b) = (na.min(da), nb.min(db));
        if a > 0 || b > 0 {
            num = num.divide_monomial(a, b);
            den = den.divide_monomial(a, b);
        }
        if !den.is_constant() {
            if let Some(q) = num.div_exact(&den) {
                num = q;
                den = Poly2::one();
            }
        }
        let lead = den.first_coeff().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc2 { num, den }
    }

    pub fn numer(&self) -> &Poly2 {
        &self.num
    }

    pub fn denom(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if any.
    pub fn as_polynomial(&self) -> Option<Poly2> {
        if self.den.is_constant() {
            Some(self.num.scale(&self.den.constant_term().recip()))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<RatFunc2> {
        RatFunc2::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc2) -> Result<RatFunc2> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc2 {
        RatFunc2::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, n: u32) -> RatFunc2 {
        RatFunc2::reduce(self.num.pow(n), self.den.pow(n))
    }

    /// Equality as elements of `Q(x, y)` (cross multiplication).
    pub fn same_function(&self, other: &RatFunc2) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

/// `f(x_expr, y_expr)` as an exact rational function.
///
/// Uses one common denominator `b^dx · d^dy` for `x_expr = a/b`,
/// `y_expr = c/d`, so the result is polynomial whenever both arguments are.
pub fn substitute(f: &Poly2, x_expr: &RatFunc2, y_expr: &RatFunc2) -> RatFunc2 {
    let dx = f.degree_x();
    let dy = f.degree_y();
    let a = poly_powers(&x_expr.num, dx);
    let b = poly_powers(&x_expr.den, dx);
    let c = poly_powers(&y_expr.num, dy);
    let d = poly_powers(&y_expr.den, dy);
    let mut num = Poly2::zero();
    for (&(i, j), coef) in f.terms() {
        let (i, j) = (i as usize, j as usize);
        let t = &(&a[i] * &b[dx as usize - i]) * &(&c[j] * &d[dy as usize - j]);
        num += t.scale(coef);
    }
    let den = &b[dx as usize] * &d[dy as usize];
    RatFunc2::reduce(num, den)
}

/// `g(x_expr, y_expr)` for a rational function `g`.
pub fn substitute_ratfunc(g: &RatFunc2, x_expr: &RatFunc2, y_expr: &RatFunc2) -> Result<RatFunc2> {
    let n = substitute(&g.num, x_expr, y_expr);
    let d = substitute(&g.den, x_expr, y_expr);
    n.checked_div(&d)
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly2::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc2({self})")
    }
}

impl Serialize for RatFunc2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RatFunc2", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RatFunc2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Poly2,
            den: Poly2,
        }
        let raw = Raw::deserialize(d)?;
        RatFunc2::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

impl From<Poly2> for RatFunc2 {
    fn from(p: Poly2) -> Self {
        RatFunc2::from_poly(p)
    }
}

impl Add for &RatFunc2 {
    type Output = RatFunc2;
    fn add(self, rhs: &RatFunc2) -> RatFunc2 {
        if self.den == rhs.den {
            return RatFunc2::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc2::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc2 {
    type Output = RatFunc2;
    fn sub(self, rhs: &RatFunc2) -> RatFunc2 {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        RatFunc2 {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc2 {
    type Output = RatFunc2;
    fn mul(self, rhs: &RatFunc2) -> RatFunc2 {
        RatFunc2::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Zero for RatFunc2 {
    fn zero() -> Self {
        RatFunc2::from_poly(Poly2::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFunc2 {
    type Output = RatFunc2;
    fn add(self, rhs: RatFunc2) -> RatFunc2 {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::polyring::parse_polynomial;

    fn p(s: &str) -> Poly2 {
        parse_polynomial(s).unwrap()
    }

    fn r(n: &str, d: &str) -> RatFunc2 {
        RatFunc2::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn blowup_substitution_examples() {
        let xy = RatFunc2::from_poly(p("xy"));
        assert_eq!(substitute(&p("y"), &RatFunc2::x(), &xy), xy);

        let out = substitute(&p("y - x^2"), &RatFunc2::x(), &RatFunc2::from_poly(p("x^2 y + x^2")));
        assert_eq!(out.as_polynomial(), Some(p("x^2 y")));

        let xe = r("y", "x + 1");
        assert_eq!(substitute(&p("x"), &xe, &RatFunc2::y()), xe);
    }

    #[test]
    fn reduction_strips_monomials_and_divides() {
        let f = r("x^3 y - x^2 y^2", "x^2 y");
        assert_eq!(f, RatFunc2::from_poly(p("x - y")));
        let g = r("y - x^2", "2x^2");
        assert_eq!(g.denom(), &p("x^2"));
        assert!(r("x^2 - y^2", "x - y").is_polynomial());
    }

    #[test]
    fn field_operations() {
        let a = r("y", "x");
        let b = r("x", "y + 1");
        let s = &(&a + &b) - &b;
        assert!(s.same_function(&a));
        let q = (&a * &b).checked_div(&b).unwrap();
        assert!(q.same_function(&a));
        assert!(RatFunc2::zero().recip().is_err());
        assert_eq!(a.scale(&int(0)), RatFunc2::zero());
    }

    #[test]
    fn substitution_of_rational_arguments() {
        // y/x^2 - 1 evaluated on the chart map (X, X^2 (Y + 1)) gives back Y
        let y2 = r("y - x^2", "x^2");
        let back = substitute_ratfunc(
            &y2,
            &RatFunc2::x(),
            &RatFunc2::from_poly(p("x^2 y + x^2")),
        )
        .unwrap();
        assert_eq!(back, RatFunc2::y());
    }
}
