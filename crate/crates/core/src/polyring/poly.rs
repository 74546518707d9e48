use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{format_rational, int, Rational};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

/// Sparse bivariate polynomial over `Q`.
///
/// Terms are stored in a map keyed by `(i, j)` (lexicographic, `x` first);
/// zero coefficients are never stored. The serialization order is the
/// canonical one from [`canonical_cmp`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<Exponent, Rational>,
}

/// Canonical term order: ascending total degree, then descending `y` power.
pub fn canonical_cmp(a: &Exponent, b: &Exponent) -> Ordering {
    let key = |e: &Exponent| (e.0 + e.1, Reverse(e.1));
    key(a).cmp(&key(b))
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly2::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Poly2::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Poly2::monomial(0, 1, Rational::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Poly2::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Poly2::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Shorthand for tests and examples: integer coefficients.
    pub fn from_int_terms(terms: &[((u32, u32), i64)]) -> Self {
        Poly2::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// Terms in storage (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical serialization order.
    pub fn canonical_terms(&self) -> Vec<(Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        v
    }

    /// Coefficient of the first term in canonical order.
    pub fn first_coeff(&self) -> Option<&Rational> {
        self.terms
            .iter()
            .min_by(|a, b| canonical_cmp(a.0, b.0))
            .map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    /// Order at the origin, `max{n : f ∈ m^n}`; `None` encodes `∞` for zero.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).min()
    }

    /// Largest monomial `x^a y^b` dividing every term.
    pub fn monomial_content(&self) -> Exponent {
        if self.is_zero() {
            return (0, 0);
        }
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    /// Divides by `x^a y^b`; panics if some term is not divisible.
    pub fn divide_monomial(&self, a: u32, b: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(i >= a && j >= b, "monomial does not divide polynomial");
                    ((i - a, j - b), c.clone())
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, a: u32, b: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut result = Poly2::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let xs = powers(x, self.degree_x());
        let ys = powers(y, self.degree_y());
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (&(i, j), c)| {
                acc + c * &xs[i as usize] * &ys[j as usize]
            })
    }

    /// `f(px, py)` for polynomial arguments.
    pub fn compose(&self, px: &Poly2, py: &Poly2) -> Poly2 {
        let xs = poly_powers(px, self.degree_x());
        let ys = poly_powers(py, self.degree_y());
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            let t = &xs[i as usize] * &ys[j as usize];
            out += t.scale(c);
        }
        out
    }

    pub fn swap_variables(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// `f(x + cx, y + cy)`.
    pub fn translate(&self, cx: &Rational, cy: &Rational) -> Poly2 {
        if cx.is_zero() && cy.is_zero() {
            return self.clone();
        }
        let px = Poly2::x() + Poly2::constant(cx.clone());
        let py = Poly2::y() + Poly2::constant(cy.clone());
        self.compose(&px, &py)
    }

    /// Lexicographically largest exponent (`x` before `y`).
    fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// A single divisor is a Gröbner basis of its ideal, so lexicographic
    /// reduction decides divisibility.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        let (&(di, dj), dc) = d.leading()?;
        let mut rem = self.clone();
        let mut quo = Poly2::zero();
        while let Some((&(ri, rj), rc)) = rem.leading() {
            if ri < di || rj < dj {
                return None;
            }
            let t = Poly2::monomial(ri - di, rj - dj, rc / dc);
            rem -= &(&t * d);
            quo += t;
        }
        Some(quo)
    }

    /// Integer-primitive multiple whose first canonical coefficient is positive.
    pub fn normalized(&self) -> Poly2 {
        if self.is_zero() {
            return Poly2::zero();
        }
        let den_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num_gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &den_lcm / c.denom())));
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.first_coeff().is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Multiple whose first canonical coefficient is `1`.
    pub fn monic(&self) -> Poly2 {
        match self.first_coeff() {
            Some(c) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Poly2::zero(),
        }
    }
}

fn powers(v: &Rational, n: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Rational::one());
    for k in 1..=n as usize {
        let next = &out[k - 1] * v;
        out.push(next);
    }
    out
}

pub(crate) fn poly_powers(p: &Poly2, n: u32) -> Vec<Poly2> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Poly2::one());
    for k in 1..=n as usize {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in self.canonical_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono = monomial_string(i, j);
            if mono.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{} {}", format_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

fn monomial_string(i: u32, j: u32) -> String {
    let mut s = String::new();
    for (var, e) in [('x', i), ('y', j)] {
        match e {
            0 => {}
            1 => s.push(var),
            e => {
                s.push(var);
                s.push('^');
                s.push_str(&e.to_string());
            }
        }
    }
    s
}

impl serde::Serialize for Poly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Poly2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = <String as serde::Deserialize>::deserialize(d)?;
        super::parse_polynomial(&raw).map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for Poly2 {
    fn add_assign(&mut self, rhs: Poly2) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&Poly2> for Poly2 {
    fn sub_assign(&mut self, rhs: &Poly2) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(mut self, rhs: Poly2) -> Poly2 {
        self += rhs;
        self
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(mut self, rhs: Poly2) -> Poly2 {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}
