//! Bivariate polynomials, rational functions, finite Puiseux polynomials
//! and resultants over `Q`.

mod parse;
mod poly;
mod puiseux;
mod ratfunc;
mod resultant;

pub use parse::parse_polynomial;
pub use poly::{canonical_cmp, Exponent, Poly2};
pub use puiseux::PuiseuxPoly;
pub use ratfunc::{substitute, substitute_ratfunc, RatFunc2};
pub use resultant::{bareiss_det, resultant_z, sylvester};

use crate::exactnum::Rational;

/// `f(x, y)` at a rational point.
pub fn poly_eval(f: &Poly2, x: &Rational, y: &Rational) -> Rational {
    f.eval(x, y)
}

/// Order at the origin; `None` stands for `∞`.
pub fn order_at_origin(f: &Poly2) -> Option<u32> {
    f.order_at_origin()
}
