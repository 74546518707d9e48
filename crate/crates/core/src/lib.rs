//! Exact computations with half-branch points of the real spectrum of
//! `R[x, y]`.
//!
//! A [`branch::BranchPoint`] is a half-branch `x = ±t`, `y = φ(t) ± u`
//! given by a finite Puiseux polynomial and a side flag. On top of the
//! exact valuation at such points the crate builds quadratic-transform
//! chains, separating ideals, monomial factorizations, connectedness
//! witness sets and sup-inf certificates for piecewise polynomials.

pub mod blowup;
pub mod branch;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod pbcheck;
pub mod polyring;
pub mod sepideal;

pub use error::{Error, Result};
