//! Exact Newton-polyhedron computations for mixed polynomials `F(z, z̄)`:
//! supports and face parts, nondegeneracy of face parts, orders of contact
//! along curves, and regular/singular types of model hypersurfaces
//! `Re(w) + F(z, z̄) = 0`.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod contact;
pub mod curves;
pub mod error;
pub mod extended;
pub mod fixtures;
pub mod gaussian;
pub mod hypersurface;
pub mod linalg;
pub mod lp;
pub mod mixedpoly;
pub mod nondegen;
pub mod oracle;
pub mod polyhedron;

pub use curves::{JetCurve, MonomialCurve};
pub use error::{Error, Result};
pub use extended::{Extended, ExtendedNat, ExtendedRat};
pub use gaussian::GaussianRational;
pub use mixedpoly::{parse, parse_auto, MixedPolynomial, Monomial};
pub use polyhedron::{FaceHandle, Polyhedron};
