//! quotsurf: exact classification of finite-group quotients of products of
//! elliptic curves.
//!
//! The engine represents a surface as a product of two elliptic curves (each
//! a rank-2 lattice with a declared endomorphism ring), acts on it with
//! finite groups of affine automorphisms, decides whether the quotient is
//! smooth, and sorts the smooth quotients into the projective plane, the
//! quadric, split P^1-bundles with torsion twist, symmetric squares of
//! elliptic curves, abelian surfaces, and hyperelliptic surfaces.  All
//! arithmetic is exact rational/integer linear algebra.

pub mod algebra;
pub mod action;
pub mod torus;
pub mod error;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
