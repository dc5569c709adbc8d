//! Exact symbolic engine for Nambu-Poisson structures on affine algebras.
//!
//! The crate is organized around a sparse super-polynomial arithmetic core
//! ([`poly`]) over which the remaining layers are built:
//!
//! * [`schouten`] — the Schouten bracket on multivector fields and the
//!   Nambu-cohomology differential,
//! * [`nambu`] — construction and verification of Nambu-Poisson brackets
//!   of arity `m >= 2`,
//! * [`ideal`] — a commutative Gröbner engine (membership, normal forms,
//!   lifts), the Z tensors, and graded differential-preimage solves,
//! * [`resolvent`] — Koszul complexes and homology-driven Tate extensions
//!   of semifree dg algebras,
//! * [`perturb`] — the homological-perturbation recursion producing the
//!   higher structure terms and their derived brackets,
//! * [`connection`] — gl_k-valued multivector calculus: Maurer-Cartan
//!   defect and Nambu-connection curvature.
//!
//! All coefficients are exact rationals; every public value is immutable
//! and all operations are deterministic, so outputs are byte-identical
//! across runs and platforms.

pub mod connection;
pub mod fixtures;
pub mod ideal;
pub mod linalg;
pub mod nambu;
pub mod parse;
pub mod perturb;
pub mod poly;
pub mod resolvent;
pub mod sampling;
pub mod schouten;

pub use poly::{InternalGrading, Parity, Rational, SuperMonomial, SuperPolynomial, Variable, VarKind};
