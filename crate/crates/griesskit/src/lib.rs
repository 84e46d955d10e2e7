//! Exact arithmetic over real quadratic number fields, small commutative
//! nonassociative algebras with an invariant bilinear form, and
//! minimal-model bookkeeping for decomposing such algebras into irreducible
//! modules.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactnum`]: field elements `a + b*sqrt(d)`, exact linear algebra,
//!   fixed-point reals, identification of numerics as exact values, and
//!   rational polynomials.
//! - [`griess`]: the dihedral case tables, their construction from bundled
//!   seed data, the verification battery, and the idempotent search.
//! - [`modecalc`]: inner products of weight-four states over a case
//!   table, via closed-form mode reductions.
//! - [`minimal`]: Virasoro minimal models, their Kac tables, quantum
//!   dimensions, and fusion products.
//! - [`decomp`]: decomposition templates, the multiplicity solver over
//!   quantum-dimension balance equations, and the end-to-end verifier.

pub mod decomp;
pub mod exactnum;
pub mod griess;
pub mod minimal;
pub mod modecalc;
