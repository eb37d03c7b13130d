//! Spherical buildings, their decomposition posets, and exact integral
//! homology, at a scale where every theorem-shaped statement can be checked
//! element by element.
//!
//! The crate is organized bottom-up:
//!
//! * [`bits`], [`gf`]: bitset and GF(p) linear-algebra plumbing;
//! * [`poset`]: finite posets, order complexes, simplicial complexes;
//! * [`homology`]: sparse integer Smith normal form, reduced homology,
//!   induced maps, sphericity and Cohen-Macaulay tests;
//! * [`coxeter`]: finite Coxeter groups, Coxeter complexes, roots, convex
//!   subcomplexes, Levi spheres;
//! * [`building`]: thin buildings and the flag buildings of GF(p)^n with
//!   their complete apartment systems;
//! * [`decomp`]: the decomposition posets CB, Y, D, OD, PD, OPD, their
//!   vector-space models, and the comparison maps between them;
//! * [`action`]: group actions, orbits, equivariance, fixed points, and the
//!   Steinberg-square bookkeeping;
//! * [`verify`]: the named check suite behind the command-line interface.
//!
//! Each runnable example under `examples/` exercises one capability end to
//! end; `cargo test --workspace` runs the full oracle and acceptance suites.

pub mod action;
pub mod bits;
pub mod building;
pub mod coxeter;
pub mod decomp;
pub mod error;
pub mod gf;
pub mod homology;
pub mod poset;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
