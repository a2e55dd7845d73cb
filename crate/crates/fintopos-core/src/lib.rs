//! Finite category theory and presheaf topos computations.
//!
//! The crate decides, over presheaf topoi on finite categories, how far the
//! adjoint string of the global sections functor extends, and produces
//! explicit witnesses for every verdict.  Everything is exact and
//! deterministic: sets are finite lists of named elements, functors are
//! tables, and each search enumerates candidates in a fixed order under an
//! explicit node budget.
//!
//! Module map:
//!
//! * [`fincat`]: finite categories, monoids, free path categories, functors,
//!   Cauchy completion, and the freely adjoined initial object.
//! * [`presheaf`]: presheaves on a finite category with limits, colimits,
//!   connected components, the subobject classifier, and hom enumeration.
//! * [`toposcalc`]: the container object, the outer adjoints of the
//!   components/global-sections string, axiom classification, and the
//!   semantic check batteries.
//! * [`family`]: families of presheaves as presheaves on a cone category.
//! * [`sitespace`]: finite Grothendieck sites, finite spaces, and the
//!   corresponding site-level classification.
//!
//! The crate is `no_std` + `alloc`; all types are `Send + Sync` and safe to
//! share behind `Arc` for concurrent read-only use.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod budget;
pub mod check;
pub mod family;
pub mod fincat;
pub mod presheaf;
pub mod sieve;
pub mod sitespace;
pub mod toposcalc;
mod unionfind;

pub use budget::{Budget, SizeGuardExceeded};
pub use check::{Check, CheckStatus};
