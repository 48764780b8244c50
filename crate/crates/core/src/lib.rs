//! Exact and rule-based analysis of the UI dimension of finite set families.
//!
//! A set family `H` over a finite ground set is *d-bounded* when, for every
//! cardinality `j >= 1`, it holds at most `(j+1)^(d-1)` members of size `j`.
//! Its *UI dimension* is the smallest `d` such that every restriction
//! `H ∩ h' = { h ∩ h' : h ∈ H }` is d-bounded. Families with small UI dimension
//! are exactly the supports of random sets whose imbalance under a Bernoulli
//! coloring admits a `d·sqrt(t ln t)` tail bound.
//!
//! The crate is organised as:
//!
//! * [`family`]: ground sets, bitset subsets, families, d-boundedness.
//! * [`dimension`]: brute-force UI and VC dimension.
//! * [`rules`]: random-set expressions and the containment-order, union and
//!   intersection bounding rules, plus support expansion for verification.
//! * [`scenarios`]: geometric constructions (threshold chains, quarter-planes,
//!   half-lines) realised on finite point sets.
//! * [`sampling`]: colorings, adversarial worst-imbalance selection and Monte
//!   Carlo checks of the sampling tail bounds.
//! * [`rademacher`]: exact and Monte Carlo Rademacher complexity and the
//!   Massart, slice and VC comparison bounds.
//! * [`generate`]: seeded random families and expressions for property checks.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is enabled.
//! The `parallel` feature distributes enumeration and trials over rayon;
//! results never depend on the number of worker threads.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod dimension;
pub mod error;
pub mod family;
pub mod generate;
mod par;
pub mod rademacher;
pub mod rules;
pub mod sampling;
pub mod scenarios;

pub use dimension::{DimensionReport, ExactLimits};
pub use error::{Error, ErrorKind, Result};
pub use family::{BoundednessReport, GroundSet, SetFamily, Subset};
pub use rules::{BoundDerivation, FamilyExpr};
pub use sampling::{Coloring, ImbalanceRecord, TrialBatch};
