//! Free Fock space over the two-letter alphabet {0, 1}, free coherent
//! states, and the 2-adic integers that parametrize them.
//!
//! All scalars are exact rationals, so the identities relating the Fock-space
//! operators, the coherent-state metrics and the 2-adic topology are checked
//! with exact equality rather than floating-point tolerances.
//!
//! - [`fock`]: words, sparse Fock vectors, creation/annihilation operators.
//! - [`coherent`]: eventually periodic index sequences and truncated coherent states.
//! - [`padic`]: fixed-precision 2-adic integers, valuation, metric and balls.
//! - [`metrics`]: the ultrametric ρ, the Hilbert metric τ, the equivalence bounds
//!   and the ball correspondence.
//! - [`pool`]: seeded random generators used by the property sweeps.

pub mod coherent;
pub mod error;
pub mod fock;
pub mod metrics;
pub mod padic;
pub mod pool;
pub mod rational;

pub use coherent::{CoherentTruncation, GammaParams, IndexSequence, DEFAULT_DEPTH};
pub use error::{Error, Result};
pub use fock::{FockVector, Letter, Scalar, Word};
pub use metrics::{CommonPrefix, MetricBoundConstants};
pub use padic::{PadicBall, PadicInt, Valuation, DEFAULT_PRECISION};
