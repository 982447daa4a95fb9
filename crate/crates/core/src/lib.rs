//! Evidential reasoning over finite frames with fuzzy focal elements.
//!
//! Evidence is expressed as a basic probability assignment (bpa) whose focal
//! elements may be fuzzy subsets of the frame. Belief and plausibility of a
//! (fuzzy) query set are the lower and upper probabilities admitted by the
//! constraints the bpa imposes on the unknown distribution; they are computed
//! in closed form by decomposing each fuzzy focal into its alpha-level sets,
//! and independently cross-checked by enumerating the extreme points of the
//! underlying allocation polytope ([`oracle`]).
//!
//! The crate also provides induction of bpa's from graded compatibility
//! relations ([`bpa`]), a combination rule that grades conflict by the peak of
//! the min-intersection of focals ([`combine`]), and the older
//! inclusion-measure extensions for comparison ([`legacy`]).

use std::sync::atomic::{AtomicU64, Ordering};

pub mod belief;
pub mod bpa;
pub mod cli;
pub mod combine;
mod error;
pub mod json;
pub mod legacy;
pub mod oracle;
pub mod set;

pub use belief::BeliefInterval;
pub use bpa::{Bpa, CompatibilityRelation, SourceDistribution};
pub use combine::CombinationReport;
pub use error::{Error, Result};
pub use set::{Decomposition, Frame, FuzzySet, Level};

/// Default comparison tolerance for membership grades and masses.
pub const DEFAULT_EPSILON: f64 = 1e-9;

static EPSILON_BITS: AtomicU64 = AtomicU64::new(0);

/// Current global tolerance used by every grade/mass comparison.
pub fn epsilon() -> f64 {
    let bits = EPSILON_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_EPSILON
    } else {
        f64::from_bits(bits)
    }
}

/// Overrides the global tolerance. Intended for experimentation only (the
/// CLI wires this to the `FE_EPSILON` environment variable); library users
/// should normally leave the default in place.
pub fn set_epsilon(eps: f64) -> Result<()> {
    if !eps.is_finite() || eps <= 0.0 || eps >= 0.5 {
        return Err(Error::BadEpsilon(eps));
    }
    EPSILON_BITS.store(eps.to_bits(), Ordering::Relaxed);
    Ok(())
}

pub(crate) fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= epsilon()
}
