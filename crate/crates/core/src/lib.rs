//! LOCC and catalytic convertibility of bipartite pure states, given by their
//! Schmidt coefficient vectors.
//!
//! Exact rational arithmetic is the reference mode; every algorithm also runs
//! on `f64` through the [`Scalar`] trait.
//!
//! ```
//! use catalyze_core::{majorization_check, fixtures::six_level_pair};
//!
//! let (psi, phi) = six_level_pair();
//! let report = majorization_check(&psi, &phi);
//! assert!(!report.majorizes);
//! assert_eq!(report.first_violation_k, Some(4));
//! ```

pub mod bounds;
pub mod error;
pub mod fixtures;
pub mod identities;
pub mod io;
pub mod monotones;
pub mod scalar;
pub mod schmidt;
pub mod search;
pub mod symfun;

pub use bounds::{
    dimension_lower_bound, ek_monotonicity_check, prop2_bound, prop2_check, prop3_threshold,
    r_of_chi, DimensionBound, EkMargin, Prop2Check, Prop2Report, Prop3Report, Prop3Status,
};
pub use error::{Error, Result};
pub use monotones::{
    concurrence, concurrence_profile, elocc_feasible, renyi_entropy, Concurrence,
    FeasibilityReport, GridConfig, Order, Verdict,
};
pub use scalar::{Rational, Scalar};
pub use schmidt::{majorization_check, make_schmidt_vector, tensor, MajorizationReport, SchmidtVector};
pub use search::{search_catalyst, verify_catalyst, violation, CatalystCertificate, SearchConfig, SearchOutcome};
