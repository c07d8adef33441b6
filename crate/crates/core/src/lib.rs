//! Exact-arithmetic machinery around the Golod-Shafarevich equality for
//! pro-p-groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: rational polynomials, truncated power series and a
//!   Sturm-certified positivity test on the open unit interval.
//! - [`jennings`]: dimension factors `a_n` to the Jennings polynomial and the
//!   filtration dimensions `b_n`, `c_n`.
//! - [`bounds`]: Labute's lower-central formula, dimension factor caps and
//!   abelianization lower bounds.
//! - [`gs_check`]: Golod-Shafarevich inequality checks, Koch's threshold and
//!   the Zassenhaus-type classification.
//! - [`search`]: greedy minimal-order search for Zassenhaus type (3,7) and its
//!   exhaustive oracle.
//! - [`validity`]: the `e_n` recursion, valid sequences and exact evaluation of
//!   both sides of the equality.
//! - [`group_lab`]: explicit finite p-groups, group algebras over `F_p`, Fox
//!   calculus and Jacobian kernels, used as an independent oracle.
//! - [`cli`]: the `gstower` command line front end.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod group_lab;
pub mod gs_check;
pub mod jennings;
pub mod primes;
pub mod search;
pub mod series;
pub mod validity;

pub use error::{Error, Result};
pub use gs_check::{CheckMode, RelationProfile};
pub use jennings::{DimensionSequence, JenningsData};
pub use series::{ExactPoly, PositivityReport, TruncSeries, Verdict, Witness};
