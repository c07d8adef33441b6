//! Exact univariate polynomial and truncated series arithmetic over the
//! rationals, with a certified positivity test on `(0, 1)`.

mod poly;
mod positivity;
mod trunc;

pub use poly::{eval_rational, poly_mul, ExactPoly};
pub use positivity::{
    positive_on_open_unit_interval, PositivityReport, SturmCertificate, Verdict, Witness,
};
pub use trunc::{series_inverse, TruncSeries};
