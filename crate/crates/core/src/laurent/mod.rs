//! Laurent polynomials over `Q(q)`, binomial-denominator fractions, theta
//! factors and their one-variable series expansions.

mod fraction;
mod poly;
mod series;

pub use fraction::{frac_product, frac_sum, theta_ratio, BinomialFactor, StructuredFraction};
pub use poly::{LaurentPoly, Monomial, PolyOp};
pub use series::{expand_theta_series, log_theta1_coefficient, series_log, series_mul, Direction, ThetaArg, ThetaFactor};
