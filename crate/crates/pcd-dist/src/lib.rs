//! Densities on a bounded support with cdf, quantile, sampling and exact
//! one-sided derivatives of the pdf at any point.
//!
//! The named models are the ones used to exercise the limit theorems: the
//! uniform law, `x + 1/2`, `|sin 2πx|`, a sine bump with a tail, beta laws and
//! the arcsine law. User-supplied piecewise-polynomial densities load from
//! `{"breakpoints": [...], "pieces": [[c0, c1, ...], ...]}`.

mod error;
mod model;
mod poly;
mod sine;
mod transform;

pub use error::DistError;
pub use model::{named_example_model, numeric_derivative, uniform_model, DistributionModel, NamedExample, Side};
pub use poly::{antiderivative, horner, nth_derivative, PiecewisePolynomialPdf};
pub use sine::{SineD, SineTail};
pub use transform::{image_hull, stochastic_order_condition, transformed_proximity_map_check};
