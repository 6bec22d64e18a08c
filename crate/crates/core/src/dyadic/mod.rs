//! Exact dyadic arithmetic, rigorous series enclosures and digit rendering.

mod digits;
mod interval;
mod number;
mod series;

pub use digits::{digits, Digits};
pub use interval::{eval_poly_interval, frac_part_interval, DyadicInterval, FracPart};
pub use number::DyadicNumber;
pub use series::{CoeffSpec, Enclosure, ExponentSpec, SeriesSpec, Term};
