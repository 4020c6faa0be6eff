//! q-Mittag-Leffler functions: certified series evaluation, real zeros,
//! Rayleigh sums, Euler–Rayleigh bounds and radii of starlikeness and
//! convexity for the normalizations `f`, `g` and `h`.

pub mod error;
pub mod grid;
#[cfg(test)]
mod invariants;
pub mod mlseries;
pub mod output;
pub mod qcore;
pub mod radii;
pub mod rayleigh;
pub mod roots;
pub mod series;
pub mod sum;
pub mod sweep;
pub mod verify;
pub mod zeros;

pub use error::{QmlError, Result};
pub use mlseries::{
    eval_generic_e, eval_series, series_coefficient, EvalResult, QmlParams, QmlSeries, Reality, SeriesKind,
};
pub use qcore::{q_gamma, q_number, q_pochhammer, q_pochhammer_detailed, q_trig, Order, Pochhammer, QBase, QTrig};
pub use radii::{CircleCheck, NormalizedFamily, Property, RadiusQuery, RadiusResult, RadiusSolver};
pub use rayleigh::{EulerRayleighBounds, NativeQuantity, RayleighKind};
pub use series::{Scaled, Tolerance};
pub use zeros::{find_zeros, ZeroKind, ZeroOptions, ZeroSequence, ZeroSet};
