//! Semi-analytic solvers for the time-fractional Cahn-Hilliard equations:
//! truncated fractional-power series in t built by the New Iterative Method
//! and the q-Homotopy Analysis Method over a uniform spatial grid.

pub mod analysis;
pub mod dd;
pub mod error;
pub mod gamma;
pub mod grid;
pub mod model;
pub mod nim;
pub mod qham;
pub mod reference;
pub mod series;
pub mod stencil;

pub use error::{Result, TfchError};
pub use grid::{CoefField, Grid1D};
pub use model::{Equation, InitialCondition, ProblemSpec};
pub use nim::{nim_components, nim_partial_sum, NimConfig};
pub use qham::{qham_components, qham_partial_sum, QhamConfig};
pub use series::FracSeries;
