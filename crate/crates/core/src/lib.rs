//! Exact and numerical tools for umbral moonshine at lambency 2: formal
//! q-series and Jacobi series, the twined mock modular forms, their cusp
//! expansions, exponential sums and Rademacher sums.

pub mod error;
pub mod cusps;
pub mod expsums;
pub mod jacseries;
pub mod matrix;
pub mod mockforms;
pub mod numeric;
pub mod poincare;
pub mod qseries;
pub mod ring;

pub use error::{Error, Result};
pub use matrix::Matrix2;
pub use numeric::{ComplexValue, DoubleDouble, Precision};
pub use qseries::{Exponent, FormalQSeries, QSeries};
pub use ring::{Coeff, Cyclotomic, GaussianRational};
