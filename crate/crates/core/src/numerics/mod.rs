//! Small dense complex linear algebra, seeded sampling and the scaled
//! exponential integral.

mod expint;
mod gram;
mod matrix;
mod random;

pub use expint::exponential_integral_scaled;
pub use gram::gram_inverse;
pub use matrix::ComplexMatrix;
pub use random::{complex_gaussian_matrix, SimRng};
