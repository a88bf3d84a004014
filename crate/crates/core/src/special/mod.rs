//! Scalar special functions and quadrature shared by the lattice and
//! continuum modules.
//!
//! Everything here is a pure function of its arguments.

pub mod bessel;
pub mod gamma;
pub mod quadrature;
pub mod zeta;

pub use bessel::bessel_j;
pub use gamma::{ln_gamma_ratio, ln_gamma_ratio_shifted, log_gamma};
pub use quadrature::{integrate_even_periodic, GaussLegendre};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_abs};
