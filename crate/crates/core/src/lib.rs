//! Fractional Laplacian matrices on 1D chains and nD cubic lattices.
//!
//! The fractional Laplacian of order `alpha` is the matrix power
//! `-mu * omega_sq * (2 - D - D^T)^(alpha/2)` of the Born-von-Karman
//! generator. For non-integer `alpha/2` it couples every pair of sites and
//! its off-diagonal elements decay like `|p|^(-alpha-1)` (1D) or
//! `|p|^(-n-alpha)` (nD), which in the continuum limit produces the Riesz
//! fractional-derivative kernel.
//!
//! Every quantity is exposed through at least two independent routes so that
//! the routes can be checked against each other:
//!
//! | quantity | primary route | independent route |
//! |----------|---------------|-------------------|
//! | infinite-chain element | [`lattice1d::element_infinite_closed`] | [`lattice1d::element_infinite_quadrature`] |
//! | periodic-chain element | [`lattice1d::element_periodic_bloch`] | [`lattice1d::element_periodic_images`] |
//! | infinite nD element | [`lattice_nd::element_infinite_nd_bz`] | [`lattice_nd::element_infinite_nd_bessel`] |
//! | periodic Riesz kernel | [`continuum::riesz_kernel_periodic`] (Hurwitz zeta) | direct image sum |
//!
//! The [`verify`] module bundles these comparisons into runnable suites.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod continuum;
pub mod error;
pub mod lattice1d;
pub mod lattice_nd;
pub mod record;
pub mod special;
pub mod verify;

pub use error::{FracError, Result};
pub use lattice1d::{ChainSize, ChainSpec, CirculantMatrix, FractionalOrder};
pub use lattice_nd::{LatticeSizes, LatticeSpec, OffsetVector};
pub use special::quadrature::{QuadratureScheme, QuadratureSpec};
