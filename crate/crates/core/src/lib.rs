//! Harmonic analysis on n-dimensional de Sitter spacetime.
//!
//! de Sitter space is realized as the hyperboloid `x·x = R²` in Minkowski
//! space of one extra dimension. The crate provides
//!
//! - coordinate charts and the cone of null covectors ([`geometry`]),
//! - the defining representation of the Lorentz group and its contraction
//!   to the Poincaré algebra ([`lorentz`]),
//! - log-Gamma, Gauss hypergeometric, Legendre, hyperspherical and Bessel
//!   functions ([`specfun`]),
//! - principal-series plane waves in ambient and hyperbolic form ([`planewave`]),
//! - the Fourier and Mellin transform pairs and wavepacket synthesis ([`transform`]),
//! - numerical checks of the flat limit, fast decrease and the intertwiner
//!   constant ([`limits`]),
//! - the command-line driver behind the `dsh` binary ([`cli`]).
//!
//! ```
//! use ds_harmonic::geometry::{from_horo, HoroChart, SpacetimeConfig};
//!
//! let cfg = SpacetimeConfig::new(4, 2.0).unwrap();
//! let x = from_horo(&cfg, &HoroChart::new(0.3, vec![0.1, -0.2, 0.4], 1)).unwrap();
//! assert!((x.dot(&x) - 4.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod fd;
pub mod geometry;
pub mod limits;
pub mod lorentz;
pub mod planewave;
pub mod quadrature;
pub mod specfun;
pub mod transform;

pub use error::{Error, Result};
pub use num_complex::Complex64;
