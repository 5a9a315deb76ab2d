//! Numerical checks of fast decrease, the flat limit and the intertwiner
//! constant.

pub mod appendix;
pub mod decay;
pub mod flat;
pub mod phase;

pub use appendix::{appendix_d_oracle, bessel_product_integral, fourier_identity, OracleReport};
pub use decay::{decay_fit, fit_decay, flat_packet_decay, plane_wave_decay, DecayFit, DecayOptions, DecaySample, DecayStatus, DecayWindow};
pub use flat::{
    casimir_action_limit, casimir_row, flat_limit_box, flat_limit_deviation, gamma_phase_split, off_shell_damping,
    stationary_rapidity, CasimirRow, CasimirScan, DampingRow, FlatScan, GammaSplit, MinkowskiCovector, MinkowskiPoint,
    ResidualFit,
};
pub use phase::{fixed_point_radius_sq, min_gradient_norm, phase, phase_gradient};
