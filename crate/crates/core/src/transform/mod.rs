//! Fourier and Mellin transform pairs and wavepacket synthesis.

pub mod cone;
pub mod hyper;
pub mod mellin;
pub mod profile;
pub mod wavepacket;

pub use cone::{apply_kernel, cone_fourier_forward, cone_fourier_inverse, ConeGrid, ConeKernel, ConeOptions, TauMeasure};
pub use hyper::{fourier_hyper_forward, fourier_hyper_inverse, HyperGrid, HyperSamples, InverseMeasure};
pub use mellin::{mellin_forward, mellin_inverse, MellinWindow};
pub use profile::AbsoluteProfile;
pub use wavepacket::{
    wavepacket_ambient, wavepacket_ambient_checked, wavepacket_hyper, HyperCoeffs, QuadStatus, QuadratureGrid, Synthesis,
    WavepacketSpec,
};
