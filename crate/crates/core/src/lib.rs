//! Frequency-domain simulator for radiation-pressure entanglement between
//! the vibrational and rotational modes of a cavity end-mirror driven by a
//! Laguerre-Gaussian beam.
//!
//! The pipeline: physical inputs → derived couplings → classical working
//! point (with optical-bistability analysis in fixed-detuning mode) →
//! linearized fluctuation dynamics and stability gate → spectral-density
//! propagation → the EPR-type entanglement measure E(ω) and its parameter
//! studies (temperature surfaces, coupling-imbalance curves, and the
//! wavelength/length coupling tuner).
//!
//! Everything is deterministic and random-free; per-frequency evaluations
//! run concurrently with ordered assembly, so repeated runs are
//! bit-identical.

pub mod config;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod noise;
pub mod oracles;
pub mod output;
pub mod params;
pub mod spectra;
pub mod steady;
pub mod sweeps;

pub use error::{Error, Result, Warning};
pub use params::{derive_params, DerivedParams, DetuningMode, PhysicalParams};
pub use spectra::{entanglement_measure, SpectrumPoint};
