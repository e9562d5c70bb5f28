//! Local ("blip") quantization of the one-dimensional electromagnetic field.
//!
//! Photons carry a direction label `s = ±1` and a polarization `λ ∈ {H, V}`.
//! Each of the four channels holds an amplitude on a periodic lattice that can
//! be viewed in position space (local blip amplitudes) or momentum space
//! (photon amplitudes), related by an `s`-signed Fourier pair.
//!
//! The crate provides
//!
//! * [`lattice`] and [`units`]: the discretization and physical constants,
//! * [`transforms`]: the unitary, direction-aware Fourier pair,
//! * [`states`]: single-excitation wavefunctions and coherent amplitudes,
//! * [`dynamics`]: dispersion-free evolution `e^{-ickt}` and the standard
//!   positive-frequency comparison law `e^{-ic|k|t}`,
//! * [`observables`]: the `√|k|` regularisation, field expectation values,
//!   energy observable and dynamical Hamiltonian,
//! * [`lorentz`]: boosts of photon amplitudes and classical fields,
//! * [`scenarios`]: named, reproducible runs with CSV/JSON output.
//!
//! ```
//! use blipfield::states::gaussian_packet;
//! use blipfield::{evolve, rms_width, Channel, Direction, EvolutionLaw, Lattice, PacketSpec,
//!                 PhysicalConstants, Polarization, StateKind};
//!
//! let lattice = Lattice::new(4096, 200.0)?;
//! let ch = Channel::new(Direction::Right, Polarization::H);
//! let spec = PacketSpec::gaussian(ch, -50.0, 4.0, 10.0);
//! let psi = gaussian_packet(&spec, &lattice, StateKind::SingleExcitation)?;
//! let later = evolve(&psi, 50.0, EvolutionLaw::Blip, &PhysicalConstants::NATURAL);
//! assert!((rms_width(&later, ch)? - rms_width(&psi, ch)?).abs() < 1e-9);
//! # Ok::<(), blipfield::Error>(())
//! ```

pub mod dynamics;
pub mod error;
pub mod lattice;
pub mod lorentz;
pub mod multiplier;
pub mod numfmt;
pub mod observables;
pub mod scenarios;
pub mod states;
pub mod transforms;
pub mod units;

pub use num_complex::Complex64;

pub use dynamics::{evolve, rms_width, shift_oracle, EvolutionLaw};
pub use error::{Error, Result};
pub use lattice::Lattice;
pub use lorentz::{boost_state, doppler_factor, BoostParams};
pub use multiplier::{PhaseGauge, SpectralMultiplier};
pub use observables::{ChannelFields, FieldSettings, FieldSnapshot};
pub use states::{PacketShape, PacketSpec, StateKind, StateVector};
pub use transforms::{ChannelAmplitude, Representation};
pub use units::{Channel, Direction, PhysicalConstants, Polarization};
