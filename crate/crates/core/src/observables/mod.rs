//! Regularised field observables, the energy observable, and the dynamical
//! Hamiltonian.
//!
//! Measurable fields are built from the regularised amplitudes
//! `R[a](k) = √(2ħ|k|/ε₀cA) e^{iφ(k)} ã(k)`. Quadratic observables are
//! evaluated in normal order; the vacuum term is dropped.

mod fields;
mod kernel;

pub(crate) mod fields_internal {
    pub(crate) use super::fields::real_components;
}

pub use fields::{
    channel_fields, classical_energy, field_expectation, field_expectation_with, maxwell_residual, ChannelFields,
    Component, Differencing, FieldSettings, FieldSnapshot,
};
pub use kernel::{kernel_real_space, Kernel, KernelFit};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::multiplier::{PhaseGauge, SpectralMultiplier};
use crate::states::StateVector;
use crate::transforms::{ChannelAmplitude, Representation};
use crate::units::{Channel, Direction, PhysicalConstants};

/// Applies the regularisation multiplier to one channel.
pub fn apply_regularisation(
    ch: &ChannelAmplitude,
    s: Direction,
    lattice: &Lattice,
    consts: &PhysicalConstants,
    gauge: &PhaseGauge,
) -> Result<ChannelAmplitude> {
    SpectralMultiplier::regularisation(lattice, consts, gauge).apply(ch, s, lattice)
}

/// Normal-ordered energy `Σ_{sλ} (ε₀c²A/2) ‖R[ψ_{sλ}]‖²`, which equals
/// `Σ Δk ħc|k| |ψ̃|²`. Works for single-excitation and coherent states.
pub fn energy_expectation(st: &StateVector, consts: &PhysicalConstants, gauge: &PhaseGauge) -> f64 {
    let momentum = st.to_momentum();
    let lattice = momentum.lattice();
    let r = SpectralMultiplier::regularisation(lattice, consts, gauge);
    let prefactor = 0.5 * consts.eps0 * consts.c * consts.c * consts.area;
    momentum
        .channels()
        .map(|(_, amp)| {
            let mut values = amp.values.clone();
            r.apply_momentum(&mut values);
            values.iter().map(|v| v.norm_sqr()).sum::<f64>()
        })
        .sum::<f64>()
        * lattice.dk()
        * prefactor
}

/// `Σ_{sλ} Δk Σ ħck |ψ̃(k)|²`. Signed.
pub fn hdyn_expectation(st: &StateVector, consts: &PhysicalConstants) -> f64 {
    let momentum = st.to_momentum();
    let h = SpectralMultiplier::hdyn(momentum.lattice(), consts);
    momentum
        .channels()
        .map(|(_, amp)| h.quadratic_form(&amp.values, momentum.lattice()))
        .sum()
}

/// Eigenvalue `nħck` of the `n`-photon state in mode `k`.
pub fn eigenvalue_hdyn(n: i64, k: f64, consts: &PhysicalConstants) -> Result<f64> {
    if n < 0 {
        return Err(Error::NegativeExcitation(n));
    }
    Ok(n as f64 * consts.hbar * consts.c * k)
}

#[derive(Debug, Clone)]
pub struct ChannelSpectrum {
    pub channel: Channel,
    pub k: Vec<f64>,
    /// `ħck` per mode.
    pub hdyn: Vec<f64>,
    /// `ħc|k|` per mode.
    pub henergy: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SingleExcitationSpectra {
    pub channels: Vec<ChannelSpectrum>,
    /// Largest entry of `[H_energy, H_dyn]` on the single-excitation
    /// subspace.
    pub commutator_norm: f64,
}

/// Both Hamiltonians restricted to one excitation are diagonal in
/// `(s, λ, k)`; the spectra are their diagonals.
pub fn single_excitation_spectra(lattice: &Lattice, consts: &PhysicalConstants) -> SingleExcitationSpectra {
    let hd = SpectralMultiplier::hdyn(lattice, consts);
    let he = SpectralMultiplier::henergy(lattice, consts);
    // both are diagonal in the same basis, so the products agree entrywise
    let commutator_norm = hd
        .compose(&he)
        .values()
        .iter()
        .zip(he.compose(&hd).values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    let channels = Channel::ALL
        .iter()
        .map(|&channel| {
            let hdyn: Vec<f64> = hd.values().iter().map(|v| v.re).collect();
            let henergy: Vec<f64> = he.values().iter().map(|v| v.re).collect();
            ChannelSpectrum {
                channel,
                k: lattice.ks().to_vec(),
                hdyn,
                henergy,
            }
        })
        .collect();
    SingleExcitationSpectra {
        channels,
        commutator_norm,
    }
}

/// Largest deviation between applying the regularisation twice and applying
/// the `[A, A†]` kernel `(2ħ/ε₀cA)|k|` once, over seeded random inputs.
pub fn rr_composition_check(lattice: &Lattice, consts: &PhysicalConstants) -> f64 {
    const TRIALS: usize = 4;
    let gauge = PhaseGauge::zero(lattice);
    let r = SpectralMultiplier::regularisation(lattice, consts, &gauge);
    let kernel = SpectralMultiplier::a_commutator(lattice, consts);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b11b);
    let mut worst: f64 = 0.0;
    for _ in 0..TRIALS {
        let values: Vec<Complex64> = (0..lattice.n())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let input = ChannelAmplitude::new(Representation::Position, values);
        for s in Direction::BOTH {
            let twice = r
                .apply(&r.apply(&input, s, lattice).expect("lattice-sized"), s, lattice)
                .expect("lattice-sized");
            let once = kernel.apply(&input, s, lattice).expect("lattice-sized");
            let dev = twice
                .values
                .iter()
                .zip(&once.values)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            worst = worst.max(dev);
        }
    }
    worst
}
