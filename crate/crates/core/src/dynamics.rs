//! Free evolution of amplitudes.
//!
//! The blip law multiplies momentum amplitudes by `e^{-ickt}` with signed `k`,
//! which translates every channel rigidly by `s·c·t`. The standard law uses
//! `e^{-ic|k|t}`; it agrees with the blip law on `k > 0` but disperses any
//! channel whose spectrum straddles `k = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiplier::SpectralMultiplier;
use crate::states::StateVector;
use crate::transforms::{self, ChannelAmplitude, Representation};
use crate::units::{Channel, PhysicalConstants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvolutionLaw {
    /// `ω(k) = ck`.
    #[default]
    Blip,
    /// `ω(k) = c|k|`.
    Standard,
}

impl EvolutionLaw {
    pub fn frequency(self, c: f64, k: f64) -> f64 {
        match self {
            EvolutionLaw::Blip => c * k,
            EvolutionLaw::Standard => c * k.abs(),
        }
    }
}

/// Evolves every channel by `t`, returning the state in its original
/// representation.
pub fn evolve(st: &StateVector, t: f64, law: EvolutionLaw, consts: &PhysicalConstants) -> StateVector {
    if t == 0.0 {
        return st.clone();
    }
    let lattice = st.lattice().clone();
    let propagator = SpectralMultiplier::evolution(&lattice, consts, law, t);
    st.map_channels(|ch, amp| {
        if amp.is_zero() {
            return amp.clone();
        }
        match amp.rep {
            Representation::Momentum => {
                let mut values = amp.values.clone();
                propagator.apply_momentum(&mut values);
                ChannelAmplitude::new(Representation::Momentum, values)
            }
            Representation::Position => {
                let mut values = transforms::forward(&amp.values, ch.s, &lattice);
                propagator.apply_momentum(&mut values);
                ChannelAmplitude::new(Representation::Position, transforms::inverse(&values, ch.s, &lattice))
            }
        }
    })
}

/// Circularly shifts each channel by `s·m` sites: the exact free motion for
/// `t = m·Δx/c`.
pub fn shift_oracle(st: &StateVector, sites: i64) -> Result<StateVector> {
    if st.rep() != Representation::Position {
        return Err(Error::RepresentationMismatch {
            expected: Representation::Position,
            found: st.rep(),
        });
    }
    let n = st.lattice().n() as i64;
    Ok(st.map_channels(|ch, amp| {
        let shift = (ch.s.as_i8() as i64 * sites).rem_euclid(n) as usize;
        let mut values = amp.values.clone();
        values.rotate_right(shift);
        ChannelAmplitude::new(Representation::Position, values)
    }))
}

/// RMS width `√(⟨x²⟩ - ⟨x⟩²)` of `|ψ|²` in one channel.
///
/// Positions are unwrapped around the circular mean so that a packet
/// straddling the periodic boundary is measured as one piece.
pub fn rms_width(st: &StateVector, channel: Channel) -> Result<f64> {
    if st.rep() != Representation::Position {
        return Err(Error::RepresentationMismatch {
            expected: Representation::Position,
            found: st.rep(),
        });
    }
    let lattice = st.lattice();
    let weights: Vec<f64> = st.channel(channel).values.iter().map(|v| v.norm_sqr()).collect();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    let length = lattice.length();
    let half = 0.5 * length;
    let resultant: Complex64 = weights
        .iter()
        .zip(lattice.xs())
        .map(|(w, x)| Complex64::from_polar(*w, 2.0 * PI * x / length))
        .sum();
    let center = resultant.arg() * length / (2.0 * PI);
    let (mut m1, mut m2) = (0.0, 0.0);
    for (w, x) in weights.iter().zip(lattice.xs()) {
        let d = (x - center + half).rem_euclid(length) - half;
        m1 += w * d;
        m2 += w * d * d;
    }
    m1 /= total;
    m2 /= total;
    Ok((m2 - m1 * m1).max(0.0).sqrt())
}
