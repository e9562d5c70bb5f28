//! The direction-aware Fourier pair
//!
//! ```text
//! ψ̃(k_m) = (Δx/√2π) Σ_j e^{-i s k_m x_j} ψ(x_j)
//! ψ(x_j) = (Δk/√2π) Σ_m e^{+i s k_m x_j} ψ̃(k_m)
//! ```
//!
//! Both directions are unitary with respect to the weighted norms
//! `Δx Σ|ψ|²` and `Δk Σ|ψ̃|²`. The `s = -1` transform is the `s = +1`
//! transform read through `k → -k`, which on the lattice is an index
//! reversal that fixes the Nyquist mode.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::units::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Position,
    Momentum,
}

/// Samples of one channel, aligned with [`Lattice::xs`] or [`Lattice::ks`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelAmplitude {
    pub rep: Representation,
    pub values: Vec<Complex64>,
}

impl ChannelAmplitude {
    pub fn new(rep: Representation, values: Vec<Complex64>) -> Self {
        ChannelAmplitude { rep, values }
    }

    pub fn zeros(rep: Representation, n: usize) -> Self {
        ChannelAmplitude {
            rep,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Δx Σ|ψ|²` or `Δk Σ|ψ̃|²`, depending on the representation.
    pub fn norm_squared(&self, lattice: &Lattice) -> f64 {
        weight(self.rep, lattice) * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    /// Converts to `rep`, transforming with direction `s` if needed.
    pub fn into_rep(self, rep: Representation, s: Direction, lattice: &Lattice) -> ChannelAmplitude {
        match (self.rep, rep) {
            (Representation::Position, Representation::Momentum) => {
                ChannelAmplitude::new(rep, forward(&self.values, s, lattice))
            }
            (Representation::Momentum, Representation::Position) => {
                ChannelAmplitude::new(rep, inverse(&self.values, s, lattice))
            }
            _ => self,
        }
    }

    pub(crate) fn check_len(&self, lattice: &Lattice) -> Result<()> {
        if self.values.len() != lattice.n() {
            return Err(Error::LengthMismatch {
                expected: lattice.n(),
                found: self.values.len(),
            });
        }
        Ok(())
    }
}

/// Quadrature weight of a representation.
pub fn weight(rep: Representation, lattice: &Lattice) -> f64 {
    match rep {
        Representation::Position => lattice.dx(),
        Representation::Momentum => lattice.dk(),
    }
}

pub fn to_momentum(psi: &ChannelAmplitude, s: Direction, lattice: &Lattice) -> Result<ChannelAmplitude> {
    expect_rep(psi, Representation::Position)?;
    psi.check_len(lattice)?;
    Ok(ChannelAmplitude::new(
        Representation::Momentum,
        forward(&psi.values, s, lattice),
    ))
}

pub fn to_position(psi: &ChannelAmplitude, s: Direction, lattice: &Lattice) -> Result<ChannelAmplitude> {
    expect_rep(psi, Representation::Momentum)?;
    psi.check_len(lattice)?;
    Ok(ChannelAmplitude::new(
        Representation::Position,
        inverse(&psi.values, s, lattice),
    ))
}

fn expect_rep(psi: &ChannelAmplitude, expected: Representation) -> Result<()> {
    if psi.rep != expected {
        return Err(Error::RepresentationMismatch {
            expected,
            found: psi.rep,
        });
    }
    Ok(())
}

#[inline]
fn parity(m: i64) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Position samples → momentum samples in ascending-k order.
pub(crate) fn forward(values: &[Complex64], s: Direction, lattice: &Lattice) -> Vec<Complex64> {
    let n = lattice.n();
    debug_assert_eq!(values.len(), n);
    let mut buf = values.to_vec();
    lattice.forward_plan().process(&mut buf);
    // e^{-i k_m x_j} = (-1)^m e^{-2πi m j / n} since x_0 = -L/2.
    let scale = lattice.dx() / (2.0 * PI).sqrt();
    let plus: Vec<Complex64> = (0..n)
        .map(|i| {
            let m = lattice.mode(i);
            buf[m.rem_euclid(n as i64) as usize] * (scale * parity(m))
        })
        .collect();
    match s {
        Direction::Right => plus,
        Direction::Left => (0..n).map(|i| plus[lattice.mirror_index(i)]).collect(),
    }
}

/// Momentum samples in ascending-k order → position samples.
pub(crate) fn inverse(values: &[Complex64], s: Direction, lattice: &Lattice) -> Vec<Complex64> {
    let n = lattice.n();
    debug_assert_eq!(values.len(), n);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let src = match s {
            Direction::Right => i,
            Direction::Left => lattice.mirror_index(i),
        };
        let m = lattice.mode(i);
        buf[m.rem_euclid(n as i64) as usize] = values[src] * parity(m);
    }
    lattice.inverse_plan().process(&mut buf);
    let scale = lattice.dk() / (2.0 * PI).sqrt();
    buf.iter_mut().for_each(|v| *v *= scale);
    buf
}

/// Evaluates the momentum amplitude of position samples at arbitrary
/// wavenumbers, `(Δx/√2π) Σ_j e^{-iskx_j} ψ(x_j)`.
///
/// This is the zero-padded (band-limited) interpolant of the lattice
/// spectrum: it agrees with [`to_momentum`] on grid wavenumbers. Cost is
/// `O(n · targets)`.
pub fn momentum_at(position: &[Complex64], s: Direction, lattice: &Lattice, targets: &[f64]) -> Vec<Complex64> {
    let scale = lattice.dx() / (2.0 * PI).sqrt();
    let x0 = lattice.xs()[0];
    let dx = lattice.dx();
    let sign = -s.sign();
    targets
        .par_iter()
        .map(|&k| scale * phase_sum(position, sign * k, x0, dx))
        .collect()
}

/// Evaluates the trigonometric interpolant of momentum samples at arbitrary
/// positions, `(Δk/√2π) Σ_m e^{iskx} ψ̃(k_m)`. The Nyquist sample is
/// ignored so that the interpolant is well defined between sites.
pub fn position_at(momentum: &[Complex64], s: Direction, lattice: &Lattice, targets: &[f64]) -> Vec<Complex64> {
    let scale = lattice.dk() / (2.0 * PI).sqrt();
    let k0 = lattice.ks()[0];
    let dk = lattice.dk();
    let sign = s.sign();
    let mut paired = momentum.to_vec();
    paired[lattice.nyquist_index()] = Complex64::new(0.0, 0.0);
    targets
        .par_iter()
        .map(|&x| scale * phase_sum(&paired, sign * x, k0, dk))
        .collect()
}

/// `Σ_j e^{i w (a + j h)} v_j` with a phase recurrence reseeded every block.
fn phase_sum(values: &[Complex64], w: f64, a: f64, h: f64) -> Complex64 {
    const BLOCK: usize = 128;
    let step = Complex64::from_polar(1.0, w * h);
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, chunk) in values.chunks(BLOCK).enumerate() {
        let mut ph = Complex64::from_polar(1.0, w * (a + (b * BLOCK) as f64 * h));
        for v in chunk {
            acc += v * ph;
            ph *= step;
        }
    }
    acc
}
