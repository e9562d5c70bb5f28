//! Operators that are diagonal in wavenumber.

use num_complex::Complex64;

use crate::dynamics::EvolutionLaw;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::transforms::{self, ChannelAmplitude, Representation};
use crate::units::{Direction, PhysicalConstants};

/// A field phase `φ(k)` with `φ(k) = -φ(-k)` on every ±k pair and
/// `φ = 0` on the zero and Nyquist modes.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGauge {
    values: Vec<f64>,
}

impl PhaseGauge {
    const TOL: f64 = 1e-12;

    pub fn zero(lattice: &Lattice) -> Self {
        PhaseGauge {
            values: vec![0.0; lattice.n()],
        }
    }

    /// Validates raw values aligned with [`Lattice::ks`].
    pub fn new(lattice: &Lattice, values: Vec<f64>) -> Result<Self> {
        if values.len() != lattice.n() {
            return Err(Error::LengthMismatch {
                expected: lattice.n(),
                found: values.len(),
            });
        }
        for (i, &v) in values.iter().enumerate() {
            let j = lattice.mirror_index(i);
            let tol = Self::TOL * (1.0 + v.abs());
            let bad = if i == j {
                v.abs() > tol
            } else {
                (v + values[j]).abs() > tol
            };
            if bad || !v.is_finite() {
                return Err(Error::InvalidGauge(format!(
                    "phi({}) = {v}, phi({}) = {}",
                    lattice.ks()[i],
                    lattice.ks()[j],
                    values[j]
                )));
            }
        }
        Ok(PhaseGauge { values })
    }

    /// Antisymmetric part of `f`: `φ(k) = (f(k) - f(-k)) / 2`.
    pub fn from_fn(lattice: &Lattice, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..lattice.n())
            .map(|i| {
                if i == lattice.mirror_index(i) {
                    0.0
                } else {
                    let k = lattice.ks()[i];
                    0.5 * (f(k) - f(-k))
                }
            })
            .collect();
        PhaseGauge { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Symbol of a diagonal-in-k operator sampled on [`Lattice::ks`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMultiplier {
    values: Vec<Complex64>,
}

impl SpectralMultiplier {
    pub fn from_fn(lattice: &Lattice, f: impl Fn(f64) -> Complex64) -> Self {
        SpectralMultiplier {
            values: lattice.ks().iter().map(|&k| f(k)).collect(),
        }
    }

    pub fn from_values(lattice: &Lattice, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != lattice.n() {
            return Err(Error::LengthMismatch {
                expected: lattice.n(),
                found: values.len(),
            });
        }
        Ok(SpectralMultiplier { values })
    }

    /// `r(k) = √(2ħ|k|/ε₀cA) e^{iφ(k)}`.
    pub fn regularisation(lattice: &Lattice, consts: &PhysicalConstants, gauge: &PhaseGauge) -> Self {
        Self::regularisation_with_exponent(lattice, consts, gauge, 0.5)
    }

    /// `√(2ħ/ε₀cA) |k|^p e^{iφ(k)}`. Only `p = 1/2` is physical; other
    /// exponents exist to show that covariance fails without it.
    pub fn regularisation_with_exponent(
        lattice: &Lattice,
        consts: &PhysicalConstants,
        gauge: &PhaseGauge,
        exponent: f64,
    ) -> Self {
        let omega0 = consts.omega0_squared().sqrt();
        let values = lattice
            .ks()
            .iter()
            .zip(gauge.values())
            .map(|(&k, &phi)| {
                let mag = if exponent == 0.5 {
                    k.abs().sqrt()
                } else {
                    k.abs().powf(exponent)
                };
                Complex64::from_polar(omega0 * mag, phi)
            })
            .collect();
        SpectralMultiplier { values }
    }

    /// Dynamical Hamiltonian symbol `ħck`.
    pub fn hdyn(lattice: &Lattice, consts: &PhysicalConstants) -> Self {
        Self::from_fn(lattice, |k| Complex64::new(consts.hbar * consts.c * k, 0.0))
    }

    /// Energy observable symbol `ħc|k|`.
    pub fn henergy(lattice: &Lattice, consts: &PhysicalConstants) -> Self {
        Self::from_fn(lattice, |k| Complex64::new(consts.hbar * consts.c * k.abs(), 0.0))
    }

    /// Kernel of `[A, A†]`: `(2ħ/ε₀cA)|k|`.
    pub fn a_commutator(lattice: &Lattice, consts: &PhysicalConstants) -> Self {
        let scale = consts.omega0_squared();
        Self::from_fn(lattice, |k| Complex64::new(scale * k.abs(), 0.0))
    }

    /// Propagator `e^{-iω(k)t}` of an evolution law.
    pub fn evolution(lattice: &Lattice, consts: &PhysicalConstants, law: EvolutionLaw, t: f64) -> Self {
        Self::from_fn(lattice, |k| Complex64::from_polar(1.0, -law.frequency(consts.c, k) * t))
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Pointwise product, i.e. operator composition.
    pub fn compose(&self, other: &SpectralMultiplier) -> SpectralMultiplier {
        SpectralMultiplier {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    /// Multiplies momentum samples in place.
    pub fn apply_momentum(&self, values: &mut [Complex64]) {
        values.iter_mut().zip(&self.values).for_each(|(v, m)| *v *= m);
    }

    /// Applies the operator to a channel with direction `s`, returning the
    /// result in the input's representation.
    pub fn apply(&self, amp: &ChannelAmplitude, s: Direction, lattice: &Lattice) -> Result<ChannelAmplitude> {
        amp.check_len(lattice)?;
        if self.values.len() != lattice.n() {
            return Err(Error::LatticeMismatch);
        }
        Ok(match amp.rep {
            Representation::Momentum => {
                let mut values = amp.values.clone();
                self.apply_momentum(&mut values);
                ChannelAmplitude::new(Representation::Momentum, values)
            }
            Representation::Position => {
                let mut values = transforms::forward(&amp.values, s, lattice);
                self.apply_momentum(&mut values);
                ChannelAmplitude::new(Representation::Position, transforms::inverse(&values, s, lattice))
            }
        })
    }

    /// `Δk Σ m(k) |ψ̃(k)|²`, the expectation of a real symbol.
    pub fn quadratic_form(&self, momentum: &[Complex64], lattice: &Lattice) -> f64 {
        lattice.dk()
            * momentum
                .iter()
                .zip(&self.values)
                .map(|(v, m)| m.re * v.norm_sqr())
                .sum::<f64>()
    }
}
