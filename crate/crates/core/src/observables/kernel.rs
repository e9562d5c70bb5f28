use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::multiplier::{PhaseGauge, SpectralMultiplier};
use crate::transforms;
use crate::units::{Direction, PhysicalConstants};

/// Real-space regularisation kernel `R(u) = ∫ dk/2π √(2ħ|k|/ε₀cA) e^{iku}`
/// on the lattice, sampled at `u_j = x_j`.
///
/// This is the periodic lattice kernel, so `R[a](x_j) = Δx Σ R(x_j − x_j') a(x_j')`
/// holds exactly. The symbol keeps its Nyquist value; without it the sum
/// would carry an alternating `±r(k_N)Δk/2π` component.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub u: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest discarded imaginary part.
    pub imag_residual: f64,
    dx: f64,
    length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelFit {
    pub slope: f64,
    pub intercept: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub points: usize,
}

pub fn kernel_real_space(lattice: &Lattice, consts: &PhysicalConstants) -> Kernel {
    let r = SpectralMultiplier::regularisation(lattice, consts, &PhaseGauge::zero(lattice));
    let raw: Vec<Complex64> = transforms::inverse(r.values(), Direction::Right, lattice);
    let norm = 1.0 / (2.0 * PI).sqrt();
    let imag_residual = raw.iter().map(|v| (v.im * norm).abs()).fold(0.0, f64::max);
    Kernel {
        u: lattice.xs().to_vec(),
        values: raw.iter().map(|v| v.re * norm).collect(),
        imag_residual,
        dx: lattice.dx(),
        length: lattice.length(),
    }
}

impl Kernel {
    /// Index of `u = 0`.
    pub fn origin(&self) -> usize {
        self.u.len() / 2
    }

    /// `R(x_i − x_j)` with the separation wrapped onto the lattice.
    pub fn between(&self, i: usize, j: usize) -> f64 {
        let n = self.u.len();
        self.values[(i + n + n / 2 - j) % n]
    }

    /// Largest `|R(u) − R(−u)|` over paired separations.
    pub fn asymmetry(&self) -> f64 {
        let c = self.origin();
        (1..c)
            .map(|d| (self.values[c + d] - self.values[c - d]).abs())
            .fold(0.0, f64::max)
    }

    /// Largest value away from `u = 0`.
    pub fn max_off_origin(&self) -> f64 {
        let c = self.origin();
        self.values
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != c)
            .map(|(_, v)| *v)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Fit window `[8Δx, L/8]`, clear of lattice-scale and wrap-around
    /// artifacts.
    pub fn default_window(&self) -> (f64, f64) {
        (8.0 * self.dx, self.length / 8.0)
    }

    /// Least-squares fit of `ln|R|` against `ln u` for `u` in the window.
    /// Points are weighted by `Δu/u` so every octave counts equally.
    pub fn fit_tail(&self, u_min: f64, u_max: f64) -> Result<KernelFit> {
        let tol = 1e-9 * self.dx;
        let pts: Vec<(f64, f64, f64)> = self
            .u
            .iter()
            .zip(&self.values)
            .filter(|(u, _)| **u >= u_min - tol && **u <= u_max + tol && **u > 0.0)
            .map(|(u, v)| (u.ln(), v.abs().ln(), self.dx / u))
            .collect();
        if pts.len() < 2 || pts.iter().any(|p| !p.1.is_finite()) {
            return Err(Error::Config(format!(
                "kernel fit window [{u_min}, {u_max}] has too few usable points"
            )));
        }
        let sw: f64 = pts.iter().map(|p| p.2).sum();
        let mx = pts.iter().map(|p| p.2 * p.0).sum::<f64>() / sw;
        let my = pts.iter().map(|p| p.2 * p.1).sum::<f64>() / sw;
        let sxy: f64 = pts.iter().map(|p| p.2 * (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| p.2 * (p.0 - mx).powi(2)).sum();
        let slope = sxy / sxx;
        Ok(KernelFit {
            slope,
            intercept: my - slope * mx,
            u_min,
            u_max,
            points: pts.len(),
        })
    }

    pub fn fit_default_window(&self) -> Result<KernelFit> {
        let (a, b) = self.default_window();
        self.fit_tail(a, b)
    }
}
