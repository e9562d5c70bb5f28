//! Periodic spatial grid and its dual wavenumber grid.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// `n` sites on `[-L/2, L/2)` with wavenumbers `k_m = 2πm/L`,
/// `m = -n/2 … n/2-1`, stored in ascending order.
///
/// Index `0` of [`Lattice::ks`] is the unpaired Nyquist mode `m = -n/2`;
/// index `n/2` is `k = 0`. Cloning is cheap: grids and FFT plans are shared.
#[derive(Clone)]
pub struct Lattice {
    inner: Arc<Inner>,
}

struct Inner {
    n: usize,
    length: f64,
    dx: f64,
    xs: Vec<f64>,
    ks: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Lattice {
    pub const MIN_SITES: usize = 8;

    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < Self::MIN_SITES {
            return Err(Error::InvalidLattice(format!(
                "need at least {} sites, got {n}",
                Self::MIN_SITES
            )));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidLattice(format!("site count must be even, got {n}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidLattice(format!("length must be positive, got {length}")));
        }
        let dx = length / n as f64;
        let dk = 2.0 * PI / length;
        let half = (n / 2) as i64;
        let xs = (0..n).map(|j| -0.5 * length + j as f64 * dx).collect();
        let ks = (-half..half).map(|m| m as f64 * dk).collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        Ok(Lattice {
            inner: Arc::new(Inner {
                n,
                length,
                dx,
                xs,
                ks,
                forward,
                inverse,
            }),
        })
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn length(&self) -> f64 {
        self.inner.length
    }

    pub fn dx(&self) -> f64 {
        self.inner.dx
    }

    pub fn dk(&self) -> f64 {
        2.0 * PI / self.inner.length
    }

    pub fn xs(&self) -> &[f64] {
        &self.inner.xs
    }

    pub fn ks(&self) -> &[f64] {
        &self.inner.ks
    }

    /// Largest paired wavenumber, `(n/2 - 1)·Δk`.
    pub fn k_max(&self) -> f64 {
        self.inner.ks[self.inner.n - 1]
    }

    /// Index of `k = 0` in [`Lattice::ks`].
    pub fn zero_index(&self) -> usize {
        self.inner.n / 2
    }

    /// Index of the unpaired Nyquist mode in [`Lattice::ks`].
    pub const fn nyquist_index(&self) -> usize {
        0
    }

    /// Index of `-k_m` for the mode at index `i`. The Nyquist mode maps to
    /// itself.
    pub fn mirror_index(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.inner.n - i
        }
    }

    /// Mode number `m` of the wavenumber at index `i`.
    pub fn mode(&self, i: usize) -> i64 {
        i as i64 - (self.inner.n / 2) as i64
    }

    pub(crate) fn forward_plan(&self) -> &dyn Fft<f64> {
        self.inner.forward.as_ref()
    }

    pub(crate) fn inverse_plan(&self) -> &dyn Fft<f64> {
        self.inner.inverse.as_ref()
    }

    /// Two lattices are compatible when they have the same sites and length.
    pub fn same_grid(&self, other: &Lattice) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n == other.inner.n && self.inner.length == other.inner.length)
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.same_grid(other)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("n", &self.inner.n)
            .field("length", &self.inner.length)
            .field("dx", &self.inner.dx)
            .finish()
    }
}
