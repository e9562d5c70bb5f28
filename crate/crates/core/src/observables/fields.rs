use std::io::Write;

use num_complex::Complex64;

use crate::dynamics::{evolve, EvolutionLaw};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::multiplier::{PhaseGauge, SpectralMultiplier};
use crate::numfmt::sci17;
use crate::states::{StateKind, StateVector};
use crate::transforms;
use crate::units::{Channel, Direction, PhysicalConstants, Polarization};

/// How coherent amplitudes are turned into fields.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSettings {
    pub law: EvolutionLaw,
    /// Exponent `p` in `Ω(k) ∝ |k|^p`. Covariant fields need `p = 1/2`.
    pub exponent: f64,
    /// `None` means `φ = 0`.
    pub gauge: Option<PhaseGauge>,
}

impl Default for FieldSettings {
    fn default() -> Self {
        FieldSettings {
            law: EvolutionLaw::Blip,
            exponent: 0.5,
            gauge: None,
        }
    }
}

/// Complex per-channel electric fields `E_{sλ}(x, t) = c R[α_{sλ}](x, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelFields {
    pub t: f64,
    pub lattice: Lattice,
    /// Position samples in [`Channel::ALL`] order.
    pub fields: [Vec<Complex64>; 4],
}

impl ChannelFields {
    pub fn field(&self, channel: Channel) -> &[Complex64] {
        &self.fields[channel.index()]
    }

    /// Assembles `E = Σ_s (E_{sH} ŷ + E_{sV} ẑ)` and
    /// `B = Σ_s (s/c)(−E_{sV} ŷ + E_{sH} ẑ)`.
    pub fn snapshot(&self, consts: &PhysicalConstants) -> FieldSnapshot {
        let n = self.lattice.n();
        let zero = Complex64::new(0.0, 0.0);
        let mut snap = FieldSnapshot {
            t: self.t,
            x: self.lattice.xs().to_vec(),
            ey: vec![zero; n],
            ez: vec![zero; n],
            by: vec![zero; n],
            bz: vec![zero; n],
        };
        for ch in Channel::ALL {
            let f = self.field(ch);
            let b_scale = ch.s.sign() / consts.c;
            match ch.lambda {
                Polarization::H => {
                    for (j, v) in f.iter().enumerate() {
                        snap.ey[j] += v;
                        snap.bz[j] += b_scale * v;
                    }
                }
                Polarization::V => {
                    for (j, v) in f.iter().enumerate() {
                        snap.ez[j] += v;
                        snap.by[j] -= b_scale * v;
                    }
                }
            }
        }
        snap
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Ey,
    Ez,
    By,
    Bz,
}

/// Complex field expectation values at one time. Measurable fields are the
/// real parts.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSnapshot {
    pub t: f64,
    pub x: Vec<f64>,
    pub ey: Vec<Complex64>,
    pub ez: Vec<Complex64>,
    pub by: Vec<Complex64>,
    pub bz: Vec<Complex64>,
}

impl FieldSnapshot {
    pub const CSV_HEADER: [&'static str; 9] = [
        "x", "Re Ey", "Im Ey", "Re Ez", "Im Ez", "Re By", "Im By", "Re Bz", "Im Bz",
    ];

    pub fn component(&self, c: Component) -> &[Complex64] {
        match c {
            Component::Ey => &self.ey,
            Component::Ez => &self.ez,
            Component::By => &self.by,
            Component::Bz => &self.bz,
        }
    }

    pub fn real_part(&self, c: Component) -> Vec<f64> {
        self.component(c).iter().map(|v| v.re).collect()
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(Self::CSV_HEADER)?;
        for j in 0..self.x.len() {
            let row = [
                self.x[j],
                self.ey[j].re,
                self.ey[j].im,
                self.ez[j].re,
                self.ez[j].im,
                self.by[j].re,
                self.by[j].im,
                self.bz[j].re,
                self.bz[j].im,
            ];
            w.write_record(row.iter().map(|v| sci17(*v)))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Per-channel fields of a coherent profile evolved to time `t`.
pub fn channel_fields(
    coh: &StateVector,
    t: f64,
    consts: &PhysicalConstants,
    settings: &FieldSettings,
) -> Result<ChannelFields> {
    if coh.kind() != StateKind::Coherent {
        return Err(Error::KindMismatch(
            "field expectation values need a coherent profile".into(),
        ));
    }
    let lattice = coh.lattice().clone();
    let gauge = settings.gauge.clone().unwrap_or_else(|| PhaseGauge::zero(&lattice));
    let r = SpectralMultiplier::regularisation_with_exponent(&lattice, consts, &gauge, settings.exponent);
    let momentum = evolve(&coh.to_momentum(), t, settings.law, consts);
    let fields = std::array::from_fn(|i| {
        let ch = Channel::ALL[i];
        let amp = momentum.channel(ch);
        if amp.is_zero() {
            return vec![Complex64::new(0.0, 0.0); lattice.n()];
        }
        let mut values = amp.values.clone();
        r.apply_momentum(&mut values);
        let mut out = transforms::inverse(&values, ch.s, &lattice);
        out.iter_mut().for_each(|v| *v *= consts.c);
        out
    });
    Ok(ChannelFields { t, lattice, fields })
}

pub fn field_expectation(coh: &StateVector, t: f64, consts: &PhysicalConstants) -> Result<FieldSnapshot> {
    field_expectation_with(coh, t, consts, &FieldSettings::default())
}

pub fn field_expectation_with(
    coh: &StateVector,
    t: f64,
    consts: &PhysicalConstants,
    settings: &FieldSettings,
) -> Result<FieldSnapshot> {
    Ok(channel_fields(coh, t, consts, settings)?.snapshot(consts))
}

/// Spatial derivative used by [`maxwell_residual`]. Time derivatives are
/// always centered differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Differencing {
    /// `(E_{j+1} − E_{j−1}) / 2Δx`, periodic.
    Centered,
    /// Exact derivative of the band-limited interpolant.
    Spectral,
}

/// RMS over sites of `(∂x + (s/c)∂t) E_{sλ}` at the middle of three equally
/// spaced times.
pub fn maxwell_residual(
    series: [&ChannelFields; 3],
    channel: Channel,
    consts: &PhysicalConstants,
    scheme: Differencing,
) -> Result<f64> {
    let [prev, now, next] = series;
    let lattice = &now.lattice;
    if !prev.lattice.same_grid(lattice) || !next.lattice.same_grid(lattice) {
        return Err(Error::LatticeMismatch);
    }
    let dt = now.t - prev.t;
    let dt2 = next.t - now.t;
    if dt.is_nan() || dt <= 0.0 || (dt2 - dt).abs() > 1e-9 * dt {
        return Err(Error::InvalidTimes(format!(
            "expected equally spaced increasing times, got {}, {}, {}",
            prev.t, now.t, next.t
        )));
    }
    let e = now.field(channel);
    let n = lattice.n();
    let dx_e: Vec<Complex64> = match scheme {
        Differencing::Centered => (0..n)
            .map(|j| (e[(j + 1) % n] - e[(j + n - 1) % n]) / (2.0 * lattice.dx()))
            .collect(),
        Differencing::Spectral => {
            let mut spec = transforms::forward(e, Direction::Right, lattice);
            spec[lattice.nyquist_index()] = Complex64::new(0.0, 0.0);
            for (v, k) in spec.iter_mut().zip(lattice.ks()) {
                *v *= Complex64::new(0.0, *k);
            }
            transforms::inverse(&spec, Direction::Right, lattice)
        }
    };
    let (ep, en) = (prev.field(channel), next.field(channel));
    let coef = channel.s.sign() / consts.c / (2.0 * dt);
    let sum: f64 = (0..n).map(|j| (dx_e[j] + coef * (en[j] - ep[j])).norm_sqr()).sum();
    Ok((sum / n as f64).sqrt())
}

/// Classical energy `(ε₀A/2) ∫ (E² + c²B²) dx` of the real fields.
pub fn classical_energy(snapshot: &FieldSnapshot, lattice: &Lattice, consts: &PhysicalConstants) -> f64 {
    let c2 = consts.c * consts.c;
    let density: f64 = (0..snapshot.x.len())
        .map(|j| {
            snapshot.ey[j].re.powi(2)
                + snapshot.ez[j].re.powi(2)
                + c2 * (snapshot.by[j].re.powi(2) + snapshot.bz[j].re.powi(2))
        })
        .sum();
    0.5 * consts.eps0 * consts.area * lattice.dx() * density
}

/// Position representation of a snapshot's real parts is what detectors see;
/// this helper exposes `Re` of all four components as one flat vector.
pub(crate) fn real_components(snapshot: &FieldSnapshot, c: f64) -> [Vec<f64>; 4] {
    [
        snapshot.real_part(Component::Ey),
        snapshot.real_part(Component::Ez),
        snapshot.by.iter().map(|v| c * v.re).collect(),
        snapshot.bz.iter().map(|v| c * v.re).collect(),
    ]
}
