//! Single-excitation wavefunctions and coherent amplitude profiles.
//!
//! A [`StateVector`] holds one amplitude per channel, all on the same lattice
//! and in the same representation. Single-excitation states are unit
//! normalized; coherent profiles `α_{sλ}` carry arbitrary norm (the mean
//! photon number).
//!
//! Continuum blips are δ-normalized. On the lattice the blip at site `j` is
//! represented by the unit-norm proxy `1/√Δx` at that site, so distinct
//! proxies are Kronecker-orthogonal.

use std::io::Read;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::transforms::{self, weight, ChannelAmplitude, Representation};
use crate::units::Channel;

/// Maximum edge-to-peak amplitude ratio accepted by packet builders.
pub const EDGE_LEAKAGE_LIMIT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    SingleExcitation,
    Coherent,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PacketShape {
    /// `exp(-(x-x₀)²/4σ²)`, so `|ψ|²` has standard deviation `σ`.
    Gaussian,
    /// Flat top on `|x - x₀| ≤ σ`.
    Rectangular,
    /// Raw position samples, one per site. Center and width are ignored.
    Custom(Vec<Complex64>),
}

/// Envelope × carrier `e^{i s k₀ x}` × global phase `e^{iφ}` in one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketSpec {
    pub shape: PacketShape,
    pub center: f64,
    pub width: f64,
    pub carrier: f64,
    pub phase: f64,
    pub channel: Channel,
}

impl PacketSpec {
    pub fn gaussian(channel: Channel, center: f64, width: f64, carrier: f64) -> Self {
        PacketSpec {
            shape: PacketShape::Gaussian,
            center,
            width,
            carrier,
            phase: 0.0,
            channel,
        }
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    fn envelope(&self, lattice: &Lattice) -> Result<Vec<Complex64>> {
        let needs_width = !matches!(self.shape, PacketShape::Custom(_));
        if needs_width && !(self.width.is_finite() && self.width > 0.0) {
            return Err(Error::InvalidPacket(format!(
                "width must be positive, got {}",
                self.width
            )));
        }
        if !(self.center.is_finite() && self.carrier.is_finite() && self.phase.is_finite()) {
            return Err(Error::InvalidPacket("non-finite packet parameter".into()));
        }
        let x0 = self.center;
        let sigma = self.width;
        Ok(match &self.shape {
            PacketShape::Gaussian => lattice
                .xs()
                .iter()
                .map(|x| Complex64::new((-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp(), 0.0))
                .collect(),
            PacketShape::Rectangular => lattice
                .xs()
                .iter()
                .map(|x| Complex64::new(if (x - x0).abs() <= sigma { 1.0 } else { 0.0 }, 0.0))
                .collect(),
            PacketShape::Custom(samples) => {
                if samples.len() != lattice.n() {
                    return Err(Error::LengthMismatch {
                        expected: lattice.n(),
                        found: samples.len(),
                    });
                }
                samples.clone()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    kind: StateKind,
    lattice: Lattice,
    channels: [ChannelAmplitude; 4],
}

impl StateVector {
    /// Channels are given in [`Channel::ALL`] order.
    pub fn new(kind: StateKind, lattice: Lattice, channels: [ChannelAmplitude; 4]) -> Result<Self> {
        let rep = channels[0].rep;
        for amp in &channels {
            amp.check_len(&lattice)?;
            if amp.rep != rep {
                return Err(Error::RepresentationMismatch {
                    expected: rep,
                    found: amp.rep,
                });
            }
        }
        Ok(StateVector {
            kind,
            lattice,
            channels,
        })
    }

    pub fn zeros(kind: StateKind, rep: Representation, lattice: &Lattice) -> Self {
        let n = lattice.n();
        StateVector {
            kind,
            lattice: lattice.clone(),
            channels: std::array::from_fn(|_| ChannelAmplitude::zeros(rep, n)),
        }
    }

    /// A state with `amp` in `channel` and zeros elsewhere.
    pub fn single_channel(kind: StateKind, lattice: &Lattice, channel: Channel, amp: ChannelAmplitude) -> Result<Self> {
        amp.check_len(lattice)?;
        let mut st = Self::zeros(kind, amp.rep, lattice);
        st.channels[channel.index()] = amp;
        Ok(st)
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn rep(&self) -> Representation {
        self.channels[0].rep
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn channel(&self, channel: Channel) -> &ChannelAmplitude {
        &self.channels[channel.index()]
    }

    pub fn channels(&self) -> impl Iterator<Item = (Channel, &ChannelAmplitude)> {
        Channel::ALL.into_iter().zip(self.channels.iter())
    }

    pub fn with_kind(mut self, kind: StateKind) -> Self {
        self.kind = kind;
        self
    }

    /// Applies `f` to every channel. `f` must preserve length and keep all
    /// channels in one representation.
    pub(crate) fn map_channels(&self, mut f: impl FnMut(Channel, &ChannelAmplitude) -> ChannelAmplitude) -> Self {
        let channels = std::array::from_fn(|i| f(Channel::ALL[i], &self.channels[i]));
        StateVector {
            kind: self.kind,
            lattice: self.lattice.clone(),
            channels,
        }
    }

    pub fn to_rep(&self, rep: Representation) -> Self {
        if self.rep() == rep {
            return self.clone();
        }
        self.map_channels(|ch, amp| amp.clone().into_rep(rep, ch.s, &self.lattice))
    }

    pub fn to_momentum(&self) -> Self {
        self.to_rep(Representation::Momentum)
    }

    pub fn to_position(&self) -> Self {
        self.to_rep(Representation::Position)
    }

    /// Total weighted norm over all channels (mean photon number for coherent
    /// profiles).
    pub fn norm_squared(&self) -> f64 {
        self.channels.iter().map(|a| a.norm_squared(&self.lattice)).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        self.map_channels(|_, amp| ChannelAmplitude::new(amp.rep, amp.values.iter().map(|v| v * factor).collect()))
    }

    /// Channel-wise sum. The result takes `self`'s kind and representation.
    pub fn superpose(&self, other: &StateVector) -> Result<Self> {
        if !self.lattice.same_grid(&other.lattice) {
            return Err(Error::LatticeMismatch);
        }
        let other = other.to_rep(self.rep());
        Ok(self.map_channels(|ch, amp| {
            let b = other.channel(ch);
            ChannelAmplitude::new(amp.rep, amp.values.iter().zip(&b.values).map(|(x, y)| x + y).collect())
        }))
    }

    /// Largest sample-wise difference, compared in `self`'s representation.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        if !self.lattice.same_grid(&other.lattice) {
            return Err(Error::LatticeMismatch);
        }
        let other = other.to_rep(self.rep());
        Ok(self
            .channels()
            .flat_map(|(ch, a)| {
                a.values
                    .iter()
                    .zip(&other.channel(ch).values)
                    .map(|(x, y)| (x - y).norm())
            })
            .fold(0.0, f64::max))
    }

    pub(crate) fn normalized(self) -> Result<Self> {
        let norm = self.norm_squared();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex64::new(1.0 / norm.sqrt(), 0.0)))
    }
}

/// Builds a packet in position representation with the Nyquist mode removed
/// and unit norm.
pub fn build_packet(spec: &PacketSpec, lattice: &Lattice, kind: StateKind) -> Result<StateVector> {
    let s = spec.channel.s;
    let mut values = spec.envelope(lattice)?;
    for (v, x) in values.iter_mut().zip(lattice.xs()) {
        *v *= Complex64::from_polar(1.0, s.sign() * spec.carrier * x + spec.phase);
    }

    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::InvalidPacket("packet has no support on the lattice".into()));
    }
    let edge = values[0].norm().max(values[lattice.n() - 1].norm());
    let ratio = edge / peak;
    if ratio >= EDGE_LEAKAGE_LIMIT {
        return Err(Error::EdgeLeakage {
            ratio,
            limit: EDGE_LEAKAGE_LIMIT,
        });
    }

    let mut spectrum = transforms::forward(&values, s, lattice);
    spectrum[lattice.nyquist_index()] = Complex64::new(0.0, 0.0);
    let values = transforms::inverse(&spectrum, s, lattice);

    StateVector::single_channel(
        kind,
        lattice,
        spec.channel,
        ChannelAmplitude::new(Representation::Position, values),
    )?
    .normalized()
    .map_err(|_| Error::InvalidPacket("packet vanishes after removing the Nyquist mode".into()))
}

/// Gaussian packet builder; `spec.shape` is taken as Gaussian.
pub fn gaussian_packet(spec: &PacketSpec, lattice: &Lattice, kind: StateKind) -> Result<StateVector> {
    let spec = PacketSpec {
        shape: PacketShape::Gaussian,
        ..spec.clone()
    };
    build_packet(&spec, lattice, kind)
}

/// Unit-norm lattice stand-in for the blip at site `j`.
pub fn blip_basis_proxy(site: usize, channel: Channel, lattice: &Lattice) -> Result<StateVector> {
    if site >= lattice.n() {
        return Err(Error::IndexOutOfRange {
            index: site,
            n: lattice.n(),
        });
    }
    let mut amp = ChannelAmplitude::zeros(Representation::Position, lattice.n());
    amp.values[site] = Complex64::new(1.0 / lattice.dx().sqrt(), 0.0);
    StateVector::single_channel(StateKind::SingleExcitation, lattice, channel, amp)
}

/// `⟨a|b⟩ = Σ_{sλ} w Σ conj(a) b` with `w = Δx` or `Δk`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    for st in [a, b] {
        if st.kind() != StateKind::SingleExcitation {
            return Err(Error::KindMismatch(
                "inner products are defined for single-excitation states".into(),
            ));
        }
    }
    if a.rep() != b.rep() {
        return Err(Error::RepresentationMismatch {
            expected: a.rep(),
            found: b.rep(),
        });
    }
    if !a.lattice().same_grid(b.lattice()) {
        return Err(Error::LatticeMismatch);
    }
    let w = weight(a.rep(), a.lattice());
    let sum: Complex64 = a
        .channels()
        .map(|(ch, amp)| {
            amp.values
                .iter()
                .zip(&b.channel(ch).values)
                .map(|(x, y)| x.conj() * y)
                .sum::<Complex64>()
        })
        .sum();
    Ok(sum * w)
}

#[derive(Debug, Clone)]
pub struct Projection {
    /// Momentum-representation state with `k ≤ 0` removed, not renormalized.
    pub state: StateVector,
    /// Fraction of the input norm that was removed.
    pub discarded_fraction: f64,
}

/// Keeps only strictly positive wavenumbers in every channel.
pub fn project_positive_wavenumbers(st: &StateVector) -> Projection {
    let momentum = st.to_momentum();
    let lattice = momentum.lattice().clone();
    let before = momentum.norm_squared();
    let state = momentum.map_channels(|_, amp| {
        let values = amp
            .values
            .iter()
            .zip(lattice.ks())
            .map(|(v, &k)| if k > 0.0 { *v } else { Complex64::new(0.0, 0.0) })
            .collect();
        ChannelAmplitude::new(Representation::Momentum, values)
    });
    let after = state.norm_squared();
    let discarded_fraction = if before > 0.0 { (before - after) / before } else { 0.0 };
    Projection {
        state,
        discarded_fraction,
    }
}

/// Reads `re,im` rows. A leading non-numeric row is taken as a header.
pub fn read_samples_csv<R: Read>(reader: R) -> Result<Vec<Complex64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(Error::Config(format!(
                "samples row {} has {} columns, expected 2 (re, im)",
                row + 1,
                record.len()
            )));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(re), Ok(im)) => out.push(Complex64::new(re, im)),
            _ if row == 0 => continue,
            _ => {
                return Err(Error::Config(format!("samples row {} is not numeric", row + 1)));
            }
        }
    }
    Ok(out)
}

pub fn load_samples_csv(path: impl AsRef<Path>) -> Result<Vec<Complex64>> {
    read_samples_csv(std::fs::File::open(path)?)
}
