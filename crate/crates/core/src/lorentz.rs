//! Boosts along the propagation axis.
//!
//! A boost with velocity `βc` rescales wavenumbers channel by channel,
//! `p = k·D^s` with `D = √((1−β)/(1+β))`, so right-movers are red-shifted for
//! `β > 0` and left-movers blue-shifted. Photon amplitudes pick up the
//! Jacobian `D^{-s/2}`, which keeps `⟨ψ|ψ⟩` invariant; the position profile
//! becomes `D^{s/2} ψ(D^s x)`.
//!
//! Classical transverse fields transform as `E'_s(u') = D^s E_s(D^s u')` in
//! the light-cone variable `u = x − sct`. The two routes agree only when the
//! field normalization grows like `√|k|`; [`covariance_two_path`] measures
//! that agreement.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::observables::fields_internal::real_components;
use crate::observables::{channel_fields, ChannelFields, FieldSettings};
use crate::states::StateVector;
use crate::transforms::{self, ChannelAmplitude, Representation};
use crate::units::{Channel, Direction, PhysicalConstants, Polarization};

/// Norm fraction allowed outside the region that maps safely into the
/// lattice (band edge in k, box edge in x).
pub const ALIASING_TOLERANCE: f64 = 1e-12;

/// Fraction of the band or box treated as safe after rescaling.
const SAFE_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParams {
    beta: f64,
    doppler: f64,
}

impl BoostParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta.abs() < 1.0) {
            return Err(Error::InvalidVelocity(beta));
        }
        Ok(BoostParams {
            beta,
            doppler: ((1.0 - beta) / (1.0 + beta)).sqrt(),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `D(β) = √((1−β)/(1+β))`.
    pub fn doppler(&self) -> f64 {
        self.doppler
    }

    /// `D^s`, the wavenumber scale for direction `s`.
    pub fn factor(&self, s: Direction) -> f64 {
        match s {
            Direction::Right => self.doppler,
            Direction::Left => 1.0 / self.doppler,
        }
    }

    pub fn rapidity(&self) -> f64 {
        self.beta.atanh()
    }

    /// Boost by `self` after `first`: velocities add relativistically.
    pub fn after(&self, first: &BoostParams) -> BoostParams {
        let beta = (self.beta + first.beta) / (1.0 + self.beta * first.beta);
        BoostParams {
            beta,
            doppler: self.doppler * first.doppler,
        }
    }

    pub fn inverse(&self) -> BoostParams {
        BoostParams {
            beta: -self.beta,
            doppler: 1.0 / self.doppler,
        }
    }
}

pub fn doppler_factor(beta: f64, s: Direction) -> Result<f64> {
    Ok(BoostParams::new(beta)?.factor(s))
}

pub fn boost_state(st: &StateVector, beta: f64) -> Result<StateVector> {
    boost_state_with(st, &BoostParams::new(beta)?)
}

/// `ψ̃'(p) = D_s^{-1/2} ψ̃(p / D_s)`, evaluated with the zero-padded spectral
/// interpolant. The Nyquist mode of the result is zero.
pub fn boost_state_with(st: &StateVector, params: &BoostParams) -> Result<StateVector> {
    if params.beta == 0.0 {
        return Ok(st.clone());
    }
    let pos = st.to_position();
    let lattice = pos.lattice().clone();
    let mut channels: [ChannelAmplitude; 4] =
        std::array::from_fn(|_| ChannelAmplitude::zeros(Representation::Momentum, lattice.n()));
    for (ch, amp) in pos.channels() {
        if amp.is_zero() {
            continue;
        }
        let d = params.factor(ch.s);
        check_support(&amp.values, ch.s, &lattice, d, 0.0, ch)?;
        let targets: Vec<f64> = lattice.ks().iter().map(|p| p / d).collect();
        let mut values = transforms::momentum_at(&amp.values, ch.s, &lattice, &targets);
        let jacobian = d.powf(-0.5);
        // the source is band-limited; the DTFT would repeat it beyond the band
        let band = -lattice.ks()[0];
        for (v, k) in values.iter_mut().zip(&targets) {
            *v = if k.abs() < band {
                *v * jacobian
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        values[lattice.nyquist_index()] = Complex64::new(0.0, 0.0);
        channels[ch.index()] = ChannelAmplitude::new(Representation::Momentum, values);
    }
    Ok(StateVector::new(st.kind(), lattice, channels)?.to_rep(st.rep()))
}

/// Rejects inputs whose rescaled image would leave the wavenumber band or
/// the spatial box. `center` is the fixed point of the spatial map.
fn check_support(
    position: &[Complex64],
    s: Direction,
    lattice: &Lattice,
    d: f64,
    center: f64,
    ch: Channel,
) -> Result<()> {
    let total: f64 = position.iter().map(|v| v.norm_sqr()).sum::<f64>() * lattice.dx();
    if total == 0.0 {
        return Ok(());
    }
    let k_limit = SAFE_FRACTION * lattice.k_max() / d;
    let spectrum = transforms::forward(position, s, lattice);
    let outside_k: f64 = spectrum
        .iter()
        .zip(lattice.ks())
        .filter(|(_, k)| k.abs() > k_limit)
        .map(|(v, _)| v.norm_sqr())
        .sum::<f64>()
        * lattice.dk();
    if outside_k > ALIASING_TOLERANCE * total {
        return Err(Error::AliasingRisk(format!(
            "channel {ch}: {:.3e} of the norm lies beyond |k| = {k_limit:.4} and would leave the band",
            outside_k / total
        )));
    }
    let x_limit = SAFE_FRACTION * 0.5 * lattice.length();
    let outside_x: f64 = position
        .iter()
        .zip(lattice.xs())
        .filter(|(_, x)| ((*x - center) / d + center).abs() > x_limit)
        .map(|(v, _)| v.norm_sqr())
        .sum::<f64>()
        * lattice.dx();
    if outside_x > ALIASING_TOLERANCE * total {
        return Err(Error::AliasingRisk(format!(
            "channel {ch}: {:.3e} of the norm would be mapped outside the box",
            outside_x / total
        )));
    }
    Ok(())
}

/// Boosts per-channel classical fields at their snapshot time `t`:
/// `E'_s(x) = D_s E_s(D_s (x − sct) + sct)`.
pub fn boost_channel_fields(fields: &ChannelFields, beta: f64, consts: &PhysicalConstants) -> Result<ChannelFields> {
    let params = BoostParams::new(beta)?;
    if beta == 0.0 {
        return Ok(fields.clone());
    }
    for ch in Channel::ALL {
        let e = fields.field(ch);
        if e.iter().any(|v| v.norm_sqr() > 0.0) {
            let shift = ch.s.sign() * consts.c * fields.t;
            check_support(e, Direction::Right, &fields.lattice, params.factor(ch.s), shift, ch)?;
        }
    }
    Ok(resample_channel_fields(fields, &params, consts))
}

/// The field map without support checks; periodic profiles come back
/// exactly when the rescaled profile is still periodic on the box.
fn resample_channel_fields(fields: &ChannelFields, params: &BoostParams, consts: &PhysicalConstants) -> ChannelFields {
    let lattice = &fields.lattice;
    let mut out = fields.clone();
    for ch in Channel::ALL {
        let e = fields.field(ch);
        if e.iter().all(|v| v.norm_sqr() == 0.0) {
            continue;
        }
        let d = params.factor(ch.s);
        let shift = ch.s.sign() * consts.c * fields.t;
        let spectrum = transforms::forward(e, Direction::Right, lattice);
        let targets: Vec<f64> = lattice.xs().iter().map(|x| d * (x - shift) + shift).collect();
        let mut values = transforms::position_at(&spectrum, Direction::Right, lattice, &targets);
        values.iter_mut().for_each(|v| *v *= d);
        out.fields[ch.index()] = values;
    }
    out
}

pub fn boost_classical_fields(
    fields: &ChannelFields,
    beta: f64,
    consts: &PhysicalConstants,
) -> Result<crate::observables::FieldSnapshot> {
    Ok(boost_channel_fields(fields, beta, consts)?.snapshot(consts))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceReport {
    /// Largest difference between the two routes over `Re E` and `c Re B`.
    pub max_abs: f64,
    /// Largest `|Re E|` or `c|Re B|` of the classically boosted field.
    pub peak_field: f64,
    pub relative: f64,
}

/// Compares boosting amplitudes then computing fields against computing
/// fields then boosting them classically, at `t = 0`.
pub fn covariance_two_path(coh: &StateVector, beta: f64, consts: &PhysicalConstants) -> Result<CovarianceReport> {
    covariance_two_path_with(coh, beta, 0.0, consts, &FieldSettings::default())
}

pub fn covariance_two_path_with(
    coh: &StateVector,
    beta: f64,
    t: f64,
    consts: &PhysicalConstants,
    settings: &FieldSettings,
) -> Result<CovarianceReport> {
    let boosted = boost_state(coh, beta)?;
    let path_a = channel_fields(&boosted, t, consts, settings)?.snapshot(consts);
    let path_b = boost_classical_fields(&channel_fields(coh, t, consts, settings)?, beta, consts)?;
    let a = real_components(&path_a, consts.c);
    let b = real_components(&path_b, consts.c);
    let mut max_abs: f64 = 0.0;
    let mut peak_field: f64 = 0.0;
    for (ca, cb) in a.iter().zip(&b) {
        for (x, y) in ca.iter().zip(cb) {
            max_abs = max_abs.max((x - y).abs());
            peak_field = peak_field.max(y.abs());
        }
    }
    let relative = if peak_field > 0.0 {
        max_abs / peak_field
    } else {
        max_abs
    };
    Ok(CovarianceReport {
        max_abs,
        peak_field,
        relative,
    })
}

/// Spatial translation by `shift`: a pure phase `e^{-iskΔ}` per mode.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn translate(st: &StateVector, shift: f64) -> StateVector {
    let momentum = st.to_momentum();
    let lattice = momentum.lattice().clone();
    momentum
        .map_channels(|ch, amp| {
            let values = amp
                .values
                .iter()
                .zip(lattice.ks())
                .map(|(v, k)| v * Complex64::from_polar(1.0, -ch.s.sign() * k * shift))
                .collect();
            ChannelAmplitude::new(Representation::Momentum, values)
        })
        .to_rep(st.rep())
}

/// Rotation of the transverse polarization about the propagation axis.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn rotate_polarization(st: &StateVector, angle: f64) -> StateVector {
    let (sin, cos) = angle.sin_cos();
    st.map_channels(|ch, amp| {
        let other = match ch.lambda {
            Polarization::H => Channel::new(ch.s, Polarization::V),
            Polarization::V => Channel::new(ch.s, Polarization::H),
        };
        // H' = cos H + sin V, V' = cos V − sin H
        let mix = if ch.lambda == Polarization::H { sin } else { -sin };
        let values = amp
            .values
            .iter()
            .zip(&st.channel(other).values)
            .map(|(x, y)| x * cos + y * mix)
            .collect();
        ChannelAmplitude::new(amp.rep, values)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::shift_oracle;
    use crate::states::{gaussian_packet, inner_product, PacketSpec, StateKind};

    const NAT: PhysicalConstants = PhysicalConstants::NATURAL;
    const RH: Channel = Channel::new(Direction::Right, Polarization::H);
    const LV: Channel = Channel::new(Direction::Left, Polarization::V);

    fn lattice() -> Lattice {
        Lattice::new(2048, 200.0).unwrap()
    }

    #[test]
    fn doppler_values() {
        for s in Direction::BOTH {
            assert_eq!(doppler_factor(0.0, s).unwrap(), 1.0);
        }
        assert!((doppler_factor(0.6, Direction::Right).unwrap() - 0.5).abs() < 1e-15);
        assert!((doppler_factor(0.6, Direction::Left).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(
            doppler_factor(1.0, Direction::Right),
            Err(Error::InvalidVelocity(_))
        ));
        assert!(doppler_factor(-1.5, Direction::Left).is_err());
        let b = BoostParams::new(0.3).unwrap();
        let m = BoostParams::new(-0.3).unwrap();
        assert!((b.doppler() * m.doppler() - 1.0).abs() < 1e-15);
        assert!(b.doppler() > 0.0);
    }

    #[test]
    fn composition_adds_rapidities() {
        let a = BoostParams::new(0.3).unwrap();
        let b = BoostParams::new(0.5).unwrap();
        let ab = a.after(&b);
        assert!((ab.rapidity() - a.rapidity() - b.rapidity()).abs() < 1e-14);
        assert!((BoostParams::new(ab.beta()).unwrap().doppler() - ab.doppler()).abs() < 1e-14);
        assert!((a.after(&a.inverse()).beta()).abs() < 1e-15);
    }

    #[test]
    fn zero_boost_is_identity() {
        let lat = lattice();
        let g = gaussian_packet(
            &PacketSpec::gaussian(RH, 5.0, 4.0, 2.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        assert_eq!(boost_state(&g, 0.0).unwrap(), g);
        assert!(boost_state(&g, 1.0).is_err());
    }

    #[test]
    fn spike_is_doppler_shifted() {
        // a narrow spectral line at k = 4 moves to p = 2 for β = 0.6
        let lat = Lattice::new(4096, 400.0).unwrap();
        let g = gaussian_packet(
            &PacketSpec::gaussian(RH, 0.0, 12.0, 4.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let b = boost_state(&g, 0.6).unwrap().to_momentum();
        let amp = &b.channel(RH).values;
        let w: f64 = amp.iter().map(|v| v.norm_sqr()).sum();
        let mean: f64 = amp.iter().zip(lat.ks()).map(|(v, k)| v.norm_sqr() * k).sum::<f64>() / w;
        assert!((mean - 2.0).abs() < 1e-9, "{mean}");
        assert!((b.norm_squared() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn norm_is_invariant() {
        let lat = lattice();
        let a = gaussian_packet(
            &PacketSpec::gaussian(RH, -5.0, 4.0, 3.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let b = gaussian_packet(
            &PacketSpec::gaussian(LV, 8.0, 3.0, -2.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let st = a.superpose(&b).unwrap().scaled(Complex64::new(0.5f64.sqrt(), 0.0));
        for beta in [-0.6, -0.3, 0.3, 0.6] {
            let out = boost_state(&st, beta).unwrap();
            assert!((out.norm_squared() - st.norm_squared()).abs() < 1e-6, "{beta}");
            assert_eq!(out.rep(), Representation::Position);
        }
    }

    #[test]
    fn position_profile_is_rescaled() {
        let lat = lattice();
        let g = gaussian_packet(
            &PacketSpec::gaussian(LV, 6.0, 3.0, 1.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let beta = 0.3;
        let d = doppler_factor(beta, Direction::Left).unwrap();
        let out = boost_state(&g, beta).unwrap();
        let src = &g.channel(LV).values;
        // ψ'(x) = D^{1/2} ψ(D x), compared where D x lands on a site
        let spec = transforms::forward(src, Direction::Left, &lat);
        let targets: Vec<f64> = lat.xs().iter().map(|x| d * x).collect();
        let expect = transforms::position_at(&spec, Direction::Left, &lat, &targets);
        for (a, b) in out.channel(LV).values.iter().zip(&expect) {
            assert!((a - b * d.sqrt()).norm() < 1e-10);
        }
    }

    #[test]
    fn aliasing_is_reported() {
        let lat = lattice();
        // near the band edge: blue shift pushes it out
        let kmax = lat.k_max();
        let g = gaussian_packet(
            &PacketSpec::gaussian(RH, 0.0, 1.0, 0.8 * kmax),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let err = boost_state(&g, -0.6).unwrap_err();
        assert!(matches!(err, Error::AliasingRisk(_)));
        assert!(err.is_numerical());
        // far from the center: red shift stretches it out of the box
        let g = gaussian_packet(
            &PacketSpec::gaussian(RH, 60.0, 3.0, 1.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        assert!(matches!(boost_state(&g, 0.6), Err(Error::AliasingRisk(_))));
    }

    #[test]
    fn translation_is_a_phase() {
        let lat = lattice();
        let a = gaussian_packet(
            &PacketSpec::gaussian(LV, 0.0, 4.0, 1.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let b = gaussian_packet(
            &PacketSpec::gaussian(LV, 3.0, 2.0, 0.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let shift = 7.0 * lat.dx();
        let ta = translate(&a, shift);
        assert!(ta.max_abs_diff(&shift_oracle(&a, -7).unwrap()).unwrap() < 1e-12);
        let before = inner_product(&a, &b).unwrap();
        let after = inner_product(&ta, &translate(&b, shift)).unwrap();
        assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn classical_field_boost_rescales_about_the_light_cone() {
        // E(x) = g(x - x0) e^{ikx}; E'(x) = D E(D (x - sct) + sct)
        let lat = Lattice::new(1024, 200.0).unwrap();
        let (sigma, k) = (4.0, 2.0);
        let profile = |x: f64, x0: f64| Complex64::from_polar((-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp(), k * x);
        for (ch, t, beta) in [(RH, 0.0, 0.6), (RH, 3.0, -0.3), (LV, 2.0, 0.3)] {
            let s = ch.s.sign();
            let x0 = s * t;
            let mut fields: [Vec<Complex64>; 4] = std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); lat.n()]);
            fields[ch.index()] = lat.xs().iter().map(|&x| profile(x, x0)).collect();
            let f = ChannelFields {
                t,
                lattice: lat.clone(),
                fields,
            };
            let d = doppler_factor(beta, ch.s).unwrap();
            let out = boost_channel_fields(&f, beta, &NAT).unwrap();
            for (&x, v) in lat.xs().iter().zip(out.field(ch)) {
                let expect = profile(d * (x - x0) + x0, x0) * d;
                assert!((v - expect).norm() < 1e-10, "{ch} {x}");
            }
            assert_eq!(boost_channel_fields(&f, 0.0, &NAT).unwrap(), f);
        }
    }

    #[test]
    fn plane_wave_field_halves_for_right_movers() {
        // a periodic plane wave fills the box, so only the unchecked map applies
        let lat = Lattice::new(256, 64.0).unwrap();
        let k = 8.0 * lat.dk();
        let mut fields: [Vec<Complex64>; 4] = std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); lat.n()]);
        fields[RH.index()] = lat.xs().iter().map(|x| Complex64::from_polar(1.0, k * x)).collect();
        let f = ChannelFields {
            t: 0.0,
            lattice: lat.clone(),
            fields,
        };
        assert!(matches!(
            boost_channel_fields(&f, 0.6, &NAT),
            Err(Error::AliasingRisk(_))
        ));
        let out = resample_channel_fields(&f, &BoostParams::new(0.6).unwrap(), &NAT);
        for (x, v) in lat.xs().iter().zip(out.field(RH)) {
            assert!((v - Complex64::from_polar(0.5, 0.5 * k * x)).norm() < 1e-12);
        }
    }

    #[test]
    fn two_path_controls() {
        let lat = lattice();
        let coh = gaussian_packet(&PacketSpec::gaussian(RH, 0.0, 4.0, 2.0), &lat, StateKind::Coherent).unwrap();
        assert!(covariance_two_path(&coh, 0.0, &NAT).unwrap().max_abs < 1e-12);
        let good = covariance_two_path(&coh, 0.3, &NAT).unwrap();
        assert!(good.relative < 1e-6, "{good:?}");
        for exponent in [0.0, 1.0] {
            let settings = FieldSettings {
                exponent,
                ..FieldSettings::default()
            };
            let bad = covariance_two_path_with(&coh, 0.3, 0.0, &NAT, &settings).unwrap();
            assert!(bad.relative > 1e-2, "{exponent}: {bad:?}");
        }
        let single = coh.clone().with_kind(StateKind::SingleExcitation);
        assert!(matches!(
            covariance_two_path(&single, 0.3, &NAT),
            Err(Error::KindMismatch(_))
        ));
    }

    #[test]
    fn polarization_rotation_is_unitary() {
        let lat = lattice();
        let a = gaussian_packet(
            &PacketSpec::gaussian(RH, -4.0, 3.0, 1.0),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let b = gaussian_packet(
            &PacketSpec::gaussian(RH, 2.0, 2.0, 0.5),
            &lat,
            StateKind::SingleExcitation,
        )
        .unwrap();
        let rv = Channel::new(Direction::Right, Polarization::V);
        let ra = rotate_polarization(&a, std::f64::consts::FRAC_PI_2);
        // H rotated by a quarter turn is -V
        assert!(ra.channel(RH).values.iter().all(|v| v.norm() < 1e-15));
        for (x, y) in ra.channel(rv).values.iter().zip(&a.channel(RH).values) {
            assert!((x + y).norm() < 1e-15);
        }
        let before = inner_product(&a, &b).unwrap();
        let after = inner_product(&rotate_polarization(&a, 0.7), &rotate_polarization(&b, 0.7)).unwrap();
        assert!((before - after).norm() < 1e-14);
        assert!((rotate_polarization(&a, 0.7).norm_squared() - 1.0).abs() < 1e-14);
    }
}
