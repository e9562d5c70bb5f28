//! Named scenarios driven by a [`ScenarioConfig`], each producing a table
//! and a summary for the command-line front end.

mod config;
mod output;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::Value;

use crate::dynamics::{evolve, rms_width, EvolutionLaw};
use crate::error::{Error, Result};
use crate::lorentz::{boost_state, covariance_two_path};
use crate::observables::{kernel_real_space, rr_composition_check, single_excitation_spectra};
use crate::states::{build_packet, inner_product, StateKind, StateVector};
use crate::units::{Channel, PhysicalConstants};

pub use config::{
    LatticeConfig, OutputConfig, OutputFormat, Overrides, PacketConfig, ScenarioConfig, ShapeName, TimeGrid, UnitSystem,
};
pub use output::{sidecar_path, write_outputs, Cell, ScenarioResult, Table};

/// Largest |β| accepted by the boost scenario.
pub const MAX_SCENARIO_BETA: f64 = 0.6;

/// Smallest lattice for which the kernel tail fit is meaningful.
pub const MIN_KERNEL_SITES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    Orthogonality,
    DispersionCompare,
    Kernel,
    Boost,
    Spectra,
    Propagate,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Orthogonality,
        Scenario::DispersionCompare,
        Scenario::Kernel,
        Scenario::Boost,
        Scenario::Spectra,
        Scenario::Propagate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Orthogonality => "orthogonality",
            Scenario::DispersionCompare => "dispersion-compare",
            Scenario::Kernel => "kernel",
            Scenario::Boost => "boost",
            Scenario::Spectra => "spectra",
            Scenario::Propagate => "propagate",
        }
    }

    pub fn run(self, cfg: &ScenarioConfig) -> Result<ScenarioResult> {
        cfg.validate()?;
        match self {
            Scenario::Orthogonality => run_orthogonality(cfg),
            Scenario::DispersionCompare => run_dispersion_compare(cfg),
            Scenario::Kernel => run_kernel(cfg),
            Scenario::Boost => run_boost(cfg),
            Scenario::Spectra => run_spectra(cfg),
            Scenario::Propagate => run_propagate(cfg),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scenario {s:?}")))
    }
}

fn summary<const N: usize>(entries: [(&str, Value); N]) -> BTreeMap<String, Value> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn build_states(cfg: &ScenarioConfig, kind: StateKind) -> Result<Vec<StateVector>> {
    let lattice = cfg.lattice()?;
    cfg.packet_specs()?
        .iter()
        .map(|spec| build_packet(spec, &lattice, kind))
        .collect()
}

/// Normalized superposition of all configured packets.
fn combined_state(cfg: &ScenarioConfig, kind: StateKind) -> Result<StateVector> {
    let states = build_states(cfg, kind)?;
    let mut iter = states.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Config("at least one packet is required".into()))?;
    iter.try_fold(first, |acc, st| acc.superpose(&st))?.normalized()
}

/// `|⟨a(t)|b(t)⟩|` for each time under `law`.
pub fn overlap_series(
    a: &StateVector,
    b: &StateVector,
    times: &[f64],
    law: EvolutionLaw,
    consts: &PhysicalConstants,
) -> Result<Vec<f64>> {
    times
        .par_iter()
        .map(|&t| Ok(inner_product(&evolve(a, t, law, consts), &evolve(b, t, law, consts))?.norm()))
        .collect()
}

pub fn run_orthogonality(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    if cfg.packets.len() != 2 {
        return Err(Error::Config(format!(
            "orthogonality needs exactly two packets, got {}",
            cfg.packets.len()
        )));
    }
    let (p, q) = (&cfg.packets[0], &cfg.packets[1]);
    if p.direction == q.direction {
        return Err(Error::Config(
            "orthogonality packets must travel in opposite directions".into(),
        ));
    }
    let a = p.center.abs();
    let scale = cfg.lattice.length * 1e-12;
    if a == 0.0 || (p.center + q.center).abs() > scale {
        return Err(Error::Config(format!(
            "orthogonality packets must sit at mirrored centers ±a, got {} and {}",
            p.center, q.center
        )));
    }
    let consts = cfg.constants();
    let lattice = cfg.lattice()?;
    let mut times = cfg.time_grid.times(&lattice, &consts);
    let meet = a / consts.c;
    if !times.iter().any(|t| (t - meet).abs() <= 1e-12 * meet.max(1.0)) {
        times.push(meet);
        times.sort_by(f64::total_cmp);
    }
    let states = build_states(cfg, StateKind::SingleExcitation)?;
    let overlaps = overlap_series(&states[0], &states[1], &times, cfg.law, &consts)?;
    let mut table = Table::new(&["t", "overlap"]);
    for (t, o) in times.iter().zip(&overlaps) {
        table.push(vec![Cell::Num(*t), Cell::Num(*o)]);
    }
    let max = overlaps.iter().copied().fold(0.0, f64::max);
    Ok(ScenarioResult {
        table,
        summary: summary([
            ("a", Value::from(a)),
            ("meeting_time", Value::from(meet)),
            ("max_overlap", Value::from(max)),
            ("samples", Value::from(times.len())),
        ]),
        warnings: Vec::new(),
    })
}

/// Norm fractions on negative and positive wavenumbers.
fn spectral_split(st: &StateVector) -> (f64, f64) {
    let m = st.to_momentum();
    let ks = m.lattice().ks().to_vec();
    let (mut neg, mut pos) = (0.0, 0.0);
    for (_, amp) in m.channels() {
        for (v, k) in amp.values.iter().zip(&ks) {
            if *k < 0.0 {
                neg += v.norm_sqr();
            } else if *k > 0.0 {
                pos += v.norm_sqr();
            }
        }
    }
    let total = neg + pos;
    if total == 0.0 {
        (0.0, 0.0)
    } else {
        (neg / total, pos / total)
    }
}

/// Below this spectral weight on one side of `k = 0` the packet does not
/// probe the difference between the two laws.
const STRADDLE_THRESHOLD: f64 = 1e-6;

pub fn run_dispersion_compare(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    if cfg.packets.len() != 1 {
        return Err(Error::Config(format!(
            "dispersion-compare needs exactly one packet, got {}",
            cfg.packets.len()
        )));
    }
    let consts = cfg.constants();
    let lattice = cfg.lattice()?;
    let st = build_states(cfg, StateKind::SingleExcitation)?.remove(0);
    let ch = cfg.packets[0].channel();
    let (neg, pos) = spectral_split(&st);
    let mut warnings = Vec::new();
    if neg.min(pos) < STRADDLE_THRESHOLD {
        warnings.push(format!(
            "packet spectrum does not straddle k = 0 (negative {neg:.3e}, positive {pos:.3e}); both laws agree"
        ));
    }
    let times = cfg.time_grid.times(&lattice, &consts);
    let rows: Vec<(f64, f64, f64)> = times
        .par_iter()
        .map(|&t| {
            let blip = rms_width(&evolve(&st, t, EvolutionLaw::Blip, &consts), ch)?;
            let standard = rms_width(&evolve(&st, t, EvolutionLaw::Standard, &consts), ch)?;
            Ok((t, blip, standard))
        })
        .collect::<Result<_>>()?;
    let w0 = rms_width(&st, ch)?;
    let mut table = Table::new(&["t", "width_blip", "width_standard"]);
    let mut drift: f64 = 0.0;
    for &(t, b, s) in &rows {
        drift = drift.max((b - w0).abs() / w0);
        table.push(vec![Cell::Num(t), Cell::Num(b), Cell::Num(s)]);
    }
    let growth = rows.last().map_or(1.0, |r| r.2 / w0);
    Ok(ScenarioResult {
        table,
        summary: summary([
            ("initial_width", Value::from(w0)),
            ("blip_relative_drift", Value::from(drift)),
            ("standard_growth", Value::from(growth)),
            ("negative_fraction", Value::from(neg)),
            ("positive_fraction", Value::from(pos)),
        ]),
        warnings,
    })
}

pub fn run_kernel(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    if cfg.lattice.n < MIN_KERNEL_SITES {
        return Err(Error::Config(format!(
            "kernel needs n >= {MIN_KERNEL_SITES}, got {}",
            cfg.lattice.n
        )));
    }
    let consts = cfg.constants();
    let lattice = cfg.lattice()?;
    let kernel = kernel_real_space(&lattice, &consts);
    let fit = kernel.fit_default_window()?;
    let rr = rr_composition_check(&lattice, &consts);
    let mut table = Table::new(&["u", "R"]);
    for (u, r) in kernel.u.iter().zip(&kernel.values) {
        table.push(vec![Cell::Num(*u), Cell::Num(*r)]);
    }
    Ok(ScenarioResult {
        table,
        summary: summary([
            ("slope", Value::from(fit.slope)),
            ("intercept", Value::from(fit.intercept)),
            ("fit_u_min", Value::from(fit.u_min)),
            ("fit_u_max", Value::from(fit.u_max)),
            ("fit_points", Value::from(fit.points)),
            ("asymmetry", Value::from(kernel.asymmetry())),
            ("max_off_origin", Value::from(kernel.max_off_origin())),
            ("imag_residual", Value::from(kernel.imag_residual)),
            ("rr_deviation", Value::from(rr)),
        ]),
        warnings: Vec::new(),
    })
}

pub fn run_boost(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    let beta = cfg.beta.ok_or_else(|| Error::Config("boost needs beta".into()))?;
    if beta.abs() > MAX_SCENARIO_BETA {
        return Err(Error::Config(format!(
            "boost accepts |beta| <= {MAX_SCENARIO_BETA}, got {beta}"
        )));
    }
    let consts = cfg.constants();
    let single = combined_state(cfg, StateKind::SingleExcitation)?;
    let boosted = boost_state(&single, beta)?;
    let norm_drift = (boosted.norm_squared() - single.norm_squared()).abs();
    let inverse_error = boost_state(&boosted, -beta)?.max_abs_diff(&single)?;
    let coherent = single.clone().with_kind(StateKind::Coherent);
    let report = covariance_two_path(&coherent, beta, &consts)?;
    let mut table = Table::new(&[
        "beta",
        "norm_drift",
        "inverse_error",
        "two_path_max_abs",
        "peak_field",
        "two_path_relative",
    ]);
    table.push(vec![
        Cell::Num(beta),
        Cell::Num(norm_drift),
        Cell::Num(inverse_error),
        Cell::Num(report.max_abs),
        Cell::Num(report.peak_field),
        Cell::Num(report.relative),
    ]);
    Ok(ScenarioResult {
        table,
        summary: summary([
            ("beta", Value::from(beta)),
            ("norm_drift", Value::from(norm_drift)),
            ("two_path_relative", Value::from(report.relative)),
        ]),
        warnings: Vec::new(),
    })
}

pub fn run_spectra(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    let consts = cfg.constants();
    let lattice = cfg.lattice()?;
    let spectra = single_excitation_spectra(&lattice, &consts);
    let mut table = Table::new(&["channel", "k", "hdyn", "henergy"]);
    for cs in &spectra.channels {
        for ((k, d), e) in cs.k.iter().zip(&cs.hdyn).zip(&cs.henergy) {
            table.push(vec![
                Cell::Text(cs.channel.to_string()),
                Cell::Num(*k),
                Cell::Num(*d),
                Cell::Num(*e),
            ]);
        }
    }
    Ok(ScenarioResult {
        table,
        summary: summary([("commutator_norm", Value::from(spectra.commutator_norm))]),
        warnings: Vec::new(),
    })
}

pub fn run_propagate(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    let consts = cfg.constants();
    let lattice = cfg.lattice()?;
    let st = combined_state(cfg, StateKind::SingleExcitation)?;
    let times = cfg.time_grid.times(&lattice, &consts);
    let frames: Vec<StateVector> = times
        .par_iter()
        .map(|&t| evolve(&st, t, cfg.law, &consts).to_position())
        .collect();
    let names: Vec<String> = Channel::ALL.iter().map(|c| format!("rho{c}")).collect();
    let mut columns = vec!["t", "x"];
    columns.extend(names.iter().map(String::as_str));
    let mut table = Table::new(&columns);
    let mut norm_drift: f64 = 0.0;
    for (t, frame) in times.iter().zip(&frames) {
        norm_drift = norm_drift.max((frame.norm_squared() - 1.0).abs());
        for (j, x) in lattice.xs().iter().enumerate() {
            let mut row = vec![Cell::Num(*t), Cell::Num(*x)];
            row.extend(
                Channel::ALL
                    .iter()
                    .map(|&c| Cell::Num(frame.channel(c).values[j].norm_sqr())),
            );
            table.push(row);
        }
    }
    Ok(ScenarioResult {
        table,
        summary: summary([
            ("law", serde_json::to_value(cfg.law)?),
            ("norm_drift", Value::from(norm_drift)),
            ("samples", Value::from(times.len())),
        ]),
        warnings: Vec::new(),
    })
}
