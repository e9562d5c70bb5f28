use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::EvolutionLaw;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::states::{load_samples_csv, PacketShape, PacketSpec};
use crate::units::{Channel, Direction, PhysicalConstants, Polarization};

use super::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    Natural,
    Si,
}

impl UnitSystem {
    pub fn constants(self) -> PhysicalConstants {
        match self {
            UnitSystem::Natural => PhysicalConstants::NATURAL,
            UnitSystem::Si => PhysicalConstants::SI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub n: usize,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeName {
    Gaussian,
    Rectangular,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketConfig {
    #[serde(default = "default_shape")]
    pub shape: ShapeName,
    /// CSV of `re,im` position samples for `custom`; relative paths resolve
    /// against the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<PathBuf>,
    #[serde(default)]
    pub center: f64,
    #[serde(default)]
    pub width: f64,
    #[serde(default)]
    pub carrier: f64,
    #[serde(default)]
    pub phase: f64,
    pub direction: Direction,
    #[serde(default = "default_polarization")]
    pub polarization: Polarization,
}

fn default_shape() -> ShapeName {
    ShapeName::Gaussian
}

fn default_polarization() -> Polarization {
    Polarization::H
}

impl PacketConfig {
    pub fn gaussian(direction: Direction, center: f64, width: f64, carrier: f64) -> Self {
        PacketConfig {
            shape: ShapeName::Gaussian,
            samples: None,
            center,
            width,
            carrier,
            phase: 0.0,
            direction,
            polarization: Polarization::H,
        }
    }

    pub fn channel(&self) -> Channel {
        Channel::new(self.direction, self.polarization)
    }

    pub fn to_spec(&self, base: Option<&Path>) -> Result<PacketSpec> {
        let shape = match self.shape {
            ShapeName::Gaussian => PacketShape::Gaussian,
            ShapeName::Rectangular => PacketShape::Rectangular,
            ShapeName::Custom => {
                let path = self
                    .samples
                    .as_ref()
                    .ok_or_else(|| Error::Config("custom packet needs a samples file".into()))?;
                let path = match base {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.clone(),
                };
                PacketShape::Custom(load_samples_csv(path)?)
            }
        };
        Ok(PacketSpec {
            shape,
            center: self.center,
            width: self.width,
            carrier: self.carrier,
            phase: self.phase,
            channel: self.channel(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t0: f64,
    pub t1: f64,
    pub samples: usize,
    /// Round each sample to the nearest multiple of `dx/c`.
    #[serde(default = "default_true")]
    pub snap: bool,
}

fn default_true() -> bool {
    true
}

impl TimeGrid {
    pub fn times(&self, lattice: &Lattice, consts: &PhysicalConstants) -> Vec<f64> {
        let step = lattice.dx() / consts.c;
        let raw = (0..self.samples).map(|i| {
            if self.samples == 1 {
                self.t0
            } else {
                self.t0 + (self.t1 - self.t0) * i as f64 / (self.samples - 1) as f64
            }
        });
        raw.map(|t| if self.snap { (t / step).round() * step } else { t })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub lattice: LatticeConfig,
    pub units: UnitSystem,
    #[serde(default)]
    pub packets: Vec<PacketConfig>,
    pub time_grid: TimeGrid,
    #[serde(default)]
    pub law: EvolutionLaw,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub output: OutputConfig,
    /// Directory used to resolve relative sample paths.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

/// Fields of [`ScenarioConfig`] that may be overridden individually.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub n: Option<usize>,
    pub length: Option<f64>,
    pub units: Option<UnitSystem>,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub samples: Option<usize>,
    pub beta: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl ScenarioConfig {
    /// Built-in configuration for each scenario.
    pub fn defaults(scenario: Scenario) -> Self {
        let natural = |n, length, packets, t0, t1, samples| ScenarioConfig {
            lattice: LatticeConfig { n, length },
            units: UnitSystem::Natural,
            packets,
            time_grid: TimeGrid {
                t0,
                t1,
                samples,
                snap: true,
            },
            law: EvolutionLaw::Blip,
            beta: None,
            output: OutputConfig {
                path: None,
                format: OutputFormat::Csv,
            },
            base_dir: None,
        };
        let mirrored = vec![
            PacketConfig::gaussian(Direction::Right, -50.0, 4.0, 10.0),
            PacketConfig::gaussian(Direction::Left, 50.0, 4.0, 10.0),
        ];
        match scenario {
            Scenario::Orthogonality => natural(4096, 200.0, mirrored, 0.0, 100.0, 101),
            Scenario::DispersionCompare => {
                let dx = 200.0 / 4096.0;
                let packet = PacketConfig::gaussian(Direction::Right, 0.0, 2.0 * dx, 0.0);
                natural(4096, 200.0, vec![packet], 0.0, 50.0, 51)
            }
            Scenario::Kernel => natural(4096, 200.0, vec![], 0.0, 0.0, 1),
            Scenario::Boost => {
                let packets = vec![
                    PacketConfig::gaussian(Direction::Right, 0.0, 4.0, 2.0),
                    PacketConfig::gaussian(Direction::Left, 5.0, 3.0, 1.5),
                ];
                let mut cfg = natural(2048, 200.0, packets, 0.0, 0.0, 1);
                cfg.beta = Some(0.3);
                cfg
            }
            Scenario::Spectra => natural(16, 16.0, vec![], 0.0, 0.0, 1),
            Scenario::Propagate => natural(2048, 200.0, mirrored[..1].to_vec(), 0.0, 50.0, 6),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_json_str(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(n) = o.n {
            self.lattice.n = n;
        }
        if let Some(length) = o.length {
            self.lattice.length = length;
        }
        if let Some(units) = o.units {
            self.units = units;
        }
        if let Some(t0) = o.t0 {
            self.time_grid.t0 = t0;
        }
        if let Some(t1) = o.t1 {
            self.time_grid.t1 = t1;
        }
        if let Some(samples) = o.samples {
            self.time_grid.samples = samples;
        }
        if o.beta.is_some() {
            self.beta = o.beta;
        }
        if o.out.is_some() {
            self.output.path = o.out.clone();
        }
        if let Some(format) = o.format {
            self.output.format = format;
        }
    }

    pub fn constants(&self) -> PhysicalConstants {
        self.units.constants()
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.lattice.n, self.lattice.length).map_err(|e| Error::Config(e.to_string()))
    }

    /// Structural checks shared by every scenario. Packet builders do the
    /// numerical ones.
    pub fn validate(&self) -> Result<()> {
        self.lattice()?;
        let g = &self.time_grid;
        if g.samples < 1 {
            return Err(Error::Config("time_grid.samples must be at least 1".into()));
        }
        if !(g.t0.is_finite() && g.t1.is_finite()) {
            return Err(Error::Config("time_grid bounds must be finite".into()));
        }
        if g.t1 < g.t0 {
            return Err(Error::Config(format!("time_grid.t1 = {} precedes t0 = {}", g.t1, g.t0)));
        }
        for (i, p) in self.packets.iter().enumerate() {
            let finite = [p.center, p.width, p.carrier, p.phase].iter().all(|v| v.is_finite());
            if !finite {
                return Err(Error::Config(format!("packet {i} has non-finite parameters")));
            }
            if p.shape != ShapeName::Custom && p.width <= 0.0 {
                return Err(Error::Config(format!("packet {i}: width must be positive")));
            }
            if p.shape == ShapeName::Custom && p.samples.is_none() {
                return Err(Error::Config(format!("packet {i}: custom shape needs samples")));
            }
        }
        if let Some(beta) = self.beta {
            if !(beta.is_finite() && beta.abs() < 1.0) {
                return Err(Error::Config(format!("beta must satisfy |beta| < 1, got {beta}")));
            }
        }
        Ok(())
    }

    pub fn packet_specs(&self) -> Result<Vec<PacketSpec>> {
        self.packets
            .iter()
            .map(|p| p.to_spec(self.base_dir.as_deref()))
            .collect()
    }

    pub fn output_path(&self, scenario: Scenario) -> PathBuf {
        self.output
            .path
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.{}", scenario.name(), self.output.format.extension())))
    }
}
