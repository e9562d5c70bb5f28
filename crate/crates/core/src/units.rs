//! Physical constants and channel labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constants entering the field normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Speed of light [m/s].
    pub c: f64,
    /// Reduced Planck constant [J s].
    pub hbar: f64,
    /// Vacuum permittivity [F/m].
    pub eps0: f64,
    /// Transverse quantization area [m²].
    pub area: f64,
}

impl PhysicalConstants {
    /// `c = ħ = ε₀ = A = 1`.
    pub const NATURAL: PhysicalConstants = PhysicalConstants {
        c: 1.0,
        hbar: 1.0,
        eps0: 1.0,
        area: 1.0,
    };

    /// CODATA 2018 values with a 1 µm² transverse area.
    pub const SI: PhysicalConstants = PhysicalConstants {
        c: 299_792_458.0,
        hbar: 1.054_571_817e-34,
        eps0: 8.854_187_812_8e-12,
        area: 1e-12,
    };

    pub fn new(c: f64, hbar: f64, eps0: f64, area: f64) -> Result<Self> {
        let consts = PhysicalConstants { c, hbar, eps0, area };
        consts.validate()?;
        Ok(consts)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("c", self.c),
            ("hbar", self.hbar),
            ("eps0", self.eps0),
            ("area", self.area),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// `2ħ / (ε₀ c A)`, the squared single-photon field scale `|Ω₀|²`.
    pub fn omega0_squared(&self) -> f64 {
        2.0 * self.hbar / (self.eps0 * self.c * self.area)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::NATURAL
    }
}

/// Direction of propagation `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Left, Direction::Right];

    pub fn sign(self) -> f64 {
        match self {
            Direction::Left => -1.0,
            Direction::Right => 1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Direction::Left => -1,
            Direction::Right => 1,
        }
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

impl TryFrom<i8> for Direction {
    type Error = String;

    fn try_from(s: i8) -> std::result::Result<Self, Self::Error> {
        match s {
            -1 => Ok(Direction::Left),
            1 => Ok(Direction::Right),
            other => Err(format!("direction must be -1 or 1, got {other}")),
        }
    }
}

impl From<Direction> for i8 {
    fn from(d: Direction) -> i8 {
        d.as_i8()
    }
}

/// Transverse polarization `λ`. `H` is along ŷ, `V` along ẑ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
}

/// A `(s, λ)` pair. Ordering is `(-1,H) < (-1,V) < (+1,H) < (+1,V)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Channel {
    pub s: Direction,
    pub lambda: Polarization,
}

impl Channel {
    pub const ALL: [Channel; 4] = [
        Channel::new(Direction::Left, Polarization::H),
        Channel::new(Direction::Left, Polarization::V),
        Channel::new(Direction::Right, Polarization::H),
        Channel::new(Direction::Right, Polarization::V),
    ];

    pub const fn new(s: Direction, lambda: Polarization) -> Self {
        Channel { s, lambda }
    }

    /// Position of this channel in [`Channel::ALL`].
    pub fn index(self) -> usize {
        let s = match self.s {
            Direction::Left => 0,
            Direction::Right => 2,
        };
        let l = match self.lambda {
            Polarization::H => 0,
            Polarization::V => 1,
        };
        s + l
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+},{:?})", self.s.as_i8(), self.lambda)
    }
}
