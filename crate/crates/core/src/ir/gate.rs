use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The canonical gate set every front end lowers into and every back end
/// must be able to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    U2,
    U3,
    Cx,
    Cy,
    Cz,
    Ch,
    Swap,
    Ccx,
    Cswap,
}

impl Gate {
    pub const ALL: [Gate; 20] = [
        Gate::H,
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::S,
        Gate::Sdg,
        Gate::T,
        Gate::Tdg,
        Gate::Rx,
        Gate::Ry,
        Gate::Rz,
        Gate::U2,
        Gate::U3,
        Gate::Cx,
        Gate::Cy,
        Gate::Cz,
        Gate::Ch,
        Gate::Swap,
        Gate::Ccx,
        Gate::Cswap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gate::H => "h",
            Gate::X => "x",
            Gate::Y => "y",
            Gate::Z => "z",
            Gate::S => "s",
            Gate::Sdg => "sdg",
            Gate::T => "t",
            Gate::Tdg => "tdg",
            Gate::Rx => "rx",
            Gate::Ry => "ry",
            Gate::Rz => "rz",
            Gate::U2 => "u2",
            Gate::U3 => "u3",
            Gate::Cx => "cx",
            Gate::Cy => "cy",
            Gate::Cz => "cz",
            Gate::Ch => "ch",
            Gate::Swap => "swap",
            Gate::Ccx => "ccx",
            Gate::Cswap => "cswap",
        }
    }

    /// Number of real parameters (angles in radians).
    pub fn param_count(self) -> usize {
        match self {
            Gate::Rx | Gate::Ry | Gate::Rz => 1,
            Gate::U2 => 2,
            Gate::U3 => 3,
            _ => 0,
        }
    }

    pub fn control_count(self) -> usize {
        match self {
            Gate::Cx | Gate::Cy | Gate::Cz | Gate::Ch | Gate::Cswap => 1,
            Gate::Ccx => 2,
            _ => 0,
        }
    }

    pub fn target_count(self) -> usize {
        match self {
            Gate::Swap | Gate::Cswap => 2,
            _ => 1,
        }
    }

    pub fn qubit_count(self) -> usize {
        self.control_count() + self.target_count()
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown gate `{0}`")]
pub struct UnknownGate(pub String);

impl FromStr for Gate {
    type Err = UnknownGate;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Gate::ALL
            .into_iter()
            .find(|g| g.name() == lower)
            .ok_or_else(|| UnknownGate(s.to_string()))
    }
}
