use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, ZoneError};

/// Which complex structure the particle is attached to.
///
/// Negative charges go with `J`, positive charges with `-J`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChargeSign {
    #[default]
    Negative,
    Positive,
}

impl ChargeSign {
    /// `+1` for `J`, `-1` for `-J`.
    pub fn orientation(self) -> f64 {
        match self {
            ChargeSign::Negative => 1.0,
            ChargeSign::Positive => -1.0,
        }
    }
}

/// Model parameters: magnetic coupling `lambda`, real X-space dimension `k`
/// and the charge orientation. Macroscopic units (hbar = mu = 1).
///
/// The microscopic operator is obtained by the substitution
/// `lambda -> lambda / hbar` (period `L -> hbar L`); no separate code path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    lambda: f64,
    k: usize,
    charge: ChargeSign,
}

impl PhysParams {
    pub fn new(lambda: f64, k: usize) -> Result<Self> {
        Self::with_charge(lambda, k, ChargeSign::Negative)
    }

    pub fn with_charge(lambda: f64, k: usize, charge: ChargeSign) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(invalid("lambda", format!("must be a positive finite number, got {lambda}")));
        }
        if k == 0 || k % 2 != 0 {
            return Err(invalid("k", format!("must be an even positive integer, got {k}")));
        }
        Ok(Self { lambda, k, charge })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of complex coordinates, `k/2`.
    pub fn half_dim(&self) -> usize {
        self.k / 2
    }

    pub fn charge(&self) -> ChargeSign {
        self.charge
    }

    /// The polynomial algebra engine covers one and two complex coordinates.
    pub fn require_algebra_dim(&self) -> Result<()> {
        if self.k == 2 || self.k == 4 {
            Ok(())
        } else {
            Err(ZoneError::UnsupportedDimension {
                k: self.k,
                supported: "2 or 4",
            })
        }
    }

    pub fn require_plane(&self) -> Result<()> {
        if self.k == 2 {
            Ok(())
        } else {
            Err(ZoneError::UnsupportedDimension { k: self.k, supported: "2" })
        }
    }
}

impl Default for PhysParams {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            k: 2,
            charge: ChargeSign::Negative,
        }
    }
}
