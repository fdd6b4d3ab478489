use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Named numeric tolerances. Every verdict records the value it used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Violation-rate threshold of the derivative-based test.
    pub analytic: f64,
    /// Violation-rate threshold of the search-based test.
    pub numeric: f64,
    /// Coordinates with `|x_i| <= zero_coordinate * ||x||` count as zero.
    pub zero_coordinate: f64,
    /// Value drops below `value_floor * ||x||` are treated as rounding noise.
    pub value_floor: f64,
    /// Same as `value_floor`, for drops in operator norms.
    pub operator_value_floor: f64,
    /// Relative slack for membership in the norm-attainment set.
    pub attainment: f64,
    /// Scale-free 2x2-minor threshold for rank-one detection.
    pub rank: f64,
    /// Refutations must show a drop above `witness_factor * numeric`.
    pub witness_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            analytic: 1e-9,
            numeric: 1e-7,
            zero_coordinate: 1e-12,
            value_floor: 1e-13,
            operator_value_floor: 1e-11,
            attainment: 1e-8,
            rank: 1e-9,
            witness_factor: 10.0,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 8] = [
        "analytic",
        "numeric",
        "zero_coordinate",
        "value_floor",
        "operator_value_floor",
        "attainment",
        "rank",
        "witness_factor",
    ];

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::input(format!(
                "tolerance `{name}` must be positive and finite, got {value}"
            )));
        }
        let slot = match name {
            "analytic" => &mut self.analytic,
            "numeric" => &mut self.numeric,
            "zero_coordinate" => &mut self.zero_coordinate,
            "value_floor" => &mut self.value_floor,
            "operator_value_floor" => &mut self.operator_value_floor,
            "attainment" => &mut self.attainment,
            "rank" => &mut self.rank,
            "witness_factor" => &mut self.witness_factor,
            other => return Err(Error::UnknownTolerance(other.to_string())),
        };
        *slot = value;
        Ok(())
    }

    pub fn with_overrides(overrides: &BTreeMap<String, f64>) -> Result<Self> {
        let mut tol = Self::default();
        for (name, value) in overrides {
            tol.set(name, *value)?;
        }
        Ok(tol)
    }

    /// Minimum value drop a refutation must exhibit, relative to `max(1, scale)`.
    pub fn witness_margin(&self, scale: f64) -> f64 {
        self.witness_factor * self.numeric * scale.max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names_are_rejected() {
        let mut t = Tolerances::default();
        assert!(matches!(t.set("bogus", 1.0), Err(Error::UnknownTolerance(_))));
        assert!(t.set("numeric", -1.0).is_err());
        t.set("numeric", 1e-6).unwrap();
        assert_eq!(t.numeric, 1e-6);
    }
}
