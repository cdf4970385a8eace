//! Numeric tolerances shared by every predicate in the crate.

use crate::error::{Error, Result};

/// Environment variable overriding [`Tolerances::eps_parallel`].
pub const ENV_TOL_PARALLEL: &str = "ORTHO_TOL_PARALLEL";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative threshold for axis-parallelism: `|n·e_a| <= eps_parallel·|n|`.
    pub eps_parallel: f64,
    /// Coincidence/planarity threshold, relative to the bounding-box diagonal.
    pub eps_geom: f64,
    /// Relative volume defect accepted for partitions.
    pub eps_volume: f64,
    /// Round cap for the reachability fixpoint.
    pub max_fixpoint_iters: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_parallel: 1e-9,
            eps_geom: 1e-9,
            eps_volume: 1e-9,
            max_fixpoint_iters: 10_000,
        }
    }
}

impl Tolerances {
    pub fn new(
        eps_parallel: f64,
        eps_geom: f64,
        eps_volume: f64,
        max_fixpoint_iters: usize,
    ) -> Result<Self> {
        let t = Self {
            eps_parallel,
            eps_geom,
            eps_volume,
            max_fixpoint_iters,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.eps_parallel) || !ok(self.eps_geom) || !ok(self.eps_volume) {
            return Err(Error::InvalidTolerances(format!("{self:?}")));
        }
        if self.max_fixpoint_iters == 0 {
            return Err(Error::InvalidTolerances(
                "max_fixpoint_iters must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Defaults, with `eps_parallel` taken from `ORTHO_TOL_PARALLEL` when set.
    pub fn from_env() -> Result<Self> {
        let mut t = Self::default();
        if let Ok(raw) = std::env::var(ENV_TOL_PARALLEL) {
            t.eps_parallel = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{ENV_TOL_PARALLEL}={raw}")))?;
        }
        t.validate()?;
        Ok(t)
    }

    pub fn with_parallel(mut self, eps: f64) -> Self {
        self.eps_parallel = eps;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        Tolerances::default().validate().unwrap();
    }

    #[test]
    fn rejects_non_positive() {
        assert!(Tolerances::new(0.0, 1e-9, 1e-9, 10).is_err());
        assert!(Tolerances::new(1e-9, 1e-9, -1.0, 10).is_err());
        assert!(Tolerances::new(1e-9, 1e-9, 1e-9, 0).is_err());
        assert!(Tolerances::new(1e-9, f64::NAN, 1e-9, 1).is_err());
    }
}
