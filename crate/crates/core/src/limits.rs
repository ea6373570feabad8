use crate::error::{Error, Result};

/// Size guards for the enumerating operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest poset whose down-sets may be enumerated.
    pub max_points: usize,
    /// Largest lattice that is materialized with full join/meet tables.
    pub max_elements: usize,
    /// Largest closed-set family generated for a topology.
    pub max_closed_sets: usize,
    /// Largest lattice whose ind-objects or support data are enumerated by
    /// brute force.
    pub max_enumerated_lattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 24,
            max_elements: 1024,
            max_closed_sets: 1 << 20,
            max_enumerated_lattice: 64,
        }
    }
}

impl Limits {
    pub const ENV_MAX_POINTS: &'static str = "TTG_MAX_POINTS";

    /// Defaults, with `max_points` overridden by `TTG_MAX_POINTS` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(Self::ENV_MAX_POINTS)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.max_points = n;
        }
        limits
    }

    pub fn with_max_points(mut self, n: usize) -> Self {
        self.max_points = n;
        self
    }

    pub(crate) fn check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
        if actual > limit {
            Err(Error::SizeGuard {
                what,
                actual,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
