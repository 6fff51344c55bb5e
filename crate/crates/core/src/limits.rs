//! Size caps that make exponential growth fail loudly instead of exhausting memory.

use std::env;

use serde::Serialize;

use crate::error::{Error, Result};

pub const ENV_MAX_POINTS: &str = "JULIADIFF_MAX_POINTS";
pub const ENV_MAX_PAIRS: &str = "JULIADIFF_MAX_PAIRS";
pub const ENV_MAX_CELLS: &str = "JULIADIFF_MAX_CELLS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Total sample points held by one level of piece generation.
    pub max_points: u64,
    /// Disk pairs in a difference cover.
    pub max_pairs: u64,
    /// Cells in any single raster.
    pub max_cells: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_points: 1 << 24,
            max_pairs: 1 << 20,
            max_cells: 1 << 27,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `JULIADIFF_MAX_POINTS`, `JULIADIFF_MAX_PAIRS`
    /// and `JULIADIFF_MAX_CELLS` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Self::default();
        for (var, slot) in [
            (ENV_MAX_POINTS, &mut limits.max_points),
            (ENV_MAX_PAIRS, &mut limits.max_pairs),
            (ENV_MAX_CELLS, &mut limits.max_cells),
        ] {
            if let Ok(raw) = env::var(var) {
                *slot = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::out_of_range("environment", format!("{var}={raw:?}")))?;
            }
        }
        Ok(limits)
    }

    pub(crate) fn check(
        requested: u64,
        cap: u64,
        what: &'static str,
        hint: &'static str,
    ) -> Result<()> {
        if requested > cap {
            Err(Error::SizeCap {
                what,
                requested,
                cap,
                hint,
            })
        } else {
            Ok(())
        }
    }
}
