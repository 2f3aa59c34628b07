use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{DecompError, Result};

/// Default number of enumeration nodes before giving up.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A shared node counter; exceeding the limit is an error, never a silent truncation.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    /// Reads `DLAT_BUDGET`, falling back to [`DEFAULT_BUDGET`].
    pub fn from_env() -> Budget {
        let limit = std::env::var("DLAT_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn tick(&self) -> Result<()> {
        self.spend(1)
    }

    pub fn spend(&self, n: u64) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.limit {
            Err(DecompError::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
