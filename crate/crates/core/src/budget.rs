use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Environment variable consulted for the default step budget.
pub const BUDGET_ENV: &str = "LOGDIV_BUDGET";

const DEFAULT_STEPS: u64 = 200_000_000;

/// Step counter shared by the Groebner loops, with cooperative cancellation.
///
/// One step is one reduction of a leading term. The counter is cumulative
/// across every computation that is handed the same budget.
#[derive(Debug)]
pub struct Budget {
    max_steps: u64,
    used: AtomicU64,
    cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    pub fn new(max_steps: u64) -> Self {
        Budget { max_steps: max_steps.max(1), used: AtomicU64::new(0), cancel: None }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Budget from `LOGDIV_BUDGET`, falling back to a generous default.
    pub fn from_env() -> Self {
        let steps = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_STEPS);
        Budget::new(steps)
    }

    pub fn with_cancel_flag(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    /// A fresh budget with the same limit and cancellation flag.
    pub fn fresh(&self) -> Self {
        Budget { max_steps: self.max_steps, used: AtomicU64::new(0), cancel: self.cancel.clone() }
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn tick(&self) -> Result<()> {
        self.tick_n(1)
    }

    pub fn tick_n(&self, n: u64) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.max_steps {
            return Err(Error::Timeout { stage: "groebner".into(), budget: self.max_steps });
        }
        if let Some(flag) = &self.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(Error::Cancelled);
            }
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhausts() {
        let b = Budget::new(3);
        assert!(b.tick_n(3).is_ok());
        assert!(matches!(b.tick(), Err(Error::Timeout { .. })));
    }

    #[test]
    fn cancel_flag_stops() {
        let flag = Arc::new(AtomicBool::new(false));
        let b = Budget::unlimited().with_cancel_flag(flag.clone());
        assert!(b.tick().is_ok());
        flag.store(true, Ordering::Relaxed);
        assert_eq!(b.tick(), Err(Error::Cancelled));
    }
}
