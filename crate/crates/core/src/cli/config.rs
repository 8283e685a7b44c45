use std::path::PathBuf;

use crate::analysis::Budget;
use crate::error::{Error, Result};
use crate::fourier::TransformMode;

/// Environment variable overriding the search node budget.
pub const BUDGET_ENV: &str = "SPECTILE_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub budget: Budget,
    /// Worker threads for the inner transforms; 0 lets rayon decide.
    pub parallelism: usize,
    /// Where the certificate goes; stdout when unset.
    pub output_path: Option<PathBuf>,
    pub mode: TransformMode,
    /// Record wall-clock durations in steps. Off by default so reruns are byte-identical.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: Budget::default(),
            parallelism: 0,
            output_path: None,
            mode: TransformMode::Auto,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget.0 == 0 {
            return Err(Error::Precondition("search budget must be positive".into()));
        }
        Ok(())
    }

    /// Applies `SPECTILE_BUDGET` if it is set.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            let n = v
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v:?} is not a positive integer")))?;
            self.budget = Budget(n);
        }
        self.validate()?;
        Ok(self)
    }
}
