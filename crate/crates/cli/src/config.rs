//! Run configuration: defaults, command-line flags, and environment
//! overrides folded into one validated value.

use std::path::PathBuf;

use clap::Args;
use mrules_core::algebra::{EnumerateOptions, DEFAULT_SIZE_CAP};
use mrules_core::freealg::{FreeAlgebraLimits, DEFAULT_ELEMENT_CAP};
use mrules_core::semantics::{EvalBudget, DEFAULT_EVAL_BUDGET};

use crate::errors::CliError;
use crate::output::OutputFormat;

/// Seed used when neither `--seed` nor `MRULES_SEED` is given. Fixed so
/// that plain runs are reproducible out of the box.
pub const DEFAULT_SEED: u64 = 7;

/// Default ceiling for free-algebra ranks in admissibility checks.
pub const DEFAULT_RANK_BOUND: usize = 3;

/// Flags shared by every subcommand. Environment variables override the
/// defaults; explicit flags override both.
#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Machine output: one JSON object per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized workloads (verify-suite formula sampling).
    #[arg(long, global = true, env = "MRULES_SEED")]
    pub seed: Option<u64>,

    /// Evaluation budget: total formula evaluations allowed per search.
    #[arg(long, global = true, env = "MRULES_BUDGET")]
    pub budget: Option<u64>,

    /// Largest algebra size `enumerate` may be asked for.
    #[arg(long, global = true, env = "MRULES_SIZE_CAP")]
    pub size_cap: Option<usize>,

    /// Largest free algebra the closure construction may attempt.
    #[arg(long, global = true, env = "MRULES_ELEMENT_CAP")]
    pub element_cap: Option<usize>,

    /// Default free-algebra rank ceiling for admissibility checks.
    #[arg(long, global = true, env = "MRULES_RANK_BOUND")]
    pub rank_bound: Option<usize>,
}

/// Everything a command needs to know about limits, determinism, and
/// presentation.
#[derive(Debug, Clone)]
pub struct Config {
    pub size_cap: usize,
    pub budget: u64,
    pub element_cap: usize,
    pub rank_bound: usize,
    pub corpus: Vec<PathBuf>,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Config {
    pub fn resolve(opts: &GlobalOpts) -> Result<Config, CliError> {
        let cfg = Config {
            size_cap: opts.size_cap.unwrap_or(DEFAULT_SIZE_CAP),
            budget: opts.budget.unwrap_or(DEFAULT_EVAL_BUDGET),
            element_cap: opts.element_cap.unwrap_or(DEFAULT_ELEMENT_CAP),
            rank_bound: opts.rank_bound.unwrap_or(DEFAULT_RANK_BOUND),
            corpus: Vec::new(),
            format: if opts.json {
                OutputFormat::JsonLines
            } else {
                OutputFormat::Text
            },
            seed: opts.seed.unwrap_or(DEFAULT_SEED),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        for (name, value) in [
            ("--size-cap", self.size_cap as u64),
            ("--budget", self.budget),
            ("--element-cap", self.element_cap as u64),
        ] {
            if value == 0 {
                return Err(CliError::Usage(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn fresh_budget(&self) -> EvalBudget {
        EvalBudget::new(self.budget)
    }

    pub fn enumerate_options(&self) -> EnumerateOptions {
        EnumerateOptions {
            include_degenerate: false,
            size_cap: self.size_cap,
        }
    }

    pub fn limits(&self) -> FreeAlgebraLimits {
        FreeAlgebraLimits {
            element_cap: self.element_cap,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> GlobalOpts {
        GlobalOpts {
            json: false,
            seed: None,
            budget: None,
            size_cap: None,
            element_cap: None,
            rank_bound: None,
        }
    }

    #[test]
    fn defaults_are_the_library_defaults() {
        let cfg = Config::resolve(&opts()).unwrap();
        assert_eq!(cfg.size_cap, DEFAULT_SIZE_CAP);
        assert_eq!(cfg.budget, DEFAULT_EVAL_BUDGET);
        assert_eq!(cfg.element_cap, DEFAULT_ELEMENT_CAP);
        assert_eq!(cfg.rank_bound, DEFAULT_RANK_BOUND);
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert_eq!(cfg.format, OutputFormat::Text);
    }

    #[test]
    fn zero_caps_are_rejected() {
        let mut o = opts();
        o.budget = Some(0);
        let err = Config::resolve(&o).unwrap_err();
        assert!(err.to_string().contains("--budget must be positive"));

        let mut o = opts();
        o.size_cap = Some(0);
        assert!(Config::resolve(&o).is_err());

        let mut o = opts();
        o.element_cap = Some(0);
        assert!(Config::resolve(&o).is_err());
    }

    #[test]
    fn flags_override_defaults() {
        let mut o = opts();
        o.json = true;
        o.seed = Some(99);
        o.budget = Some(1234);
        let cfg = Config::resolve(&o).unwrap();
        assert_eq!(cfg.format, OutputFormat::JsonLines);
        assert_eq!(cfg.seed, 99);
        assert_eq!(cfg.fresh_budget().limit(), 1234);
    }
}
