use clap::ValueEnum;
use serde::Serialize;

use crate::seqfun::Precision;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Work limits enforced by the modules; a request above one fails with a
/// budget error instead of running.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Budgets {
    pub direct_terms: u128,
    pub sumset_cells: u128,
    pub bilinear_cells: u128,
    pub sieve_limit: u128,
    pub count_limit: u128,
    pub frequency_scan: u128,
    pub relation_scan: u128,
    pub linearity_pairs: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            direct_terms: crate::gowers::DIRECT_BUDGET,
            sumset_cells: crate::additive::SUMSET_BUDGET,
            bilinear_cells: crate::additive::BILINEAR_BUDGET,
            sieve_limit: crate::primes::SIEVE_MAX,
            count_limit: crate::primes::COUNT_MAX,
            frequency_scan: crate::equidist::SCAN_BUDGET,
            relation_scan: crate::equidist::RELATION_BUDGET,
            linearity_pairs: crate::bohr::LINEARITY_PAIRS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    /// `None` lets each subcommand pick its own default.
    pub precision: Option<Precision>,
    /// 0 means the rayon default.
    pub threads: usize,
    pub seed: u64,
    pub output: Option<Format>,
    pub budgets: Budgets,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { precision: None, threads: 0, seed: 0, output: None, budgets: Budgets::default() }
    }
}

impl RunConfig {
    pub fn precision_or(&self, d: Precision) -> Precision {
        self.precision.unwrap_or(d)
    }

    pub fn format_or(&self, d: Format) -> Format {
        self.output.unwrap_or(d)
    }
}
