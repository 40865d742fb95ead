//! Batch sweep of every property check over seeded random instances.
//!
//! The sweep is a flat list of independent cells keyed by
//! `(family, check, m, n, trial)`. Each cell draws from its own generator,
//! so the report is identical whether cells run sequentially or on the rayon
//! pool, and records come out sorted by key.

use serde::{Deserialize, Serialize};

use crate::algebra::Witness;
use crate::catalog::{hecke_idempotent, Family, FamilyInstance};
use crate::error::{Error, Result};
use crate::sampling::{cell_rng, random_commuting_tasep_pair, random_instance};
use crate::suite::{run_check, Check, CheckContext};

/// Largest local dimension the sweep will build.
pub const MAX_SCAN_M: usize = 3;
/// Longest chain the sweep will build.
pub const MAX_SCAN_N: usize = 4;
/// Chain lengths for the Hamiltonian identity stop here.
pub const MAX_HAMILTONIAN_N: usize = 3;
/// Transfer checks skip chains whose auxiliary-plus-chain space is larger.
pub const MAX_SCAN_TRANSFER_DIM: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Runs on the rayon pool when the `parallel` feature is enabled,
    /// sequentially otherwise.
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub families: Vec<Family>,
    pub seed: u64,
    pub trials: usize,
    pub max_m: usize,
    pub max_n: usize,
    pub execution: Execution,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            families: Family::ALL.to_vec(),
            seed: 42,
            trials: 20,
            max_m: MAX_SCAN_M,
            max_n: MAX_SCAN_N,
            execution: Execution::Parallel,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if !(2..=MAX_SCAN_M).contains(&self.max_m) {
            return Err(Error::InvalidParameter(format!("max-m must be in 2..={MAX_SCAN_M}, got {}", self.max_m)));
        }
        if !(2..=MAX_SCAN_N).contains(&self.max_n) {
            return Err(Error::InvalidParameter(format!("max-n must be in 2..={MAX_SCAN_N}, got {}", self.max_n)));
        }
        if self.families.is_empty() {
            return Err(Error::InvalidParameter("no families selected".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellKey {
    pub family: Family,
    pub check: Check,
    pub m: usize,
    pub n: Option<usize>,
    pub trial: usize,
}

impl CellKey {
    fn stream_name(&self) -> String {
        let n = self.n.map_or_else(String::new, |n| format!("/n{n}"));
        format!("{}/{}/m{}{}/{}", self.family, self.check, self.m, n, self.trial)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub family: Family,
    pub seed: u64,
    pub check: Check,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub trial: usize,
    pub passed: bool,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub seed: u64,
    pub trials: usize,
    pub max_m: usize,
    pub max_n: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub families: Vec<FamilyTally>,
    pub records: Vec<ScanRecord>,
}

/// Per-family pass counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTally {
    pub family: Family,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl ScanSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Every cell the configuration asks for, in key order.
pub fn cells(config: &ScanConfig) -> Vec<CellKey> {
    let mut out = Vec::new();
    for &family in &config.families {
        let ms: Vec<usize> = if family.is_tasep() { (2..=config.max_m).collect() } else { vec![2] };
        for check in Check::ALL {
            if !check.applies_to(family) {
                continue;
            }
            // The Hecke cell uses the fixed idempotent, filed under its family.
            if check == Check::Hecke && family != Family::S4 {
                continue;
            }
            for &m in &ms {
                let ns: Vec<Option<usize>> = match check {
                    Check::Transfer => chain_lengths(m, config.max_n),
                    Check::Hamiltonian => chain_lengths(m, config.max_n.min(MAX_HAMILTONIAN_N)),
                    _ => vec![None],
                };
                for n in ns {
                    for trial in 0..config.trials {
                        out.push(CellKey { family, check, m, n, trial });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn chain_lengths(m: usize, max_n: usize) -> Vec<Option<usize>> {
    (2..=max_n)
        .filter(|&n| crate::linalg::space_dim(m, n + 1).is_some_and(|d| d <= MAX_SCAN_TRANSFER_DIM))
        .map(Some)
        .collect()
}

/// Runs one cell and turns errors into failed records.
pub fn run_cell(seed: u64, key: &CellKey) -> ScanRecord {
    let outcome = evaluate_cell(seed, key);
    let (passed, witness, error) = match outcome {
        Ok(report) => (report.passed, report.witness, None),
        Err(e) => (false, None, Some(e.to_string())),
    };
    ScanRecord {
        family: key.family,
        seed,
        check: key.check,
        m: key.m,
        n: key.n,
        trial: key.trial,
        passed,
        witness,
        error,
    }
}

fn evaluate_cell(seed: u64, key: &CellKey) -> Result<crate::algebra::CheckReport> {
    let mut rng = cell_rng(seed, &key.stream_name());
    let mut ctx = CheckContext::with_chain(key.n.unwrap_or(0));
    let spec: FamilyInstance = match key.check {
        Check::Hecke => {
            let g = hecke_idempotent();
            return crate::suite::run_check_on(Check::Hecke, &g, crate::algebra::Relation::Sigma, None, &ctx, &mut rng);
        }
        Check::Product => {
            let (s, t) = random_commuting_tasep_pair(key.m, &mut rng)?;
            ctx.partner = Some(t);
            s
        }
        _ => random_instance(key.family, key.m, &mut rng)?,
    };
    run_check(key.check, &spec, &ctx, &mut rng)
}

/// Runs the full sweep.
pub fn scan(config: &ScanConfig) -> Result<ScanSummary> {
    config.validate()?;
    let keys = cells(config);
    let records = run_all(&keys, config.seed, config.execution);
    let passed = records.iter().filter(|r| r.passed).count();
    let mut families: Vec<FamilyTally> = Vec::new();
    for record in &records {
        // Records are sorted by family first, so each family is one run.
        if families.last().map(|t| t.family) != Some(record.family) {
            families.push(FamilyTally { family: record.family, total: 0, passed: 0, failed: 0 });
        }
        let tally = families.last_mut().expect("pushed above");
        tally.total += 1;
        if record.passed {
            tally.passed += 1;
        } else {
            tally.failed += 1;
        }
    }
    Ok(ScanSummary {
        seed: config.seed,
        trials: config.trials,
        max_m: config.max_m,
        max_n: config.max_n,
        total: records.len(),
        passed,
        failed: records.len() - passed,
        families,
        records,
    })
}

fn run_all(keys: &[CellKey], seed: u64, execution: Execution) -> Vec<ScanRecord> {
    #[cfg(feature = "parallel")]
    if execution == Execution::Parallel {
        use rayon::prelude::*;
        return keys.par_iter().map(|k| run_cell(seed, k)).collect();
    }
    let _ = execution;
    keys.iter().map(|k| run_cell(seed, k)).collect()
}
