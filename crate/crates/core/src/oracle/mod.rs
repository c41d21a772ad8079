//! Brute-force oracles and exhaustive small-instance search.
//!
//! Everything here is deliberately naive: congruences come from scanning
//! every partition of the carrier, and lattices from scanning relations.

mod enumerate;
mod search;

use std::time::Duration;

pub use enumerate::{enumerate_small_lattices, enumerate_small_lattices_naive, MAX_ENUMERATION_SIZE};
pub use search::{search_representation, Certificate, SearchReport};

use crate::error::{Error, Result};
use crate::lattice::{Congruence, FiniteLattice};

pub const BUDGET_ENV: &str = "PRINC_CONG_BUDGET";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_carrier_size: usize,
    pub max_candidates: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_carrier_size: 7,
            max_candidates: 1_000_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    pub fn new(max_carrier_size: usize, max_candidates: usize, time_limit: Duration) -> Result<Self> {
        if max_carrier_size == 0 || max_candidates == 0 || time_limit.is_zero() {
            return Err(Error::Input("budget values must be positive".into()));
        }
        Ok(OracleBudget {
            max_carrier_size,
            max_candidates,
            time_limit,
        })
    }

    /// Parses `key=value` pairs separated by commas, starting from the
    /// defaults. Keys: `max_carrier_size`, `max_candidates`, `time_limit` (seconds).
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = Self::default();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("budget entry `{part}` is not key=value")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Input(format!("budget value `{v}` is not a number")))
            };
            match key.trim() {
                "max_carrier_size" => b.max_carrier_size = parse(value)? as usize,
                "max_candidates" => b.max_candidates = parse(value)? as usize,
                "time_limit" => b.time_limit = Duration::from_secs(parse(value)?),
                other => return Err(Error::Input(format!("unknown budget key `{other}`"))),
            }
        }
        Self::new(b.max_carrier_size, b.max_candidates, b.time_limit)
    }

    /// Defaults overridden by the `PRINC_CONG_BUDGET` environment variable, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(text) => Self::parse(&text),
            Err(_) => Ok(Self::default()),
        }
    }

    fn check_carrier(&self, n: usize) -> Result<()> {
        if n > self.max_carrier_size {
            return Err(Error::BudgetExceeded(format!(
                "carrier of size {n} exceeds the oracle limit {}",
                self.max_carrier_size
            )));
        }
        Ok(())
    }
}

/// Calls `visit` with every restricted growth string of length `n`.
fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut a = vec![0usize; n];
    let mut max = vec![0usize; n];
    loop {
        visit(&a);
        // rightmost position that can still grow
        let Some(i) = (1..n).rev().find(|&i| a[i] <= max[i - 1]) else {
            return;
        };
        a[i] += 1;
        max[i] = max[i - 1].max(a[i]);
        for k in i + 1..n {
            a[k] = 0;
            max[k] = max[i];
        }
    }
}

fn compatible(lattice: &FiniteLattice, labels: &[usize]) -> bool {
    let n = lattice.len();
    (0..n).all(|a| {
        (0..n).filter(|&b| labels[a] == labels[b]).all(|b| {
            (0..n).all(|t| {
                labels[lattice.meet(a, t)] == labels[lattice.meet(b, t)]
                    && labels[lattice.join(a, t)] == labels[lattice.join(b, t)]
            })
        })
    })
}

/// Every partition of the carrier that is compatible with meet and join.
pub fn oracle_congruences(lattice: &FiniteLattice, budget: &OracleBudget) -> Result<Vec<Congruence>> {
    budget.check_carrier(lattice.len())?;
    let mut out = Vec::new();
    for_each_partition(lattice.len(), |labels| {
        if compatible(lattice, labels) {
            out.push(Congruence::from_labels(labels));
        }
    });
    Ok(out)
}

/// The inclusion-least oracle congruence relating `a` and `b`.
pub fn oracle_principal(lattice: &FiniteLattice, a: usize, b: usize, budget: &OracleBudget) -> Result<Congruence> {
    lattice.check_index(a)?;
    lattice.check_index(b)?;
    let containing: Vec<Congruence> = oracle_congruences(lattice, budget)?
        .into_iter()
        .filter(|c| c.relates(a, b))
        .collect();
    containing
        .iter()
        .find(|c| containing.iter().all(|d| c.refines(d)))
        .cloned()
        .ok_or_else(|| Error::Invariant("no least congruence containing the pair".into()))
}
