use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::nondegenerate_unchecked;
use super::keys::{congruence_key_unchecked, similarity_key_unchecked};
use super::PointSet;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Congruence,
    Similarity,
}

impl std::str::FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "congruence" => Ok(Relation::Congruence),
            "similarity" => Ok(Relation::Similarity),
            other => Err(Error::invalid(format!("unknown relation {other:?}"))),
        }
    }
}

/// Random subset sampling used when the full enumeration is over budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Subsample {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassOptions {
    pub include_degenerate: bool,
    /// Maximum number of (k+1)-subsets to enumerate.
    pub budget: u128,
    pub subsample: Option<Subsample>,
}

impl Default for ClassOptions {
    fn default() -> Self {
        ClassOptions {
            include_degenerate: false,
            budget: 200_000_000,
            subsample: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub key: Vec<i64>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassCount {
    pub k: usize,
    pub relation: Relation,
    /// Key -> number of vertex subsets realizing it.
    pub table: BTreeMap<Vec<i64>, u64>,
    pub subsets_examined: u64,
    pub degenerate_skipped: u64,
    /// True when the table came from random subsets rather than all of them.
    pub sampled: bool,
}

impl ClassCount {
    pub fn count(&self) -> usize {
        self.table.len()
    }

    /// Classes in key order.
    pub fn entries(&self) -> Vec<ClassEntry> {
        self.table
            .iter()
            .map(|(k, &m)| ClassEntry {
                key: k.clone(),
                multiplicity: m,
            })
            .collect()
    }
}

pub(crate) fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[derive(Default)]
struct Partial {
    table: BTreeMap<Vec<i64>, u64>,
    examined: u64,
    skipped: u64,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        for (k, m) in other.table {
            *self.table.entry(k).or_insert(0) += m;
        }
        self.examined += other.examined;
        self.skipped += other.skipped;
        self
    }
}

fn visit(
    ps: &PointSet,
    relation: Relation,
    include_degenerate: bool,
    vs: &[usize],
    acc: &mut Partial,
) -> Result<()> {
    acc.examined += 1;
    if !include_degenerate && !nondegenerate_unchecked(ps, vs) {
        acc.skipped += 1;
        return Ok(());
    }
    let key = match relation {
        Relation::Congruence => congruence_key_unchecked(ps, vs)?.entries,
        Relation::Similarity => match similarity_key_unchecked(ps, vs) {
            Ok(k) => k.entries,
            // Coincident tuples have no similarity class.
            Err(Error::Degenerate(_)) => {
                acc.skipped += 1;
                return Ok(());
            }
            Err(e) => return Err(e),
        },
    };
    *acc.table.entry(key).or_insert(0) += 1;
    Ok(())
}

/// Number of distinct congruence or similarity classes among the
/// (k+1)-point subsets of `ps`.
///
/// Keys absorb vertex permutations, so only index combinations are
/// visited. Work is split by leading index and merged by key.
pub fn count_classes(
    ps: &PointSet,
    k: usize,
    relation: Relation,
    opts: &ClassOptions,
) -> Result<ClassCount> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > ps.dim() {
        return Err(Error::invalid(format!(
            "k = {k} exceeds the ambient dimension {}",
            ps.dim()
        )));
    }
    let n = ps.len();
    let required = binomial(n as u128, k as u128 + 1);

    let partial = if required <= opts.budget {
        (0..n)
            .into_par_iter()
            .map(|lead| -> Result<Partial> {
                let mut acc = Partial::default();
                let mut vs = Vec::with_capacity(k + 1);
                for rest in (lead + 1..n).combinations(k) {
                    vs.clear();
                    vs.push(lead);
                    vs.extend_from_slice(&rest);
                    visit(ps, relation, opts.include_degenerate, &vs, &mut acc)?;
                }
                Ok(acc)
            })
            .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?
    } else if let Some(sub) = opts.subsample {
        let mut rng = ChaCha8Rng::seed_from_u64(sub.seed);
        let mut acc = Partial::default();
        for _ in 0..sub.samples {
            let mut vs = sample(&mut rng, n, k + 1).into_vec();
            vs.sort_unstable();
            visit(ps, relation, opts.include_degenerate, &vs, &mut acc)?;
        }
        acc
    } else {
        return Err(Error::BudgetExceeded {
            what: "vertex subsets",
            required,
            budget: opts.budget,
        });
    };

    Ok(ClassCount {
        k,
        relation,
        table: partial.table,
        subsets_examined: partial.examined,
        degenerate_skipped: partial.skipped,
        sampled: required > opts.budget,
    })
}
