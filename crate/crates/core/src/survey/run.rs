use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::catalog::{Catalog, CatalogEntry, Structure};
use super::record::{Ratio, Status, SurveyRecord};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::lab::{chermak_delgado, minimal_index_normal_abelian, sylow, ENUMERATION_LIMIT};
use crate::primitives::is_prime;
use crate::witness::{
    center_witness, product_witness, quotient_witness_general, quotient_witness_pprime,
    ExtensionInstance, Witness,
};

/// Which prime a survey runs each entry at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeChoice {
    Fixed(u64),
    /// The entry's own prime (see [`CatalogEntry::default_prime`]).
    Entry,
}

impl FromStr for PrimeChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "entry" | "defining" => Ok(PrimeChoice::Entry),
            _ => s
                .parse()
                .map(PrimeChoice::Fixed)
                .map_err(|_| Error::Parse(format!("prime {s:?}: expected an integer or \"entry\""))),
        }
    }
}

impl fmt::Display for PrimeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeChoice::Fixed(p) => write!(f, "{p}"),
            PrimeChoice::Entry => f.write_str("entry"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurveyOptions {
    pub primes: Vec<PrimeChoice>,
    pub jobs: usize,
    /// Groups larger than this get witnesses only.
    pub oracle_limit: usize,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            primes: vec![PrimeChoice::Entry],
            jobs: 1,
            oracle_limit: ENUMERATION_LIMIT,
        }
    }
}

/// Every witness the survey can build for one entry at `p`.
///
/// Quotient entries whose kernel fails the p'-route preconditions simply
/// skip that route.
pub fn entry_witnesses(entry: &CatalogEntry, p: u64, limit: usize) -> Result<Vec<Witness>> {
    let g = &entry.group;
    let mut out = vec![center_witness(g, p)];
    match &entry.structure {
        Structure::Plain => {}
        Structure::Product(prod) => {
            if prod.left.order() <= limit && prod.right.order() <= limit {
                let a1 = minimal_index_normal_abelian(&prod.left, p, limit)?.subgroup;
                let a2 = minimal_index_normal_abelian(&prod.right, p, limit)?.subgroup;
                out.push(product_witness(prod, &Subgroup::whole(g), &a1, &a2, p)?);
            }
        }
        Structure::Quotient(q) => {
            if q.base.order() <= limit {
                let ext = ExtensionInstance::new(&q.base, q.kernel.clone())?;
                let base = minimal_index_normal_abelian(&q.base, p, limit)?;
                out.push(quotient_witness_general(&ext, p, &base.subgroup, None)?);
                match quotient_witness_pprime(&ext, p, base.index) {
                    Ok(w) => out.push(w),
                    Err(Error::Precondition(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

struct Analysis {
    oracle_index: Option<u64>,
    cd_index: Option<u64>,
    witnesses: BTreeMap<String, u64>,
    bounds_satisfied: bool,
}

fn analyze(entry: &CatalogEntry, p: u64, limit: usize) -> Result<Analysis> {
    if p != 0 && !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = &entry.group;
    let within = g.order() <= limit;
    let oracle_index = if within {
        Some(minimal_index_normal_abelian(g, p, limit)?.index)
    } else {
        None
    };
    let cd_index = if within {
        Some(chermak_delgado(g, limit)?.index() as u64)
    } else {
        None
    };
    let mut witnesses = BTreeMap::new();
    let mut ok = true;
    for w in entry_witnesses(entry, p, limit)? {
        ok &= !w.report.falsified();
        if let Some(best) = oracle_index {
            ok &= best <= w.report.index;
        }
        let tag = w.report.construction.tag().to_string();
        let slot = witnesses.entry(tag).or_insert(u64::MAX);
        *slot = (*slot).min(w.report.index);
    }
    Ok(Analysis {
        oracle_index,
        cd_index,
        witnesses,
        bounds_satisfied: ok,
    })
}

/// The survey record for one entry at one prime. Failures are recorded in
/// the record, never returned.
pub fn survey_entry(entry: &CatalogEntry, p: u64, limit: usize) -> SurveyRecord {
    let g = &entry.group;
    let sylow_order = if p == 0 || is_prime(p) {
        sylow(g, p).subgroup.order() as u64
    } else {
        1
    };
    let mut record = SurveyRecord {
        name: entry.name().to_string(),
        family: entry.family_tag().to_string(),
        dim: entry.dim(),
        group_digest: g.digest().to_string(),
        order: g.order() as u64,
        p,
        sylow_order,
        oracle_index: None,
        witness_indices: BTreeMap::new(),
        ratio: None,
        chermak_delgado_index: None,
        bounds_satisfied: false,
        status: Status::Error,
        error: None,
    };
    match analyze(entry, p, limit) {
        Ok(a) => {
            record.oracle_index = a.oracle_index;
            record.ratio = a
                .oracle_index
                .map(|i| Ratio::new(i, sylow_order.pow(3)).expect("positive denominator"));
            record.chermak_delgado_index = a.cd_index;
            record.witness_indices = a.witnesses;
            record.bounds_satisfied = a.bounds_satisfied;
            record.status = if !a.bounds_satisfied {
                Status::Falsified
            } else if a.oracle_index.is_none() {
                Status::WitnessOnly
            } else {
                Status::Ok
            };
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

/// One record per (entry, prime), in catalog order then prime order,
/// regardless of `jobs`.
pub fn run_survey(catalog: &Catalog, options: &SurveyOptions) -> Result<Vec<SurveyRecord>> {
    let tasks: Vec<(&CatalogEntry, u64)> = catalog
        .entries
        .iter()
        .flat_map(|e| {
            options.primes.iter().map(move |c| match c {
                PrimeChoice::Fixed(p) => (e, *p),
                PrimeChoice::Entry => (e, e.default_prime()),
            })
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    let limit = options.oracle_limit;
    Ok(pool.install(|| {
        tasks
            .par_iter()
            .map(|&(e, p)| survey_entry(e, p, limit))
            .collect()
    }))
}

/// Overall outcome, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Clean,
    EntryErrors,
    Falsified,
}

pub fn outcome(records: &[SurveyRecord]) -> Outcome {
    records
        .iter()
        .map(|r| match r.status {
            Status::Falsified => Outcome::Falsified,
            Status::Error => Outcome::EntryErrors,
            _ => Outcome::Clean,
        })
        .max()
        .unwrap_or(Outcome::Clean)
}
