//! Suite dispatch: names, capability errors, and the runner the CLI uses.

use crate::carrier::{Carrier, CarrierError};
use crate::report::{SampleStrategy, VerificationReport};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("exhaustive strategy requested but {model} has no complete effect enumeration")]
    ExhaustiveUnavailable { model: String },
    #[error("suite {suite} requires {requirement}; {model} does not provide it")]
    CapabilityMismatch { suite: String, requirement: String, model: String },
    #[error(transparent)]
    Carrier(#[from] CarrierError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteId {
    Axioms,
    Lemmas,
    Effects,
    Projections,
    Omp,
    Compression,
    Boolean,
    Bring,
    Stone,
    All,
}

impl SuiteId {
    pub const ALL_IDS: [SuiteId; 10] = [
        SuiteId::Axioms,
        SuiteId::Lemmas,
        SuiteId::Effects,
        SuiteId::Projections,
        SuiteId::Omp,
        SuiteId::Compression,
        SuiteId::Boolean,
        SuiteId::Bring,
        SuiteId::Stone,
        SuiteId::All,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::Axioms => "axioms",
            SuiteId::Lemmas => "lemmas",
            SuiteId::Effects => "effects",
            SuiteId::Projections => "projections",
            SuiteId::Omp => "omp",
            SuiteId::Compression => "compression",
            SuiteId::Boolean => "boolean",
            SuiteId::Bring => "bring",
            SuiteId::Stone => "stone",
            SuiteId::All => "all",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = SuiteId::ALL_IDS.iter().map(|s| s.as_str()).collect();
        write!(f, "unknown suite {:?}; expected one of {}", self.0, names.join(", "))
    }
}

impl std::error::Error for UnknownSuite {}

impl FromStr for SuiteId {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL_IDS
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Picks exhaustive mode exactly when the carrier's effect set admits a
/// complete enumeration.
pub fn resolve_strategy(c: &Carrier, seed: u64, budget: u64, bound: u32) -> SampleStrategy {
    if c.effects_enumerable() {
        SampleStrategy::exhaustive(seed, budget, bound)
    } else {
        SampleStrategy::seeded(seed, budget, bound)
    }
}

/// Runs one suite against a carrier with an auto-resolved strategy.
pub fn run_suite(
    c: &Carrier,
    suite: SuiteId,
    seed: u64,
    budget: u64,
    bound: u32,
) -> Result<VerificationReport, SuiteError> {
    let strategy = resolve_strategy(c, seed, budget, bound);
    run_suite_with(c, suite, &strategy)
}

/// Runs one suite with an explicit strategy (the CLI resolves its own).
pub fn run_suite_with(
    c: &Carrier,
    suite: SuiteId,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    match suite {
        SuiteId::Axioms => crate::axioms::verify_ering_axioms(c, strategy),
        SuiteId::Lemmas => crate::axioms::verify_lemma_suite(c, strategy),
        SuiteId::Effects => crate::effects::verify_effect_laws(c, strategy),
        SuiteId::Projections => crate::projections::verify_projection_laws(c, strategy),
        SuiteId::Omp => crate::projections::verify_omp_suite(c, strategy),
        SuiteId::Compression => crate::projections::verify_compression_suite(c, strategy),
        SuiteId::Boolean => crate::boolean::verify_boolean_suite(c, strategy),
        SuiteId::Bring => crate::boolean::verify_bring_suite(c, strategy),
        SuiteId::Stone => crate::boolean::verify_stone_suite(c, strategy),
        SuiteId::All => run_all(c, strategy),
    }
}

/// Concatenates every suite that applies to the carrier into one report.
/// Suites whose capability requirements the carrier cannot meet are
/// skipped with a note; an explicit request for such a suite alone still
/// errors.
fn run_all(c: &Carrier, strategy: &SampleStrategy) -> Result<VerificationReport, SuiteError> {
    use crate::report::ReportBuilder;
    let mut b = ReportBuilder::new(&c.describe(), "all", *strategy);
    let parts = [
        SuiteId::Axioms,
        SuiteId::Lemmas,
        SuiteId::Effects,
        SuiteId::Projections,
        SuiteId::Omp,
        SuiteId::Compression,
        SuiteId::Boolean,
        SuiteId::Bring,
        SuiteId::Stone,
    ];
    let mut merged: Vec<VerificationReport> = Vec::new();
    for part in parts {
        match run_suite_with(c, part, strategy) {
            Ok(r) => merged.push(r),
            Err(SuiteError::CapabilityMismatch { suite, requirement, .. }) => {
                b.note(&format!("suite {suite} skipped: requires {requirement}"));
            }
            Err(e) => return Err(e),
        }
    }
    for r in merged {
        for law in r.laws {
            // law tags are globally unique across suites, so cases collate 1:1
            b.declare_laws(&[&law.law]);
            b.absorb_law(law);
        }
        for f in r.failures {
            b.absorb_failure(f);
        }
        for u in r.undecided {
            b.absorb_undecided(u);
        }
        for n in r.notes {
            b.note(&n);
        }
    }
    Ok(b.finish())
}
