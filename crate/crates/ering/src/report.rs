//! Verification reports and the sampling strategy they echo.
//!
//! Reports are deterministic: law order is declaration order, failures are
//! recorded in case order, and serialization goes through ordered structs.
//! Running the same suite on the same model with the same seed and budget
//! produces byte-identical output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Seeded,
}

/// How a suite draws its instances. Exhaustive mode walks complete
/// enumerations where they exist; seeded mode draws from a counter-based
/// generator, so case `i` sees the same inputs no matter how many threads
/// ran or in what order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleStrategy {
    pub mode: Mode,
    pub seed: u64,
    pub case_budget: u64,
    pub magnitude_bound: u32,
}

impl SampleStrategy {
    pub fn exhaustive(seed: u64, case_budget: u64, magnitude_bound: u32) -> Self {
        SampleStrategy { mode: Mode::Exhaustive, seed, case_budget, magnitude_bound }
    }

    pub fn seeded(seed: u64, case_budget: u64, magnitude_bound: u32) -> Self {
        SampleStrategy { mode: Mode::Seeded, seed, case_budget, magnitude_bound }
    }

    /// Independent generator for one case: same seed, stream = case index.
    pub fn case_rng(&self, case: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(case);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Undecided => "undecided",
        };
        write!(f, "{s}")
    }
}

/// Per-law tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: String,
    pub cases: u64,
    pub failures: u64,
}

/// A concrete counterexample: the inputs that broke the law, rendered
/// exactly, plus what was expected and what actually held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case_id: u64,
    pub law: String,
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

/// An instance the checker could neither certify nor refute within budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Undecided {
    pub case_id: u64,
    pub law: String,
    pub inputs: Vec<String>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub model: String,
    pub suite: String,
    pub strategy: SampleStrategy,
    pub cases_total: u64,
    pub laws: Vec<LawResult>,
    pub failures: Vec<Failure>,
    pub undecided: Vec<Undecided>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        let _ = writeln!(out, "model: {}", self.model);
        let mode = match self.strategy.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::Seeded => "seeded",
        };
        let _ = writeln!(
            out,
            "strategy: mode={mode} seed={} budget={} bound={}",
            self.strategy.seed, self.strategy.case_budget, self.strategy.magnitude_bound
        );
        let width = self.laws.iter().map(|l| l.law.len()).max().unwrap_or(3).max(3);
        let _ = writeln!(out, "{:width$}  {:>10}  {:>8}", "law", "cases", "failures");
        for l in &self.laws {
            let _ = writeln!(out, "{:width$}  {:>10}  {:>8}", l.law, l.cases, l.failures);
        }
        if !self.failures.is_empty() {
            let _ = writeln!(out, "failures:");
            for f in &self.failures {
                let _ = writeln!(
                    out,
                    "  case {} law {}: inputs [{}] expected {} actual {}",
                    f.case_id,
                    f.law,
                    f.inputs.join("; "),
                    f.expected,
                    f.actual
                );
            }
        }
        if !self.undecided.is_empty() {
            let _ = writeln!(out, "undecided:");
            for u in &self.undecided {
                let _ = writeln!(
                    out,
                    "  case {} law {}: inputs [{}] ({})",
                    u.case_id,
                    u.law,
                    u.inputs.join("; "),
                    u.note
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let total_failures: u64 = self.laws.iter().map(|l| l.failures).sum();
        let _ = writeln!(
            out,
            "{} cases, {} failures, {} undecided",
            self.cases_total,
            total_failures,
            self.undecided.len()
        );
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Writes the report to `path` (atomically, via a sibling temp file and
/// rename) or to stdout when no path is given.
pub fn emit_report(
    report: &VerificationReport,
    format: ReportFormat,
    path: Option<&Path>,
) -> io::Result<()> {
    let body = match format {
        ReportFormat::Text => report.to_text_string(),
        ReportFormat::Json => report.to_json_string(),
    };
    match path {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(p) => {
            let tmp = p.with_extension("tmp-report");
            fs::write(&tmp, body.as_bytes())?;
            fs::rename(&tmp, p)
        }
    }
}

/// Outcome of one law evaluation on one case.
#[derive(Clone, Debug)]
pub enum CaseStatus {
    Pass,
    Fail { inputs: Vec<String>, expected: String, actual: String },
    Undecided { inputs: Vec<String>, note: String },
}

#[derive(Clone, Debug)]
pub struct CaseRecord {
    pub law: String,
    pub status: CaseStatus,
}

impl CaseRecord {
    pub fn pass(law: &str) -> Self {
        CaseRecord { law: law.to_string(), status: CaseStatus::Pass }
    }

    pub fn fail(law: &str, inputs: Vec<String>, expected: &str, actual: &str) -> Self {
        CaseRecord {
            law: law.to_string(),
            status: CaseStatus::Fail {
                inputs,
                expected: expected.to_string(),
                actual: actual.to_string(),
            },
        }
    }

    pub fn check(law: &str, ok: bool, inputs: Vec<String>, expected: &str, actual: &str) -> Self {
        if ok {
            CaseRecord::pass(law)
        } else {
            CaseRecord::fail(law, inputs, expected, actual)
        }
    }

    pub fn undecided(law: &str, inputs: Vec<String>, note: &str) -> Self {
        CaseRecord {
            law: law.to_string(),
            status: CaseStatus::Undecided { inputs, note: note.to_string() },
        }
    }

    /// Failure payloads cost string formatting; build them only on failure.
    pub fn check_with(
        law: &str,
        ok: bool,
        detail: impl FnOnce() -> (Vec<String>, String, String),
    ) -> Self {
        if ok {
            CaseRecord::pass(law)
        } else {
            let (inputs, expected, actual) = detail();
            CaseRecord {
                law: law.to_string(),
                status: CaseStatus::Fail { inputs, expected, actual },
            }
        }
    }
}

/// Runs `f` once per case index in parallel, then folds the records into
/// the builder in case order. Each case gets its own RNG stream, so the
/// result is independent of thread scheduling.
pub(crate) fn run_seeded_cases<F>(
    b: &mut ReportBuilder,
    strategy: &SampleStrategy,
    offset: u64,
    f: F,
) where
    F: Fn(u64, &mut ChaCha8Rng) -> Vec<CaseRecord> + Sync,
{
    use rayon::prelude::*;
    let results: Vec<(u64, Vec<CaseRecord>)> = (0..strategy.case_budget)
        .into_par_iter()
        .map(|i| {
            let mut rng = strategy.case_rng(i);
            (i, f(i, &mut rng))
        })
        .collect();
    for (i, recs) in results {
        b.record_all(offset + i, recs);
    }
}

/// Stored failure payloads are capped; tallies stay exact.
const FAILURE_CAP: usize = 25;

/// Deterministic accumulator: laws keep declaration order, records arrive
/// in case order.
pub struct ReportBuilder {
    model: String,
    suite: String,
    strategy: SampleStrategy,
    laws: Vec<LawResult>,
    failures: Vec<Failure>,
    undecided: Vec<Undecided>,
    notes: Vec<String>,
    suppressed_failures: u64,
}

impl ReportBuilder {
    pub fn new(model: &str, suite: &str, strategy: SampleStrategy) -> Self {
        ReportBuilder {
            model: model.to_string(),
            suite: suite.to_string(),
            strategy,
            laws: Vec::new(),
            failures: Vec::new(),
            undecided: Vec::new(),
            notes: Vec::new(),
            suppressed_failures: 0,
        }
    }

    pub fn declare_laws(&mut self, laws: &[&str]) {
        for &law in laws {
            if !self.laws.iter().any(|l| l.law == law) {
                self.laws.push(LawResult { law: law.to_string(), cases: 0, failures: 0 });
            }
        }
    }

    fn law_entry(&mut self, law: &str) -> &mut LawResult {
        let idx = match self.laws.iter().position(|l| l.law == law) {
            Some(i) => i,
            None => {
                self.laws.push(LawResult { law: law.to_string(), cases: 0, failures: 0 });
                self.laws.len() - 1
            }
        };
        &mut self.laws[idx]
    }

    pub fn record(&mut self, case_id: u64, rec: CaseRecord) {
        let entry = self.law_entry(&rec.law);
        entry.cases += 1;
        match rec.status {
            CaseStatus::Pass => {}
            CaseStatus::Fail { inputs, expected, actual } => {
                entry.failures += 1;
                if self.failures.len() < FAILURE_CAP {
                    self.failures.push(Failure {
                        case_id,
                        law: rec.law,
                        inputs,
                        expected,
                        actual,
                    });
                } else {
                    self.suppressed_failures += 1;
                }
            }
            CaseStatus::Undecided { inputs, note } => {
                self.undecided.push(Undecided { case_id, law: rec.law, inputs, note });
            }
        }
    }

    pub fn record_all(&mut self, case_id: u64, recs: Vec<CaseRecord>) {
        for rec in recs {
            self.record(case_id, rec);
        }
    }

    pub fn note(&mut self, s: &str) {
        self.notes.push(s.to_string());
    }

    /// Folds an already-tallied law from a sub-report into this one.
    pub fn absorb_law(&mut self, law: LawResult) {
        let entry = self.law_entry(&law.law);
        entry.cases += law.cases;
        entry.failures += law.failures;
    }

    pub fn absorb_failure(&mut self, f: Failure) {
        if self.failures.len() < FAILURE_CAP {
            self.failures.push(f);
        } else {
            self.suppressed_failures += 1;
        }
    }

    pub fn absorb_undecided(&mut self, u: Undecided) {
        self.undecided.push(u);
    }

    pub fn finish(mut self) -> VerificationReport {
        if self.suppressed_failures > 0 {
            self.notes.push(format!(
                "{} further failure payloads suppressed; tallies are exact",
                self.suppressed_failures
            ));
        }
        let cases_total: u64 = self.laws.iter().map(|l| l.cases).sum();
        let any_failure = self.laws.iter().any(|l| l.failures > 0);
        let verdict = if any_failure {
            Verdict::Fail
        } else if !self.undecided.is_empty() {
            Verdict::Undecided
        } else {
            Verdict::Pass
        };
        VerificationReport {
            schema_version: 1,
            model: self.model,
            suite: self.suite,
            strategy: self.strategy,
            cases_total,
            laws: self.laws,
            failures: self.failures,
            undecided: self.undecided,
            notes: self.notes,
            verdict,
        }
    }
}
