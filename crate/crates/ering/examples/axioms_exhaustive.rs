//! Walks the complete effect set of small integer function carriers and
//! checks every ring/effect axiom on every instance.
//!
//! Integer-valued carriers have E = {0,1}-indicators, so the effect set is
//! finite and the axiom suite runs with nothing sampled away. Run with
//! `cargo run --example axioms_exhaustive`.

use ering::carrier::{Carrier, MeasurableSpace, ValueRing};
use ering::{run_suite_with, SampleStrategy, SuiteId};

fn main() {
    for atoms in [2usize, 3] {
        let space = MeasurableSpace::singletons(atoms).unwrap();
        let c = Carrier::function(space, ValueRing::Integers, None).unwrap();
        let strategy = SampleStrategy::exhaustive(0, 400, 6);

        println!("== {} ==", c.describe());
        for suite in [SuiteId::Axioms, SuiteId::Lemmas] {
            let report = run_suite_with(&c, suite, &strategy).unwrap();
            println!("{suite}: verdict {} over {} cases", report.verdict, report.cases_total);
            for law in &report.laws {
                println!("  {:32} {:>6} cases  {:>3} failures", law.law, law.cases, law.failures);
            }
        }
        println!();
    }
}
