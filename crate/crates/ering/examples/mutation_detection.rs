//! Negative testing: deliberately broken structures must be rejected with
//! concrete counterexamples, not merely fail to pass.
//!
//! Three mutations break a carrier (a cone accepting negatives, an effect
//! set missing complements, a positivity test accepting indefinite
//! matrices); three more break inputs to the law checkers (a
//! non-idempotent smuggled into a projection universe, a one-sided
//! compression, an atom map with overlapping images). Each is caught and
//! named. Run with `cargo run --example mutation_detection`.

use ering::boolean::extend_boolean_hom;
use ering::carrier::{Carrier, MeasurableSpace, Mutation, ValueRing};
use ering::projections::{projection_universe, retraction_projection, verify_omp, EndoTable};
use ering::{run_suite_with, Element, Rational, SampleStrategy, SuiteId, Verdict};

fn int_carrier(atoms: usize) -> Carrier {
    let space = MeasurableSpace::singletons(atoms).unwrap();
    Carrier::function(space, ValueRing::Integers, None).unwrap()
}

fn main() {
    let strategy = SampleStrategy::seeded(1, 150, 4);

    // Carrier mutations: the axiom suite reports the broken law.
    let mutants = [
        int_carrier(2).with_mutation(Mutation::ConeAcceptsNegatives).unwrap(),
        Carrier::function(
            MeasurableSpace::singletons(2).unwrap(),
            ValueRing::Rationals,
            Some(4),
        )
        .unwrap()
        .with_mutation(Mutation::EffectSetNotComplemented)
        .unwrap(),
        Carrier::matrix(2).unwrap().with_mutation(Mutation::PsdAcceptsIndefinite).unwrap(),
    ];
    for c in &mutants {
        let report = run_suite_with(c, SuiteId::Axioms, &strategy).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let first = &report.failures[0];
        println!("{}", c.describe());
        println!("  verdict {}, first counterexample: law {} on [{}]", report.verdict, first.law, first.inputs.join("; "));
    }

    // A non-idempotent element poisoning a projection universe.
    let rat = Carrier::function(
        MeasurableSpace::singletons(2).unwrap(),
        ValueRing::Rationals,
        None,
    )
    .unwrap();
    let half = Element::Function(vec![Rational::new(1, 2), Rational::zero()]);
    let mut universe = projection_universe(&rat);
    universe.push(half);
    match verify_omp(&rat, &universe, &strategy) {
        Err(e) => println!("poisoned universe: {e}"),
        Ok(_) => unreachable!(),
    }

    // g -> pg is additive and order-preserving but lands outside the
    // symmetric matrices, so it is no retraction.
    let m = Carrier::matrix(2).unwrap();
    let p = ering::SymMatrix::from_int_rows(&[&[1, 0], &[0, 0]]).unwrap();
    let pr = m.ring(&Element::Matrix(p));
    let one_sided = EndoTable::from_ring_fn(&m, |b| pr.mul(b));
    match retraction_projection(&m, &one_sided, &strategy) {
        Err(e) => println!("one-sided multiplication: {e}"),
        Ok(_) => unreachable!(),
    }

    // An atom map sending two atoms to the same image cannot be Boolean:
    // meets of distinct atoms must stay disjoint.
    let c3 = int_carrier(3);
    let a0 = Element::Function(vec![Rational::one(), Rational::zero(), Rational::zero()]);
    let overlap = vec![a0.clone(), a0.clone(), a0];
    match extend_boolean_hom(&c3, &c3, &overlap) {
        Err(e) => println!("overlapping atom map: {e}"),
        Ok(_) => unreachable!(),
    }
}
