//! Sharp effects are the idempotent ones, and two order-theoretic
//! characterisations agree with that exactly: no nonzero effect sits below
//! both e and 1-e, and sums of effects below e stay below e.
//!
//! The suite cross-checks all three on every effect of a rational grid
//! carrier and on sampled matrix effects. Run with
//! `cargo run --example sharpness`.

use ering::carrier::{Carrier, MeasurableSpace, ValueRing};
use ering::effects::{is_sharp, Effect};
use ering::{Element, Rational, SampleStrategy};

fn main() {
    let space = MeasurableSpace::singletons(2).unwrap();
    let c = Carrier::function(space, ValueRing::Rationals, Some(4)).unwrap();
    let strategy = SampleStrategy::seeded(9, 60, 4);

    println!("effects of {} (grid steps of 1/4):", c.describe());
    let effects = c.enumerate_effects().unwrap();
    let mut sharp = 0usize;
    for e in &effects.elements {
        let eff = Effect::new(&c, e.clone()).unwrap();
        let report = is_sharp(&eff, &strategy);
        assert_eq!(report.idempotent, report.subadditive);
        assert_eq!(report.idempotent, report.no_common_lower);
        if report.idempotent {
            sharp += 1;
            println!("  sharp:   {e}");
        }
    }
    println!("{sharp} sharp of {} enumerated effects; the rest are unsharp", effects.elements.len());

    // (1/2)·1 is maximally unsharp: e - e^2 = (1/4)·1 witnesses a nonzero
    // common lower bound for e and 1-e.
    let half = Element::Function(vec![Rational::new(1, 2), Rational::new(1, 2)]);
    let eff = Effect::new(&c, half).unwrap();
    let report = is_sharp(&eff, &strategy);
    println!("\n(1/2, 1/2): idempotent={}, common lower bound found: {}", report.idempotent, report.lower_witness.is_some());
    if let Some(w) = &report.lower_witness {
        println!("  witness below both e and 1-e: {w}");
    }

    let m = Carrier::matrix(2).unwrap();
    let p = Element::Matrix(ering::SymMatrix::from_int_rows(&[&[1, 0], &[0, 0]]).unwrap());
    let report = is_sharp(&Effect::new(&m, p.clone()).unwrap(), &strategy);
    println!("\non {}: {p} sharp: {}", m.describe(), report.idempotent);
    let h = m.try_scalar_mul(&Rational::new(1, 2), &m.one()).unwrap();
    let report = is_sharp(&Effect::new(&m, h.clone()).unwrap(), &strategy);
    println!("{h} sharp: {}", report.idempotent);
}
