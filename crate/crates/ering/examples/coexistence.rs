//! Coexistence of effect pairs: a common part d with e - d, f - d, and
//! e + f - d all still effects.
//!
//! Three outcomes are possible. A witness, found here for every function
//! pair via the truncated sum max(0, e + f - 1); an exact refutation,
//! issued for noncommuting projection pairs; or undecided, when a bounded
//! search runs out of budget without either. The last case is real:
//! scaling a refuted projection pair by 1/2 turns it coexistent, so no
//! sound checker may promote "no witness found" to "refuted".
//!
//! Run with `cargo run --example coexistence`.

use ering::carrier::Carrier;
use ering::effects::{coexistence_witness, CoexistenceOutcome, Effect};
use ering::projections::incompatible_projection_pair;
use ering::{Rational, SampleStrategy};

fn show(label: &str, outcome: &CoexistenceOutcome) {
    match outcome {
        CoexistenceOutcome::Coexistent(w) => {
            println!("{label}: coexistent with d = {}, e1 = {}, f1 = {}", w.d, w.e1, w.f1);
        }
        CoexistenceOutcome::NotCoexistent { reason } => {
            println!("{label}: refuted ({reason})");
        }
        CoexistenceOutcome::Undecided { cases_tried } => {
            println!("{label}: undecided after {cases_tried} cases");
        }
    }
}

fn main() {
    let strategy = SampleStrategy::seeded(3, 120, 4);
    let c = Carrier::matrix(2).unwrap();
    let (p, q) = incompatible_projection_pair(&c).unwrap();

    // Noncommuting projections: exactly refutable.
    let ep = Effect::new(&c, p.clone()).unwrap();
    let eq = Effect::new(&c, q.clone()).unwrap();
    let outcome = coexistence_witness(&ep, &eq, &strategy).unwrap();
    show("P1 vs Q1", &outcome);

    // Their halves coexist; the search produces the common part.
    let half = Rational::new(1, 2);
    let hp = Effect::new(&c, c.try_scalar_mul(&half, &p).unwrap()).unwrap();
    let hq = Effect::new(&c, c.try_scalar_mul(&half, &q).unwrap()).unwrap();
    let outcome = coexistence_witness(&hp, &hq, &strategy).unwrap();
    show("(1/2)P1 vs (1/2)Q1", &outcome);
    if let CoexistenceOutcome::Coexistent(w) = &outcome {
        println!("  witness validates: {}", w.validates(&hp, &hq));
    }

    // Small effects coexist trivially with d = 0.
    let quarter = Rational::new(1, 4);
    let sp = Effect::new(&c, c.try_scalar_mul(&quarter, &p).unwrap()).unwrap();
    let sq = Effect::new(&c, c.try_scalar_mul(&quarter, &q).unwrap()).unwrap();
    show("(1/4)P1 vs (1/4)Q1", &coexistence_witness(&sp, &sq, &strategy).unwrap());
}
