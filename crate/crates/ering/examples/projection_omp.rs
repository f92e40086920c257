//! The projection order: meets and joins of commuting idempotents, the
//! orthomodular-poset laws on a finite universe, and a Mackey-compatible
//! pair split into orthogonal parts.
//!
//! Run with `cargo run --example projection_omp`.

use ering::carrier::{Carrier, MeasurableSpace, ValueRing};
use ering::projections::{
    incompatible_projection_pair, mackey_compatible, proj_join, proj_meet, projection_universe,
    verify_omp, Projection,
};
use ering::SampleStrategy;

fn main() {
    let space = MeasurableSpace::singletons(3).unwrap();
    let c = Carrier::function(space, ValueRing::Integers, None).unwrap();
    let strategy = SampleStrategy::exhaustive(0, 100, 6);

    // All 8 indicators of a 3-atom algebra.
    let universe = projection_universe(&c);
    println!("projection universe of {}:", c.describe());
    for p in &universe {
        println!("  {p}");
    }

    let p = Projection::new(&c, universe[1].clone()).unwrap();
    let q = Projection::new(&c, universe[2].clone()).unwrap();
    println!("\np = {p}, q = {q}");
    println!("p AND q = {}", proj_meet(&p, &q).unwrap());
    println!("p OR  q = {}", proj_join(&p, &q).unwrap());

    let (compatible, decomp) = mackey_compatible(&p, &q);
    println!("Mackey compatible: {compatible}");
    if let Some(d) = decomp {
        println!("  p = d + p1, q = d + q1 with d = {}, p1 = {}, q1 = {}", d.d, d.p1, d.q1);
        println!("  decomposition validates: {}", d.validates(&c, p.element(), q.element()));
    }

    let cert = verify_omp(&c, &universe, &strategy).unwrap();
    println!("\northomodular-poset laws on the full universe:");
    for law in &cert.laws {
        println!("  {:26} {:>5} cases  {} failures", law.law, law.cases, law.failures);
    }
    println!("certificate passed: {}", cert.passed());

    // Matrices hold noncommuting pairs; those have no meet in the
    // commuting calculus and are exactly the Mackey-incompatible ones.
    let m = Carrier::matrix(2).unwrap();
    let (p1, q1) = incompatible_projection_pair(&m).unwrap();
    let p1 = Projection::new(&m, p1).unwrap();
    let q1 = Projection::new(&m, q1).unwrap();
    let (compatible, _) = mackey_compatible(&p1, &q1);
    println!("\non {}: P1 = {p1}, Q1 = {q1}", m.describe());
    println!("Mackey compatible: {compatible}");
    println!("pq defined only through commuting products: {:?}", proj_meet(&p1, &q1).err().map(|e| e.to_string()));
}
