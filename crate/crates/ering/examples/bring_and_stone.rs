//! Six equivalent conditions carve out the b-rings, and for a carrier
//! satisfying them the whole ring is reconstructed from its projection
//! atoms: an order-and-ring isomorphism onto integer functions on a
//! finite set.
//!
//! The equivalence is the assertion, so the six verdicts must agree on
//! every carrier: all true on integer function rings, all false on
//! rational and matrix ones. Run with `cargo run --example bring_and_stone`.

use ering::boolean::{bring_conditions, extend_boolean_hom, stone_represent, BringConditions};
use ering::carrier::{Carrier, MeasurableSpace, ValueRing};
use ering::{Element, Rational, SampleStrategy};

fn int_carrier(atoms: usize) -> Carrier {
    let space = MeasurableSpace::singletons(atoms).unwrap();
    Carrier::function(space, ValueRing::Integers, None).unwrap()
}

fn main() {
    let strategy = SampleStrategy::seeded(5, 80, 4);

    let grid = Carrier::function(
        MeasurableSpace::singletons(2).unwrap(),
        ValueRing::Rationals,
        Some(4),
    )
    .unwrap();
    let carriers =
        [int_carrier(2), int_carrier(3), grid, Carrier::matrix(2).unwrap()];

    println!("{:58} {}", "carrier", "(i)..(vi)");
    for c in &carriers {
        let conds = bring_conditions(c, &strategy);
        let marks: String =
            conds.as_array().iter().map(|&b| if b { 'T' } else { 'F' }).collect();
        assert!(conds.agree(), "conditions disagree on {}", c.describe());
        println!("{:58} {}", c.describe(), marks);
    }
    for label in BringConditions::labels() {
        println!("  {label}");
    }

    // Stone model of the 3-atom integer carrier: the identity in disguise,
    // one target point per atom.
    let c = int_carrier(3);
    let model = stone_represent(&c, &strategy).unwrap();
    println!("\nStone model of {}: {} points", c.describe(), model.points());
    let g = Element::Function(vec![
        Rational::integer(4),
        Rational::integer(-1),
        Rational::integer(2),
    ]);
    let image = model.forward(&g).unwrap();
    println!("forward({g}) = {image}");
    println!("backward(forward(g)) = g: {}", model.backward(&image).unwrap() == g);

    // A Boolean map of atoms extends uniquely to the ring: swap two atoms
    // and the extension permutes coordinates.
    let atoms: Vec<Element> = (0..3)
        .map(|i| {
            Element::Function(
                (0..3).map(|j| Rational::integer((i == j) as i64)).collect(),
            )
        })
        .collect();
    let swapped = vec![atoms[1].clone(), atoms[0].clone(), atoms[2].clone()];
    let hom = extend_boolean_hom(&c, &c, &swapped).unwrap();
    println!("\natom swap extension: Phi({g}) = {}", hom.apply(&g).unwrap());

    // Rational carriers fail every condition, so no Stone model exists.
    let grid = &carriers[2];
    match stone_represent(grid, &strategy) {
        Err(e) => println!("\n{}: {e}", grid.describe()),
        Ok(_) => unreachable!(),
    }
}
