//! The lattice structure of pointwise carriers: suprema computed
//! algebraically from a sign-splitting projection, cross-checked against
//! the pointwise maximum, plus Riesz interpolation.
//!
//! sup(g, h) = p(g - h) + h where p is the indicator of the set where
//! g - h is positive. Run with `cargo run --example lattice_interpolation`.

use ering::boolean::{check_interpolation, lattice_sup, split_positive_negative};
use ering::carrier::{Carrier, MeasurableSpace, ValueRing};
use ering::{Element, Rational, SampleStrategy};

fn f(vals: &[i64]) -> Element {
    Element::Function(vals.iter().map(|&v| Rational::integer(v)).collect())
}

fn main() {
    let space = MeasurableSpace::singletons(3).unwrap();
    let c = Carrier::function(space, ValueRing::Rationals, None).unwrap();
    let _ = SampleStrategy::seeded(0, 10, 4);

    let g = f(&[2, -1, 0]);
    let h = f(&[0, 3, 0]);

    let p = split_positive_negative(&c, &g).unwrap();
    println!("sign projection of {g}: {}", p.element());

    let sup = lattice_sup(&c, &g, &h).unwrap();
    println!("sup({g}, {h}) = {sup}");
    println!("matches pointwise max: {}", Some(&sup) == c.pointwise_max(&g, &h).as_ref());

    // Riesz interpolation: anything between {a, b} and {u1, u2} will do;
    // the checker returns sup(a, b) and validates the four inequalities.
    let a = f(&[0, 0, 1]);
    let b = f(&[1, -1, 0]);
    let u1 = f(&[1, 0, 1]);
    let u2 = f(&[2, 0, 2]);
    let t = check_interpolation(&c, &a, &b, &u1, &u2).unwrap();
    println!("interpolant between ({a}, {b}) and ({u1}, {u2}): {t}");

    // A violated precondition is reported with the failing pair.
    let too_low = f(&[0, -5, 0]);
    match check_interpolation(&c, &a, &b, &too_low, &u2) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
