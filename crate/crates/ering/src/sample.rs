//! Seeded generators for carrier elements.
//!
//! Everything here is exact: matrix effects come from scaled Gram matrices,
//! projections from rational Gram-Schmidt, so sampled values satisfy their
//! advertised membership by construction, not approximately. Generators
//! take an explicit RNG; suites hand each case its own counter-derived
//! stream, which is what makes parallel runs reproducible.

use crate::carrier::{Carrier, Element, ValueRing};
use crate::matrix::{RatMatrix, SymMatrix};
use crate::rational::Rational;
use rand::Rng;

fn rat(rng: &mut impl Rng, num_lo: i64, num_hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den.max(1));
    let num = rng.gen_range(num_lo * den..=num_hi * den);
    Rational::new(num, den)
}

pub(crate) fn unit_rat(rng: &mut impl Rng, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den.max(1));
    let num = rng.gen_range(0..=den);
    Rational::new(num, den)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// An effect: guaranteed in E of the true (unmutated) structure.
pub fn sample_effect(c: &Carrier, rng: &mut impl Rng, bound: u32) -> Element {
    if let Some((space, ring, grid)) = c.as_function() {
        let k = space.atom_count();
        let vals: Vec<Rational> = (0..k)
            .map(|_| match ring {
                ValueRing::Integers => Rational::integer(rng.gen_range(0..=1)),
                ValueRing::Rationals => {
                    if let Some(d) = grid {
                        if rng.gen_bool(0.5) {
                            return Rational::new(rng.gen_range(0..=d as i64), d as i64);
                        }
                    }
                    unit_rat(rng, bound.max(2) as i64)
                }
            })
            .collect();
        return Element::Function(vals);
    }
    if let Some(n) = c.matrix_dim() {
        return Element::Matrix(sample_matrix_effect(n, rng));
    }
    let (l, r) = c.as_product().expect("covered all carrier kinds");
    Element::pair(sample_effect(l, rng, bound), sample_effect(r, rng, bound))
}

fn sample_matrix_effect(n: usize, rng: &mut impl Rng) -> SymMatrix {
    match rng.gen_range(0..8u8) {
        0 => SymMatrix::zero(n),
        1 => SymMatrix::identity(n),
        2 => SymMatrix::identity(n).scale(&unit_rat(rng, 4)),
        3 => sample_matrix_projection(n, rng),
        4 => sample_matrix_projection(n, rng).scale(&unit_rat(rng, 4)),
        _ => {
            // B^T B is PSD; its eigenvalues are bounded by the trace, so
            // dividing by max(1, ceil(trace)) lands in the unit interval.
            let mut b = RatMatrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    b.set(i, j, rat(rng, -2, 2, 2));
                }
            }
            let gram = SymMatrix::new(b.transpose().mul(&b).expect("square"))
                .expect("Gram matrices are symmetric");
            let s = gram.trace().ceil_u64().max(1);
            gram.scale(&(Rational::one() / Rational::integer(s as i64)))
        }
    }
}

/// A projection: symmetric and exactly idempotent.
pub fn sample_projection(c: &Carrier, rng: &mut impl Rng) -> Element {
    if let Some((space, _, _)) = c.as_function() {
        let k = space.atom_count();
        return Element::Function(
            (0..k).map(|_| Rational::integer(rng.gen_range(0..=1))).collect(),
        );
    }
    if let Some(n) = c.matrix_dim() {
        return Element::Matrix(sample_matrix_projection(n, rng));
    }
    let (l, r) = c.as_product().expect("covered all carrier kinds");
    Element::pair(sample_projection(l, rng), sample_projection(r, rng))
}

/// Orthogonal projection onto the span of up to `rank` random integer
/// vectors, built by rational Gram-Schmidt: P = sum of u u^T / (u . u).
fn sample_matrix_projection(n: usize, rng: &mut impl Rng) -> SymMatrix {
    let rank = rng.gen_range(0..=n);
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut attempts = 0;
    while basis.len() < rank && attempts < 24 {
        attempts += 1;
        let v: Vec<Rational> =
            (0..n).map(|_| Rational::integer(rng.gen_range(-3..=3))).collect();
        let mut u = v;
        for b in &basis {
            let coeff = &dot(&u, b) / &dot(b, b);
            for (ui, bi) in u.iter_mut().zip(b) {
                *ui = &*ui - &(&coeff * bi);
            }
        }
        if u.iter().any(|x| !x.is_zero()) {
            basis.push(u);
        }
    }
    let mut p = RatMatrix::zero(n);
    for u in &basis {
        let nn = dot(u, u);
        for i in 0..n {
            for j in 0..n {
                let add = &(&u[i] * &u[j]) / &nn;
                let v = p.get(i, j) + &add;
                p.set(i, j, v);
            }
        }
    }
    SymMatrix::new(p).expect("sum of symmetric rank-one blocks")
}

/// A group element, mixing shapes that stress different laws: diagonal and
/// near-traceless matrices, plain random symmetric ones, integer or
/// rational functions.
pub fn sample_group(c: &Carrier, rng: &mut impl Rng, bound: u32) -> Element {
    let b = bound.max(1) as i64;
    if let Some((space, ring, _)) = c.as_function() {
        let k = space.atom_count();
        let vals: Vec<Rational> = (0..k)
            .map(|_| match ring {
                ValueRing::Integers => Rational::integer(rng.gen_range(-b..=b)),
                ValueRing::Rationals => rat(rng, -b, b, 4),
            })
            .collect();
        return Element::Function(vals);
    }
    if let Some(n) = c.matrix_dim() {
        let m = match rng.gen_range(0..4u8) {
            0 => {
                let mut m = RatMatrix::zero(n);
                for i in 0..n {
                    m.set(i, i, Rational::integer(rng.gen_range(-b..=b)));
                }
                m
            }
            1 => {
                // symmetric with trace pulled to zero: indefinite unless zero
                let mut m = RatMatrix::zero(n);
                for i in 0..n {
                    for j in i..n {
                        let v = Rational::integer(rng.gen_range(-b..=b));
                        m.set(i, j, v.clone());
                        m.set(j, i, v);
                    }
                }
                let shift = m.trace() / Rational::integer(n as i64);
                for i in 0..n {
                    let v = m.get(i, i) - &shift;
                    m.set(i, i, v);
                }
                m
            }
            _ => {
                let mut m = RatMatrix::zero(n);
                for i in 0..n {
                    for j in i..n {
                        let v = rat(rng, -b, b, 3);
                        m.set(i, j, v.clone());
                        m.set(j, i, v);
                    }
                }
                m
            }
        };
        return Element::Matrix(SymMatrix::new(m).expect("built symmetric"));
    }
    let (l, r) = c.as_product().expect("covered all carrier kinds");
    Element::pair(sample_group(l, rng, bound), sample_group(r, rng, bound))
}

/// A positive element built constructively as a sum of up to `bound`
/// effects. The empty sum (zero) occurs.
pub fn sample_positive(c: &Carrier, rng: &mut impl Rng, bound: u32) -> Element {
    let terms = rng.gen_range(0..=bound.max(1));
    let mut acc = c.zero();
    for _ in 0..terms {
        let e = sample_effect(c, rng, bound);
        acc = c.add(&acc, &e);
    }
    acc
}

/// A positive element found by filtering raw group samples through the
/// carrier's own cone oracle. Exercises the oracle on elements that were
/// not constructed to be positive. `None` if no sample passes in `tries`.
pub fn sample_positive_oracle(
    c: &Carrier,
    rng: &mut impl Rng,
    bound: u32,
    tries: u32,
) -> Option<Element> {
    for _ in 0..tries {
        let g = sample_group(c, rng, bound);
        if c.is_in_eplus(&g) {
            return Some(g);
        }
    }
    None
}

/// An effect commuting with `e`. Function atoms commute outright; matrix
/// blocks take a polynomial in `e`, which always commutes with it.
pub fn sample_commuting_effect(
    c: &Carrier,
    rng: &mut impl Rng,
    e: &Element,
    bound: u32,
) -> Element {
    if c.as_function().is_some() {
        return sample_effect(c, rng, bound);
    }
    if c.matrix_dim().is_some() {
        let e2 = c
            .element_from_ring(&c.mul(e, e))
            .expect("square of a symmetric matrix is symmetric");
        let one_minus = c.sub(&c.one(), e);
        return match rng.gen_range(0..6u8) {
            0 => c.zero(),
            1 => c.one(),
            2 => e2,
            3 => one_minus,
            4 => c
                .try_scalar_mul(&Rational::new(1, 2), &c.add(e, &e2))
                .expect("matrix carriers scale freely"),
            _ => c
                .try_scalar_mul(&unit_rat(rng, 3), &one_minus)
                .expect("matrix carriers scale freely"),
        };
    }
    let (cl, cr) = c.as_product().expect("covered all carrier kinds");
    match e {
        Element::Pair(el, er) => Element::pair(
            sample_commuting_effect(cl, rng, el, bound),
            sample_commuting_effect(cr, rng, er, bound),
        ),
        _ => panic!("element shape mismatch"),
    }
}

/// A commuting pair (g, h) of positives with g <= h: both are polynomials
/// in one effect with nonnegative coefficients, h extending g.
pub fn sample_dominated_commuting_pair(
    c: &Carrier,
    rng: &mut impl Rng,
    bound: u32,
) -> (Element, Element) {
    let e = sample_effect(c, rng, bound);
    let e2 = c.element_from_ring(&c.mul(&e, &e)).expect("effect squares stay in the group");
    let s = rng.gen_range(0..=bound.max(1) as i64);
    let t = rng.gen_range(0..=bound.max(1) as i64);
    let g = c.int_scale(&s.into(), &e);
    let h = c.add(&g, &c.int_scale(&t.into(), &e2));
    (g, h)
}

/// Positives with product zero in both orders, from complementary
/// projections: g = s p, h = t (1 - p).
pub fn sample_orthogonal_positive_pair(
    c: &Carrier,
    rng: &mut impl Rng,
    bound: u32,
) -> (Element, Element) {
    let p = sample_projection(c, rng);
    let q = c.sub(&c.one(), &p);
    let s = rng.gen_range(0..=bound.max(1) as i64);
    let t = rng.gen_range(0..=bound.max(1) as i64);
    (c.int_scale(&s.into(), &p), c.int_scale(&t.into(), &q))
}

/// An effect below the projection `p`: compressing any effect into the
/// corner, e = p d p, gives 0 <= e <= p.
pub fn sample_effect_below(c: &Carrier, rng: &mut impl Rng, p: &Element, bound: u32) -> Element {
    let d = sample_effect(c, rng, bound);
    let pdp = c.ring(p).mul(&c.ring(&d)).mul(&c.ring(p));
    c.element_from_ring(&pdp).expect("compressed effects stay in the group")
}

/// An effect above the projection `p`: e = p + (1-p) d (1-p) satisfies
/// p <= e <= 1.
pub fn sample_effect_above(c: &Carrier, rng: &mut impl Rng, p: &Element, bound: u32) -> Element {
    let q = c.sub(&c.one(), p);
    let tail = sample_effect_below(c, rng, &q, bound);
    c.add(p, &tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::MeasurableSpace;
    use crate::report::SampleStrategy;
    use crate::rational::Rational;

    fn carriers() -> Vec<Carrier> {
        let f_int = Carrier::function(
            MeasurableSpace::singletons(3).unwrap(),
            ValueRing::Integers,
            None,
        )
        .unwrap();
        let f_rat = Carrier::function(
            MeasurableSpace::singletons(2).unwrap(),
            ValueRing::Rationals,
            Some(4),
        )
        .unwrap();
        let m2 = Carrier::matrix(2).unwrap();
        let m3 = Carrier::matrix(3).unwrap();
        let prod = Carrier::product(f_int.clone(), m2.clone());
        vec![f_int, f_rat, m2, m3, prod]
    }

    #[test]
    fn sampled_memberships_hold_exactly() {
        let strat = SampleStrategy::seeded(11, 0, 5);
        for c in carriers() {
            for case in 0..40u64 {
                let mut rng = strat.case_rng(case);
                let e = sample_effect(&c, &mut rng, 5);
                assert!(c.is_in_e(&e), "sampled effect must lie in E: {e}");
                let p = sample_projection(&c, &mut rng);
                let p2 = c.element_from_ring(&c.mul(&p, &p)).unwrap();
                assert_eq!(p2, p, "sampled projection must be idempotent");
                assert!(c.is_in_e(&p));
                let pos = sample_positive(&c, &mut rng, 4);
                assert!(c.is_in_eplus(&pos));
                let g = sample_group(&c, &mut rng, 5);
                assert!(c.validate_element(&g).is_ok());
            }
        }
    }

    #[test]
    fn commuting_and_dominated_constructions() {
        let strat = SampleStrategy::seeded(13, 0, 4);
        for c in carriers() {
            for case in 0..25u64 {
                let mut rng = strat.case_rng(case);
                let e = sample_effect(&c, &mut rng, 4);
                let f = sample_commuting_effect(&c, &mut rng, &e, 4);
                assert!(c.is_in_e(&f));
                assert_eq!(c.mul(&e, &f), c.mul(&f, &e), "constructed pair must commute");

                let (g, h) = sample_dominated_commuting_pair(&c, &mut rng, 3);
                assert!(c.is_in_eplus(&g));
                assert!(c.is_in_eplus(&h));
                assert!(c.is_in_eplus(&c.sub(&h, &g)));
                assert_eq!(c.mul(&g, &h), c.mul(&h, &g));

                let (x, y) = sample_orthogonal_positive_pair(&c, &mut rng, 3);
                assert!(c.mul(&x, &y).is_zero());
                assert!(c.mul(&y, &x).is_zero());

                let p = sample_projection(&c, &mut rng);
                let below = sample_effect_below(&c, &mut rng, &p, 4);
                assert!(c.is_in_e(&below));
                assert!(c.is_in_eplus(&c.sub(&p, &below)), "must sit below p");
                let above = sample_effect_above(&c, &mut rng, &p, 4);
                assert!(c.is_in_e(&above));
                assert!(c.is_in_eplus(&c.sub(&above, &p)), "must sit above p");
            }
        }
    }

    #[test]
    fn oracle_filter_finds_positives() {
        let strat = SampleStrategy::seeded(17, 0, 3);
        let c = Carrier::matrix(2).unwrap();
        let mut found = 0;
        for case in 0..30u64 {
            let mut rng = strat.case_rng(case);
            if let Some(g) = sample_positive_oracle(&c, &mut rng, 3, 16) {
                assert!(c.is_in_eplus(&g));
                found += 1;
            }
        }
        assert!(found > 0, "filter should find positives within the try budget");
    }

    #[test]
    fn streams_are_reproducible() {
        let strat = SampleStrategy::seeded(99, 0, 5);
        for c in carriers() {
            let mut a = strat.case_rng(7);
            let mut b = strat.case_rng(7);
            assert_eq!(sample_group(&c, &mut a, 5), sample_group(&c, &mut b, 5));
            let e1 = sample_effect(&c, &mut a, 5);
            let e2 = sample_effect(&c, &mut b, 5);
            assert_eq!(e1, e2);
        }
    }

    #[test]
    fn grid_bias_hits_grid_points() {
        let c = Carrier::function(
            MeasurableSpace::singletons(1).unwrap(),
            ValueRing::Rationals,
            Some(4),
        )
        .unwrap();
        let strat = SampleStrategy::seeded(5, 0, 8);
        let mut quarters = 0;
        for case in 0..60u64 {
            let mut rng = strat.case_rng(case);
            if let Element::Function(v) = sample_effect(&c, &mut rng, 8) {
                if v[0].denom() <= &num_bigint::BigInt::from(4) {
                    quarters += 1;
                }
            }
        }
        assert!(quarters > 15, "grid values should appear often, saw {quarters}");
        let half = Rational::new(1, 2);
        assert!(!half.is_negative());
    }
}
