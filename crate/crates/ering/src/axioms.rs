//! The defining laws of the structure and the first tier of consequences.
//!
//! Laws are tagged `ering.*` for the definitional conditions on the
//! positive cone and `lemma.*` for derived facts. Each tag quantifies over
//! the inputs its statement names; instances come from complete
//! enumerations where those exist and from seeded generators otherwise.
//! Conditional laws evaluate their hypothesis honestly: an instance whose
//! hypothesis fails counts as a (vacuous) pass, and the generators are
//! built to produce hypothesis-satisfying inputs so the conclusions are
//! actually exercised.

use crate::carrier::{Carrier, Element};
use crate::rational::Rational;
use crate::report::{
    run_seeded_cases, CaseRecord, Mode, ReportBuilder, SampleStrategy, VerificationReport,
};
use crate::sample::{
    sample_commuting_effect, sample_effect, sample_effect_above, sample_effect_below,
    sample_group, sample_orthogonal_positive_pair, sample_positive, sample_positive_oracle,
    sample_projection,
};
use crate::suite::SuiteError;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The order on the directed group: g <= h iff h - g lies in the cone.
pub fn leq(c: &Carrier, g: &Element, h: &Element) -> bool {
    c.is_in_eplus(&c.sub(h, g))
}

fn int_multiple_of_one(c: &Carrier, n: u64) -> Element {
    c.int_scale(&BigInt::from(n), &c.one())
}

fn unit_bound(c: &Carrier, g: &Element) -> u64 {
    match g {
        Element::Function(v) => v.iter().map(Rational::ceil_u64).max().unwrap_or(0),
        // Gershgorin: every eigenvalue of a symmetric matrix is bounded in
        // absolute value by the largest absolute row sum
        Element::Matrix(m) => m.matrix().max_abs_row_sum().ceil_u64(),
        Element::Pair(l, r) => {
            let (cl, cr) = c.as_product().expect("pair element on non-product carrier");
            unit_bound(cl, l).max(unit_bound(cr, r))
        }
    }
}

/// Least n >= 0 with g <= n * 1. Terminates because the unit bound above
/// always satisfies the inequality; minimality comes from scanning upward.
pub fn order_unit_index(c: &Carrier, g: &Element) -> u64 {
    let bound = unit_bound(c, g);
    for n in 0..=bound {
        if leq(c, g, &int_multiple_of_one(c, n)) {
            return n;
        }
    }
    unreachable!("unit bound {bound} failed for {g}; the cone oracle is inconsistent")
}

const AXIOM_LAWS: [&str; 10] = [
    "ering.closure.zero-one",
    "ering.closure.orthosupplement",
    "ering.cone.sum-membership",
    "ering.cone.decompose",
    "ering.i",
    "ering.ii",
    "ering.iii",
    "ering.iv",
    "ering.v",
    "ering.vi",
];

fn zero_one_record(c: &Carrier) -> CaseRecord {
    let ok = c.is_in_e(&c.zero()) && c.is_in_e(&c.one());
    CaseRecord::check_with("ering.closure.zero-one", ok, || {
        (
            vec![c.zero().to_string(), c.one().to_string()],
            "0 and 1 are effects".into(),
            "membership oracle rejected an endpoint".into(),
        )
    })
}

fn orthosupplement_record(c: &Carrier, e: &Element) -> CaseRecord {
    let own = c.is_in_e(e);
    let compl = c.is_in_e(&c.sub(&c.one(), e));
    CaseRecord::check_with("ering.closure.orthosupplement", own && compl, || {
        (
            vec![e.to_string()],
            "e and 1-e are both effects".into(),
            if own { "1-e rejected".into() } else { "e itself rejected".to_string() },
        )
    })
}

fn sum_membership_record(c: &Carrier, a: &Element) -> CaseRecord {
    CaseRecord::check_with("ering.cone.sum-membership", c.is_in_eplus(a), || {
        (
            vec![a.to_string()],
            "a finite sum of effects lies in the cone".into(),
            "oracle rejected a constructive sum".into(),
        )
    })
}

fn decompose_record(c: &Carrier, a: &Element) -> CaseRecord {
    let outcome = match c.decompose_positive(a) {
        Err(e) => Some(format!("decomposition refused: {e}")),
        Ok(parts) => {
            let mut sum = c.zero();
            let mut bad = None;
            for p in &parts {
                if !c.is_in_e(p) {
                    bad = Some(format!("summand {p} is not an effect"));
                }
                sum = c.add(&sum, p);
            }
            if sum != *a {
                bad = Some(format!("summands add to {sum}"));
            }
            bad
        }
    };
    CaseRecord::check_with("ering.cone.decompose", outcome.is_none(), || {
        (
            vec![a.to_string()],
            "cone member splits into effects summing back to it".into(),
            outcome.unwrap_or_default(),
        )
    })
}

/// The six definitional conditions, evaluated on a pair of cone members.
fn axiom_pair_records(c: &Carrier, a: &Element, b: &Element) -> Vec<CaseRecord> {
    let mut out = Vec::with_capacity(10);
    for x in [a, b] {
        let neg_in = c.is_in_eplus(&c.neg(x));
        out.push(CaseRecord::check_with("ering.i", !neg_in || x.is_zero(), || {
            (
                vec![x.to_string()],
                "only 0 has both signs in the cone".into(),
                format!("{x} is nonzero yet -({x}) was accepted"),
            )
        }));
        let hyp = c.is_in_eplus(&c.sub(&c.one(), x));
        out.push(CaseRecord::check_with("ering.ii", !hyp || c.is_in_e(x), || {
            (
                vec![x.to_string()],
                "cone member below 1 is an effect".into(),
                format!("{x} rejected from the effect set"),
            )
        }));
    }
    let ar = c.ring(a);
    let br = c.ring(b);
    let ab = ar.mul(&br);
    let ba = br.mul(&ar);
    if ab == ba {
        let ok = c.element_from_ring(&ab).map(|e| c.is_in_eplus(&e)).unwrap_or(false);
        out.push(CaseRecord::check_with("ering.iii", ok, || {
            (
                vec![a.to_string(), b.to_string()],
                "commuting product of cone members is in the cone".into(),
                format!("product {ab} rejected"),
            )
        }));
    } else {
        out.push(CaseRecord::pass("ering.iii"));
    }
    let aba = ab.mul(&ar);
    let aba_el = c.element_from_ring(&aba);
    let iv_ok = aba_el.as_ref().map(|e| c.is_in_eplus(e)).unwrap_or(false);
    out.push(CaseRecord::check_with("ering.iv", iv_ok, || {
        (
            vec![a.to_string(), b.to_string()],
            "a b a is in the cone".into(),
            format!("a b a = {aba} rejected"),
        )
    }));
    if aba.is_zero() {
        out.push(CaseRecord::check_with("ering.v", ab.is_zero() && ba.is_zero(), || {
            (
                vec![a.to_string(), b.to_string()],
                "a b a = 0 forces ab = ba = 0".into(),
                format!("ab = {ab}, ba = {ba}"),
            )
        }));
    } else {
        out.push(CaseRecord::pass("ering.v"));
    }
    let d = c.sub(a, b);
    let sq = c.element_from_ring(&c.mul(&d, &d));
    let vi_ok = sq.as_ref().map(|e| c.is_in_eplus(e)).unwrap_or(false);
    out.push(CaseRecord::check_with("ering.vi", vi_ok, || {
        (
            vec![a.to_string(), b.to_string()],
            "(a - b)^2 is in the cone".into(),
            format!("square of {d} rejected"),
        )
    }));
    out
}

/// Deterministic corner elements fed to the pair laws alongside the
/// random samples: basis indicators, their negations and complements, and
/// spiked combinations that leave the cone in one coordinate. Only those
/// the membership oracle accepts are used, so every probe is an honest
/// quantification instance.
fn accepted_probes(c: &Carrier, bound: u32) -> Vec<Element> {
    let mut raw = vec![c.zero(), c.one()];
    let n = BigInt::from(bound.max(2));
    let n1 = BigInt::from(bound.max(2) + 1);
    for b in c.spanning_basis() {
        raw.push(c.neg(&b));
        raw.push(c.sub(&c.one(), &b));
        raw.push(c.sub(&c.int_scale(&n, &c.one()), &c.int_scale(&n1, &b)));
        raw.push(b);
    }
    let mut probes = Vec::new();
    for x in raw {
        if c.is_in_eplus(&x) && !probes.contains(&x) {
            probes.push(x);
        }
    }
    probes
}

/// Cone-level instances: constructive sums checked against the oracle,
/// oracle-filtered raw samples fed back into the definitional conditions,
/// and the decomposition round trip.
fn cone_case(c: &Carrier, bound: u32, rng: &mut ChaCha8Rng) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let a1 = sample_positive(c, rng, bound);
    let b1 = sample_positive(c, rng, bound);
    recs.push(sum_membership_record(c, &a1));
    recs.push(sum_membership_record(c, &b1));
    recs.extend(axiom_pair_records(c, &a1, &b1));
    if let Some(a2) = sample_positive_oracle(c, rng, bound, 24) {
        if let Some(b2) = sample_positive_oracle(c, rng, bound, 24) {
            recs.extend(axiom_pair_records(c, &a2, &b2));
        }
    }
    recs.push(decompose_record(c, &a1));
    recs
}

/// Checks the definitional conditions. Exhaustive mode walks the complete
/// effect enumeration for the effect-level laws and E x E for the pair
/// laws; the cone itself is infinite, so cone-level instances are always
/// sampled within the case budget.
pub fn verify_ering_axioms(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    let mut b = ReportBuilder::new(&c.describe(), "axioms", *strategy);
    b.declare_laws(&AXIOM_LAWS);
    b.record(0, zero_one_record(c));
    let probes = accepted_probes(c, strategy.magnitude_bound);
    let mut case = 1u64;
    for x in &probes {
        for y in &probes {
            b.record_all(case, axiom_pair_records(c, x, y));
            case += 1;
        }
    }
    match strategy.mode {
        Mode::Exhaustive => {
            let en = c
                .enumerate_effects()
                .filter(|e| e.complete)
                .ok_or_else(|| SuiteError::ExhaustiveUnavailable { model: c.describe() })?;
            for e in &en.elements {
                b.record(case, orthosupplement_record(c, e));
                case += 1;
            }
            for e in &en.elements {
                for f in &en.elements {
                    b.record_all(case, axiom_pair_records(c, e, f));
                    case += 1;
                }
            }
            run_seeded_cases(&mut b, strategy, case, |_, rng| {
                cone_case(c, strategy.magnitude_bound, rng)
            });
            b.note("effect set walked completely; cone instances sampled, the cone is infinite");
        }
        Mode::Seeded => {
            run_seeded_cases(&mut b, strategy, case, |_, rng| {
                let mut recs = Vec::new();
                let e = sample_effect(c, rng, strategy.magnitude_bound);
                recs.push(orthosupplement_record(c, &e));
                recs.extend(cone_case(c, strategy.magnitude_bound, rng));
                recs
            });
        }
    }
    Ok(b.finish())
}

const LEMMA_LAWS: [&str; 22] = [
    "lemma.AA.i",
    "lemma.AA.ii",
    "lemma.AA.iii",
    "lemma.AA.iv",
    "lemma.AA.v",
    "lemma.E.i",
    "lemma.E.ii",
    "lemma.E.iii",
    "lemma.E.iv",
    "lemma.FF.i",
    "lemma.FF.ii",
    "lemma.FF.iii",
    "lemma.FF.iv",
    "lemma.M.i",
    "lemma.M.ii",
    "lemma.M.iii",
    "lemma.M.iv",
    "lemma.M.v",
    "lemma.orderunit.i",
    "lemma.orderunit.ii",
    "lemma.CC",
    "lemma.DD",
];

fn is_idempotent(c: &Carrier, x: &Element) -> bool {
    c.mul(x, x) == c.ring(x)
}

fn chain_leq_records(
    c: &Carrier,
    law: &str,
    chain: &[(&Element, &Element)],
    inputs: &[&Element],
) -> CaseRecord {
    let mut broken = None;
    for (lo, hi) in chain {
        if !leq(c, lo, hi) {
            broken = Some(format!("{lo} <= {hi} fails"));
            break;
        }
    }
    CaseRecord::check_with(law, broken.is_none(), || {
        (
            inputs.iter().map(|e| e.to_string()).collect(),
            "inequality chain holds".into(),
            broken.unwrap_or_default(),
        )
    })
}

/// The five equivalent forms of "the effect e sits below the projection p".
fn cc_conditions(c: &Carrier, e: &Element, p: &Element) -> [bool; 5] {
    let er = c.ring(e);
    let pr = c.ring(p);
    let ep = er.mul(&pr);
    let pe = pr.mul(&er);
    let pep = pr.mul(&er).mul(&pr);
    [leq(c, e, p), ep == er && pe == er, pep == er, ep == er, pe == er]
}

/// The five equivalent forms of "the projection p sits below the effect e".
fn dd_conditions(c: &Carrier, e: &Element, p: &Element) -> [bool; 5] {
    let er = c.ring(e);
    let pr = c.ring(p);
    let ep = er.mul(&pr);
    let pe = pr.mul(&er);
    let pep = pr.mul(&er).mul(&pr);
    [
        leq(c, p, e),
        ep == pr && pe == pr,
        pr.add(&pep) == pe.add(&ep),
        ep == pr,
        pe == pr,
    ]
}

fn agreement_record(law: &str, conds: [bool; 5], inputs: Vec<String>) -> CaseRecord {
    let all_agree = conds.iter().all(|&x| x == conds[0]);
    CaseRecord::check_with(law, all_agree, || {
        (
            inputs,
            "the five conditions hold or fail together".into(),
            format!("{conds:?}"),
        )
    })
}

fn cc_record(c: &Carrier, e: &Element, p: &Element) -> CaseRecord {
    agreement_record("lemma.CC", cc_conditions(c, e, p), vec![e.to_string(), p.to_string()])
}

fn dd_record(c: &Carrier, e: &Element, p: &Element) -> CaseRecord {
    agreement_record("lemma.DD", dd_conditions(c, e, p), vec![e.to_string(), p.to_string()])
}

/// A commuting triple of positives with g <= h: all three are polynomials
/// in one effect with nonnegative integer coefficients.
fn sample_commuting_chain(
    c: &Carrier,
    rng: &mut ChaCha8Rng,
    bound: u32,
) -> (Element, Element, Element) {
    let base = sample_effect(c, rng, bound);
    let sq = c.element_from_ring(&c.mul(&base, &base)).expect("effect squares representable");
    let b = bound.max(1) as i64;
    let g = c.int_scale(&BigInt::from(rng.gen_range(0..=b)), &base);
    let h = c.add(&g, &c.int_scale(&BigInt::from(rng.gen_range(0..=b)), &sq));
    let k = c.add(
        &c.int_scale(&BigInt::from(rng.gen_range(0..=b)), &base),
        &c.int_scale(&BigInt::from(rng.gen_range(0..=b)), &sq),
    );
    (g, h, k)
}

fn ff_records(c: &Carrier, d: &Element, e: &Element, f: &Element) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let one = c.one();
    let ef = c.mul(e, f);
    let fe = c.mul(f, e);
    if ef == fe {
        match c.element_from_ring(&ef) {
            Some(prod) => {
                recs.push(chain_leq_records(
                    c,
                    "lemma.FF.i",
                    &[(&c.zero(), &prod), (&prod, e), (&prod, f), (e, &one), (f, &one)],
                    &[e, f],
                ));
                let sum = c.sub(&c.add(e, f), &prod);
                recs.push(chain_leq_records(
                    c,
                    "lemma.FF.iii",
                    &[(e, &sum), (f, &sum), (&sum, &one)],
                    &[e, f],
                ));
            }
            None => {
                recs.push(CaseRecord::fail(
                    "lemma.FF.i",
                    vec![e.to_string(), f.to_string()],
                    "commuting product stays in the group",
                    "product not representable",
                ));
            }
        }
    } else {
        recs.push(CaseRecord::pass("lemma.FF.i"));
        recs.push(CaseRecord::pass("lemma.FF.iii"));
    }
    let ede = c
        .element_from_ring(&c.ring(e).mul(&c.ring(d)).mul(&c.ring(e)))
        .expect("e d e is representable");
    let e2 = c.element_from_ring(&c.mul(e, e)).expect("squares are representable");
    recs.push(chain_leq_records(
        c,
        "lemma.FF.ii",
        &[(&c.zero(), &ede), (&ede, &e2), (&e2, e), (e, &one)],
        &[d, e],
    ));
    let q = c.sub(e, &e2);
    let compl = c.sub(&one, e);
    recs.push(chain_leq_records(
        c,
        "lemma.FF.iv",
        &[(&c.zero(), &q), (&q, e), (&q, &compl), (e, &one), (&compl, &one)],
        &[e],
    ));
    recs
}

fn m_pair_record(c: &Carrier, x: &Element, y: &Element) -> CaseRecord {
    if c.mul(x, y).is_zero() {
        CaseRecord::check_with("lemma.M.i", c.mul(y, x).is_zero(), || {
            (
                vec![x.to_string(), y.to_string()],
                "xy = 0 forces yx = 0".into(),
                format!("yx = {}", c.mul(y, x)),
            )
        })
    } else {
        CaseRecord::pass("lemma.M.i")
    }
}

fn m_iv_record(c: &Carrier, g: &Element, p: &Element, n: u64) -> CaseRecord {
    let np = c.int_scale(&BigInt::from(n), p);
    if !leq(c, g, &np) {
        return CaseRecord::pass("lemma.M.iv");
    }
    let gr = c.ring(g);
    let pr = c.ring(p);
    let ok = gr.mul(&pr) == gr && pr.mul(&gr) == gr;
    CaseRecord::check_with("lemma.M.iv", ok, || {
        (
            vec![g.to_string(), p.to_string(), n.to_string()],
            "g <= n p forces g = gp = pg".into(),
            format!("gp = {}, pg = {}", gr.mul(&pr), pr.mul(&gr)),
        )
    })
}

fn lemma_case(c: &Carrier, bound: u32, case: u64, rng: &mut ChaCha8Rng) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let zero = c.zero();
    let one = c.one();
    let g = sample_group(c, rng, bound);
    let h = sample_group(c, rng, bound);
    let p = sample_projection(c, rng);
    let e = sample_effect(c, rng, bound);
    let f = sample_commuting_effect(c, rng, &e, bound);
    let d = sample_effect(c, rng, bound);
    let a = sample_positive(c, rng, bound);

    let g2 = c.element_from_ring(&c.mul(&g, &g));
    recs.push(CaseRecord::check_with(
        "lemma.AA.i",
        g2.as_ref().map(|x| c.is_in_eplus(x)).unwrap_or(false),
        || {
            (
                vec![g.to_string()],
                "g^2 lies in the cone".into(),
                "square rejected or not representable".into(),
            )
        },
    ));
    let gh_hg = c.mul(&g, &h).add(&c.mul(&h, &g));
    recs.push(CaseRecord::check_with(
        "lemma.AA.ii",
        c.element_from_ring(&gh_hg).is_some(),
        || {
            (
                vec![g.to_string(), h.to_string()],
                "gh + hg stays in the group".into(),
                format!("{gh_hg} not representable"),
            )
        },
    ));
    let aha = c.ring(&a).mul(&c.ring(&h)).mul(&c.ring(&a));
    recs.push(CaseRecord::check_with(
        "lemma.AA.iii",
        c.element_from_ring(&aha).is_some(),
        || {
            (
                vec![a.to_string(), h.to_string()],
                "a h a stays in the group for positive a".into(),
                format!("{aha} not representable"),
            )
        },
    ));
    let pgp = c.ring(&p).mul(&c.ring(&g)).mul(&c.ring(&p));
    recs.push(CaseRecord::check_with(
        "lemma.AA.iv",
        c.element_from_ring(&pgp).is_some(),
        || {
            (
                vec![p.to_string(), g.to_string()],
                "p g p stays in the group".into(),
                format!("{pgp} not representable"),
            )
        },
    ));
    let pap = c
        .element_from_ring(&c.ring(&p).mul(&c.ring(&a)).mul(&c.ring(&p)))
        .expect("p a p is representable");
    recs.push(CaseRecord::check_with("lemma.AA.v", c.is_in_eplus(&pap), || {
        (
            vec![p.to_string(), a.to_string()],
            "p a p lies in the cone for positive a".into(),
            format!("{pap} rejected"),
        )
    }));

    for x in [&e, &g] {
        let interval = leq(c, &zero, x) && leq(c, x, &one);
        recs.push(CaseRecord::check_with("lemma.E.i", c.is_in_e(x) == interval, || {
            (
                vec![x.to_string()],
                "effect set is exactly the unit interval".into(),
                format!("membership {} vs interval {}", c.is_in_e(x), interval),
            )
        }));
    }
    recs.push(CaseRecord::check_with(
        "lemma.E.ii",
        is_idempotent(c, &zero) && is_idempotent(c, &one),
        || (vec![], "0 and 1 are projections".into(), "an endpoint failed p^2 = p".into()),
    ));
    let q = c.sub(&one, &p);
    recs.push(CaseRecord::check_with("lemma.E.iii", is_idempotent(c, &q), || {
        (
            vec![p.to_string()],
            "1 - p is a projection".into(),
            format!("(1-p)^2 != 1-p for p = {p}"),
        )
    }));
    recs.push(CaseRecord::check_with("lemma.E.iv", c.is_in_e(&p), || {
        (
            vec![p.to_string()],
            "projections are effects".into(),
            format!("{p} rejected from the effect set"),
        )
    }));

    recs.extend(ff_records(c, &d, &e, &f));

    let (ox, oy) = sample_orthogonal_positive_pair(c, rng, bound);
    recs.push(m_pair_record(c, &ox, &oy));
    let extra = sample_positive(c, rng, bound);
    recs.push(m_pair_record(c, &a, &extra));

    let (cg, ch, ck) = sample_commuting_chain(c, rng, bound);
    let commuting = c.mul(&cg, &ck) == c.mul(&ck, &cg) && c.mul(&ch, &ck) == c.mul(&ck, &ch);
    if commuting && leq(c, &cg, &ch) {
        let gk = c.element_from_ring(&c.mul(&cg, &ck)).expect("commuting product representable");
        let hk = c.element_from_ring(&c.mul(&ch, &ck)).expect("commuting product representable");
        recs.push(CaseRecord::check_with("lemma.M.ii", leq(c, &gk, &hk), || {
            (
                vec![cg.to_string(), ch.to_string(), ck.to_string()],
                "g <= h forces gk <= hk for commuting positives".into(),
                format!("gk = {gk} exceeds hk = {hk}"),
            )
        }));
    } else {
        recs.push(CaseRecord::pass("lemma.M.ii"));
    }
    if c.mul(&cg, &ch) == c.mul(&ch, &cg) && leq(c, &cg, &ch) {
        let gg = c.element_from_ring(&c.mul(&cg, &cg)).expect("squares representable");
        let hh = c.element_from_ring(&c.mul(&ch, &ch)).expect("squares representable");
        recs.push(CaseRecord::check_with("lemma.M.iii", leq(c, &gg, &hh), || {
            (
                vec![cg.to_string(), ch.to_string()],
                "g <= h forces g^2 <= h^2 for commuting positives".into(),
                format!("g^2 = {gg} exceeds h^2 = {hh}"),
            )
        }));
    } else {
        recs.push(CaseRecord::pass("lemma.M.iii"));
    }

    recs.push(m_iv_record(c, &pap, &p, order_unit_index(c, &a)));
    recs.push(m_iv_record(c, &a, &p, rng.gen_range(0..=bound.max(1)) as u64));

    let mut power = c.ring(&a);
    let mut nilpotent_at = None;
    for k in 2..=4u32 {
        power = power.mul(&c.ring(&a));
        if power.is_zero() && !a.is_zero() {
            nilpotent_at = Some(k);
            break;
        }
    }
    recs.push(CaseRecord::check_with("lemma.M.v", nilpotent_at.is_none(), || {
        (
            vec![a.to_string()],
            "no nonzero positive is nilpotent".into(),
            format!("power {} vanished", nilpotent_at.unwrap_or_default()),
        )
    }));

    let n = order_unit_index(c, &g);
    let at_n = leq(c, &g, &int_multiple_of_one(c, n));
    let minimal = n == 0 || !leq(c, &g, &int_multiple_of_one(c, n - 1));
    recs.push(CaseRecord::check_with("lemma.orderunit.i", at_n && minimal, || {
        (
            vec![g.to_string()],
            format!("{n} is the least multiple of 1 dominating g"),
            format!("bound holds: {at_n}, minimal: {minimal}"),
        )
    }));

    let list: Vec<Element> = if case % 3 == 0 {
        vec![zero.clone(); 1 + (case as usize % 3)]
    } else {
        (0..rng.gen_range(1..=3)).map(|_| sample_positive(c, rng, bound)).collect()
    };
    let total = list.iter().fold(c.zero(), |acc, x| c.add(&acc, x));
    let ok = !total.is_zero() || list.iter().all(Element::is_zero);
    recs.push(CaseRecord::check_with("lemma.orderunit.ii", ok, || {
        (
            list.iter().map(|x| x.to_string()).collect(),
            "positives summing to zero all vanish".into(),
            "a nonzero term survived in a zero sum".into(),
        )
    }));

    let below = sample_effect_below(c, rng, &p, bound);
    recs.push(cc_record(c, &below, &p));
    recs.push(cc_record(c, &e, &p));
    let above = sample_effect_above(c, rng, &p, bound);
    recs.push(dd_record(c, &above, &p));
    recs.push(dd_record(c, &e, &p));

    recs
}

/// Derived-law suite. Pairwise effect and projection laws run over the
/// complete enumerations in exhaustive mode; group- and cone-quantified
/// laws are sampled in both modes.
pub fn verify_lemma_suite(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    let mut b = ReportBuilder::new(&c.describe(), "lemmas", *strategy);
    b.declare_laws(&LEMMA_LAWS);
    let mut offset = 0u64;
    if strategy.mode == Mode::Exhaustive {
        let en = c
            .enumerate_effects()
            .filter(|e| e.complete)
            .ok_or_else(|| SuiteError::ExhaustiveUnavailable { model: c.describe() })?;
        let projections = c
            .enumerate_projections()
            .expect("complete effect enumeration implies enumerable projections");
        let mut case = 0u64;
        for e in &en.elements {
            let interval = leq(c, &c.zero(), e) && leq(c, e, &c.one());
            b.record(
                case,
                CaseRecord::check_with("lemma.E.i", c.is_in_e(e) == interval, || {
                    (
                        vec![e.to_string()],
                        "effect set is exactly the unit interval".into(),
                        "membership and interval test disagree".into(),
                    )
                }),
            );
            case += 1;
        }
        for p in &projections {
            let q = c.sub(&c.one(), p);
            b.record(
                case,
                CaseRecord::check_with("lemma.E.iii", is_idempotent(c, &q), || {
                    (vec![p.to_string()], "1 - p is a projection".into(), String::new())
                }),
            );
            b.record(
                case,
                CaseRecord::check_with("lemma.E.iv", c.is_in_e(p), || {
                    (vec![p.to_string()], "projections are effects".into(), String::new())
                }),
            );
            case += 1;
        }
        for e in &en.elements {
            for f in &en.elements {
                b.record_all(case, ff_records(c, e, e, f));
                case += 1;
            }
        }
        for e in &en.elements {
            for p in &projections {
                b.record(case, cc_record(c, e, p));
                b.record(case, dd_record(c, e, p));
                case += 1;
            }
        }
        b.note("effect and projection pairs walked completely; group and cone laws sampled");
        offset = case;
    }
    run_seeded_cases(&mut b, strategy, offset, |i, rng| {
        lemma_case(c, strategy.magnitude_bound, i, rng)
    });
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{MeasurableSpace, Mutation, ValueRing};
    use crate::matrix::SymMatrix;
    use crate::report::Verdict;

    fn int_carrier(n: usize) -> Carrier {
        Carrier::function(MeasurableSpace::singletons(n).unwrap(), ValueRing::Integers, None)
            .unwrap()
    }

    fn grid_carrier(n: usize, d: u32) -> Carrier {
        Carrier::function(MeasurableSpace::singletons(n).unwrap(), ValueRing::Rationals, Some(d))
            .unwrap()
    }

    fn fun(vals: &[i64]) -> Element {
        Element::Function(vals.iter().map(|&v| Rational::integer(v)).collect())
    }

    #[test]
    fn leq_matches_pointwise_order() {
        let c = int_carrier(2);
        assert!(leq(&c, &fun(&[0, 1]), &fun(&[1, 1])));
        assert!(!leq(&c, &fun(&[2, 0]), &fun(&[1, 1])));
        assert!(leq(&c, &fun(&[-3, -1]), &c.zero()));
    }

    #[test]
    fn order_unit_index_frozen_values() {
        let c = int_carrier(2);
        assert_eq!(order_unit_index(&c, &fun(&[5, -2])), 5);
        assert_eq!(order_unit_index(&c, &c.zero()), 0);
        assert_eq!(order_unit_index(&c, &fun(&[-3, -1])), 0);
        assert_eq!(order_unit_index(&c, &c.one()), 1);

        let m = Carrier::matrix(2).unwrap();
        let q1 = Element::Matrix(
            SymMatrix::from_rows(vec![
                vec![Rational::new(1, 2), Rational::new(1, 2)],
                vec![Rational::new(1, 2), Rational::new(1, 2)],
            ])
            .unwrap(),
        );
        assert_eq!(order_unit_index(&m, &q1), 1);
        let a = Element::Matrix(SymMatrix::from_int_rows(&[&[2, 1], &[1, 1]]).unwrap());
        // top eigenvalue is (3 + sqrt 5)/2, strictly between 2 and 3
        assert_eq!(order_unit_index(&m, &a), 3);
    }

    #[test]
    fn axioms_pass_exhaustively_on_integer_carriers() {
        for c in [int_carrier(2), int_carrier(3)] {
            let strategy = SampleStrategy::exhaustive(42, 200, 4);
            let r = verify_ering_axioms(&c, &strategy).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "failures: {:?}", r.failures);
            assert!(r.laws.iter().all(|l| l.cases > 0), "every law exercised: {:?}", r.laws);
        }
    }

    #[test]
    fn axioms_pass_seeded_on_matrix_and_grid() {
        for c in [Carrier::matrix(2).unwrap(), Carrier::matrix(3).unwrap(), grid_carrier(3, 4)] {
            let strategy = SampleStrategy::seeded(42, 250, 5);
            let r = verify_ering_axioms(&c, &strategy).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "failures: {:?}", r.failures);
            assert!(r.laws.iter().all(|l| l.cases > 0));
        }
    }

    #[test]
    fn exhaustive_refused_without_complete_enumeration() {
        let strategy = SampleStrategy::exhaustive(1, 10, 3);
        let err = verify_ering_axioms(&Carrier::matrix(2).unwrap(), &strategy).unwrap_err();
        assert!(matches!(err, SuiteError::ExhaustiveUnavailable { .. }));
        let err = verify_ering_axioms(&grid_carrier(2, 4), &strategy).unwrap_err();
        assert!(matches!(err, SuiteError::ExhaustiveUnavailable { .. }));
    }

    #[test]
    fn cone_mutant_killed_by_sign_axiom() {
        let c = int_carrier(2).with_mutation(Mutation::ConeAcceptsNegatives).unwrap();
        let strategy = SampleStrategy::exhaustive(42, 120, 4);
        let r = verify_ering_axioms(&c, &strategy).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(
            r.failures.iter().any(|f| f.law == "ering.i"),
            "expected a sign-axiom counterexample, got {:?}",
            r.failures
        );
    }

    #[test]
    fn complement_mutant_killed_by_closure_law() {
        let c = int_carrier(2).with_mutation(Mutation::EffectSetNotComplemented).unwrap();
        let strategy = SampleStrategy::exhaustive(42, 120, 4);
        let r = verify_ering_axioms(&c, &strategy).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let hit = r
            .failures
            .iter()
            .any(|f| f.law == "ering.closure.orthosupplement" && f.inputs[0] == "(1, 0)");
        assert!(hit, "expected the complement gap at (1, 0): {:?}", r.failures);
    }

    #[test]
    fn psd_mutant_killed_on_both_dimensions() {
        for dim in [2usize, 3] {
            let c = Carrier::matrix(dim)
                .unwrap()
                .with_mutation(Mutation::PsdAcceptsIndefinite)
                .unwrap();
            let strategy = SampleStrategy::seeded(42, 400, 5);
            let r = verify_ering_axioms(&c, &strategy).unwrap();
            assert_eq!(r.verdict, Verdict::Fail, "dim {dim} mutant survived");
        }
    }

    #[test]
    fn lemma_suite_passes_across_carrier_zoo() {
        let carriers = vec![
            int_carrier(2),
            int_carrier(3),
            grid_carrier(2, 4),
            Carrier::matrix(2).unwrap(),
            Carrier::product(int_carrier(2), Carrier::matrix(2).unwrap()),
        ];
        for c in carriers {
            let strategy = if c.effects_enumerable() {
                SampleStrategy::exhaustive(7, 120, 4)
            } else {
                SampleStrategy::seeded(7, 150, 4)
            };
            let r = verify_lemma_suite(&c, &strategy).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "model {}: {:?}", r.model, r.failures);
            for law in &r.laws {
                assert!(law.cases > 0, "law {} never exercised on {}", law.law, r.model);
            }
        }
    }

    #[test]
    fn cc_conditions_agree_on_incomparable_pair() {
        let m = Carrier::matrix(2).unwrap();
        let p1 = Element::Matrix(SymMatrix::from_int_rows(&[&[1, 0], &[0, 0]]).unwrap());
        let half_q1 = Element::Matrix(
            SymMatrix::from_rows(vec![
                vec![Rational::new(1, 4), Rational::new(1, 4)],
                vec![Rational::new(1, 4), Rational::new(1, 4)],
            ])
            .unwrap(),
        );
        let conds = cc_conditions(&m, &half_q1, &p1);
        assert_eq!(conds, [false; 5]);
        let below = Element::Matrix(
            SymMatrix::from_rows(vec![
                vec![Rational::new(1, 2), Rational::zero()],
                vec![Rational::zero(), Rational::zero()],
            ])
            .unwrap(),
        );
        assert_eq!(cc_conditions(&m, &below, &p1), [true; 5]);
    }

    #[test]
    fn deterministic_reports() {
        let c = Carrier::matrix(2).unwrap();
        let strategy = SampleStrategy::seeded(99, 60, 4);
        let a = verify_ering_axioms(&c, &strategy).unwrap().to_json_string();
        let b = verify_ering_axioms(&c, &strategy).unwrap().to_json_string();
        assert_eq!(a, b);
    }
}
