//! Effect algebra of a carrier: the partial sum on the unit interval,
//! orthosupplements, sharpness, commutants, and coexistence with explicit
//! witnesses.
//!
//! Coexistence on noncommutative carriers is a bounded witness search and
//! its negative outcomes are reported as undecided, not refuted; the one
//! exception is a pair of noncommuting projections, which carries an exact
//! non-coexistence certificate.

use crate::axioms::leq;
use crate::carrier::{Carrier, Element};
use crate::projections::incompatible_projection_pair;
use crate::rational::Rational;
use crate::report::{
    run_seeded_cases, CaseRecord, Mode, ReportBuilder, SampleStrategy, VerificationReport,
};
use crate::sample::{sample_commuting_effect, sample_effect, unit_rat};
use crate::suite::SuiteError;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EffectError {
    #[error("element {element} is not an effect of {carrier}")]
    NotAnEffect { element: String, carrier: String },
    #[error("effects live on different carriers: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },
}

/// An element certified at construction to lie in the unit interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Effect {
    carrier: Carrier,
    element: Element,
}

impl Effect {
    pub fn new(c: &Carrier, element: Element) -> Result<Self, EffectError> {
        if !c.is_in_e(&element) {
            return Err(EffectError::NotAnEffect {
                element: element.to_string(),
                carrier: c.describe(),
            });
        }
        Ok(Effect { carrier: c.clone(), element })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn into_element(self) -> Element {
        self.element
    }
}

impl std::fmt::Display for Effect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.element)
    }
}

fn same_carrier(e: &Effect, f: &Effect) -> Result<(), EffectError> {
    if e.carrier == f.carrier {
        Ok(())
    } else {
        Err(EffectError::CarrierMismatch {
            left: e.carrier.describe(),
            right: f.carrier.describe(),
        })
    }
}

/// Partial sum: e + f when the sum stays in the unit interval, `None`
/// otherwise.
pub fn oplus(e: &Effect, f: &Effect) -> Result<Option<Effect>, EffectError> {
    same_carrier(e, f)?;
    let sum = e.carrier.add(&e.element, &f.element);
    if e.carrier.is_in_e(&sum) {
        Ok(Some(Effect { carrier: e.carrier.clone(), element: sum }))
    } else {
        Ok(None)
    }
}

/// 1 - e; an involution on effects.
pub fn orthosupplement(e: &Effect) -> Effect {
    let element = e.carrier.sub(&e.carrier.one(), &e.element);
    Effect { carrier: e.carrier.clone(), element }
}

pub fn commutes(c: &Carrier, g: &Element, h: &Element) -> bool {
    c.mul(g, h) == c.mul(h, g)
}

/// Elements of `universe` commuting with g. The commutant of the whole
/// group is infinite, so it is always taken relative to an explicit finite
/// universe.
pub fn commutant<'u>(c: &Carrier, g: &Element, universe: &'u [Element]) -> Vec<&'u Element> {
    universe.iter().filter(|h| commutes(c, g, h)).collect()
}

/// Intersection of the commutants of every element of `set`.
pub fn commutant_of_set<'u>(
    c: &Carrier,
    set: &[Element],
    universe: &'u [Element],
) -> Vec<&'u Element> {
    universe.iter().filter(|h| set.iter().all(|g| commutes(c, g, h))).collect()
}

/// Sharpness of an effect, with the two order-theoretic characterisations
/// cross-checked against the algebraic one on a test pool.
///
/// `idempotent` is the verdict (e = e^2, decided exactly). `subadditive`
/// reports whether every tested pair a, b <= e with a + b still an effect
/// kept a + b <= e; `no_common_lower` reports whether no tested nonzero d
/// sat below both e and 1 - e. The pool always contains e - e^2, which is
/// nonzero exactly when e is not idempotent and always lies under both e
/// and 1 - e, so for unsharp effects both cross-checks find their witness
/// deterministically.
#[derive(Clone, Debug)]
pub struct SharpnessReport {
    pub idempotent: bool,
    pub subadditive: bool,
    pub no_common_lower: bool,
    pub cases: u64,
    pub lower_witness: Option<Element>,
    pub subadditivity_witness: Option<(Element, Element)>,
}

impl SharpnessReport {
    pub fn is_sharp(&self) -> bool {
        self.idempotent
    }

    /// The three equivalent conditions must decide the same way.
    pub fn conditions_agree(&self) -> bool {
        self.idempotent == self.subadditive && self.idempotent == self.no_common_lower
    }
}

fn sharpness_pool(c: &Carrier, e: &Element, strategy: &SampleStrategy) -> Vec<Element> {
    let mut pool = match c.enumerate_effects() {
        Some(en) => en.elements,
        None => {
            let budget = strategy.case_budget.min(48).max(8);
            let mut rng = strategy.case_rng(u64::MAX);
            (0..budget).map(|_| sample_effect(c, &mut rng, strategy.magnitude_bound)).collect()
        }
    };
    let e2 = c.element_from_ring(&c.mul(e, e)).expect("effect squares stay in the group");
    pool.push(c.sub(e, &e2));
    pool.push(e.clone());
    pool
}

pub fn is_sharp(e: &Effect, strategy: &SampleStrategy) -> SharpnessReport {
    let c = &e.carrier;
    let el = &e.element;
    let idempotent = c.mul(el, el) == c.ring(el);
    let compl = c.sub(&c.one(), el);
    let pool = sharpness_pool(c, el, strategy);
    let mut cases = 0u64;

    let mut lower_witness = None;
    for d in &pool {
        cases += 1;
        if !d.is_zero() && c.is_in_e(d) && leq(c, d, el) && leq(c, d, &compl) {
            lower_witness = Some(d.clone());
            break;
        }
    }

    let below: Vec<&Element> =
        pool.iter().filter(|a| c.is_in_e(a) && leq(c, a, el)).collect();
    let mut subadditivity_witness = None;
    'outer: for a in &below {
        for b in &below {
            let sum = c.add(a, b);
            if !c.is_in_e(&sum) {
                continue;
            }
            cases += 1;
            if !leq(c, &sum, el) {
                subadditivity_witness = Some(((*a).clone(), (*b).clone()));
                break 'outer;
            }
        }
    }

    SharpnessReport {
        idempotent,
        subadditive: subadditivity_witness.is_none(),
        no_common_lower: lower_witness.is_none(),
        cases,
        lower_witness,
        subadditivity_witness,
    }
}

/// A common part d with remainders e1 = e - d and f1 = f - d, certifying
/// that e and f coexist.
#[derive(Clone, Debug, PartialEq)]
pub struct CoexistenceWitness {
    pub d: Element,
    pub e1: Element,
    pub f1: Element,
}

impl CoexistenceWitness {
    /// Exact check of the defining equations against a pair.
    pub fn validates(&self, e: &Effect, f: &Effect) -> bool {
        let c = &e.carrier;
        let all_effects = [&self.d, &self.e1, &self.f1].iter().all(|x| c.is_in_e(x));
        let total = c.add(&c.add(&self.d, &self.e1), &self.f1);
        all_effects
            && c.is_in_e(&total)
            && c.add(&self.d, &self.e1) == e.element
            && c.add(&self.d, &self.f1) == f.element
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoexistenceOutcome {
    Coexistent(CoexistenceWitness),
    /// Exact refutation; only issued with a projection-pair certificate.
    NotCoexistent { reason: String },
    /// Bounded search exhausted without a witness or a certificate.
    Undecided { cases_tried: u64 },
}

// The defining form of coexistence asks for three effects d, e1, f1 with
// e = d + e1, f = d + f1 and d + e1 + f1 an effect. A single d suffices:
//   given (d, e1, f1), that same d has e - d = e1 and f - d = f1 in E and
//   e + f - d = d + e1 + f1 in E;
//   conversely, given d in E with e - d, f - d, e + f - d all in E, put
//   e1 := e - d and f1 := f - d; then e = d + e1, f = d + f1, and
//   d + e1 + f1 = e + f - d is an effect.
// So searching over single common parts d loses nothing.
fn witness_from_common_part(c: &Carrier, e: &Element, f: &Element, d: Element) -> Option<CoexistenceWitness> {
    if !c.is_in_e(&d) {
        return None;
    }
    let e1 = c.sub(e, &d);
    let f1 = c.sub(f, &d);
    let total = c.sub(&c.add(e, f), &d);
    if c.is_in_e(&e1) && c.is_in_e(&f1) && c.is_in_e(&total) {
        Some(CoexistenceWitness { d, e1, f1 })
    } else {
        None
    }
}

fn is_idempotent(c: &Carrier, x: &Element) -> bool {
    c.mul(x, x) == c.ring(x)
}

/// Searches for a coexistence witness.
///
/// Deterministic tiers first: d = 0 when e + f is still an effect; the
/// truncated sum max(0, e + f - 1) where the carrier has pointwise maxima
/// (always succeeds there); d = ef for commuting pairs. A noncommuting
/// projection pair is refuted outright. What remains is a seeded search
/// over scaled sampled effects; exhausting it yields an undecided outcome,
/// never a refutation.
pub fn coexistence_witness(
    e: &Effect,
    f: &Effect,
    strategy: &SampleStrategy,
) -> Result<CoexistenceOutcome, EffectError> {
    same_carrier(e, f)?;
    let c = &e.carrier;
    let (ee, fe) = (&e.element, &f.element);

    if let Some(w) = witness_from_common_part(c, ee, fe, c.zero()) {
        return Ok(CoexistenceOutcome::Coexistent(w));
    }
    let excess = c.sub(&c.add(ee, fe), &c.one());
    if let Some(trunc) = c.pointwise_max(&excess, &c.zero()) {
        if let Some(w) = witness_from_common_part(c, ee, fe, trunc) {
            return Ok(CoexistenceOutcome::Coexistent(w));
        }
    }
    if commutes(c, ee, fe) {
        let prod = c.element_from_ring(&c.mul(ee, fe)).expect("commuting product stays in the group");
        if let Some(w) = witness_from_common_part(c, ee, fe, prod) {
            return Ok(CoexistenceOutcome::Coexistent(w));
        }
    }
    if is_idempotent(c, ee) && is_idempotent(c, fe) && !commutes(c, ee, fe) {
        return Ok(CoexistenceOutcome::NotCoexistent {
            reason: "projections coexist exactly when they commute, and this pair does not"
                .to_string(),
        });
    }

    use rayon::prelude::*;
    let budget = strategy.case_budget;
    let found = (0..budget)
        .into_par_iter()
        .find_map_first(|i| {
            let mut rng = strategy.case_rng(i);
            let base = sample_effect(c, &mut rng, strategy.magnitude_bound);
            let lambda = unit_rat(&mut rng, 4);
            let candidate = c.try_scalar_mul(&lambda, &base).unwrap_or(base);
            witness_from_common_part(c, ee, fe, candidate)
        });
    match found {
        Some(w) => Ok(CoexistenceOutcome::Coexistent(w)),
        None => Ok(CoexistenceOutcome::Undecided { cases_tried: budget }),
    }
}

const EFFECT_LAWS: [&str; 10] = [
    "effects.oplus.identity",
    "effects.oplus.commutative",
    "effects.oplus.associative",
    "effects.orthosupplement.involution",
    "effects.commuting.product-bounds",
    "effects.sharp.agreement",
    "effects.coexist.bounded-sum",
    "effects.coexist.commuting",
    "effects.coexist.witness-valid",
    "effects.coexist.search",
];

fn inner_search_strategy(strategy: &SampleStrategy, case: u64) -> SampleStrategy {
    SampleStrategy::seeded(
        strategy.seed.wrapping_add(case.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        strategy.case_budget.min(64),
        strategy.magnitude_bound,
    )
}

fn oplus_pair_records(c: &Carrier, e: &Element, f: &Element) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let ef = c.add(e, f);
    let fe = c.add(f, e);
    recs.push(CaseRecord::check_with(
        "effects.oplus.commutative",
        c.is_in_e(&ef) == c.is_in_e(&fe) && ef == fe,
        || {
            (
                vec![e.to_string(), f.to_string()],
                "partial sum is commutative".into(),
                format!("e+f = {ef}, f+e = {fe}"),
            )
        },
    ));
    recs
}

fn oplus_triple_record(c: &Carrier, e: &Element, f: &Element, g: &Element) -> CaseRecord {
    let ef = c.add(e, f);
    if !(c.is_in_e(&ef) && c.is_in_e(&c.add(&ef, g))) {
        return CaseRecord::pass("effects.oplus.associative");
    }
    let fg = c.add(f, g);
    let ok = c.is_in_e(&fg) && c.add(e, &fg) == c.add(&ef, g);
    CaseRecord::check_with("effects.oplus.associative", ok, || {
        (
            vec![e.to_string(), f.to_string(), g.to_string()],
            "(e+f)+g defined forces f+g defined with equal sums".into(),
            if c.is_in_e(&fg) { "sums differ".into() } else { format!("f+g = {fg} left E") },
        )
    })
}

fn involution_record(c: &Carrier, e: &Element) -> CaseRecord {
    let compl = c.sub(&c.one(), e);
    let closed = c.is_in_e(&compl);
    let back = c.sub(&c.one(), &compl) == *e;
    let total = c.add(e, &compl);
    let sums_to_one = total == c.one() && c.is_in_e(&total);
    CaseRecord::check_with(
        "effects.orthosupplement.involution",
        closed && back && sums_to_one,
        || {
            (
                vec![e.to_string()],
                "1-e is an effect, 1-(1-e) = e, and e + (1-e) = 1".into(),
                if closed { "arithmetic failed".into() } else { format!("1-e = {compl} left E") },
            )
        },
    )
}

fn identity_record(c: &Carrier, e: &Element) -> CaseRecord {
    let sum = c.add(e, &c.zero());
    CaseRecord::check_with(
        "effects.oplus.identity",
        c.is_in_e(&sum) && sum == *e,
        || {
            (
                vec![e.to_string()],
                "e + 0 = e and stays an effect".into(),
                format!("got {sum}"),
            )
        },
    )
}

fn product_bounds_record(c: &Carrier, e: &Element, f: &Element) -> CaseRecord {
    if !commutes(c, e, f) {
        return CaseRecord::pass("effects.commuting.product-bounds");
    }
    let prod = match c.element_from_ring(&c.mul(e, f)) {
        Some(p) => p,
        None => {
            return CaseRecord::fail(
                "effects.commuting.product-bounds",
                vec![e.to_string(), f.to_string()],
                "commuting product stays in the group",
                "product not representable",
            )
        }
    };
    let upper = c.sub(&c.add(e, f), &prod);
    let ok = leq(c, &c.zero(), &prod)
        && leq(c, &prod, e)
        && leq(c, &prod, f)
        && c.is_in_e(&upper)
        && leq(c, e, &upper)
        && leq(c, f, &upper);
    CaseRecord::check_with("effects.commuting.product-bounds", ok, || {
        (
            vec![e.to_string(), f.to_string()],
            "0 <= ef <= e, f and e, f <= e+f-ef <= 1".into(),
            format!("ef = {prod}, e+f-ef = {upper}"),
        )
    })
}

fn sharpness_record(c: &Carrier, e: &Element, strategy: &SampleStrategy) -> CaseRecord {
    let effect = match Effect::new(c, e.clone()) {
        Ok(eff) => eff,
        Err(err) => {
            return CaseRecord::fail(
                "effects.sharp.agreement",
                vec![e.to_string()],
                "test pool element is an effect",
                &err.to_string(),
            )
        }
    };
    let report = is_sharp(&effect, strategy);
    CaseRecord::check_with("effects.sharp.agreement", report.conditions_agree(), || {
        (
            vec![e.to_string()],
            "idempotence, subadditivity, and no-common-lower-bound agree".into(),
            format!(
                "idempotent {}, subadditive {}, no common lower bound {}",
                report.idempotent, report.subadditive, report.no_common_lower
            ),
        )
    })
}

fn coexistence_records(
    c: &Carrier,
    e: &Element,
    f: &Element,
    strategy: &SampleStrategy,
    case: u64,
) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let (eff, fff) = match (Effect::new(c, e.clone()), Effect::new(c, f.clone())) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return recs,
    };
    let inner = inner_search_strategy(strategy, case);
    let outcome = coexistence_witness(&eff, &fff, &inner).expect("same carrier");

    match &outcome {
        CoexistenceOutcome::Coexistent(w) => {
            recs.push(CaseRecord::check_with(
                "effects.coexist.witness-valid",
                w.validates(&eff, &fff),
                || {
                    (
                        vec![e.to_string(), f.to_string()],
                        "returned witness satisfies its defining equations".into(),
                        format!("d = {}, e1 = {}, f1 = {}", w.d, w.e1, w.f1),
                    )
                },
            ));
            recs.push(CaseRecord::pass("effects.coexist.search"));
        }
        CoexistenceOutcome::NotCoexistent { .. } => {
            recs.push(CaseRecord::pass("effects.coexist.search"));
        }
        CoexistenceOutcome::Undecided { cases_tried } => {
            recs.push(CaseRecord::undecided(
                "effects.coexist.search",
                vec![e.to_string(), f.to_string()],
                &format!("no witness within {cases_tried} candidates; coexistence left open"),
            ));
        }
    }

    let sum = c.add(e, f);
    if c.is_in_e(&sum) {
        let ok = matches!(&outcome, CoexistenceOutcome::Coexistent(w) if w.d.is_zero());
        recs.push(CaseRecord::check_with("effects.coexist.bounded-sum", ok, || {
            (
                vec![e.to_string(), f.to_string()],
                "e+f in E yields the d = 0 witness".into(),
                format!("{outcome:?}"),
            )
        }));
    }
    if commutes(c, e, f) {
        let ok = matches!(&outcome, CoexistenceOutcome::Coexistent(_));
        recs.push(CaseRecord::check_with("effects.coexist.commuting", ok, || {
            (
                vec![e.to_string(), f.to_string()],
                "commuting effects always coexist".into(),
                format!("{outcome:?}"),
            )
        }));
    }
    recs
}

fn effect_case(
    c: &Carrier,
    strategy: &SampleStrategy,
    case: u64,
    rng: &mut ChaCha8Rng,
) -> Vec<CaseRecord> {
    let bound = strategy.magnitude_bound;
    let e = sample_effect(c, rng, bound);
    let f = sample_effect(c, rng, bound);
    let g = sample_effect(c, rng, bound);
    let mut recs = Vec::new();
    recs.push(identity_record(c, &e));
    recs.extend(oplus_pair_records(c, &e, &f));
    recs.push(oplus_triple_record(c, &e, &f, &g));
    recs.push(involution_record(c, &e));
    recs.push(product_bounds_record(c, &e, &f));
    let h = sample_commuting_effect(c, rng, &e, bound);
    recs.push(product_bounds_record(c, &e, &h));
    recs.push(sharpness_record(c, &e, strategy));
    recs.extend(coexistence_records(c, &e, &f, strategy, case));
    recs.extend(coexistence_records(c, &e, &h, strategy, case));
    recs
}

/// The canonical matrix pair whose coexistence the bounded search cannot
/// settle: 3/4 of each projection in the standard noncommuting pair. The
/// scaled pair has no common part d (d <= (3/4)p forces d into p's corner,
/// likewise for q, so d = 0) yet e + f exceeds 1, so no witness exists;
/// the searcher cannot know that and must answer undecided.
fn hard_pair(c: &Carrier) -> Option<(Element, Element)> {
    let (p, q) = incompatible_projection_pair(c)?;
    let t = Rational::new(3, 4);
    Some((
        c.try_scalar_mul(&t, &p).expect("matrix carriers scale freely"),
        c.try_scalar_mul(&t, &q).expect("matrix carriers scale freely"),
    ))
}

/// Effect-algebra laws, sharpness agreement, and the coexistence story.
/// Exhaustive mode walks all pairs (and triples) of the complete effect
/// enumeration; seeded mode samples. Matrix carriers additionally face the
/// canonical undecidable pair, so their verdict is undecided by design.
pub fn verify_effect_laws(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    let mut b = ReportBuilder::new(&c.describe(), "effects", *strategy);
    b.declare_laws(&EFFECT_LAWS);
    let mut offset = 0u64;

    if strategy.mode == Mode::Exhaustive {
        let en = c
            .enumerate_effects()
            .filter(|e| e.complete)
            .ok_or_else(|| SuiteError::ExhaustiveUnavailable { model: c.describe() })?;
        let els = &en.elements;
        let mut case = 0u64;
        for e in els {
            b.record(case, identity_record(c, e));
            b.record(case, involution_record(c, e));
            b.record(case, sharpness_record(c, e, strategy));
            case += 1;
        }
        for e in els {
            for f in els {
                b.record_all(case, oplus_pair_records(c, e, f));
                b.record(case, product_bounds_record(c, e, f));
                b.record_all(case, coexistence_records(c, e, f, strategy, case));
                case += 1;
            }
        }
        for e in els {
            for f in els {
                for g in els {
                    b.record(case, oplus_triple_record(c, e, f, g));
                    case += 1;
                }
            }
        }
        b.note("effect pairs and triples walked completely");
        offset = case;
    }

    if let Some((e, f)) = hard_pair(c) {
        b.record_all(offset, coexistence_records(c, &e, &f, strategy, offset));
        offset += 1;
    }

    if strategy.mode == Mode::Seeded {
        run_seeded_cases(&mut b, strategy, offset, |i, rng| effect_case(c, strategy, i, rng));
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{MeasurableSpace, ValueRing};
    use crate::matrix::SymMatrix;
    use crate::report::Verdict;

    fn int_carrier(n: usize) -> Carrier {
        Carrier::function(MeasurableSpace::singletons(n).unwrap(), ValueRing::Integers, None)
            .unwrap()
    }

    fn rat_carrier(n: usize, grid: Option<u32>) -> Carrier {
        Carrier::function(MeasurableSpace::singletons(n).unwrap(), ValueRing::Rationals, grid)
            .unwrap()
    }

    fn fun(vals: &[(i64, i64)]) -> Element {
        Element::Function(vals.iter().map(|&(n, d)| Rational::new(n, d)).collect())
    }

    fn matrix_pair() -> (Carrier, Element, Element) {
        let c = Carrier::matrix(2).unwrap();
        let (p, q) = incompatible_projection_pair(&c).unwrap();
        (c, p, q)
    }

    #[test]
    fn effect_construction_validates() {
        let c = int_carrier(2);
        assert!(Effect::new(&c, fun(&[(1, 1), (0, 1)])).is_ok());
        let err = Effect::new(&c, fun(&[(2, 1), (0, 1)])).unwrap_err();
        assert!(matches!(err, EffectError::NotAnEffect { .. }));
    }

    #[test]
    fn oplus_frozen_values() {
        let c = rat_carrier(2, None);
        let e = Effect::new(&c, fun(&[(3, 4), (1, 4)])).unwrap();
        let zero = Effect::new(&c, c.zero()).unwrap();
        let sum = oplus(&e, &zero).unwrap().unwrap();
        assert_eq!(sum.element(), e.element());

        let ci = int_carrier(2);
        let a = Effect::new(&ci, fun(&[(1, 1), (0, 1)])).unwrap();
        let b = Effect::new(&ci, fun(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!(oplus(&a, &b).unwrap(), None);

        let (cm, p, q) = matrix_pair();
        let half = Rational::new(1, 2);
        let hp = Effect::new(&cm, cm.try_scalar_mul(&half, &p).unwrap()).unwrap();
        let hq = Effect::new(&cm, cm.try_scalar_mul(&half, &q).unwrap()).unwrap();
        let s = oplus(&hp, &hq).unwrap().unwrap();
        let expected = Element::Matrix(
            SymMatrix::from_rows(vec![
                vec![Rational::new(3, 4), Rational::new(1, 4)],
                vec![Rational::new(1, 4), Rational::new(1, 4)],
            ])
            .unwrap(),
        );
        assert_eq!(*s.element(), expected);
    }

    #[test]
    fn oplus_rejects_carrier_mismatch() {
        let c2 = int_carrier(2);
        let c3 = int_carrier(3);
        let e = Effect::new(&c2, c2.one()).unwrap();
        let f = Effect::new(&c3, c3.one()).unwrap();
        assert!(matches!(oplus(&e, &f), Err(EffectError::CarrierMismatch { .. })));
    }

    #[test]
    fn orthosupplement_is_an_involution() {
        let c = rat_carrier(2, None);
        let e = Effect::new(&c, fun(&[(3, 4), (1, 4)])).unwrap();
        let compl = orthosupplement(&e);
        assert_eq!(*compl.element(), fun(&[(1, 4), (3, 4)]));
        assert_eq!(orthosupplement(&compl).element(), e.element());
    }

    #[test]
    fn sharpness_frozen_values() {
        let strategy = SampleStrategy::seeded(5, 40, 4);
        let ci = int_carrier(2);
        let sharp = is_sharp(&Effect::new(&ci, fun(&[(1, 1), (0, 1)])).unwrap(), &strategy);
        assert!(sharp.is_sharp() && sharp.conditions_agree());

        let cr = rat_carrier(2, None);
        let e = Effect::new(&cr, fun(&[(1, 2), (0, 1)])).unwrap();
        let unsharp = is_sharp(&e, &strategy);
        assert!(!unsharp.is_sharp());
        assert!(unsharp.conditions_agree(), "{unsharp:?}");
        let d = unsharp.lower_witness.expect("nonzero lower bound exists");
        assert!(!d.is_zero());
        assert!(leq(&cr, &d, e.element()));
        let (cm, _, q) = matrix_pair();
        let qr = is_sharp(&Effect::new(&cm, q).unwrap(), &strategy);
        assert!(qr.is_sharp() && qr.conditions_agree());
    }

    #[test]
    fn sharpness_agrees_on_full_grid() {
        let c = rat_carrier(2, Some(4));
        let strategy = SampleStrategy::seeded(5, 40, 4);
        for e in c.enumerate_effects().unwrap().elements {
            let r = is_sharp(&Effect::new(&c, e.clone()).unwrap(), &strategy);
            assert!(r.conditions_agree(), "disagreement at {e}: {r:?}");
        }
    }

    #[test]
    fn commutant_frozen_values() {
        let (c, p, q) = matrix_pair();
        assert!(!commutes(&c, &p, &q));
        let one_minus_p = c.sub(&c.one(), &p);
        let universe =
            vec![c.zero(), c.one(), p.clone(), q.clone(), one_minus_p.clone()];
        let com = commutant(&c, &p, &universe);
        let expected = [c.zero(), c.one(), p.clone(), one_minus_p];
        assert_eq!(com.len(), 4);
        for (got, want) in com.iter().zip(expected.iter()) {
            assert_eq!(*got, want);
        }
        let of_set = commutant_of_set(&c, &[p, q], &universe);
        assert_eq!(of_set, vec![&universe[0], &universe[1]]);
    }

    #[test]
    fn function_elements_always_commute() {
        let c = rat_carrier(3, None);
        let strategy = SampleStrategy::seeded(11, 30, 5);
        for i in 0..30 {
            let mut rng = strategy.case_rng(i);
            let g = crate::sample::sample_group(&c, &mut rng, 5);
            let h = crate::sample::sample_group(&c, &mut rng, 5);
            assert!(commutes(&c, &g, &h));
        }
    }

    #[test]
    fn coexistence_frozen_values() {
        let strategy = SampleStrategy::seeded(3, 50, 4);
        let cr = rat_carrier(2, None);
        let e = Effect::new(&cr, fun(&[(3, 4), (1, 4)])).unwrap();
        let f = Effect::new(&cr, fun(&[(1, 2), (3, 4)])).unwrap();
        match coexistence_witness(&e, &f, &strategy).unwrap() {
            CoexistenceOutcome::Coexistent(w) => {
                assert_eq!(w.d, fun(&[(1, 4), (0, 1)]));
                assert_eq!(w.e1, fun(&[(1, 2), (1, 4)]));
                assert_eq!(w.f1, fun(&[(1, 4), (3, 4)]));
                assert!(w.validates(&e, &f));
            }
            other => panic!("expected witness, got {other:?}"),
        }

        let one = Effect::new(&cr, cr.one()).unwrap();
        match coexistence_witness(&one, &one, &strategy).unwrap() {
            CoexistenceOutcome::Coexistent(w) => {
                assert_eq!(w.d, cr.one());
                assert!(w.e1.is_zero() && w.f1.is_zero());
            }
            other => panic!("expected witness, got {other:?}"),
        }

        let (cm, p, q) = matrix_pair();
        let half = Rational::new(1, 2);
        let hp = Effect::new(&cm, cm.try_scalar_mul(&half, &p).unwrap()).unwrap();
        let hq = Effect::new(&cm, cm.try_scalar_mul(&half, &q).unwrap()).unwrap();
        match coexistence_witness(&hp, &hq, &strategy).unwrap() {
            CoexistenceOutcome::Coexistent(w) => {
                assert!(w.d.is_zero(), "noncommuting pair still coexists with d = 0");
                assert!(w.validates(&hp, &hq));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn noncommuting_projections_are_refuted() {
        let (cm, p, q) = matrix_pair();
        let strategy = SampleStrategy::seeded(3, 50, 4);
        let pe = Effect::new(&cm, p).unwrap();
        let qe = Effect::new(&cm, q).unwrap();
        assert!(matches!(
            coexistence_witness(&pe, &qe, &strategy).unwrap(),
            CoexistenceOutcome::NotCoexistent { .. }
        ));
    }

    #[test]
    fn hard_pair_is_undecided() {
        let c = Carrier::matrix(2).unwrap();
        let (e, f) = hard_pair(&c).unwrap();
        let strategy = SampleStrategy::seeded(3, 120, 4);
        let ee = Effect::new(&c, e).unwrap();
        let fe = Effect::new(&c, f).unwrap();
        match coexistence_witness(&ee, &fe, &strategy).unwrap() {
            CoexistenceOutcome::Undecided { cases_tried } => assert_eq!(cases_tried, 120),
            other => panic!("expected undecided, got {other:?}"),
        }
    }

    #[test]
    fn single_witness_search_matches_triple_definition() {
        let strategy = SampleStrategy::seeded(9, 40, 3);
        for c in [int_carrier(2), rat_carrier(2, Some(2))] {
            let effects = c.enumerate_effects().unwrap().elements;
            for e in &effects {
                for f in &effects {
                    let ee = Effect::new(&c, e.clone()).unwrap();
                    let fe = Effect::new(&c, f.clone()).unwrap();
                    let found = matches!(
                        coexistence_witness(&ee, &fe, &strategy).unwrap(),
                        CoexistenceOutcome::Coexistent(_)
                    );
                    let mut triple = false;
                    'search: for d in &effects {
                        for e1 in &effects {
                            for f1 in &effects {
                                let total = c.add(&c.add(d, e1), f1);
                                if c.is_in_e(&total)
                                    && c.add(d, e1) == *e
                                    && c.add(d, f1) == *f
                                {
                                    triple = true;
                                    break 'search;
                                }
                            }
                        }
                    }
                    assert_eq!(found, triple, "disagreement at e = {e}, f = {f}");
                }
            }
        }
    }

    #[test]
    fn effect_suite_verdicts() {
        let strategy = SampleStrategy::exhaustive(17, 60, 3);
        let r = verify_effect_laws(&int_carrier(3), &strategy).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);
        assert!(r.laws.iter().all(|l| l.cases > 0));

        let seeded = SampleStrategy::seeded(17, 90, 3);
        let r = verify_effect_laws(&rat_carrier(2, Some(4)), &seeded).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);

        let r = verify_effect_laws(&Carrier::matrix(2).unwrap(), &seeded).unwrap();
        assert_eq!(r.verdict, Verdict::Undecided, "{:?}", r.failures);
        assert!(!r.undecided.is_empty());
        assert!(r.laws.iter().all(|l| l.cases > 0), "{:?}", r.laws);
    }

    #[test]
    fn suite_reports_are_deterministic() {
        let c = Carrier::matrix(2).unwrap();
        let strategy = SampleStrategy::seeded(23, 40, 3);
        let a = verify_effect_laws(&c, &strategy).unwrap().to_json_string();
        let b = verify_effect_laws(&c, &strategy).unwrap().to_json_string();
        assert_eq!(a, b);
    }
}
