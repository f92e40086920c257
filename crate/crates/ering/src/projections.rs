//! The idempotents of a carrier as an orthomodular poset: meets and joins
//! of commuting pairs, Mackey decompositions, the corner compressions
//! g -> pgp, and the recovery of a compression's projection from a bare
//! endomorphism table.
//!
//! Meets and joins here are genuinely partial: a noncommuting pair has no
//! product projection, and the suites treat that as a checked precondition
//! rather than an error path to avoid.

use crate::axioms::leq;
use crate::carrier::{Carrier, Element, RingElem};
use crate::matrix::SymMatrix;
use crate::rational::Rational;
use crate::report::{
    run_seeded_cases, CaseRecord, Failure, LawResult, Mode, ReportBuilder, SampleStrategy,
    VerificationReport,
};
use crate::sample::{
    sample_effect, sample_effect_below, sample_group, sample_positive, sample_projection,
};
use crate::suite::SuiteError;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("element {element} is not idempotent")]
    NotIdempotent { element: String },
    #[error("projections live on different carriers: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },
    #[error("{left} and {right} do not commute; meets and joins need a commuting pair")]
    NotCommuting { left: String, right: String },
    #[error("{lower} is not below {upper}")]
    NotBelow { lower: String, upper: String },
}

pub fn is_projection(c: &Carrier, g: &Element) -> bool {
    c.mul(g, g) == c.ring(g)
}

/// An element certified idempotent at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    carrier: Carrier,
    element: Element,
}

impl Projection {
    pub fn new(c: &Carrier, element: Element) -> Result<Self, ProjectionError> {
        if !is_projection(c, &element) {
            return Err(ProjectionError::NotIdempotent { element: element.to_string() });
        }
        Ok(Projection { carrier: c.clone(), element })
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

    pub fn complement(&self) -> Projection {
        let element = self.carrier.sub(&self.carrier.one(), &self.element);
        Projection { carrier: self.carrier.clone(), element }
    }
}

impl std::fmt::Display for Projection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.element)
    }
}

fn same_carrier(p: &Projection, q: &Projection) -> Result<(), ProjectionError> {
    if p.carrier == q.carrier {
        Ok(())
    } else {
        Err(ProjectionError::CarrierMismatch {
            left: p.carrier.describe(),
            right: q.carrier.describe(),
        })
    }
}

fn commuting_product(p: &Projection, q: &Projection) -> Result<Element, ProjectionError> {
    same_carrier(p, q)?;
    let c = &p.carrier;
    let pq = c.mul(&p.element, &q.element);
    if pq != c.mul(&q.element, &p.element) {
        return Err(ProjectionError::NotCommuting {
            left: p.element.to_string(),
            right: q.element.to_string(),
        });
    }
    Ok(c.element_from_ring(&pq).expect("commuting product of projections stays in the group"))
}

/// pq, the infimum of a commuting pair in both the projection set and the
/// whole unit interval.
pub fn proj_meet(p: &Projection, q: &Projection) -> Result<Projection, ProjectionError> {
    let element = commuting_product(p, q)?;
    Ok(Projection { carrier: p.carrier.clone(), element })
}

/// p + q - pq, the supremum of a commuting pair.
pub fn proj_join(p: &Projection, q: &Projection) -> Result<Projection, ProjectionError> {
    let pq = commuting_product(p, q)?;
    let c = &p.carrier;
    let element = c.sub(&c.add(&p.element, &q.element), &pq);
    Ok(Projection { carrier: c.clone(), element })
}

/// q - p for p <= q; equals the infimum of q and 1 - p.
pub fn proj_orthodiff(p: &Projection, q: &Projection) -> Result<Projection, ProjectionError> {
    same_carrier(p, q)?;
    let c = &p.carrier;
    if !leq(c, &p.element, &q.element) {
        return Err(ProjectionError::NotBelow {
            lower: p.element.to_string(),
            upper: q.element.to_string(),
        });
    }
    let element = c.sub(&q.element, &p.element);
    Ok(Projection { carrier: c.clone(), element })
}

/// Common part and remainders exhibiting Mackey compatibility:
/// p = d + p1, q = d + q1 with d, p1, q1 pairwise orthogonal projections.
#[derive(Clone, Debug, PartialEq)]
pub struct MackeyDecomposition {
    pub d: Element,
    pub p1: Element,
    pub q1: Element,
}

impl MackeyDecomposition {
    pub fn validates(&self, c: &Carrier, p: &Element, q: &Element) -> bool {
        let parts = [&self.d, &self.p1, &self.q1];
        let projections = parts.iter().all(|x| is_projection(c, x));
        let orthogonal = c.mul(&self.d, &self.p1).is_zero()
            && c.mul(&self.d, &self.q1).is_zero()
            && c.mul(&self.p1, &self.q1).is_zero();
        let sums = c.add(&self.d, &self.p1) == *p && c.add(&self.d, &self.q1) == *q;
        let total = c.add(&c.add(&self.d, &self.p1), &self.q1);
        projections && orthogonal && sums && is_projection(c, &total)
    }
}

/// Projections are Mackey compatible exactly when they commute; the
/// decomposition takes d = pq.
pub fn mackey_compatible(
    p: &Projection,
    q: &Projection,
) -> (bool, Option<MackeyDecomposition>) {
    match commuting_product(p, q) {
        Err(_) => (false, None),
        Ok(d) => {
            let c = &p.carrier;
            let p1 = c.sub(&p.element, &d);
            let q1 = c.sub(&q.element, &d);
            (true, Some(MackeyDecomposition { d, p1, q1 }))
        }
    }
}

/// g -> pgp. Stays in the group, preserves positivity, and fixes the
/// down-set of p.
pub fn compress(p: &Projection, g: &Element) -> Element {
    let c = &p.carrier;
    let pr = c.ring(&p.element);
    let image = pr.mul(&c.ring(g)).mul(&pr);
    c.element_from_ring(&image).expect("compressed group elements stay in the group")
}

/// Outcome of checking a projection universe against the orthomodular
/// poset laws. Failure-free exactly when every pairwise law held.
#[derive(Clone, Debug)]
pub struct OmpCertificate {
    pub universe: Vec<Element>,
    pub laws: Vec<LawResult>,
    pub failures: Vec<Failure>,
}

impl OmpCertificate {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.failures == 0)
    }
}

const OMP_LAWS: [&str; 7] = [
    "omp.bounds",
    "omp.involution",
    "omp.order-reversal",
    "omp.orthogonal-sup",
    "omp.orthomodular",
    "omp.p+q.equivalence",
    "omp.normality",
];

/// The five equivalent readings of "p and q are orthogonal".
pub fn orthogonality_conditions(c: &Carrier, p: &Element, q: &Element) -> [bool; 5] {
    let sum = c.add(p, q);
    let pq = c.mul(p, q);
    let qp = c.mul(q, p);
    [
        c.is_in_e(&sum),
        leq(c, &sum, &c.one()),
        pq.is_zero(),
        pq.is_zero() && qp.is_zero(),
        is_projection(c, &sum) && c.is_in_e(&sum),
    ]
}

fn normality_record(c: &Carrier, d: &Element, e: &Element, f: &Element) -> CaseRecord {
    let all_effects = c.is_in_e(d) && c.is_in_e(e) && c.is_in_e(f);
    let total = c.add(&c.add(d, e), f);
    let hyp = all_effects
        && c.is_in_e(&total)
        && is_projection(c, &c.add(d, e))
        && is_projection(c, &c.add(d, f));
    if !hyp {
        return CaseRecord::pass("omp.normality");
    }
    let ok = is_projection(c, d) && is_projection(c, e) && is_projection(c, f);
    CaseRecord::check_with("omp.normality", ok, || {
        (
            vec![d.to_string(), e.to_string(), f.to_string()],
            "d+e and d+f projections force d, e, f projections".into(),
            "a summand is not idempotent".into(),
        )
    })
}

fn omp_pair_records(c: &Carrier, universe: &[Element], p: &Element, q: &Element) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let one = c.one();
    if leq(c, p, q) {
        let (cp, cq) = (c.sub(&one, p), c.sub(&one, q));
        recs.push(CaseRecord::check_with("omp.order-reversal", leq(c, &cq, &cp), || {
            (
                vec![p.to_string(), q.to_string()],
                "p <= q forces 1-q <= 1-p".into(),
                String::new(),
            )
        }));
        let diff = c.sub(q, p);
        let ok = is_projection(c, &diff) && c.add(p, &diff) == *q;
        recs.push(CaseRecord::check_with("omp.orthomodular", ok, || {
            (
                vec![p.to_string(), q.to_string()],
                "q = p + (q - p) with q - p a projection".into(),
                format!("q - p = {diff}"),
            )
        }));
    } else {
        recs.push(CaseRecord::pass("omp.order-reversal"));
        recs.push(CaseRecord::pass("omp.orthomodular"));
    }

    let conds = orthogonality_conditions(c, p, q);
    let agree = conds.iter().all(|&x| x == conds[0]);
    recs.push(CaseRecord::check_with("omp.p+q.equivalence", agree, || {
        (
            vec![p.to_string(), q.to_string()],
            "the five orthogonality conditions hold or fail together".into(),
            format!("{conds:?}"),
        )
    }));

    if leq(c, p, &c.sub(&one, q)) {
        let sum = c.add(p, q);
        let mut ok = is_projection(c, &sum) && leq(c, p, &sum) && leq(c, q, &sum);
        let mut blocker = None;
        for r in universe {
            if leq(c, p, r) && leq(c, q, r) && !leq(c, &sum, r) {
                ok = false;
                blocker = Some(r.clone());
                break;
            }
        }
        recs.push(CaseRecord::check_with("omp.orthogonal-sup", ok, || {
            (
                vec![p.to_string(), q.to_string()],
                "p + q is a projection and the least upper bound in the universe".into(),
                match blocker {
                    Some(r) => format!("common upper bound {r} is not above p + q"),
                    None => "p + q failed a bound or idempotence".into(),
                },
            )
        }));
    } else {
        recs.push(CaseRecord::pass("omp.orthogonal-sup"));
    }
    recs
}

/// Checks a finite projection universe against the orthomodular poset
/// laws, pairwise and exactly. Normality triples come from the commuting
/// pairs of the universe (d = pq, e = p - pq, f = q - pq) and from seeded
/// effect triples.
pub fn verify_omp(
    c: &Carrier,
    universe: &[Element],
    strategy: &SampleStrategy,
) -> Result<OmpCertificate, ProjectionError> {
    for el in universe {
        if !is_projection(c, el) {
            return Err(ProjectionError::NotIdempotent { element: el.to_string() });
        }
    }
    let mut b = ReportBuilder::new(&c.describe(), "omp", *strategy);
    b.declare_laws(&OMP_LAWS);
    let mut case = 0u64;
    let one = c.one();
    for p in universe {
        let bounds = leq(c, &c.zero(), p) && leq(c, p, &one);
        b.record(
            case,
            CaseRecord::check_with("omp.bounds", bounds, || {
                (vec![p.to_string()], "0 <= p <= 1".into(), String::new())
            }),
        );
        let compl = c.sub(&one, p);
        let inv = is_projection(c, &compl) && c.sub(&one, &compl) == *p;
        b.record(
            case,
            CaseRecord::check_with("omp.involution", inv, || {
                (
                    vec![p.to_string()],
                    "1-p is a projection and 1-(1-p) = p".into(),
                    String::new(),
                )
            }),
        );
        case += 1;
    }
    for p in universe {
        for q in universe {
            b.record_all(case, omp_pair_records(c, universe, p, q));
            if c.mul(p, q) == c.mul(q, p) {
                let d = c.element_from_ring(&c.mul(p, q)).expect("commuting product");
                let e = c.sub(p, &d);
                let f = c.sub(q, &d);
                b.record(case, normality_record(c, &d, &e, &f));
            }
            case += 1;
        }
    }
    run_seeded_cases(&mut b, strategy, case, |_, rng| {
        let bound = strategy.magnitude_bound;
        let d = sample_effect(c, rng, bound);
        let e = sample_effect(c, rng, bound);
        let f = sample_effect(c, rng, bound);
        vec![normality_record(c, &d, &e, &f)]
    });
    let report = b.finish();
    Ok(OmpCertificate {
        universe: universe.to_vec(),
        laws: report.laws,
        failures: report.failures,
    })
}

fn coordinate_matrix_projection(dim: usize, i: usize) -> Element {
    let mut m = SymMatrix::zero(dim).into_matrix();
    m.set(i, i, Rational::one());
    Element::Matrix(SymMatrix::new(m).expect("diagonal matrices are symmetric"))
}

/// A finite projection universe for any carrier: the complete enumeration
/// when one exists, otherwise the canonical matrix family (coordinate
/// projections, the tilted projection, and complements), extended through
/// products componentwise.
pub fn projection_universe(c: &Carrier) -> Vec<Element> {
    if let Some(ps) = c.enumerate_projections() {
        return ps;
    }
    if let Some((l, r)) = c.as_product() {
        let lu = projection_universe(l);
        let ru = projection_universe(r);
        let mut out = Vec::with_capacity(lu.len() * ru.len());
        for a in &lu {
            for b in &ru {
                out.push(Element::pair(a.clone(), b.clone()));
            }
        }
        return out;
    }
    let dim = c.matrix_dim().expect("function and product carriers enumerate projections");
    let mut universe = vec![c.zero(), c.one()];
    let push = |el: Element, universe: &mut Vec<Element>| {
        if !universe.contains(&el) {
            universe.push(el);
        }
    };
    for i in 0..dim {
        let p = coordinate_matrix_projection(dim, i);
        push(c.sub(&c.one(), &p), &mut universe);
        push(p, &mut universe);
    }
    if let Some((p, q)) = incompatible_projection_pair(c) {
        push(c.sub(&c.one(), &q), &mut universe);
        push(q, &mut universe);
        push(p, &mut universe);
    }
    universe
}

/// The standard noncommuting pair on a matrix carrier of dimension >= 2:
/// the first coordinate projection and the projection onto the diagonal
/// line of the first two coordinates. `None` on commutative carriers,
/// where no such pair exists.
pub fn incompatible_projection_pair(c: &Carrier) -> Option<(Element, Element)> {
    let dim = c.matrix_dim()?;
    if dim < 2 {
        return None;
    }
    let p = coordinate_matrix_projection(dim, 0);
    let mut q = SymMatrix::zero(dim).into_matrix();
    let half = Rational::new(1, 2);
    q.set(0, 0, half.clone());
    q.set(0, 1, half.clone());
    q.set(1, 0, half.clone());
    q.set(1, 1, half);
    let q = SymMatrix::new(q).expect("symmetric by construction");
    Some((p, Element::Matrix(q)))
}

/// Greatest element of `pool` below both bounds, if one exists.
pub fn brute_force_infimum(
    c: &Carrier,
    pool: &[Element],
    p: &Element,
    q: &Element,
) -> Option<Element> {
    let lower: Vec<&Element> =
        pool.iter().filter(|e| leq(c, e, p) && leq(c, e, q)).collect();
    lower
        .iter()
        .find(|m| lower.iter().all(|l| leq(c, l, m)))
        .map(|m| (*m).clone())
}

/// Least element of `pool` above both bounds, if one exists.
pub fn brute_force_supremum(
    c: &Carrier,
    pool: &[Element],
    p: &Element,
    q: &Element,
) -> Option<Element> {
    let upper: Vec<&Element> =
        pool.iter().filter(|e| leq(c, p, e) && leq(c, q, e)).collect();
    upper
        .iter()
        .find(|m| upper.iter().all(|u| leq(c, m, u)))
        .map(|m| (*m).clone())
}

const PROJECTION_LAWS: [&str; 7] = [
    "proj.pq.equivalence",
    "proj.meet.infimum",
    "proj.join.supremum",
    "proj.demorgan",
    "proj.qminusp.equivalence",
    "proj.mackey",
    "proj.complement-lattice",
];

/// The four equivalent readings of "the product of p and q is again a
/// projection".
pub fn product_conditions(c: &Carrier, p: &Element, q: &Element) -> [bool; 4] {
    let pq = c.mul(p, q);
    let qp = c.mul(q, p);
    let pqp = c.ring(p).mul(&c.ring(q)).mul(&c.ring(p));
    let as_element = c.element_from_ring(&pq);
    [
        as_element.as_ref().map(|el| is_projection(c, el)).unwrap_or(false),
        as_element.as_ref().map(|el| c.is_in_e(el)).unwrap_or(false),
        pq == qp,
        pq == pqp,
    ]
}

fn projection_pair_records(
    c: &Carrier,
    pool: &[Element],
    pool_complete: bool,
    p: &Element,
    q: &Element,
) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let one = c.one();
    let conds = product_conditions(c, p, q);
    let agree = conds.iter().all(|&x| x == conds[0]);
    recs.push(CaseRecord::check_with("proj.pq.equivalence", agree, || {
        (
            vec![p.to_string(), q.to_string()],
            "the four product-projection conditions hold or fail together".into(),
            format!("{conds:?}"),
        )
    }));

    let commuting = c.mul(p, q) == c.mul(q, p);
    if commuting {
        let m = c.element_from_ring(&c.mul(p, q)).expect("commuting product");
        let mut ok = is_projection(c, &m) && leq(c, &m, p) && leq(c, &m, q);
        for e in pool {
            if leq(c, e, p) && leq(c, e, q) && !leq(c, e, &m) {
                ok = false;
                break;
            }
        }
        if pool_complete {
            ok = ok && brute_force_infimum(c, pool, p, q).as_ref() == Some(&m);
        }
        recs.push(CaseRecord::check_with("proj.meet.infimum", ok, || {
            (
                vec![p.to_string(), q.to_string()],
                "pq is the greatest lower bound over the tested pool".into(),
                format!("pq = {m}"),
            )
        }));

        let j = c.sub(&c.add(p, q), &m);
        let mut ok = is_projection(c, &j) && leq(c, p, &j) && leq(c, q, &j);
        for e in pool {
            if leq(c, p, e) && leq(c, q, e) && !leq(c, &j, e) {
                ok = false;
                break;
            }
        }
        if pool_complete {
            ok = ok && brute_force_supremum(c, pool, p, q).as_ref() == Some(&j);
        }
        recs.push(CaseRecord::check_with("proj.join.supremum", ok, || {
            (
                vec![p.to_string(), q.to_string()],
                "p + q - pq is the least upper bound over the tested pool".into(),
                format!("p v q = {j}"),
            )
        }));

        let lhs = c.sub(&one, &j);
        let rhs = c
            .element_from_ring(&c.mul(&c.sub(&one, p), &c.sub(&one, q)))
            .expect("commuting product");
        recs.push(CaseRecord::check_with("proj.demorgan", lhs == rhs, || {
            (
                vec![p.to_string(), q.to_string()],
                "1 - (p v q) = (1-p)(1-q)".into(),
                format!("lhs {lhs}, rhs {rhs}"),
            )
        }));
    } else {
        recs.push(CaseRecord::pass("proj.meet.infimum"));
        recs.push(CaseRecord::pass("proj.join.supremum"));
        recs.push(CaseRecord::pass("proj.demorgan"));
    }

    let diff = c.sub(q, p);
    let three = [c.is_in_e(&diff), leq(c, p, q), is_projection(c, &diff) && c.is_in_e(&diff)];
    let three_agree = three.iter().all(|&x| x == three[0]);
    let mut ortho_ok = true;
    if three[1] {
        ortho_ok = leq(c, &diff, q) && leq(c, &diff, &c.sub(&one, p));
        for e in pool {
            if leq(c, e, q) && leq(c, e, &c.sub(&one, p)) && !leq(c, e, &diff) {
                ortho_ok = false;
                break;
            }
        }
    }
    recs.push(CaseRecord::check_with(
        "proj.qminusp.equivalence",
        three_agree && ortho_ok,
        || {
            (
                vec![p.to_string(), q.to_string()],
                "q-p in E, p <= q, q-p in P agree; q-p is then inf(q, 1-p)".into(),
                format!("conditions {three:?}"),
            )
        },
    ));

    let pp = Projection::new(c, p.clone()).expect("universe already validated");
    let qq = Projection::new(c, q.clone()).expect("universe already validated");
    let (compatible, decomposition) = mackey_compatible(&pp, &qq);
    let ok = compatible == commuting
        && match (compatible, &decomposition) {
            (true, Some(dec)) => dec.validates(c, p, q),
            (true, None) => false,
            (false, d) => d.is_none(),
        };
    recs.push(CaseRecord::check_with("proj.mackey", ok, || {
        (
            vec![p.to_string(), q.to_string()],
            "Mackey compatibility coincides with commuting, with a valid decomposition".into(),
            format!("compatible = {compatible}, decomposition = {decomposition:?}"),
        )
    }));
    recs
}

fn complement_lattice_record(c: &Carrier, p: &Element) -> CaseRecord {
    let pp = Projection::new(c, p.clone()).expect("universe already validated");
    let compl = pp.complement();
    let meet = proj_meet(&pp, &compl).expect("p commutes with 1-p");
    let join = proj_join(&pp, &compl).expect("p commutes with 1-p");
    let ok = meet.element().is_zero() && *join.element() == c.one();
    CaseRecord::check_with("proj.complement-lattice", ok, || {
        (
            vec![p.to_string()],
            "p ^ (1-p) = 0 and p v (1-p) = 1".into(),
            format!("meet {}, join {}", meet.element(), join.element()),
        )
    })
}

fn effect_pool(c: &Carrier, strategy: &SampleStrategy) -> (Vec<Element>, bool) {
    match c.enumerate_effects() {
        Some(en) => (en.elements, en.complete),
        None => {
            let mut rng = strategy.case_rng(u64::MAX - 1);
            let n = strategy.case_budget.min(32).max(8);
            let pool =
                (0..n).map(|_| sample_effect(c, &mut rng, strategy.magnitude_bound)).collect();
            (pool, false)
        }
    }
}

/// Meet/join/difference laws for the projection order, cross-checked
/// against brute-force extremum search over the effect pool (the complete
/// enumeration where one exists).
pub fn verify_projection_laws(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    if strategy.mode == Mode::Exhaustive && !c.effects_enumerable() {
        return Err(SuiteError::ExhaustiveUnavailable { model: c.describe() });
    }
    let mut b = ReportBuilder::new(&c.describe(), "projections", *strategy);
    b.declare_laws(&PROJECTION_LAWS);
    let universe = projection_universe(c);
    let (pool, pool_complete) = effect_pool(c, strategy);
    let mut case = 0u64;
    for p in &universe {
        b.record(case, complement_lattice_record(c, p));
        case += 1;
    }
    for p in &universe {
        for q in &universe {
            b.record_all(case, projection_pair_records(c, &pool, pool_complete, p, q));
            case += 1;
        }
    }
    if strategy.mode == Mode::Seeded {
        run_seeded_cases(&mut b, strategy, case, |_, rng| {
            let p = sample_projection(c, rng);
            let q = sample_projection(c, rng);
            if !is_projection(c, &p) || !is_projection(c, &q) {
                return vec![CaseRecord::fail(
                    "proj.pq.equivalence",
                    vec![p.to_string(), q.to_string()],
                    "sampled projections are idempotent",
                    "sampler produced a non-idempotent",
                )];
            }
            let mut recs = projection_pair_records(c, &pool, false, &p, &q);
            recs.push(complement_lattice_record(c, &p));
            recs
        });
        b.note("projection pairs beyond the canonical universe are sampled");
    } else {
        b.note("projection universe and effect pool walked completely");
    }
    Ok(b.finish())
}

/// Runs the orthomodular poset certificate as a suite over the carrier's
/// projection universe.
pub fn verify_omp_suite(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    if strategy.mode == Mode::Exhaustive && c.enumerate_projections().is_none() {
        return Err(SuiteError::ExhaustiveUnavailable { model: c.describe() });
    }
    let universe = projection_universe(c);
    let cert = verify_omp(c, &universe, strategy)
        .expect("projection_universe yields idempotents only");
    let mut b = ReportBuilder::new(&c.describe(), "omp", *strategy);
    for law in cert.laws {
        b.absorb_law(law);
    }
    for f in cert.failures {
        b.absorb_failure(f);
    }
    b.note(&format!("universe of {} projections checked pairwise", cert.universe.len()));
    Ok(b.finish())
}

/// An additive endomorphism of the group, given by its images on the
/// carrier's spanning basis and extended by linearity. Images live in the
/// enveloping ring so that defective maps (whose images leave the group)
/// can be represented and then rejected by the retraction checks.
#[derive(Clone, Debug)]
pub struct EndoTable {
    basis: Vec<Element>,
    images: Vec<RingElem>,
}

impl EndoTable {
    pub fn from_ring_fn(c: &Carrier, f: impl Fn(&RingElem) -> RingElem) -> EndoTable {
        let basis = c.spanning_basis();
        let images = basis.iter().map(|b| f(&c.ring(b))).collect();
        EndoTable { basis, images }
    }

    pub fn compression(c: &Carrier, p: &Projection) -> EndoTable {
        let pr = c.ring(p.element());
        EndoTable::from_ring_fn(c, |b| pr.mul(b).mul(&pr))
    }

    pub fn identity(c: &Carrier) -> EndoTable {
        EndoTable::from_ring_fn(c, |b| b.clone())
    }

    pub fn scaling(c: &Carrier, k: &Rational) -> EndoTable {
        EndoTable::from_ring_fn(c, |b| b.scale(k))
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn apply_ring(&self, c: &Carrier, g: &Element) -> RingElem {
        let coords = c.coordinates(g);
        let mut acc = c.ring(&c.zero());
        for (k, img) in coords.iter().zip(&self.images) {
            if !k.is_zero() {
                acc = acc.add(&img.scale(k));
            }
        }
        acc
    }

    /// Image as a group element; `None` when the table maps g outside G.
    pub fn apply(&self, c: &Carrier, g: &Element) -> Option<Element> {
        c.element_from_ring(&self.apply_ring(c, g))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RetractionError {
    #[error("image of {input} is {image}, which lies outside the group")]
    ImageOutsideGroup { input: String, image: String },
    #[error("J(1) = {image} is not an effect")]
    UnitImageNotEffect { image: String },
    #[error("J(1) = {image} is not idempotent")]
    UnitImageNotProjection { image: String },
    #[error("effect {effect} below J(1) moved to {image}")]
    RetractLawViolated { effect: String, image: String },
    #[error("not order-preserving: {lower} <= {upper} but images are not ordered")]
    NotOrderPreserving { lower: String, upper: String },
    #[error("J({input}) = {actual} but compression by J(1) gives {expected}")]
    NotCompression { input: String, expected: String, actual: String },
}

/// Recovers the projection of a retraction: p = J(1), verified idempotent,
/// with J(g) = pgp cross-checked on the basis and on sampled elements.
/// Sound on the carriers built here because they are archimedean (every
/// element infinitely often below another is already below it), which is
/// what forces a retraction to be a compression.
pub fn retraction_projection(
    c: &Carrier,
    table: &EndoTable,
    strategy: &SampleStrategy,
) -> Result<Element, RetractionError> {
    for (b, img) in table.basis.iter().zip(&table.images) {
        if c.element_from_ring(img).is_none() {
            return Err(RetractionError::ImageOutsideGroup {
                input: b.to_string(),
                image: img.to_string(),
            });
        }
    }
    let p = table.apply(c, &c.one()).ok_or_else(|| RetractionError::ImageOutsideGroup {
        input: c.one().to_string(),
        image: table.apply_ring(c, &c.one()).to_string(),
    })?;
    if !c.is_in_e(&p) {
        return Err(RetractionError::UnitImageNotEffect { image: p.to_string() });
    }
    if !is_projection(c, &p) {
        return Err(RetractionError::UnitImageNotProjection { image: p.to_string() });
    }
    let proj = Projection::new(c, p.clone()).expect("just verified idempotent");

    let check = |g: &Element| -> Result<(), RetractionError> {
        let actual = table.apply(c, g).ok_or_else(|| RetractionError::ImageOutsideGroup {
            input: g.to_string(),
            image: table.apply_ring(c, g).to_string(),
        })?;
        let expected = compress(&proj, g);
        if actual != expected {
            return Err(RetractionError::NotCompression {
                input: g.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
        Ok(())
    };
    for b in &table.basis {
        check(b)?;
    }
    for i in 0..strategy.case_budget.min(64) {
        let mut rng = strategy.case_rng(i);
        let bound = strategy.magnitude_bound;
        let below = sample_effect_below(c, &mut rng, &p, bound);
        let fixed = table.apply(c, &below).ok_or_else(|| RetractionError::ImageOutsideGroup {
            input: below.to_string(),
            image: table.apply_ring(c, &below).to_string(),
        })?;
        if fixed != below {
            return Err(RetractionError::RetractLawViolated {
                effect: below.to_string(),
                image: fixed.to_string(),
            });
        }
        let g = sample_group(c, &mut rng, bound);
        check(&g)?;
        let h = c.add(&g, &sample_positive(c, &mut rng, bound));
        let (jg, jh) = (table.apply(c, &g), table.apply(c, &h));
        match (jg, jh) {
            (Some(jg), Some(jh)) if leq(c, &jg, &jh) => {}
            _ => {
                return Err(RetractionError::NotOrderPreserving {
                    lower: g.to_string(),
                    upper: h.to_string(),
                })
            }
        }
    }
    Ok(p)
}

const COMPRESSION_LAWS: [&str; 10] = [
    "compression.additive",
    "compression.order",
    "compression.unit",
    "compression.retract",
    "compression.idempotent-map",
    "compression.effect-interval",
    "compression.positive",
    "compression.compose",
    "compression.zero-one",
    "compression.recover-projection",
];

fn compression_case(
    c: &Carrier,
    universe: &[Element],
    bound: u32,
    case: u64,
    rng: &mut ChaCha8Rng,
) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let p_el = if case % 2 == 0 {
        universe[(case as usize / 2) % universe.len()].clone()
    } else {
        sample_projection(c, rng)
    };
    let p = match Projection::new(c, p_el) {
        Ok(p) => p,
        Err(e) => {
            return vec![CaseRecord::fail(
                "compression.unit",
                vec![],
                "compression bases are projections",
                &e.to_string(),
            )]
        }
    };
    let g = sample_group(c, rng, bound);
    let h = sample_group(c, rng, bound);
    let e = sample_effect(c, rng, bound);
    let a = sample_positive(c, rng, bound);

    let jg = compress(&p, &g);
    let jh = compress(&p, &h);
    let sum_image = compress(&p, &c.add(&g, &h));
    recs.push(CaseRecord::check_with(
        "compression.additive",
        sum_image == c.add(&jg, &jh),
        || {
            (
                vec![p.to_string(), g.to_string(), h.to_string()],
                "J_p(g + h) = J_p(g) + J_p(h)".into(),
                format!("{sum_image} vs {}", c.add(&jg, &jh)),
            )
        },
    ));
    let k = c.add(&g, &a);
    recs.push(CaseRecord::check_with(
        "compression.order",
        leq(c, &jg, &compress(&p, &k)),
        || {
            (
                vec![p.to_string(), g.to_string(), k.to_string()],
                "g <= k forces J_p(g) <= J_p(k)".into(),
                String::new(),
            )
        },
    ));
    recs.push(CaseRecord::check_with(
        "compression.unit",
        compress(&p, &c.one()) == *p.element(),
        || {
            (
                vec![p.to_string()],
                "J_p(1) = p".into(),
                format!("{}", compress(&p, &c.one())),
            )
        },
    ));
    let below = sample_effect_below(c, rng, p.element(), bound);
    recs.push(CaseRecord::check_with(
        "compression.retract",
        compress(&p, &below) == below,
        || {
            (
                vec![p.to_string(), below.to_string()],
                "effects below p are fixed".into(),
                format!("{}", compress(&p, &below)),
            )
        },
    ));
    recs.push(CaseRecord::check_with(
        "compression.idempotent-map",
        compress(&p, &jg) == jg,
        || {
            (
                vec![p.to_string(), g.to_string()],
                "J_p is idempotent".into(),
                format!("{}", compress(&p, &jg)),
            )
        },
    ));
    let je = compress(&p, &e);
    recs.push(CaseRecord::check_with("compression.effect-interval", c.is_in_e(&je), || {
        (
            vec![p.to_string(), e.to_string()],
            "J_p maps the unit interval into itself".into(),
            format!("{je}"),
        )
    }));
    recs.push(CaseRecord::check_with(
        "compression.positive",
        c.is_in_eplus(&compress(&p, &a)),
        || {
            (
                vec![p.to_string(), a.to_string()],
                "J_p preserves the cone".into(),
                format!("{}", compress(&p, &a)),
            )
        },
    ));
    let q_el = universe[(case as usize + 1) % universe.len()].clone();
    let q = Projection::new(c, q_el).expect("universe is validated");
    if c.mul(p.element(), q.element()) == c.mul(q.element(), p.element()) {
        let meet = proj_meet(&p, &q).expect("commuting pair");
        let composed = compress(&p, &compress(&q, &g));
        recs.push(CaseRecord::check_with(
            "compression.compose",
            composed == compress(&meet, &g),
            || {
                (
                    vec![p.to_string(), q.to_string(), g.to_string()],
                    "J_p J_q = J_pq for commuting projections".into(),
                    format!("{composed}"),
                )
            },
        ));
    } else {
        recs.push(CaseRecord::pass("compression.compose"));
    }
    recs
}

/// Compression laws for the family (J_p): additivity, order preservation,
/// the retraction law, and recovery of p from the endomorphism table.
pub fn verify_compression_suite(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    if strategy.mode == Mode::Exhaustive && c.enumerate_projections().is_none() {
        return Err(SuiteError::ExhaustiveUnavailable { model: c.describe() });
    }
    let mut b = ReportBuilder::new(&c.describe(), "compression", *strategy);
    b.declare_laws(&COMPRESSION_LAWS);
    let universe = projection_universe(c);

    let zero_map = compress(
        &Projection::new(c, c.zero()).expect("0 is idempotent"),
        &c.one(),
    );
    let id_ok = {
        let one_proj = Projection::new(c, c.one()).expect("1 is idempotent");
        let mut ok = zero_map.is_zero();
        let mut rng = strategy.case_rng(u64::MAX - 2);
        for _ in 0..8 {
            let g = sample_group(c, &mut rng, strategy.magnitude_bound);
            ok = ok && compress(&one_proj, &g) == g;
        }
        ok
    };
    b.record(
        0,
        CaseRecord::check_with("compression.zero-one", id_ok, || {
            (
                vec![],
                "J_0 collapses to 0 and J_1 is the identity".into(),
                String::new(),
            )
        }),
    );

    run_seeded_cases(&mut b, strategy, 1, |i, rng| {
        compression_case(c, &universe, strategy.magnitude_bound, i, rng)
    });

    let recovery_ok = universe.iter().take(6).all(|p_el| {
        let p = Projection::new(c, p_el.clone()).expect("universe is validated");
        let table = EndoTable::compression(c, &p);
        retraction_projection(c, &table, strategy).as_ref() == Ok(p_el)
    });
    b.record(
        0,
        CaseRecord::check_with("compression.recover-projection", recovery_ok, || {
            (
                vec![],
                "each compression table returns its projection".into(),
                "table recovery mismatched".into(),
            )
        }),
    );
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{MeasurableSpace, ValueRing};
    use crate::report::Verdict;

    fn int_carrier(n: usize) -> Carrier {
        Carrier::function(MeasurableSpace::singletons(n).unwrap(), ValueRing::Integers, None)
            .unwrap()
    }

    fn fun(vals: &[(i64, i64)]) -> Element {
        Element::Function(vals.iter().map(|&(n, d)| Rational::new(n, d)).collect())
    }

    fn matrix_setup() -> (Carrier, Projection, Projection) {
        let c = Carrier::matrix(2).unwrap();
        let (p, q) = incompatible_projection_pair(&c).unwrap();
        let p = Projection::new(&c, p).unwrap();
        let q = Projection::new(&c, q).unwrap();
        (c, p, q)
    }

    #[test]
    fn projection_validation() {
        let c = int_carrier(2);
        assert!(is_projection(&c, &c.zero()) && is_projection(&c, &c.one()));
        assert!(Projection::new(&c, fun(&[(1, 1), (0, 1)])).is_ok());
        let cr = Carrier::function(
            MeasurableSpace::singletons(2).unwrap(),
            ValueRing::Rationals,
            None,
        )
        .unwrap();
        let err = Projection::new(&cr, fun(&[(1, 2), (1, 1)])).unwrap_err();
        assert!(matches!(err, ProjectionError::NotIdempotent { .. }));
        let (_, _, q) = matrix_setup();
        assert!(is_projection(q.carrier(), q.element()));
    }

    #[test]
    fn meet_join_orthodiff_frozen_values() {
        let c = int_carrier(2);
        let p = Projection::new(&c, fun(&[(1, 1), (0, 1)])).unwrap();
        let q = Projection::new(&c, fun(&[(1, 1), (1, 1)])).unwrap();
        let r = Projection::new(&c, fun(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(proj_meet(&p, &q).unwrap().element(), &fun(&[(1, 1), (0, 1)]));
        assert_eq!(proj_join(&p, &r).unwrap().element(), &fun(&[(1, 1), (1, 1)]));
        assert_eq!(proj_orthodiff(&p, &q).unwrap().element(), &fun(&[(0, 1), (1, 1)]));
        assert!(matches!(
            proj_orthodiff(&q, &p),
            Err(ProjectionError::NotBelow { .. })
        ));
        let (_, mp, mq) = matrix_setup();
        assert!(matches!(
            proj_meet(&mp, &mq),
            Err(ProjectionError::NotCommuting { .. })
        ));
    }

    #[test]
    fn meets_and_joins_match_brute_force_everywhere() {
        let c = int_carrier(3);
        let pool = c.enumerate_effects().unwrap().elements;
        let projections = c.enumerate_projections().unwrap();
        for pe in &projections {
            for qe in &projections {
                let p = Projection::new(&c, pe.clone()).unwrap();
                let q = Projection::new(&c, qe.clone()).unwrap();
                let m = proj_meet(&p, &q).unwrap();
                let j = proj_join(&p, &q).unwrap();
                assert_eq!(
                    brute_force_infimum(&c, &pool, pe, qe).as_ref(),
                    Some(m.element()),
                );
                assert_eq!(
                    brute_force_supremum(&c, &pool, pe, qe).as_ref(),
                    Some(j.element()),
                );
            }
        }
    }

    #[test]
    fn mackey_frozen_values() {
        let c = int_carrier(2);
        let p = Projection::new(&c, fun(&[(1, 1), (0, 1)])).unwrap();
        let q = Projection::new(&c, fun(&[(1, 1), (1, 1)])).unwrap();
        let (ok, dec) = mackey_compatible(&p, &q);
        assert!(ok);
        let dec = dec.unwrap();
        assert_eq!(dec.d, fun(&[(1, 1), (0, 1)]));
        assert!(dec.p1.is_zero());
        assert_eq!(dec.q1, fun(&[(0, 1), (1, 1)]));
        assert!(dec.validates(&c, p.element(), q.element()));

        let (_, mp, mq) = matrix_setup();
        let (ok, dec) = mackey_compatible(&mp, &mq);
        assert!(!ok && dec.is_none());
    }

    #[test]
    fn omp_certificate_passes_on_canonical_universes() {
        let strategy = SampleStrategy::seeded(19, 60, 4);
        let c3 = int_carrier(3);
        let cube = c3.enumerate_projections().unwrap();
        let cert = verify_omp(&c3, &cube, &strategy).unwrap();
        assert!(cert.passed(), "{:?}", cert.failures);
        assert_eq!(cert.universe.len(), 8);

        let (cm, p, q) = matrix_setup();
        let universe = vec![
            cm.zero(),
            cm.one(),
            p.element().clone(),
            p.complement().into_element(),
            q.element().clone(),
            q.complement().into_element(),
        ];
        let cert = verify_omp(&cm, &universe, &strategy).unwrap();
        assert!(cert.passed(), "{:?}", cert.failures);
        assert!(cert.laws.iter().all(|l| l.cases > 0));
    }

    #[test]
    fn omp_rejects_non_idempotent_universe() {
        let c = int_carrier(2);
        let strategy = SampleStrategy::seeded(19, 10, 3);
        let cr = Carrier::function(
            MeasurableSpace::singletons(2).unwrap(),
            ValueRing::Rationals,
            None,
        )
        .unwrap();
        let universe = vec![cr.zero(), cr.one(), fun(&[(1, 2), (0, 1)])];
        let err = verify_omp(&cr, &universe, &strategy).unwrap_err();
        assert_eq!(
            err,
            ProjectionError::NotIdempotent { element: "(1/2, 0)".to_string() }
        );
        assert!(verify_omp(&c, &c.enumerate_projections().unwrap(), &strategy).is_ok());
    }

    #[test]
    fn compress_frozen_values() {
        let (c, p, q) = matrix_setup();
        let expected = Element::Matrix(
            SymMatrix::from_rows(vec![
                vec![Rational::new(1, 2), Rational::zero()],
                vec![Rational::zero(), Rational::zero()],
            ])
            .unwrap(),
        );
        assert_eq!(compress(&p, q.element()), expected);
        let one_proj = Projection::new(&c, c.one()).unwrap();
        assert_eq!(compress(&one_proj, q.element()), *q.element());
    }

    #[test]
    fn retraction_recovers_compressions() {
        let strategy = SampleStrategy::seeded(31, 40, 4);
        let c = int_carrier(2);
        let id = EndoTable::identity(&c);
        assert_eq!(retraction_projection(&c, &id, &strategy).unwrap(), c.one());

        let p = Projection::new(&c, fun(&[(1, 1), (0, 1)])).unwrap();
        let table = EndoTable::compression(&c, &p);
        assert_eq!(retraction_projection(&c, &table, &strategy).unwrap(), *p.element());

        let (cm, mp, _) = matrix_setup();
        let table = EndoTable::compression(&cm, &mp);
        assert_eq!(retraction_projection(&cm, &table, &strategy).unwrap(), *mp.element());
    }

    #[test]
    fn retraction_rejects_defective_tables() {
        let strategy = SampleStrategy::seeded(31, 40, 4);
        let c = int_carrier(2);
        let doubling = EndoTable::scaling(&c, &Rational::integer(2));
        assert!(matches!(
            retraction_projection(&c, &doubling, &strategy),
            Err(RetractionError::UnitImageNotEffect { .. })
        ));

        let halving = EndoTable::scaling(&c, &Rational::new(1, 2));
        assert!(retraction_projection(&c, &halving, &strategy).is_err());

        let (cm, mp, _) = matrix_setup();
        let pr = cm.ring(mp.element());
        let one_sided = EndoTable::from_ring_fn(&cm, |b| pr.mul(b));
        match retraction_projection(&cm, &one_sided, &strategy) {
            Err(RetractionError::ImageOutsideGroup { input, image }) => {
                assert!(!input.is_empty() && !image.is_empty());
            }
            other => panic!("expected an image-outside-group rejection, got {other:?}"),
        }
    }

    #[test]
    fn projection_suite_verdicts() {
        let exhaustive = SampleStrategy::exhaustive(7, 40, 3);
        let r = verify_projection_laws(&int_carrier(3), &exhaustive).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);
        assert!(r.laws.iter().all(|l| l.cases > 0));

        let seeded = SampleStrategy::seeded(7, 60, 3);
        let r = verify_projection_laws(&Carrier::matrix(2).unwrap(), &seeded).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);

        let r = verify_omp_suite(&Carrier::matrix(3).unwrap(), &seeded).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);

        let product = Carrier::product(int_carrier(2), Carrier::matrix(2).unwrap());
        let r = verify_omp_suite(&product, &seeded).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);

        let err = verify_omp_suite(&Carrier::matrix(2).unwrap(), &exhaustive).unwrap_err();
        assert!(matches!(err, SuiteError::ExhaustiveUnavailable { .. }));
    }

    #[test]
    fn compression_suite_verdicts() {
        let exhaustive = SampleStrategy::exhaustive(13, 50, 3);
        let r = verify_compression_suite(&int_carrier(3), &exhaustive).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);
        assert!(r.laws.iter().all(|l| l.cases > 0), "{:?}", r.laws);

        let seeded = SampleStrategy::seeded(13, 60, 3);
        for c in [Carrier::matrix(2).unwrap(), Carrier::matrix(3).unwrap()] {
            let r = verify_compression_suite(&c, &seeded).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);
        }
    }

    #[test]
    fn omp_suite_is_deterministic() {
        let c = Carrier::matrix(2).unwrap();
        let strategy = SampleStrategy::seeded(23, 40, 3);
        let a = verify_omp_suite(&c, &strategy).unwrap().to_json_string();
        let b = verify_omp_suite(&c, &strategy).unwrap().to_json_string();
        assert_eq!(a, b);
    }
}
