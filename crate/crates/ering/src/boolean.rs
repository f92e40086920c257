//! The commutative endgame: lattice structure on function carriers, the
//! six-way equivalence characterizing carriers whose effects are all
//! idempotent, extension of Boolean homomorphisms from atom maps, and the
//! executable isomorphism onto an integer function ring.
//!
//! The suites here are where a carrier either collapses to a Boolean
//! algebra of indicators or exhibits a concrete witness that it cannot:
//! a non-idempotent effect, a noncommuting projection pair, or an order
//! unit strictly below 1.

use crate::axioms::{leq, order_unit_index};
use crate::carrier::{Carrier, Element, MeasurableSpace, ValueRing};
use crate::matrix::char_poly_coeffs;
use crate::projections::{incompatible_projection_pair, is_projection, Projection};
use crate::rational::Rational;
use crate::report::{run_seeded_cases, CaseRecord, Mode, ReportBuilder, SampleStrategy, VerificationReport};
use crate::sample::{sample_effect, sample_group, sample_positive};
use crate::suite::SuiteError;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BooleanError {
    #[error("{operation} is not available on {kind}")]
    UnsupportedCarrier { operation: String, kind: String },
    #[error("projections {left} and {right} do not commute, so the projection set is not Boolean")]
    NotBoolean { left: String, right: String },
    #[error("projection universe is not closed under the lattice operations at {element}")]
    NotClosed { element: String },
    #[error("{element} is not the sum of the atoms below it")]
    AtomCover { element: String },
    #[error("interpolation needs {lower} <= {upper}")]
    InterpolationPrecondition { lower: String, upper: String },
    #[error("{element} carries the non-integer coefficient {value}")]
    NonIntegralValue { element: String, value: String },
    #[error("atom map must provide {expected} images, got {got}")]
    AtomCount { expected: usize, got: usize },
    #[error("atom image {image} is not a projection of the target carrier")]
    ImageNotProjection { image: String },
    #[error("atom map violates the {law} law on ({left}, {right})")]
    NotBooleanHom { law: String, left: String, right: String },
    #[error("not a b-ring: condition {condition} fails")]
    NotABRing { condition: String },
    #[error("element {element} does not belong to the expected carrier")]
    ShapeMismatch { element: String },
}

fn shape_err(e: &Element) -> BooleanError {
    BooleanError::ShapeMismatch { element: e.to_string() }
}

/// True when the carrier exposes pointwise sign data: function carriers
/// and products built from them.
fn splits_pointwise(c: &Carrier) -> bool {
    if c.as_function().is_some() {
        return true;
    }
    match c.as_product() {
        Some((l, r)) => splits_pointwise(l) && splits_pointwise(r),
        None => false,
    }
}

fn sign_indicator(c: &Carrier, g: &Element) -> Result<Element, BooleanError> {
    match (c.as_product(), g) {
        (Some((cl, cr)), Element::Pair(l, r)) => Ok(Element::pair(
            sign_indicator(cl, l)?,
            sign_indicator(cr, r)?,
        )),
        (None, Element::Function(vals)) => Ok(Element::Function(
            vals.iter()
                .map(|v| if v.is_positive() { Rational::one() } else { Rational::zero() })
                .collect(),
        )),
        _ => Err(BooleanError::UnsupportedCarrier {
            operation: "positive-negative splitting".into(),
            kind: c.describe(),
        }),
    }
}

/// The projection p with (1-p)g <= 0 <= pg: the indicator of the atoms
/// where g is strictly positive. Available on carriers with pointwise
/// sign data (function carriers and their products).
pub fn split_positive_negative(c: &Carrier, g: &Element) -> Result<Projection, BooleanError> {
    if !splits_pointwise(c) {
        return Err(BooleanError::UnsupportedCarrier {
            operation: "positive-negative splitting".into(),
            kind: c.describe(),
        });
    }
    c.validate_element(g).map_err(|_| shape_err(g))?;
    let p = sign_indicator(c, g)?;
    let pg = c.element_from_ring(&c.mul(&p, g)).expect("pointwise products stay in the group");
    let rest = c.sub(g, &pg);
    debug_assert!(c.is_in_eplus(&pg) && c.is_in_eplus(&c.neg(&rest)));
    Ok(Projection::new(c, p).expect("indicators are idempotent"))
}

/// The supremum pg + (1-p)h, where p splits g - h. Pointwise this is the
/// maximum of g and h.
pub fn lattice_sup(c: &Carrier, g: &Element, h: &Element) -> Result<Element, BooleanError> {
    let p = split_positive_negative(c, &c.sub(g, h))?;
    let diff = c.element_from_ring(&c.mul(p.element(), &c.sub(g, h)))
        .expect("function products stay in the group");
    Ok(c.add(&diff, h))
}

/// An element between the pair (a, b) and the pair (upper1, upper2),
/// taken as the lattice supremum of a and b. Errors when the four
/// defining inequalities do not hold.
pub fn check_interpolation(
    c: &Carrier,
    a: &Element,
    b: &Element,
    upper1: &Element,
    upper2: &Element,
) -> Result<Element, BooleanError> {
    for low in [a, b] {
        for high in [upper1, upper2] {
            if !leq(c, low, high) {
                return Err(BooleanError::InterpolationPrecondition {
                    lower: low.to_string(),
                    upper: high.to_string(),
                });
            }
        }
    }
    let t = lattice_sup(c, a, b)?;
    debug_assert!(leq(c, &t, upper1) && leq(c, &t, upper2));
    Ok(t)
}

/// A finite Boolean algebra of projections: the complete enumerated
/// universe, validated commutative and lattice-closed, together with its
/// atoms. Every element is recovered as the sum of the atoms below it.
#[derive(Clone, Debug)]
pub struct BooleanView {
    pub universe: Vec<Element>,
    pub atoms: Vec<Element>,
}

impl BooleanView {
    pub fn of(c: &Carrier) -> Result<BooleanView, BooleanError> {
        let universe = c.enumerate_projections().ok_or_else(|| {
            BooleanError::UnsupportedCarrier {
                operation: "complete projection enumeration".into(),
                kind: c.describe(),
            }
        })?;
        for p in &universe {
            for q in &universe {
                if c.mul(p, q) != c.mul(q, p) {
                    return Err(BooleanError::NotBoolean {
                        left: p.to_string(),
                        right: q.to_string(),
                    });
                }
            }
        }
        let one = c.one();
        for p in &universe {
            let compl = c.sub(&one, p);
            if !universe.contains(&compl) {
                return Err(BooleanError::NotClosed { element: compl.to_string() });
            }
            for q in &universe {
                let meet = c.element_from_ring(&c.mul(p, q)).ok_or_else(|| {
                    BooleanError::NotClosed { element: format!("{p} * {q}") }
                })?;
                let join = c.sub(&c.add(p, q), &meet);
                if !universe.contains(&meet) || !universe.contains(&join) {
                    return Err(BooleanError::NotClosed { element: join.to_string() });
                }
            }
        }
        let atoms: Vec<Element> = universe
            .iter()
            .filter(|p| !p.is_zero())
            .filter(|p| {
                universe
                    .iter()
                    .all(|q| q.is_zero() || !leq(c, q, p) || *q == **p)
            })
            .cloned()
            .collect();
        for p in &universe {
            let mut sum = c.zero();
            for a in &atoms {
                if leq(c, a, p) {
                    sum = c.add(&sum, a);
                }
            }
            if sum != *p {
                return Err(BooleanError::AtomCover { element: p.to_string() });
            }
        }
        Ok(BooleanView { universe, atoms })
    }
}

/// Coefficients k_a with g = sum k_a * a over the given orthogonal atoms,
/// each extracted from the exact relation a*g = k_a * a.
fn atom_coefficients(
    c: &Carrier,
    atoms: &[Element],
    g: &Element,
) -> Result<Vec<BigInt>, BooleanError> {
    c.validate_element(g).map_err(|_| shape_err(g))?;
    let mut ks = Vec::with_capacity(atoms.len());
    for a in atoms {
        let prod = c.element_from_ring(&c.mul(a, g)).ok_or_else(|| {
            BooleanError::UnsupportedCarrier {
                operation: "atom coefficient extraction".into(),
                kind: c.describe(),
            }
        })?;
        let ca = c.coordinates(a);
        let cp = c.coordinates(&prod);
        let idx = ca.iter().position(|x| !x.is_zero()).expect("atoms are nonzero");
        let k = &cp[idx] / &ca[idx];
        if ca.iter().zip(&cp).any(|(x, y)| &(x * &k) != y) {
            return Err(BooleanError::AtomCover { element: g.to_string() });
        }
        let k = k.to_bigint().ok_or_else(|| BooleanError::NonIntegralValue {
            element: g.to_string(),
            value: k.to_string(),
        })?;
        ks.push(k);
    }
    Ok(ks)
}

/// Writes g as an integer combination of orthogonal atom projections,
/// returning only the atoms with nonzero coefficient. The zero element
/// yields the empty list.
pub fn atom_decomposition(
    c: &Carrier,
    g: &Element,
) -> Result<Vec<(Element, BigInt)>, BooleanError> {
    let view = BooleanView::of(c)?;
    let ks = atom_coefficients(c, &view.atoms, g)?;
    let mut sum = c.zero();
    for (a, k) in view.atoms.iter().zip(&ks) {
        sum = c.add(&sum, &c.int_scale(k, a));
    }
    if sum != *g {
        return Err(BooleanError::AtomCover { element: g.to_string() });
    }
    Ok(view
        .atoms
        .into_iter()
        .zip(ks)
        .filter(|(_, k)| *k != BigInt::from(0))
        .collect())
}

/// Exact order-unit test: some multiple dominates 1, equivalently the
/// element is strictly positive (all values positive, or a positive
/// definite matrix).
pub fn is_order_unit(c: &Carrier, u: &Element) -> bool {
    match (c.as_product(), u) {
        (Some((l, r)), Element::Pair(a, b)) => is_order_unit(l, a) && is_order_unit(r, b),
        _ => match u {
            Element::Function(v) => v.iter().all(Rational::is_positive),
            Element::Matrix(m) => char_poly_coeffs(m).iter().all(Rational::is_positive),
            Element::Pair(..) => false,
        },
    }
}

/// The six conditions whose simultaneous truth makes the carrier a b-ring
/// and whose simultaneous failure leaves it strictly larger than its
/// Boolean skeleton. Each field is evaluated on its own; the equivalence
/// is asserted by [`BringConditions::agree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BringConditions {
    /// (i) The projections form a Boolean algebra generating the group.
    pub projections_boolean_generating: bool,
    /// (ii) The ring is commutative and every group element is an integer
    /// combination of orthogonal projections.
    pub commutative_integer_decompositions: bool,
    /// (iii) The group is lattice-ordered and every effect is idempotent.
    pub lattice_group_sharp_effects: bool,
    /// (iv) The group interpolates and 1 is a minimal order unit.
    pub interpolation_minimal_unit: bool,
    /// (v) The effects form a Boolean algebra with e -> 1-e as complement.
    pub effects_boolean_complemented: bool,
    /// (vi) Every effect is a projection.
    pub effects_equal_projections: bool,
}

impl BringConditions {
    pub fn as_array(&self) -> [bool; 6] {
        [
            self.projections_boolean_generating,
            self.commutative_integer_decompositions,
            self.lattice_group_sharp_effects,
            self.interpolation_minimal_unit,
            self.effects_boolean_complemented,
            self.effects_equal_projections,
        ]
    }

    pub fn labels() -> [&'static str; 6] {
        [
            "(i) projections Boolean and generating",
            "(ii) commutative with integer atom decompositions",
            "(iii) lattice-ordered with idempotent effects",
            "(iv) interpolation with 1 a minimal order unit",
            "(v) effects Boolean under e -> 1-e",
            "(vi) effects equal projections",
        ]
    }

    pub fn agree(&self) -> bool {
        let a = self.as_array();
        a.iter().all(|&x| x == a[0])
    }

    pub fn holds(&self) -> bool {
        self.as_array().iter().all(|&x| x)
    }

    pub fn first_failing(&self) -> Option<&'static str> {
        self.as_array()
            .iter()
            .zip(Self::labels())
            .find(|(ok, _)| !**ok)
            .map(|(_, label)| label)
    }
}

fn effect_probe_pool(c: &Carrier, strategy: &SampleStrategy) -> Vec<Element> {
    let mut pool = match c.enumerate_effects() {
        Some(en) => en.elements,
        None => Vec::new(),
    };
    pool.truncate(256);
    if let Some(half) = c.try_scalar_mul(&Rational::new(1, 2), &c.one()) {
        if !pool.contains(&half) {
            pool.push(half);
        }
    }
    if pool.len() < 8 {
        let mut rng = strategy.case_rng(u64::MAX - 3);
        for _ in 0..16 {
            let e = sample_effect(c, &mut rng, strategy.magnitude_bound);
            if !pool.contains(&e) {
                pool.push(e);
            }
        }
    }
    pool
}

fn group_probe_pool(c: &Carrier, strategy: &SampleStrategy) -> Vec<Element> {
    let mut pool = vec![c.zero(), c.one()];
    for b in c.spanning_basis() {
        if !pool.contains(&b) {
            pool.push(b);
        }
    }
    if let Some(half) = c.try_scalar_mul(&Rational::new(1, 2), &c.one()) {
        pool.push(half);
    }
    if let Some((p, q)) = incompatible_projection_pair(c) {
        pool.push(p);
        pool.push(q);
    }
    let mut rng = strategy.case_rng(u64::MAX - 4);
    for _ in 0..12 {
        let g = sample_group(c, &mut rng, strategy.magnitude_bound);
        if !pool.contains(&g) {
            pool.push(g);
        }
    }
    pool
}

fn integer_combination_of_atoms(c: &Carrier, atoms: &[Element], g: &Element) -> bool {
    match atom_coefficients(c, atoms, g) {
        Ok(ks) => {
            let mut sum = c.zero();
            for (a, k) in atoms.iter().zip(&ks) {
                sum = c.add(&sum, &c.int_scale(k, a));
            }
            sum == *g
        }
        Err(_) => false,
    }
}

fn pointwise_min(c: &Carrier, a: &Element, b: &Element) -> Option<Element> {
    c.pointwise_max(&c.neg(a), &c.neg(b)).map(|m| c.neg(&m))
}

/// The e -> 1-e complementation fails at e when e and 1-e share a nonzero
/// lower bound or their join misses 1.
fn complement_fails(c: &Carrier, e: &Element) -> bool {
    let compl = c.sub(&c.one(), e);
    if let Some(min) = pointwise_min(c, e, &compl) {
        if !min.is_zero() {
            return true;
        }
        if let Some(max) = c.pointwise_max(e, &compl) {
            return max != c.one();
        }
        return false;
    }
    (leq(c, e, &compl) && !e.is_zero()) || (leq(c, &compl, e) && compl != c.one())
}

fn lattice_laws_hold(c: &Carrier, strategy: &SampleStrategy) -> bool {
    if !splits_pointwise(c) {
        return false;
    }
    let mut rng = strategy.case_rng(u64::MAX - 5);
    for _ in 0..12 {
        let g = sample_group(c, &mut rng, strategy.magnitude_bound);
        let h = sample_group(c, &mut rng, strategy.magnitude_bound);
        let Ok(s) = lattice_sup(c, &g, &h) else { return false };
        if !leq(c, &g, &s) || !leq(c, &h, &s) {
            return false;
        }
        if c.pointwise_max(&g, &h) != Some(s.clone()) {
            return false;
        }
        let k = c.add(&s, &sample_positive(c, &mut rng, strategy.magnitude_bound));
        if !leq(c, &s, &k) {
            return false;
        }
        if lattice_sup(c, &g, &g).ok().as_ref() != Some(&g) {
            return false;
        }
    }
    true
}

fn interpolation_holds(c: &Carrier, strategy: &SampleStrategy) -> bool {
    if !splits_pointwise(c) {
        return false;
    }
    let mut rng = strategy.case_rng(u64::MAX - 6);
    for _ in 0..12 {
        let a = sample_group(c, &mut rng, strategy.magnitude_bound);
        let b = sample_group(c, &mut rng, strategy.magnitude_bound);
        let Ok(m) = lattice_sup(c, &a, &b) else { return false };
        let u1 = c.add(&m, &sample_positive(c, &mut rng, strategy.magnitude_bound));
        let u2 = c.add(&m, &sample_positive(c, &mut rng, strategy.magnitude_bound));
        match check_interpolation(c, &a, &b, &u1, &u2) {
            Ok(t) => {
                if !(leq(c, &a, &t) && leq(c, &b, &t) && leq(c, &t, &u1) && leq(c, &t, &u2)) {
                    return false;
                }
            }
            Err(_) => return false,
        }
    }
    true
}

/// Evaluates the six equivalent conditions independently. Canonical
/// falsifiers ((1/2)*1 where the group admits it, the standard
/// noncommuting projection pair on matrix carriers) keep every verdict
/// deterministic; sampling only reinforces them.
pub fn bring_conditions(c: &Carrier, strategy: &SampleStrategy) -> BringConditions {
    let effects = effect_probe_pool(c, strategy);
    let group = group_probe_pool(c, strategy);
    let view = BooleanView::of(c);

    let p_boolean = match &view {
        Ok(_) => true,
        Err(BooleanError::NotBoolean { .. }) => false,
        Err(_) => incompatible_projection_pair(c).is_none(),
    };
    let atoms = view.as_ref().ok().map(|v| v.atoms.as_slice());
    let generates = p_boolean
        && atoms.map_or(false, |atoms| {
            group.iter().all(|g| integer_combination_of_atoms(c, atoms, g))
        });
    let projections_boolean_generating = p_boolean && generates;

    let central = group.iter().enumerate().all(|(i, g)| {
        group[i..].iter().all(|h| c.mul(g, h) == c.mul(h, g))
    });
    let decomposes = central
        && atoms.map_or(false, |atoms| {
            group.iter().all(|g| integer_combination_of_atoms(c, atoms, g))
        });
    let commutative_integer_decompositions = central && decomposes;

    let sharp = effects.iter().all(|e| is_projection(c, e));
    let lattice_group_sharp_effects = sharp && lattice_laws_hold(c, strategy);

    let minimal_unit = effects
        .iter()
        .all(|u| *u == c.one() || !is_order_unit(c, u));
    let interpolation_minimal_unit = minimal_unit && interpolation_holds(c, strategy);

    let effects_boolean_complemented = effects.iter().all(|e| !complement_fails(c, e));

    let effects_equal_projections = sharp;

    BringConditions {
        projections_boolean_generating,
        commutative_integer_decompositions,
        lattice_group_sharp_effects,
        interpolation_minimal_unit,
        effects_boolean_complemented,
        effects_equal_projections,
    }
}

/// A Boolean homomorphism between two commutative carriers, stored as
/// atom images and extended to the whole group by integer-coefficient
/// transport.
#[derive(Clone, Debug)]
pub struct BooleanHom {
    source: Carrier,
    target: Carrier,
    atoms: Vec<Element>,
    images: Vec<Element>,
}

impl BooleanHom {
    pub fn atom_images(&self) -> &[Element] {
        &self.images
    }

    /// Phi(sum k_a * a) = sum k_a * phi(a).
    pub fn apply(&self, g: &Element) -> Result<Element, BooleanError> {
        let ks = atom_coefficients(&self.source, &self.atoms, g)?;
        let mut acc = self.target.zero();
        for (img, k) in self.images.iter().zip(&ks) {
            acc = self.target.add(&acc, &self.target.int_scale(k, img));
        }
        Ok(acc)
    }
}

/// Extends an atom map to the unique additive extension of the Boolean
/// homomorphism it induces. The induced map on the full projection
/// universe is validated against the Boolean laws pairwise; a defective
/// atom map (overlapping images, missing cover) is rejected with the
/// offending pair.
pub fn extend_boolean_hom(
    src: &Carrier,
    dst: &Carrier,
    atom_images: &[Element],
) -> Result<BooleanHom, BooleanError> {
    let view = BooleanView::of(src)?;
    BooleanView::of(dst)?;
    if atom_images.len() != view.atoms.len() {
        return Err(BooleanError::AtomCount {
            expected: view.atoms.len(),
            got: atom_images.len(),
        });
    }
    for img in atom_images {
        if dst.validate_element(img).is_err() || !is_projection(dst, img) {
            return Err(BooleanError::ImageNotProjection { image: img.to_string() });
        }
    }
    let phi = |e: &Element| -> Element {
        let mut acc = dst.zero();
        for (a, img) in view.atoms.iter().zip(atom_images) {
            if leq(src, a, e) {
                acc = dst.add(&acc, img);
            }
        }
        acc
    };
    let bool_err = |law: &str, l: &Element, r: &Element| BooleanError::NotBooleanHom {
        law: law.into(),
        left: l.to_string(),
        right: r.to_string(),
    };
    // joins first, so an atom map with overlapping images is reported
    // with the pair whose images fail the join law
    for e in &view.universe {
        for f in &view.universe {
            let (pe, pf) = (phi(e), phi(f));
            let meet = src.element_from_ring(&src.mul(e, f)).expect("commutative carrier");
            let join = src.sub(&src.add(e, f), &meet);
            let image_join = dst
                .element_from_ring(&dst.mul(&pe, &pf))
                .map(|m| dst.sub(&dst.add(&pe, &pf), &m));
            if image_join.as_ref() != Some(&phi(&join)) {
                return Err(bool_err("join", e, f));
            }
        }
    }
    for e in &view.universe {
        for f in &view.universe {
            let (pe, pf) = (phi(e), phi(f));
            let meet = src.element_from_ring(&src.mul(e, f)).expect("commutative carrier");
            let image_meet =
                dst.element_from_ring(&dst.mul(&pe, &pf)).expect("joins validated above");
            if image_meet != phi(&meet) {
                return Err(bool_err("meet", e, f));
            }
        }
    }
    for e in &view.universe {
        let compl = src.sub(&src.one(), e);
        if phi(&compl) != dst.sub(&dst.one(), &phi(e)) {
            return Err(bool_err("complement", e, &compl));
        }
    }
    if !phi(&src.zero()).is_zero() {
        return Err(bool_err("zero", &src.zero(), &src.zero()));
    }
    if phi(&src.one()) != dst.one() {
        return Err(bool_err("unit", &src.one(), &src.one()));
    }
    Ok(BooleanHom {
        source: src.clone(),
        target: dst.clone(),
        atoms: view.atoms,
        images: atom_images.to_vec(),
    })
}

/// The structure isomorphism onto the ring of bounded integer functions
/// on the atom set: forward reads atom coefficients, backward rebuilds
/// the combination.
#[derive(Clone, Debug)]
pub struct StoneModel {
    pub source: Carrier,
    pub atoms: Vec<Element>,
    pub target: Carrier,
}

impl StoneModel {
    pub fn points(&self) -> usize {
        self.atoms.len()
    }

    pub fn forward(&self, g: &Element) -> Result<Element, BooleanError> {
        let ks = atom_coefficients(&self.source, &self.atoms, g)?;
        Ok(Element::Function(ks.into_iter().map(Rational::from_bigint).collect()))
    }

    pub fn backward(&self, f: &Element) -> Result<Element, BooleanError> {
        self.target.validate_element(f).map_err(|_| shape_err(f))?;
        let Element::Function(vals) = f else { return Err(shape_err(f)) };
        let mut acc = self.source.zero();
        for (v, a) in vals.iter().zip(&self.atoms) {
            let k = v.to_bigint().ok_or_else(|| BooleanError::NonIntegralValue {
                element: f.to_string(),
                value: v.to_string(),
            })?;
            acc = self.source.add(&acc, &self.source.int_scale(&k, a));
        }
        Ok(acc)
    }
}

/// Builds the Stone model of a carrier satisfying all six b-ring
/// conditions; any failing condition is reported instead.
pub fn stone_represent(c: &Carrier, strategy: &SampleStrategy) -> Result<StoneModel, BooleanError> {
    let conds = bring_conditions(c, strategy);
    if let Some(label) = conds.first_failing() {
        return Err(BooleanError::NotABRing { condition: label.to_string() });
    }
    let view = BooleanView::of(c).expect("b-ring projections enumerate completely");
    let target = Carrier::function(
        MeasurableSpace::singletons(view.atoms.len()).expect("at least one atom"),
        ValueRing::Integers,
        None,
    )
    .expect("integer function carrier on the atom set");
    Ok(StoneModel { source: c.clone(), atoms: view.atoms, target })
}

const BOOLEAN_LAWS: [&str; 8] = [
    "lgroup.split.signs",
    "lgroup.sup.bounds",
    "lgroup.sup.pointwise",
    "lgroup.sup.least",
    "lgroup.sup.units",
    "lgroup.interpolation",
    "lgroup.commutant",
    "lgroup.atoms.cover",
];

fn lattice_case(
    c: &Carrier,
    projections: &[Element],
    bound: u32,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let g = sample_group(c, rng, bound);
    let h = sample_group(c, rng, bound);

    let p = split_positive_negative(c, &g).expect("function carrier");
    let pg = c.element_from_ring(&c.mul(p.element(), &g)).expect("function product");
    let rest = c.sub(&g, &pg);
    let signs = c.is_in_eplus(&pg) && c.is_in_eplus(&c.neg(&rest));
    recs.push(CaseRecord::check_with("lgroup.split.signs", signs, || {
        (
            vec![g.to_string()],
            "(1-p)g <= 0 <= pg for the sign indicator p".into(),
            format!("p = {}", p.element()),
        )
    }));

    let s = lattice_sup(c, &g, &h).expect("function carrier");
    recs.push(CaseRecord::check_with(
        "lgroup.sup.bounds",
        leq(c, &g, &s) && leq(c, &h, &s),
        || {
            (
                vec![g.to_string(), h.to_string()],
                "g and h lie below their supremum".into(),
                format!("s = {s}"),
            )
        },
    ));
    recs.push(CaseRecord::check_with(
        "lgroup.sup.pointwise",
        c.pointwise_max(&g, &h).as_ref() == Some(&s),
        || {
            (
                vec![g.to_string(), h.to_string()],
                "the supremum is the pointwise maximum".into(),
                format!("s = {s}"),
            )
        },
    ));
    let mut least = true;
    for _ in 0..4 {
        let k = c.add(&s, &sample_positive(c, rng, bound));
        let arbitrary = sample_group(c, rng, bound);
        if !leq(c, &s, &k) {
            least = false;
        }
        if leq(c, &g, &arbitrary) && leq(c, &h, &arbitrary) && !leq(c, &s, &arbitrary) {
            least = false;
        }
    }
    recs.push(CaseRecord::check_with("lgroup.sup.least", least, || {
        (
            vec![g.to_string(), h.to_string()],
            "every tested upper bound dominates the supremum".into(),
            format!("s = {s}"),
        )
    }));
    let idem = lattice_sup(c, &g, &g).ok().as_ref() == Some(&g);
    let vs_zero = lattice_sup(c, &g, &c.zero()).ok() == c.pointwise_max(&g, &c.zero());
    recs.push(CaseRecord::check_with("lgroup.sup.units", idem && vs_zero, || {
        (
            vec![g.to_string()],
            "sup(g, g) = g and sup(g, 0) is the positive part".into(),
            String::new(),
        )
    }));

    let m = lattice_sup(c, &g, &h).expect("function carrier");
    let u1 = c.add(&m, &sample_positive(c, rng, bound));
    let u2 = c.add(&m, &sample_positive(c, rng, bound));
    let interp = match check_interpolation(c, &g, &h, &u1, &u2) {
        Ok(t) => leq(c, &g, &t) && leq(c, &h, &t) && leq(c, &t, &u1) && leq(c, &t, &u2),
        Err(_) => false,
    };
    recs.push(CaseRecord::check_with("lgroup.interpolation", interp, || {
        (
            vec![g.to_string(), h.to_string(), u1.to_string(), u2.to_string()],
            "an interpolant exists between the pairs".into(),
            String::new(),
        )
    }));

    let commutant = projections
        .iter()
        .take(8)
        .all(|q| c.mul(&g, q) == c.mul(q, &g));
    recs.push(CaseRecord::check_with("lgroup.commutant", commutant, || {
        (
            vec![g.to_string()],
            "group elements commute with every projection".into(),
            String::new(),
        )
    }));
    recs
}

/// Lattice structure of a pointwise carrier: sign splitting, suprema with
/// minimality, interpolation, and the commutant inclusion.
pub fn verify_boolean_suite(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    if !splits_pointwise(c) {
        return Err(SuiteError::CapabilityMismatch {
            suite: "boolean".into(),
            requirement: "a carrier with the pointwise lattice (function rings and their products)"
                .into(),
            model: c.describe(),
        });
    }
    if strategy.mode == Mode::Exhaustive && !c.effects_enumerable() {
        return Err(SuiteError::ExhaustiveUnavailable { model: c.describe() });
    }
    let mut b = ReportBuilder::new(&c.describe(), "boolean", *strategy);
    b.declare_laws(&BOOLEAN_LAWS);
    let view = BooleanView::of(c).expect("function carriers enumerate projections");
    let cover_ok = view.universe.iter().all(|p| {
        let mut sum = c.zero();
        for a in &view.atoms {
            if leq(c, a, p) {
                sum = c.add(&sum, a);
            }
        }
        sum == *p
    });
    b.record(
        0,
        CaseRecord::check_with("lgroup.atoms.cover", cover_ok, || {
            (
                vec![],
                "every projection is the sum of the atoms below it".into(),
                String::new(),
            )
        }),
    );
    if strategy.mode == Mode::Exhaustive {
        let effects = c.enumerate_effects().expect("guarded above").elements;
        let mut case = 1u64;
        for e in &effects {
            for f in &effects {
                let s = lattice_sup(c, e, f).expect("function carrier");
                let ok = c.pointwise_max(e, f).as_ref() == Some(&s) && c.is_in_e(&s);
                b.record(
                    case,
                    CaseRecord::check_with("lgroup.sup.pointwise", ok, || {
                        (
                            vec![e.to_string(), f.to_string()],
                            "effect suprema are pointwise maxima and stay effects".into(),
                            format!("s = {s}"),
                        )
                    }),
                );
                case += 1;
            }
        }
        b.note("effect pairs walked completely; group-quantified laws sampled");
        run_seeded_cases(&mut b, strategy, case, |_, rng| {
            lattice_case(c, &view.universe, strategy.magnitude_bound, rng)
        });
    } else {
        run_seeded_cases(&mut b, strategy, 1, |_, rng| {
            lattice_case(c, &view.universe, strategy.magnitude_bound, rng)
        });
    }
    Ok(b.finish())
}

/// Evaluates the six equivalence conditions and asserts they agree.
pub fn verify_bring_suite(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    if strategy.mode == Mode::Exhaustive && !c.effects_enumerable() {
        return Err(SuiteError::ExhaustiveUnavailable { model: c.describe() });
    }
    let mut b = ReportBuilder::new(&c.describe(), "bring", *strategy);
    b.declare_laws(&["bring.agreement"]);
    let conds = bring_conditions(c, strategy);
    let values = conds.as_array();
    b.record(
        0,
        CaseRecord::check_with("bring.agreement", conds.agree(), || {
            (
                BringConditions::labels().iter().map(|s| s.to_string()).collect(),
                "the six conditions hold or fail together".into(),
                format!("{values:?}"),
            )
        }),
    );
    for (label, value) in BringConditions::labels().iter().zip(values) {
        b.note(&format!("{label}: {value}"));
    }
    b.note(
        "equivalence asserted across all six conditions, including the standalone \
         restatement (vi) of condition (iii)'s idempotence conjunct",
    );
    b.note("group-quantified conjuncts evaluated on canonical probes plus samples");
    Ok(b.finish())
}

const STONE_LAWS: [&str; 8] = [
    "stone.unital",
    "stone.roundtrip.effects",
    "stone.roundtrip.group",
    "stone.additive",
    "stone.multiplicative",
    "stone.order.iff",
    "stone.nilpotent-free",
    "stone.extension.unique",
];

fn forward_via_effect_levels(
    model: &StoneModel,
    c: &Carrier,
    g: &Element,
) -> Result<Element, BooleanError> {
    // Independent extension route: shift into the cone, decompose into
    // effect levels, and push only effect values through the map.
    let n = order_unit_index(c, &c.neg(g));
    let shift = c.int_scale(&BigInt::from(n), &c.one());
    let levels = c
        .decompose_positive(&c.add(g, &shift))
        .expect("shifted element lies in the cone");
    let mut acc = model.target.zero();
    for e in &levels {
        acc = model.target.add(&acc, &model.forward(e)?);
    }
    let unit_image = model.forward(&c.one())?;
    Ok(model.target.sub(&acc, &model.target.int_scale(&BigInt::from(n), &unit_image)))
}

fn stone_case(
    model: &StoneModel,
    c: &Carrier,
    bound: u32,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Vec<CaseRecord> {
    let mut recs = Vec::new();
    let g = sample_group(c, rng, bound);
    let h = sample_group(c, rng, bound);
    let fg = model.forward(&g).expect("b-ring element decomposes");
    let fh = model.forward(&h).expect("b-ring element decomposes");

    recs.push(CaseRecord::check_with(
        "stone.roundtrip.group",
        model.backward(&fg).as_ref() == Ok(&g),
        || {
            (
                vec![g.to_string()],
                "backward inverts forward on the group".into(),
                format!("image {fg}"),
            )
        },
    ));
    let tf = sample_group(&model.target, rng, bound);
    recs.push(CaseRecord::check_with(
        "stone.roundtrip.group",
        model.backward(&tf).ok().and_then(|x| model.forward(&x).ok()).as_ref() == Some(&tf),
        || {
            (
                vec![tf.to_string()],
                "forward inverts backward on the target".into(),
                String::new(),
            )
        },
    ));
    recs.push(CaseRecord::check_with(
        "stone.additive",
        model.forward(&c.add(&g, &h)).as_ref() == Ok(&model.target.add(&fg, &fh)),
        || {
            (
                vec![g.to_string(), h.to_string()],
                "forward is additive".into(),
                String::new(),
            )
        },
    ));
    let gh = c.element_from_ring(&c.mul(&g, &h)).expect("commutative carrier");
    let image_product = model
        .target
        .element_from_ring(&model.target.mul(&fg, &fh))
        .expect("function carrier");
    recs.push(CaseRecord::check_with(
        "stone.multiplicative",
        model.forward(&gh).as_ref() == Ok(&image_product),
        || {
            (
                vec![g.to_string(), h.to_string()],
                "forward is multiplicative".into(),
                String::new(),
            )
        },
    ));
    let order_iff = leq(c, &g, &h) == leq(&model.target, &fg, &fh);
    let shifted = c.add(&g, &sample_positive(c, rng, bound));
    let order_forward = leq(
        &model.target,
        &fg,
        &model.forward(&shifted).expect("b-ring element decomposes"),
    );
    recs.push(CaseRecord::check_with(
        "stone.order.iff",
        order_iff && order_forward,
        || {
            (
                vec![g.to_string(), h.to_string()],
                "g <= h exactly when the images are ordered".into(),
                String::new(),
            )
        },
    ));
    let square_zero = image_product_is_zero(model, &g);
    recs.push(CaseRecord::check_with(
        "stone.nilpotent-free",
        square_zero == g.is_zero(),
        || {
            (
                vec![g.to_string()],
                "the image has no nonzero square-zero elements".into(),
                String::new(),
            )
        },
    ));
    recs.push(CaseRecord::check_with(
        "stone.extension.unique",
        forward_via_effect_levels(model, c, &g).ok() == Some(fg.clone()),
        || {
            (
                vec![g.to_string()],
                "coefficient transport and effect-level transport agree".into(),
                String::new(),
            )
        },
    ));
    recs
}

fn image_product_is_zero(model: &StoneModel, g: &Element) -> bool {
    let fg = model.forward(g).expect("b-ring element decomposes");
    model
        .target
        .element_from_ring(&model.target.mul(&fg, &fg))
        .expect("function carrier")
        .is_zero()
}

/// The isomorphism suite: builds the Stone model and checks that forward
/// transport is a unital order-and-ring isomorphism, exhaustively on the
/// effects and by sampling on the group.
pub fn verify_stone_suite(
    c: &Carrier,
    strategy: &SampleStrategy,
) -> Result<VerificationReport, SuiteError> {
    let model = match stone_represent(c, strategy) {
        Ok(m) => m,
        Err(BooleanError::NotABRing { condition }) => {
            return Err(SuiteError::CapabilityMismatch {
                suite: "stone".into(),
                requirement: format!("all six b-ring conditions (failing: {condition})"),
                model: c.describe(),
            })
        }
        Err(other) => {
            return Err(SuiteError::CapabilityMismatch {
                suite: "stone".into(),
                requirement: other.to_string(),
                model: c.describe(),
            })
        }
    };
    let mut b = ReportBuilder::new(&c.describe(), "stone", *strategy);
    b.declare_laws(&STONE_LAWS);

    let unital = model.forward(&c.zero()).map(|x| x.is_zero()).unwrap_or(false)
        && model.forward(&c.one()).as_ref() == Ok(&model.target.one());
    b.record(
        0,
        CaseRecord::check_with("stone.unital", unital, || {
            (vec![], "forward fixes 0 and 1".into(), String::new())
        }),
    );

    let effects = c.enumerate_effects().expect("b-ring effects enumerate").elements;
    let target_effects = model.target.enumerate_effects().expect("function carrier").elements;
    let mut images = Vec::with_capacity(effects.len());
    let mut case = 1u64;
    for e in &effects {
        let fe = model.forward(e).expect("effects decompose");
        let ok = model.target.is_in_e(&fe)
            && model.backward(&fe).as_ref() == Ok(e)
            && !images.contains(&fe);
        images.push(fe.clone());
        b.record(
            case,
            CaseRecord::check_with("stone.roundtrip.effects", ok, || {
                (
                    vec![e.to_string()],
                    "effects map bijectively onto target effects and return".into(),
                    format!("image {fe}"),
                )
            }),
        );
        case += 1;
    }
    b.record(
        case,
        CaseRecord::check_with(
            "stone.roundtrip.effects",
            images.len() == target_effects.len(),
            || {
                (
                    vec![],
                    "the effect image exhausts the target effect set".into(),
                    format!("{} images, {} target effects", images.len(), target_effects.len()),
                )
            },
        ),
    );
    case += 1;

    run_seeded_cases(&mut b, strategy, case, |_, rng| {
        stone_case(&model, c, strategy.magnitude_bound, rng)
    });
    b.note(&format!("Stone space on {} points", model.points()));
    Ok(b.finish())
}
