//! Concrete carriers: the finite-scale models every suite runs against.
//!
//! Three kinds are supported and close under binary products:
//!
//! * function rings over the atoms of a finite field of sets, with integer
//!   or rational values; effects are the functions with values in [0, 1],
//! * rational symmetric matrices of a fixed dimension, where the positive
//!   cone is exact positive semidefiniteness,
//! * componentwise products of the above.
//!
//! [`Element`] values are the group elements (differences of positives);
//! [`RingElem`] values live in the enveloping ring, where products of
//! symmetric matrices may land outside the group. Keeping the two types
//! apart is what lets law checks state "this product came back into the
//! group" as a checked fact instead of an assumption.
//!
//! A carrier can be built with a deliberate defect ([`Mutation`]) that
//! falsifies one law while leaving the rest of the structure intact; the
//! suites exist to catch exactly these.

use crate::matrix::{RatMatrix, SymMatrix};
use crate::rational::Rational;
use num_bigint::BigInt;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CarrierError {
    #[error("measurable space needs at least one atom")]
    EmptySpace,
    #[error("atom {index} is empty")]
    EmptyAtom { index: usize },
    #[error("point label {label:?} appears in two atoms")]
    DuplicatePoint { label: String },
    #[error("enumeration grid requires rational values")]
    GridOnIntegerCarrier,
    #[error("enumeration grid denominator must be nonzero")]
    GridZero,
    #[error("matrix carrier needs dimension >= 1")]
    ZeroDim,
    #[error("mutation {mutation} does not apply to carrier {kind}")]
    MutationKind { mutation: String, kind: String },
    #[error("element {found} does not belong to carrier {expected}")]
    ShapeMismatch { expected: String, found: String },
    #[error("value {value} is not an integer, carrier has integer values")]
    NonIntegralValue { value: String },
    #[error("element {element} is not in the positive cone")]
    NotPositive { element: String },
    #[error("coordinate vector has length {found}, carrier spans {expected}")]
    CoordinateLength { expected: usize, found: usize },
}

/// Atoms of a finite field of sets over labelled points. Values of a
/// function element are constant on atoms, so elements store one value per
/// atom and the points only matter for labels and validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurableSpace {
    points: Vec<String>,
    atoms: Vec<Vec<usize>>,
}

impl MeasurableSpace {
    pub fn from_atom_blocks(blocks: Vec<Vec<String>>) -> Result<Self, CarrierError> {
        if blocks.is_empty() {
            return Err(CarrierError::EmptySpace);
        }
        let mut points: Vec<String> = Vec::new();
        let mut atoms = Vec::with_capacity(blocks.len());
        for (index, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(CarrierError::EmptyAtom { index });
            }
            let mut atom = Vec::with_capacity(block.len());
            for label in block {
                if points.contains(&label) {
                    return Err(CarrierError::DuplicatePoint { label });
                }
                atom.push(points.len());
                points.push(label);
            }
            atoms.push(atom);
        }
        Ok(MeasurableSpace { points, atoms })
    }

    /// `n` singleton atoms labelled a1..an.
    pub fn singletons(n: usize) -> Result<Self, CarrierError> {
        MeasurableSpace::from_atom_blocks(
            (1..=n).map(|i| vec![format!("a{i}")]).collect(),
        )
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn atom_label(&self, i: usize) -> String {
        let names: Vec<&str> =
            self.atoms[i].iter().map(|&p| self.points[p].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueRing {
    Integers,
    Rationals,
}

/// A deliberate structural defect, used to demonstrate that the law suites
/// reject broken models rather than rubber-stamping them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// The effect set is cut down to {0, 1, e0} for a fixed e0, so it is no
    /// longer closed under e -> 1 - e.
    EffectSetNotComplemented,
    /// The positive cone also accepts negated positives, breaking
    /// "a and -a both positive implies a = 0".
    ConeAcceptsNegatives,
    /// The matrix cone test drops the determinant-degree coefficient, so
    /// some indefinite matrices pass as positive.
    PsdAcceptsIndefinite,
}

impl Mutation {
    pub fn name(&self) -> &'static str {
        match self {
            Mutation::EffectSetNotComplemented => "effect_set_not_complemented",
            Mutation::ConeAcceptsNegatives => "cone_accepts_negatives",
            Mutation::PsdAcceptsIndefinite => "psd_accepts_indefinite",
        }
    }
}

/// Group element of a carrier: a difference of positives. Always
/// representable (function values, a symmetric matrix, or a pair).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Function(Vec<Rational>),
    Matrix(SymMatrix),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn pair(left: Element, right: Element) -> Element {
        Element::Pair(Box::new(left), Box::new(right))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Function(v) => v.iter().all(Rational::is_zero),
            Element::Matrix(m) => m.is_zero(),
            Element::Pair(l, r) => l.is_zero() && r.is_zero(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Function(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Matrix(m) => write!(f, "{m}"),
            Element::Pair(l, r) => write!(f, "({l} | {r})"),
        }
    }
}

/// Element of the enveloping ring. Function and pair shapes coincide with
/// the group, but a matrix product need not be symmetric, so this type can
/// hold values that fall outside the group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElem {
    Function(Vec<Rational>),
    Matrix(RatMatrix),
    Pair(Box<RingElem>, Box<RingElem>),
}

impl RingElem {
    pub fn pair(left: RingElem, right: RingElem) -> RingElem {
        RingElem::Pair(Box::new(left), Box::new(right))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Function(v) => v.iter().all(Rational::is_zero),
            RingElem::Matrix(m) => m.is_zero(),
            RingElem::Pair(l, r) => l.is_zero() && r.is_zero(),
        }
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        match (self, other) {
            (RingElem::Function(a), RingElem::Function(b)) => {
                assert_eq!(a.len(), b.len(), "ring shape mismatch");
                RingElem::Function(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (RingElem::Matrix(a), RingElem::Matrix(b)) => {
                RingElem::Matrix(a.add(b).expect("ring shape mismatch"))
            }
            (RingElem::Pair(al, ar), RingElem::Pair(bl, br)) => {
                RingElem::pair(al.add(bl), ar.add(br))
            }
            _ => panic!("ring shape mismatch"),
        }
    }

    pub fn neg(&self) -> RingElem {
        match self {
            RingElem::Function(a) => RingElem::Function(a.iter().map(|x| -x).collect()),
            RingElem::Matrix(a) => RingElem::Matrix(a.neg()),
            RingElem::Pair(l, r) => RingElem::pair(l.neg(), r.neg()),
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        match (self, other) {
            (RingElem::Function(a), RingElem::Function(b)) => {
                assert_eq!(a.len(), b.len(), "ring shape mismatch");
                RingElem::Function(a.iter().zip(b).map(|(x, y)| x * y).collect())
            }
            (RingElem::Matrix(a), RingElem::Matrix(b)) => {
                RingElem::Matrix(a.mul(b).expect("ring shape mismatch"))
            }
            (RingElem::Pair(al, ar), RingElem::Pair(bl, br)) => {
                RingElem::pair(al.mul(bl), ar.mul(br))
            }
            _ => panic!("ring shape mismatch"),
        }
    }

    pub fn scale(&self, k: &Rational) -> RingElem {
        match self {
            RingElem::Function(a) => RingElem::Function(a.iter().map(|x| x * k).collect()),
            RingElem::Matrix(a) => RingElem::Matrix(a.scale(k)),
            RingElem::Pair(l, r) => RingElem::pair(l.scale(k), r.scale(k)),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Function(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            RingElem::Matrix(m) => write!(f, "{m}"),
            RingElem::Pair(l, r) => write!(f, "({l} | {r})"),
        }
    }
}

#[derive(Debug, PartialEq)]
enum CarrierRepr {
    Function {
        space: MeasurableSpace,
        ring: ValueRing,
        grid: Option<u32>,
        mutation: Option<Mutation>,
    },
    Matrix {
        dim: usize,
        mutation: Option<Mutation>,
    },
    Product {
        left: Carrier,
        right: Carrier,
    },
}

/// A model carrier. Cheap to clone; equality is structural.
#[derive(Clone, Debug)]
pub struct Carrier(Arc<CarrierRepr>);

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Carrier {}

/// Effect enumeration. `complete` is true exactly when the listed elements
/// are the whole effect set; a grid over rational values enumerates a
/// finite slice of an infinite set and reports `complete: false`.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub elements: Vec<Element>,
    pub complete: bool,
}

impl Carrier {
    pub fn function(
        space: MeasurableSpace,
        ring: ValueRing,
        grid: Option<u32>,
    ) -> Result<Carrier, CarrierError> {
        match (ring, grid) {
            (ValueRing::Integers, Some(_)) => return Err(CarrierError::GridOnIntegerCarrier),
            (_, Some(0)) => return Err(CarrierError::GridZero),
            _ => {}
        }
        Ok(Carrier(Arc::new(CarrierRepr::Function { space, ring, grid, mutation: None })))
    }

    pub fn matrix(dim: usize) -> Result<Carrier, CarrierError> {
        if dim == 0 {
            return Err(CarrierError::ZeroDim);
        }
        Ok(Carrier(Arc::new(CarrierRepr::Matrix { dim, mutation: None })))
    }

    pub fn product(left: Carrier, right: Carrier) -> Carrier {
        Carrier(Arc::new(CarrierRepr::Product { left, right }))
    }

    /// Rebuilds the carrier with a deliberate defect. Only defects that
    /// make sense for the carrier kind are accepted.
    pub fn with_mutation(&self, mutation: Mutation) -> Result<Carrier, CarrierError> {
        let reject = || CarrierError::MutationKind {
            mutation: mutation.name().to_string(),
            kind: self.kind_name().to_string(),
        };
        match (&*self.0, mutation) {
            (CarrierRepr::Function { space, ring, grid, .. }, m)
                if matches!(
                    m,
                    Mutation::EffectSetNotComplemented | Mutation::ConeAcceptsNegatives
                ) =>
            {
                Ok(Carrier(Arc::new(CarrierRepr::Function {
                    space: space.clone(),
                    ring: *ring,
                    grid: *grid,
                    mutation: Some(m),
                })))
            }
            (CarrierRepr::Matrix { dim, .. }, m)
                if matches!(
                    m,
                    Mutation::ConeAcceptsNegatives | Mutation::PsdAcceptsIndefinite
                ) =>
            {
                Ok(Carrier(Arc::new(CarrierRepr::Matrix { dim: *dim, mutation: Some(m) })))
            }
            _ => Err(reject()),
        }
    }

    fn kind_name(&self) -> &'static str {
        match &*self.0 {
            CarrierRepr::Function { .. } => "function_ring",
            CarrierRepr::Matrix { .. } => "matrix",
            CarrierRepr::Product { .. } => "product",
        }
    }

    pub fn mutation(&self) -> Option<Mutation> {
        match &*self.0 {
            CarrierRepr::Function { mutation, .. } => *mutation,
            CarrierRepr::Matrix { mutation, .. } => *mutation,
            CarrierRepr::Product { .. } => None,
        }
    }

    pub fn as_function(&self) -> Option<(&MeasurableSpace, ValueRing, Option<u32>)> {
        match &*self.0 {
            CarrierRepr::Function { space, ring, grid, .. } => Some((space, *ring, *grid)),
            _ => None,
        }
    }

    pub fn matrix_dim(&self) -> Option<usize> {
        match &*self.0 {
            CarrierRepr::Matrix { dim, .. } => Some(*dim),
            _ => None,
        }
    }

    pub fn as_product(&self) -> Option<(&Carrier, &Carrier)> {
        match &*self.0 {
            CarrierRepr::Product { left, right } => Some((left, right)),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &*self.0 {
            CarrierRepr::Function { space, ring, grid, mutation } => {
                let atoms: Vec<String> =
                    (0..space.atom_count()).map(|i| space.atom_label(i)).collect();
                let values = match ring {
                    ValueRing::Integers => "int",
                    ValueRing::Rationals => "rat",
                };
                let mut s = format!("function_ring{{atoms=[{}], values={values}", atoms.join(", "));
                if let Some(d) = grid {
                    s.push_str(&format!(", grid={d}"));
                }
                if let Some(m) = mutation {
                    s.push_str(&format!(", mutation={}", m.name()));
                }
                s.push('}');
                s
            }
            CarrierRepr::Matrix { dim, mutation } => match mutation {
                Some(m) => format!("matrix{{dim={dim}, mutation={}}}", m.name()),
                None => format!("matrix{{dim={dim}}}"),
            },
            CarrierRepr::Product { left, right } => {
                format!("product{{{} x {}}}", left.describe(), right.describe())
            }
        }
    }

    pub fn zero(&self) -> Element {
        match &*self.0 {
            CarrierRepr::Function { space, .. } => {
                Element::Function(vec![Rational::zero(); space.atom_count()])
            }
            CarrierRepr::Matrix { dim, .. } => Element::Matrix(SymMatrix::zero(*dim)),
            CarrierRepr::Product { left, right } => Element::pair(left.zero(), right.zero()),
        }
    }

    pub fn one(&self) -> Element {
        match &*self.0 {
            CarrierRepr::Function { space, .. } => {
                Element::Function(vec![Rational::one(); space.atom_count()])
            }
            CarrierRepr::Matrix { dim, .. } => Element::Matrix(SymMatrix::identity(*dim)),
            CarrierRepr::Product { left, right } => Element::pair(left.one(), right.one()),
        }
    }

    /// Shape and value-ring validation; every public entry point taking
    /// caller-supplied elements goes through this.
    pub fn validate_element(&self, a: &Element) -> Result<(), CarrierError> {
        let mismatch = || CarrierError::ShapeMismatch {
            expected: self.describe(),
            found: a.to_string(),
        };
        match (&*self.0, a) {
            (CarrierRepr::Function { space, ring, .. }, Element::Function(v)) => {
                if v.len() != space.atom_count() {
                    return Err(mismatch());
                }
                if *ring == ValueRing::Integers {
                    if let Some(bad) = v.iter().find(|x| !x.is_integer()) {
                        return Err(CarrierError::NonIntegralValue { value: bad.to_string() });
                    }
                }
                Ok(())
            }
            (CarrierRepr::Matrix { dim, .. }, Element::Matrix(m)) => {
                if m.dim() != *dim {
                    return Err(mismatch());
                }
                Ok(())
            }
            (CarrierRepr::Product { left, right }, Element::Pair(l, r)) => {
                left.validate_element(l)?;
                right.validate_element(r)
            }
            _ => Err(mismatch()),
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        match (a, b) {
            (Element::Function(x), Element::Function(y)) => {
                assert_eq!(x.len(), y.len(), "element shape mismatch");
                Element::Function(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Element::Matrix(x), Element::Matrix(y)) => {
                Element::Matrix(x.add(y).expect("element shape mismatch"))
            }
            (Element::Pair(xl, xr), Element::Pair(yl, yr)) => {
                let (cl, cr) = self.as_product().expect("pair element on non-product carrier");
                Element::pair(cl.add(xl, yl), cr.add(xr, yr))
            }
            _ => panic!("element shape mismatch"),
        }
    }

    pub fn neg(&self, a: &Element) -> Element {
        match a {
            Element::Function(x) => Element::Function(x.iter().map(|p| -p).collect()),
            Element::Matrix(x) => Element::Matrix(x.neg()),
            Element::Pair(l, r) => {
                let (cl, cr) = self.as_product().expect("pair element on non-product carrier");
                Element::pair(cl.neg(l), cr.neg(r))
            }
        }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.neg(b))
    }

    /// Integer scalar multiple; always stays in the group.
    pub fn int_scale(&self, k: &BigInt, a: &Element) -> Element {
        let q = Rational::from_bigint(k.clone());
        self.try_scalar_mul(&q, a).expect("integer scaling stays in the group")
    }

    /// Rational scalar multiple, when the result stays in the carrier
    /// (integer-valued carriers reject non-integral results).
    pub fn try_scalar_mul(&self, k: &Rational, a: &Element) -> Option<Element> {
        match (&*self.0, a) {
            (CarrierRepr::Function { ring, .. }, Element::Function(v)) => {
                let scaled: Vec<Rational> = v.iter().map(|x| x * k).collect();
                if *ring == ValueRing::Integers && scaled.iter().any(|x| !x.is_integer()) {
                    return None;
                }
                Some(Element::Function(scaled))
            }
            (CarrierRepr::Matrix { .. }, Element::Matrix(m)) => {
                Some(Element::Matrix(m.scale(k)))
            }
            (CarrierRepr::Product { left, right }, Element::Pair(l, r)) => Some(Element::pair(
                left.try_scalar_mul(k, l)?,
                right.try_scalar_mul(k, r)?,
            )),
            _ => panic!("element shape mismatch"),
        }
    }

    /// Embeds a group element into the enveloping ring.
    pub fn ring(&self, a: &Element) -> RingElem {
        match a {
            Element::Function(v) => RingElem::Function(v.clone()),
            Element::Matrix(m) => RingElem::Matrix(m.matrix().clone()),
            Element::Pair(l, r) => {
                let (cl, cr) = self.as_product().expect("pair element on non-product carrier");
                RingElem::pair(cl.ring(l), cr.ring(r))
            }
        }
    }

    /// Ring product of two group elements. May land outside the group.
    pub fn mul(&self, a: &Element, b: &Element) -> RingElem {
        self.ring(a).mul(&self.ring(b))
    }

    /// Pulls a ring value back into the group when it is representable
    /// there: matrices must be symmetric, integer carriers must see
    /// integer values.
    pub fn element_from_ring(&self, r: &RingElem) -> Option<Element> {
        match (&*self.0, r) {
            (CarrierRepr::Function { space, ring, .. }, RingElem::Function(v)) => {
                if v.len() != space.atom_count() {
                    return None;
                }
                if *ring == ValueRing::Integers && v.iter().any(|x| !x.is_integer()) {
                    return None;
                }
                Some(Element::Function(v.clone()))
            }
            (CarrierRepr::Matrix { dim, .. }, RingElem::Matrix(m)) => {
                if m.dim() != *dim || !m.is_symmetric() {
                    return None;
                }
                Some(Element::Matrix(SymMatrix::new(m.clone()).expect("checked symmetric")))
            }
            (CarrierRepr::Product { left, right }, RingElem::Pair(l, r)) => {
                Some(Element::pair(left.element_from_ring(l)?, right.element_from_ring(r)?))
            }
            _ => None,
        }
    }

    /// Unmutated cone test.
    fn cone_base(&self, a: &Element) -> bool {
        match (&*self.0, a) {
            (CarrierRepr::Function { .. }, Element::Function(v)) => {
                v.iter().all(|x| !x.is_negative())
            }
            (CarrierRepr::Matrix { .. }, Element::Matrix(m)) => crate::matrix::is_psd(m),
            (CarrierRepr::Product { left, right }, Element::Pair(l, r)) => {
                left.is_in_eplus(l) && right.is_in_eplus(r)
            }
            _ => panic!("element shape mismatch"),
        }
    }

    /// Membership in the positive cone (the set of finite sums of effects).
    /// For function carriers this is pointwise nonnegativity; for matrix
    /// carriers, positive semidefiniteness. Mutations deform this oracle.
    pub fn is_in_eplus(&self, a: &Element) -> bool {
        match self.mutation() {
            Some(Mutation::ConeAcceptsNegatives) => {
                self.cone_base(a) || self.cone_base(&self.neg(a))
            }
            Some(Mutation::PsdAcceptsIndefinite) => match a {
                Element::Matrix(m) => {
                    let coeffs = crate::matrix::char_poly_coeffs(m);
                    coeffs[..coeffs.len() - 1].iter().all(|c| !c.is_negative())
                }
                _ => panic!("element shape mismatch"),
            },
            _ => self.cone_base(a),
        }
    }

    /// Membership in the effect set, i.e. the unit interval of the cone
    /// order: both a and 1 - a positive.
    pub fn is_in_e(&self, a: &Element) -> bool {
        if let Some(Mutation::EffectSetNotComplemented) = self.mutation() {
            return a.is_zero() || *a == self.one() || *a == self.restricted_effect();
        }
        self.is_in_eplus(a) && self.is_in_eplus(&self.sub(&self.one(), a))
    }

    /// The fixed extra effect of the restricted-set mutation: the first
    /// atom's indicator.
    fn restricted_effect(&self) -> Element {
        match &*self.0 {
            CarrierRepr::Function { space, .. } => {
                let mut v = vec![Rational::zero(); space.atom_count()];
                v[0] = Rational::one();
                Element::Function(v)
            }
            _ => unreachable!("restricted effect set applies to function carriers only"),
        }
    }

    /// True when `enumerate_effects` lists the whole effect set.
    pub fn effects_enumerable(&self) -> bool {
        self.enumerate_effects().map(|e| e.complete).unwrap_or(false)
    }

    /// All effects when the set is finite, or a finite deterministic slice
    /// (a value grid) of an infinite set. `None` when there is no useful
    /// enumeration, as for matrix carriers of dimension >= 2.
    pub fn enumerate_effects(&self) -> Option<Enumeration> {
        if let Some(Mutation::EffectSetNotComplemented) = self.mutation() {
            return Some(Enumeration {
                elements: vec![self.zero(), self.one(), self.restricted_effect()],
                complete: true,
            });
        }
        match &*self.0 {
            CarrierRepr::Function { space, ring, grid, .. } => {
                let k = space.atom_count();
                match ring {
                    ValueRing::Integers => {
                        // effects of an integer carrier are 0/1 vectors
                        Some(Enumeration { elements: zero_one_vectors(k), complete: true })
                    }
                    ValueRing::Rationals => {
                        let d = (*grid)?;
                        let steps: Vec<Rational> =
                            (0..=d).map(|i| Rational::new(i as i64, d as i64)).collect();
                        let mut elements = Vec::new();
                        let mut idx = vec![0usize; k];
                        loop {
                            elements.push(Element::Function(
                                idx.iter().map(|&i| steps[i].clone()).collect(),
                            ));
                            if !odometer(&mut idx, steps.len()) {
                                break;
                            }
                        }
                        Some(Enumeration { elements, complete: false })
                    }
                }
            }
            // matrix effects form an infinite set even at dim 1
            CarrierRepr::Matrix { .. } => None,
            CarrierRepr::Product { left, right } => {
                let l = left.enumerate_effects()?;
                let r = right.enumerate_effects()?;
                let mut elements = Vec::with_capacity(l.elements.len() * r.elements.len());
                for a in &l.elements {
                    for b in &r.elements {
                        elements.push(Element::pair(a.clone(), b.clone()));
                    }
                }
                Some(Enumeration { elements, complete: l.complete && r.complete })
            }
        }
    }

    /// All idempotent effects, when they form a finite enumerable set.
    /// For function carriers (any value ring) these are exactly the 0/1
    /// vectors; 1x1 matrices contribute {0, 1}.
    pub fn enumerate_projections(&self) -> Option<Vec<Element>> {
        match &*self.0 {
            CarrierRepr::Function { space, .. } => Some(zero_one_vectors(space.atom_count())),
            CarrierRepr::Matrix { dim, .. } => {
                if *dim == 1 {
                    Some(vec![self.zero(), self.one()])
                } else {
                    None
                }
            }
            CarrierRepr::Product { left, right } => {
                let l = left.enumerate_projections()?;
                let r = right.enumerate_projections()?;
                let mut out = Vec::with_capacity(l.len() * r.len());
                for a in &l {
                    for b in &r {
                        out.push(Element::pair(a.clone(), b.clone()));
                    }
                }
                Some(out)
            }
        }
    }

    /// Writes a positive element as an explicit finite sum of effects,
    /// witnessing cone membership constructively. The zero element yields
    /// the empty sum.
    pub fn decompose_positive(&self, a: &Element) -> Result<Vec<Element>, CarrierError> {
        self.validate_element(a)?;
        if !self.is_in_eplus(a) {
            return Err(CarrierError::NotPositive { element: a.to_string() });
        }
        if a.is_zero() {
            return Ok(Vec::new());
        }
        match (&*self.0, a) {
            (CarrierRepr::Function { ring: ValueRing::Integers, .. }, Element::Function(v)) => {
                // level sets: value_i copies of each indicator, expressed as
                // chi_{v >= k} for k = 1..max, so summands are genuine effects
                let max = v.iter().map(Rational::ceil_u64).max().unwrap_or(0);
                let mut out = Vec::new();
                for k in 1..=max {
                    let level = Rational::integer(k as i64);
                    let summand: Vec<Rational> = v
                        .iter()
                        .map(|x| {
                            if *x >= level {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect();
                    out.push(Element::Function(summand));
                }
                Ok(out)
            }
            (CarrierRepr::Function { .. }, Element::Function(v)) => {
                let n = v.iter().map(Rational::ceil_u64).max().unwrap_or(0).max(1);
                let scaled = Element::Function(
                    v.iter().map(|x| x / &Rational::integer(n as i64)).collect(),
                );
                Ok(vec![scaled; n as usize])
            }
            (CarrierRepr::Matrix { .. }, Element::Matrix(m)) => {
                // eigenvalues of a PSD matrix are bounded by the trace
                let n = m.trace().ceil_u64().max(1);
                let scaled =
                    Element::Matrix(m.scale(&(Rational::one() / Rational::integer(n as i64))));
                Ok(vec![scaled; n as usize])
            }
            (CarrierRepr::Product { left, right }, Element::Pair(l, r)) => {
                let mut ls = left.decompose_positive(l)?;
                let mut rs = right.decompose_positive(r)?;
                let len = ls.len().max(rs.len());
                ls.resize(len, left.zero());
                rs.resize(len, right.zero());
                Ok(ls.into_iter().zip(rs).map(|(x, y)| Element::pair(x, y)).collect())
            }
            _ => unreachable!("validated above"),
        }
    }

    /// A spanning set for the group: atom indicators for functions, the
    /// diagonal units and symmetrized off-diagonal units for matrices,
    /// concatenation with zero padding for products. Every group element
    /// is a unique rational combination of these.
    pub fn spanning_basis(&self) -> Vec<Element> {
        match &*self.0 {
            CarrierRepr::Function { space, .. } => {
                let k = space.atom_count();
                (0..k)
                    .map(|i| {
                        let mut v = vec![Rational::zero(); k];
                        v[i] = Rational::one();
                        Element::Function(v)
                    })
                    .collect()
            }
            CarrierRepr::Matrix { dim, .. } => {
                let n = *dim;
                let mut out = Vec::with_capacity(n * (n + 1) / 2);
                for i in 0..n {
                    let mut m = RatMatrix::zero(n);
                    m.set(i, i, Rational::one());
                    out.push(Element::Matrix(SymMatrix::new(m).expect("diagonal unit")));
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        let mut m = RatMatrix::zero(n);
                        m.set(i, j, Rational::one());
                        m.set(j, i, Rational::one());
                        out.push(Element::Matrix(SymMatrix::new(m).expect("symmetrized unit")));
                    }
                }
                out
            }
            CarrierRepr::Product { left, right } => {
                let mut out = Vec::new();
                for b in left.spanning_basis() {
                    out.push(Element::pair(b, right.zero()));
                }
                for b in right.spanning_basis() {
                    out.push(Element::pair(left.zero(), b));
                }
                out
            }
        }
    }

    /// Coordinates of a group element with respect to `spanning_basis`.
    pub fn coordinates(&self, a: &Element) -> Vec<Rational> {
        match a {
            Element::Function(v) => v.clone(),
            Element::Matrix(m) => {
                let n = m.dim();
                let mut out = Vec::with_capacity(n * (n + 1) / 2);
                for i in 0..n {
                    out.push(m.get(i, i).clone());
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        out.push(m.get(i, j).clone());
                    }
                }
                out
            }
            Element::Pair(l, r) => {
                let (cl, cr) = self.as_product().expect("pair element on non-product carrier");
                let mut out = cl.coordinates(l);
                out.extend(cr.coordinates(r));
                out
            }
        }
    }

    pub fn from_coordinates(&self, coords: &[Rational]) -> Result<Element, CarrierError> {
        let expected = self.spanning_basis().len();
        if coords.len() != expected {
            return Err(CarrierError::CoordinateLength { expected, found: coords.len() });
        }
        let e = match &*self.0 {
            CarrierRepr::Function { .. } => Element::Function(coords.to_vec()),
            CarrierRepr::Matrix { dim, .. } => {
                let n = *dim;
                let mut m = RatMatrix::zero(n);
                for i in 0..n {
                    m.set(i, i, coords[i].clone());
                }
                let mut idx = n;
                for i in 0..n {
                    for j in (i + 1)..n {
                        m.set(i, j, coords[idx].clone());
                        m.set(j, i, coords[idx].clone());
                        idx += 1;
                    }
                }
                Element::Matrix(SymMatrix::new(m).expect("built symmetric"))
            }
            CarrierRepr::Product { left, right } => {
                let ln = left.spanning_basis().len();
                Element::pair(
                    left.from_coordinates(&coords[..ln])?,
                    right.from_coordinates(&coords[ln..])?,
                )
            }
        };
        self.validate_element(&e)?;
        Ok(e)
    }

    /// Pointwise join in carriers whose order is computed per atom. `None`
    /// where no pointwise structure exists (matrix blocks of dim >= 2).
    pub fn pointwise_max(&self, a: &Element, b: &Element) -> Option<Element> {
        match (a, b) {
            (Element::Function(x), Element::Function(y)) => Some(Element::Function(
                x.iter().zip(y).map(|(p, q)| if p >= q { p.clone() } else { q.clone() }).collect(),
            )),
            (Element::Pair(xl, xr), Element::Pair(yl, yr)) => {
                let (cl, cr) = self.as_product().expect("pair element on non-product carrier");
                Some(Element::pair(
                    cl.pointwise_max(xl, yl)?,
                    cr.pointwise_max(xr, yr)?,
                ))
            }
            (Element::Matrix(x), Element::Matrix(y)) => {
                if x.dim() == 1 {
                    let (p, q) = (x.get(0, 0), y.get(0, 0));
                    let v = if p >= q { p.clone() } else { q.clone() };
                    Some(Element::Matrix(
                        SymMatrix::from_rows(vec![vec![v]]).expect("1x1"),
                    ))
                } else {
                    None
                }
            }
            _ => panic!("element shape mismatch"),
        }
    }
}

fn zero_one_vectors(k: usize) -> Vec<Element> {
    let mut out = Vec::with_capacity(1 << k);
    let mut idx = vec![0usize; k];
    loop {
        out.push(Element::Function(
            idx.iter().map(|&i| Rational::integer(i as i64)).collect(),
        ));
        if !odometer(&mut idx, 2) {
            break;
        }
    }
    out
}

/// Advances a mixed-radix counter; false when it wraps to all zeros.
fn odometer(idx: &mut [usize], radix: usize) -> bool {
    for slot in idx.iter_mut() {
        *slot += 1;
        if *slot < radix {
            return true;
        }
        *slot = 0;
    }
    false
}
