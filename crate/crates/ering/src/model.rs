//! Model files: JSON descriptions of carriers, loadable from disk.
//!
//! A model file names a carrier kind and its parameters. Three kinds exist:
//!
//! ```json
//! { "kind": "function_ring", "atoms": [["x"], ["y"]], "values": "int" }
//! { "kind": "matrix", "dim": 2 }
//! { "kind": "product", "left": { ... }, "right": { ... } }
//! ```
//!
//! Function rings take `atoms` as blocks of point labels (each block is one
//! atom of the algebra), `values` as `"int"` or `"rat"`, and an optional
//! `grid` denominator that bounds effect enumeration for rational values.
//! Any kind accepts an optional `mutation` naming a deliberate defect, used
//! to check that the verifier rejects broken structures.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::carrier::{Carrier, CarrierError, MeasurableSpace, Mutation, ValueRing};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read model file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("model file is not valid (line {line}, column {column}): {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("model file describes an invalid carrier: {0}")]
    Semantic(#[from] CarrierError),
}

/// Parsed form of a model file. `build` turns it into a live carrier,
/// reporting structural problems (empty atom blocks, a mutation that does
/// not apply to the carrier kind) as semantic errors.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    FunctionRing {
        atoms: Vec<Vec<String>>,
        values: ValueTag,
        #[serde(default)]
        grid: Option<u32>,
        #[serde(default)]
        mutation: Option<MutationTag>,
    },
    Matrix {
        dim: usize,
        #[serde(default)]
        mutation: Option<MutationTag>,
    },
    Product {
        left: Box<ModelSpec>,
        right: Box<ModelSpec>,
    },
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueTag {
    Int,
    Rat,
}

impl ValueTag {
    fn ring(self) -> ValueRing {
        match self {
            ValueTag::Int => ValueRing::Integers,
            ValueTag::Rat => ValueRing::Rationals,
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationTag {
    EffectSetNotComplemented,
    ConeAcceptsNegatives,
    PsdAcceptsIndefinite,
}

impl MutationTag {
    fn mutation(self) -> Mutation {
        match self {
            MutationTag::EffectSetNotComplemented => Mutation::EffectSetNotComplemented,
            MutationTag::ConeAcceptsNegatives => Mutation::ConeAcceptsNegatives,
            MutationTag::PsdAcceptsIndefinite => Mutation::PsdAcceptsIndefinite,
        }
    }
}

impl ModelSpec {
    pub fn build(&self) -> Result<Carrier, CarrierError> {
        match self {
            ModelSpec::FunctionRing { atoms, values, grid, mutation } => {
                let space = MeasurableSpace::from_atom_blocks(atoms.clone())?;
                let carrier = Carrier::function(space, values.ring(), *grid)?;
                apply_mutation(carrier, *mutation)
            }
            ModelSpec::Matrix { dim, mutation } => {
                let carrier = Carrier::matrix(*dim)?;
                apply_mutation(carrier, *mutation)
            }
            ModelSpec::Product { left, right } => {
                Ok(Carrier::product(left.build()?, right.build()?))
            }
        }
    }
}

fn apply_mutation(carrier: Carrier, tag: Option<MutationTag>) -> Result<Carrier, CarrierError> {
    match tag {
        Some(tag) => carrier.with_mutation(tag.mutation()),
        None => Ok(carrier),
    }
}

pub fn parse_model(text: &str) -> Result<Carrier, ModelError> {
    let spec: ModelSpec = serde_json::from_str(text).map_err(|err| ModelError::Parse {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    })?;
    Ok(spec.build()?)
}

pub fn load_model(path: &Path) -> Result<Carrier, ModelError> {
    let text = fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_ring_model_builds_two_atom_integer_carrier() {
        let carrier = parse_model(
            r#"{ "kind": "function_ring", "atoms": [["x"], ["y"]], "values": "int" }"#,
        )
        .unwrap();
        let (space, ring, grid) = carrier.as_function().unwrap();
        assert_eq!(space.atom_count(), 2);
        assert_eq!(ring, ValueRing::Integers);
        assert_eq!(grid, None);
        assert_eq!(carrier.describe(), "function_ring{atoms=[{x}, {y}], values=int}");
    }

    #[test]
    fn grid_model_builds_rational_carrier() {
        let carrier = parse_model(
            r#"{ "kind": "function_ring", "atoms": [["x"], ["y"], ["z"]], "values": "rat", "grid": 4 }"#,
        )
        .unwrap();
        let (space, ring, grid) = carrier.as_function().unwrap();
        assert_eq!(space.atom_count(), 3);
        assert_eq!(ring, ValueRing::Rationals);
        assert_eq!(grid, Some(4));
    }

    #[test]
    fn matrix_model_builds() {
        let carrier = parse_model(r#"{ "kind": "matrix", "dim": 2 }"#).unwrap();
        assert_eq!(carrier.matrix_dim(), Some(2));
    }

    #[test]
    fn product_model_combines_components() {
        let carrier = parse_model(
            r#"{
                "kind": "product",
                "left": { "kind": "function_ring", "atoms": [["x"], ["y"]], "values": "int" },
                "right": { "kind": "matrix", "dim": 2 }
            }"#,
        )
        .unwrap();
        let (left, right) = carrier.as_product().unwrap();
        assert!(left.as_function().is_some());
        assert_eq!(right.matrix_dim(), Some(2));
    }

    #[test]
    fn empty_atom_list_is_a_semantic_error() {
        let err = parse_model(r#"{ "kind": "function_ring", "atoms": [], "values": "int" }"#)
            .unwrap_err();
        assert!(matches!(
            err,
            ModelError::Semantic(CarrierError::EmptySpace)
        ));
    }

    #[test]
    fn empty_atom_block_is_a_semantic_error() {
        let err = parse_model(
            r#"{ "kind": "function_ring", "atoms": [["x"], []], "values": "int" }"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ModelError::Semantic(CarrierError::EmptyAtom { index: 1 })
        ));
    }

    #[test]
    fn malformed_json_reports_line_and_column() {
        let err = parse_model("{ \"kind\": \"matrix\",\n  \"dim\": }").unwrap_err();
        match err {
            ModelError::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_field_is_rejected() {
        let err =
            parse_model(r#"{ "kind": "matrix", "dim": 2, "rows": 3 }"#).unwrap_err();
        assert!(matches!(err, ModelError::Parse { .. }));
    }

    #[test]
    fn mutation_on_wrong_kind_is_a_semantic_error() {
        let err = parse_model(
            r#"{ "kind": "matrix", "dim": 2, "mutation": "effect_set_not_complemented" }"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ModelError::Semantic(CarrierError::MutationKind { .. })
        ));
    }

    #[test]
    fn grid_on_integer_values_is_a_semantic_error() {
        let err = parse_model(
            r#"{ "kind": "function_ring", "atoms": [["x"]], "values": "int", "grid": 4 }"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ModelError::Semantic(CarrierError::GridOnIntegerCarrier)
        ));
    }

    #[test]
    fn mutated_models_build() {
        let cone = parse_model(
            r#"{ "kind": "function_ring", "atoms": [["x"], ["y"]], "values": "int", "mutation": "cone_accepts_negatives" }"#,
        )
        .unwrap();
        assert!(cone.mutation().is_some());
        let psd = parse_model(
            r#"{ "kind": "matrix", "dim": 2, "mutation": "psd_accepts_indefinite" }"#,
        )
        .unwrap();
        assert!(psd.mutation().is_some());
    }
}
