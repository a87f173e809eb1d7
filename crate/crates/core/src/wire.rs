//! JSON forms of matrices, class specs and bracket names.
//!
//! Scalars always travel as exact strings in the textual form their `Display`
//! produces, so serialising and re-parsing is the identity.

use serde::{Deserialize, Serialize};

use crate::affine::BracketKind;
use crate::classes::{ClassKind, ClassSpec};
use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// `{"field": .., "p": .., "n": size, "entries": [[..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        Self {
            field: m.field().tag().to_string(),
            p: m.field().modulus(),
            n: m.size(),
            entries: m
                .rows()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for Matrix {
    type Error = AlgebraError;

    fn try_from(json: &MatrixJson) -> Result<Matrix> {
        let field = Field::from_tag(&json.field, json.p)?;
        if json.entries.len() != json.n {
            return Err(AlgebraError::Parse(format!(
                "expected {} rows, found {}",
                json.n,
                json.entries.len()
            )));
        }
        let rows = json
            .entries
            .iter()
            .map(|row| row.iter().map(|s| field.parse_scalar(s)).collect())
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        Matrix::from_rows(field, rows)
    }
}

pub fn matrix_to_json(m: &Matrix) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("plain data serialises")
}

pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    let json: MatrixJson =
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    Matrix::try_from(&json)
}

/// `{"kind": .., "n": .., "field": .., "p": .., "c": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpecJson {
    pub kind: String,
    pub n: usize,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
}

impl From<&ClassSpec> for ClassSpecJson {
    fn from(spec: &ClassSpec) -> Self {
        let c = match spec.kind() {
            ClassKind::GaC(c) => Some(c.to_string()),
            _ => None,
        };
        Self {
            kind: spec.kind().tag().to_string(),
            n: spec.n(),
            field: spec.field().tag().to_string(),
            p: spec.field().modulus(),
            c,
        }
    }
}

impl TryFrom<&ClassSpecJson> for ClassSpec {
    type Error = AlgebraError;

    fn try_from(json: &ClassSpecJson) -> Result<ClassSpec> {
        let field = Field::from_tag(&json.field, json.p)?;
        let kind = parse_class_kind(&json.kind, json.c.as_deref(), field)?;
        ClassSpec::new(kind, json.n, field)
    }
}

/// Class name plus the `c` of `ga_c`, which is parsed in `field`.
pub fn parse_class_kind(name: &str, c: Option<&str>, field: Field) -> Result<ClassKind> {
    let kind = match name.to_ascii_lowercase().as_str() {
        "gna" => ClassKind::Gna,
        "sna" => ClassKind::Sna,
        "ona" => ClassKind::Ona,
        "una" => ClassKind::Una,
        "suna" => ClassKind::Suna,
        "ga_c" | "gac" => {
            let c = c.ok_or_else(|| AlgebraError::InvalidClass("ga_c requires c".into()))?;
            return Ok(ClassKind::GaC(field.parse_scalar(c)?));
        }
        other => return Err(AlgebraError::InvalidClass(format!("unknown class `{other}`"))),
    };
    if c.is_some() {
        return Err(AlgebraError::InvalidClass(format!("{name} takes no c")));
    }
    Ok(kind)
}

pub fn class_to_json(spec: &ClassSpec) -> String {
    serde_json::to_string(&ClassSpecJson::from(spec)).expect("plain data serialises")
}

pub fn class_from_json(text: &str) -> Result<ClassSpec> {
    let json: ClassSpecJson =
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    ClassSpec::try_from(&json)
}

/// `commutator` or `zeta:<ζ>`, with `ζ` parsed in `field`.
pub fn parse_bracket(text: &str, field: Field) -> Result<BracketKind> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("commutator") {
        return Ok(BracketKind::AffineCommutator);
    }
    match text.split_once(':') {
        Some((head, zeta)) if head.eq_ignore_ascii_case("zeta") => {
            Ok(BracketKind::Zeta(field.parse_scalar(zeta)?))
        }
        _ => Err(AlgebraError::Parse(format!(
            "bracket must be `commutator` or `zeta:<value>`, got `{text}`"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::transforms::{build_p_inverse, build_u};

    #[test]
    fn p_inverse_wire_form() {
        let m = build_p_inverse(2, Field::Rational).unwrap();
        let text = matrix_to_json(&m);
        assert_eq!(
            text,
            r#"{"field":"Q","n":3,"entries":[["1/3","1/3","-2/3"],["1/3","-2/3","1/3"],["1/3","1/3","1/3"]]}"#
        );
        assert_eq!(matrix_from_json(&text).unwrap(), m);
    }

    #[test]
    fn u_wire_form() {
        let json = MatrixJson::from(&build_u(1));
        assert_eq!(json.field, "surd");
        assert_eq!(json.entries[0][0], "1/2*sqrt(2)");
        assert_eq!(json.entries[1][0], "-1/2*sqrt(2)");
    }

    #[test]
    fn prime_field_carries_modulus() {
        let m = Matrix::from_i64_rows(Field::Prime(7), &[&[1, -1], &[3, 10]]).unwrap();
        let text = matrix_to_json(&m);
        assert!(text.contains(r#""p":7"#));
        assert!(text.contains(r#"["1","6"]"#));
        assert_eq!(matrix_from_json(&text).unwrap(), m);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let text = r#"{"field":"Q","n":2,"entries":[["1","2"],["3"]]}"#;
        assert!(matrix_from_json(text).is_err());
        let text = r#"{"field":"Q","n":3,"entries":[["1","2"],["3","4"]]}"#;
        assert!(matrix_from_json(text).is_err());
    }

    #[test]
    fn class_specs_round_trip() {
        let specs = [
            ClassSpec::gna(2, Field::Rational).unwrap(),
            ClassSpec::sna(3, Field::Prime(7)).unwrap(),
            ClassSpec::suna(2).unwrap(),
            ClassSpec::ga_c(Scalar::Q(rat(-3, 2)), 2).unwrap(),
        ];
        for spec in specs {
            assert_eq!(class_from_json(&class_to_json(&spec)).unwrap(), spec);
        }
        assert!(class_from_json(r#"{"kind":"ona","n":2,"field":"Qi"}"#).is_err());
        assert!(class_from_json(r#"{"kind":"ga_c","n":2,"field":"Q"}"#).is_err());
    }

    #[test]
    fn bracket_names() {
        assert_eq!(
            parse_bracket("commutator", Field::Rational).unwrap(),
            BracketKind::AffineCommutator
        );
        assert_eq!(
            parse_bracket("zeta:-1/2", Field::Rational).unwrap(),
            BracketKind::Zeta(Scalar::Q(rat(-1, 2)))
        );
        assert!(parse_bracket("lie", Field::Rational).is_err());
        let z = BracketKind::Zeta(Scalar::Q(rat(3, 1)));
        assert_eq!(parse_bracket(&z.to_string(), Field::Rational).unwrap(), z);
    }
}
