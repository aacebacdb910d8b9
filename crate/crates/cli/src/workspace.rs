//! Workspace files: named algebras, bimodules and families given by sparse structure constants.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use hhlab::algcore::{BasisAlgebra, Bimodule, BimoduleFamily};
use hhlab::exactla::{Field, FieldSpec, PrimeField, Rationals};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{kind} `{name}` refers to undefined {target_kind} `{target}`")]
    Reference { kind: &'static str, name: String, target_kind: &'static str, target: String },
    #[error("{kind} `{name}` is invalid: {detail}")]
    Validation { kind: &'static str, name: String, detail: String },
    #[error("the workspace has no {kind} named `{name}`")]
    Unknown { kind: &'static str, name: String },
}

/// A coefficient: an integer or a decimal/fraction string such as `"-3/4"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

/// `[i, j, k, c]`: basis element `j` is sent to `c` times basis element `k` by `i`
/// (for algebras: `b_i·b_j += c·b_k`).
pub type Entry = (usize, usize, usize, Scalar);

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    pub basis: Vec<String>,
    pub unit: Vec<Scalar>,
    #[serde(default)]
    pub mult: Vec<Entry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDef {
    pub left: String,
    pub right: String,
    pub basis: Vec<String>,
    /// `[a, m, m', c]`: `a_a·e_m += c·e_{m'}`.
    #[serde(default)]
    pub left_action: Vec<Entry>,
    /// `[b, m, m', c]`: `e_m·b_b += c·e_{m'}`.
    #[serde(default)]
    pub right_action: Vec<Entry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDef {
    /// Required only for an empty family.
    pub left: Option<String>,
    pub right: Option<String>,
    pub members: Vec<String>,
    /// Defaults to all ones.
    pub multiplicities: Option<Vec<usize>>,
}

/// The file as written, before the field is fixed.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraDef>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleDef>,
    #[serde(default)]
    pub families: BTreeMap<String, FamilyDef>,
}

fn default_field() -> String {
    "Q".into()
}

impl WorkspaceFile {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        serde_json::from_str(text).map_err(|e| LoadError::Parse {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }

    pub fn read(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LoadError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn field_spec(&self) -> Result<FieldSpec, LoadError> {
        self.field.parse().map_err(|e: hhlab::Error| LoadError::Validation {
            kind: "workspace",
            name: "field".into(),
            detail: e.to_string(),
        })
    }

    /// Builds and validates every definition over `field`, in name order: algebras, then
    /// bimodules, then families.
    pub fn resolve<F: Field>(&self, field: F) -> Result<Workspace<F>, LoadError> {
        let mut algebras = BTreeMap::new();
        for (name, def) in &self.algebras {
            algebras.insert(name.clone(), Arc::new(build_algebra(field, name, def)?));
        }
        let mut bimodules = BTreeMap::new();
        for (name, def) in &self.bimodules {
            let lookup = |target: &str| {
                algebras.get(target).cloned().ok_or_else(|| LoadError::Reference {
                    kind: "bimodule",
                    name: name.clone(),
                    target_kind: "algebra",
                    target: target.into(),
                })
            };
            let (a, b) = (lookup(&def.left)?, lookup(&def.right)?);
            bimodules.insert(name.clone(), Arc::new(build_bimodule(field, name, def, a, b)?));
        }
        let mut families = BTreeMap::new();
        for (name, def) in &self.families {
            families.insert(name.clone(), build_family(name, def, &algebras, &bimodules)?);
        }
        Ok(Workspace { field, algebras, bimodules, families })
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn scalar<F: Field>(field: F, s: &Scalar) -> Result<F::Elem, hhlab::Error> {
    match s {
        Scalar::Int(v) => Ok(field.from_i64(*v)),
        Scalar::Text(t) => field.parse(t),
    }
}

fn entries<F: Field>(field: F, raw: &[Entry]) -> Result<Vec<(usize, usize, usize, F::Elem)>, hhlab::Error> {
    raw.iter().map(|(i, j, k, c)| Ok((*i, *j, *k, scalar(field, c)?))).collect()
}

fn build_algebra<F: Field>(field: F, name: &str, def: &AlgebraDef) -> Result<BasisAlgebra<F>, LoadError> {
    let invalid = |e: hhlab::Error| LoadError::Validation { kind: "algebra", name: name.into(), detail: e.to_string() };
    let mult = entries(field, &def.mult).map_err(invalid)?;
    let unit = def.unit.iter().map(|s| scalar(field, s)).collect::<Result<Vec<_>, _>>().map_err(invalid)?;
    BasisAlgebra::new(field, def.basis.clone(), mult, unit).map_err(invalid)
}

fn build_bimodule<F: Field>(
    field: F,
    name: &str,
    def: &BimoduleDef,
    a: Arc<BasisAlgebra<F>>,
    b: Arc<BasisAlgebra<F>>,
) -> Result<Bimodule<F>, LoadError> {
    let invalid = |e: hhlab::Error| LoadError::Validation { kind: "bimodule", name: name.into(), detail: e.to_string() };
    let left = entries(field, &def.left_action).map_err(invalid)?;
    let right = entries(field, &def.right_action).map_err(invalid)?;
    Bimodule::new(a, b, def.basis.clone(), left, right).map_err(invalid)
}

fn build_family<F: Field>(
    name: &str,
    def: &FamilyDef,
    algebras: &BTreeMap<String, Arc<BasisAlgebra<F>>>,
    bimodules: &BTreeMap<String, Arc<Bimodule<F>>>,
) -> Result<BimoduleFamily<F>, LoadError> {
    let reference = |target_kind, target: &str| LoadError::Reference {
        kind: "family",
        name: name.into(),
        target_kind,
        target: target.into(),
    };
    let invalid = |detail: String| LoadError::Validation { kind: "family", name: name.into(), detail };
    let members = def
        .members
        .iter()
        .map(|m| bimodules.get(m).cloned().ok_or_else(|| reference("bimodule", m)))
        .collect::<Result<Vec<_>, _>>()?;
    let algebra = |given: &Option<String>, from_member: Option<&Arc<BasisAlgebra<F>>>| match (given, from_member) {
        (Some(n), _) => algebras.get(n).cloned().ok_or_else(|| reference("algebra", n)),
        (None, Some(a)) => Ok(a.clone()),
        (None, None) => Err(invalid("an empty family needs `left` and `right`".into())),
    };
    let a = algebra(&def.left, members.first().map(|m| m.left_algebra()))?;
    let b = algebra(&def.right, members.first().map(|m| m.right_algebra()))?;
    let mults = def.multiplicities.clone().unwrap_or_else(|| vec![1; members.len()]);
    BimoduleFamily::new(a, b, members, mults).map_err(|e| invalid(e.to_string()))
}

/// A loaded workspace over a fixed field.
#[derive(Clone, Debug)]
pub struct Workspace<F: Field> {
    pub field: F,
    pub algebras: BTreeMap<String, Arc<BasisAlgebra<F>>>,
    pub bimodules: BTreeMap<String, Arc<Bimodule<F>>>,
    pub families: BTreeMap<String, BimoduleFamily<F>>,
}

fn missing(kind: &'static str, name: &str) -> LoadError {
    LoadError::Unknown { kind, name: name.into() }
}

impl<F: Field> Workspace<F> {
    pub fn algebra(&self, name: &str) -> Result<&Arc<BasisAlgebra<F>>, LoadError> {
        self.algebras.get(name).ok_or_else(|| missing("algebra", name))
    }

    pub fn bimodule(&self, name: &str) -> Result<&Arc<Bimodule<F>>, LoadError> {
        self.bimodules.get(name).ok_or_else(|| missing("bimodule", name))
    }

    pub fn family(&self, name: &str) -> Result<&BimoduleFamily<F>, LoadError> {
        self.families.get(name).ok_or_else(|| missing("family", name))
    }
}

/// A workspace over whichever field the file or the caller selected.
#[derive(Clone, Debug)]
pub enum LoadedWorkspace {
    Rationals(Workspace<Rationals>),
    Prime(Workspace<PrimeField>),
}

/// Reads, parses and validates a workspace; `field` overrides the field named in the file.
pub fn load_workspace(path: &Path, field: Option<FieldSpec>) -> Result<LoadedWorkspace, LoadError> {
    let file = WorkspaceFile::read(path)?;
    let spec = match field {
        Some(f) => f,
        None => file.field_spec()?,
    };
    match spec {
        FieldSpec::Rationals => Ok(LoadedWorkspace::Rationals(file.resolve(Rationals)?)),
        FieldSpec::PrimeField(p) => {
            let f = PrimeField::new(p).map_err(|e| LoadError::Validation {
                kind: "workspace",
                name: "field".into(),
                detail: e.to_string(),
            })?;
            Ok(LoadedWorkspace::Prime(file.resolve(f)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const K: &str = r#""K": {"basis": ["1"], "unit": [1], "mult": [[0, 0, 0, 1]]}"#;

    #[test]
    fn resolves_in_name_order() {
        let text = format!(
            r#"{{"algebras": {{{K}}}, "bimodules": {{"M": {{"left": "K", "right": "K", "basis": ["m"],
              "left_action": [[0, 0, 0, "1"]], "right_action": [[0, 0, 0, "1"]]}}}},
              "families": {{"E": {{"members": ["M", "M"], "multiplicities": [2, 1]}}}}}}"#
        );
        let ws = WorkspaceFile::parse(&text).unwrap().resolve(Rationals).unwrap();
        assert_eq!(ws.bimodule("M").unwrap().dim(), 1);
        assert_eq!(ws.family("E").unwrap().multiplicities(), &[2, 1]);
        assert!(matches!(ws.algebra("L"), Err(LoadError::Unknown { .. })));
    }

    #[test]
    fn undefined_algebra_is_named() {
        let text = r#"{"bimodules": {"M": {"left": "A", "right": "A", "basis": []}}}"#;
        let err = WorkspaceFile::parse(text).unwrap().resolve(Rationals).unwrap_err();
        assert!(matches!(&err, LoadError::Reference { target, .. } if target == "A"));
        assert!(err.to_string().contains("`A`"));
    }

    #[test]
    fn non_associative_table_reports_triple() {
        // Unital, with x·x = y and y·x = x, so (x·x)·x = x but x·(x·x) = x·y = 0.
        let text = r#"{"algebras": {"X": {"basis": ["1", "x", "y"], "unit": [1, 0, 0],
            "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [0, 2, 2, 1], [1, 0, 1, 1], [2, 0, 2, 1],
                     [1, 1, 2, 1], [2, 1, 1, 1]]}}}"#;
        let err = WorkspaceFile::parse(text).unwrap().resolve(Rationals).unwrap_err();
        match err {
            LoadError::Validation { name, detail, .. } => {
                assert_eq!(name, "X");
                assert!(detail.contains("triple (1, 1, 1)"), "{detail}");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_json_has_position() {
        let err = WorkspaceFile::parse("{\n  \"algebras\": [\n").unwrap_err();
        assert!(matches!(err, LoadError::Parse { line: 2, .. } | LoadError::Parse { line: 3, .. }));
    }

    #[test]
    fn prime_coefficients_reduce() {
        let text = format!(r#"{{"field": "Fp:3", "algebras": {{{K}}}}}"#);
        let file = WorkspaceFile::parse(&text).unwrap();
        assert_eq!(file.field_spec().unwrap(), FieldSpec::PrimeField(3));
        let f = PrimeField::new(3).unwrap();
        assert_eq!(scalar(f, &Scalar::Text("4".into())).unwrap(), 1);
        assert_eq!(scalar(f, &Scalar::Int(-1)).unwrap(), 2);
    }
}
