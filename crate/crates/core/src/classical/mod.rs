//! Python class skeletons from the structural IR.
//!
//! Each package becomes a directory with an `__init__.py`, each class a module
//! of its own. Every class gets a default constructor that assigns a neutral
//! value to each attribute; model operations become methods whose body is
//! `pass`. The constructor is the one element the model does not ask for,
//! which is what [`element_report`] classifies as irrelevant.

mod naming;
mod report;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::codegen::TOOL_NAME;
use crate::ir::{IrAssociation, IrAttribute, IrClass, IrOperation, IrPackage, SystemIr};

pub use naming::{lower_snake, python_identifier};
pub use report::{element_report, CategoryReport, ElementReport};

pub const PACKAGE_MARKER: &str = "__init__.py";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratedFile {
    pub path: String,
    pub text: String,
}

/// Generated files keyed by relative path with `/` separators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FileTree {
    pub files: Vec<GeneratedFile>,
}

impl FileTree {
    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn get(&self, path: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|f| f.path == path)
            .map(|f| f.text.as_str())
    }

    pub fn paths(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|f| f.path.as_str())
    }

    /// Number of `def` statements across all files, constructors included.
    pub fn method_count(&self) -> usize {
        self.files
            .iter()
            .flat_map(|f| f.text.lines())
            .filter(|l| l.trim_start().starts_with("def "))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassicalError {
    #[error("`{first}` and `{second}` both map to `{path}`")]
    NameCollision {
        path: String,
        first: String,
        second: String,
    },
}

/// Where a package or class lands in the tree.
pub(crate) fn package_dir(path: &[&IrPackage]) -> String {
    path.iter()
        .map(|p| lower_snake(&p.name))
        .collect::<Vec<_>>()
        .join("/")
}

pub(crate) fn class_file(path: &[&IrPackage], class: &IrClass) -> String {
    let file = format!("{}.py", lower_snake(&class.name));
    if path.is_empty() {
        file
    } else {
        format!("{}/{file}", package_dir(path))
    }
}

pub(crate) fn qualified_name(path: &[&IrPackage], leaf: &str) -> String {
    path.iter()
        .map(|p| p.name.as_str())
        .chain(std::iter::once(leaf))
        .collect::<Vec<_>>()
        .join(".")
}

/// The module name quantum-flagged classes import.
pub fn quantum_module_name(stem: &str) -> String {
    format!("{}_circuit", lower_snake(stem))
}

struct Builder {
    files: BTreeMap<String, (String, String)>,
}

impl Builder {
    fn insert(&mut self, path: String, origin: String, text: String) -> Result<(), ClassicalError> {
        // A module `x.py` next to a package `x/` is shadowed on import.
        let stem_twin = match path.strip_suffix(".py") {
            Some(stem) if !path.ends_with(PACKAGE_MARKER) => {
                Some(format!("{stem}/{PACKAGE_MARKER}"))
            }
            _ => path
                .strip_suffix(&format!("/{PACKAGE_MARKER}"))
                .map(|dir| format!("{dir}.py")),
        };
        for key in std::iter::once(&path).chain(stem_twin.as_ref()) {
            if let Some((first, _)) = self.files.get(key) {
                return Err(ClassicalError::NameCollision {
                    path: path.clone(),
                    first: first.clone(),
                    second: origin,
                });
            }
        }
        self.files.insert(path, (origin, text));
        Ok(())
    }
}

/// Generates the skeleton tree. `quantum_stem` names the circuit module that
/// quantum classes import.
pub fn generate_classical(s: &SystemIr, quantum_stem: &str) -> Result<FileTree, ClassicalError> {
    let mut b = Builder {
        files: BTreeMap::new(),
    };
    let module = quantum_module_name(quantum_stem);
    let mut path = Vec::new();
    for p in &s.packages {
        emit_package(&mut b, &mut path, p, s, &module)?;
    }
    for c in &s.classes {
        let text = class_source(&[], c, &s.associations, &module)?;
        b.insert(class_file(&[], c), c.name.clone(), text)?;
    }
    Ok(FileTree {
        files: b
            .files
            .into_iter()
            .map(|(path, (_, text))| GeneratedFile { path, text })
            .collect(),
    })
}

fn emit_package<'a>(
    b: &mut Builder,
    path: &mut Vec<&'a IrPackage>,
    p: &'a IrPackage,
    s: &SystemIr,
    module: &str,
) -> Result<(), ClassicalError> {
    path.push(p);
    let qualified = qualified_name(&path[..path.len() - 1], &p.name);
    let mut marker = format!("# Generated by {TOOL_NAME}. Package {qualified}");
    if p.quantum {
        marker.push_str(" <<Quantum>>");
    }
    marker.push('\n');
    b.insert(
        format!("{}/{PACKAGE_MARKER}", package_dir(path)),
        qualified,
        marker,
    )?;
    for c in &p.classes {
        let text = class_source(path, c, &s.associations, module)?;
        b.insert(class_file(path, c), qualified_name(path, &c.name), text)?;
    }
    for child in &p.packages {
        emit_package(b, path, child, s, module)?;
    }
    path.pop();
    Ok(())
}

/// Neutral initial value for a UML type, plus whether the type was recognized.
fn neutral_value(ty: &str) -> (&'static str, Option<&'static str>) {
    let base = ty.split('[').next().unwrap_or(ty).trim();
    match base.to_ascii_lowercase().as_str() {
        "int" | "integer" | "long" | "short" | "byte" => ("0", Some("int")),
        "float" | "double" | "real" | "number" | "decimal" => ("0.0", Some("float")),
        "str" | "string" | "char" | "text" => ("\"\"", Some("str")),
        "bool" | "boolean" => ("False", Some("bool")),
        "list" | "array" | "sequence" | "vector" => ("[]", Some("list")),
        "dict" | "map" | "dictionary" => ("{}", Some("dict")),
        "set" => ("set()", Some("set")),
        "complex" => ("0j", Some("complex")),
        _ => ("None", None),
    }
}

fn attribute_line(a: &IrAttribute) -> String {
    let name = python_identifier(&a.name);
    match neutral_value(&a.ty) {
        (value, Some(py)) => format!("self.{name}: {py} = {value}"),
        (value, None) => format!("self.{name} = {value}  # {}", one_line(&a.ty)),
    }
}

fn one_line(text: &str) -> String {
    text.chars()
        .map(|c| if c.is_control() { ' ' } else { c })
        .collect()
}

fn uml_signature(o: &IrOperation) -> String {
    let params: Vec<String> = o
        .params
        .iter()
        .map(|p| format!("{}: {}", p.name, p.ty))
        .collect();
    let mut sig = String::new();
    if let Some(v) = o.visibility {
        sig.push(v.symbol());
    }
    sig.push_str(&format!("{}({})", o.name, params.join(", ")));
    if let Some(r) = &o.return_type {
        sig.push_str(&format!(": {r}"));
    }
    one_line(&sig)
}

fn check_unique<'a>(
    owner: &str,
    names: impl Iterator<Item = (&'a str, String)>,
) -> Result<(), ClassicalError> {
    let mut seen: BTreeMap<String, &str> = BTreeMap::new();
    for (original, mapped) in names {
        if let Some(first) = seen.insert(mapped.clone(), original) {
            return Err(ClassicalError::NameCollision {
                path: format!("{owner}.{mapped}"),
                first: first.to_string(),
                second: original.to_string(),
            });
        }
    }
    Ok(())
}

fn class_source(
    path: &[&IrPackage],
    c: &IrClass,
    associations: &[IrAssociation],
    module: &str,
) -> Result<String, ClassicalError> {
    let qualified = qualified_name(path, &c.name);
    let class_name = python_identifier(&c.name);
    check_unique(
        &qualified,
        c.operations
            .iter()
            .map(|o| (o.name.as_str(), python_identifier(&o.name)))
            .chain(std::iter::once(("<constructor>", "__init__".to_string()))),
    )?;
    check_unique(
        &qualified,
        c.attributes
            .iter()
            .map(|a| (a.name.as_str(), python_identifier(&a.name))),
    )?;
    for o in &c.operations {
        check_unique(
            &format!("{qualified}.{}", o.name),
            o.params
                .iter()
                .map(|p| (p.name.as_str(), python_identifier(&p.name)))
                .chain(std::iter::once(("<receiver>", "self".to_string()))),
        )?;
    }

    let mut out = String::new();
    out.push_str(&format!(
        "# Generated by {TOOL_NAME}. Class {}\n",
        one_line(&qualified)
    ));
    for a in associations
        .iter()
        .filter(|a| a.source == c.name || a.target == c.name)
    {
        let label = a
            .label
            .as_deref()
            .map(|l| format!(" : {l}"))
            .unwrap_or_default();
        out.push_str(&one_line(&format!(
            "# Association: {} --> {}{label}",
            a.source, a.target
        )));
        out.push('\n');
    }
    if c.quantum {
        out.push('\n');
        out.push_str(&format!("import {module}\n"));
    }
    out.push_str("\n\n");
    out.push_str(&format!("class {class_name}:\n"));
    out.push_str("    def __init__(self):\n");
    if c.attributes.is_empty() {
        out.push_str("        pass\n");
    }
    for a in &c.attributes {
        out.push_str(&format!("        {}\n", attribute_line(a)));
    }
    for o in &c.operations {
        let mut params = vec!["self".to_string()];
        params.extend(o.params.iter().map(|p| python_identifier(&p.name)));
        out.push('\n');
        out.push_str(&format!(
            "    def {}({}):\n",
            python_identifier(&o.name),
            params.join(", ")
        ));
        out.push_str(&format!("        # UML: {}\n", uml_signature(o)));
        out.push_str("        pass\n");
    }
    Ok(out)
}
