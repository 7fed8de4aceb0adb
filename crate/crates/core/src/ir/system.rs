use serde::{Deserialize, Serialize};

use crate::parser::{ClassModel, ClassNode, PackageNode, Visibility};

/// Structural view of the system, lowered from a class diagram.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemIr {
    pub packages: Vec<IrPackage>,
    /// Classes declared outside any package.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<IrClass>,
    pub associations: Vec<IrAssociation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrPackage {
    pub name: String,
    pub quantum: bool,
    #[serde(default)]
    pub packages: Vec<IrPackage>,
    #[serde(default)]
    pub classes: Vec<IrClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrClass {
    pub name: String,
    pub quantum: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stereotype: Option<String>,
    #[serde(default)]
    pub attributes: Vec<IrAttribute>,
    #[serde(default)]
    pub operations: Vec<IrOperation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrAttribute {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub visibility: Option<Visibility>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrOperation {
    pub name: String,
    #[serde(default)]
    pub params: Vec<IrParam>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub return_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub visibility: Option<Visibility>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrParam {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrAssociation {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ElementCounts {
    pub packages: usize,
    pub classes: usize,
    pub operations: usize,
    pub attributes: usize,
    pub associations: usize,
}

impl SystemIr {
    pub fn counts(&self) -> ElementCounts {
        let mut c = ElementCounts {
            associations: self.associations.len(),
            ..Default::default()
        };
        self.for_each_class(|_, cls| {
            c.classes += 1;
            c.operations += cls.operations.len();
            c.attributes += cls.attributes.len();
        });
        fn count(p: &IrPackage) -> usize {
            1 + p.packages.iter().map(count).sum::<usize>()
        }
        c.packages = self.packages.iter().map(count).sum();
        c
    }

    /// Visits every class together with its package path (outermost first).
    pub fn for_each_class<'a>(&'a self, mut f: impl FnMut(&[&'a IrPackage], &'a IrClass)) {
        fn walk<'a>(
            pkg: &'a IrPackage,
            path: &mut Vec<&'a IrPackage>,
            f: &mut dyn FnMut(&[&'a IrPackage], &'a IrClass),
        ) {
            path.push(pkg);
            for cls in &pkg.classes {
                f(path, cls);
            }
            for sub in &pkg.packages {
                walk(sub, path, f);
            }
            path.pop();
        }
        let mut path = Vec::new();
        for pkg in &self.packages {
            walk(pkg, &mut path, &mut f);
        }
        for cls in &self.classes {
            f(&[], cls);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.packages.is_empty() && self.classes.is_empty() && self.associations.is_empty()
    }
}

fn lower_class(cls: &ClassNode, in_quantum_package: bool) -> IrClass {
    IrClass {
        name: cls.name.clone(),
        quantum: in_quantum_package || cls.is_quantum(),
        stereotype: cls.stereotype.clone(),
        attributes: cls
            .attributes
            .iter()
            .map(|a| IrAttribute {
                name: a.name.clone(),
                ty: a.ty.clone(),
                visibility: a.visibility,
            })
            .collect(),
        operations: cls
            .operations
            .iter()
            .map(|op| IrOperation {
                name: op.name.clone(),
                params: op
                    .params
                    .iter()
                    .map(|p| IrParam {
                        name: p.name.clone(),
                        ty: p.ty.clone(),
                    })
                    .collect(),
                return_type: op.return_type.clone(),
                visibility: op.visibility,
            })
            .collect(),
    }
}

fn lower_package(pkg: &PackageNode, parent_quantum: bool) -> IrPackage {
    let quantum = parent_quantum || pkg.is_quantum();
    IrPackage {
        name: pkg.name.clone(),
        quantum,
        packages: pkg
            .packages
            .iter()
            .map(|p| lower_package(p, quantum))
            .collect(),
        classes: pkg
            .classes
            .iter()
            .map(|c| lower_class(c, quantum))
            .collect(),
    }
}

/// Lowers a parsed class diagram. Element counts and order are preserved;
/// the quantum flag propagates from a `<<Quantum>>` package to everything
/// nested inside it.
pub fn lower_class_model(m: &ClassModel) -> SystemIr {
    SystemIr {
        packages: m.packages.iter().map(|p| lower_package(p, false)).collect(),
        classes: m.classes.iter().map(|c| lower_class(c, false)).collect(),
        associations: m
            .associations
            .iter()
            .map(|a| IrAssociation {
                source: a.source.clone(),
                target: a.target.clone(),
                label: a.label.clone(),
            })
            .collect(),
    }
}
