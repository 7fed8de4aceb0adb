use std::collections::BTreeSet;

use serde::Serialize;

use super::{class_file, package_dir, python_identifier, FileTree, PACKAGE_MARKER};
use crate::ir::{IrPackage, SystemIr};

/// Completeness of one element category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct CategoryReport {
    pub model_count: usize,
    pub generated_count: usize,
    pub relevant: usize,
    pub irrelevant: usize,
    pub missing: usize,
    pub precision: f64,
    pub recall: f64,
}

/// Relevant, irrelevant and missing elements of a generated tree compared
/// with its model, over packages, classes, operations and attributes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ElementReport {
    pub packages: CategoryReport,
    pub classes: CategoryReport,
    pub operations: CategoryReport,
    pub attributes: CategoryReport,
    pub relevant: usize,
    pub irrelevant: usize,
    pub missing: usize,
    /// Auto-generated `__init__` methods, all of which count as irrelevant.
    pub constructors: usize,
    pub precision: f64,
    pub recall: f64,
    pub precision_excluding_constructors: f64,
}

/// `num / den`, or 1 when nothing was expected and nothing was produced.
fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

fn category(expected: &BTreeSet<String>, found: &BTreeSet<String>) -> CategoryReport {
    let relevant = expected.intersection(found).count();
    let irrelevant = found.len() - relevant;
    let missing = expected.len() - relevant;
    CategoryReport {
        model_count: expected.len(),
        generated_count: found.len(),
        relevant,
        irrelevant,
        missing,
        precision: ratio(relevant, relevant + irrelevant),
        recall: ratio(relevant, relevant + missing),
    }
}

#[derive(Default)]
struct Keys {
    packages: BTreeSet<String>,
    classes: BTreeSet<String>,
    operations: BTreeSet<String>,
    attributes: BTreeSet<String>,
}

fn expected_keys(s: &SystemIr) -> Keys {
    fn walk<'a>(k: &mut Keys, path: &mut Vec<&'a IrPackage>, p: &'a IrPackage) {
        path.push(p);
        k.packages.insert(package_dir(path));
        for child in &p.packages {
            walk(k, path, child);
        }
        path.pop();
    }
    let mut k = Keys::default();
    let mut path = Vec::new();
    for p in &s.packages {
        walk(&mut k, &mut path, p);
    }
    s.for_each_class(|path, c| {
        let file = class_file(path, c);
        let class = python_identifier(&c.name);
        k.classes.insert(format!("{file}:{class}"));
        for o in &c.operations {
            k.operations
                .insert(format!("{file}:{class}.{}", python_identifier(&o.name)));
        }
        for a in &c.attributes {
            k.attributes
                .insert(format!("{file}:{class}.{}", python_identifier(&a.name)));
        }
    });
    k
}

fn leading_identifier(s: &str) -> Option<&str> {
    let end = s
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(s.len());
    (end > 0).then(|| &s[..end])
}

/// Reads element keys back out of generated text, constructors separately.
fn scanned_keys(tree: &FileTree) -> (Keys, usize) {
    let mut k = Keys::default();
    let mut constructors = 0;
    for f in &tree.files {
        if let Some(dir) = f.path.strip_suffix(&format!("/{PACKAGE_MARKER}")) {
            k.packages.insert(dir.to_string());
            continue;
        }
        let mut class: Option<&str> = None;
        let mut method: Option<&str> = None;
        for line in f.text.lines() {
            if let Some(rest) = line.strip_prefix("class ") {
                class = leading_identifier(rest);
                method = None;
                if let Some(c) = class {
                    k.classes.insert(format!("{}:{c}", f.path));
                }
            } else if let (Some(c), Some(rest)) = (class, line.strip_prefix("    def ")) {
                method = leading_identifier(rest);
                match method {
                    Some("__init__") => constructors += 1,
                    Some(m) => {
                        k.operations.insert(format!("{}:{c}.{m}", f.path));
                    }
                    None => {}
                }
            } else if let (Some(c), Some("__init__"), Some(rest)) =
                (class, method, line.strip_prefix("        self."))
            {
                if let Some(a) = leading_identifier(rest) {
                    k.attributes.insert(format!("{}:{c}.{a}", f.path));
                }
            }
        }
    }
    (k, constructors)
}

/// Compares the model with what a rescan of the generated text finds.
pub fn element_report(s: &SystemIr, tree: &FileTree) -> ElementReport {
    let expected = expected_keys(s);
    let (found, constructors) = scanned_keys(tree);
    let packages = category(&expected.packages, &found.packages);
    let classes = category(&expected.classes, &found.classes);
    let mut operations = category(&expected.operations, &found.operations);
    operations.generated_count += constructors;
    operations.irrelevant += constructors;
    operations.precision = ratio(
        operations.relevant,
        operations.relevant + operations.irrelevant,
    );
    let attributes = category(&expected.attributes, &found.attributes);

    let all = [packages, classes, operations, attributes];
    let relevant: usize = all.iter().map(|c| c.relevant).sum();
    let irrelevant: usize = all.iter().map(|c| c.irrelevant).sum();
    let missing: usize = all.iter().map(|c| c.missing).sum();
    ElementReport {
        packages,
        classes,
        operations,
        attributes,
        relevant,
        irrelevant,
        missing,
        constructors,
        precision: ratio(relevant, relevant + irrelevant),
        recall: ratio(relevant, relevant + missing),
        precision_excluding_constructors: ratio(relevant, relevant + irrelevant - constructors),
    }
}
