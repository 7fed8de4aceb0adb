mod common;

use common::corpus_system;
use qumodel::classical::{element_report, generate_classical, ElementReport};
use qumodel::ir::SystemIr;

// Element counts tallied by hand from the fixture diagrams.
const C1: (usize, usize, usize, usize) = (8, 13, 10, 16);
const C2: (usize, usize, usize, usize) = (8, 10, 21, 13);

fn check_shape(
    system: &SystemIr,
    (packages, classes, operations, attributes): (usize, usize, usize, usize),
) -> ElementReport {
    let c = system.counts();
    assert_eq!(
        (c.packages, c.classes, c.operations, c.attributes),
        (packages, classes, operations, attributes)
    );
    let tree = generate_classical(system, "model").unwrap();
    assert_eq!(tree.method_count(), operations + classes);

    let report = element_report(system, &tree);
    let relevant = packages + classes + operations + attributes;
    assert_eq!(report.relevant, relevant);
    assert_eq!(report.irrelevant, classes);
    assert_eq!(report.constructors, classes);
    assert_eq!(report.missing, 0);
    assert_eq!(report.recall, 1.0);
    assert_eq!(
        report.precision,
        relevant as f64 / (relevant + classes) as f64
    );
    assert_eq!(report.precision_excluding_constructors, 1.0);
    report
}

#[test]
fn c1_shaped_model() {
    let r = check_shape(&corpus_system("c1_shaped"), C1);
    assert!((r.precision - 47.0 / 60.0).abs() < 1e-12);
}

#[test]
fn c2_shaped_model() {
    let r = check_shape(&corpus_system("c2_shaped"), C2);
    assert!((r.precision - 52.0 / 62.0).abs() < 1e-12);
    assert_eq!(r.operations.precision, 21.0 / 31.0);
}

#[test]
fn empty_model_generates_nothing() {
    let system = corpus_system("empty");
    let tree = generate_classical(&system, "model").unwrap();
    assert!(tree.is_empty());
    let r = element_report(&system, &tree);
    assert_eq!((r.relevant, r.irrelevant, r.missing), (0, 0, 0));
    assert_eq!((r.precision, r.recall), (1.0, 1.0));
}

#[test]
fn bare_class_has_only_a_constructor() {
    let model = qumodel::parser::parse_class_diagram("@startuml\nclass Lonely\n@enduml\n").unwrap();
    let system = qumodel::ir::lower_class_model(&model);
    let tree = generate_classical(&system, "model").unwrap();
    assert_eq!(tree.method_count(), 1);
    let r = element_report(&system, &tree);
    assert_eq!((r.relevant, r.irrelevant, r.constructors), (1, 1, 1));
    assert_eq!(r.precision, 0.5);
}

#[test]
fn removed_method_is_missing() {
    let system = corpus_system("c1_shaped");
    let mut tree = generate_classical(&system, "model").unwrap();
    let file = tree
        .files
        .iter_mut()
        .find(|f| {
            f.text
                .lines()
                .filter(|l| l.trim_start().starts_with("def "))
                .count()
                > 1
        })
        .unwrap();
    let lines: Vec<&str> = file.text.lines().collect();
    let last_def = lines
        .iter()
        .rposition(|l| l.trim_start().starts_with("def "))
        .unwrap();
    file.text = lines[..last_def].join("\n");
    let r = element_report(&system, &tree);
    assert_eq!(r.missing, 1);
    assert_eq!(r.operations.missing, 1);
    assert!((r.recall - 46.0 / 47.0).abs() < 1e-12);
}

#[test]
fn extra_method_is_irrelevant() {
    let system = corpus_system("c1_shaped");
    let mut tree = generate_classical(&system, "model").unwrap();
    let file = tree
        .files
        .iter_mut()
        .find(|f| f.text.contains("def __init__"))
        .unwrap();
    file.text
        .push_str("\n    def invented(self):\n        pass\n");
    let r = element_report(&system, &tree);
    assert_eq!(r.irrelevant, C1.1 + 1);
    assert_eq!(r.recall, 1.0);
}
