#![allow(dead_code)]

pub mod oracle;
pub mod random;

use std::fs;
use std::path::{Path, PathBuf};

use qumodel::ir::{lower_class_model, lower_sequence_model, CircuitIr, SystemIr, ValidateOptions};
use qumodel::parser::{parse_class_diagram, parse_sequence_diagram};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// `(stem, source)` pairs of one corpus directory, sorted by name.
pub fn corpus(kind: &str) -> Vec<(String, String)> {
    let dir = corpus_dir().join(kind);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "puml"))
        .map(|p| {
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            (stem, fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

pub fn circuit(source: &str) -> CircuitIr {
    let model = parse_sequence_diagram(source).expect("corpus circuit parses");
    lower_sequence_model(&model, ValidateOptions::default()).expect("corpus circuit lowers")
}

pub fn corpus_circuit(stem: &str) -> CircuitIr {
    let path = corpus_dir()
        .join("valid/sequence")
        .join(format!("{stem}.puml"));
    circuit(&fs::read_to_string(path).unwrap())
}

pub fn corpus_system(stem: &str) -> SystemIr {
    let path = corpus_dir()
        .join("valid/class")
        .join(format!("{stem}.puml"));
    let model = parse_class_diagram(&fs::read_to_string(path).unwrap()).unwrap();
    lower_class_model(&model)
}

/// Line recorded in a `' error-line: N` header comment.
pub fn expected_error_line(source: &str) -> usize {
    source
        .lines()
        .find_map(|l| l.strip_prefix("' error-line:"))
        .expect("invalid corpus file records its error line")
        .trim()
        .parse()
        .unwrap()
}
