use std::fmt::Write;

use super::class::{ClassModel, ClassNode, PackageNode};
use super::sequence::{Event, SequenceModel};

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn stereotype(s: &Option<String>) -> String {
    s.as_ref().map(|s| format!(" <<{s}>>")).unwrap_or_default()
}

fn print_class(out: &mut String, cls: &ClassNode, depth: usize) {
    indent(out, depth);
    let _ = writeln!(out, "class {}{} {{", cls.name, stereotype(&cls.stereotype));
    for attr in &cls.attributes {
        indent(out, depth + 1);
        if let Some(v) = attr.visibility {
            out.push(v.symbol());
        }
        let _ = writeln!(out, "{}: {}", attr.name, attr.ty);
    }
    for op in &cls.operations {
        indent(out, depth + 1);
        if let Some(v) = op.visibility {
            out.push(v.symbol());
        }
        let params: Vec<String> = op
            .params
            .iter()
            .map(|p| format!("{}: {}", p.name, p.ty))
            .collect();
        let _ = write!(out, "{}({})", op.name, params.join(", "));
        if let Some(ret) = &op.return_type {
            let _ = write!(out, ": {ret}");
        }
        out.push('\n');
    }
    indent(out, depth);
    out.push_str("}\n");
}

fn print_package(out: &mut String, pkg: &PackageNode, depth: usize) {
    indent(out, depth);
    let _ = writeln!(
        out,
        "package {}{} {{",
        pkg.name,
        stereotype(&pkg.stereotype)
    );
    for sub in &pkg.packages {
        print_package(out, sub, depth + 1);
    }
    for cls in &pkg.classes {
        print_class(out, cls, depth + 1);
    }
    indent(out, depth);
    out.push_str("}\n");
}

fn label_text(label: &str) -> String {
    let plain = label
        .split(' ')
        .all(|w| !w.is_empty() && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'));
    if plain {
        label.to_string()
    } else {
        format!("\"{label}\"")
    }
}

/// Renders a class model back into the accepted grammar. Parsing the output
/// yields a model equal to the input.
pub fn print_class_model(model: &ClassModel) -> String {
    let mut out = String::from("@startuml\n");
    for pkg in &model.packages {
        print_package(&mut out, pkg, 0);
    }
    for cls in &model.classes {
        print_class(&mut out, cls, 0);
    }
    for a in &model.associations {
        let _ = write!(out, "{} --> {}", a.source, a.target);
        if let Some(label) = &a.label {
            let _ = write!(out, " : {}", label_text(label));
        }
        out.push('\n');
    }
    out.push_str("@enduml\n");
    out
}

fn params_text(params: &[f64]) -> String {
    if params.is_empty() {
        return String::new();
    }
    let items: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    format!("({})", items.join(", "))
}

fn print_events(out: &mut String, events: &[Event], depth: usize) {
    for event in events {
        indent(out, depth);
        match event {
            Event::SelfMessage {
                qubit,
                name,
                params,
            } => {
                let _ = writeln!(out, "{qubit} -> {qubit} : {name}{}", params_text(params));
            }
            Event::Message {
                sender,
                receiver,
                name,
                params,
            } => {
                let _ = writeln!(
                    out,
                    "{sender} -> {receiver} : {name}{}",
                    params_text(params)
                );
            }
            Event::Measure { qubit, clbit } => {
                let _ = writeln!(out, "{qubit} -> {clbit} : measure");
            }
            Event::Group {
                name,
                params,
                messages,
            } => {
                let _ = writeln!(out, "group {name}{}", params_text(params));
                for m in messages {
                    indent(out, depth + 1);
                    let _ = write!(out, "{} -> {}", m.sender, m.receiver);
                    if let Some(role) = m.role {
                        let _ = write!(out, " : <<{}>>", role.stereotype());
                    }
                    out.push('\n');
                }
                indent(out, depth);
                out.push_str("end\n");
            }
            Event::Alt { clbit, value, body } => {
                let _ = writeln!(out, "alt {clbit} == {value}");
                print_events(out, body, depth + 1);
                indent(out, depth);
                out.push_str("end\n");
            }
        }
    }
}

/// Renders a sequence model back into the accepted grammar.
pub fn print_sequence_model(model: &SequenceModel) -> String {
    let mut out = String::from("@startuml\n");
    for p in &model.participants {
        let _ = writeln!(
            out,
            "participant \"{}\" as {} <<{}>>",
            p.name,
            p.alias,
            p.kind.stereotype()
        );
    }
    print_events(&mut out, &model.events, 0);
    out.push_str("@enduml\n");
    out
}
