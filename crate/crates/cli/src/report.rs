//! Text and JSON renderings of diagnostics and inference results.

use std::fmt::Write;

use quml_core::infer::{describe_reason, type_text};
use quml_core::model::{message_payload, MemberRef, MessageKind, Model, RelId, RelationshipKind};
use quml_core::{Diagnostic, QuantumnessMap};
use serde::Serialize;

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct JsonPos {
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Serialize)]
pub struct JsonRelated {
    pub note: String,
    pub file: String,
    pub start: JsonPos,
    pub end: JsonPos,
}

/// One diagnostic in the published JSON schema.
#[derive(Debug, Serialize)]
pub struct JsonDiagnostic {
    pub code: &'static str,
    pub severity: &'static str,
    pub message: String,
    pub file: String,
    pub start: JsonPos,
    pub end: JsonPos,
    pub related: Vec<JsonRelated>,
}

impl JsonDiagnostic {
    pub fn new(file: &str, d: &Diagnostic) -> Self {
        JsonDiagnostic {
            code: d.code.as_str(),
            severity: d.severity().as_str(),
            message: d.message.clone(),
            file: file.to_string(),
            start: JsonPos { line: d.span.start.line, col: d.span.start.col },
            end: JsonPos { line: d.span.end.line, col: d.span.end.col },
            related: d
                .related
                .iter()
                .map(|r| JsonRelated {
                    note: r.note.clone(),
                    file: file.to_string(),
                    start: JsonPos { line: r.span.start.line, col: r.span.start.col },
                    end: JsonPos { line: r.span.end.line, col: r.span.end.col },
                })
                .collect(),
        }
    }
}

/// `file:line:col: severity[code]: message`, then one indented line per
/// related location.
pub fn diagnostic_text(file: &str, d: &Diagnostic) -> String {
    let mut out = format!(
        "{}:{}:{}: {}[{}]: {}\n",
        file, d.span.start.line, d.span.start.col, d.severity(), d.code, d.message
    );
    for r in &d.related {
        let _ = writeln!(out, "  {}:{}:{}: note: {}", file, r.span.start.line, r.span.start.col, r.note);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct InferReport {
    pub model: String,
    pub classes: Vec<ClassReport>,
    pub relationships: Vec<RelationshipReport>,
    pub sequences: Vec<SequenceReport>,
}

#[derive(Debug, Serialize)]
pub struct ClassReport {
    pub name: String,
    pub classification: &'static str,
    pub declared: &'static str,
    /// Empty for classical classes.
    pub provenance: Vec<String>,
    pub members: Vec<MemberReport>,
}

#[derive(Debug, Serialize)]
pub struct MemberReport {
    pub kind: &'static str,
    pub name: String,
    pub signature: String,
    pub classification: &'static str,
}

#[derive(Debug, Serialize)]
pub struct RelationshipReport {
    pub kind: &'static str,
    pub source: String,
    pub target: String,
    pub classification: &'static str,
}

#[derive(Debug, Serialize)]
pub struct SequenceReport {
    pub name: String,
    pub messages: Vec<MessageReport>,
}

#[derive(Debug, Serialize)]
pub struct MessageReport {
    pub from: String,
    pub to: String,
    pub kind: &'static str,
    pub operation: String,
    pub declared: &'static str,
    /// `null` when the operation is unknown.
    pub payload: Option<&'static str>,
}

pub fn infer_report(model: &Model, q: &QuantumnessMap) -> InferReport {
    let classes = model
        .class_ids()
        .map(|c| {
            let def = model.class(c);
            let members = def
                .member_order
                .iter()
                .map(|&mr| {
                    let (kind, signature) = match mr {
                        MemberRef::Attribute(i) => {
                            let a = &def.attributes[i];
                            ("attribute", format!("{}: {}", a.name, type_text(model, &a.dtype)))
                        }
                        MemberRef::Operation(i) => {
                            let op = &def.operations[i];
                            let params: Vec<String> = op
                                .params
                                .iter()
                                .map(|p| format!("{}: {}", p.name, type_text(model, &p.dtype)))
                                .collect();
                            let mut sig = format!("{}({})", op.name, params.join(", "));
                            if op.ret_declared {
                                let _ = write!(sig, " -> {}", type_text(model, &op.ret));
                            }
                            ("operation", sig)
                        }
                    };
                    MemberReport {
                        kind,
                        name: def.member_name(mr).to_string(),
                        signature,
                        classification: q.element_of(c, mr).as_str(),
                    }
                })
                .collect();
            ClassReport {
                name: def.name.clone(),
                classification: q.class_of(c).as_str(),
                declared: if def.declared_quantum() { "quantum" } else { "unmarked" },
                provenance: q
                    .provenance(c)
                    .into_iter()
                    .map(|(at, reason)| describe_reason(model, at, reason))
                    .collect(),
                members,
            }
        })
        .collect();
    let relationships = model
        .relationships
        .iter()
        .enumerate()
        .map(|(i, r)| RelationshipReport {
            kind: r.kind.as_str(),
            source: model.class(r.source).name.clone(),
            target: model.class(r.target).name.clone(),
            classification: q.relationship_of(RelId(i)).as_str(),
        })
        .collect();
    let sequences = model
        .sequences
        .iter()
        .map(|s| SequenceReport {
            name: s.name.clone(),
            messages: s
                .messages
                .iter()
                .map(|m| MessageReport {
                    from: s.lifelines[m.from].alias.clone(),
                    to: s.lifelines[m.to].alias.clone(),
                    kind: match m.kind {
                        MessageKind::Call => "call",
                        MessageKind::Return => "return",
                    },
                    operation: m.op_name.clone(),
                    declared: m.declared_marker.as_str(),
                    payload: message_payload(model, m).map(|n| n.as_str()),
                })
                .collect(),
        })
        .collect();
    InferReport {
        model: model.name.clone(),
        classes,
        relationships,
        sequences,
    }
}

pub fn infer_text(r: &InferReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {}", r.model);
    for c in &r.classes {
        let _ = writeln!(out, "class {}: {} (declared {})", c.name, c.classification, c.declared);
        if !c.provenance.is_empty() {
            let _ = writeln!(out, "  via {}", c.provenance.join(" <- "));
        }
        for m in &c.members {
            let kw = if m.kind == "attribute" { "attr" } else { "op" };
            let _ = writeln!(out, "  {} {}: {}", kw, m.signature, m.classification);
        }
    }
    for rel in &r.relationships {
        let text = match rel.kind {
            k if k == RelationshipKind::Inheritance.as_str() => format!("inherit {} from {}", rel.source, rel.target),
            k if k == RelationshipKind::Composition.as_str() => format!("compose {} has {}", rel.source, rel.target),
            k if k == RelationshipKind::Aggregation.as_str() => format!("aggregate {} has {}", rel.source, rel.target),
            _ => format!("assoc {} with {}", rel.source, rel.target),
        };
        let _ = writeln!(out, "relationship {}: {}", text, rel.classification);
    }
    for s in &r.sequences {
        let _ = writeln!(out, "sequence {}", s.name);
        for m in &s.messages {
            let arrow = if m.kind == "call" { "->" } else { "-->" };
            let _ = writeln!(
                out,
                "  {} {} {} : {}: {} (declared {})",
                m.from,
                arrow,
                m.to,
                m.operation,
                m.payload.unwrap_or("unknown operation"),
                m.declared
            );
        }
    }
    out
}
