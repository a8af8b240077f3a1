//! Design-rule checks over a resolved model and its inferred classification.

use alloc::format;
use alloc::vec::Vec;

use crate::diagnostic::{sort_diagnostics, Code, Diagnostic};
use crate::infer::{describe_provenance, QuantumnessMap};
use crate::model::*;

/// Runs every rule and returns the findings ordered by position.
pub fn validate(model: &Model, q: &QuantumnessMap) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    class_markers(model, q, &mut out);
    attribute_markers(model, q, &mut out);
    for seq in &model.sequences {
        for msg in &seq.messages {
            message_findings(model, q, seq, msg, &mut out);
        }
    }
    associations(model, q, &mut out);
    sort_diagnostics(&mut out);
    out
}

fn class_markers(model: &Model, q: &QuantumnessMap, out: &mut Vec<Diagnostic>) {
    for c in model.class_ids() {
        let def = model.class(c);
        match (q.class_of(c), def.declared_quantum()) {
            (Nature::Quantum, false) => out.push(Diagnostic::new(
                Code::E020,
                def.name_span,
                format!(
                    "class `{}` is quantum ({}) and must be declared `quantum class`",
                    def.name,
                    describe_provenance(model, q, c)
                ),
            )),
            (Nature::Classical, true) => out.push(Diagnostic::new(
                Code::W021,
                def.name_span,
                format!(
                    "class `{}` is declared quantum but has no quantum element, superclass, or part",
                    def.name
                ),
            )),
            _ => {}
        }
    }
}

/// E022 for class-typed attributes; data-typed attributes are checked during
/// resolution.
fn attribute_markers(model: &Model, q: &QuantumnessMap, out: &mut Vec<Diagnostic>) {
    for c in model.class_ids() {
        for a in &model.class(c).attributes {
            if let TypeTarget::Class(part) = a.dtype.target {
                if a.declared_marker == Some(Nature::Quantum) && !q.class_of(part).is_quantum() {
                    out.push(
                        Diagnostic::new(
                            Code::E022,
                            a.span,
                            format!(
                                "attribute `{}` is marked quantum but class `{}` is classical",
                                a.name,
                                model.class(part).name
                            ),
                        )
                        .with_related(model.class(part).name_span, "classical class declared here"),
                    );
                }
            }
        }
    }
}

fn message_findings(
    model: &Model,
    q: &QuantumnessMap,
    seq: &SequenceDiagram,
    msg: &Message,
    out: &mut Vec<Diagnostic>,
) {
    let from = &seq.lifelines[msg.from];
    let to = &seq.lifelines[msg.to];
    let Some(payload) = message_payload(model, msg) else {
        let (lifeline, role) = match msg.kind {
            MessageKind::Call => (to, "receiver"),
            MessageKind::Return => (from, "sender"),
        };
        out.push(
            Diagnostic::new(
                Code::E033,
                msg.span,
                format!(
                    "class `{}` of {} `{}` has no public operation `{}`",
                    model.class(lifeline.class).name,
                    role,
                    lifeline.alias,
                    msg.op_name
                ),
            )
            .with_related(lifeline.span, "lifeline declared here"),
        );
        return;
    };
    let op = model.operation(msg.operation.expect("payload implies operation"));
    let what = match msg.kind {
        MessageKind::Call => "arguments of",
        MessageKind::Return => "result of",
    };
    match (msg.declared_marker, payload) {
        (Nature::Classical, Nature::Quantum) => out.push(
            Diagnostic::new(
                Code::E030,
                msg.span,
                format!("the {} `{}` are quantum; use `qmsg`", what, msg.op_name),
            )
            .with_related(op.span, "operation declared here"),
        ),
        (Nature::Quantum, Nature::Classical) => out.push(
            Diagnostic::new(
                Code::E031,
                msg.span,
                format!("the {} `{}` are classical; use `msg`", what, msg.op_name),
            )
            .with_related(op.span, "operation declared here"),
        ),
        _ => {}
    }
    if msg.declared_marker.is_quantum() {
        for (lifeline, role) in [(from, "sender"), (to, "receiver")] {
            if !q.class_of(lifeline.class).is_quantum() {
                out.push(
                    Diagnostic::new(
                        Code::E032,
                        msg.span,
                        format!(
                            "quantum message {} `{}` is an instance of classical class `{}`",
                            role,
                            lifeline.alias,
                            model.class(lifeline.class).name
                        ),
                    )
                    .with_related(lifeline.span, "lifeline declared here"),
                );
                // One finding per message, even when both ends are classical.
                break;
            }
        }
    }
}

/// True when a quantum class offers something a classical class can use: a
/// public operation with an all-classical signature, or a public classical
/// attribute.
pub fn has_classical_interface(model: &Model, q: &QuantumnessMap, class: ClassId) -> bool {
    let def = model.class(class);
    let ops = def
        .operations
        .iter()
        .any(|op| op.visibility == Visibility::Public && has_classical_signature(model, op));
    let attrs = def.attributes.iter().enumerate().any(|(i, a)| {
        a.visibility == Visibility::Public
            && !q.element_of(class, MemberRef::Attribute(i)).is_quantum()
    });
    ops || attrs
}

fn associations(model: &Model, q: &QuantumnessMap, out: &mut Vec<Diagnostic>) {
    for r in &model.relationships {
        if r.kind != RelationshipKind::Association {
            continue;
        }
        let (quantum, classical) = match (q.class_of(r.source), q.class_of(r.target)) {
            (Nature::Quantum, Nature::Classical) => (r.source, r.target),
            (Nature::Classical, Nature::Quantum) => (r.target, r.source),
            _ => continue,
        };
        if !has_classical_interface(model, q, quantum) {
            out.push(
                Diagnostic::new(
                    Code::E040,
                    r.span,
                    format!(
                        "classical class `{}` cannot interface with quantum class `{}`, which has no public classical operation or attribute",
                        model.class(classical).name,
                        model.class(quantum).name
                    ),
                )
                .with_related(model.class(quantum).name_span, "quantum class declared here"),
            );
        }
    }
}
