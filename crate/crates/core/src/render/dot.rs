use alloc::format;
use alloc::string::String;
use core::fmt::Write;

use super::{escape, RenderDoc, RenderFormat};
use crate::infer::{type_text, QuantumnessMap};
use crate::model::*;

/// Parallel strokes: Graphviz draws one line per colour in a `:` list.
pub const DOUBLE_EDGE_COLOR: &str = "black:invis:black";
pub const SINGLE_EDGE_COLOR: &str = "black";

/// Emits the class diagram as a DOT digraph with HTML-like record labels.
///
/// Quantum class names and quantum member lines are wrapped in `<b>`;
/// quantum relationships use [`DOUBLE_EDGE_COLOR`].
pub fn render_class_diagram(model: &Model, q: &QuantumnessMap) -> RenderDoc {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(&model.name));
    out.push_str("  graph [rankdir=BT];\n");
    out.push_str("  node [shape=plain, fontname=\"Helvetica\", fontsize=12];\n");
    out.push_str("  edge [fontname=\"Helvetica\", fontsize=10];\n");

    for c in model.class_ids() {
        class_node(&mut out, model, q, c);
    }
    if !model.relationships.is_empty() {
        out.push('\n');
    }
    for (i, r) in model.relationships.iter().enumerate() {
        let color = if q.relationship_of(RelId(i)).is_quantum() {
            DOUBLE_EDGE_COLOR
        } else {
            SINGLE_EDGE_COLOR
        };
        let source = &model.class(r.source).name;
        let target = &model.class(r.target).name;
        // Edges point from source to target; decorations sit where UML puts
        // them (triangle at the superclass, diamond at the whole).
        let style = match r.kind {
            RelationshipKind::Inheritance => "arrowhead=empty",
            RelationshipKind::Aggregation => "dir=back, arrowtail=odiamond",
            RelationshipKind::Composition => "dir=back, arrowtail=diamond",
            RelationshipKind::Association => "arrowhead=none",
        };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [{}, color=\"{}\", class=\"{}\"];",
            source,
            target,
            style,
            color,
            r.kind.as_str()
        );
    }
    out.push_str("}\n");
    RenderDoc {
        format: RenderFormat::Dot,
        diagram: String::from("class"),
        content: out,
    }
}

fn bold_if(quantum: bool, text: &str) -> String {
    if quantum {
        format!("<b>{}</b>", text)
    } else {
        String::from(text)
    }
}

fn visibility_glyph(v: Visibility) -> char {
    match v {
        Visibility::Public => '+',
        Visibility::Private => '-',
    }
}

fn class_node(out: &mut String, model: &Model, q: &QuantumnessMap, c: ClassId) {
    let def = model.class(c);
    let _ = writeln!(out, "  \"{}\" [label=<", def.name);
    out.push_str("    <table border=\"0\" cellborder=\"1\" cellspacing=\"0\" cellpadding=\"4\">\n");
    let _ = writeln!(
        out,
        "      <tr><td>{}</td></tr>",
        bold_if(q.class_of(c).is_quantum(), &escape(&def.name))
    );

    let mut attrs = String::new();
    for (i, a) in def.attributes.iter().enumerate() {
        let line = format!(
            "{} {}: {}",
            visibility_glyph(a.visibility),
            a.name,
            type_text(model, &a.dtype)
        );
        let quantum = q.element_of(c, MemberRef::Attribute(i)).is_quantum();
        let _ = write!(attrs, "{}<br align=\"left\"/>", bold_if(quantum, &escape(&line)));
    }
    compartment(out, &attrs);

    let mut ops = String::new();
    for (i, op) in def.operations.iter().enumerate() {
        let mut line = format!("{} {}(", visibility_glyph(op.visibility), op.name);
        for (j, p) in op.params.iter().enumerate() {
            if j > 0 {
                line.push_str(", ");
            }
            let _ = write!(line, "{}: {}", p.name, type_text(model, &p.dtype));
        }
        line.push(')');
        if op.ret_declared {
            let _ = write!(line, ": {}", type_text(model, &op.ret));
        }
        let quantum = q.element_of(c, MemberRef::Operation(i)).is_quantum();
        let _ = write!(ops, "{}<br align=\"left\"/>", bold_if(quantum, &escape(&line)));
    }
    compartment(out, &ops);
    out.push_str("    </table>>];\n");
}

fn compartment(out: &mut String, body: &str) {
    if body.is_empty() {
        out.push_str("      <tr><td> </td></tr>\n");
    } else {
        let _ = writeln!(out, "      <tr><td align=\"left\" balign=\"left\">{}</td></tr>", body);
    }
}
