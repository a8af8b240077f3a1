use alloc::string::String;
use core::fmt::{self, Write};

use super::{escape, RenderDoc, RenderFormat};
use crate::infer::QuantumnessMap;
use crate::model::*;

/// Fixed geometry for sequence diagrams, in SVG user units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceLayout {
    pub lifeline_spacing: i32,
    pub message_pitch: i32,
    pub font_size: i32,
    pub header_width: i32,
    pub header_height: i32,
    pub margin: i32,
    /// Distance between the two strokes of a quantum message.
    pub double_gap: i32,
    pub self_loop_width: i32,
}

impl Default for SequenceLayout {
    fn default() -> Self {
        SequenceLayout {
            lifeline_spacing: 160,
            message_pitch: 40,
            font_size: 12,
            header_width: 130,
            header_height: 30,
            margin: 20,
            double_gap: 2,
            self_loop_width: 30,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownSequence(pub String);

impl fmt::Display for UnknownSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no sequence diagram named `{}`", self.0)
    }
}

/// Renders the named sequence diagram as a standalone SVG document.
pub fn render_sequence_diagram(
    model: &Model,
    q: &QuantumnessMap,
    name: &str,
) -> Result<RenderDoc, UnknownSequence> {
    render_sequence_diagram_with(model, q, name, &SequenceLayout::default())
}

pub fn render_sequence_diagram_with(
    model: &Model,
    q: &QuantumnessMap,
    name: &str,
    layout: &SequenceLayout,
) -> Result<RenderDoc, UnknownSequence> {
    let seq = model
        .sequence_named(name)
        .ok_or_else(|| UnknownSequence(name.into()))?;
    let l = layout;
    let lifelines = seq.lifelines.len().max(1) as i32;
    let messages = seq.messages.len() as i32;
    let center = |i: usize| l.margin + l.header_width / 2 + l.lifeline_spacing * i as i32;
    let header_bottom = l.margin + l.header_height;
    let message_y = |k: usize| header_bottom + l.message_pitch * (k as i32 + 1);
    let bottom = header_bottom + l.message_pitch * (messages + 1);
    let width = 2 * l.margin + l.header_width + l.lifeline_spacing * (lifelines - 1) + l.self_loop_width;
    let height = bottom + l.margin;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"{f}\">",
        w = width,
        h = height,
        f = l.font_size
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(&seq.name));
    out.push_str("  <defs>\n");
    out.push_str("    <marker id=\"call\" markerWidth=\"10\" markerHeight=\"8\" refX=\"10\" refY=\"4\" orient=\"auto\"><path d=\"M0,0 L10,4 L0,8 z\" fill=\"black\"/></marker>\n");
    out.push_str("    <marker id=\"return\" markerWidth=\"10\" markerHeight=\"8\" refX=\"10\" refY=\"4\" orient=\"auto\"><path d=\"M0,0 L10,4 L0,8\" fill=\"none\" stroke=\"black\"/></marker>\n");
    out.push_str("  </defs>\n");

    for (i, lifeline) in seq.lifelines.iter().enumerate() {
        let cx = center(i);
        let quantum = q.class_of(lifeline.class).is_quantum();
        let class = if quantum { "quantum" } else { "classical" };
        let _ = writeln!(out, "  <g class=\"lifeline {}\">", class);
        let _ = writeln!(
            out,
            "    <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"black\"/>",
            cx - l.header_width / 2,
            l.margin,
            l.header_width,
            l.header_height
        );
        let weight = if quantum { " font-weight=\"bold\"" } else { "" };
        let _ = writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\"{}>{}: {}</text>",
            cx,
            l.margin + l.header_height / 2 + l.font_size / 3,
            weight,
            escape(&lifeline.alias),
            escape(&model.class(lifeline.class).name)
        );
        let _ = writeln!(
            out,
            "    <line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\" stroke-dasharray=\"4 4\"/>",
            header_bottom,
            bottom,
            x = cx
        );
        out.push_str("  </g>\n");
    }

    for (k, msg) in seq.messages.iter().enumerate() {
        let y = message_y(k);
        // Unresolved operations fall back to the declared marker.
        let quantum = message_payload(model, msg)
            .unwrap_or(msg.declared_marker)
            .is_quantum();
        let (kind, marker, dash) = match msg.kind {
            MessageKind::Call => ("call", "call", ""),
            MessageKind::Return => ("return", "return", " stroke-dasharray=\"6 3\""),
        };
        let _ = writeln!(
            out,
            "  <g class=\"message {} {}\">",
            kind,
            if quantum { "quantum" } else { "classical" }
        );
        let x1 = center(msg.from);
        let x2 = center(msg.to);
        let g = l.double_gap / 2;
        if msg.from == msg.to {
            let w = l.self_loop_width;
            let h = l.message_pitch / 2;
            let strokes: &[(i32, i32)] = if quantum { &[(-g, g), (g, -g)] } else { &[(0, 0)] };
            for (n, &(dy, dw)) in strokes.iter().enumerate() {
                let end = if n + 1 == strokes.len() { format_marker(marker) } else { String::new() };
                let _ = writeln!(
                    out,
                    "    <polyline points=\"{x},{} {},{} {},{} {x},{}\" fill=\"none\" stroke=\"black\"{}{}/>",
                    y + dy,
                    x1 + w + dw,
                    y + dy,
                    x1 + w + dw,
                    y + h - dy,
                    y + h - dy,
                    dash,
                    end,
                    x = x1
                );
            }
            let _ = writeln!(
                out,
                "    <text x=\"{}\" y=\"{}\" text-anchor=\"start\">{}</text>",
                x1 + w + 4,
                y + h / 2 + l.font_size / 3,
                escape(&msg.op_name)
            );
        } else {
            let offsets: &[i32] = if quantum { &[-g, g] } else { &[0] };
            for (n, dy) in offsets.iter().enumerate() {
                let end = if n + 1 == offsets.len() { format_marker(marker) } else { String::new() };
                let _ = writeln!(
                    out,
                    "    <line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\"{}{}/>",
                    x1,
                    x2,
                    dash,
                    end,
                    y = y + dy
                );
            }
            let _ = writeln!(
                out,
                "    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                (x1 + x2) / 2,
                y - 6,
                escape(&msg.op_name)
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");

    Ok(RenderDoc {
        format: RenderFormat::Svg,
        diagram: alloc::format!("seq:{}", seq.name),
        content: out,
    })
}

fn format_marker(id: &str) -> String {
    alloc::format!(" marker-end=\"url(#{})\"", id)
}
