//! Diagram output. Class diagrams go to DOT, sequence diagrams to SVG.
//!
//! Quantum things are bold, quantum relationships and messages are drawn
//! with two parallel strokes. Output is byte-deterministic: no timestamps,
//! integer coordinates only.

use alloc::string::String;

mod dot;
mod svg;

pub use dot::{render_class_diagram, DOUBLE_EDGE_COLOR, SINGLE_EDGE_COLOR};
pub use svg::{render_sequence_diagram, render_sequence_diagram_with, SequenceLayout, UnknownSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Svg,
}

impl RenderFormat {
    pub fn extension(self) -> &'static str {
        match self {
            RenderFormat::Dot => "dot",
            RenderFormat::Svg => "svg",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderDoc {
    pub format: RenderFormat,
    /// `class` or `seq:<name>`.
    pub diagram: String,
    pub content: String,
}

/// Escapes text for XML and for DOT HTML-like labels.
pub(crate) fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}
