//! Toolchain core for Q-UML, a UML dialect that marks which classes,
//! members, relationships and messages deal in quantum information.
//!
//! The pipeline is `parse` → `resolve` → `infer` → `validate`, with the
//! renderers consuming the resolved model and its inferred classification.
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod diagnostic;
pub mod infer;
pub mod model;
pub mod render;
pub mod resolve;
pub mod span;
pub mod syntax;
pub mod validate;

use alloc::vec::Vec;

pub use diagnostic::{explain, Code, Diagnostic, Severity};
pub use infer::{classify_relationship, infer, QuantumnessMap};
pub use model::{element_quantumness, Model, Nature};
pub use render::{render_class_diagram, render_sequence_diagram, RenderDoc};
pub use resolve::resolve;
pub use span::{Pos, Span};
pub use syntax::{format, parse, ParsedModel};
pub use validate::validate;

/// Everything known about a source file that resolved successfully.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub parsed: ParsedModel,
    pub model: Model,
    pub quantumness: QuantumnessMap,
    /// Validator findings, ordered by position.
    pub diagnostics: Vec<Diagnostic>,
}

/// Why [`analyze`] could not produce a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// E001/E002 from the parser.
    Syntax(Vec<Diagnostic>),
    /// Name-resolution errors (E010, E011, E012, E022, E050).
    Resolve(Vec<Diagnostic>),
}

impl Failure {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            Failure::Syntax(d) | Failure::Resolve(d) => d,
        }
    }
}

/// Runs the full pipeline on one source text.
pub fn analyze(source: &str) -> Result<Analysis, Failure> {
    let parsed = parse(source).map_err(Failure::Syntax)?;
    let model = resolve(&parsed).map_err(Failure::Resolve)?;
    let quantumness = infer(&model);
    let diagnostics = validate(&model, &quantumness);
    Ok(Analysis {
        parsed,
        model,
        quantumness,
        diagnostics,
    })
}

/// All findings for a source text, from whichever phase stopped.
pub fn check(source: &str) -> Vec<Diagnostic> {
    match analyze(source) {
        Ok(a) => a.diagnostics,
        Err(f) => f.diagnostics().to_vec(),
    }
}
