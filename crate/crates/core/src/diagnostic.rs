//! Coded findings produced by the parser, the resolver and the validator.
//!
//! Codes are stable: a code is never reused for a different rule.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::span::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    /// Syntax error.
    E001,
    /// Invalid literal.
    E002,
    /// Unresolved name.
    E010,
    /// Duplicate or shadowing declaration.
    E011,
    /// Class used as a data type in an operation signature.
    E012,
    /// Class inferred quantum but not marked quantum.
    E020,
    /// Class marked quantum with no quantum basis.
    W021,
    /// Attribute marker disagrees with its type.
    E022,
    /// Classical message carrying a quantum payload.
    E030,
    /// Quantum message carrying a classical payload.
    E031,
    /// Quantum message sent or received by a classical class.
    E032,
    /// Message names an operation its class does not offer.
    E033,
    /// Association with no classical interface to meet on.
    E040,
    /// Inheritance cycle.
    E050,
}

impl Code {
    pub const ALL: [Code; 14] = [
        Code::E001,
        Code::E002,
        Code::E010,
        Code::E011,
        Code::E012,
        Code::E020,
        Code::W021,
        Code::E022,
        Code::E030,
        Code::E031,
        Code::E032,
        Code::E033,
        Code::E040,
        Code::E050,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Code::E001 => "E001",
            Code::E002 => "E002",
            Code::E010 => "E010",
            Code::E011 => "E011",
            Code::E012 => "E012",
            Code::E020 => "E020",
            Code::W021 => "W021",
            Code::E022 => "E022",
            Code::E030 => "E030",
            Code::E031 => "E031",
            Code::E032 => "E032",
            Code::E033 => "E033",
            Code::E040 => "E040",
            Code::E050 => "E050",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Code::W021 => Severity::Warning,
            _ => Severity::Error,
        }
    }

    /// True for codes raised while reading source text rather than
    /// checking a model.
    pub fn is_syntax(self) -> bool {
        matches!(self, Code::E001 | Code::E002)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownCode(pub String);

impl fmt::Display for UnknownCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown diagnostic code `{}`", self.0)
    }
}

impl FromStr for Code {
    type Err = UnknownCode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Code::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownCode(s.into()))
    }
}

/// A secondary location attached to a diagnostic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Related {
    pub span: Span,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub message: String,
    pub span: Span,
    pub related: Vec<Related>,
}

impl Diagnostic {
    pub fn new(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            message: message.into(),
            span,
            related: Vec::new(),
        }
    }

    pub fn with_related(mut self, span: Span, note: impl Into<String>) -> Self {
        self.related.push(Related {
            span,
            note: note.into(),
        });
        self
    }

    pub fn severity(&self) -> Severity {
        self.code.severity()
    }

    pub fn is_error(&self) -> bool {
        self.severity() == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}[{}]: {}",
            self.span.start,
            self.severity(),
            self.code,
            self.message
        )
    }
}

/// Orders diagnostics by position, then code, then message.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| {
        (a.span, a.code, &a.message).cmp(&(b.span, b.code, &b.message))
    });
}

/// Rule text for a diagnostic code, naming the Q-UML principle it enforces.
pub fn explain(code: &str) -> Result<&'static str, UnknownCode> {
    let code: Code = code.parse()?;
    Ok(explanation(code))
}

pub fn explanation(code: Code) -> &'static str {
    match code {
        Code::E001 => {
            "E001 syntax error\n\
             The source does not match the Q-UML grammar. Parsing resumes at the next \
             top-level declaration so that several errors can be reported at once."
        }
        Code::E002 => {
            "E002 invalid literal\n\
             An integer literal is out of range. Array lengths must be positive and fit \
             in 32 bits."
        }
        Code::E010 => {
            "E010 unresolved name\n\
             A type, class, or lifeline name does not refer to any declaration in the model."
        }
        Code::E011 => {
            "E011 duplicate declaration\n\
             Class and type names must be unique within a model and may not shadow a \
             built-in type. Members, parameters and lifeline aliases must be unique \
             within their scope."
        }
        Code::E012 => {
            "E012 class used as data type\n\
             Operation parameters and return types must name data types. A class may \
             only appear as the type of an attribute, where it denotes composition."
        }
        Code::E020 => {
            "E020 unmarked quantum class\n\
             Principle 3 (Quantum Supremacy) and Principle 4 (Quantum Aggregation): a class \
             with at least one quantum element, a quantum superclass, or a quantum part \
             is a quantum module and must be declared `quantum class`."
        }
        Code::W021 => {
            "W021 quantum marker without quantum basis\n\
             Principle 3 (Quantum Supremacy): the class is declared `quantum class` but has \
             no quantum element, no quantum superclass and no quantum part. Either model \
             the quantum element or drop the marker."
        }
        Code::E022 => {
            "E022 element marker mismatch\n\
             Principle 2a (Quantum Variables): an attribute marked `quantum` must hold \
             quantum data. Its type, or the class it composes, is classical."
        }
        Code::E030 => {
            "E030 quantum payload on classical message\n\
             Principle 2b (Quantum Operations) applied to sequence diagrams: the message \
             carries a quantum argument (call) or quantum result (return) and must be \
             written `qmsg`."
        }
        Code::E031 => {
            "E031 classical payload on quantum message\n\
             Principle 2b (Quantum Operations) applied to sequence diagrams: the message \
             carries only classical information, so it should be sent classically with \
             `msg`."
        }
        Code::E032 => {
            "E032 quantum message at classical endpoint\n\
             Principle 5 (Quantum Communication): a classical module has no means to store \
             or transmit quantum data, so it cannot send or receive a `qmsg`."
        }
        Code::E033 => {
            "E033 unknown operation in message\n\
             A call must name a public operation of the receiving lifeline's class. A \
             return must name a public operation of the sending lifeline's class."
        }
        Code::E040 => {
            "E040 incompatible association\n\
             Principle 5 (Quantum Communication): a classical class may only associate with \
             a quantum class that exposes a classical interface, meaning a public operation \
             with an all-classical signature or a public classical attribute."
        }
        Code::E050 => {
            "E050 inheritance cycle\n\
             Inheritance must be acyclic; quantumness flows from superclass to subclass \
             and a cycle has no root."
        }
    }
}
