//! Canonical pretty-printer.
//!
//! Layout: two-space indentation, one declaration per line, a blank line
//! around every block and between runs of different declaration kinds.

use alloc::string::String;
use core::fmt::Write;

use super::ast::*;
use crate::model::{MessageKind, Nature, RelationshipKind};

pub fn format(model: &ParsedModel) -> String {
    let mut out = String::new();
    comments(&mut out, "", &model.comments);
    let _ = writeln!(out, "model {}", model.name.name);

    let mut prev: Option<&Item> = None;
    for item in &model.items {
        if needs_blank_line(prev, item) {
            out.push('\n');
        }
        comments(&mut out, "", item.comments());
        match item {
            Item::Type(t) => {
                let _ = writeln!(out, "{} type {}", nature_kw(t.nature), t.name.name);
            }
            Item::Class(c) => class(&mut out, c),
            Item::Relationship(r) => {
                let (kw, sep) = match r.kind {
                    RelationshipKind::Inheritance => ("inherit", "from"),
                    RelationshipKind::Composition => ("compose", "has"),
                    RelationshipKind::Aggregation => ("aggregate", "has"),
                    RelationshipKind::Association => ("assoc", "with"),
                };
                let _ = writeln!(out, "{} {} {} {}", kw, r.source.name, sep, r.target.name);
            }
            Item::Sequence(s) => sequence(&mut out, s),
        }
        prev = Some(item);
    }

    if !model.trailing_comments.is_empty() {
        out.push('\n');
        comments(&mut out, "", &model.trailing_comments);
    }
    out
}

fn needs_blank_line(prev: Option<&Item>, item: &Item) -> bool {
    let Some(prev) = prev else { return true };
    let block = |i: &Item| matches!(i, Item::Class(_) | Item::Sequence(_));
    block(prev)
        || block(item)
        || core::mem::discriminant(prev) != core::mem::discriminant(item)
        || !item.comments().is_empty()
}

fn nature_kw(n: Nature) -> &'static str {
    match n {
        Nature::Classical => "classical",
        Nature::Quantum => "quantum",
    }
}

fn comments(out: &mut String, indent: &str, lines: &[String]) {
    for line in lines {
        let _ = writeln!(out, "{}//{}", indent, line);
    }
}

fn type_ref(out: &mut String, t: &TypeRefSyntax) {
    out.push_str(&t.name.name);
    if let Some(n) = t.array_len {
        let _ = write!(out, "[{}]", n);
    }
}

fn class(out: &mut String, c: &ClassSyntax) {
    if c.quantum {
        out.push_str("quantum ");
    }
    let _ = write!(out, "class {} {{", c.name.name);
    if c.members.is_empty() && c.trailing_comments.is_empty() {
        out.push_str("}\n");
        return;
    }
    out.push('\n');
    for m in &c.members {
        match m {
            MemberSyntax::Attr(a) => {
                comments(out, "  ", &a.comments);
                out.push_str("  ");
                modifiers(out, a.quantum, a.private);
                let _ = write!(out, "attr {}: ", a.name.name);
                type_ref(out, &a.ty);
            }
            MemberSyntax::Op(o) => {
                comments(out, "  ", &o.comments);
                out.push_str("  ");
                modifiers(out, o.quantum, o.private);
                let _ = write!(out, "op {}(", o.name.name);
                for (i, p) in o.params.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    let _ = write!(out, "{}: ", p.name.name);
                    type_ref(out, &p.ty);
                }
                out.push(')');
                if let Some(r) = &o.ret {
                    out.push_str(" -> ");
                    type_ref(out, r);
                }
            }
        }
        out.push('\n');
    }
    comments(out, "  ", &c.trailing_comments);
    out.push_str("}\n");
}

fn modifiers(out: &mut String, quantum: bool, private: bool) {
    if quantum {
        out.push_str("quantum ");
    }
    if private {
        out.push_str("private ");
    }
}

fn sequence(out: &mut String, s: &SequenceSyntax) {
    let _ = write!(out, "sequence {} {{", s.name.name);
    if s.lifelines.is_empty() && s.messages.is_empty() && s.trailing_comments.is_empty() {
        out.push_str("}\n");
        return;
    }
    out.push('\n');
    for l in &s.lifelines {
        comments(out, "  ", &l.comments);
        let _ = writeln!(out, "  lifeline {}: {}", l.alias.name, l.class.name);
    }
    for m in &s.messages {
        comments(out, "  ", &m.comments);
        let kw = if m.quantum { "qmsg" } else { "msg" };
        let arrow = match m.kind {
            MessageKind::Call => "->",
            MessageKind::Return => "-->",
        };
        let _ = writeln!(
            out,
            "  {} {} {} {} : {}",
            kw, m.from.name, arrow, m.to.name, m.op.name
        );
    }
    comments(out, "  ", &s.trailing_comments);
    out.push_str("}\n");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn minimal_model_is_canonicalized() {
        let m = parse("model m  class A { attr x: int }").unwrap();
        assert_eq!(format(&m), "model m\n\nclass A {\n  attr x: int\n}\n");
    }

    #[test]
    fn erratic_whitespace() {
        let src = "  model   m\n\n\n   quantum   class Q{quantum private attr s:qubit[ 3 ]\n\
                   op f(a:int,b:qstate)->int }inherit P from Q inherit R from Q\n\
                   sequence s{lifeline p:P\nqmsg p->p:f msg p-->p:f}";
        let m = parse(src).unwrap();
        let expected = "model m\n\
\n\
quantum class Q {\n\
\x20 quantum private attr s: qubit[3]\n\
\x20 op f(a: int, b: qstate) -> int\n\
}\n\
\n\
inherit P from Q\n\
inherit R from Q\n\
\n\
sequence s {\n\
\x20 lifeline p: P\n\
\x20 qmsg p -> p : f\n\
\x20 msg p --> p : f\n\
}\n";
        assert_eq!(format(&m), expected);
    }

    #[test]
    fn comments_survive() {
        let src = "// header\nmodel m\n// a class\nclass A {\n  // field\n  attr x: int\n  // end\n}\n// bye\n";
        let m = parse(src).unwrap();
        let out = format(&m);
        assert_eq!(out, "// header\nmodel m\n\n// a class\nclass A {\n  // field\n  attr x: int\n  // end\n}\n\n// bye\n");
        assert_eq!(format(&parse(&out).unwrap()), out);
    }

    #[test]
    fn empty_blocks() {
        let m = parse("model m class A {} sequence s {}").unwrap();
        assert_eq!(format(&m), "model m\n\nclass A {}\n\nsequence s {}\n");
    }
}
