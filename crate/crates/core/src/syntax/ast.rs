//! Syntax tree. Names are unresolved; every node carries its span.
//!
//! `comments` fields hold the `//` lines that precede a node so the
//! formatter can put them back.

use alloc::string::String;
use alloc::vec::Vec;

use crate::model::{MessageKind, Nature, RelationshipKind};
use crate::span::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedModel {
    pub comments: Vec<String>,
    pub name: Ident,
    pub items: Vec<Item>,
    pub trailing_comments: Vec<String>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Type(TypeDeclSyntax),
    Class(ClassSyntax),
    Relationship(RelationshipSyntax),
    Sequence(SequenceSyntax),
}

impl Item {
    pub fn span(&self) -> Span {
        match self {
            Item::Type(t) => t.span,
            Item::Class(c) => c.span,
            Item::Relationship(r) => r.span,
            Item::Sequence(s) => s.span,
        }
    }

    pub fn comments(&self) -> &[String] {
        match self {
            Item::Type(t) => &t.comments,
            Item::Class(c) => &c.comments,
            Item::Relationship(r) => &r.comments,
            Item::Sequence(s) => &s.comments,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDeclSyntax {
    pub comments: Vec<String>,
    pub nature: Nature,
    pub name: Ident,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSyntax {
    pub comments: Vec<String>,
    pub quantum: bool,
    pub name: Ident,
    pub members: Vec<MemberSyntax>,
    pub trailing_comments: Vec<String>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MemberSyntax {
    Attr(AttrSyntax),
    Op(OpSyntax),
}

impl MemberSyntax {
    pub fn name(&self) -> &Ident {
        match self {
            MemberSyntax::Attr(a) => &a.name,
            MemberSyntax::Op(o) => &o.name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttrSyntax {
    pub comments: Vec<String>,
    pub quantum: bool,
    pub private: bool,
    pub name: Ident,
    pub ty: TypeRefSyntax,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSyntax {
    pub comments: Vec<String>,
    /// Internally quantum implementation.
    pub quantum: bool,
    pub private: bool,
    pub name: Ident,
    pub params: Vec<ParamSyntax>,
    pub ret: Option<TypeRefSyntax>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSyntax {
    pub name: Ident,
    pub ty: TypeRefSyntax,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeRefSyntax {
    pub name: Ident,
    pub array_len: Option<u32>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationshipSyntax {
    pub comments: Vec<String>,
    pub kind: RelationshipKind,
    /// Subclass, whole, or associating class.
    pub source: Ident,
    /// Superclass, part, or associated class.
    pub target: Ident,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSyntax {
    pub comments: Vec<String>,
    pub name: Ident,
    pub lifelines: Vec<LifelineSyntax>,
    pub messages: Vec<MessageSyntax>,
    pub trailing_comments: Vec<String>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LifelineSyntax {
    pub comments: Vec<String>,
    pub alias: Ident,
    pub class: Ident,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageSyntax {
    pub comments: Vec<String>,
    pub quantum: bool,
    pub from: Ident,
    pub kind: MessageKind,
    pub to: Ident,
    pub op: Ident,
    pub span: Span,
}

/// Resets every span in the tree so that two trees can be compared
/// structurally.
pub trait ClearSpans {
    fn clear_spans(&mut self);
}

impl ClearSpans for Ident {
    fn clear_spans(&mut self) {
        self.span = Span::default();
    }
}

impl ClearSpans for TypeRefSyntax {
    fn clear_spans(&mut self) {
        self.span = Span::default();
        self.name.clear_spans();
    }
}

impl ClearSpans for MemberSyntax {
    fn clear_spans(&mut self) {
        match self {
            MemberSyntax::Attr(a) => {
                a.span = Span::default();
                a.name.clear_spans();
                a.ty.clear_spans();
            }
            MemberSyntax::Op(o) => {
                o.span = Span::default();
                o.name.clear_spans();
                for p in &mut o.params {
                    p.span = Span::default();
                    p.name.clear_spans();
                    p.ty.clear_spans();
                }
                if let Some(r) = &mut o.ret {
                    r.clear_spans();
                }
            }
        }
    }
}

impl ClearSpans for Item {
    fn clear_spans(&mut self) {
        match self {
            Item::Type(t) => {
                t.span = Span::default();
                t.name.clear_spans();
            }
            Item::Class(c) => {
                c.span = Span::default();
                c.name.clear_spans();
                c.members.iter_mut().for_each(ClearSpans::clear_spans);
            }
            Item::Relationship(r) => {
                r.span = Span::default();
                r.source.clear_spans();
                r.target.clear_spans();
            }
            Item::Sequence(s) => {
                s.span = Span::default();
                s.name.clear_spans();
                for l in &mut s.lifelines {
                    l.span = Span::default();
                    l.alias.clear_spans();
                    l.class.clear_spans();
                }
                for m in &mut s.messages {
                    m.span = Span::default();
                    m.from.clear_spans();
                    m.to.clear_spans();
                    m.op.clear_spans();
                }
            }
        }
    }
}

impl ClearSpans for ParsedModel {
    fn clear_spans(&mut self) {
        self.span = Span::default();
        self.name.clear_spans();
        self.items.iter_mut().for_each(ClearSpans::clear_spans);
    }
}

impl ParsedModel {
    /// Copy of the tree with all spans reset.
    pub fn without_spans(&self) -> ParsedModel {
        let mut m = self.clone();
        m.clear_spans();
        m
    }

    /// Structural equality ignoring source positions.
    pub fn same_structure(&self, other: &ParsedModel) -> bool {
        self.without_spans() == other.without_spans()
    }
}
