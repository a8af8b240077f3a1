//! Recursive-descent parser for `.quml` sources.
//!
//! Each syntax error produces one E001 and the parser skips ahead to the next
//! top-level declaration (or just past the closing brace of the block it was
//! in), so one pass reports every independent error.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ast::*;
use super::lexer::{tokenize, Keyword, Token, TokenKind};
use crate::diagnostic::{sort_diagnostics, Code, Diagnostic};
use crate::model::{MessageKind, Nature, RelationshipKind};
use crate::span::Span;

/// Marker for "a diagnostic was recorded; unwind to the recovery point".
struct Abort;

type PResult<T> = Result<T, Abort>;

/// Parses a complete model. Any diagnostic makes the whole parse fail.
pub fn parse(source: &str) -> Result<ParsedModel, Vec<Diagnostic>> {
    let (tokens, lex_diags) = tokenize(source);
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        diags: lex_diags,
    };
    let model = p.model();
    if p.diags.is_empty() {
        Ok(model)
    } else {
        sort_diagnostics(&mut p.diags);
        Err(p.diags)
    }
}

struct Parser<'t, 's> {
    tokens: &'t [Token<'s>],
    pos: usize,
    diags: Vec<Diagnostic>,
}

impl<'t, 's> Parser<'t, 's> {
    fn peek(&self) -> &'t Token<'s> {
        &self.tokens[self.pos]
    }

    fn peek_kind(&self) -> TokenKind {
        self.peek().kind
    }

    fn peek_nth_kind(&self, n: usize) -> TokenKind {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        self.tokens[i].kind
    }

    fn at(&self, kind: TokenKind) -> bool {
        self.peek_kind() == kind
    }

    fn at_kw(&self, kw: Keyword) -> bool {
        self.at(TokenKind::Keyword(kw))
    }

    fn advance(&mut self) -> &'t Token<'s> {
        let tok = &self.tokens[self.pos];
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn error<T>(&mut self, expected: &str) -> PResult<T> {
        let tok = self.peek();
        let found = match tok.kind {
            TokenKind::Ident | TokenKind::Int => format!("`{}`", tok.text),
            other => format!("{}", other),
        };
        self.diags.push(Diagnostic::new(
            Code::E001,
            tok.span,
            format!("expected {}, found {}", expected, found),
        ));
        Err(Abort)
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<&'t Token<'s>> {
        if self.at(kind) {
            Ok(self.advance())
        } else {
            self.error(&format!("{}", kind))
        }
    }

    fn eat_kw(&mut self, kw: Keyword) -> bool {
        if self.at_kw(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        if self.at(TokenKind::Ident) {
            let tok = self.advance();
            Ok(Ident {
                name: tok.text.into(),
                span: tok.span,
            })
        } else {
            self.error("identifier")
        }
    }

    fn take_comments(&self) -> Vec<String> {
        self.peek().comments.clone()
    }

    fn at_top_level_start(&self) -> bool {
        match self.peek_kind() {
            TokenKind::Keyword(
                Keyword::Class
                | Keyword::Inherit
                | Keyword::Compose
                | Keyword::Aggregate
                | Keyword::Assoc
                | Keyword::Sequence,
            ) => true,
            TokenKind::Keyword(Keyword::Quantum | Keyword::Classical) => matches!(
                self.peek_nth_kind(1),
                TokenKind::Keyword(Keyword::Class | Keyword::Type)
            ),
            _ => false,
        }
    }

    /// Skips to the next top-level declaration, or past the next `}`.
    fn recover(&mut self) {
        loop {
            if self.at(TokenKind::Eof) || self.at_top_level_start() {
                return;
            }
            if self.advance().kind == TokenKind::RBrace {
                return;
            }
        }
    }

    fn model(&mut self) -> ParsedModel {
        let comments = self.take_comments();
        let start = self.peek().span;
        let name = match self.model_header() {
            Ok(name) => name,
            Err(Abort) => {
                self.recover();
                Ident {
                    name: String::new(),
                    span: start,
                }
            }
        };
        let mut items = Vec::new();
        while !self.at(TokenKind::Eof) {
            let before = self.pos;
            match self.item() {
                Ok(item) => items.push(item),
                Err(Abort) => {
                    self.recover();
                    if self.pos == before {
                        self.advance();
                    }
                }
            }
        }
        let eof = self.peek();
        ParsedModel {
            comments,
            name,
            items,
            trailing_comments: eof.comments.clone(),
            span: start.to(self.prev_span()),
        }
    }

    fn model_header(&mut self) -> PResult<Ident> {
        self.expect(TokenKind::Keyword(Keyword::Model))?;
        self.ident()
    }

    fn item(&mut self) -> PResult<Item> {
        let comments = self.take_comments();
        let start = self.peek().span;
        match self.peek_kind() {
            TokenKind::Keyword(kw @ (Keyword::Quantum | Keyword::Classical)) => {
                match self.peek_nth_kind(1) {
                    TokenKind::Keyword(Keyword::Type) => {
                        self.advance();
                        self.advance();
                        let name = self.ident()?;
                        let nature = if kw == Keyword::Quantum {
                            Nature::Quantum
                        } else {
                            Nature::Classical
                        };
                        Ok(Item::Type(TypeDeclSyntax {
                            comments,
                            nature,
                            span: start.to(name.span),
                            name,
                        }))
                    }
                    TokenKind::Keyword(Keyword::Class) if kw == Keyword::Quantum => {
                        self.advance();
                        self.class(comments, true, start).map(Item::Class)
                    }
                    _ => {
                        self.advance();
                        if kw == Keyword::Quantum {
                            self.error("`class` or `type`")
                        } else {
                            self.error("`type`")
                        }
                    }
                }
            }
            TokenKind::Keyword(Keyword::Class) => self.class(comments, false, start).map(Item::Class),
            TokenKind::Keyword(Keyword::Inherit) => {
                self.advance();
                let source = self.ident()?;
                self.expect(TokenKind::Keyword(Keyword::From))?;
                let target = self.ident()?;
                Ok(self.relationship(comments, RelationshipKind::Inheritance, source, target, start))
            }
            TokenKind::Keyword(kw @ (Keyword::Compose | Keyword::Aggregate)) => {
                self.advance();
                let source = self.ident()?;
                self.expect(TokenKind::Keyword(Keyword::Has))?;
                let target = self.ident()?;
                let kind = if kw == Keyword::Compose {
                    RelationshipKind::Composition
                } else {
                    RelationshipKind::Aggregation
                };
                Ok(self.relationship(comments, kind, source, target, start))
            }
            TokenKind::Keyword(Keyword::Assoc) => {
                self.advance();
                let source = self.ident()?;
                self.expect(TokenKind::Keyword(Keyword::With))?;
                let target = self.ident()?;
                Ok(self.relationship(comments, RelationshipKind::Association, source, target, start))
            }
            TokenKind::Keyword(Keyword::Sequence) => self.sequence(comments, start).map(Item::Sequence),
            _ => self.error("a type, class, relationship, or sequence declaration"),
        }
    }

    fn relationship(
        &self,
        comments: Vec<String>,
        kind: RelationshipKind,
        source: Ident,
        target: Ident,
        start: Span,
    ) -> Item {
        Item::Relationship(RelationshipSyntax {
            comments,
            kind,
            span: start.to(target.span),
            source,
            target,
        })
    }

    fn class(&mut self, comments: Vec<String>, quantum: bool, start: Span) -> PResult<ClassSyntax> {
        self.expect(TokenKind::Keyword(Keyword::Class))?;
        let name = self.ident()?;
        self.expect(TokenKind::LBrace)?;
        let mut members = Vec::new();
        while !self.at(TokenKind::RBrace) {
            members.push(self.member()?);
        }
        let trailing_comments = self.take_comments();
        let close = self.advance().span;
        Ok(ClassSyntax {
            comments,
            quantum,
            name,
            members,
            trailing_comments,
            span: start.to(close),
        })
    }

    fn member(&mut self) -> PResult<MemberSyntax> {
        let comments = self.take_comments();
        let start = self.peek().span;
        let quantum = self.eat_kw(Keyword::Quantum);
        let private = self.eat_kw(Keyword::Private);
        if self.eat_kw(Keyword::Attr) {
            let name = self.ident()?;
            self.expect(TokenKind::Colon)?;
            let ty = self.type_ref()?;
            Ok(MemberSyntax::Attr(AttrSyntax {
                comments,
                quantum,
                private,
                name,
                span: start.to(ty.span),
                ty,
            }))
        } else if self.eat_kw(Keyword::Op) {
            let name = self.ident()?;
            self.expect(TokenKind::LParen)?;
            let mut params = Vec::new();
            if !self.at(TokenKind::RParen) {
                loop {
                    let pname = self.ident()?;
                    self.expect(TokenKind::Colon)?;
                    let ty = self.type_ref()?;
                    params.push(ParamSyntax {
                        span: pname.span.to(ty.span),
                        name: pname,
                        ty,
                    });
                    if self.at(TokenKind::Comma) {
                        self.advance();
                    } else {
                        break;
                    }
                }
            }
            let mut end = self.expect(TokenKind::RParen)?.span;
            let ret = if self.at(TokenKind::Arrow) {
                self.advance();
                let ty = self.type_ref()?;
                end = ty.span;
                Some(ty)
            } else {
                None
            };
            Ok(MemberSyntax::Op(OpSyntax {
                comments,
                quantum,
                private,
                name,
                params,
                ret,
                span: start.to(end),
            }))
        } else if quantum || private {
            self.error("`attr` or `op`")
        } else {
            self.error("`attr`, `op`, or `}`")
        }
    }

    fn type_ref(&mut self) -> PResult<TypeRefSyntax> {
        let name = self.ident()?;
        let mut span = name.span;
        let mut array_len = None;
        if self.at(TokenKind::LBracket) {
            self.advance();
            let tok = self.expect(TokenKind::Int)?;
            match tok.text.parse::<u32>() {
                Ok(0) => self.diags.push(Diagnostic::new(
                    Code::E002,
                    tok.span,
                    "array length must be positive",
                )),
                Ok(n) => array_len = Some(n),
                Err(_) => self.diags.push(Diagnostic::new(
                    Code::E002,
                    tok.span,
                    format!("array length `{}` is too large", tok.text),
                )),
            }
            span = span.to(self.expect(TokenKind::RBracket)?.span);
        }
        Ok(TypeRefSyntax {
            name,
            array_len,
            span,
        })
    }

    fn sequence(&mut self, comments: Vec<String>, start: Span) -> PResult<SequenceSyntax> {
        self.expect(TokenKind::Keyword(Keyword::Sequence))?;
        let name = self.ident()?;
        self.expect(TokenKind::LBrace)?;
        let mut lifelines = Vec::new();
        while self.at_kw(Keyword::Lifeline) {
            let comments = self.take_comments();
            let kw = self.advance().span;
            let alias = self.ident()?;
            self.expect(TokenKind::Colon)?;
            let class = self.ident()?;
            lifelines.push(LifelineSyntax {
                comments,
                span: kw.to(class.span),
                alias,
                class,
            });
        }
        let mut messages = Vec::new();
        while !self.at(TokenKind::RBrace) {
            let comments = self.take_comments();
            let first = self.peek().span;
            let quantum = match self.peek_kind() {
                TokenKind::Keyword(Keyword::Msg) => false,
                TokenKind::Keyword(Keyword::Qmsg) => true,
                _ if messages.is_empty() => return self.error("`lifeline`, `msg`, `qmsg`, or `}`"),
                _ => return self.error("`msg`, `qmsg`, or `}`"),
            };
            self.advance();
            let from = self.ident()?;
            let kind = match self.peek_kind() {
                TokenKind::Arrow => MessageKind::Call,
                TokenKind::DashArrow => MessageKind::Return,
                _ => return self.error("`->` or `-->`"),
            };
            self.advance();
            let to = self.ident()?;
            self.expect(TokenKind::Colon)?;
            let op = self.ident()?;
            messages.push(MessageSyntax {
                comments,
                quantum,
                from,
                kind,
                to,
                span: first.to(op.span),
                op,
            });
        }
        let trailing_comments = self.take_comments();
        let close = self.advance().span;
        Ok(SequenceSyntax {
            comments,
            name,
            lifelines,
            messages,
            trailing_comments,
            span: start.to(close),
        })
    }
}
