use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::diagnostic::{Code, Diagnostic};
use crate::span::{Pos, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keyword {
    Model,
    Classical,
    Quantum,
    Type,
    Class,
    Attr,
    Op,
    Private,
    Inherit,
    From,
    Compose,
    Aggregate,
    Has,
    Assoc,
    With,
    Sequence,
    Lifeline,
    Msg,
    Qmsg,
}

impl Keyword {
    const ALL: [Keyword; 19] = [
        Keyword::Model,
        Keyword::Classical,
        Keyword::Quantum,
        Keyword::Type,
        Keyword::Class,
        Keyword::Attr,
        Keyword::Op,
        Keyword::Private,
        Keyword::Inherit,
        Keyword::From,
        Keyword::Compose,
        Keyword::Aggregate,
        Keyword::Has,
        Keyword::Assoc,
        Keyword::With,
        Keyword::Sequence,
        Keyword::Lifeline,
        Keyword::Msg,
        Keyword::Qmsg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Model => "model",
            Keyword::Classical => "classical",
            Keyword::Quantum => "quantum",
            Keyword::Type => "type",
            Keyword::Class => "class",
            Keyword::Attr => "attr",
            Keyword::Op => "op",
            Keyword::Private => "private",
            Keyword::Inherit => "inherit",
            Keyword::From => "from",
            Keyword::Compose => "compose",
            Keyword::Aggregate => "aggregate",
            Keyword::Has => "has",
            Keyword::Assoc => "assoc",
            Keyword::With => "with",
            Keyword::Sequence => "sequence",
            Keyword::Lifeline => "lifeline",
            Keyword::Msg => "msg",
            Keyword::Qmsg => "qmsg",
        }
    }

    pub fn lookup(word: &str) -> Option<Keyword> {
        Keyword::ALL.iter().copied().find(|k| k.as_str() == word)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Int,
    Keyword(Keyword),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
    /// `->`
    Arrow,
    /// `-->`
    DashArrow,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident => f.write_str("identifier"),
            TokenKind::Int => f.write_str("integer"),
            TokenKind::Keyword(k) => write!(f, "`{}`", k.as_str()),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::DashArrow => f.write_str("`-->`"),
            TokenKind::Eof => f.write_str("end of file"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token<'s> {
    pub kind: TokenKind,
    pub text: &'s str,
    pub span: Span,
    /// `//` comments that appear on their own lines before this token,
    /// without the leading slashes.
    pub comments: Vec<String>,
}

struct Cursor<'s> {
    src: &'s str,
    offset: usize,
    pos: Pos,
}

impl<'s> Cursor<'s> {
    fn peek(&self) -> Option<char> {
        self.src[self.offset..].chars().next()
    }

    fn peek_second(&self) -> Option<char> {
        let mut it = self.src[self.offset..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn eat_while(&mut self, pred: impl Fn(char) -> bool) {
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `src` into tokens. The final token is always `Eof`. Unrecognized
/// characters are reported as E001 and skipped.
pub fn tokenize(src: &str) -> (Vec<Token<'_>>, Vec<Diagnostic>) {
    let mut cur = Cursor {
        src,
        offset: 0,
        pos: Pos::new(1, 1),
    };
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let mut pending_comments = Vec::new();
    // Comments that share a line with earlier code are still kept; they are
    // attached to the next token like any other.
    loop {
        cur.eat_while(|c| c.is_whitespace());
        let start = cur.pos;
        let start_offset = cur.offset;
        let Some(c) = cur.bump() else {
            tokens.push(Token {
                kind: TokenKind::Eof,
                text: "",
                span: Span::new(start, start),
                comments: core::mem::take(&mut pending_comments),
            });
            break;
        };
        let kind = match c {
            '/' if cur.peek() == Some('/') => {
                cur.bump();
                let body_start = cur.offset;
                cur.eat_while(|c| c != '\n');
                pending_comments.push(String::from(src[body_start..cur.offset].trim_end()));
                continue;
            }
            '{' => TokenKind::LBrace,
            '}' => TokenKind::RBrace,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '[' => TokenKind::LBracket,
            ']' => TokenKind::RBracket,
            ':' => TokenKind::Colon,
            ',' => TokenKind::Comma,
            '-' if cur.peek() == Some('>') => {
                cur.bump();
                TokenKind::Arrow
            }
            '-' if cur.peek() == Some('-') && cur.peek_second() == Some('>') => {
                cur.bump();
                cur.bump();
                TokenKind::DashArrow
            }
            c if c.is_ascii_digit() => {
                cur.eat_while(|c| c.is_ascii_digit());
                TokenKind::Int
            }
            c if is_ident_start(c) => {
                cur.eat_while(is_ident_continue);
                match Keyword::lookup(&src[start_offset..cur.offset]) {
                    Some(k) => TokenKind::Keyword(k),
                    None => TokenKind::Ident,
                }
            }
            other => {
                diags.push(Diagnostic::new(
                    Code::E001,
                    Span::new(start, cur.pos),
                    alloc::format!("unexpected character {:?}", other),
                ));
                continue;
            }
        };
        tokens.push(Token {
            kind,
            text: &src[start_offset..cur.offset],
            span: Span::new(start, cur.pos),
            comments: core::mem::take(&mut pending_comments),
        });
    }
    (tokens, diags)
}
