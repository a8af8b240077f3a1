//! The textual `.quml` carrier: lexer, parser, syntax tree and formatter.

pub mod ast;
mod format;
mod lexer;
mod parser;

pub use ast::ParsedModel;
pub use format::format;
pub use lexer::{tokenize, Keyword, Token, TokenKind};
pub use parser::parse;
