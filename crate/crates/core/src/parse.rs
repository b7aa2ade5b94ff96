//! Shared scanner for the textual value grammars (`ct(..)`, `nm(..)`, `perm(..)`,
//! `dmap(..)` and the descriptor line format).

use thiserror::Error;

use crate::cycletype::ExtNat;

/// A grammar error, located by byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(self.error_at(self.pos, msg))
    }

    pub(crate) fn error_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError { pos, msg: msg.into() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub(crate) fn at(&self, lit: &str) -> bool {
        self.rest().starts_with(lit)
    }

    pub(crate) fn eat(&mut self, lit: &str) -> bool {
        if self.at(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, lit: &str) -> Result<(), ParseError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected `{lit}`"))
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub(crate) fn uint(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected an integer");
        }
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "integer out of range"))
    }

    pub(crate) fn ext_nat(&mut self) -> Result<ExtNat, ParseError> {
        if self.eat("w") {
            Ok(ExtNat::Omega)
        } else if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            Ok(ExtNat::Fin(self.uint()?))
        } else {
            self.err("expected an integer or `w`")
        }
    }

    /// Consumes an identifier made of ASCII letters.
    pub(crate) fn word(&mut self) -> &'a str {
        let start = self.pos;
        let n = self.rest().bytes().take_while(u8::is_ascii_alphabetic).count();
        self.pos += n;
        &self.src[start..self.pos]
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

/// Runs a grammar rule over a whole string, allowing surrounding whitespace.
pub(crate) fn whole<T>(
    src: &str,
    rule: impl FnOnce(&mut Cursor<'_>) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut c = Cursor::new(src);
    c.skip_ws();
    let v = rule(&mut c)?;
    c.finish()?;
    Ok(v)
}
