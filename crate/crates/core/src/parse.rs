//! A small cursor shared by the literal parsers (groups, families, pairs,
//! factorizations). Errors carry the byte offset and what was expected there.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {} in {:?}: expected {}",
            self.position, self.input, self.expected
        )
    }
}

#[derive(Debug, Clone)]
pub struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    pub fn is_empty(&self) -> bool {
        self.pos >= self.input.len()
    }

    pub fn error(&self, expected: impl Into<String>) -> ParseError {
        self.error_at(self.pos, expected)
    }

    pub fn error_at(&self, position: usize, expected: impl Into<String>) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            position,
            expected: expected.into(),
        }
    }

    pub fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    /// Consumes `c` if it is next (ASCII case-insensitive).
    pub fn eat(&mut self, c: char) -> bool {
        match self.peek() {
            Some(d) if d.eq_ignore_ascii_case(&c) => {
                self.pos += d.len_utf8();
                true
            }
            _ => false,
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("'{c}'")))
        }
    }

    /// Consumes `word` if it is next (ASCII case-insensitive).
    pub fn eat_word(&mut self, word: &str) -> bool {
        let rest = self.rest();
        if rest.len() >= word.len()
            && rest.is_char_boundary(word.len())
            && rest[..word.len()].eq_ignore_ascii_case(word)
        {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    /// Reads a run of ASCII letters, lowercased.
    pub fn ident(&mut self) -> Option<String> {
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return None;
        }
        self.pos += len;
        Some(rest[..len].to_ascii_lowercase())
    }

    /// Reads a non-negative decimal integer that fits in `u64`.
    pub fn number(&mut self) -> Result<u64, ParseError> {
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("a decimal number"));
        }
        let value = rest[..len]
            .parse::<u64>()
            .map_err(|_| self.error("a number that fits in 64 bits"))?;
        self.pos += len;
        Ok(value)
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.is_empty() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}
