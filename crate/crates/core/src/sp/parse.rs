use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::SpTerm;
use crate::error::{Error, Result};

/// Parses the composition language:
///
/// ```text
/// term := atom (("^" | "|") int)*
/// atom := "e" | "S(" term ("," term)+ ")" | "P(" term ("," term)+ ")"
/// ```
///
/// `t^n` is the series composition of `n` copies of `t`, `t|n` the parallel
/// one; postfix operators apply left to right. Whitespace is ignored.
pub fn parse_sp_expression(text: &str) -> Result<SpTerm> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let term = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(term)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let mut msg = String::from("expected '");
            msg.push(c as char);
            msg.push('\'');
            Err(self.error(&msg))
        }
    }

    fn term(&mut self) -> Result<SpTerm> {
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Some(op @ (b'^' | b'|')) => {
                    self.pos += 1;
                    let at = self.pos;
                    let n = self.int()?;
                    if n == 0 {
                        return Err(Error::Parse { pos: at, msg: "power must be at least 1".to_string() });
                    }
                    t = if op == b'^' { t.series_power(n)? } else { t.parallel_power(n)? };
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom(&mut self) -> Result<SpTerm> {
        match self.peek() {
            Some(b'e') => {
                self.pos += 1;
                Ok(SpTerm::Edge)
            }
            Some(tag @ (b'S' | b'P')) => {
                self.pos += 1;
                self.expect(b'(')?;
                let mut children = Vec::new();
                children.push(self.term()?);
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    children.push(self.term()?);
                }
                if children.len() < 2 {
                    return Err(self.error("composition needs at least two children"));
                }
                self.expect(b')')?;
                Ok(if tag == b'S' { SpTerm::Series(children) } else { SpTerm::Parallel(children) })
            }
            Some(_) => Err(self.error("expected 'e', 'S(' or 'P('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Parse { pos: start, msg: "integer out of range".to_string() })
    }
}
