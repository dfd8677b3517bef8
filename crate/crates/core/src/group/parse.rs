//! Parser for the group-spec dialect: atoms `C<n>`, `D<2m>`, `Q8` joined by
//! the direct-product operator `x` (or `×`), with optional whitespace.

use std::fmt;

use super::spec::GroupSpec;
use crate::scalar::Scalar;

/// Syntax error with the 1-based character column where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "group spec syntax error at column {}: {}",
            self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

pub fn parse_group_spec<T: Scalar>(text: &str) -> Result<GroupSpec<T>, ParseError> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        src: text,
    };
    let mut atoms = vec![p.atom()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some('x') | Some('×') => {
                p.pos += 1;
                atoms.push(p.atom()?);
            }
            Some(c) => return Err(p.error(format!("expected 'x' or end of input, found {c:?}"))),
        }
    }
    Ok(GroupSpec::Product(atoms).canonical())
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            column: self.pos + 1,
            message,
        }
    }

    fn atom<T: Scalar>(&mut self) -> Result<GroupSpec<T>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let kind = match self.peek() {
            Some(c @ ('C' | 'D' | 'Q')) => c,
            Some(c) => return Err(self.error(format!("expected C<n>, D<2m> or Q8, found {c:?}"))),
            None => return Err(self.error("expected a group atom, found end of input".into())),
        };
        self.pos += 1;
        let digits_at = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_at {
            return Err(self.error(format!("expected digits after '{kind}'")));
        }
        let lo = self.chars[digits_at].0;
        let hi = self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i);
        let digits = &self.src[lo..hi];
        let at_atom = |msg: String| ParseError {
            column: start + 1,
            message: msg,
        };
        let value = T::from_str_radix(digits, 10)
            .map_err(|_| at_atom(format!("number {digits} out of range")))?;
        match kind {
            'C' if value.is_zero() => Err(at_atom("C0 is not a group".into())),
            'C' => Ok(GroupSpec::Cyclic(value)),
            'D' => GroupSpec::dihedral_of_order(value)
                .map_err(|_| at_atom(format!("D{digits}: dihedral order must be even and >= 2"))),
            _ if digits == "8" => Ok(GroupSpec::Quaternion8),
            _ => Err(at_atom(format!("only Q8 is supported, found Q{digits}"))),
        }
    }
}
