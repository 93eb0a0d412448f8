//! A tiny specification language for matrices and families, used by the CLI
//! and by cache keys.
//!
//! Terms: `I(l,a,b)`, `T(l,a,b)`, `T3(l,a,b,c)`, `Tfam(l,r)`,
//! `Fabcd(a,b,c,d)`, `H`, `K2`, `prod(X,Y)`, `times(t,X)`,
//! `allcols(m,r[,k])`, and inline matrices `[[0,1],[1,0]]`. Families combine
//! with `+` (alias `∪`) and `-` (alias `∖`), evaluated left to right at
//! equal precedence. Whitespace is ignored everywhere. The empty string is
//! the empty family.

use super::family::ConfigFamily;
use super::generators;
use crate::error::{Error, Result};
use crate::matrix::RMatrix;

/// Parses a family expression.
pub fn parse_family(input: &str) -> Result<ConfigFamily> {
    let mut parser = Parser::new(input);
    if parser.at_end() {
        return Ok(ConfigFamily::new(2));
    }
    let mut family = parser.term()?;
    while let Some(op) = parser.set_op() {
        let rhs = parser.term()?;
        family = match op {
            SetOp::Union => family.union(&rhs),
            SetOp::Minus => family.minus(&rhs),
        };
    }
    parser.expect_end()?;
    Ok(family)
}

/// Parses a single matrix term (no set operators, no `Tfam`).
pub fn parse_matrix(input: &str) -> Result<RMatrix> {
    let mut parser = Parser::new(input);
    let matrix = parser.matrix()?;
    parser.expect_end()?;
    Ok(matrix)
}

enum SetOp {
    Union,
    Minus,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Parser {
        Parser {
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(found) if found == c => Ok(()),
            Some(found) => Err(Error::parse(format!("expected {c:?}, found {found:?}"))),
            None => Err(Error::parse(format!("expected {c:?}, found end of input"))),
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::parse(format!(
                "unexpected trailing input at {:?}",
                self.chars[self.pos..].iter().collect::<String>()
            )))
        }
    }

    fn set_op(&mut self) -> Option<SetOp> {
        match self.peek() {
            Some('+') | Some('∪') => {
                self.bump();
                Some(SetOp::Union)
            }
            Some('-') | Some('∖') | Some('\\') => {
                self.bump();
                Some(SetOp::Minus)
            }
            _ => None,
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
            self.bump();
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(Error::parse(format!(
                "expected a number at {:?}",
                self.chars[self.pos..].iter().collect::<String>()
            )));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| Error::parse(format!("number {text:?} out of range")))
    }

    fn symbol(&mut self) -> Result<u8> {
        let value = self.integer()?;
        u8::try_from(value).map_err(|_| Error::parse(format!("symbol {value} out of range")))
    }

    fn term(&mut self) -> Result<ConfigFamily> {
        if self.peek() == Some('[') {
            let matrix = self.inline_matrix()?;
            return Ok(ConfigFamily::from_members(matrix.alphabet(), [matrix]));
        }
        let save = self.pos;
        let name = self.ident();
        if name == "Tfam" {
            self.expect('(')?;
            let l = self.integer()?;
            self.expect(',')?;
            let r = self.symbol()?;
            self.expect(')')?;
            return generators::gen_tfam(l, r);
        }
        self.pos = save;
        let matrix = self.matrix()?;
        Ok(ConfigFamily::from_members(matrix.alphabet(), [matrix]))
    }

    fn matrix(&mut self) -> Result<RMatrix> {
        if self.peek() == Some('[') {
            return self.inline_matrix();
        }
        let name = self.ident();
        match name.as_str() {
            "I" => {
                self.expect('(')?;
                let l = self.integer()?;
                self.expect(',')?;
                let a = self.symbol()?;
                self.expect(',')?;
                let b = self.symbol()?;
                self.expect(')')?;
                generators::gen_i(l, a, b)
            }
            "T" => {
                self.expect('(')?;
                let l = self.integer()?;
                self.expect(',')?;
                let a = self.symbol()?;
                self.expect(',')?;
                let b = self.symbol()?;
                self.expect(')')?;
                generators::gen_t(l, a, b)
            }
            "T3" => {
                self.expect('(')?;
                let l = self.integer()?;
                self.expect(',')?;
                let a = self.symbol()?;
                self.expect(',')?;
                let b = self.symbol()?;
                self.expect(',')?;
                let c = self.symbol()?;
                self.expect(')')?;
                generators::gen_t3(l, a, b, c)
            }
            "Fabcd" => {
                self.expect('(')?;
                let a = self.integer()?;
                self.expect(',')?;
                let b = self.integer()?;
                self.expect(',')?;
                let c = self.integer()?;
                self.expect(',')?;
                let d = self.integer()?;
                self.expect(')')?;
                generators::gen_fabcd(a, b, c, d)
            }
            "H" => generators::gen_h(),
            "K2" => generators::gen_k2(),
            "prod" => {
                self.expect('(')?;
                let x = self.matrix()?;
                self.expect(',')?;
                let y = self.matrix()?;
                self.expect(')')?;
                let r = x.alphabet().max(y.alphabet());
                x.with_alphabet(r)?.product(&y.with_alphabet(r)?)
            }
            "times" => {
                self.expect('(')?;
                let t = self.integer()?;
                self.expect(',')?;
                let x = self.matrix()?;
                self.expect(')')?;
                x.concat_copies(t)
            }
            "allcols" => {
                self.expect('(')?;
                let m = self.integer()?;
                self.expect(',')?;
                let r = self.symbol()?;
                let k = if self.peek() == Some(',') {
                    self.bump();
                    Some(self.integer()?)
                } else {
                    None
                };
                self.expect(')')?;
                generators::all_columns(m, r, k)
            }
            "" => Err(Error::parse(format!(
                "expected a term at {:?}",
                self.chars[self.pos..].iter().collect::<String>()
            ))),
            other => Err(Error::parse(format!("unknown term {other:?}"))),
        }
    }

    /// `[[0,1],[1,0]]`; `[]` is the 0x0 matrix. The alphabet bound is
    /// inferred from the largest entry (at least 2).
    fn inline_matrix(&mut self) -> Result<RMatrix> {
        self.expect('[')?;
        let mut rows: Vec<Vec<u8>> = Vec::new();
        if self.peek() == Some(']') {
            self.bump();
            return RMatrix::from_cols(0, 2, Vec::new());
        }
        loop {
            self.expect('[')?;
            let mut row = Vec::new();
            if self.peek() != Some(']') {
                loop {
                    row.push(self.symbol()?);
                    if self.peek() == Some(',') {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            self.expect(']')?;
            rows.push(row);
            match self.bump() {
                Some(',') => continue,
                Some(']') => break,
                other => {
                    return Err(Error::parse(format!(
                        "expected ',' or ']', found {other:?}"
                    )))
                }
            }
        }
        let r = rows
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .map_or(2, |top| (top + 1).max(2));
        RMatrix::from_rows(r, rows)
    }
}
