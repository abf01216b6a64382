//! Text format for patterns.
//!
//! ```text
//! pattern h {
//!   space: 1, 2;
//!   input: 1;
//!   output: 2;
//!   seq:
//!     E(1,2)
//!     M(1, 0)
//!     X(2, s[1])
//! }
//! ```
//!
//! Commands run top to bottom. Angles are `0`, `pi`, `pi/4`, `3/4 pi`,
//! `-1/2 pi` or decimal radians; signals are sums such as `1 + s[1] + s[2']`.
//! Qubits are integers, primed integers (`2'`) or identifiers.

use std::collections::BTreeSet;
use std::fmt;

use crate::angle::{Angle, Rational};
use crate::command::Command;
use crate::pattern::Pattern;
use crate::qubit::QubitId;
use crate::signal::Signal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed document: the pattern and its declared name.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternDocument {
    pub name: String,
    pub pattern: Pattern,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Float(f64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    /// Whitespace or comment directly precedes the token.
    spaced: bool,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut spaced = true;
    while i < chars.len() {
        let ch = chars[i];
        let (start_line, start_col) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if ch.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            spaced = true;
            continue;
        }
        if ch == '#' || (ch == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            spaced = true;
            continue;
        }
        let tok = if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            Tok::Ident(s)
        } else if ch.is_ascii_digit() || (ch == '.' && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())) {
            let mut s = String::new();
            let mut float = false;
            while i < chars.len() {
                let c = chars[i];
                let exp_sign = (c == '+' || c == '-') && s.ends_with(['e', 'E']) && float;
                if c.is_ascii_digit() || c == '.' || exp_sign || ((c == 'e' || c == 'E') && !s.contains(['e', 'E'])) {
                    if c == '.' || c == 'e' || c == 'E' {
                        float = true;
                    }
                    s.push(c);
                    advance(&mut i, &mut line, &mut col);
                } else {
                    break;
                }
            }
            if float {
                Tok::Float(s.parse().map_err(|_| ParseError {
                    line: start_line,
                    column: start_col,
                    message: format!("malformed number {s:?}"),
                })?)
            } else {
                Tok::Int(s.parse().map_err(|_| ParseError {
                    line: start_line,
                    column: start_col,
                    message: format!("integer {s} out of range"),
                })?)
            }
        } else if "{}();:,[]+-/'=".contains(ch) {
            advance(&mut i, &mut line, &mut col);
            Tok::Sym(ch)
        } else {
            return Err(ParseError {
                line,
                column: col,
                message: format!("unexpected character {ch:?}"),
            });
        };
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
            spaced,
        });
        spaced = false;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.column)).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let (line, column) = self.here();
        Err(ParseError {
            line,
            column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("{s:?}"),
            Some(Tok::Int(n)) => n.to_string(),
            Some(Tok::Float(x)) => x.to_string(),
            Some(Tok::Sym(c)) => format!("'{c}'"),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}', found {}", self.describe()))
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected `{kw}`, found {}", self.describe())),
        }
    }

    fn glued(&self) -> bool {
        self.toks.get(self.pos).is_some_and(|t| !t.spaced)
    }

    fn qubit(&mut self) -> PResult<QubitId> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let n = u32::try_from(n).or_else(|_| self.error("qubit index out of range"))?;
                self.pos += 1;
                if self.glued() && self.eat('\'') {
                    Ok(QubitId::primed(n))
                } else {
                    Ok(QubitId::index(n))
                }
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(QubitId::named(s))
            }
            _ => self.error(format!("expected a qubit, found {}", self.describe())),
        }
    }

    fn qubit_list(&mut self) -> PResult<Vec<QubitId>> {
        let mut out = Vec::new();
        while !matches!(self.peek(), Some(Tok::Sym(';'))) {
            out.push(self.qubit()?);
            self.eat(',');
        }
        Ok(out)
    }

    fn known(&self, q: QubitId, space: &BTreeSet<QubitId>, at: (usize, usize)) -> PResult<QubitId> {
        if space.contains(&q) {
            Ok(q)
        } else {
            Err(ParseError {
                line: at.0,
                column: at.1,
                message: format!("unknown qubit {q}"),
            })
        }
    }

    fn signal(&mut self, space: &BTreeSet<QubitId>) -> PResult<Signal> {
        let mut s = Signal::zero();
        loop {
            let at = self.here();
            match self.peek() {
                Some(Tok::Int(0)) => {
                    self.pos += 1;
                }
                Some(Tok::Int(1)) => {
                    self.pos += 1;
                    s += &Signal::one();
                }
                Some(Tok::Ident(id)) if id == "s" => {
                    self.pos += 1;
                    self.expect('[')?;
                    let q = self.qubit()?;
                    let q = self.known(q, space, at)?;
                    self.expect(']')?;
                    s += &Signal::outcome(q);
                }
                _ => return self.error(format!("expected a signal term, found {}", self.describe())),
            }
            if !self.eat('+') {
                return Ok(s);
            }
        }
    }

    fn int(&mut self) -> PResult<i64> {
        match self.next() {
            Some(Tok::Int(n)) => i64::try_from(n).or_else(|_| {
                self.pos -= 1;
                self.error("integer out of range")
            }),
            _ => {
                self.pos -= 1;
                self.error(format!("expected an integer, found {}", self.describe()))
            }
        }
    }

    fn is_pi(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "pi")
    }

    fn denominator(&mut self) -> PResult<i64> {
        let d = self.int()?;
        if d == 0 {
            self.pos -= 1;
            return self.error("zero denominator in angle");
        }
        Ok(d)
    }

    /// `[-] ( pi [/ q] | p [/ q] pi [/ r] | p pi [/ q] | 0 | decimal )`.
    fn angle(&mut self) -> PResult<Angle> {
        let negative = self.eat('-');
        let sign = if negative { -1 } else { 1 };
        if self.is_pi() {
            self.pos += 1;
            let q = if self.eat('/') {
                Rational::new(1, self.denominator()?)
            } else {
                Rational::from_integer(1)
            };
            return Ok(Angle::from_pi_multiple(q * sign));
        }
        match self.peek().cloned() {
            Some(Tok::Float(x)) => {
                self.pos += 1;
                if self.is_pi() {
                    return self.error("decimal multiples of pi are not exact; write p/q pi or radians");
                }
                Ok(Angle::radians(x * sign as f64))
            }
            Some(Tok::Int(_)) => {
                let numer = self.int()?;
                let mut q = Rational::from_integer(numer);
                let mut had_denominator = false;
                if self.eat('/') {
                    q /= self.denominator()?;
                    had_denominator = true;
                }
                if self.is_pi() {
                    self.pos += 1;
                    if self.eat('/') {
                        q /= self.denominator()?;
                    }
                    Ok(Angle::from_pi_multiple(q * sign))
                } else if numer == 0 && !had_denominator {
                    Ok(Angle::zero())
                } else if had_denominator {
                    self.error("fractional angle needs a trailing `pi`")
                } else {
                    Ok(Angle::radians((numer * sign) as f64))
                }
            }
            _ => self.error(format!("malformed angle: found {}", self.describe())),
        }
    }

    fn command(&mut self, space: &BTreeSet<QubitId>) -> PResult<Command> {
        let at = self.here();
        let name = match self.next() {
            Some(Tok::Ident(s)) => s,
            _ => {
                self.pos -= 1;
                return self.error(format!("expected a command, found {}", self.describe()));
            }
        };
        self.expect('(')?;
        let qat = self.here();
        let q = self.qubit()?;
        let q = self.known(q, space, qat)?;
        let cmd = match name.as_str() {
            "E" => {
                self.expect(',')?;
                let jat = self.here();
                let j = self.qubit()?;
                let j = self.known(j, space, jat)?;
                Command::entangle(q, j).map_err(|e| ParseError {
                    line: at.0,
                    column: at.1,
                    message: e.to_string(),
                })?
            }
            "M" => {
                self.expect(',')?;
                let angle = self.angle()?;
                let (mut s, mut t) = (Signal::zero(), Signal::zero());
                while self.eat(',') {
                    let key = match self.next() {
                        Some(Tok::Ident(k)) if k == "s" || k == "t" => k,
                        _ => {
                            self.pos -= 1;
                            return self.error(format!("expected `s=` or `t=`, found {}", self.describe()));
                        }
                    };
                    self.expect('=')?;
                    let v = self.signal(space)?;
                    if key == "s" {
                        s = v;
                    } else {
                        t = v;
                    }
                }
                Command::measure_dep(q, angle, s, t)
            }
            "X" | "Z" | "S" => {
                self.expect(',')?;
                let s = self.signal(space)?;
                match name.as_str() {
                    "X" => Command::x(q, s),
                    "Z" => Command::z(q, s),
                    _ => Command::shift(q, s),
                }
            }
            other => {
                return Err(ParseError {
                    line: at.0,
                    column: at.1,
                    message: format!("unknown command {other:?}"),
                });
            }
        };
        self.expect(')')?;
        self.eat(';');
        Ok(cmd)
    }

    fn document(&mut self) -> PResult<PatternDocument> {
        self.keyword("pattern")?;
        let name = match self.next() {
            Some(Tok::Ident(s)) => s,
            Some(Tok::Int(n)) => n.to_string(),
            _ => {
                self.pos -= 1;
                return self.error(format!("expected a pattern name, found {}", self.describe()));
            }
        };
        self.expect('{')?;
        self.keyword("space")?;
        self.expect(':')?;
        let space_at = self.here();
        let space_list = self.qubit_list()?;
        self.expect(';')?;
        let space: BTreeSet<QubitId> = space_list.iter().cloned().collect();
        if space.len() != space_list.len() {
            return Err(ParseError {
                line: space_at.0,
                column: space_at.1,
                message: "qubit listed twice in space".into(),
            });
        }
        let interface = |p: &mut Parser, kw: &str| -> PResult<Vec<QubitId>> {
            p.keyword(kw)?;
            p.expect(':')?;
            let at = p.here();
            let list = p.qubit_list()?;
            p.expect(';')?;
            let mut seen = BTreeSet::new();
            for q in &list {
                if !seen.insert(q) {
                    return Err(ParseError {
                        line: at.0,
                        column: at.1,
                        message: format!("qubit {q} listed twice in {kw}"),
                    });
                }
            }
            list.into_iter().map(|q| p.known(q, &space, at)).collect()
        };
        let inputs = interface(self, "input")?;
        let outputs = interface(self, "output")?;
        self.keyword("seq")?;
        self.expect(':')?;
        let mut commands = Vec::new();
        while !matches!(self.peek(), Some(Tok::Sym('}')) | None) {
            commands.push(self.command(&space)?);
        }
        self.expect('}')?;
        if self.peek().is_some() {
            return self.error(format!("unexpected {} after pattern", self.describe()));
        }
        let at = self.here();
        let pattern = Pattern::new(space, inputs, outputs, commands).map_err(|e| ParseError {
            line: at.0,
            column: at.1,
            message: e.to_string(),
        })?;
        Ok(PatternDocument { name, pattern })
    }
}

pub fn parse_document(text: &str) -> Result<PatternDocument, ParseError> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_col = text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
    let mut p = Parser {
        toks,
        pos: 0,
        end: (lines, last_col),
    };
    p.document()
}

/// A lone angle in document syntax, e.g. `1/4 pi`, `-pi/2` or `1.234`.
pub fn parse_angle(text: &str) -> Result<Angle, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: (1, text.chars().count() + 1),
    };
    let a = p.angle()?;
    if p.peek().is_some() {
        return p.error(format!("unexpected {} after angle", p.describe()));
    }
    Ok(a)
}

pub fn parse(text: &str) -> Result<Pattern, ParseError> {
    parse_document(text).map(|d| d.pattern)
}

fn list(qs: &[QubitId]) -> String {
    qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")
}

/// Canonical document text; [`parse`] reads it back to the same pattern.
pub fn serialize(name: &str, p: &Pattern) -> String {
    let space: Vec<QubitId> = p.space().iter().cloned().collect();
    let mut out = format!(
        "pattern {name} {{\n  space: {};\n  input: {};\n  output: {};\n  seq:\n",
        list(&space),
        list(p.inputs()),
        list(p.outputs())
    );
    for c in p.commands() {
        out.push_str("    ");
        out.push_str(&c.to_string());
        out.push('\n');
    }
    out.push_str("}\n");
    out
}
