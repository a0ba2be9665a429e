//! Line-oriented presentation files.
//!
//! ```text
//! dim = 6
//! generator x 2
//! generator y 2
//! relation x^2 + x*y + y^2   # comment
//! relation x^3
//! ```

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exact::Rational;
use crate::graded::{FreeAlgebra, Generator, GradedPoly, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: syntax error: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, column: usize, name: String },
    #[error("line {line}: inhomogeneous relation with term degrees {degrees:?}")]
    InhomogeneousRelation { line: usize, degrees: Vec<u32> },
    #[error("line {line}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}: {message}")]
    InvalidRelation { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownGenerator { line, .. }
            | ParseError::InhomogeneousRelation { line, .. }
            | ParseError::DuplicateGenerator { line, .. }
            | ParseError::InvalidRelation { line, .. } => *line,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::UnknownGenerator { .. } => "UnknownGenerator",
            ParseError::InhomogeneousRelation { .. } => "InhomogeneousRelation",
            ParseError::DuplicateGenerator { .. } => "DuplicateGenerator",
            ParseError::InvalidRelation { .. } => "InvalidRelation",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokens with their 1-based columns.
fn lex(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), column));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident(chars[i]) {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), column));
        } else if "+-*/^=".contains(c) {
            out.push((Tok::Sym(c), column));
            i += 1;
        } else {
            return Err(ParseError::Syntax { line, column, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |&(_, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, column: self.column(), message: message.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self, what: &str) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(n.clone())
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn small(&mut self, what: &str) -> Result<u32, ParseError> {
        let column = self.column();
        let n = self.int(what)?;
        u32::try_from(n).map_err(|_| ParseError::Syntax { line: self.line, column, message: format!("{what} too large") })
    }
}

struct Term {
    coeff: Rational,
    word: Vec<(usize, u32)>,
    degree: u32,
}

fn parse_term(cur: &mut Cursor, alg: &FreeAlgebra) -> Result<Term, ParseError> {
    let mut coeff = Rational::one();
    let mut word = Vec::new();
    let mut degree = 0u32;
    if let Some(Tok::Int(_)) = cur.peek() {
        let num = cur.int("integer")?;
        let mut den = BigInt::one();
        if cur.eat('/') {
            let column = cur.column();
            den = cur.int("denominator")?;
            if !den.is_positive() {
                return Err(ParseError::Syntax { line: cur.line, column, message: "zero denominator".into() });
            }
        }
        coeff = Rational::new(num, den);
        if !cur.eat('*') {
            return Ok(Term { coeff, word, degree });
        }
    }
    loop {
        let column = cur.column();
        let Some(Tok::Name(name)) = cur.peek().cloned() else {
            return Err(cur.error("expected a generator name"));
        };
        cur.pos += 1;
        let Some(g) = alg.index_of(&name) else {
            return Err(ParseError::UnknownGenerator { line: cur.line, column, name });
        };
        let e = if cur.eat('^') { cur.small("exponent")? } else { 1 };
        degree = alg
            .degree_of(g)
            .checked_mul(e)
            .and_then(|d| d.checked_add(degree))
            .ok_or_else(|| ParseError::Syntax { line: cur.line, column, message: "degree overflow".into() })?;
        word.push((g, e));
        if !cur.eat('*') {
            return Ok(Term { coeff, word, degree });
        }
    }
}

fn parse_relation(toks: &[(Tok, usize)], line: usize, end_column: usize, alg: &FreeAlgebra) -> Result<GradedPoly, ParseError> {
    let mut cur = Cursor { toks, pos: 0, line, end_column };
    if toks.is_empty() {
        return Err(cur.error("empty relation"));
    }
    let mut poly = GradedPoly::zero();
    let mut degrees = Vec::new();
    let mut negate = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let t = parse_term(&mut cur, alg)?;
        if !degrees.contains(&t.degree) {
            degrees.push(t.degree);
        }
        let (sign, m) = alg.monomial_from_word(&t.word);
        if sign != 0 {
            let c = if negate { -t.coeff } else { t.coeff };
            poly.add_term(m, c * Rational::from_integer(sign.into()));
        }
        if cur.eat('+') {
            negate = false;
        } else if cur.eat('-') {
            negate = true;
        } else if cur.peek().is_none() {
            break;
        } else {
            return Err(cur.error("expected `+`, `-` or end of line"));
        }
    }
    if degrees.len() > 1 {
        degrees.sort_unstable();
        return Err(ParseError::InhomogeneousRelation { line, degrees });
    }
    if poly.is_zero() {
        return Err(ParseError::InvalidRelation { line, message: "relation is zero".into() });
    }
    Ok(poly)
}

/// Parses one homogeneous polynomial in the generators of `alg`, reported as line 1.
pub fn parse_polynomial(alg: &FreeAlgebra, text: &str) -> Result<GradedPoly, ParseError> {
    let content = text.split('#').next().unwrap_or("");
    let toks = lex(content, 1)?;
    let end_column = content.trim_end().chars().count() + 1;
    if toks.len() == 1 && toks[0].0 == Tok::Int(BigInt::from(0)) {
        return Ok(GradedPoly::zero());
    }
    parse_relation(&toks, 1, end_column, alg).or_else(|e| match e {
        ParseError::InvalidRelation { .. } => Ok(GradedPoly::zero()),
        e => Err(e),
    })
}

/// Parses a presentation file. Generators may be declared anywhere in the file.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut dim: Option<u32> = None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut relation_lines: Vec<(usize, Vec<(Tok, usize)>, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = lex(content, line)?;
        let end_column = content.trim_end().chars().count() + 1;
        let Some((first, first_col)) = toks.first() else { continue };
        let mut cur = Cursor { toks: &toks, pos: 1, line, end_column };
        match first {
            Tok::Name(k) if k == "dim" => {
                if !cur.eat('=') {
                    return Err(cur.error("expected `=`"));
                }
                let n = cur.small("dimension")?;
                if cur.peek().is_some() {
                    return Err(cur.error("trailing input"));
                }
                if dim.replace(n).is_some() {
                    return Err(ParseError::Syntax { line, column: *first_col, message: "dimension given twice".into() });
                }
            }
            Tok::Name(k) if k == "generator" => {
                let name = match cur.peek() {
                    Some(Tok::Name(n)) => n.clone(),
                    _ => return Err(cur.error("expected a generator name")),
                };
                cur.pos += 1;
                let column = cur.column();
                let degree = cur.small("degree")?;
                if degree == 0 {
                    return Err(ParseError::Syntax { line, column, message: "degree must be positive".into() });
                }
                if cur.peek().is_some() {
                    return Err(cur.error("trailing input"));
                }
                if generators.iter().any(|g| g.name == name) {
                    return Err(ParseError::DuplicateGenerator { line, name });
                }
                generators.push(Generator::new(name, degree));
            }
            Tok::Name(k) if k == "relation" => {
                relation_lines.push((line, toks[1..].to_vec(), end_column));
            }
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    column: *first_col,
                    message: "expected `dim`, `generator` or `relation`".into(),
                })
            }
        }
    }

    let alg = FreeAlgebra::new(generators);
    let min_deg = alg.generators().iter().map(|g| g.degree).min().unwrap_or(0);
    let mut relations = Vec::new();
    for (line, toks, end_column) in &relation_lines {
        let r = parse_relation(toks, *line, *end_column, &alg)?;
        let d = r.homogeneous_degree().expect("checked homogeneous");
        if d < 2 * min_deg {
            return Err(ParseError::InvalidRelation {
                line: *line,
                message: format!("relation of degree {d} is below twice the smallest generator degree"),
            });
        }
        relations.push(r);
    }
    Presentation::new(alg.generators().to_vec(), relations, dim)
        .map_err(|e| ParseError::InvalidRelation { line: 0, message: e.to_string() })
}
