//! Reader for presentation files.
//!
//! ```text
//! vars: x > y > z
//! field: Q            # optional; `Fp 7` selects a prime field
//! relations:
//!   x^2 + y*x
//!   xz
//!   z*y
//! ```
//!
//! `vars:` lists the generators joined by `>` (largest first) or `<`
//! (smallest first). Each non-blank line after `relations:` is one
//! polynomial: signed terms, an optional integer or fractional coefficient,
//! and letters joined by juxtaposition or `*` with optional `^n` powers.
//! Juxtaposed letters are split by longest match against the declared
//! names. `#` starts a comment.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Polynomial;
use crate::presentation::{Presentation, PresentationError};
use crate::scalar::{Field, FieldError};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected `{0}`")]
    Expected(&'static str),
    #[error("invalid letter name `{0}`")]
    BadName(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("weighted gradings are not supported (`{0}`)")]
    WeightedGrading(String),
    #[error("cannot mix `>` and `<` in the variable list")]
    MixedPrecedence,
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unexpected `{0}`")]
    Unexpected(String),
    #[error("unknown letter at `{0}`")]
    UnknownLetter(String),
    #[error("relation is not homogeneous")]
    NonHomogeneous,
    #[error("relation is zero")]
    ZeroRelation,
    #[error("relation has degree 0")]
    ConstantRelation,
    #[error("{0}")]
    Invalid(String),
}

const RESERVED: &[char] = &['+', '-', '*', '^', '/', '(', ')', '<', '>', ':', ',', '#', '='];

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Column (1-based, in characters) of byte offset `offset` within `line`.
fn column_of(line: &str, offset: usize) -> usize {
    line[..offset].chars().count() + 1
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if !c.is_ascii_digit() && !c.is_whitespace() && !RESERVED.contains(&c) && c != '!' && c != '\'' => {}
        _ => return false,
    }
    chars.all(|c| !c.is_whitespace() && !RESERVED.contains(&c))
}

/// Parses a presentation using the field named in its header (rationals
/// when absent).
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_presentation_with_field(text, None)
}

/// Parses a presentation; `field_override`, when given, replaces the
/// header's field.
pub fn parse_presentation_with_field(text: &str, field_override: Option<Field>) -> Result<Presentation, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut field = Field::Rational;
    let mut in_relations = false;
    let mut raw_relations: Vec<(usize, &str)> = Vec::new();

    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(full_line);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if in_relations {
            raw_relations.push((line_no, line));
            continue;
        }
        let lead = line.len() - line.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if alphabet.is_some() {
                return Err(err(line_no, lead + 1, ParseErrorKind::Unexpected("vars:".into())));
            }
            let offset = line.find("vars:").unwrap() + "vars:".len();
            alphabet = Some(parse_vars(rest, line, offset, line_no)?);
        } else if let Some(rest) = trimmed.strip_prefix("field:") {
            let column = column_of(line, line.find("field:").unwrap() + "field:".len());
            field = parse_field(rest).map_err(|k| err(line_no, column, k))?;
        } else if let Some(rest) = trimmed.strip_prefix("relations:") {
            if alphabet.is_none() {
                return Err(err(line_no, lead + 1, ParseErrorKind::Expected("vars:")));
            }
            in_relations = true;
            if !rest.trim().is_empty() {
                let offset = line.find("relations:").unwrap() + "relations:".len();
                return Err(err(line_no, column_of(line, offset), ParseErrorKind::Unexpected(rest.trim().into())));
            }
        } else {
            return Err(err(line_no, lead + 1, ParseErrorKind::Expected("vars:, field: or relations:")));
        }
    }

    let alphabet = alphabet.ok_or_else(|| err(1, 1, ParseErrorKind::Expected("vars:")))?;
    let field = field_override.unwrap_or(field);
    let mut relations = Vec::with_capacity(raw_relations.len());
    for (line_no, line) in raw_relations {
        relations.push(parse_relation(line, line_no, &alphabet, field)?);
    }
    Presentation::new(alphabet, field, relations).map_err(|e| {
        // per-relation checks already ran; anything left is structural
        err(1, 1, ParseErrorKind::Invalid(e.to_string()))
    })
}

fn parse_vars(rest: &str, line: &str, offset: usize, line_no: usize) -> Result<Alphabet, ParseError> {
    let has_gt = rest.contains('>');
    let has_lt = rest.contains('<');
    if has_gt && has_lt {
        return Err(err(line_no, column_of(line, offset), ParseErrorKind::MixedPrecedence));
    }
    let sep = if has_lt { '<' } else { '>' };
    let mut names: Vec<String> = Vec::new();
    let mut pos = offset;
    for piece in rest.split(sep) {
        let name = piece.trim();
        let column = column_of(line, pos + (piece.len() - piece.trim_start().len()));
        pos += piece.len() + sep.len_utf8();
        if let Some((n, _)) = name.split_once(':') {
            return Err(err(line_no, column, ParseErrorKind::WeightedGrading(n.trim().to_string())));
        }
        if !valid_name(name) {
            return Err(err(line_no, column, ParseErrorKind::BadName(name.to_string())));
        }
        if names.iter().any(|n| n == name) {
            return Err(err(line_no, column, ParseErrorKind::DuplicateLetter(name.to_string())));
        }
        names.push(name.to_string());
    }
    if has_lt {
        names.reverse();
    }
    Alphabet::from_descending(names).map_err(|e| err(line_no, column_of(line, offset), ParseErrorKind::Invalid(e.to_string())))
}

fn parse_field(rest: &str) -> Result<Field, ParseErrorKind> {
    let desc = rest.trim();
    if desc.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let lower = desc.to_ascii_lowercase();
    let digits = lower
        .strip_prefix("fp")
        .map(|d| d.trim_start_matches([':', ' ']).trim())
        .ok_or_else(|| ParseErrorKind::UnknownField(desc.to_string()))?;
    let p: u64 = digits.parse().map_err(|_| ParseErrorKind::UnknownField(desc.to_string()))?;
    Ok(Field::prime(p)?)
}

/// Parses a field descriptor as accepted on the command line: `q`,
/// `fp:<p>` or `Fp <p>`.
pub fn parse_field_descriptor(desc: &str) -> Result<Field, ParseErrorKind> {
    parse_field(desc)
}

struct Lexer<'a> {
    line: &'a str,
    pos: usize,
    line_no: usize,
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.line[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.rest().chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        err(self.line_no, column_of(self.line, self.pos), kind)
    }

    fn unsigned(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        let value = rest[..len].parse::<BigInt>().ok();
        self.pos += len;
        value
    }

    fn letter(&mut self, alphabet: &Alphabet) -> Option<Letter> {
        let rest = self.rest();
        let best = alphabet.letters().filter(|&a| rest.starts_with(alphabet.name(a))).max_by_key(|&a| alphabet.name(a).len())?;
        self.pos += alphabet.name(best).len();
        Some(best)
    }
}

fn parse_relation(line: &str, line_no: usize, alphabet: &Alphabet, field: Field) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer { line, pos: 0, line_no };
    let start_column = column_of(line, line.len() - line.trim_start().len());
    let mut terms: Vec<(BigRational, Word)> = Vec::new();
    let mut first = true;

    while lx.peek().is_some() {
        let mut sign = BigRational::one();
        match lx.peek() {
            Some('+') => lx.bump(),
            Some('-') => {
                lx.bump();
                sign = -sign;
            }
            Some(c) if !first => return Err(lx.error(ParseErrorKind::Unexpected(c.to_string()))),
            _ => {}
        }
        first = false;

        let mut coeff = sign;
        let mut saw_coeff = false;
        if let Some(num) = lx.unsigned() {
            let mut q = BigRational::from_integer(num);
            if lx.peek() == Some('/') {
                lx.bump();
                let den = lx.unsigned().ok_or_else(|| lx.error(ParseErrorKind::Expected("denominator")))?;
                if den.is_zero() {
                    return Err(lx.error(ParseErrorKind::Invalid("zero denominator".into())));
                }
                q /= BigRational::from_integer(den);
            }
            coeff *= q;
            saw_coeff = true;
        }

        let mut letters: Vec<Letter> = Vec::new();
        loop {
            match lx.peek() {
                Some('*') => {
                    if !saw_coeff && letters.is_empty() {
                        return Err(lx.error(ParseErrorKind::Unexpected("*".into())));
                    }
                    lx.bump();
                    lx.skip_ws();
                    if lx.letter(alphabet).map(|a| letters.push(a)).is_none() {
                        let shown = lx.rest().chars().take(8).collect();
                        return Err(lx.error(ParseErrorKind::UnknownLetter(shown)));
                    }
                }
                Some('^') => {
                    if letters.is_empty() {
                        return Err(lx.error(ParseErrorKind::Unexpected("^".into())));
                    }
                    lx.bump();
                    let n = lx.unsigned().ok_or_else(|| lx.error(ParseErrorKind::Expected("exponent")))?;
                    let n: usize = n.try_into().map_err(|_| lx.error(ParseErrorKind::Invalid("exponent too large".into())))?;
                    let last = letters.pop().unwrap();
                    letters.extend(std::iter::repeat_n(last, n));
                }
                Some('+') | Some('-') | None => break,
                Some(_) => {
                    if lx.letter(alphabet).map(|a| letters.push(a)).is_none() {
                        let shown = lx.rest().chars().take(8).collect();
                        return Err(lx.error(ParseErrorKind::UnknownLetter(shown)));
                    }
                }
            }
        }
        if !saw_coeff && letters.is_empty() {
            return Err(lx.error(ParseErrorKind::Expected("term")));
        }
        terms.push((coeff, Word::from_letters(letters)));
    }

    let at_start = |kind| err(line_no, start_column, kind);
    let mut poly = Polynomial::zero();
    for (q, w) in &terms {
        let c = field.from_rational(q).map_err(|e| at_start(e.into()))?;
        poly.add_term(w.clone(), c);
    }
    let degrees: Vec<usize> = terms.iter().map(|(_, w)| w.degree()).collect();
    if degrees.windows(2).any(|d| d[0] != d[1]) {
        return Err(at_start(ParseErrorKind::NonHomogeneous));
    }
    if poly.is_zero() {
        return Err(at_start(ParseErrorKind::ZeroRelation));
    }
    if degrees.first() == Some(&0) {
        return Err(at_start(ParseErrorKind::ConstantRelation));
    }
    Ok(poly)
}

impl From<PresentationError> for ParseErrorKind {
    fn from(e: PresentationError) -> Self {
        ParseErrorKind::Invalid(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: &str = "vars: x > y > z\nrelations:\n x^2 + y*x\n x*z\n z*y\n";

    #[test]
    fn parses_main_example() {
        let p = parse_presentation(A).unwrap();
        assert_eq!(p.alphabet().order_label(), "x > y > z");
        assert_eq!(p.field(), Field::Rational);
        let shown: Vec<String> = p.relations().iter().map(|r| r.display(p.alphabet()).to_string()).collect();
        assert_eq!(shown, ["x^2 + yx", "xz", "zy"]);
    }

    #[test]
    fn ascending_precedence() {
        let p = parse_presentation("vars: x < y\nrelations:\n x^2 - y*x").unwrap();
        assert_eq!(p.alphabet().order_label(), "y > x");
        let r = &p.relations()[0];
        assert_eq!(r.display(p.alphabet()).to_string(), "-yx + x^2");
    }

    #[test]
    fn duplicate_letter_reported_with_position() {
        let e = parse_presentation("vars: x > x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateLetter("x".into()));
        assert_eq!((e.line, e.column), (1, 11));
    }

    #[test]
    fn rejects_bad_relations() {
        let kind = |s: &str| parse_presentation(s).unwrap_err().kind;
        assert_eq!(kind("vars: x > y\nrelations:\n x^2 + y"), ParseErrorKind::NonHomogeneous);
        assert_eq!(kind("vars: x > y\nrelations:\n xy - xy"), ParseErrorKind::ZeroRelation);
        assert_eq!(kind("vars: x > y\nrelations:\n 3"), ParseErrorKind::ConstantRelation);
        assert_eq!(kind("vars: x:2 > y"), ParseErrorKind::WeightedGrading("x".into()));
        assert_eq!(kind("vars: x > y < z"), ParseErrorKind::MixedPrecedence);
        assert!(matches!(kind("vars: x > y\nrelations:\n x w"), ParseErrorKind::UnknownLetter(_)));
        assert!(matches!(kind("vars: x\nfield: Fp 8"), ParseErrorKind::Field(FieldError::NotPrime(8))));
    }

    #[test]
    fn error_column_points_at_symbol() {
        let e = parse_presentation("vars: x > y\nrelations:\n  x*q").unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));
    }

    #[test]
    fn coefficients_and_prime_field() {
        let p = parse_presentation("vars: x > y\nfield: Fp 7\nrelations:\n 2xy + 1/2 y^2 - 3*x*x").unwrap();
        assert_eq!(p.field(), Field::Prime(7));
        // -3 = 4, 1/2 = 4 = -3 (mod 7)
        assert_eq!(p.relations()[0].display(p.alphabet()).to_string(), "-3*x^2 + 2*xy - 3*y^2");
        let over = parse_presentation_with_field("vars: x\nfield: Fp 7\nrelations:\n 3x^2", Some(Field::Rational)).unwrap();
        assert_eq!(over.field(), Field::Rational);
    }

    #[test]
    fn longest_match_for_multichar_names() {
        let p = parse_presentation("vars: x! > y! > x\nrelations:\n x!x x! - y!^2 x").unwrap();
        assert_eq!(p.relations()[0].display(p.alphabet()).to_string(), "x!*x*x! - y!^2*x");
    }

    #[test]
    fn free_algebra_without_relations() {
        let p = parse_presentation("# free\nvars: a > b\n").unwrap();
        assert!(p.relations().is_empty());
    }

    #[test]
    fn field_descriptors() {
        assert_eq!(parse_field_descriptor("q"), Ok(Field::Rational));
        assert_eq!(parse_field_descriptor("fp:5"), Ok(Field::Prime(5)));
        assert_eq!(parse_field_descriptor("Fp 11"), Ok(Field::Prime(11)));
        assert!(parse_field_descriptor("R").is_err());
    }
}
