//! Text notation for supernatural numbers, groups and descriptors.
//!
//! ```text
//! sn        = "1" | rest | factors [ ";" rest ] ;
//! rest      = "rest" "=" exp ;
//! factors   = factor { "*" factor } ;
//! factor    = INT "^" exp ;
//! exp       = INT | "inf" ;
//! group     = "0" | "prod" "[" sn { "," sn } "]" ;
//! protorus  = "protorus" "{" [ field { "," field } ] "}" ;   fields: divisible, torus, solenoids
//! cd        = "cd" "{" [ field { "," field } ] "}" ;         fields: divisible, free, types
//! lattice   = "lattice" "{" [ field { "," field } ] "}" ;    fields: base, free, torsion
//! field     = NAME ":" value ;
//! list      = "[" [ item { "," item } ] "]" ;
//! triple    = "(" INT "," INT "," [ "-" ] INT ")" ;
//! ```
//!
//! Whitespace is insignificant. `inf` is the only spelling of infinity. The
//! parser is LL(1) apart from telling the literal `1` from a factor `1^…`,
//! which peeks one token further.

use std::collections::BTreeMap;
use std::fmt;

use crate::decomposable::CdGroupDescriptor;
use crate::lattice::LatticeElement;
use crate::primes::is_prime;
use crate::profinite::{FgProfiniteGroup, KernelDescriptor, KernelFactor};
use crate::protorus::ProtorusDescriptor;
use crate::supernatural::{Exponent, SupernaturalNumber};

/// Byte range `start..end` of the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    NonPrimeBase,
    DuplicatePrime,
    BadExponent,
    /// Syntactically fine but violates a descriptor invariant.
    InvalidValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at bytes {}..{}", self.message, self.span.start, self.span.end)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// A two-line diagnostic: the input, then carets under the span.
    pub fn render(&self, input: &str, color: bool) -> String {
        let (open, close) = if color { ("\x1b[1;31m", "\x1b[0m") } else { ("", "") };
        let line_start = input[..self.span.start].rfind('\n').map_or(0, |i| i + 1);
        let line_end = input[self.span.start..].find('\n').map_or(input.len(), |i| self.span.start + i);
        let line = &input[line_start..line_end];
        let pad = input[line_start..self.span.start].chars().count();
        let width = input[self.span.start..self.span.end.min(line_end)].chars().count().max(1);
        format!(
            "{open}error{close}: {}\n  | {line}\n  | {}{open}{}{close}\n",
            self.message,
            " ".repeat(pad),
            "^".repeat(width)
        )
    }
}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Word(String),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(src: &str) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let take_while = |chars: &mut std::iter::Peekable<std::str::CharIndices>, f: fn(char) -> bool| {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !f(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            end
        };
        let tok = if c.is_ascii_digit() {
            let end = take_while(&mut chars, |c| c.is_ascii_digit());
            Token { tok: Tok::Int(src[start..end].to_string()), span: SourceSpan { start, end } }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let end = take_while(&mut chars, |c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
            Token { tok: Tok::Word(src[start..end].to_string()), span: SourceSpan { start, end } }
        } else if "^*;=[],{}():-".contains(c) {
            chars.next();
            Token { tok: Tok::Punct(c), span: SourceSpan { start, end: start + 1 } }
        } else {
            return Err(ParseError {
                span: SourceSpan { start, end: start + c.len_utf8() },
                kind: ParseErrorKind::UnexpectedToken,
                message: format!("unexpected character {c:?}"),
            });
        };
        out.push(tok);
    }
    out.push(Token { tok: Tok::Eof, span: SourceSpan { start: src.len(), end: src.len() } });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) => format!("number {s}"),
        Tok::Word(w) => format!("{w:?}"),
        Tok::Punct(c) => format!("{c:?}"),
        Tok::Eof => "end of input".to_string(),
    }
}

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser { tokens: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek2(&self) -> &Tok {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, span: SourceSpan, kind: ParseErrorKind, message: String) -> PResult<T> {
        Err(ParseError { span, kind, message })
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        let t = self.peek();
        self.error(
            t.span,
            ParseErrorKind::UnexpectedToken,
            format!("expected {expected}, found {}", describe(&t.tok)),
        )
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(x) if x == w)
    }

    fn expect_punct(&mut self, c: char) -> PResult<SourceSpan> {
        if self.at_punct(c) {
            Ok(self.bump().span)
        } else {
            self.unexpected(&format!("{c:?}"))
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<SourceSpan> {
        if self.at_word(w) {
            Ok(self.bump().span)
        } else {
            self.unexpected(&format!("{w:?}"))
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        match self.peek().tok {
            Tok::Eof => Ok(()),
            _ => self.unexpected("end of input"),
        }
    }

    fn int(&mut self) -> PResult<(String, SourceSpan)> {
        match self.peek().tok.clone() {
            Tok::Int(s) => Ok((s, self.bump().span)),
            _ => self.unexpected("a number"),
        }
    }

    fn natural<T: std::str::FromStr>(&mut self, what: &str) -> PResult<(T, SourceSpan)> {
        let (s, span) = self.int()?;
        match s.parse() {
            Ok(v) => Ok((v, span)),
            Err(_) => self.error(span, ParseErrorKind::UnexpectedToken, format!("{what} {s} is out of range")),
        }
    }

    fn exponent(&mut self) -> PResult<Exponent> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Word(w) if w == "inf" => {
                self.bump();
                Ok(Exponent::Inf)
            }
            Tok::Int(s) => {
                self.bump();
                s.parse().map(Exponent::Finite).or_else(|_| {
                    self.error(t.span, ParseErrorKind::BadExponent, format!("exponent {s} does not fit in 64 bits"))
                })
            }
            Tok::Punct('-') => {
                self.bump();
                let end = match self.peek().tok {
                    Tok::Int(_) | Tok::Word(_) => self.bump().span.end,
                    _ => t.span.end,
                };
                self.error(
                    SourceSpan { start: t.span.start, end },
                    ParseErrorKind::BadExponent,
                    "exponents must be natural numbers or inf".to_string(),
                )
            }
            _ => self.unexpected("an exponent (a natural number or inf)"),
        }
    }

    fn rest_clause(&mut self) -> PResult<Exponent> {
        self.expect_word("rest")?;
        self.expect_punct('=')?;
        self.exponent()
    }

    fn sn(&mut self) -> PResult<(SupernaturalNumber, SourceSpan)> {
        let start = self.peek().span.start;
        let end = |p: &Parser| SourceSpan { start, end: p.tokens[p.pos.saturating_sub(1)].span.end };
        if self.at_word("rest") {
            let d = self.rest_clause()?;
            return Ok((SupernaturalNumber::constant(d), end(self)));
        }
        if matches!(&self.peek().tok, Tok::Int(s) if s == "1") && *self.peek2() != Tok::Punct('^') {
            self.bump();
            return Ok((SupernaturalNumber::one(), end(self)));
        }
        let mut factors: BTreeMap<u64, Exponent> = BTreeMap::new();
        loop {
            let (base, span) = match self.peek().tok.clone() {
                Tok::Int(s) => (s, self.bump().span),
                _ => return self.unexpected("a prime power p^e, \"1\" or \"rest\""),
            };
            let p = match base.parse::<u64>() {
                Ok(p) if p <= crate::primes::MAX_PRIME && is_prime(p) => p,
                _ => return self.error(span, ParseErrorKind::NonPrimeBase, format!("{base} is not a prime")),
            };
            if factors.contains_key(&p) {
                return self.error(span, ParseErrorKind::DuplicatePrime, format!("prime {p} appears twice"));
            }
            self.expect_punct('^')?;
            factors.insert(p, self.exponent()?);
            if !self.at_punct('*') {
                break;
            }
            self.bump();
        }
        let default = if self.at_punct(';') {
            self.bump();
            self.rest_clause()?
        } else {
            Exponent::ZERO
        };
        let n = SupernaturalNumber::new(default, factors).expect("bases were checked to be prime");
        Ok((n, end(self)))
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect_punct('[')?;
        let mut out = Vec::new();
        if self.at_punct(']') {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.at_punct(',') {
                self.bump();
            } else {
                self.expect_punct(']')?;
                return Ok(out);
            }
        }
    }

    fn group(&mut self) -> PResult<FgProfiniteGroup> {
        if matches!(&self.peek().tok, Tok::Int(s) if s == "0") {
            self.bump();
            return Ok(FgProfiniteGroup::trivial());
        }
        if !self.at_word("prod") {
            return self.unexpected("\"prod\" or \"0\"");
        }
        self.bump();
        if self.tokens[self.pos + 1].tok == Tok::Punct(']') {
            self.bump();
            return self.unexpected("at least one row");
        }
        let rows = self.list(|p| p.sn().map(|(n, _)| n))?;
        Ok(FgProfiniteGroup::new(rows))
    }

    /// `head "{" field, … "}"`, dispatching on field names; each name at most once.
    fn record(
        &mut self,
        head: &str,
        names: &[&str],
        mut field: impl FnMut(&mut Self, &str) -> PResult<()>,
    ) -> PResult<SourceSpan> {
        let start = self.expect_word(head)?.start;
        self.expect_punct('{')?;
        let mut seen: Vec<String> = Vec::new();
        while !self.at_punct('}') {
            let t = self.peek().clone();
            let name = match &t.tok {
                Tok::Word(w) if names.contains(&w.as_str()) => w.clone(),
                _ => return self.unexpected(&format!("one of the fields {}", names.join(", "))),
            };
            if seen.contains(&name) {
                return self.error(t.span, ParseErrorKind::UnexpectedToken, format!("field {name} given twice"));
            }
            self.bump();
            self.expect_punct(':')?;
            field(self, &name)?;
            seen.push(name);
            if !self.at_punct(',') {
                break;
            }
            self.bump();
        }
        let end = self.expect_punct('}')?.end;
        Ok(SourceSpan { start, end })
    }

    fn triple(&mut self) -> PResult<((usize, u64, i64), SourceSpan)> {
        let start = self.expect_punct('(')?.start;
        let (j, _) = self.natural::<usize>("row index")?;
        self.expect_punct(',')?;
        let (p, _) = self.natural::<u64>("prime")?;
        self.expect_punct(',')?;
        let negative = self.at_punct('-');
        if negative {
            self.bump();
        }
        let (v, _) = self.natural::<i64>("value")?;
        let end = self.expect_punct(')')?.end;
        Ok(((j, p, if negative { -v } else { v }), SourceSpan { start, end }))
    }
}

fn invalid(span: SourceSpan, message: String) -> ParseError {
    ParseError { span, kind: ParseErrorKind::InvalidValue, message }
}

fn whole<T>(src: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(src)?;
    let v = f(&mut p)?;
    p.expect_eof()?;
    Ok(v)
}

pub fn parse_sn(src: &str) -> PResult<SupernaturalNumber> {
    whole(src, |p| p.sn().map(|(n, _)| n))
}

pub fn parse_group(src: &str) -> PResult<FgProfiniteGroup> {
    whole(src, Parser::group)
}

pub fn parse_protorus(src: &str) -> PResult<ProtorusDescriptor> {
    whole(src, |p| {
        let (mut div, mut torus, mut sols) = (0usize, 0usize, Vec::new());
        let span = p.record("protorus", &["divisible", "torus", "solenoids"], |p, name| {
            match name {
                "divisible" => div = p.natural("rank")?.0,
                "torus" => torus = p.natural("rank")?.0,
                _ => sols = p.list(Parser::sn)?,
            }
            Ok(())
        })?;
        if let Some((_, s)) = sols.iter().find(|(c, _)| c.is_integer()) {
            return Err(invalid(*s, "solenoid characteristic is type-equivalent to 1 (that factor is a torus)".into()));
        }
        ProtorusDescriptor::new(div, torus, sols.into_iter().map(|(c, _)| c).collect())
            .map_err(|e| invalid(span, e.to_string()))
    })
}

pub fn parse_cd(src: &str) -> PResult<CdGroupDescriptor> {
    whole(src, |p| {
        let (mut div, mut free, mut types) = (0usize, 0usize, Vec::new());
        let span = p.record("cd", &["divisible", "free", "types"], |p, name| {
            match name {
                "divisible" => div = p.natural("rank")?.0,
                "free" => free = p.natural("rank")?.0,
                _ => types = p.list(Parser::sn)?,
            }
            Ok(())
        })?;
        for (t, s) in &types {
            if t.is_integer() || *t == SupernaturalNumber::all_inf() {
                return Err(invalid(*s, "types of ℤ and ℚ belong in the free and divisible ranks".into()));
            }
        }
        CdGroupDescriptor::new(div, free, types.into_iter().map(|(t, _)| t).collect())
            .map_err(|e| invalid(span, e.to_string()))
    })
}

pub fn parse_lattice(src: &str) -> PResult<LatticeElement> {
    whole(src, |p| {
        let mut base = None;
        let (mut free, mut torsion) = (Vec::new(), Vec::new());
        let span = p.record("lattice", &["base", "free", "torsion"], |p, name| {
            match name {
                "base" => base = Some(p.group()?),
                "free" => free = p.list(Parser::triple)?,
                _ => {
                    for ((j, q, v), s) in p.list(Parser::triple)? {
                        if v < 0 {
                            return Err(invalid(s, "torsion levels are natural numbers".into()));
                        }
                        torsion.push(((j, q, v as u64), s));
                    }
                }
            }
            Ok(())
        })?;
        let base = base.ok_or_else(|| invalid(span, "missing field base".into()))?;
        LatticeElement::from_base(&base).map_err(|e| invalid(span, e.to_string()))?;
        for (t, s) in &free {
            LatticeElement::from_parts(&base, &[*t], &[]).map_err(|e| invalid(*s, e.to_string()))?;
        }
        for (t, s) in &torsion {
            LatticeElement::from_parts(&base, &[], &[*t]).map_err(|e| invalid(*s, e.to_string()))?;
        }
        let free: Vec<_> = free.into_iter().map(|(t, _)| t).collect();
        let torsion: Vec<_> = torsion.into_iter().map(|(t, _)| t).collect();
        LatticeElement::from_parts(&base, &free, &torsion).map_err(|e| invalid(span, e.to_string()))
    })
}

pub fn format_sn(n: &SupernaturalNumber) -> String {
    if n.is_one() {
        return "1".to_string();
    }
    let factors: Vec<String> = n.exceptions().iter().map(|(p, e)| format!("{p}^{e}")).collect();
    let factors = factors.join(" * ");
    match (factors.is_empty(), n.default_exponent()) {
        (_, d) if d.is_zero() => factors,
        (true, d) => format!("rest = {d}"),
        (false, d) => format!("{factors} ; rest = {d}"),
    }
}

fn format_list(items: impl IntoIterator<Item = String>) -> String {
    format!("[{}]", items.into_iter().collect::<Vec<_>>().join(", "))
}

/// Rows exactly as stored; standardize first for the canonical text.
pub fn format_group(g: &FgProfiniteGroup) -> String {
    if g.rows().is_empty() {
        return "0".to_string();
    }
    format!("prod{}", format_list(g.rows().iter().map(format_sn)))
}

pub fn format_protorus(k: &ProtorusDescriptor) -> String {
    format!(
        "protorus{{divisible: {}, torus: {}, solenoids: {}}}",
        k.divisible_rank(),
        k.torus_rank(),
        format_list(k.solenoids().iter().map(format_sn))
    )
}

pub fn format_cd(a: &CdGroupDescriptor) -> String {
    format!(
        "cd{{divisible: {}, free: {}, types: {}}}",
        a.divisible_rank(),
        a.free_rank(),
        format_list(a.types().iter().map(format_sn))
    )
}

pub fn format_lattice(x: &LatticeElement) -> String {
    let triple = |(j, p, v): (usize, u64, String)| format!("({j}, {p}, {v})");
    format!(
        "lattice{{base: {}, free: {}, torsion: {}}}",
        format_group(x.base()),
        format_list(x.free_offsets().into_iter().map(|(j, p, a)| triple((j, p, a.to_string())))),
        format_list(x.torsion_levels().into_iter().map(|(j, p, b)| triple((j, p, b.to_string())))),
    )
}

/// Kernel rows in `K(n)` notation: `K(n) = ∏_p p^{n_p} Ẑ_p`, with `p^inf`
/// marking a zero component.
pub fn format_kernel(k: &KernelDescriptor) -> String {
    if k.rows().is_empty() {
        return "ker[]".to_string();
    }
    let rows = k.rows().iter().map(|row| {
        let levels = row.map(|f| match f {
            KernelFactor::Free(n) => Exponent::Finite(*n),
            KernelFactor::Zero => Exponent::Inf,
        });
        format!("K({})", format_sn(&SupernaturalNumber::from_map(levels)))
    });
    format!("ker{}", format_list(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supernatural::Exponent::Finite as F;
    use crate::supernatural::INF;
    use proptest::prelude::*;

    fn sn(default: Exponent, ex: &[(u64, Exponent)]) -> SupernaturalNumber {
        SupernaturalNumber::new(default, ex.iter().copied()).unwrap()
    }

    fn kind(r: PResult<impl fmt::Debug>) -> ParseErrorKind {
        r.unwrap_err().kind
    }

    #[test]
    fn parse_sn_examples() {
        assert_eq!(parse_sn("1").unwrap(), SupernaturalNumber::one());
        assert_eq!(parse_sn("2^inf * 3^2").unwrap(), sn(F(0), &[(2, INF), (3, F(2))]));
        assert_eq!(parse_sn("2^1 ; rest = 1").unwrap(), sn(F(1), &[]));
        assert_eq!(parse_sn("  rest=inf ").unwrap(), SupernaturalNumber::all_inf());
        assert_eq!(parse_sn("1^2 ; rest = 0").unwrap_err().kind, ParseErrorKind::NonPrimeBase);
    }

    #[test]
    fn parse_sn_errors_carry_spans() {
        let cases = [
            ("4^2", ParseErrorKind::NonPrimeBase, 0, 1),
            ("2^1 * 3^1 * 2^4", ParseErrorKind::DuplicatePrime, 12, 13),
            ("2^-1", ParseErrorKind::BadExponent, 2, 4),
            ("2^99999999999999999999", ParseErrorKind::BadExponent, 2, 22),
            ("2^", ParseErrorKind::UnexpectedToken, 2, 2),
            ("2^1 rest = 3", ParseErrorKind::UnexpectedToken, 4, 8),
            ("2^1 ; 3", ParseErrorKind::UnexpectedToken, 6, 7),
            ("2 ∞", ParseErrorKind::UnexpectedToken, 2, 5),
            ("", ParseErrorKind::UnexpectedToken, 0, 0),
            ("18446744073709551615^1", ParseErrorKind::NonPrimeBase, 0, 20),
        ];
        for (src, k, start, end) in cases {
            let e = parse_sn(src).unwrap_err();
            assert_eq!((e.kind, e.span.start, e.span.end), (k, start, end), "{src:?}: {e}");
            assert!(e.span.start <= e.span.end && e.span.end <= src.len());
        }
    }

    #[test]
    fn parse_group_examples() {
        assert_eq!(parse_group("0").unwrap(), FgProfiniteGroup::trivial());
        let g = parse_group("prod[2^inf ; rest=0, 3^1]").unwrap();
        assert_eq!(g.rows(), &[sn(F(0), &[(2, INF)]), sn(F(0), &[(3, F(1))])]);
        assert_eq!(kind(parse_group("prod[]")), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind(parse_group("prod[2^1,]")), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind(parse_group("prod[6^1]")), ParseErrorKind::NonPrimeBase);
        assert_eq!(kind(parse_group("0 0")), ParseErrorKind::UnexpectedToken);
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_sn(&SupernaturalNumber::one()), "1");
        assert_eq!(format_sn(&sn(F(0), &[(2, INF)])), "2^inf");
        assert_eq!(format_sn(&sn(INF, &[(3, F(2))])), "3^2 ; rest = inf");
        assert_eq!(format_sn(&sn(F(1), &[])), "rest = 1");
        assert_eq!(format_group(&FgProfiniteGroup::trivial()), "0");
        let zhat = FgProfiniteGroup::zhat_power(1);
        assert_eq!(format_group(&zhat.quotient_mod_k(12).unwrap()), "prod[2^2 * 3^1]");
        assert_eq!(format_kernel(&zhat.kernel_descriptor()), "ker[K(rest = inf)]");
    }

    #[test]
    fn descriptor_round_trips() {
        let k = ProtorusDescriptor::new(1, 2, vec![sn(F(0), &[(2, INF)]), sn(F(1), &[])]).unwrap();
        assert_eq!(parse_protorus(&format_protorus(&k)).unwrap(), k);
        assert_eq!(parse_protorus("protorus{torus: 3}").unwrap(), ProtorusDescriptor::torus(3));
        let e = parse_protorus("protorus{solenoids: [2^inf, 3^4]}").unwrap_err();
        assert_eq!((e.kind, e.span), (ParseErrorKind::InvalidValue, SourceSpan { start: 28, end: 31 }));
        assert_eq!(kind(parse_protorus("protorus{torus: 1, torus: 2}")), ParseErrorKind::UnexpectedToken);

        let a = CdGroupDescriptor::new(0, 1, vec![sn(INF, &[(5, F(0))])]).unwrap();
        assert_eq!(parse_cd(&format_cd(&a)).unwrap(), a);
        assert_eq!(kind(parse_cd("cd{types: [rest = inf]}")), ParseErrorKind::InvalidValue);

        let base = FgProfiniteGroup::new(vec![sn(F(1), &[(2, INF)])]);
        let x = LatticeElement::from_parts(&base, &[(0, 2, -3)], &[(0, 5, 4)]).unwrap();
        let text = format_lattice(&x);
        assert_eq!(text, "lattice{base: prod[2^inf ; rest = 1], free: [(0, 2, -3)], torsion: [(0, 5, 4)]}");
        assert_eq!(parse_lattice(&text).unwrap(), x);
        assert_eq!(kind(parse_lattice("lattice{base: prod[2^inf], free: [(0, 3, 1)]}")), ParseErrorKind::InvalidValue);
        assert_eq!(kind(parse_lattice("lattice{free: []}")), ParseErrorKind::InvalidValue);
    }

    #[test]
    fn render_points_at_the_span() {
        let src = "prod[2^1, 4^1]";
        let e = parse_group(src).unwrap_err();
        let r = e.render(src, false);
        assert!(r.contains("\n  |           ^\n"), "{r}");
    }

    proptest! {
        #[test]
        fn parse_inverts_format(n in crate::supernatural::tests::arb_sn()) {
            let text = format_sn(&n);
            prop_assert_eq!(parse_sn(&text).unwrap(), n);
            prop_assert_eq!(format_sn(&parse_sn(&text).unwrap()), text);
        }

        #[test]
        fn group_text_round_trips(g in crate::profinite::tests::arb_group()) {
            let s = g.standardize();
            let text = format_group(&s);
            let back = parse_group(&text).unwrap();
            prop_assert_eq!(back.rows(), s.rows());
        }

        #[test]
        fn spans_stay_in_bounds(src in "[0-9a-z ^*;=\\[\\],{}():-]{0,24}") {
            if let Err(e) = parse_group(&src) {
                prop_assert!(e.span.start <= e.span.end && e.span.end <= src.len());
            }
            if let Err(e) = parse_sn(&src) {
                prop_assert!(e.span.start <= e.span.end && e.span.end <= src.len());
            }
        }
    }
}
