//! Lambda-S surface syntax:
//!
//! ```text
//! %lambda-s
//! def f = lam x: Bool. x;
//! main = f (1/sqrt2 * true + 1/sqrt2 * false);
//! ```
//!
//! Types are `Bool`, `S(A)` and `A => B` (right-associative).

use std::collections::HashSet;

use crate::parser::{ParseOptions, Parser, Pos, SyntaxError, Tok};

use super::{s_substitute, STerm, SType};

const KEYWORDS: &[&str] = &["lam", "true", "false", "Bool", "S", "def", "main"];
pub const HEADER: &str = "%lambda-s";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SSourceFile {
    pub defs: Vec<(String, STerm)>,
    pub main: Option<STerm>,
}

/// Whether the first non-blank, non-comment line is the `%lambda-s` header.
pub fn has_header(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with("--"))
        .is_some_and(|l| l == HEADER)
}

/// Blanks out the header line so positions in the rest stay put.
fn strip_header(text: &str) -> String {
    let mut done = false;
    text.lines()
        .map(|l| {
            if !done && l.trim() == HEADER {
                done = true;
                String::new()
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn parse_stype(text: &str) -> Result<SType, SyntaxError> {
    let mut p = Parser::new(text, ParseOptions::default())?;
    let a = stype(&mut p)?;
    p.expect_eof()?;
    Ok(a)
}

pub fn parse_sterm(text: &str) -> Result<STerm, SyntaxError> {
    let mut p = Parser::new(text, ParseOptions::default())?;
    let t = sterm(&mut p)?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a Lambda-S source file; the header is optional here.
pub fn parse_s_source(text: &str) -> Result<SSourceFile, SyntaxError> {
    let body = if has_header(text) { strip_header(text) } else { text.to_string() };
    let mut p = Parser::new(&body, ParseOptions::default())?;
    let mut file = SSourceFile::default();
    let mut names: Vec<(String, Pos)> = Vec::new();
    while p.is_kw("def") {
        p.bump();
        let pos = p.pos();
        let name = p.ident(KEYWORDS)?;
        if names.iter().any(|(n, _)| *n == name) {
            return Err(p.error_at(pos, format!("duplicate definition `{name}`")));
        }
        p.expect(Tok::Eq)?;
        let t = sterm(&mut p)?;
        p.expect(Tok::Semi)?;
        if t.free_vars().contains(&name) {
            return Err(p.error_at(pos, format!("definition `{name}` refers to itself")));
        }
        names.push((name.clone(), pos));
        let t = inline(t, &file.defs);
        file.defs.push((name, t));
    }
    if p.is_kw("main") {
        p.bump();
        p.expect(Tok::Eq)?;
        let t = sterm(&mut p)?;
        if *p.peek() == Tok::Semi {
            p.bump();
        }
        file.main = Some(inline(t, &file.defs));
    }
    p.expect_eof()?;
    for (k, (name, t)) in file.defs.iter().enumerate() {
        let free = t.free_vars();
        if let Some((later, _)) = names[k + 1..].iter().find(|(n, _)| free.contains(n)) {
            return Err(p.error_at(names[k].1, format!("definition `{name}` refers to later definition `{later}`")));
        }
    }
    Ok(file)
}

fn inline(mut t: STerm, defs: &[(String, STerm)]) -> STerm {
    let free: HashSet<String> = t.free_vars();
    for (name, d) in defs.iter().rev() {
        if free.contains(name) {
            t = s_substitute(&t, name, d);
        }
    }
    t
}

fn stype(p: &mut Parser) -> Result<SType, SyntaxError> {
    p.nested(stype_inner)
}

fn stype_inner(p: &mut Parser) -> Result<SType, SyntaxError> {
    let lhs = stype_atom(p)?;
    if *p.peek() == Tok::FatArrow {
        p.bump();
        return Ok(SType::arrow(lhs, stype(p)?));
    }
    Ok(lhs)
}

fn stype_atom(p: &mut Parser) -> Result<SType, SyntaxError> {
    p.nested(stype_atom_inner)
}

fn stype_atom_inner(p: &mut Parser) -> Result<SType, SyntaxError> {
    if p.is_kw("Bool") {
        p.bump();
        return Ok(SType::Bool);
    }
    if p.is_kw("S") {
        p.bump();
        p.expect(Tok::LParen)?;
        let a = stype(p)?;
        p.expect(Tok::RParen)?;
        return Ok(SType::span(a));
    }
    if *p.peek() == Tok::LParen {
        p.bump();
        let a = stype(p)?;
        p.expect(Tok::RParen)?;
        return Ok(a);
    }
    Err(p.unexpected("a type"))
}

fn sterm(p: &mut Parser) -> Result<STerm, SyntaxError> {
    let mut acc = scaled(p)?;
    while *p.peek() == Tok::Plus {
        p.bump();
        acc = STerm::sum(acc, scaled(p)?);
    }
    Ok(acc)
}

fn scaled(p: &mut Parser) -> Result<STerm, SyntaxError> {
    p.nested(scaled_inner)
}

fn scaled_inner(p: &mut Parser) -> Result<STerm, SyntaxError> {
    if let Some(a) = p.paren_scalar() {
        return Ok(STerm::scale(a, scaled(p)?));
    }
    if p.at_scalar() {
        let a = p.scalar()?;
        p.expect(Tok::Star)?;
        return Ok(STerm::scale(a, scaled(p)?));
    }
    app(p)
}

fn starts_factor(p: &Parser) -> bool {
    match p.peek() {
        Tok::Ident(x) => !matches!(x.as_str(), "def" | "main" | "Bool" | "S"),
        Tok::LParen => true,
        _ => false,
    }
}

fn app(p: &mut Parser) -> Result<STerm, SyntaxError> {
    let mut acc = factor(p)?;
    while starts_factor(p) {
        acc = STerm::app(acc, factor(p)?);
    }
    Ok(acc)
}

fn factor(p: &mut Parser) -> Result<STerm, SyntaxError> {
    p.nested(factor_inner)
}

fn factor_inner(p: &mut Parser) -> Result<STerm, SyntaxError> {
    match p.peek().clone() {
        Tok::LParen => {
            p.bump();
            let t = sterm(p)?;
            p.expect(Tok::RParen)?;
            Ok(t)
        }
        Tok::Ident(x) => match x.as_str() {
            "true" => {
                p.bump();
                Ok(STerm::True)
            }
            "false" => {
                p.bump();
                Ok(STerm::False)
            }
            "lam" => {
                p.bump();
                let x = p.ident(KEYWORDS)?;
                p.expect(Tok::Colon)?;
                let ty = stype(p)?;
                p.expect(Tok::Dot)?;
                Ok(STerm::lam(x, ty, sterm(p)?))
            }
            _ => Ok(STerm::Var(p.ident(KEYWORDS)?)),
        },
        _ => Err(p.unexpected("a term")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn types() {
        assert_eq!(parse_stype("Bool => S(Bool) => Bool").unwrap(), SType::arrow(SType::Bool, SType::arrow(SType::span(SType::Bool), SType::Bool)));
        assert_eq!(parse_stype("(Bool => Bool) => Bool").unwrap().to_string(), "(Bool => Bool) => Bool");
        assert!(parse_stype("S Bool").is_err());
    }

    #[test]
    fn terms() {
        let t = parse_sterm("(lam x: Bool. x) (1/sqrt2 * true + 1/sqrt2 * false)").unwrap();
        let h = Scalar::FRAC_1_SQRT_2;
        let want = STerm::app(
            STerm::lam("x", SType::Bool, STerm::var("x")),
            STerm::sum(STerm::scale(h, STerm::True), STerm::scale(h, STerm::False)),
        );
        assert_eq!(t, want);
        assert_eq!(parse_sterm(&t.to_string()).unwrap(), t);
        assert_eq!(parse_sterm("(0.5+1i) * true").unwrap(), STerm::scale(Scalar::new(0.5, 1.0), STerm::True));
    }

    #[test]
    fn source_with_header() {
        let src = "-- example\n%lambda-s\ndef id = lam x: Bool. x;\nmain = id true;\n";
        assert!(has_header(src));
        let file = parse_s_source(src).unwrap();
        assert_eq!(file.defs.len(), 1);
        assert_eq!(file.main.unwrap(), STerm::app(STerm::lam("x", SType::Bool, STerm::var("x")), STerm::True));
        assert!(!has_header("main = star(1)"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_s_source("%lambda-s\nmain = lam x Bool. x").unwrap_err();
        assert_eq!((e.line, e.col), (2, 14));
        assert!(parse_s_source("def a = true; def a = false;").is_err());
        assert!(parse_s_source("def a = b; def b = true;").is_err());
        let deep = format!("{}true{}", "(".repeat(1000), ")".repeat(1000));
        assert!(parse_sterm(&deep).unwrap_err().message.contains("nesting"));
    }
}
