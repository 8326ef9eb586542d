//! Concrete syntax.
//!
//! ```text
//! prop   ::= prop1 ("-o" prop)?
//! prop1  ::= atom (("odot" | "(+)" | "&") atom)*      one connective per level
//! atom   ::= "T" | "Q" "^" nat | "(" prop ")"
//! term   ::= scaled ("+" scaled)*
//! scaled ::= scalar "*" scaled | app
//! app    ::= factor factor*
//! factor ::= var | "star(" scalar ")" | "[" term "," term "]" | "<" term "," term ">"
//!          | "inl" factor | "inr" factor | "inlr" factor factor
//!          | "proj1" factor | "proj2" factor | "lam" var ":" prop "." term
//!          | "smatch" term "{" var "=>" term "|" var "=>" term "}"
//!          | "pmatch" term "{" "inl" var "=>" term "|" "inr" var "=>" term "}"
//!          | "(" term ")"
//! file   ::= ("def" var "=" term ";")* ("main" "=" term ";"?)?
//! ```
//!
//! Scalars are `a`, `bi`, `a+bi`, `a-bi` with an optional leading `-`;
//! `1/sqrt2` is a literal. A scalar in front of `*` may be parenthesized.
//! `--` starts a line comment.

mod lexer;

use std::collections::HashSet;

use thiserror::Error;

pub use lexer::{tokenize, Pos, Tok, Token};

use crate::scalar::Scalar;
use crate::syntax::{qpow, substitute, Prop, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Parser switches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept `(+)`, `&` and their proof terms.
    pub extensions: bool,
}

impl ParseOptions {
    pub fn with_extensions() -> Self {
        ParseOptions { extensions: true }
    }
}

const KEYWORDS: &[&str] = &[
    "T", "Q", "odot", "lam", "smatch", "pmatch", "inl", "inr", "inlr", "proj1", "proj2", "star", "def", "main",
];

/// Largest exponent accepted in `Q^n`.
pub const MAX_QPOW: usize = 16;
/// Deepest syntactic nesting accepted before reporting an error.
pub const MAX_NESTING: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct Definition {
    pub name: String,
    /// Body with earlier definitions inlined.
    pub term: Term,
}

/// A parsed `.lsq` file. Definitions are already inlined into later
/// definitions and into `main`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SourceFile {
    pub defs: Vec<Definition>,
    pub main: Option<Term>,
}

pub fn parse_prop(text: &str) -> Result<Prop, SyntaxError> {
    parse_prop_with(text, ParseOptions::with_extensions())
}

pub fn parse_prop_with(text: &str, opts: ParseOptions) -> Result<Prop, SyntaxError> {
    let mut p = Parser::new(text, opts)?;
    let prop = p.prop()?;
    p.expect_eof()?;
    Ok(prop)
}

/// Parses a term with extensions enabled.
pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    parse_term_with(text, ParseOptions::with_extensions())
}

pub fn parse_term_with(text: &str, opts: ParseOptions) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text, opts)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_source(text: &str, opts: ParseOptions) -> Result<SourceFile, SyntaxError> {
    let mut p = Parser::new(text, opts)?;
    p.source()
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    i: usize,
    opts: ParseOptions,
    depth: usize,
}

impl Parser {
    pub(crate) fn new(text: &str, opts: ParseOptions) -> Result<Self, SyntaxError> {
        Ok(Parser { toks: tokenize(text)?, i: 0, opts, depth: 0 })
    }

    /// Runs `f` one nesting level deeper.
    pub(crate) fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T, SyntaxError>) -> Result<T, SyntaxError> {
        if self.depth >= MAX_NESTING {
            return Err(self.error_at(self.pos(), format!("nesting deeper than {MAX_NESTING}")));
        }
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    pub(crate) fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    pub(crate) fn error_at(&self, pos: Pos, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line: pos.line, col: pos.col, message: message.into() }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> SyntaxError {
        self.error_at(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub(crate) fn expect_eof(&self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub(crate) fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == kw)
    }

    pub(crate) fn expect_kw(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    pub(crate) fn ident(&mut self, keywords: &[&str]) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(x) if !keywords.contains(&x.as_str()) => {
                self.bump();
                Ok(x)
            }
            _ => Err(self.unexpected("a variable name")),
        }
    }

    fn require_ext(&self, what: &str) -> Result<(), SyntaxError> {
        if self.opts.extensions {
            Ok(())
        } else {
            Err(self.error_at(self.pos(), format!("{what} requires extensions (--ext)")))
        }
    }

    /// Whether a scalar literal starts here.
    pub(crate) fn at_scalar(&self) -> bool {
        matches!(self.peek(), Tok::Num { .. }) || (*self.peek() == Tok::Minus && matches!(self.peek_at(1), Tok::Num { .. }))
    }

    /// `["-"] num ["i"] [("+"|"-") num "i"]`
    pub(crate) fn scalar(&mut self) -> Result<Scalar, SyntaxError> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let Tok::Num { value, imag } = self.peek().clone() else {
            return Err(self.unexpected("a scalar"));
        };
        self.bump();
        let first = if neg { -value } else { value };
        if imag {
            return Ok(Scalar::new(0.0, first));
        }
        let sign = match self.peek() {
            Tok::Plus => 1.0,
            Tok::Minus => -1.0,
            _ => return Ok(Scalar::real(first)),
        };
        if let Tok::Num { value: im, imag: true } = self.peek_at(1).clone() {
            self.bump();
            self.bump();
            return Ok(Scalar::new(first, sign * im));
        }
        Ok(Scalar::real(first))
    }

    pub(crate) fn prop(&mut self) -> Result<Prop, SyntaxError> {
        self.nested(|p| p.prop_inner())
    }

    fn prop_inner(&mut self) -> Result<Prop, SyntaxError> {
        let lhs = self.prop1()?;
        if *self.peek() == Tok::Lolli {
            self.bump();
            let rhs = self.prop()?;
            return Ok(Prop::lolli(lhs, rhs));
        }
        Ok(lhs)
    }

    fn prop1(&mut self) -> Result<Prop, SyntaxError> {
        let mut acc = self.prop_atom()?;
        let mut connective: Option<Tok> = None;
        loop {
            let tok = self.peek().clone();
            let is_odot = matches!(&tok, Tok::Ident(x) if x == "odot");
            if !(is_odot || tok == Tok::OPlus || tok == Tok::Amp) {
                return Ok(acc);
            }
            if tok != Tok::Ident("odot".into()) {
                self.require_ext("`(+)` and `&`")?;
            }
            if let Some(prev) = &connective {
                if *prev != tok {
                    return Err(self.error_at(self.pos(), "mixed connectives need parentheses"));
                }
            }
            connective = Some(tok.clone());
            self.bump();
            let rhs = self.prop_atom()?;
            acc = match tok {
                Tok::OPlus => Prop::plus(acc, rhs),
                Tok::Amp => Prop::with(acc, rhs),
                _ => Prop::odot(acc, rhs),
            };
        }
    }

    fn prop_atom(&mut self) -> Result<Prop, SyntaxError> {
        self.nested(|p| p.prop_atom_inner())
    }

    fn prop_atom_inner(&mut self) -> Result<Prop, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(x) if x == "T" => {
                self.bump();
                Ok(Prop::Top)
            }
            Tok::Ident(x) if x == "Q" => {
                self.bump();
                self.expect(Tok::Caret)?;
                let pos = self.pos();
                match self.bump() {
                    Tok::Num { value, imag: false } if value.fract() == 0.0 && value >= 0.0 && value <= MAX_QPOW as f64 => {
                        Ok(qpow(value as usize))
                    }
                    _ => Err(self.error_at(pos, format!("expected an exponent between 0 and {MAX_QPOW}"))),
                }
            }
            Tok::LParen => {
                self.bump();
                let p = self.prop()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            _ => Err(self.unexpected("a proposition")),
        }
    }

    pub(crate) fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = self.scaled()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.scaled()?;
            acc = Term::sum(acc, rhs);
        }
        Ok(acc)
    }

    /// `(scalar) *` lookahead: returns the scalar and consumes through `*`
    /// when the parenthesized form is present; otherwise leaves the cursor.
    pub(crate) fn paren_scalar(&mut self) -> Option<Scalar> {
        if *self.peek() != Tok::LParen {
            return None;
        }
        let save = self.i;
        self.bump();
        if self.at_scalar() {
            if let Ok(a) = self.scalar() {
                if *self.peek() == Tok::RParen && *self.peek_at(1) == Tok::Star {
                    self.bump();
                    self.bump();
                    return Some(a);
                }
            }
        }
        self.i = save;
        None
    }

    fn scaled(&mut self) -> Result<Term, SyntaxError> {
        self.nested(|p| p.scaled_inner())
    }

    fn scaled_inner(&mut self) -> Result<Term, SyntaxError> {
        if let Some(a) = self.paren_scalar() {
            return Ok(Term::scale(a, self.scaled()?));
        }
        if self.at_scalar() {
            let a = self.scalar()?;
            self.expect(Tok::Star)?;
            return Ok(Term::scale(a, self.scaled()?));
        }
        self.app()
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Tok::Ident(x) => !matches!(x.as_str(), "def" | "main" | "T" | "Q" | "odot"),
            Tok::LBracket | Tok::LAngle | Tok::LParen => true,
            _ => false,
        }
    }

    fn app(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = self.factor()?;
        while self.starts_factor() {
            let arg = self.factor()?;
            acc = Term::app(acc, arg);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term, SyntaxError> {
        self.nested(|p| p.factor_inner())
    }

    fn factor_inner(&mut self) -> Result<Term, SyntaxError> {
        let kw = match self.peek() {
            Tok::Ident(x) => x.clone(),
            Tok::LBracket => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RBracket)?;
                return Ok(Term::pair(a, b));
            }
            Tok::LAngle => {
                self.require_ext("`<t, r>`")?;
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RAngle)?;
                return Ok(Term::with_pair(a, b));
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                return Ok(t);
            }
            _ => return Err(self.unexpected("a term")),
        };
        match kw.as_str() {
            "star" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.scalar()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Star(a))
            }
            "lam" => {
                self.bump();
                let x = self.ident(KEYWORDS)?;
                self.expect(Tok::Colon)?;
                let ty = self.prop()?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(Term::lam(x, ty, body))
            }
            "smatch" => {
                self.bump();
                let s = self.term()?;
                self.expect(Tok::LBrace)?;
                let x = self.ident(KEYWORDS)?;
                self.expect(Tok::FatArrow)?;
                let r = self.term()?;
                self.expect(Tok::Pipe)?;
                let y = self.ident(KEYWORDS)?;
                self.expect(Tok::FatArrow)?;
                let u = self.term()?;
                self.expect(Tok::RBrace)?;
                Ok(Term::match_sup(s, x, r, y, u))
            }
            "pmatch" => {
                self.require_ext("`pmatch`")?;
                self.bump();
                let s = self.term()?;
                self.expect(Tok::LBrace)?;
                self.expect_kw("inl")?;
                let x = self.ident(KEYWORDS)?;
                self.expect(Tok::FatArrow)?;
                let r = self.term()?;
                self.expect(Tok::Pipe)?;
                self.expect_kw("inr")?;
                let y = self.ident(KEYWORDS)?;
                self.expect(Tok::FatArrow)?;
                let u = self.term()?;
                self.expect(Tok::RBrace)?;
                Ok(Term::case_plus(s, x, r, y, u))
            }
            "inl" | "inr" | "proj1" | "proj2" => {
                self.require_ext(&format!("`{kw}`"))?;
                self.bump();
                let a = self.factor()?;
                Ok(match kw.as_str() {
                    "inl" => Term::inl(a),
                    "inr" => Term::inr(a),
                    "proj1" => Term::proj1(a),
                    _ => Term::proj2(a),
                })
            }
            "inlr" => {
                self.require_ext("`inlr`")?;
                self.bump();
                let a = self.factor()?;
                let b = self.factor()?;
                Ok(Term::inlr(a, b))
            }
            _ => Ok(Term::Var(self.ident(KEYWORDS)?)),
        }
    }

    fn source(&mut self) -> Result<SourceFile, SyntaxError> {
        let mut file = SourceFile::default();
        let mut names: Vec<(String, Pos)> = Vec::new();
        while self.is_kw("def") {
            self.bump();
            let pos = self.pos();
            let name = self.ident(KEYWORDS)?;
            if names.iter().any(|(n, _)| *n == name) {
                return Err(self.error_at(pos, format!("duplicate definition `{name}`")));
            }
            self.expect(Tok::Eq)?;
            let body = self.term()?;
            self.expect(Tok::Semi)?;
            let free = body.free_vars();
            if free.contains(&name) {
                return Err(self.error_at(pos, format!("definition `{name}` refers to itself")));
            }
            names.push((name.clone(), pos));
            file.defs.push(Definition { name, term: inline(body, &file.defs) });
        }
        if self.is_kw("main") {
            self.bump();
            self.expect(Tok::Eq)?;
            let body = self.term()?;
            if *self.peek() == Tok::Semi {
                self.bump();
            }
            file.main = Some(inline(body, &file.defs));
        }
        self.expect_eof()?;
        // A definition may only mention earlier ones.
        for (k, def) in file.defs.iter().enumerate() {
            let free = def.term.free_vars();
            if let Some((later, _)) = names[k + 1..].iter().find(|(n, _)| free.contains(n)) {
                let pos = names[k].1;
                return Err(self.error_at(pos, format!("definition `{}` refers to later definition `{later}`", def.name)));
            }
        }
        Ok(file)
    }
}

fn inline(mut body: Term, defs: &[Definition]) -> Term {
    let free: HashSet<String> = body.free_vars();
    for def in defs.iter().rev() {
        if free.contains(&def.name) {
            body = substitute(&body, &def.name, &def.term);
        }
    }
    body
}
