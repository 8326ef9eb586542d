use std::fmt;

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Unsigned decimal literal; `imag` when suffixed with `i`.
    Num { value: f64, imag: bool },
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Semi,
    Plus,
    Minus,
    Star,
    Caret,
    Pipe,
    Eq,
    FatArrow,
    /// `-o`
    Lolli,
    /// `(+)`
    OPlus,
    Amp,
    /// `=>` at the type level of Lambda-S shares `FatArrow`.
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(x) => return write!(f, "`{x}`"),
            Tok::Num { value, imag } => return write!(f, "`{value}{}`", if *imag { "i" } else { "" }),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LAngle => "`<`",
            Tok::RAngle => "`>`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Colon => "`:`",
            Tok::Semi => "`;`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Caret => "`^`",
            Tok::Pipe => "`|`",
            Tok::Eq => "`=`",
            Tok::FatArrow => "`=>`",
            Tok::Lolli => "`-o`",
            Tok::OPlus => "`(+)`",
            Tok::Amp => "`&`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Lexer<'a> {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl Lexer<'_> {
    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.i + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(k, c)| self.peek(k) == Some(c))
    }

    fn error(&self, pos: Pos, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line: pos.line, col: pos.col, message: message.into() }
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek(0) {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('-') if self.peek(1) == Some('-') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }

    fn number(&mut self, pos: Pos) -> Result<Tok, SyntaxError> {
        let start = self.i;
        while self.peek(0).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.peek(0) == Some('.') && self.peek(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            while self.peek(0).is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
            }
        }
        if matches!(self.peek(0), Some('e' | 'E')) {
            let sign = usize::from(matches!(self.peek(1), Some('+' | '-')));
            if self.peek(1 + sign).is_some_and(|c| c.is_ascii_digit()) {
                for _ in 0..=sign {
                    self.bump();
                }
                while self.peek(0).is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
            }
        }
        let text: String = self.chars[start..self.i].iter().collect();
        let mut value: f64 = text.parse().map_err(|_| self.error(pos, format!("malformed number `{text}`")))?;
        if !value.is_finite() {
            return Err(self.error(pos, format!("number `{text}` is out of range")));
        }
        if text == "1" && self.starts_with("/sqrt2") && !self.peek(6).is_some_and(|c| ident_continue(c) && c != 'i') {
            for _ in 0..6 {
                self.bump();
            }
            value = std::f64::consts::FRAC_1_SQRT_2;
        }
        let imag = self.peek(0) == Some('i') && !self.peek(1).is_some_and(ident_continue);
        if imag {
            self.bump();
        } else if self.peek(0).is_some_and(ident_continue) {
            return Err(self.error(self.pos(), "unexpected character after number"));
        }
        Ok(Tok::Num { value, imag })
    }

    fn next_token(&mut self) -> Result<Token, SyntaxError> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(c) = self.peek(0) else {
            return Ok(Token { tok: Tok::Eof, pos });
        };
        let tok = if ident_start(c) {
            let start = self.i;
            while self.peek(0).is_some_and(ident_continue) {
                self.bump();
            }
            Tok::Ident(self.chars[start..self.i].iter().collect())
        } else if c.is_ascii_digit() {
            self.number(pos)?
        } else if self.starts_with("(+)") {
            self.i += 3;
            self.col += 3;
            Tok::OPlus
        } else if self.starts_with("=>") {
            self.i += 2;
            self.col += 2;
            Tok::FatArrow
        } else if self.starts_with("-o") && !self.peek(2).is_some_and(ident_continue) {
            self.i += 2;
            self.col += 2;
            Tok::Lolli
        } else {
            self.bump();
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '<' => Tok::LAngle,
                '>' => Tok::RAngle,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '|' => Tok::Pipe,
                '=' => Tok::Eq,
                '&' => Tok::Amp,
                other => return Err(self.error(pos, format!("unexpected character {other:?}"))),
            }
        };
        Ok(Token { tok, pos })
    }
}

/// Splits source text into tokens; the last token is always `Eof`.
pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut lx = Lexer { chars: src.chars().collect(), i: 0, line: 1, col: 1, _src: src };
    let mut out = Vec::new();
    loop {
        let t = lx.next_token()?;
        let done = t.tok == Tok::Eof;
        out.push(t);
        if done {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn operators() {
        assert_eq!(
            toks("T -o T (+) T -- comment\n&"),
            vec![
                Tok::Ident("T".into()),
                Tok::Lolli,
                Tok::Ident("T".into()),
                Tok::OPlus,
                Tok::Ident("T".into()),
                Tok::Amp,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn numbers() {
        assert_eq!(toks("2.5e-3")[0], Tok::Num { value: 2.5e-3, imag: false });
        assert_eq!(toks("3i")[0], Tok::Num { value: 3.0, imag: true });
        assert_eq!(toks("1/sqrt2")[0], Tok::Num { value: std::f64::consts::FRAC_1_SQRT_2, imag: false });
        assert_eq!(toks("1/sqrt2i")[0], Tok::Num { value: std::f64::consts::FRAC_1_SQRT_2, imag: true });
        assert!(tokenize("1e999").is_err());
        assert!(tokenize("2x").is_err());
    }

    #[test]
    fn positions() {
        let t = tokenize("a\n  b").unwrap();
        assert_eq!(t[1].pos, Pos { line: 2, col: 3 });
        let e = tokenize("a\n #").unwrap_err();
        assert_eq!((e.line, e.col), (2, 2));
    }
}
