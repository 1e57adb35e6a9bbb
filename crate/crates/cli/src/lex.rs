use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifiers and keywords, primes included: `S''`, `x0`, `lam`.
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Colon,
    ColonColon,
    Dot,
    /// `.>`
    DotGt,
    /// `<.`
    LtDot,
    At,
    Bar,
    Arrow,
    Turnstile,
    Tilde,
    /// `(+)`
    Plus,
    /// `(*)`
    Times,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrack => "`[`",
            Tok::RBrack => "`]`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::Colon => "`:`",
            Tok::ColonColon => "`::`",
            Tok::Dot => "`.`",
            Tok::DotGt => "`.>`",
            Tok::LtDot => "`<.`",
            Tok::At => "`@`",
            Tok::Bar => "`|`",
            Tok::Arrow => "`->`",
            Tok::Turnstile => "`|-`",
            Tok::Tilde => "`~`",
            Tok::Plus => "`(+)`",
            Tok::Times => "`(*)`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '′' || c == '″'
}

/// Tokenizes `src`, numbering lines from `first_line`. Primes `′`/`″` are
/// normalised to `'`/`''`; `#` starts a comment running to the end of the line.
pub fn lex(src: &str, first_line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (first_line, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if ident_char(c) && c != '\'' {
            let start = i;
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i]
                .iter()
                .map(|&c| match c {
                    '′' => "'".to_string(),
                    '″' => "''".to_string(),
                    c => c.to_string(),
                })
                .collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(word),
                pos,
            });
            continue;
        }
        let next = chars.get(i + 1).copied();
        let third = chars.get(i + 2).copied();
        let (tok, len) = match (c, next, third) {
            ('(', Some('+'), Some(')')) => (Tok::Plus, 3),
            ('(', Some('*'), Some(')')) => (Tok::Times, 3),
            ('(', ..) => (Tok::LParen, 1),
            (')', ..) => (Tok::RParen, 1),
            ('[', ..) => (Tok::LBrack, 1),
            (']', ..) => (Tok::RBrack, 1),
            ('{', ..) => (Tok::LBrace, 1),
            ('}', ..) => (Tok::RBrace, 1),
            (',', ..) => (Tok::Comma, 1),
            (':', Some(':'), _) => (Tok::ColonColon, 2),
            (':', ..) => (Tok::Colon, 1),
            ('.', Some('>'), _) => (Tok::DotGt, 2),
            ('.', ..) => (Tok::Dot, 1),
            ('<', Some('.'), _) => (Tok::LtDot, 2),
            ('@', ..) => (Tok::At, 1),
            ('|', Some('-'), _) => (Tok::Turnstile, 2),
            ('|', ..) => (Tok::Bar, 1),
            ('-', Some('>'), _) => (Tok::Arrow, 2),
            ('~', ..) => (Tok::Tilde, 1),
            ('→', ..) => (Tok::Arrow, 1),
            ('⊢', ..) => (Tok::Turnstile, 1),
            ('⊕', ..) => (Tok::Plus, 1),
            ('×', ..) => (Tok::Times, 1),
            ('•', ..) => (Tok::Dot, 1),
            ('◑', ..) => (Tok::DotGt, 1),
            ('◐', ..) => (Tok::LtDot, 1),
            _ => return Err(ParseError::new(pos, format!("unexpected character `{c}`"))),
        };
        i += len;
        col += len;
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

/// A cursor over a token stream.
pub struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    pub fn new(src: &str, first_line: usize) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src, first_line)?,
            at: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn is(&self, tok: &Tok) -> bool {
        self.peek() == tok
    }

    pub fn is_word(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == word)
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.is(tok) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn eat_word(&mut self, word: &str) -> bool {
        if self.is_word(word) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos(), message)
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<Pos, ParseError> {
        if self.is(tok) {
            Ok(self.bump().pos)
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub fn expect_word(&mut self, word: &str) -> Result<Pos, ParseError> {
        if self.is_word(word) {
            Ok(self.bump().pos)
        } else {
            Err(self.unexpected(&format!("`{word}`")))
        }
    }

    pub fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Ident(w) => {
                let pos = self.bump().pos;
                Ok((w, pos))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn end(&self) -> Result<(), ParseError> {
        if self.is(&Tok::Eof) {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s, 1).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn operators() {
        assert_eq!(
            toks("v .> s <. w (+) (*) :: |- ->"),
            vec![
                Tok::Ident("v".into()),
                Tok::DotGt,
                Tok::Ident("s".into()),
                Tok::LtDot,
                Tok::Ident("w".into()),
                Tok::Plus,
                Tok::Times,
                Tok::ColonColon,
                Tok::Turnstile,
                Tok::Arrow,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn primes_and_positions() {
        let t = lex("S″(K,I)\n  K′", 1).unwrap();
        assert_eq!(t[0].tok, Tok::Ident("S''".into()));
        assert_eq!(t[6].tok, Tok::Ident("K'".into()));
        assert_eq!(t[6].pos, Pos { line: 2, col: 3 });
    }

    #[test]
    fn bad_character() {
        let e = lex("S $", 4).unwrap_err();
        assert_eq!(e.pos, Pos { line: 4, col: 3 });
    }
}
