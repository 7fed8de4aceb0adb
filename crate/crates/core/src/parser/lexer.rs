use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Str(String),
    Number(f64),
    Directive(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
    StereoOpen,
    StereoClose,
    Arrow,
    DashedArrow,
    Plus,
    Minus,
    Hash,
    EqEq,
    Newline,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Number(n) => format!("`{n}`"),
            Tok::Directive(d) => format!("`@{d}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::StereoOpen => "`<<`".into(),
            Tok::StereoClose => "`>>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DashedArrow => "`-->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Hash => "`#`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits source text into tokens. Line comments (`'`) are dropped; newlines
/// are kept because the sequence grammar is line oriented.
pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok| {
            out.push(Token {
                tok,
                line: start_line,
                column: start_col,
            })
        };
        match c {
            '\n' => {
                push(Tok::Newline);
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            ' ' | '\t' | '\r' | '\u{feff}' => {
                i += 1;
                col += 1;
                continue;
            }
            '\'' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                    col += 1;
                }
                continue;
            }
            '"' => {
                let mut j = i + 1;
                let mut text = String::new();
                while j < chars.len() && chars[j] != '"' {
                    if chars[j] == '\n' {
                        return Err(ParseError::new(
                            start_line,
                            start_col,
                            "closing `\"`",
                            "end of line",
                        ));
                    }
                    text.push(chars[j]);
                    j += 1;
                }
                if j >= chars.len() {
                    return Err(ParseError::new(
                        start_line,
                        start_col,
                        "closing `\"`",
                        "end of input",
                    ));
                }
                push(Tok::Str(text));
                col += j + 1 - i;
                i = j + 1;
                continue;
            }
            '@' => {
                let mut j = i + 1;
                while j < chars.len() && is_ident_continue(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i + 1..j].iter().collect();
                if word != "startuml" && word != "enduml" {
                    return Err(ParseError::new(
                        start_line,
                        start_col,
                        "`@startuml` or `@enduml`",
                        format!("`@{word}`"),
                    ));
                }
                push(Tok::Directive(word));
                col += j - i;
                i = j;
                continue;
            }
            _ => {}
        }

        if is_ident_start(c) {
            let mut j = i;
            while j < chars.len() && is_ident_continue(chars[j]) {
                j += 1;
            }
            push(Tok::Ident(chars[i..j].iter().collect()));
            col += j - i;
            i = j;
            continue;
        }

        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j < chars.len() && chars[j] == '.' {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                let mut k = j + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    j = k;
                }
            }
            let text: String = chars[i..j].iter().collect();
            let value: f64 = text.parse().map_err(|_| {
                ParseError::new(
                    start_line,
                    start_col,
                    "numeric literal",
                    format!("`{text}`"),
                )
            })?;
            push(Tok::Number(value));
            col += j - i;
            i = j;
            continue;
        }

        let next = chars.get(i + 1).copied();
        let next2 = chars.get(i + 2).copied();
        let (tok, len) = match (c, next, next2) {
            ('-', Some('-'), Some('>')) => (Tok::DashedArrow, 3),
            ('-', Some('>'), _) => (Tok::Arrow, 2),
            ('<', Some('<'), _) => (Tok::StereoOpen, 2),
            ('>', Some('>'), _) => (Tok::StereoClose, 2),
            ('=', Some('='), _) => (Tok::EqEq, 2),
            ('{', _, _) => (Tok::LBrace, 1),
            ('}', _, _) => (Tok::RBrace, 1),
            ('(', _, _) => (Tok::LParen, 1),
            (')', _, _) => (Tok::RParen, 1),
            ('[', _, _) => (Tok::LBracket, 1),
            (']', _, _) => (Tok::RBracket, 1),
            (':', _, _) => (Tok::Colon, 1),
            (',', _, _) => (Tok::Comma, 1),
            ('+', _, _) => (Tok::Plus, 1),
            ('-', _, _) => (Tok::Minus, 1),
            ('#', _, _) => (Tok::Hash, 1),
            _ => {
                return Err(ParseError::new(
                    start_line,
                    start_col,
                    "a token",
                    format!("character `{c}`"),
                ))
            }
        };
        push(tok);
        i += len;
        col += len;
    }

    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Cursor over a token list shared by both diagram parsers.
pub(crate) struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(tokens: Vec<Token>) -> Self {
        Cursor { tokens, pos: 0 }
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub(crate) fn peek_at(&self, offset: usize) -> &Token {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx]
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at(&self, tok: &Tok) -> bool {
        &self.peek().tok == tok
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.at(tok) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn skip_newlines(&mut self) {
        while self.at(&Tok::Newline) {
            self.bump();
        }
    }

    pub(crate) fn error(&self, expected: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::new(t.line, t.column, expected, t.tok.describe())
    }

    pub(crate) fn expect(&mut self, tok: &Tok, expected: &str) -> Result<Token, ParseError> {
        if self.at(tok) {
            Ok(self.bump())
        } else {
            Err(self.error(expected))
        }
    }

    pub(crate) fn expect_ident(&mut self, expected: &str) -> Result<(String, Token), ParseError> {
        match &self.peek().tok {
            Tok::Ident(name) => {
                let name = name.clone();
                Ok((name, self.bump()))
            }
            _ => Err(self.error(expected)),
        }
    }

    pub(crate) fn expect_line_end(&mut self) -> Result<(), ParseError> {
        match self.peek().tok {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.error("end of line")),
        }
    }

    pub(crate) fn is_keyword(&self, word: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(w) if w == word)
    }
}
