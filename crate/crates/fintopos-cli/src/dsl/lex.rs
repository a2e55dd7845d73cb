//! Tokenizer for the input language.

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    Colon,
    Comma,
    Dot,
    Star,
    Eq,
    Arrow,
    Leq,
    /// Statement separator: `;` or a line break.
    Sep,
}

impl Tok {
    pub fn show(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Leq => "`<=`".into(),
            Tok::Sep => "end of statement".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let mut out: Vec<Spanned> = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    let push = |tok: Tok, line: usize, col: usize, out: &mut Vec<Spanned>| {
        // Collapse runs of separators.
        if tok == Tok::Sep && matches!(out.last(), None | Some(Spanned { tok: Tok::Sep, .. })) {
            return;
        }
        out.push(Spanned { tok, line, col });
    };
    while let Some(&c) = chars.peek() {
        let (at_line, at_col) = (line, col);
        match c {
            '\n' => {
                chars.next();
                push(Tok::Sep, at_line, at_col, &mut out);
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            ';' => {
                chars.next();
                col += 1;
                push(Tok::Sep, at_line, at_col, &mut out);
            }
            '{' | '}' | ':' | ',' | '.' | '*' | '=' => {
                chars.next();
                col += 1;
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    '*' => Tok::Star,
                    _ => Tok::Eq,
                };
                push(tok, at_line, at_col, &mut out);
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    push(Tok::Arrow, at_line, at_col, &mut out);
                } else {
                    return Err(SyntaxError {
                        line: at_line,
                        col: at_col,
                        expected: vec!["`->`".into()],
                        found: "`-`".into(),
                    });
                }
            }
            '<' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'=') {
                    chars.next();
                    col += 1;
                    push(Tok::Leq, at_line, at_col, &mut out);
                } else {
                    return Err(SyntaxError {
                        line: at_line,
                        col: at_col,
                        expected: vec!["`<=`".into()],
                        found: "`<`".into(),
                    });
                }
            }
            c if is_ident_char(c) => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    col += 1;
                }
                push(Tok::Ident(s), at_line, at_col, &mut out);
            }
            other => {
                return Err(SyntaxError {
                    line: at_line,
                    col: at_col,
                    expected: vec!["a token".into()],
                    found: format!("`{other}`"),
                });
            }
        }
    }
    // A trailing separator simplifies end-of-input handling.
    push(Tok::Sep, line, col, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_separators_collapse() {
        let toks = lex("a b # comment\n\n; c").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|s| s.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("a".into()),
                Tok::Ident("b".into()),
                Tok::Sep,
                Tok::Ident("c".into()),
                Tok::Sep,
            ]
        );
    }

    #[test]
    fn positions_are_tracked() {
        let err = lex("ok\n  ?").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
    }

    #[test]
    fn bare_dash_is_rejected() {
        let err = lex("a - b").unwrap_err();
        assert_eq!(err.expected, vec!["`->`".to_string()]);
    }
}
