//! Hand-written lexer. Tracks 1-based line/column positions and strips `//`
//! comments.

use super::ast::Span;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    // Keywords
    Mdp,
    Const,
    Int,
    Double,
    Bool,
    Module,
    Endmodule,
    Init,
    Label,
    Property,
    Pmax,
    Pmin,
    Reach,
    True,
    False,
    // Literals and names
    IntLit(i64),
    DecLit(String),
    StrLit(String),
    Ident(String),
    // Punctuation
    LBracket,
    RBracket,
    LParen,
    RParen,
    Semi,
    Colon,
    DotDot,
    Prime,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Amp,
    Pipe,
    Bang,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::IntLit(n) => write!(f, "{n}"),
            Tok::DecLit(s) => write!(f, "{s}"),
            Tok::StrLit(s) => write!(f, "\"{s}\""),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Eof => write!(f, "end of input"),
            other => {
                let text = match other {
                    Tok::Mdp => "mdp",
                    Tok::Const => "const",
                    Tok::Int => "int",
                    Tok::Double => "double",
                    Tok::Bool => "bool",
                    Tok::Module => "module",
                    Tok::Endmodule => "endmodule",
                    Tok::Init => "init",
                    Tok::Label => "label",
                    Tok::Property => "property",
                    Tok::Pmax => "Pmax",
                    Tok::Pmin => "Pmin",
                    Tok::Reach => "reach",
                    Tok::True => "true",
                    Tok::False => "false",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::Semi => ";",
                    Tok::Colon => ":",
                    Tok::DotDot => "..",
                    Tok::Prime => "'",
                    Tok::Arrow => "->",
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Star => "*",
                    Tok::Slash => "/",
                    Tok::Percent => "%",
                    Tok::Eq => "=",
                    Tok::Ne => "!=",
                    Tok::Lt => "<",
                    Tok::Le => "<=",
                    Tok::Gt => ">",
                    Tok::Ge => ">=",
                    Tok::Amp => "&",
                    Tok::Pipe => "|",
                    Tok::Bang => "!",
                    _ => unreachable!(),
                };
                write!(f, "{text}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexError {
    pub message: String,
    pub span: Span,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! push {
        ($tok:expr, $span:expr) => {
            tokens.push(Token { tok: $tok, span: $span })
        };
    }

    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
            }
            c if c.is_whitespace() => {
                col += 1;
                i += 1;
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let is_decimal = chars.get(i) == Some(&'.') && chars.get(i + 1) != Some(&'.');
                if is_decimal {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                col += (i - start) as u32;
                if is_decimal {
                    push!(Tok::DecLit(text), span);
                } else {
                    let n = text.parse::<i64>().map_err(|_| LexError {
                        message: format!("integer literal `{text}` out of range"),
                        span,
                    })?;
                    push!(Tok::IntLit(n), span);
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += (i - start) as u32;
                let tok = match word.as_str() {
                    "mdp" => Tok::Mdp,
                    "const" => Tok::Const,
                    "int" => Tok::Int,
                    "double" => Tok::Double,
                    "bool" => Tok::Bool,
                    "module" => Tok::Module,
                    "endmodule" => Tok::Endmodule,
                    "init" => Tok::Init,
                    "label" => Tok::Label,
                    "property" => Tok::Property,
                    "Pmax" => Tok::Pmax,
                    "Pmin" => Tok::Pmin,
                    "reach" => Tok::Reach,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                push!(tok, span);
            }
            '"' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                    i += 1;
                }
                if chars.get(i) != Some(&'"') {
                    return Err(LexError {
                        message: "unterminated string literal".to_string(),
                        span,
                    });
                }
                let text: String = chars[start..i].iter().collect();
                col += (i - start + 2) as u32;
                i += 1;
                push!(Tok::StrLit(text), span);
            }
            _ => {
                let two: Option<(Tok, usize)> = match (c, chars.get(i + 1)) {
                    ('.', Some('.')) => Some((Tok::DotDot, 2)),
                    ('-', Some('>')) => Some((Tok::Arrow, 2)),
                    ('!', Some('=')) => Some((Tok::Ne, 2)),
                    ('<', Some('=')) => Some((Tok::Le, 2)),
                    ('>', Some('=')) => Some((Tok::Ge, 2)),
                    _ => None,
                };
                let (tok, width) = match two {
                    Some(pair) => pair,
                    None => {
                        let tok = match c {
                            '[' => Tok::LBracket,
                            ']' => Tok::RBracket,
                            '(' => Tok::LParen,
                            ')' => Tok::RParen,
                            ';' => Tok::Semi,
                            ':' => Tok::Colon,
                            '\'' => Tok::Prime,
                            '+' => Tok::Plus,
                            '-' => Tok::Minus,
                            '*' => Tok::Star,
                            '/' => Tok::Slash,
                            '%' => Tok::Percent,
                            '=' => Tok::Eq,
                            '<' => Tok::Lt,
                            '>' => Tok::Gt,
                            '&' => Tok::Amp,
                            '|' => Tok::Pipe,
                            '!' => Tok::Bang,
                            other => {
                                return Err(LexError {
                                    message: format!("unexpected character `{other}`"),
                                    span,
                                })
                            }
                        };
                        (tok, 1)
                    }
                };
                i += width;
                col += width as u32;
                push!(tok, span);
            }
        }
    }
    tokens.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_commands_and_ranges() {
        let toks = tokenize("[a] m>=1 & x=0 -> 0.5:(x'=1); // note\nm : [0..k]").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.tok).collect();
        assert!(kinds.contains(&&Tok::Arrow));
        assert!(kinds.contains(&&Tok::DotDot));
        assert!(kinds.contains(&&Tok::Prime));
        assert!(kinds.contains(&&Tok::DecLit("0.5".to_string())));
        // The comment is dropped entirely.
        assert!(!kinds.iter().any(|t| matches!(t, Tok::Ident(w) if w == "note")));
    }

    #[test]
    fn distinguishes_decimal_from_range() {
        let toks = tokenize("0..2").unwrap();
        assert_eq!(toks[0].tok, Tok::IntLit(0));
        assert_eq!(toks[1].tok, Tok::DotDot);
        assert_eq!(toks[2].tok, Tok::IntLit(2));
    }

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("mdp\nconst").unwrap();
        assert_eq!(toks[0].span, Span { line: 1, col: 1 });
        assert_eq!(toks[1].span, Span { line: 2, col: 1 });
    }
}
