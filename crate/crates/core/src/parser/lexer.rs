use crate::model::Notation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Sub,
    Conj,
    Neg,
    Exists,
    Inv,
    Equiv,
    LParen,
    RParen,
    Comma,
    Funct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    /// Byte offset in the input line.
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LexError {
    pub pos: usize,
    pub found: String,
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

pub(crate) fn lex(text: &str, notation: Notation) -> Result<Vec<Spanned>, LexError> {
    let indexed: Vec<(usize, char)> = text.char_indices().collect();
    let chars: Vec<char> = indexed.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = indexed[i].0;
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, pos });
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '(' => push(&mut out, Tok::LParen),
            ')' => push(&mut out, Tok::RParen),
            ',' => push(&mut out, Tok::Comma),
            _ if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let start = indexed[start].0;
                let tok = if word.eq_ignore_ascii_case("funct") {
                    Tok::Funct
                } else if notation == Notation::Ascii && word == "exists" {
                    Tok::Exists
                } else {
                    Tok::Ident(word)
                };
                out.push(Spanned { tok, pos: start });
                continue;
            }
            _ => {
                let tok = match notation {
                    Notation::Unicode => match c {
                        '⊑' => Some((Tok::Sub, 1)),
                        '⊓' => Some((Tok::Conj, 1)),
                        '¬' => Some((Tok::Neg, 1)),
                        '∃' => Some((Tok::Exists, 1)),
                        '⁻' => Some((Tok::Inv, 1)),
                        '≡' => Some((Tok::Equiv, 1)),
                        _ => None,
                    },
                    Notation::Ascii => {
                        let next = chars.get(i + 1).copied();
                        match (c, next) {
                            ('[', Some('=')) => Some((Tok::Sub, 2)),
                            ('^', Some('-')) => Some((Tok::Inv, 2)),
                            ('=', Some('=')) => Some((Tok::Equiv, 2)),
                            ('&', _) => Some((Tok::Conj, 1)),
                            ('!', _) => Some((Tok::Neg, 1)),
                            _ => None,
                        }
                    }
                };
                match tok {
                    Some((tok, width)) => {
                        push(&mut out, tok);
                        i += width;
                        continue;
                    }
                    None => return Err(LexError { pos, found: c.to_string() }),
                }
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Writes tokens back to text using the canonical spacing: binary operators
/// are surrounded by spaces, two adjacent words are separated by one.
pub(crate) fn unlex(toks: &[Tok], notation: Notation) -> String {
    let mut out = String::new();
    let mut prev_wordy = false;
    for (i, t) in toks.iter().enumerate() {
        let (text, wordy, spaced) = match (t, notation) {
            (Tok::Ident(s), _) => (s.as_str(), true, false),
            (Tok::Sub, Notation::Unicode) => ("⊑", false, true),
            (Tok::Sub, Notation::Ascii) => ("[=", false, true),
            (Tok::Conj, Notation::Unicode) => ("⊓", false, true),
            (Tok::Conj, Notation::Ascii) => ("&", false, true),
            (Tok::Equiv, Notation::Unicode) => ("≡", false, true),
            (Tok::Equiv, Notation::Ascii) => ("==", false, true),
            (Tok::Neg, Notation::Unicode) => ("¬", false, false),
            (Tok::Neg, Notation::Ascii) => ("!", false, false),
            (Tok::Exists, Notation::Unicode) => ("∃", false, false),
            (Tok::Exists, Notation::Ascii) => ("exists", true, false),
            (Tok::Inv, Notation::Unicode) => ("⁻", false, false),
            (Tok::Inv, Notation::Ascii) => ("^-", false, false),
            (Tok::LParen, _) => ("(", false, false),
            (Tok::RParen, _) => (")", false, false),
            (Tok::Comma, _) => (",", false, false),
            (Tok::Funct, _) => ("funct", true, false),
        };
        let starts_operand = match t {
            Tok::Ident(_) => true,
            Tok::Exists | Tok::Neg => !matches!(toks.get(i + 1), None | Some(Tok::Conj | Tok::Sub | Tok::RParen | Tok::Comma)),
            _ => false,
        };
        let need_space = i > 0
            && (spaced
                || (wordy && prev_wordy)
                || matches!(toks[i - 1], Tok::Sub | Tok::Conj | Tok::Equiv | Tok::Comma)
                || (starts_operand && matches!(toks[i - 1], Tok::Ident(_) | Tok::Inv | Tok::RParen)));
        if need_space && !out.ends_with(' ') {
            out.push(' ');
        }
        out.push_str(text);
        prev_wordy = wordy;
    }
    out
}
