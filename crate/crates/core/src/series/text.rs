use thiserror::Error;

use super::NCPoly;
use crate::alphabet::Word;
use crate::ring::{parse_coeff, qi, Coeff, RatFun, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial syntax error at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

/// Parses the textual polynomial format, e.g. `1*x0.x1 - 1/2*x1.x0`,
/// `3 + y1.y2` or `(1-t)*x0`. This is the format `Display` produces.
pub fn parse_poly<C: Coeff>(text: &str) -> Result<NCPoly<C>, ParsePolyError> {
    let src = text.as_bytes();
    let err = |pos: usize, msg: &str| ParsePolyError { pos, msg: msg.to_string() };
    let mut out = NCPoly::zero();
    let mut pos = 0;
    let mut first = true;
    loop {
        while pos < src.len() && src[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == src.len() {
            if first {
                return Err(err(pos, "empty polynomial"));
            }
            break;
        }
        let mut negative = false;
        match src[pos] {
            b'+' | b'-' => {
                negative = src[pos] == b'-';
                pos += 1;
            }
            _ if !first => return Err(err(pos, "expected '+' or '-'")),
            _ => {}
        }
        first = false;
        // A term runs to the next top-level sign.
        let start = pos;
        let mut depth = 0i32;
        while pos < src.len() {
            match src[pos] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && pos > start && !src[start..pos].iter().all(u8::is_ascii_whitespace) => {
                    break
                }
                _ => {}
            }
            if depth < 0 {
                return Err(err(pos, "unbalanced ')'"));
            }
            pos += 1;
        }
        if depth != 0 {
            return Err(err(pos, "unbalanced '('"));
        }
        let term = text[start..pos].trim();
        if term.is_empty() {
            return Err(err(start, "missing term"));
        }
        let (coeff, word) = split_term(term).map_err(|m| err(start, &m))?;
        let c = C::from_ratfun(&coeff).ok_or_else(|| err(start, "coefficient not in the base ring"))?;
        out.add_term(word, if negative { -c } else { c });
    }
    Ok(out)
}

fn split_term(term: &str) -> Result<(RatFun, Word), String> {
    let looks_like_word = |s: &str| s.starts_with('x') || s.starts_with('y');
    if looks_like_word(term) {
        return Ok((RatFun::from_poly(UPoly::constant(qi(1))), parse_word(term)?));
    }
    // The coefficient ends at the last top-level '*' followed by a word.
    let bytes = term.as_bytes();
    let mut depth = 0i32;
    let mut split = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => {
                let rest = term[i + 1..].trim_start();
                if looks_like_word(rest) || rest == "1" {
                    split = Some(i);
                }
            }
            _ => {}
        }
    }
    let (c, word) = match split {
        Some(i) => (term[..i].trim(), parse_word(term[i + 1..].trim())?),
        None => (term, Word::empty()),
    };
    let c = c.strip_prefix('(').and_then(|s| s.strip_suffix(')')).filter(|_| balanced_outer(c)).unwrap_or(c);
    let coeff = parse_coeff(c).map_err(|e| e.to_string())?;
    Ok((coeff, word))
}

fn balanced_outer(c: &str) -> bool {
    let mut depth = 0;
    for (i, b) in c.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 && i + 1 != c.len() {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse::<Word>().map_err(|e| e.to_string())
}
