//! Corpus line format: whitespace-separated decimal integers, constant term
//! first. `#` starts a comment line; blank lines are skipped.

use num_bigint::BigInt;

use super::IntPoly;
use crate::{Error, Result};

pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for token in text.split_inclusive(char::is_whitespace) {
        let trimmed = token.trim_end();
        if !trimmed.is_empty() {
            coeffs.push(parse_int(trimmed, offset)?);
        }
        offset += token.len();
    }
    if coeffs.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            message: "no coefficients".into(),
        });
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_int(token: &str, offset: usize) -> Result<BigInt> {
    let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
    if let Some(pos) = digits.find(|c: char| !c.is_ascii_digit()) {
        let at = offset + (token.len() - digits.len()) + pos;
        return Err(Error::Parse {
            offset: at,
            message: format!(
                "unexpected character {:?}",
                digits[pos..].chars().next().unwrap()
            ),
        });
    }
    if digits.is_empty() {
        return Err(Error::Parse {
            offset,
            message: "sign without digits".into(),
        });
    }
    Ok(token.parse::<BigInt>().expect("validated decimal integer"))
}

/// Single spaces, no trailing whitespace. The zero polynomial is `0`.
pub fn serialize_poly(f: &IntPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// One polynomial from a corpus file with its 1-based line number.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub line: usize,
    pub poly: IntPoly,
}

/// Parse every polynomial line; errors carry the line number in the message
/// and the character offset within that line.
pub fn parse_corpus(text: &str) -> Vec<std::result::Result<CorpusEntry, (usize, Error)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            parse_poly(l)
                .map(|poly| CorpusEntry { line: i + 1, poly })
                .map_err(|e| (i + 1, e))
        })
        .collect()
}
