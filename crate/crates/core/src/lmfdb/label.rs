//! LMFDB isogeny-class labels `g.q.tok_1_..._tok_g`.
//!
//! Each token is a base-26 numeral with digits `a = 0, ..., z = 25`, most
//! significant first. A leading `a` on a multi-letter token negates the
//! value spelled by the remaining letters.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelParts {
    pub g: u32,
    pub q: u64,
    pub coeffs: Vec<i64>,
}

fn malformed(label: &str, reason: impl Into<String>) -> Error {
    Error::MalformedLabel { label: label.to_string(), reason: reason.into() }
}

fn decode_magnitude(digits: &[u8]) -> Option<i64> {
    digits.iter().try_fold(0i64, |acc, &d| acc.checked_mul(26)?.checked_add((d - b'a') as i64))
}

/// Decodes one token.
pub fn decode_token(token: &str) -> Option<i64> {
    let bytes = token.as_bytes();
    if bytes.is_empty() || !bytes.iter().all(u8::is_ascii_lowercase) {
        return None;
    }
    match bytes {
        [b'a'] => Some(0),
        [b'a', rest @ ..] => {
            // the magnitude must itself be canonical: nonzero, no leading 'a'
            if rest[0] == b'a' {
                return None;
            }
            decode_magnitude(rest).map(|m| -m)
        }
        _ => decode_magnitude(bytes),
    }
}

pub fn encode_token(value: i64) -> String {
    if value == 0 {
        return "a".to_string();
    }
    let mut digits = Vec::new();
    let mut m = value.unsigned_abs();
    while m > 0 {
        digits.push(b'a' + (m % 26) as u8);
        m /= 26;
    }
    if value < 0 {
        digits.push(b'a');
    }
    digits.reverse();
    String::from_utf8(digits).expect("ascii")
}

pub fn decode_label(label: &str) -> Result<LabelParts> {
    let mut parts = label.splitn(3, '.');
    let (Some(g), Some(q), Some(tokens)) = (parts.next(), parts.next(), parts.next()) else {
        return Err(malformed(label, "expected g.q.tokens"));
    };
    let g: u32 = g.parse().map_err(|_| malformed(label, "dimension is not an integer"))?;
    let q: u64 = q.parse().map_err(|_| malformed(label, "field size is not an integer"))?;
    let coeffs = tokens
        .split('_')
        .map(|tok| decode_token(tok).ok_or_else(|| malformed(label, format!("bad token `{tok}`"))))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != g as usize {
        return Err(malformed(label, format!("expected {g} tokens, found {}", coeffs.len())));
    }
    Ok(LabelParts { g, q, coeffs })
}

pub fn encode_label(g: u32, q: u64, coeffs: &[i64]) -> String {
    let tokens: Vec<String> = coeffs.iter().map(|&c| encode_token(c)).collect();
    format!("{g}.{q}.{}", tokens.join("_"))
}
