//! Micro-grammar for monomial expressions: `gen[mode](^int)? ...`,
//! e.g. `L[-1] L[0]^2 L[1]` or `G[-1/2]`. Modes are exact rationals.

use crate::scalar::parse_rat;
use crate::{Error, Result};

use super::{ModeAlgebra, ModeOp};

/// Parse a whitespace-separated monomial against the algebra's
/// generator set. Errors carry the 1-based column of the offending
/// character.
pub fn parse_monomial(algebra: &ModeAlgebra, input: &str) -> Result<Vec<ModeOp>> {
    let mut word = Vec::new();
    let bytes: Vec<char> = input.chars().collect();
    let mut i = 0usize;
    let err = |column: usize, message: &str| Error::Parse {
        column: column + 1,
        message: message.to_string(),
    };
    while i < bytes.len() {
        if bytes[i].is_whitespace() {
            i += 1;
            continue;
        }
        // generator identifier
        let start = i;
        while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
            i += 1;
        }
        if i == start {
            return Err(err(i, "expected a generator name"));
        }
        let name: String = bytes[start..i].iter().collect();
        let gen = algebra
            .spec()
            .gen_index(&name)
            .ok_or_else(|| err(start, &format!("unknown generator `{name}`")))?;
        if i >= bytes.len() || bytes[i] != '[' {
            return Err(err(i, "expected `[` after generator name"));
        }
        i += 1;
        let mode_start = i;
        while i < bytes.len() && bytes[i] != ']' {
            i += 1;
        }
        if i >= bytes.len() {
            return Err(err(i, "unterminated `[`"));
        }
        let mode_text: String = bytes[mode_start..i].iter().collect();
        let mode = parse_rat(&mode_text)
            .map_err(|_| err(mode_start, &format!("invalid mode `{}`", mode_text.trim())))?;
        i += 1; // skip ']'
        let mut power = 1u32;
        if i < bytes.len() && bytes[i] == '^' {
            i += 1;
            let pow_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == pow_start {
                return Err(err(pow_start, "expected a positive integer power"));
            }
            let pow_text: String = bytes[pow_start..i].iter().collect();
            power = pow_text
                .parse()
                .map_err(|_| err(pow_start, &format!("invalid power `{pow_text}`")))?;
            if power == 0 {
                return Err(err(pow_start, "power must be >= 1"));
            }
        }
        let op = algebra.mode(gen, mode).map_err(|e| err(start, &e.to_string()))?;
        for _ in 0..power {
            word.push(op.clone());
        }
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::preset;

    #[test]
    fn parses_words_and_powers() {
        let a = ModeAlgebra::new(preset("virasoro").unwrap()).unwrap();
        let w = parse_monomial(&a, "L[-1] L[0]^2 L[1]").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w[1].mode, crate::scalar::rat_int(0));
        let empty = parse_monomial(&a, "  ").unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn reports_caret_position() {
        let a = ModeAlgebra::new(preset("virasoro").unwrap()).unwrap();
        match parse_monomial(&a, "L[-1] X[0]") {
            Err(Error::Parse { column, message }) => {
                assert_eq!(column, 7);
                assert!(message.contains("unknown generator"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_monomial(&a, "L[0]^0").is_err());
        assert!(parse_monomial(&a, "L[1/0]").is_err());
        assert!(parse_monomial(&a, "L[2").is_err());
    }

    #[test]
    fn rational_modes_for_twisted_generators() {
        // integer-weight untwisted generators reject fractional modes
        let a = ModeAlgebra::new(preset("virasoro").unwrap()).unwrap();
        assert!(parse_monomial(&a, "L[-1/2]").is_err());
    }
}
