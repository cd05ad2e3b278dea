//! Scalar literal grammar shared by all three rings.
//!
//! A literal is a signed sum of terms `<rat>`, `<rat>i`, `<rat>j`, `<rat>k`
//! where `<rat>` is `p` or `p/q` and may be omitted in front of a unit
//! (`-k` means `-1k`). Whitespace is ignored everywhere.

use std::fmt;

use super::Rational;

const UNITS: [char; 3] = ['i', 'j', 'k'];

/// Parses a literal into `(a, b, c, d)` for `a + bi + cj + dk`. Only the
/// first `dim` components may be nonzero (`dim` is 1, 2 or 4).
pub(crate) fn parse_components(src: &str, dim: usize) -> Result<[Rational; 4], String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty scalar literal".into());
    }
    let mut out = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    for term in split_terms(&s) {
        let (negative, body) = match term.as_bytes()[0] {
            b'+' => (false, &term[1..]),
            b'-' => (true, &term[1..]),
            _ => (false, term),
        };
        let (slot, coef) = match body.chars().last() {
            Some(u) if UNITS.contains(&u) => {
                let slot = 1 + UNITS.iter().position(|&c| c == u).unwrap();
                (slot, &body[..body.len() - 1])
            }
            Some(_) => (0, body),
            None => return Err(format!("dangling sign in `{src}`")),
        };
        if slot >= dim {
            return Err(format!("unit `{}` is not available in this ring", UNITS[slot - 1]));
        }
        if coef.starts_with(['+', '-']) {
            return Err(format!("repeated sign in `{term}`"));
        }
        let mut value = if coef.is_empty() {
            if slot == 0 {
                return Err(format!("empty term in `{src}`"));
            }
            Rational::one()
        } else {
            coef.parse::<Rational>()?
        };
        if negative {
            value = -value;
        }
        out[slot] = &out[slot] + &value;
    }
    Ok(out)
}

fn split_terms(s: &str) -> Vec<&str> {
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for (pos, &b) in bytes.iter().enumerate() {
        if pos > start && (b == b'+' || b == b'-') && bytes[pos - 1] != b'/' {
            terms.push(&s[start..pos]);
            start = pos;
        }
    }
    terms.push(&s[start..]);
    terms
}

/// Writes `a + bi + cj + dk`, dropping zero terms and unit coefficients.
pub(crate) fn fmt_components(f: &mut fmt::Formatter<'_>, parts: &[&Rational]) -> fmt::Result {
    let mut wrote = false;
    for (slot, value) in parts.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let negative = value.is_negative();
        if negative {
            f.write_str("-")?;
        } else if wrote {
            f.write_str("+")?;
        }
        let magnitude = value.abs();
        if slot == 0 {
            write!(f, "{magnitude}")?;
        } else {
            if !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            write!(f, "{}", UNITS[slot - 1])?;
        }
        wrote = true;
    }
    if !wrote {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> [Rational; 4] {
        [a.into(), b.into(), c.into(), d.into()]
    }

    #[test]
    fn quaternion_literals() {
        let got = parse_components("1/2-3i+k", 4).unwrap();
        assert_eq!(got[0], Rational::new(1, 2));
        assert_eq!(got[1], Rational::from_integer(-3));
        assert_eq!(got[2], Rational::zero());
        assert_eq!(got[3], Rational::one());
        assert_eq!(parse_components(" - j ", 4).unwrap(), q(0, 0, -1, 0));
        assert_eq!(parse_components("2/3i", 4).unwrap()[1], Rational::new(2, 3));
    }

    #[test]
    fn ring_restrictions() {
        assert!(parse_components("i", 1).is_err());
        assert!(parse_components("1+j", 2).is_err());
        assert!(parse_components("1+2i", 2).is_ok());
    }

    #[test]
    fn malformed() {
        for bad in ["", "+", "1+", "--1", "1/", "1//2", "ii", "2x", "1/-2"] {
            assert!(parse_components(bad, 4).is_err(), "accepted `{bad}`");
        }
    }
}
