//! Reading and writing monomials and chains in variable notation.

use std::fmt;

/// A syntax error at a character offset into the parsed text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

impl std::error::Error for SyntaxError {}

fn err(offset: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError { offset, message: message.into() }
}

/// `x, y` in the plane, `x, y, z` in space, `x1, …, xd` beyond.
pub fn default_variables(dim: usize) -> Vec<String> {
    match dim {
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=dim).map(|i| format!("x{i}")).collect(),
    }
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn variable_index(vars: &[String], name: &str, offset: usize) -> Result<usize, SyntaxError> {
    vars.iter().position(|v| v == name).ok_or_else(|| err(offset, format!("unknown variable `{name}`")))
}

/// Parses a product of powers such as `x^3 y z^2` or `x^2*y`; `1` is the
/// unit monomial. Repeated variables add up.
pub fn parse_monomial(text: &str, vars: &[String]) -> Result<Vec<i64>, SyntaxError> {
    let mut exps = vec![0i64; vars.len()];
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut factors = 0;
    let mut saw_one = false;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() || (c == b'*' && factors > 0) {
            i += 1;
            continue;
        }
        if c == b'1' && !saw_one && factors == 0 {
            let rest = &text[i + 1..];
            if rest.trim().is_empty() {
                saw_one = true;
                i = bytes.len();
                continue;
            }
        }
        if !(c.is_ascii_alphabetic() || c == b'_') {
            return Err(err(i, format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?'))));
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
            i += 1;
        }
        let v = variable_index(vars, &text[start..i], start)?;
        let mut power = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let digits = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if digits == i {
                return Err(err(digits, "expected an exponent after `^`"));
            }
            power = text[digits..i].parse().map_err(|_| err(digits, "exponent too large"))?;
        }
        exps[v] = exps[v].checked_add(power).ok_or_else(|| err(start, "exponent too large"))?;
        factors += 1;
    }
    if factors == 0 && !saw_one {
        return Err(err(0, "empty monomial"));
    }
    Ok(exps)
}

/// Parses a comma-separated generator list, e.g. `x^2, x y, y^2`.
pub fn parse_generators(text: &str, vars: &[String]) -> Result<Vec<Vec<i64>>, SyntaxError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        out.push(parse_monomial(piece, vars).map_err(|e| err(offset + e.offset, e.message))?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Parses a chain of blowup directions by variable name, e.g. `x y` or
/// `x, y`. An empty string or `root` is the empty chain.
pub fn parse_chain(text: &str, vars: &[String]) -> Result<Vec<usize>, SyntaxError> {
    if text.trim() == "root" {
        return Ok(Vec::new());
    }
    let mut dirs = Vec::new();
    let mut offset = 0;
    for token in text.split(|c: char| c.is_whitespace() || c == ',') {
        if !token.is_empty() {
            dirs.push(variable_index(vars, token, offset)?);
        }
        offset += token.len() + 1;
    }
    Ok(dirs)
}

fn product(factors: &[(usize, i64)], vars: &[String]) -> String {
    factors
        .iter()
        .map(|&(i, e)| if e == 1 { vars[i].clone() } else { format!("{}^{e}", vars[i]) })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_monomial(a: &[i64], vars: &[String]) -> String {
    format_laurent(a, vars)
}

/// Writes a Laurent monomial as a fraction, e.g. `y^2/(x z)`.
pub fn format_laurent(a: &[i64], vars: &[String]) -> String {
    let num: Vec<(usize, i64)> = a.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
    let den: Vec<(usize, i64)> = a.iter().enumerate().filter(|(_, &e)| e < 0).map(|(i, &e)| (i, -e)).collect();
    let top = if num.is_empty() { "1".to_string() } else { product(&num, vars) };
    match den.len() {
        0 => top,
        1 => format!("{top}/{}", product(&den, vars)),
        _ => format!("{top}/({})", product(&den, vars)),
    }
}

pub fn format_chain(dirs: &[usize], vars: &[String]) -> String {
    if dirs.is_empty() {
        "root".into()
    } else {
        dirs.iter().map(|&j| vars[j].as_str()).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Vec<String> {
        default_variables(3)
    }

    #[test]
    fn monomials_round_trip() {
        let v = xyz();
        assert_eq!(parse_monomial("x^3 y", &v).unwrap(), vec![3, 1, 0]);
        assert_eq!(parse_monomial("x^2*y*x", &v).unwrap(), vec![3, 1, 0]);
        assert_eq!(parse_monomial("1", &v).unwrap(), vec![0, 0, 0]);
        assert_eq!(format_monomial(&[3, 1, 0], &v), "x^3 y");
        assert_eq!(format_monomial(&[0, 0, 0], &v), "1");
        for a in [[0, 2, 1], [5, 0, 0], [1, 1, 1]] {
            assert_eq!(parse_monomial(&format_monomial(&a, &v), &v).unwrap(), a.to_vec());
        }
    }

    #[test]
    fn laurent_display() {
        let v = xyz();
        assert_eq!(format_laurent(&[-1, 2, -1], &v), "y^2/(x z)");
        assert_eq!(format_laurent(&[-1, 0, 2], &v), "z^2/x");
        assert_eq!(format_laurent(&[-1, 0, 0], &v), "1/x");
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let v = xyz();
        assert_eq!(parse_monomial("x^2 w", &v).unwrap_err().offset, 4);
        assert_eq!(parse_monomial("x^", &v).unwrap_err().offset, 2);
        assert!(parse_monomial("", &v).is_err());
        assert!(parse_monomial("x^-1", &v).is_err());
        assert!(parse_monomial("x^99999999999999999999", &v).is_err());
        assert_eq!(parse_generators("x, y^2, q", &v).unwrap_err().offset, 8);
    }

    #[test]
    fn chains() {
        let v = xyz();
        assert_eq!(parse_chain("x y", &v).unwrap(), vec![0, 1]);
        assert_eq!(parse_chain("z, y", &v).unwrap(), vec![2, 1]);
        assert_eq!(parse_chain("root", &v).unwrap(), Vec::<usize>::new());
        assert!(parse_chain("x w", &v).is_err());
        assert_eq!(format_chain(&[0, 1], &v), "x y");
        assert_eq!(default_variables(4), vec!["x1", "x2", "x3", "x4"]);
    }
}
