//! Parsers for the textual inputs: counts, grid specs, form specs, point files.

use std::fs;
use std::path::Path;

use distance_energy::geometry::PointSet;
use distance_energy::lattice::norm_form;
use distance_energy::repcount::FormDescriptor;
use distance_energy::BinaryForm;

use crate::error::CliError;

/// Non-negative integer, also accepting `1e6` and `1_000_000`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let t = s.trim().replace('_', "");
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    if let Some((mant, exp)) = t.split_once(['e', 'E']) {
        if let (Ok(m), Ok(e)) = (mant.parse::<u64>(), exp.parse::<u32>()) {
            if let Some(v) = 10u64.checked_pow(e).and_then(|p| p.checked_mul(m)) {
                return Ok(v);
            }
        }
    }
    Err(format!(
        "expected a non-negative integer such as 1000000 or 1e6, got '{s}'"
    ))
}

/// `AxB` with both parts positive, e.g. `2x40`.
pub fn parse_pair(s: &str, what: &str) -> Result<(usize, u64), CliError> {
    let bad = || CliError::usage(format!("{what} must look like MxS (e.g. 2x40), got '{s}'"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b = parse_count(b).map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

/// A quadratic form given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormSpec {
    Binary(BinaryForm),
    Squares(u32),
}

impl FormSpec {
    pub fn descriptor(&self) -> Result<FormDescriptor, CliError> {
        Ok(match self {
            FormSpec::Binary(f) => f.descriptor(),
            FormSpec::Squares(m) => FormDescriptor::sum_of_squares(*m)?,
        })
    }

    pub fn binary(&self) -> Result<BinaryForm, CliError> {
        match self {
            FormSpec::Binary(f) => Ok(*f),
            FormSpec::Squares(2) => Ok(BinaryForm::new(1, 0, 1)?),
            FormSpec::Squares(m) => Err(CliError::usage(format!(
                "this command needs a binary form, got a sum of {m} squares"
            ))),
        }
    }
}

/// `D` (negative, norm form of `Q(sqrt D)`), `a,b,c`, or `squares:m`.
pub fn parse_form(s: &str) -> Result<FormSpec, CliError> {
    let t = s.trim();
    if let Some(m) = t.strip_prefix("squares:") {
        let m: u32 = m
            .parse()
            .map_err(|_| CliError::usage(format!("bad sum-of-squares spec '{s}'")))?;
        FormDescriptor::sum_of_squares(m).map_err(|e| CliError::usage(e.to_string()))?;
        return Ok(FormSpec::Squares(m));
    }
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let ints: Option<Vec<i64>> = parts.iter().map(|p| p.parse().ok()).collect();
    let form = match ints.as_deref() {
        Some(&[d]) => norm_form(d),
        Some(&[a, b, c]) => BinaryForm::new(a, b, c),
        _ => {
            return Err(CliError::usage(format!(
                "form must be D, a,b,c or squares:m, got '{s}'"
            )))
        }
    };
    form.map(FormSpec::Binary)
        .map_err(|e| CliError::usage(e.to_string()))
}

/// One point per line, space-separated integers; `#` starts a comment line.
pub fn parse_points(text: &str) -> Result<PointSet, CliError> {
    let mut points = Vec::new();
    let mut dim = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(str::parse::<i64>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::input(format!("line {}: {e}", i + 1)))?;
        match dim {
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(CliError::input(format!(
                    "line {}: expected {d} coordinates, found {}",
                    i + 1,
                    coords.len()
                )))
            }
            _ => {}
        }
        points.push(coords);
    }
    let dim = dim.ok_or_else(|| CliError::input("point file holds no points"))?;
    PointSet::new(dim, points).map_err(|e| CliError::input(e.to_string()))
}

pub fn read_points(path: &Path) -> Result<PointSet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    parse_points(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("2_000"), Ok(2000));
        assert_eq!(parse_count("25E2"), Ok(2500));
        assert!(parse_count("-3").is_err());
        assert!(parse_count("1e30").is_err());
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("2x40", "grid").unwrap(), (2, 40));
        assert!(parse_pair("2x0", "grid").is_err());
        assert!(parse_pair("40", "grid").is_err());
    }

    #[test]
    fn forms() {
        assert_eq!(
            parse_form("-3").unwrap(),
            FormSpec::Binary(BinaryForm::new(1, 1, 1).unwrap())
        );
        assert_eq!(
            parse_form("-1").unwrap(),
            FormSpec::Binary(BinaryForm::new(1, 0, 1).unwrap())
        );
        assert_eq!(
            parse_form("2, 1, 3").unwrap(),
            FormSpec::Binary(BinaryForm::new(2, 1, 3).unwrap())
        );
        assert_eq!(parse_form("squares:3").unwrap(), FormSpec::Squares(3));
        assert!(parse_form("1,3,1").is_err());
        assert!(parse_form("squares:1").is_err());
        assert!(parse_form("x").is_err());
    }

    #[test]
    fn point_files() {
        let p = parse_points("# two points\n0 0\n\n1 0\n").unwrap();
        assert_eq!((p.dim(), p.len()), (2, 2));
        assert!(parse_points("0 0\n1\n").is_err());
        assert!(parse_points("0 a\n").is_err());
        assert!(parse_points("# nothing\n").is_err());
        assert!(parse_points("1 1\n1 1\n").is_err());
    }
}
