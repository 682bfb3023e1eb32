//! Plain-text instance and solution files.
//!
//! Instance: first data line `n`, then one radius per line.
//! Solution: first data line `n R`, then `i r_i x_i y_i` per circle.
//! Lines starting with `#` and blank lines are ignored in both.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Configuration, Instance};
use crate::{Error, Result};

const SIGNIFICANT_DIGITS: usize = 15;

/// A solution file: the radii it was written for and the placement.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub radii: Vec<f64>,
    pub config: Configuration,
}

impl Solution {
    /// Checks that the file was written for `instance` (same radii up to the
    /// printed precision).
    pub fn check_matches(&self, instance: &Instance) -> Result<()> {
        self.config.check_bound(instance)?;
        let mut sorted = self.radii.clone();
        sorted.sort_by(f64::total_cmp);
        for (i, (a, b)) in sorted.iter().zip(instance.radii()).enumerate() {
            if (a - b).abs() > 1e-12 * b.abs().max(1.0) {
                return Err(Error::usage(format!(
                    "solution radius {a} does not match instance radius {b} (circle {})",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Formats like C's `%.{digits}g`.
pub fn format_significant(value: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{value:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_field<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field.parse().map_err(|_| Error::parse(line, format!("cannot parse {what} from `{field}`")))
}

pub fn parse_instance(name: &str, text: &str) -> Result<Instance> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "missing circle count"))?;
    let n: usize = parse_field(header_line, header, "circle count")?;
    if n == 0 {
        return Err(Error::parse(header_line, "circle count must be positive"));
    }
    let mut radii = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        if radii.len() == n {
            return Err(Error::parse(line, format!("count mismatch: more than {n} radii")));
        }
        let r: f64 = parse_field(line, body, "radius")?;
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::parse(line, format!("radius must be positive, got {body}")));
        }
        radii.push(r);
    }
    if radii.len() != n {
        return Err(Error::parse(
            last_line,
            format!("count mismatch: header says {n} radii, found {}", radii.len()),
        ));
    }
    Instance::new(name, radii)
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    parse_instance(name, &text).map_err(|e| e.in_file(path))
}

pub fn format_instance(instance: &Instance) -> String {
    let mut out = format!("# {}\n{}\n", instance.name(), instance.n());
    for r in instance.radii() {
        // Shortest representation that round-trips exactly.
        writeln!(out, "{r}").unwrap();
    }
    out
}

pub fn write_instance(path: impl AsRef<Path>, instance: &Instance) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_instance(instance)).map_err(|e| Error::from(e).in_file(path))
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let fields: Vec<_> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(header_line, "header must be `n R`"));
    }
    let n: usize = parse_field(header_line, fields[0], "circle count")?;
    let container: f64 = parse_field(header_line, fields[1], "container radius")?;
    if !(container.is_finite() && container > 0.0) {
        return Err(Error::parse(header_line, "container radius must be positive"));
    }
    let mut radii = vec![f64::NAN; n];
    let mut coords = vec![f64::NAN; 2 * n];
    let mut seen = vec![false; n];
    let mut count = 0;
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        let f: Vec<_> = body.split_whitespace().collect();
        if f.len() != 4 {
            return Err(Error::parse(line, "expected `i r x y`"));
        }
        let i: usize = parse_field(line, f[0], "circle index")?;
        if i == 0 || i > n {
            return Err(Error::parse(line, format!("circle index {i} out of range 1..={n}")));
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Err(Error::parse(line, format!("circle {i} listed twice")));
        }
        let r: f64 = parse_field(line, f[1], "radius")?;
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::parse(line, "radius must be positive"));
        }
        radii[i - 1] = r;
        coords[2 * (i - 1)] = parse_field(line, f[2], "x coordinate")?;
        coords[2 * (i - 1) + 1] = parse_field(line, f[3], "y coordinate")?;
        count += 1;
    }
    if count != n {
        return Err(Error::parse(last_line, format!("count mismatch: header says {n} circles, found {count}")));
    }
    Ok(Solution { radii, config: Configuration::new(coords, container) })
}

pub fn read_solution(path: impl AsRef<Path>) -> Result<Solution> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
    parse_solution(&text).map_err(|e| e.in_file(path))
}

pub fn format_solution(instance: &Instance, config: &Configuration) -> String {
    let g = |v: f64| format_significant(v, SIGNIFICANT_DIGITS);
    let mut out = format!("{} {}\n", instance.n(), g(config.container_radius));
    for (i, [x, y]) in config.centers().enumerate() {
        writeln!(out, "{} {} {} {}", i + 1, g(instance.radius(i)), g(x), g(y)).unwrap();
    }
    out
}

pub fn write_solution(path: impl AsRef<Path>, instance: &Instance, config: &Configuration) -> Result<()> {
    config.check_bound(instance)?;
    let path = path.as_ref();
    fs::write(path, format_solution(instance, config)).map_err(|e| Error::from(e).in_file(path))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn parses_instance_and_sorts() {
        let inst = parse_instance("a", "3\n1.0\n2.0\n3.0").unwrap();
        assert_eq!(inst.radii(), &[1.0, 2.0, 3.0]);
        let inst = parse_instance("b", "# comment\n2\n2.0\n\n1.0\n").unwrap();
        assert_eq!(inst.radii(), &[1.0, 2.0]);
    }

    #[test]
    fn instance_errors_name_the_line() {
        match parse_instance("c", "2\n1.0") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("count mismatch"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_instance("d", "2\n1.0\n-1"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_instance("e", "2\n1.0\nabc"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_instance("f", "1\n1.0\n2.0"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_instance("g", ""), Err(Error::Parse { .. })));
    }

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(9.00139774, 15), "9.00139774");
        assert_eq!(format_significant(1.0, 15), "1");
        assert_eq!(format_significant(-0.5, 15), "-0.5");
        assert_eq!(format_significant(1.0 / 3.0, 15), "0.333333333333333");
        assert_eq!(format_significant(1.5e-7, 15), "1.5e-07");
        assert_eq!(format_significant(123456789012345678.0, 15), "1.23456789012346e+17");
        assert_eq!(format_significant(0.0, 15), "0");
    }

    #[test]
    fn solution_errors() {
        assert!(matches!(parse_solution("2 3.0\n1 1 0 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_solution("1 3.0\n2 1 0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_solution("1 -3.0\n1 1 0 0\n"), Err(Error::Parse { line: 1, .. })));
    }

    proptest! {
        #[test]
        fn solution_round_trip(
            radii in prop::collection::vec(0.01f64..100.0, 1..12),
            seed_coords in prop::collection::vec(-50.0f64..50.0, 24),
            container in 0.1f64..500.0,
        ) {
            let inst = Instance::new("p", radii).unwrap();
            let coords: Vec<f64> = seed_coords[..2 * inst.n()].to_vec();
            let config = Configuration::new(coords, container);
            let back = parse_solution(&format_solution(&inst, &config)).unwrap();
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(1.0);
            prop_assert!(close(back.config.container_radius, container));
            for (a, b) in back.config.coords.iter().zip(&config.coords) {
                prop_assert!(close(*a, *b));
            }
            for (a, b) in back.radii.iter().zip(inst.radii()) {
                prop_assert!(close(*a, *b));
            }
            back.check_matches(&inst).unwrap();
        }
    }
}
