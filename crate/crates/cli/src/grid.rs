//! Grid specifications of the form `start:stop:count[:log]`.

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub values: Vec<f64>,
    pub log: bool,
}

fn number(s: &str, what: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: '{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("{what}: '{s}' is not finite")));
    }
    Ok(v)
}

/// Parse a grid. A bare number is a one-point grid.
pub fn parse(spec: &str, what: &str) -> Result<Grid, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 1 {
        return Ok(Grid {
            values: vec![number(parts[0], what)?],
            log: false,
        });
    }
    let log = match parts.len() {
        3 => false,
        4 if parts[3] == "log" => true,
        _ => {
            return Err(CliError::Usage(format!(
                "{what}: expected start:stop:count[:log], got '{spec}'"
            )))
        }
    };
    let (a, b) = (number(parts[0], what)?, number(parts[1], what)?);
    let n: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: count '{}' is not a positive integer", parts[2])))?;
    if n == 0 {
        return Err(CliError::Usage(format!("{what}: count must be positive")));
    }
    if n > 1 && !(b > a) {
        return Err(CliError::Usage(format!("{what}: stop must exceed start")));
    }
    if log && !(a > 0.0) {
        return Err(CliError::Usage(format!("{what}: a log grid needs a positive start")));
    }
    let values = if n == 1 {
        vec![a]
    } else if log {
        let (la, lb) = (a.ln(), b.ln());
        (0..n)
            .map(|k| match k {
                0 => a,
                _ if k == n - 1 => b,
                _ => (la + (lb - la) * k as f64 / (n - 1) as f64).exp(),
            })
            .collect()
    } else {
        (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
    };
    Ok(Grid { values, log })
}

/// Reject grid points outside (lo, hi], or [lo, hi] when `closed`.
pub fn check_range(g: &Grid, what: &str, lo: f64, hi: f64, closed: bool) -> Result<(), CliError> {
    for &v in &g.values {
        let ok = if closed { v >= lo } else { v > lo } && v <= hi;
        if !ok {
            let open = if closed { '[' } else { '(' };
            return Err(CliError::Usage(format!("{what}: {v} outside {open}{lo}, {hi}]")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_and_log() {
        assert_eq!(parse("0:1:3", "g").unwrap().values, vec![0.0, 0.5, 1.0]);
        let g = parse("1:100:3:log", "g").unwrap();
        assert!(g.log);
        assert!((g.values[1] - 10.0).abs() < 1e-12);
        assert_eq!(g.values[2], 100.0);
        assert_eq!(parse("-2.5", "g").unwrap().values, vec![-2.5]);
    }

    #[test]
    fn malformed() {
        for s in ["", "1:2", "1:2:0", "2:1:4", "0:1:3:lin", "0:1:4:log", "a:1:2", "1:2:x"] {
            assert!(parse(s, "g").is_err(), "{s}");
        }
    }
}
