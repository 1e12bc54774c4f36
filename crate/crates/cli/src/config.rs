//! `key = value` configuration files.

use std::path::Path;

use ls_transform::quadrature::{ContourSpec, QuadratureSpec};
use ls_transform::transforms::RoundTripOptions;
use serde::Serialize;

use crate::error::CliError;

/// Tunable defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Settings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Upper end of the τ-grid used when tabulating F for inversion.
    pub tau_max: f64,
    /// Abscissa of the Mellin–Barnes contour.
    pub gamma: f64,
    pub contour_abs_tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
            tau_max: 8.0,
            gamma: 0.25,
            contour_abs_tol: 1e-13,
        }
    }
}

pub const KEYS: [&str; 6] = ["abs_tol", "rel_tol", "max_subdivisions", "tau_max", "gamma", "contour_abs_tol"];

fn positive(key: &str, v: &str) -> Result<f64, CliError> {
    match v.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(CliError::Usage(format!("config: {key} must be a positive number, got '{v}'"))),
    }
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "abs_tol" => self.abs_tol = positive(key, value)?,
            "rel_tol" => self.rel_tol = positive(key, value)?,
            "contour_abs_tol" => self.contour_abs_tol = positive(key, value)?,
            "max_subdivisions" => {
                self.max_subdivisions = value
                    .parse()
                    .ok()
                    .filter(|&n: &usize| n > 0)
                    .ok_or_else(|| CliError::Usage(format!("config: max_subdivisions must be a positive integer, got '{value}'")))?
            }
            "tau_max" => {
                let t = positive(key, value)?;
                if t > 40.0 {
                    return Err(CliError::Usage(format!("config: tau_max {t} exceeds 40")));
                }
                self.tau_max = t;
            }
            "gamma" => {
                let g = positive(key, value)?;
                if g >= 0.5 {
                    return Err(CliError::Usage(format!("config: gamma {g} outside (0, 1/2)")));
                }
                self.gamma = g;
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "config: unknown key '{key}' (known: {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
            s.set(k.trim(), v.trim())?;
        }
        Ok(s)
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                Self::parse(&text)
            }
        }
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec {
            max_subdivisions: self.max_subdivisions,
            ..QuadratureSpec::with_tolerances(self.abs_tol, self.rel_tol)
        }
    }

    pub fn contour(&self) -> ContourSpec {
        ContourSpec::new(self.gamma, self.contour_abs_tol)
    }

    /// Round-trip options keeping the default τ spacing of 0.05.
    pub fn round_trip(&self) -> RoundTripOptions {
        RoundTripOptions {
            tau_max: self.tau_max,
            tau_nodes: (self.tau_max / 0.05).round() as usize + 1,
            inverse_abs_tol: self.abs_tol,
            inverse_rel_tol: self.rel_tol,
            ..RoundTripOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let s = Settings::parse("abs_tol = 1e-8\n# comment\n\ngamma=0.3 # trailing\n").unwrap();
        assert_eq!(s.abs_tol, 1e-8);
        assert_eq!(s.gamma, 0.3);
        assert!(Settings::parse("tolerance = 1").is_err());
        assert!(Settings::parse("gamma = 0.7").is_err());
        assert!(Settings::parse("abs_tol").is_err());
        assert!(Settings::parse("max_subdivisions = 0").is_err());
    }
}
