//! The `key = value` instance format.
//!
//! ```text
//! # comment
//! n = 2
//! m = 3
//! A = y1^3 + y1*y2^2 + y2^3
//! beta = y1
//! irreducible_asserted = false
//! numeric_points = 20
//! seed = 1
//! ```

use serde::Serialize;

use crate::algebra::{parse, MultiPoly, ParseError};
use crate::finsler::{MthRootMetric, OneForm};
use crate::kropina::KropinaInstance;

use super::CliError;

pub const DEFAULT_NUMERIC_POINTS: usize = 20;
pub const DEFAULT_SEED: u64 = 0;

/// A parsed instance file. Expressions are kept as text until
/// [`InstanceFile::build`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceFile {
    pub n: usize,
    pub m: u32,
    #[serde(rename = "A")]
    pub a: String,
    pub beta: String,
    pub irreducible_asserted: bool,
    pub numeric_points: usize,
    pub seed: u64,
    #[serde(skip)]
    a_at: (usize, usize),
    #[serde(skip)]
    beta_at: (usize, usize),
}

fn invalid(line: usize, key: &str, message: impl Into<String>) -> CliError {
    CliError::InvalidValue {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_number<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| {
        invalid(
            line,
            key,
            format!("expected a nonnegative integer, got '{value}'"),
        )
    })
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut n = None;
        let mut m = None;
        let mut a = None;
        let mut beta = None;
        let mut irreducible_asserted = None;
        let mut numeric_points = None;
        let mut seed = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some(eq) = raw.find('=') else {
                let column = raw.len() - raw.trim_start().len() + 1;
                return Err(CliError::Syntax {
                    line,
                    column,
                    message: "expected 'key = value'".into(),
                });
            };
            let key = raw[..eq].trim();
            let value_raw = &raw[eq + 1..];
            let value = value_raw.trim();
            // 1-based column of the first character of `value`
            let value_col = raw[..eq + 1].chars().count()
                + (value_raw.chars().count() - value_raw.trim_start().chars().count())
                + 1;
            let duplicate = || CliError::DuplicateKey {
                line,
                key: key.to_string(),
            };
            match key {
                "n" => {
                    if n.replace(parse_number::<usize>(line, key, value)?)
                        .is_some()
                    {
                        return Err(duplicate());
                    }
                }
                "m" => {
                    if m.replace(parse_number::<u32>(line, key, value)?).is_some() {
                        return Err(duplicate());
                    }
                }
                "A" => {
                    if a.replace((value.to_string(), (line, value_col))).is_some() {
                        return Err(duplicate());
                    }
                }
                "beta" => {
                    if beta
                        .replace((value.to_string(), (line, value_col)))
                        .is_some()
                    {
                        return Err(duplicate());
                    }
                }
                "irreducible_asserted" => {
                    let v = match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(invalid(line, key, "expected 'true' or 'false'")),
                    };
                    if irreducible_asserted.replace(v).is_some() {
                        return Err(duplicate());
                    }
                }
                "numeric_points" => {
                    if numeric_points
                        .replace(parse_number::<usize>(line, key, value)?)
                        .is_some()
                    {
                        return Err(duplicate());
                    }
                }
                "seed" => {
                    if seed
                        .replace(parse_number::<u64>(line, key, value)?)
                        .is_some()
                    {
                        return Err(duplicate());
                    }
                }
                _ => {
                    return Err(CliError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            }
        }

        let n = n.ok_or(CliError::MissingKey("n"))?;
        let m = m.ok_or(CliError::MissingKey("m"))?;
        let (a, a_at) = a.ok_or(CliError::MissingKey("A"))?;
        let (beta, beta_at) = beta.ok_or(CliError::MissingKey("beta"))?;
        Ok(InstanceFile {
            n,
            m,
            a,
            beta,
            irreducible_asserted: irreducible_asserted.unwrap_or(false),
            numeric_points: numeric_points.unwrap_or(DEFAULT_NUMERIC_POINTS),
            seed: seed.unwrap_or(DEFAULT_SEED),
            a_at,
            beta_at,
        })
    }

    fn expression(&self, key: &str, text: &str, at: (usize, usize)) -> Result<MultiPoly, CliError> {
        parse(text, self.n).map_err(|source: ParseError| CliError::Expression {
            key: key.to_string(),
            line: at.0,
            column: at.1 + source.position,
            source,
        })
    }

    /// Parses the expressions and validates the metric and the 1-form.
    pub fn build(&self) -> Result<KropinaInstance, CliError> {
        let a = self.expression("A", &self.a, self.a_at)?;
        let beta = self.expression("beta", &self.beta, self.beta_at)?;
        let metric = if self.irreducible_asserted {
            MthRootMetric::new_asserted_irreducible(self.n, self.m, a)
        } else {
            MthRootMetric::new(self.n, self.m, a)
        }
        .map_err(|e| CliError::Invalid {
            key: "A".into(),
            source: e.into(),
        })?;
        let beta = OneForm::from_polynomial(&beta).map_err(|e| CliError::Invalid {
            key: "beta".into(),
            source: e.into(),
        })?;
        Ok(KropinaInstance::new(metric, beta)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: &str = "# sample\nn = 2\nm = 3\nA = y1^3 + y1*y2^2 + y2^3\nbeta = y1\n";

    #[test]
    fn parses_defaults() {
        let f = InstanceFile::parse(E1).unwrap();
        assert_eq!(f.n, 2);
        assert_eq!(f.numeric_points, DEFAULT_NUMERIC_POINTS);
        assert!(!f.irreducible_asserted);
        assert!(f.build().is_ok());
    }

    #[test]
    fn expression_error_position() {
        let f = InstanceFile::parse("n = 2\nm = 3\nA =  y1^3 + * y2\nbeta = y1\n").unwrap();
        match f.build() {
            Err(CliError::Expression { line, column, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(column, 13);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            InstanceFile::parse("n = 2\nm = 3\nA = y1^3\n"),
            Err(CliError::MissingKey("beta"))
        ));
        assert!(matches!(
            InstanceFile::parse("n = 2\nn = 3\n"),
            Err(CliError::DuplicateKey { line: 2, .. })
        ));
        assert!(matches!(
            InstanceFile::parse("n = 2\ncolour = red\n"),
            Err(CliError::UnknownKey { line: 2, .. })
        ));
        assert!(matches!(
            InstanceFile::parse("n = 2\n  junk\n"),
            Err(CliError::Syntax {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            InstanceFile::parse("n = two\n"),
            Err(CliError::InvalidValue { line: 1, .. })
        ));
    }

    #[test]
    fn inhomogeneous_metric_rejected() {
        let f = InstanceFile::parse("n = 2\nm = 3\nA = y1^3 + y2\nbeta = y1\n").unwrap();
        assert!(matches!(f.build(), Err(CliError::Invalid { .. })));
    }
}
