//! Problem files and their normalization.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use tropical_ot::{normalize_measure, CostMatrix, MaxPlusMeasure};

use crate::error::{CliError, CliResult};

/// On-disk problem: raw weights (any finite reals) and an optional cost
/// matrix indexed by the raw weight positions.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    #[serde(default)]
    pub cost: Option<Vec<Vec<f64>>>,
}

impl ProblemFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
    }
}

/// A validated problem in normalized form: weights sorted non-increasingly
/// with leading zero, and the cost matrix permuted to match.
#[derive(Debug, Clone)]
pub struct Problem {
    pub mu: MaxPlusMeasure<f64>,
    pub nu: MaxPlusMeasure<f64>,
    pub cost: Option<CostMatrix<f64>>,
}

impl Problem {
    pub fn from_file(file: ProblemFile) -> CliResult<Self> {
        let mu = normalize_measure(&file.mu)?;
        let nu = normalize_measure(&file.nu)?;
        warn_if_changed("mu", &file.mu, &mu);
        warn_if_changed("nu", &file.nu, &nu);
        let cost = match file.cost {
            Some(rows) => {
                let raw = CostMatrix::from_rows(rows)?;
                if raw.dims() != (mu.len(), nu.len()) {
                    return Err(tropical_ot::Error::DimensionMismatch {
                        expected: (mu.len(), nu.len()),
                        found: raw.dims(),
                    }
                    .into());
                }
                Some(raw.permuted(mu.order(), nu.order())?)
            }
            None => None,
        };
        Ok(Problem { mu, nu, cost })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        Self::from_file(ProblemFile::load(path)?)
    }

    pub fn require_cost(&self) -> CliResult<&CostMatrix<f64>> {
        self.cost.as_ref().ok_or_else(|| CliError::Usage("problem file has no \"cost\" matrix".into()))
    }
}

fn warn_if_changed(name: &str, raw: &[f64], m: &MaxPlusMeasure<f64>) {
    if raw != m.weights() {
        eprintln!(
            "warning: {name} weights were not normalized; now {:?} (original positions, 1-based: {:?})",
            m.weights(),
            one_based(m.order())
        );
    }
}

pub fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(mu: Vec<f64>, nu: Vec<f64>, cost: Option<Vec<Vec<f64>>>) -> ProblemFile {
        ProblemFile { mu, nu, cost }
    }

    #[test]
    fn normalizes_and_permutes_cost() {
        let p = Problem::from_file(file(vec![-1.0, 1.0], vec![0.0], Some(vec![vec![5.0], vec![7.0]]))).unwrap();
        assert_eq!(p.mu.weights(), &[0.0, -2.0]);
        assert_eq!(p.cost.unwrap().to_rows(), vec![vec![7.0], vec![5.0]]);
    }

    #[test]
    fn rejects_shape_and_sign_errors() {
        assert!(Problem::from_file(file(vec![0.0], vec![0.0, 0.0], Some(vec![vec![1.0]]))).is_err());
        assert!(Problem::from_file(file(vec![0.0], vec![0.0], Some(vec![vec![-1.0]]))).is_err());
        assert!(Problem::from_file(file(vec![], vec![0.0], None)).is_err());
    }

    #[test]
    fn cost_is_optional() {
        let p: ProblemFile = serde_json::from_str(r#"{"mu":[0],"nu":[0,-1]}"#).unwrap();
        assert!(Problem::from_file(p).unwrap().require_cost().is_err());
    }
}
