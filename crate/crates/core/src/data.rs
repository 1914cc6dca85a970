//! The object being screened: a response plus a column-major predictor matrix.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_finite, Result, ScreenError};

/// How the response is sliced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResponseKind {
    Continuous,
    /// Finite label set; each label is one slice.
    Categorical,
    /// Nonnegative integers, sliced with the capped map `G = min(Y + 1, S)`.
    Count,
}

impl ResponseKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ResponseKind::Continuous => "continuous",
            ResponseKind::Categorical => "categorical",
            ResponseKind::Count => "count",
        }
    }
}

impl fmt::Display for ResponseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ResponseKind {
    type Err = ScreenError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "continuous" => Ok(ResponseKind::Continuous),
            "categorical" => Ok(ResponseKind::Categorical),
            "count" => Ok(ResponseKind::Count),
            other => Err(ScreenError::invalid(format!("unknown response kind `{other}`"))),
        }
    }
}

/// Response vector and predictor columns over the same `n` observations.
///
/// Predictors are stored column-major since every screener walks one column at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    y: Vec<f64>,
    columns: Vec<Vec<f64>>,
    kind: ResponseKind,
    names: Option<Vec<String>>,
}

impl Dataset {
    pub fn new(y: Vec<f64>, columns: Vec<Vec<f64>>, kind: ResponseKind) -> Result<Self> {
        let n = y.len();
        if n < 2 {
            return Err(ScreenError::invalid(format!("need at least 2 observations, got {n}")));
        }
        if columns.is_empty() {
            return Err(ScreenError::invalid("need at least one predictor column"));
        }
        check_finite(&y, "response")?;
        if kind == ResponseKind::Count {
            if let Some(i) = y.iter().position(|&v| v < 0.0 || v.fract() != 0.0) {
                return Err(ScreenError::invalid(format!(
                    "count response must be a nonnegative integer, got {} at row {i}",
                    y[i]
                )));
            }
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(ScreenError::invalid(format!(
                    "predictor has {} rows, response has {n}",
                    col.len()
                ))
                .in_column(j));
            }
            check_finite(col, "predictor").map_err(|e| e.in_column(j))?;
        }
        Ok(Dataset {
            y,
            columns,
            kind,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.columns.len() {
            return Err(ScreenError::invalid(format!(
                "{} names supplied for {} predictors",
                names.len(),
                self.columns.len()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn p(&self) -> usize {
        self.columns.len()
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn kind(&self) -> ResponseKind {
        self.kind
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Name of predictor `j`, falling back to `x{j+1}`.
    pub fn name(&self, j: usize) -> String {
        match &self.names {
            Some(names) => names[j].clone(),
            None => format!("x{}", j + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(Dataset::new(vec![1.0], vec![vec![1.0]], ResponseKind::Continuous).is_err());
        assert!(Dataset::new(vec![1.0, 2.0], vec![], ResponseKind::Continuous).is_err());
        let err = Dataset::new(
            vec![1.0, 2.0],
            vec![vec![1.0, 2.0], vec![1.0]],
            ResponseKind::Continuous,
        )
        .unwrap_err();
        assert!(matches!(err, ScreenError::Column { index: 1, .. }));
    }

    #[test]
    fn rejects_non_finite() {
        let err = Dataset::new(
            vec![1.0, 2.0],
            vec![vec![1.0, f64::NAN]],
            ResponseKind::Continuous,
        )
        .unwrap_err();
        assert!(matches!(err, ScreenError::Column { index: 0, .. }));
        assert!(Dataset::new(vec![f64::INFINITY, 2.0], vec![vec![1.0, 2.0]], ResponseKind::Continuous).is_err());
    }

    #[test]
    fn count_response_must_be_nonnegative_integer() {
        let cols = vec![vec![1.0, 2.0, 3.0]];
        assert!(Dataset::new(vec![0.0, 1.5, 2.0], cols.clone(), ResponseKind::Count).is_err());
        assert!(Dataset::new(vec![0.0, -1.0, 2.0], cols.clone(), ResponseKind::Count).is_err());
        assert!(Dataset::new(vec![0.0, 1.0, 7.0], cols, ResponseKind::Count).is_ok());
    }

    #[test]
    fn kind_parses() {
        assert_eq!("Count".parse::<ResponseKind>().unwrap(), ResponseKind::Count);
        assert!("ordinal".parse::<ResponseKind>().is_err());
    }
}
