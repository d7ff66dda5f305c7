//! JSON state files.
//!
//! ```json
//! { "name": "rho", "dims": [2, 2],
//!   "matrix": [[[0.3125, 0.0], [0.0625, 0.0], ...], ...] }
//! ```
//!
//! Rows are in row-major order over the composite index `i_A·dB + j_B`;
//! each entry is a `[re, im]` pair.

use deficitlab_core::{ComplexMatrix, DensityOperator, C64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dims: [usize; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Error)]
pub enum StateFileError {
    #[error("state file is not UTF-8: {0}")]
    Encoding(#[from] std::str::Utf8Error),
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    State(#[from] deficitlab_core::Error),
}

impl StateFile {
    pub fn parse(bytes: &[u8]) -> Result<Self, StateFileError> {
        let text = std::str::from_utf8(bytes)?;
        serde_json::from_str(text).map_err(|e| StateFileError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_state(name: Option<&str>, rho: &DensityOperator) -> Self {
        let m = rho.matrix();
        StateFile {
            name: name.map(str::to_string),
            dims: [rho.dims().0, rho.dims().1],
            matrix: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }

    pub fn to_density(&self) -> Result<DensityOperator, StateFileError> {
        let [da, db] = self.dims;
        if da == 0 || db == 0 {
            return Err(StateFileError::Field {
                field: "dims".into(),
                message: format!("dimensions must be positive, got [{da}, {db}]"),
            });
        }
        let side = da * db;
        if self.matrix.len() != side {
            return Err(StateFileError::Field {
                field: "matrix".into(),
                message: format!("expected {side} rows for dims [{da}, {db}], got {}", self.matrix.len()),
            });
        }
        let mut entries = Vec::with_capacity(side * side);
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != side {
                return Err(StateFileError::Field {
                    field: format!("matrix[{i}]"),
                    message: format!("expected {side} entries, got {}", row.len()),
                });
            }
            entries.extend(row.iter().map(|&[re, im]| C64::new(re, im)));
        }
        let m = ComplexMatrix::from_row_major(side, side, entries)?;
        Ok(DensityOperator::new(m, (da, db))?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Parses and validates a state file.
pub fn parse_state_file(bytes: &[u8]) -> Result<DensityOperator, StateFileError> {
    StateFile::parse(bytes)?.to_density()
}

#[cfg(test)]
mod tests {
    use super::*;
    use deficitlab_core::{catalog_state, CatalogName, Error};

    #[test]
    fn maximally_mixed_file() {
        let text = r#"{"dims":[2,2],"matrix":[
            [[0.25,0],[0,0],[0,0],[0,0]],
            [[0,0],[0.25,0],[0,0],[0,0]],
            [[0,0],[0,0],[0.25,0],[0,0]],
            [[0,0],[0,0],[0,0],[0.25,0]]]}"#;
        let rho = parse_state_file(text.as_bytes()).unwrap();
        assert_eq!(rho, DensityOperator::maximally_mixed((2, 2)));
    }

    #[test]
    fn sixteenths_file_matches_catalog() {
        let rows: [[f64; 4]; 4] = [
            [5.0, 1.0, 1.0, 1.0],
            [1.0, 3.0, 1.0, -1.0],
            [1.0, 1.0, 3.0, -1.0],
            [1.0, -1.0, -1.0, 5.0],
        ];
        let file = StateFile {
            name: Some("rho".into()),
            dims: [2, 2],
            matrix: rows
                .iter()
                .map(|r| r.iter().map(|&x| [x / 16.0, 0.0]).collect())
                .collect(),
        };
        let parsed = parse_state_file(file.to_json().as_bytes()).unwrap();
        let catalog = catalog_state(&CatalogName::RhoMix(0.5)).unwrap();
        assert!(parsed.matrix().max_abs_diff(catalog.matrix()) <= 1e-12);
    }

    #[test]
    fn half_trace_names_trace() {
        let text = r#"{"dims":[2,1],"matrix":[[[0.25,0],[0,0]],[[0,0],[0.25,0]]]}"#;
        match parse_state_file(text.as_bytes()) {
            Err(StateFileError::State(Error::Validation { check, .. })) => assert_eq!(check, "trace"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let text = "{\n  \"dims\": [2, 2],\n  \"matrix\": [oops]\n}";
        match parse_state_file(text.as_bytes()) {
            Err(StateFileError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ragged_row_names_field() {
        let text = r#"{"dims":[2,1],"matrix":[[[1,0],[0,0]],[[0,0]]]}"#;
        match parse_state_file(text.as_bytes()) {
            Err(StateFileError::Field { field, .. }) => assert_eq!(field, "matrix[1]"),
            other => panic!("{other:?}"),
        }
    }
}
