//! CSV ingestion: rectangular numeric datasets with optional header row and
//! wine-format class-label detection.

use std::path::Path;

use nalgebra::DMatrix;

use crate::error::CliError;

/// A rectangular set of named real-valued columns.
///
/// Two dialect conveniences cover the files this tool meets in practice:
///
/// * A header row is auto-detected: if any cell of the first row fails to
///   parse as a number, the row is taken as column names; otherwise columns
///   are named `c1..cN`.
/// * Wine-format detection: a headerless file whose first column is entirely
///   integral is treated as class-labeled — commands that default to "all
///   columns" skip the label column. Explicit `--col`/`--cols` selections
///   address every column either way.
pub struct Dataset {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
    label_first: bool,
}

impl Dataset {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_path(path)?;

        let mut rows: Vec<Vec<String>> = Vec::new();
        for record in reader.records() {
            let record = record?;
            if record.iter().all(|cell| cell.is_empty()) {
                continue; // skip blank lines
            }
            rows.push(record.iter().map(str::to_string).collect());
        }
        if rows.is_empty() {
            return Err(CliError::Usage(format!(
                "{}: no data rows",
                path.display()
            )));
        }

        let header_present = rows[0].iter().any(|cell| cell.parse::<f64>().is_err());
        let names: Vec<String> = if header_present {
            rows.remove(0)
        } else {
            (1..=rows[0].len()).map(|i| format!("c{i}")).collect()
        };
        if rows.is_empty() {
            return Err(CliError::Usage(format!(
                "{}: header only, no data rows",
                path.display()
            )));
        }

        let ncols = names.len();
        let mut columns = vec![Vec::with_capacity(rows.len()); ncols];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(CliError::Usage(format!(
                    "{}: row {} has {} fields, expected {ncols}",
                    path.display(),
                    r + 1,
                    row.len()
                )));
            }
            for (c, cell) in row.iter().enumerate() {
                let value: f64 = cell.parse().map_err(|_| {
                    CliError::Usage(format!(
                        "{}: row {}, column {}: cannot parse {cell:?} as a number",
                        path.display(),
                        r + 1,
                        c + 1
                    ))
                })?;
                columns[c].push(value);
            }
        }

        let label_first = !header_present
            && ncols >= 2
            && columns[0].iter().all(|v| v.fract() == 0.0 && v.is_finite());
        Ok(Self {
            names,
            columns,
            label_first,
        })
    }

    pub fn nrows(&self) -> usize {
        self.columns[0].len()
    }

    /// Resolve a selector — a column name or a 1-based index — to a column
    /// position.
    pub fn col_index(&self, selector: &str) -> Result<usize, CliError> {
        if let Some(idx) = self.names.iter().position(|n| n == selector) {
            return Ok(idx);
        }
        if let Ok(idx) = selector.parse::<usize>() {
            if (1..=self.columns.len()).contains(&idx) {
                return Ok(idx - 1);
            }
        }
        Err(CliError::Usage(format!(
            "no column {selector:?} (have: {})",
            self.names.join(", ")
        )))
    }

    pub fn column(&self, selector: &str) -> Result<&[f64], CliError> {
        Ok(&self.columns[self.col_index(selector)?])
    }

    /// Resolve a comma-separated selector list; an empty selection falls
    /// back to every column except a detected class label.
    pub fn resolve_cols(&self, selectors: Option<&str>) -> Result<Vec<usize>, CliError> {
        match selectors {
            Some(list) => list.split(',').map(|s| self.col_index(s.trim())).collect(),
            None => {
                let skip = usize::from(self.label_first);
                Ok((skip..self.columns.len()).collect())
            }
        }
    }

    /// Assemble the selected columns into an observations × variables
    /// matrix.
    pub fn matrix(&self, indices: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(self.nrows(), indices.len(), |r, c| {
            self.columns[indices[c]][r]
        })
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }
}
