//! CSV ingestion and emission.
//!
//! Dataset files carry a header row, feature columns as decimal floats, a
//! `label` column in {-1, +1} and, for synthetic data, an optional
//! `provenance` column in {genuine, outlier}. Arbitrary CSV files (e.g. UCI
//! exports) are ingested by naming the label column and the positive-class
//! token: categorical columns are one-hot encoded and every feature column
//! is standardized to zero mean and unit variance over the loaded set.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::data::{Dataset, Example, Label, Provenance};
use crate::error::{Error, Result};

const PROVENANCE_COLUMN: &str = "provenance";

/// Loads a CSV file into a standardized dataset.
///
/// Columns whose every value parses as a float stay numeric; all other
/// columns are expanded into one indicator per distinct value (categories
/// ordered lexicographically). A column named `provenance` is treated as
/// outlier bookkeeping, not as a feature.
pub fn load_csv(path: &Path, label_col: &str, positive_token: &str) -> Result<Dataset> {
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers: Vec<String> = reader
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let label_idx = headers
        .iter()
        .position(|h| h == label_col)
        .ok_or_else(|| Error::NonBinaryLabel {
            column: label_col.to_string(),
            reason: "column not found".to_string(),
        })?;
    let provenance_idx = headers.iter().position(|h| h == PROVENANCE_COLUMN);

    let mut rows: Vec<Vec<String>> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record
            .position()
            .map(|p| p.line())
            .unwrap_or(rows.len() as u64 + 2);
        if record.len() != headers.len() {
            return Err(Error::MalformedRow {
                path: display.clone(),
                line,
                reason: format!(
                    "expected {} fields, got {}",
                    headers.len(),
                    record.len()
                ),
            });
        }
        rows.push(record.iter().map(|f| f.trim().to_string()).collect());
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }

    // labels must be exactly two distinct tokens, one of them the positive one
    let label_tokens: BTreeSet<&str> = rows.iter().map(|r| r[label_idx].as_str()).collect();
    if label_tokens.len() != 2 {
        return Err(Error::NonBinaryLabel {
            column: label_col.to_string(),
            reason: format!("found {} distinct values", label_tokens.len()),
        });
    }
    if !label_tokens.contains(positive_token) {
        return Err(Error::NonBinaryLabel {
            column: label_col.to_string(),
            reason: format!("positive token `{positive_token}` does not occur"),
        });
    }

    let feature_cols: Vec<usize> = (0..headers.len())
        .filter(|&i| i != label_idx && Some(i) != provenance_idx)
        .collect();

    // a column is numeric iff every value parses as f64
    let mut numeric: Vec<bool> = Vec::with_capacity(feature_cols.len());
    for &col in &feature_cols {
        numeric.push(rows.iter().all(|r| r[col].parse::<f64>().is_ok()));
    }
    // category dictionaries for the one-hot columns
    let categories: Vec<Vec<String>> = feature_cols
        .iter()
        .zip(numeric.iter())
        .map(|(&col, &is_num)| {
            if is_num {
                Vec::new()
            } else {
                rows.iter()
                    .map(|r| r[col].clone())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect()
            }
        })
        .collect();

    let encoded_dim: usize = feature_cols
        .iter()
        .enumerate()
        .map(|(j, _)| if numeric[j] { 1 } else { categories[j].len() })
        .sum();

    let mut features: Vec<Vec<f64>> = Vec::with_capacity(rows.len());
    let mut labels: Vec<Label> = Vec::with_capacity(rows.len());
    let mut provenances: Vec<Provenance> = Vec::with_capacity(rows.len());
    for (row_idx, row) in rows.iter().enumerate() {
        let line = row_idx as u64 + 2;
        let mut vector = Vec::with_capacity(encoded_dim);
        for (j, &col) in feature_cols.iter().enumerate() {
            if numeric[j] {
                let value: f64 = row[col].parse().map_err(|_| Error::MalformedRow {
                    path: display.clone(),
                    line,
                    reason: format!("column `{}`: not a number", headers[col]),
                })?;
                if !value.is_finite() {
                    return Err(Error::MalformedRow {
                        path: display.clone(),
                        line,
                        reason: format!("column `{}`: non-finite value", headers[col]),
                    });
                }
                vector.push(value);
            } else {
                for cat in &categories[j] {
                    vector.push(if *cat == row[col] { 1.0 } else { 0.0 });
                }
            }
        }
        labels.push(if row[label_idx] == positive_token {
            Label::Pos
        } else {
            Label::Neg
        });
        provenances.push(match provenance_idx {
            Some(pi) if row[pi] == "outlier" => Provenance::Outlier,
            _ => Provenance::Genuine,
        });
        features.push(vector);
    }

    standardize(&mut features);

    let examples = features
        .into_iter()
        .zip(labels)
        .zip(provenances)
        .map(|((f, label), provenance)| Example::new(f, label, provenance))
        .collect::<Result<Vec<_>>>()?;
    Dataset::from_examples(encoded_dim, examples)
}

/// In-place zero-mean unit-variance scaling per column. Constant columns
/// become all zeros.
fn standardize(features: &mut [Vec<f64>]) {
    if features.is_empty() {
        return;
    }
    let n = features.len() as f64;
    let dim = features[0].len();
    for j in 0..dim {
        let mean = features.iter().map(|r| r[j]).sum::<f64>() / n;
        let var = features.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
        let sd = var.sqrt();
        for row in features.iter_mut() {
            row[j] = if sd > 1e-12 { (row[j] - mean) / sd } else { 0.0 };
        }
    }
}

/// Writes a dataset with header `f0..f{p-1},label[,provenance]`.
pub fn write_dataset_csv(path: &Path, data: &Dataset, with_provenance: bool) -> Result<()> {
    let file = File::create(path)?;
    let mut out = BufWriter::new(file);
    let mut header: Vec<String> = (0..data.dim()).map(|j| format!("f{j}")).collect();
    header.push("label".to_string());
    if with_provenance {
        header.push(PROVENANCE_COLUMN.to_string());
    }
    writeln!(out, "{}", header.join(","))?;
    for ex in data.examples() {
        let mut fields: Vec<String> = ex.features().iter().map(|v| format!("{v}")).collect();
        fields.push(format!("{}", ex.label().as_i8()));
        if with_provenance {
            fields.push(
                match ex.provenance() {
                    Provenance::Genuine => "genuine",
                    Provenance::Outlier => "outlier",
                }
                .to_string(),
            );
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    out.flush()?;
    Ok(())
}
