//! File ingestion: contingency tables as CSV, plain count vectors and
//! probability vectors, and the per-replicate CSV writer.

use std::fs;
use std::io::Write;
use std::path::Path;

use thiserror::Error;

use sparse_gof::{ContingencyTable, ReplicateRecord};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("negative count at line {line}, column {column} (cell '{cell}')")]
    NegativeCount {
        line: usize,
        column: usize,
        cell: String,
    },
    #[error("ragged rows: line {line} has {got} fields, expected {expected}")]
    RaggedRows {
        line: usize,
        got: usize,
        expected: usize,
    },
    #[error("{0}")]
    Table(#[from] sparse_gof::GofError),
}

fn read_to_string(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Parse a contingency table from CSV: first row holds column labels (its
/// first field is blank or "rows"), each following row a row label and
/// nonnegative integer counts.
pub fn read_table_csv(path: &Path) -> Result<ContingencyTable, IoError> {
    let text = read_to_string(path)?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(IoError::Parse {
        line: 1,
        column: 1,
        message: "empty file".into(),
    })?;
    let header_fields: Vec<&str> = header.split(',').map(str::trim).collect();
    if header_fields.len() < 2 {
        return Err(IoError::Parse {
            line: 1,
            column: 1,
            message: "header must name at least one column".into(),
        });
    }
    let col_labels: Vec<String> = header_fields[1..].iter().map(|s| s.to_string()).collect();
    let expected = header_fields.len();

    let mut row_labels = Vec::new();
    let mut data = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != expected {
            return Err(IoError::RaggedRows {
                line: line_no,
                got: fields.len(),
                expected,
            });
        }
        row_labels.push(fields[0].to_string());
        for (k, cell) in fields[1..].iter().enumerate() {
            let column = k + 2;
            if cell.starts_with('-') && cell[1..].parse::<u64>().is_ok() {
                return Err(IoError::NegativeCount {
                    line: line_no,
                    column,
                    cell: cell.to_string(),
                });
            }
            let value: u64 = cell.parse().map_err(|_| IoError::Parse {
                line: line_no,
                column,
                message: format!("'{cell}' is not a nonnegative integer"),
            })?;
            data.push(value);
        }
    }
    Ok(ContingencyTable::new(row_labels, col_labels, data)?)
}

/// Read a whitespace/comma separated vector of nonnegative integer counts.
pub fn read_counts_file(path: &Path) -> Result<Vec<u64>, IoError> {
    let text = read_to_string(path)?;
    let mut counts = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for (k, token) in line
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            if token.starts_with('-') && token[1..].parse::<u64>().is_ok() {
                return Err(IoError::NegativeCount {
                    line: idx + 1,
                    column: k + 1,
                    cell: token.to_string(),
                });
            }
            counts.push(token.parse().map_err(|_| IoError::Parse {
                line: idx + 1,
                column: k + 1,
                message: format!("'{token}' is not a nonnegative integer"),
            })?);
        }
    }
    if counts.is_empty() {
        return Err(IoError::Parse {
            line: 1,
            column: 1,
            message: "no counts found".into(),
        });
    }
    Ok(counts)
}

/// Read a whitespace/comma separated probability vector.
pub fn read_probability_file(path: &Path) -> Result<Vec<f64>, IoError> {
    let text = read_to_string(path)?;
    let mut probs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for (k, token) in line
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            let p: f64 = token.parse().map_err(|_| IoError::Parse {
                line: idx + 1,
                column: k + 1,
                message: format!("'{token}' is not a number"),
            })?;
            probs.push(p);
        }
    }
    sparse_gof::distributions::validate_probability_vector(&probs)?;
    Ok(probs)
}

/// Write the per-replicate record table as CSV.
pub fn write_records_csv(path: &Path, records: &[ReplicateRecord]) -> Result<(), IoError> {
    let mut out = String::from("replicate,c,Q,G,RC23,Qab,Gab,applicable\n");
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.replicate,
            r.c,
            r.q,
            r.g,
            r.rc23,
            opt(r.q_ab),
            opt(r.g_ab),
            r.correction_applicable
        ));
    }
    let mut file = fs::File::create(path).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })?;
    file.write_all(out.as_bytes()).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_labeled_table() {
        let f = write_temp("rows,a,b,c\nr1,1,2,3\nr2,4,0,6\n");
        let t = read_table_csv(f.path()).unwrap();
        assert_eq!((t.rows(), t.cols()), (2, 3));
        assert_eq!(t.get(1, 1), 0);
        assert_eq!(t.col_labels(), &["a", "b", "c"]);
    }

    #[test]
    fn reports_negative_count_with_cell() {
        let f = write_temp("rows,a,b\nr1,1,-2\n");
        match read_table_csv(f.path()) {
            Err(IoError::NegativeCount { line, column, cell }) => {
                assert_eq!((line, column), (2, 3));
                assert_eq!(cell, "-2");
            }
            other => panic!("expected NegativeCount, got {other:?}"),
        }
    }

    #[test]
    fn reports_ragged_rows() {
        let f = write_temp("rows,a,b\nr1,1\n");
        assert!(matches!(
            read_table_csv(f.path()),
            Err(IoError::RaggedRows { line: 2, .. })
        ));
    }

    #[test]
    fn reports_parse_error_position() {
        let f = write_temp("rows,a,b\nr1,1,x\n");
        match read_table_csv(f.path()) {
            Err(IoError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("expected Parse, got {other:?}"),
        }
    }

    #[test]
    fn counts_file_accepts_mixed_separators() {
        let f = write_temp("1, 2 3\n4\n");
        assert_eq!(read_counts_file(f.path()).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn probability_file_must_normalize() {
        let f = write_temp("0.5 0.6");
        assert!(read_probability_file(f.path()).is_err());
        let f = write_temp("0.5 0.5");
        assert_eq!(read_probability_file(f.path()).unwrap(), vec![0.5, 0.5]);
    }
}
