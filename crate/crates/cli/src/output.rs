//! CSV and JSON serialization.
//!
//! Numbers in CSV are written as `{:.16e}`: 17 significant digits, `.` as
//! the decimal separator, independent of locale. Lines end in `\n`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::CliError;

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_row(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes `body` to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let io_err = |source: io::Error| CliError::Io {
                path: p.display().to_string(),
                source,
            };
            let mut w = BufWriter::new(File::create(p).map_err(io_err)?);
            w.write_all(body.as_bytes()).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
