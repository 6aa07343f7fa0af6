//! JSON frame files (format version 1).
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "n": 2,
//!   "blocks": [
//!     { "rows": 1, "data": [ [[1.0, 0.0], [0.0, 0.0]] ] }
//!   ]
//! }
//! ```
//!
//! Every entry is a `[re, im]` pair of finite binary64 values, written in
//! shortest round-trip decimal so that writing and re-reading a frame is
//! bit-exact. A spectrum file is a frame file with a single `n×n` block.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::frame::OpvFrame;
use crate::matrix::{Complex64, ComplexMatrix};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    VersionUnsupported(u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-finite entry in block {block}, row {row}, column {col}")]
    NonFinite { block: usize, row: usize, col: usize },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameFile {
    format_version: u32,
    n: usize,
    blocks: Vec<BlockFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockFile {
    rows: usize,
    data: Vec<Vec<[f64; 2]>>,
}

/// Parses and validates a frame file's contents.
pub fn parse_frame(text: &str) -> Result<OpvFrame, FileError> {
    let file: FrameFile = serde_json::from_str(text).map_err(|e| FileError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.format_version != FORMAT_VERSION {
        return Err(FileError::VersionUnsupported(file.format_version));
    }
    if file.n == 0 {
        return Err(FileError::ShapeMismatch("n must be at least 1".into()));
    }
    if file.blocks.is_empty() {
        return Err(FileError::ShapeMismatch("a frame needs at least one block".into()));
    }
    let mut blocks = Vec::with_capacity(file.blocks.len());
    for (b, block) in file.blocks.into_iter().enumerate() {
        if block.rows == 0 || block.rows != block.data.len() {
            return Err(FileError::ShapeMismatch(format!(
                "block {b} declares {} rows but holds {}",
                block.rows,
                block.data.len()
            )));
        }
        let mut entries = Vec::with_capacity(block.rows * file.n);
        for (r, row) in block.data.into_iter().enumerate() {
            if row.len() != file.n {
                return Err(FileError::ShapeMismatch(format!(
                    "block {b}, row {r} has {} entries, expected n = {}",
                    row.len(),
                    file.n
                )));
            }
            for (c, [re, im]) in row.into_iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(FileError::NonFinite {
                        block: b,
                        row: r,
                        col: c,
                    });
                }
                entries.push(Complex64::new(re, im));
            }
        }
        blocks.push(
            ComplexMatrix::from_vec(block.rows, file.n, entries)
                .map_err(|e| FileError::ShapeMismatch(e.to_string()))?,
        );
    }
    OpvFrame::new(blocks).map_err(|e| FileError::ShapeMismatch(e.to_string()))
}

fn number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite f64 serializes")
}

/// Renders a frame in the version-1 layout, one matrix row per line.
pub fn format_frame(frame: &OpvFrame) -> Result<String, FileError> {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"n\": {},", frame.dim());
    let _ = writeln!(out, "  \"blocks\": [");
    let m = frame.num_blocks();
    for (b, block) in frame.blocks().iter().enumerate() {
        let _ = writeln!(out, "    {{");
        let _ = writeln!(out, "      \"rows\": {},", block.rows());
        let _ = writeln!(out, "      \"data\": [");
        for r in 0..block.rows() {
            let mut cells = Vec::with_capacity(block.cols());
            for (c, z) in block.row(r).iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(FileError::NonFinite {
                        block: b,
                        row: r,
                        col: c,
                    });
                }
                cells.push(format!("[{}, {}]", number(z.re), number(z.im)));
            }
            let sep = if r + 1 < block.rows() { "," } else { "" };
            let _ = writeln!(out, "        [{}]{sep}", cells.join(", "));
        }
        let _ = writeln!(out, "      ]");
        let _ = writeln!(out, "    }}{}", if b + 1 < m { "," } else { "" });
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    Ok(out)
}

pub fn read_frame(path: impl AsRef<Path>) -> Result<OpvFrame, FileError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_frame(&text)
}

pub fn write_frame(frame: &OpvFrame, path: impl AsRef<Path>) -> Result<(), FileError> {
    let path = path.as_ref();
    let text = format_frame(frame)?;
    fs::write(path, text).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a square matrix stored as a single-block frame file.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix, FileError> {
    let frame = read_frame(path)?;
    if frame.num_blocks() != 1 {
        return Err(FileError::ShapeMismatch(format!(
            "expected a single block, found {}",
            frame.num_blocks()
        )));
    }
    Ok(frame.into_blocks().remove(0))
}
