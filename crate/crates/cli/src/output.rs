//! Record output shared by all commands: CSV with a header row, or a JSON
//! array of objects keyed by the same header.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{Map, Value};

/// Directory that relative `--output` paths are resolved against.
pub const OUTPUT_DIR_VAR: &str = "MOTZKIN_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One field of a record. Big integers are written in decimal; JSON carries
/// them as strings so no precision is lost.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Big(String),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Big(s) | Cell::Text(s) => s.clone(),
            Cell::Float(x) => format_float(*x),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(x) => Value::from(*x),
            Cell::Big(s) | Cell::Text(s) => Value::from(s.as_str()),
            Cell::Float(x) => Value::from(*x),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as u64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<&num_bigint::BigUint> for Cell {
    fn from(x: &num_bigint::BigUint) -> Self {
        Cell::Big(x.to_string())
    }
}

fn format_float(x: f64) -> String {
    format!("{x:.6}")
}

/// Streams records as they are produced, flushing after each one so long
/// experiments leave usable partial output.
pub struct RecordWriter {
    format: Format,
    header: Vec<String>,
    csv: Option<csv::Writer<Box<dyn Write>>>,
    raw: Option<Box<dyn Write>>,
    written: usize,
}

impl RecordWriter {
    pub fn new(out: Box<dyn Write>, format: Format, header: &[&str]) -> io::Result<Self> {
        let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
        let mut w = RecordWriter {
            format,
            header,
            csv: None,
            raw: None,
            written: 0,
        };
        match format {
            Format::Csv => {
                let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
                csv.write_record(&w.header)?;
                w.csv = Some(csv);
            }
            Format::Json => {
                let mut out = out;
                out.write_all(b"[")?;
                w.raw = Some(out);
            }
        }
        Ok(w)
    }

    pub fn write(&mut self, record: &[Cell]) -> io::Result<()> {
        assert_eq!(record.len(), self.header.len(), "record width");
        match self.format {
            Format::Csv => {
                let csv = self.csv.as_mut().expect("csv writer");
                csv.write_record(record.iter().map(Cell::csv))?;
                csv.flush()?;
            }
            Format::Json => {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .cloned()
                    .zip(record.iter().map(Cell::json))
                    .collect();
                let out = self.raw.as_mut().expect("json writer");
                if self.written > 0 {
                    out.write_all(b",")?;
                }
                out.write_all(b"\n")?;
                serde_json::to_writer(&mut *out, &Value::Object(obj))?;
                out.flush()?;
            }
        }
        self.written += 1;
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<()> {
        if let Some(mut csv) = self.csv.take() {
            csv.flush()?;
        }
        if let Some(mut out) = self.raw.take() {
            out.write_all(b"\n]\n")?;
            out.flush()?;
        }
        Ok(())
    }
}

/// Where `--output` points, with relative paths placed under
/// `$MOTZKIN_OUTPUT_DIR` when it is set.
pub fn resolve_output(path: &Path, output_dir: Option<&Path>) -> PathBuf {
    match output_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

/// Opens the output sink: the resolved file, or standard output.
pub fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    let Some(path) = path else {
        return Ok(Box::new(BufWriter::new(io::stdout())));
    };
    let dir = std::env::var_os(OUTPUT_DIR_VAR).map(PathBuf::from);
    let path = resolve_output(path, dir.as_deref());
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    Ok(Box::new(BufWriter::new(File::create(path)?)))
}
