//! Output plumbing: CSV or JSON, to stdout or a file, byte-deterministic
//! for a fixed invocation.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use num_bigint::BigUint;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Sink {
    writer: Box<dyn Write>,
    pub format: Format,
    json_rows: Vec<Value>,
}

impl Sink {
    pub fn open(format: Format, path: Option<&PathBuf>) -> io::Result<Sink> {
        let writer: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink {
            writer,
            format,
            json_rows: Vec::new(),
        })
    }

    /// Emit one record: a raw CSV line, or a JSON object collected into the
    /// final array.
    pub fn record(&mut self, csv_line: &str, json_value: Value) -> io::Result<()> {
        match self.format {
            Format::Csv => writeln!(self.writer, "{csv_line}"),
            Format::Json => {
                self.json_rows.push(json_value);
                Ok(())
            }
        }
    }

    /// CSV header (CSV mode only).
    pub fn header(&mut self, header: &str) -> io::Result<()> {
        if self.format == Format::Csv {
            writeln!(self.writer, "{header}")?;
        }
        Ok(())
    }

    /// Comment line (CSV mode only).
    pub fn comment(&mut self, text: &str) -> io::Result<()> {
        if self.format == Format::Csv {
            writeln!(self.writer, "# {text}")?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<()> {
        if self.format == Format::Json {
            let body = serde_json::to_string_pretty(&Value::Array(std::mem::take(
                &mut self.json_rows,
            )))
            .expect("serialization cannot fail");
            writeln!(self.writer, "{body}")?;
        }
        self.writer.flush()
    }
}

/// Big naturals become JSON numbers while they fit 64 bits and decimal
/// strings beyond that, so consumers never overflow.
pub fn big_json(value: &BigUint) -> Value {
    match u64::try_from(value) {
        Ok(small) => json!(small),
        Err(_) => json!(value.to_string()),
    }
}
