//! CSV tables with fixed column order and atomic file output.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(k) => k.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        // Normalise −0.
        return "0".into();
    }
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render)).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

/// Write via a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let io = |e: std::io::Error| CliError::Usage(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Where command output goes: stdout, or `<out>/<name>.csv`.
pub struct Sink {
    pub out: Option<PathBuf>,
    pub svg: bool,
}

impl Sink {
    pub fn new(out: Option<PathBuf>, svg: bool) -> Result<Self, CliError> {
        if svg && out.is_none() {
            return Err(CliError::Usage("--svg needs an output directory (--out or run.out)".into()));
        }
        if let Some(d) = &out {
            std::fs::create_dir_all(d)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", d.display())))?;
        }
        Ok(Sink { out, svg })
    }

    /// Emit the primary table of a command. Returns the CSV bytes.
    pub fn emit(&self, name: &str, table: &Table) -> Result<Vec<u8>, CliError> {
        let bytes = table.to_csv();
        match &self.out {
            Some(d) => write_atomic(&d.join(format!("{name}.csv")), &bytes)?,
            None => {
                let mut so = std::io::stdout().lock();
                so.write_all(&bytes)
                    .and_then(|_| so.flush())
                    .map_err(|e| CliError::Usage(format!("stdout: {e}")))?;
            }
        }
        Ok(bytes)
    }

    /// Secondary tables are only written to files.
    pub fn emit_file(&self, name: &str, table: &Table) -> Result<Option<Vec<u8>>, CliError> {
        match &self.out {
            Some(d) => {
                let bytes = table.to_csv();
                write_atomic(&d.join(format!("{name}.csv")), &bytes)?;
                Ok(Some(bytes))
            }
            None => Ok(None),
        }
    }

    /// Render an SVG from CSV bytes when `--svg` is on.
    pub fn plot(&self, name: &str, csv: &[u8], x: &str, ys: &[&str], title: &str) -> Result<(), CliError> {
        if !self.svg {
            return Ok(());
        }
        let Some(d) = &self.out else { return Ok(()) };
        let svg = crate::svg::render_csv(csv, x, ys, title)?;
        write_atomic(&d.join(format!("{name}.svg")), svg.as_bytes())
    }
}
