use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use bergman_core::verify::VERSION;
use bergman_core::Error;

use crate::config::RunConfig;
use crate::Result;

/// Report envelope: toolkit version and canonical config next to the result.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub toolkit: &'static str,
    pub version: &'static str,
    pub config: &'a RunConfig,
    pub result: &'a T,
}

impl<'a, T: Serialize> Envelope<'a, T> {
    pub fn new(config: &'a RunConfig, result: &'a T) -> Self {
        Self { toolkit: "bergman", version: VERSION, config, result }
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let tmp: PathBuf = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, config: &RunConfig, result: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&Envelope::new(config, result))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// A numeric table written as CSV.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        w.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format!("{v:e}"))).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        write_atomic(path, &bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub").join("a.json");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "two");
        let names: Vec<_> = fs::read_dir(path.parent().unwrap()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 1);
    }

    #[test]
    fn table_csv() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = Table::new(&["x", "y"]);
        t.push(vec![1.0, 0.25]);
        let path = dir.path().join("t.csv");
        t.write(&path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "x,y\n1e0,2.5e-1\n");
    }
}
