use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use crate::args::{Common, Format, OUTPUT_DIR_ENV};

/// A rendered report: the bytes plus the file extension it belongs under.
pub struct Rendered {
    pub bytes: Vec<u8>,
    pub format: Format,
}

pub fn json<T: Serialize>(value: &T) -> anyhow::Result<Rendered> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(Rendered {
        bytes,
        format: Format::Json,
    })
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<Rendered> {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(Rendered {
        bytes: w.into_inner().context("flushing csv")?,
        format: Format::Csv,
    })
}

fn destination(common: &Common, command: &str, format: Format) -> Option<PathBuf> {
    if let Some(p) = &common.output {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUTPUT_DIR_ENV)?;
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    Some(Path::new(&dir).join(format!("{command}.{ext}")))
}

/// Writes to a temporary file beside the destination, then renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

pub fn emit(common: &Common, command: &str, report: Rendered) -> anyhow::Result<()> {
    match destination(common, command, report.format) {
        Some(path) => write_atomic(&path, &report.bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&report.bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
