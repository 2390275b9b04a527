//! Writing result files. Every file carries the run's settings: JSON under
//! a top-level `settings` key, CSV as a leading `# settings: {...}` comment
//! line, SVG inside `<desc>`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::error::{CliError, Result};

pub const DEFAULT_FORMATS: [Format; 3] = [Format::Csv, Format::Json, Format::Svg];

#[derive(Debug)]
pub struct Output {
    dir: Option<PathBuf>,
    formats: BTreeSet<Format>,
    written: Vec<PathBuf>,
}

impl Output {
    pub fn new(dir: Option<PathBuf>, formats: Option<Vec<Format>>) -> Self {
        Self {
            dir,
            formats: formats
                .unwrap_or_else(|| DEFAULT_FORMATS.to_vec())
                .into_iter()
                .collect(),
            written: Vec::new(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn formats(&self) -> Vec<Format> {
        self.formats.iter().copied().collect()
    }

    pub fn wants(&self, format: Format) -> bool {
        self.dir.is_some() && self.formats.contains(&format)
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let io_err = |path: &Path, source| CliError::Output {
            path: path.display().to_string(),
            source,
        };
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let path = dir.join(name);
        std::fs::write(&path, bytes).map_err(|e| io_err(&path, e))?;
        self.written.push(path);
        Ok(())
    }

    /// Writes `{name}.csv` when CSV output is enabled.
    pub fn csv<F>(&mut self, name: &str, settings: &Value, body: F) -> Result<()>
    where
        F: FnOnce(&mut Vec<u8>) -> csv::Result<()>,
    {
        if !self.wants(Format::Csv) {
            return Ok(());
        }
        let mut buf = format!("# settings: {}\n", compact(settings)).into_bytes();
        body(&mut buf).map_err(|e| CliError::Output {
            path: format!("{name}.csv"),
            source: std::io::Error::other(e.to_string()),
        })?;
        self.write(&format!("{name}.csv"), &buf)
    }

    /// Writes `{name}.json`: the fields of `body` plus a `settings` object.
    pub fn json<S: Serialize>(&mut self, name: &str, settings: &Value, body: &S) -> Result<()> {
        if !self.wants(Format::Json) {
            return Ok(());
        }
        let mut doc = serde_json::Map::new();
        doc.insert("settings".into(), settings.clone());
        match serde_json::to_value(body).expect("serializable output") {
            Value::Object(fields) => {
                for (k, v) in fields {
                    if k != "settings" {
                        doc.insert(k, v);
                    }
                }
            }
            other => {
                doc.insert("result".into(), other);
            }
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable output");
        text.push('\n');
        self.write(&format!("{name}.json"), text.as_bytes())
    }

    pub fn svg(&mut self, name: &str, document: &str) -> Result<()> {
        if !self.wants(Format::Svg) {
            return Ok(());
        }
        self.write(&format!("{name}.svg"), document.as_bytes())
    }
}

pub fn compact(value: &Value) -> String {
    serde_json::to_string(value).expect("serializable settings")
}

pub fn path_string(path: &Path) -> String {
    path.display().to_string()
}
