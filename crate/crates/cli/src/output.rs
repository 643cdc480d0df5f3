//! Artifact formatting: CSV and JSON with a header echoing the configuration.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Shortest round-trip decimal; exponent form outside `[1e-5, 1e16)`.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone)]
pub struct Header {
    pub seed: u64,
    pub config: Value,
}

impl Header {
    pub fn csv(&self, columns: &[&str], rows: &[Vec<String>]) -> String {
        let mut out = format!("# wavegraph {VERSION}\n# seed {}\n# config {}\n", self.seed, self.config);
        out.push_str(&columns.join(","));
        out.push('\n');
        for row in rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// The body's fields next to `version`, `seed` and `config`.
    pub fn json(&self, body: &impl Serialize) -> Result<String> {
        let mut map = match serde_json::to_value(body)? {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other);
                m
            }
        };
        map.insert("version".into(), Value::String(VERSION.into()));
        map.insert("seed".into(), Value::from(self.seed));
        map.insert("config".into(), self.config.clone());
        let mut text = serde_json::to_string_pretty(&Value::Object(map))?;
        text.push('\n');
        Ok(text)
    }
}

/// Writes artifacts into `--output dir`, or to stdout.
#[derive(Debug, Clone)]
pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("cannot create output directory {}", d.display()))?;
        }
        Ok(Sink { dir })
    }

    /// Writes `name` into the output directory, or prints it when `stdout` is set
    /// and there is no directory.
    pub fn emit(&self, name: &str, content: &str, stdout: bool) -> Result<()> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, content).with_context(|| format!("cannot write {}", path.display()))
            }
            None if stdout => {
                let mut out = std::io::stdout().lock();
                out.write_all(content.as_bytes())?;
                out.flush()?;
                Ok(())
            }
            None => Ok(()),
        }
    }
}
