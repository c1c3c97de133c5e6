use std::path::{Path, PathBuf};

use crate::Failure;

/// Settings for `verify-all`. Every field can be set from a flat `key=value`
/// file; blank lines and lines starting with `#` are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub max_d: usize,
    pub seed: u64,
    pub restarts: usize,
    pub report: PathBuf,
    pub tol_esq: f64,
    pub tol_tmatrix: f64,
    pub tol_ppt: f64,
    pub tol_purity: f64,
    pub tol_purity_two_copy: f64,
    pub tol_negativity: f64,
    pub tol_separable: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_n: 64,
            max_d: 100,
            seed: 0,
            restarts: 200,
            report: PathBuf::from("report.json"),
            tol_esq: 1e-12,
            tol_tmatrix: 1e-8,
            tol_ppt: 1e-9,
            tol_purity: 1e-6,
            tol_purity_two_copy: 1e-5,
            tol_negativity: 1e-9,
            tol_separable: 1e-8,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Failure> {
    value
        .parse()
        .map_err(|_| Failure::Usage(format!("config: bad value {value:?} for {key}")))
}

impl SuiteConfig {
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), Failure> {
        match key {
            "max_n" => self.max_n = parse(key, value)?,
            "max_d" => self.max_d = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "restarts" => self.restarts = parse(key, value)?,
            "report" => self.report = PathBuf::from(value),
            "tol_esq" => self.tol_esq = parse(key, value)?,
            "tol_tmatrix" => self.tol_tmatrix = parse(key, value)?,
            "tol_ppt" => self.tol_ppt = parse(key, value)?,
            "tol_purity" => self.tol_purity = parse(key, value)?,
            "tol_purity_two_copy" => self.tol_purity_two_copy = parse(key, value)?,
            "tol_negativity" => self.tol_negativity = parse(key, value)?,
            "tol_separable" => self.tol_separable = parse(key, value)?,
            other => return Err(Failure::Usage(format!("config: unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn parse_str(&mut self, text: &str) -> Result<(), Failure> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("config line {}: expected key=value", i + 1)))?;
            self.apply(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn load(&mut self, path: &Path) -> Result<(), Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        self.parse_str(&text)
    }
}
