//! Probability lists: one decimal per line with `#` comments, or a single
//! JSON array when the first non-blank character is `[`.

use std::io::Read;
use std::path::Path;

use crate::error::{CliError, Result};

pub fn read_source(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::Input {
            path: path.display().to_string(),
            source,
        })
    }
}

pub fn parse_probabilities(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let line = text.len() - trimmed.len();
        let line = text[..line].matches('\n').count() + 1;
        return serde_json::from_str::<Vec<f64>>(trimmed).map_err(|e| CliError::Parse {
            line: line + e.line() - 1,
            message: e.to_string(),
        });
    }
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let value: f64 = content.parse().map_err(|_| CliError::Parse {
            line: i + 1,
            message: format!("not a decimal number: {content:?}"),
        })?;
        if !value.is_finite() {
            return Err(CliError::Parse {
                line: i + 1,
                message: format!("not a finite number: {content:?}"),
            });
        }
        out.push(value);
    }
    Ok(out)
}
