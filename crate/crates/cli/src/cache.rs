//! Result cache keyed by the SHA-256 of the canonical job description.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::doc::GeneratorsDoc;
use crate::error::CliError;

pub fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes()))))
}

pub fn load(dir: &Path, key: &str) -> Result<Option<GeneratorsDoc>, CliError> {
    let path = entry_path(dir, key);
    if !path.exists() {
        return Ok(None);
    }
    Ok(Some(serde_json::from_str(&fs::read_to_string(path)?)?))
}

/// Write via a temporary file so that readers never see a partial entry.
pub fn store(dir: &Path, key: &str, doc: &GeneratorsDoc) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let path = entry_path(dir, key);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_string_pretty(doc)?)?;
    fs::rename(tmp, path)?;
    Ok(())
}
