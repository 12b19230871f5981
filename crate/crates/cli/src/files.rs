use std::fs;
use std::io::Write;
use std::path::Path;

use mst3_ree::format::{self, CiphertextFile};
use mst3_ree::{PrivateKey, PublicKey};
use tempfile::NamedTempFile;

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so `path` either holds the full contents or is untouched.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn load_public(path: &Path) -> Result<PublicKey, CliError> {
    format::read_public(&read_text(path)?).map_err(|e| CliError::format(path, e))
}

pub fn load_secret(path: &Path) -> Result<(PublicKey, PrivateKey), CliError> {
    format::read_secret(&read_text(path)?).map_err(|e| CliError::format(path, e))
}

pub fn load_ciphertext(path: &Path, pk: &PublicKey) -> Result<CiphertextFile, CliError> {
    let file = CiphertextFile::read(&read_text(path)?).map_err(|e| CliError::format(path, e))?;
    if &file.field != pk.params.group.field() {
        return Err(CliError::Format(format!(
            "{}: ciphertext field differs from the key's field",
            path.display()
        )));
    }
    Ok(file)
}
