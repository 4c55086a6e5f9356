use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// splitmix64 finalizer; bijective, so distinct inputs stay distinct.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn absorb(state: u64, component: u64) -> u64 {
    mix(state.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(component))
}

/// Derives a sub-seed from the manifest seed. Every random consumer gets
/// its own `(purpose, k)` pair, so no two stages ever share a stream and
/// nothing depends on wall-clock time.
pub fn derive_seed(root: u64, purpose: &str, k: u64) -> u64 {
    let mut tag = 0xCBF29CE484222325u64;
    for b in purpose.bytes() {
        tag = (tag ^ u64::from(b)).wrapping_mul(0x100000001B3);
    }
    let mut state = mix(root ^ 0xD6E8FEB86659FD93);
    state = absorb(state, tag);
    absorb(state, k)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Creates parent directories and writes the file through a closure that
/// receives a buffered writer. Errors carry the path.
pub fn write_file<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<()>,
{
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::Runtime(format!("creating {}: {e}", parent.display())))?;
    }
    let file = File::create(path)
        .map_err(|e| CliError::Runtime(format!("creating {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    write(&mut w)?;
    w.flush()
        .map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display())))?;
    Ok(())
}

/// Opens a file for buffered reading with a path-carrying error.
pub fn open_reader(path: &Path) -> Result<std::io::BufReader<File>> {
    let file = File::open(path)
        .map_err(|e| CliError::Runtime(format!("opening {}: {e}", path.display())))?;
    Ok(std::io::BufReader::new(file))
}
