use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// CSV outputs open with this comment so the seed travels with the data.
pub fn seed_line<W: Write>(out: &mut W, seed: u64) -> io::Result<()> {
    writeln!(out, "# seed={seed}")
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>, String> {
    let mut buf = serde_json::to_vec_pretty(value).map_err(|e| e.to_string())?;
    buf.push(b'\n');
    Ok(buf)
}

/// Writes `bytes` to `path`, or to standard output when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes).and_then(|_| stdout.flush()).map_err(|e| e.to_string())
        }
    }
}
