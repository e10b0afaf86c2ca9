//! CSV output helpers. Floats are written with the shortest round-trip
//! representation, so identical runs produce byte-identical files.

use std::io::Write;
use std::path::Path;

pub fn write_csv(
    path: &Path,
    header: &str,
    rows: impl IntoIterator<Item = String>,
) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(file, "{header}")?;
    for row in rows {
        writeln!(file, "{row}")?;
    }
    file.flush()
}

/// Comma-separated list parser for numeric flags like `--loads 0.9,0.99`.
pub fn parse_f64_list(text: &str, flag: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| format!("--{flag}: bad entry {s:?}: {e}"))
        })
        .collect()
}
