use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::shape::Shape;
use crate::wkt::parse_wkt;

/// One line of a batch manifest: `pair_id, path_a, path_b, category`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub pair_id: String,
    pub path_a: PathBuf,
    pub path_b: PathBuf,
    pub category: String,
}

impl ManifestEntry {
    pub fn load(&self) -> Result<(Shape, Shape)> {
        Ok((load_shape(&self.path_a)?, load_shape(&self.path_b)?))
    }
}

fn load_shape(path: &Path) -> Result<Shape> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_wkt(&text).map_err(|e| match e {
        Error::Syntax { position, message } => {
            Error::Syntax { position, message: format!("{}: {message}", path.display()) }
        }
        Error::InvalidRing { ring, reason } => Error::InvalidRing { ring, reason: format!("{}: {reason}", path.display()) },
        other => other,
    })
}

/// Parses a manifest. Blank lines and lines starting with `#` are skipped;
/// relative paths are resolved against `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 || fields.iter().any(|f| f.is_empty()) {
            return Err(Error::InvalidGeometry(format!(
                "manifest line {}: expected 'pair_id, path_a, path_b, category'",
                lineno + 1
            )));
        }
        let resolve = |p: &str| {
            let p = Path::new(p);
            if p.is_absolute() {
                p.to_path_buf()
            } else {
                base.join(p)
            }
        };
        out.push(ManifestEntry {
            pair_id: fields[0].to_string(),
            path_a: resolve(fields[1]),
            path_b: resolve(fields[2]),
            category: fields[3].to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lines() {
        let text = "# pairs\n\np1, a.wkt, /abs/b.wkt, animals\n";
        let m = parse_manifest(text, Path::new("/data")).unwrap();
        assert_eq!(
            m,
            vec![ManifestEntry {
                pair_id: "p1".into(),
                path_a: "/data/a.wkt".into(),
                path_b: "/abs/b.wkt".into(),
                category: "animals".into(),
            }]
        );
        assert!(parse_manifest("p1, a.wkt, b.wkt", Path::new(".")).is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        let e = parse_manifest("p, nope-a.wkt, nope-b.wkt, c", Path::new("/nonexistent")).unwrap();
        assert!(matches!(e[0].load(), Err(Error::Io(_))));
    }
}
