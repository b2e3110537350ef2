use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

/// Ascending zero ordinates. `lower` is the height from which the table is complete
/// (taken from a `# range <lo> <hi>` header, else the first ordinate).
#[derive(Clone, Debug, Serialize)]
pub struct ZeroTable {
    #[serde(skip)]
    pub gammas: Vec<f64>,
    pub path: Option<PathBuf>,
    pub count: usize,
    pub lower: f64,
    pub upper: f64,
}

impl ZeroTable {
    pub fn new(gammas: Vec<f64>, range: Option<(f64, f64)>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::ZeroTable("empty zero table".into()));
        }
        if let Some(i) = gammas.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::ZeroTable(format!("ordinates not strictly ascending at entry {}", i + 2)));
        }
        let (lower, upper) = range.unwrap_or((gammas[0], gammas[gammas.len() - 1]));
        Ok(ZeroTable { count: gammas.len(), gammas, path: None, lower, upper })
    }

    pub fn max_height(&self) -> f64 {
        self.upper
    }

    /// Ordinates in [a, b].
    pub fn between(&self, a: f64, b: f64) -> &[f64] {
        let lo = self.gammas.partition_point(|&g| g < a);
        let hi = self.gammas.partition_point(|&g| g <= b);
        &self.gammas[lo..hi]
    }

    pub fn require(&self, a: f64, b: f64) -> Result<()> {
        if self.upper < b {
            return Err(Error::Coverage { have: self.upper, need: b });
        }
        if self.lower > a {
            return Err(Error::ZeroTable(format!("table starts at {}, need {a}", self.lower)));
        }
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(fs::File::create(path)?);
        writeln!(out, "# range {} {}", self.lower, self.upper)?;
        for g in &self.gammas {
            writeln!(out, "{g}")?;
        }
        out.flush()?;
        Ok(())
    }
}

/// One ordinate per line; `#` lines are comments.
pub fn load_zeros(path: &Path) -> Result<ZeroTable> {
    let text = fs::read_to_string(path)?;
    let mut gammas = Vec::new();
    let mut range = None;
    let mut prev: Option<f64> = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(c) = line.strip_prefix('#') {
            let parts: Vec<&str> = c.split_whitespace().collect();
            if let ["range", lo, hi] = parts[..] {
                if let (Ok(lo), Ok(hi)) = (lo.parse(), hi.parse()) {
                    range = Some((lo, hi));
                }
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let g: f64 = line
            .parse()
            .map_err(|_| Error::ZeroTable(format!("line {}: cannot parse '{line}'", i + 1)))?;
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::ZeroTable(format!("line {}: ordinate must be positive", i + 1)));
        }
        if let Some(p) = prev {
            if !(g > p) {
                return Err(Error::ZeroTable(format!("line {}: {g} does not exceed previous {p}", i + 1)));
            }
        }
        prev = Some(g);
        gammas.push(g);
    }
    let mut t = ZeroTable::new(gammas, range)?;
    t.path = Some(path.to_path_buf());
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_first_zeros() {
        let f = tmp("14.134725\n21.022040\n25.010858\n");
        let t = load_zeros(f.path()).unwrap();
        assert_eq!(t.count, 3);
        assert!((t.gammas[0] - 14.134725).abs() < 1e-12);
    }

    #[test]
    fn empty_and_misordered_files_fail() {
        assert!(load_zeros(tmp("# nothing\n").path()).is_err());
        let e = load_zeros(tmp("14.1\n25.0\n21.0\n").path()).unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
        assert!(load_zeros(tmp("14.1\nabc\n").path()).is_err());
    }

    #[test]
    fn round_trip_with_range() {
        let t = ZeroTable::new(vec![100.5, 101.25, 103.0], Some((100.0, 104.0))).unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        t.write(f.path()).unwrap();
        let u = load_zeros(f.path()).unwrap();
        assert_eq!(u.gammas, t.gammas);
        assert_eq!((u.lower, u.upper), (100.0, 104.0));
        assert_eq!(u.between(101.0, 103.0), &[101.25, 103.0]);
    }
}
