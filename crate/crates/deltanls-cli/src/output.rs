//! Deterministic artifact writers: CSV with 17-significant-digit floats and
//! LF line endings, JSON with a top-level schema version. No timestamps —
//! a fixed config produces byte-identical files.

use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// 17 significant digits round-trip every f64 exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn profile_csv(xs: &[f64], us: &[f64]) -> String {
    let mut s = String::with_capacity(xs.len() * 48 + 8);
    s.push_str("x,u\n");
    for (x, u) in xs.iter().zip(us) {
        s.push_str(&fmt_float(*x));
        s.push(',');
        s.push_str(&fmt_float(*u));
        s.push('\n');
    }
    s
}

pub fn phase_csv(rows: &[crate::PhaseRow]) -> String {
    let mut s = String::from("mu,verdict,infimum,critical_mass\n");
    for r in rows {
        s.push_str(&fmt_float(r.mu));
        s.push(',');
        s.push_str(&r.verdict);
        s.push(',');
        s.push_str(&r.infimum);
        s.push(',');
        if let Some(mc) = r.critical_mass {
            s.push_str(&fmt_float(mc));
        }
        s.push('\n');
    }
    s
}

pub fn write_text(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
        }
    }
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable artifact");
    text.push('\n');
    write_text(path, &text)
}

/// Sidecar path of a CSV artifact: the same path with `.json` appended.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    let mut os = csv_path.as_os_str().to_owned();
    os.push(".json");
    PathBuf::from(os)
}
