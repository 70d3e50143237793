//! Bit-exact result serialization: CSV with self-describing `#` headers
//! and a mirrored JSON form.
//!
//! Floats are printed with 17 significant digits so every value round-trips
//! exactly; identical configs therefore produce byte-identical data
//! sections (the timestamp line is suppressible).

use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::Result;

/// 17-significant-digit scientific form; round-trip exact for f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Short hash of the canonical config echo, carried in every header.
pub fn config_hash(cfg: &RunConfig) -> String {
    let mut hasher = Sha256::new();
    for (k, v) in cfg.echo() {
        hasher.update(k.as_bytes());
        hasher.update(b"=");
        hasher.update(v.as_bytes());
        hasher.update(b"\n");
    }
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Header comment lines common to every output file.
pub fn header_lines(cfg: &RunConfig, subcommand: &str) -> Vec<String> {
    let mut lines = vec![
        format!(
            "rovib {} subcommand={subcommand}",
            env!("CARGO_PKG_VERSION")
        ),
        format!("config_hash={}", config_hash(cfg)),
    ];
    if !cfg.no_timestamp {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        lines.push(format!("timestamp_unix={now}"));
    }
    for (k, v) in cfg.echo() {
        lines.push(format!("config {k}={v}"));
    }
    lines
}

/// Writes a CSV table with `#`-prefixed header lines. An empty row set
/// produces a header-only file.
pub fn write_csv<W: Write>(
    mut w: W,
    header: &[String],
    columns: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    for line in header {
        writeln!(w, "# {line}")?;
    }
    writeln!(w, "{}", columns.join(","))?;
    for row in rows {
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Serializes any JSON-able payload with the header metadata attached.
pub fn write_json<W: Write, T: serde::Serialize>(
    mut w: W,
    cfg: &RunConfig,
    subcommand: &str,
    payload: &T,
) -> Result<()> {
    let mut meta = serde_json::Map::new();
    meta.insert("tool".into(), serde_json::json!("rovib"));
    meta.insert(
        "version".into(),
        serde_json::json!(env!("CARGO_PKG_VERSION")),
    );
    meta.insert("subcommand".into(), serde_json::json!(subcommand));
    meta.insert("config_hash".into(), serde_json::json!(config_hash(cfg)));
    if !cfg.no_timestamp {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        meta.insert("timestamp_unix".into(), serde_json::json!(now));
    }
    let config: serde_json::Map<String, serde_json::Value> = cfg
        .echo()
        .into_iter()
        .map(|(k, v)| (k, serde_json::Value::String(v)))
        .collect();
    let doc = serde_json::json!({
        "meta": meta,
        "config": config,
        "data": payload,
    });
    serde_json::to_writer_pretty(&mut w, &doc)
        .map_err(|e| crate::error::Error::Io(std::io::Error::other(e)))?;
    writeln!(w)?;
    Ok(())
}

/// Opens the configured sink: a file when a path is set, stdout otherwise.
pub fn open_sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RawConfig;
    use proptest::prelude::*;

    #[test]
    fn float_format_is_17_digits_and_round_trips() {
        let s = format_float(std::f64::consts::PI);
        assert_eq!(s, "3.1415926535897931e0");
        assert_eq!(s.parse::<f64>().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn header_contains_version_hash_and_echo() {
        let (cfg, _) = RawConfig::from_file_text("no_timestamp = true\n")
            .unwrap()
            .resolve()
            .unwrap();
        let header = header_lines(&cfg, "spectrum");
        assert!(header[0].contains(env!("CARGO_PKG_VERSION")));
        assert!(header[1].starts_with("config_hash="));
        assert!(header.iter().any(|l| l.starts_with("config mass=")));
        assert!(!header.iter().any(|l| l.starts_with("timestamp")));
    }

    #[test]
    fn hash_tracks_config_changes() {
        let (a, _) = RawConfig::from_file_text("").unwrap().resolve().unwrap();
        let (b, _) = RawConfig::from_file_text("mass = 2e-9\n")
            .unwrap()
            .resolve()
            .unwrap();
        assert_ne!(config_hash(&a), config_hash(&b));
        let (a2, _) = RawConfig::from_file_text("").unwrap().resolve().unwrap();
        assert_eq!(config_hash(&a), config_hash(&a2));
    }

    #[test]
    fn empty_rows_give_header_only_csv() {
        let (cfg, _) = RawConfig::from_file_text("no_timestamp = true\n")
            .unwrap()
            .resolve()
            .unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &header_lines(&cfg, "steady"), &["a", "b"], &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines().rev();
        assert_eq!(lines.next().unwrap(), "a,b");
    }

    proptest! {
        #[test]
        fn arbitrary_finite_floats_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let s = format_float(x);
            prop_assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
