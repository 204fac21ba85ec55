//! Artifact formatting and the config hash.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use fqlab::cone::Direction;
use fqlab::crystal::RootList;
use serde::Serialize;
use serde_json::ser::Formatter;
use sha2::{Digest, Sha256};

use crate::Cli;

/// Writes floats with 17 significant digits so that reports diff cleanly.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    v.serialize(&mut ser).expect("report serializes");
    let mut s = String::from_utf8(buf).expect("JSON is UTF-8");
    s.push('\n');
    s
}

pub struct Emitter {
    hash: String,
    out: Option<PathBuf>,
}

impl Emitter {
    /// Hashes the parsed configuration together with the bytes of every input.
    pub fn new(cli: &Cli) -> Self {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(cli).expect("config serializes"));
        for path in cli.inputs() {
            h.update(path.as_os_str().as_encoded_bytes());
            if let Ok(bytes) = std::fs::read(path) {
                h.update(&bytes);
            }
        }
        let hash = h.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Self { hash, out: cli.out.clone() }
    }

    pub fn config_hash(&self) -> &str {
        &self.hash
    }

    pub fn write(&self, content: &str) -> io::Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, content)
                .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display()))),
            None => io::stdout().lock().write_all(content.as_bytes()),
        }
    }
}

pub fn roots_csv(roots: &RootList) -> String {
    let mut s = String::from("t,multiplicity\n");
    for (t, m) in roots.iter() {
        let _ = writeln!(s, "{t:.16e},{m}");
    }
    s
}

pub fn cone_csv(ell: &Direction, pts: &[Vec<i64>]) -> String {
    let n = ell.dim();
    let mut s: String = (1..=n).map(|i| format!("k_{i},")).collect();
    s.push_str("dot_l\n");
    for k in pts {
        for v in k {
            let _ = write!(s, "{v},");
        }
        let _ = writeln!(s, "{:.16e}", ell.dot(k));
    }
    s
}
