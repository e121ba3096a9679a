//! Per-level text cache of newform orbits and their eigenvalues.
//!
//! Layout of `level-<M>.txt`:
//!
//! ```text
//! eisdepth-eigencache 1
//! level <M>
//! orbits <count>
//! orbit <index> <theta prime>
//! poly <coefficients, ascending>
//! dual <j> <coordinates>          (one line per j < degree)
//! checksum <sha256 of the lines above>
//! chunk <lo> <hi>                 (primes lo < l <= hi not dividing M)
//! a <l> <orbit 0>|<orbit 1>|...   (power-basis numerators ";" denominator)
//! checksum <sha256 of the chunk lines>
//! ```
//!
//! Extending the bound appends a chunk, so earlier bytes never change.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::UniPoly;
use crate::numfield::FieldElement;

pub const FORMAT_VERSION: u32 = 1;
pub const ENV_VAR: &str = "EISDEPTH_CACHE_DIR";
const MAGIC: &str = "eisdepth-eigencache";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredOrbit {
    pub index: usize,
    pub theta_prime: u64,
    pub poly: UniPoly,
    pub dual: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredChunk {
    pub lo: u64,
    pub hi: u64,
    /// `(l, a_l per orbit)`.
    pub values: Vec<(u64, Vec<FieldElement>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredLevel {
    pub level: u64,
    pub orbits: Vec<StoredOrbit>,
    pub chunks: Vec<StoredChunk>,
}

impl StoredLevel {
    /// Largest `hi` over the stored chunks, which must be contiguous from 0.
    pub fn bound(&self) -> u64 {
        self.chunks.last().map_or(0, |c| c.hi)
    }
}

#[derive(Clone, Debug)]
pub struct EigenCache {
    dir: PathBuf,
}

/// Exclusive advisory lock on the cache directory, released on drop.
pub struct CacheLock {
    _file: File,
}

fn digest(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn join_ints(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_ints(s: &str) -> Option<Vec<BigInt>> {
    s.split(',').map(|t| t.parse().ok()).collect()
}

fn orbit_block(level: u64, orbits: &[StoredOrbit]) -> Vec<String> {
    let mut lines = vec![
        format!("{MAGIC} {FORMAT_VERSION}"),
        format!("level {level}"),
        format!("orbits {}", orbits.len()),
    ];
    for o in orbits {
        lines.push(format!("orbit {} {}", o.index, o.theta_prime));
        lines.push(format!("poly {}", o.poly.to_coeff_string()));
        for (j, v) in o.dual.iter().enumerate() {
            lines.push(format!("dual {j} {}", join_ints(v)));
        }
    }
    lines
}

fn chunk_block(c: &StoredChunk) -> Vec<String> {
    let mut lines = vec![format!("chunk {} {}", c.lo, c.hi)];
    for (l, vals) in &c.values {
        let body = vals
            .iter()
            .map(|v| v.to_string_coeffs())
            .collect::<Vec<_>>()
            .join("|");
        lines.push(format!("a {l} {body}"));
    }
    lines
}

fn with_checksum(mut lines: Vec<String>) -> String {
    let sum = digest(&lines);
    lines.push(format!("checksum {sum}"));
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

fn bad(path: &Path, what: &str) -> Error {
    Error::Cache(format!("{}: {what}", path.display()))
}

impl EigenCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(EigenCache { dir })
    }

    /// `$EISDEPTH_CACHE_DIR`, else `$XDG_CACHE_HOME/eisdepth`, else `~/.cache/eisdepth`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os(ENV_VAR) {
            return Some(PathBuf::from(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(PathBuf::from(d).join("eisdepth"));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("eisdepth"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, level: u64) -> PathBuf {
        self.dir.join(format!("level-{level}.txt"))
    }

    pub fn lock(&self) -> Result<CacheLock> {
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.dir.join(".lock"))?;
        file.lock()?;
        Ok(CacheLock { _file: file })
    }

    /// Levels with a cache file, ascending.
    pub fn levels(&self) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let name = entry?.file_name();
            let name = name.to_string_lossy();
            if let Some(m) = name
                .strip_prefix("level-")
                .and_then(|s| s.strip_suffix(".txt"))
                .and_then(|s| s.parse().ok())
            {
                out.push(m);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize> {
        let _lock = self.lock()?;
        let levels = self.levels()?;
        for &m in &levels {
            fs::remove_file(self.path(m))?;
        }
        Ok(levels.len())
    }

    pub fn remove(&self, level: u64) -> Result<()> {
        let _lock = self.lock()?;
        match fs::remove_file(self.path(level)) {
            Err(e) if e.kind() != std::io::ErrorKind::NotFound => Err(e.into()),
            _ => Ok(()),
        }
    }

    /// Writes a fresh file with the orbit block and the given chunks.
    pub fn save(&self, stored: &StoredLevel) -> Result<()> {
        let _lock = self.lock()?;
        let mut text = with_checksum(orbit_block(stored.level, &stored.orbits));
        for c in &stored.chunks {
            text.push_str(&with_checksum(chunk_block(c)));
        }
        let tmp = self.dir.join(format!(".level-{}.tmp", stored.level));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, self.path(stored.level))?;
        Ok(())
    }

    /// Appends one chunk to an existing file.
    pub fn append(&self, level: u64, chunk: &StoredChunk) -> Result<()> {
        let _lock = self.lock()?;
        let mut f = OpenOptions::new().append(true).open(self.path(level))?;
        f.write_all(with_checksum(chunk_block(chunk)).as_bytes())?;
        Ok(())
    }

    /// `Ok(None)` if there is no file; `Err(Cache)` on any corruption.
    pub fn load(&self, level: u64) -> Result<Option<StoredLevel>> {
        let path = self.path(level);
        let text = {
            let _lock = self.lock()?;
            match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
                Err(e) => return Err(e.into()),
            }
        };
        if !text.ends_with('\n') {
            return Err(bad(&path, "truncated file (checksum missing)"));
        }
        let lines: Vec<String> = text.lines().map(str::to_owned).collect();
        let mut blocks: Vec<Vec<String>> = Vec::new();
        let mut cur = Vec::new();
        for line in lines {
            if let Some(sum) = line.strip_prefix("checksum ") {
                if digest(&cur) != sum {
                    return Err(bad(&path, "checksum mismatch"));
                }
                blocks.push(std::mem::take(&mut cur));
            } else {
                cur.push(line);
            }
        }
        if !cur.is_empty() {
            return Err(bad(&path, "truncated block (checksum missing)"));
        }
        let mut it = blocks.into_iter();
        let head = it.next().ok_or_else(|| bad(&path, "empty file"))?;
        let orbits = parse_orbit_block(&head, level).ok_or_else(|| bad(&path, "malformed orbit block"))?;
        let mut chunks = Vec::new();
        let mut expect_lo = 0;
        for block in it {
            let c = parse_chunk(&block, &orbits).ok_or_else(|| bad(&path, "malformed chunk"))?;
            if c.lo != expect_lo {
                return Err(bad(&path, "chunks are not contiguous"));
            }
            expect_lo = c.hi;
            chunks.push(c);
        }
        Ok(Some(StoredLevel {
            level,
            orbits,
            chunks,
        }))
    }
}

fn parse_orbit_block(lines: &[String], level: u64) -> Option<Vec<StoredOrbit>> {
    let mut it = lines.iter();
    let magic = it.next()?;
    if magic != &format!("{MAGIC} {FORMAT_VERSION}") {
        return None;
    }
    if it.next()? != &format!("level {level}") {
        return None;
    }
    let count: usize = it.next()?.strip_prefix("orbits ")?.parse().ok()?;
    let mut orbits = Vec::with_capacity(count);
    for _ in 0..count {
        let mut head = it.next()?.strip_prefix("orbit ")?.split(' ');
        let index = head.next()?.parse().ok()?;
        let theta_prime = head.next()?.parse().ok()?;
        let poly = UniPoly::parse_coeff_string(it.next()?.strip_prefix("poly ")?)?;
        let d = poly.degree()?;
        let mut dual = Vec::with_capacity(d);
        for j in 0..d {
            let rest = it.next()?.strip_prefix("dual ")?;
            let (jj, body) = rest.split_once(' ')?;
            if jj.parse::<usize>().ok()? != j {
                return None;
            }
            dual.push(parse_ints(body)?);
        }
        orbits.push(StoredOrbit {
            index,
            theta_prime,
            poly,
            dual,
        });
    }
    if it.next().is_some() {
        return None;
    }
    Some(orbits)
}

fn parse_chunk(lines: &[String], orbits: &[StoredOrbit]) -> Option<StoredChunk> {
    let mut it = lines.iter();
    let (lo, hi) = it.next()?.strip_prefix("chunk ")?.split_once(' ')?;
    let (lo, hi) = (lo.parse().ok()?, hi.parse().ok()?);
    let mut values = Vec::new();
    for line in it {
        let (l, body) = line.strip_prefix("a ")?.split_once(' ')?;
        let l: u64 = l.parse().ok()?;
        let parts: Vec<&str> = if orbits.is_empty() { Vec::new() } else { body.split('|').collect() };
        if parts.len() != orbits.len() {
            return None;
        }
        let vals = parts
            .iter()
            .zip(orbits)
            .map(|(s, o)| FieldElement::parse_coeffs(s, o.poly.deg()))
            .collect::<Option<Vec<_>>>()?;
        values.push((l, vals));
    }
    Some(StoredChunk { lo, hi, values })
}
