//! On-disk cache of resolutions.
//!
//! Layout: `<root>/<key>/<degree>.fpmx` holds `d_degree`, and
//! `<root>/<key>/manifest.json` records the Betti numbers. The key is the
//! SHA-256 of the group descriptor JSON followed by `p`. Writers hold
//! `<root>/<key>.lock`, created exclusively.

use std::fs::{self, File, OpenOptions};
use std::io::{BufReader, BufWriter, ErrorKind};
use std::path::{Path, PathBuf};
use std::thread::sleep;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::engine::Resolution;
use crate::error::Result;
use crate::linalg::{read_fpmx, write_fpmx};
use crate::space_group::GroupDescriptor;

pub const CACHE_VERSION: u32 = 1;

const LOCK_WAIT: Duration = Duration::from_secs(30 * 60);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub betti: Vec<usize>,
    #[serde(rename = "maxDegree")]
    pub max_degree: usize,
    pub version: u32,
    pub p: u8,
    #[serde(rename = "groupOrder")]
    pub group_order: usize,
    pub descriptor: GroupDescriptor,
}

#[derive(Clone, Debug)]
pub struct ResolutionCache {
    root: PathBuf,
}

/// Removes the lock file when dropped.
pub struct LockGuard {
    path: PathBuf,
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

pub fn cache_key(descriptor: &GroupDescriptor) -> Result<String> {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(descriptor)?);
    h.update(descriptor.p.to_string());
    Ok(hex::encode(h.finalize()))
}

impl ResolutionCache {
    pub fn new(root: impl Into<PathBuf>) -> ResolutionCache {
        ResolutionCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn dir(&self, key: &str) -> PathBuf {
        self.root.join(key)
    }

    /// Takes the writer lock for `key`, waiting for another holder; a lock
    /// older than the wait limit is treated as stale.
    pub fn lock(&self, key: &str) -> Result<LockGuard> {
        fs::create_dir_all(&self.root)?;
        let path = self.root.join(format!("{key}.lock"));
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(LockGuard { path }),
                Err(e) if e.kind() == ErrorKind::AlreadyExists => {
                    if start.elapsed() > LOCK_WAIT {
                        fs::remove_file(&path)?;
                    } else {
                        sleep(Duration::from_millis(50));
                    }
                }
                Err(e) => return Err(e.into()),
            }
        }
    }

    pub fn manifest(&self, key: &str) -> Result<Option<Manifest>> {
        let path = self.dir(key).join("manifest.json");
        match File::open(&path) {
            Ok(f) => Ok(Some(serde_json::from_reader(BufReader::new(f))?)),
            Err(e) if e.kind() == ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Betti numbers `β_0..=β_N` if a deep enough entry exists.
    pub fn betti(&self, descriptor: &GroupDescriptor, max_degree: usize) -> Result<Option<Vec<usize>>> {
        let key = cache_key(descriptor)?;
        Ok(self
            .manifest(&key)?
            .filter(|m| m.version == CACHE_VERSION && m.max_degree >= max_degree && &m.descriptor == descriptor)
            .map(|m| m.betti[..=max_degree].to_vec()))
    }

    /// Writes every boundary matrix and then the manifest.
    pub fn store(&self, res: &Resolution) -> Result<String> {
        let descriptor = res
            .descriptor
            .clone()
            .ok_or_else(|| crate::Error::InvalidParameter("resolution has no descriptor".into()))?;
        let key = cache_key(&descriptor)?;
        let _guard = self.lock(&key)?;
        if let Some(m) = self.manifest(&key)? {
            if m.max_degree >= res.max_degree && m.version == CACHE_VERSION {
                return Ok(key);
            }
        }
        let dir = self.dir(&key);
        fs::create_dir_all(&dir)?;
        for (k, d) in res.boundaries.iter().enumerate() {
            let w = BufWriter::new(File::create(dir.join(format!("{}.fpmx", k + 1)))?);
            write_fpmx(d, w)?;
        }
        let manifest = Manifest {
            betti: res.betti.clone(),
            max_degree: res.max_degree,
            version: CACHE_VERSION,
            p: res.p,
            group_order: res.group_order,
            descriptor,
        };
        let tmp = dir.join("manifest.json.tmp");
        serde_json::to_writer_pretty(BufWriter::new(File::create(&tmp)?), &manifest)?;
        fs::rename(tmp, dir.join("manifest.json"))?;
        Ok(key)
    }

    /// Reloads a stored resolution with all of its boundary matrices.
    pub fn load(&self, key: &str) -> Result<Option<Resolution>> {
        let Some(m) = self.manifest(key)? else {
            return Ok(None);
        };
        let dir = self.dir(key);
        let boundaries = (1..=m.max_degree)
            .map(|k| read_fpmx(BufReader::new(File::open(dir.join(format!("{k}.fpmx")))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(Resolution {
            descriptor: Some(m.descriptor),
            p: m.p,
            group_order: m.group_order,
            max_degree: m.max_degree,
            betti: m.betti,
            boundaries,
        }))
    }

    /// Keys and manifests, sorted by key.
    pub fn entries(&self) -> Result<Vec<(String, Manifest)>> {
        let mut out = vec![];
        let read = match fs::read_dir(&self.root) {
            Ok(r) => r,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e.into()),
        };
        for entry in read {
            let entry = entry?;
            if !entry.file_type()?.is_dir() {
                continue;
            }
            let key = entry.file_name().to_string_lossy().into_owned();
            if let Some(m) = self.manifest(&key)? {
                out.push((key, m));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Deletes every entry; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let entries = self.entries()?;
        for (key, _) in &entries {
            fs::remove_dir_all(self.dir(key))?;
        }
        Ok(entries.len())
    }
}
