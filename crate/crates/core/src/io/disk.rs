//! Persistent basis cache: one checksummed file per key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::groebner::{BasisStore, StoredBasis};

pub const CACHE_DIR_ENV: &str = "FSIG_CACHE_DIR";

/// Entries are `<key>.basis`: a hex sha256 of the body, a newline, then JSON.
/// Writes go through a temporary file and an atomic rename, so concurrent
/// processes never observe partial entries.
pub struct DiskStore {
    dir: PathBuf,
}

fn checksum(body: &[u8]) -> String {
    hex::encode(Sha256::digest(body))
}

impl DiskStore {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(DiskStore { dir: dir.as_ref().to_path_buf() })
    }

    /// `--cache-dir` if given, else `$FSIG_CACHE_DIR`, else no disk cache.
    pub fn from_env_or(dir: Option<&Path>) -> Result<Option<Self>> {
        match dir.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)) {
            Some(d) => Ok(Some(Self::open(d)?)),
            None => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.basis"))
    }

    fn read(&self, path: &Path) -> Option<StoredBasis> {
        let raw = fs::read(path).ok()?;
        let split = raw.iter().position(|&b| b == b'\n')?;
        let (head, body) = (&raw[..split], &raw[split + 1..]);
        if head != checksum(body).as_bytes() {
            return None;
        }
        serde_json::from_slice(body).ok()
    }

    fn write(&self, key: &str, value: &StoredBasis) -> Result<()> {
        let body = serde_json::to_vec(value)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(checksum(&body).as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.write_all(&body)?;
        tmp.persist(self.entry_path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

impl BasisStore for DiskStore {
    fn load(&self, key: &str) -> Option<StoredBasis> {
        let path = self.entry_path(key);
        if !path.exists() {
            return None;
        }
        let found = self.read(&path);
        if found.is_none() {
            log::warn!("discarding corrupt cache entry {}", path.display());
            let _ = fs::remove_file(&path);
        }
        found
    }

    fn store(&self, key: &str, value: &StoredBasis) {
        if let Err(e) = self.write(key, value) {
            log::warn!("could not write cache entry {key}: {e}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn basis() -> StoredBasis {
        StoredBasis { p: 3, nvars: 2, order: MonomialOrder::Grevlex, elements: vec![vec![(1, vec![2, 0]), (2, vec![0, 1])]] }
    }

    #[test]
    fn store_load_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let store = DiskStore::open(dir.path()).unwrap();
        assert!(store.load("k").is_none());
        store.store("k", &basis());
        assert_eq!(store.load("k"), Some(basis()));

        let path = store.entry_path("k");
        let mut raw = fs::read(&path).unwrap();
        let last = raw.len() - 2;
        raw[last] ^= 1;
        fs::write(&path, raw).unwrap();
        assert!(store.load("k").is_none());
        assert!(!path.exists());
    }
}
