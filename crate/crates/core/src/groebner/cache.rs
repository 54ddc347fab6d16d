//! Content-addressed storage for reduced Groebner bases.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring};

/// Serializable form of a reduced basis: `(coefficient, exponents)` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredBasis {
    pub p: u32,
    pub nvars: usize,
    pub order: MonomialOrder,
    pub elements: Vec<Vec<(u32, Vec<u16>)>>,
}

/// A keyed store of bases. Values are deterministic functions of their keys,
/// so concurrent writers may race freely.
pub trait BasisStore: Send + Sync {
    fn load(&self, key: &str) -> Option<StoredBasis>;
    fn store(&self, key: &str, value: &StoredBasis);
}

/// Digest of (sorted canonical generators, order, p, variable count).
pub fn digest(ring: &Arc<Ring>, gens: &[Polynomial], order: MonomialOrder) -> String {
    let mut canon: Vec<String> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.canonical_string()).collect();
    canon.sort();
    canon.dedup();
    let mut hasher = Sha256::new();
    hasher.update(format!("p={};n={};order={};", ring.p(), ring.nvars(), order.name()));
    for g in canon {
        hasher.update(g.as_bytes());
        hasher.update(b"|");
    }
    hex::encode(hasher.finalize())
}

#[derive(Default)]
pub struct MemoryStore {
    entries: RwLock<HashMap<String, StoredBasis>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl MemoryStore {
    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl BasisStore for MemoryStore {
    fn load(&self, key: &str) -> Option<StoredBasis> {
        let found = self.entries.read().unwrap().get(key).cloned();
        if found.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        } else {
            self.misses.fetch_add(1, Ordering::Relaxed);
        }
        found
    }

    fn store(&self, key: &str, value: &StoredBasis) {
        self.entries.write().unwrap().insert(key.to_string(), value.clone());
    }
}
