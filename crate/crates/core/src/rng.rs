//! Seeded random streams.
//!
//! Every random draw in the crate descends from one 64-bit master seed.
//! A [`RandomStream`] is a 256-bit key; child streams are derived by
//! hashing the parent key together with a purpose tag and integer indices:
//!
//! ```text
//! child = SHA-256(parent_key || len(tag) as u64 LE || tag || idx_0 LE || idx_1 LE || ...)
//! ```
//!
//! and the generator behind a stream is ChaCha8 seeded with the key. The
//! root key is `SHA-256("hybrid-trust/root" || master_seed LE)`. Streams for
//! independent jobs therefore never depend on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Generator type used throughout the crate.
pub type StreamRng = ChaCha8Rng;

/// A node in the seed derivation tree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomStream {
    key: [u8; 32],
}

impl std::fmt::Debug for RandomStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RandomStream(")?;
        for b in &self.key[..8] {
            write!(f, "{b:02x}")?;
        }
        write!(f, "..)")
    }
}

impl RandomStream {
    pub fn from_seed(master_seed: u64) -> Self {
        let mut h = Sha256::new();
        h.update(b"hybrid-trust/root");
        h.update(master_seed.to_le_bytes());
        Self {
            key: h.finalize().into(),
        }
    }

    /// Derives an independent child stream for `tag` and `indices`.
    pub fn derive(&self, tag: &str, indices: &[u64]) -> Self {
        let mut h = Sha256::new();
        h.update(self.key);
        h.update((tag.len() as u64).to_le_bytes());
        h.update(tag.as_bytes());
        for i in indices {
            h.update(i.to_le_bytes());
        }
        Self {
            key: h.finalize().into(),
        }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> StreamRng {
        StreamRng::from_seed(self.key)
    }
}
