use rand::RngCore;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based generator: word `i` of a stream is a keyed hash of `i`.
///
/// Streams are small `Copy` values. Random access (`word_at`) and sequential
/// draws (`next_u64`) read the same sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    key_a: u64,
    key_b: u64,
    counter: u64,
}

/// Stream `stream_id` of `master_seed`.
pub fn derive_stream(master_seed: u64, stream_id: u64) -> RngStream {
    let key_a = mix64(master_seed ^ mix64(stream_id.wrapping_add(0x6A09_E667_F3BC_C908)));
    let key_b = mix64(stream_id ^ mix64(master_seed.wrapping_add(0xBB67_AE85_84CA_A73B)));
    RngStream {
        master_seed,
        stream_id,
        key_a,
        key_b,
        counter: 0,
    }
}

impl RngStream {
    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Number of words consumed so far.
    pub fn position(&self) -> u64 {
        self.counter
    }

    #[inline]
    pub fn word_at(&self, index: u64) -> u64 {
        mix64(mix64(self.key_a.wrapping_add(index.wrapping_mul(GAMMA))) ^ self.key_b)
    }

    /// Seed identifying this stream, usable as the master seed of a family
    /// of child streams.
    pub fn family_seed(&self) -> u64 {
        mix64(self.key_a ^ self.key_b.rotate_left(32))
    }

    /// Child stream `id`; independent of the parent's own words.
    pub fn substream(&self, id: u64) -> RngStream {
        derive_stream(self.family_seed(), id)
    }

    /// Uniform on the open interval (0, 1).
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}

impl RngCore for RngStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        let w = self.word_at(self.counter);
        self.counter = self.counter.wrapping_add(1);
        w
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
