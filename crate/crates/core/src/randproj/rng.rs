//! Counter-based random streams.
//!
//! Draw `i` of a stream is `splitmix64(key + (i + 1) * GAMMA)`, so any index
//! can be computed independently of every other. That is what makes batch
//! generation independent of thread count and partitioning.

use std::f64::consts::PI;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Named purposes for random draws from a single seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stream {
    Matrix,
    Dither,
    MonteCarlo,
    /// Free-form label, e.g. signal generation in experiments.
    Label(u64),
}

impl Stream {
    fn code(self) -> u64 {
        match self {
            Stream::Matrix => 0x6d61_7472_6978,
            Stream::Dither => 0x6469_7468_6572,
            Stream::MonteCarlo => 0x6d6f_6e74_6563,
            Stream::Label(l) => mix(l ^ 0x6c61_6265_6c00),
        }
    }
}

/// A seed bound to a stream; draws are pure functions of `(seed, stream, index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RandomState {
    seed: u64,
    key: u64,
}

impl RandomState {
    pub fn new(seed: u64, stream: Stream) -> Self {
        Self {
            seed,
            key: mix(mix(seed) ^ stream.code()),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent child stream, e.g. one per sweep cell.
    pub fn derive(&self, tag: u64) -> Self {
        Self {
            seed: self.seed,
            key: mix(self.key ^ mix(tag.wrapping_add(GAMMA))),
        }
    }

    #[inline]
    pub fn bits(&self, index: u64) -> u64 {
        mix(self.key.wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA)))
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform(&self, index: u64) -> f64 {
        (self.bits(index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal from draws `2i` and `2i + 1` (Box-Muller, cosine branch).
    #[inline]
    pub fn gaussian(&self, index: u64) -> f64 {
        let u1 = 1.0 - self.uniform(2 * index);
        let u2 = self.uniform(2 * index + 1);
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    }

    /// Standard Cauchy by inverse CDF.
    #[inline]
    pub fn cauchy(&self, index: u64) -> f64 {
        (PI * (self.uniform(index) - 0.5)).tan()
    }
}
