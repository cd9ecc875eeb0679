//! The single pseudorandom source used by every generator.
//!
//! All randomness comes from ChaCha8 seeded with `ChaCha8Rng::seed_from_u64`.
//! A Bernoulli(p) draw consumes one `u64` from the stream, keeps its top 53
//! bits as a uniform `f64` in `[0, 1)` and succeeds iff that value is `< p`.
//! A uniformly random orientation is a Bernoulli(1/2) draw. Generators that
//! orient many pairs visit them in ascending `(u, v)`, `u < v` order, so a
//! given `(params, seed)` reproduces the same tournament on every platform.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) struct EdgeRng(ChaCha8Rng);

impl EdgeRng {
    pub(crate) fn new(seed: u64) -> Self {
        EdgeRng(ChaCha8Rng::seed_from_u64(seed))
    }

    #[inline]
    pub(crate) fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub(crate) fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub(crate) fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.0
    }
}
