use rand::seq::index;

use super::{classify_quad, FourType};
use crate::error::{Error, Result};
use crate::tournament::random::EdgeRng;
use crate::tournament::Tournament;

/// A sampled density and its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

impl Estimate {
    fn from_hits(hits: u64, samples: u64) -> Self {
        let mean = hits as f64 / samples as f64;
        Estimate {
            mean,
            stderr: (mean * (1.0 - mean) / samples as f64).sqrt(),
        }
    }
}

/// 4-profile densities estimated from uniformly random 4-subsets.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub n: usize,
    pub samples: u64,
    pub t4: Estimate,
    pub c4: Estimate,
    pub w: Estimate,
    pub l: Estimate,
}

impl SampledProfile {
    pub fn get(&self, ty: FourType) -> Estimate {
        match ty {
            FourType::T4 => self.t4,
            FourType::C4 => self.c4,
            FourType::W => self.w,
            FourType::L => self.l,
        }
    }
}

/// Unbiased 4-profile estimate from `samples` independent uniform 4-subsets.
pub fn sample_profile4(t: &Tournament, samples: u64, seed: u64) -> Result<SampledProfile> {
    let n = t.n();
    if n < 4 {
        return Err(Error::order(n, "sampling 4-subsets needs n >= 4"));
    }
    if samples == 0 {
        return Err(Error::param("need at least one sample"));
    }
    let mut rng = EdgeRng::new(seed);
    let mut hits = [0u64; 4];
    for _ in 0..samples {
        let idx = index::sample(rng.inner(), n, 4);
        let q = [idx.index(0), idx.index(1), idx.index(2), idx.index(3)];
        hits[classify_quad(t, q)? as usize] += 1;
    }
    Ok(SampledProfile {
        n,
        samples,
        t4: Estimate::from_hits(hits[0], samples),
        c4: Estimate::from_hits(hits[1], samples),
        w: Estimate::from_hits(hits[2], samples),
        l: Estimate::from_hits(hits[3], samples),
    })
}
