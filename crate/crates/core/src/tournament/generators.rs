use rand::seq::index;

use super::random::EdgeRng;
use super::Tournament;
use crate::error::{Error, Result};

/// The transitive tournament `T_n`: `u → v` iff `u < v`.
pub fn transitive(n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| true)
}

/// The cyclic (rotational) tournament on an odd number of vertices:
/// `u → v` iff `(v − u) mod n` lies in `1..=(n−1)/2`.
pub fn cyclic(n: usize) -> Result<Tournament> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::order(n, "cyclic tournaments need an odd order n >= 3"));
    }
    let half = (n - 1) / 2;
    Ok(Tournament::from_fn(n, |u, v| v - u <= half))
}

/// Interval tournament: for `x < y`, `x → y` iff `y ≤ x + s`.
///
/// Requires `n/2 ≤ s ≤ n`; in that range the result has no `W` or `L`
/// subtournaments. `s = n` gives the transitive tournament.
pub fn interval(n: usize, s: usize) -> Result<Tournament> {
    if n == 0 {
        return Err(Error::order(n, "need at least one vertex"));
    }
    if 2 * s < n || s > n {
        return Err(Error::param(format!("interval needs n/2 <= s <= n, got n={n}, s={s}")));
    }
    Ok(Tournament::from_fn(n, |u, v| v - u <= s))
}

/// Uniformly random tournament, one Bernoulli(1/2) draw per pair in ascending pair order.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = EdgeRng::new(seed);
    Tournament::from_fn(n, |_, _| rng.bernoulli(0.5))
}

/// Reverses every arc independently with probability `p`.
pub fn flip_perturb(t: &Tournament, p: f64, seed: u64) -> Result<Tournament> {
    check_probability("p", p)?;
    let mut rng = EdgeRng::new(seed);
    Ok(Tournament::from_fn(t.n(), |u, v| t.beats(u, v) != rng.bernoulli(p)))
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must lie in [0, 1], got {p}")))
    }
}

/// A probability vector of strictly positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::param("weight vector is empty"));
        }
        if let Some(x) = w.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::param(format!("weights must be positive, found {x}")));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::param(format!("weights must sum to 1, sum is {sum}")));
        }
        Ok(WeightVector(w))
    }

    /// The balanced vector `(1/m, …, 1/m)`.
    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::param("need at least one part"));
        }
        Ok(WeightVector(vec![1.0 / m as f64; m]))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part sizes summing to `n`: `⌊w_i n⌋` plus one extra vertex for the
    /// parts with the largest fractional remainders (ties to the lower index).
    pub fn apportion(&self, n: usize) -> Vec<usize> {
        let exact: Vec<f64> = self.0.iter().map(|w| w * n as f64).collect();
        let mut sizes: Vec<usize> = exact.iter().map(|x| x.floor() as usize).collect();
        let assigned: usize = sizes.iter().sum();
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by(|&a, &b| {
            let ra = exact[a] - exact[a].floor();
            let rb = exact[b] - exact[b].floor();
            rb.total_cmp(&ra).then(a.cmp(&b))
        });
        for &i in order.iter().take(n.saturating_sub(assigned)) {
            sizes[i] += 1;
        }
        sizes
    }
}

/// A host tournament together with part weights for a random blow-up.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupSpec {
    host: Tournament,
    weights: WeightVector,
}

impl BlowupSpec {
    pub fn new(host: Tournament, weights: WeightVector) -> Result<Self> {
        if host.n() != weights.len() {
            return Err(Error::Dimension {
                expected: host.n(),
                found: weights.len(),
            });
        }
        Ok(BlowupSpec { host, weights })
    }

    /// Balanced blow-up of `host`.
    pub fn balanced(host: Tournament) -> Self {
        let weights = WeightVector(vec![1.0 / host.n() as f64; host.n()]);
        BlowupSpec { host, weights }
    }

    pub fn host(&self) -> &Tournament {
        &self.host
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }
}

/// Random blow-up on `n` vertices.
///
/// Parts are consecutive vertex blocks sized by [`WeightVector::apportion`].
/// Arcs between parts copy the host; pairs inside a part are oriented by
/// Bernoulli(1/2) draws, consumed in ascending pair order.
pub fn blowup(spec: &BlowupSpec, n: usize, seed: u64) -> Result<Tournament> {
    let m = spec.host.n();
    if n < m {
        return Err(Error::order(n, format!("blow-up of a {m}-vertex host needs n >= {m}")));
    }
    let sizes = spec.weights.apportion(n);
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::param(format!("part {i} of the blow-up would be empty at n={n}")));
    }
    let part: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    let mut rng = EdgeRng::new(seed);
    Ok(Tournament::from_fn(n, |u, v| {
        let (pu, pv) = (part[u], part[v]);
        if pu == pv {
            rng.bernoulli(0.5)
        } else {
            spec.host.beats(pu, pv)
        }
    }))
}

/// Size split and cross-arc probability for [`mix`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixSpec {
    alpha: f64,
    p: f64,
}

impl MixSpec {
    pub fn new(alpha: f64, p: f64) -> Result<Self> {
        check_probability("alpha", alpha)?;
        check_probability("p", p)?;
        Ok(MixSpec { alpha, p })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Disjoint union of a `⌊αn⌋`-vertex piece of `t1` and an `(n − ⌊αn⌋)`-vertex
/// piece of `t2`, with each arc between them pointing from the first piece to
/// the second with probability `p`.
///
/// A piece is the whole tournament when the sizes match, otherwise a uniformly
/// random subtournament (vertices kept in increasing order). Randomness is
/// consumed in this order: subset of `t1`, subset of `t2`, then cross pairs
/// `(x, y)` with `x` ascending over the first piece and `y` over the second.
pub fn mix(t1: &Tournament, t2: &Tournament, spec: &MixSpec, n: usize, seed: u64) -> Result<Tournament> {
    let n1 = ((spec.alpha * n as f64).floor() as usize).min(n);
    let n2 = n - n1;
    if n1 > t1.n() || n2 > t2.n() {
        return Err(Error::param(format!(
            "mix needs pieces of {n1} and {n2} vertices, inputs have {} and {}",
            t1.n(),
            t2.n()
        )));
    }
    if n == 0 {
        return Err(Error::order(0, "need at least one vertex"));
    }
    let mut rng = EdgeRng::new(seed);
    let piece = |t: &Tournament, k: usize, rng: &mut EdgeRng| -> Vec<usize> {
        if k == t.n() {
            (0..k).collect()
        } else {
            let mut idx = index::sample(rng.inner(), t.n(), k).into_vec();
            idx.sort_unstable();
            idx
        }
    };
    let first = piece(t1, n1, &mut rng);
    let second = piece(t2, n2, &mut rng);
    Ok(Tournament::from_fn(n, |u, v| {
        if v < n1 {
            t1.beats(first[u], first[v])
        } else if u >= n1 {
            t2.beats(second[u - n1], second[v - n1])
        } else {
            rng.bernoulli(spec.p)
        }
    }))
}
