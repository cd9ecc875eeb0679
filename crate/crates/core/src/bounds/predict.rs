use crate::tournament::BlowupSpec;

/// Limit densities `(c3, c4)` of the mix of `T1` (fraction `alpha`) and `T2`
/// with cross arcs `T1 → T2` drawn with probability `p`.
pub fn mix_profile_prediction(c3_1: f64, c4_1: f64, c3_2: f64, c4_2: f64, alpha: f64, p: f64) -> (f64, f64) {
    let beta = 1.0 - alpha;
    let q = p * (1.0 - p);
    let c3 = alpha.powi(3) * c3_1 + beta.powi(3) * c3_2 + 3.0 * alpha * beta * q;
    let c4 = alpha.powi(4) * c4_1
        + beta.powi(4) * c4_2
        + 6.0 * alpha * alpha * beta * beta * (q + 2.0 * q * q)
        + 4.0 * alpha.powi(3) * beta * (c3_1 * 3.0 * q + (1.0 - c3_1) * q)
        + 4.0 * alpha * beta.powi(3) * (c3_2 * 3.0 * q + (1.0 - c3_2) * q);
    (c3, c4)
}

/// Limit densities `(c3, c4)` of random blow-ups of `spec`.
///
/// Sums over non-decreasing part tuples weighted by their multinomial counts;
/// for each tuple, averages over all orientations of the same-part pairs.
pub fn predict_blowup_profile(spec: &BlowupSpec) -> (f64, f64) {
    let host = spec.host();
    let w = spec.weights().as_slice();
    let m = w.len();
    let mut c3 = 0.0;
    let mut c4 = 0.0;
    for i in 0..m {
        for j in i..m {
            for k in j..m {
                let parts = [i, j, k];
                let weight = w[i] * w[j] * w[k] * arrangements(&parts);
                c3 += weight * pattern_probability(host, &parts, |s| s == [1, 1, 1]);
                for l in k..m {
                    let parts = [i, j, k, l];
                    let weight = w[i] * w[j] * w[k] * w[l] * arrangements(&parts);
                    c4 += weight * pattern_probability(host, &parts, |s| s == [1, 1, 2, 2]);
                }
            }
        }
    }
    (c3, c4)
}

/// Number of distinct orderings of a sorted tuple.
fn arrangements(parts: &[usize]) -> f64 {
    let fact = |k: usize| (1..=k).product::<usize>() as f64;
    let mut runs = 1.0;
    let mut start = 0;
    for i in 1..=parts.len() {
        if i == parts.len() || parts[i] != parts[start] {
            runs *= fact(i - start);
            start = i;
        }
    }
    fact(parts.len()) / runs
}

/// Fraction of intra-part orientations whose sorted score vector satisfies `accept`.
fn pattern_probability<const K: usize>(
    host: &crate::Tournament,
    parts: &[usize; K],
    accept: impl Fn([usize; K]) -> bool,
) -> f64 {
    let mut fixed = [0usize; K];
    let mut free = Vec::new();
    for a in 0..K {
        for b in (a + 1)..K {
            if parts[a] == parts[b] {
                free.push((a, b));
            } else if host.beats(parts[a], parts[b]) {
                fixed[a] += 1;
            } else {
                fixed[b] += 1;
            }
        }
    }
    let total = 1usize << free.len();
    let hits = (0..total)
        .filter(|mask| {
            let mut s = fixed;
            for (bit, &(a, b)) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    s[a] += 1;
                } else {
                    s[b] += 1;
                }
            }
            s.sort_unstable();
            accept(s)
        })
        .count();
    hits as f64 / total as f64
}
