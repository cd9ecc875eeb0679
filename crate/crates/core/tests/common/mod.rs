//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

use tourprof_core::tournament::{
    blowup, cyclic, flip_perturb, interval, mix, random_tournament, transitive, BlowupSpec, MixSpec, WeightVector,
};
use tourprof_core::Tournament;

/// A named tournament of the test corpus.
pub struct Entry {
    pub name: String,
    pub t: Tournament,
}

fn entry(name: impl Into<String>, t: Tournament) -> Entry {
    Entry { name: name.into(), t }
}

fn blow(host: Tournament, w: Option<Vec<f64>>, n: usize, seed: u64) -> Tournament {
    let spec = match w {
        Some(w) => BlowupSpec::new(host, WeightVector::new(w).unwrap()).unwrap(),
        None => BlowupSpec::balanced(host),
    };
    blowup(&spec, n, seed).unwrap()
}

/// Every named construction with `4 ≤ n ≤ 9`.
pub fn small_named() -> Vec<Entry> {
    let mut out = Vec::new();
    for n in 4..=9 {
        out.push(entry(format!("transitive({n})"), transitive(n)));
        if n % 2 == 1 {
            out.push(entry(format!("cyclic({n})"), cyclic(n).unwrap()));
        }
        for s in n.div_ceil(2)..=n {
            out.push(entry(format!("interval({n},{s})"), interval(n, s).unwrap()));
        }
        out.push(entry(format!("random({n})"), random_tournament(n, n as u64)));
        out.push(entry(format!("blowup(T2,{n})"), blow(transitive(2), None, n, 1)));
        if n >= 6 {
            out.push(entry(format!("blowup(C3,{n})"), blow(cyclic(3).unwrap(), None, n, 2)));
        }
        if n % 2 == 1 {
            out.push(entry(format!("flip(cyclic({n}),0.3)"), flip_perturb(&cyclic(n).unwrap(), 0.3, 5).unwrap()));
        }
        let spec = MixSpec::new(0.5, 0.3).unwrap();
        out.push(entry(format!("mix({n})"), mix(&transitive(n), &cyclic(9).unwrap(), &spec, n, 3).unwrap()));
    }
    out
}

/// `count` random tournaments with orders in `lo..=hi`, deterministic in `base`.
pub fn random_small(count: u64, lo: usize, hi: usize, base: u64) -> Vec<Entry> {
    (0..count)
        .map(|i| {
            let n = lo + (i as usize % (hi - lo + 1));
            entry(format!("random({n},{})", base + i), random_tournament(n, base + i))
        })
        .collect()
}

/// Larger corpus, `n ≤ 500`.
pub fn large() -> Vec<Entry> {
    let p16 = (1.0 - 0.75f64.sqrt()) / 2.0;
    let t2 = blow(transitive(2), None, 300, 11);
    let iv = interval(300, 261).unwrap();
    vec![
        entry("transitive(500)", transitive(500)),
        entry("cyclic(201)", cyclic(201).unwrap()),
        entry("cyclic(499)", cyclic(499).unwrap()),
        entry("interval(300,150)", interval(300, 150).unwrap()),
        entry("interval(500,400)", interval(500, 400).unwrap()),
        entry("random(500)", random_tournament(500, 42)),
        entry("random(128)", random_tournament(128, 7)),
        entry("blowup(T2,400)", blow(transitive(2), None, 400, 3)),
        entry("blowup(T3,[.5,.3,.2],450)", blow(transitive(3), Some(vec![0.5, 0.3, 0.2]), 450, 4)),
        entry("blowup(C3,300)", blow(cyclic(3).unwrap(), None, 300, 5)),
        entry("blowup(T4,256)", blow(transitive(4), None, 256, 6)),
        entry("flip(cyclic(301),0.3)", flip_perturb(&cyclic(301).unwrap(), 0.3, 8).unwrap()),
        entry("mix(blowup,interval,500)", mix(&t2, &iv, &MixSpec::new(0.5, p16).unwrap(), 500, 9).unwrap()),
    ]
}

/// Everything: small named, 200 random small, and the large corpus.
pub fn corpus() -> Vec<Entry> {
    let mut all = small_named();
    all.extend(random_small(200, 5, 9, 1000));
    all.extend(large());
    all
}

// Oracles written from the definitions, sharing no code with the library.

pub fn c3_brute(t: &Tournament) -> u64 {
    let n = t.n();
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                let ab = t.beats(a, b);
                if ab == t.beats(b, d) && ab == t.beats(d, a) {
                    c += 1;
                }
            }
        }
    }
    c
}

/// `(T4, C4, W, L)` by enumerating 4-subsets: count cyclic triangles, then
/// look for a vertex beaten by (W) or beating (L) the other three.
pub fn profile4_brute(t: &Tournament) -> [u64; 4] {
    let n = t.n();
    let mut out = [0u64; 4];
    let mut q = [0usize; 4];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    q.copy_from_slice(&[a, b, c, d]);
                    let mut cyc = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            for k in j + 1..4 {
                                let (x, y, z) = (q[i], q[j], q[k]);
                                if t.beats(x, y) == t.beats(y, z) && t.beats(y, z) == t.beats(z, x) {
                                    cyc += 1;
                                }
                            }
                        }
                    }
                    let wins = |v: usize| q.iter().filter(|&&u| u != v && t.beats(v, u)).count();
                    let slot = match cyc {
                        0 => 0,
                        2 => 1,
                        1 if q.iter().any(|&v| wins(v) == 0) => 2,
                        1 if q.iter().any(|&v| wins(v) == 3) => 3,
                        _ => panic!("impossible 4-vertex tournament"),
                    };
                    out[slot] += 1;
                }
            }
        }
    }
    out
}

/// `(cyc, thru, dom_out, dom_in)` for the arc between `u` and `v`, oriented as in `t`.
pub fn edge_brute(t: &Tournament, u: usize, v: usize) -> (u32, u32, u32, u32) {
    let (a, b) = if t.beats(u, v) { (u, v) } else { (v, u) };
    let mut r = (0, 0, 0, 0);
    for w in (0..t.n()).filter(|&w| w != a && w != b) {
        match (t.beats(a, w), t.beats(b, w)) {
            (false, true) => r.0 += 1,
            (true, false) => r.1 += 1,
            (true, true) => r.2 += 1,
            (false, false) => r.3 += 1,
        }
    }
    r
}

pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
