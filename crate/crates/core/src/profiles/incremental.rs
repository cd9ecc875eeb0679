//! Counts maintained under single-arc reversals.
//!
//! Reversing the pair `{a, b}` only changes the class of the third vertex for
//! arcs that touch `a` or `b`: for an arc `a–x` the vertex `b` moves between
//! classes, and likewise `a` for `b–x`. The arc `{a, b}` itself swaps its
//! `cyc` and `thru` counts. So `c3`, `c4`, `t4` and every per-arc count update
//! in `O(n)`. The `w`/`l` split is recomputed lazily on request.

use super::edge::{counts_for, EdgeCounts};
use super::{binomial, choose2, profile3, profile4, sink_source_counts, Profile3Counts, Profile4Counts};
use crate::error::{Error, Result};
use crate::tournament::Tournament;

const CYC: usize = 0;
const THRU: usize = 1;
const DOM_OUT: usize = 2;
const DOM_IN: usize = 3;

/// A tournament together with counts kept in sync across flips.
#[derive(Debug, Clone, PartialEq)]
pub struct IncrementalProfile {
    t: Tournament,
    degrees: Vec<u32>,
    /// `classes[k][pair]` for `k` in `CYC..=DOM_IN`, indexed by `i * n + j`, `i < j`,
    /// always describing the current orientation of the pair.
    classes: [Vec<u32>; 4],
    c3: u64,
    c4: u64,
    t4: u64,
    /// `(w, l)` when fresh; cleared by every flip.
    sink_source: Option<(u64, u64)>,
}

impl IncrementalProfile {
    pub fn new(t: Tournament) -> Result<Self> {
        let n = t.n();
        if n < 4 {
            return Err(Error::order(n, "incremental counting needs n >= 4"));
        }
        let degrees = (0..n).map(|v| t.out_degree(v) as u32).collect();
        let mut classes = [vec![0; n * n], vec![0; n * n], vec![0; n * n], vec![0; n * n]];
        let (mut c4, mut t4) = (0, 0);
        for u in 0..n {
            for v in (u + 1)..n {
                let e = if t.beats(u, v) { counts_for(&t, u, v) } else { counts_for(&t, v, u) };
                let p = u * n + v;
                classes[CYC][p] = e.cyc;
                classes[THRU][p] = e.thru;
                classes[DOM_OUT][p] = e.dom_out;
                classes[DOM_IN][p] = e.dom_in;
                c4 += choose2(e.cyc as u64);
                t4 += choose2(e.thru as u64);
            }
        }
        let c3 = profile3(&t)?.c3;
        Ok(IncrementalProfile {
            t,
            degrees,
            classes,
            c3,
            c4,
            t4,
            sink_source: None,
        })
    }

    pub fn tournament(&self) -> &Tournament {
        &self.t
    }

    pub fn into_tournament(self) -> Tournament {
        self.t
    }

    pub fn n(&self) -> usize {
        self.t.n()
    }

    pub fn c3_count(&self) -> u64 {
        self.c3
    }

    pub fn c4_count(&self) -> u64 {
        self.c4
    }

    pub fn t4_count(&self) -> u64 {
        self.t4
    }

    pub fn c3_density(&self) -> f64 {
        self.c3 as f64 / binomial(self.n() as u64, 3) as f64
    }

    pub fn c4_density(&self) -> f64 {
        self.c4 as f64 / binomial(self.n() as u64, 4) as f64
    }

    pub fn profile3(&self) -> Profile3Counts {
        let total = binomial(self.n() as u64, 3);
        Profile3Counts {
            n: self.n(),
            t3: total - self.c3,
            c3: self.c3,
        }
    }

    /// Full 4-profile; recounts `w`/`l` (`O(n³/64)`) if a flip made them stale.
    pub fn profile4(&mut self) -> Profile4Counts {
        let (w, l) = *self.sink_source.get_or_insert_with(|| sink_source_counts(&self.t));
        Profile4Counts {
            n: self.n(),
            t4: self.t4,
            c4: self.c4,
            w,
            l,
        }
    }

    /// Whether `w`/`l` must be recounted before the next [`Self::profile4`].
    pub fn sink_source_stale(&self) -> bool {
        self.sink_source.is_none()
    }

    /// Current counts for the arc between `u` and `v`, oriented as in the tournament.
    pub fn edge_counts(&self, u: usize, v: usize) -> EdgeCounts {
        let (tail, head) = if self.t.beats(u, v) { (u, v) } else { (v, u) };
        let p = self.pair(u, v);
        EdgeCounts {
            tail,
            head,
            cyc: self.classes[CYC][p],
            thru: self.classes[THRU][p],
            dom_out: self.classes[DOM_OUT][p],
            dom_in: self.classes[DOM_IN][p],
        }
    }

    #[inline]
    fn pair(&self, u: usize, v: usize) -> usize {
        let n = self.t.n();
        if u < v {
            u * n + v
        } else {
            v * n + u
        }
    }

    /// Class of `w` relative to the arc between `x` and `y`, whichever way it points.
    #[inline]
    fn class_of(&self, x: usize, y: usize, w: usize) -> usize {
        let (tail, head) = if self.t.beats(x, y) { (x, y) } else { (y, x) };
        match (self.t.beats(tail, w), self.t.beats(head, w)) {
            (false, true) => CYC,
            (true, false) => THRU,
            (true, true) => DOM_OUT,
            (false, false) => DOM_IN,
        }
    }

    #[inline]
    fn bump(&mut self, p: usize, class: usize, up: bool) {
        let old = self.classes[class][p] as u64;
        let new = if up { old + 1 } else { old - 1 };
        self.classes[class][p] = new as u32;
        let delta = choose2(new) as i64 - choose2(old) as i64;
        match class {
            CYC => self.c4 = (self.c4 as i64 + delta) as u64,
            THRU => self.t4 = (self.t4 as i64 + delta) as u64,
            _ => {}
        }
    }

    /// Reverses the arc between `u` and `v` and updates all maintained counts.
    pub fn flip(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u == v || u >= n || v >= n {
            return Err(Error::param(format!("cannot flip pair ({u}, {v}) in a tournament of order {n}")));
        }
        let (a, b) = if self.t.beats(u, v) { (u, v) } else { (v, u) };
        for x in (0..n).filter(|&x| x != a && x != b) {
            let (pa, pb) = (self.pair(a, x), self.pair(b, x));
            let ca = self.class_of(a, x, b);
            let cb = self.class_of(b, x, a);
            self.bump(pa, ca, false);
            self.bump(pb, cb, false);
        }
        self.t.flip(a, b);
        for x in (0..n).filter(|&x| x != a && x != b) {
            let (pa, pb) = (self.pair(a, x), self.pair(b, x));
            let ca = self.class_of(a, x, b);
            let cb = self.class_of(b, x, a);
            self.bump(pa, ca, true);
            self.bump(pb, cb, true);
        }
        let p = self.pair(a, b);
        let (c, h) = (self.classes[CYC][p] as u64, self.classes[THRU][p] as u64);
        self.classes[CYC][p] = h as u32;
        self.classes[THRU][p] = c as u32;
        self.c4 = self.c4 + choose2(h) - choose2(c);
        self.t4 = self.t4 + choose2(c) - choose2(h);

        let (da, db) = (self.degrees[a] as u64, self.degrees[b] as u64);
        // Σ C(d,2) changes by C(da−1,2) − C(da,2) + C(db+1,2) − C(db,2) = db − (da − 1).
        self.c3 = (self.c3 as i64 + da as i64 - 1 - db as i64) as u64;
        self.degrees[a] -= 1;
        self.degrees[b] += 1;
        self.sink_source = None;
        Ok(())
    }

    /// Compares every maintained quantity against a recount from scratch.
    pub fn audit(&self) -> Result<()> {
        let fresh = IncrementalProfile::new(self.t.clone())?;
        let mismatch = |what: &str| Err(Error::Invariant(format!("incremental {what} disagrees with full recount")));
        if fresh.degrees != self.degrees {
            return mismatch("out-degrees");
        }
        if fresh.classes != self.classes {
            return mismatch("edge statistics");
        }
        if (fresh.c3, fresh.c4, fresh.t4) != (self.c3, self.c4, self.t4) {
            return mismatch("c3/c4/t4 counts");
        }
        let full = profile4(&self.t)?;
        if (full.c4, full.t4) != (self.c4, self.t4) {
            return mismatch("profile4 counts");
        }
        if let Some((w, l)) = self.sink_source {
            if (w, l) != (full.w, full.l) {
                return mismatch("w/l counts");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::{random_tournament, transitive};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flip_twice_restores_state() {
        let mut s = IncrementalProfile::new(random_tournament(30, 5)).unwrap();
        s.profile4();
        let orig = s.clone();
        s.flip(3, 17).unwrap();
        s.flip(17, 3).unwrap();
        s.profile4();
        assert_eq!(s, orig);
    }

    #[test]
    fn transitive_top_flip_creates_no_cycle() {
        let mut s = IncrementalProfile::new(transitive(5)).unwrap();
        s.flip(0, 1).unwrap();
        assert_eq!(s.c3_count(), 0);
        s.audit().unwrap();
    }

    #[test]
    fn rejects_degenerate_pairs() {
        let mut s = IncrementalProfile::new(transitive(5)).unwrap();
        assert!(s.flip(2, 2).is_err());
        assert!(s.flip(2, 9).is_err());
        assert!(IncrementalProfile::new(transitive(3)).is_err());
    }

    #[test]
    fn random_flips_match_recount() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut s = IncrementalProfile::new(random_tournament(70, 1)).unwrap();
        for step in 0..400 {
            let u = rng.gen_range(0..70);
            let v = (u + rng.gen_range(1..70)) % 70;
            s.flip(u, v).unwrap();
            if step % 50 == 0 {
                s.audit().unwrap();
                let p = s.profile4();
                assert_eq!(p, profile4(s.tournament()).unwrap());
            }
        }
        s.audit().unwrap();
    }
}
