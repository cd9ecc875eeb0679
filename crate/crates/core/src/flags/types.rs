use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::profiles::{binomial, classify4, FourType};
use crate::tournament::{canonical_code, canonical_code_fixing, CanonicalCode, Tournament};

/// Largest order handled by [`enumerate_types`].
pub const MAX_TYPE_ORDER: usize = 6;

/// One isomorphism class of tournaments on `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TournamentType {
    pub tournament: Tournament,
    pub code: CanonicalCode,
    /// `d_{C3}(H)`, zero for `k < 3`.
    pub c3: Ratio<i64>,
    /// Densities of `T4, C4, W, L` in `H`, zero for `k < 4`.
    pub four: [Ratio<i64>; 4],
}

impl TournamentType {
    pub fn new(t: Tournament) -> Result<Self> {
        let code = canonical_code(&t)?;
        let tournament = code.to_tournament();
        let k = tournament.n();
        let mut c3 = Ratio::from_integer(0);
        let mut four = [Ratio::from_integer(0); 4];
        if k >= 3 {
            let mut cyclic = 0;
            for_each_subset(k, 3, |s| {
                let (a, b, c) = (s[0], s[1], s[2]);
                if tournament.beats(a, b) == tournament.beats(b, c) && tournament.beats(b, c) == tournament.beats(c, a) {
                    cyclic += 1;
                }
            });
            c3 = Ratio::new(cyclic, binomial(k as u64, 3) as i64);
        }
        if k >= 4 {
            let mut counts = [0i64; 4];
            let mut err = None;
            for_each_subset(k, 4, |s| match classify4(&tournament.induced(s)) {
                Ok(ty) => counts[ty as usize] += 1,
                Err(e) => err = Some(e),
            });
            if let Some(e) = err {
                return Err(e);
            }
            let total = binomial(k as u64, 4) as i64;
            four = counts.map(|c| Ratio::new(c, total));
        }
        Ok(TournamentType { tournament, code, c3, four })
    }

    pub fn order(&self) -> usize {
        self.tournament.n()
    }

    pub fn c4(&self) -> Ratio<i64> {
        self.four[FourType::C4 as usize]
    }

    /// `d_{T3}(H)`, zero for `k < 3`.
    pub fn t3(&self) -> Ratio<i64> {
        if self.order() >= 3 {
            Ratio::from_integer(1) - self.c3
        } else {
            Ratio::from_integer(0)
        }
    }
}

/// Calls `f` on every `r`-subset of `0..k` in lexicographic order.
pub(crate) fn for_each_subset(k: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > k {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + k - r) else {
            return;
        };
        idx[i] += 1;
        for j in (i + 1)..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Adds a vertex `k` to `t`, with `k → u` iff bit `u` of `mask` is set.
fn extend(t: &Tournament, mask: u32) -> Tournament {
    let k = t.n();
    Tournament::from_fn(k + 1, |u, v| if v == k { mask >> u & 1 == 0 } else { t.beats(u, v) })
}

/// One representative per isomorphism class of `k`-vertex tournaments, sorted by code.
///
/// Classes of order `k` are obtained by adding a vertex to each class of
/// order `k − 1` in all `2^(k−1)` ways and canonicalising.
pub fn enumerate_types(k: usize) -> Result<Vec<TournamentType>> {
    if k == 0 || k > MAX_TYPE_ORDER {
        return Err(Error::order(k, "types are enumerated for orders 1..=6"));
    }
    let mut layer: BTreeSet<CanonicalCode> = BTreeSet::from([canonical_code(&Tournament::from_fn(1, |_, _| true))?]);
    for order in 1..k {
        let mut next = BTreeSet::new();
        for code in &layer {
            let t = code.to_tournament();
            for mask in 0..(1u32 << order) {
                next.insert(canonical_code(&extend(&t, mask))?);
            }
        }
        layer = next;
    }
    layer.into_iter().map(|c| TournamentType::new(c.to_tournament())).collect()
}

/// Fraction of `|K|`-subsets of `H` that induce `K`.
pub fn subtype_density(k: &TournamentType, h: &TournamentType) -> Result<Ratio<i64>> {
    let (r, n) = (k.order(), h.order());
    if r > n {
        return Err(Error::param(format!("subtype of order {r} cannot sit inside order {n}")));
    }
    let mut hits = 0i64;
    let mut err = None;
    for_each_subset(n, r, |s| match canonical_code(&h.tournament.induced(s)) {
        Ok(c) if c == k.code => hits += 1,
        Ok(_) => {}
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(Ratio::new(hits, binomial(n as u64, r as u64) as i64)),
    }
}

/// Role of a flag of order 3, named by where the free vertex `w` sits
/// relative to the labelled arc `1 → 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlagKind {
    /// `2 → w → 1`: `w` closes a cyclic triangle.
    X,
    /// `1 → w → 2`: `w` lies on a path through the arc.
    Y,
    /// `1 → w`, `2 → w`.
    DomOut,
    /// `w → 1`, `w → 2`.
    DomIn,
}

/// A tournament on `k` vertices with vertices `0 → 1` labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub tournament: Tournament,
    /// Label-fixing canonical code.
    pub code: CanonicalCode,
    /// Set for order-3 flags.
    pub kind: Option<FlagKind>,
}

impl Flag {
    pub fn order(&self) -> usize {
        self.tournament.n()
    }
}

pub(crate) fn flag_code(t: &Tournament) -> Result<CanonicalCode> {
    canonical_code_fixing(t, 2)
}

fn kind_of(t: &Tournament) -> FlagKind {
    match (t.beats(0, 2), t.beats(1, 2)) {
        (false, true) => FlagKind::X,
        (true, false) => FlagKind::Y,
        (true, true) => FlagKind::DomOut,
        (false, false) => FlagKind::DomIn,
    }
}

/// All flags of order `k ∈ {2, 3, 4}` over the arc type, sorted by code.
pub fn enumerate_flags(k: usize) -> Result<Vec<Flag>> {
    if !(2..=4).contains(&k) {
        return Err(Error::order(k, "flags over the arc type are enumerated for k in 2..=4"));
    }
    let free = k * (k - 1) / 2 - 1;
    let mut codes = BTreeSet::new();
    for mask in 0..(1u32 << free) {
        let mut bit = 0;
        let t = Tournament::from_fn(k, |u, v| {
            if (u, v) == (0, 1) {
                return true;
            }
            let b = mask >> bit & 1 == 1;
            bit += 1;
            b
        });
        codes.insert(flag_code(&t)?);
    }
    Ok(codes
        .into_iter()
        .map(|code| {
            let tournament = code.to_tournament();
            let kind = (k == 3).then(|| kind_of(&tournament));
            Flag { tournament, code, kind }
        })
        .collect())
}
