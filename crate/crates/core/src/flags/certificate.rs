//! Certificates of the form `c4 ≥ λ + μ(c3 − γ)`.
//!
//! A certificate over flags of order `k` is valid when `Q ⪰ 0` and, for every
//! type `H` on `N = 2k − 2` vertices,
//! `κ_H = d_{C4}(H) − μ(d_{C3}(H) − γ) − Σ Q_ij p_H(i, j) − λ ≥ 0`.
//! Averaging `κ_H` over the `N`-subsets of a large tournament shows
//! `c4 − μ(c3 − γ) − λ ≥ E[vᵀ Q v] ≥ 0` up to lower-order terms.

use std::io::{BufRead, Write};

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::table::ProductTable;
use super::types::{enumerate_flags, flag_code, Flag, FlagKind};
use crate::error::{Error, Result};
use crate::profiles::{binomial, classify4, edge_stats, profile4};
use crate::tournament::Tournament;

/// Slack allowed on each `κ_H` and, scaled by `1 + ‖Q‖`, on the eigenvalues of `Q`.
pub const CERT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Flag order the matrix is indexed by.
    pub k: usize,
    pub gamma: f64,
    pub mu: f64,
    pub lambda: f64,
    pub q: DMatrix<f64>,
}

impl Certificate {
    /// `Q = 0, μ = 0, λ = 0`, valid for every `γ`.
    pub fn trivial(k: usize, gamma: f64) -> Result<Self> {
        let f = enumerate_flags(k)?.len();
        Ok(Certificate {
            k,
            gamma,
            mu: 0.0,
            lambda: 0.0,
            q: DMatrix::zeros(f, f),
        })
    }

    /// Writes the `FLAGCERT v1` text form.
    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let f = self.q.nrows();
        writeln!(out, "FLAGCERT v1 {} {}", self.k, f)?;
        writeln!(out, "{}", self.gamma)?;
        writeln!(out, "{}", self.mu)?;
        writeln!(out, "{}", self.lambda)?;
        for i in 0..f {
            let row: Vec<String> = (0..f).map(|j| self.q[(i, j)].to_string()).collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }

    /// Parses the `FLAGCERT v1` text form.
    pub fn read<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next = |what: &str| -> Result<(usize, String)> {
            match lines.next() {
                Some((no, Ok(l))) => Ok((no, l)),
                Some((no, Err(e))) => Err(Error::parse(no, e.to_string())),
                None => Err(Error::parse(0, format!("unexpected end of input, expected {what}"))),
            }
        };
        let (no, header) = next("header")?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (k, f) = match fields.as_slice() {
            ["FLAGCERT", "v1", k, f] => (
                k.parse::<usize>().map_err(|_| Error::parse(no, "bad flag order"))?,
                f.parse::<usize>().map_err(|_| Error::parse(no, "bad basis size"))?,
            ),
            _ => return Err(Error::parse(no, "expected `FLAGCERT v1 <k> <f>`")),
        };
        let mut scalar = |what: &str| -> Result<f64> {
            let (no, line) = next(what)?;
            line.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::parse(no, format!("expected a decimal {what}")))
        };
        let gamma = scalar("gamma")?;
        let mu = scalar("mu")?;
        let lambda = scalar("lambda")?;
        let mut q = DMatrix::zeros(f, f);
        for i in 0..f {
            let (no, line) = next("matrix row")?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|s| s.parse::<f64>().ok().filter(|x| x.is_finite()))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::parse(no, "expected decimal entries"))?;
            if row.len() != f {
                return Err(Error::parse(no, format!("expected {f} entries, found {}", row.len())));
            }
            for (j, x) in row.into_iter().enumerate() {
                q[(i, j)] = x;
            }
        }
        if let Ok((no, extra)) = next("end") {
            if !extra.trim().is_empty() {
                return Err(Error::parse(no, "trailing content"));
            }
        }
        Ok(Certificate { k, gamma, mu, lambda, q })
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub valid: bool,
    /// `λ` when valid.
    pub certified_bound: Option<f64>,
    /// `min_H κ_H`.
    pub min_slack: f64,
    /// Index of a type attaining `min_slack`.
    pub tight_type: usize,
    pub min_eigenvalue: f64,
    pub psd: bool,
    pub symmetric: bool,
}

/// Coefficients `(d_{C4}(H), d_{C3}(H))` and `p_H` as floats.
struct FloatTable {
    c4: Vec<f64>,
    c3: Vec<f64>,
    p: Vec<DMatrix<f64>>,
}

impl FloatTable {
    fn new(table: &ProductTable) -> Self {
        let f = table.basis_size();
        let to = |r: Ratio<i64>| r.to_f64().unwrap_or(f64::NAN);
        FloatTable {
            c4: table.types().iter().map(|h| to(h.c4())).collect(),
            c3: table.types().iter().map(|h| to(h.c3)).collect(),
            p: (0..table.types().len())
                .map(|h| DMatrix::from_fn(f, f, |i, j| to(table.coefficients(h)[i][j])))
                .collect(),
        }
    }

    /// `κ_H + λ` for every type.
    fn slacks(&self, gamma: f64, mu: f64, q: &DMatrix<f64>) -> Vec<f64> {
        (0..self.c4.len())
            .map(|h| self.c4[h] - mu * (self.c3[h] - gamma) - q.dot(&self.p[h]))
            .collect()
    }
}

fn check_dimensions(cert: &Certificate, table: &ProductTable) -> Result<()> {
    let f = table.basis_size();
    if cert.k != table.k() {
        return Err(Error::Dimension { expected: table.k(), found: cert.k });
    }
    if cert.q.nrows() != f || cert.q.ncols() != f {
        return Err(Error::Dimension { expected: f, found: cert.q.nrows() });
    }
    Ok(())
}

fn spectrum(q: &DMatrix<f64>) -> (f64, f64) {
    let eig = SymmetricEigen::new(q.clone()).eigenvalues;
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let norm = eig.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (min, norm)
}

/// Checks `Q ⪰ 0` and `κ_H ≥ 0` for all types, each up to [`CERT_TOLERANCE`].
pub fn verify_certificate(cert: &Certificate, table: &ProductTable) -> Result<Verification> {
    check_dimensions(cert, table)?;
    let scalars_ok = [cert.gamma, cert.mu, cert.lambda].iter().all(|x| x.is_finite());
    let (min_eigenvalue, norm) = spectrum(&cert.q);
    let symmetric = (&cert.q - cert.q.transpose()).amax() <= CERT_TOLERANCE * (1.0 + norm);
    let psd = min_eigenvalue >= -CERT_TOLERANCE * (1.0 + norm);
    let slacks = FloatTable::new(table).slacks(cert.gamma, cert.mu, &cert.q);
    let (tight_type, min_slack) = slacks
        .iter()
        .map(|s| s - cert.lambda)
        .enumerate()
        .fold((0, f64::INFINITY), |best, (h, s)| if s < best.1 { (h, s) } else { best });
    let valid = scalars_ok && symmetric && psd && min_slack >= -CERT_TOLERANCE;
    Ok(Verification {
        valid,
        certified_bound: valid.then_some(cert.lambda),
        min_slack,
        tight_type,
        min_eigenvalue,
        psd,
        symmetric,
    })
}

/// `18γ² / (1 + 8γ)`.
pub fn lemma1_bound(gamma: f64) -> f64 {
    18.0 * gamma * gamma / (1.0 + 8.0 * gamma)
}

/// Coefficients of `√6 (X − Z/t)` in an order-3 flag basis, where
/// `Z = 1 + 2(X − Y) = 3X − Y + D_out + D_in`.
fn lemma1_vector(flags: &[Flag], t: f64) -> Result<Vec<f64>> {
    let r6 = 6f64.sqrt();
    flags
        .iter()
        .map(|f| match f.kind {
            Some(FlagKind::X) => Ok(r6 * (1.0 - 3.0 / t)),
            Some(FlagKind::Y) => Ok(r6 / t),
            Some(FlagKind::DomOut | FlagKind::DomIn) => Ok(-r6 / t),
            None => Err(Error::param("lemma certificate needs order-3 flags")),
        })
        .collect()
}

/// Certificate over order-3 flags proving `c4 ≥ 18γ²/(1+8γ) + μ(c3 − γ)`.
///
/// With `t = (1+8γ)/(3γ)`, `Q = v vᵀ` for `v = √6 (X − Z/t)`, `μ = 12/t − 16/t²`
/// and `λ = 6γ/t`; every `κ_H` is then exactly zero.
pub fn lemma1_certificate(gamma: f64) -> Result<Certificate> {
    if !(gamma > 0.0 && gamma <= 0.25) {
        return Err(Error::param(format!("gamma = {gamma} must lie in (0, 1/4]")));
    }
    let flags = enumerate_flags(3)?;
    let t = (1.0 + 8.0 * gamma) / (3.0 * gamma);
    let v = DMatrix::from_column_slice(flags.len(), 1, &lemma1_vector(&flags, t)?);
    Ok(Certificate {
        k: 3,
        gamma,
        mu: 12.0 / t - 16.0 / (t * t),
        lambda: 6.0 * gamma / t,
        q: &v * v.transpose(),
    })
}

/// Re-expresses an order-3 certificate over order-4 flags: `Q₄ = Cᵀ Q₃ C`
/// where `C[i][G]` is the density of order-3 flag `i` in order-4 flag `G`.
pub fn lift_certificate(cert: &Certificate) -> Result<Certificate> {
    if cert.k != 3 {
        return Err(Error::Dimension { expected: 3, found: cert.k });
    }
    let small = enumerate_flags(3)?;
    let large = enumerate_flags(4)?;
    if cert.q.nrows() != small.len() {
        return Err(Error::Dimension { expected: small.len(), found: cert.q.nrows() });
    }
    let mut c = DMatrix::zeros(small.len(), large.len());
    for (g, flag) in large.iter().enumerate() {
        for w in 2..4 {
            let code = flag_code(&flag.tournament.induced(&[0, 1, w]))?;
            let i = small
                .iter()
                .position(|f| f.code == code)
                .ok_or_else(|| Error::Invariant(format!("order-3 flag {code} missing")))?;
            c[(i, g)] += 0.5;
        }
    }
    Ok(Certificate {
        k: 4,
        gamma: cert.gamma,
        mu: cert.mu,
        lambda: cert.lambda,
        q: c.transpose() * &cert.q * c,
    })
}

fn project_psd(q: &DMatrix<f64>) -> DMatrix<f64> {
    let sym = (q + q.transpose()) * 0.5;
    let mut eig = SymmetricEigen::new(sym);
    eig.eigenvalues.iter_mut().for_each(|x| *x = x.max(0.0));
    let out = eig.recompose();
    (&out + out.transpose()) * 0.5
}

/// Best-effort search for a certificate with large `λ` at `γ`.
///
/// Projected ascent on a softened `min_H κ_H` over `(Q, μ)`, keeping `Q` in
/// the PSD cone. Starts from the order-3 lemma certificate (lifted for
/// `k = 4`) when `γ ∈ (0, 1/4]`, so the result is never worse than it. The
/// returned certificate always passes [`verify_certificate`].
pub fn search_certificate(gamma: f64, table: &ProductTable, iterations: usize, seed: u64) -> Result<Certificate> {
    if !gamma.is_finite() {
        return Err(Error::param("gamma must be finite"));
    }
    let k = table.k();
    let floats = FloatTable::new(table);
    let f = table.basis_size();
    let start = if gamma > 0.0 && gamma <= 0.25 {
        let c = lemma1_certificate(gamma)?;
        if k == 4 {
            lift_certificate(&c)?
        } else {
            c
        }
    } else {
        Certificate::trivial(k, gamma)?
    };

    let hard_min = |mu: f64, q: &DMatrix<f64>| floats.slacks(gamma, mu, q).into_iter().fold(f64::INFINITY, f64::min);
    let mut best_q = project_psd(&start.q);
    let mut best_mu = start.mu;
    let mut best = hard_min(best_mu, &best_q);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = best_q.clone();
    let mut mu = best_mu;
    // Small symmetric jitter so different seeds explore different directions.
    let jitter = DMatrix::from_fn(f, f, |_, _| rng.gen_range(-1e-4..1e-4));
    q = project_psd(&(q + (&jitter + jitter.transpose()) * 0.5));

    let scale = 1.0 + best_q.amax();
    for it in 0..iterations {
        let progress = it as f64 / iterations.max(1) as f64;
        let tau = 1e-3 * (1e-3f64).powf(progress);
        let slacks = floats.slacks(gamma, mu, &q);
        let m = slacks.iter().copied().fold(f64::INFINITY, f64::min);
        let weights: Vec<f64> = slacks.iter().map(|s| (-(s - m) / tau).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut grad_q = DMatrix::zeros(f, f);
        let mut grad_mu = 0.0;
        for (h, w) in weights.iter().enumerate() {
            let w = w / total;
            grad_q -= &floats.p[h] * w;
            grad_mu -= w * (floats.c3[h] - gamma);
        }
        let norm = (grad_q.norm_squared() + grad_mu * grad_mu).sqrt();
        if norm < 1e-15 {
            break;
        }
        let step = 0.05 * scale / (1.0 + it as f64).sqrt() / norm;
        q = project_psd(&(q + grad_q * step));
        mu += grad_mu * step;
        let value = hard_min(mu, &q);
        if value > best {
            best = value;
            best_q = q.clone();
            best_mu = mu;
        }
    }

    let cert = Certificate {
        k,
        gamma,
        mu: best_mu,
        lambda: best - 1e-12,
        q: best_q,
    };
    if verify_certificate(&cert, table)?.valid {
        Ok(cert)
    } else {
        Certificate::trivial(k, gamma)
    }
}

/// One entry of [`moment_consistency_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct MomentPair {
    pub i: usize,
    pub j: usize,
    /// `E[1_{F_i}(w) 1_{F_j}(w′)]` over arcs and ordered pairs of distinct other vertices.
    pub edge_side: Ratio<i128>,
    /// `Σ_H p_H(i, j) d_H(t)`.
    pub profile_side: Ratio<i128>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub n: usize,
    pub pairs: Vec<MomentPair>,
}

impl MomentReport {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(|p| p.edge_side == p.profile_side)
    }
}

/// Compares per-arc second moments of order-3 flag counts with the product
/// table applied to the exact 4-profile, in rational arithmetic.
pub fn moment_consistency_check(t: &Tournament, table: &ProductTable) -> Result<MomentReport> {
    if table.k() != 3 {
        return Err(Error::Dimension { expected: 3, found: table.k() });
    }
    let n = t.n();
    if n < 4 {
        return Err(Error::order(n, "moment check needs n >= 4"));
    }
    let stats = edge_stats(t)?;
    let profile = profile4(t)?;
    let flags = table.flags();
    let f = flags.len();
    let count_of = |e: &crate::profiles::EdgeCounts, kind: FlagKind| -> i128 {
        (match kind {
            FlagKind::X => e.cyc,
            FlagKind::Y => e.thru,
            FlagKind::DomOut => e.dom_out,
            FlagKind::DomIn => e.dom_in,
        }) as i128
    };
    let kinds: Vec<FlagKind> = flags
        .iter()
        .map(|fl| fl.kind.ok_or_else(|| Error::Invariant("order-3 flag without a kind".into())))
        .collect::<Result<_>>()?;
    let type_counts: Vec<i128> = table
        .types()
        .iter()
        .map(|h| classify4(&h.tournament).map(|ty| profile.get(ty) as i128))
        .collect::<Result<_>>()?;
    let quads = binomial(n as u64, 4) as i128;
    let configurations = 12 * quads;
    let mut pairs = Vec::with_capacity(f * f);
    for i in 0..f {
        for j in 0..f {
            let mut hits: i128 = 0;
            for e in &stats.edges {
                let (a, b) = (count_of(e, kinds[i]), count_of(e, kinds[j]));
                hits += if i == j { a * (a - 1) } else { a * b };
            }
            let mut profile_side = Ratio::from_integer(0);
            for (h, &count) in type_counts.iter().enumerate() {
                let p = table.coefficients(h)[i][j];
                profile_side += Ratio::new(*p.numer() as i128 * count, *p.denom() as i128 * quads);
            }
            pairs.push(MomentPair {
                i,
                j,
                edge_side: Ratio::new(hits, configurations),
                profile_side,
            });
        }
    }
    Ok(MomentReport { n, pairs })
}
