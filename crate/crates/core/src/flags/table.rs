//! Exact flag products over the arc type.
//!
//! For a type `H` on `N = 2k − 2` vertices, a configuration is an arc `u → v`
//! of `H` together with an ordered split of the other `N − 2` vertices into
//! two `(k−2)`-sets `(A, B)`. `p_H(i, j)` is the fraction of configurations in
//! which `{u, v} ∪ A` induces flag `i` and `{u, v} ∪ B` induces flag `j`.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::types::{enumerate_flags, enumerate_types, flag_code, for_each_subset, Flag, TournamentType};
use crate::error::{Error, Result};
use crate::tournament::{CanonicalCode, Tournament};

#[derive(Debug, Clone, PartialEq)]
pub struct ProductTable {
    k: usize,
    flags: Vec<Flag>,
    types: Vec<TournamentType>,
    /// `coefficients[h][i][j] = p_H(i, j)`.
    coefficients: Vec<Vec<Vec<Ratio<i64>>>>,
}

impl ProductTable {
    /// Builds the table for flags of order `k ∈ {3, 4}`.
    pub fn build(k: usize) -> Result<Self> {
        if !(3..=4).contains(&k) {
            return Err(Error::order(k, "product tables are built for k = 3 or 4"));
        }
        let flags = enumerate_flags(k)?;
        let types = enumerate_types(2 * k - 2)?;
        let index: HashMap<CanonicalCode, usize> = flags.iter().enumerate().map(|(i, f)| (f.code, i)).collect();
        let coefficients = types
            .iter()
            .map(|h| type_products(&h.tournament, k, &index))
            .collect::<Result<_>>()?;
        let table = ProductTable { k, flags, types, coefficients };
        table.validate()?;
        Ok(table)
    }

    /// Loads the table from `dir`, building and writing it there when absent.
    pub fn cached(k: usize, dir: &Path) -> Result<Self> {
        let path = Self::cache_path(k, dir);
        if let Ok(file) = fs::File::open(&path) {
            let table = Self::read(BufReader::new(file))?;
            if table.k != k {
                return Err(Error::Invariant(format!("{} holds a table for k = {}", path.display(), table.k)));
            }
            return Ok(table);
        }
        let table = Self::build(k)?;
        fs::create_dir_all(dir).map_err(|e| Error::param(format!("cannot create {}: {e}", dir.display())))?;
        let tmp = path.with_extension("tmp");
        let write = || -> std::io::Result<()> {
            let mut out = std::io::BufWriter::new(fs::File::create(&tmp)?);
            table.write(&mut out)?;
            out.flush()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|e| Error::param(format!("cannot write {}: {e}", path.display())))?;
        Ok(table)
    }

    pub fn cache_path(k: usize, dir: &Path) -> PathBuf {
        dir.join(format!("flagtab_k{k}.txt"))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Order `N = 2k − 2` of the types the table is indexed by.
    pub fn target_order(&self) -> usize {
        2 * self.k - 2
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn basis_size(&self) -> usize {
        self.flags.len()
    }

    pub fn types(&self) -> &[TournamentType] {
        &self.types
    }

    /// The `f × f` matrix `p_H(·, ·)` for the type at index `h`.
    pub fn coefficients(&self, h: usize) -> &[Vec<Ratio<i64>>] {
        &self.coefficients[h]
    }

    /// Symmetry, range and normalisation of every coefficient matrix.
    pub fn validate(&self) -> Result<()> {
        let f = self.flags.len();
        for (h, m) in self.coefficients.iter().enumerate() {
            if m.len() != f || m.iter().any(|r| r.len() != f) {
                return Err(Error::Dimension { expected: f, found: m.len() });
            }
            let mut sum = Ratio::zero();
            for i in 0..f {
                for j in 0..f {
                    let p = m[i][j];
                    if p != m[j][i] {
                        return Err(Error::Invariant(format!("p_H({i},{j}) is not symmetric for type {h}")));
                    }
                    if p < Ratio::zero() || p > Ratio::one() {
                        return Err(Error::Invariant(format!("p_H({i},{j}) = {p} is outside [0, 1]")));
                    }
                    sum += p;
                }
            }
            if sum != Ratio::one() {
                return Err(Error::Invariant(format!("coefficients of type {h} sum to {sum}")));
            }
        }
        Ok(())
    }

    /// Writes the `FLAGTAB v1` text form.
    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let f = self.flags.len();
        writeln!(out, "FLAGTAB v1 {} {} {}", self.k, f, self.types.len())?;
        for (h, m) in self.types.iter().zip(&self.coefficients) {
            writeln!(out, "type {}", h.code)?;
            for row in m {
                let line: Vec<String> = row.iter().map(|p| format!("{}/{}", p.numer(), p.denom())).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
        Ok(())
    }

    /// Parses the `FLAGTAB v1` text form and checks the table invariants.
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
        let (k, f, count) = match fields.as_slice() {
            ["FLAGTAB", "v1", k, f, c] => (
                k.parse::<usize>().map_err(|_| Error::parse(no, "bad k"))?,
                f.parse::<usize>().map_err(|_| Error::parse(no, "bad basis size"))?,
                c.parse::<usize>().map_err(|_| Error::parse(no, "bad type count"))?,
            ),
            _ => return Err(Error::parse(no, "expected `FLAGTAB v1 <k> <f> <types>`")),
        };
        if !(3..=4).contains(&k) {
            return Err(Error::parse(no, format!("unsupported k = {k}")));
        }
        let flags = enumerate_flags(k)?;
        if flags.len() != f {
            return Err(Error::parse(no, format!("basis size {f} does not match the {} flags of order {k}", flags.len())));
        }
        let mut types = Vec::with_capacity(count);
        let mut coefficients = Vec::with_capacity(count);
        for _ in 0..count {
            let (no, line) = next("type line")?;
            let code = line
                .strip_prefix("type ")
                .and_then(|c| parse_code(c.trim()))
                .ok_or_else(|| Error::parse(no, "expected `type <n>:<bits>`"))?;
            if code.n() != 2 * k - 2 {
                return Err(Error::parse(no, format!("type order {} does not match k = {k}", code.n())));
            }
            types.push(TournamentType::new(code.to_tournament())?);
            let mut m = Vec::with_capacity(f);
            for _ in 0..f {
                let (no, line) = next("coefficient row")?;
                let row: Vec<Ratio<i64>> = line
                    .split_whitespace()
                    .map(parse_fraction)
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::parse(no, "expected fractions p/q"))?;
                if row.len() != f {
                    return Err(Error::parse(no, format!("expected {f} entries, found {}", row.len())));
                }
                m.push(row);
            }
            coefficients.push(m);
        }
        if let Ok((no, extra)) = next("end") {
            if !extra.trim().is_empty() {
                return Err(Error::parse(no, "trailing content"));
            }
        }
        let table = ProductTable { k, flags, types, coefficients };
        table.validate()?;
        Ok(table)
    }
}

fn parse_code(s: &str) -> Option<CanonicalCode> {
    let (n, bits) = s.split_once(':')?;
    let n: usize = n.parse().ok()?;
    if bits.len() != n * n.saturating_sub(1) / 2 {
        return None;
    }
    let bits = if bits.is_empty() { 0 } else { u32::from_str_radix(bits, 2).ok()? };
    CanonicalCode::from_parts(n, bits).ok()
}

fn parse_fraction(s: &str) -> Option<Ratio<i64>> {
    let (p, q) = s.split_once('/')?;
    let (p, q): (i64, i64) = (p.parse().ok()?, q.parse().ok()?);
    (q != 0).then(|| Ratio::new(p, q))
}

/// Configuration counts for one type, normalised to a probability matrix.
fn type_products(h: &Tournament, k: usize, index: &HashMap<CanonicalCode, usize>) -> Result<Vec<Vec<Ratio<i64>>>> {
    let n = h.n();
    let f = index.len();
    let mut counts = vec![vec![0i64; f]; f];
    let mut total = 0i64;
    let flag_at = |vertices: &[usize]| -> Result<usize> {
        let code = flag_code(&h.induced(vertices))?;
        index
            .get(&code)
            .copied()
            .ok_or_else(|| Error::Invariant(format!("flag {code} missing from the basis")))
    };
    for u in 0..n {
        for v in 0..n {
            if u == v || !h.beats(u, v) {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
            let mut configs = Vec::new();
            for_each_subset(rest.len(), k - 2, |a| {
                let side_a: Vec<usize> = a.iter().map(|&i| rest[i]).collect();
                let side_b: Vec<usize> = rest.iter().copied().filter(|x| !side_a.contains(x)).collect();
                configs.push((side_a, side_b));
            });
            for (a, b) in configs {
                let mut va = vec![u, v];
                va.extend(&a);
                let mut vb = vec![u, v];
                vb.extend(&b);
                let (i, j) = (flag_at(&va)?, flag_at(&vb)?);
                counts[i][j] += 1;
                total += 1;
            }
        }
    }
    Ok(counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| Ratio::new(c, total)).collect())
        .collect())
}
