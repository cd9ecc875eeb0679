//! The `TRN v1` text format.
//!
//! ```text
//! TRN v1 3
//! -10
//! 0-1
//! 10-
//! ```
//!
//! Line 1 is the header with the order `n`. Each of the following `n` lines
//! has `n` characters; character `j` of line `i` is `1` iff `i → j`, `0`
//! otherwise, and `-` on the diagonal.

use std::io::{BufRead, Write};

use super::Tournament;
use crate::error::{Error, Result};

pub fn write_trn<W: Write>(t: &Tournament, mut out: W) -> std::io::Result<()> {
    writeln!(out, "TRN v1 {}", t.n())?;
    let mut line = String::with_capacity(t.n() + 1);
    for u in 0..t.n() {
        line.clear();
        for v in 0..t.n() {
            line.push(if u == v {
                '-'
            } else if t.beats(u, v) {
                '1'
            } else {
                '0'
            });
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Parses a `TRN v1` document. Errors name the first offending line (1-based).
pub fn read_trn<R: BufRead>(input: R) -> Result<Tournament> {
    let mut lines = input.lines();
    let header = match lines.next() {
        Some(l) => l.map_err(|e| Error::parse(1, e.to_string()))?,
        None => return Err(Error::parse(1, "empty input")),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let n = match fields.as_slice() {
        ["TRN", "v1", n] => n
            .parse::<usize>()
            .map_err(|_| Error::parse(1, format!("bad order '{n}'")))?,
        _ => return Err(Error::parse(1, format!("expected 'TRN v1 <n>', found '{header}'"))),
    };
    if n == 0 {
        return Err(Error::parse(1, "order must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let lineno = i + 2;
        let line = match lines.next() {
            Some(l) => l.map_err(|e| Error::parse(lineno, e.to_string()))?,
            None => return Err(Error::parse(lineno, format!("expected {n} matrix rows, found {i}"))),
        };
        let chars: Vec<char> = line.trim_end_matches('\r').chars().collect();
        if chars.len() != n {
            return Err(Error::parse(lineno, format!("row has {} characters, expected {n}", chars.len())));
        }
        let mut row = Vec::with_capacity(n);
        for (j, &c) in chars.iter().enumerate() {
            let bit = match (c, i == j) {
                ('-', true) => 0,
                (_, true) => return Err(Error::parse(lineno, format!("diagonal entry must be '-', found '{c}'"))),
                ('0', false) => 0,
                ('1', false) => 1,
                _ => return Err(Error::parse(lineno, format!("unexpected character '{c}' in column {}", j + 1))),
            };
            row.push(bit);
        }
        // Check antisymmetry against rows already read so the error names this line.
        for (k, prev) in rows.iter().enumerate() {
            let prev: &Vec<u8> = prev;
            if prev[i] + row[k] != 1 {
                return Err(Error::parse(
                    lineno,
                    format!("pair ({k},{i}) must be oriented exactly one way"),
                ));
            }
        }
        rows.push(row);
    }
    for (k, extra) in lines.enumerate() {
        let extra = extra.map_err(|e| Error::parse(n + 2 + k, e.to_string()))?;
        if !extra.trim().is_empty() {
            return Err(Error::parse(n + 2 + k, "trailing content after matrix"));
        }
    }
    Tournament::from_matrix(n, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::{cyclic, random_tournament};
    use proptest::prelude::*;

    #[test]
    fn writes_cycle() {
        let mut buf = Vec::new();
        write_trn(&cyclic(3).unwrap(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "TRN v1 3\n-10\n0-1\n10-\n");
    }

    #[test]
    fn reports_first_bad_line() {
        let err = read_trn("TRN v1 3\n-10\n0-1\n11-\n".as_bytes()).unwrap_err();
        assert_eq!(err, Error::parse(4, "pair (1,2) must be oriented exactly one way"));
        let err = read_trn("TRN v1 3\n-10\n0x1\n10-\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = read_trn("TRN v2 3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_trn("TRN v1 3\n-10\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = read_trn("TRN v1 2\n-1\n0-\nxx\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..80, seed in any::<u64>()) {
            let t = random_tournament(n, seed);
            let mut buf = Vec::new();
            write_trn(&t, &mut buf).unwrap();
            let back = read_trn(buf.as_slice()).unwrap();
            prop_assert_eq!(&back, &t);
            let mut again = Vec::new();
            write_trn(&back, &mut again).unwrap();
            prop_assert_eq!(again, buf);
        }
    }
}
