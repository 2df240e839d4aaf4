//! Hiccup sequences: definition, generation and parameter inference.
//!
//! For parameters `(j, x, y, z)` the sequence starts at `a(1) = x` and
//! steps by `y` when `n - j` is an earlier term, by `z` otherwise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HiccupParams {
    pub j: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl HiccupParams {
    pub const fn new(j: u64, x: u64, y: u64, z: u64) -> Self {
        HiccupParams { j, x, y, z }
    }

    pub fn validate(&self) -> Result<()> {
        let HiccupParams { j, x, y, z } = *self;
        if y == 0 || z == 0 {
            return Err(Error::InvalidParams(format!(
                "{self}: steps must satisfy y, z >= 1"
            )));
        }
        if y == z {
            return Err(Error::InvalidParams(format!("{self}: steps must satisfy y != z")));
        }
        if x == 0 && (j != 0 || y < 2 || z < 2) {
            return Err(Error::InvalidParams(format!(
                "{self}: x = 0 requires j = 0 and y, z > 1"
            )));
        }
        Ok(())
    }

    /// `j = 0, x = 1, z = 1`: every step is `z`, so `a(n) = n`.
    pub fn is_degenerate(&self) -> bool {
        self.j == 0 && self.x == 1 && self.z == 1
    }

    /// Parameters of the `j = 0` sequence `b` with `a(n) = b(n) - j`.
    pub fn reduce_j(&self) -> (HiccupParams, u64) {
        (HiccupParams::new(0, self.x + self.j, self.y, self.z), self.j)
    }

    /// For `x = 0`, parameters of `b` with `a(n + 1) = b(n) + 1`.
    pub fn lift_x0(&self) -> Result<HiccupParams> {
        if self.x != 0 || self.j != 0 {
            return Err(Error::Domain(format!("{self}: lift applies to j = 0, x = 0")));
        }
        Ok(HiccupParams::new(0, self.z - 1, self.y, self.z))
    }
}

impl fmt::Display for HiccupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.j, self.x, self.y, self.z)
    }
}

impl FromStr for HiccupParams {
    type Err = Error;

    /// Accepts `j,x,y,z` with optional parentheses and spaces.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected j,x,y,z, got {s:?}")));
        }
        let mut v = [0u64; 4];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {p:?}")))?;
        }
        Ok(HiccupParams::new(v[0], v[1], v[2], v[3]))
    }
}

/// A finite sequence, indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IntegerSequence(pub Vec<i64>);

impl IntegerSequence {
    pub fn terms(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a(n)` for `n >= 1`.
    pub fn get(&self, n: usize) -> Option<i64> {
        n.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn last(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl From<Vec<i64>> for IntegerSequence {
    fn from(v: Vec<i64>) -> Self {
        IntegerSequence(v)
    }
}

/// Word over `{0, 1}`, indexed from 1 when viewed as a characteristic word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BinaryWord(pub Vec<u8>);

impl BinaryWord {
    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions (1-indexed) holding a `1`.
    pub fn ones(&self) -> Vec<i64> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i as i64 + 1)
            .collect()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("not a binary digit: {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

/// First `count` terms. Degenerate parameters are generated as well; check
/// [`HiccupParams::is_degenerate`] to flag them.
pub fn generate_hiccup(params: &HiccupParams, count: usize) -> Result<IntegerSequence> {
    params.validate()?;
    if count == 0 {
        return Err(Error::Domain("empty request: count must be at least 1".into()));
    }
    let HiccupParams { j, x, y, z } = *params;
    let mut a: Vec<i64> = Vec::with_capacity(count);
    a.push(x as i64);
    // Terms increase, so membership of n - j is tracked with one pointer.
    let mut k = 0usize;
    for n in 2..=count as i64 {
        let target = n - j as i64;
        let member = if target <= 0 {
            false
        } else {
            while k < a.len() && a[k] < target {
                k += 1;
            }
            k < a.len() && a[k] == target
        };
        let step = if member { y } else { z } as i64;
        let prev = *a.last().unwrap();
        a.push(prev + step);
    }
    Ok(IntegerSequence(a))
}

/// `(0, x + j, y, z)` and the shift `j`: the reduced sequence is the
/// original plus `j`, term by term.
pub fn reduce_j_to_zero(params: &HiccupParams) -> Result<(HiccupParams, u64)> {
    params.validate()?;
    if params.j == 0 {
        return Err(Error::Domain(format!("{params}: j is already 0")));
    }
    Ok(params.reduce_j())
}

/// `(0, z - 1, y, z)` for `(0, 0, y, z)`; the sequences satisfy
/// `a(1) = 0` and `a(n + 1) = b(n) + 1`.
pub fn lift_from_zero_x(params: &HiccupParams) -> Result<HiccupParams> {
    params.validate()?;
    params.lift_x0()
}

/// Characteristic word of length `length`: letter `i` is `1` iff `i` is a term.
pub fn characteristic_word(seq: &IntegerSequence, length: usize) -> Result<BinaryWord> {
    let last = seq.last().unwrap_or(0);
    if (length as i64) > last {
        return Err(Error::Domain(format!(
            "length {length} exceeds the last known term {last}"
        )));
    }
    let mut w = vec![0u8; length];
    for &t in seq.terms() {
        if t >= 1 && (t as usize) <= length {
            w[t as usize - 1] = 1;
        }
    }
    Ok(BinaryWord(w))
}

/// All parameter sets with `j <= j_max` that reproduce `prefix` exactly.
pub fn infer_params(prefix: &IntegerSequence, j_max: u64) -> Result<Vec<HiccupParams>> {
    const MIN_LEN: usize = 4;
    if prefix.len() < MIN_LEN {
        return Err(Error::TooShort {
            needed: MIN_LEN,
            got: prefix.len(),
        });
    }
    if !prefix.is_strictly_increasing() {
        return Err(Error::NotHiccup("prefix is not strictly increasing".into()));
    }
    let first = prefix.terms()[0];
    if first < 0 {
        return Err(Error::NotHiccup("negative first term".into()));
    }
    let mut diffs: Vec<u64> = prefix
        .terms()
        .windows(2)
        .map(|w| (w[1] - w[0]) as u64)
        .collect();
    diffs.sort_unstable();
    diffs.dedup();
    let pairs: Vec<(u64, u64)> = match diffs.as_slice() {
        [a, b] => vec![(*a, *b), (*b, *a)],
        // A single observed step leaves the other one open; search a small range.
        [a] => (1..=2 * a + 2)
            .filter(|o| o != a)
            .flat_map(|o| [(*a, o), (o, *a)])
            .collect(),
        _ => {
            return Err(Error::NotHiccup(format!(
                "{} distinct first differences",
                diffs.len()
            )))
        }
    };
    let x = first as u64;
    let mut out = Vec::new();
    for j in 0..=j_max {
        for &(y, z) in &pairs {
            let p = HiccupParams::new(j, x, y, z);
            if p.validate().is_err() {
                continue;
            }
            if generate_hiccup(&p, prefix.len())?.terms() == prefix.terms() {
                out.push(p);
            }
        }
    }
    out.sort_by_key(|p| (p.j, p.y, p.z));
    Ok(out)
}
