//! Morphisms on small alphabets, their fixed points, and the morphic
//! presentations of hiccup sequences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequence::{HiccupParams, IntegerSequence};

/// Letter-to-word map. Letters are single characters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Morphism {
    images: BTreeMap<char, Vec<char>>,
}

impl Morphism {
    pub fn new<I, S>(rules: I) -> Result<Self>
    where
        I: IntoIterator<Item = (char, S)>,
        S: AsRef<str>,
    {
        let mut images = BTreeMap::new();
        for (l, img) in rules {
            let img: Vec<char> = img.as_ref().chars().collect();
            if img.is_empty() {
                return Err(Error::Parse(format!("empty image for {l:?}")));
            }
            if images.insert(l, img).is_some() {
                return Err(Error::Parse(format!("letter {l:?} defined twice")));
            }
        }
        let m = Morphism { images };
        for img in m.images.values() {
            if let Some(c) = img.iter().find(|c| !m.images.contains_key(c)) {
                return Err(Error::Parse(format!("letter {c:?} has no image")));
            }
        }
        Ok(m)
    }

    pub fn letters(&self) -> Vec<char> {
        self.images.keys().copied().collect()
    }

    pub fn image(&self, letter: char) -> Option<&[char]> {
        self.images.get(&letter).map(Vec::as_slice)
    }

    pub fn image_str(&self, letter: char) -> String {
        self.image(letter).map(|v| v.iter().collect()).unwrap_or_default()
    }

    pub fn apply(&self, word: &[char]) -> Result<Vec<char>> {
        let mut out = Vec::new();
        for c in word {
            out.extend_from_slice(
                self.image(*c)
                    .ok_or_else(|| Error::Domain(format!("letter {c:?} has no image")))?,
            );
        }
        Ok(out)
    }

    /// `self` after `inner`: the map `w -> self(inner(w))`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        let mut images = BTreeMap::new();
        for (l, img) in &inner.images {
            images.insert(*l, self.apply(img)?);
        }
        Ok(Morphism { images })
    }

    /// Entry `[u][v]` counts occurrences of letter `u` in the image of `v`,
    /// rows and columns in [`Morphism::letters`] order.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        let letters = self.letters();
        letters
            .iter()
            .map(|u| {
                letters
                    .iter()
                    .map(|v| self.images[v].iter().filter(|c| *c == u).count() as u64)
                    .collect()
            })
            .collect()
    }

    /// The adjacency matrix restricted to `letters`, in the given order.
    pub fn adjacency_on(&self, letters: &[char]) -> Vec<Vec<u64>> {
        letters
            .iter()
            .map(|u| {
                letters
                    .iter()
                    .map(|v| self.image(*v).map_or(0, |img| img.iter().filter(|c| *c == u).count() as u64))
                    .collect()
            })
            .collect()
    }

    /// Some power of the adjacency matrix is strictly positive.
    ///
    /// When both `0` and `1` are letters, only the `{0, 1}` block is used:
    /// any other letter is a start marker that never recurs.
    pub fn is_primitive(&self) -> bool {
        let letters = self.letters();
        let core = if letters.contains(&'0') && letters.contains(&'1') {
            vec!['0', '1']
        } else {
            letters
        };
        let m: Vec<Vec<bool>> = self
            .adjacency_on(&core)
            .into_iter()
            .map(|r| r.into_iter().map(|v| v > 0).collect())
            .collect();
        let n = m.len();
        if n == 0 {
            return false;
        }
        let mut p = m.clone();
        for _ in 0..(n - 1) * (n - 1) + 1 {
            if p.iter().all(|r| r.iter().all(|&b| b)) {
                return true;
            }
            p = (0..n)
                .map(|i| (0..n).map(|j| (0..n).any(|k| p[i][k] && m[k][j])).collect())
                .collect();
        }
        false
    }

    /// `true` when the image of `letter` starts with it and is longer than one letter.
    pub fn is_prolongable(&self, letter: char) -> bool {
        self.image(letter)
            .is_some_and(|img| img.len() > 1 && img[0] == letter)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, img)) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}->{}", img.iter().collect::<String>())?;
        }
        Ok(())
    }
}

impl FromStr for Morphism {
    type Err = Error;

    /// Parses text such as `0->10, 1->100`.
    fn from_str(s: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for part in s.split([',', ';']).map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) = part
                .split_once("->")
                .or_else(|| part.split_once('↦'))
                .ok_or_else(|| Error::Parse(format!("missing '->' in {part:?}")))?;
            let mut lc = lhs.trim().chars();
            let l = match (lc.next(), lc.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::Parse(format!("bad letter {lhs:?}"))),
            };
            let rhs: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
            rules.push((l, rhs));
        }
        if rules.is_empty() {
            return Err(Error::Parse("no rules".into()));
        }
        Morphism::new(rules)
    }
}

/// Letter-to-letter map onto `{0, 1}`; unlisted letters map to themselves.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coding(pub BTreeMap<char, char>);

impl Coding {
    pub fn identity() -> Self {
        Coding::default()
    }

    pub fn with(mut self, from: char, to: char) -> Self {
        self.0.insert(from, to);
        self
    }

    pub fn code(&self, c: char) -> char {
        self.0.get(&c).copied().unwrap_or(c)
    }

    pub fn apply(&self, w: &[char]) -> Vec<char> {
        w.iter().map(|&c| self.code(c)).collect()
    }
}

impl fmt::Display for Coding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("identity");
        }
        for (i, (a, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        Ok(())
    }
}

/// Lazily extended fixed point of a morphism.
#[derive(Debug, Clone)]
pub struct FixedPoint<'a> {
    morphism: &'a Morphism,
    word: Vec<char>,
    next: usize,
    produced: usize,
}

impl<'a> FixedPoint<'a> {
    pub fn new(morphism: &'a Morphism, seed: &str) -> Result<Self> {
        let word: Vec<char> = seed.chars().collect();
        if word.is_empty() {
            return Err(Error::Domain("empty seed".into()));
        }
        if let Some(c) = word.iter().find(|c| morphism.image(**c).is_none()) {
            return Err(Error::Domain(format!("seed letter {c:?} has no image")));
        }
        let mut fp = FixedPoint {
            morphism,
            word,
            next: 0,
            produced: 0,
        };
        let n = fp.word.len();
        fp.extend_to(n + 1)?;
        Ok(fp)
    }

    /// Grows the word to at least `len` letters, checking that it really is
    /// a prefix of a fixed point.
    pub fn extend_to(&mut self, len: usize) -> Result<()> {
        // `produced` is the length of the image of word[..next].
        let mut produced = self.produced;
        while self.word.len() < len {
            if self.next >= self.word.len() {
                return Err(Error::Ambiguous(format!(
                    "iteration from {:?} stalls at length {}",
                    self.word.iter().take(8).collect::<String>(),
                    self.word.len()
                )));
            }
            let img = &self.morphism.images[&self.word[self.next]];
            for &c in img {
                if produced < self.word.len() {
                    if self.word[produced] != c {
                        return Err(Error::NotProlongable(format!(
                            "image disagrees with the word at position {}",
                            produced + 1
                        )));
                    }
                } else {
                    self.word.push(c);
                }
                produced += 1;
            }
            self.next += 1;
            self.produced = produced;
        }
        Ok(())
    }

    pub fn word(&self) -> &[char] {
        &self.word
    }

    pub fn prefix(&mut self, len: usize) -> Result<&[char]> {
        self.extend_to(len)?;
        Ok(&self.word[..len])
    }
}

pub fn fixed_point(m: &Morphism, seed: &str, length: usize) -> Result<Vec<char>> {
    let mut fp = FixedPoint::new(m, seed)?;
    Ok(fp.prefix(length)?.to_vec())
}

/// 1-indexed positions of coded `1`s in the first `length` letters.
pub fn ones_positions(
    m: &Morphism,
    coding: &Coding,
    seed: &str,
    length: usize,
) -> Result<Vec<i64>> {
    let w = fixed_point(m, seed, length)?;
    Ok(w.iter()
        .enumerate()
        .filter(|(_, c)| coding.code(**c) == '1')
        .map(|(i, _)| i as i64 + 1)
        .collect())
}

/// Moves the last letter of each image to the front.
///
/// All images of `0` and `1` must end in the same letter. A letter outside
/// `{0, 1}` whose image starts with itself is treated as special: its image
/// loses its last letter instead, which leaves its fixed point unchanged.
pub fn cyclic_shift(m: &Morphism) -> Result<Morphism> {
    let last: BTreeSet<char> = m
        .images
        .iter()
        .filter(|(l, _)| is_binary(**l))
        .map(|(_, img)| *img.last().unwrap())
        .collect();
    if last.len() != 1 {
        return Err(Error::Domain(
            "images of 0 and 1 do not end in a common letter".into(),
        ));
    }
    let mut images = BTreeMap::new();
    for (l, img) in &m.images {
        let mut img = img.clone();
        if is_binary(*l) {
            img.rotate_right(1);
        } else {
            if img.len() < 2 || img[0] != *l {
                return Err(Error::Domain(format!("special letter {l:?} is not prolongable")));
            }
            img.pop();
        }
        images.insert(*l, img);
    }
    let out = Morphism { images };
    if !out.letters().iter().any(|l| out.is_prolongable(*l)) {
        return Err(Error::NotProlongable(format!(
            "rotated morphism {out} has no prolongable letter"
        )));
    }
    Ok(out)
}

/// Absorbs a special letter `s` with `s -> s u` into its coded letter `c`
/// when `c -> c u`; the fixed point from `s` then codes to the one from `c`.
pub fn drop_special_letter(m: &Morphism, coding: &Coding) -> Result<(Morphism, char)> {
    let special: Vec<char> = m.letters().into_iter().filter(|l| !is_binary(*l)).collect();
    let s = match special.as_slice() {
        [s] => *s,
        _ => {
            return Err(Error::Domain(
                "expected exactly one letter outside {0, 1}".into(),
            ))
        }
    };
    let c = coding.code(s);
    let si = &m.images[&s];
    let ci = m
        .image(c)
        .ok_or_else(|| Error::Domain(format!("coded letter {c:?} has no image")))?;
    if si[0] != s || ci.first() != Some(&c) || si[1..] != ci[1..] {
        return Err(Error::Domain(format!(
            "{s}->{} does not match {c}->{}",
            m.image_str(s),
            m.image_str(c)
        )));
    }
    let mut images = m.images.clone();
    images.remove(&s);
    Ok((Morphism { images }, c))
}

fn is_binary(c: char) -> bool {
    c == '0' || c == '1'
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Pure form `0 -> 0^(x-1) 1 0^(z-x)`, `1 -> 0^(x+y-z-1) 1 0^(z-x)`.
    Pure,
    /// `j = 0, x = 1, y < z`, two letters.
    UnitStartSmallStep,
    /// `j = 0, x = 1, y > z`, with a special start letter.
    UnitStartLargeStep,
    /// `j = 0, x > 1, y < z`, with a special start letter.
    SmallStep,
    /// `j = 0, x > 1, y > z`, with a special start letter.
    LargeStep,
    /// `j = 1, x > 1`, with a special start letter.
    LagOne,
    /// `j = 1, x = 1, y > 1`, two letters.
    LagOnePure,
    /// Shifted presentation of the `j = 0` sequence with start `x + j`.
    Reduced,
    /// `x = 0`: one extra start letter in front of the `(0, z-1, y, z)` word.
    Prepended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Preference {
    /// Use the two-letter pure form whenever it is available and prolongable.
    #[default]
    Pure,
    /// Use the case constructions only.
    Literal,
}

/// A morphic presentation: `a(first_index + k) = p_k + shift`, where `p_k`
/// is the position of the `k`-th coded `1` in the fixed point from `seed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiccupMorphism {
    pub params: HiccupParams,
    pub morphism: Morphism,
    pub coding: Coding,
    pub seed: String,
    pub shift: i64,
    pub first_index: usize,
    pub construction: Construction,
}

impl HiccupMorphism {
    pub fn is_pure(&self) -> bool {
        self.coding.0.is_empty() && self.shift == 0 && self.first_index == 1
    }

    /// First `count` terms of the sequence read off the fixed point.
    pub fn terms(&self, count: usize) -> Result<IntegerSequence> {
        let mut out: Vec<i64> = Vec::with_capacity(count);
        if self.first_index == 2 && count > 0 {
            out.push(self.params.x as i64);
        }
        let mut fp = FixedPoint::new(&self.morphism, &self.seed)?;
        let mut pos = 0usize;
        let mut len = 64usize;
        while out.len() < count {
            fp.extend_to(len)?;
            let w = fp.word();
            while pos < w.len() && out.len() < count {
                if self.coding.code(w[pos]) == '1' {
                    out.push(pos as i64 + 1 + self.shift);
                }
                pos += 1;
            }
            len = len.saturating_mul(2);
        }
        Ok(IntegerSequence(out))
    }
}

impl fmt::Display for HiccupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; seed {}; coding {}", self.morphism, self.seed, self.coding)?;
        if self.shift != 0 {
            write!(f, "; shift {}", self.shift)?;
        }
        if self.first_index != 1 {
            write!(f, "; from a({})", self.first_index)?;
        }
        Ok(())
    }
}

fn rep(c: char, k: u64) -> String {
    std::iter::repeat(c).take(k as usize).collect()
}

fn build(rules: &[(char, String)]) -> Morphism {
    Morphism::new(rules.iter().map(|(c, s)| (*c, s.as_str()))).expect("well-formed rules")
}

/// Pure two-letter form for `z - y + 1 <= x <= z`, if it applies.
pub fn pure_morphism(params: &HiccupParams) -> Option<Morphism> {
    let HiccupParams { j, x, y, z } = *params;
    if j != 0 || x == 0 || x > z || x + y < z + 1 {
        return None;
    }
    Some(build(&[
        ('0', format!("{}1{}", rep('0', x - 1), rep('0', z - x))),
        ('1', format!("{}1{}", rep('0', x + y - z - 1), rep('0', z - x))),
    ]))
}

pub fn hiccup_morphism(params: &HiccupParams) -> Result<HiccupMorphism> {
    hiccup_morphism_with(params, Preference::Pure)
}

pub fn hiccup_morphism_with(params: &HiccupParams, pref: Preference) -> Result<HiccupMorphism> {
    params.validate()?;
    if params.is_degenerate() {
        return Err(Error::Domain(format!("{params} is degenerate: a(n) = n")));
    }
    let HiccupParams { j, x, y, z } = *params;
    let plain = |morphism, seed: &str, coding, construction| HiccupMorphism {
        params: *params,
        morphism,
        coding,
        seed: seed.to_string(),
        shift: 0,
        first_index: 1,
        construction,
    };
    match j {
        0 if x == 0 => prepended(params, pref),
        0 => {
            if pref == Preference::Pure && x >= 2 {
                if let Some(m) = pure_morphism(params) {
                    return Ok(plain(m, "0", Coding::identity(), Construction::Pure));
                }
            }
            let (m, seed, coding, c) = if x == 1 && y < z {
                let m = build(&[
                    ('1', format!("1{}", rep('0', y - 1))),
                    ('0', format!("{}1{}", rep('0', z - y), rep('0', y - 1))),
                ]);
                (m, "10", Coding::identity(), Construction::UnitStartSmallStep)
            } else if x == 1 {
                let m = build(&[
                    ('b', format!("b{}", rep('0', z - 1))),
                    ('0', format!("1{}", rep('0', z - 1))),
                    ('1', format!("{}1{}", rep('0', y - z), rep('0', z - 1))),
                ]);
                (m, "b", Coding::identity().with('b', '1'), Construction::UnitStartLargeStep)
            } else if y < z {
                let m = build(&[
                    ('b', format!("b{}1{}", rep('0', x - 2), rep('0', y - 1))),
                    ('0', format!("{}1{}", rep('0', z - y), rep('0', y - 1))),
                    ('1', format!("1{}", rep('0', y - 1))),
                ]);
                (m, "b", Coding::identity().with('b', '0'), Construction::SmallStep)
            } else {
                let m = build(&[
                    ('b', format!("b{}1{}", rep('0', x - 2), rep('0', z - 1))),
                    ('0', format!("1{}", rep('0', z - 1))),
                    ('1', format!("{}1{}", rep('0', y - z), rep('0', z - 1))),
                ]);
                (m, "b", Coding::identity().with('b', '0'), Construction::LargeStep)
            };
            Ok(plain(m, seed, coding, c))
        }
        1 if x >= 2 => {
            let m = build(&[
                ('b', format!("b{}1{}", rep('0', x - 2), rep('0', z - 1))),
                ('0', format!("1{}", rep('0', z - 1))),
                ('1', format!("1{}", rep('0', y - 1))),
            ]);
            Ok(plain(m, "b", Coding::identity().with('b', '0'), Construction::LagOne))
        }
        1 if y > 1 => {
            let m = build(&[
                ('0', format!("1{}", rep('0', z - 1))),
                ('1', format!("1{}", rep('0', y - 1))),
            ]);
            Ok(plain(m, "1", Coding::identity(), Construction::LagOnePure))
        }
        1 => {
            let (reduced, shift) = params.reduce_j();
            let inner = hiccup_morphism_with(&reduced, pref)?;
            Ok(HiccupMorphism {
                params: *params,
                shift: inner.shift - shift as i64,
                construction: Construction::Reduced,
                ..inner
            })
        }
        _ => Err(Error::ReduceFirst(j)),
    }
}

fn prepended(params: &HiccupParams, pref: Preference) -> Result<HiccupMorphism> {
    let inner_params = params.lift_x0()?;
    let inner = hiccup_morphism_with(&inner_params, pref)?;
    if inner.first_index != 1 || inner.shift != 0 {
        return Err(Error::Domain(format!("cannot prepend to {inner}")));
    }
    let d = inner.seed.chars().next().unwrap();
    if inner.seed.len() != 1 || !inner.morphism.is_prolongable(d) {
        return Err(Error::NotProlongable(format!("cannot prepend to {inner}")));
    }
    // With d -> d v, the fixed point from `c` is `c e v sigma(v) ...`, which
    // codes to `0` followed by the inner fixed point once `e` codes like `d`.
    let (c, e) = fresh_pair(&inner.morphism);
    let e_image = inner.morphism.image_str(d)[1..].to_string();
    let mut rules: Vec<(char, String)> = inner
        .morphism
        .letters()
        .into_iter()
        .map(|l| (l, inner.morphism.image_str(l)))
        .collect();
    rules.push((c, format!("{c}{e}")));
    rules.push((e, e_image));
    let coding = inner
        .coding
        .clone()
        .with(c, '0')
        .with(e, inner.coding.code(d));
    Ok(HiccupMorphism {
        params: *params,
        morphism: build(&rules),
        coding,
        seed: c.to_string(),
        shift: 0,
        first_index: 2,
        construction: Construction::Prepended,
    })
}

fn fresh_pair(m: &Morphism) -> (char, char) {
    let used = m.letters();
    let mut free = ['c', 'e', 'f', 'g', 'h'].into_iter().filter(|l| !used.contains(l));
    (free.next().unwrap(), free.next().unwrap())
}
