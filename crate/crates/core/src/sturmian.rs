//! Sturmian structure of hiccup sequences with `|y - z| = 1`.
//!
//! Such sequences are fixed points of compositions of the elementary
//! Sturmian morphisms `E: 0->1, 1->0`, `L: 0->01, 1->0`, `R: 0->10, 1->0`.
//! Tracking how each generator acts on the slope and intercept of a
//! mechanical word gives the slope and intercept of the fixed point, and
//! from there a Beatty formula for the sequence.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::quadratic::{floor_quadratic_i128, QuadraticNumber};
use crate::sequence::{characteristic_word, generate_hiccup, HiccupParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    E,
    L,
    R,
}

impl Generator {
    pub fn morphism(self) -> Morphism {
        let text = match self {
            Generator::E => "0->1, 1->0",
            Generator::L => "0->01, 1->0",
            Generator::R => "0->10, 1->0",
        };
        text.parse().expect("static morphism")
    }

    /// Image of the mechanical parameters `(alpha, rho)` of a word under
    /// this generator, as `(alpha', a, b)` with `rho' = a * rho + b`.
    fn action(self, alpha: &QuadraticNumber) -> (QuadraticNumber, QuadraticNumber, QuadraticNumber) {
        let one = QuadraticNumber::one();
        match self {
            Generator::E => (&one - alpha, -&one, one),
            Generator::L | Generator::R => {
                let den = QuadraticNumber::integer(2) - alpha;
                let a = -(&one / &den);
                let alpha2 = (&one - alpha) / &den;
                let b = if self == Generator::L { &one / &den } else { one };
                (alpha2, a, b)
            }
        }
    }
}

/// Composition of generators; the rightmost one is applied first.
pub fn compose(word: &[Generator]) -> Morphism {
    let mut m: Morphism = "0->0, 1->1".parse().unwrap();
    for g in word {
        m = m.compose(&g.morphism()).expect("binary alphabet");
    }
    m
}

/// Named blocks: `G = L E`, `Gt = R E`, `H = E R E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    G,
    Gt,
    H,
    E,
}

impl Block {
    fn generators(self) -> &'static [Generator] {
        use Generator::*;
        match self {
            Block::G => &[L, E],
            Block::Gt => &[R, E],
            Block::H => &[E, R, E],
            Block::E => &[E],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Block::G => "G",
            Block::Gt => "G~",
            Block::H => "H",
            Block::E => "E",
        }
    }
}

/// How the word relates to the composite morphism `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// The fixed point of `s` starting with this letter.
    Seed(char),
    /// The word `w` with `s(w) = c w`.
    Prefixed(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianDecomposition {
    pub params: HiccupParams,
    /// The `j = 0, x >= 1` sequence the decomposition describes.
    pub core: HiccupParams,
    pub blocks: Vec<(Block, u64)>,
    pub anchor: Anchor,
}

impl SturmianDecomposition {
    pub fn generators(&self) -> Vec<Generator> {
        self.blocks
            .iter()
            .flat_map(|(b, k)| std::iter::repeat(b.generators()).take(*k as usize).flatten().copied())
            .collect()
    }

    pub fn morphism(&self) -> Morphism {
        compose(&self.generators())
    }
}

impl fmt::Display for SturmianDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .filter(|(_, k)| *k > 0)
            .map(|(b, k)| {
                if *k == 1 {
                    b.name().to_string()
                } else {
                    format!("{}^{k}", b.name())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))?;
        match self.anchor {
            Anchor::Seed(c) => write!(f, " (fixed point from {c})"),
            Anchor::Prefixed(c) => write!(f, " (w with s(w) = {c}w)"),
        }
    }
}

/// Reduces `j` and lifts `x = 0`, returning the `j = 0, x >= 1` core and
/// `(value shift, first index)` with `a(n) = core(n - first + 1) + shift`.
fn core_params(params: &HiccupParams) -> Result<(HiccupParams, i64, usize)> {
    params.validate()?;
    let (mut core, j) = params.reduce_j();
    let mut shift = -(j as i64);
    let mut first = 1;
    if core.x == 0 {
        core = core.lift_x0()?;
        shift += 1;
        first = 2;
    }
    Ok((core, shift, first))
}

pub fn sturmian_decomposition(params: &HiccupParams) -> Result<SturmianDecomposition> {
    let (core, _, _) = core_params(params)?;
    let HiccupParams { x, y, z, .. } = core;
    if core.is_degenerate() {
        return Err(Error::NotApplicable(format!("{params} is degenerate")));
    }
    if x > z || y.abs_diff(z) != 1 {
        return Err(Error::NotApplicable(format!(
            "{params}: needs x <= z and |y - z| = 1 after reduction"
        )));
    }
    let (blocks, anchor) = if y == z + 1 {
        let blocks = vec![(Block::G, x - 1), (Block::Gt, z - x), (Block::H, 1)];
        let anchor = if x >= 2 {
            Anchor::Seed('0')
        } else {
            Anchor::Prefixed('0')
        };
        (blocks, anchor)
    } else if x >= 2 {
        (
            vec![(Block::G, x - 2), (Block::Gt, z - x), (Block::H, 1), (Block::E, 1)],
            Anchor::Seed('0'),
        )
    } else {
        (
            vec![(Block::Gt, z - 2), (Block::H, 1), (Block::E, 1)],
            Anchor::Seed('1'),
        )
    };
    Ok(SturmianDecomposition {
        params: *params,
        core,
        blocks,
        anchor,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    Floor,
    Ceil,
}

/// Mechanical word `s(n) = r((n+1) alpha + beta) - r(n alpha + beta)`,
/// `n >= 0`, with `r` the floor (lower word) or ceiling (upper word).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanicalParams {
    pub alpha: QuadraticNumber,
    pub beta: QuadraticNumber,
    pub rounding: Rounding,
}

fn round(x: &QuadraticNumber, r: Rounding) -> BigInt {
    match r {
        Rounding::Floor => x.floor(),
        Rounding::Ceil => x.ceil(),
    }
}

pub fn mechanical_word(mp: &MechanicalParams, length: usize) -> Vec<u8> {
    let mut prev = round(&mp.beta, mp.rounding);
    let mut out = Vec::with_capacity(length);
    let mut x = mp.beta.clone();
    for _ in 0..length {
        x = &x + &mp.alpha;
        let cur = round(&x, mp.rounding);
        out.push((&cur - &prev).to_u8().expect("slope in [0, 1]"));
        prev = cur;
    }
    out
}

/// Parameters of `g(w)` for a mechanical word `w` with `(alpha, rho)`.
pub fn apply_transformation(
    word: &[Generator],
    alpha: &QuadraticNumber,
    rho: &QuadraticNumber,
) -> (QuadraticNumber, QuadraticNumber) {
    let (a, aa, bb) = affine_composite(word, alpha);
    (a, &aa * rho + bb)
}

fn affine_composite(
    word: &[Generator],
    alpha: &QuadraticNumber,
) -> (QuadraticNumber, QuadraticNumber, QuadraticNumber) {
    let mut cur = alpha.clone();
    let mut aa = QuadraticNumber::one();
    let mut bb = QuadraticNumber::zero();
    for g in word.iter().rev() {
        let (next, ga, gb) = g.action(&cur);
        aa = &ga * &aa;
        bb = &ga * &bb + gb;
        cur = next;
    }
    (cur, aa, bb)
}

/// Frequency of `1` in the fixed point of a primitive binary morphism.
pub fn perron_density(m: &Morphism) -> Result<QuadraticNumber> {
    let mat = m.adjacency_matrix();
    if mat.len() != 2 {
        return Err(Error::Domain("expected a binary morphism".into()));
    }
    if !m.is_primitive() {
        return Err(Error::NotPrimitive(m.to_string()));
    }
    let (a, b, c, d) = (
        mat[0][0] as i64,
        mat[0][1] as i64,
        mat[1][0] as i64,
        mat[1][1] as i64,
    );
    let disc = (a - d) * (a - d) + 4 * b * c;
    let lambda = QuadraticNumber::new(a + d, 1, 2, disc as u64);
    let den = &lambda - d + c;
    Ok(QuadraticNumber::integer(c) / den)
}

/// Slope and intercept of the Sturmian word of a decomposition.
pub fn transformation_fixed_point(dec: &SturmianDecomposition) -> Result<MechanicalParams> {
    let word = dec.generators();
    let m = compose(&word);
    let alpha = perron_density(&m)?;
    if alpha.is_rational() {
        return Err(Error::NotApplicable("rational slope".into()));
    }
    let (alpha_out, aa, bb) = affine_composite(&word, &alpha);
    if alpha_out != alpha {
        return Err(Error::Domain(format!(
            "slope {alpha} is not fixed by {dec}"
        )));
    }
    let one = QuadraticNumber::one();
    let rho = match dec.anchor {
        Anchor::Seed(_) => &bb / &(&one - &aa),
        Anchor::Prefixed(_) => (&bb + &alpha) / (&one - &aa),
    };
    let rho = &rho - &QuadraticNumber::integer(rho.floor());
    let target = core_word(dec)?;
    let check_len = exceptional_index(&alpha, &rho)
        .map_or(0, |n| n as usize + 2)
        .max(target.len().min(256));
    let target = if check_len > target.len() {
        core_word_len(dec, check_len)?
    } else {
        target
    };
    for rounding in [Rounding::Ceil, Rounding::Floor] {
        let beta = if rounding == Rounding::Ceil && rho.is_zero() {
            one.clone()
        } else {
            rho.clone()
        };
        let mp = MechanicalParams {
            alpha: alpha.clone(),
            beta,
            rounding,
        };
        if mechanical_word(&mp, check_len) == target[..check_len] {
            return Ok(mp);
        }
    }
    Err(Error::Domain(format!(
        "no rounding of slope {alpha}, intercept {rho} reproduces {}",
        dec.core
    )))
}

fn core_word(dec: &SturmianDecomposition) -> Result<Vec<u8>> {
    core_word_len(dec, 256)
}

fn core_word_len(dec: &SturmianDecomposition, len: usize) -> Result<Vec<u8>> {
    let seq = generate_hiccup(&dec.core, len + 1)?;
    Ok(characteristic_word(&seq, len)?.0)
}

/// The `n >= 0` with `n alpha + rho` an integer, if there is one.
pub fn exceptional_index(alpha: &QuadraticNumber, rho: &QuadraticNumber) -> Option<u64> {
    let ((_, _), (qa, ra)) = alpha.split();
    let ((_, _), (qb, rb)) = rho.split();
    if qa == BigInt::from(0) {
        return None;
    }
    let n = QuadraticNumber::ratio(-(qb * &ra), rb * qa);
    if !n.is_integer() || n.signum() < 0 {
        return None;
    }
    let v = alpha * &n + rho;
    if v.is_integer() {
        n.floor().to_u64()
    } else {
        None
    }
}

/// `S(n) = floor(slope * n + intercept)` or with a ceiling, for `n >= 1`.
#[derive(Debug, Clone)]
pub struct BeattyParams {
    slope: QuadraticNumber,
    intercept: QuadraticNumber,
    rounding: Rounding,
    fast: Option<FastBeatty>,
}

/// `(p0 + p1 n + (q0 + q1 n) sqrt(d)) / r` in machine integers.
#[derive(Debug, Clone, Copy)]
struct FastBeatty {
    p0: i128,
    p1: i128,
    q0: i128,
    q1: i128,
    r: i128,
    d: u64,
    ceil: bool,
}

impl PartialEq for BeattyParams {
    fn eq(&self, o: &Self) -> bool {
        self.slope == o.slope && self.intercept == o.intercept && self.rounding == o.rounding
    }
}

impl Eq for BeattyParams {}

impl BeattyParams {
    pub fn new(slope: QuadraticNumber, intercept: QuadraticNumber, rounding: Rounding) -> Self {
        let fast = FastBeatty::from_parts(&slope, &intercept, rounding);
        BeattyParams {
            slope,
            intercept,
            rounding,
            fast,
        }
    }

    pub fn slope(&self) -> &QuadraticNumber {
        &self.slope
    }

    pub fn intercept(&self) -> &QuadraticNumber {
        &self.intercept
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    /// The same values written with the other rounding, when the argument
    /// never hits an integer for `n >= 1`.
    pub fn with_intercept(&self, intercept: QuadraticNumber) -> Self {
        BeattyParams::new(self.slope.clone(), intercept, self.rounding)
    }

    pub fn term(&self, n: i64) -> BigInt {
        if let Some(v) = self.fast.and_then(|f| f.eval(n)) {
            return BigInt::from(v);
        }
        let x = &self.slope * n + &self.intercept;
        round(&x, self.rounding)
    }

    pub fn terms(&self, from: i64, count: usize) -> Vec<i64> {
        (0..count as i64)
            .map(|k| self.term(from + k).to_i64().expect("term fits in i64"))
            .collect()
    }

    /// Text such as `floor((1 + sqrt(2))*n - sqrt(2)/2)`.
    pub fn render(&self) -> String {
        let f = match self.rounding {
            Rounding::Floor => "floor",
            Rounding::Ceil => "ceil",
        };
        let st = self.slope.signed_terms();
        let slope = match st.as_slice() {
            [] => "0".to_string(),
            [(false, t)] if t == "1" => String::new(),
            [(false, t)] => format!("{t}*"),
            _ => format!("({})*", self.slope.render()),
        };
        let mut body = format!("{slope}n");
        for (neg, t) in self.intercept.signed_terms() {
            body.push_str(if neg { " - " } else { " + " });
            body.push_str(&t);
        }
        format!("{f}({body})")
    }
}

impl fmt::Display for BeattyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FastBeatty {
    fn from_parts(slope: &QuadraticNumber, intercept: &QuadraticNumber, rounding: Rounding) -> Option<Self> {
        let (sp, sq, sr, sd) = slope.parts();
        let (ip, iq, ir, id) = intercept.parts();
        let d = if slope.is_rational() { id } else { sd };
        if !slope.is_rational() && !intercept.is_rational() && sd != id {
            return None;
        }
        let g = |v: &BigInt| v.to_i128();
        let (sp, sq, sr, ip, iq, ir) = (g(sp)?, g(sq)?, g(sr)?, g(ip)?, g(iq)?, g(ir)?);
        let sign = if rounding == Rounding::Ceil { -1 } else { 1 };
        let fb = FastBeatty {
            p0: sign * ip.checked_mul(sr)?,
            p1: sign * sp.checked_mul(ir)?,
            q0: sign * iq.checked_mul(sr)?,
            q1: sign * sq.checked_mul(ir)?,
            r: sr.checked_mul(ir)?,
            d,
            ceil: rounding == Rounding::Ceil,
        };
        let bound = 1i128 << 60;
        [fb.p0, fb.p1, fb.q0, fb.q1, fb.r]
            .iter()
            .all(|v| v.abs() < bound)
            .then_some(fb)
    }

    fn eval(self, n: i64) -> Option<i128> {
        let n = n as i128;
        let p = self.p0.checked_add(self.p1.checked_mul(n)?)?;
        let q = self.q0.checked_add(self.q1.checked_mul(n)?)?;
        let f = floor_quadratic_i128(p, q, self.r, self.d)?;
        // Ceilings are evaluated as -floor(-x); the sign was folded in above.
        Some(if self.ceil { -f } else { f })
    }
}

/// Beatty form of a mechanical word: the `k`-th `1` sits at 1-indexed
/// position `S(k)`.
pub fn beatty_from_mechanical(mp: &MechanicalParams) -> Result<BeattyParams> {
    let zero = QuadraticNumber::zero();
    let one = QuadraticNumber::one();
    if !(mp.alpha > zero && mp.alpha < one) {
        return Err(Error::Domain(format!("slope {} not in (0, 1)", mp.alpha)));
    }
    let slope = one.clone() / &mp.alpha;
    let ratio = &mp.beta / &mp.alpha;
    match mp.rounding {
        Rounding::Ceil => {
            if !(mp.beta > zero && mp.beta <= one) {
                return Err(Error::Domain(format!(
                    "upper word needs intercept in (0, 1], got {}",
                    mp.beta
                )));
            }
            Ok(BeattyParams::new(slope, &one - &ratio, Rounding::Floor))
        }
        Rounding::Floor => {
            if !(mp.beta >= zero && mp.beta < one) {
                return Err(Error::Domain(format!(
                    "lower word needs intercept in [0, 1), got {}",
                    mp.beta
                )));
            }
            Ok(BeattyParams::new(slope, -ratio, Rounding::Ceil))
        }
    }
}

pub fn beatty_term(bp: &BeattyParams, n: i64) -> BigInt {
    bp.term(n)
}

/// A Beatty description of a hiccup sequence: `a(n) = S(n)` for
/// `n >= first_index`; earlier terms are given by the definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeattyForm {
    pub params: HiccupParams,
    pub beatty: BeattyParams,
    pub first_index: usize,
    pub decomposition: SturmianDecomposition,
    pub mechanical: MechanicalParams,
}

pub fn hiccup_beatty(params: &HiccupParams) -> Result<BeattyForm> {
    let (_, shift, first) = core_params(params)?;
    let dec = sturmian_decomposition(params)?;
    let mp = transformation_fixed_point(&dec)?;
    let core = beatty_from_mechanical(&mp)?;
    // a(n) = core(n - first + 1) + shift
    let offset = QuadraticNumber::integer(shift) - core.slope() * (first as i64 - 1);
    let beatty = core.with_intercept(core.intercept() + &offset);
    Ok(BeattyForm {
        params: *params,
        beatty,
        first_index: first,
        decomposition: dec,
        mechanical: mp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_blocks() {
        let g = compose(Block::G.generators());
        assert_eq!(g.to_string(), "0->0, 1->01");
        let gt = compose(Block::Gt.generators());
        assert_eq!(gt.to_string(), "0->0, 1->10");
        let h = compose(Block::H.generators());
        assert_eq!(h.to_string(), "0->1, 1->01");
    }

    #[test]
    fn render_formula() {
        let bp = BeattyParams::new(
            QuadraticNumber::new(1, 1, 1, 2),
            QuadraticNumber::new(0, -1, 2, 2),
            Rounding::Floor,
        );
        assert_eq!(bp.render(), "floor((1 + sqrt(2))*n - sqrt(2)/2)");
    }
}
