//! Dumont-Thomas numeration systems.
//!
//! For a morphism `s` with a fixed point from letter `a`, every `n >= 0`
//! has a unique greedy representation `d_{k-1} ... d_0`: reading the
//! digits from the top, digit `d` at level `i` from state `q` skips the
//! first `d` letters of `s(q)`, each of which stands for a block of length
//! `|s^i(letter)|`. The states visited form a DFA over the digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::quadratic::QuadraticNumber;
use crate::sequence::IntegerSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub states: Vec<char>,
    pub initial: usize,
    pub accepting: Vec<bool>,
    /// `transitions[q]` maps a digit to the next state.
    pub transitions: Vec<BTreeMap<u8, usize>>,
}

impl Dfa {
    pub fn step(&self, q: usize, d: u8) -> Option<usize> {
        self.transitions[q].get(&d).copied()
    }

    /// Runs the digits most significant first.
    pub fn run(&self, digits: &[u8]) -> Option<usize> {
        digits.iter().try_fold(self.initial, |q, &d| self.step(q, d))
    }

    pub fn accepts(&self, digits: &[u8]) -> bool {
        self.run(digits).is_some_and(|q| self.accepting[q])
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph numeration {\n  rankdir=LR;\n");
        for (q, name) in self.states.iter().enumerate() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  q{q} [label=\"{name}\", shape={shape}];");
        }
        let _ = writeln!(s, "  start [shape=point];\n  start -> q{};", self.initial);
        for (q, tr) in self.transitions.iter().enumerate() {
            let mut by_target: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
            for (&d, &t) in tr {
                by_target.entry(t).or_default().push(d);
            }
            for (t, ds) in by_target {
                let label: Vec<String> = ds.iter().map(u8::to_string).collect();
                let _ = writeln!(s, "  q{q} -> q{t} [label=\"{}\"];", label.join(","));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone)]
pub struct NumerationSystem {
    morphism: Morphism,
    seed: char,
    letters: Vec<char>,
    images: Vec<Vec<usize>>,
    /// `lengths[i][q] = |s^i(letter q)|`, up to the first overflow.
    lengths: Vec<Vec<u64>>,
    dfa: Dfa,
}

impl NumerationSystem {
    /// Builds the system of the fixed point of `m` from `seed`.
    pub fn new(m: &Morphism, seed: char) -> Result<Self> {
        if !m.is_prolongable(seed) {
            return Err(Error::NotProlongable(format!("{seed} under {m}")));
        }
        // States: letters reachable from the seed, in discovery order.
        let mut letters = vec![seed];
        let mut i = 0;
        while i < letters.len() {
            for &c in m.image(letters[i]).unwrap() {
                if !letters.contains(&c) {
                    letters.push(c);
                }
            }
            i += 1;
        }
        let idx = |c: char| letters.iter().position(|&l| l == c).unwrap();
        let images: Vec<Vec<usize>> = letters
            .iter()
            .map(|&l| m.image(l).unwrap().iter().map(|&c| idx(c)).collect())
            .collect();
        let mut lengths = vec![vec![1u64; letters.len()]];
        loop {
            let prev = lengths.last().unwrap();
            let next: Option<Vec<u64>> = images
                .iter()
                .map(|img| img.iter().try_fold(0u64, |acc, &c| acc.checked_add(prev[c])))
                .collect();
            match next {
                Some(v) if lengths.len() < 128 => lengths.push(v),
                _ => break,
            }
        }
        let transitions = images
            .iter()
            .map(|img| img.iter().enumerate().map(|(d, &t)| (d as u8, t)).collect())
            .collect();
        let dfa = Dfa {
            states: letters.clone(),
            initial: 0,
            accepting: vec![true; letters.len()],
            transitions,
        };
        Ok(NumerationSystem {
            morphism: m.clone(),
            seed,
            letters,
            images,
            lengths,
            dfa,
        })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn seed(&self) -> char {
        self.seed
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// `B_1, B_2, ...` with `B_{i+1} = |s^i(seed)|`.
    pub fn bases(&self) -> Vec<u64> {
        self.lengths.iter().map(|l| l[0]).collect()
    }

    /// Weight of digit `d` read in state `q` at level `i`.
    fn weight(&self, q: usize, d: u8, level: usize) -> Option<u64> {
        let img = &self.images[q];
        if d as usize >= img.len() {
            return None;
        }
        let lens = self.lengths.get(level)?;
        img[..d as usize]
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(lens[c]))
    }

    /// Greedy representation of `n`, most significant digit first; `0` is
    /// the empty word.
    pub fn represent(&self, n: u64) -> Result<Vec<u8>> {
        let k = self
            .lengths
            .iter()
            .position(|l| l[0] > n)
            .ok_or_else(|| Error::Domain(format!("{n} is beyond the precomputed levels")))?;
        let mut out = Vec::with_capacity(k);
        let mut rem = n;
        let mut q = 0usize;
        for level in (0..k).rev() {
            let img = &self.images[q];
            let lens = &self.lengths[level];
            let mut d = 0usize;
            while rem >= lens[img[d]] {
                rem -= lens[img[d]];
                d += 1;
            }
            out.push(d as u8);
            q = img[d];
        }
        debug_assert_eq!(rem, 0);
        let lead = out.iter().take_while(|&&d| d == 0).count();
        Ok(out.split_off(lead))
    }

    pub fn value(&self, digits: &[u8]) -> Result<u64> {
        let mut q = self.dfa.initial;
        let mut total = 0u64;
        let top = digits.len();
        for (i, &d) in digits.iter().enumerate() {
            let level = top - 1 - i;
            let w = self.weight(q, d, level).ok_or_else(|| {
                Error::Rejected(format!("{} at digit {}", render_digits(digits), i + 1))
            })?;
            total = total
                .checked_add(w)
                .ok_or_else(|| Error::Domain("value overflows u64".into()))?;
            q = self.dfa.step(q, d).unwrap();
        }
        Ok(total)
    }

    /// `true` when digit `d` at level `i` is always worth `d * B_{i+1}`.
    pub fn is_positional(&self) -> bool {
        self.positional_check().is_ok()
    }

    fn positional_check(&self) -> Result<()> {
        for level in 0..self.lengths.len().min(24) {
            let b = self.lengths[level][0];
            for q in 0..self.letters.len() {
                for d in 0..self.images[q].len() as u8 {
                    if self.weight(q, d, level) != Some(d as u64 * b) {
                        return Err(Error::NotPositional(format!(
                            "digit {d} from state {} at level {level}",
                            self.letters[q]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn dumont_thomas(m: &Morphism, seed: char) -> Result<NumerationSystem> {
    NumerationSystem::new(m, seed)
}

pub fn represent(ns: &NumerationSystem, n: u64) -> Result<Vec<u8>> {
    ns.represent(n)
}

pub fn value(ns: &NumerationSystem, digits: &[u8]) -> Result<u64> {
    ns.value(digits)
}

pub fn render_digits(d: &[u8]) -> String {
    if d.is_empty() {
        return "0".into();
    }
    d.iter()
        .map(|&x| char::from_digit(x as u32, 36).unwrap_or('?'))
        .collect()
}

pub fn parse_digits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| {
            c.to_digit(36)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Parse(format!("not a digit: {c:?}")))
        })
        .collect()
}

/// One property checked over `1 <= n <= horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub holds: bool,
    /// Smallest failing `n`.
    pub witness: Option<u64>,
}

impl PairCheck {
    fn new() -> Self {
        PairCheck { holds: true, witness: None }
    }

    fn fail(&mut self, n: u64) {
        if self.holds {
            self.holds = false;
            self.witness = Some(n);
        }
    }
}

/// The gap tests and the `(0w, w0)` pairing for a sequence with gaps 2
/// and 4 in a positional Dumont-Thomas system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedPairReport {
    pub horizon: u64,
    /// `a(n+1) - a(n)` is 2 or 4.
    pub gaps: PairCheck,
    /// `n+1` in the sequence implies `a(n+1) - a(n) = 4`.
    pub member_gap: PairCheck,
    /// `n+1` not in the sequence implies `a(n+1) - a(n) = 2`.
    pub nonmember_gap: PairCheck,
    /// `rep(a(n)) = rep(n) 0`.
    pub pairing: PairCheck,
}

impl ShiftedPairReport {
    pub fn passed(&self) -> bool {
        self.gaps.holds && self.member_gap.holds && self.nonmember_gap.holds && self.pairing.holds
    }

    /// Smallest witness over all four checks.
    pub fn first_failure(&self) -> Option<u64> {
        [self.gaps, self.member_gap, self.nonmember_gap, self.pairing]
            .iter()
            .filter_map(|c| c.witness)
            .min()
    }
}

/// Runs the shifted-pair checks for `1 <= n <= horizon`; needs
/// `horizon + 1` terms.
pub fn verify_shifted_pair(
    ns: &NumerationSystem,
    seq: &IntegerSequence,
    horizon: u64,
) -> Result<ShiftedPairReport> {
    ns.positional_check()?;
    let t = seq.terms();
    if (t.len() as u64) < horizon + 1 {
        return Err(Error::TooShort {
            needed: horizon as usize + 1,
            got: t.len(),
        });
    }
    let terms: Vec<u64> = t
        .iter()
        .map(|&a| u64::try_from(a).map_err(|_| Error::Domain("negative term".into())))
        .collect::<Result<_>>()?;
    let members: std::collections::HashSet<u64> = terms.iter().copied().collect();
    let mut report = ShiftedPairReport {
        horizon,
        gaps: PairCheck::new(),
        member_gap: PairCheck::new(),
        nonmember_gap: PairCheck::new(),
        pairing: PairCheck::new(),
    };
    for n in 1..=horizon {
        let (an, an1) = (terms[n as usize - 1], terms[n as usize]);
        let gap = an1 as i128 - an as i128;
        if gap != 2 && gap != 4 {
            report.gaps.fail(n);
        }
        if members.contains(&(n + 1)) {
            if gap != 4 {
                report.member_gap.fail(n);
            }
        } else if gap != 2 {
            report.nonmember_gap.fail(n);
        }
        let mut rn = ns.represent(n)?;
        rn.push(0);
        if ns.represent(an)? != rn {
            report.pairing.fail(n);
        }
    }
    Ok(report)
}

/// The Perron root `1 + sqrt(3)` of `0->01, 1->0001` and its conjugate.
pub fn lambda() -> QuadraticNumber {
    QuadraticNumber::new(1, 1, 1, 3)
}

pub fn lambda_bar() -> QuadraticNumber {
    QuadraticNumber::new(1, -1, 1, 3)
}

/// Checks `B_n = (l^n - lb^n) / (2 sqrt 3)` and `B_{n+1} - l B_n = lb^n`
/// for `n <= n_max`, with `B_0 = 0`.
pub fn binet_check(ns: &NumerationSystem, n_max: usize) -> Result<bool> {
    let bases = ns.bases();
    if bases.len() < n_max + 1 {
        return Err(Error::Domain(format!("only {} bases available", bases.len())));
    }
    let (l, lb) = (lambda(), lambda_bar());
    let two_root3 = QuadraticNumber::new(0, 2, 1, 3);
    let b = |n: usize| {
        if n == 0 {
            QuadraticNumber::zero()
        } else {
            QuadraticNumber::integer(bases[n - 1])
        }
    };
    for n in 0..=n_max {
        let binet = (l.pow(n as u32) - lb.pow(n as u32)) / &two_root3;
        if binet != b(n) {
            return Ok(false);
        }
        if b(n + 1) - &l * &b(n) != lb.pow(n as u32) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sum d_i lb^i` over a least-significant-first digit word, `i` from 1.
pub fn digit_sum(lsd: &[u8], lb: &QuadraticNumber) -> QuadraticNumber {
    let mut acc = QuadraticNumber::zero();
    let mut p = lb.clone();
    for &d in lsd {
        acc = acc + &p * d as i64;
        p = &p * lb;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremum {
    /// Least significant digit first.
    pub word: Vec<u8>,
    pub value: QuadraticNumber,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExtrema {
    pub min: Extremum,
    pub max: Extremum,
}

/// Extremes of `sum d_i lb^i` over admissible words of exactly `length`
/// digits (leading zeros allowed). Ties go to the lexicographically
/// smallest least-significant-first word.
pub fn digit_extrema(lb: &QuadraticNumber, length: usize, dfa: &Dfa) -> Result<DigitExtrema> {
    if length == 0 {
        return Err(Error::Domain("length must be positive".into()));
    }
    let powers: Vec<QuadraticNumber> = (1..=length as u32).map(|i| lb.pow(i)).collect();
    let mut best: Option<(Extremum, Extremum)> = None;
    let mut msd = Vec::with_capacity(length);
    walk(dfa, dfa.initial, &powers, &mut msd, QuadraticNumber::zero(), &mut best);
    let (min, max) = best.ok_or_else(|| Error::Domain("no admissible word".into()))?;
    Ok(DigitExtrema { min, max })
}

fn walk(
    dfa: &Dfa,
    q: usize,
    powers: &[QuadraticNumber],
    msd: &mut Vec<u8>,
    acc: QuadraticNumber,
    best: &mut Option<(Extremum, Extremum)>,
) {
    let len = powers.len();
    if msd.len() == len {
        if !dfa.accepting[q] {
            return;
        }
        let lsd: Vec<u8> = msd.iter().rev().copied().collect();
        match best {
            None => {
                let e = Extremum { word: lsd, value: acc };
                *best = Some((e.clone(), e));
            }
            Some((lo, hi)) => {
                let better = |v: &QuadraticNumber, w: &[u8], cur: &Extremum, less: bool| {
                    let ord = v.partial_cmp(&cur.value).unwrap();
                    let strict = if less { ord.is_lt() } else { ord.is_gt() };
                    strict || (ord.is_eq() && w < cur.word.as_slice())
                };
                if better(&acc, &lsd, lo, true) {
                    *lo = Extremum { word: lsd.clone(), value: acc.clone() };
                }
                if better(&acc, &lsd, hi, false) {
                    *hi = Extremum { word: lsd, value: acc };
                }
            }
        }
        return;
    }
    let level = len - msd.len();
    for (&d, &t) in &dfa.transitions[q] {
        msd.push(d);
        let next = &acc + &(&powers[level - 1] * d as i64);
        walk(dfa, t, powers, msd, next, best);
        msd.pop();
    }
}

/// Certified bounds on `a(n) - l n` for the sequence attached to a
/// positional system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KimberlingBounds {
    /// Infimum over all admissible digit words.
    pub lower: String,
    pub lower_approx: f64,
    /// Supremum over all admissible digit words.
    pub upper: String,
    pub upper_approx: f64,
    /// `true` when neither bound is attained by any `n >= 1`.
    pub strict: bool,
}

/// Exact infimum and supremum of `sum_{i>=1} d_i lb^i` over admissible
/// digit strings, from the Bellman equations of the reversed automaton.
///
/// `up[q]` / `lo[q]` are the extremes over words whose run ends in `q`.
/// Peeling off the least significant digit `e` of a word ending in `q`
/// that came from state `p` gives `value = lb * (e + value')`; since
/// `lb < 0` the maximum pairs with the predecessor's minimum.
pub fn kimberling_bound(ns: &NumerationSystem) -> Result<KimberlingBounds> {
    ns.positional_check()?;
    if !binet_check(ns, 12)? {
        return Err(Error::Domain("bases do not follow B_(n+1) = 2 B_n + 2 B_(n-1)".into()));
    }
    let lb = lambda_bar();
    let lbf = lb.to_f64();
    if !(lbf < 0.0 && lbf > -1.0) {
        return Err(Error::Domain("conjugate must lie in (-1, 0)".into()));
    }
    let dfa = ns.dfa();
    let s = dfa.states.len();
    let mut into: Vec<Vec<(usize, u8)>> = vec![Vec::new(); s];
    for (p, tr) in dfa.transitions.iter().enumerate() {
        for (&e, &q) in tr {
            into[q].push((p, e));
        }
    }
    if into.iter().any(Vec::is_empty) {
        return Err(Error::Domain("state without predecessor".into()));
    }
    // Value iteration picks the optimal transitions ...
    let (mut up, mut lo) = (vec![0f64; s], vec![0f64; s]);
    for _ in 0..400 {
        let nu: Vec<f64> = (0..s)
            .map(|q| into[q].iter().map(|&(p, e)| lbf * (e as f64 + lo[p])).fold(f64::MIN, f64::max))
            .collect();
        let nl: Vec<f64> = (0..s)
            .map(|q| into[q].iter().map(|&(p, e)| lbf * (e as f64 + up[p])).fold(f64::MAX, f64::min))
            .collect();
        up = nu;
        lo = nl;
    }
    let arg = |q: usize, vals: &[f64], maximize: bool| {
        let score = |&(p, e): &(usize, u8)| lbf * (e as f64 + vals[p]);
        let mut it = into[q].iter();
        let mut best = *it.next().unwrap();
        for c in it {
            let better = if maximize { score(c) > score(&best) } else { score(c) < score(&best) };
            if better {
                best = *c;
            }
        }
        best
    };
    let up_choice: Vec<(usize, u8)> = (0..s).map(|q| arg(q, &lo, true)).collect();
    let lo_choice: Vec<(usize, u8)> = (0..s).map(|q| arg(q, &up, false)).collect();
    // ... then the policy equations are solved exactly: unknowns are
    // up[0..s] followed by lo[0..s].
    let n = 2 * s;
    let mut a = vec![vec![QuadraticNumber::zero(); n + 1]; n];
    for q in 0..s {
        let (p, e) = up_choice[q];
        a[q][q] = QuadraticNumber::one();
        a[q][s + p] = -&lb;
        a[q][n] = &lb * e as i64;
        let (p, e) = lo_choice[q];
        a[s + q][s + q] = QuadraticNumber::one();
        a[s + q][p] = -&lb;
        a[s + q][n] = &lb * e as i64;
    }
    let sol = solve_exact(a)?;
    // Bellman optimality, checked exactly.
    for q in 0..s {
        for &(p, e) in &into[q] {
            let via_lo = &lb * &(&sol[s + p] + e as i64);
            let via_up = &lb * &(&sol[p] + e as i64);
            if via_lo > sol[q] || via_up < sol[s + q] {
                return Err(Error::Domain("policy is not optimal".into()));
            }
        }
    }
    let upper = sol[..s]
        .iter()
        .cloned()
        .reduce(|a, b| if b > a { b } else { a })
        .unwrap();
    let lower = sol[s..]
        .iter()
        .cloned()
        .reduce(|a, b| if b < a { b } else { a })
        .unwrap();
    let strict = !attained(ns, &upper)? && !attained(ns, &lower)?;
    Ok(KimberlingBounds {
        lower_approx: lower.to_f64(),
        upper_approx: upper.to_f64(),
        lower: lower.render(),
        upper: upper.render(),
        strict,
    })
}

/// Whether `a(n) - l n = bound` for some `n >= 1`. With `l = 1 + sqrt 3`
/// the coefficient of `sqrt 3` pins down the only candidate `n`.
fn attained(ns: &NumerationSystem, bound: &QuadraticNumber) -> Result<bool> {
    let (_, (qn, qd)) = bound.split();
    if bound.radicand() != 3 || !qd.is_one() || qn.sign() != num_bigint::Sign::Minus {
        return Ok(false);
    }
    let n = num_traits::ToPrimitive::to_u64(&-qn)
        .ok_or_else(|| Error::Domain("candidate index too large".into()))?;
    let mut d = ns.represent(n)?;
    d.push(0);
    let an = ns.value(&d)? as i64;
    Ok(&discrepancy(an, n as i64) == bound)
}

fn solve_exact(mut a: Vec<Vec<QuadraticNumber>>) -> Result<Vec<QuadraticNumber>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Domain("singular system".into()))?;
        a.swap(col, piv);
        let inv = a[col][col].recip().unwrap();
        for k in col..=n {
            a[col][k] = &a[col][k] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..=n {
                    let v = &a[col][k] * &f;
                    a[r][k] = &a[r][k] - &v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Bound from a finite window plus a geometric tail: the extremes of
/// `length`-digit words, widened by `coefficient * lb^(length+1) / (1 - lb^2)`
/// on the side where the first omitted power has the matching sign.
pub fn window_tail_bounds(
    ns: &NumerationSystem,
    min_len: usize,
    max_len: usize,
    coefficient: i64,
) -> Result<(QuadraticNumber, QuadraticNumber)> {
    let lb = lambda_bar();
    let one = QuadraticNumber::one();
    let denom = &one - &(&lb * &lb);
    let lo = digit_extrema(&lb, min_len, ns.dfa())?.min.value;
    let hi = digit_extrema(&lb, max_len, ns.dfa())?.max.value;
    let tail = |len: usize| lb.pow(len as u32 + 1) * coefficient / &denom;
    Ok((lo + tail(min_len), hi + tail(max_len)))
}

/// Result of checking `lower < a(n) - (1 + sqrt(3)) n < upper` exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KimberlingScan {
    pub horizon: u64,
    pub lower: i64,
    pub upper: i64,
    pub holds: bool,
    /// Smallest `n` violating the bounds.
    pub witness: Option<u64>,
    pub min: f64,
    pub argmin: u64,
    pub max: f64,
    pub argmax: u64,
}

/// `c < a - (1 + sqrt 3) n`, decided in integers.
fn above(a: i64, n: i64, c: i64) -> bool {
    // a - n - c > n sqrt(3)
    let t = a as i128 - n as i128 - c as i128;
    t >= 0 && t * t > 3 * (n as i128) * (n as i128)
}

/// `a - (1 + sqrt 3) n < c`, decided in integers.
fn below(a: i64, n: i64, c: i64) -> bool {
    // a - n - c < n sqrt(3)
    let t = a as i128 - n as i128 - c as i128;
    t < 0 || t * t < 3 * (n as i128) * (n as i128)
}

/// Exact scan of `lower < a(n) - (1 + sqrt 3) n < upper` over all terms.
pub fn kimberling_scan(
    exec: crate::exec::Execution,
    seq: &IntegerSequence,
    lower: i64,
    upper: i64,
) -> KimberlingScan {
    let t = seq.terms();
    let l = lambda().to_f64();
    let parts = crate::exec::map_chunks(exec, t.len(), 1 << 14, |r| {
        let mut witness = None;
        let (mut min, mut argmin, mut max, mut argmax) = (f64::INFINITY, 0, f64::NEG_INFINITY, 0);
        for i in r {
            let n = i as i64 + 1;
            let a = t[i];
            if witness.is_none() && !(above(a, n, lower) && below(a, n, upper)) {
                witness = Some(n as u64);
            }
            let d = a as f64 - l * n as f64;
            if d < min {
                (min, argmin) = (d, n as u64);
            }
            if d > max {
                (max, argmax) = (d, n as u64);
            }
        }
        (witness, min, argmin, max, argmax)
    });
    let mut scan = KimberlingScan {
        horizon: t.len() as u64,
        lower,
        upper,
        holds: true,
        witness: None,
        min: f64::INFINITY,
        argmin: 0,
        max: f64::NEG_INFINITY,
        argmax: 0,
    };
    for (w, mn, amn, mx, amx) in parts {
        if scan.witness.is_none() {
            scan.witness = w;
        }
        if mn < scan.min {
            (scan.min, scan.argmin) = (mn, amn);
        }
        if mx > scan.max {
            (scan.max, scan.argmax) = (mx, amx);
        }
    }
    scan.holds = scan.witness.is_none();
    scan
}

/// `a(n) - l n` as an exact quadratic number.
pub fn discrepancy(an: i64, n: i64) -> QuadraticNumber {
    QuadraticNumber::integer(an) - lambda() * n
}

/// The exact digit sum for `n`, equal to `a(n) - l n` on positional
/// systems with `B_{i+1} - l B_i = lb^i`.
pub fn discrepancy_from_digits(ns: &NumerationSystem, n: u64) -> Result<QuadraticNumber> {
    let mut d = ns.represent(n)?;
    d.reverse();
    Ok(digit_sum(&d, &lambda_bar()))
}
