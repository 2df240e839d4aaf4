//! Remainders of the continued fractions
//! `r_n = (n z + v) + n^2 / r_{n+1}` and the shift map `r_n -> r_{n+1}`.
//!
//! `r_1` is enclosed rigorously by running the recurrence backwards from a
//! tail enclosure. The forward shift `r_{n+1} = n^2 / (r_n - n z - v)`
//! amplifies errors by about `alpha^2` per step, so the working precision
//! is budgeted from the horizon up front.

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quadratic::QuadraticNumber;

const MAX_DEPTH: u64 = 1 << 22;
const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFracSpec {
    pub z: u64,
    pub v: QuadraticNumber,
}

impl CFracSpec {
    pub fn new(z: u64, v: QuadraticNumber) -> Result<Self> {
        if z == 0 {
            return Err(Error::Domain("z must be positive".into()));
        }
        Ok(CFracSpec { z, v })
    }

    /// Partial denominators `n j - 1`.
    pub fn metallic(j: u64) -> Result<Self> {
        Self::new(j, QuadraticNumber::integer(-1))
    }

    /// `z = 1`, `v = phi - 1`.
    pub fn golden() -> Self {
        CFracSpec {
            z: 1,
            v: QuadraticNumber::new(-1, 1, 2, 5),
        }
    }

    fn denom(&self, n: u64, bits: u32) -> Interval {
        let d = QuadraticNumber::integer(n * self.z) + &self.v;
        Interval::from_quadratic(&d, bits)
    }

    /// First index from which every partial denominator is positive.
    fn first_positive(&self) -> u64 {
        let mut n = 1;
        while (QuadraticNumber::integer(n * self.z) + &self.v).signum() <= 0 {
            n += 1;
        }
        n
    }

    pub fn alpha(&self) -> QuadraticNumber {
        metallic_mean(self.z)
    }
}

/// `(j + sqrt(j^2 + 4)) / 2`, the positive root of `x^2 = j x + 1`.
pub fn metallic_mean(j: u64) -> QuadraticNumber {
    QuadraticNumber::new(j as i64, 1, 2, j * j + 4)
}

/// `beta` in `r_n = alpha n + beta + O(1/n)`: `(v alpha^2 - alpha) / (alpha^2 + 1)`.
pub fn asymptotic_intercept(spec: &CFracSpec) -> QuadraticNumber {
    let a = spec.alpha();
    let a2 = &a * &a;
    (&spec.v * &a2 - &a) / (a2 + 1)
}

/// Encloses `r_n` by running the recurrence down from depth `depth`.
pub fn remainder_at(spec: &CFracSpec, n: u64, depth: u64, bits: u32) -> Result<Interval> {
    let depth = depth.max(n).max(spec.first_positive());
    let dn = spec.denom(depth, bits);
    let dn1 = spec.denom(depth + 1, bits);
    let sq = |k: u64| Interval::from_int(BigInt::from(k) * BigInt::from(k), bits);
    let tail = sq(depth).checked_div(&dn1)?;
    let mut r = Interval::hull(&dn, &(&dn + &tail));
    for k in (n..depth).rev() {
        r = &spec.denom(k, bits) + &sq(k).checked_div(&r)?;
    }
    Ok(r)
}

/// `r_1` to within `10^-digits`, confirmed by two depths that agree.
pub fn remainder_r1(spec: &CFracSpec, digits: u32) -> Result<Interval> {
    let bits = (digits as f64 * BITS_PER_DIGIT) as u32 + 64;
    let mut depth = 64u64.max(spec.first_positive());
    loop {
        let a = remainder_at(spec, 1, depth, bits)?;
        if a.width_within_digits(digits + 1) {
            let b = remainder_at(spec, 1, 2 * depth, bits)?;
            return a.intersect(&b).ok_or_else(|| {
                Error::PrecisionUnreachable("enclosures at two depths are disjoint".into())
            });
        }
        depth *= 2;
        if depth > MAX_DEPTH {
            return Err(Error::PrecisionUnreachable(format!(
                "no convergence to {digits} digits by depth {MAX_DEPTH}"
            )));
        }
    }
}

/// `r_1, ..., r_count` by the forward shift from an enclosure of `r_1`.
pub fn shift_iterate(spec: &CFracSpec, r1: &Interval, count: u64) -> Result<Vec<Interval>> {
    let bits = r1.bits();
    let mut out = Vec::with_capacity(count as usize);
    if count == 0 {
        return Ok(out);
    }
    out.push(r1.clone());
    for n in 1..count {
        let den = out.last().unwrap() - &spec.denom(n, bits);
        if den.is_negative() {
            return Err(Error::Divergence(n + 1));
        }
        if den.contains_zero() {
            return Err(Error::PrecisionExhausted(n + 1));
        }
        let sq = Interval::from_int(BigInt::from(n) * BigInt::from(n), bits);
        out.push(sq.checked_div(&den)?);
    }
    Ok(out)
}

/// Bits needed to carry `extra_digits` correct digits through `count` shifts.
pub fn precision_budget(spec: &CFracSpec, count: u64, extra_digits: u32) -> u32 {
    let growth = 2.0 * spec.alpha().to_f64().log2();
    (count as f64 * growth + extra_digits as f64 * BITS_PER_DIGIT) as u32 + 64
}

/// Certified `r_1, ..., r_count` at a precision budgeted for the horizon.
pub fn certified_remainders(spec: &CFracSpec, count: u64, extra_digits: u32) -> Result<Vec<Interval>> {
    let bits = precision_budget(spec, count, extra_digits);
    let digits = (bits as f64 / BITS_PER_DIGIT) as u32;
    let r1 = remainder_r1(spec, digits)?.with_bits(bits);
    shift_iterate(spec, &r1, count)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorMismatch {
    pub n: u64,
    pub iterate: String,
    pub expected: String,
}

/// Outcome of comparing `floor(r_n + shift)` with a reference sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationCheck {
    pub horizon: u64,
    pub agreements: u64,
    pub mismatches: Vec<FloorMismatch>,
    /// Indices where the floor could not be certified.
    pub uncertain: Vec<u64>,
    pub precision_bits: u32,
    pub retried: bool,
}

impl IterationCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.uncertain.is_empty() && self.agreements == self.horizon
    }
}

/// Compares `floor(r_n + shift)` with `expected(n)` for `n <= horizon`,
/// retrying once at higher precision if some floor is uncertain.
pub fn check_iterated_floors<F>(
    spec: &CFracSpec,
    shift: &QuadraticNumber,
    horizon: u64,
    extra_digits: u32,
    expected: F,
) -> Result<(IterationCheck, Vec<Interval>)>
where
    F: Fn(u64) -> BigInt,
{
    let mut extra = extra_digits;
    let mut retried = false;
    loop {
        let rs = certified_remainders(spec, horizon, extra)?;
        let bits = rs.first().map_or(64, Interval::bits);
        let sh = Interval::from_quadratic(shift, bits);
        let mut check = IterationCheck {
            horizon,
            agreements: 0,
            mismatches: Vec::new(),
            uncertain: Vec::new(),
            precision_bits: bits,
            retried,
        };
        for (i, r) in rs.iter().enumerate() {
            let n = i as u64 + 1;
            let want = expected(n);
            match (r + &sh).floor() {
                Some(f) if f == want => check.agreements += 1,
                Some(f) => check.mismatches.push(FloorMismatch {
                    n,
                    iterate: f.to_string(),
                    expected: want.to_string(),
                }),
                None => check.uncertain.push(n),
            }
        }
        if check.uncertain.is_empty() || retried {
            return Ok((check, rs));
        }
        retried = true;
        extra = extra * 2 + 20;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BdsReport {
    pub j: u64,
    pub horizon: u64,
    pub agreements: u64,
    pub mismatches: Vec<FloorMismatch>,
    pub uncertain: Vec<u64>,
    /// Smallest certified lower bound of `r_n - alpha n - beta`.
    pub min_positive_margin: f64,
    /// `true` when `r_n - alpha n - beta > 0` is certified for every `n`.
    pub all_positive: bool,
    /// Largest `n (r_n - alpha n - beta)`, evidence for the `O(1/n)` decay.
    pub max_scaled_margin: f64,
    pub alpha: String,
    pub beta: String,
    pub precision_bits: u32,
    pub retried: bool,
    /// Seconds.
    pub runtime: f64,
}

impl BdsReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.uncertain.is_empty()
            && self.all_positive
            && self.agreements == self.horizon
    }
}

/// `floor(r_n)` against `floor(alpha_j n - (1 + alpha_j) / (2 alpha_j - j))`.
pub fn check_bds_conjecture(j: u64, horizon: u64, precision: u32) -> Result<BdsReport> {
    let start = Instant::now();
    let spec = CFracSpec::metallic(j)?;
    let alpha = metallic_mean(j);
    let beta = -(&alpha + 1) / (&alpha * 2 - j as i64);
    let line = |n: u64| &alpha * n as i64 + &beta;
    let (check, rs) = check_iterated_floors(&spec, &QuadraticNumber::zero(), horizon, precision, |n| {
        line(n).floor()
    })?;
    let mut min_margin = f64::INFINITY;
    let mut max_scaled = 0f64;
    let mut all_positive = true;
    for (i, r) in rs.iter().enumerate() {
        let n = i as u64 + 1;
        let m = r - &Interval::from_quadratic(&line(n), r.bits());
        all_positive &= m.is_positive();
        min_margin = min_margin.min(m.lo_f64());
        max_scaled = max_scaled.max(m.hi_f64() * n as f64);
    }
    Ok(BdsReport {
        j,
        horizon,
        agreements: check.agreements,
        mismatches: check.mismatches,
        uncertain: check.uncertain,
        min_positive_margin: min_margin,
        all_positive,
        max_scaled_margin: max_scaled,
        alpha: alpha.render(),
        beta: beta.render(),
        precision_bits: check.precision_bits,
        retried: check.retried,
        runtime: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WythoffReport {
    /// `s_1` truncated to the requested number of certified digits.
    pub s1: String,
    pub horizon: u64,
    pub agreements: u64,
    pub mismatches: Vec<FloorMismatch>,
    pub uncertain: Vec<u64>,
    pub min_margin: f64,
    pub status: String,
    /// Seconds.
    pub runtime: f64,
}

/// `s_n` for `z = 1, v = phi - 1` against the lower Wythoff sequence
/// `floor(n phi)`. Agreement is evidence, not proof.
pub fn check_wythoff_s1(horizon: u64, digits: u32) -> Result<WythoffReport> {
    let start = Instant::now();
    let spec = CFracSpec::golden();
    let s1 = remainder_r1(&spec, digits + 2)?;
    let s1_text = s1
        .certified_decimal(digits)
        .ok_or_else(|| Error::PrecisionUnreachable(format!("s_1 to {digits} digits")))?;
    let phi = QuadraticNumber::new(1, 1, 2, 5);
    let (check, rs) = check_iterated_floors(&spec, &QuadraticNumber::zero(), horizon, 30, |n| {
        (&phi * n as i64).floor()
    })?;
    let mut min_margin = f64::INFINITY;
    for (i, r) in rs.iter().enumerate() {
        let n = i as i64 + 1;
        let m = r - &Interval::from_quadratic(&(&phi * n), r.bits());
        min_margin = min_margin.min(m.lo_f64());
    }
    let status = if check.passed() { "CONJECTURE" } else { "FAIL" };
    Ok(WythoffReport {
        s1: s1_text,
        horizon,
        agreements: check.agreements,
        mismatches: check.mismatches,
        uncertain: check.uncertain,
        min_margin,
        status: status.into(),
        runtime: start.elapsed().as_secs_f64(),
    })
}

/// Rounds a certified enclosure to `digits` places, if the rounding is
/// determined.
pub fn rounded_decimal(x: &Interval, digits: u32) -> Option<String> {
    let half = Interval::from_ratio(&BigInt::from(1), &(BigInt::from(2) * BigInt::from(10u32).pow(digits)), x.bits());
    (x + &half).certified_decimal(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metallic_identity() {
        for j in 1..6 {
            let a = metallic_mean(j);
            assert_eq!(&a * &a, &a * j as i64 + 1);
        }
    }

    #[test]
    fn forward_matches_backward() {
        let spec = CFracSpec::metallic(2).unwrap();
        let rs = certified_remainders(&spec, 40, 20).unwrap();
        let direct = remainder_at(&spec, 40, 400, rs[39].bits()).unwrap();
        assert!(rs[39].intersect(&direct).is_some());
    }
}
