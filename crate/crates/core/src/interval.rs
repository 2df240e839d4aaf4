//! Rigorous interval arithmetic on binary fixed-point numbers.
//!
//! An [`Interval`] at precision `bits` encloses a real number in
//! `[lo / 2^bits, hi / 2^bits]`. Every operation rounds its endpoints
//! outward, so the enclosure is preserved.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quadratic::QuadraticNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn scaled_to_f64(v: &BigInt, bits: u32) -> f64 {
    if bits > 64 {
        let shifted: BigInt = v >> (bits - 64);
        shifted.to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
    } else {
        v.to_f64().unwrap_or(f64::NAN) / 2f64.powi(bits as i32)
    }
}

impl Interval {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn from_int(v: impl Into<BigInt>, bits: u32) -> Self {
        let s = v.into() << bits;
        Interval {
            lo: s.clone(),
            hi: s,
            bits,
        }
    }

    /// Encloses `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let s = num << bits;
        let (a, b) = (s.div_floor(den), div_ceil(&s, den));
        Interval {
            lo: a.clone().min(b.clone()),
            hi: a.max(b),
            bits,
        }
    }

    pub fn from_quadratic(x: &QuadraticNumber, bits: u32) -> Self {
        let (p, q, r, d) = x.parts();
        let (qlo, qhi) = if q.is_zero() {
            (BigInt::zero(), BigInt::zero())
        } else {
            let m = (q * q * BigInt::from(d)) << (2 * bits);
            let root = m.sqrt();
            let exact = &root * &root == m;
            let up = if exact { root.clone() } else { &root + 1 };
            if q.is_positive() {
                (root, up)
            } else {
                (-up, -root)
            }
        };
        let base = p << bits;
        let lo = (&base + qlo).div_floor(r);
        let hi = div_ceil(&(&base + qhi), r);
        Interval { lo, hi, bits }
    }

    /// Smallest interval containing both operands.
    pub fn hull(a: &Interval, b: &Interval) -> Self {
        assert_eq!(a.bits, b.bits);
        Interval {
            lo: a.lo.clone().min(b.lo.clone()),
            hi: a.hi.clone().max(b.hi.clone()),
            bits: a.bits,
        }
    }

    pub fn intersect(&self, o: &Interval) -> Option<Interval> {
        assert_eq!(self.bits, o.bits);
        let lo = self.lo.clone().max(o.lo.clone());
        let hi = self.hi.clone().min(o.hi.clone());
        (lo <= hi).then_some(Interval {
            lo,
            hi,
            bits: self.bits,
        })
    }

    /// Re-express at a different precision, rounding outward.
    pub fn with_bits(&self, bits: u32) -> Self {
        if bits >= self.bits {
            let k = bits - self.bits;
            Interval {
                lo: &self.lo << k,
                hi: &self.hi << k,
                bits,
            }
        } else {
            let den = pow2(self.bits - bits);
            Interval {
                lo: self.lo.div_floor(&den),
                hi: div_ceil(&self.hi, &den),
                bits,
            }
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        Interval {
            lo: a.clone().min(b.clone()),
            hi: a.max(b),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero());
        let c = [
            self.lo.div_floor(k),
            div_ceil(&self.lo, k),
            self.hi.div_floor(k),
            div_ceil(&self.hi, k),
        ];
        Interval {
            lo: c.iter().min().unwrap().clone(),
            hi: c.iter().max().unwrap().clone(),
            bits: self.bits,
        }
    }

    pub fn checked_div(&self, o: &Interval) -> Result<Interval> {
        assert_eq!(self.bits, o.bits);
        if o.contains_zero() {
            return Err(Error::Domain("interval divisor contains zero".into()));
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            let s = a << self.bits;
            for b in [&o.lo, &o.hi] {
                let f = s.div_floor(b);
                let c = div_ceil(&s, b);
                lo = Some(match lo {
                    Some(v) => v.min(f),
                    None => f,
                });
                hi = Some(match hi {
                    Some(v) => v.max(c),
                    None => c,
                });
            }
        }
        Ok(Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
            bits: self.bits,
        })
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// The floor, when the whole interval lies inside one integer cell.
    pub fn floor(&self) -> Option<BigInt> {
        let one = pow2(self.bits);
        let k = self.lo.div_floor(&one);
        (self.hi < (&k + 1) * &one).then_some(k)
    }

    pub fn lo_f64(&self) -> f64 {
        scaled_to_f64(&self.lo, self.bits)
    }

    pub fn hi_f64(&self) -> f64 {
        scaled_to_f64(&self.hi, self.bits)
    }

    pub fn mid_f64(&self) -> f64 {
        scaled_to_f64(&(&self.lo + &self.hi), self.bits + 1)
    }

    /// Lower bound as an exact rational `(num, 2^bits)`.
    pub fn lo_raw(&self) -> (&BigInt, u32) {
        (&self.lo, self.bits)
    }

    /// `true` when the width is at most `10^-digits`.
    pub fn width_within_digits(&self, digits: u32) -> bool {
        (&self.hi - &self.lo) * BigInt::from(10u32).pow(digits) <= pow2(self.bits)
    }

    /// Base-2 exponent of the width, `None` for a point interval.
    pub fn width_log2(&self) -> Option<i64> {
        let w = &self.hi - &self.lo;
        (!w.is_zero()).then(|| w.bits() as i64 - self.bits as i64)
    }

    /// Decimal expansion truncated to `digits` places, if every point of
    /// the interval shares it.
    pub fn certified_decimal(&self, digits: u32) -> Option<String> {
        let scale = BigInt::from(10u32).pow(digits);
        let one = pow2(self.bits);
        let a = (&self.lo * &scale).div_floor(&one);
        let b = (&self.hi * &scale).div_floor(&one);
        (a == b).then(|| format_fixed(&a, digits))
    }

    /// Decimal expansion of the midpoint, truncated to `digits` places.
    pub fn approx_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let m = ((&self.lo + &self.hi) * scale).div_floor(&pow2(self.bits + 1));
        format_fixed(&m, digits)
    }

    /// Encloses pi via Machin's formula.
    pub fn pi(bits: u32) -> Self {
        let w = bits + 64;
        let (a5, e5) = atan_inv(5, w);
        let (a239, e239) = atan_inv(239, w);
        let mid = a5 * 16 - a239 * 4;
        let err = e5 * 16 + e239 * 4;
        Interval {
            lo: &mid - &err,
            hi: &mid + &err,
            bits: w,
        }
        .with_bits(bits)
    }
}

/// `atan(1/x) * 2^w` as a centre and an error radius.
fn atan_inv(x: u64, w: u32) -> (BigInt, BigInt) {
    let x2 = BigInt::from(x * x);
    let mut power = pow2(w).div_floor(&BigInt::from(x));
    let mut sum = BigInt::zero();
    let mut err = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = power.div_floor(&BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        err += 3;
        power = power.div_floor(&x2);
        k += 1;
    }
    (sum, err + 3)
}

fn format_fixed(v: &BigInt, digits: u32) -> String {
    let neg = v.is_negative();
    let s = v.abs().to_string();
    let d = digits as usize;
    let s = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        assert_eq!(self.bits, o.bits);
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            bits: self.bits,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        assert_eq!(self.bits, o.bits);
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
            bits: self.bits,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            bits: self.bits,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        assert_eq!(self.bits, o.bits);
        let one = pow2(self.bits);
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        Interval {
            lo: c.iter().min().unwrap().div_floor(&one),
            hi: div_ceil(c.iter().max().unwrap(), &one),
            bits: self.bits,
        }
    }
}
