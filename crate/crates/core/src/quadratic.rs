//! Exact arithmetic in real quadratic fields.
//!
//! A [`QuadraticNumber`] is `(p + q*sqrt(d)) / r` with integer `p, q, r`,
//! `r > 0` and `d` squarefree. Rationals are stored with `q = 0, d = 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: u64,
}

fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut i = 2u64;
    while i.saturating_mul(i) <= d {
        while d % (i * i) == 0 {
            d /= i * i;
            k *= i;
        }
        i += 1;
    }
    (k, d)
}

impl QuadraticNumber {
    /// `(p + q*sqrt(d)) / r`. Square factors of `d` are pulled into `q`.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: u64,
    ) -> Self {
        let r = r.into();
        assert!(!r.is_zero(), "zero denominator");
        let (k, d) = squarefree_split(d);
        let mut out = QuadraticNumber {
            p: p.into(),
            q: q.into() * BigInt::from(k),
            r,
            d,
        };
        out.normalize();
        out
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Self::new(v, 0, 1, 1)
    }

    pub fn ratio(p: impl Into<BigInt>, r: impl Into<BigInt>) -> Self {
        Self::new(p, 0, r, 1)
    }

    pub fn sqrt(n: u64) -> Self {
        Self::new(0, 1, 1, n)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    fn normalize(&mut self) {
        if self.d == 0 {
            self.q = BigInt::zero();
            self.d = 1;
        }
        if self.d == 1 {
            let q = std::mem::take(&mut self.q);
            self.p += q;
        }
        if self.q.is_zero() {
            self.d = 1;
        }
        if self.r.is_negative() {
            self.p = -&self.p;
            self.q = -&self.q;
            self.r = -&self.r;
        }
        let g = self.p.gcd(&self.q).gcd(&self.r);
        if !g.is_one() && !g.is_zero() {
            self.p /= &g;
            self.q /= &g;
            self.r /= &g;
        }
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, u64) {
        (&self.p, &self.q, &self.r, self.d)
    }

    /// The squarefree radicand, `1` for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.r.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Rational part and coefficient of `sqrt(d)`, each as `(num, den)`.
    pub fn split(&self) -> ((BigInt, BigInt), (BigInt, BigInt)) {
        let reduce = |a: &BigInt| {
            let g = a.gcd(&self.r);
            if g.is_zero() {
                (BigInt::zero(), BigInt::one())
            } else {
                (a / &g, &self.r / &g)
            }
        };
        (reduce(&self.p), reduce(&self.q))
    }

    fn field_with(&self, o: &Self) -> Option<u64> {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => Some(o.d),
            (_, true) => Some(self.d),
            _ if self.d == o.d => Some(self.d),
            _ => None,
        }
    }

    pub fn conj(&self) -> Self {
        QuadraticNumber {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d,
        }
    }

    /// `self * conj(self)`, always rational.
    pub fn norm(&self) -> Self {
        let n = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
        Self::ratio(n, &self.r * &self.r)
    }

    pub fn checked_add(&self, o: &Self) -> Option<Self> {
        let d = self.field_with(o)?;
        Some(Self::new(
            &self.p * &o.r + &o.p * &self.r,
            &self.q * &o.r + &o.q * &self.r,
            &self.r * &o.r,
            d,
        ))
    }

    pub fn checked_sub(&self, o: &Self) -> Option<Self> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Option<Self> {
        let d = self.field_with(o)?;
        let dd = BigInt::from(d);
        Some(Self::new(
            &self.p * &o.p + &self.q * &o.q * dd,
            &self.p * &o.q + &self.q * &o.p,
            &self.r * &o.r,
            d,
        ))
    }

    pub fn checked_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let d = self.field_with(o)?;
        let n = o.norm();
        let num = self.checked_mul(&o.conj())?;
        Some(Self::new(num.p * &n.r, num.q * &n.r, num.r * &n.p, d))
    }

    pub fn recip(&self) -> Option<Self> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn signum(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let pp = &self.p * &self.p;
        let qq = &self.q * &self.q * BigInt::from(self.d);
        if pp > qq {
            sp
        } else {
            sq
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if let Some(v) = self.floor_small() {
            return BigInt::from(v);
        }
        let s = if self.q.is_zero() {
            BigInt::zero()
        } else {
            let m = (&self.q * &self.q * BigInt::from(self.d)).sqrt();
            if self.q.is_positive() {
                m
            } else {
                -m - 1
            }
        };
        (&self.p + s).div_floor(&self.r)
    }

    fn floor_small(&self) -> Option<i128> {
        let p = self.p.to_i64()? as i128;
        let q = self.q.to_i64()? as i128;
        let r = self.r.to_i64()? as i128;
        floor_quadratic_i128(p, q, r, self.d)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.r.to_f64().unwrap_or(f64::INFINITY);
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        (p + q * (self.d as f64).sqrt()) / r
    }

    /// Expression text such as `1 + sqrt(2)` or `-3*sqrt(5)/2`.
    pub fn render(&self) -> String {
        let terms = self.signed_terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, t)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(t);
        }
        out
    }

    /// Nonzero terms with their signs separated, used by formula rendering.
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        let ((pn, pd), (qn, qd)) = self.split();
        let mut terms = Vec::new();
        if !pn.is_zero() {
            let a = pn.abs();
            let t = if pd.is_one() {
                a.to_string()
            } else {
                format!("{a}/{pd}")
            };
            terms.push((pn.is_negative(), t));
        }
        if !qn.is_zero() {
            let a = qn.abs();
            let root = format!("sqrt({})", self.d);
            let mut t = if a.is_one() {
                root
            } else {
                format!("{a}*{root}")
            };
            if !qd.is_one() {
                t = format!("{t}/{qd}");
            }
            terms.push((qn.is_negative(), t));
        }
        terms
    }
}

fn sign_of(v: &BigInt) -> i32 {
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

/// `floor((p + q*sqrt(d)) / r)` for `r > 0`, `d` squarefree, in machine
/// integers. Returns `None` on overflow.
pub(crate) fn floor_quadratic_i128(p: i128, q: i128, r: i128, d: u64) -> Option<i128> {
    debug_assert!(r > 0);
    let s = if q == 0 {
        0
    } else {
        let qq = q.unsigned_abs().checked_mul(q.unsigned_abs())?;
        let m = isqrt_u128(qq.checked_mul(d as u128)?);
        let m = i128::try_from(m).ok()?;
        if d == 1 {
            if q > 0 {
                m
            } else {
                -m
            }
        } else if q > 0 {
            m
        } else {
            -m - 1
        }
    };
    Some(p.checked_add(s)?.div_euclid(r))
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        let diff = self.checked_sub(o)?;
        Some(diff.signum().cmp(&0))
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            p: -&self.p,
            q: -&self.q,
            r: self.r.clone(),
            d: self.d,
        }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident, $what:expr) => {
        impl $tr<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(o)
                    .unwrap_or_else(|| panic!("{}: {} and {}", $what, self, o))
            }
        }
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&o)
            }
        }
        impl $tr<&QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: &QuadraticNumber) -> QuadraticNumber {
                (&self).$m(o)
            }
        }
        impl $tr<i64> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: i64) -> QuadraticNumber {
                self.$m(&QuadraticNumber::integer(o))
            }
        }
        impl $tr<i64> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: i64) -> QuadraticNumber {
                (&self).$m(&QuadraticNumber::integer(o))
            }
        }
    };
}

binop!(Add, add, checked_add, "mixed quadratic fields");
binop!(Sub, sub, checked_sub, "mixed quadratic fields");
binop!(Mul, mul, checked_mul, "mixed quadratic fields");
binop!(Div, div, checked_div, "division by zero or mixed fields");
