//! Q_p at capped absolute precision, and the extension by π with π^{p−1} = −p.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::{self, invmod, mulmod, Rational};

/// Largest relative precision whose modulus fits comfortably in a word.
pub fn max_relative_precision(p: u64) -> i64 {
    let mut r = 0;
    let mut m: u64 = 1;
    while let Some(next) = m.checked_mul(p) {
        if next > 1 << 62 {
            break;
        }
        m = next;
        r += 1;
    }
    r
}

pub fn pow(p: u64, k: i64) -> u64 {
    p.pow(k as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Repr {
    Exact,
    Zero { prec: i64 },
    Value { val: i64, unit: u64, prec: i64 },
}

/// An element of Q_p known modulo p^prec.
///
/// The unit is stored modulo p^(prec − valuation). Exact zero is kept apart
/// from a zero that is only known to some precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNumber {
    p: u64,
    repr: Repr,
}

impl PadicNumber {
    pub fn exact_zero(p: u64) -> Self {
        PadicNumber { p, repr: Repr::Exact }
    }

    pub fn zero(p: u64, prec: i64) -> Self {
        PadicNumber { p, repr: Repr::Zero { prec } }
    }

    pub fn one(p: u64, prec: i64) -> Self {
        Self::from_i64(1, p, prec)
    }

    pub fn from_i64(n: i64, p: u64, prec: i64) -> Self {
        Self::from_rational(&rational::int(n), p, prec)
    }

    /// Embeds `r` modulo p^prec. Negative valuations widen the unit window.
    pub fn from_rational(r: &Rational, p: u64, prec: i64) -> Self {
        let Some(v) = rational::valuation(r, p) else {
            return Self::exact_zero(p);
        };
        if v >= prec {
            return Self::zero(p, prec);
        }
        let rel = (prec - v).min(max_relative_precision(p));
        let scaled = if v >= 0 {
            r / Rational::from_integer(num_bigint::BigInt::from(p).pow(v as u32))
        } else {
            r * Rational::from_integer(num_bigint::BigInt::from(p).pow((-v) as u32))
        };
        let unit = rational::residue(&scaled, pow(p, rel)).expect("unit part is p-integral");
        Self::normalized(p, v, unit, v + rel)
    }

    /// p^val·n known modulo p^prec, for any residue n modulo p^(prec−val).
    pub fn from_residue(p: u64, val: i64, n: u64, prec: i64) -> Self {
        Self::normalized(p, val, n, prec)
    }

    /// Builds a value from a residue `n` (any integer mod p^(prec−val)) times p^val.
    fn normalized(p: u64, val: i64, mut n: u64, prec: i64) -> Self {
        if val >= prec {
            return Self::zero(p, prec);
        }
        let mut val = val;
        if n == 0 {
            return Self::zero(p, prec);
        }
        while n % p == 0 {
            n /= p;
            val += 1;
        }
        if val >= prec {
            return Self::zero(p, prec);
        }
        let m = pow(p, prec - val);
        PadicNumber { p, repr: Repr::Value { val, unit: n % m, prec } }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Valuation of a nonzero value; `None` for any zero.
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Value { val, .. } => Some(val),
            _ => None,
        }
    }

    /// A certified lower bound for the valuation (`i64::MAX` for exact zero).
    pub fn valuation_bound(&self) -> i64 {
        match self.repr {
            Repr::Exact => i64::MAX,
            Repr::Zero { prec } => prec,
            Repr::Value { val, .. } => val,
        }
    }

    /// Absolute precision; `None` for exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::Exact => None,
            Repr::Zero { prec } | Repr::Value { prec, .. } => Some(prec),
        }
    }

    fn prec_or_max(&self) -> i64 {
        self.abs_precision().unwrap_or(i64::MAX)
    }

    pub fn unit(&self) -> Option<u64> {
        match self.repr {
            Repr::Value { unit, .. } => Some(unit),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.repr == Repr::Exact
    }

    /// True for exact zero and for zero at precision.
    pub fn is_zero(&self) -> bool {
        !matches!(self.repr, Repr::Value { .. })
    }

    /// Base-p digits of the unit, least significant first; length prec − valuation.
    pub fn digits(&self) -> Vec<u64> {
        match self.repr {
            Repr::Value { val, mut unit, prec } => (0..prec - val)
                .map(|_| {
                    let d = unit % self.p;
                    unit /= self.p;
                    d
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Reduction modulo p, when the value is integral.
    pub fn residue_mod_p(&self) -> Option<u64> {
        match self.repr {
            Repr::Exact => Some(0),
            Repr::Zero { prec } => (prec >= 1).then_some(0),
            Repr::Value { val, unit, .. } => match val {
                0 => Some(unit % self.p),
                v if v > 0 => Some(0),
                _ => None,
            },
        }
    }

    /// Integer representative in [0, p^prec) of an integral value.
    pub fn to_u64(&self) -> Option<u64> {
        match self.repr {
            Repr::Exact => Some(0),
            Repr::Zero { .. } => Some(0),
            Repr::Value { val, unit, .. } if val >= 0 => Some(unit * pow(self.p, val)),
            _ => None,
        }
    }

    pub fn with_precision(&self, prec: i64) -> Self {
        match self.repr {
            Repr::Exact => self.clone(),
            Repr::Zero { prec: q } => Self::zero(self.p, q.min(prec)),
            Repr::Value { val, unit, prec: q } => {
                Self::normalized(self.p, val, unit % pow(self.p, (q.min(prec) - val).max(0)), q.min(prec))
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.p;
        if self.is_exact_zero() {
            return Ok(other.clone());
        }
        if other.is_exact_zero() {
            return Ok(self.clone());
        }
        let prec = self.prec_or_max().min(other.prec_or_max());
        let v = self.valuation_bound().min(other.valuation_bound());
        if v >= prec {
            return Ok(Self::zero(p, prec));
        }
        let m = pow(p, prec - v);
        let lift = |x: &Self| -> u64 {
            match x.repr {
                Repr::Value { val, unit, .. } if val - v < prec - v => mulmod(unit % m, pow(p, val - v), m),
                _ => 0,
            }
        };
        let s = (lift(self) as u128 + lift(other) as u128) % m as u128;
        Ok(Self::normalized(p, v, s as u64, prec))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        match self.repr {
            Repr::Value { val, unit, prec } => {
                let m = pow(self.p, prec - val);
                PadicNumber { p: self.p, repr: Repr::Value { val, unit: m - unit, prec } }
            }
            _ => self.clone(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.p;
        Ok(match (self.repr, other.repr) {
            (Repr::Exact, _) | (_, Repr::Exact) => Self::exact_zero(p),
            (Repr::Zero { prec: a }, Repr::Zero { prec: b }) => Self::zero(p, a + b),
            (Repr::Zero { prec }, Repr::Value { val, .. }) | (Repr::Value { val, .. }, Repr::Zero { prec }) => {
                Self::zero(p, prec + val)
            }
            (Repr::Value { val: a, unit: u, prec: pa }, Repr::Value { val: b, unit: w, prec: pb }) => {
                let rel = (pa - a).min(pb - b);
                let m = pow(p, rel);
                let unit = mulmod(u % m, w % m, m);
                PadicNumber { p, repr: Repr::Value { val: a + b, unit, prec: a + b + rel } }
            }
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        match self.repr {
            Repr::Value { val, unit, prec } => {
                let rel = prec - val;
                let unit = invmod(unit, pow(self.p, rel)).expect("units are invertible");
                Ok(PadicNumber { p: self.p, repr: Repr::Value { val: -val, unit, prec: rel - val } })
            }
            _ => Err(Error::DivisionByZero),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Multiplication by an exact rational; relative precision is preserved.
    pub fn mul_rational(&self, r: &Rational) -> Self {
        let Some(v) = rational::valuation(r, self.p) else {
            return Self::exact_zero(self.p);
        };
        match self.repr {
            Repr::Exact => self.clone(),
            Repr::Zero { prec } => Self::zero(self.p, prec + v),
            Repr::Value { val, unit, prec } => {
                let rel = prec - val;
                let m = pow(self.p, rel);
                let shifted = if v >= 0 {
                    r / Rational::from_integer(num_bigint::BigInt::from(self.p).pow(v as u32))
                } else {
                    r * Rational::from_integer(num_bigint::BigInt::from(self.p).pow((-v) as u32))
                };
                let w = rational::residue(&shifted, m).expect("unit part is p-integral");
                PadicNumber { p: self.p, repr: Repr::Value { val: val + v, unit: mulmod(unit, w, m), prec: prec + v } }
            }
        }
    }

    /// `self^k` for k ≥ 0.
    pub fn powu(&self, k: u64) -> Self {
        let rel = match self.repr {
            Repr::Value { val, prec, .. } => prec - val,
            _ => max_relative_precision(self.p),
        };
        let mut acc = Self::one(self.p, rel);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Precision to which `self` and `other` are certified equal
    /// (`i64::MAX` if both are exactly equal).
    pub fn agreement(&self, other: &Self) -> i64 {
        self.checked_sub(other).map(|d| d.valuation_bound()).unwrap_or(i64::MIN)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::Exact => write!(f, "0"),
            Repr::Zero { prec } => write!(f, "O({}^{})", self.p, prec),
            Repr::Value { val, prec, .. } => {
                let mut first = true;
                for (i, d) in self.digits().iter().enumerate() {
                    if *d == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let e = val + i as i64;
                    match e {
                        0 => write!(f, "{d}")?,
                        1 => write!(f, "{d}*{}", self.p)?,
                        _ => write!(f, "{d}*{}^{e}", self.p)?,
                    }
                }
                write!(f, " + O({}^{})", self.p, prec)
            }
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&PadicNumber> for &PadicNumber {
            type Output = PadicNumber;
            fn $m(self, rhs: &PadicNumber) -> PadicNumber {
                self.$checked(rhs).expect(concat!("padic ", stringify!($m)))
            }
        }
        impl $tr<PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $m(self, rhs: PadicNumber) -> PadicNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $m(self, rhs: &PadicNumber) -> PadicNumber {
                (&self).$m(rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_ref()
    }
}

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_ref()
    }
}

/// `π^k · coeff` with 0 ≤ k < p − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiElement {
    coeff: PadicNumber,
    pi_exp: u32,
}

impl PiElement {
    /// Folds an arbitrary π exponent into [0, p−1) using π^{p−1} = −p.
    pub fn new(coeff: PadicNumber, exponent: i64) -> Self {
        let p = coeff.prime();
        let d = p as i64 - 1;
        let k = exponent.rem_euclid(d);
        let q = (exponent - k) / d;
        let minus_p = rational::int(-(p as i64));
        let factor = if q >= 0 {
            num_traits::pow::pow(minus_p, q as usize)
        } else {
            num_traits::pow::pow(minus_p, (-q) as usize).recip()
        };
        PiElement { coeff: coeff.mul_rational(&factor), pi_exp: k as u32 }
    }

    pub fn from_padic(x: PadicNumber) -> Self {
        PiElement { coeff: x, pi_exp: 0 }
    }

    pub fn coeff(&self) -> &PadicNumber {
        &self.coeff
    }

    pub fn pi_exponent(&self) -> u32 {
        self.pi_exp
    }

    pub fn prime(&self) -> u64 {
        self.coeff.prime()
    }

    /// The embedded p-adic number, when no π remains.
    pub fn to_padic(&self) -> Result<PadicNumber> {
        if self.pi_exp == 0 {
            Ok(self.coeff.clone())
        } else {
            Err(Error::PiExponent(self.pi_exp))
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let c = self.coeff.checked_mul(&other.coeff)?;
        Ok(Self::new(c, self.pi_exp as i64 + other.pi_exp as i64))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let c = self.coeff.checked_div(&other.coeff)?;
        Ok(Self::new(c, self.pi_exp as i64 - other.pi_exp as i64))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        PiElement { coeff: self.coeff.mul_rational(r), pi_exp: self.pi_exp }
    }

    pub fn neg(&self) -> Self {
        PiElement { coeff: -&self.coeff, pi_exp: self.pi_exp }
    }

    /// p-adic valuation, counting v(π) = 1/(p−1); returned as (numerator over p−1).
    pub fn valuation_times(&self) -> Option<i64> {
        self.coeff.valuation().map(|v| v * (self.prime() as i64 - 1) + self.pi_exp as i64)
    }

    /// Precision (in powers of p) to which the two elements are certified equal.
    pub fn agreement(&self, other: &Self) -> i64 {
        if self.pi_exp == other.pi_exp {
            self.coeff.agreement(&other.coeff)
        } else {
            self.coeff.valuation_bound().min(other.coeff.valuation_bound())
        }
    }
}

impl fmt::Display for PiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_exp {
            0 => write!(f, "{}", self.coeff),
            k => write!(f, "pi^{} * ({})", k, self.coeff),
        }
    }
}

impl Mul<&PiElement> for &PiElement {
    type Output = PiElement;
    fn mul(self, rhs: &PiElement) -> PiElement {
        self.checked_mul(rhs).expect("pi mul")
    }
}

impl Div<&PiElement> for &PiElement {
    type Output = PiElement;
    fn div(self, rhs: &PiElement) -> PiElement {
        self.checked_div(rhs).expect("pi div")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn embedding_examples() {
        assert!(PadicNumber::from_rational(&rat(0, 1), 7, 4).is_exact_zero());
        let h = PadicNumber::from_rational(&rat(1, 2), 7, 3);
        assert_eq!(h.valuation(), Some(0));
        assert_eq!(h.unit(), Some(172));
        let s = PadicNumber::from_rational(&rat(7, 2), 7, 3);
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.unit(), Some(25));
        assert_eq!(s.digits().len(), 2);
    }

    #[test]
    fn carries_and_cancellation() {
        let x = PadicNumber::from_i64(3, 7, 3) + PadicNumber::from_i64(4, 7, 3);
        assert_eq!((x.valuation(), x.unit()), (Some(1), Some(1)));
        let y = PadicNumber::from_rational(&rat(5, 3), 7, 5);
        let z = &y + &(-&y);
        assert!(z.is_zero() && !z.is_exact_zero());
        assert_eq!(z.abs_precision(), Some(5));
    }

    #[test]
    fn products() {
        let p = PadicNumber::from_i64(7, 7, 6);
        assert_eq!((&p * &p).valuation(), Some(2));
        let q = PadicNumber::from_rational(&rat(1, 2), 7, 4) * PadicNumber::from_i64(2, 7, 4);
        assert_eq!(q, PadicNumber::one(7, 4));
        assert!(PadicNumber::from_i64(2, 5, 3).checked_mul(&PadicNumber::from_i64(2, 7, 3)).is_err());
    }

    #[test]
    fn pi_folding() {
        let one = PadicNumber::one(5, 6);
        let a = PiElement::new(one.clone(), 2);
        let sq = &a * &a;
        assert_eq!(sq.pi_exponent(), 0);
        assert_eq!(sq.coeff(), &PadicNumber::from_i64(-5, 5, 7));
        let one7 = PadicNumber::one(7, 6);
        let r = &PiElement::new(one7.clone(), 3) * &PiElement::new(one7, 5);
        assert_eq!(r.pi_exponent(), 2);
        assert_eq!(r.coeff().valuation(), Some(1));
        assert_eq!(r.coeff().agreement(&PadicNumber::from_i64(-7, 7, 7)), 7);
    }

    #[test]
    fn negative_pi_exponent_divides_by_minus_p() {
        let x = PiElement::new(PadicNumber::one(7, 6), -1);
        assert_eq!(x.pi_exponent(), 5);
        assert_eq!(x.coeff().valuation(), Some(-1));
    }
}
