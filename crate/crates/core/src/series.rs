//! Truncated power and Laurent series, and 2×2 matrices of them.
//!
//! Every series carries its local variable: λ at 0, t = 1−λ at 1, t = 1/λ at
//! ∞, or w = λ − z0 at an ordinary point. Arithmetic between different
//! variables is refused.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::PadicNumber;
use crate::rational::{self, Rational};

/// Coefficient rings the series are built over.
pub trait Coeff: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// For p-adic coefficients: indistinguishable from zero.
    fn is_zero_coeff(&self) -> bool;
    /// Zero with no precision attached; safe to skip in products.
    fn is_exact_zero_coeff(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn times_int(&self, k: i64) -> Self;
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_exact_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn times_int(&self, k: i64) -> Self {
        self * rational::int(k)
    }
}

impl Coeff for PadicNumber {
    fn zero_like(&self) -> Self {
        PadicNumber::exact_zero(self.prime())
    }
    fn one_like(&self) -> Self {
        PadicNumber::one(self.prime(), crate::padic::max_relative_precision(self.prime()))
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_exact_zero_coeff(&self) -> bool {
        self.is_exact_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        PadicNumber::inverse(self).ok()
    }
    fn times_int(&self, k: i64) -> Self {
        self.mul_rational(&rational::int(k))
    }
}

/// Local variable of a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chart {
    /// λ
    Zero,
    /// t = 1 − λ
    One,
    /// t = 1/λ
    Infinity,
    /// w = λ − z0
    Ordinary(Rational),
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::Zero => write!(f, "lambda"),
            Chart::One => write!(f, "1-lambda"),
            Chart::Infinity => write!(f, "1/lambda"),
            Chart::Ordinary(z) => write!(f, "lambda-({z})"),
        }
    }
}

/// Changes of variable used by the transformation formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// λ ↦ λ^p
    PowerP(u64),
    /// λ ↦ 1 − λ
    OneMinus,
    /// λ ↦ 1/λ
    Reciprocal,
    /// λ ↦ 1/(1 − λ)
    Theta11,
    /// λ ↦ 1 − 1/λ
    Theta7,
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Substitution::PowerP(p) => write!(f, "lambda^{p}"),
            Substitution::OneMinus => write!(f, "1-lambda"),
            Substitution::Reciprocal => write!(f, "1/lambda"),
            Substitution::Theta11 => write!(f, "1/(1-lambda)"),
            Substitution::Theta7 => write!(f, "1-1/lambda"),
        }
    }
}

/// Σ_{k=lower}^{order} c_k t^k + O(t^{order+1}).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    chart: Chart,
    lower: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn new(chart: Chart, lower: i64, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        TruncSeries { chart, lower, coeffs }
    }

    /// Zero known to the given order.
    pub fn zeros(chart: Chart, lower: i64, order: i64, zero: C) -> Self {
        let n = (order - lower + 1).max(1) as usize;
        Self::new(chart, lower, vec![zero; n])
    }

    /// The constant `c`, known to the given order.
    pub fn constant(chart: Chart, c: C, order: i64) -> Self {
        let mut s = Self::zeros(chart, 0, order.max(0), c.zero_like());
        s.coeffs[0] = c;
        s
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn lower_index(&self) -> i64 {
        self.lower
    }

    pub fn order(&self) -> i64 {
        self.lower + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    fn zero_c(&self) -> C {
        self.coeffs[0].zero_like()
    }

    /// Coefficient of t^i; zero below the lower index.
    pub fn coeff(&self, i: i64) -> C {
        assert!(i <= self.order(), "coefficient {i} beyond order {}", self.order());
        if i < self.lower {
            self.zero_c()
        } else {
            self.coeffs[(i - self.lower) as usize].clone()
        }
    }

    pub fn relabel(&self, chart: Chart) -> Self {
        TruncSeries { chart, ..self.clone() }
    }

    fn same_chart(&self, other: &Self) -> Result<()> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch(self.chart.to_string(), other.chart.to_string()))
        }
    }

    pub fn truncate(&self, order: i64) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder { have: self.order(), need: order });
        }
        if order < self.lower {
            return Err(Error::OrderUnderflow { order, lower: self.lower });
        }
        let mut s = self.clone();
        s.coeffs.truncate((order - self.lower + 1) as usize);
        Ok(s)
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries { lower: self.lower + k, ..self.clone() }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries { chart: self.chart.clone(), lower: self.lower, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        let lower = self.lower.min(other.lower);
        let order = self.order().min(other.order());
        let coeffs = (lower..=order).map(|i| self.coeff(i).plus(&other.coeff(i))).collect();
        Ok(Self::new(self.chart.clone(), lower, coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        let lower = self.lower + other.lower;
        let order = (self.order() + other.lower).min(other.order() + self.lower);
        let mut coeffs = vec![self.zero_c(); (order - lower + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero_coeff() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero_coeff() {
                    continue;
                }
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                coeffs[k] = coeffs[k].plus(&a.times(b));
            }
        }
        Ok(Self::new(self.chart.clone(), lower, coeffs))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.times(c))
    }

    /// d/dt in the series' own variable.
    pub fn derivative(&self) -> Result<Self> {
        let order = self.order() - 1;
        let mut lower = self.lower - 1;
        let mut coeffs: Vec<C> =
            self.coeffs.iter().enumerate().map(|(i, c)| c.times_int(self.lower + i as i64)).collect();
        if self.lower == 0 {
            coeffs.remove(0);
            lower = 0;
        }
        if order < lower {
            return Err(Error::OrderUnderflow { order, lower });
        }
        Ok(Self::new(self.chart.clone(), lower, coeffs))
    }

    /// t·d/dt, which keeps both the lower index and the order.
    pub fn euler(&self) -> Self {
        TruncSeries {
            chart: self.chart.clone(),
            lower: self.lower,
            coeffs: self.coeffs.iter().enumerate().map(|(i, c)| c.times_int(self.lower + i as i64)).collect(),
        }
    }

    /// Multiplicative inverse of a unit series, to order m.
    pub fn inverse(&self, m: i64) -> Result<Self> {
        if self.lower != 0 {
            return Err(Error::NonUnitConstant);
        }
        if m > self.order() {
            return Err(Error::InsufficientOrder { have: self.order(), need: m });
        }
        let b0 = self.coeffs[0].inverse().ok_or(Error::NonUnitConstant)?;
        let mut out = vec![b0.clone()];
        for n in 1..=m as usize {
            let mut s = self.zero_c();
            for k in 1..=n {
                s = s.plus(&self.coeffs[k].times(&out[n - k]));
            }
            out.push(s.times(&b0).negated());
        }
        Ok(Self::new(self.chart.clone(), 0, out))
    }

    /// Applies a change of variable. Chart-relabelling substitutions keep the
    /// coefficients and change the tag.
    pub fn substitute(&self, kind: Substitution) -> Result<Self> {
        let undeclared = || Error::UndeclaredConvention(kind.to_string(), self.chart.to_string());
        let chart = match (kind, &self.chart) {
            (Substitution::PowerP(p), Chart::Zero | Chart::One | Chart::Infinity) => {
                let p = p as i64;
                let order = p * (self.order() + 1) - 1;
                let mut coeffs = vec![self.zero_c(); (order - p * self.lower + 1) as usize];
                for (i, c) in self.coeffs.iter().enumerate() {
                    coeffs[i * p as usize] = c.clone();
                }
                return Ok(Self::new(self.chart.clone(), p * self.lower, coeffs));
            }
            (Substitution::OneMinus, Chart::Zero) => Chart::One,
            (Substitution::OneMinus, Chart::One) => Chart::Zero,
            (Substitution::Reciprocal, Chart::Zero) => Chart::Infinity,
            (Substitution::Reciprocal, Chart::Infinity) => Chart::Zero,
            (Substitution::Theta11, Chart::Infinity) => Chart::One,
            (Substitution::Theta7, Chart::One) => Chart::Infinity,
            _ => return Err(undeclared()),
        };
        Ok(self.relabel(chart))
    }

    /// Index of the first coefficient not known to vanish.
    pub fn first_nonzero(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero_coeff()).map(|i| self.lower + i as i64)
    }

    /// Horner evaluation of the truncation at a point of the local variable.
    pub fn evaluate_polynomial(&self, t: &C) -> Result<C> {
        if self.lower < 0 {
            return Err(Error::NonUnitConstant);
        }
        let mut acc = self.zero_c();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(t).plus(c);
        }
        for _ in 0..self.lower {
            acc = acc.times(t);
        }
        Ok(acc)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.chart {
            Chart::Zero => "l",
            _ => "t",
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_coeff() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match self.lower + i as i64 {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{var}")?,
                k => write!(f, "({c})*{var}^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({var}^{})", self.order() + 1)
    }
}

macro_rules! series_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<C: Coeff> $tr<&TruncSeries<C>> for &TruncSeries<C> {
            type Output = TruncSeries<C>;
            fn $m(self, rhs: &TruncSeries<C>) -> TruncSeries<C> {
                self.$checked(rhs).expect(concat!("series ", stringify!($m)))
            }
        }
        impl<C: Coeff> $tr<TruncSeries<C>> for TruncSeries<C> {
            type Output = TruncSeries<C>;
            fn $m(self, rhs: TruncSeries<C>) -> TruncSeries<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

series_op!(Add, add, checked_add);
series_op!(Sub, sub, checked_sub);
series_op!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn neg(self) -> TruncSeries<C> {
        self.neg_ref()
    }
}

/// A 2×2 matrix of series in a common variable.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMatrix2<C> {
    pub e: [[TruncSeries<C>; 2]; 2],
}

impl<C: Coeff> SeriesMatrix2<C> {
    pub fn new(e: [[TruncSeries<C>; 2]; 2]) -> Self {
        SeriesMatrix2 { e }
    }

    pub fn identity(chart: Chart, one: C, order: i64) -> Self {
        let z = TruncSeries::zeros(chart.clone(), 0, order, one.zero_like());
        let o = TruncSeries::constant(chart, one, order);
        SeriesMatrix2::new([[o.clone(), z.clone()], [z, o]])
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries<C> {
        &self.e[i][j]
    }

    pub fn order(&self) -> i64 {
        self.e.iter().flatten().map(|s| s.order()).min().unwrap()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&TruncSeries<C>) -> TruncSeries<D>) -> SeriesMatrix2<D> {
        SeriesMatrix2 { e: [[f(&self.e[0][0]), f(&self.e[0][1])], [f(&self.e[1][0]), f(&self.e[1][1])]] }
    }

    pub fn try_map(&self, f: impl Fn(&TruncSeries<C>) -> Result<TruncSeries<C>>) -> Result<Self> {
        Ok(SeriesMatrix2 { e: [[f(&self.e[0][0])?, f(&self.e[0][1])?], [f(&self.e[1][0])?, f(&self.e[1][1])?]] })
    }

    pub fn transpose(&self) -> Self {
        SeriesMatrix2 { e: [[self.e[0][0].clone(), self.e[1][0].clone()], [self.e[0][1].clone(), self.e[1][1].clone()]] }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let f = |i: usize, j: usize| self.e[i][j].checked_add(&other.e[i][j]);
        Ok(SeriesMatrix2 { e: [[f(0, 0)?, f(0, 1)?], [f(1, 0)?, f(1, 1)?]] })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let f = |i: usize, j: usize| self.e[i][j].checked_sub(&other.e[i][j]);
        Ok(SeriesMatrix2 { e: [[f(0, 0)?, f(0, 1)?], [f(1, 0)?, f(1, 1)?]] })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let f = |i: usize, j: usize| -> Result<TruncSeries<C>> {
            self.e[i][0].checked_mul(&other.e[0][j])?.checked_add(&self.e[i][1].checked_mul(&other.e[1][j])?)
        };
        Ok(SeriesMatrix2 { e: [[f(0, 0)?, f(0, 1)?], [f(1, 0)?, f(1, 1)?]] })
    }

    pub fn det(&self) -> Result<TruncSeries<C>> {
        self.e[0][0].checked_mul(&self.e[1][1])?.checked_sub(&self.e[0][1].checked_mul(&self.e[1][0])?)
    }

    /// Inverse to order m; the determinant must be a unit series.
    pub fn inverse(&self, m: i64) -> Result<Self> {
        let d = self.det()?.inverse(m)?;
        let e = &self.e;
        Ok(SeriesMatrix2 {
            e: [
                [e[1][1].checked_mul(&d)?, (-&e[0][1]).checked_mul(&d)?],
                [(-&e[1][0]).checked_mul(&d)?, e[0][0].checked_mul(&d)?],
            ],
        })
    }

    /// Left multiplication by diag(d0, d1).
    pub fn scale_rows(&self, d: [&C; 2]) -> Self {
        SeriesMatrix2 {
            e: [
                [self.e[0][0].scale(d[0]), self.e[0][1].scale(d[0])],
                [self.e[1][0].scale(d[1]), self.e[1][1].scale(d[1])],
            ],
        }
    }

    /// Left multiplication by diag(t^k0, t^k1).
    pub fn shift_rows(&self, k: [i64; 2]) -> Self {
        SeriesMatrix2 {
            e: [
                [self.e[0][0].shift(k[0]), self.e[0][1].shift(k[0])],
                [self.e[1][0].shift(k[1]), self.e[1][1].shift(k[1])],
            ],
        }
    }

    /// Right multiplication by a constant integer matrix.
    pub fn mul_int_matrix(&self, n: [[i64; 2]; 2]) -> Result<Self> {
        let f = |i: usize, j: usize| -> Result<TruncSeries<C>> {
            let a = self.e[i][0].map(|c| c.times_int(n[0][j]));
            let b = self.e[i][1].map(|c| c.times_int(n[1][j]));
            a.checked_add(&b)
        };
        Ok(SeriesMatrix2 { e: [[f(0, 0)?, f(0, 1)?], [f(1, 0)?, f(1, 1)?]] })
    }

    pub fn substitute(&self, kind: Substitution) -> Result<Self> {
        self.try_map(|s| s.substitute(kind))
    }

    pub fn truncate(&self, order: i64) -> Result<Self> {
        self.try_map(|s| s.truncate(order))
    }

    /// Smallest index at which some entry has a coefficient not known to vanish.
    pub fn first_nonzero(&self) -> Option<i64> {
        self.e.iter().flatten().filter_map(|s| s.first_nonzero()).min()
    }
}

/// Lowest order at which two rational series matrices differ, or `order + 1`.
pub fn first_difference(a: &SeriesMatrix2<Rational>, b: &SeriesMatrix2<Rational>) -> Result<i64> {
    let d = a.checked_sub(b)?;
    Ok(d.first_nonzero().unwrap_or(d.order() + 1))
}
