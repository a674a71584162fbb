//! Rational functions of λ over Q and their expansions in each chart.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::{Chart, SeriesMatrix2, TruncSeries};

/// Dense polynomial in λ, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Poly(vec![c]).trimmed()
    }

    pub fn lambda() -> Self {
        Poly(vec![int(0), int(1)])
    }

    /// a + b·λ
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly(vec![a, b]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect()).trimmed()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly(vec![]);
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// p(a + b·λ)
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Poly {
        let lin = Poly::linear(a.clone(), b.clone());
        self.0.iter().rev().fold(Poly(vec![]), |acc, c| acc.mul(&lin).add(&Poly::constant(c.clone())))
    }

    /// λ^deg·p(1/λ) for the given degree bound.
    fn reversed(&self, deg: usize) -> Poly {
        Poly((0..=deg).map(|i| self.coeff(deg - i)).collect()).trimmed()
    }

    fn lowest(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*l")?,
                _ => write!(f, "({c})*l^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// num(λ)/den(λ).
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::new(Poly::constant(c), Poly::constant(Rational::one()))
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    pub fn neg(&self) -> RatFunc {
        self.scale(&int(-1))
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Equality as rational functions.
    pub fn same_as(&self, o: &RatFunc) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    /// Laurent expansion in the local variable of `chart`, to the given order.
    pub fn expand(&self, chart: &Chart, order: i64) -> Result<TruncSeries<Rational>> {
        let (num, den, shift) = match chart {
            Chart::Zero => (self.num.clone(), self.den.clone(), 0),
            Chart::One => {
                let (a, b) = (int(1), int(-1));
                (self.num.compose_linear(&a, &b), self.den.compose_linear(&a, &b), 0)
            }
            Chart::Ordinary(z) => (self.num.compose_linear(z, &int(1)), self.den.compose_linear(z, &int(1)), 0),
            Chart::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                (self.num.reversed(dn), self.den.reversed(dd), dd as i64 - dn as i64)
            }
        };
        let s = laurent(&num, &den, shift, order)?;
        Ok(s.relabel(chart.clone()))
    }
}

/// λ^shift·num/den expanded at λ = 0 up to λ^order.
fn laurent(num: &Poly, den: &Poly, shift: i64, order: i64) -> Result<TruncSeries<Rational>> {
    let k0 = den.lowest().ok_or(Error::DivisionByZero)? as i64;
    let Some(j0) = num.lowest() else {
        return Ok(TruncSeries::zeros(Chart::Zero, 0, order.max(0), Rational::zero()));
    };
    let lower = j0 as i64 - k0 + shift;
    if order < lower {
        return Ok(TruncSeries::zeros(Chart::Zero, order, order, Rational::zero()));
    }
    let m = (order - lower) as usize;
    let d: Vec<Rational> = (0..=m).map(|i| den.coeff(i + k0 as usize)).collect();
    let n: Vec<Rational> = (0..=m).map(|i| num.coeff(i + j0)).collect();
    let d0 = d[0].recip();
    let mut out: Vec<Rational> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut s = n[i].clone();
        for k in 1..=i {
            s -= &d[k] * &out[i - k];
        }
        out.push(s * &d0);
    }
    Ok(TruncSeries::new(Chart::Zero, lower, out))
}

/// Solves a square linear system over Q by Gaussian elimination.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Padé approximant num/den with deg num ≤ dn, deg den ≤ dd and den(0) = 1,
/// accepted only if it reproduces the whole series.
pub fn pade(s: &TruncSeries<Rational>, dn: usize, dd: usize) -> Option<RatFunc> {
    if s.lower_index() != 0 || (s.order() as usize) < dn + dd {
        return None;
    }
    let c = |i: i64| if i < 0 { Rational::zero() } else { s.coeff(i) };
    let rows: Vec<Vec<Rational>> =
        (0..dd).map(|r| (1..=dd).map(|j| c((dn + 1 + r) as i64 - j as i64)).collect()).collect();
    let rhs: Vec<Rational> = (0..dd).map(|r| -c((dn + 1 + r) as i64)).collect();
    let q = if dd == 0 { vec![] } else { solve(rows, rhs)? };
    let mut den = vec![Rational::one()];
    den.extend(q);
    let num: Vec<Rational> =
        (0..=dn).map(|i| (0..=i.min(dd)).fold(Rational::zero(), |acc, j| acc + &den[j] * c((i - j) as i64))).collect();
    let f = RatFunc::new(Poly(num).trimmed(), Poly(den).trimmed());
    let back = f.expand(&Chart::Zero, s.order()).ok()?;
    (0..=s.order()).all(|i| back.coeff(i) == s.coeff(i)).then_some(f)
}

/// The lowest-degree Padé reconstruction within the bounds.
pub fn reconstruct(s: &TruncSeries<Rational>, max_deg: usize) -> Option<RatFunc> {
    for total in 0..=2 * max_deg {
        for dd in 0..=total.min(max_deg) {
            let dn = total - dd;
            if dn > max_deg {
                continue;
            }
            if let Some(f) = pade(s, dn, dd) {
                return Some(f);
            }
        }
    }
    None
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::constant(Rational::one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// 2×2 matrix of rational functions.
#[derive(Clone, Debug)]
pub struct RatMatrix2 {
    pub e: [[RatFunc; 2]; 2],
}

impl RatMatrix2 {
    pub fn transpose(&self) -> Self {
        let e = &self.e;
        RatMatrix2 { e: [[e[0][0].clone(), e[1][0].clone()], [e[0][1].clone(), e[1][1].clone()]] }
    }

    pub fn mul(&self, o: &RatMatrix2) -> Self {
        let f = |i: usize, j: usize| self.e[i][0].mul(&o.e[0][j]).add(&self.e[i][1].mul(&o.e[1][j]));
        RatMatrix2 { e: [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]] }
    }

    pub fn eval(&self, x: &Rational) -> Option<[[Rational; 2]; 2]> {
        let f = |i: usize, j: usize| self.e[i][j].eval(x);
        Some([[f(0, 0)?, f(0, 1)?], [f(1, 0)?, f(1, 1)?]])
    }

    pub fn same_as(&self, o: &RatMatrix2) -> bool {
        (0..2).all(|i| (0..2).all(|j| self.e[i][j].same_as(&o.e[i][j])))
    }

    pub fn expand(&self, chart: &Chart, order: i64) -> Result<SeriesMatrix2<Rational>> {
        let f = |i: usize, j: usize| self.e[i][j].expand(chart, order);
        Ok(SeriesMatrix2::new([[f(0, 0)?, f(0, 1)?], [f(1, 0)?, f(1, 1)?]]))
    }
}

impl fmt::Display for RatMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1])
    }
}
