//! Dwork's ratio F(a;λ)/F(a′;λ^p) by truncation levels, the Koblitz–Diamond
//! and Young special values, and the unit root η as a Frobenius fixed point.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::{xi_closed_form, FrobeniusLifting};
use crate::gamma::{gamma_p, gamma_ratio, GammaPair};
use crate::hypergeo::{condition_check, prime_step, solution_matrix, ConditionKind, ConditionReport, ParamTriple, SingularPoint};
use crate::padic::{max_relative_precision, pow, PadicNumber};
use crate::rational::{self, int, invmod, mulmod, Rational};
use crate::series::{SeriesMatrix2, Substitution, TruncSeries};

#[derive(Clone, Debug)]
pub struct RatioCertificate {
    /// (s, R_s): partial sum of degree < p^s over partial sum of degree < p^{s−1}.
    pub levels: Vec<(u32, PadicNumber)>,
    pub certified_value: PadicNumber,
    /// Agreement of the two deepest levels, capped at the requested precision.
    pub agreement_exponent: i64,
}

/// (valuation, unit mod p^k) of a nonzero integer.
fn split(n: i128, p: u64, modulus: u64) -> (i64, u64) {
    let mut v = 0;
    let mut n = n;
    let pi = p as i128;
    while n % pi == 0 {
        n /= pi;
        v += 1;
    }
    (v, n.rem_euclid(modulus as i128) as u64)
}

fn small(r: &Rational) -> Result<(i128, i128)> {
    match (r.numer().to_i128(), r.denom().to_i128()) {
        (Some(n), Some(d)) if n.unsigned_abs() < 1 << 60 && d < 1 << 60 => Ok((n, d)),
        _ => Err(Error::OutOfRange(format!("{r} is too large for the word-size ratio path"))),
    }
}

/// Partial sums of F(x, y, z; λ) of degree < p^k for k = 0..=levels.
fn partial_sums(params: &[Rational; 3], lambda: &Rational, p: u64, levels: u32) -> Result<Vec<PadicNumber>> {
    let rel = max_relative_precision(p);
    let modulus = pow(p, rel);
    let [(xn, xd), (yn, yd), (zn, zd)] = [small(&params[0])?, small(&params[1])?, small(&params[2])?];
    let (ln, ld) = small(lambda)?;
    let mut sums = Vec::with_capacity(levels as usize + 1);
    let mut sum = PadicNumber::one(p, rel);
    let mut term = Some((0i64, 1u64));
    let mut next_mark = 1u64;
    let last = pow(p, levels as i64);
    let mut s: u64 = 0;
    loop {
        if s + 1 == next_mark {
            sums.push(sum.clone());
            if next_mark == last {
                break;
            }
            next_mark *= p;
        }
        if let Some((v, u)) = term {
            let si = s as i128;
            let num = [xn + si * xd, yn + si * yd, ln, zd];
            if num.contains(&0) {
                term = None;
            } else {
                let den = [xd, yd, zn + si * zd, si + 1, ld];
                if den.contains(&0) {
                    return Err(Error::PochhammerZero(params[2].to_string(), s + 1));
                }
                let (mut v, mut u) = (v, u);
                for f in num {
                    let (w, r) = split(f, p, modulus);
                    v += w;
                    u = mulmod(u, r, modulus);
                }
                let mut d = 1u64;
                for f in den {
                    let (w, r) = split(f, p, modulus);
                    v -= w;
                    d = mulmod(d, r, modulus);
                }
                u = mulmod(u, invmod(d, modulus).expect("unit"), modulus);
                term = Some((v, u));
                sum = sum.checked_add(&PadicNumber::from_residue(p, v, u, v + rel))?;
            }
        }
        s += 1;
    }
    Ok(sums)
}

/// R_s for s = 1..=s_max+1 and the agreement of the two deepest levels.
pub fn dwork_ratio(a: &ParamTriple, lambda0: &Rational, p: u64, s_max: u32, n: i64) -> Result<RatioCertificate> {
    rational::check_prime(p)?;
    a.check_zp(p)?;
    if s_max == 0 {
        return Err(Error::OutOfRange("s_max must be at least 1".into()));
    }
    if rational::valuation(lambda0, p).is_some_and(|v| v < 0) {
        return Err(Error::OutOfRange(format!("|{lambda0}|_p > 1")));
    }
    let (ap, _) = a.prime_image(p)?;
    let lp = num_traits::pow::pow(lambda0.clone(), p as usize);
    let num = partial_sums(&a.0, lambda0, p, s_max + 1)?;
    let den = partial_sums(&ap.0, &lp, p, s_max)?;
    let mut levels = Vec::new();
    for s in 1..=s_max + 1 {
        let d = &den[s as usize - 1];
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        levels.push((s, num[s as usize].checked_div(d)?));
    }
    let deep = &levels[levels.len() - 1].1;
    let prev = &levels[levels.len() - 2].1;
    let agreement_exponent = deep.agreement(prev).clamp(0, n);
    Ok(RatioCertificate { certified_value: deep.with_precision(agreement_exponent), levels, agreement_exponent })
}

/// Γ_p(c)Γ_p(c−a−b)/(Γ_p(c−a)Γ_p(c−b)).
pub fn kd_rhs(a: &ParamTriple, p: u64, n: i64) -> Result<PadicNumber> {
    let [x, y, c] = &a.0;
    let g = |t: Rational| gamma_p(&t, p, n);
    g(c.clone())?.checked_mul(&g(c - x - y)?)?.checked_div(&g(c - x)?.checked_mul(&g(c - y)?)?)
}

/// (−1)^{μ_a/2}·Γ_p(a/2)Γ_p(b−a/2)/(Γ_p(a)Γ_p(b−a)).
pub fn young_rhs(a: &Rational, b: &Rational, p: u64, n: i64) -> Result<PadicNumber> {
    let (_, mu) = prime_step(a, p)?;
    if mu % 2 == 1 {
        return Err(Error::OutOfRange(format!("mu_a = {mu} is odd")));
    }
    let half = a / int(2);
    let g = |t: Rational| gamma_p(&t, p, n);
    let v = g(half.clone())?.checked_mul(&g(b - &half)?)?.checked_div(&g(a.clone())?.checked_mul(&g(b - a)?)?)?;
    Ok(if (mu / 2) % 2 == 1 { -v } else { v })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not applicable",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SpecialValueReport {
    pub conditions: Option<ConditionReport>,
    /// The introduction's weaker KD conditions, reported alongside.
    pub intro_conditions: Option<ConditionReport>,
    pub ratio: Option<RatioCertificate>,
    pub rhs: Option<PadicNumber>,
    pub agreement: i64,
    pub threshold: i64,
    pub verdict: Verdict,
    pub note: Option<String>,
}

fn finish(
    conditions: Result<ConditionReport>,
    intro_conditions: Option<ConditionReport>,
    compute: impl FnOnce() -> Result<(RatioCertificate, PadicNumber)>,
    threshold: i64,
) -> SpecialValueReport {
    let mut report = SpecialValueReport {
        conditions: None,
        intro_conditions,
        ratio: None,
        rhs: None,
        agreement: 0,
        threshold,
        verdict: Verdict::NotApplicable,
        note: None,
    };
    match conditions {
        Err(e) => {
            report.note = Some(e.to_string());
            return report;
        }
        Ok(c) => {
            let passed = c.passed;
            if let Some(i) = c.first_failure() {
                report.note = Some(format!("{} conditions fail at orbit index {i}", c.kind));
            }
            report.conditions = Some(c);
            if !passed {
                return report;
            }
        }
    }
    match compute() {
        Ok((ratio, rhs)) => {
            report.agreement = ratio.certified_value.agreement(&rhs).min(ratio.agreement_exponent).max(0);
            report.verdict = if report.agreement >= threshold { Verdict::Pass } else { Verdict::Fail };
            report.ratio = Some(ratio);
            report.rhs = Some(rhs);
        }
        Err(e) => {
            report.verdict = Verdict::Fail;
            report.note = Some(e.to_string());
        }
    }
    report
}

/// 𝓕(a;1) against Γ_p(c)Γ_p(c−a−b)/(Γ_p(c−a)Γ_p(c−b)).
pub fn kd_verify(a: &ParamTriple, p: u64, n: i64, s_max: u32, f_max: usize) -> SpecialValueReport {
    let intro = condition_check(ConditionKind::KdIntro, &a.0, p, f_max).ok();
    finish(
        condition_check(ConditionKind::Kd, &a.0, p, f_max),
        intro,
        || Ok((dwork_ratio(a, &int(1), p, s_max, n)?, kd_rhs(a, p, n)?)),
        (s_max as i64).min(n),
    )
}

/// 𝓕(a, b, 1+a−b; −1) against the Young product.
pub fn young_verify(a: &Rational, b: &Rational, p: u64, n: i64, s_max: u32, f_max: usize) -> SpecialValueReport {
    let triple = ParamTriple::new(a.clone(), b.clone(), int(1) + a - b);
    finish(
        condition_check(ConditionKind::Young, &[a.clone(), b.clone()], p, f_max),
        None,
        || Ok((dwork_ratio(&triple, &int(-1), p, s_max, n)?, young_rhs(a, b, p, n)?)),
        (s_max as i64).min(n),
    )
}

/// Reduced fractions in [0, 1) with denominator ≤ max_den prime to p.
pub fn fractions(p: u64, max_den: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=max_den)
        .filter(|d| (*d as u64) % p != 0)
        .flat_map(|d| (0..d).filter(move |n| n.gcd(&d) == 1).map(move |n| rational::rat(n, d)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Triples (a, b, c) of such fractions with a ≤ b passing the KD conditions.
pub fn kd_search(p: u64, max_den: i64, f_max: usize) -> Vec<ParamTriple> {
    let fr = fractions(p, max_den);
    let mut out = Vec::new();
    for (i, a) in fr.iter().enumerate() {
        for b in &fr[i..] {
            for c in &fr {
                let params = [a.clone(), b.clone(), c.clone()];
                if condition_check(ConditionKind::Kd, &params, p, f_max).is_ok_and(|r| r.passed) {
                    out.push(ParamTriple(params));
                }
            }
        }
    }
    out
}

/// Pairs (a, b) of such fractions passing the Young conditions.
pub fn young_search(p: u64, max_den: i64, f_max: usize) -> Vec<(Rational, Rational)> {
    let fr = fractions(p, max_den);
    let mut out = Vec::new();
    for a in &fr {
        for b in &fr {
            if condition_check(ConditionKind::Young, &[a.clone(), b.clone()], p, f_max).is_ok_and(|r| r.passed) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

pub fn kd_battery(triples: &[ParamTriple], p: u64, n: i64, s_max: u32, f_max: usize) -> Vec<SpecialValueReport> {
    triples.par_iter().map(|a| kd_verify(a, p, n, s_max, f_max)).collect()
}

pub fn young_battery(pairs: &[(Rational, Rational)], p: u64, n: i64, s_max: u32, f_max: usize) -> Vec<SpecialValueReport> {
    pairs.par_iter().map(|(a, b)| young_verify(a, b, p, n, s_max, f_max)).collect()
}

/// η = u1/u2 from the first row of U^{(z)}, z ∈ {0, 1}.
pub fn eta_singular_class(z: SingularPoint, a: &ParamTriple, m: usize) -> Result<TruncSeries<Rational>> {
    if z == SingularPoint::Infinity {
        return Err(Error::OutOfRange("eta is taken in the classes of 0 and 1".into()));
    }
    let (_, u) = solution_matrix(z, a, m)?;
    let (u1, u2) = (&u.e[0][0], &u.e[0][1]);
    if u2.coeff(0).is_zero() {
        return Err(Error::NonUnitConstant);
    }
    u1.checked_mul(&u2.inverse(m as i64)?)
}

/// First order at which η fails λ(1−λ)η′ = P21 + η(P11 − P22) − η²P12, or M
/// (the derivative costs one order).
pub fn riccati_residual_order(z: SingularPoint, a: &ParamTriple, eta: &TruncSeries<Rational>) -> Result<i64> {
    let [a1, a2, a3] = &a.0;
    let m = eta.order();
    let chart = eta.chart().clone();
    // λ as a series in the local variable
    let (c0, c1) = match z {
        SingularPoint::Zero => (0, 1),
        SingularPoint::One => (1, -1),
        SingularPoint::Infinity => return Err(Error::OutOfRange("Riccati check at infinity".into())),
    };
    let mut c = vec![int(0); (m + 1).max(2) as usize];
    c[0] = int(c0);
    c[1] = int(c1);
    c.truncate((m + 1) as usize);
    let lam = TruncSeries::new(chart.clone(), 0, c);
    let one = TruncSeries::constant(chart.clone(), int(1), m);
    let om = one.checked_sub(&lam)?;
    let p11 = om.scale(&-a3.clone());
    let p12 = lam.scale(&(a3 - a1));
    let p21 = om.scale(&(a3 - a2));
    let p22 = lam.scale(&(a1 + a2 - a3));
    let d = eta.derivative()?;
    let d = if z == SingularPoint::One { d.scale(&int(-1)) } else { d };
    let lhs = lam.checked_mul(&om)?.checked_mul(&d)?;
    let rhs = p21.checked_add(&eta.checked_mul(&p11.checked_sub(&p22)?)?)?.checked_sub(&eta.checked_mul(eta)?.checked_mul(&p12)?)?;
    let diff = lhs.checked_sub(&rhs)?;
    Ok(diff.first_nonzero().unwrap_or(diff.order() + 1))
}

#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub eta: TruncSeries<PadicNumber>,
    pub iterations: usize,
    /// Valuation of ω_{k+1} − ω_k for each step.
    pub step_valuations: Vec<i64>,
}

fn min_valuation(s: &TruncSeries<PadicNumber>) -> i64 {
    s.coeffs().iter().map(|c| c.valuation_bound()).min().unwrap_or(i64::MAX)
}

/// Iterates ω ↦ (M11·φ*ω + M21)/(M12·φ*ω + M22) from ω0 = M21/M22, where
/// M = [[pA, pB], [C, D]] and φ*ω = ω(λ^p).
pub fn unit_root_fixed_point(m: &SeriesMatrix2<PadicNumber>, p: u64, n: i64, max_iter: usize) -> Result<FixedPoint> {
    let order = m.order();
    let e = &m.e;
    let mut omega = e[1][0].checked_mul(&e[1][1].inverse(order)?)?;
    let mut steps = Vec::new();
    for k in 1..=max_iter {
        let lifted = omega.substitute(Substitution::PowerP(p))?.truncate(order)?;
        let num = e[0][0].checked_mul(&lifted)?.checked_add(&e[1][0])?;
        let den = e[0][1].checked_mul(&lifted)?.checked_add(&e[1][1])?;
        let next = num.checked_mul(&den.inverse(order)?)?.truncate(order)?;
        let v = min_valuation(&next.checked_sub(&omega)?);
        steps.push(v);
        omega = next;
        if v >= n {
            return Ok(FixedPoint { eta: omega, iterations: k, step_valuations: steps });
        }
    }
    Err(Error::NonConvergence(max_iter))
}

/// c·(−1)^sign·π^pi·∏ Γ_p(x)^k, with Γ_p arguments reduced into (0, 1/2].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMonomial {
    pub constant: Rational,
    pub pi_exponent: i64,
    pub factors: BTreeMap<Rational, i64>,
}

impl GammaMonomial {
    pub fn constant(c: Rational) -> Self {
        GammaMonomial { constant: c, pi_exponent: 0, factors: BTreeMap::new() }
    }

    pub fn gamma(x: Rational, k: i64) -> Self {
        let mut m = Self::constant(int(1));
        m.factors.insert(x, k);
        m
    }

    pub fn mul(&self, o: &GammaMonomial) -> GammaMonomial {
        let mut factors = self.factors.clone();
        for (x, k) in &o.factors {
            *factors.entry(x.clone()).or_insert(0) += k;
        }
        factors.retain(|_, k| *k != 0);
        GammaMonomial { constant: &self.constant * &o.constant, pi_exponent: self.pi_exponent + o.pi_exponent, factors }
    }

    pub fn pow(&self, k: i64) -> GammaMonomial {
        let c = if k >= 0 { num_traits::pow::pow(self.constant.clone(), k as usize) } else { num_traits::pow::pow(self.constant.recip(), (-k) as usize) };
        GammaMonomial {
            constant: c,
            pi_exponent: self.pi_exponent * k,
            factors: self.factors.iter().map(|(x, e)| (x.clone(), e * k)).collect(),
        }
    }

    /// Moves every Γ_p argument into (0, 1/2] with Γ_p(x+1) = −h(x)Γ_p(x)
    /// (h(x) = x for units, 1 otherwise) and Γ_p(x)Γ_p(1−x) = −(−1)^t.
    pub fn canonical(&self, p: u64) -> Result<GammaMonomial> {
        let mut out = GammaMonomial { constant: self.constant.clone(), pi_exponent: self.pi_exponent, factors: BTreeMap::new() };
        let h = |t: &Rational| if rational::valuation(t, p).is_some_and(|v| v > 0) || t.is_zero() { int(1) } else { t.clone() };
        for (x, &k) in &self.factors {
            let f = x - Rational::from_integer(x.floor().to_integer());
            let shift = (x - &f).to_integer().to_i64().ok_or_else(|| Error::OutOfRange(x.to_string()))?;
            // Γ_p(f + shift) = c·Γ_p(f)
            let mut c = int(1);
            if shift >= 0 {
                for i in 0..shift {
                    c *= -h(&(&f + int(i)));
                }
            } else {
                for i in shift..0 {
                    c /= -h(&(&f + int(i)));
                }
            }
            let mut term = GammaMonomial::constant(c).mul(&GammaMonomial::gamma(f.clone(), 1));
            if f.is_zero() {
                term = GammaMonomial::constant(term.constant);
            } else if f > rational::rat(1, 2) {
                let t = (p - rational::residue(&f, p)?) % p;
                let eps = if t % 2 == 0 { -1 } else { 1 };
                term = GammaMonomial::constant(&term.constant * int(eps)).mul(&GammaMonomial::gamma(int(1) - &f, -1));
            }
            out = out.mul(&term.pow(k));
        }
        let half = rational::rat(1, 2);
        if let Some(k) = out.factors.get(&half).copied() {
            // Γ_p(1/2)² = −(−1)^t
            let t = (p - rational::residue(&half, p)?) % p;
            let sq = if t % 2 == 0 { -1 } else { 1 };
            let pairs = k.div_euclid(2);
            if pairs.rem_euclid(2) == 1 {
                out.constant *= int(sq);
            }
            out.factors.insert(half.clone(), k.rem_euclid(2));
            out.factors.retain(|_, e| *e != 0);
        }
        Ok(out)
    }
}

impl fmt::Display for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        if self.pi_exponent != 0 {
            write!(f, " pi^{}", self.pi_exponent)?;
        }
        for (x, k) in &self.factors {
            write!(f, " Gamma_p({x})^{k}")?;
        }
        Ok(())
    }
}

/// γ_p(x, y) = (−1)^m·(x−m)_m·Γ_p(x−m)·π^μ with m = (μ mod p) − μ.
fn symbol_monomial(pair: &GammaPair, p: u64) -> Result<GammaMonomial> {
    let base = pair.mu.rem_euclid(p as i64);
    let m = base - pair.mu;
    let x0 = &pair.x - int(m);
    let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
    let c = gamma_ratio(&x0, m)? * int(sign);
    let mut out = GammaMonomial::constant(c).mul(&GammaMonomial::gamma(x0, 1));
    out.pi_exponent = pair.mu;
    Ok(out)
}

fn xi_monomial(z: SingularPoint, a: &ParamTriple, b: &ParamTriple, p: u64) -> Result<GammaMonomial> {
    let form = crate::frobenius::xi_form(z, 1)?;
    let mu = a.mu_to(b, p)?;
    let e: i64 = (0..3).map(|k| form.sign[k] * mu[k]).sum();
    let mut out = GammaMonomial::constant(int(if e.rem_euclid(2) == 0 { 1 } else { -1 }));
    for (f, k) in form.factors {
        let pair = GammaPair::new(f.eval(a), f.eval(b), p)?;
        out = out.mul(&symbol_monomial(&pair, p)?.pow(k as i64));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SymbolicReplay {
    /// (a3′/a3)((a1−a3)/(a1′−a3′))·ξ1^{(1)}/ξ1^{(0)}, reduced.
    pub xi_side: GammaMonomial,
    /// Γ_p(a3−a2−a1)Γ_p(a3)/(Γ_p(a3−a1)Γ_p(a3−a2)), reduced.
    pub rhs: GammaMonomial,
    pub matches: bool,
}

pub fn xi_ratio_replay(a: &ParamTriple, p: u64) -> Result<SymbolicReplay> {
    let (b, _) = a.prime_image(p)?;
    let [a1, a2, a3] = &a.0;
    let [b1, _, b3] = &b.0;
    let prefactor = (b3 / a3) * ((a1 - a3) / (b1 - b3));
    let raw = GammaMonomial::constant(prefactor)
        .mul(&xi_monomial(SingularPoint::One, a, &b, p)?)
        .mul(&xi_monomial(SingularPoint::Zero, a, &b, p)?.pow(-1));
    let xi_side = raw.canonical(p)?;
    let rhs = GammaMonomial::gamma(a3 - a2 - a1, 1)
        .mul(&GammaMonomial::gamma(a3.clone(), 1))
        .mul(&GammaMonomial::gamma(a3 - a1, -1))
        .mul(&GammaMonomial::gamma(a3 - a2, -1))
        .canonical(p)?;
    let matches = xi_side == rhs;
    Ok(SymbolicReplay { xi_side, rhs, matches })
}

#[derive(Clone, Debug)]
pub struct XiRatioReport {
    pub conditions_pass: bool,
    pub ratio: RatioCertificate,
    pub xi_expression: PadicNumber,
    pub rhs: PadicNumber,
    /// π exponent of ξ1^{(1)}/ξ1^{(0)} before it is discarded; must be 0.
    pub pi_exponent: u32,
    /// (ratio, ξ), (ratio, rhs), (ξ, rhs).
    pub agreements: [i64; 3],
    pub replay: SymbolicReplay,
}

impl XiRatioReport {
    pub fn passed(&self, threshold: i64) -> bool {
        self.conditions_pass && self.pi_exponent == 0 && self.replay.matches && self.agreements.iter().all(|&x| x >= threshold)
    }
}

pub fn xi_ratio_identity_check(a: &ParamTriple, p: u64, n: i64, s_max: u32, f_max: usize) -> Result<XiRatioReport> {
    let t2 = condition_check(ConditionKind::T2, &a.0, p, f_max)?;
    let kd = condition_check(ConditionKind::Kd, &a.0, p, f_max)?;
    let (b, _) = a.prime_image(p)?;
    let x1 = xi_closed_form(SingularPoint::One, 1, a, &b, p, n)?.value;
    let x0 = xi_closed_form(SingularPoint::Zero, 1, a, &b, p, n)?.value;
    let q = x1.checked_div(&x0)?;
    let pi_exponent = q.pi_exponent();
    let [a1, _, a3] = &a.0;
    let [b1, _, b3] = &b.0;
    let xi_expression = q.to_padic()?.mul_rational(&((b3 / a3) * ((a1 - a3) / (b1 - b3))));
    let ratio = dwork_ratio(a, &int(1), p, s_max, n)?;
    let rhs = kd_rhs(a, p, n)?;
    let agree = |x: &PadicNumber, y: &PadicNumber| x.agreement(y).clamp(0, n);
    let r = &ratio.certified_value;
    let agreements = [agree(r, &xi_expression), agree(r, &rhs), agree(&xi_expression, &rhs)];
    Ok(XiRatioReport {
        conditions_pass: t2.passed && kd.passed,
        ratio,
        xi_expression,
        rhs,
        pi_exponent,
        agreements,
        replay: xi_ratio_replay(a, p)?,
    })
}

/// η from the Frobenius matrix at the origin and from the solution matrix,
/// compared coefficientwise.
pub fn unit_root_from_frobenius(a: &ParamTriple, p: u64, m: usize, n: i64, max_iter: usize) -> Result<(FixedPoint, TruncSeries<Rational>)> {
    let (b, _) = a.prime_image(p)?;
    let f = crate::frobenius::frobenius_matrix_series(a, &b, &FrobeniusLifting::standard(p)?, m, n)?;
    let fp = unit_root_fixed_point(&f.matrix, p, f.certified_precision.min(n), max_iter)?;
    Ok((fp, eta_singular_class(SingularPoint::Zero, a, m)?))
}

/// Smallest coefficientwise agreement between a padic and a rational series.
pub fn series_agreement(x: &TruncSeries<PadicNumber>, y: &TruncSeries<Rational>, cap: i64) -> i64 {
    let p = x.coeffs().first().map(|c| c.prime()).unwrap_or(2);
    let top = x.order().min(y.order());
    (0..=top)
        .map(|k| x.coeff(k).agreement(&PadicNumber::from_rational(&y.coeff(k), p, max_relative_precision(p))))
        .min()
        .unwrap_or(cap)
        .min(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn triple(s: &str) -> ParamTriple {
        s.parse().unwrap()
    }

    #[test]
    fn ratio_at_zero_is_one() {
        let c = dwork_ratio(&triple("1/2,1/3,1/4"), &int(0), 7, 2, 6).unwrap();
        assert_eq!(c.certified_value.agreement(&PadicNumber::one(7, 6)), 6);
    }

    #[test]
    fn search_sizes() {
        for (p, kd, young) in [(5, 1, 15), (7, 7, 21)] {
            assert_eq!(kd_search(p, 12, 30).len(), kd, "p = {p}");
            assert_eq!(young_search(p, 12, 30).len(), young, "p = {p}");
        }
    }

    #[test]
    fn kd_values_at_seven() {
        let triples = kd_search(7, 12, 30);
        for r in kd_battery(&triples, 7, 6, 6, 30) {
            assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.note);
        }
    }

    #[test]
    fn young_values_at_seven() {
        let pairs = young_search(7, 12, 30);
        for (r, (a, b)) in young_battery(&pairs, 7, 6, 6, 30).iter().zip(&pairs) {
            assert_eq!(r.verdict, Verdict::Pass, "{a} {b}: {:?} agreement {}", r.note, r.agreement);
        }
    }

    #[test]
    fn verify_reports_failed_conditions() {
        let r = kd_verify(&triple("1/2,1/2,1/3"), 7, 6, 4, 30);
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(r.note.is_some());
    }

    #[test]
    fn eta_solves_riccati() {
        for z in [SingularPoint::Zero, SingularPoint::One] {
            let a = triple("1/5,2/7,3/4");
            let eta = eta_singular_class(z, &a, 20).unwrap();
            assert_eq!(riccati_residual_order(z, &a, &eta).unwrap(), 20);
            let wrong = triple("1/5,2/7,4/5");
            assert!(riccati_residual_order(z, &wrong, &eta).unwrap() < 20);
        }
    }

    #[test]
    fn replay_of_the_xi_ratio() {
        for p in [7, 11] {
            for a in kd_search(p, 12, 30).iter().take(10) {
                let r = xi_ratio_identity_check(a, p, 5, 5, 30).unwrap();
                assert!(r.passed(5), "{a} p={p}: {:?} pi {} replay {} vs {}", r.agreements, r.pi_exponent, r.replay.xi_side, r.replay.rhs);
            }
        }
    }

    #[test]
    fn canonical_monomials() {
        let m = GammaMonomial::gamma(rat(3, 2), 1).canonical(7).unwrap();
        // Γ_p(3/2) = −(1/2)Γ_p(1/2)
        assert_eq!(m, GammaMonomial::constant(rat(-1, 2)).mul(&GammaMonomial::gamma(rat(1, 2), 1)));
        let v = gamma_p(&rat(3, 2), 7, 8).unwrap();
        let w = gamma_p(&rat(1, 2), 7, 8).unwrap().mul_rational(&rat(-1, 2));
        assert!(v.agreement(&w) >= 8);
    }

    #[test]
    fn fixed_point_is_the_unit_root() {
        let a = triple("1/6,1/6,5/6");
        let (fp, eta) = unit_root_from_frobenius(&a, 7, 20, 5, 40).unwrap();
        assert!(fp.step_valuations.windows(2).all(|w| w[0] < w[1]));
        assert!(series_agreement(&fp.eta, &eta, 5) >= 5);
        let other = eta_singular_class(SingularPoint::Zero, &triple("1/6,1/3,5/6"), 20).unwrap();
        assert!(series_agreement(&fp.eta, &other, 5) < 5);
    }
}
