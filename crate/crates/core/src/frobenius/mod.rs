//! Frobenius eigenvalues ξ^{(z)}_j as products of γ_p symbols, Kummer
//! transformations, translation factors, and the Frobenius matrix at the
//! origin for the lifting λ ↦ λ^p.

pub mod alpha;
pub mod kummer;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gamma::{gamma_symbol, GammaPair};
use crate::hypergeo::{solution_matrix, ParamTriple, SingularPoint};
use crate::padic::{max_relative_precision, PadicNumber, PiElement};
use crate::ratfunc::{Poly, RatFunc, RatMatrix2};
use crate::rational::{self, int, Rational};
use crate::series::{Chart, SeriesMatrix2, Substitution, TruncSeries};

use alpha::{aff, alpha_shift, contiguity_b_transpose, Affine};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftingKind {
    /// λ ↦ λ^p, adapted at 0 and ∞.
    Standard,
    /// λ ↦ 1 − (1−λ)^p, adapted at 1 and ∞.
    OneAdapted,
    /// λ ↦ λ^p/((1−λ)^p + λ^p), adapted at 0 and 1.
    ZeroOneAdapted,
}

#[derive(Clone, Debug)]
pub struct FrobeniusLifting {
    pub kind: LiftingKind,
    pub prime: u64,
    pub map: RatFunc,
}

fn power(base: &Poly, k: u64) -> Poly {
    (0..k).fold(Poly::constant(int(1)), |acc, _| acc.mul(base))
}

impl FrobeniusLifting {
    pub fn new(kind: LiftingKind, p: u64) -> Result<Self> {
        rational::check_prime(p)?;
        let lp = power(&Poly::lambda(), p);
        let one = Poly::constant(int(1));
        let map = match kind {
            LiftingKind::Standard => RatFunc::new(lp, one),
            LiftingKind::OneAdapted => {
                RatFunc::new(one.add(&power(&Poly::linear(int(1), int(-1)), p).scale(&int(-1))), Poly::constant(int(1)))
            }
            LiftingKind::ZeroOneAdapted => {
                let den = power(&Poly::linear(int(1), int(-1)), p).add(&lp);
                RatFunc::new(lp, den)
            }
        };
        Ok(FrobeniusLifting { kind, prime: p, map })
    }

    pub fn standard(p: u64) -> Result<Self> {
        Self::new(LiftingKind::Standard, p)
    }

    /// φ ≡ λ^p modulo p coefficientwise.
    pub fn close_to_frobenius(&self) -> bool {
        let p = self.prime;
        let lp = power(&Poly::lambda(), p);
        let diff = self.map.num.add(&lp.mul(&self.map.den).scale(&int(-1)));
        let divisible = |c: &Rational| c.is_zero() || rational::valuation(c, p).is_some_and(|v| v >= 1);
        let unit = self.map.den.0.iter().any(|c| rational::valuation(c, p) == Some(0));
        diff.0.iter().all(divisible) && unit
    }

    /// Whether φ fixes z with multiplicity p.
    pub fn adapted_at(&self, z: SingularPoint) -> Result<bool> {
        let order = self.prime as i64;
        let f = match z {
            SingularPoint::Zero => self.map.clone(),
            SingularPoint::One => RatFunc::constant(int(1)).add(&self.map.neg()),
            SingularPoint::Infinity => {
                if self.map.num.is_zero() {
                    return Ok(false);
                }
                RatFunc::new(self.map.den.clone(), self.map.num.clone())
            }
        };
        Ok(f.expand(&z.chart(), order)?.first_nonzero() == Some(order))
    }
}

/// γ_p(x, y)^power with x = form(a), y = form(b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub x: Rational,
    pub y: Rational,
    pub power: i32,
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma_p({}, {})^{}", self.x, self.y, self.power)
    }
}

#[derive(Clone, Debug)]
pub struct EigenvalueValue {
    pub point: SingularPoint,
    pub index: usize,
    pub value: PiElement,
    /// The value is (−1)^sign_exponent · ∏ factors.
    pub sign_exponent: i64,
    pub factors: Vec<GammaFactor>,
}

/// Sign (a linear form in μ) and γ_p factors of ξ^{(z)}_j.
pub struct XiForm {
    pub sign: [i64; 3],
    pub factors: [(Affine, i32); 3],
}

pub fn xi_form(z: SingularPoint, j: usize) -> Result<XiForm> {
    let f = |sign, factors| Ok(XiForm { sign, factors });
    match (z, j) {
        (SingularPoint::Zero, 1) => f([0, 0, 0], [(aff([0, 1, 0], 0), 1), (aff([0, -1, 1], 0), 1), (aff([0, 0, 1], 1), -1)]),
        (SingularPoint::Zero, 2) => f([0, 1, -1], [(aff([0, 0, 1], -1), 1), (aff([-1, 0, 0], 1), 1), (aff([-1, 0, 1], 1), -1)]),
        (SingularPoint::One, 1) => f([0, 1, 0], [(aff([0, 1, 0], 0), 1), (aff([1, 0, -1], 0), 1), (aff([1, 1, -1], 1), -1)]),
        (SingularPoint::One, 2) => f([0, 0, 0], [(aff([1, 1, -1], -1), 1), (aff([0, -1, 1], 0), 1), (aff([1, 0, 0], 0), -1)]),
        (SingularPoint::Infinity, 1) => f([1, 1, 1], [(aff([0, -1, 1], 0), 1), (aff([1, 0, -1], 0), 1), (aff([1, -1, 0], 1), -1)]),
        (SingularPoint::Infinity, 2) => f([0, 1, 0], [(aff([1, -1, 0], -1), 1), (aff([0, 1, 0], 0), 1), (aff([1, 0, 0], 0), -1)]),
        _ => Err(Error::OutOfRange(format!("eigenvalue index {j}"))),
    }
}

fn sign_power(x: &PiElement, e: i64) -> PiElement {
    if e.rem_euclid(2) == 1 {
        x.neg()
    } else {
        x.clone()
    }
}

/// ξ^{(z)}_j(a, b) from its γ_p-product display.
pub fn xi_closed_form(z: SingularPoint, j: usize, a: &ParamTriple, b: &ParamTriple, p: u64, n: i64) -> Result<EigenvalueValue> {
    let form = xi_form(z, j)?;
    let mu = a.mu_to(b, p)?;
    let mut value = PiElement::from_padic(PadicNumber::one(p, n));
    let mut factors = Vec::new();
    for (f, pw) in form.factors {
        let pair = GammaPair::new(f.eval(a), f.eval(b), p)?;
        let g = gamma_symbol(&pair, p, n)?;
        value = if pw > 0 { value.checked_mul(&g)? } else { value.checked_div(&g)? };
        factors.push(GammaFactor { x: pair.x, y: pair.y, power: pw });
    }
    let sign_exponent = (0..3).map(|k| form.sign[k] * mu[k]).sum();
    Ok(EigenvalueValue { point: z, index: j, value: sign_power(&value, sign_exponent), sign_exponent, factors })
}

/// ξ^{(1)} = (−1)^{μ2}·ξ^{(0)}(M5 a, M5 b), ξ^{(∞)} = (−1)^{μ1+μ2−μ3}·ξ^{(0)}(M9 a, M9 b).
pub fn xi_via_pullback(z: SingularPoint, j: usize, a: &ParamTriple, b: &ParamTriple, p: u64, n: i64) -> Result<EigenvalueValue> {
    let (m, sign) = match z {
        SingularPoint::One => (kummer::kummer_record(5)?.map, [0, 1, 0]),
        SingularPoint::Infinity => (kummer::kummer_record(9)?.map, [1, 1, -1]),
        SingularPoint::Zero => return Err(Error::OutOfRange("pullback is defined for z = 1 and z = inf".into())),
    };
    let mu = a.mu_to(b, p)?;
    let base = xi_closed_form(SingularPoint::Zero, j, &a.apply(&m), &b.apply(&m), p, n)?;
    let e: i64 = (0..3).map(|k| sign[k] * mu[k]).sum();
    Ok(EigenvalueValue {
        point: z,
        index: j,
        value: sign_power(&base.value, e),
        sign_exponent: base.sign_exponent + e,
        factors: base.factors,
    })
}

/// Digits of agreement beyond the smaller valuation, at most `cap`.
pub fn relative_agreement(x: &PiElement, y: &PiElement, cap: i64) -> i64 {
    if x.pi_exponent() != y.pi_exponent() {
        return 0;
    }
    let base = match (x.coeff().valuation(), y.coeff().valuation()) {
        (Some(u), Some(v)) => u.min(v),
        (Some(u), None) | (None, Some(u)) => u,
        (None, None) => return cap,
    };
    (x.agreement(y) - base).clamp(0, cap)
}

/// Compares ξ(a+u, b+v)·α(a, u) with ξ(a, b)·α(b, v); returns the agreement.
#[allow(clippy::too_many_arguments)]
pub fn xi_modular_check(
    z: SingularPoint,
    i: usize,
    a: &ParamTriple,
    b: &ParamTriple,
    u: [i64; 3],
    v: [i64; 3],
    p: u64,
    n: i64,
) -> Result<i64> {
    let lhs = xi_closed_form(z, i, &a.shifted(u), &b.shifted(v), p, n)?.value.mul_rational(&alpha_shift(z, i, a, u)?);
    let rhs = xi_closed_form(z, i, a, b, p, n)?.value.mul_rational(&alpha_shift(z, i, b, v)?);
    Ok(relative_agreement(&lhs, &rhs, n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingCase {
    /// μ3 < min(μ1, μ2)
    Case1,
    /// μ3 > max(μ1, μ2)
    Case2,
    Neither,
}

impl fmt::Display for SplittingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplittingCase::Case1 => "case1",
            SplittingCase::Case2 => "case2",
            SplittingCase::Neither => "none",
        })
    }
}

pub fn splitting_case(mu: [i64; 3], p: u64) -> Result<SplittingCase> {
    if mu.iter().any(|&m| m < 0 || m >= p as i64) {
        return Err(Error::OutOfRange(format!("mu = {mu:?} outside 0..{p}")));
    }
    Ok(if mu[2] < mu[0].min(mu[1]) {
        SplittingCase::Case1
    } else if mu[2] > mu[0].max(mu[1]) {
        SplittingCase::Case2
    } else {
        SplittingCase::Neither
    })
}

/// F_μ(λ) mod p: the hypergeometric series at the fixed points a = μ/(p−1),
/// truncated at degree p−1 (or earlier where a denominator vanishes mod p).
/// Case 1 uses the parameters (a2−a3, a1−a3, 1−a3) of the second row.
pub fn supersingular_poly(mu: [i64; 3], p: u64) -> Result<Vec<u64>> {
    let case = splitting_case(mu, p)?;
    let pi = p as i64;
    let r = |x: i64| x.rem_euclid(pi) as u64;
    let [x, y, c] = match case {
        SplittingCase::Case1 => [r(mu[2] - mu[1]), r(mu[2] - mu[0]), r(1 + mu[2])],
        _ => [r(-mu[0]), r(-mu[1]), r(-mu[2])],
    };
    let mut out = vec![1u64];
    let mut t = 1u64;
    for s in 0..p - 1 {
        let num = (x + s) % p * ((y + s) % p) % p;
        let den = (c + s) % p * ((s + 1) % p) % p;
        if num == 0 || den == 0 {
            break;
        }
        t = rational::mulmod(rational::mulmod(t, num, p), rational::invmod(den, p).expect("unit"), p);
        out.push(t);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FrobeniusMatrix {
    pub a: ParamTriple,
    pub b: ParamTriple,
    pub prime: u64,
    pub mu: [i64; 3],
    pub xi: [EigenvalueValue; 2],
    /// γ^t = U_b(λ^p)^{−1}·diag(ξ1, ξ2·λ^{μ3})·U_a(λ).
    pub matrix: SeriesMatrix2<PadicNumber>,
    /// Extra digits carried in ξ to absorb the denominators of U.
    pub guard: i64,
    pub min_valuation: [[i64; 2]; 2],
    pub certified_precision: i64,
}

fn min_rational_valuation(s: &SeriesMatrix2<Rational>, p: u64) -> Option<i64> {
    s.e.iter().flatten().flat_map(|t| t.coeffs().iter()).filter_map(|c| rational::valuation(c, p)).min()
}

fn series_valuation(s: &TruncSeries<PadicNumber>) -> i64 {
    s.coeffs().iter().filter(|c| !c.is_exact_zero()).map(|c| c.valuation_bound()).min().unwrap_or(i64::MAX)
}

fn series_precision(s: &TruncSeries<PadicNumber>) -> i64 {
    s.coeffs().iter().filter_map(|c| c.abs_precision()).min().unwrap_or(i64::MAX)
}

/// γ^{(φ)}(a, b; λ)^t for φ(λ) = λ^p, to order M with every coefficient
/// certified to at least p^N.
pub fn frobenius_matrix_series(a: &ParamTriple, b: &ParamTriple, lifting: &FrobeniusLifting, m: usize, n: i64) -> Result<FrobeniusMatrix> {
    if lifting.kind != LiftingKind::Standard {
        return Err(Error::OutOfRange("only the standard lifting is reconstructed at the origin".into()));
    }
    let p = lifting.prime;
    let mi = m as i64;
    let mu = a.mu_to(b, p)?;
    let z = SingularPoint::Zero;
    let (_, ua) = solution_matrix(z, a, m)?;
    let (_, ub) = solution_matrix(z, b, m / p as usize + 1)?;
    let inv = ub.substitute(Substitution::PowerP(p))?.truncate(mi)?.inverse(mi)?;
    let zero = TruncSeries::zeros(Chart::Zero, 0, mi, int(0));
    let top = SeriesMatrix2::new([[ua.e[0][0].clone(), ua.e[0][1].clone()], [zero.clone(), zero.clone()]]);
    let bottom = SeriesMatrix2::new([[zero.clone(), zero], [ua.e[1][0].shift(mu[2]), ua.e[1][1].shift(mu[2])]]);
    let r = [inv.checked_mul(&top)?, inv.checked_mul(&bottom)?];

    let xi0 = [xi_closed_form(z, 1, a, b, p, n)?, xi_closed_form(z, 2, a, b, p, n)?];
    let mut need = n;
    for j in 0..2 {
        let v = xi0[j].value.to_padic()?.valuation().unwrap_or(0);
        if let Some(w) = min_rational_valuation(&r[j], p) {
            need = need.max(n - v - w);
        }
    }
    if need > max_relative_precision(p) {
        return Err(Error::PrecisionExhausted(format!("{need} digits needed for p = {p}")));
    }
    let xi = if need == n { xi0 } else { [xi_closed_form(z, 1, a, b, p, need)?, xi_closed_form(z, 2, a, b, p, need)?] };
    let c = [xi[0].value.to_padic()?, xi[1].value.to_padic()?];
    let embed = |s: &TruncSeries<Rational>, x: &PadicNumber| {
        s.map(|q| if q.is_zero() { PadicNumber::exact_zero(p) } else { x.mul_rational(q) })
    };
    let entry = |i: usize, j: usize| embed(&r[0].e[i][j], &c[0]).checked_add(&embed(&r[1].e[i][j], &c[1]));
    let matrix = SeriesMatrix2::new([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]]);
    let min_valuation = [0, 1].map(|i| [0, 1].map(|j| series_valuation(&matrix.e[i][j])));
    let certified_precision = matrix.e.iter().flatten().map(series_precision).min().unwrap_or(i64::MAX);
    Ok(FrobeniusMatrix { a: a.clone(), b: b.clone(), prime: p, mu, xi, matrix, guard: need - n, min_valuation, certified_precision })
}

impl FrobeniusMatrix {
    /// Smallest valuation over the coefficients of row i.
    pub fn row_valuation(&self, i: usize) -> i64 {
        self.min_valuation[i][0].min(self.min_valuation[i][1])
    }

    /// Row shape expected from the splitting case: the row that must be
    /// divisible by p has valuation ≥ 1 and the other row contains a unit.
    pub fn has_splitting_shape(&self, case: SplittingCase) -> bool {
        match case {
            SplittingCase::Case2 => self.row_valuation(0) >= 1 && self.row_valuation(1) == 0,
            SplittingCase::Case1 => self.row_valuation(1) >= 1 && self.row_valuation(0) == 0,
            SplittingCase::Neither => false,
        }
    }
}

fn embed_rational(s: &SeriesMatrix2<Rational>, p: u64) -> SeriesMatrix2<PadicNumber> {
    let prec = max_relative_precision(p);
    s.map(|t| t.map(|q| if q.is_zero() { PadicNumber::exact_zero(p) } else { PadicNumber::from_rational(q, p, prec) }))
}

fn unit_shift_b(a: &ParamTriple, u: [i64; 3]) -> Result<Option<RatMatrix2>> {
    match u {
        [0, 0, 0] => Ok(None),
        [1, 0, 0] => Ok(Some(contiguity_b_transpose(a)?)),
        _ => Err(Error::OutOfRange(format!("contiguity shift {u:?}; expected 0 or e1"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    /// First order with a coefficient of M_{a,b}·B_a^t(λ) − B_b^t(λ^p)·M_{a+u,b+v}
    /// known to be nonzero, or M+1.
    pub residual_order: i64,
    /// The residual vanishes modulo p^certified_precision through that order.
    pub certified_precision: i64,
}

/// B(a,a+u;λ)·γ(a,b;λ) = γ(a+u,b+v;λ)·B(b,b+v;λ^p), checked in transposed form.
pub fn contiguity_frobenius_compat_check(
    a: &ParamTriple,
    b: &ParamTriple,
    u: [i64; 3],
    v: [i64; 3],
    p: u64,
    m: usize,
    n: i64,
) -> Result<CompatReport> {
    let lifting = FrobeniusLifting::standard(p)?;
    let mi = m as i64;
    let left = frobenius_matrix_series(a, b, &lifting, m, n)?.matrix;
    let right = frobenius_matrix_series(&a.shifted(u), &b.shifted(v), &lifting, m, n)?.matrix;
    let lhs = match unit_shift_b(a, u)? {
        Some(bt) => left.checked_mul(&embed_rational(&bt.expand(&Chart::Zero, mi)?, p))?,
        None => left,
    };
    let rhs = match unit_shift_b(b, v)? {
        Some(bt) => {
            let bp = bt.expand(&Chart::Zero, mi / p as i64 + 1)?.substitute(Substitution::PowerP(p))?.truncate(mi)?;
            embed_rational(&bp, p).checked_mul(&right)?
        }
        None => right,
    };
    let diff = lhs.checked_sub(&rhs)?.truncate(mi)?;
    let residual_order = diff
        .e
        .iter()
        .flatten()
        .filter_map(|s| s.coeffs().iter().position(|c| !c.is_zero()).map(|k| s.lower_index() + k as i64))
        .min()
        .unwrap_or(mi + 1);
    let certified_precision = diff.e.iter().flatten().map(series_precision).min().unwrap_or(i64::MAX);
    Ok(CompatReport { residual_order, certified_precision })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn t(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> ParamTriple {
        ParamTriple::new(rat(a, b), rat(c, d), rat(e, f))
    }

    #[test]
    fn liftings() {
        for p in [5, 7] {
            let s = FrobeniusLifting::new(LiftingKind::Standard, p).unwrap();
            let o = FrobeniusLifting::new(LiftingKind::OneAdapted, p).unwrap();
            let z = FrobeniusLifting::new(LiftingKind::ZeroOneAdapted, p).unwrap();
            for l in [&s, &o, &z] {
                assert!(l.close_to_frobenius(), "{:?}", l.kind);
            }
            let adapted = |l: &FrobeniusLifting| SingularPoint::ALL.map(|q| l.adapted_at(q).unwrap());
            assert_eq!(adapted(&s), [true, false, true]);
            assert_eq!(adapted(&o), [false, true, true]);
            assert_eq!(adapted(&z), [true, true, false]);
        }
        let mut bad = FrobeniusLifting::standard(7).unwrap();
        bad.map = RatFunc::new(bad.map.num.add(&Poly::lambda()), bad.map.den.clone());
        assert!(!bad.close_to_frobenius());
    }

    #[test]
    fn xi_factors_and_pi_exponent() {
        let a = t(1, 6, 1, 6, 5, 6);
        let (b, _) = a.prime_image(7).unwrap();
        let x = xi_closed_form(SingularPoint::Zero, 1, &a, &b, 7, 6).unwrap();
        assert_eq!(x.value.pi_exponent(), 0);
        assert_eq!(x.value.coeff().valuation(), Some(0));
        let args: Vec<_> = x.factors.iter().map(|f| (f.x.clone(), f.power)).collect();
        assert_eq!(args, vec![(rat(1, 6), 1), (rat(2, 3), 1), (rat(11, 6), -1)]);
        let mut prod = PiElement::from_padic(PadicNumber::one(7, 6));
        for f in &x.factors {
            let g = gamma_symbol(&GammaPair::new(f.x.clone(), f.y.clone(), 7).unwrap(), 7, 6).unwrap();
            prod = if f.power > 0 { prod.checked_mul(&g).unwrap() } else { prod.checked_div(&g).unwrap() };
        }
        assert_eq!(relative_agreement(&sign_power(&prod, x.sign_exponent), &x.value, 6), 6);
    }

    #[test]
    fn pullback_matches_closed_form() {
        let p = 7;
        for a in [t(1, 6, 1, 4, 5, 6), t(2, 5, 1, 3, 3, 4), t(1, 9, 4, 5, 2, 3)] {
            let b = a.prime_image(p).unwrap().0.shifted([0, 1, -1]);
            for z in [SingularPoint::One, SingularPoint::Infinity] {
                for j in 1..=2 {
                    let c = xi_closed_form(z, j, &a, &b, p, 6).unwrap();
                    let q = xi_via_pullback(z, j, &a, &b, p, 6).unwrap();
                    assert_eq!(relative_agreement(&c.value, &q.value, 6), 6, "z={z} j={j} a={a}");
                }
            }
        }
    }

    #[test]
    fn modular_relations() {
        let p = 7;
        let a = t(2, 5, 1, 3, 3, 4);
        let b = a.prime_image(p).unwrap().0;
        assert_eq!(xi_modular_check(SingularPoint::Zero, 1, &a, &b, [0; 3], [0; 3], p, 6).unwrap(), 6);
        for z in SingularPoint::ALL {
            for i in 1..=2 {
                for k in 0..3 {
                    let mut e = [0; 3];
                    e[k] = 1;
                    assert_eq!(xi_modular_check(z, i, &a, &b, e, e, p, 6).unwrap(), 6, "z={z} i={i} e{}", k + 1);
                    assert_eq!(xi_modular_check(z, i, &a, &b, e, [0; 3], p, 6).unwrap(), 6, "z={z} i={i} e{} / 0", k + 1);
                }
            }
        }
    }

    #[test]
    fn modular_check_catches_wrong_alpha() {
        let p = 7;
        let a = t(2, 5, 1, 3, 3, 4);
        let b = a.prime_image(p).unwrap().0;
        let u = [0, 1, 0];
        let lhs = xi_closed_form(SingularPoint::Zero, 1, &a.shifted(u), &b, p, 6).unwrap().value;
        let rhs = xi_closed_form(SingularPoint::Zero, 1, &a, &b, p, 6).unwrap().value;
        let right = alpha_shift(SingularPoint::Zero, 1, &a, u).unwrap();
        assert_eq!(relative_agreement(&lhs.mul_rational(&right), &rhs, 6), 6);
        assert!(relative_agreement(&lhs.mul_rational(&(right + int(1))), &rhs, 6) < 6);
    }

    #[test]
    fn splitting_classification() {
        assert_eq!(splitting_case([1, 1, 5], 7).unwrap(), SplittingCase::Case2);
        assert_eq!(splitting_case([3, 4, 1], 7).unwrap(), SplittingCase::Case1);
        assert_eq!(splitting_case([2, 5, 3], 7).unwrap(), SplittingCase::Neither);
        assert!(splitting_case([7, 0, 0], 7).is_err());
        assert_eq!(supersingular_poly([0, 0, 0], 7).unwrap(), vec![1]);
        assert_eq!(supersingular_poly([1, 1, 5], 7).unwrap(), vec![1, 4]);
        for mu in [[3, 4, 1], [2, 5, 6], [6, 6, 0]] {
            assert!(supersingular_poly(mu, 7).unwrap().len() <= 7);
        }
    }

    fn reduce(s: &TruncSeries<PadicNumber>, upto: usize) -> Vec<u64> {
        (0..=upto as i64).map(|k| s.coeff(k).residue_mod_p().unwrap_or(0)).collect()
    }

    fn poly_eval(c: &[u64], x: u64, p: u64) -> u64 {
        c.iter().rev().fold(0, |acc, &k| (acc * x + k) % p)
    }

    #[test]
    fn case2_shape_and_hasse_invariant() {
        let p = 7;
        let a = t(1, 6, 1, 6, 5, 6);
        let (b, mu) = a.prime_image(p).unwrap();
        let f = frobenius_matrix_series(&a, &b, &FrobeniusLifting::standard(p).unwrap(), 49, 6).unwrap();
        assert_eq!(f.mu, mu.map(|x| x as i64));
        assert!(f.certified_precision >= 6);
        assert!(f.has_splitting_shape(SplittingCase::Case2), "{:?}", f.min_valuation);
        let fm = supersingular_poly(f.mu, p).unwrap();
        let d = reduce(&f.matrix.e[1][1], 49);
        let unit = d[0];
        assert_ne!(unit, 0);
        for (k, &dk) in d.iter().enumerate() {
            assert_eq!(dk, unit * fm.get(k).copied().unwrap_or(0) % p, "coefficient {k}");
        }
        for x in 0..p {
            assert_eq!(poly_eval(&d, x, p) == 0, poly_eval(&fm, x, p) == 0);
        }
    }

    #[test]
    fn case1_shape() {
        let p = 7;
        let a = t(1, 2, 2, 3, 1, 6);
        let (b, mu) = a.prime_image(p).unwrap();
        assert_eq!(mu, [3, 4, 1]);
        let f = frobenius_matrix_series(&a, &b, &FrobeniusLifting::standard(p).unwrap(), 49, 6).unwrap();
        assert!(f.has_splitting_shape(SplittingCase::Case1), "{:?}", f.min_valuation);
        let fm = supersingular_poly(f.mu, p).unwrap();
        let top = reduce(&f.matrix.e[0][0], 49);
        let k0 = f.mu[2] as usize;
        let unit = top[k0];
        assert_ne!(unit, 0);
        for (k, &c) in top.iter().enumerate() {
            let expect = if k < k0 { 0 } else { unit * fm.get(k - k0).copied().unwrap_or(0) % p };
            assert_eq!(c, expect, "coefficient {k}");
        }
    }

    #[test]
    fn compatibility_with_contiguity() {
        let a = t(1, 6, 1, 6, 5, 6);
        let b = a.prime_image(7).unwrap().0;
        for v in [[0, 0, 0], [1, 0, 0]] {
            let r = contiguity_frobenius_compat_check(&a, &b, [1, 0, 0], v, 7, 15, 6).unwrap();
            assert_eq!(r.residual_order, 16, "v = {v:?}");
            assert!(r.certified_precision >= 3);
        }
        let r = contiguity_frobenius_compat_check(&a, &b, [0; 3], [0; 3], 7, 15, 6).unwrap();
        assert_eq!(r.residual_order, 16);
    }

    #[test]
    fn compatibility_needs_the_b_matrix() {
        let a = t(1, 6, 1, 6, 5, 6);
        let b = a.prime_image(7).unwrap().0;
        let r = contiguity_frobenius_compat_check(&a, &b, [0, 0, 0], [1, 0, 0], 7, 15, 6).unwrap();
        assert_eq!(r.residual_order, 16);
        let l = FrobeniusLifting::standard(7).unwrap();
        let m0 = frobenius_matrix_series(&a, &b, &l, 15, 6).unwrap().matrix;
        let m1 = frobenius_matrix_series(&a.shifted([1, 0, 0]), &b, &l, 15, 6).unwrap().matrix;
        let d = m0.checked_sub(&m1).unwrap();
        assert!(d.e.iter().flatten().any(|s| s.coeffs().iter().any(|c| !c.is_zero())));
    }
}
