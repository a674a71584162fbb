//! Gauss hypergeometric series, the prime map on parameters, the
//! hypergeometric system dY/dλ = Y·G and its local solution matrices.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratfunc::{Poly, RatFunc, RatMatrix2};
use crate::rational::{self, int, Rational};
use crate::series::{Chart, SeriesMatrix2, TruncSeries};

/// Parameters (a1, a2, a3), i.e. (a, b, c) of F(a, b, c; λ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamTriple(pub [Rational; 3]);

impl ParamTriple {
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Self {
        ParamTriple([a1, a2, a3])
    }

    pub fn a1(&self) -> &Rational {
        &self.0[0]
    }
    pub fn a2(&self) -> &Rational {
        &self.0[1]
    }
    pub fn a3(&self) -> &Rational {
        &self.0[2]
    }

    /// a + u for an integer vector u.
    pub fn shifted(&self, u: [i64; 3]) -> Self {
        ParamTriple([&self.0[0] + int(u[0]), &self.0[1] + int(u[1]), &self.0[2] + int(u[2])])
    }

    /// The image under an integer linear map (rows act on (a1, a2, a3)).
    pub fn apply(&self, m: &[[i64; 3]; 3]) -> Self {
        let row = |r: &[i64; 3]| (0..3).fold(Rational::zero(), |acc, k| acc + &self.0[k] * int(r[k]));
        ParamTriple([row(&m[0]), row(&m[1]), row(&m[2])])
    }

    /// ℓ1 = a3−a1, ℓ2 = a3−a2, ℓ3 = a2, ℓ4 = a1.
    pub fn linear_forms(&self) -> [Rational; 4] {
        [self.a3() - self.a1(), self.a3() - self.a2(), self.a2().clone(), self.a1().clone()]
    }

    pub fn check_zp(&self, p: u64) -> Result<()> {
        for a in &self.0 {
            if !rational::in_zp(a, p) {
                return Err(Error::NotInZp(a.to_string()));
            }
        }
        Ok(())
    }

    /// μ = p·b − a, when integral.
    pub fn mu_to(&self, b: &ParamTriple, p: u64) -> Result<[i64; 3]> {
        let mut mu = [0i64; 3];
        for k in 0..3 {
            let m = &b.0[k] * int(p as i64) - &self.0[k];
            mu[k] = rational::to_i64(&m).ok_or_else(|| Error::OutOfRange(format!("p*b{} - a{} = {m}", k + 1, k + 1)))?;
        }
        Ok(mu)
    }

    /// a′ with p·a′ − a = μ_a ∈ {0,…,p−1}, componentwise.
    pub fn prime_image(&self, p: u64) -> Result<(ParamTriple, [u64; 3])> {
        let mut out = self.0.clone();
        let mut mu = [0u64; 3];
        for k in 0..3 {
            let (a, m) = prime_step(&self.0[k], p)?;
            out[k] = a;
            mu[k] = m;
        }
        Ok((ParamTriple(out), mu))
    }
}

impl fmt::Display for ParamTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for ParamTriple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = rational::parse_list(s)?;
        let [a, b, c]: [Rational; 3] = v.try_into().map_err(|_| Error::Parse(format!("expected three rationals in {s:?}")))?;
        Ok(ParamTriple([a, b, c]))
    }
}

/// The unique a′ ∈ Z_p and μ ∈ {0,…,p−1} with p·a′ − a = μ.
pub fn prime_step(a: &Rational, p: u64) -> Result<(Rational, u64)> {
    rational::check_prime(p)?;
    if !rational::in_zp(a, p) {
        return Err(Error::NotInZp(a.to_string()));
    }
    let r = rational::residue(a, p)?;
    let mu = (p - r) % p;
    Ok(((a + int(mu as i64)) / int(p as i64), mu))
}

/// The prime-map orbit of a parameter vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub prime: u64,
    /// Distinct states a^(0), a^(1), … until the first repetition.
    pub sequence: Vec<Vec<Rational>>,
    /// μ^(i) = p·a^(i+1) − a^(i).
    pub mu_sequence: Vec<Vec<u64>>,
    /// Minimal f with a^(f) = a^(0), if the orbit is purely periodic.
    pub period: Option<usize>,
    /// Number of states before the cycle (0 when purely periodic).
    pub preperiod: usize,
}

/// Iterates the prime map componentwise until a state repeats.
pub fn orbit(components: &[Rational], p: u64, f_max: usize) -> Result<OrbitRecord> {
    let mut sequence = vec![components.to_vec()];
    let mut mu_sequence = Vec::new();
    loop {
        let cur = sequence.last().unwrap();
        let mut next = Vec::with_capacity(cur.len());
        let mut mu = Vec::with_capacity(cur.len());
        for a in cur {
            let (b, m) = prime_step(a, p)?;
            next.push(b);
            mu.push(m);
        }
        mu_sequence.push(mu);
        if let Some(j) = sequence.iter().position(|s| *s == next) {
            let (period, preperiod) = if j == 0 { (Some(sequence.len()), 0) } else { (None, j) };
            return Ok(OrbitRecord { prime: p, sequence, mu_sequence, period, preperiod });
        }
        if sequence.len() >= f_max {
            return Err(Error::PeriodNotFound(f_max));
        }
        sequence.push(next);
    }
}

/// Σ_{s ≤ M} (a)_s (b)_s / ((c)_s s!) λ^s.
pub fn hyper_truncated(a: &Rational, b: &Rational, c: &Rational, m: usize) -> Result<TruncSeries<Rational>> {
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut t = Rational::one();
    for s in 0..=m {
        coeffs.push(t.clone());
        if s == m {
            break;
        }
        let cs = c + int(s as i64);
        if cs.is_zero() {
            return Err(Error::PochhammerZero(c.to_string(), s as u64 + 1));
        }
        let s1 = int(s as i64);
        t = t * (a + &s1) * (b + &s1) / (cs * (s1 + int(1)));
    }
    Ok(TruncSeries::new(Chart::Zero, 0, coeffs))
}

/// The singular points of the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularPoint {
    Zero,
    One,
    Infinity,
}

impl SingularPoint {
    pub const ALL: [SingularPoint; 3] = [SingularPoint::Zero, SingularPoint::One, SingularPoint::Infinity];

    pub fn chart(self) -> Chart {
        match self {
            SingularPoint::Zero => Chart::Zero,
            SingularPoint::One => Chart::One,
            SingularPoint::Infinity => Chart::Infinity,
        }
    }

    /// Local exponent matrix D_z = diag(d1, d2).
    pub fn exponents(self, a: &ParamTriple) -> [Rational; 2] {
        let [a1, a2, a3] = &a.0;
        match self {
            SingularPoint::Zero => [int(0), -a3],
            SingularPoint::One => [int(0), a3 - a1 - a2],
            SingularPoint::Infinity => [a1.clone(), a2.clone()],
        }
    }

    fn exponent_difference(self, a: &ParamTriple) -> Rational {
        let [a1, a2, a3] = &a.0;
        match self {
            SingularPoint::Zero => a3.clone(),
            SingularPoint::One => a3 - a1 - a2,
            SingularPoint::Infinity => a2 - a1,
        }
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularPoint::Zero => "0",
            SingularPoint::One => "1",
            SingularPoint::Infinity => "inf",
        })
    }
}

impl FromStr for SingularPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(SingularPoint::Zero),
            "1" => Ok(SingularPoint::One),
            "inf" | "infinity" | "oo" => Ok(SingularPoint::Infinity),
            _ => Err(Error::Parse(format!("singular point {s:?}"))),
        }
    }
}

/// Local data at a singular point: Y = l_z^{D_z}·U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularData {
    pub point: SingularPoint,
    /// l_z as text: λ, 1−λ or 1/λ.
    pub local_function: &'static str,
    pub exponents: [Rational; 2],
}

/// G_a(λ) of dY/dλ = Y·G.
pub fn system_matrix(a: &ParamTriple) -> RatMatrix2 {
    let [a1, a2, a3] = &a.0;
    let lam = Poly::lambda();
    let one_minus = Poly::linear(int(1), int(-1));
    let over = |c: Rational, d: &Poly| RatFunc::new(Poly::constant(c), d.clone());
    RatMatrix2 {
        e: [
            [over(-a3, &lam), over(a3 - a1, &one_minus)],
            [over(a3 - a2, &lam), over(a1 + a2 - a3, &one_minus)],
        ],
    }
}

/// λ(1−λ)·G_a(λ), a matrix of polynomials of degree ≤ 1.
fn system_polynomial(a: &ParamTriple) -> [[Poly; 2]; 2] {
    let [a1, a2, a3] = &a.0;
    let lam = |c: Rational| Poly::linear(int(0), c);
    let one_minus = |c: Rational| Poly::linear(c.clone(), -c);
    [[one_minus(-a3), lam(a3 - a1)], [one_minus(a3 - a2), lam(a1 + a2 - a3)]]
}

fn resonance_guard(z: SingularPoint, a: &ParamTriple, m: usize) -> Result<()> {
    let d = z.exponent_difference(a);
    if let Some(k) = rational::to_i64(&d) {
        if k.unsigned_abs() as usize <= m {
            return Err(Error::Resonance { point: z.to_string(), diff: d.to_string() });
        }
    }
    Ok(())
}

/// U^{(z)}_a to order M in the local variable at z.
pub fn solution_matrix(z: SingularPoint, a: &ParamTriple, m: usize) -> Result<(SingularData, SeriesMatrix2<Rational>)> {
    resonance_guard(z, a, m)?;
    let [a1, a2, a3] = &a.0;
    let one = int(1);
    let two = int(2);
    let f = |x: Rational, y: Rational, c: Rational, scale: Rational| -> Result<TruncSeries<Rational>> {
        Ok(hyper_truncated(&x, &y, &c, m)?.scale(&scale))
    };
    let shifted = |s: TruncSeries<Rational>| s.shift(1).truncate(m as i64);
    let (entries, local) = match z {
        SingularPoint::Zero => (
            [
                [f(a1.clone(), a2.clone(), a3 + &one, a3 - a2)?, f(a1.clone(), a2.clone(), a3.clone(), a3.clone())?],
                [
                    f(a2 - a3, a1 - a3, &one - a3, &one - a3)?,
                    shifted(f(&one + a2 - a3, &one + a1 - a3, &two - a3, a3 - a1)?)?,
                ],
            ],
            "lambda",
        ),
        SingularPoint::One => (
            [
                [f(a1.clone(), a2.clone(), a1 + a2 - a3, a1 + a2 - a3)?, f(a1.clone(), a2.clone(), a1 + a2 - a3 + &one, a1 - a3)?],
                [
                    shifted(f(a3 - a1 + &one, a3 - a2 + &one, a3 - a1 - a2 + &two, a3 - a2)?)?,
                    f(a3 - a1, a3 - a2, a3 - a1 - a2 + &one, a1 + a2 - a3 - &one)?,
                ],
            ],
            "1-lambda",
        ),
        SingularPoint::Infinity => (
            [
                [f(a1.clone(), a1 - a3, a1 - a2 + &one, a3 - a2)?, f(a1.clone(), a1 - a3 + &one, a1 - a2 + &one, a3 - a1)?],
                [f(a2 - a3, a2.clone(), a2 - a1 + &one, a2 - a1 + &one)?, f(a2 - a3 + &one, a2.clone(), a2 - a1 + &one, a2 - a1 + &one)?],
            ],
            "1/lambda",
        ),
    };
    let chart = z.chart();
    let u = SeriesMatrix2::new(entries).map(|s| s.relabel(chart.clone()));
    Ok((SingularData { point: z, local_function: local, exponents: z.exponents(a) }, u))
}

/// Verifies that l_z^{D_z}·U^{(z)} solves dY/dλ = Y·G to order M.
///
/// In the local variable t each row satisfies c(t)·(d·u + t·u′) = u·P̃(t) with
/// polynomial c and P̃, so the check loses no order. Returns the first order
/// with a nonzero residual, or M+1.
pub fn check_ode(z: SingularPoint, a: &ParamTriple, m: usize) -> Result<i64> {
    let (data, u) = solution_matrix(z, a, m)?;
    Ok(ode_residual_order(&data, a, &u, m))
}

/// First order at which l_z^{D}·U fails the system, or M+1.
pub fn ode_residual_order(data: &SingularData, a: &ParamTriple, u: &SeriesMatrix2<Rational>, m: usize) -> i64 {
    let z = data.point;
    let chart = z.chart();
    let order = m as i64;
    let pol = system_polynomial(a);
    let local = |p: &Poly| -> Poly {
        match z {
            SingularPoint::Zero => p.clone(),
            SingularPoint::One => p.compose_linear(&int(1), &int(-1)),
            SingularPoint::Infinity => Poly((0..=1).map(|i| p.coeff(1 - i)).collect()),
        }
    };
    let as_series = |p: &Poly| -> TruncSeries<Rational> {
        let coeffs = (0..=order).map(|i| p.coeff(i as usize)).collect();
        TruncSeries::new(chart.clone(), 0, coeffs)
    };
    let c_sign = if z == SingularPoint::One { int(-1) } else { int(1) };
    let c = as_series(&Poly::linear(c_sign.clone(), -c_sign));
    let pt: Vec<Vec<TruncSeries<Rational>>> =
        (0..2).map(|i| (0..2).map(|j| as_series(&local(&pol[i][j]))).collect()).collect();
    let mut first = order + 1;
    for i in 0..2 {
        let d = &data.exponents[i];
        for j in 0..2 {
            let theta = &u.e[i][j].scale(d) + &u.e[i][j].euler();
            let lhs = &c * &theta;
            let rhs = &(&u.e[i][0] * &pt[0][j]) + &(&u.e[i][1] * &pt[1][j]);
            let res = &lhs - &rhs;
            if let Some(k) = res.first_nonzero() {
                first = first.min(k);
            }
        }
    }
    first
}

/// Taylor expansion of C_a(z0, λ) in w = λ − z0, with C(z0, z0) = I.
pub fn local_solution_at_ordinary(z0: &Rational, a: &ParamTriple, m: usize) -> Result<SeriesMatrix2<Rational>> {
    if z0.is_zero() || z0.is_one() {
        return Err(Error::OutOfRange(format!("{z0} is a singular point")));
    }
    let pol = system_polynomial(a);
    let p0: Vec<Vec<Rational>> = (0..2).map(|i| (0..2).map(|j| pol[i][j].eval(z0)).collect()).collect();
    let p1: Vec<Vec<Rational>> = (0..2).map(|i| (0..2).map(|j| pol[i][j].coeff(1)).collect()).collect();
    let q0 = z0 * (int(1) - z0);
    let q1 = int(1) - int(2) * z0;
    let q2 = int(-1);
    type M2 = [[Rational; 2]; 2];
    let mm = |x: &M2, y: &Vec<Vec<Rational>>| -> M2 {
        let f = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
    };
    let mut cs: Vec<M2> = vec![[[int(1), int(0)], [int(0), int(1)]]];
    for k in 0..m {
        let kk = int(k as i64);
        let mut next = mm(&cs[k], &p0);
        for i in 0..2 {
            for j in 0..2 {
                next[i][j] -= &q1 * &kk * &cs[k][i][j];
            }
        }
        if k >= 1 {
            let prev = mm(&cs[k - 1], &p1);
            for i in 0..2 {
                for j in 0..2 {
                    next[i][j] += &prev[i][j] - &q2 * int(k as i64 - 1) * &cs[k - 1][i][j];
                }
            }
        }
        let scale = (&q0 * int(k as i64 + 1)).recip();
        for row in next.iter_mut() {
            for v in row.iter_mut() {
                *v *= &scale;
            }
        }
        cs.push(next);
    }
    let chart = Chart::Ordinary(z0.clone());
    let entry = |i: usize, j: usize| TruncSeries::new(chart.clone(), 0, cs.iter().map(|c| c[i][j].clone()).collect());
    Ok(SeriesMatrix2::new([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]))
}

/// Which orbit inequalities to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionKind {
    /// μ_{a3} > max(μ_{a1}, μ_{a2}) along the orbit.
    T2,
    /// min(μ_a, μ_b) > 0 and μ_c > μ_a + μ_b along the orbit.
    Kd,
    /// μ_c ≥ μ_a + μ_b and c a unit along the orbit.
    KdIntro,
    /// For a pair (a, b): μ_a ≤ μ_b < p−1, μ_a even, 2μ_b − μ_a ≤ p−1.
    Young,
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionKind::T2 => "T2",
            ConditionKind::Kd => "KD",
            ConditionKind::KdIntro => "KD_intro",
            ConditionKind::Young => "Young",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub kind: ConditionKind,
    pub orbit: OrbitRecord,
    pub per_index: Vec<bool>,
    pub passed: bool,
}

impl ConditionReport {
    pub fn first_failure(&self) -> Option<usize> {
        self.per_index.iter().position(|ok| !ok)
    }
}

/// Evaluates the inequalities of `kind` at every state of the orbit.
pub fn condition_check(kind: ConditionKind, params: &[Rational], p: u64, f_max: usize) -> Result<ConditionReport> {
    let need = if kind == ConditionKind::Young { 2 } else { 3 };
    if params.len() != need {
        return Err(Error::OutOfRange(format!("{kind} needs {need} parameters")));
    }
    let orbit = orbit(params, p, f_max)?;
    let per_index: Vec<bool> = orbit
        .mu_sequence
        .iter()
        .zip(&orbit.sequence)
        .map(|(mu, state)| match kind {
            ConditionKind::T2 => mu[2] > mu[0].max(mu[1]),
            ConditionKind::Kd => mu[0].min(mu[1]) > 0 && mu[2] > mu[0] + mu[1],
            ConditionKind::KdIntro => {
                mu[2] >= mu[0] + mu[1] && rational::valuation(&state[2], p) == Some(0)
            }
            ConditionKind::Young => {
                mu[0] <= mu[1] && mu[1] < p - 1 && mu[0] % 2 == 0 && 2 * mu[1] - mu[0] <= p - 1
            }
        })
        .collect();
    let passed = per_index.iter().all(|b| *b);
    Ok(ConditionReport { kind, orbit, per_index, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn triple(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> ParamTriple {
        ParamTriple::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1))
    }

    #[test]
    fn prime_step_examples() {
        assert_eq!(prime_step(&rat(0, 1), 7).unwrap(), (rat(0, 1), 0));
        assert_eq!(prime_step(&rat(1, 2), 7).unwrap(), (rat(1, 2), 3));
        assert_eq!(prime_step(&rat(1, 3), 11).unwrap(), (rat(2, 3), 7));
        assert!(prime_step(&rat(1, 7), 7).is_err());
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(&[rat(1, 6), rat(1, 6), rat(5, 6)], 7, 8).unwrap();
        assert_eq!(o.period, Some(1));
        assert_eq!(o.mu_sequence, vec![vec![1, 1, 5]]);
        let o = orbit(&[rat(1, 3)], 11, 8).unwrap();
        assert_eq!(o.period, Some(2));
        assert_eq!(o.mu_sequence, vec![vec![7], vec![3]]);
        let o = orbit(&[rat(5, 2)], 7, 8).unwrap();
        assert_eq!((o.period, o.preperiod), (None, 1));
    }

    #[test]
    fn hypergeometric_coefficients() {
        assert!(hyper_truncated(&rat(0, 1), &rat(1, 3), &rat(1, 2), 5).unwrap().coeffs()[1..].iter().all(|c| c.is_zero()));
        assert!(hyper_truncated(&rat(1, 1), &rat(1, 1), &rat(1, 1), 5).unwrap().coeffs().iter().all(|c| c.is_one()));
        assert!(hyper_truncated(&rat(1, 1), &rat(1, 1), &rat(-2, 1), 5).is_err());
    }

    #[test]
    fn constant_terms_of_solution_matrices() {
        let a = triple((1, 5), (2, 7), (3, 11));
        let [a1, a2, a3] = a.0.clone();
        let (_, u0) = solution_matrix(SingularPoint::Zero, &a, 4).unwrap();
        assert_eq!(
            [u0.e[0][0].coeff(0), u0.e[0][1].coeff(0), u0.e[1][0].coeff(0), u0.e[1][1].coeff(0)],
            [&a3 - &a2, a3.clone(), int(1) - &a3, int(0)]
        );
        let (_, u1) = solution_matrix(SingularPoint::One, &a, 4).unwrap();
        assert_eq!(
            [u1.e[0][0].coeff(0), u1.e[0][1].coeff(0), u1.e[1][0].coeff(0), u1.e[1][1].coeff(0)],
            [&a1 + &a2 - &a3, &a1 - &a3, int(0), &a1 + &a2 - &a3 - int(1)]
        );
        let (_, ui) = solution_matrix(SingularPoint::Infinity, &a, 4).unwrap();
        assert_eq!(
            [ui.e[0][0].coeff(0), ui.e[0][1].coeff(0), ui.e[1][0].coeff(0), ui.e[1][1].coeff(0)],
            [&a3 - &a2, &a3 - &a1, &a2 - &a1 + int(1), &a2 - &a1 + int(1)]
        );
    }

    #[test]
    fn ode_holds_at_each_point() {
        let a = triple((1, 6), (2, 7), (5, 6));
        for z in SingularPoint::ALL {
            assert_eq!(check_ode(z, &a, 30).unwrap(), 31, "z = {z}");
        }
    }

    #[test]
    fn ode_detects_a_wrong_system() {
        let a = triple((1, 6), (1, 6), (5, 6));
        let (data, mut u) = solution_matrix(SingularPoint::Zero, &a, 6).unwrap();
        assert_eq!(ode_residual_order(&data, &a, &u, 6), 7);
        u.e[0][0] = u.e[0][0].scale(&rat(2, 1));
        assert!(ode_residual_order(&data, &a, &u, 6) <= 6);
    }

    #[test]
    fn resonant_parameters_are_refused() {
        assert!(matches!(solution_matrix(SingularPoint::Zero, &triple((0, 1), (0, 1), (0, 1)), 10), Err(Error::Resonance { .. })));
        assert!(solution_matrix(SingularPoint::Zero, &triple((1, 3), (1, 5), (40, 1)), 10).is_ok());
    }

    #[test]
    fn system_matrix_layout() {
        let g = system_matrix(&triple((1, 6), (1, 6), (5, 6)));
        assert_eq!(g.e[0][0].eval(&rat(1, 1)).unwrap(), rat(-5, 6));
        let zero = system_matrix(&triple((0, 1), (0, 1), (0, 1)));
        assert!(zero.e.iter().flatten().all(|f| f.is_zero()));
    }

    #[test]
    fn ordinary_point_expansion_starts_at_identity() {
        let a = triple((1, 6), (1, 5), (5, 7));
        let z0 = rat(1, 3);
        let c = local_solution_at_ordinary(&z0, &a, 8).unwrap();
        assert_eq!(c.e[0][0].coeff(0), int(1));
        assert_eq!(c.e[0][1].coeff(0), int(0));
        let g = system_matrix(&a).eval(&z0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(c.e[i][j].coeff(1), g[i][j]);
            }
        }
    }

    #[test]
    fn conditions() {
        let r = condition_check(ConditionKind::Kd, &[rat(1, 6), rat(1, 6), rat(5, 6)], 7, 8).unwrap();
        assert!(r.passed);
        assert!(condition_check(ConditionKind::T2, &[rat(1, 6), rat(1, 6), rat(5, 6)], 7, 8).unwrap().passed);
        assert!(condition_check(ConditionKind::Young, &[rat(1, 3), rat(2, 3)], 7, 8).unwrap().passed);
        let z = condition_check(ConditionKind::Kd, &[rat(0, 1), rat(0, 1), rat(0, 1)], 7, 8).unwrap();
        assert_eq!(z.first_failure(), Some(0));
    }
}
