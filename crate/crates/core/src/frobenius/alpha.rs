//! The translation factors α^{(z)}_i(a, e_k), their Γ-function potentials
//! φ^{(z)}_i, and the contiguity matrices B(a, a+u; λ).

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergeo::{solution_matrix, ParamTriple, SingularPoint};
use crate::ratfunc::{reconstruct, Poly, RatFunc, RatMatrix2};
use crate::rational::{int, Rational};
use crate::series::{first_difference, Chart, SeriesMatrix2, TruncSeries};

/// c·a + k
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affine {
    pub c: [i64; 3],
    pub k: i64,
}

pub const fn aff(c: [i64; 3], k: i64) -> Affine {
    Affine { c, k }
}

impl Affine {
    pub fn eval(&self, a: &ParamTriple) -> Rational {
        (0..3).fold(int(self.k), |acc, i| acc + &a.0[i] * int(self.c[i]))
    }

    /// The same form read at a + u.
    pub fn shifted(&self, u: [i64; 3]) -> Affine {
        aff(self.c, self.k + (0..3).map(|i| self.c[i] * u[i]).sum::<i64>())
    }

    pub fn plus(&self, n: i64) -> Affine {
        aff(self.c, self.k + n)
    }

    /// (s, f) with self = s·f and the leading nonzero entry of f positive.
    fn normalized(self) -> (i64, Affine) {
        let lead = self.c.iter().copied().chain([self.k]).find(|&x| x != 0).unwrap_or(0);
        if lead < 0 {
            (-1, aff(self.c.map(|x| -x), -self.k))
        } else {
            (1, self)
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for i in 0..3 {
            match self.c[i] {
                0 => {}
                1 => s.push_str(&format!("+a{}", i + 1)),
                -1 => s.push_str(&format!("-a{}", i + 1)),
                n => s.push_str(&format!("{n:+}a{}", i + 1)),
            }
        }
        if self.k != 0 || s.is_empty() {
            s.push_str(&format!("{:+}", self.k));
        }
        f.write_str(s.strip_prefix('+').unwrap_or(&s))
    }
}

/// sign · ∏ num / ∏ den, a rational function of a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRatio {
    pub sign: i64,
    pub num: Vec<Affine>,
    pub den: Vec<Affine>,
}

impl LinearRatio {
    pub fn one() -> Self {
        LinearRatio { sign: 1, num: vec![], den: vec![] }
    }

    fn ratio(num: Affine, den: Affine) -> Self {
        LinearRatio { sign: 1, num: vec![num], den: vec![den] }
    }

    pub fn eval(&self, a: &ParamTriple) -> Result<Rational> {
        let mut d = Rational::one();
        for f in &self.den {
            d *= f.eval(a);
        }
        if d.is_zero() {
            return Err(Error::Pole(format!("{self} at ({a})")));
        }
        let n = self.num.iter().fold(int(self.sign), |acc, f| acc * f.eval(a));
        Ok(n / d)
    }

    pub fn mul(&self, o: &LinearRatio) -> LinearRatio {
        LinearRatio {
            sign: self.sign * o.sign,
            num: self.num.iter().chain(&o.num).copied().collect(),
            den: self.den.iter().chain(&o.den).copied().collect(),
        }
    }

    /// Normal form: monic factors, common factors cancelled, sorted.
    pub fn canonical(&self) -> LinearRatio {
        let mut sign = self.sign;
        let mut norm = |v: &[Affine]| -> Vec<Affine> {
            v.iter()
                .map(|f| {
                    let (s, g) = f.normalized();
                    sign *= s;
                    g
                })
                .collect()
        };
        let mut num = norm(&self.num);
        let mut den = norm(&self.den);
        let mut keep = Vec::new();
        for f in num.drain(..) {
            if let Some(j) = den.iter().position(|g| *g == f) {
                den.remove(j);
            } else {
                keep.push(f);
            }
        }
        keep.sort();
        den.sort();
        LinearRatio { sign, num: keep, den }
    }

    pub fn same_as(&self, o: &LinearRatio) -> bool {
        self.canonical() == o.canonical()
    }
}

impl fmt::Display for LinearRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prod = |v: &[Affine]| -> String {
            if v.is_empty() {
                "1".into()
            } else {
                v.iter().map(|x| format!("({x})")).collect::<Vec<_>>().join("*")
            }
        };
        let s = if self.sign < 0 { "-" } else { "" };
        if self.den.is_empty() {
            write!(f, "{s}{}", prod(&self.num))
        } else {
            write!(f, "{s}{}/{}", prod(&self.num), prod(&self.den))
        }
    }
}

fn point_index(z: SingularPoint) -> usize {
    match z {
        SingularPoint::Zero => 0,
        SingularPoint::One => 1,
        SingularPoint::Infinity => 2,
    }
}

fn check_indices(i: usize, k: usize) -> Result<()> {
    if !(1..=2).contains(&i) || !(1..=3).contains(&k) {
        return Err(Error::OutOfRange(format!("alpha index i = {i}, shift e{k}")));
    }
    Ok(())
}

/// α^{(z)}_i(a, e_k) as tabulated.
pub fn alpha_entry(z: SingularPoint, i: usize, k: usize) -> Result<LinearRatio> {
    check_indices(i, k)?;
    let r = LinearRatio::ratio;
    let one = LinearRatio::one;
    let minus_one = || LinearRatio { sign: -1, num: vec![], den: vec![] };
    let table: [[[LinearRatio; 2]; 3]; 3] = [
        [
            [one(), r(aff([1, 0, 0], 0), aff([1, 0, -1], 0))],
            [r(aff([0, -1, 1], -1), aff([0, 1, 0], 0)), minus_one()],
            [r(aff([0, 0, 1], 1), aff([0, -1, 1], 0)), r(aff([1, 0, -1], -1), aff([0, 0, 1], -1))],
        ],
        [
            [r(aff([1, 1, -1], 1), aff([1, 0, -1], 0)), r(aff([1, 0, 0], 0), aff([1, 1, -1], -1))],
            [r(aff([-1, -1, 1], -1), aff([0, 1, 0], 0)), r(aff([0, 1, -1], 1), aff([-1, -1, 1], 1))],
            [r(aff([1, 0, -1], -1), aff([1, 1, -1], 0)), r(aff([1, 1, -1], -2), aff([0, -1, 1], 0))],
        ],
        [
            [r(aff([1, -1, 0], 1), aff([-1, 0, 1], 0)), r(aff([1, 0, 0], 0), aff([1, -1, 0], -1))],
            [r(aff([0, -1, 1], -1), aff([-1, 1, 0], 0)), r(aff([-1, 1, 0], 2), aff([0, 1, 0], 0))],
            [r(aff([-1, 0, 1], 1), aff([0, -1, 1], 0)), one()],
        ],
    ];
    Ok(table[point_index(z)][k - 1][i - 1].clone())
}

pub fn alpha(z: SingularPoint, i: usize, a: &ParamTriple, k: usize) -> Result<Rational> {
    alpha_entry(z, i, k)?.eval(a)
}

/// α^{(z)}_i(a, u) for any u ∈ Z^3 by α(a, u+v) = α(a+u, v)·α(a, u),
/// walking e1, then e2, then e3.
pub fn alpha_shift(z: SingularPoint, i: usize, a: &ParamTriple, u: [i64; 3]) -> Result<Rational> {
    let mut cur = a.clone();
    let mut acc = Rational::one();
    for k in 0..3 {
        let mut e = [0i64; 3];
        e[k] = 1;
        for _ in 0..u[k].max(0) {
            acc *= alpha(z, i, &cur, k + 1)?;
            cur = cur.shifted(e);
        }
        for _ in 0..(-u[k]).max(0) {
            cur = cur.shifted(e.map(|x| -x));
            let f = alpha(z, i, &cur, k + 1)?;
            if f.is_zero() {
                return Err(Error::Pole(format!("alpha^({z})_{i} inverse at ({cur})")));
            }
            acc /= f;
        }
    }
    Ok(acc)
}

/// (−1)^{sign·a} · ∏ Γ(num) / ∏ Γ(den).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiEntry {
    pub sign: [i64; 3],
    pub num: Vec<Affine>,
    pub den: Vec<Affine>,
}

pub fn phi_entry(z: SingularPoint, i: usize) -> Result<PhiEntry> {
    check_indices(i, 1)?;
    let e = |sign, num: &[Affine], den: &[Affine]| PhiEntry { sign, num: num.to_vec(), den: den.to_vec() };
    Ok(match (z, i) {
        (SingularPoint::Zero, 1) => e([0, 0, 0], &[aff([0, 0, 1], 1)], &[aff([0, 1, 0], 0), aff([0, -1, 1], 0)]),
        (SingularPoint::Zero, _) => e([0, 1, 0], &[aff([1, 0, 0], 0)], &[aff([1, 0, -1], 0), aff([0, 0, 1], -1)]),
        (SingularPoint::One, 1) => e([0, 1, 0], &[aff([1, 1, -1], 1)], &[aff([0, 1, 0], 0), aff([1, 0, -1], 0)]),
        (SingularPoint::One, _) => e([0, 0, 0], &[aff([1, 0, 0], 0)], &[aff([1, 1, -1], -1), aff([0, -1, 1], 0)]),
        (SingularPoint::Infinity, 1) => e([1, 1, 1], &[aff([1, -1, 0], 1)], &[aff([0, -1, 1], 0), aff([1, 0, -1], 0)]),
        (SingularPoint::Infinity, _) => e([0, 1, 0], &[aff([1, 0, 0], 0)], &[aff([1, -1, 0], -1), aff([0, 1, 0], 0)]),
    })
}

/// Γ(x+n)/Γ(x) as linear factors.
fn gamma_shift(x: Affine, n: i64) -> LinearRatio {
    if n >= 0 {
        LinearRatio { sign: 1, num: (0..n).map(|j| x.plus(j)).collect(), den: vec![] }
    } else {
        LinearRatio { sign: 1, num: vec![], den: (1..=-n).map(|j| x.plus(-j)).collect() }
    }
}

/// φ^{(z)}_i(a + e_k)/φ^{(z)}_i(a) reduced with Γ(x+1) = x·Γ(x).
pub fn phi_ratio(z: SingularPoint, i: usize, k: usize) -> Result<LinearRatio> {
    check_indices(i, k)?;
    let phi = phi_entry(z, i)?;
    let mut out = LinearRatio { sign: if phi.sign[k - 1].rem_euclid(2) == 1 { -1 } else { 1 }, num: vec![], den: vec![] };
    for x in &phi.num {
        out = out.mul(&gamma_shift(*x, x.c[k - 1]));
    }
    for x in &phi.den {
        let g = gamma_shift(*x, x.c[k - 1]);
        out = out.mul(&LinearRatio { sign: g.sign, num: g.den, den: g.num });
    }
    Ok(out.canonical())
}

pub fn alpha_phi_consistency_check(z: SingularPoint, i: usize, k: usize) -> Result<bool> {
    Ok(phi_ratio(z, i, k)?.same_as(&alpha_entry(z, i, k)?))
}

/// B(a, a+e1; λ)^t.
pub fn contiguity_b_transpose(a: &ParamTriple) -> Result<RatMatrix2> {
    let [a1, a2, a3] = &a.0;
    if a1.is_zero() {
        return Err(Error::Pole("B(a, a+e1) at a1 = 0".into()));
    }
    let s = a1.recip();
    let c = |x: Rational| RatFunc::constant(x * &s);
    let lam_minus_one = Poly::linear(int(-1), int(1));
    let one_minus = Poly::linear(int(1), int(-1));
    Ok(RatMatrix2 {
        e: [
            [c(a1 - a3), RatFunc::new(Poly::linear(int(0), (a1 - a3) * &s), lam_minus_one)],
            [c(a3 - a2), RatFunc::new(Poly::linear(a1 * &s, -(a3 - a2) * &s), one_minus)],
        ],
    })
}

/// D_z(u) for an integer shift.
pub fn exponent_shift(z: SingularPoint, u: [i64; 3]) -> [i64; 2] {
    match z {
        SingularPoint::Zero => [0, -u[2]],
        SingularPoint::One => [0, u[2] - u[0] - u[1]],
        SingularPoint::Infinity => [u[0], u[1]],
    }
}

fn alpha_pair(z: SingularPoint, a: &ParamTriple, u: [i64; 3]) -> Result<[Rational; 2]> {
    Ok([alpha_shift(z, 1, a, u)?, alpha_shift(z, 2, a, u)?])
}

/// diag(α(a,u))·l^{−D(u)}·U_a·B^t, to order M.
pub fn contiguity_formula_rhs(z: SingularPoint, a: &ParamTriple, u: [i64; 3], bt: &RatMatrix2, m: usize) -> Result<SeriesMatrix2<Rational>> {
    let d = exponent_shift(z, u);
    let slack = d.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0) + 2;
    let (_, ua) = solution_matrix(z, a, m + slack)?;
    let b = bt.expand(&z.chart(), (m + slack) as i64)?;
    let [x1, x2] = alpha_pair(z, a, u)?;
    ua.checked_mul(&b)?.shift_rows([-d[0], -d[1]]).scale_rows([&x1, &x2]).truncate(m as i64)
}

/// First order at which U_{a+u} differs from the right side of the
/// translation formula, or M+1.
pub fn contiguity_formula_residual(z: SingularPoint, a: &ParamTriple, u: [i64; 3], bt: &RatMatrix2, m: usize) -> Result<i64> {
    let (_, target) = solution_matrix(z, &a.shifted(u), m)?;
    first_difference(&target, &contiguity_formula_rhs(z, a, u, bt, m)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCheck {
    /// First order with a nonzero off-diagonal coefficient of U_a·B^t·U_{a+u}^{−1}, or M+1.
    pub offdiagonal_order: i64,
    /// First order at which the whole matrix differs from l^{D(u)}·diag(α)^{−1}, or M+1.
    pub diagonal_order: i64,
}

pub fn delta_check(z: SingularPoint, a: &ParamTriple, u: [i64; 3], bt: &RatMatrix2, m: usize) -> Result<DeltaCheck> {
    let mi = m as i64;
    let wide = m + 2;
    let (_, ua) = solution_matrix(z, a, wide)?;
    let (_, ub) = solution_matrix(z, &a.shifted(u), wide)?;
    let x = ua.checked_mul(&bt.expand(&z.chart(), wide as i64)?)?.checked_mul(&ub.inverse(wide as i64)?)?.truncate(mi)?;
    let offdiagonal_order = [&x.e[0][1], &x.e[1][0]].iter().filter_map(|s| s.first_nonzero()).min().unwrap_or(x.order() + 1);
    let [x1, x2] = alpha_pair(z, a, u)?;
    if x1.is_zero() || x2.is_zero() {
        return Err(Error::Pole("alpha vanishes".into()));
    }
    let d = exponent_shift(z, u);
    let expected = SeriesMatrix2::identity(z.chart(), Rational::one(), mi).shift_rows(d).scale_rows([&x1.recip(), &x2.recip()]);
    Ok(DeltaCheck { offdiagonal_order, diagonal_order: first_difference(&x, &expected)? })
}

#[derive(Clone, Debug)]
pub struct DerivedB {
    pub shift: [i64; 3],
    /// B^t recognized as rational functions, when every entry reconstructs.
    pub matrix: Option<RatMatrix2>,
    /// U_a^{−1}·l^{D(u)}·diag(α)^{−1}·U_{a+u}.
    pub series: SeriesMatrix2<Rational>,
}

fn reconstruct_laurent(s: &TruncSeries<Rational>, max_deg: usize) -> Option<RatFunc> {
    let Some(k) = s.first_nonzero() else {
        return Some(RatFunc::zero());
    };
    let low = k.min(0);
    let coeffs: Vec<Rational> = (low..=s.order()).map(|i| s.coeff(i)).collect();
    let f = reconstruct(&TruncSeries::new(Chart::Zero, 0, coeffs), max_deg)?;
    let mut den = f.den.clone();
    for _ in 0..-low {
        den = den.mul(&Poly::lambda());
    }
    Some(RatFunc::new(f.num, den))
}

/// Solves the translation formula at the origin for B(a, a+u; λ)^t and
/// recognizes its entries as rational functions of degree ≤ 2.
pub fn derive_b(a: &ParamTriple, u: [i64; 3], m: usize) -> Result<DerivedB> {
    let z = SingularPoint::Zero;
    let mi = m as i64;
    let (_, ua) = solution_matrix(z, a, m)?;
    let (_, ub) = solution_matrix(z, &a.shifted(u), m)?;
    let [x1, x2] = alpha_pair(z, a, u)?;
    if x1.is_zero() || x2.is_zero() {
        return Err(Error::Pole("alpha vanishes".into()));
    }
    let d = exponent_shift(z, u);
    let series = ua.inverse(mi)?.checked_mul(&ub.scale_rows([&x1.recip(), &x2.recip()]).shift_rows(d))?;
    let f = |i: usize, j: usize| reconstruct_laurent(&series.e[i][j], 2);
    let matrix = match (f(0, 0), f(0, 1), f(1, 0), f(1, 1)) {
        (Some(b00), Some(b01), Some(b10), Some(b11)) => Some(RatMatrix2 { e: [[b00, b01], [b10, b11]] }),
        _ => None,
    };
    Ok(DerivedB { shift: u, matrix, series })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sample() -> ParamTriple {
        ParamTriple::new(rat(1, 6), rat(2, 7), rat(5, 9))
    }

    #[test]
    fn table_spot_values() {
        let a = sample();
        assert_eq!(alpha(SingularPoint::Zero, 1, &a, 1).unwrap(), int(1));
        assert_eq!(alpha(SingularPoint::Zero, 2, &a, 1).unwrap(), a.a1() / (a.a1() - a.a3()));
        assert_eq!(alpha(SingularPoint::Infinity, 2, &a, 3).unwrap(), int(1));
        assert_eq!(alpha_entry(SingularPoint::Zero, 1, 2).unwrap().to_string(), "(-a2+a3-1)/(a2)");
        assert!(alpha(SingularPoint::Zero, 3, &a, 1).is_err());
    }

    #[test]
    fn phi_ratios_reproduce_all_entries() {
        for z in SingularPoint::ALL {
            for i in 1..=2 {
                for k in 1..=3 {
                    assert!(alpha_phi_consistency_check(z, i, k).unwrap(), "z={z} i={i} k={k}: {}", phi_ratio(z, i, k).unwrap());
                }
            }
        }
        assert_eq!(phi_ratio(SingularPoint::Zero, 1, 1).unwrap(), LinearRatio::one());
    }

    #[test]
    fn canonical_form_detects_differences() {
        let x = LinearRatio::ratio(aff([0, -1, 1], -1), aff([0, 1, 0], 0));
        let y = LinearRatio { sign: -1, num: vec![aff([0, 1, -1], 1)], den: vec![aff([0, 1, 0], 0)] };
        assert!(x.same_as(&y));
        assert!(!x.same_as(&LinearRatio::ratio(aff([0, 1, -1], 1), aff([0, 1, 0], 0))));
    }

    #[test]
    fn shift_and_unshift() {
        let a = sample();
        for z in SingularPoint::ALL {
            let there = alpha_shift(z, 1, &a, [1, -1, 2]).unwrap();
            let back = alpha_shift(z, 1, &a.shifted([1, -1, 2]), [-1, 1, -2]).unwrap();
            assert_eq!(there * back, int(1));
        }
    }

    #[test]
    fn b_matrix_display_values() {
        let a = sample();
        let bt = contiguity_b_transpose(&a).unwrap();
        let at0 = |i: usize, j: usize| bt.e[i][j].eval(&int(0)).unwrap();
        let s = a.a1().recip();
        assert_eq!(at0(0, 0), (a.a1() - a.a3()) * &s);
        assert_eq!(at0(0, 1), int(0));
        assert_eq!(at0(1, 0), (a.a3() - a.a2()) * &s);
        assert_eq!(at0(1, 1), int(1));
        assert!(contiguity_b_transpose(&ParamTriple::new(int(0), rat(1, 2), rat(1, 3))).is_err());
    }

    #[test]
    fn e1_formula_and_delta() {
        let a = sample();
        let bt = contiguity_b_transpose(&a).unwrap();
        for z in SingularPoint::ALL {
            assert_eq!(contiguity_formula_residual(z, &a, [1, 0, 0], &bt, 20).unwrap(), 21, "z={z}");
        }
        let d = delta_check(SingularPoint::Zero, &a, [1, 0, 0], &bt, 20).unwrap();
        assert_eq!(d, DeltaCheck { offdiagonal_order: 21, diagonal_order: 21 });
    }

    #[test]
    fn wrong_b_is_rejected() {
        let a = sample();
        let mut bt = contiguity_b_transpose(&a).unwrap();
        bt.e[1][0] = bt.e[1][0].scale(&int(2));
        assert!(contiguity_formula_residual(SingularPoint::Zero, &a, [1, 0, 0], &bt, 20).unwrap() <= 20);
        assert!(delta_check(SingularPoint::Zero, &a, [1, 0, 0], &bt, 20).unwrap().offdiagonal_order <= 20);
    }

    #[test]
    fn derived_b_matches_and_transfers() {
        let a = sample();
        let e1 = derive_b(&a, [1, 0, 0], 20).unwrap();
        assert!(e1.matrix.unwrap().same_as(&contiguity_b_transpose(&a).unwrap()));
        for u in [[0, 1, 0], [0, 0, 1]] {
            let b = derive_b(&a, u, 20).unwrap().matrix.expect("degree-2 reconstruction");
            assert_eq!(contiguity_formula_residual(SingularPoint::Zero, &a, u, &b, 20).unwrap(), 21);
            assert_eq!(delta_check(SingularPoint::Zero, &a, u, &b, 20).unwrap().offdiagonal_order, 21);
            for z in [SingularPoint::One, SingularPoint::Infinity] {
                assert_eq!(contiguity_formula_residual(z, &a, u, &b, 20).unwrap(), 21, "u={u:?} z={z}");
            }
        }
    }

    #[test]
    fn double_shift_uses_the_product_rule() {
        let a = sample();
        let b1 = contiguity_b_transpose(&a).unwrap();
        let b2 = contiguity_b_transpose(&a.shifted([1, 0, 0])).unwrap();
        let composite = b1.mul(&b2);
        assert_eq!(contiguity_formula_residual(SingularPoint::Zero, &a, [2, 0, 0], &composite, 15).unwrap(), 16);
    }
}
