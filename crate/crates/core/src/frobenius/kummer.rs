//! Kummer transformation records θ_m, M_m, h_m, N_m for m ∈ {5, 7, 9, 11}
//! and the induced identities between local solution matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergeo::{solution_matrix, ParamTriple, SingularPoint};
use crate::rational::Rational;
use crate::series::{first_difference, SeriesMatrix2, Substitution};

/// A formal integer combination x·a + y·b + z·μ of parameter components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LinearExponent {
    pub a: [i64; 3],
    pub b: [i64; 3],
    pub mu: [i64; 3],
}

impl LinearExponent {
    pub const ZERO: LinearExponent = LinearExponent { a: [0; 3], b: [0; 3], mu: [0; 3] };

    pub fn a(c: [i64; 3]) -> Self {
        LinearExponent { a: c, ..Self::ZERO }
    }
    pub fn mu(c: [i64; 3]) -> Self {
        LinearExponent { mu: c, ..Self::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// Value at integral μ; only defined when no a- or b-component appears.
    pub fn eval_mu(&self, mu: [i64; 3]) -> Option<i64> {
        (self.a == [0; 3] && self.b == [0; 3]).then(|| (0..3).map(|k| self.mu[k] * mu[k]).sum())
    }
}

impl fmt::Display for LinearExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (name, c) in [("a", &self.a), ("b", &self.b), ("mu", &self.mu)] {
            for k in 0..3 {
                match c[k] {
                    0 => {}
                    1 => terms.push(format!("+{name}{}", k + 1)),
                    -1 => terms.push(format!("-{name}{}", k + 1)),
                    n => terms.push(format!("{n:+}{name}{}", k + 1)),
                }
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        let s = terms.concat();
        f.write_str(s.strip_prefix('+').unwrap_or(&s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialBase {
    Lambda,
    OneMinusLambda,
    LambdaP,
    OneMinusLambdaP,
}

impl fmt::Display for MonomialBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialBase::Lambda => "lambda",
            MonomialBase::OneMinusLambda => "(1-lambda)",
            MonomialBase::LambdaP => "lambda^p",
            MonomialBase::OneMinusLambdaP => "(1-lambda^p)",
        })
    }
}

/// base^exponent
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialPower {
    pub base: MonomialBase,
    pub exponent: LinearExponent,
}

/// (−1)^sign · ∏ monomials, carried formally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFactor {
    pub sign: LinearExponent,
    pub monomials: Vec<MonomialPower>,
}

impl fmt::Display for HFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-1)^({})", self.sign)?;
        for m in &self.monomials {
            write!(f, " {}^({})", m.base, m.exponent)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerRecord {
    pub index: u32,
    pub theta: Substitution,
    /// Rows act on (a1, a2, a3).
    pub map: [[i64; 3]; 3],
    /// h_m(a; λ); absent for m = 7.
    pub h: Option<HFactor>,
    /// h_m(a, b; λ), for m = 7 written in terms of its own arguments M_11 a, M_11 b.
    pub h_pair: HFactor,
    pub n: [[i64; 2]; 2],
}

fn mono(base: MonomialBase, exponent: LinearExponent) -> MonomialPower {
    MonomialPower { base, exponent }
}

pub fn kummer_record(m: u32) -> Result<KummerRecord> {
    use MonomialBase::*;
    let rec = match m {
        9 => KummerRecord {
            index: 9,
            theta: Substitution::Reciprocal,
            map: [[1, 0, 0], [1, 0, -1], [1, -1, 0]],
            h: Some(HFactor { sign: LinearExponent::a([-1, -1, 1]), monomials: vec![mono(Lambda, LinearExponent::a([-1, 0, 0]))] }),
            h_pair: HFactor { sign: LinearExponent::mu([1, 1, -1]), monomials: vec![mono(Lambda, LinearExponent::mu([-1, 0, 0]))] },
            n: [[1, 0], [1, -1]],
        },
        5 => KummerRecord {
            index: 5,
            theta: Substitution::OneMinus,
            map: [[1, 0, 0], [0, 1, 0], [1, 1, -1]],
            h: Some(HFactor { sign: LinearExponent::a([0, 1, 0]), monomials: vec![] }),
            h_pair: HFactor { sign: LinearExponent::mu([0, -1, 0]), monomials: vec![] },
            n: [[0, 1], [1, 0]],
        },
        11 => KummerRecord {
            index: 11,
            theta: Substitution::Theta11,
            map: [[1, 0, 0], [0, -1, 1], [1, -1, 0]],
            h: Some(HFactor {
                sign: LinearExponent::a([0, -1, 1]),
                monomials: vec![mono(OneMinusLambda, LinearExponent::a([-1, 0, 0]))],
            }),
            h_pair: HFactor {
                sign: LinearExponent::mu([0, 1, -1]),
                monomials: vec![
                    mono(OneMinusLambdaP, LinearExponent { b: [1, 0, 0], ..LinearExponent::ZERO }),
                    mono(OneMinusLambda, LinearExponent::a([-1, 0, 0])),
                ],
            },
            n: [[1, -1], [1, 0]],
        },
        7 => KummerRecord {
            index: 7,
            theta: Substitution::Theta7,
            map: [[1, 0, 0], [1, 0, -1], [1, 1, -1]],
            h: None,
            h_pair: HFactor { sign: LinearExponent::mu([0, -1, 0]), monomials: vec![mono(Lambda, LinearExponent::mu([1, 0, 0]))] },
            n: [[0, 1], [-1, 1]],
        },
        _ => return Err(Error::OutOfRange(format!("no Kummer record for m = {m}"))),
    };
    Ok(rec)
}

pub fn compose(f: &[[i64; 3]; 3], g: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| f[i][k] * g[k][j]).sum();
        }
    }
    out
}

/// Row signs that make identities 5 and 11 hold for the solution matrices
/// as normalized in [`solution_matrix`]; identity 9 needs none.
pub fn row_normalization(m: u32) -> [i64; 2] {
    match m {
        5 | 11 => [1, -1],
        _ => [1, 1],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerCheck {
    pub which: u32,
    /// First failing order of the identity as tabulated, or M+1.
    pub verbatim_order: i64,
    pub row_signs: [i64; 2],
    /// First failing order after applying `row_signs` on the left, or M+1.
    pub normalized_order: i64,
}

impl KummerCheck {
    pub fn holds(&self, m: usize) -> bool {
        self.normalized_order > m as i64
    }
}

/// The two sides of identity `which` as series in the local variable of the
/// left-hand side.
pub fn kummer_sides(which: u32, a: &ParamTriple, m: usize) -> Result<(SeriesMatrix2<Rational>, SeriesMatrix2<Rational>)> {
    let rec = kummer_record(which)?;
    let (lhs_point, rhs_point) = match which {
        9 => (SingularPoint::Infinity, SingularPoint::Zero),
        5 => (SingularPoint::One, SingularPoint::Zero),
        11 => (SingularPoint::One, SingularPoint::Infinity),
        _ => return Err(Error::OutOfRange(format!("identity {which} is not tabulated"))),
    };
    let (_, lhs) = solution_matrix(lhs_point, a, m)?;
    let (_, u) = solution_matrix(rhs_point, &a.apply(&rec.map), m)?;
    let nt = [[rec.n[0][0], rec.n[1][0]], [rec.n[0][1], rec.n[1][1]]];
    let rhs = u.substitute(rec.theta)?.mul_int_matrix(nt)?;
    Ok((lhs, rhs))
}

pub fn kummer_solution_identity_check(which: u32, a: &ParamTriple, m: usize) -> Result<KummerCheck> {
    let (lhs, rhs) = kummer_sides(which, a, m)?;
    let signs = row_normalization(which);
    let [s0, s1] = signs.map(|k| Rational::from_integer(k.into()));
    let normalized = rhs.scale_rows([&s0, &s1]);
    Ok(KummerCheck {
        which,
        verbatim_order: first_difference(&lhs, &rhs)?,
        row_signs: signs,
        normalized_order: first_difference(&lhs, &normalized)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn table_rows() {
        let r9 = kummer_record(9).unwrap();
        let a = ParamTriple::new(rat(1, 2), rat(1, 3), rat(1, 5));
        assert_eq!(a.apply(&r9.map), ParamTriple::new(rat(1, 2), rat(3, 10), rat(1, 6)));
        assert_eq!(r9.n, [[1, 0], [1, -1]]);
        assert_eq!(r9.h_pair.sign.to_string(), "mu1+mu2-mu3");
        assert_eq!(r9.h_pair.monomials[0].exponent.to_string(), "-mu1");
        let r5 = kummer_record(5).unwrap();
        assert_eq!(r5.n, [[0, 1], [1, 0]]);
        assert_eq!(r5.h_pair.sign.eval_mu([3, 5, 1]), Some(-5));
        assert!(kummer_record(6).is_err());
    }

    #[test]
    fn m5_is_m9_after_m11() {
        let m5 = kummer_record(5).unwrap().map;
        assert_eq!(compose(&kummer_record(9).unwrap().map, &kummer_record(11).unwrap().map), m5);
    }

    #[test]
    fn theta7_inverts_theta11() {
        let m7 = kummer_record(7).unwrap().map;
        let m11 = kummer_record(11).unwrap().map;
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert_eq!(compose(&m7, &m11), id);
        assert_eq!(compose(&m11, &m7), id);
        let n7 = kummer_record(7).unwrap().n;
        let n11 = kummer_record(11).unwrap().n;
        let prod: Vec<i64> = (0..4).map(|k| (0..2).map(|j| n7[k / 2][j] * n11[j][k % 2]).sum()).collect();
        assert_eq!(prod, vec![1, 0, 0, 1]);
    }

    #[test]
    fn identities_to_order_30() {
        let a = ParamTriple::new(rat(1, 6), rat(2, 7), rat(5, 6));
        for which in [9, 5, 11] {
            let c = kummer_solution_identity_check(which, &a, 30).unwrap();
            assert!(c.holds(30), "{c:?}");
        }
        let c9 = kummer_solution_identity_check(9, &a, 30).unwrap();
        assert_eq!(c9.verbatim_order, 31);
    }

    #[test]
    fn constant_terms_at_infinity() {
        let a = ParamTriple::new(rat(2, 5), rat(1, 7), rat(3, 4));
        let (lhs, rhs) = kummer_sides(9, &a, 1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(lhs.e[i][j].coeff(0), rhs.e[i][j].coeff(0));
            }
        }
    }
}
