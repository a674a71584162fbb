//! Morita's Γ_p, Dwork's symbol γ_p(x, y), and Pochhammer ratios.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{pow, PadicNumber, PiElement};
use crate::rational::{self, mulmod, Rational};

/// (x)_m = x(x+1)⋯(x+m−1).
pub fn pochhammer(x: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..m {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

/// Γ(x+m)/Γ(x) for any integer m, as an exact rational.
///
/// For m < 0 this is 1/(x+m)_{−m}; a vanishing product is a pole.
pub fn gamma_ratio(x: &Rational, m: i64) -> Result<Rational> {
    if m >= 0 {
        return Ok(pochhammer(x, m as u64));
    }
    let d = pochhammer(&(x + rational::int(m)), m.unsigned_abs());
    if d.is_zero() {
        return Err(Error::Pole(format!("Gamma({x}{m:+})/Gamma({x})")));
    }
    Ok(d.recip())
}

struct Blocks {
    p: u64,
    m: u64,
    n: usize,
}

impl Blocks {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.n - i) {
                out[i + j] = (out[i + j] + mulmod(*x, *y, self.m)) % self.m;
            }
        }
        out
    }

    fn eval(&self, f: &[u64], x: u64) -> u64 {
        let x = x % self.m;
        f.iter().rev().fold(0, |acc, c| (mulmod(acc, x, self.m) + c) % self.m)
    }

    /// f(p·y + x0) as a polynomial in y.
    fn shift(&self, f: &[u64], x0: u64) -> Vec<u64> {
        let mut r = vec![0u64; self.n];
        for c in f.iter().rev() {
            let mut next = vec![0u64; self.n];
            for j in 0..self.n {
                let mut v = mulmod(r[j], x0, self.m);
                if j > 0 {
                    v = (v + mulmod(r[j - 1], self.p, self.m)) % self.m;
                }
                next[j] = v;
            }
            next[0] = (next[0] + c) % self.m;
            r = next;
        }
        r
    }

    /// ∏_{x=0}^{q−1} f(x), for f whose x^k coefficient is divisible by p^k.
    fn block_product(&self, f: &[u64], q: u64) -> u64 {
        if q == 0 {
            return 1 % self.m;
        }
        let (q1, r1) = (q / self.p, q % self.p);
        let mut tail = 1 % self.m;
        for x in q1 * self.p..q1 * self.p + r1 {
            tail = mulmod(tail, self.eval(f, x), self.m);
        }
        if q1 == 0 {
            return tail;
        }
        let mut next = vec![0u64; self.n];
        next[0] = 1 % self.m;
        for x0 in 0..self.p {
            next = self.mul(&next, &self.shift(f, x0));
        }
        mulmod(self.block_product(&next, q1), tail, self.m)
    }
}

/// ∏_{1 ≤ j ≤ n, p ∤ j} j modulo p^prec.
///
/// Runs of p−1 consecutive units are grouped into the polynomial
/// ∏_{i<p}(p·x + i), whose coefficients make degree ≥ prec vanish, and the
/// products of those polynomials are folded level by level.
pub fn unit_factorial(n: u64, p: u64, prec: u32) -> u64 {
    let m = p.pow(prec);
    let ctx = Blocks { p, m, n: prec as usize };
    let mut f = vec![0u64; ctx.n];
    f[0] = 1 % m;
    for i in 1..p {
        let lin = if ctx.n > 1 { vec![i % m, p % m] } else { vec![i % m] };
        f = ctx.mul(&f, &lin);
    }
    let (q, r) = (n / p, n % p);
    let mut acc = ctx.block_product(&f, q);
    for i in 1..=r {
        acc = mulmod(acc, (q * p + i) % m, m);
    }
    acc
}

/// Γ_p(k) mod p^prec for a positive integer k.
pub fn morita_integer(k: u64, p: u64, prec: u32) -> u64 {
    let m = p.pow(prec);
    let prod = unit_factorial(k - 1, p, prec);
    if k % 2 == 0 {
        prod
    } else {
        (m - prod) % m
    }
}

/// Morita's Γ_p(x) modulo p^prec for x ∈ Z_p, through the approximant m ≡ x.
pub fn gamma_p(x: &Rational, p: u64, prec: i64) -> Result<PadicNumber> {
    rational::check_prime(p)?;
    if !rational::in_zp(x, p) {
        return Err(Error::NotInZp(x.to_string()));
    }
    if prec < 1 || prec > crate::padic::max_relative_precision(p) {
        return Err(Error::OutOfRange(format!("precision {prec} for p = {p}")));
    }
    let modulus = pow(p, prec);
    let mut k = rational::residue(x, modulus)?;
    if k == 0 {
        k = modulus;
    }
    let g = morita_integer(k, p, prec as u32);
    Ok(PadicNumber::from_rational(&rational::int(g as i64), p, prec))
}

/// Checks Γ_p(x)Γ_p(1−x) = −(−1)^t, t ≡ −x mod p; returns the agreement precision.
pub fn gamma_p_reflection_check(x: &Rational, p: u64, prec: i64) -> Result<i64> {
    let lhs = gamma_p(x, p, prec)? * gamma_p(&(Rational::one() - x), p, prec)?;
    let t = (p - rational::residue(x, p)?) % p;
    let rhs = PadicNumber::from_i64(if t % 2 == 0 { -1 } else { 1 }, p, prec);
    Ok(lhs.agreement(&rhs).min(prec))
}

/// A pair (x, y) in Z_p² with μ = p·y − x an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPair {
    pub x: Rational,
    pub y: Rational,
    pub mu: i64,
}

impl GammaPair {
    pub fn new(x: Rational, y: Rational, p: u64) -> Result<Self> {
        for v in [&x, &y] {
            if !rational::in_zp(v, p) {
                return Err(Error::NotInZp(v.to_string()));
            }
        }
        let mu = &y * rational::int(p as i64) - &x;
        let mu = rational::to_i64(&mu).ok_or_else(|| Error::OutOfRange(format!("p*{y} - {x} is not an integer")))?;
        Ok(GammaPair { x, y, mu })
    }
}

/// γ_p(x, y) through the base pair (x−m, y−n) with window exponent `base`.
///
/// m is forced by base = μ − p·n + m.
pub fn gamma_symbol_via(pair: &GammaPair, n: i64, base: u64, p: u64, prec: i64) -> Result<PiElement> {
    if base >= p {
        return Err(Error::OutOfRange(format!("window exponent {base}")));
    }
    let m = base as i64 - pair.mu + p as i64 * n;
    let x = &pair.x - rational::int(m);
    let y = &pair.y - rational::int(n);
    let num = gamma_ratio(&x, m)?;
    let den = gamma_ratio(&y, n)?;
    if den.is_zero() {
        return Err(Error::Pole(format!("Gamma({})/Gamma({}{n:+})", y, y)));
    }
    let sign = if (n - m).rem_euclid(2) == 0 { 1 } else { -1 };
    let factor = num / den * rational::int(sign);
    let g = gamma_p(&x, p, prec)?.mul_rational(&factor);
    Ok(PiElement::new(g, base as i64 + n - m))
}

/// γ_p(x, y) by x-shifts only, landing μ in {0,…,p−1}.
pub fn gamma_symbol(pair: &GammaPair, p: u64, prec: i64) -> Result<PiElement> {
    gamma_symbol_via(pair, 0, pair.mu.rem_euclid(p as i64) as u64, p, prec)
}

/// Evaluates γ_p along several reduction paths and returns the weakest
/// relative agreement with the canonical value.
pub fn symbol_reduction_independence_check(pair: &GammaPair, p: u64, prec: i64) -> Result<i64> {
    let canon = gamma_symbol(pair, p, prec)?;
    let r = pair.mu.rem_euclid(p as i64) as u64;
    let paths = [(1, r), (-1, r), (0, (r + 1) % p), (1, (r + p - 1) % p), (2, (r + 2) % p), (-2, 0)];
    let offset = canon.coeff().valuation().unwrap_or(0);
    let mut worst = i64::MAX;
    let mut used = 1;
    for (n, b) in paths {
        let Ok(v) = gamma_symbol_via(pair, n, b, p, prec) else { continue };
        used += 1;
        worst = worst.min(canon.agreement(&v) - offset);
    }
    if used < 3 {
        return Err(Error::Pole("fewer than three reduction paths are defined".into()));
    }
    Ok(worst.min(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn direct(k: u64, p: u64, prec: u32) -> u64 {
        let m = p.pow(prec);
        let mut acc = 1u64;
        for j in 1..k {
            if j % p != 0 {
                acc = mulmod(acc, j % m, m);
            }
        }
        if k % 2 == 1 {
            (m - acc) % m
        } else {
            acc
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(gamma_p(&rat(1, 1), 7, 4).unwrap(), PadicNumber::from_i64(-1, 7, 4));
        assert_eq!(gamma_p(&rat(2, 1), 7, 4).unwrap(), PadicNumber::one(7, 4));
        assert_eq!(gamma_p(&rat(6, 1), 5, 3).unwrap(), PadicNumber::from_i64(24, 5, 3));
        assert_eq!(gamma_p(&rat(0, 1), 7, 4).unwrap(), PadicNumber::one(7, 4));
    }

    #[test]
    fn blockwise_matches_direct_product() {
        for (p, prec) in [(3u64, 5u32), (5, 4), (7, 3), (11, 3), (13, 2)] {
            let m = p.pow(prec);
            for k in (1..=m).step_by(((m / 97) as usize).max(1)).chain([m - 1, m, p, p + 1]) {
                assert_eq!(morita_integer(k, p, prec), direct(k, p, prec), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&rat(1, 1), 5), rat(120, 1));
        assert_eq!(gamma_ratio(&rat(1, 3), -2).unwrap(), rat(9, 10));
        assert!(gamma_ratio(&rat(1, 1), -1).is_err());
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(gamma_p_reflection_check(&rat(1, 1), 7, 6).unwrap(), 6);
        assert_eq!(gamma_p_reflection_check(&rat(1, 2), 7, 6).unwrap(), 6);
        assert_eq!(gamma_p_reflection_check(&rat(1, 3), 5, 6).unwrap(), 6);
    }

    #[test]
    fn window_symbol() {
        let pair = GammaPair::new(rat(1, 2), rat(1, 2), 5).unwrap();
        assert_eq!(pair.mu, 2);
        let g = gamma_symbol(&pair, 5, 6).unwrap();
        assert_eq!(g.pi_exponent(), 2);
        assert_eq!(g.coeff(), &gamma_p(&rat(1, 2), 5, 6).unwrap());
    }

    #[test]
    fn translation_rule() {
        let p = 7;
        let (x, y) = (rat(1, 3), rat(1, 3));
        let a = gamma_symbol(&GammaPair::new(x.clone() + rat(1, 1), y.clone(), p).unwrap(), p, 6).unwrap();
        let b = gamma_symbol(&GammaPair::new(x.clone(), y, p).unwrap(), p, 6).unwrap();
        let minus_pi_inv = PiElement::new(PadicNumber::from_i64(-1, p, 8), -1);
        let expect = (&minus_pi_inv * &b).mul_rational(&x);
        assert!(a.agreement(&expect) >= 6);
    }

    #[test]
    fn shifted_pair_paths_agree() {
        let pair = GammaPair::new(rat(1, 2) + rat(3, 1), rat(1, 2), 7).unwrap();
        assert_eq!(pair.mu, 0);
        assert!(symbol_reduction_independence_check(&pair, 7, 6).unwrap() >= 6);
    }
}
