use padic_hyper::gamma::{gamma_p, gamma_p_reflection_check, gamma_symbol, symbol_reduction_independence_check, GammaPair};
use padic_hyper::padic::PadicNumber;
use padic_hyper::rational::{int, rat};
use padic_hyper::series::{Chart, TruncSeries};
use padic_hyper::Rational;
use proptest::prelude::*;

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

/// Fractions with denominators prime to every prime above.
fn zp_fraction() -> impl Strategy<Value = Rational> {
    (-40i64..40, prop::sample::select(vec![1i64, 2, 4, 8, 16, 17, 19, 23, 29]))
        .prop_map(|(n, d)| rat(n, d))
}

fn padic(p: u64) -> impl Strategy<Value = PadicNumber> {
    (-1000i64..1000, 1i64..50, 0i64..3).prop_map(move |(n, d, v)| {
        let r = rat(n, d) * num_traits::pow::pow(int(p as i64), v as usize);
        PadicNumber::from_rational(&r, p, 8)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws((x, y, z) in prime().prop_flat_map(|p| (padic(p), padic(p), padic(p)))) {
        let lhs = x.checked_mul(&y.checked_add(&z).unwrap()).unwrap();
        let rhs = x.checked_mul(&y).unwrap().checked_add(&x.checked_mul(&z).unwrap()).unwrap();
        prop_assert!(lhs.agreement(&rhs) >= lhs.abs_precision().unwrap_or(8).min(rhs.abs_precision().unwrap_or(8)));
        prop_assert_eq!(x.checked_add(&y).unwrap().agreement(&y.checked_add(&x).unwrap()), x.checked_add(&y).unwrap().abs_precision().unwrap_or(i64::MAX));
        if !x.is_zero() {
            let q = y.checked_mul(&x).unwrap().checked_div(&x).unwrap();
            prop_assert!(q.agreement(&y) >= q.abs_precision().unwrap_or(8).min(y.abs_precision().unwrap_or(8)));
        }
    }

    #[test]
    fn rational_embedding_is_multiplicative(p in prime(), a in zp_fraction(), b in zp_fraction()) {
        let x = PadicNumber::from_rational(&a, p, 10);
        let y = PadicNumber::from_rational(&b, p, 10);
        let xy = PadicNumber::from_rational(&(&a * &b), p, 10);
        prop_assert!(x.checked_mul(&y).unwrap().agreement(&xy) >= 10);
        let s = PadicNumber::from_rational(&(&a + &b), p, 10);
        prop_assert!(x.checked_add(&y).unwrap().agreement(&s) >= 10.min(s.abs_precision().unwrap_or(10)));
    }

    #[test]
    fn series_product_commutes_and_inverts(
        xs in prop::collection::vec(-20i64..20, 2..12),
        ys in prop::collection::vec(-20i64..20, 2..12),
    ) {
        let m = (xs.len().min(ys.len()) - 1) as i64;
        let mut xs = xs;
        if xs[0] == 0 {
            xs[0] = 1;
        }
        let f = TruncSeries::new(Chart::Zero, 0, xs.iter().map(|&v| int(v)).collect()).truncate(m).unwrap();
        let g = TruncSeries::new(Chart::Zero, 0, ys.iter().map(|&v| int(v)).collect()).truncate(m).unwrap();
        prop_assert_eq!(f.checked_mul(&g).unwrap(), g.checked_mul(&f).unwrap());
        let one = f.checked_mul(&f.inverse(m).unwrap()).unwrap();
        prop_assert_eq!(one, TruncSeries::constant(Chart::Zero, int(1), m));
        let lhs = f.checked_mul(&g).unwrap().derivative().unwrap();
        let rhs = f.derivative().unwrap().checked_mul(&g.truncate(m - 1).unwrap()).unwrap()
            .checked_add(&f.truncate(m - 1).unwrap().checked_mul(&g.derivative().unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_reflection(p in prime(), x in zp_fraction()) {
        prop_assert!(gamma_p_reflection_check(&x, p, 6).unwrap() >= 6);
    }

    #[test]
    fn gamma_functional_equation(p in prime(), x in zp_fraction()) {
        let g = gamma_p(&x, p, 6).unwrap();
        let g1 = gamma_p(&(&x + int(1)), p, 6).unwrap();
        let h = if padic_hyper::rational::valuation(&x, p).map_or(true, |v| v > 0) { int(1) } else { x.clone() };
        prop_assert!(g1.agreement(&g.mul_rational(&-h)) >= 6);
    }

    #[test]
    fn gamma_symbol_is_path_independent(p in prime(), n in 1i64..12, d in prop::sample::select(vec![2i64, 4, 8, 17, 19])) {
        let x = rat(n.rem_euclid(d), d);
        let (y, _) = padic_hyper::hypergeo::prime_step(&x, p).unwrap();
        let pair = GammaPair::new(x, y, p).unwrap();
        prop_assert!(symbol_reduction_independence_check(&pair, p, 5).unwrap() >= 5);
        prop_assert_eq!(gamma_symbol(&pair, p, 5).unwrap().pi_exponent() as i64, pair.mu.rem_euclid(p as i64 - 1));
    }
}
