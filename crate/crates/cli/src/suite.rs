use padic_hyper::frobenius::alpha::alpha_phi_consistency_check;
use padic_hyper::frobenius::kummer::kummer_solution_identity_check;
use padic_hyper::frobenius::{
    contiguity_frobenius_compat_check, frobenius_matrix_series, relative_agreement, splitting_case, xi_closed_form,
    xi_modular_check, xi_via_pullback, FrobeniusLifting, SplittingCase,
};
use padic_hyper::gamma::{gamma_p_reflection_check, symbol_reduction_independence_check, GammaPair};
use padic_hyper::hypergeo::{check_ode, ParamTriple, SingularPoint};
use padic_hyper::rational::{int, rat};
use padic_hyper::unitroot::{
    kd_battery, kd_search, kd_verify, unit_root_from_frobenius, series_agreement, xi_ratio_identity_check, young_battery,
    young_search, young_verify, Verdict,
};
use padic_hyper::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Report;

const N: i64 = 6;

struct Case {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn case(name: &'static str, r: Result<(bool, String), Error>) -> Case {
    match r {
        Ok((passed, detail)) => Case { name, passed, detail },
        Err(e) => Case { name, passed: false, detail: format!("error: {e}") },
    }
}

fn fraction(rng: &mut ChaCha8Rng, p: u64) -> Rational {
    fraction_from(rng, p, 1)
}

fn fraction_from(rng: &mut ChaCha8Rng, p: u64, min_den: i64) -> Rational {
    loop {
        let d = rng.gen_range(min_den..=12i64);
        if d as u64 % p != 0 {
            return rat(rng.gen_range(-2 * d..2 * d), d);
        }
    }
}

fn triple(rng: &mut ChaCha8Rng, p: u64) -> ParamTriple {
    ParamTriple::new(fraction(rng, p), fraction(rng, p), fraction(rng, p))
}

/// A triple with no integral exponent difference and no integral linear form
/// among a_i, a_3 − a_i, a_1 + a_2 − a_3.
fn generic_triple(rng: &mut ChaCha8Rng, p: u64) -> ParamTriple {
    loop {
        let a = triple(rng, p);
        let [a1, a2, a3] = &a.0;
        let diffs = [a1.clone(), a2.clone(), a3.clone(), a3 - a1, a3 - a2, a1 + a2 - a3, a1 - a2];
        if diffs.iter().all(|d| !d.is_integer()) {
            return a;
        }
    }
}

fn reflection(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, String), Error> {
    let mut worst = N;
    for p in [5, 7, 13] {
        for _ in 0..samples {
            worst = worst.min(gamma_p_reflection_check(&fraction(rng, p), p, N)?);
        }
    }
    Ok((worst >= N, format!("min agreement {worst}")))
}

fn symbol_paths(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, String), Error> {
    let mut worst = N;
    for _ in 0..samples {
        let p = [5u64, 7, 11][rng.gen_range(0..3)];
        // integral y can put a classical pole on the canonical path
        let y = loop {
            let y = fraction_from(rng, p, 2);
            if !y.is_integer() {
                break y;
            }
        };
        let mu = rng.gen_range(-3 * p as i64..=3 * p as i64);
        let x = &y * int(p as i64) - int(mu);
        worst = worst.min(symbol_reduction_independence_check(&GammaPair::new(x, y, p)?, p, N)?);
    }
    Ok((worst >= N, format!("min agreement {worst}")))
}

fn ode(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, String), Error> {
    let mut worst = i64::MAX;
    for _ in 0..samples {
        let a = generic_triple(rng, 7);
        for z in SingularPoint::ALL {
            worst = worst.min(check_ode(z, &a, 30)?);
        }
    }
    Ok((worst > 30, format!("first residual order {worst}")))
}

fn kummer(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, String), Error> {
    for _ in 0..samples {
        let a = generic_triple(rng, 7);
        for m in [9, 5, 11] {
            let c = kummer_solution_identity_check(m, &a, 30)?;
            if !c.holds(30) {
                return Ok((false, format!("identity {m} fails at order {} for {a}", c.normalized_order)));
            }
        }
    }
    Ok((true, "identities 9, 5, 11 hold to order 30".into()))
}

fn alpha_tables() -> Result<(bool, String), Error> {
    let mut good = 0;
    for z in SingularPoint::ALL {
        for i in 1..=2 {
            for k in 1..=3 {
                good += alpha_phi_consistency_check(z, i, k)? as usize;
            }
        }
    }
    Ok((good == 18, format!("{good}/18 entries")))
}

fn xi_relations(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, String), Error> {
    let p = 7;
    let units = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut worst = N;
    for _ in 0..samples {
        let a = generic_triple(rng, p);
        let (b, _) = a.prime_image(p)?;
        let u = units[rng.gen_range(0..3)];
        let v = units[rng.gen_range(0..3)];
        for z in SingularPoint::ALL {
            for i in 1..=2 {
                worst = worst.min(xi_modular_check(z, i, &a, &b, u, v, p, N)?);
            }
        }
        for z in [SingularPoint::One, SingularPoint::Infinity] {
            for j in 1..=2 {
                let x = xi_closed_form(z, j, &a, &b, p, N)?.value;
                let y = xi_via_pullback(z, j, &a, &b, p, N)?.value;
                worst = worst.min(relative_agreement(&x, &y, N));
            }
        }
    }
    Ok((worst >= N, format!("min agreement {worst}")))
}

fn special_values() -> Result<(bool, String), Error> {
    let kd = kd_verify(&"1/6,1/6,5/6".parse()?, 7, N, 4, 8);
    let young = young_verify(&rat(1, 3), &rat(2, 3), 7, N, 4, 8);
    let id = xi_ratio_identity_check(&"1/6,1/6,5/6".parse()?, 7, N, 4, 8)?;
    let ok = kd.verdict == Verdict::Pass && young.verdict == Verdict::Pass && id.passed(4);
    Ok((ok, format!("kd {} young {} identity {:?}", kd.agreement, young.agreement, id.agreements)))
}

fn unit_root() -> Result<(bool, String), Error> {
    let a: ParamTriple = "1/6,1/6,5/6".parse()?;
    let (fp, eta) = unit_root_from_frobenius(&a, 7, 20, 4, 20)?;
    let agree = series_agreement(&fp.eta, &eta, 4);
    Ok((agree >= 4, format!("{} iterations, steps {:?}, agreement {agree}", fp.iterations, fp.step_valuations)))
}

fn frobenius() -> Result<(bool, String), Error> {
    let lifting = FrobeniusLifting::standard(7)?;
    let mut detail = Vec::new();
    let mut ok = true;
    for (s, want) in [("1/6,1/6,5/6", SplittingCase::Case2), ("1/2,2/3,1/6", SplittingCase::Case1)] {
        let a: ParamTriple = s.parse()?;
        let (b, _) = a.prime_image(7)?;
        let f = frobenius_matrix_series(&a, &b, &lifting, 49, N)?;
        let case = splitting_case(f.mu, 7)?;
        ok &= case == want && f.has_splitting_shape(case) && f.certified_precision >= 3;
        detail.push(format!("{s}: {case}, certified {}", f.certified_precision));
    }
    let a: ParamTriple = "1/6,1/4,5/6".parse()?;
    let (b, _) = a.prime_image(7)?;
    let c = contiguity_frobenius_compat_check(&a, &b, [1, 0, 0], [1, 0, 0], 7, 15, N)?;
    ok &= c.residual_order > 15;
    detail.push(format!("contiguity residual order {}", c.residual_order));
    Ok((ok, detail.join("; ")))
}

fn searches() -> Result<(bool, String), Error> {
    let mut ok = true;
    let mut detail = Vec::new();
    for p in [5, 7, 11, 13] {
        let triples = kd_search(p, 12, 8);
        let pairs = young_search(p, 12, 8);
        let kd_fail = kd_battery(&triples, p, N, 4, 8).iter().filter(|r| r.verdict != Verdict::Pass).count();
        let young_fail = young_battery(&pairs, p, N, 4, 8).iter().filter(|r| r.verdict != Verdict::Pass).count();
        ok &= kd_fail == 0 && young_fail == 0;
        detail.push(format!("p={p}: kd {}/{} young {}/{}", triples.len() - kd_fail, triples.len(), pairs.len() - young_fail, pairs.len()));
    }
    Ok((ok, detail.join("; ")))
}

pub fn run(quick: bool, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = if quick { 5 } else { 20 };
    let mut cases = vec![
        case("alpha_tables", alpha_tables()),
        case("gamma_reflection", reflection(&mut rng, samples * 5)),
        case("gamma_symbol_paths", symbol_paths(&mut rng, samples * 5)),
        case("kummer", kummer(&mut rng, samples.min(10))),
        case("ode", ode(&mut rng, samples)),
        case("special_values", special_values()),
        case("unit_root", unit_root()),
        case("xi_relations", xi_relations(&mut rng, samples)),
    ];
    if !quick {
        cases.push(case("frobenius", frobenius()));
        cases.push(case("searches", searches()));
    }
    cases.sort_by_key(|c| c.name);
    let all = cases.iter().all(|c| c.passed);
    let mut r = Report::new("suite", json!({ "quick": quick, "seed": seed }));
    r.values = Value::Object(
        cases.iter().map(|c| (c.name.to_string(), json!({ "passed": c.passed, "detail": c.detail }))).collect(),
    );
    r.verdict(all)
}
