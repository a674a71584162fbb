//! `phyper`: p-adic hypergeometric computations and checks with JSON reports.

mod report;
mod suite;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use padic_hyper::frobenius::{
    alpha::{alpha_entry, alpha_phi_consistency_check, phi_ratio},
    kummer::kummer_solution_identity_check,
    frobenius_matrix_series, splitting_case, supersingular_poly, xi_closed_form, FrobeniusLifting,
};
use padic_hyper::gamma::{gamma_p, gamma_symbol, GammaPair};
use padic_hyper::hypergeo::{hyper_truncated, orbit, ConditionReport, ParamTriple, SingularPoint};
use padic_hyper::rational::{parse_list, parse_rational};
use padic_hyper::unitroot::{dwork_ratio, kd_verify, xi_ratio_identity_check, young_verify, SpecialValueReport, Verdict};
use padic_hyper::{Error, Rational};
use report::Report;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "phyper", version, about = "p-adic hypergeometric functions and their special values")]
struct Cli {
    #[arg(long, global = true, env = "PHYPER_PRIME", default_value_t = 7)]
    prime: u64,
    /// Absolute p-adic precision N.
    #[arg(long = "prec", global = true, env = "PHYPER_PREC", default_value_t = 6)]
    prec: i64,
    /// Series order M.
    #[arg(long, global = true, env = "PHYPER_ORDER", default_value_t = 30)]
    order: usize,
    #[arg(long, global = true, env = "PHYPER_S_MAX", default_value_t = 4)]
    s_max: u32,
    #[arg(long, global = true, env = "PHYPER_F_MAX", default_value_t = 8)]
    f_max: usize,
    #[arg(long, global = true, env = "PHYPER_OUTPUT", value_enum, default_value = "json")]
    output: Output,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Morita's Γ_p(x).
    Gammap { x: String },
    /// Dwork's γ_p(x, y), with p·y − x an integer.
    Gsymbol { x: String, y: String },
    /// Coefficients of F(a, b; c; λ) up to λ^M.
    Hyper {
        #[arg(long)]
        params: String,
    },
    /// Orbit of the prime map a ↦ a′.
    Orbit {
        #[arg(long)]
        params: String,
    },
    /// ξ_j^{(z)}(a, b); b defaults to a′.
    Xi {
        #[arg(long)]
        params: String,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value = "0")]
        point: String,
        #[arg(long, default_value_t = 1)]
        index: usize,
    },
    /// Kummer identity 9, 5 or 11 to order M.
    Kummer {
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 9)]
        which: u32,
    },
    /// α_i^{(z)}(a, e_k) against the φ ratio.
    Alpha {
        #[arg(long, default_value = "0")]
        point: String,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Frobenius matrix at the origin for (a, a′).
    Frobmat {
        #[arg(long)]
        params: String,
    },
    /// Truncation ratios of F(a;λ)/F(a′;λ^p).
    Ratio {
        #[arg(long)]
        params: String,
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// Koblitz–Diamond value at λ = 1.
    Kd {
        #[arg(long)]
        params: String,
    },
    /// Young's value at λ = −1 for the pair (a, b).
    Young {
        #[arg(long)]
        pair: String,
    },
    /// Unit-root ratio, ξ ratio and Γ_p product at λ = 1.
    Identity {
        #[arg(long)]
        params: String,
    },
    /// Runs the verification batteries.
    Suite {
        #[arg(long)]
        quick: bool,
        #[arg(long, env = "PHYPER_SEED", default_value_t = 20240607)]
        seed: u64,
    },
}

/// Failures that mean "the check did not hold" rather than bad input.
fn is_verification_error(e: &Error) -> bool {
    matches!(e, Error::PiExponent(_) | Error::NonConvergence(_) | Error::PrecisionExhausted(_))
}

fn triple(s: &str) -> Result<ParamTriple, Error> {
    s.parse()
}

fn conditions(c: &Option<ConditionReport>) -> Value {
    match c {
        None => Value::Null,
        Some(c) => json!({
            "kind": c.kind.to_string(),
            "passed": c.passed,
            "first_failure": c.first_failure(),
            "period": c.orbit.period,
            "preperiod": c.orbit.preperiod,
            "mu": c.orbit.mu_sequence,
        }),
    }
}

fn special_value(mut r: Report, s: &SpecialValueReport) -> Report {
    r.conditions = json!({
        "modified": conditions(&s.conditions),
        "intro": conditions(&s.intro_conditions),
    });
    r.values = json!({
        "ratio": s.ratio.as_ref().map(|c| report::padic(&c.certified_value)),
        "rhs": s.rhs.as_ref().map(report::padic),
        "note": s.note,
    });
    r.agreements = json!({
        "ratio_rhs": s.agreement,
        "ratio_levels": s.ratio.as_ref().map(|c| c.agreement_exponent),
        "threshold": s.threshold,
    });
    r.verdict = match s.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::NotApplicable => "not_applicable",
    }
    .into();
    r
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let p = cli.prime;
    let n = cli.prec;
    let m = cli.order;
    if n < 1 || m < 1 || cli.s_max < 1 || cli.f_max < 1 {
        return Err(Error::OutOfRange("precision, order, s_max and f_max must be at least 1".into()));
    }
    padic_hyper::rational::check_prime(p)?;
    let base = json!({ "prime": p, "prec": n });
    let with = |extra: Value| {
        let mut b = base.clone();
        if let (Value::Object(b), Value::Object(e)) = (&mut b, extra) {
            b.extend(e);
        }
        b
    };
    Ok(match &cli.command {
        Command::Gammap { x } => {
            let v = gamma_p(&parse_rational(x)?, p, n)?;
            let mut r = Report::new("gammap", with(json!({ "x": x })));
            r.values = json!({ "gamma_p": report::padic(&v) });
            r
        }
        Command::Gsymbol { x, y } => {
            let pair = GammaPair::new(parse_rational(x)?, parse_rational(y)?, p)?;
            let v = gamma_symbol(&pair, p, n)?;
            let mut r = Report::new("gsymbol", with(json!({ "x": x, "y": y })));
            r.values = json!({ "mu": pair.mu, "gamma_symbol": report::pi_element(&v) });
            r
        }
        Command::Hyper { params } => {
            let a = triple(params)?;
            let s = hyper_truncated(&a.0[0], &a.0[1], &a.0[2], m)?;
            let mut r = Report::new("hyper", json!({ "params": params, "order": m }));
            r.values = json!({ "coefficients": report::rationals(s.coeffs()) });
            r
        }
        Command::Orbit { params } => {
            let o = orbit(&parse_list(params)?, p, cli.f_max)?;
            let mut r = Report::new("orbit", json!({ "prime": p, "params": params, "f_max": cli.f_max }));
            r.values = json!({
                "sequence": o.sequence.iter().map(|s| report::rationals(s)).collect::<Vec<_>>(),
                "mu": o.mu_sequence,
                "period": o.period,
                "preperiod": o.preperiod,
            });
            r
        }
        Command::Xi { params, b, point, index } => {
            let a = triple(params)?;
            let b = match b {
                Some(b) => triple(b)?,
                None => a.prime_image(p)?.0,
            };
            let z: SingularPoint = point.parse()?;
            let v = xi_closed_form(z, *index, &a, &b, p, n)?;
            let mut r = Report::new("xi", with(json!({ "params": params, "b": b.to_string(), "point": z.to_string(), "index": index })));
            r.values = json!({
                "xi": report::pi_element(&v.value),
                "sign_exponent": v.sign_exponent,
                "factors": v.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            });
            r
        }
        Command::Kummer { params, which } => {
            let c = kummer_solution_identity_check(*which, &triple(params)?, m)?;
            let mut r = Report::new("kummer", json!({ "params": params, "which": which, "order": m }));
            r.values = json!({ "row_signs": c.row_signs });
            r.agreements = json!({ "verbatim_order": c.verbatim_order, "normalized_order": c.normalized_order });
            r.verdict(c.holds(m))
        }
        Command::Alpha { point, index, k } => {
            let z: SingularPoint = point.parse()?;
            let entry = alpha_entry(z, *index, *k)?;
            let phi = phi_ratio(z, *index, *k)?;
            let ok = alpha_phi_consistency_check(z, *index, *k)?;
            let mut r = Report::new("alpha", json!({ "point": z.to_string(), "index": index, "k": k }));
            r.values = json!({ "alpha": entry.to_string(), "phi_ratio": phi.to_string() });
            r.verdict(ok)
        }
        Command::Frobmat { params } => {
            let a = triple(params)?;
            let (b, _) = a.prime_image(p)?;
            let f = frobenius_matrix_series(&a, &b, &FrobeniusLifting::standard(p)?, m, n)?;
            let case = splitting_case(f.mu, p)?;
            let mut r = Report::new("frobmat", with(json!({ "params": params, "order": m })));
            let entries: Vec<Vec<Value>> = (0..2)
                .map(|i| (0..2).map(|j| json!(f.matrix.e[i][j].coeffs().iter().map(report::padic).collect::<Vec<_>>())).collect())
                .collect();
            r.values = json!({
                "b": b.to_string(),
                "mu": f.mu,
                "case": case.to_string(),
                "supersingular_poly": supersingular_poly(f.mu, p)?,
                "guard": f.guard,
                "min_valuation": f.min_valuation,
                "matrix": entries,
            });
            r.agreements = json!({ "certified_precision": f.certified_precision });
            r.verdict(f.has_splitting_shape(case))
        }
        Command::Ratio { params, lambda } => {
            let c = dwork_ratio(&triple(params)?, &parse_rational(lambda)?, p, cli.s_max, n)?;
            let mut r = Report::new("ratio", with(json!({ "params": params, "lambda": lambda, "s_max": cli.s_max })));
            r.values = json!({
                "levels": c.levels.iter().map(|(s, v)| json!({ "s": s, "value": report::padic(v) })).collect::<Vec<_>>(),
                "certified": report::padic(&c.certified_value),
            });
            r.agreements = json!({ "agreement_exponent": c.agreement_exponent });
            r
        }
        Command::Kd { params } => {
            let s = kd_verify(&triple(params)?, p, n, cli.s_max, cli.f_max);
            special_value(Report::new("kd", with(json!({ "params": params, "s_max": cli.s_max }))), &s)
        }
        Command::Young { pair } => {
            let v = parse_list(pair)?;
            let [a, b]: [Rational; 2] = v.try_into().map_err(|_| Error::Parse(format!("expected two rationals in {pair:?}")))?;
            let s = young_verify(&a, &b, p, n, cli.s_max, cli.f_max);
            special_value(Report::new("young", with(json!({ "pair": pair, "s_max": cli.s_max }))), &s)
        }
        Command::Identity { params } => {
            let x = xi_ratio_identity_check(&triple(params)?, p, n, cli.s_max, cli.f_max)?;
            let threshold = (cli.s_max as i64).min(n);
            let mut r = Report::new("identity", with(json!({ "params": params, "s_max": cli.s_max })));
            r.conditions = json!({ "t2_and_kd": x.conditions_pass });
            r.values = json!({
                "ratio": report::padic(&x.ratio.certified_value),
                "xi_expression": report::padic(&x.xi_expression),
                "rhs": report::padic(&x.rhs),
                "pi_exponent": x.pi_exponent,
                "replay": { "xi_side": x.replay.xi_side.to_string(), "rhs": x.replay.rhs.to_string(), "matches": x.replay.matches },
            });
            r.agreements = json!({
                "ratio_xi": x.agreements[0],
                "ratio_rhs": x.agreements[1],
                "xi_rhs": x.agreements[2],
                "threshold": threshold,
            });
            r.verdict(x.passed(threshold))
        }
        Command::Suite { quick, seed } => suite::run(*quick, *seed),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_verification_error(&e) { 1 } else { 2 });
        }
    };
    let body = match cli.output {
        Output::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Output::Text => report.to_text(),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let _ = std::io::stdout().write_all(body.as_bytes());
    ExitCode::from(if report.passed() { 0 } else { 1 })
}
