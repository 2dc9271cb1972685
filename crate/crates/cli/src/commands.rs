use std::sync::Arc;

use ks_core::dynamics::{
    classify, entropy, fixed_count, k_groups, least_period_count, ln_big, ClassificationVerdict, Outcome, Witness,
};
use ks_core::exactalg::{Context, GroupElement, IntPolynomial, Parameter};
use ks_core::repr::{
    build_family, default_test_elements, default_x_schedule, separation_check, verify_covariance, verify_relation,
};
use ks_core::spectral::{commutator_norm, dirac_commuting, dirac_mixed, summability_report, QMAX_LIMIT};
use ks_core::torus::Angle;
use ks_core::walk::{ball_sizes, decay_fit, mc_return, return_probabilities, StepLaw, EXACT_T_LIMIT};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{ClassifyArgs, DiracArgs, InvariantsArgs, KgroupsArgs, Mode, RepArgs, Task, WalkArgs};
use crate::polyparse::{parse_parameter, ParamError};
use crate::report::{Report, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Core(#[from] ks_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid config: {0}")]
    Config(String),
}

impl CliError {
    /// 3 for exceeded guards, 2 for every other validation failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(ks_core::Error::GuardExceeded { .. })
            | CliError::Param(ParamError::Invalid(ks_core::Error::GuardExceeded { .. })) => 3,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn guard(what: &str, value: usize, limit: usize) -> CliError {
    CliError::Core(ks_core::Error::GuardExceeded {
        what: what.into(),
        value: value.to_string(),
        limit: limit.to_string(),
    })
}

fn algebraic(src: &str) -> Result<IntPolynomial> {
    match parse_parameter(src)? {
        Parameter::Algebraic(q) => Ok(q),
        Parameter::Transcendental => {
            Err(ks_core::Error::Unsupported("this subcommand needs an algebraic parameter".into()).into())
        }
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub fn run(task: &Task) -> Result<Report> {
    match task {
        Task::Invariants(a) => invariants(a),
        Task::Classify(a) => classify_cmd(a),
        Task::Rep(a) => rep(a),
        Task::Dirac(a) => dirac(a),
        Task::Walk(a) => walk(a),
        Task::Kgroups(a) => kgroups(a),
        Task::Selftest => Ok(selftest()),
    }
}

fn invariants(args: &InvariantsArgs) -> Result<Report> {
    let param = parse_parameter(&args.poly)?;
    if args.qmax == 0 {
        return Err(ks_core::Error::ZeroPeriod.into());
    }
    if args.qmax > QMAX_LIMIT {
        return Err(guard("qmax", args.qmax, QMAX_LIMIT));
    }
    let h = entropy(&param, args.tol)?;
    let mut table = Table::new("periodic points of the dual solenoid", &["q", "c_q", "least_period", "log(c_q)/q"]);
    let mut plot = Table::new("entropy growth: q, log(c_q)/q", &["q", "rate"]);
    let Parameter::Algebraic(q_poly) = &param else {
        let mut report = Report::new(
            json!({ "parameter": "transcendental", "counts": Value::Null, "entropy": h }),
            table,
        )
        .provenance("entropy", "infinite for every transcendental parameter");
        report.notes.push("every c_q is infinite for a transcendental parameter".into());
        report.notes.push("entropy is +inf and serialized as null".into());
        report.plot = Some(plot);
        return Ok(report);
    };
    let rows = (1..=args.qmax)
        .into_par_iter()
        .map(|q| Ok((q, fixed_count(q_poly, q)?, least_period_count(q_poly, q)?)))
        .collect::<std::result::Result<Vec<(usize, BigInt, BigInt)>, ks_core::Error>>()?;
    let mut counts = Vec::new();
    for (q, c, lp) in &rows {
        let rate = ln_big(c) / *q as f64;
        counts.push(json!({
            "q": q,
            "fixed_points": c.to_string(),
            "least_period_points": lp.to_string(),
            "growth_rate": rate,
        }));
        table.push(vec![q.to_string(), c.to_string(), lp.to_string(), fmt_f64(rate)]);
        plot.push(vec![q.to_string(), fmt_f64(rate)]);
    }
    let results = json!({
        "parameter": q_poly.to_string(),
        "coefficients": q_poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "degree": q_poly.degree(),
        "irreducibility": q_poly.irreducibility(),
        "reciprocal": q_poly.reciprocal().to_string(),
        "counts": counts,
        "entropy": h,
    });
    let mut report = Report::new(results, table)
        .provenance("counts.fixed_points", "exact |Res(Q, x^q - 1)| by fraction-free Sylvester determinant")
        .provenance("counts.least_period_points", "exact Moebius inversion of fixed_points over divisors of q")
        .provenance("counts.growth_rate", "log(c_q)/q in double precision")
        .provenance("entropy", "log|q_d| + sum over roots outside the unit circle of log|root|; Aberth roots with inclusion radii");
    report.notes.extend(h.notes.iter().cloned());
    report.plot = Some(plot);
    Ok(report)
}

fn witness_text(v: &ClassificationVerdict) -> (String, String) {
    match &v.outcome {
        Outcome::Distinguished { witness: Witness::PeriodicCount { q, left, right } } => {
            ("distinguished".into(), format!("c_{q}: {left} vs {right}"))
        }
        Outcome::Distinguished { witness: Witness::EntropyGap { left, right, error_bound } } => {
            ("distinguished".into(), format!("entropy {left} vs {right} (error bound {error_bound:e})"))
        }
        Outcome::IndistinguishableUpTo { qmax: Some(q) } => ("indistinguishable".into(), format!("c_q agree for q <= {q}")),
        Outcome::IndistinguishableUpTo { qmax: None } => ("indistinguishable".into(), "for every q".into()),
    }
}

fn classify_cmd(args: &ClassifyArgs) -> Result<Report> {
    let left = parse_parameter(&args.left)?;
    let right = parse_parameter(&args.right)?;
    if args.qmax > QMAX_LIMIT {
        return Err(guard("qmax", args.qmax, QMAX_LIMIT));
    }
    let verdict = classify(&left, &right, args.qmax, args.tol)?;
    let (outcome, witness) = witness_text(&verdict);
    let mut table = Table::new("classification", &["left", "right", "outcome", "witness"]);
    table.push(vec![left.to_string(), right.to_string(), outcome, witness]);
    let mut report = Report::new(
        json!({ "left": left.to_string(), "right": right.to_string(), "verdict": verdict }),
        table,
    )
    .provenance("verdict", "first q with differing exact c_q, else entropy comparison within the combined error bound");
    report.notes.extend(verdict.notes.iter().cloned());
    Ok(report)
}

/// `"1/4"`, `"0"` (exact) or `"0.618"` (floating point), as a fraction of a turn.
fn parse_angle(s: &str) -> Result<Angle> {
    let s = s.trim();
    let bad = || CliError::Config(format!("cannot read {s:?} as an angle (use n/d or a decimal)"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Angle::ratio(n, d));
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(Angle::ratio(n, 1));
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    if !x.is_finite() {
        return Err(bad());
    }
    Ok(Angle::approx(x))
}

fn rep(args: &RepArgs) -> Result<Report> {
    let q_poly = algebraic(&args.poly)?;
    let ctx = Context::algebraic(q_poly.clone());
    let xs = args.x.iter().map(|s| parse_angle(s)).collect::<Result<Vec<_>>>()?;
    let family = build_family(&ctx, args.qmax, &xs)?;
    let tests = default_test_elements(&ctx);
    let bs = q_poly.baumslag_solitar_m().and_then(|m| m.to_i64());
    let mut table = Table::new(
        "covariant blocks",
        &["q", "character", "x", "covariance", "unitarity", "relation"],
    );
    let mut blocks = Vec::new();
    let mut passed = true;
    for fb in family.blocks() {
        let cov = verify_covariance(&fb.rep, &tests)?;
        let rel = bs.map(|m| verify_relation(&fb.rep, m)).transpose()?;
        passed &= cov.passes(args.tol) && rel.as_ref().is_none_or(|r| r.deviation <= args.tol);
        let chi = fb.rep.character().to_string();
        let x = xs[fb.x_index].to_string();
        table.push(vec![
            fb.q.to_string(),
            chi.clone(),
            x.clone(),
            fmt_f64(cov.max_deviation),
            fmt_f64(cov.unitarity_error),
            rel.as_ref().map_or("-".into(), |r| fmt_f64(r.deviation)),
        ]);
        blocks.push(json!({
            "q": fb.q,
            "character": chi,
            "x": x,
            "covariance": cov,
            "relation": rel,
        }));
    }
    let probes: Vec<GroupElement> = ["", "u", "v", "uu", "vu"]
        .iter()
        .map(|w| GroupElement::word(&ctx, w))
        .collect::<std::result::Result<_, _>>()?;
    let separation = separation_check(&family, &probes)?;
    let results = json!({
        "parameter": q_poly.to_string(),
        "qmax": family.max_q(),
        "total_dim": family.total_dim(),
        "blocks": blocks,
        "separation": { "probes": ["e", "u", "v", "u^2", "vu"], "report": separation },
    });
    let mut report = Report::new(results, table)
        .provenance("blocks.covariance", "u* rho(b) u against rho(a^-1 b) on test elements a^n (|n| <= 2) and 1 + a; exact when all phases are rational")
        .provenance("blocks.relation", "Pi(u) Pi(v) Pi(u)^-1 against Pi(v)^m, only for parameters x - m");
    if bs.is_none() {
        report.notes.push("relation check skipped: parameter is not of the form x - m".into());
    }
    report.passed = passed;
    Ok(report)
}

fn dirac(args: &DiracArgs) -> Result<Report> {
    let q_poly = algebraic(&args.poly)?;
    let param = Parameter::Algebraic(q_poly.clone());
    let spec = match args.mode {
        Mode::Commuting => dirac_commuting(&param, args.p, args.qmax)?,
        Mode::Mixed => dirac_mixed(&param, args.p, args.qmax)?,
    };
    let exponent = args.exponent.unwrap_or(args.p);
    let summability = summability_report(&spec, exponent)?;
    let ctx = Context::algebraic(q_poly.clone());
    let family_qmax = args.family_qmax.min(args.qmax);
    let family = build_family(&ctx, family_qmax, &default_x_schedule())?;
    let u = commutator_norm(&spec, &family, &GroupElement::u(&ctx))?;
    let v = commutator_norm(&spec, &family, &GroupElement::v(&ctx))?;
    let mut table = Table::new("Dirac blocks", &["q", "copies", "offset", "increment", "partial_sum"]);
    let mut plot = Table::new("summability: q, partial sum", &["q", "partial_sum"]);
    for ((block, inc), (q, sum)) in spec.blocks.iter().zip(&summability.increments).zip(&summability.partial_sums) {
        table.push(vec![q.to_string(), block.copies.to_string(), fmt_f64(block.offset), fmt_f64(*inc), fmt_f64(*sum)]);
        plot.push(vec![q.to_string(), fmt_f64(*sum)]);
    }
    let results = json!({
        "parameter": q_poly.to_string(),
        "spec": spec,
        "summability": summability,
        "commutators": {
            "family_qmax": family_qmax,
            "u": u.supremum,
            "v": v.supremum,
        },
    });
    let mut report = Report::new(results, table)
        .provenance("spec", "offsets (q * copies * 2^q)^(1/p), strictly increasing; spreads 0 (commuting) or 1 + min(j, q - j) (mixed)")
        .provenance("summability", "compensated double-precision partial sums of copies * sum (1 + lambda^2)^(-exponent/2)")
        .provenance("commutators", "exact norms of [D, Pi(g)] on the monomial blocks up to family_qmax");
    report.notes.push(summability.multiplicity_rule.clone());
    report.notes.push(format!(
        "||[D, u]|| = {}, ||[D, v]|| = {} on blocks with q <= {family_qmax}",
        u.supremum, v.supremum
    ));
    report.notes.push(format!("verdict at exponent {exponent}: {:?}", summability.verdict));
    report.plot = Some(plot);
    Ok(report)
}

fn walk(args: &WalkArgs) -> Result<Report> {
    let (ctx, label): (Arc<Context>, String) = if args.control {
        (Context::z2_control(), "Z^2 control".into())
    } else {
        let param = parse_parameter(args.poly.as_deref().unwrap_or_default())?;
        let label = param.to_string();
        (Context::new(param), label)
    };
    let law = if args.lazy { StepLaw::LAZY } else { StepLaw::SIMPLE };
    if args.tmax > EXACT_T_LIMIT && args.samples == 0 {
        return Err(guard("exact walk length (pass --samples for Monte Carlo)", args.tmax, EXACT_T_LIMIT));
    }
    let exact_tmax = args.tmax.min(EXACT_T_LIMIT);
    let exact = return_probabilities(&ctx, exact_tmax, law)?;
    let balls = ball_sizes(&ctx, args.radius)?;
    let mc = if args.samples > 0 {
        (1..=args.tmax)
            .map(|t| mc_return(&ctx, t, args.samples, args.seed, law))
            .collect::<std::result::Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let prob = |t: usize| -> Option<f64> {
        exact.get(t).and_then(|p| p.to_f64()).or_else(|| mc.get(t.wrapping_sub(1)).map(|e| e.estimate))
    };
    let mut table = Table::new("return probabilities", &["t", "p_t(e)", "p_t(e) decimal", "mc_estimate", "mc_sigma"]);
    for t in 0..=args.tmax {
        let ex = exact.get(t);
        let m = t.checked_sub(1).and_then(|i| mc.get(i));
        table.push(vec![
            t.to_string(),
            ex.map_or("-".into(), BigRational::to_string),
            ex.and_then(|p| p.to_f64()).map_or("-".into(), fmt_f64),
            m.map_or("-".into(), |e| fmt_f64(e.estimate)),
            m.map_or("-".into(), |e| fmt_f64(e.sigma)),
        ]);
    }
    let returns: Vec<(f64, f64)> =
        (1..=args.tmax / 2).filter_map(|t| prob(2 * t).map(|p| (t as f64, p))).collect();
    let mut notes = Vec::new();
    let fit = match decay_fit(&returns) {
        Ok(f) => Some(f),
        Err(e) => {
            notes.push(format!("decay fit skipped: {e}"));
            None
        }
    };
    let mut plot = Table::new("walk decay: log t, log(-log p_2t)", &["log_t", "log_neg_log_p"]);
    for &(t, p) in fit.as_ref().map_or(&[][..], |f| &f.samples[..]) {
        plot.push(vec![fmt_f64(t.ln()), fmt_f64((-p.ln()).ln())]);
    }
    if fit.as_ref().is_some_and(|f| f.poor_fit) {
        notes.push("local slope drifts between the halves of the data; the fitted exponent is not stable".into());
    }
    notes.push("at these lengths the fitted exponent describes the pre-asymptotic regime only".into());
    if args.tmax > EXACT_T_LIMIT {
        notes.push(format!("exact values stop at t = {EXACT_T_LIMIT}; later rows are Monte Carlo only"));
    }
    let ratios: Vec<f64> = balls.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let results = json!({
        "group": label,
        "lazy": args.lazy,
        "exact": exact.iter().enumerate().map(|(t, p)| json!({
            "t": t,
            "probability": p.to_string(),
            "decimal": p.to_f64(),
        })).collect::<Vec<_>>(),
        "monte_carlo": mc,
        "balls": { "sizes": balls, "ratios": ratios },
        "decay_fit": fit,
    });
    let mut report = Report::new(results, table)
        .provenance("exact", "integer path counts over (4 or 8)^t by repeated convolution, exact word problem")
        .provenance("monte_carlo", "ChaCha8 substreams of 2^14 samples each, seeded by --seed; identity test exact")
        .provenance("balls", "breadth-first search in the word metric of u^{+-1}, v^{+-1}")
        .provenance("decay_fit", "least squares of log(-log p_2t) against log t");
    report.notes = notes;
    report.plot = Some(plot);
    Ok(report)
}

fn kgroups(args: &KgroupsArgs) -> Result<Report> {
    let k = k_groups(args.m, args.l)?;
    let mut table = Table::new("K-theory", &["m", "l", "K0", "K1"]);
    table.push(vec![args.m.to_string(), args.l.to_string(), k.k0(), k.k1()]);
    let results = json!({
        "m": args.m,
        "l": args.l,
        "k0": k.k0(),
        "k1": k.k1(),
        "groups": k,
        "display": k.to_string(),
    });
    Ok(Report::new(results, table).provenance("groups", "closed form K0 = Z, K1 = Z + Z_|l - m| for coprime m, l"))
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> std::result::Result<String, String>) -> Check {
    match f() {
        Ok(detail) => Check { name, passed: true, detail },
        Err(detail) => Check { name, passed: false, detail },
    }
}

fn selftest() -> Report {
    let poly = |c: &[i64]| IntPolynomial::from_i64(c).map_err(|e| e.to_string());
    let checks = vec![
        check("counts of x - 2", || {
            let q_poly = poly(&[-2, 1])?;
            for q in 1..=10 {
                let c = fixed_count(&q_poly, q).map_err(|e| e.to_string())?;
                if c != BigInt::from((1u64 << q) - 1) {
                    return Err(format!("c_{q} = {c}"));
                }
            }
            Ok("c_q = 2^q - 1 for q <= 10".into())
        }),
        check("reciprocal invariance", || {
            let (a, b) = (poly(&[-1, -2, 1])?, poly(&[-3, 1])?);
            for p in [a, b] {
                for q in 1..=8 {
                    if fixed_count(&p, q) != fixed_count(&p.reciprocal(), q) {
                        return Err(format!("{p} at q = {q}"));
                    }
                }
            }
            Ok("x^2 - 2x - 1 and x - 3, q <= 8".into())
        }),
        check("entropy of x - 2", || {
            let h = entropy(&Parameter::Algebraic(poly(&[-2, 1])?), 1e-12).map_err(|e| e.to_string())?.value;
            let err = (h - 2f64.ln()).abs();
            (err < 1e-9).then(|| format!("error {err:e}")).ok_or(format!("entropy {h}"))
        }),
        check("K-groups of 1/3", || {
            let k = k_groups(1, 3).map_err(|e| e.to_string())?;
            (k.to_string() == "K0 = ℤ, K1 = ℤ ⊕ ℤ_2").then(|| k.to_string()).ok_or(k.to_string())
        }),
        check("covariance of a period-3 block", || {
            let ctx = Context::algebraic(poly(&[-2, 1])?);
            let family = build_family(&ctx, 3, &[Angle::ratio(1, 4)]).map_err(|e| e.to_string())?;
            let tests = default_test_elements(&ctx);
            for fb in family.blocks() {
                let r = verify_covariance(&fb.rep, &tests).map_err(|e| e.to_string())?;
                if !(r.exact && r.max_deviation == 0.0) {
                    return Err(format!("q = {}: deviation {}", fb.q, r.max_deviation));
                }
            }
            Ok(format!("{} blocks exact", family.blocks().len()))
        }),
        check("two-step return", || {
            let ctx = Context::algebraic(poly(&[-2, 1])?);
            let p = return_probabilities(&ctx, 2, StepLaw::SIMPLE).map_err(|e| e.to_string())?;
            let quarter = BigRational::new(1.into(), 4.into());
            (p[2] == quarter && p[1].is_zero()).then(|| "p_2(e) = 1/4".into()).ok_or(format!("p_2(e) = {}", p[2]))
        }),
    ];
    let mut table = Table::new("self test", &["check", "status", "detail"]);
    let mut rows = Vec::new();
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        table.push(vec![c.name.into(), status.into(), c.detail.clone()]);
        rows.push(json!({ "check": c.name, "passed": c.passed, "detail": c.detail }));
    }
    let mut report = Report::new(json!({ "checks": rows }), table);
    report.passed = checks.iter().all(|c| c.passed);
    report
}
