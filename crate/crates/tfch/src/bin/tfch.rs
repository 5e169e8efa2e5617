//! Command-line front end: `solve` runs both engines and dumps solutions,
//! `table1` reproduces the published error table through the reference and
//! engine paths, `compare` reports engine-vs-printed-form discrepancies.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tfch::analysis::{
    build_error_table, export_error_csv, export_solution_csv, parse_config_text, write_solution_csv,
    CompareTarget, MethodSel, RunConfig, SolutionRow,
};
use tfch::reference::{
    ref_eval, ref_exact, ref_terms, Gammas, RefCase, RefIc, RefMethod, RefParams,
};
use tfch::{
    nim_components, nim_partial_sum, qham_components, qham_partial_sum, Equation, FracSeries,
    Grid1D, InitialCondition, NimConfig, ProblemSpec, QhamConfig, Result, TfchError,
};

#[derive(Parser)]
#[command(name = "tfch", version, about = "Series solvers for time-fractional Cahn-Hilliard equations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build NIM and q-HAM truncated series and dump u(x, t) as CSV.
    Solve(SolveArgs),
    /// Reproduce the published absolute-error table via the reference and
    /// engine paths, with their relative deviation.
    Table1(Table1Args),
    /// Compare an engine series against a printed closed form, term by term.
    Compare(CompareArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Configuration file with `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ch4 | ch6
    #[arg(long)]
    equation: Option<String>,
    /// tanh | exp
    #[arg(long)]
    ic: Option<String>,
    /// nim | qham — the engine `--orders` applies to (the other engine
    /// runs at its default order)
    #[arg(long)]
    method: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    /// Growth rate of the exponential initial condition.
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// q-HAM auxiliary parameter.
    #[arg(long, allow_negative_numbers = true)]
    h: Option<f64>,
    /// q-HAM embedding denominator.
    #[arg(long)]
    n: Option<u32>,
    /// Truncation order of the selected method.
    #[arg(long)]
    orders: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Comma-separated evaluation times.
    #[arg(long)]
    times: Option<String>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    /// Also write the engine-path error table as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Printed form to compare against: one of ch4-tanh-nim, ch4-tanh-qham,
    /// ch4-exp-nim, ch4-exp-qham, ch6-tanh-nim, ch6-tanh-qham, ch6-exp-nim,
    /// ch6-exp-qham.
    #[arg(long)]
    case: String,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    h: f64,
    #[arg(long, default_value_t = 1)]
    n: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match cli.cmd {
        Cmd::Solve(a) => solve(a),
        Cmd::Table1(a) => table1(a),
        Cmd::Compare(a) => compare(a),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        // a downstream reader closing the pipe early is not a failure
        Err(TfchError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                TfchError::Numerical { .. } | TfchError::Sampling { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn pick<'a>(cli: &'a Option<String>, file: &'a BTreeMap<String, String>, key: &str) -> Option<&'a str> {
    cli.as_deref().or_else(|| file.get(key).map(String::as_str))
}

fn pick_parse<T: std::str::FromStr>(
    cli: Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>> {
    if cli.is_some() {
        return Ok(cli);
    }
    match file.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| TfchError::Config(format!("config key `{key}`: bad value `{v}`"))),
    }
}

fn parse_times(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| TfchError::Config(format!("bad time value `{p}`")))
        })
        .collect()
}

fn resolve_config(a: &SolveArgs) -> Result<RunConfig> {
    let file = match &a.config {
        Some(path) => parse_config_text(&std::fs::read_to_string(path)?)?,
        None => BTreeMap::new(),
    };
    let equation = match pick(&a.equation, &file, "equation").unwrap_or("ch4") {
        "ch4" => Equation::Ch4,
        "ch6" => Equation::Ch6,
        other => return Err(TfchError::Config(format!("unknown equation `{other}`"))),
    };
    let lambda = pick_parse(a.lambda, &file, "lambda")?.unwrap_or(tfch::model::DEFAULT_LAMBDA);
    let ic = match pick(&a.ic, &file, "ic").unwrap_or("tanh") {
        "tanh" => InitialCondition::TanhKink,
        "exp" => InitialCondition::ExpLambda(lambda),
        other => return Err(TfchError::Config(format!("unknown initial condition `{other}`"))),
    };
    let method = match pick(&a.method, &file, "method").unwrap_or("nim") {
        "nim" => MethodSel::Nim,
        "qham" => MethodSel::Qham,
        other => return Err(TfchError::Config(format!("unknown method `{other}`"))),
    };
    let default = tfch::model::default_grid(ic);
    let xmin = pick_parse(a.xmin, &file, "xmin")?.unwrap_or(default.x_min());
    let xmax = pick_parse(a.xmax, &file, "xmax")?.unwrap_or(default.x_max());
    let points = pick_parse(a.points, &file, "points")?.unwrap_or(default.n_points());
    let grid = Grid1D::new(xmin, xmax, points)?;
    let times = match pick(&a.times, &file, "times") {
        Some(s) => parse_times(s)?,
        None => vec![0.01, 0.05, 0.08, 0.1],
    };
    let orders = pick_parse(a.orders, &file, "orders")?.unwrap_or(match method {
        MethodSel::Nim => 2,
        MethodSel::Qham => 3,
    });
    let out = match &a.out {
        Some(p) => Some(p.clone()),
        None => file.get("out").map(PathBuf::from),
    };
    let cfg = RunConfig {
        equation,
        ic,
        method,
        alpha: pick_parse(a.alpha, &file, "alpha")?.unwrap_or(1.0),
        mu: pick_parse(a.mu, &file, "mu")?.unwrap_or(1.0),
        h: pick_parse(a.h, &file, "h")?.unwrap_or(-1.0),
        n: pick_parse(a.n, &file, "n")?.unwrap_or(1),
        orders,
        grid,
        times,
        out,
        compare: CompareTarget::None,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Both engine series under one run configuration: NIM partial sum and
/// q-HAM partial sum, the selected one at `orders`, the other at its
/// default order.
fn engine_pair(cfg: &RunConfig) -> Result<(FracSeries, FracSeries)> {
    let p = ProblemSpec::new(cfg.equation, cfg.alpha, cfg.mu, cfg.ic, cfg.grid)?;
    let nim_orders = if cfg.method == MethodSel::Nim { cfg.orders } else { 2 };
    let qham_orders = if cfg.method == MethodSel::Qham { cfg.orders } else { 3 };
    let nim = nim_components(&p, &NimConfig { iterations: nim_orders, ..Default::default() })?;
    let u_nim = nim_partial_sum(&nim, nim_orders)?;
    let qcfg = QhamConfig { orders: qham_orders, h: cfg.h, n: cfg.n, ..Default::default() };
    let qc = qham_components(&p, &qcfg)?;
    let u_qham = qham_partial_sum(&qc, qham_orders, cfg.n)?;
    Ok((u_nim, u_qham))
}

fn solve(a: SolveArgs) -> Result<()> {
    let cfg = resolve_config(&a)?;
    let (u_nim, u_qham) = engine_pair(&cfg)?;
    let with_exact = cfg.equation == Equation::Ch4
        && cfg.ic == InitialCondition::TanhKink
        && cfg.alpha == 1.0
        && cfg.mu == 1.0;
    let mut rows = Vec::new();
    for &t in &cfg.times {
        let vn = u_nim.eval(t)?;
        let vq = u_qham.eval(t)?;
        for i in 0..cfg.grid.n_points() {
            let x = cfg.grid.node(i);
            rows.push(SolutionRow {
                x,
                t,
                u_nim: vn.value(i),
                u_qham: vq.value(i),
                u_exact: with_exact.then(|| ref_exact(x, t)),
            });
        }
    }
    match &cfg.out {
        Some(path) => export_solution_csv(path, &rows),
        None => write_solution_csv(std::io::stdout().lock(), &rows),
    }
}

fn table1(a: Table1Args) -> Result<()> {
    let reference = tfch::reference::table1_reference()?;
    let ic = InitialCondition::TanhKink;
    let p = ProblemSpec::new(Equation::Ch4, 1.0, 1.0, ic, tfch::model::default_grid(ic))?;
    let nim = nim_components(&p, &NimConfig::default())?;
    let u2 = nim_partial_sum(&nim, 2)?;
    let qc = qham_components(&p, &QhamConfig::default())?;
    let u3 = qham_partial_sum(&qc, 3, 1)?;
    let times = [0.01, 0.05, 0.08, 0.1];
    let xs = [0.0, 1.0, 2.0, 3.0];
    let engine = build_error_table(&times, &xs, &u2, &u3)?;

    println!(
        "{:>5} {:>3} {:>13} {:>13} {:>9} {:>13} {:>13} {:>9}",
        "t", "x", "nim(ref)", "nim(engine)", "rel.dev", "qham(ref)", "qham(engine)", "rel.dev"
    );
    for (r, e) in reference.iter().zip(engine.iter()) {
        let (t, x, rn, rq) = *r;
        let dn = (e.abs_err_nim - rn).abs() / rn;
        let dq = (e.abs_err_qham - rq).abs() / rq;
        println!(
            "{t:>5} {x:>3} {rn:>13.6e} {:>13.6e} {dn:>9.2e} {rq:>13.6e} {:>13.6e} {dq:>9.2e}",
            e.abs_err_nim, e.abs_err_qham
        );
    }
    if let Some(path) = &a.out {
        export_error_csv(path, &engine)?;
    }
    Ok(())
}

fn parse_case(s: &str) -> Result<RefCase> {
    let parts: Vec<&str> = s.split('-').collect();
    let [eq, ic, method] = parts.as_slice() else {
        return Err(TfchError::Config(format!(
            "case must look like ch4-tanh-nim, got `{s}`"
        )));
    };
    let equation = match *eq {
        "ch4" => Equation::Ch4,
        "ch6" => Equation::Ch6,
        _ => return Err(TfchError::Config(format!("unknown equation `{eq}`"))),
    };
    let ic = match *ic {
        "tanh" => RefIc::TanhKink,
        "exp" => RefIc::ExpLambda,
        _ => return Err(TfchError::Config(format!("unknown initial condition `{ic}`"))),
    };
    let method = match *method {
        "nim" => RefMethod::NimU2,
        "qham" => RefMethod::QhamU3,
        _ => return Err(TfchError::Config(format!("unknown method `{method}`"))),
    };
    Ok(RefCase { equation, ic, method })
}

fn compare(a: CompareArgs) -> Result<()> {
    let case = parse_case(&a.case)?;
    let params = RefParams {
        alpha: a.alpha,
        mu: a.mu,
        lambda: a.lambda,
        h: a.h,
        n: a.n,
        ..RefParams::table1()
    };
    params.validate(case)?;
    let terms = ref_terms(case)?;
    let gammas = Gammas::new(a.alpha)?;

    let ic = match case.ic {
        RefIc::TanhKink => InitialCondition::TanhKink,
        RefIc::ExpLambda => InitialCondition::ExpLambda(a.lambda),
    };
    let grid = tfch::model::default_grid(ic);
    let p = ProblemSpec::new(case.equation, a.alpha, a.mu, ic, grid)?;
    let engine = match case.method {
        RefMethod::NimU2 => {
            let c = nim_components(&p, &NimConfig::default())?;
            nim_partial_sum(&c, 2)?
        }
        RefMethod::QhamU3 => {
            let qcfg = QhamConfig { h: a.h, n: a.n, ..Default::default() };
            let c = qham_components(&p, &qcfg)?;
            qham_partial_sum(&c, 3, a.n)?
        }
        RefMethod::Exact => unreachable!("parse_case never yields Exact"),
    };

    println!(
        "case {} (alpha = {}, mu = {}, lambda = {}, h = {}, n = {})",
        a.case, a.alpha, a.mu, a.lambda, a.h, a.n
    );
    println!("per-power coefficient comparison on x in [-3, 3]:");
    let window: Vec<usize> = (0..grid.n_points())
        .filter(|&i| grid.node(i).abs() <= 3.0)
        .collect();
    let mut powers: Vec<u32> = terms.iter().map(|t| t.power).collect();
    powers.sort_unstable();
    powers.dedup();
    let mut overall = (0.0f64, 0.0f64, 0u32);
    for &k in &powers {
        let mut max = 0.0f64;
        let mut arg = 0.0f64;
        for &i in &window {
            let x = grid.node(i);
            let printed: f64 = terms
                .iter()
                .filter(|t| t.power == k)
                .map(|t| (t.coeff)(x, &params, &gammas))
                .sum();
            let eng = engine.term(k as usize).map_or(0.0, |f| f.value(i));
            let d = (eng - printed).abs();
            if d > max {
                max = d;
                arg = x;
            }
        }
        println!("  t^{{{k}a}}: max |engine - printed| = {max:.3e} at x = {arg}");
        if max > overall.0 {
            overall = (max, arg, k);
        }
    }
    println!(
        "overall max coefficient deviation {:.3e} at x = {}, power t^{{{}a}}",
        overall.0, overall.1, overall.2
    );

    // pointwise check of the assembled value at two representative times
    for t in [0.01, 0.1] {
        let field = engine.eval(t)?;
        let mut max = 0.0f64;
        let mut arg = 0.0f64;
        for &i in &window {
            let x = grid.node(i);
            let printed = ref_eval(case, x, t, &params)?;
            let d = (field.value(i) - printed).abs();
            if d > max {
                max = d;
                arg = x;
            }
        }
        println!("assembled u at t = {t}: max |engine - printed| = {max:.3e} at x = {arg}");
    }
    Ok(())
}
