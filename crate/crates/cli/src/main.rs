//! `qholo`: analyze q-holonomic sequences from the command line.
//!
//! Exit codes: 0 success, 1 a cross-check failed, 2 no result in the requested
//! bounds, 3 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qholonomic::annihilator::{guess_operator, verify_annihilator};
use qholonomic::asymptotics::{
    degree_sequence, fit_quasi_polynomial, leading_terms, min_linear_recurrence, wkb_asymptotics, gps_evaluate,
    QuasiPolynomial, Side, DEFAULT_MAX_ORDER, DEFAULT_MAX_PERIOD, DEFAULT_MAX_SKIP,
};
use qholonomic::factor::{factor_first_order, factor_valuations, negated_slopes};
use qholonomic::newton::{
    candidate_c1c2, edge_polynomial, lemma_n2_n1_check, newton_polygon, newton_polytope3, tropical_curve,
    tropical_degree_check, NewtonPolygon, TropicalCurve,
};
use qholonomic::rational::{fmt_rational, int};
use qholonomic::svg::{render_newton_polygon, render_subdivision, render_tropical};
use qholonomic::wkb::{match_sequence, solve_full, solve_resonant, WKBSeries, WKBSum};
use qholonomic::{Error, PolyOperator, QSeries, Rational};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "qholo", version, about = "Asymptotics of q-holonomic sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct Config {
    /// q-truncation order
    #[arg(long = "Tq", default_value_t = 20)]
    t_q: u32,
    /// number of tracked u-grades in WKB series
    #[arg(long = "Tu", default_value_t = 24)]
    t_u: usize,
    /// M-truncation order for local factorization
    #[arg(long = "TM", default_value_t = 12)]
    t_m: u32,
    #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
    max_period: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_SKIP)]
    max_skip: usize,
    /// largest recurrence order probed for leading terms
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

impl Config {
    fn validate(&self) -> Result<(), Failure> {
        if self.t_q == 0 || self.t_u == 0 || self.t_m == 0 || self.max_period == 0 || self.max_order == 0 {
            return Err(Error::InvalidInput("truncation orders and fit bounds must be positive".into()).into());
        }
        Ok(())
    }

    fn tq(&self) -> Rational {
        int(self.t_q as i64)
    }

    fn to_json(&self) -> Value {
        json!({
            "Tq": self.t_q,
            "Tu": self.t_u,
            "TM": self.t_m,
            "max_period": self.max_period,
            "max_skip": self.max_skip,
            "max_order": self.max_order,
        })
    }
}

#[derive(Args, Clone, Debug, Default)]
struct Output {
    /// write an SVG figure here
    #[arg(long)]
    svg: Option<PathBuf>,
    /// write the JSON report here
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SideArg {
    Min,
    Max,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Figure {
    Newton,
    Subdivision,
    Tropical,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: geometry, WKB basis, asymptotics and cross-checks
    Analyze {
        operator: PathBuf,
        init: PathBuf,
        /// number of terms unrolled for the fits
        #[arg(long, default_value_t = 26)]
        terms: usize,
        #[command(flatten)]
        config: Config,
        #[command(flatten)]
        out: Output,
    },
    /// Print f_0, ..., f_{count-1} in the sequence-file format
    Unroll {
        operator: PathBuf,
        init: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// truncate at O(q^Tq) instead of requiring exact terms
        #[arg(long = "Tq")]
        t_q: Option<u32>,
    },
    /// Newton polygon, slopes and edge polynomials
    Newton {
        operator: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Tropical curve of the operator
    Tropical {
        operator: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// First-order factorization over truncated series in M
    Factor {
        operator: PathBuf,
        #[command(flatten)]
        config: Config,
        #[command(flatten)]
        out: Output,
    },
    /// WKB basis, optionally matched against a solution
    Wkb {
        operator: PathBuf,
        /// initial terms of a solution to express in the basis
        #[arg(long)]
        init: Option<PathBuf>,
        #[command(flatten)]
        config: Config,
        #[command(flatten)]
        out: Output,
    },
    /// Guess an annihilating operator in a degree box
    Guess {
        sequence: PathBuf,
        /// box as d,j,k (L-order, M-degree, q-degree)
        #[arg(long = "box", value_parser = parse_box, default_value = "2,6,9")]
        bounds: (usize, usize, usize),
        /// trailing terms withheld from the fit and used for verification
        #[arg(long, default_value_t = 3)]
        holdout: usize,
        /// write the operator file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit the degree quasi-polynomial and leading-term recurrence of a sequence
    DegreeFit {
        sequence: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Min)]
        side: SideArg,
        #[command(flatten)]
        config: Config,
        #[command(flatten)]
        out: Output,
    },
    /// Draw a figure of an operator's geometry as SVG
    Render {
        #[arg(value_enum)]
        figure: Figure,
        operator: PathBuf,
        /// output file; stdout when absent
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn parse_box(s: &str) -> Result<(usize, usize, usize), String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [d, j, k] => Ok((d, j, k)),
        _ => Err("expected d,j,k".into()),
    }
}

/// A failed run: exit code and diagnostic.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoFit | Error::NoOperatorInBox | Error::NoRecurrence => 2,
        Error::Parse(_)
        | Error::InvalidInput(_)
        | Error::RangeTooShort
        | Error::LeadingCoefficientVanishes(_)
        | Error::NotMonic
        | Error::WindowTooSmall => 3,
        _ => 1,
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 3, message: format!("{}: {e}", path.display()) }
}

fn read_operator(path: &Path) -> Result<PolyOperator, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let p = if text.trim_start().starts_with('{') {
        PolyOperator::from_json(&text)?
    } else {
        text.trim().parse::<PolyOperator>()?
    };
    if p.is_zero() {
        return Err(Error::InvalidInput("zero operator".into()).into());
    }
    Ok(p)
}

fn read_sequence(path: &Path) -> Result<Vec<QSeries>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let mut out = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(line.parse::<QSeries>()?);
    }
    Ok(out)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn emit(out: &Output, report: &Value, svg: Option<String>) -> Result<(), Failure> {
    if let Some(path) = &out.json {
        write_file(path, &format!("{}\n", serde_json::to_string_pretty(report).expect("report serializes")))?;
    }
    if let (Some(path), Some(svg)) = (&out.svg, svg) {
        write_file(path, &svg)?;
    }
    Ok(())
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

/// Polynomial in `L` from its coefficient list, highest power first.
fn fmt_l_poly(c: &[Rational]) -> String {
    let mut parts = Vec::new();
    for (i, x) in c.iter().enumerate().rev() {
        if x == &int(0) {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "L".into(),
            _ => format!("L^{i}"),
        };
        let coef = if mono.is_empty() {
            fmt_rational(x)
        } else if x == &int(1) {
            String::new()
        } else if x == &int(-1) {
            "-".into()
        } else {
            format!("{} ", fmt_rational(x))
        };
        parts.push(format!("{coef}{mono}"));
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn newton_json(np: &NewtonPolygon, p: &PolyOperator) -> Result<Value, Failure> {
    let local = p.to_local();
    let mut edges = Vec::new();
    for s in np.slopes() {
        let e = edge_polynomial(&local, &s.slope)?;
        edges.push(json!({
            "slope": fmt_rational(&s.slope),
            "length": s.length,
            "edge_polynomial": fmt_l_poly(&e),
        }));
    }
    Ok(json!({
        "vertices": np.vertices.iter().map(|(i, d)| json!([i, fmt_rational(d)])).collect::<Vec<_>>(),
        "slopes": edges,
        "regular_singular": np.is_regular_singular(),
    }))
}

fn print_newton(v: &Value) {
    let verts: Vec<String> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| format!("({}, {})", p[0], p[1].as_str().unwrap()))
        .collect();
    println!("newton polygon vertices: {}", verts.join(" "));
    for s in v["slopes"].as_array().unwrap() {
        println!(
            "slope {} (length {}): edge polynomial {}",
            s["slope"].as_str().unwrap(),
            s["length"],
            s["edge_polynomial"].as_str().unwrap()
        );
    }
    println!("regular singular: {}", v["regular_singular"]);
}

fn print_tropical(c: &TropicalCurve) {
    let verts: Vec<String> =
        c.vertices.iter().map(|(x, y)| format!("({}, {})", fmt_rational(x), fmt_rational(y))).collect();
    println!("tropical vertices: {}", verts.join(" "));
    for e in &c.edges {
        println!("edge {} -- {} (multiplicity {})", e.from, e.to, e.multiplicity);
    }
    for r in &c.rays {
        println!("ray from {} direction {:?} (multiplicity {})", r.from, r.direction, r.multiplicity);
    }
    for l in &c.lines {
        println!(
            "line through ({}, {}) direction {:?} (multiplicity {})",
            fmt_rational(&l.point.0),
            fmt_rational(&l.point.1),
            l.direction,
            l.multiplicity
        );
    }
    println!("balanced: {}", c.is_balanced());
}

fn quasi_json(q: &QuasiPolynomial) -> Value {
    json!({
        "period": q.period,
        "n0": q.n0,
        "classes": q.coeffs.iter().map(|(c0, c1, c2)| json!({
            "c0": fmt_rational(c0), "c1": fmt_rational(c1), "c2": fmt_rational(c2),
        })).collect::<Vec<_>>(),
        "display": q.to_string(),
    })
}

/// Degree quasi-polynomial and leading-term recurrence of one side; errors are
/// recorded in the report rather than aborting it.
struct SideFit {
    degrees: Vec<Rational>,
    quasi: Result<QuasiPolynomial, Error>,
    leading: Vec<Rational>,
    recurrence: Result<qholonomic::asymptotics::LinearRecurrence, Error>,
}

fn fit_side(f: &[QSeries], side: Side, config: &Config) -> Result<SideFit, Error> {
    let degrees = degree_sequence(f, side)?;
    let leading = leading_terms(f, side)?;
    let quasi = fit_quasi_polynomial(&degrees, config.max_period, config.max_skip);
    let recurrence = min_linear_recurrence(&leading, config.max_order);
    Ok(SideFit { degrees, quasi, leading, recurrence })
}

fn side_json(fit: &Result<SideFit, Error>) -> Value {
    match fit {
        Err(e) => json!({ "error": e.to_string() }),
        Ok(s) => json!({
            "degrees": rats(&s.degrees),
            "quasi_polynomial": match &s.quasi { Ok(q) => quasi_json(q), Err(e) => json!({ "error": e.to_string() }) },
            "leading_terms": rats(&s.leading),
            "recurrence": match &s.recurrence {
                Ok(r) => json!({ "coefficients": rats(&r.coeffs), "characteristic": r.to_string() }),
                Err(e) => json!({ "error": e.to_string() }),
            },
        }),
    }
}

fn no_result(fit: &Result<SideFit, Error>) -> Option<Error> {
    match fit {
        Ok(s) => s.quasi.as_ref().err().or(s.recurrence.as_ref().err()).cloned(),
        Err(_) => None,
    }
}

struct Checks(Vec<(String, Option<bool>, String)>);

impl Checks {
    fn record(&mut self, name: &str, passed: Option<bool>, detail: impl Into<String>) {
        self.0.push((name.to_string(), passed, detail.into()));
    }

    fn failed(&self) -> Vec<&str> {
        self.0.iter().filter(|c| c.1 == Some(false)).map(|c| c.0.as_str()).collect()
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|(n, p, d)| {
                    let status = match p {
                        Some(true) => "pass",
                        Some(false) => "fail",
                        None => "skipped",
                    };
                    json!({ "name": n, "status": status, "detail": d })
                })
                .collect(),
        )
    }

    fn print(&self) {
        for (n, p, d) in &self.0 {
            let status = match p {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skipped",
            };
            if d.is_empty() {
                println!("check {n}: {status}");
            } else {
                println!("check {n}: {status} ({d})");
            }
        }
    }
}

/// Unrolls exactly when the terms are polynomials, else to `O(q^{Tq+8})`.
fn unroll_terms(p: &PolyOperator, init: &[QSeries], count: usize, config: &Config) -> Result<(Vec<QSeries>, bool), Error> {
    match p.unroll(init, count, None) {
        Ok(f) => Ok((f, true)),
        Err(Error::InvalidInput(m)) if m.contains("not a polynomial") => {
            Ok((p.unroll(init, count, Some(&(config.tq() + int(8))))?, false))
        }
        Err(e) => Err(e),
    }
}

fn wkb_basis(p: &PolyOperator, config: &Config) -> Result<Vec<WKBSeries>, Error> {
    let local = p.to_local();
    let qcap = config.tq() + int(5);
    if newton_polygon(&local).is_regular_singular() {
        solve_resonant(&local, config.t_u, &qcap)
    } else {
        solve_full(&local, config.t_u, &qcap)
    }
}

fn basis_json(basis: &[WKBSeries]) -> Value {
    Value::Array(
        basis
            .iter()
            .map(|s| {
                json!({
                    "gamma": fmt_rational(&s.gamma),
                    "lambda": s.lambda.to_string(),
                    "ramification": s.ramification,
                    "n_degree": s.n_degree(),
                    "growth_constant": fmt_rational(&s.growth_constant()),
                    "display": s.to_string(),
                })
            })
            .collect(),
    )
}

/// Whether `(c₁, c₂)` of a period-1 fit is among the pair candidates of `support`.
fn candidate_check(q: &QuasiPolynomial, support: &[(u32, u32, u32)]) -> Option<bool> {
    if q.period != 1 {
        return None;
    }
    let (_, c1, c2) = &q.coeffs[0];
    Some(candidate_c1c2(support).contains(&(c1.clone(), c2.clone())))
}

fn cmd_analyze(
    operator: &Path,
    init: &Path,
    terms: usize,
    config: &Config,
    out: &Output,
) -> Result<(), Failure> {
    config.validate()?;
    let p = read_operator(operator)?;
    let init = read_sequence(init)?;
    let d = p.order();
    if init.len() != d {
        return Err(Error::InvalidInput(format!("operator has order {d} but {} initial terms were given", init.len())).into());
    }
    if terms < d + 1 {
        return Err(Error::RangeTooShort.into());
    }
    let mut checks = Checks(Vec::new());
    let local = p.to_local();
    let np = newton_polygon(&local);
    let newton = newton_json(&np, &p)?;
    let curve = tropical_curve(&p);
    checks.record("tropical-balancing", Some(curve.is_balanced()), "");
    checks.record("newton-projection", Some(lemma_n2_n1_check(&p)), "N(P) is the lower boundary of the projected polytope");

    let (f, exact) = unroll_terms(&p, &init, terms, config)?;
    let annihilated = (0..f.len() - d).all(|n| p.apply(&f, n).map_or(false, |v| v.is_zero()));
    checks.record("annihilation", Some(annihilated), format!("P f_n = 0 for 0 ≤ n < {}", f.len() - d));

    // formal solutions and the coordinates of f in that basis
    let tq = config.tq();
    let basis = wkb_basis(&p, config);
    let matched = basis.as_ref().map_err(Clone::clone).and_then(|b| match_sequence(&f, b, &tq));
    let wkb_report = match (&basis, &matched) {
        (Ok(b), Ok(c)) => json!({
            "basis": basis_json(b),
            "coordinates": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }),
        (Ok(b), Err(e)) => json!({ "basis": basis_json(b), "error": e.to_string() }),
        (Err(e), _) => json!({ "error": e.to_string() }),
    };
    checks.record(
        "wkb-match",
        Some(matched.is_ok()),
        matched.as_ref().err().map_or(String::new(), |e| e.to_string()),
    );

    let min_fit = fit_side(&f, Side::Min, config);
    let max_fit = if exact { Some(fit_side(&f, Side::Max, config)) } else { None };

    // the dominant WKB terms predict δ_n and lt_n
    let predicted = match (&basis, &matched) {
        (Ok(b), Ok(c)) => {
            let sum = WKBSum { terms: c.iter().cloned().zip(b.iter().cloned()).collect() };
            Some(wkb_asymptotics(&sum))
        }
        _ => None,
    };
    let predicted_json = match &predicted {
        Some(Ok((q, g))) => json!({ "degree": quasi_json(q), "leading_term": g.to_string() }),
        Some(Err(e)) => json!({ "error": e.to_string() }),
        None => Value::Null,
    };
    match (&predicted, &min_fit) {
        (Some(Ok((q, g))), Ok(s)) => {
            let from = q.n0;
            let agree = (from..f.len()).all(|n| q.eval(n) == s.degrees[n] && gps_evaluate(g, n) == s.leading[n]);
            checks.record("wkb-asymptotics", Some(agree), format!("δ_n and lt_n for {from} ≤ n < {}", f.len()));
        }
        (Some(Err(e)), _) => checks.record("wkb-asymptotics", None, e.to_string()),
        _ => checks.record("wkb-asymptotics", None, "no matched basis or degree data"),
    }

    // tropical degree equation on both sides
    let support = p.support();
    match &min_fit {
        Ok(SideFit { degrees, quasi: Ok(q), .. }) => {
            let ok = tropical_degree_check(degrees, &support, q.n0);
            checks.record("tropical-degree-min", ok.as_ref().ok().copied(), ok.err().map_or(String::new(), |e| e.to_string()));
            checks.record("candidate-c1c2-min", candidate_check(q, &support), "");
        }
        _ => checks.record("tropical-degree-min", None, "no degree fit"),
    }
    match &max_fit {
        Some(Ok(SideFit { degrees, quasi: Ok(q), .. })) => {
            // max-degrees of f_n(q) are negated min-degrees of f_n(1/q)
            let rev = p.reverse_q().support();
            let neg: Vec<Rational> = degrees.iter().map(|x| -x).collect();
            let ok = tropical_degree_check(&neg, &rev, q.n0);
            checks.record("tropical-degree-max", ok.as_ref().ok().copied(), ok.err().map_or(String::new(), |e| e.to_string()));
            let negq = QuasiPolynomial {
                period: q.period,
                coeffs: q.coeffs.iter().map(|(a, b, c)| (-a, -b, -c)).collect(),
                n0: q.n0,
            };
            checks.record("candidate-c1c2-max", candidate_check(&negq, &rev), "");
        }
        None => checks.record("tropical-degree-max", None, "terms are truncated"),
        _ => checks.record("tropical-degree-max", None, "no degree fit"),
    }

    let report = json!({
        "version": VERSION,
        "config": config.to_json(),
        "operator": p.to_string(),
        "order": d,
        "terms": f.len(),
        "exact_terms": exact,
        "newton": newton,
        "tropical": serde_json::to_value(&curve).expect("curve serializes"),
        "wkb": wkb_report,
        "predicted": predicted_json,
        "min_side": side_json(&min_fit),
        "max_side": max_fit.as_ref().map_or(Value::Null, side_json),
        "checks": checks.to_json(),
    });

    println!("qholo {VERSION}");
    println!("config: {}", config.to_json());
    println!("operator: {p}");
    print_newton(&newton);
    print_tropical(&curve);
    if let Ok(b) = &basis {
        for s in b {
            println!("wkb: {s}");
        }
    }
    if let Ok(c) = &matched {
        let coords: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        println!("coordinates: {}", coords.join(" ; "));
    }
    if let Some(Ok((q, g))) = &predicted {
        println!("predicted degree: {q}");
        println!("predicted leading term: {g}");
    }
    for (name, fit) in [("min", Some(&min_fit)), ("max", max_fit.as_ref())] {
        let Some(fit) = fit else { continue };
        match fit {
            Ok(s) => {
                match &s.quasi {
                    Ok(q) => println!("{name} degree: {q}"),
                    Err(e) => println!("{name} degree: {e}"),
                }
                match &s.recurrence {
                    Ok(r) => println!("{name} leading-term recurrence: {r}"),
                    Err(e) => println!("{name} leading-term recurrence: {e}"),
                }
            }
            Err(e) => println!("{name} side: {e}"),
        }
    }
    checks.print();
    emit(out, &report, Some(render_newton_polygon(&np)))?;

    let failed = checks.failed();
    if !failed.is_empty() {
        return Err(Failure { code: 1, message: format!("failing checks: {}", failed.join(", ")) });
    }
    let missing = no_result(&min_fit).or_else(|| max_fit.as_ref().and_then(no_result));
    if let Some(e) = missing {
        return Err(e.into());
    }
    Ok(())
}

fn cmd_unroll(operator: &Path, init: &Path, count: usize, t_q: Option<u32>) -> Result<(), Failure> {
    let p = read_operator(operator)?;
    let init = read_sequence(init)?;
    let cap = t_q.map(|t| int(t as i64));
    for x in p.unroll(&init, count, cap.as_ref())? {
        println!("{x}");
    }
    Ok(())
}

fn cmd_newton(operator: &Path, out: &Output) -> Result<(), Failure> {
    let p = read_operator(operator)?;
    let np = newton_polygon(&p.to_local());
    let report = json!({ "version": VERSION, "operator": p.to_string(), "newton": newton_json(&np, &p)? });
    print_newton(&report["newton"]);
    emit(out, &report, Some(render_newton_polygon(&np)))
}

fn cmd_tropical(operator: &Path, out: &Output) -> Result<(), Failure> {
    let p = read_operator(operator)?;
    let curve = tropical_curve(&p);
    let report = json!({
        "version": VERSION,
        "operator": p.to_string(),
        "tropical": serde_json::to_value(&curve).expect("curve serializes"),
        "balanced": curve.is_balanced(),
    });
    print_tropical(&curve);
    emit(out, &report, Some(render_tropical(&curve)))?;
    if !curve.is_balanced() {
        return Err(Failure { code: 1, message: "failing checks: tropical-balancing".into() });
    }
    Ok(())
}

fn cmd_factor(operator: &Path, config: &Config, out: &Output) -> Result<(), Failure> {
    config.validate()?;
    let p = read_operator(operator)?;
    let tm = int(config.t_m as i64);
    let tq = config.tq();
    let local = p.to_local().make_monic(Some(&tm), Some(&tq))?;
    let res = factor_first_order(&local, &tm, Some(&tq))?;
    let law = factor_valuations(&res.factors) == negated_slopes(&local);
    let report = json!({
        "version": VERSION,
        "config": config.to_json(),
        "operator": p.to_string(),
        "factors": res.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "certified_below_M": fmt_rational(&res.t_m),
        "slope_law": law,
    });
    for (k, f) in res.factors.iter().enumerate() {
        println!("factor {}: {f}", k + 1);
    }
    println!("certified below M^{}", fmt_rational(&res.t_m));
    println!("check slope-law: {}", if law { "pass" } else { "FAIL" });
    emit(out, &report, None)?;
    if !law {
        return Err(Failure { code: 1, message: "failing checks: slope-law".into() });
    }
    Ok(())
}

fn cmd_wkb(operator: &Path, init: Option<&Path>, config: &Config, out: &Output) -> Result<(), Failure> {
    config.validate()?;
    let p = read_operator(operator)?;
    let basis = wkb_basis(&p, config)?;
    for s in &basis {
        println!("{s}");
    }
    let mut report = json!({
        "version": VERSION,
        "config": config.to_json(),
        "operator": p.to_string(),
        "basis": basis.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
    });
    if let Some(init) = init {
        let init = read_sequence(init)?;
        if init.len() != p.order() {
            return Err(Error::InvalidInput(format!("expected {} initial terms", p.order())).into());
        }
        let count = 2 * p.order() + 40;
        let (f, _) = unroll_terms(&p, &init, count, config)?;
        let c = match_sequence(&f, &basis, &config.tq())?;
        for (k, x) in c.iter().enumerate() {
            println!("coordinate {k}: {x}");
        }
        report["coordinates"] = json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    emit(out, &report, None)
}

fn cmd_guess(
    sequence: &Path,
    bounds: (usize, usize, usize),
    holdout: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let f = read_sequence(sequence)?;
    if f.len() <= holdout {
        return Err(Error::RangeTooShort.into());
    }
    let (d, j, k) = bounds;
    let p = guess_operator(&f[..f.len() - holdout], d, j, k)?;
    let d = p.order();
    if f.len() <= d {
        return Err(Error::RangeTooShort.into());
    }
    let cert = verify_annihilator(&p, &f, 0, f.len() - 1 - d).map_err(|e| Failure {
        code: 1,
        message: format!("held-out verification: {e}"),
    })?;
    println!("{p}");
    println!("verified for {} ≤ n ≤ {} ({holdout} held-out terms)", cert.n_lo, cert.n_hi);
    if let Some(path) = out {
        write_file(path, &format!("{}\n", p.to_json()))?;
    }
    Ok(())
}

fn cmd_degree_fit(sequence: &Path, side: SideArg, config: &Config, out: &Output) -> Result<(), Failure> {
    config.validate()?;
    let f = read_sequence(sequence)?;
    let side = match side {
        SideArg::Min => Side::Min,
        SideArg::Max => Side::Max,
    };
    let fit = fit_side(&f, side, config);
    let report = json!({ "version": VERSION, "config": config.to_json(), "fit": side_json(&fit) });
    emit(out, &report, None)?;
    let s = fit?;
    let q = s.quasi?;
    println!("degree: {q}");
    let r = s.recurrence?;
    println!("leading-term recurrence: {r}");
    println!("leading-term coefficients: {}", rats(&r.coeffs).join(" "));
    Ok(())
}

fn cmd_render(figure: Figure, operator: &Path, svg: Option<&Path>) -> Result<(), Failure> {
    let p = read_operator(operator)?;
    let text = match figure {
        Figure::Newton => render_newton_polygon(&newton_polygon(&p.to_local())),
        Figure::Subdivision => render_subdivision(&newton_polytope3(&p)),
        Figure::Tropical => render_tropical(&tropical_curve(&p)),
    };
    match svg {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { operator, init, terms, config, out } => cmd_analyze(&operator, &init, terms, &config, &out),
        Command::Unroll { operator, init, count, t_q } => cmd_unroll(&operator, &init, count, t_q),
        Command::Newton { operator, out } => cmd_newton(&operator, &out),
        Command::Tropical { operator, out } => cmd_tropical(&operator, &out),
        Command::Factor { operator, config, out } => cmd_factor(&operator, &config, &out),
        Command::Wkb { operator, init, config, out } => cmd_wkb(&operator, init.as_deref(), &config, &out),
        Command::Guess { sequence, bounds, holdout, out } => cmd_guess(&sequence, bounds, holdout, out.as_deref()),
        Command::DegreeFit { sequence, side, config, out } => cmd_degree_fit(&sequence, side, &config, &out),
        Command::Render { figure, operator, svg } => cmd_render(figure, &operator, svg.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
