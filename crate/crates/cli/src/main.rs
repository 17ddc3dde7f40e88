use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use qdisc::flag::{self, Localized, QuantumSL2, Spherical};
use qdisc::fock;
use qdisc::integral;
use qdisc::modalg::{AntiHolo, ExtKey, ExtendedFinite, HoloPoly, LaurentPoly, ModuleAlgebra, PolCq, StarAlgebra, UqModule};
use qdisc::parse::{self, ParseError, ParseTarget};
use qdisc::rmatrix;
use qdisc::rootdata::{self, LieType};
use qdisc::uqsl2;
use qdisc::verify::{self, VerifyOptions};
use qdisc::{LinComb, Scalar};

#[derive(Parser)]
#[command(name = "qdisc", version, about = "Exact computations on the quantum disc")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    /// Algebra: pol_c_q, finite, c_sl2_q, uqsl2, holo, laurent, antiholo
    #[arg(long, default_value = "pol_c_q")]
    algebra: String,
    /// Fock truncation: basis E_0 .. E_N (8 for `fock`, 32 for `verify`)
    #[arg(long = "N")]
    n: Option<usize>,
    /// Numeric value of q, e.g. 1/4 or 0.5
    #[arg(long, value_parser = parse_rational)]
    q0: Option<BigRational>,
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression
    Nf {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Action of an element of U_q(sl2) on an element of the chosen algebra
    Act {
        xi: String,
        f: String,
        #[command(flatten)]
        common: Common,
    },
    /// Matrix of an element in the Fock representation
    Fock {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Invariant integral of a finite function, or a table of ν(z^a f0 z*^a)
    Integral {
        expr: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Derivation of the disc relation from the R-matrix
    RmatrixDemo {
        #[command(flatten)]
        common: Common,
    },
    /// Root data of a simple Lie algebra, e.g. `E8`; all types up to rank 8 if omitted
    Rootdata {
        label: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Quasi-commutation, z z' = 1 and the Laurent action table
    FlagDemo {
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites: all, scalars, ncpoly, uqsl2, modalg, rmatrix, fock, integral, flag, rootdata, verma
    Verify {
        suites: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// Bad input: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(s: impl Into<String>) -> anyhow::Error {
    Usage(s.into()).into()
}

impl From<ParseError> for Usage {
    fn from(e: ParseError) -> Self {
        Usage(format!("parse error {e}"))
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let n = BigInt::from_str(&digits).map_err(|e| e.to_string())?;
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(n, d));
    }
    BigRational::from_str(s).map_err(|e| format!("`{s}` is not a rational number: {e}"))
}

type Endo<K> = dyn Fn(&LinComb<K>) -> LinComb<K>;
type Inverse<K> = fn(&LinComb<K>) -> Option<LinComb<K>>;

/// Parse target backed by a module algebra: products are computed in the algebra.
struct AlgTarget<'a, M: ModuleAlgebra> {
    m: &'a M,
    name: &'static str,
    gens: Vec<(&'static str, LinComb<M::Key>)>,
    star: Option<&'a Endo<M::Key>>,
    inverse: Option<Inverse<M::Key>>,
}

impl<M: ModuleAlgebra> AlgTarget<'_, M> {
    fn lookup(&self, name: &str) -> Option<LinComb<M::Key>> {
        self.gens.iter().find(|(n, _)| *n == name).map(|(_, g)| g.clone())
    }
}

impl<M: ModuleAlgebra> ParseTarget for AlgTarget<'_, M> {
    type Key = M::Key;

    fn algebra_name(&self) -> String {
        self.name.into()
    }

    fn unit_key(&self) -> M::Key {
        self.m.unit_key()
    }

    fn generator(&self, name: &str, starred: bool) -> Option<LinComb<M::Key>> {
        if starred {
            self.lookup(&format!("{name}^*"))
        } else {
            self.lookup(name)
        }
    }

    fn mul(&self, a: &LinComb<M::Key>, b: &LinComb<M::Key>) -> LinComb<M::Key> {
        self.m.mul(a, b)
    }

    fn star(&self, e: &LinComb<M::Key>) -> Option<LinComb<M::Key>> {
        self.star.map(|s| s(e))
    }

    fn inverse(&self, e: &LinComb<M::Key>) -> Option<LinComb<M::Key>> {
        self.inverse.and_then(|f| f(e))
    }
}

fn laurent_inverse(e: &LinComb<i64>) -> Option<LinComb<i64>> {
    let (n, c) = e.iter().next()?;
    (e.len() == 1).then(|| LinComb::term(-n, c.inv().expect("nonzero coefficient")))
}

fn eval_in<M: ModuleAlgebra>(target: &AlgTarget<'_, M>, text: &str) -> Result<LinComb<M::Key>, Usage> {
    Ok(parse::parse_with(text, target)?)
}

fn pol_target<'a>(pol: &'a PolCq, star: &'a Endo<(u32, u32)>) -> AlgTarget<'a, PolCq> {
    AlgTarget {
        m: pol,
        name: "pol_c_q",
        gens: vec![("z", LinComb::basis((1, 0))), ("z^*", LinComb::basis((0, 1)))],
        star: Some(star),
        inverse: None,
    }
}

fn ext_target<'a>(
    ext: &'a ExtendedFinite,
    star: &'a Endo<ExtKey>,
) -> AlgTarget<'a, ExtendedFinite> {
    AlgTarget {
        m: ext,
        name: "finite",
        gens: vec![
            ("z", LinComb::basis(ExtKey::Pol(1, 0))),
            ("z^*", LinComb::basis(ExtKey::Pol(0, 1))),
            ("f0", LinComb::basis(ExtKey::Fin(0, 0))),
        ],
        star: Some(star),
        inverse: None,
    }
}

fn sl2_target(sl2: &QuantumSL2) -> AlgTarget<'_, QuantumSL2> {
    let a = flag::qsl2_alphabet();
    let gens = ["t11", "t12", "t21", "t22"]
        .into_iter()
        .map(|n| (n, LinComb::basis(a.word(&[n]).expect("generator"))))
        .collect();
    AlgTarget {
        m: sl2,
        name: "c_sl2_q",
        gens,
        star: None,
        inverse: None,
    }
}

/// Parse and normalize in the named algebra; returns `(printed, act)` where
/// `act` applies an element of `U_q(sl2)` and prints the result.
type Actor = Box<dyn Fn(&uqsl2::UqElement) -> String>;

fn with_algebra(name: &str, text: &str) -> anyhow::Result<(String, Actor)> {
    match name {
        "pol_c_q" | "pol" | "disc" => {
            let pol = Box::leak(Box::new(PolCq::new()));
            let star = |e: &LinComb<(u32, u32)>| PolCq::new().star(e);
            let f = eval_in(&pol_target(pol, &star), text)?;
            let shown = pol.format(&f);
            Ok((shown, Box::new(move |xi| pol.format(&pol.act(xi, &f)))))
        }
        "finite" | "extended" => {
            let ext = Box::leak(Box::new(ExtendedFinite::new()));
            let star = |e: &LinComb<ExtKey>| ExtendedFinite::new().star(e);
            let f = eval_in(&ext_target(ext, &star), text)?;
            let shown = ext.format(&f);
            Ok((shown, Box::new(move |xi| ext.format(&ext.act(xi, &f)))))
        }
        "c_sl2_q" | "sl2" => {
            let sl2 = Box::leak(Box::new(QuantumSL2::new()));
            let f = eval_in(&sl2_target(sl2), text)?;
            let shown = sl2.format(&f);
            Ok((shown, Box::new(move |xi| sl2.format(&sl2.act(xi, &f)))))
        }
        "holo" => {
            let t = AlgTarget {
                m: &HoloPoly,
                name: "holo",
                gens: vec![("z", LinComb::basis(1))],
                star: None,
                inverse: None,
            };
            let f = eval_in(&t, text)?;
            Ok((HoloPoly.format(&f), Box::new(move |xi| HoloPoly.format(&HoloPoly.act(xi, &f)))))
        }
        "laurent" => {
            let t = AlgTarget {
                m: &LaurentPoly,
                name: "laurent",
                gens: vec![("z", LinComb::basis(1))],
                star: None,
                inverse: Some(laurent_inverse),
            };
            let f = eval_in(&t, text)?;
            Ok((LaurentPoly.format(&f), Box::new(move |xi| LaurentPoly.format(&LaurentPoly.act(xi, &f)))))
        }
        "antiholo" => {
            let anti = Box::leak(Box::new(AntiHolo::new()));
            let t = AlgTarget {
                m: &*anti,
                name: "antiholo",
                gens: vec![("z^*", LinComb::basis(1))],
                star: None,
                inverse: None,
            };
            let f = eval_in(&t, text)?;
            Ok((anti.format(&f), Box::new(move |xi| anti.format(&anti.act(xi, &f)))))
        }
        "uqsl2" => {
            let x = parse::parse_uq(text).map_err(Usage::from)?;
            let shown = uqsl2::format(&x);
            Ok((shown, Box::new(move |xi| uqsl2::format(&uqsl2::multiply(xi, &x)))))
        }
        other => Err(usage(format!("unknown algebra `{other}`"))),
    }
}

fn parse_finite(text: &str) -> anyhow::Result<LinComb<ExtKey>> {
    let ext = ExtendedFinite::new();
    let star = |e: &LinComb<ExtKey>| ExtendedFinite::new().star(e);
    Ok(eval_in(&ext_target(&ext, &star), text)?)
}

const SCHEMA: &str = "qdisc/1";

fn emit(format: Format, mut value: Value, text: String) {
    if let Value::Object(map) = &mut value {
        map.entry("schema_version").or_insert(json!(SCHEMA));
    }
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
        Format::Text => text,
    };
    // a closed pipe (`| head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn cmd_nf(expr: &str, c: &Common) -> anyhow::Result<bool> {
    let (shown, _) = with_algebra(&c.algebra, expr)?;
    emit(
        c.format.unwrap_or(Format::Text),
        json!({"algebra": c.algebra, "input": expr, "normal_form": shown}),
        shown.clone(),
    );
    Ok(true)
}

fn cmd_act(xi: &str, f: &str, c: &Common) -> anyhow::Result<bool> {
    let x = parse::parse_uq(xi).map_err(Usage::from)?;
    let (shown, act) = with_algebra(&c.algebra, f)?;
    if c.algebra == "uqsl2" {
        return Err(usage("act needs a module algebra, not uqsl2"));
    }
    let result = act(&x);
    emit(
        c.format.unwrap_or(Format::Text),
        json!({"algebra": c.algebra, "xi": uqsl2::format(&x), "f": shown, "result": result}),
        result.clone(),
    );
    Ok(true)
}

fn cmd_fock(expr: &str, c: &Common) -> anyhow::Result<bool> {
    let f = match c.algebra.as_str() {
        "pol_c_q" | "pol" | "disc" | "finite" | "extended" => parse_finite(expr)?,
        other => return Err(usage(format!("the Fock representation is defined on pol_c_q and finite, not `{other}`"))),
    };
    let n = c.n.unwrap_or(8);
    let m = fock::represent(&f, n).map_err(|e| usage(e.to_string()))?;
    let mut value = json!({
        "expr": expr,
        "N": n,
        "boundary_start": m.boundary_start,
        "matrix": m.to_strings(),
    });
    let mut text = format!("{} on E_0..E_{} (columns ≥ {} touch the truncation)\n", expr, n, m.boundary_start);
    for (i, row) in m.to_strings().iter().enumerate() {
        text.push_str(&format!("  row {i}: [{}]\n", row.join(", ")));
    }
    if let Some(q0) = &c.q0 {
        let num = fock::orthonormal_numeric(&m, q0).map_err(|e| usage(e.to_string()))?;
        let rows: Vec<Vec<f64>> = (0..num.nrows()).map(|i| num.row(i).iter().copied().collect()).collect();
        text.push_str(&format!("orthonormal basis at q = {q0}:\n"));
        for r in &rows {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:.12}")).collect();
            text.push_str(&format!("  [{}]\n", cells.join(", ")));
        }
        value["q0"] = json!(q0.to_string());
        value["orthonormal"] = json!(rows);
    }
    emit(c.format.unwrap_or(Format::Text), value, text.trim_end().to_string());
    Ok(true)
}

fn cmd_integral(expr: Option<&str>, c: &Common) -> anyhow::Result<bool> {
    let numeric = |s: &Scalar| c.q0.as_ref().and_then(|q0| s.to_f64_at(q0).ok());
    match expr {
        Some(text) => {
            let f = parse_finite(text)?;
            let ff = integral::from_extended(&f).ok_or_else(|| usage("the integral is defined on finite functions z^a f0 z*^b only"))?;
            let v = integral::integrate(&ff);
            let mut out = format!("ν({text}) = {v}");
            if let Some(x) = numeric(&v) {
                out.push_str(&format!(" ≈ {x:.15}"));
            }
            emit(
                c.format.unwrap_or(Format::Text),
                json!({"expr": text, "value": v.to_string(), "numeric": numeric(&v)}),
                out,
            );
        }
        None => {
            let rows: Vec<(u32, Scalar)> = (0..=c.degree as u32).map(|a| (a, integral::closed_form(a, a))).collect();
            let text = rows
                .iter()
                .map(|(a, v)| format!("ν(z^{a} f0 z*^{a}) = {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|(a, v)| json!({"a": a, "value": v.to_string(), "numeric": numeric(v)}))
                .collect();
            emit(c.format.unwrap_or(Format::Text), json!({"values": json_rows}), text);
        }
    }
    Ok(true)
}

fn cmd_rmatrix(c: &Common) -> anyhow::Result<bool> {
    let steps = rmatrix::demo().map_err(|e| anyhow::anyhow!(e))?;
    let text = steps.iter().map(|s| format!("{:<22} {}", s.label, s.value)).collect::<Vec<_>>().join("\n");
    emit(c.format.unwrap_or(Format::Text), json!({"steps": steps}), text);
    Ok(true)
}

fn parse_label(label: &str) -> anyhow::Result<(LieType, usize)> {
    let mut chars = label.chars();
    let t = chars
        .next()
        .and_then(|c| LieType::parse(&c.to_string()))
        .ok_or_else(|| usage(format!("`{label}` is not a type label such as A3 or E8")))?;
    let rank: usize = chars
        .as_str()
        .trim_start_matches('_')
        .parse()
        .map_err(|_| usage(format!("`{label}` has no rank")))?;
    Ok((t, rank))
}

fn cmd_rootdata(label: Option<&str>, c: &Common) -> anyhow::Result<bool> {
    let format = c.format.unwrap_or(Format::Json);
    match label {
        Some(label) => {
            let (t, l) = parse_label(label)?;
            let cd = rootdata::build(t, l).map_err(|e| usage(e.to_string()))?;
            let d = rootdata::describe(&cd);
            let text = format!(
                "{}: {} positive roots, δ = {:?}, d = {:?}, l0 candidates {:?}",
                cd.label,
                d.positive_roots.len(),
                d.maximal_root,
                cd.symmetrizers,
                d.l0_candidates
            );
            let mut value = serde_json::to_value(&d)?;
            // matrices travel as row-major string arrays
            value["cartan"]["matrix"] = json!(cd
                .matrix
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>());
            emit(format, value, text);
        }
        None => {
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for (t, l) in rootdata::all_types(8) {
                let cd = rootdata::build(t, l)?;
                let delta = rootdata::maximal_root(&cd);
                let l0 = rootdata::l0_candidates(&cd);
                text.push(format!("{:<4} δ = {:?}  l0 = {:?}", cd.label, delta, l0));
                rows.push(json!({"type": cd.label, "maximal_root": delta, "l0_candidates": l0}));
            }
            emit(format, json!({ "types": rows }), text.join("\n"));
        }
    }
    Ok(true)
}

fn cmd_flag(c: &Common) -> anyhow::Result<bool> {
    let sl2 = QuantumSL2::new();
    let mut ok = true;
    let mut text = vec!["y g = λ g y:".to_string()];
    let mut scalars = Vec::new();
    for g in Spherical::ALL {
        let l = flag::quasi_commute(&sl2, g);
        ok &= l.is_some();
        let shown = l.map_or("none".to_string(), |s| s.to_string());
        text.push(format!("  λ_{} = {shown}", g.name()));
        scalars.push(json!({"generator": g.name(), "lambda": shown}));
    }
    let xw = flag::xw_relation(&sl2).map_or("none".into(), |s| s.to_string());
    let loc = Localized;
    let zz = loc.mul(&flag::z_class(), &flag::z_prime_class());
    let one = LinComb::basis((0, 0));
    ok &= zz == one;
    text.push(format!("x w = ({xw}) y^2"));
    text.push(format!("z  = y^-1 x   = {}", loc.format(&flag::z_class())));
    text.push(format!("z' = q y^-1 w = {}", loc.format(&flag::z_prime_class())));
    text.push(format!("z z' = {}", loc.format(&zz)));
    let m = flag::laurent_action_match(4);
    ok &= m.report.passed();
    let scale = m.scale.as_ref().map_or("none".into(), |s| s.to_string());
    text.push(format!("z_laurent = ({scale}) z_localized"));
    text.push(format!("{:<5} {:>3}  {:<40} {}", "ξ", "n", "localized", "q-difference"));
    for r in &m.rows {
        text.push(format!("{:<5} {:>3}  {:<40} {}", r.generator.to_string(), r.n, r.localized, r.laurent));
    }
    text.push(m.report.summary_line());
    emit(
        c.format.unwrap_or(Format::Text),
        json!({
            "quasi_commutation": scalars,
            "xw_over_y2": xw,
            "z": loc.format(&flag::z_class()),
            "z_prime": loc.format(&flag::z_prime_class()),
            "z_z_prime": loc.format(&zz),
            "scale": scale,
            "action_match": m.rows,
            "report": m.report,
        }),
        text.join("\n"),
    );
    Ok(ok)
}

fn cmd_verify(selectors: &[String], c: &Common) -> anyhow::Result<bool> {
    let suites = verify::select(selectors).map_err(usage)?;
    let opts = VerifyOptions {
        degree: c.degree,
        truncation: c.n.unwrap_or(VerifyOptions::default().truncation),
        q0: c.q0.clone().unwrap_or_else(|| VerifyOptions::default().q0),
        seed: c.seed,
    };
    let report = verify::run_verify(&suites, &opts);
    emit(c.format.unwrap_or(Format::Text), serde_json::to_value(&report)?, report.to_text().trim_end().to_string());
    Ok(report.passed)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Nf { expr, common } => cmd_nf(expr, common),
        Command::Act { xi, f, common } => cmd_act(xi, f, common),
        Command::Fock { expr, common } => cmd_fock(expr, common),
        Command::Integral { expr, common } => cmd_integral(expr.as_deref(), common),
        Command::RmatrixDemo { common } => cmd_rmatrix(common),
        Command::Rootdata { label, common } => cmd_rootdata(label.as_deref(), common),
        Command::FlagDemo { common } => cmd_flag(common),
        Command::Verify { suites, common } => cmd_verify(suites, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
