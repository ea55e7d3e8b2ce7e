use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmzv::constructor::{Constructor, Mutation};
use qmzv::genfun::{verify_b_diff, verify_g_diff, verify_recurrence};
use qmzv::models::{
    classical_sums, eval_at_rational_q, xi, zeta_bz, zeta_bz_finite, zeta_dagger, zeta_dagger_finite,
    zeta_diamond_finite, zeta_q_poly, zeta_sz, ClassicalSum, DiamondVariant, Eps, FiniteModel, FiniteParams,
    PolyModelArg,
};
use qmzv::rational::{parse_rational, Rational};
use qmzv::series::QSeries;
use qmzv::transforms::{expand, verify_transform, Direction};
use qmzv::verify::{
    independence_check, run_suite_with, verify_bridge, verify_remark, RankModel, RemarkKind, Report, SuiteConfig,
    Verifier,
};
use qmzv::words::{BarIndex, PairIndex, Word};
use qmzv::{Error, Result};

#[derive(Parser)]
#[command(name = "qmzv", version, about = "Exact multiple q-zeta values: evaluation, word expansions, verification")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a model as a truncated q-series or an exact rational.
    Eval(EvalArgs),
    /// Print one of the recursive word expansions.
    Word(WordArgs),
    /// Print the change-of-basis expansion between the SZ and dagger models.
    Transform(TransformArgs),
    /// Check a single identity instance.
    Verify(VerifyArgs),
    /// Run the whole verification suite and print the JSON report array.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelName {
    Dagger,
    Bz,
    Sz,
    Poly,
    DiamondBz,
    DiamondDagger,
    Xi,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassicalKind {
    Zeta,
    Diamond,
    Binom,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    /// Comma-separated index; `b` stands for a barred one. For `xi` and the
    /// binomial classical sum this is the flat pair index `l1,k1,l2,k2,...`.
    #[arg(long, allow_hyphen_values = true)]
    index: String,
    /// Upper truncation; omitted means the infinite model.
    #[arg(long = "N")]
    n: Option<u32>,
    #[arg(long = "M", default_value_t = 0)]
    m: u32,
    /// Evaluate exactly at this rational point instead of as a series.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// `epsilon` of the xi sum.
    #[arg(long, default_value_t = 0)]
    eps: u32,
    /// Polynomials of the poly model, `;`-separated, each a comma list of
    /// coefficients in increasing degree, e.g. `0,1;1`.
    #[arg(long)]
    polys: Option<String>,
    #[arg(long, value_enum, default_value_t = ClassicalKind::Zeta)]
    kind: ClassicalKind,
}

#[derive(Args)]
struct WordArgs {
    /// 0, 1 (E_q with that epsilon), E (= 0), D, classical-E, classical-D.
    #[arg(long)]
    eps: String,
    #[arg(long, default_value = "")]
    c: String,
    /// Flip one sign in the constructor.
    #[arg(long, value_enum)]
    mutate: Option<MutationName>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionName {
    SzFromDagger,
    DaggerFromSz,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    direction: DirectionName,
    /// Block lengths; omitted means all ones (the unbarred formulas).
    #[arg(long)]
    l: Option<String>,
    #[arg(long)]
    k: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationName {
    Term1Sign,
    EoSign,
    ThetaX,
    ThetaY,
    DPrefactor,
}

impl From<MutationName> for Mutation {
    fn from(m: MutationName) -> Self {
        match m {
            MutationName::Term1Sign => Mutation::Term1Sign,
            MutationName::EoSign => Mutation::EoSign,
            MutationName::ThetaX => Mutation::ThetaX,
            MutationName::ThetaY => Mutation::ThetaY,
            MutationName::DPrefactor => Mutation::DPrefactor,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity name, positionally or via `--identity`.
    name: Option<String>,
    #[arg(long)]
    identity: Option<String>,
    #[arg(long, default_value_t = 0)]
    eps: u32,
    #[arg(long, default_value = "")]
    c: String,
    #[arg(long = "M", default_value_t = 0)]
    m: u32,
    #[arg(long = "N", default_value_t = 4)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 2)]
    maxdeg: u32,
    #[arg(long, default_value_t = 20)]
    order: usize,
    #[arg(long)]
    l: Option<String>,
    #[arg(long, default_value = "")]
    k: String,
    /// Transform formula number, 1 to 4.
    #[arg(long, default_value_t = 1)]
    which: u8,
    /// Rational points, comma-separated.
    #[arg(long, allow_hyphen_values = true, default_value = "2,1/2,3")]
    q: String,
    /// Word of h^1 in compact spelling (`1` is the empty word).
    #[arg(long, default_value = "1")]
    word: String,
    #[arg(long, default_value_t = 4)]
    max_weight: usize,
    #[arg(long, default_value = "dagger")]
    model: String,
    #[arg(long, value_enum)]
    mutate: Option<MutationName>,
}

#[derive(Args)]
struct SuiteArgs {
    /// TOML file of bounds, or `default`.
    #[arg(long, default_value = "default")]
    config: String,
    /// Run only this identity (and `name_*`); repeatable.
    #[arg(long)]
    filter: Vec<String>,
    #[arg(long, value_enum)]
    mutate: Option<MutationName>,
}

/// Domain errors exit 1, failed verifications 3.
enum Failure {
    Domain(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}

fn run(cli: &Cli) -> std::result::Result<(), Failure> {
    match &cli.command {
        Command::Eval(a) => eval(a, cli.json),
        Command::Word(a) => word(a, cli.json),
        Command::Transform(a) => transform(a, cli.json),
        Command::Verify(a) => verify(a, cli.json),
        Command::Suite(a) => suite(a),
    }
}

fn list(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}"))))
        .collect()
}

fn need_n(n: Option<u32>, model: &str) -> Result<u32> {
    n.ok_or_else(|| Error::InvalidArgument(format!("the {model} model needs --N")))
}

enum Evaluated {
    Series(QSeries),
    Exact(Rational),
}

fn eval(a: &EvalArgs, as_json: bool) -> std::result::Result<(), Failure> {
    let q = a.q.as_deref().map(parse_rational).transpose()?;
    let value = match a.model {
        ModelName::Dagger | ModelName::Bz | ModelName::DiamondBz | ModelName::DiamondDagger if q.is_some() => {
            let model = match a.model {
                ModelName::Dagger => FiniteModel::Dagger,
                ModelName::Bz => FiniteModel::Bz,
                ModelName::DiamondBz => FiniteModel::DiamondBz,
                _ => FiniteModel::DiamondDagger,
            };
            let n = need_n(a.n, "rational-point")?;
            Evaluated::Exact(eval_at_rational_q(model, &BarIndex::parse(&a.index)?, a.m, n, q.as_ref().unwrap())?)
        }
        _ if q.is_some() => {
            return Err(Error::InvalidArgument("--q applies to dagger, bz, diamond-bz and diamond-dagger".into()).into())
        }
        ModelName::Dagger => {
            let k = BarIndex::parse(&a.index)?;
            Evaluated::Series(match a.n {
                Some(n) => zeta_dagger_finite(&k, FiniteParams::new(a.m, n, a.order)?)?,
                None => zeta_dagger(&k, a.order)?,
            })
        }
        ModelName::Bz => {
            let k = list(&a.index)?;
            if a.m != 0 {
                return Err(Error::InvalidArgument("the bz model has no --M".into()).into());
            }
            Evaluated::Series(match a.n {
                Some(n) => zeta_bz_finite(&k, n, a.order)?,
                None => zeta_bz(&k, a.order)?,
            })
        }
        ModelName::Sz => Evaluated::Series(zeta_sz(&list(&a.index)?, a.order)?),
        ModelName::Poly => {
            let text = a.polys.as_deref().ok_or_else(|| Error::InvalidArgument("the poly model needs --polys".into()))?;
            let polys = text
                .split(';')
                .map(|p| p.split(',').map(|c| parse_rational(c.trim())).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Evaluated::Series(zeta_q_poly(&PolyModelArg::new(list(&a.index)?, polys)?, a.order)?)
        }
        ModelName::DiamondBz | ModelName::DiamondDagger => {
            let variant = if matches!(a.model, ModelName::DiamondBz) { DiamondVariant::Bz } else { DiamondVariant::Dagger };
            let p = FiniteParams::new(a.m, need_n(a.n, "diamond")?, a.order)?;
            Evaluated::Series(zeta_diamond_finite(variant, &list(&a.index)?, p)?)
        }
        ModelName::Xi => {
            let p = FiniteParams::new(a.m, need_n(a.n, "xi")?, a.order)?;
            Evaluated::Series(xi(Eps::from_u32(a.eps)?, &PairIndex::new(list(&a.index)?)?, p)?)
        }
        ModelName::Classical => {
            let n = need_n(a.n, "classical")?;
            let kind = match a.kind {
                ClassicalKind::Zeta => ClassicalSum::Zeta(list(&a.index)?),
                ClassicalKind::Diamond => ClassicalSum::Diamond(list(&a.index)?),
                ClassicalKind::Binom => ClassicalSum::Binom(PairIndex::new(list(&a.index)?)?),
            };
            Evaluated::Exact(classical_sums(&kind, n)?)
        }
    };
    match (value, as_json) {
        (Evaluated::Series(s), false) => println!("{s}"),
        (Evaluated::Exact(r), false) => println!("{r}"),
        (Evaluated::Series(s), true) => println!("{}", serde_json::to_string(&s).expect("series serialize")),
        (Evaluated::Exact(r), true) => println!("{}", json!({ "value": r.to_string() })),
    }
    Ok(())
}

fn word(a: &WordArgs, as_json: bool) -> std::result::Result<(), Failure> {
    let c = list(&a.c)?;
    let ctor = match a.mutate {
        Some(m) => Constructor::with_mutation(m.into()),
        None => Constructor::new(),
    };
    let u = match a.eps.as_str() {
        "0" | "E" => ctor.e_q(Eps::Zero, &c)?,
        "1" => ctor.e_q(Eps::One, &c)?,
        "D" => ctor.d_q(&c)?,
        "classical-E" => ctor.e_classical(Eps::Zero, &c)?,
        "classical-D" => ctor.d_classical(&c)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "--eps must be one of 0, 1, E, D, classical-E, classical-D; got {other:?}"
            ))
            .into())
        }
    };
    if as_json {
        println!("{}", serde_json::to_string(&u.to_json()).expect("element serialize"));
    } else {
        println!("{u}");
    }
    Ok(())
}

fn transform(a: &TransformArgs, as_json: bool) -> std::result::Result<(), Failure> {
    let direction = match a.direction {
        DirectionName::SzFromDagger => Direction::SzFromDagger,
        DirectionName::DaggerFromSz => Direction::DaggerFromSz,
    };
    let k = list(&a.k)?;
    let l = a.l.as_deref().map(list).transpose()?;
    let terms = expand(direction, l.is_some(), l.as_deref().unwrap_or(&[]), &k)?;
    if as_json {
        println!("{}", serde_json::to_string(&terms).expect("terms serialize"));
        return Ok(());
    }
    let target = match direction {
        Direction::SzFromDagger => "dagger",
        Direction::DaggerFromSz => "sz",
    };
    for t in terms.iter().filter(|t| t.coeff != 0.into()) {
        let pairs: Vec<String> = t.l.iter().zip(&t.k).map(|(l, k)| format!("{l};{k}")).collect();
        println!("{:>6} {target}({})", t.coeff.to_string(), pairs.join(", "));
    }
    Ok(())
}

fn verifier(m: Option<MutationName>) -> Verifier {
    match m {
        Some(m) => Verifier::with_mutation(m.into()),
        None => Verifier::new(),
    }
}

fn verify(a: &VerifyArgs, as_json: bool) -> std::result::Result<(), Failure> {
    let name = match (&a.name, &a.identity) {
        (Some(n), None) | (None, Some(n)) => n.as_str(),
        (Some(_), Some(_)) => return Err(Error::InvalidArgument("give the identity once".into()).into()),
        (None, None) => return Err(Error::InvalidArgument("missing identity name".into()).into()),
    };
    let v = verifier(a.mutate);
    let eps = Eps::from_u32(a.eps)?;
    let pairs = || PairIndex::new(list(&a.c)?);
    let k = list(&a.k)?;
    let l = a.l.as_deref().map(list).transpose()?.unwrap_or_else(|| vec![1; k.len()]);
    let report = match name {
        "main_finite" => v.main_finite(eps, &pairs()?, a.n, a.order)?,
        "main_finite_bz" => {
            let qs = a.q.split(',').map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>>>()?;
            v.main_finite_bz(&pairs()?, a.n, a.order, &qs)?
        }
        "main_infinite" => v.main_infinite(&pairs()?, a.order)?,
        "classical" => v.classical(&pairs()?, a.n)?,
        "g_diff" => verify_g_diff(eps, a.m, a.n, a.r, a.maxdeg, a.order)?,
        "recurrence" | "recurrence_with_m" => verify_recurrence(eps, a.m, a.n, a.r, a.maxdeg, a.order)?,
        "b_diff" => verify_b_diff(eps, a.m, a.n, a.maxdeg, a.order)?,
        "transform" => verify_transform(a.which, &l, &k, a.order)?,
        "dual_flat" => verify_remark(RemarkKind::DualFlat, &l, &k, a.n, a.order)?,
        "dual_diamond" => verify_remark(RemarkKind::DualDiamond, &l, &k, a.n, a.order)?,
        "qmsw" => verify_remark(RemarkKind::Qmsw, &[], &k, a.n, a.order)?,
        "bridge" => {
            let w: Word = a.word.parse()?;
            verify_bridge(&w, a.n, &parse_rational(a.q.split(',').next().unwrap_or("2").trim())?)?
        }
        "independence" => {
            let model = match a.model.as_str() {
                "dagger" => RankModel::Dagger,
                "bz" => RankModel::Bz,
                other => return Err(Error::InvalidArgument(format!("--model must be dagger or bz, got {other:?}")).into()),
            };
            let ns: Vec<u32> = (1..=a.n).collect();
            independence_check(model, a.max_weight, &ns, a.order)?
        }
        other => return Err(Error::InvalidArgument(format!("unknown identity {other:?}")).into()),
    };
    if as_json {
        println!("{}", emit(std::slice::from_ref(&report)));
    } else {
        println!("{}", text_line(&report));
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn text_line(r: &Report) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut line = format!("{} {} {}", if r.passed() { "pass" } else { "FAIL" }, r.identity, params.join(" "));
    if let Some(w) = &r.witness {
        line += &format!(" at {:?}: {} vs {}", w.position, w.left, w.right);
    }
    if let Some(d) = &r.details {
        line += &format!(" ({d})");
    }
    line
}

fn emit(reports: &[Report]) -> String {
    serde_json::to_string_pretty(reports).expect("report serialize")
}

fn suite(a: &SuiteArgs) -> std::result::Result<(), Failure> {
    let mut cfg = if a.config == "default" { SuiteConfig::default() } else { SuiteConfig::from_file(Path::new(&a.config))? };
    if !a.filter.is_empty() {
        cfg.filter = a.filter.clone();
    }
    let outcome = run_suite_with(&cfg, &verifier(a.mutate))?;
    println!("{}", emit(&outcome.reports));
    let s = &outcome.summary;
    eprintln!("{} cases: {} passed, {} failed", s.total, s.passed, s.failed);
    if s.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
