use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use jordan_core::finring::{
    check_theorem, search_family, Bounds, Family, FinRingError, LawSpec, RingSpec, TheoremReport,
    Verdict as RingVerdict,
};
use jordan_core::{parse_script, replay, Law, Verdict};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    #[value(name = "Zn", alias = "zn")]
    Zn,
    #[value(name = "Mat", alias = "mat")]
    Mat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyKind {
    #[value(name = "Zn", alias = "zn")]
    Zn,
    #[value(name = "Mat", alias = "mat")]
    Mat,
    /// A JSON list of ring specs given with --spec.
    #[value(name = "list")]
    List,
}

#[derive(Parser)]
#[command(
    name = "jordan",
    version,
    about = "Proof replay and finite-ring checks for (m,n)-Jordan maps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Largest ring scanned element by element and solved.
    #[arg(long)]
    max_size: Option<u64>,
    /// Largest solution set listed explicitly.
    #[arg(long)]
    max_solutions: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct LawArgs {
    #[arg(long)]
    law: Law,
    #[arg(long, default_value_t = 1)]
    m: i64,
    /// The law parameter n. With `--kind Zn` a leading `--n` is the modulus.
    #[arg(long = "n", action = ArgAction::Append)]
    n: Vec<i64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay a proof script. Exit 0 verified, 2 verified with assumptions,
    /// 1 failed, 3 unreadable.
    Prove {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a theorem on one finite ring. Exit 0 verified or hypotheses
    /// unmet, 1 counterexample, 3 error.
    Ring {
        /// Ring spec file (JSON).
        #[arg(long, conflicts_with = "kind")]
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        /// Modulus for `--kind Zn`.
        #[arg(long)]
        modulus: Option<u64>,
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Check a theorem across a family of rings.
    Search {
        #[arg(long, value_enum)]
        family: FamilyKind,
        /// Largest n for the Zn family.
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Moduli for the Mat family, comma separated.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure(String);

impl From<FinRingError> for Failure {
    fn from(e: FinRingError) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn setup(common: &Common) -> Result<Bounds, Failure> {
    if let Some(j) = common.jobs {
        if j == 0 {
            return Err(Failure("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure(e.to_string()))?;
    }
    let mut b = Bounds::default();
    if let Some(s) = common.max_size {
        if s == 0 {
            return Err(Failure("--max-size must be positive".into()));
        }
        b.max_size = s;
        b.pair_size = b.pair_size.min(s);
        b.triple_size = b.triple_size.min(s);
    }
    if let Some(s) = common.max_solutions {
        b.max_solutions = s;
    }
    Ok(b)
}

/// Splits the `--n` values into the law parameter and, for `Zn`, a leading modulus.
fn law_spec(args: &LawArgs, modulus_from_n: bool) -> Result<(LawSpec, Option<u64>), Failure> {
    let (modulus, rest) = match (modulus_from_n, args.n.as_slice()) {
        (true, [first, rest @ ..]) if !rest.is_empty() => (Some(*first), rest),
        (true, _) => {
            return Err(Failure(
                "--kind Zn needs a modulus: --modulus N, or --n N before the law's --n".into(),
            ))
        }
        (false, all) => (None, all),
    };
    if rest.len() > 1 {
        return Err(Failure("--n given more than once".into()));
    }
    let n = rest.first().copied().unwrap_or(1);
    let spec = LawSpec::new(args.law, args.m, n)?;
    let modulus = modulus
        .map(|v| u64::try_from(v).map_err(|_| Failure(format!("modulus {v} is negative"))))
        .transpose()?;
    Ok((spec, modulus))
}

fn print_report(r: &TheoremReport) {
    println!("ring: {} (order {})", r.ring, r.size);
    println!("law: {} (m,n) = ({},{})", r.law, r.m, r.n);
    println!("hypotheses:");
    for (k, v) in &r.hypotheses {
        println!("  {k}: {v}");
    }
    println!("solutions: {}", r.solutions);
    println!(
        "conclusion: {}",
        if r.conclusion_holds {
            "holds for every solution"
        } else {
            "fails"
        }
    );
    if let Some(w) = &r.witness {
        println!("witness: {w}");
    }
    println!("verdict: {}", r.verdict);
}

fn print_table(rows: &[TheoremReport]) {
    println!(
        "{:<16} {:>7} {:>9} {:>14} {:>10} {:>11}  verdict",
        "ring", "order", "semiprime", "torsion-free", "solutions", "conclusion"
    );
    for r in rows {
        let tf = r
            .hypotheses
            .get(&format!("{}-torsion-free", r.torsion))
            .copied()
            .unwrap_or(false);
        let flag = if r.hypotheses_hold() { "" } else { "  *" };
        println!(
            "{:<16} {:>7} {:>9} {:>14} {:>10} {:>11}  {}{flag}",
            r.ring,
            r.size,
            r.hypotheses["semiprime"],
            format!("{}({})", tf, r.torsion),
            r.solutions.to_string(),
            if r.conclusion_holds { "holds" } else { "fails" },
            r.verdict
        );
    }
    if rows.iter().any(|r| !r.hypotheses_hold()) {
        println!("* hypotheses unmet; the conclusion column shows whether it holds anyway");
    }
}

fn verdict_code(rows: &[TheoremReport]) -> u8 {
    u8::from(rows.iter().any(|r| r.verdict == RingVerdict::Counterexample))
}

fn prove(path: &PathBuf, format: Format) -> Result<u8, Failure> {
    let src = read(path)?;
    let script = parse_script(&src).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let r = replay(&script);
    match format {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => println!("{}", r.to_json()),
    }
    Ok(match r.verdict {
        Verdict::Verified => 0,
        Verdict::VerifiedWithAssumptions => 2,
        Verdict::Failed { .. } => 1,
    })
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Prove { path, format } => prove(&path, format),
        Cmd::Ring {
            spec,
            kind,
            k,
            p,
            modulus,
            law,
            common,
        } => {
            let bounds = setup(&common)?;
            let zn_from_n = matches!(kind, Some(Kind::Zn)) && modulus.is_none();
            let (lspec, n_modulus) = law_spec(&law, zn_from_n)?;
            let ring_spec = match (spec, kind) {
                (Some(path), _) => RingSpec::from_json(&read(&path)?)?,
                (None, Some(Kind::Zn)) => RingSpec::zn(modulus.or(n_modulus).expect("checked above")),
                (None, Some(Kind::Mat)) => {
                    RingSpec::mat(k.unwrap_or(2), p.ok_or_else(|| Failure("--kind Mat needs --p".into()))?)
                }
                (None, None) => return Err(Failure("give a ring with --spec or --kind".into())),
            };
            let ring = ring_spec.build()?;
            let report = check_theorem(&ring, &lspec, &bounds)?;
            match common.format {
                Format::Text => print_report(&report),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
            }
            Ok(verdict_code(std::slice::from_ref(&report)))
        }
        Cmd::Search {
            family,
            max,
            k,
            p,
            spec,
            law,
            common,
        } => {
            let bounds = setup(&common)?;
            let (lspec, _) = law_spec(&law, false)?;
            let fam = match family {
                FamilyKind::Zn => Family::Zn {
                    max: max.ok_or_else(|| Failure("--family Zn needs --max".into()))?,
                },
                FamilyKind::Mat => Family::Mat { k, ps: p },
                FamilyKind::List => {
                    let path = spec.ok_or_else(|| Failure("--family list needs --spec".into()))?;
                    let list: Vec<RingSpec> =
                        serde_json::from_str(&read(&path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    Family::Rings(list)
                }
            };
            let rows = search_family(&fam, &lspec, &bounds)?;
            match common.format {
                Format::Text => print_table(&rows),
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("reports serialize")),
            }
            Ok(verdict_code(&rows))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
