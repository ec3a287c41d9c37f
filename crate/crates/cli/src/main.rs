use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semihomology::chainkit::{good_truncation, homology, ChainComplex, HomologyReport};
use semihomology::diagmod::json::{map_from_json, map_to_json, module_from_json, module_text_dump, module_to_json};
use semihomology::diagmod::{DiagramModule, ModuleMap};
use semihomology::oracle::{
    check_fibration, check_weak_equivalence, generate_corpus, max_truncation, run_battery_with, run_counterexample,
    BatteryOptions, CorpusSpec, VerificationReport, DEFAULT_SEED, MAX_TRUNC_VAR,
};
use semihomology::simplexcat::{ComparisonFunctor, Kind};
use semihomology::transport::{
    augmented_chain, counit_map, induce, restrict, tor, CoefficientId, InductionResult,
};
use semihomology::Error;

#[derive(Parser)]
#[command(name = "semihomology", version, about = "Exact homology of semi-simplicial and semi-cubical modules")]
struct Cli {
    /// output format; modules and maps default to json, everything else to table
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// fail instead of shrinking when an induced module loses degrees
    #[arg(long, global = true)]
    window_strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Input {
    /// a module or map file (JSON)
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    trunc: i32,
    /// bound on per-degree dimensions of generated modules
    #[arg(long, default_value_t = 6)]
    max_dim: usize,
    /// number of representables, induced modules and sums, in that order
    #[arg(long, num_args = 3, value_names = ["REPS", "INDUCED", "SUMS"])]
    counts: Option<Vec<usize>>,
}

impl CorpusArgs {
    fn spec(&self) -> CorpusSpec {
        let mut spec = CorpusSpec {
            seed: self.seed,
            truncation: self.trunc,
            max_dim: self.max_dim,
            ..CorpusSpec::default()
        };
        if let Some(c) = &self.counts {
            spec.representables = c[0];
            spec.induced = c[1];
            spec.sums = c[2];
        }
        spec
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining identities of a module or a map
    Validate(Input),
    /// Homology of a chain complex, or of the complex underlying a module
    Homology(Input),
    /// Restrict a module along a comparison functor
    Restrict {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        functor: ComparisonFunctor,
    },
    /// The augmented chain complex of an augmented module
    Augment(Input),
    /// Forget degrees above a bound, or take the good truncation of an augmented complex
    Truncate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        trunc: Option<i32>,
        /// good truncation τ of a chain_neg1 complex
        #[arg(long)]
        good: bool,
    },
    /// Left Kan extension along a comparison functor
    Induce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        functor: ComparisonFunctor,
    },
    /// The unit `M -> u* u_! M`
    Unit {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        functor: ComparisonFunctor,
    },
    /// The counit `u_! u* X -> X`
    Counit {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        functor: ComparisonFunctor,
    },
    /// Tor against a fixed coefficient module
    Tor {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        coeff: CoefficientId,
    },
    /// Decide whether a map is a weak equivalence, four ways
    Weq(Input),
    /// Decide whether a map is a fibration
    Fib(Input),
    /// Reproduce the failure of the sign-embedding unit
    Counterexample {
        /// truncation of the induced cube module
        #[arg(long, default_value_t = 5)]
        trunc: i32,
    },
    /// Run every check over a random corpus
    Battery {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// record per-task wall time (output is then not reproducible)
        #[arg(long)]
        timed: bool,
    },
    /// Write a random corpus as module and map files
    Corpus {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Convert between module, map and report files
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        to: Target,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    /// canonical JSON
    Json,
    /// matrix dump
    Text,
    /// table (reports)
    Table,
}

enum Failure {
    /// exit 1
    Math(String),
    /// exit 2
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    if !s.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn format_of(text: &str) -> Option<String> {
    serde_json::from_str::<Value>(text)
        .ok()?
        .get("format")?
        .as_str()
        .map(str::to_string)
}

fn parse_module(path: &Path) -> Result<DiagramModule, Failure> {
    module_from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_module(path: &Path) -> Result<DiagramModule, Failure> {
    parse_module(path)?
        .validated()
        .map_err(|e| Failure::Input(format!("{}: refusing invalid module: {e}", path.display())))
}

fn parse_map(path: &Path) -> Result<ModuleMap, Failure> {
    map_from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<ModuleMap, Failure> {
    let f = parse_map(path)?;
    let refuse = |e: Error| Failure::Input(format!("{}: refusing invalid map: {e}", path.display()));
    let source = f.source().clone().validated().map_err(refuse)?;
    let target = f.target().clone().validated().map_err(refuse)?;
    ModuleMap::checked(source, target, f.components().clone()).map_err(refuse)
}

fn check_cap(n: i32) -> Outcome {
    let cap = max_truncation();
    if n > cap {
        return Err(Failure::Input(format!("truncation {n} exceeds the cap {cap} (set {MAX_TRUNC_VAR} to raise it)")));
    }
    Ok(())
}

/// The complex whose homology a module carries.
fn complex_of(x: &DiagramModule) -> Result<ChainComplex, Error> {
    match x.kind() {
        Kind::AugSsimp => augmented_chain(x),
        k if k.is_chain() => ChainComplex::from_module(x),
        _ => semihomology::transport::underlying_complex(x),
    }
}

fn homology_table(h: &HomologyReport) -> String {
    let mut s = format!("window [{}, {}]\ndegree  dim\n", h.window.0, h.window.1);
    for (n, d) in h.dims() {
        s += &format!("{n:>6}  {d}\n");
    }
    s
}

fn module_out(x: &DiagramModule, format: Option<Format>) {
    match format.unwrap_or(Format::Json) {
        Format::Json => emit(&module_to_json(x)),
        Format::Table => emit(&module_text_dump(x)),
    }
}

fn map_out(f: &ModuleMap, format: Option<Format>) {
    match format.unwrap_or(Format::Json) {
        Format::Json => emit(&map_to_json(f)),
        Format::Table => {
            let mut s = format!("source\n{}target\n{}", module_text_dump(f.source()), module_text_dump(f.target()));
            for (n, c) in f.components() {
                if c.rows() > 0 && c.cols() > 0 {
                    s += &format!("component {n}:\n{c}\n");
                }
            }
            emit(&s);
        }
    }
}

fn report_out(r: &VerificationReport, format: Option<Format>) -> Outcome {
    match format.unwrap_or(Format::Table) {
        Format::Json => emit(&r.to_json()),
        Format::Table => emit(&r.to_table()),
    }
    if r.is_success() {
        Ok(())
    } else {
        Err(Failure::Math(format!(
            "{} check(s) failed",
            r.summary.totals.fail + usize::from(r.summary.totals.expected_fail == 0)
        )))
    }
}

fn expected_top(u: ComparisonFunctor, m: &DiagramModule) -> i32 {
    if u == ComparisonFunctor::V {
        m.truncation() + 1
    } else {
        m.truncation()
    }
}

fn windowed(ind: &InductionResult, source: &DiagramModule, strict: bool) -> Outcome {
    let want = expected_top(ind.functor, source);
    let (lo, hi) = ind.valid_window;
    if hi < want {
        let msg = format!(
            "{}_! is only determined in degrees {lo}..={hi}, not up to {want}; free the top degree of the input",
            ind.functor
        );
        if strict {
            return Err(Failure::Input(msg));
        }
        eprintln!("warning: {msg}");
    }
    Ok(())
}

fn verdict_out(name: &str, value: Value, holds: bool, format: Option<Format>) {
    match format.unwrap_or(Format::Table) {
        Format::Json => emit(&pretty(&value)),
        Format::Table => {
            let mut s = format!("{name}: {}\n", if holds { "yes" } else { "no" });
            if let Value::Object(m) = value {
                for (k, v) in m {
                    s += &format!("  {k}: {v}\n");
                }
            }
            emit(&s);
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Validate(input) => {
            let text = read(&input.input)?;
            let (what, violation) = if format_of(&text).as_deref() == Some(semihomology::diagmod::json::MAP_FORMAT) {
                let f = parse_map(&input.input)?;
                let v = f.source().validate().err().or_else(|| f.target().validate().err()).or_else(|| f.check().err());
                ("map", v)
            } else {
                ("module", parse_module(&input.input)?.validate().err())
            };
            match format.unwrap_or(Format::Table) {
                Format::Json => emit(&pretty(&json!({"valid": violation.is_none(), "violation": violation}))),
                Format::Table => match &violation {
                    None => emit(&format!("valid {what}")),
                    Some(v) => emit(&format!("invalid {what}: {v}")),
                },
            }
            match violation {
                None => Ok(()),
                Some(v) => Err(Failure::Math(v.to_string())),
            }
        }
        Command::Homology(input) => {
            let x = load_module(&input.input)?;
            let h = homology(&complex_of(&x)?)?;
            match format.unwrap_or(Format::Table) {
                Format::Json => emit(&pretty(&serde_json::to_value(h.summary()).expect("serializes"))),
                Format::Table => emit(&homology_table(&h)),
            }
            Ok(())
        }
        Command::Restrict { input, functor } => {
            let x = load_module(&input.input)?;
            module_out(&restrict(functor, &x)?, format);
            Ok(())
        }
        Command::Augment(input) => {
            let x = load_module(&input.input)?;
            module_out(&augmented_chain(&x)?.to_module(), format);
            Ok(())
        }
        Command::Truncate { input, trunc, good } => {
            let mut x = load_module(&input.input)?;
            if let Some(n) = trunc {
                x = x.truncate_to(n)?;
            }
            if good {
                if x.kind() != Kind::ChainNeg1 {
                    return Err(Failure::Input(format!("good truncation needs a chain_neg1 complex, found {}", x.kind())));
                }
                x = good_truncation(&ChainComplex::from_module(&x)?)?.0.to_module();
            }
            module_out(&x, format);
            Ok(())
        }
        Command::Induce { input, functor } => {
            let m = load_module(&input.input)?;
            let ind = induce(functor, &m)?;
            windowed(&ind, &m, cli.window_strict)?;
            eprintln!("valid window [{}, {}]", ind.valid_window.0, ind.valid_window.1);
            module_out(&ind.module, format);
            Ok(())
        }
        Command::Unit { input, functor } => {
            let m = load_module(&input.input)?;
            let ind = induce(functor, &m)?;
            windowed(&ind, &m, cli.window_strict)?;
            map_out(&ind.unit()?, format);
            Ok(())
        }
        Command::Counit { input, functor } => {
            let x = load_module(&input.input)?;
            let (ind, eps) = counit_map(functor, &x)?;
            windowed(&ind, ind.source(), cli.window_strict)?;
            map_out(&eps, format);
            Ok(())
        }
        Command::Tor { input, coeff } => {
            let x = load_module(&input.input)?;
            let h = tor(&x, coeff)?;
            match format.unwrap_or(Format::Table) {
                Format::Json => emit(&pretty(&serde_json::to_value(h.summary()).expect("serializes"))),
                Format::Table => emit(&homology_table(&h)),
            }
            Ok(())
        }
        Command::Weq(input) => {
            let f = load_map(&input.input)?;
            let v = check_weak_equivalence(&f)?;
            verdict_out("weak equivalence", serde_json::to_value(&v).expect("serializes"), v.holds, format);
            if v.agree {
                Ok(())
            } else {
                Err(Failure::Math(format!("characterizations disagree: {:?}", v.conditions)))
            }
        }
        Command::Fib(input) => {
            let f = load_map(&input.input)?;
            let v = check_fibration(&f)?;
            verdict_out("fibration", serde_json::to_value(&v).expect("serializes"), v.holds, format);
            Ok(())
        }
        Command::Counterexample { trunc } => {
            check_cap(trunc)?;
            if trunc < 2 {
                return Err(Failure::Input("the counterexample needs truncation at least 2".into()));
            }
            report_out(&run_counterexample(trunc), format)
        }
        Command::Battery { corpus, timed } => {
            check_cap(corpus.trunc)?;
            let report = run_battery_with(&corpus.spec(), BatteryOptions { timed })?;
            report_out(&report, format)
        }
        Command::Corpus { corpus, out } => {
            check_cap(corpus.trunc)?;
            let c = generate_corpus(&corpus.spec())?;
            std::fs::create_dir_all(&out).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            let write = |name: &str, body: &str| {
                std::fs::write(out.join(name), body).map_err(|e| Failure::Input(format!("{name}: {e}")))
            };
            let mut index = Vec::new();
            for (i, m) in c.modules.iter().enumerate() {
                let name = format!("module_{i:03}.json");
                write(&name, &module_to_json(&m.module))?;
                index.push(json!({"file": name, "label": m.label, "kind": m.module.kind(), "dims": m.module.dims()}));
            }
            for (i, f) in c.maps.iter().enumerate() {
                let name = format!("map_{i:03}.json");
                write(&name, &map_to_json(&f.map))?;
                index.push(json!({"file": name, "label": f.label}));
            }
            let idx = json!({"seed": c.spec.seed, "truncation": c.spec.truncation, "entries": index, "pairs": c.pairs});
            write("index.json", &pretty(&idx))?;
            eprintln!("wrote {} modules and {} maps to {}", c.modules.len(), c.maps.len(), out.display());
            Ok(())
        }
        Command::Convert { input, to } => {
            let text = read(&input.input)?;
            let fmt = format_of(&text).unwrap_or_default();
            match (fmt.as_str(), to) {
                (semihomology::diagmod::json::MODULE_FORMAT, Target::Json) => emit(&module_to_json(&parse_module(&input.input)?)),
                (semihomology::diagmod::json::MODULE_FORMAT, Target::Text) => emit(&module_text_dump(&parse_module(&input.input)?)),
                (semihomology::diagmod::json::MAP_FORMAT, Target::Json) => emit(&map_to_json(&parse_map(&input.input)?)),
                (semihomology::diagmod::json::MAP_FORMAT, Target::Text) => map_out(&parse_map(&input.input)?, Some(Format::Table)),
                (semihomology::oracle::REPORT_FORMAT, t) => {
                    let r = VerificationReport::from_json(&text)?;
                    match t {
                        Target::Json => emit(&r.to_json()),
                        _ => emit(&r.to_table()),
                    }
                }
                ("", _) => return Err(Failure::Input(format!("{}: not a recognized file format", input.input.display()))),
                (f, _) => return Err(Failure::Input(format!("cannot convert {f} to the requested format"))),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
