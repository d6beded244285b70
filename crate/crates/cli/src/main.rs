//! `rmc`: command-line front end for the regular model checker.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rmc_core::abstraction::{self, Interpretation, PropertyGoal};
use rmc_core::bundle::read_file;
use rmc_core::format::{parse_interpretation, serialize_nfa, serialize_transducer};
use rmc_core::oracle::{simulate, FiniteSlice, Property, SimulationConfig};
use rmc_core::procedures::{self, DEFAULT_MAX_LENGTH};
use rmc_core::{
    corpus, parse_automaton, parse_nfa, parse_rts_bundle, Automaton, Basis, Direction, Error,
    Format, Limits, Nfa, Report, Result, Rts, Track, Verdict,
};

#[derive(Parser)]
#[command(name = "rmc", version, about = "Regular model checking of transition systems given by automata")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property with the symbolic procedures.
    Check(CheckArgs),
    /// Abstract problems over the potential reachability relation.
    Abstract(AbstractArgs),
    /// Check the consistency of a bundle.
    Validate(SystemArgs),
    /// Decide a property on the explicit slice of one length.
    Oracle(OracleArgs),
    /// Random runs under the uniform measure.
    Simulate(SimulateArgs),
    /// Operations on automata and transducers files.
    Algebra(AlgebraArgs),
    /// Inductive constraints of an interpretation.
    Constraint(ConstraintArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Bundle file, or the name of a bundled system.
    #[arg(long)]
    rts: String,
    /// Restrict the initial configurations to this length.
    #[arg(long)]
    length: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Ef,
    Egf,
    Af,
    Agf,
    AsF,
    AsGf,
    AsTerm,
    DeadlockFree,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Exact,
    Potential,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Exact => Basis::Exact,
            BasisArg::Potential => Basis::Potential,
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    property: CheckKind,
    #[command(flatten)]
    system: SystemArgs,
    /// Goal NFA file, or the name of a goal of a bundled system.
    #[arg(long)]
    goal: Option<String>,
    #[arg(long, value_enum, default_value = "exact")]
    basis: BasisArg,
    /// Length bound of the bounded procedures (af, agf, as-f).
    #[arg(long, default_value_t = DEFAULT_MAX_LENGTH)]
    max_length: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum AbstractKind {
    Safety,
    Liveness,
    SureTerm,
    AsLiveness,
    Validate,
}

#[derive(Args)]
struct AbstractArgs {
    #[arg(value_enum)]
    problem: AbstractKind,
    #[command(flatten)]
    system: SystemArgs,
    /// Goal set; the unsafe set for `safety`.
    #[arg(long)]
    goal: Option<String>,
    /// NFA for the configurations that can reach the goal.
    #[arg(long)]
    pre_of_goal: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// One of ef, egf, af, agf, asf, asgf, ast, df.
    #[arg(long)]
    property: String,
    #[arg(long)]
    goal: Option<String>,
    /// Write the slice to this file.
    #[arg(long)]
    dump_slice: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    rts: String,
    /// Start configuration, symbols separated by spaces.
    #[arg(long)]
    from: String,
    #[arg(long, default_value_t = 1000)]
    runs: usize,
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop a run at the first goal configuration.
    #[arg(long)]
    goal: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraOp {
    Union,
    Intersect,
    Complement,
    Compose,
    Image,
    Project,
    Inverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum TrackArg {
    Top,
    Bottom,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Post,
    Pre,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(value_enum)]
    op: AlgebraOp,
    /// First operand; the transducer for `image`.
    #[arg(long)]
    a: PathBuf,
    /// Second operand; the set for `image`.
    #[arg(long)]
    b: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "top")]
    track: TrackArg,
    #[arg(long, value_enum, default_value = "post")]
    direction: DirectionArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstraintKind {
    Inductive,
    Separates,
    Certify,
}

#[derive(Args)]
struct ConstraintArgs {
    #[arg(value_enum)]
    question: ConstraintKind,
    /// Interpretation file (`deterministic: true` transducer).
    #[arg(long)]
    interp: PathBuf,
    /// The constraint word.
    #[arg(long)]
    constraint: String,
    #[arg(long)]
    rts: Option<String>,
    /// Configuration inside the constraint.
    #[arg(long)]
    from: Option<String>,
    /// Configuration outside the constraint.
    #[arg(long)]
    to: Option<String>,
}

/// A loaded system and, for bundled systems, its corpus name.
struct System {
    rts: Rts,
    corpus_name: Option<String>,
}

fn load_system(args: &SystemArgs) -> Result<System> {
    let mut system = load_rts(&args.rts)?;
    if let Some(n) = args.length {
        system.rts = system.rts.restrict_to_length(n)?;
    }
    Ok(system)
}

fn load_rts(spec: &str) -> Result<System> {
    let path = Path::new(spec);
    let (rts, corpus_name) = if path.is_file() {
        (parse_rts_bundle(path)?, None)
    } else {
        (corpus::load(spec)?, Some(spec.to_string()))
    };
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("RMC_STATE_CAP") {
        limits.state_cap = v
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("RMC_STATE_CAP must be a number, found `{v}`")))?;
    }
    Ok(System { rts: rts.with_limits(limits), corpus_name })
}

fn load_goal(system: &System, spec: &str) -> Result<Nfa> {
    let path = Path::new(spec);
    let nfa = if path.is_file() {
        parse_nfa(&read_file(path)?)?
    } else if let Some(name) = &system.corpus_name {
        corpus::goal(name, spec)?
    } else {
        match spec {
            "empty" => Nfa::empty(system.rts.alphabet().clone()),
            "all" => Nfa::universal(system.rts.alphabet().clone()),
            _ => return Err(Error::InvalidArgument(format!("goal file `{spec}` not found"))),
        }
    };
    if nfa.alphabet() != system.rts.alphabet() {
        return Err(Error::AlphabetMismatch("goal alphabet differs from the system alphabet".into()));
    }
    Ok(nfa)
}

fn require_goal(system: &System, goal: &Option<String>) -> Result<Nfa> {
    match goal {
        Some(g) => load_goal(system, g),
        None => Err(Error::InvalidArgument("this command needs --goal".into())),
    }
}

fn verdict_report(command: &str, v: &Verdict, rts: &Rts) -> Report {
    Report::from_verdict(command, v, rts.alphabet())
}

fn run_check(args: &CheckArgs) -> Result<Report> {
    let system = load_system(&args.system)?;
    let rts = &system.rts;
    let name = variant_name(args.property);
    let basis = Basis::from(args.basis);
    let goal = || require_goal(&system, &args.goal);
    let v = match args.property {
        CheckKind::Ef => procedures::check_ef(rts, &goal()?)?,
        CheckKind::Egf => procedures::check_egf(rts, &goal()?, basis)?,
        CheckKind::Af => procedures::check_af_bounded(rts, &goal()?, args.max_length)?,
        CheckKind::Agf => procedures::check_agf_bounded(rts, &goal()?, args.max_length)?,
        CheckKind::AsF => procedures::check_as_f_bounded(rts, &goal()?, args.max_length)?,
        CheckKind::AsGf => procedures::check_as_gf(rts, &goal()?)?,
        CheckKind::AsTerm => procedures::check_as_termination(rts)?,
        CheckKind::DeadlockFree => procedures::check_deadlock_freedom(rts, basis)?,
    };
    Ok(verdict_report(&format!("check {name}"), &v, rts))
}

fn variant_name(v: impl ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn run_abstract(args: &AbstractArgs) -> Result<Report> {
    let system = load_system(&args.system)?;
    let rts = &system.rts;
    let command = format!("abstract {}", variant_name(args.problem));
    let v = match args.problem {
        AbstractKind::Safety => abstraction::abstract_safety(rts, &require_goal(&system, &args.goal)?)?,
        AbstractKind::Liveness => abstraction::abstract_liveness(rts, &require_goal(&system, &args.goal)?)?,
        AbstractKind::SureTerm => abstraction::abstract_sure_termination(rts)?,
        AbstractKind::AsLiveness => {
            let goal = require_goal(&system, &args.goal)?;
            let pre = match &args.pre_of_goal {
                Some(p) => Some(load_goal(&system, p)?),
                None => None,
            };
            abstraction::abstract_as_liveness(rts, &PropertyGoal { goal, pre_of_goal: pre })?
        }
        AbstractKind::Validate => {
            return Ok(Report::from_checks(command, &abstraction::validate_preach(rts)?));
        }
    };
    Ok(verdict_report(&command, &v, rts))
}

fn run_validate(args: &SystemArgs) -> Result<Report> {
    let path = Path::new(&args.rts);
    let rts = if path.is_file() {
        // Load without failing on validation so the report can show each check.
        match parse_rts_bundle(path) {
            Ok(r) => r,
            Err(Error::Validation(report)) => return Ok(Report::from_checks("validate", &report)),
            Err(e) => return Err(e),
        }
    } else {
        corpus::load(&args.rts)?
    };
    Ok(Report::from_checks("validate", &rts.validate()))
}

fn run_oracle(args: &OracleArgs) -> Result<Report> {
    let system = load_rts(&args.system.rts)?;
    let n = args
        .system
        .length
        .ok_or_else(|| Error::InvalidArgument("oracle needs --length".into()))?;
    let property = Property::parse(&args.property).ok_or_else(|| {
        let names: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
        Error::InvalidArgument(format!("unknown property `{}` (one of {})", args.property, names.join(", ")))
    })?;
    let goal = match &args.goal {
        Some(g) => load_goal(&system, g)?,
        None => Nfa::universal(system.rts.alphabet().clone()),
    };
    let rts = system.rts.restrict_to_length(n)?;
    let slice = FiniteSlice::explore(&rts, n, rts.limits().config_cap)?;
    if let Some(path) = &args.dump_slice {
        std::fs::write(path, slice.dump(rts.alphabet())).map_err(|source| Error::Io { path: path.clone(), source })?;
    }
    let result = slice.check(property, &goal)?;
    let mut v = if result.holds { Verdict::holds() } else { Verdict::fails() }.with_bound(n);
    v.witness = result.witness;
    let mut report = verdict_report(&format!("oracle {}", property.name()), &v, &rts);
    report.note = Some(format!("{} configurations explored at length {n}", slice.len()));
    Ok(report)
}

fn run_simulate(args: &SimulateArgs) -> Result<Report> {
    let system = load_rts(&args.rts)?;
    let rts = &system.rts;
    let c0 = rts.alphabet().parse_word(&args.from)?;
    let goal = match &args.goal {
        Some(g) => Some(load_goal(&system, g)?),
        None => None,
    };
    let cfg = SimulationConfig { seed: args.seed, max_steps: args.steps, runs: args.runs, ..Default::default() };
    let stats = simulate(rts, &c0, goal.as_ref(), &cfg)?;
    Ok(Report::new("simulate", rmc_core::Outcome::Holds).with_data(&stats))
}

fn read_automaton(path: &Path) -> Result<Automaton> {
    parse_automaton(&read_file(path)?)
}

fn run_algebra(args: &AlgebraArgs) -> Result<Report> {
    let a = read_automaton(&args.a)?;
    let b = match &args.b {
        Some(p) => Some(read_automaton(p)?),
        None => None,
    };
    let second = || b.clone().ok_or_else(|| Error::InvalidArgument("this operation needs --b".into()));
    let mismatch = || Error::InvalidArgument("operands have the wrong kinds for this operation".into());
    let out = match (args.op, &a) {
        (AlgebraOp::Union, Automaton::Nfa(x)) => match second()? {
            Automaton::Nfa(y) => Automaton::Nfa(x.union(&y)?),
            _ => return Err(mismatch()),
        },
        (AlgebraOp::Union, Automaton::Transducer(x)) => match second()? {
            Automaton::Transducer(y) => Automaton::Transducer(x.union(&y)?),
            _ => return Err(mismatch()),
        },
        (AlgebraOp::Intersect, Automaton::Nfa(x)) => match second()? {
            Automaton::Nfa(y) => Automaton::Nfa(x.intersect(&y)?),
            _ => return Err(mismatch()),
        },
        (AlgebraOp::Intersect, Automaton::Transducer(x)) => match second()? {
            Automaton::Transducer(y) => Automaton::Transducer(x.intersect(&y)?),
            _ => return Err(mismatch()),
        },
        (AlgebraOp::Complement, Automaton::Nfa(x)) => Automaton::Nfa(x.complement_capped(state_cap()?)?),
        (AlgebraOp::Compose, Automaton::Transducer(x)) => match second()? {
            Automaton::Transducer(y) => Automaton::Transducer(x.compose(&y)?.normalized()),
            _ => return Err(mismatch()),
        },
        (AlgebraOp::Image, Automaton::Transducer(x)) => match second()? {
            Automaton::Nfa(set) => {
                let dir = match args.direction {
                    DirectionArg::Post => Direction::Post,
                    DirectionArg::Pre => Direction::Pre,
                };
                Automaton::Nfa(x.image(&set, dir)?)
            }
            _ => return Err(mismatch()),
        },
        (AlgebraOp::Project, Automaton::Transducer(x)) => Automaton::Nfa(x.project(match args.track {
            TrackArg::Top => Track::Top,
            TrackArg::Bottom => Track::Bottom,
        })),
        (AlgebraOp::Inverse, Automaton::Transducer(x)) => Automaton::Transducer(x.inverse()),
        _ => return Err(mismatch()),
    };
    let text = match &out {
        Automaton::Nfa(n) => serialize_nfa(n),
        Automaton::Transducer(t) => serialize_transducer(t),
    };
    let mut report = Report::new(
        format!("algebra {}", variant_name(args.op)),
        rmc_core::Outcome::Holds,
    );
    report.output = Some(text);
    Ok(report)
}

fn state_cap() -> Result<usize> {
    match std::env::var("RMC_STATE_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("RMC_STATE_CAP must be a number, found `{v}`"))),
        Err(_) => Ok(Limits::default().state_cap),
    }
}

fn run_constraint(args: &ConstraintArgs) -> Result<Report> {
    let v: Interpretation = parse_interpretation(&read_file(&args.interp)?)?;
    let w = v.constraint_alphabet().parse_word(&args.constraint)?;
    let config = |s: &Option<String>, flag: &str| -> Result<Vec<usize>> {
        let s = s.as_ref().ok_or_else(|| Error::InvalidArgument(format!("this question needs --{flag}")))?;
        v.configuration_alphabet().parse_word(s)
    };
    let system = || -> Result<System> {
        let spec = args.rts.as_ref().ok_or_else(|| Error::InvalidArgument("this question needs --rts".into()))?;
        load_rts(spec)
    };
    let name = format!("constraint {}", variant_name(args.question));
    Ok(match args.question {
        ConstraintKind::Separates => {
            Report::from_bool(name, v.separates(&w, &config(&args.from, "from")?, &config(&args.to, "to")?)?)
        }
        ConstraintKind::Inductive => {
            let s = system()?;
            let r = abstraction::is_inductive(&s.rts, &v, &w)?;
            let mut report = Report::from_bool(name, r.inductive);
            if let Some((c, c2)) = r.counterexample {
                let a = s.rts.alphabet();
                report.note = Some(format!("step `{}` -> `{}` leaves the constraint", a.render(&c), a.render(&c2)));
            }
            report
        }
        ConstraintKind::Certify => {
            let s = system()?;
            let ok = abstraction::certify_unreachable(
                &s.rts,
                &v,
                &w,
                &config(&args.from, "from")?,
                &config(&args.to, "to")?,
            )?;
            Report::from_bool(name, ok)
        }
    })
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Check(a) => run_check(a),
        Command::Abstract(a) => run_abstract(a),
        Command::Validate(a) => run_validate(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Simulate(a) => run_simulate(a),
        Command::Algebra(a) => run_algebra(a),
        Command::Constraint(a) => run_constraint(a),
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
    let start = Instant::now();
    match run(&cli.command) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            let format = if cli.json { Format::Json } else { Format::Human };
            print!("{}", report.emit(format));
            if cli.json {
                println!();
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
