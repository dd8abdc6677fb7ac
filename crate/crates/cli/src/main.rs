//! `cubewell`: generate cube complexes and run well-separation analyses.
//!
//! Exit codes: 0 pass, 1 a checked property failed, 2 usage or input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cubewell_core::excursion::excursion_scan;
use cubewell_core::gamma::{bilipschitz_check, build_gamma, BilipschitzOutcome};
use cubewell_core::generators::{gen_grid, gen_random_median, gen_tree, TreeShape};
use cubewell_core::suite::{standard_suite, suite_instance};
use cubewell_core::{
    emit_cxc, gromov_product, parse_cxc, raag_hull, run_verify, CheckId, CubeComplex, Error, Instance,
    RaagPresentation, SublinearGauge, VerifyPlan, WellSepSpace,
};

#[derive(Parser, Debug)]
#[command(
    name = "cubewell",
    version,
    about = "Well-separation analysis of finite CAT(0) cube complexes"
)]
struct Cli {
    /// CXC file to read (`-` for standard input).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Seed for randomized generators and samplers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Well-separation level.
    #[arg(long, global = true)]
    k: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance as CXC.
    Gen(GenArgs),
    /// Print `vertices edges walls dimension diameter`.
    Info,
    /// Wall pair report: `h1 h2 relation sep wsep`.
    Analyze {
        /// Restrict to pairs among these walls.
        #[arg(long, value_delimiter = ',')]
        walls: Vec<usize>,
    },
    /// Well-separation distance between two vertices.
    Dk {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Also print the chain of walls realizing the distance.
        #[arg(long)]
        certificate: bool,
    },
    /// Build the well-separation graph.
    Gamma {
        /// Write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        check_bilipschitz: bool,
    },
    /// Excursion constant along the canonical geodesic.
    Excursion {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// const, const:C, sqrt, log, pow:P or logpow:P:Q.
        #[arg(long, default_value = "const")]
        gauge: String,
    },
    /// Gromov product `[x|y]_o`.
    Gromov { o: usize, x: usize, y: usize },
    /// Run metric checks.
    Verify(VerifyArgs),
    /// Run subcommands listed one per line in a file.
    Pipeline { config: PathBuf },
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
enum GenKind {
    /// Product of paths with the given numbers of vertices.
    Grid {
        #[arg(required = true)]
        widths: Vec<usize>,
    },
    /// Random recursive tree, or a balanced tree or star.
    Tree {
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, requires = "depth")]
        arity: Option<usize>,
        #[arg(long, requires = "arity")]
        depth: Option<usize>,
        #[arg(long)]
        star: Option<usize>,
    },
    /// Convex hull of a ball in a right-angled Artin group.
    Raag {
        /// Commuting pairs, e.g. `a-b,b-c`.
        #[arg(long, default_value = "")]
        graph: String,
        /// Generators with no commutations.
        #[arg(long, value_delimiter = ',')]
        extra: Vec<String>,
        #[arg(long)]
        radius: usize,
    },
    /// Random median graph by convex expansions.
    Random {
        #[arg(long)]
        size: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    /// Add every instance of the standard suite.
    #[arg(long)]
    suite: bool,
    /// Add a standard suite instance by name.
    #[arg(long = "instance")]
    instances: Vec<String>,
    /// Add a CXC file.
    #[arg(long = "file")]
    files: Vec<PathBuf>,
    /// Add a generated instance, e.g. `grid 4 4`.
    #[arg(long = "gen")]
    generated: Vec<String>,
    /// Levels to check; defaults to `--k` or 0,1.
    #[arg(long, value_delimiter = ',')]
    levels: Vec<usize>,
    /// Check identifiers, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    checks: Vec<String>,
    #[arg(long, default_value_t = 24)]
    geodesics: usize,
    #[arg(long, default_value_t = 100_000)]
    quadruples: u64,
}

/// Outcome of a subcommand that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Pass = 0,
    Violation = 1,
}

type CmdResult = Result<Status, Error>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    ExitCode::from(exit_code(run(&cli, &mut out)))
}

fn exit_code(result: CmdResult) -> u8 {
    match result {
        Ok(status) => status as u8,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> Error {
    Error::Input(format!("{}: {e}", path.display()))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Input(format!("writing output: {e}")))
}

fn load(input: &Option<PathBuf>) -> Result<CubeComplex, Error> {
    let path = input
        .as_ref()
        .ok_or_else(|| Error::Input("this subcommand needs --input FILE".into()))?;
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_err(path, e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| io_err(path, e))?
    };
    parse_cxc(&text)
}

fn run(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let k = cli.k.unwrap_or(0);
    match &cli.command {
        Command::Gen(args) => {
            let complex = generate(&args.kind, cli.seed)?;
            let text = emit_cxc(&complex);
            match &args.output {
                Some(path) => fs::write(path, text).map_err(|e| io_err(path, e))?,
                None => write_out(out, &text)?,
            }
            Ok(Status::Pass)
        }
        Command::Info => {
            let c = load(&cli.input)?;
            let line = format!(
                "{}\t{}\t{}\t{}\t{}\n",
                c.vertex_count(),
                c.edge_count(),
                c.wall_count(),
                c.dimension(),
                c.diameter()
            );
            write_out(out, &line)?;
            Ok(Status::Pass)
        }
        Command::Analyze { walls } => {
            let c = load(&cli.input)?;
            let ids: Vec<usize> = if walls.is_empty() {
                (0..c.wall_count()).collect()
            } else {
                walls.clone()
            };
            let mut text = String::new();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    let r = c.wall_pair_report(a, b)?;
                    let wsep = r.wsep.map_or_else(|| "-".to_string(), |w| w.degree.to_string());
                    text += &format!("{a}\t{b}\t{}\t{}\t{wsep}\n", r.relation.as_str(), r.sep_degree);
                }
            }
            write_out(out, &text)?;
            Ok(Status::Pass)
        }
        Command::Dk { from, to, certificate } => {
            let c = load(&cli.input)?;
            let space = WellSepSpace::new(&c);
            let cert = space.dk(*from, *to, k)?;
            let mut text = format!("{}\n", cert.distance());
            if *certificate {
                let walls: Vec<String> = cert.chain.iter().map(usize::to_string).collect();
                text += &format!("{}\n", walls.join(" "));
            }
            write_out(out, &text)?;
            Ok(Status::Pass)
        }
        Command::Gamma { dot, check_bilipschitz } => {
            let c = load(&cli.input)?;
            let dk = WellSepSpace::new(&c).dk_matrix(k);
            let gamma = build_gamma(&dk);
            let diameter = gamma.diameter().map_or_else(|| "inf".to_string(), |d| d.to_string());
            let mut text = format!("{}\t{}\t{diameter}\n", gamma.vertex_count(), gamma.edge_count());
            if let Some(path) = dot {
                fs::write(path, gamma.to_dot()).map_err(|e| io_err(path, e))?;
            }
            let mut status = Status::Pass;
            if *check_bilipschitz {
                match bilipschitz_check(&gamma, &dk)? {
                    BilipschitzOutcome::Pass => text += "BILIPSCHITZ PASS\n",
                    BilipschitzOutcome::Fail { pair, dk, d_gamma } => {
                        let g = d_gamma.map_or_else(|| "inf".to_string(), |d| d.to_string());
                        text += &format!("BILIPSCHITZ FAIL {} {} dk={dk} d_gamma={g}\n", pair.0, pair.1);
                        status = Status::Violation;
                    }
                }
            }
            write_out(out, &text)?;
            Ok(status)
        }
        Command::Excursion { from, to, gauge } => {
            let c = load(&cli.input)?;
            let gauge: SublinearGauge = gauge.parse()?;
            let path = c.geodesic(*from, *to)?;
            let report = excursion_scan(&c, &path, &gauge)?;
            let mut text = String::new();
            for (i, s) in report.steps.iter().enumerate() {
                let wsep = s.wsep.map_or_else(|| "-".to_string(), |w| w.to_string());
                text += &format!("{i}\t{}\t{}\t{}\t{wsep}\t{}\n", s.wall, s.time, s.gap, s.bound);
            }
            text += &format!("TAIL\t{}\t{}\n", report.tail.0, report.tail.1);
            text += &format!("BEST_C {}\n", report.best_constant);
            write_out(out, &text)?;
            Ok(Status::Pass)
        }
        Command::Gromov { o, x, y } => {
            let c = load(&cli.input)?;
            write_out(out, &format!("{}\n", gromov_product(&c, *o, *x, *y)?))?;
            Ok(Status::Pass)
        }
        Command::Verify(args) => verify(cli, args, out),
        Command::Pipeline { config } => pipeline(config, out),
    }
}

fn generate(kind: &GenKind, seed: Option<u64>) -> Result<CubeComplex, Error> {
    match kind {
        GenKind::Grid { widths } => gen_grid(widths),
        GenKind::Tree {
            size,
            arity,
            depth,
            star,
        } => {
            let shape = match (size, arity.zip(*depth), star) {
                (Some(size), None, None) => TreeShape::Random {
                    size: *size,
                    seed: seed.unwrap_or(0),
                },
                (None, Some((arity, depth)), None) => TreeShape::Balanced { arity, depth },
                (None, None, Some(leaves)) => TreeShape::Star { leaves: *leaves },
                _ => {
                    return Err(Error::Input(
                        "give exactly one of --size, --arity/--depth, --star".into(),
                    ))
                }
            };
            gen_tree(&shape)
        }
        GenKind::Raag { graph, extra, radius } => {
            let p = RaagPresentation::parse(graph, extra)?;
            Ok(raag_hull(&p, *radius)?.complex)
        }
        GenKind::Random { size } => gen_random_median(seed.unwrap_or(0), *size),
    }
}

/// Parses `grid 4 4`-style generator specs with the `gen` grammar.
fn parse_gen_spec(spec: &str) -> Result<GenKind, Error> {
    #[derive(Parser)]
    #[command(no_binary_name = true)]
    struct Spec {
        #[command(subcommand)]
        kind: GenKind,
    }
    Spec::try_parse_from(spec.split_whitespace())
        .map(|s| s.kind)
        .map_err(|e| Error::Input(format!("bad generator spec {spec:?}: {}", e.kind())))
}

fn verify(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let seed = cli.seed.unwrap_or(0);
    let mut instances = Vec::new();
    if args.suite {
        instances.extend(standard_suite()?);
    }
    for name in &args.instances {
        instances.push(suite_instance(name)?);
    }
    for path in args.files.iter().chain(cli.input.as_ref()) {
        let complex = load(&Some(path.clone()))?;
        instances.push(Instance::new(path.display().to_string(), complex));
    }
    for spec in &args.generated {
        let complex = generate(&parse_gen_spec(spec)?, Some(seed))?;
        instances.push(Instance::new(
            spec.split_whitespace().collect::<Vec<_>>().join("-"),
            complex,
        ));
    }
    let checks: Vec<CheckId> = if args.checks.iter().any(|c| c == "all") {
        CheckId::ALL.to_vec()
    } else {
        args.checks.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
    };
    let levels = match (&args.levels[..], cli.k) {
        ([], Some(k)) => vec![k],
        ([], None) => vec![0, 1],
        (levels, _) => levels.to_vec(),
    };
    let mut plan = VerifyPlan::new(instances, levels, checks);
    plan.seed = seed;
    plan.geodesic_budget = args.geodesics;
    plan.quadruple_budget = args.quadruples;
    let outcomes = run_verify(&plan)?;
    let mut text = String::new();
    for o in &outcomes {
        text += &format!("{o}\n");
    }
    write_out(out, &text)?;
    Ok(if outcomes.iter().all(|o| o.pass) {
        Status::Pass
    } else {
        Status::Violation
    })
}

/// Every line is parsed before anything runs, so a bad line leaves no
/// outputs behind. Lines run in order; an input error stops the batch.
fn pipeline(config: &Path, out: &mut dyn Write) -> CmdResult {
    let text = fs::read_to_string(config).map_err(|e| io_err(config, e))?;
    let mut commands = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let words = shlex::split(line).ok_or_else(|| Error::Parse {
            line: i + 1,
            message: "unbalanced quotes".into(),
        })?;
        let cli =
            Cli::try_parse_from(std::iter::once("cubewell".to_string()).chain(words)).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.kind().to_string(),
            })?;
        if matches!(cli.command, Command::Pipeline { .. }) {
            return Err(Error::Parse {
                line: i + 1,
                message: "pipelines cannot nest".into(),
            });
        }
        commands.push(cli);
    }
    let mut worst = Status::Pass;
    for cli in &commands {
        worst = worst.max(run(cli, out)?);
    }
    Ok(worst)
}
