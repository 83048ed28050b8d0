use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use idcodes::format::{parse_digraph, parse_graph, to_compact, write_digraph};
use idcodes::generators::{Family, GeneratorSpec};
use idcodes::harness::{self, SufficientCase, SuiteReport};
use idcodes::idcode::{self, CodeError, EllBound, Limits, Verdict, DEFAULT_PAIR_BUDGET, DEFAULT_SUBSET_BUDGET};
use idcodes::mincode::{self, SolveStatus, DEFAULT_NODE_BUDGET};
use idcodes::patterns::{
    builtin_by_name, catalog_write, enumerate_obstructions, match_pattern, obstruction_size_bound, parse_catalog,
    write_catalog, MatchMode, Pattern,
};
use idcodes::{Digraph, VertexSet};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "idcodes", version, about = "Identifying codes in digraphs")]
struct Cli {
    /// Line-oriented output for scripts.
    #[arg(long, global = true)]
    machine: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Digraph file, or `-` for stdin.
    #[arg(long, value_name = "F")]
    input: PathBuf,
}

#[derive(Args)]
struct SubsetBudget {
    /// Maximum number of vertex subsets to enumerate.
    #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
    subset_budget: u64,
    /// Maximum number of subset pairs to compare.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
    pair_budget: u64,
}

impl SubsetBudget {
    fn limits(&self) -> Limits {
        Limits { subset_budget: self.subset_budget, pair_budget: self.pair_budget }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Greedy,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Remark2,
    Theorem3,
    Theorem2i,
    Theorem2ii,
    Theorem2iii,
    Theorem2iv,
    Theorem2v,
    Theorem4,
    Theorem5,
    Corollary3,
    Prop1,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Cycle,
    All,
    OneInRegular,
    DInRegular,
    Oriented,
    Random,
    Named,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Cycle => Family::DirectedCycle,
            FamilyArg::All => Family::All,
            FamilyArg::OneInRegular => Family::OneInRegular,
            FamilyArg::DInRegular => Family::DInRegular,
            FamilyArg::Oriented => Family::Oriented,
            FamilyArg::Random => Family::Random,
            FamilyArg::Named => Family::NamedGraph,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Does the digraph admit a (1,<=L)-identifying code?
    Admits {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ell: usize,
        /// Print a colliding pair when the answer is no.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        budget: SubsetBudget,
    },
    /// Is the given vertex set a (1,<=L)-identifying code?
    Check {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex list (may be empty).
        #[arg(long, value_name = "V1,V2,..", allow_hyphen_values = true)]
        code: String,
        #[arg(long)]
        ell: usize,
        #[command(flatten)]
        budget: SubsetBudget,
    },
    /// Smallest (1,<=L)-identifying code.
    Mincode {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        /// Search-node limit for the exact method.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Length of a shortest directed cycle.
    Girth {
        #[command(flatten)]
        input: Input,
    },
    /// Pairs of vertices with equal closed in-neighborhoods.
    Twins {
        #[command(flatten)]
        input: Input,
    },
    /// Upper bound on any admissible L.
    Bound {
        #[command(flatten)]
        input: Input,
    },
    /// Symmetric lift of an undirected graph file.
    Lift {
        #[command(flatten)]
        input: Input,
    },
    /// Search for a pattern as a (not necessarily induced) subdigraph.
    Match {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "pattern", required_unless_present = "pattern")]
        builtin: Option<String>,
        /// Digraph file or catalog file; a catalog matches if any member does.
        #[arg(long, value_name = "PF")]
        pattern: Option<PathBuf>,
        /// List every embedding instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Enumerate minimal obstructions for d-in-regular digraphs.
    Obstructions {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ell: usize,
        /// Largest obstruction order to search (default: the size bound).
        #[arg(long, value_name = "K")]
        max_size: Option<usize>,
        /// Catalog output file (default: stdout).
        #[arg(long, value_name = "CF")]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest order in the universe.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Pattern catalog for the theorem2iii..v suites.
        #[arg(long, value_name = "CF")]
        catalog: Option<PathBuf>,
    },
    /// Emit digraphs of a family as a stream of blocks.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        name: Option<String>,
        /// Random family: number of digraphs.
        #[arg(long)]
        samples: Option<usize>,
        /// Random family: arc probability.
        #[arg(long, value_name = "P")]
        p: Option<f64>,
    },
}

/// Errors that map to the budget exit code.
#[derive(Debug)]
struct BudgetExceeded(String);

impl std::fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BudgetExceeded {}

fn code_error(e: CodeError) -> anyhow::Error {
    match e {
        CodeError::ConfigLimit { .. } => BudgetExceeded(e.to_string()).into(),
        other => other.into(),
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_digraph(input: &Input) -> Result<Digraph> {
    let text = read_input(&input.input)?;
    parse_digraph(&text).with_context(|| format!("parsing {}", input.input.display()))
}

fn parse_code(n: usize, s: &str) -> Result<VertexSet> {
    let mut set = VertexSet::new(n);
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| anyhow!("invalid vertex `{tok}` in --code"))?;
        if v >= n {
            bail!("vertex {v} in --code is out of range for a digraph on {n} vertices");
        }
        set.insert(v);
    }
    Ok(set)
}

fn list(set: &VertexSet) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn verdict_exit(v: &Verdict) -> u8 {
    if v.holds {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

struct Out {
    machine: bool,
    buf: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }
}

fn run(cli: Cli, out: &mut Out) -> Result<u8> {
    match cli.command {
        Command::Admits { input, ell, witness, budget } => {
            let d = load_digraph(&input)?;
            let v = idcode::admits_with(&d, ell, &budget.limits()).map_err(code_error)?;
            if out.machine {
                out.line(if v.holds { "yes" } else { "no" });
            } else if v.holds {
                out.line(format!("admits a (1,<={ell})-identifying code"));
            } else {
                out.line(format!("no (1,<={ell})-identifying code"));
            }
            if witness {
                if let Some(w) = &v.witness {
                    out.line(w.to_string());
                }
            }
            Ok(verdict_exit(&v))
        }
        Command::Check { input, code, ell, budget } => {
            let d = load_digraph(&input)?;
            let code = parse_code(d.order(), &code)?;
            let v = idcode::is_identifying_code_with(&d, &code, ell, &budget.limits()).map_err(code_error)?;
            if out.machine {
                out.line(if v.holds { "yes" } else { "no" });
            } else if v.holds {
                out.line(format!("{code} is a (1,<={ell})-identifying code"));
            } else {
                out.line(format!("{code} is not a (1,<={ell})-identifying code"));
            }
            if let Some(w) = &v.witness {
                out.line(w.to_string());
            }
            Ok(verdict_exit(&v))
        }
        Command::Mincode { input, ell, method, budget } => {
            let d = load_digraph(&input)?;
            let r = match method {
                Method::Exact => mincode::minimum_identifying_code(&d, ell, budget),
                Method::Greedy => mincode::greedy_code(&d, ell),
            }
            .map_err(code_error)?;
            let status = match r.status {
                SolveStatus::Found => "found",
                SolveStatus::NotAdmissible => "not-admissible",
                SolveStatus::BudgetExceeded => "budget-exceeded",
            };
            match (&r.code, out.machine) {
                (Some(c), true) => out.line(format!("{status} {} {}", c.len(), list(c))),
                (None, true) => out.line(status),
                (Some(c), false) => {
                    let what = match (method, r.status) {
                        (Method::Greedy, _) => "greedy code",
                        (_, SolveStatus::BudgetExceeded) => "best code found before the budget ran out",
                        _ => "minimum code",
                    };
                    out.line(format!("{what}: size {} {c}", c.len()));
                    if method == Method::Exact {
                        out.line(format!("nodes explored: {}", r.nodes_explored));
                    }
                }
                (None, false) => out.line(format!("no (1,<={ell})-identifying code exists")),
            }
            Ok(match r.status {
                SolveStatus::Found => EXIT_YES,
                SolveStatus::NotAdmissible => EXIT_NO,
                SolveStatus::BudgetExceeded => EXIT_BUDGET,
            })
        }
        Command::Girth { input } => {
            let d = load_digraph(&input)?;
            out.line(d.girth().to_string());
            Ok(EXIT_YES)
        }
        Command::Twins { input } => {
            let d = load_digraph(&input)?;
            let twins = d.twins();
            for (u, v) in &twins {
                out.line(format!("{u} {v}"));
            }
            if twins.is_empty() && !out.machine {
                out.line("twin-free");
            }
            Ok(EXIT_YES)
        }
        Command::Bound { input } => {
            let d = load_digraph(&input)?;
            let b = idcode::max_ell_upper_bound(&d);
            if out.machine {
                out.line(b.to_string());
            } else {
                match b {
                    EllBound::AtMost(b) => out.line(format!("ell <= {b}")),
                    EllBound::Unbounded => out.line("unbounded (no arcs)"),
                }
            }
            Ok(EXIT_YES)
        }
        Command::Lift { input } => {
            let text = read_input(&input.input)?;
            let g = parse_graph(&text).with_context(|| format!("parsing {}", input.input.display()))?;
            out.buf.push_str(&write_digraph(&g.symmetric_lift()));
            Ok(EXIT_YES)
        }
        Command::Match { input, builtin, pattern, all } => {
            let d = load_digraph(&input)?;
            let patterns = match (builtin, pattern) {
                (Some(name), _) => {
                    vec![builtin_by_name(&name)
                        .ok_or_else(|| anyhow!("unknown built-in pattern `{name}` (try TT3 or F2)"))?]
                }
                (None, Some(path)) => load_patterns(&path)?,
                (None, None) => bail!("one of --builtin or --pattern is required"),
            };
            let mode = if all { MatchMode::AllOccurrences } else { MatchMode::FirstOnly };
            let mut found = false;
            for p in &patterns {
                for map in match_pattern(&d, p, mode) {
                    found = true;
                    let map = map.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                    if out.machine {
                        out.line(format!("{} {map}", p.name()));
                    } else {
                        out.line(format!("{} found at [{map}]", p.name()));
                    }
                }
                if found && !all {
                    break;
                }
            }
            if !found {
                out.line(if out.machine { "absent" } else { "no match" });
            }
            Ok(if found { EXIT_YES } else { EXIT_NO })
        }
        Command::Obstructions { d, ell, max_size, out: path } => {
            let k = max_size.unwrap_or_else(|| obstruction_size_bound(d, ell));
            let catalog = enumerate_obstructions(d, ell, k)?;
            match path {
                Some(path) => {
                    catalog_write(&catalog, &path).with_context(|| format!("writing {}", path.display()))?;
                    if out.machine {
                        out.line(catalog.len().to_string());
                    } else {
                        out.line(format!(
                            "{} minimal obstructions for d={d} ell={ell}, written to {}",
                            catalog.len(),
                            path.display()
                        ));
                    }
                }
                None => out.buf.push_str(&write_catalog(&catalog)),
            }
            Ok(EXIT_YES)
        }
        Command::Verify { suite, n, samples, seed, catalog } => {
            let report = verify(suite, n, samples, seed, catalog.as_deref())?;
            out.buf.push_str(&if out.machine { report.to_machine() } else { report.to_text() });
            Ok(if report.passed() { EXIT_YES } else { EXIT_NO })
        }
        Command::Gen { family, n, d, seed, name, samples, p } => {
            let mut spec = GeneratorSpec::new(family.into(), n);
            spec.d = d;
            spec.seed = seed;
            spec.name = name;
            spec.samples = samples;
            spec.arc_probability = p;
            let src = spec.source()?;
            for i in 0..src.total() {
                if i > 0 {
                    out.buf.push('\n');
                }
                let g = src.get(i).expect("index in range");
                if out.machine {
                    out.line(to_compact(&g));
                } else {
                    out.buf.push_str(&write_digraph(&g));
                }
            }
            Ok(EXIT_YES)
        }
    }
}

fn load_patterns(path: &Path) -> Result<Vec<Pattern>> {
    let text = read_input(path)?;
    if text.trim_start().starts_with("catalog") {
        let cat = parse_catalog(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(cat.members);
    }
    let body = parse_digraph(&text).with_context(|| format!("parsing {}", path.display()))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("pattern").to_string();
    Ok(vec![Pattern::new(name, body, None)?])
}

fn verify(
    suite: Suite,
    n: Option<usize>,
    samples: Option<usize>,
    seed: Option<u64>,
    catalog: Option<&Path>,
) -> Result<SuiteReport> {
    let report = match suite {
        Suite::Remark2 => harness::verify_remark2(n.unwrap_or(4))?,
        Suite::Theorem3 => harness::verify_theorem3(n.unwrap_or(6))?,
        Suite::Theorem4 => harness::verify_theorem4(n.unwrap_or(5))?,
        Suite::Theorem5 => harness::verify_theorem5(n.unwrap_or(5))?,
        Suite::Corollary3 => harness::verify_corollary3()?,
        Suite::Prop1 => {
            let seed = seed.ok_or_else(|| anyhow!("--suite prop1 needs an explicit --seed"))?;
            harness::verify_prop1(samples.unwrap_or(1000), seed)?
        }
        Suite::Theorem2i | Suite::Theorem2ii => {
            let case = if suite == Suite::Theorem2i { SufficientCase::I } else { SufficientCase::Ii };
            harness::verify_theorem2(case, &harness::default_sufficiency_universe(case, n.unwrap_or(5)))?
        }
        Suite::Theorem2iii | Suite::Theorem2iv | Suite::Theorem2v => {
            let case = match suite {
                Suite::Theorem2iii => SufficientCase::Iii,
                Suite::Theorem2iv => SufficientCase::Iv,
                _ => SufficientCase::V,
            };
            let path = catalog.ok_or_else(|| anyhow!("this suite needs a pattern list: pass --catalog CF"))?;
            let patterns = load_patterns(path)?;
            let universe = harness::default_sufficiency_universe(case, n.unwrap_or(5));
            harness::verify_theorem2_extended(case, &universe, Some(&patterns))?
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_YES });
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_ERROR);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    let mut out = Out { machine: cli.machine, buf: String::new() };
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<BudgetExceeded>().is_some() {
                EXIT_BUDGET
            } else {
                EXIT_ERROR
            }
        }
    };
    let mut stdout = io::stdout().lock();
    if stdout.write_all(out.buf.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(EXIT_ERROR);
    }
    ExitCode::from(code)
}
