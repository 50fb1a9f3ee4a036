//! `mvpavelka`: evaluation, proof checking, truth degrees and the
//! completeness and compactness harnesses from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on malformed
//! input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mvpavelka::algebra::identities::profile_suite;
use mvpavelka::algebra::{
    check_compatible_expansion, enumerate_congruences, FiniteAlgebra, DEFAULT_SIZE_BOUND,
    MV_OPERATIONS,
};
use mvpavelka::calculus::{check_proof, replay_prop33, Proof, SearchBudget};
use mvpavelka::degrees::{
    compactness_probe, pavelka_gap, truth_degree, truth_degree_exact_with, truth_degree_grid,
    GridOptions, DEFAULT_REGION_CAP, DEFAULT_SUBSET_BOUND,
};
use mvpavelka::num_rational::BigRational;
use mvpavelka::{eval, parse, Formula, LogicProfile, Rational01, Theory, Valuation};

#[derive(Parser, Debug)]
#[command(name = "mvpavelka", version, about = "Lukasiewicz logic with product, division, fixpoint and rational constants")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Enabled connectives: base[,product][,division][,fixpoint][,constants], or all.
    #[arg(long, global = true, default_value = "all")]
    profile: String,
    /// Seed for every randomized suite.
    #[arg(long, global = true, env = "MVPAVELKA_SEED", default_value_t = 0)]
    seed: u64,
    /// Proof-search step budget.
    #[arg(long, global = true, default_value_t = 400)]
    budget_steps: usize,
    /// Largest number of truncation nodes the exact solver accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_REGION_CAP)]
    region_cap: usize,
    /// Slack of the grid lower bound.
    #[arg(long, global = true, default_value = "1/100")]
    eps: String,
    /// Relaxation of the theory in the grid lower bound.
    #[arg(long, global = true, default_value = "1/100")]
    delta: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Where to write the emitted proof or report.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Lines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Exact on the piecewise-linear fragment, grid with products.
    Auto,
    Exact,
    Grid,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value of a formula under a valuation.
    Eval {
        formula: String,
        /// Assignments such as `p=1/2,q=3/4`.
        #[arg(long, default_value = "")]
        val: String,
    },
    /// Truth degree of a formula over a theory.
    Degree {
        formula: String,
        /// Theory file; the empty theory if absent.
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
    },
    /// Checks a proof file.
    Check { proof: PathBuf },
    /// Runs the equational suite of the profile.
    Axioms {
        /// Random valuations per sampled model.
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Largest division index tested.
        #[arg(long, default_value_t = 12)]
        division_max: u32,
    },
    /// Proof-degree lower bound against the truth degree.
    Gap {
        formula: String,
        #[arg(long)]
        theory: Option<PathBuf>,
    },
    /// Smallest sub-theory keeping a truth degree of at least `r`.
    Compact {
        formula: String,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BOUND)]
        bound: usize,
    },
    /// Congruences of a finite algebra file.
    Congr {
        algebra: PathBuf,
        /// Operations forming the reduct; the MV operations present by default.
        #[arg(long, value_delimiter = ',')]
        reduct: Vec<String>,
        /// Operations whose addition is tested for compatibility.
        #[arg(long, value_delimiter = ',')]
        expansion: Vec<String>,
    },
    /// Emits and checks a built-in derivation.
    Replay {
        #[command(subcommand)]
        which: Replay,
    },
}

#[derive(Subcommand, Debug)]
enum Replay {
    /// Monotonicity of the product: (α → β) → ((γ • α) → (γ • β)).
    Prop33 {
        #[arg(long, default_value = "p")]
        alpha: String,
        #[arg(long, default_value = "q")]
        beta: String,
        #[arg(long, default_value = "r")]
        gamma: String,
    },
}

/// Output lines; exit 1 when `ok` is false.
struct Report {
    lines: Vec<String>,
    ok: bool,
}

impl Report {
    fn ok(lines: Vec<String>) -> Self {
        Report { lines, ok: true }
    }
}

impl Config {
    fn profile(&self) -> anyhow::Result<LogicProfile> {
        LogicProfile::parse(&self.profile).map_err(|e| anyhow!(e))
    }

    fn formula(&self, text: &str) -> anyhow::Result<Formula> {
        parse(text, &self.profile()?).with_context(|| format!("parsing `{text}`"))
    }

    fn theory(&self, path: Option<&Path>) -> anyhow::Result<Theory> {
        let profile = self.profile()?;
        match path {
            None => Ok(Theory::empty(profile)),
            Some(p) => Theory::parse_file(&read(p)?, &profile).with_context(|| format!("reading theory {}", p.display())),
        }
    }

    fn positive(name: &str, text: &str) -> anyhow::Result<BigRational> {
        let r: Rational01 = text.parse().with_context(|| format!("--{name} `{text}`"))?;
        if r.is_zero() {
            bail!("--{name} must be positive");
        }
        Ok(r.into_inner())
    }

    fn grid(&self) -> anyhow::Result<GridOptions> {
        Ok(GridOptions::new(Self::positive("eps", &self.eps)?, Self::positive("delta", &self.delta)?))
    }

    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_steps: self.budget_steps,
            ..SearchBudget::default()
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Eval { formula, val } => {
            let f = cfg.formula(formula)?;
            let v = Valuation::parse(val).with_context(|| format!("valuation `{val}`"))?;
            let x = eval(&f, &v, &cfg.profile()?).context("evaluating")?;
            Ok(Report::ok(vec![x.to_string()]))
        }
        Command::Degree { formula, theory, engine } => {
            let f = cfg.formula(formula)?;
            let t = cfg.theory(theory.as_deref())?;
            let d = match engine {
                Engine::Auto => truth_degree(&f, &t, cfg.region_cap, &cfg.grid()?),
                Engine::Exact => truth_degree_exact_with(&f, &t, cfg.region_cap),
                Engine::Grid => Ok(truth_degree_grid(&f, &t, &cfg.grid()?)),
            }
            .context("computing the truth degree")?;
            Ok(Report::ok(match cfg.format {
                Format::Human => vec![d.summary()],
                Format::Lines => d.lines(),
            }))
        }
        Command::Check { proof } => {
            let p = Proof::parse_file(&read(proof)?, &cfg.profile()?).with_context(|| format!("reading proof {}", proof.display()))?;
            let v = check_proof(&p);
            Ok(Report {
                lines: v.lines(),
                ok: v.accepted(),
            })
        }
        Command::Axioms { trials, division_max } => {
            let lines = profile_suite(&cfg.profile()?, cfg.seed, *trials, *division_max).context("running the suite")?;
            let ok = lines.iter().all(|l| l.report.passed());
            let failures = lines.iter().filter(|l| !l.report.passed()).count();
            let mut out: Vec<String> = match cfg.format {
                Format::Lines => lines.iter().flat_map(|l| l.lines()).collect(),
                Format::Human => lines.iter().filter(|l| !l.report.passed()).flat_map(|l| l.lines()).collect(),
            };
            out.push(format!("identities {} failures {failures} seed {}", lines.len(), cfg.seed));
            Ok(Report { lines: out, ok })
        }
        Command::Gap { formula, theory } => {
            let f = cfg.formula(formula)?;
            let t = cfg.theory(theory.as_deref())?;
            let rep = pavelka_gap(&f, &t, &cfg.budget(), cfg.region_cap, &cfg.grid()?).context("computing the gap")?;
            let mut lines = rep.lines();
            if let Some(path) = &cfg.out {
                write(path, &rep.proof.proof.to_file())?;
                lines.push(format!("proof_file {}", path.display()));
            }
            Ok(Report { lines, ok: rep.sound })
        }
        Command::Compact { formula, theory, r, bound } => {
            let f = cfg.formula(formula)?;
            let t = cfg.theory(Some(theory))?;
            let r: Rational01 = r.parse().with_context(|| format!("--r `{r}`"))?;
            let rep = compactness_probe(&f, &t, &r, *bound).context("probing")?;
            Ok(Report::ok(rep.lines(&t)))
        }
        Command::Congr { algebra, reduct, expansion } => {
            let a = FiniteAlgebra::parse_file(&read(algebra)?).with_context(|| format!("reading algebra {}", algebra.display()))?;
            let reduct: Vec<&str> = if reduct.is_empty() {
                MV_OPERATIONS.iter().copied().filter(|op| a.operation(op).is_some()).collect()
            } else {
                reduct.iter().map(String::as_str).collect()
            };
            let con = enumerate_congruences(&a, &reduct, DEFAULT_SIZE_BOUND).context("enumerating congruences")?;
            let mut lines = vec![
                format!("size {}", a.size()),
                format!("signature {}", reduct.join(",")),
                format!("congruences {}", con.len()),
                format!("simple {}", if con.is_simple() { "yes" } else { "no" }),
            ];
            lines.extend(con.partitions.iter().map(|p| format!("partition {p}")));
            let mut ok = true;
            if !expansion.is_empty() {
                let ext: Vec<&str> = expansion.iter().map(String::as_str).collect();
                ok = check_compatible_expansion(&a, &reduct, &ext, DEFAULT_SIZE_BOUND).context("checking the expansion")?;
                lines.push(format!("compatible {}", if ok { "yes" } else { "no" }));
            }
            Ok(Report { lines, ok })
        }
        Command::Replay { which: Replay::Prop33 { alpha, beta, gamma } } => {
            let profile = LogicProfile::BASE.with_product();
            let args: Vec<Formula> = [alpha, beta, gamma]
                .iter()
                .map(|s| parse(s, &profile).with_context(|| format!("parsing `{s}`")))
                .collect::<anyhow::Result<_>>()?;
            let proof = replay_prop33(&args[0], &args[1], &args[2]);
            let verdict = check_proof(&proof);
            let file = proof.to_file();
            let mut lines = Vec::new();
            match &cfg.out {
                Some(path) => {
                    write(path, &file)?;
                    lines.push(format!("proof_file {}", path.display()));
                }
                None => lines.extend(file.lines().map(str::to_string)),
            }
            lines.extend(verdict.lines());
            Ok(Report {
                lines,
                ok: verdict.accepted(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            for l in &report.lines {
                println!("{l}");
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
