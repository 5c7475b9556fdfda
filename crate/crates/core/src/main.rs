//! Command-line surface: exact correlated-equilibrium analysis and dual
//! reduction of finite games in the line-oriented game file format.
//!
//! Exit codes: 0 success, 1 analysis refusal (e.g. a non-dual-vector input
//! or a size guard), 2 I/O or parse errors. All diagnostics go to stderr.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dualred::ce;
use dualred::dual;
use dualred::format;
use dualred::game::{CorrelatedStrategy, Game, MixedProfile};
use dualred::gen;
use dualred::nash;
use dualred::rational::format_rational;
use dualred::reduction::{self, Policy};
use dualred::report::{self, InfoDoc};

#[derive(Parser)]
#[command(
    name = "dualred",
    about = "Exact correlated-equilibrium analysis and dual reduction of finite games",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap (strategies per player) for equilibrium enumeration sections.
    #[arg(long, global = true)]
    max_size: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DualMode {
    Trivial,
    Full,
    Strong,
    StrongFull,
    ZeroSum,
    Redundancy,
}

impl DualMode {
    fn name(self) -> &'static str {
        match self {
            DualMode::Trivial => "trivial",
            DualMode::Full => "full",
            DualMode::Strong => "strong",
            DualMode::StrongFull => "strong-full",
            DualMode::ZeroSum => "zero-sum",
            DualMode::Redundancy => "redundancy",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Full,
    StrongFull,
}

#[derive(Subcommand)]
enum Command {
    /// Game summary with the full correlated-equilibrium report.
    Info { game: PathBuf },
    /// Witness correlated equilibrium and the jeopardization graph.
    Ce { game: PathBuf },
    /// Compute a dual vector and its gain table.
    Duals {
        game: PathBuf,
        #[arg(long, value_enum)]
        mode: DualMode,
    },
    /// One dual-reduction stage.
    Reduce {
        game: PathBuf,
        #[arg(long, value_enum)]
        mode: DualMode,
    },
    /// Iterate canonical reductions to an elementary game.
    Iterate {
        game: PathBuf,
        #[arg(long, value_enum)]
        policy: PolicyArg,
    },
    /// Certify a mixed profile or correlated strategy as an equilibrium.
    Certify {
        game: PathBuf,
        /// Mixed profile file: one weight line per player.
        #[arg(long, conflicts_with = "mu")]
        profile: Option<PathBuf>,
        /// Correlated strategy file: one weight per pure profile.
        #[arg(long)]
        mu: Option<PathBuf>,
    },
    /// Generate a seeded random game file.
    Gen {
        #[arg(long)]
        seed: u64,
        /// Comma-separated per-player action counts, e.g. 2,3.
        #[arg(long)]
        actions: String,
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long)]
        name: Option<String>,
    },
}

enum Failure {
    /// Exit 1: the analysis itself refused (bad input for the mode, guard).
    Refusal(String),
    /// Exit 2: I/O or parse problems.
    Io(String),
}

impl From<format::ParseError> for Failure {
    fn from(e: format::ParseError) -> Failure {
        Failure::Io(e.to_string())
    }
}

macro_rules! refusal_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for Failure {
            fn from(e: $ty) -> Failure {
                Failure::Refusal(e.to_string())
            }
        })*
    };
}

refusal_from!(
    dualred::game::GameError,
    dualred::lp::LpError,
    dualred::ce::CeError,
    dualred::dual::DualError,
    dualred::reduction::ReduceError,
    dualred::nash::NashError
);

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_game(path: &PathBuf) -> Result<Game, Failure> {
    let text = read_file(path)?;
    Ok(format::parse_game(&text)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(output) => {
            let done = match out_path {
                Some(path) => {
                    fs::write(&path, output).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => {
                    print!("{output}");
                    Ok(())
                }
            };
            match done {
                Ok(()) => ExitCode::from(0),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(2)
                }
            }
        }
        Err(Failure::Refusal(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Info { game } => {
            let g = load_game(game)?;
            let ce_report = ce::analyze(&g)?;
            let enum_cap = cli.max_size.unwrap_or(nash::DEFAULT_ENUMERATION_CAP);
            let abc_cap = cli.max_size.unwrap_or(nash::DEFAULT_CONDITIONS_CAP);
            let mut skipped = Vec::new();
            let nash_doc = if g.num_players() == 2 {
                match nash::bimatrix_nash_capped(&g, enum_cap) {
                    Ok(report) => Some(report::nash_report_doc(&report)),
                    Err(nash::NashError::SizeGuard { limit, found }) => {
                        skipped.push(format!(
                            "nash enumeration: {found} strategies exceed the cap {limit}"
                        ));
                        None
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                let report = nash::pure_nash(&g)?;
                Some(report::nash_report_doc(&report))
            };
            let conditions = if g.num_players() == 2 {
                match nash::check_conditions_abc_capped(&g, abc_cap) {
                    Ok(report) => Some(report::abc_doc(&report)),
                    Err(nash::NashError::SizeGuard { limit, found }) => {
                        skipped.push(format!(
                            "conditions (a)-(c): {found} strategies exceed the cap {limit}"
                        ));
                        None
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let doc = InfoDoc {
                game: report::GameDoc::new(&g),
                ce: report::ce_report_doc(&g, &ce_report),
                nash: nash_doc,
                conditions,
                skipped,
            };
            if cli.json {
                Ok(report::to_json(&doc))
            } else {
                Ok(render_info(&g, &doc))
            }
        }
        Command::Ce { game } => {
            let g = load_game(game)?;
            let ce_report = ce::analyze(&g)?;
            let doc = report::ce_report_doc(&g, &ce_report);
            if cli.json {
                Ok(report::to_json(&doc))
            } else {
                Ok(render_ce(&doc))
            }
        }
        Command::Duals { game, mode } => {
            let g = load_game(game)?;
            let (alpha, removed) = dual_vector_for_mode(&g, *mode)?;
            let table = dual::gains(&g, &alpha)?;
            let violations = dual::dual_vector_violations(&g, &alpha)?;
            let doc = report::dual_report_doc(
                &g,
                mode.name(),
                &alpha,
                &table,
                &violations,
                removed.as_deref(),
            );
            if cli.json {
                Ok(report::to_json(&doc))
            } else {
                Ok(render_duals(&doc))
            }
        }
        Command::Reduce { game, mode } => {
            let g = load_game(game)?;
            let (alpha, _) = dual_vector_for_mode(&g, *mode)?;
            let reduced = reduction::reduce(&g, &alpha)?;
            let doc = report::reduce_report_doc(mode.name(), &alpha, &reduced);
            if cli.json {
                Ok(report::to_json(&doc))
            } else {
                Ok(render_reduce(&doc))
            }
        }
        Command::Iterate { game, policy } => {
            let g = load_game(game)?;
            let (policy, name) = match policy {
                PolicyArg::Full => (Policy::Full, "full"),
                PolicyArg::StrongFull => (Policy::StrongFull, "strong-full"),
            };
            let trace = reduction::iterate_to_elementary(&g, policy)?;
            let doc = report::trace_doc(name, &trace);
            if cli.json {
                Ok(report::to_json(&doc))
            } else {
                Ok(render_trace(&doc))
            }
        }
        Command::Certify { game, profile, mu } => {
            let g = load_game(game)?;
            let (mu_value, profile_value): (CorrelatedStrategy, Option<MixedProfile>) =
                match (profile, mu) {
                    (Some(path), None) => {
                        let sigma = format::parse_mixed_profile(&read_file(path)?, &g)?;
                        let induced = sigma.to_correlated(&g)?;
                        (induced, Some(sigma))
                    }
                    (None, Some(path)) => {
                        let mu = format::parse_correlated(&read_file(path)?, &g)?;
                        (mu, None)
                    }
                    _ => {
                        return Err(Failure::Io(
                            "exactly one of --profile or --mu is required".into(),
                        ))
                    }
                };
            let doc = certify(&g, mu_value, profile_value)?;
            if cli.json {
                Ok(report::to_json(&doc))
            } else {
                Ok(render_certify(&doc))
            }
        }
        Command::Gen {
            seed,
            actions,
            lo,
            hi,
            name,
        } => {
            let counts: Result<Vec<usize>, _> = actions
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect();
            let counts =
                counts.map_err(|_| Failure::Io(format!("invalid action counts `{actions}`")))?;
            if counts.is_empty() || counts.contains(&0) {
                return Err(Failure::Io(format!("invalid action counts `{actions}`")));
            }
            if *lo > *hi {
                return Err(Failure::Io(format!("empty payoff range [{lo}, {hi}]")));
            }
            let mut g = gen::gen_game(*seed, &counts, *lo, *hi)?;
            g.set_name(name.clone());
            Ok(format::write_game(&g))
        }
    }
}

/// A deviation profile plus, for the redundancy mode, the removed
/// `(player, strategy)` pairs.
type ModeOutput = (dual::DeviationProfile, Option<Vec<(usize, usize)>>);

fn dual_vector_for_mode(game: &Game, mode: DualMode) -> Result<ModeOutput, Failure> {
    Ok(match mode {
        DualMode::Trivial => (dual::DeviationProfile::trivial(game), None),
        DualMode::Full => (dual::full_dual_vector(game)?, None),
        DualMode::Strong => (dual::strong_dual_vector(game)?, None),
        DualMode::StrongFull => (dual::strong_full_dual_vector(game)?, None),
        DualMode::ZeroSum => (dual::zero_sum_dual_vector_canonical(game)?, None),
        DualMode::Redundancy => {
            let (alpha, removed) = dual::redundancy_dual_vector(game)?;
            (alpha, Some(removed))
        }
    })
}

fn certify(
    game: &Game,
    mu: CorrelatedStrategy,
    profile: Option<MixedProfile>,
) -> Result<report::CertifyDoc, Failure> {
    let violations = ce::correlated_equilibrium_violations(game, &mu)?;
    let is_ce = violations.is_empty();
    let strict = if is_ce {
        Some(ce::is_strict_ce(game, &mu)?)
    } else {
        None
    };
    let product = match &profile {
        Some(sigma) => Some(sigma.clone()),
        None => mu.product_decomposition(game),
    };
    let (nash_verdict, quasi) = match &product {
        Some(sigma) => {
            let is_nash = nash::is_nash(game, sigma)?;
            let quasi = if is_nash {
                Some(nash::is_quasi_strict(game, sigma)?)
            } else {
                None
            };
            (Some(is_nash), quasi)
        }
        None => (None, None),
    };
    Ok(report::CertifyDoc {
        correlated_equilibrium: is_ce,
        violations: violations
            .iter()
            .map(|v| report::ViolationDoc {
                player: v.player + 1,
                from: game.label(v.player, v.from).to_string(),
                to: game.label(v.player, v.to).to_string(),
                gain: format_rational(&v.gain),
            })
            .collect(),
        strict,
        product_form: product.is_some(),
        nash: nash_verdict,
        quasi_strict: quasi,
        profile: product.as_ref().map(report::mixed_profile_doc),
        mu: report::correlated_doc(&mu),
    })
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

fn render_info(game: &Game, doc: &InfoDoc) -> String {
    let mut out = String::new();
    match game.name() {
        Some(name) => out.push_str(&format!("game {name}\n")),
        None => out.push_str("game (unnamed)\n"),
    }
    out.push_str(&format!(
        "players {}  actions {:?}\n",
        doc.game.players, doc.game.actions
    ));
    out.push_str(&render_ce(&doc.ce));
    if let Some(nash) = &doc.nash {
        out.push_str(&format!(
            "nash ({}, {}): {} equilibria\n",
            nash.method,
            if nash.degenerate {
                "degenerate"
            } else {
                "nondegenerate"
            },
            nash.equilibria.len()
        ));
        for e in &nash.equilibria {
            let rendered: Vec<String> = e
                .strategies
                .iter()
                .map(|m| format!("({})", m.weights.join(", ")))
                .collect();
            out.push_str(&format!("  {}\n", rendered.join(" x ")));
        }
    }
    if let Some(abc) = &doc.conditions {
        out.push_str(&format!(
            "conditions a={} b={} c={}{}\n",
            abc.a,
            abc.b,
            abc.c,
            if abc.degenerate { " (degenerate)" } else { "" }
        ));
    }
    for s in &doc.skipped {
        out.push_str(&format!("skipped: {s}\n"));
    }
    out
}

fn render_ce(doc: &report::CeReportDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "elementary {}  tight {}  pretight {}  dimension {}\n",
        doc.elementary, doc.tight, doc.pretight, doc.dimension
    ));
    for (i, set) in doc.coherent.iter().enumerate() {
        out.push_str(&format!("coherent p{}: {}\n", i + 1, set.join(" ")));
    }
    if doc.zero_profiles.is_empty() {
        out.push_str("zero-probability profiles: none\n");
    } else {
        let rendered: Vec<String> = doc
            .zero_profiles
            .iter()
            .map(|p| format!("({})", p.strategies.join(",")))
            .collect();
        out.push_str(&format!(
            "zero-probability profiles: {}\n",
            rendered.join(" ")
        ));
    }
    if doc.jeopardy.is_empty() {
        out.push_str("jeopardization: none\n");
    } else {
        out.push_str("jeopardization:\n");
        for e in &doc.jeopardy {
            out.push_str(&format!("  p{}: {} <- {}\n", e.player, e.from, e.to));
        }
    }
    out.push_str(&format!(
        "witness ce: {}\n",
        doc.witness_ce.weights.join(" ")
    ));
    out
}

fn render_duals(doc: &report::DualReportDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "mode {}  dual vector {}\n",
        doc.mode, doc.is_dual_vector
    ));
    for (i, plan) in doc.deviation_profile.plans.iter().enumerate() {
        for entry in plan {
            out.push_str(&format!(
                "  p{} {} -> ({})\n",
                i + 1,
                entry.from,
                entry.to_weights.join(", ")
            ));
        }
    }
    out.push_str("gains:\n");
    for row in &doc.gains {
        out.push_str(&format!(
            "  ({}) D = {}  [{}]\n",
            row.profile.strategies.join(","),
            row.total,
            row.per_player.join(", ")
        ));
    }
    if let Some(removed) = &doc.removed {
        if removed.is_empty() {
            out.push_str("removed: none\n");
        } else {
            let rendered: Vec<String> = removed
                .iter()
                .map(|r| format!("p{} {}", r.player, r.from))
                .collect();
            out.push_str(&format!("removed: {}\n", rendered.join(" ")));
        }
    }
    out
}

fn render_reduce(doc: &report::ReduceReportDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("mode {}\n", doc.mode));
    for c in &doc.classification {
        out.push_str(&format!("  p{} {}: {}\n", c.player, c.strategy, c.fate));
    }
    out.push_str("reduced game:\n");
    out.push_str(&indent(&render_game(&doc.reduced_game)));
    out
}

fn render_trace(doc: &report::TraceDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "policy {}  stages {}\n",
        doc.policy,
        doc.stages.len()
    ));
    for stage in &doc.stages {
        out.push_str(&format!("stage {}:\n", stage.stage));
        for c in &stage.classification {
            out.push_str(&format!("  p{} {}: {}\n", c.player, c.strategy, c.fate));
        }
    }
    out.push_str(&format!(
        "terminal (elementary {}):\n",
        doc.terminal_elementary
    ));
    out.push_str(&indent(&render_game(&doc.terminal)));
    out
}

fn render_game(doc: &report::GameDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "players {}  actions {:?}\n",
        doc.players, doc.actions
    ));
    for (i, labels) in doc.labels.iter().enumerate() {
        out.push_str(&format!("labels p{}: {}\n", i + 1, labels.join(" ")));
    }
    for row in &doc.payoffs {
        out.push_str(&format!("{}\n", row.join(" ")));
    }
    out
}

fn render_certify(doc: &report::CertifyDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "correlated equilibrium: {}\n",
        doc.correlated_equilibrium
    ));
    for v in &doc.violations {
        out.push_str(&format!(
            "  violated: p{} {} -> {} (gain {})\n",
            v.player, v.from, v.to, v.gain
        ));
    }
    if let Some(strict) = doc.strict {
        out.push_str(&format!("strict: {strict}\n"));
    }
    out.push_str(&format!("product form: {}\n", doc.product_form));
    if let Some(nash) = doc.nash {
        out.push_str(&format!("nash: {nash}\n"));
    }
    if let Some(quasi) = doc.quasi_strict {
        out.push_str(&format!("quasi-strict: {quasi}\n"));
    }
    out
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}
