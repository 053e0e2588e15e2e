use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multiself::extensive::NodeKind;
use multiself::io::{
    bundled, export_analysis, parse_spec, render_table, AnalysisDocument, GameSpecDocument,
};
use multiself::{backward_induction, framing_report, sequentialize, Error, Game, MoveOrder};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "multiself",
    version,
    about = "Analyse multiple-self normal-form games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pure Nash equilibria and per-person internal conflict.
    Solve(Common),
    /// Payoff table with best-response and equilibrium markers.
    Table(Common),
    /// Best responses of every player to every context.
    BestResponses(Common),
    /// Subgame-perfect outcomes for one move order.
    Spe {
        #[command(flatten)]
        common: Common,
        /// Comma-separated player names, first mover first.
        #[arg(long)]
        order: String,
    },
    /// Compare subgame-perfect outcomes across move orders.
    Framing {
        #[command(flatten)]
        common: Common,
        /// Use every permutation of the players.
        #[arg(long, conflicts_with = "order")]
        all_orders: bool,
        /// A move order to include; may be repeated.
        #[arg(long)]
        order: Vec<String>,
    },
    /// Check a spec document and the game it describes.
    Validate(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Spec file, or `bundled:<name>` for a shipped spec.
    spec: String,
    /// Override the guilt penalty of every altruistic trait.
    #[arg(long)]
    guilt: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::Schema { .. }
            | Error::InvalidGame(_)
            | Error::UnsupportedConfiguration(_) => EXIT_INPUT,
            Error::InvalidArgument(_) => EXIT_USAGE,
            Error::Mismatch(_) => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

fn load(common: &Common) -> Result<(GameSpecDocument, Game), Failure> {
    let text = match common.spec.strip_prefix("bundled:") {
        Some(name) => bundled::lookup(name)
            .ok_or_else(|| {
                Failure::new(
                    EXIT_USAGE,
                    format!(
                        "no bundled spec `{name}` (have: {})",
                        bundled::NAMES.join(", ")
                    ),
                )
            })?
            .to_string(),
        None => std::fs::read_to_string(&common.spec)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", common.spec)))?,
    };
    let mut spec = parse_spec(&text)?;
    if let Some(g) = common.guilt {
        spec = spec.with_guilt(g);
    }
    let game = spec.game()?;
    Ok((spec, game))
}

/// Re-checks the solver's equilibria against the no-improving-deviation rule.
fn check_equilibria(game: &Game, analysis: &AnalysisDocument) -> Result<(), Failure> {
    for labels in &analysis.equilibria {
        let p = game.profile_from_labels(labels)?;
        for i in 0..game.num_players() {
            let here = game.payoff_of(&p, i)?;
            for d in game.unilateral_deviations(&p, i)? {
                if game.payoff_of(&d, i)? > here {
                    return Err(Failure::new(
                        EXIT_INTERNAL,
                        format!(
                            "solver reported {} but it is not an equilibrium",
                            game.format_profile(&p)
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn solve_text(analysis: &AnalysisDocument) -> String {
    let mut out = String::new();
    writeln!(out, "players: {}", analysis.players.join(" ")).unwrap();
    if analysis.equilibria.is_empty() {
        writeln!(out, "Nash equilibria: none").unwrap();
        return out;
    }
    writeln!(out, "Nash equilibria ({}):", analysis.equilibria.len()).unwrap();
    for (k, labels) in analysis.equilibria.iter().enumerate() {
        write!(out, "  ({})", labels.join(",")).unwrap();
        if let Some(conflicts) = &analysis.conflicts {
            let torn: Vec<&str> = conflicts[k]
                .persons
                .iter()
                .filter(|p| p.conflicted)
                .map(|p| p.person.as_str())
                .collect();
            if torn.is_empty() {
                write!(out, "  no internal conflict").unwrap();
            } else {
                write!(out, "  in two minds: {}", torn.join(" ")).unwrap();
            }
        }
        out.push('\n');
    }
    if let Some(conflicts) = &analysis.conflicts {
        let all = conflicts
            .iter()
            .all(|c| c.persons.iter().all(|p| p.conflicted));
        if all {
            writeln!(
                out,
                "every person is internally conflicted at every equilibrium"
            )
            .unwrap();
        }
    }
    out
}

fn best_responses_text(game: &Game, analysis: &AnalysisDocument) -> String {
    let mut out = String::new();
    for mark in &analysis.best_responses {
        let player = game
            .player_by_name(&mark.player)
            .expect("analysis built from game")
            .index;
        let context: Vec<String> = (0..game.num_players())
            .filter(|&i| i != player)
            .zip(&mark.context)
            .map(|(i, a)| format!("{}={a}", game.players()[i].name))
            .collect();
        writeln!(
            out,
            "{:<4} | {} -> {{{}}}",
            mark.player,
            context.join(" "),
            mark.responses.join(",")
        )
        .unwrap();
    }
    out
}

fn outcome_list(game: &Game, outcomes: &[multiself::Profile]) -> String {
    outcomes
        .iter()
        .map(|p| game.format_profile(p))
        .collect::<Vec<_>>()
        .join(" ")
}

fn spe_text(game: &Game, order: &MoveOrder) -> Result<String, Failure> {
    let tree = sequentialize(game, order)?;
    let sol = backward_induction(&tree);
    let mut out = String::new();
    writeln!(out, "order: {}", order.display(game)).unwrap();
    writeln!(
        out,
        "subgame-perfect outcomes ({}): {}",
        sol.outcomes.len(),
        outcome_list(game, &sol.outcomes)
    )
    .unwrap();
    writeln!(out, "optimal moves:").unwrap();
    for (id, node) in tree.nodes().iter().enumerate() {
        if let NodeKind::Decision { mover, .. } = &node.kind {
            let history: Vec<String> = node
                .history
                .iter()
                .zip(order.players())
                .map(|(&a, &p)| format!("{}={}", game.players()[p].name, game.actions(p)[a]))
                .collect();
            let best: Vec<&str> = sol
                .optimal_at(id)
                .unwrap_or_default()
                .iter()
                .map(|&a| game.actions(*mover)[a].label())
                .collect();
            let at = if history.is_empty() {
                "(start)".to_string()
            } else {
                history.join(" ")
            };
            writeln!(
                out,
                "  {at}: {} plays {{{}}}",
                game.players()[*mover],
                best.join(",")
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn framing_text(game: &Game, report: &multiself::FramingReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        writeln!(
            out,
            "{} -> {}",
            e.order.display(game),
            outcome_list(game, &e.outcomes)
        )
        .unwrap();
    }
    if let Some(summary) = &report.summary {
        out.push('\n');
        if summary.all_same {
            writeln!(
                out,
                "all {} orders give the same outcome set",
                report.entries.len()
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "orders differ: {} distinct outcome sets across {} orders",
                summary.groups.len(),
                report.entries.len()
            )
            .unwrap();
            for (outcomes, ix) in &summary.groups {
                writeln!(
                    out,
                    "  {{{}}}: {} orders",
                    outcome_list(game, outcomes),
                    ix.len()
                )
                .unwrap();
            }
        }
    }
    out
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>), Failure> {
    let common = match &cli.command {
        Command::Solve(c)
        | Command::Table(c)
        | Command::BestResponses(c)
        | Command::Validate(c) => c,
        Command::Spe { common, .. } | Command::Framing { common, .. } => common,
    };
    let (spec, game) = load(common)?;
    let machine = common.format == Format::Machine;

    let text = match &cli.command {
        Command::Validate(_) => {
            let report = game.validate();
            if !report.is_valid() {
                return Err(Failure::new(EXIT_INPUT, report.to_string()));
            }
            if machine {
                export_analysis(&AnalysisDocument::new(&spec, &game, None)?)
            } else {
                format!(
                    "ok: {} players, {} profiles{}\n",
                    game.num_players(),
                    game.profile_count(),
                    spec.title
                        .as_deref()
                        .map(|t| format!(" ({t})"))
                        .unwrap_or_default()
                )
            }
        }
        Command::Solve(_) | Command::Table(_) | Command::BestResponses(_) => {
            let analysis = AnalysisDocument::new(&spec, &game, None)?;
            check_equilibria(&game, &analysis)?;
            if machine {
                export_analysis(&analysis)
            } else {
                match &cli.command {
                    Command::Solve(_) => solve_text(&analysis),
                    Command::Table(_) => render_table(&game, &analysis)?,
                    _ => best_responses_text(&game, &analysis),
                }
            }
        }
        Command::Spe { order, .. } => {
            let order = MoveOrder::parse(&game, order)?;
            if machine {
                let report = framing_report(&game, std::slice::from_ref(&order))?;
                export_analysis(&AnalysisDocument::new(&spec, &game, Some(&report))?)
            } else {
                spe_text(&game, &order)?
            }
        }
        Command::Framing {
            all_orders, order, ..
        } => {
            let orders = if *all_orders {
                MoveOrder::all(game.num_players())
            } else if order.is_empty() {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "framing needs --all-orders or at least one --order",
                ));
            } else {
                order
                    .iter()
                    .map(|o| MoveOrder::parse(&game, o))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let report = framing_report(&game, &orders)?;
            if machine {
                export_analysis(&AnalysisDocument::new(&spec, &game, Some(&report))?)
            } else {
                framing_text(&game, &report)
            }
        }
    };
    Ok((text, common.out.clone()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok((text, None)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok((text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(EXIT_INTERNAL)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message.trim_end());
            ExitCode::from(f.code)
        }
    }
}
