use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use super::analysis::AnalysisDocument;
use crate::error::{Error, Result};
use crate::game::{Game, Profile};

/// Plain-text payoff table.
///
/// Every cell lists one rank per player in player order. A `*` follows a rank
/// when that player's action in the cell is a best response to the others;
/// equilibrium cells are bracketed. Games made of two persons with two traits
/// each get a nested grid (outer rows and columns over each person's first
/// trait, inner ones over the second); anything else is listed flat.
pub fn render_table(game: &Game, analysis: &AnalysisDocument) -> Result<String> {
    let names: Vec<&str> = game.players().iter().map(|p| p.name.as_str()).collect();
    if analysis.players != names {
        return Err(Error::Mismatch(format!(
            "analysis players {:?} differ from game players {:?}",
            analysis.players, names
        )));
    }
    let mismatch = |e: Error| Error::Mismatch(e.to_string());

    let equilibria: HashSet<Profile> = analysis
        .equilibria
        .iter()
        .map(|labels| game.profile_from_labels(labels).map_err(mismatch))
        .collect::<Result<_>>()?;

    let mut marks: HashMap<(usize, Vec<usize>), Vec<usize>> = HashMap::new();
    for mark in &analysis.best_responses {
        let player = game.player_by_name(&mark.player).map_err(mismatch)?.index;
        let others: Vec<usize> = (0..game.num_players()).filter(|&i| i != player).collect();
        if mark.context.len() != others.len() {
            return Err(Error::Mismatch(format!(
                "best-response context for {} has {} entries",
                mark.player,
                mark.context.len()
            )));
        }
        let context = others
            .iter()
            .zip(&mark.context)
            .map(|(&i, l)| game.action_index(i, l))
            .collect::<Result<Vec<_>>>()
            .map_err(mismatch)?;
        let responses = mark
            .responses
            .iter()
            .map(|l| game.action_index(player, l))
            .collect::<Result<Vec<_>>>()
            .map_err(mismatch)?;
        marks.insert((player, context), responses);
    }

    let mut cells: HashMap<Profile, String> = HashMap::new();
    for profile in game.enumerate_profiles() {
        let ranks = game.ranks(&profile)?;
        let mut parts = Vec::with_capacity(ranks.len());
        for (i, r) in ranks.iter().enumerate() {
            let responses = marks.get(&(i, profile.others(i))).ok_or_else(|| {
                Error::Mismatch(format!(
                    "no best-response entry for {} at {}",
                    names[i],
                    game.format_profile(&profile)
                ))
            })?;
            let star = if responses.contains(&profile.action(i)) {
                "*"
            } else {
                ""
            };
            parts.push(format!("{r}{star}"));
        }
        let body = parts.join(" ");
        let cell = if equilibria.contains(&profile) {
            format!("[{body}]")
        } else {
            format!(" {body} ")
        };
        cells.insert(profile, cell);
    }

    let mut out = String::new();
    writeln!(
        out,
        "ranks per cell: {}    (* best response, [ ] Nash equilibrium)",
        names.join(" ")
    )
    .unwrap();
    out.push('\n');

    match game.persons() {
        Some([p, q]) if p.players.len() == 2 && q.players.len() == 2 => nested(
            &mut out,
            game,
            &cells,
            [p.players[0], p.players[1], q.players[0], q.players[1]],
        ),
        _ => flat(&mut out, game, &cells),
    }

    out.push('\n');
    let mut listed: Vec<&Profile> = equilibria.iter().collect();
    listed.sort();
    if listed.is_empty() {
        writeln!(out, "Nash equilibria: none").unwrap();
    } else {
        let shown: Vec<String> = listed.iter().map(|p| game.format_profile(p)).collect();
        writeln!(
            out,
            "Nash equilibria ({}): {}",
            shown.len(),
            shown.join(" ")
        )
        .unwrap();
    }
    Ok(out)
}

fn cell_width(cells: &HashMap<Profile, String>) -> usize {
    cells.values().map(|c| c.chars().count()).max().unwrap_or(0)
}

fn nested(
    out: &mut String,
    game: &Game,
    cells: &HashMap<Profile, String>,
    [a, b, c, d]: [usize; 4],
) {
    let w = cell_width(cells);
    let label = |player: usize, action: usize| {
        format!(
            "{}={}",
            game.players()[player].name,
            game.actions(player)[action]
        )
    };
    let acts = |player: usize| 0..game.actions(player).len();

    let outer_w = acts(a).map(|x| label(a, x).len()).max().unwrap_or(0);
    let inner_w = acts(b).map(|x| label(b, x).len()).max().unwrap_or(0);
    let head_w = outer_w + 2 + inner_w;
    let span = acts(d).count() * (w + 3) - 3;

    let mut line = format!("{:head_w$} |", "");
    for xc in acts(c) {
        write!(line, " {:^span$} |", label(c, xc)).unwrap();
    }
    writeln!(out, "{line}").unwrap();

    let mut line = format!("{:head_w$} |", "");
    for _ in acts(c) {
        for xd in acts(d) {
            write!(line, " {:^w$} |", label(d, xd)).unwrap();
        }
    }
    writeln!(out, "{line}").unwrap();

    let mut rule = format!("{}+", "-".repeat(head_w + 1));
    for _ in 0..acts(c).count() * acts(d).count() {
        write!(rule, "{}+", "-".repeat(w + 2)).unwrap();
    }
    writeln!(out, "{rule}").unwrap();

    for xa in acts(a) {
        for xb in acts(b) {
            let outer = if xb == 0 { label(a, xa) } else { String::new() };
            let mut line = format!("{outer:outer_w$}  {:inner_w$} |", label(b, xb));
            for xc in acts(c) {
                for xd in acts(d) {
                    let mut profile = vec![0; game.num_players()];
                    profile[a] = xa;
                    profile[b] = xb;
                    profile[c] = xc;
                    profile[d] = xd;
                    write!(line, " {:^w$} |", cells[&Profile::new(profile)]).unwrap();
                }
            }
            writeln!(out, "{line}").unwrap();
        }
        writeln!(out, "{rule}").unwrap();
    }
}

fn flat(out: &mut String, game: &Game, cells: &HashMap<Profile, String>) {
    let w = cell_width(cells);
    let profiles: Vec<Profile> = game.enumerate_profiles().collect();
    let shown: Vec<String> = profiles.iter().map(|p| game.format_profile(p)).collect();
    let pw = shown
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max("profile".len());

    writeln!(out, "{:pw$} | ranks", "profile").unwrap();
    writeln!(out, "{}+{}", "-".repeat(pw + 1), "-".repeat(w + 1)).unwrap();
    for (p, s) in profiles.iter().zip(&shown) {
        let line = format!("{s:pw$} | {}", cells[p]);
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
}
