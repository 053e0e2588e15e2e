//! Finite normal-form games with ordinal payoffs.
//!
//! A [`Game`] stores one rank per player for every profile in the full
//! cartesian product of the action sets. Storage is a dense tensor laid out in
//! lexicographic profile order (last player varies fastest), which is also the
//! order [`Game::enumerate_profiles`] yields.
//!
//! Ranks are only ever compared, never added or averaged.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An action label such as `C` or `D`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Action(String);

impl Action {
    pub fn new(label: impl Into<String>) -> Self {
        Action(label.into())
    }

    pub fn cooperate() -> Self {
        Action::new("C")
    }

    pub fn defect() -> Self {
        Action::new("D")
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Action {
    fn from(s: &str) -> Self {
        Action::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlayerId {
    pub index: usize,
    pub name: String,
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Ordinal preference level. Higher is preferred; only the order is meaningful.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rank(u32);

impl Rank {
    pub const LOWEST: Rank = Rank(1);

    /// Checked constructor: `1 <= value <= scale_max`.
    pub fn new(value: u32, scale_max: u32) -> Result<Self> {
        if value == 0 || value > scale_max {
            return Err(Error::invalid(format!(
                "rank {value} outside scale 1..={scale_max}"
            )));
        }
        Ok(Rank(value))
    }

    pub(crate) fn from_raw(value: u32) -> Self {
        Rank(value)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One action index per player, in player-index order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile(Vec<usize>);

impl Profile {
    pub fn new(actions: Vec<usize>) -> Self {
        Profile(actions)
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn action(&self, player: usize) -> usize {
        self.0[player]
    }

    /// Copy of this profile with `player` switched to `action`.
    pub fn with(&self, player: usize, action: usize) -> Profile {
        let mut next = self.0.clone();
        next[player] = action;
        Profile(next)
    }

    /// The actions of everyone except `player`.
    pub fn others(&self, player: usize) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != player)
            .map(|(_, &a)| a)
            .collect()
    }

    /// Inverse of [`Profile::others`].
    pub fn from_others(player: usize, own: usize, others: &[usize]) -> Profile {
        let mut actions = Vec::with_capacity(others.len() + 1);
        actions.extend_from_slice(&others[..player]);
        actions.push(own);
        actions.extend_from_slice(&others[player..]);
        Profile(actions)
    }
}

impl From<Vec<usize>> for Profile {
    fn from(v: Vec<usize>) -> Self {
        Profile(v)
    }
}

/// Which players make up a person, when the game came from a composite spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersonInfo {
    pub name: String,
    pub players: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    players: Vec<PlayerId>,
    actions: Vec<Vec<Action>>,
    scale_max: u32,
    /// Row-major: `payoffs[profile_index * n + player]`.
    payoffs: Vec<Rank>,
    persons: Option<Vec<PersonInfo>>,
}

impl Game {
    /// Builds a game by evaluating `ranks` at every profile, then validates it.
    pub fn from_fn<F>(
        players: Vec<String>,
        actions: Vec<Vec<Action>>,
        scale_max: u32,
        mut ranks: F,
    ) -> Result<Game>
    where
        F: FnMut(&Profile) -> Result<Vec<u32>>,
    {
        if players.len() != actions.len() {
            return Err(Error::invalid(format!(
                "{} players but {} action sets",
                players.len(),
                actions.len()
            )));
        }
        let mut draft = GameDraft {
            players,
            actions,
            scale_max,
            payoffs: BTreeMap::new(),
        };
        for profile in ProfileIter::new(draft.actions.iter().map(Vec::len).collect()) {
            let r = ranks(&profile)?;
            draft.payoffs.insert(profile, r);
        }
        draft.build()
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[PlayerId] {
        &self.players
    }

    pub fn player(&self, index: usize) -> Result<&PlayerId> {
        self.players
            .get(index)
            .ok_or_else(|| Error::invalid(format!("no player with index {index}")))
    }

    pub fn player_by_name(&self, name: &str) -> Result<&PlayerId> {
        self.players
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::invalid(format!("no player named `{name}`")))
    }

    pub fn actions(&self, player: usize) -> &[Action] {
        &self.actions[player]
    }

    pub fn action_sets(&self) -> &[Vec<Action>] {
        &self.actions
    }

    pub fn scale_max(&self) -> u32 {
        self.scale_max
    }

    pub fn persons(&self) -> Option<&[PersonInfo]> {
        self.persons.as_deref()
    }

    pub(crate) fn with_persons(mut self, persons: Vec<PersonInfo>) -> Self {
        self.persons = Some(persons);
        self
    }

    /// Product of the action-set sizes.
    pub fn profile_count(&self) -> usize {
        self.actions.iter().map(Vec::len).product()
    }

    /// Every profile exactly once, lexicographic in action indices.
    pub fn enumerate_profiles(&self) -> ProfileIter {
        ProfileIter::new(self.actions.iter().map(Vec::len).collect())
    }

    pub fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.len() != self.num_players() {
            return Err(Error::invalid(format!(
                "profile has {} entries, game has {} players",
                profile.len(),
                self.num_players()
            )));
        }
        for (player, (&a, set)) in profile.actions().iter().zip(&self.actions).enumerate() {
            if a >= set.len() {
                return Err(Error::invalid(format!(
                    "action index {a} out of range for player {}",
                    self.players[player]
                )));
            }
        }
        Ok(())
    }

    fn index_of(&self, profile: &Profile) -> usize {
        profile
            .actions()
            .iter()
            .zip(&self.actions)
            .fold(0, |acc, (&a, set)| acc * set.len() + a)
    }

    /// Rank vector at `profile`, one entry per player.
    pub fn ranks(&self, profile: &Profile) -> Result<&[Rank]> {
        self.check_profile(profile)?;
        let n = self.num_players();
        let base = self.index_of(profile) * n;
        Ok(&self.payoffs[base..base + n])
    }

    pub fn payoff_of(&self, profile: &Profile, player: usize) -> Result<Rank> {
        self.player(player)?;
        Ok(self.ranks(profile)?[player])
    }

    /// Profiles that differ from `profile` only at `player`, excluding `profile` itself.
    pub fn unilateral_deviations(&self, profile: &Profile, player: usize) -> Result<Vec<Profile>> {
        self.player(player)?;
        self.check_profile(profile)?;
        let own = profile.action(player);
        Ok((0..self.actions[player].len())
            .filter(|&a| a != own)
            .map(|a| profile.with(player, a))
            .collect())
    }

    pub fn action_index(&self, player: usize, label: &str) -> Result<usize> {
        self.actions[player]
            .iter()
            .position(|a| a.label() == label)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "`{label}` is not an action of player {}",
                    self.players[player]
                ))
            })
    }

    pub fn profile_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Profile> {
        if labels.len() != self.num_players() {
            return Err(Error::invalid(format!(
                "profile has {} entries, game has {} players",
                labels.len(),
                self.num_players()
            )));
        }
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| self.action_index(i, l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Profile)
    }

    pub fn profile_labels(&self, profile: &Profile) -> Vec<String> {
        profile
            .actions()
            .iter()
            .enumerate()
            .map(|(i, &a)| self.actions[i][a].label().to_string())
            .collect()
    }

    /// `(C,D,C,D)` style rendering.
    pub fn format_profile(&self, profile: &Profile) -> String {
        format!("({})", self.profile_labels(profile).join(","))
    }

    /// Unvalidated copy, e.g. for editing or re-validation.
    pub fn to_draft(&self) -> GameDraft {
        GameDraft {
            players: self.players.iter().map(|p| p.name.clone()).collect(),
            actions: self.actions.clone(),
            scale_max: self.scale_max,
            payoffs: self
                .enumerate_profiles()
                .map(|p| {
                    let r = self
                        .ranks(&p)
                        .expect("enumerated profile")
                        .iter()
                        .map(|r| r.0)
                        .collect();
                    (p, r)
                })
                .collect(),
        }
    }

    /// Re-checks every game invariant. A game built through [`GameDraft::build`]
    /// always yields an empty report.
    pub fn validate(&self) -> ValidationReport {
        self.to_draft().validate()
    }

    /// Same game with players reordered: new player `k` is old player `perm[k]`.
    pub fn permute_players(&self, perm: &[usize]) -> Result<Game> {
        check_permutation(perm, self.num_players())?;
        let players = perm.iter().map(|&i| self.players[i].name.clone()).collect();
        let actions = perm.iter().map(|&i| self.actions[i].clone()).collect();
        Game::from_fn(players, actions, self.scale_max, |p| {
            let mut old = vec![0; perm.len()];
            for (k, &i) in perm.iter().enumerate() {
                old[i] = p.action(k);
            }
            let r = self.ranks(&Profile(old))?;
            Ok(perm.iter().map(|&i| r[i].0).collect())
        })
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::invalid(format!(
            "order has {} entries, game has {n} players",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in perm {
        if i >= n {
            return Err(Error::invalid(format!("player index {i} out of range")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::invalid(format!("player index {i} appears twice")));
        }
    }
    Ok(())
}

/// Odometer over a mixed-radix index space; the last coordinate moves fastest.
#[derive(Clone, Debug)]
pub struct ProfileIter {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl ProfileIter {
    pub fn new(sizes: Vec<usize>) -> Self {
        let next = if sizes.contains(&0) {
            None
        } else {
            Some(vec![0; sizes.len()])
        };
        ProfileIter { sizes, next }
    }
}

impl Iterator for ProfileIter {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.sizes[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Profile(current))
    }
}

/// A game whose invariants have not been checked yet. Ranks are kept as raw
/// integers so out-of-scale values can be represented and reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameDraft {
    pub players: Vec<String>,
    pub actions: Vec<Vec<Action>>,
    pub scale_max: u32,
    pub payoffs: BTreeMap<Profile, Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    ZeroScale,
    ActionSetCountMismatch {
        players: usize,
        action_sets: usize,
    },
    DuplicatePlayer {
        name: String,
    },
    EmptyPlayerName {
        player: usize,
    },
    EmptyActionSet {
        player: String,
    },
    EmptyActionLabel {
        player: String,
    },
    DuplicateAction {
        player: String,
        label: String,
    },
    MissingProfile {
        profile: String,
    },
    InvalidProfile {
        profile: String,
    },
    RankCount {
        profile: String,
        expected: usize,
        found: usize,
    },
    RankOutOfBounds {
        profile: String,
        player: String,
        value: u32,
        scale_max: u32,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::ZeroScale => write!(f, "scale_max must be at least 1"),
            Finding::ActionSetCountMismatch {
                players,
                action_sets,
            } => {
                write!(f, "{players} players but {action_sets} action sets")
            }
            Finding::DuplicatePlayer { name } => write!(f, "duplicate player name `{name}`"),
            Finding::EmptyPlayerName { player } => write!(f, "player {player} has an empty name"),
            Finding::EmptyActionSet { player } => write!(f, "player {player} has no actions"),
            Finding::EmptyActionLabel { player } => {
                write!(f, "player {player} has an empty action label")
            }
            Finding::DuplicateAction { player, label } => {
                write!(f, "player {player} declares action `{label}` twice")
            }
            Finding::MissingProfile { profile } => write!(f, "no payoff for profile {profile}"),
            Finding::InvalidProfile { profile } => {
                write!(f, "payoff entry for invalid profile {profile}")
            }
            Finding::RankCount {
                profile,
                expected,
                found,
            } => write!(
                f,
                "profile {profile} has {found} ranks, expected {expected}"
            ),
            Finding::RankOutOfBounds {
                profile,
                player,
                value,
                scale_max,
            } => write!(
                f,
                "rank {value} for player {player} at {profile} outside 1..={scale_max}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.findings.is_empty() {
            return writeln!(f, "ok");
        }
        for finding in &self.findings {
            writeln!(f, "- {finding}")?;
        }
        Ok(())
    }
}

impl GameDraft {
    fn format(&self, profile: &Profile) -> String {
        let labels: Vec<String> = profile
            .actions()
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                self.actions
                    .get(i)
                    .and_then(|set| set.get(a))
                    .map_or_else(|| format!("#{a}"), |x| x.label().to_string())
            })
            .collect();
        format!("({})", labels.join(","))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut findings = Vec::new();
        if self.scale_max == 0 {
            findings.push(Finding::ZeroScale);
        }
        if self.players.len() != self.actions.len() {
            findings.push(Finding::ActionSetCountMismatch {
                players: self.players.len(),
                action_sets: self.actions.len(),
            });
            return ValidationReport { findings };
        }
        let mut names = HashSet::new();
        for (i, name) in self.players.iter().enumerate() {
            if name.is_empty() {
                findings.push(Finding::EmptyPlayerName { player: i });
            } else if !names.insert(name.as_str()) {
                findings.push(Finding::DuplicatePlayer { name: name.clone() });
            }
        }
        for (name, set) in self.players.iter().zip(&self.actions) {
            if set.is_empty() {
                findings.push(Finding::EmptyActionSet {
                    player: name.clone(),
                });
            }
            let mut labels = HashSet::new();
            for a in set {
                if a.label().is_empty() {
                    findings.push(Finding::EmptyActionLabel {
                        player: name.clone(),
                    });
                } else if !labels.insert(a.label()) {
                    findings.push(Finding::DuplicateAction {
                        player: name.clone(),
                        label: a.label().to_string(),
                    });
                }
            }
        }

        let n = self.players.len();
        let sizes: Vec<usize> = self.actions.iter().map(Vec::len).collect();
        for profile in ProfileIter::new(sizes.clone()) {
            match self.payoffs.get(&profile) {
                None => findings.push(Finding::MissingProfile {
                    profile: self.format(&profile),
                }),
                Some(ranks) if ranks.len() != n => findings.push(Finding::RankCount {
                    profile: self.format(&profile),
                    expected: n,
                    found: ranks.len(),
                }),
                Some(ranks) => {
                    for (player, &value) in ranks.iter().enumerate() {
                        if value == 0 || value > self.scale_max {
                            findings.push(Finding::RankOutOfBounds {
                                profile: self.format(&profile),
                                player: self.players[player].clone(),
                                value,
                                scale_max: self.scale_max,
                            });
                        }
                    }
                }
            }
        }
        for profile in self.payoffs.keys() {
            let ok =
                profile.len() == n && profile.actions().iter().zip(&sizes).all(|(&a, &s)| a < s);
            if !ok {
                findings.push(Finding::InvalidProfile {
                    profile: self.format(profile),
                });
            }
        }
        ValidationReport { findings }
    }

    pub fn build(self) -> Result<Game> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::InvalidGame(report));
        }
        let players = self
            .players
            .into_iter()
            .enumerate()
            .map(|(index, name)| PlayerId { index, name })
            .collect();
        // BTreeMap order over index vectors is the lexicographic profile order.
        let payoffs = self
            .payoffs
            .into_values()
            .flat_map(|r| r.into_iter().map(Rank))
            .collect();
        Ok(Game {
            players,
            actions: self.actions,
            scale_max: self.scale_max,
            payoffs,
            persons: None,
        })
    }
}
