//! Qualified teams: skill coverage, social compatibility, minimal-team
//! enumeration and the column catalog the LP is built over.

use std::cmp::Ordering;
use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::instance::{Compatibility, Instance, Profit};

/// A non-empty set of individuals, stored as sorted instance indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Team {
    members: Vec<usize>,
}

impl Team {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Team { members }
    }

    /// Looks members up by id; `None` if any id is unknown.
    pub fn from_ids<S: AsRef<str>>(inst: &Instance, ids: &[S]) -> Option<Self> {
        ids.iter()
            .map(|id| inst.individual_index(id.as_ref()))
            .collect::<Option<Vec<_>>>()
            .map(Team::new)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.binary_search(&u).is_ok()
    }

    /// True when the two teams share at least one individual.
    pub fn intersects(&self, other: &Team) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    /// Member ids in lexicographic order.
    pub fn ids(&self, inst: &Instance) -> Vec<String> {
        let mut ids: Vec<String> = self
            .members
            .iter()
            .map(|&u| inst.individuals()[u].id.clone())
            .collect();
        ids.sort();
        ids
    }

    fn bits(&self, m: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(m);
        for &u in &self.members {
            bits.insert(u);
        }
        bits
    }

    fn rank_key(&self, inst: &Instance) -> Vec<usize> {
        let mut ranks: Vec<usize> = self.members.iter().map(|&u| inst.id_rank(u)).collect();
        ranks.sort_unstable();
        ranks
    }
}

/// Canonical team order: ascending size, then lexicographic member ids.
pub fn canonical_team_cmp(inst: &Instance, a: &Team, b: &Team) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.rank_key(inst).cmp(&b.rank_key(inst)))
}

pub fn covers(inst: &Instance, team: &Team, task: usize) -> bool {
    let mut have = FixedBitSet::with_capacity(inst.num_skills());
    for &u in team.members() {
        have.union_with(inst.individual_skills(u));
    }
    inst.task_skills(task).is_subset(&have)
}

/// Compatibility of `team` under the instance's own mode.
pub fn compatible(inst: &Instance, team: &Team) -> bool {
    compatible_under(inst, team, inst.compatibility())
}

pub fn compatible_under(inst: &Instance, team: &Team, mode: Compatibility) -> bool {
    compatible_bits(inst, &team.bits(inst.num_individuals()), mode)
}

pub fn is_qualified(inst: &Instance, team: &Team, task: usize) -> bool {
    !team.is_empty() && covers(inst, team, task) && compatible(inst, team)
}

fn compatible_bits(inst: &Instance, members: &FixedBitSet, mode: Compatibility) -> bool {
    match mode {
        Compatibility::None => true,
        Compatibility::Connected => match members.ones().next() {
            None => true,
            Some(start) => induced_distances(inst, members, start)
                .iter()
                .all(|d| d.is_some()),
        },
        Compatibility::Diameter(bound) => members.ones().all(|src| {
            induced_distances(inst, members, src)
                .iter()
                .all(|d| matches!(d, Some(d) if *d <= bound as usize))
        }),
    }
}

/// BFS distances from `src` to every member, inside the induced subgraph.
fn induced_distances(inst: &Instance, members: &FixedBitSet, src: usize) -> Vec<Option<usize>> {
    let m = inst.num_individuals();
    let mut dist = vec![None; m];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        for v in inst.adjacency(u).ones() {
            if members.contains(v) && dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    members.ones().map(|u| dist[u]).collect()
}

/// All minimal qualified teams for `task`, in canonical order.
///
/// Subsets are visited by increasing size, so a qualified subset is minimal
/// exactly when it contains no team found at a smaller size. Each size is a
/// depth-first walk over member indices that gives up on branches whose
/// remaining pool cannot finish the coverage.
pub fn enumerate_minimal_teams(inst: &Instance, task: usize) -> Vec<Team> {
    let m = inst.num_individuals();
    let mode = inst.compatibility();
    let required = inst.task_skills(task);
    if required.count_ones(..) == 0 {
        // every singleton covers an empty requirement
        let mut teams: Vec<Team> = (0..m).map(|u| Team::new([u])).collect();
        teams.sort_by(|a, b| canonical_team_cmp(inst, a, b));
        return teams;
    }

    // Without a compatibility rule, members that bring no required skill are
    // always removable, so they never appear in a minimal team.
    let pool: Vec<usize> = (0..m)
        .filter(|&u| {
            mode != Compatibility::None || !inst.individual_skills(u).is_disjoint(required)
        })
        .collect();

    let n = inst.num_skills();
    let mut suffix = vec![FixedBitSet::with_capacity(n); pool.len() + 1];
    for i in (0..pool.len()).rev() {
        let mut bits = suffix[i + 1].clone();
        bits.union_with(inst.individual_skills(pool[i]));
        suffix[i] = bits;
    }

    let max_size = match mode {
        Compatibility::None => required.count_ones(..).min(pool.len()),
        _ => pool.len(),
    };

    let mut search = MinimalSearch {
        inst,
        mode,
        required,
        pool: &pool,
        suffix: &suffix,
        found: Vec::new(),
        level: Vec::new(),
    };
    for size in 1..=max_size {
        let mut chosen = FixedBitSet::with_capacity(m);
        let covered = FixedBitSet::with_capacity(n);
        search.walk(0, size, &mut chosen, &covered);
        let level = std::mem::take(&mut search.level);
        search.found.extend(level);
    }

    let mut teams: Vec<Team> = search
        .found
        .iter()
        .map(|bits| Team::new(bits.ones()))
        .collect();
    teams.sort_by(|a, b| canonical_team_cmp(inst, a, b));
    teams
}

struct MinimalSearch<'a> {
    inst: &'a Instance,
    mode: Compatibility,
    required: &'a FixedBitSet,
    pool: &'a [usize],
    suffix: &'a [FixedBitSet],
    found: Vec<FixedBitSet>,
    level: Vec<FixedBitSet>,
}

impl MinimalSearch<'_> {
    fn walk(&mut self, next: usize, left: usize, chosen: &mut FixedBitSet, covered: &FixedBitSet) {
        if left == 0 {
            if self.required.is_subset(covered) && compatible_bits(self.inst, chosen, self.mode) {
                self.level.push(chosen.clone());
            }
            return;
        }
        if self.pool.len() - next < left {
            return;
        }
        let mut reach = covered.clone();
        reach.union_with(&self.suffix[next]);
        if !self.required.is_subset(&reach) {
            return;
        }
        for i in next..=self.pool.len() - left {
            let u = self.pool[i];
            chosen.insert(u);
            if !self.found.iter().any(|f| f.is_subset(chosen)) {
                let mut cov = covered.clone();
                cov.union_with(self.inst.individual_skills(u));
                self.walk(i + 1, left - 1, chosen, &cov);
            }
            chosen.set(u, false);
        }
    }
}

/// Catalog key of a column: task position and the column's ordinal among
/// that task's columns. Keys order columns canonically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnKey {
    pub task: usize,
    pub ordinal: usize,
}

/// A team bound to a task: one LP variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub key: ColumnKey,
    pub team: Team,
    pub profit: Profit,
}

impl Column {
    pub fn task(&self) -> usize {
        self.key.task
    }

    pub fn adjacent(&self, other: &Column) -> bool {
        self.team.intersects(&other.team)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TeamCatalog {
    columns: Vec<Column>,
}

impl TeamCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every minimal qualified team of every task.
    pub fn full(inst: &Instance) -> Self {
        let mut catalog = Self::new();
        for t in 0..inst.num_tasks() {
            for team in enumerate_minimal_teams(inst, t) {
                catalog.push(inst, t, team);
            }
        }
        catalog
    }

    /// Appends a column for `(task, team)` and returns its position.
    pub fn push(&mut self, inst: &Instance, task: usize, team: Team) -> usize {
        let ordinal = self.columns.iter().filter(|c| c.key.task == task).count();
        self.columns.push(Column {
            key: ColumnKey { task, ordinal },
            team,
            profit: inst.tasks()[task].profit,
        });
        self.columns.len() - 1
    }

    pub fn contains(&self, task: usize, team: &Team) -> bool {
        self.columns
            .iter()
            .any(|c| c.key.task == task && &c.team == team)
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Largest team size over all columns (0 when empty).
    pub fn delta(&self) -> usize {
        max_team_size(self.columns.iter())
    }

    /// Largest team size over the designated subset of column positions.
    pub fn rho(&self, subset: &[usize]) -> usize {
        max_team_size(subset.iter().map(|&i| &self.columns[i]))
    }

    /// Positions of the columns sharing a member with column `col`.
    pub fn neighbors(&self, col: usize) -> Vec<usize> {
        let team = &self.columns[col].team;
        self.columns
            .iter()
            .enumerate()
            .filter(|&(i, c)| i != col && c.team.intersects(team))
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn max_team_size<'a>(columns: impl Iterator<Item = &'a Column>) -> usize {
    columns.map(|c| c.team.len()).max().unwrap_or(0)
}

/// Neighbour lists for a column slice, by position in the slice.
pub(crate) fn adjacency_lists(columns: &[Column]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); columns.len()];
    for i in 0..columns.len() {
        for j in i + 1..columns.len() {
            if columns[i].adjacent(&columns[j]) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}
