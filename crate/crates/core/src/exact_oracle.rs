//! Exhaustive solvers used as ground truth: the optimal integral grouping
//! (load- and capacity-aware) and the min-cost qualified team.

use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::instance::{Instance, Profit};
use crate::pricing::{PriceVector, PricedTeam};
use crate::rounding::{Grouping, RounderKind, RoundingMeta};
use crate::teams::{canonical_team_cmp, enumerate_minimal_teams, is_qualified, Team, TeamCatalog};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} = {value} exceeds the brute-force limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("task profits overflow the exact search arithmetic")]
    ProfitOverflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleLimits {
    /// Limit on the sum of load limits.
    pub max_load_units: usize,
    pub max_individuals: usize,
    pub max_tasks: usize,
    pub max_columns: usize,
}

impl Default for ScaleLimits {
    fn default() -> Self {
        ScaleLimits {
            max_load_units: 16,
            max_individuals: 16,
            max_tasks: 6,
            max_columns: 600,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeamFamily {
    /// Minimal qualified teams only.
    Minimal,
    /// Every qualified team (all `2^m` subsets are scanned).
    AllQualified,
}

/// Subset-scan limit for [`brute_force_min_cost_team`].
pub const MAX_SCAN_INDIVIDUALS: usize = 20;

pub fn brute_force_optimal(inst: &Instance) -> Result<Grouping, OracleError> {
    brute_force_optimal_with(inst, TeamFamily::Minimal, ScaleLimits::default())
}

/// Maximum-profit grouping honouring load limits (a team may be reused while
/// its members have load left) and task capacities.
pub fn brute_force_optimal_with(
    inst: &Instance,
    family: TeamFamily,
    limits: ScaleLimits,
) -> Result<Grouping, OracleError> {
    let guard = |what, value: usize, limit| {
        if value > limit {
            Err(OracleError::TooLarge { what, value, limit })
        } else {
            Ok(())
        }
    };
    guard(
        "load units",
        inst.total_load() as usize,
        limits.max_load_units,
    )?;
    guard(
        "individuals",
        inst.num_individuals(),
        limits.max_individuals,
    )?;
    guard("tasks", inst.num_tasks(), limits.max_tasks)?;

    let mut catalog = TeamCatalog::new();
    for t in 0..inst.num_tasks() {
        let teams = match family {
            TeamFamily::Minimal => enumerate_minimal_teams(inst, t),
            TeamFamily::AllQualified => all_qualified_teams(inst, t),
        };
        for team in teams {
            catalog.push(inst, t, team);
        }
    }
    guard("columns", catalog.len(), limits.max_columns)?;

    let weights = integer_weights(inst)?;
    let columns = catalog.columns();
    let n = columns.len();

    // smallest team size of each task among columns at position >= i
    let k = inst.num_tasks();
    let mut min_size = vec![vec![usize::MAX; k]; n + 1];
    for i in (0..n).rev() {
        min_size[i] = min_size[i + 1].clone();
        let t = columns[i].task();
        min_size[i][t] = min_size[i][t].min(columns[i].team.len());
    }

    let mut search = Search {
        columns,
        weights: &weights,
        capacity: inst
            .tasks()
            .iter()
            .map(|t| t.capacity.finite().map_or(u64::MAX, u64::from))
            .collect(),
        min_size,
        load_left: inst.individuals().iter().map(|u| u.load).collect(),
        task_used: vec![0; k],
        picks: Vec::new(),
        value: 0,
        best_value: 0,
        best: Vec::new(),
    };
    search.dfs(0);

    let chosen = search.best.iter().map(|&i| columns[i].clone()).collect();
    Ok(Grouping::new(
        chosen,
        RoundingMeta {
            rounder: RounderKind::Exact,
            rho: catalog.delta(),
            ratio: 1.0,
        },
    ))
}

/// Profits scaled to integers over their common denominator.
fn integer_weights(inst: &Instance) -> Result<Vec<i128>, OracleError> {
    let lcm = inst
        .tasks()
        .iter()
        .fold(1i64, |acc, t| acc.lcm(t.profit.denom()));
    inst.tasks()
        .iter()
        .map(|t| {
            let scaled: Profit = t.profit * Profit::from_integer(lcm);
            scaled
                .to_integer()
                .to_i128()
                .ok_or(OracleError::ProfitOverflow)
        })
        .collect()
}

struct Search<'a> {
    columns: &'a [crate::teams::Column],
    weights: &'a [i128],
    capacity: Vec<u64>,
    min_size: Vec<Vec<usize>>,
    load_left: Vec<u32>,
    task_used: Vec<u64>,
    picks: Vec<usize>,
    value: i128,
    best_value: i128,
    best: Vec<usize>,
}

impl Search<'_> {
    fn bound(&self, i: usize) -> i128 {
        let units: u64 = self.load_left.iter().map(|&l| u64::from(l)).sum();
        self.min_size[i]
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s != usize::MAX)
            .map(|(t, &s)| {
                let by_load = units / s as u64;
                let by_cap = self.capacity[t] - self.task_used[t];
                self.weights[t].max(0) * i128::from(by_load.min(by_cap))
            })
            .sum()
    }

    fn dfs(&mut self, i: usize) {
        if self.value > self.best_value {
            self.best_value = self.value;
            self.best = self.picks.clone();
        }
        if i == self.columns.len() || self.value + self.bound(i) <= self.best_value {
            return;
        }
        let col = &self.columns[i];
        let t = col.task();
        let by_load = col
            .team
            .members()
            .iter()
            .map(|&u| u64::from(self.load_left[u]))
            .min()
            .unwrap_or(0);
        let most = by_load.min(self.capacity[t] - self.task_used[t]);

        for copies in (0..=most).rev() {
            let c = copies as u32;
            for &u in col.team.members() {
                self.load_left[u] -= c;
            }
            self.task_used[t] += copies;
            self.value += self.weights[t] * i128::from(c);
            for _ in 0..copies {
                self.picks.push(i);
            }

            self.dfs(i + 1);

            for _ in 0..copies {
                self.picks.pop();
            }
            self.value -= self.weights[t] * i128::from(c);
            self.task_used[t] -= copies;
            for &u in col.team.members() {
                self.load_left[u] += c;
            }
        }
    }
}

/// Every qualified team of `task` by a full subset scan, canonical order.
pub fn all_qualified_teams(inst: &Instance, task: usize) -> Vec<Team> {
    let m = inst.num_individuals();
    let mut teams: Vec<Team> = (1u64..(1u64 << m))
        .map(|mask| Team::new((0..m).filter(|&u| mask >> u & 1 == 1)))
        .filter(|team| is_qualified(inst, team, task))
        .collect();
    teams.sort_by(|a, b| canonical_team_cmp(inst, a, b));
    teams
}

/// Minimum-cost qualified team by scanning all `2^m` subsets.
pub fn brute_force_min_cost_team(
    inst: &Instance,
    task: usize,
    prices: &PriceVector,
) -> Result<Option<PricedTeam>, OracleError> {
    let m = inst.num_individuals();
    if m > MAX_SCAN_INDIVIDUALS {
        return Err(OracleError::TooLarge {
            what: "individuals",
            value: m,
            limit: MAX_SCAN_INDIVIDUALS,
        });
    }
    let mut best: Option<PricedTeam> = None;
    for mask in 1u64..(1u64 << m) {
        let team = Team::new((0..m).filter(|&u| mask >> u & 1 == 1));
        if !is_qualified(inst, &team, task) {
            continue;
        }
        let cost = prices.team_cost(&team);
        let better = match &best {
            None => true,
            Some(b) => {
                cost < b.cost - 1e-12
                    || (cost <= b.cost + 1e-12 && canonical_team_cmp(inst, &team, &b.team).is_lt())
            }
        };
        if better {
            best = Some(PricedTeam {
                team,
                cost,
                guarantee: 1.0,
            });
        }
    }
    Ok(best)
}
