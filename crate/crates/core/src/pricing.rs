//! Min-cost team selection under dual prices. This is the pricing step of
//! column generation: a team cheaper than `profit - p(t)` is a violated dual
//! constraint and becomes a new column.

use std::cell::OnceCell;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::instance::{profit_to_f64, Compatibility, Instance};
use crate::teams::{covers, enumerate_minimal_teams, Team};

/// Pricing tolerance on costs normalised so that the largest profit is 1.
pub const PRICING_EPS: f64 = 1e-7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PricingError {
    #[error("greedy pricing requires compatibility mode none, instance uses {0}")]
    GreedyNeedsNoCompatibility(Compatibility),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PricingRule {
    /// Exhaustive over minimal qualified teams (guarantee 1).
    Exact,
    /// Weighted set-cover greedy (guarantee `H_n'`), compatibility mode none only.
    Greedy,
}

impl fmt::Display for PricingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PricingRule::Exact => "exact",
            PricingRule::Greedy => "greedy",
        })
    }
}

/// Dual prices: `y` per individual and `p` per task, by instance position.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceVector {
    pub y: Vec<f64>,
    pub p: Vec<f64>,
}

impl PriceVector {
    pub fn zeros(inst: &Instance) -> Self {
        PriceVector {
            y: vec![0.0; inst.num_individuals()],
            p: vec![0.0; inst.num_tasks()],
        }
    }

    pub fn uniform(inst: &Instance, y: f64) -> Self {
        PriceVector {
            y: vec![y; inst.num_individuals()],
            p: vec![0.0; inst.num_tasks()],
        }
    }

    pub fn team_cost(&self, team: &Team) -> f64 {
        team.members().iter().map(|&u| self.y[u]).sum()
    }

    pub fn is_valid(&self) -> bool {
        self.y
            .iter()
            .chain(&self.p)
            .all(|&v| v >= 0.0 && v.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        PriceVector {
            y: self.y.iter().map(|v| v * factor).collect(),
            p: self.p.iter().map(|v| v * factor).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PricedTeam {
    pub team: Team,
    pub cost: f64,
    /// Approximation factor of the oracle that produced the team.
    pub guarantee: f64,
}

const TIE: f64 = 1e-12;

/// Minimum-cost qualified team, ties broken by canonical team order.
pub fn exact_min_cost_team(
    inst: &Instance,
    task: usize,
    prices: &PriceVector,
) -> Option<PricedTeam> {
    cheapest(&enumerate_minimal_teams(inst, task), prices)
}

fn cheapest(teams: &[Team], prices: &PriceVector) -> Option<PricedTeam> {
    let mut best: Option<PricedTeam> = None;
    for team in teams {
        let cost = prices.team_cost(team);
        if best.as_ref().is_none_or(|b| cost < b.cost - TIE) {
            best = Some(PricedTeam {
                team: team.clone(),
                cost,
                guarantee: 1.0,
            });
        }
    }
    best
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 1`.
pub fn harmonic(n: usize) -> f64 {
    (1..=n.max(1)).map(|k| 1.0 / k as f64).sum()
}

/// Greedy weighted set cover over the task's required skills.
///
/// Repeatedly adds the individual with the smallest price per newly covered
/// skill (ties by id), then drops members made redundant, latest first.
pub fn greedy_set_cover_team(
    inst: &Instance,
    task: usize,
    prices: &PriceVector,
) -> Result<Option<PricedTeam>, PricingError> {
    if inst.compatibility() != Compatibility::None {
        return Err(PricingError::GreedyNeedsNoCompatibility(
            inst.compatibility(),
        ));
    }
    let required = inst.task_skills(task);
    let target = required.count_ones(..);
    let mut covered = FixedBitSet::with_capacity(inst.num_skills());
    let mut picked: Vec<usize> = Vec::new();

    while covered.intersection_count(required) < target {
        let mut best: Option<(usize, f64)> = None;
        for u in 0..inst.num_individuals() {
            if picked.contains(&u) {
                continue;
            }
            let mut gain = inst.individual_skills(u).clone();
            gain.intersect_with(required);
            gain.difference_with(&covered);
            let new = gain.count_ones(..);
            if new == 0 {
                continue;
            }
            let ratio = prices.y[u] / new as f64;
            let better = match best {
                None => true,
                Some((b, r)) => {
                    ratio < r - TIE || (ratio <= r + TIE && inst.id_rank(u) < inst.id_rank(b))
                }
            };
            if better {
                best = Some((u, ratio));
            }
        }
        let Some((u, _)) = best else {
            return Ok(None);
        };
        covered.union_with(inst.individual_skills(u));
        picked.push(u);
    }

    let mut keep = picked.clone();
    for &u in picked.iter().rev() {
        let trial: Vec<usize> = keep.iter().copied().filter(|&v| v != u).collect();
        if !trial.is_empty() && covers(inst, &Team::new(trial.iter().copied()), task) {
            keep = trial;
        }
    }
    let team = Team::new(keep);
    Ok(Some(PricedTeam {
        cost: prices.team_cost(&team),
        team,
        guarantee: harmonic(target),
    }))
}

/// A pricing oracle bound to one instance. The exact rule enumerates each
/// task's minimal teams once and reuses the lists across pricing rounds.
pub struct Pricer<'a> {
    inst: &'a Instance,
    rule: PricingRule,
    teams: Vec<OnceCell<Vec<Team>>>,
}

impl<'a> Pricer<'a> {
    pub fn new(inst: &'a Instance, rule: PricingRule) -> Result<Self, PricingError> {
        if rule == PricingRule::Greedy && inst.compatibility() != Compatibility::None {
            return Err(PricingError::GreedyNeedsNoCompatibility(
                inst.compatibility(),
            ));
        }
        Ok(Pricer {
            inst,
            rule,
            teams: (0..inst.num_tasks()).map(|_| OnceCell::new()).collect(),
        })
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn rule(&self) -> PricingRule {
        self.rule
    }

    /// Minimal qualified teams of `task` (enumerated on first use).
    pub fn minimal_teams(&self, task: usize) -> &[Team] {
        self.teams[task].get_or_init(|| enumerate_minimal_teams(self.inst, task))
    }

    /// Largest guarantee over all tasks; 1 for exact pricing.
    pub fn guarantee(&self) -> f64 {
        match self.rule {
            PricingRule::Exact => 1.0,
            PricingRule::Greedy => self
                .inst
                .tasks()
                .iter()
                .map(|t| harmonic(t.skills.len()))
                .fold(1.0, f64::max),
        }
    }

    pub fn price(&self, task: usize, prices: &PriceVector) -> Option<PricedTeam> {
        match self.rule {
            PricingRule::Exact => cheapest(self.minimal_teams(task), prices),
            PricingRule::Greedy => greedy_set_cover_team(self.inst, task, prices)
                .expect("greedy pricer is only built for mode none"),
        }
    }
}

/// A team whose price undercuts its task's profit net of the task price.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolatedColumn {
    pub task: usize,
    pub priced: PricedTeam,
    /// `profit - p(t) - cost`, strictly above the tolerance.
    pub reduced_cost: f64,
}

/// Absolute pricing tolerance for an instance.
pub fn pricing_tolerance(inst: &Instance) -> f64 {
    PRICING_EPS * inst.max_profit().max(f64::MIN_POSITIVE)
}

/// First task (in instance order) whose priced team costs less than
/// `profit - p(t) - eps`.
pub fn find_violated_column(
    pricer: &Pricer<'_>,
    prices: &PriceVector,
    eps: f64,
) -> Option<ViolatedColumn> {
    (0..pricer.inst.num_tasks()).find_map(|t| violated_for_task(pricer, prices, eps, t))
}

/// Every task's violated column, in instance order.
pub fn find_violated_columns(
    pricer: &Pricer<'_>,
    prices: &PriceVector,
    eps: f64,
) -> Vec<ViolatedColumn> {
    (0..pricer.inst.num_tasks())
        .filter_map(|t| violated_for_task(pricer, prices, eps, t))
        .collect()
}

fn violated_for_task(
    pricer: &Pricer<'_>,
    prices: &PriceVector,
    eps: f64,
    task: usize,
) -> Option<ViolatedColumn> {
    let threshold = profit_to_f64(&pricer.inst.tasks()[task].profit) - prices.p[task];
    if threshold <= eps {
        return None;
    }
    let priced = pricer.price(task, prices)?;
    let reduced_cost = threshold - priced.cost;
    (reduced_cost > eps).then_some(ViolatedColumn {
        task,
        priced,
        reduced_cost,
    })
}
