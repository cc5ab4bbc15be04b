//! End-to-end pipelines: one column-generation run feeding the two candidate
//! groupings, and the best of the two as the final answer.

use std::fmt;

use thiserror::Error;

use crate::instance::{Capacity, Instance, LoadExpansion};
use crate::master_lp::{column_generation_with, ColGenConfig, ColGenResult};
use crate::pricing::{Pricer, PricingError, PricingRule};
use crate::rounding::{
    capacity_round, deterministic_round, randomized_round, Grouping, RounderKind, RoundingError,
    RoundingInput, RoundingMeta,
};
use crate::teams::{Column, Team};

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Pricing(#[from] PricingError),
    #[error(transparent)]
    Rounding(#[from] RoundingError),
    #[error("instance has finite task capacities; use the capacitated pipeline")]
    Capacitated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Candidate {
    One,
    Two,
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Candidate::One => "I",
            Candidate::Two => "II",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    ApproxTg,
    CandidateOne,
    CandidateTwo,
    RandomizedRound { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// Grouping over the caller's instance (load copies folded back).
    pub grouping: Grouping,
    pub lp_bound: f64,
    /// The LP bound is a valid upper bound on the integral optimum.
    pub lp_bound_exact: bool,
    pub catalog_size: usize,
    pub iterations: usize,
    pub candidate: Option<Candidate>,
    /// Largest team among generated columns.
    pub delta_catalog: usize,
    /// Largest minimal qualified team overall; known only with exact pricing.
    pub delta_global: Option<usize>,
    /// Individuals after load expansion.
    pub m: usize,
    pub mu: f64,
    /// Claimed approximation ratio against the integral optimum.
    pub guarantee: f64,
    pub guarantee_expr: String,
    pub capacitated: bool,
    pub capped: bool,
}

fn uses_capacities(inst: &Instance) -> bool {
    inst.has_finite_capacities()
}

fn round_with_instance_rule(inst: &Instance, input: &RoundingInput) -> Grouping {
    if uses_capacities(inst) {
        let caps: Vec<Capacity> = inst.tasks().iter().map(|t| t.capacity).collect();
        capacity_round(input, &caps)
    } else {
        deterministic_round(input)
    }
}

/// Rounds the whole generated catalog (capacity-aware when the instance has
/// finite capacities).
pub fn candidate_one(inst: &Instance, colgen: &ColGenResult) -> Result<Grouping, SolveError> {
    let input = RoundingInput::from_solution(&colgen.catalog, &colgen.solution)?;
    if input.is_empty() {
        return Ok(Grouping::empty());
    }
    Ok(round_with_instance_rule(inst, &input))
}

/// Splits the catalog at `|C|^2 <= m`, rounds the small-team part, and
/// returns it unless the most profitable large team alone earns more.
pub fn candidate_two(inst: &Instance, colgen: &ColGenResult) -> Result<Grouping, SolveError> {
    let m = inst.num_individuals();
    let columns = colgen.catalog.columns();
    let (small, large): (Vec<usize>, Vec<usize>) =
        (0..columns.len()).partition(|&i| columns[i].team.len().pow(2) <= m);

    let small_input = RoundingInput::subset(&colgen.catalog, &colgen.solution, &small)?;
    let rounded = if small_input.is_empty() {
        Grouping::empty()
    } else {
        round_with_instance_rule(inst, &small_input)
    };

    let best_large = large
        .iter()
        .map(|&i| &columns[i])
        .min_by(|a, b| b.profit.cmp(&a.profit).then_with(|| a.key.cmp(&b.key)));
    match best_large {
        Some(col) if col.profit > rounded.profit => Ok(Grouping::new(
            vec![col.clone()],
            RoundingMeta {
                rounder: RounderKind::SingleBest,
                rho: col.team.len(),
                ratio: 1.0 / (m as f64).sqrt(),
            },
        )),
        _ => Ok(rounded),
    }
}

/// Best of the two candidates on an instance without task capacities.
pub fn approx_tg(inst: &Instance, rule: PricingRule) -> Result<SolveReport, SolveError> {
    if uses_capacities(inst) {
        return Err(SolveError::Capacitated);
    }
    run(inst, rule, Algorithm::ApproxTg)
}

/// Best of the two candidates with capacity-aware rounding and task prices.
pub fn approx_tg_capacitated(
    inst: &Instance,
    rule: PricingRule,
) -> Result<SolveReport, SolveError> {
    run(inst, rule, Algorithm::ApproxTg)
}

/// Runs `algorithm`, choosing capacity-aware rounding whenever the instance
/// has finite capacities.
pub fn solve(
    inst: &Instance,
    rule: PricingRule,
    algorithm: Algorithm,
) -> Result<SolveReport, SolveError> {
    run(inst, rule, algorithm)
}

fn run(
    inst: &Instance,
    rule: PricingRule,
    algorithm: Algorithm,
) -> Result<SolveReport, SolveError> {
    let expansion = LoadExpansion::when_needed(inst);
    let work = &expansion.instance;
    let pricer = Pricer::new(work, rule)?;
    let colgen = column_generation_with(&pricer, ColGenConfig::default());

    let (grouping, candidate) = match algorithm {
        Algorithm::ApproxTg => {
            let one = candidate_one(work, &colgen)?;
            let two = candidate_two(work, &colgen)?;
            if two.profit > one.profit {
                (two, Some(Candidate::Two))
            } else {
                (one, Some(Candidate::One))
            }
        }
        Algorithm::CandidateOne => (candidate_one(work, &colgen)?, Some(Candidate::One)),
        Algorithm::CandidateTwo => (candidate_two(work, &colgen)?, Some(Candidate::Two)),
        Algorithm::RandomizedRound { seed } => {
            let input = RoundingInput::from_solution(&colgen.catalog, &colgen.solution)?;
            let g = if input.is_empty() {
                Grouping::empty()
            } else {
                trim_to_capacity(work, randomized_round(&input, seed))
            };
            (g, None)
        }
    };

    let capacitated = uses_capacities(work);
    let m = work.num_individuals();
    let mu = colgen.oracle_guarantee;
    let delta_catalog = colgen.catalog.delta();
    let delta_global = (rule == PricingRule::Exact).then(|| {
        (0..work.num_tasks())
            .flat_map(|t| pricer.minimal_teams(t).iter().map(Team::len))
            .max()
            .unwrap_or(0)
    });
    let (guarantee, guarantee_expr) = claimed_ratio(algorithm, mu, delta_catalog, m, capacitated);

    Ok(SolveReport {
        grouping: fold_copies(&expansion, grouping),
        lp_bound: colgen.solution.objective,
        lp_bound_exact: rule == PricingRule::Exact && !colgen.capped,
        catalog_size: colgen.catalog.len(),
        iterations: colgen.iterations,
        candidate,
        delta_catalog,
        delta_global,
        m,
        mu,
        guarantee,
        guarantee_expr,
        capacitated,
        capped: colgen.capped,
    })
}

/// Randomized rounding ignores task capacities; keep the first `g_t`
/// columns of each task in key order.
fn trim_to_capacity(inst: &Instance, mut grouping: Grouping) -> Grouping {
    if !uses_capacities(inst) {
        return grouping;
    }
    grouping.columns.sort_by_key(|c| c.key);
    let mut used = vec![0u32; inst.num_tasks()];
    let kept: Vec<Column> = grouping
        .columns
        .into_iter()
        .filter(|c| {
            let t = c.task();
            let ok = inst.tasks()[t]
                .capacity
                .finite()
                .is_none_or(|g| used[t] < g);
            if ok {
                used[t] += 1;
            }
            ok
        })
        .collect();
    Grouping::new(kept, grouping.meta)
}

fn claimed_ratio(
    algorithm: Algorithm,
    mu: f64,
    delta: usize,
    m: usize,
    capacitated: bool,
) -> (f64, String) {
    let delta = delta.max(1) as f64;
    let root = (m.max(1) as f64).sqrt();
    let extra = if capacitated { 1.0 } else { 0.0 };
    let (one_expr, two_expr) = if capacitated {
        ("1/(mu*(Delta+1))", "1/(2*mu*(sqrt(m)+1))")
    } else {
        ("1/(mu*Delta)", "1/(2*mu*sqrt(m))")
    };
    let one = 1.0 / (mu * (delta + extra));
    let two = 1.0 / (2.0 * mu * (root + extra));
    let vars = format!("mu={mu:.6}, Delta={delta}, m={m}");
    match algorithm {
        Algorithm::RandomizedRound { .. } => {
            let r = 1.0 / (4.0 * mu * delta);
            (
                r,
                format!("1/(4*mu*Delta) in expectation [{vars}] = {r:.9}"),
            )
        }
        Algorithm::CandidateOne => (one, format!("{one_expr} [{vars}] = {one:.9}")),
        Algorithm::CandidateTwo => (two, format!("{two_expr} [{vars}] = {two:.9}")),
        Algorithm::ApproxTg => {
            let r = one.max(two);
            (
                r,
                format!("max{{{one_expr}, {two_expr}}} [{vars}] = {r:.9}"),
            )
        }
    }
}

fn fold_copies(expansion: &LoadExpansion, grouping: Grouping) -> Grouping {
    if expansion.origin.iter().enumerate().all(|(i, &o)| i == o) {
        return grouping;
    }
    let columns = grouping
        .columns
        .into_iter()
        .map(|c| Column {
            team: Team::new(c.team.members().iter().map(|&u| expansion.origin[u])),
            ..c
        })
        .collect();
    Grouping::new(columns, grouping.meta)
}
