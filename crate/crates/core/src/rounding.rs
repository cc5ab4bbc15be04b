//! Rounding a fractional LP solution over a column set into an integral
//! grouping: randomized two-phase rounding, greedy deterministic rounding,
//! and the capacity-aware variant of the deterministic rounder.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{profit_to_f64, sum_profits, Capacity, Instance, Profit};
use crate::master_lp::{FractionalSolution, LP_TOL};
use crate::teams::{adjacency_lists, canonical_team_cmp, is_qualified, Column, TeamCatalog};

#[derive(Debug, Error, PartialEq)]
pub enum RoundingError {
    #[error("{columns} columns but {values} LP values")]
    LengthMismatch { columns: usize, values: usize },
    #[error("LP value {value} of column (task {task}, #{ordinal}) is outside [0, 1]")]
    ValueOutOfRange {
        task: usize,
        ordinal: usize,
        value: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RounderKind {
    Randomized {
        seed: u64,
    },
    Deterministic,
    Capacity,
    /// A single highest-profit column (second candidate's large-team branch).
    SingleBest,
    /// Exhaustive search, not a rounder.
    Exact,
    Empty,
}

impl fmt::Display for RounderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RounderKind::Randomized { seed } => write!(f, "randomized(seed={seed})"),
            RounderKind::Deterministic => f.write_str("deterministic"),
            RounderKind::Capacity => f.write_str("capacity"),
            RounderKind::SingleBest => f.write_str("single-best"),
            RounderKind::Exact => f.write_str("exact"),
            RounderKind::Empty => f.write_str("empty"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundingMeta {
    pub rounder: RounderKind,
    /// Largest team size in the rounding input.
    pub rho: usize,
    /// Guaranteed fraction of the input LP mass `sum x* profit`
    /// (in expectation for the randomized rounder).
    pub ratio: f64,
}

/// An integral assignment of teams to tasks.
#[derive(Debug, Clone, PartialEq)]
pub struct Grouping {
    pub columns: Vec<Column>,
    pub profit: Profit,
    pub meta: RoundingMeta,
}

impl Grouping {
    pub fn new(columns: Vec<Column>, meta: RoundingMeta) -> Self {
        let profit = sum_profits(columns.iter().map(|c| &c.profit));
        Grouping {
            columns,
            profit,
            meta,
        }
    }

    pub fn empty() -> Self {
        Grouping {
            columns: Vec::new(),
            profit: Profit::zero(),
            meta: RoundingMeta {
                rounder: RounderKind::Empty,
                rho: 0,
                ratio: 1.0,
            },
        }
    }

    pub fn profit_f64(&self) -> f64 {
        profit_to_f64(&self.profit)
    }

    /// `(task id, sorted member ids)` pairs, ordered by task position and then
    /// canonical team order.
    pub fn assignments(&self, inst: &Instance) -> Vec<(String, Vec<String>)> {
        let mut cols: Vec<&Column> = self.columns.iter().collect();
        cols.sort_by(|a, b| {
            a.task()
                .cmp(&b.task())
                .then_with(|| canonical_team_cmp(inst, &a.team, &b.team))
        });
        cols.into_iter()
            .map(|c| (inst.tasks()[c.task()].id.clone(), c.team.ids(inst)))
            .collect()
    }

    /// Every team is qualified for its task, no individual exceeds its load,
    /// and no task exceeds its capacity.
    pub fn is_feasible(&self, inst: &Instance) -> bool {
        let mut used = vec![0u32; inst.num_individuals()];
        let mut per_task = vec![0u32; inst.num_tasks()];
        for c in &self.columns {
            if !is_qualified(inst, &c.team, c.task()) {
                return false;
            }
            for &u in c.team.members() {
                used[u] += 1;
            }
            per_task[c.task()] += 1;
        }
        let loads_ok = used
            .iter()
            .zip(inst.individuals())
            .all(|(&n, u)| n <= u.load);
        let caps_ok = per_task
            .iter()
            .zip(inst.tasks())
            .all(|(&n, t)| t.capacity.finite().is_none_or(|g| n <= g));
        loads_ok && caps_ok
    }

    /// No two selected teams share an individual.
    pub fn is_disjoint(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(i, a)| self.columns[i + 1..].iter().all(|b| !a.adjacent(b)))
    }
}

/// Columns handed to a rounder with their LP values, in canonical key order.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingInput {
    columns: Vec<Column>,
    values: Vec<f64>,
    rho: usize,
}

impl RoundingInput {
    /// Values within `LP_TOL` outside `[0, 1]` are clamped; anything further
    /// out is rejected.
    pub fn new(columns: Vec<Column>, values: Vec<f64>) -> Result<Self, RoundingError> {
        if columns.len() != values.len() {
            return Err(RoundingError::LengthMismatch {
                columns: columns.len(),
                values: values.len(),
            });
        }
        let mut pairs: Vec<(Column, f64)> = columns.into_iter().zip(values).collect();
        for (c, x) in &mut pairs {
            if !(-LP_TOL..=1.0 + LP_TOL).contains(x) {
                return Err(RoundingError::ValueOutOfRange {
                    task: c.key.task,
                    ordinal: c.key.ordinal,
                    value: *x,
                });
            }
            *x = x.clamp(0.0, 1.0);
        }
        pairs.sort_by_key(|(c, _)| c.key);
        let rho = pairs
            .iter()
            .map(|(c, _)| c.team.len())
            .max()
            .unwrap_or(0)
            .max(1);
        let (columns, values) = pairs.into_iter().unzip();
        Ok(RoundingInput {
            columns,
            values,
            rho,
        })
    }

    pub fn from_solution(
        catalog: &TeamCatalog,
        solution: &FractionalSolution,
    ) -> Result<Self, RoundingError> {
        Self::new(catalog.columns().to_vec(), solution.values.clone())
    }

    /// Input restricted to the catalog positions in `subset`.
    pub fn subset(
        catalog: &TeamCatalog,
        solution: &FractionalSolution,
        subset: &[usize],
    ) -> Result<Self, RoundingError> {
        Self::new(
            subset
                .iter()
                .map(|&i| catalog.columns()[i].clone())
                .collect(),
            subset.iter().map(|&i| solution.values[i]).collect(),
        )
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// `sum x* profit` over the input.
    pub fn lp_mass(&self) -> f64 {
        self.columns
            .iter()
            .zip(&self.values)
            .map(|(c, x)| x * profit_to_f64(&c.profit))
            .sum()
    }

    /// Positions ordered by profit (highest first), then canonical key.
    fn by_profit(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.columns.len()).collect();
        order.sort_by(|&a, &b| {
            let (ca, cb) = (&self.columns[a], &self.columns[b]);
            match cb.profit.cmp(&ca.profit) {
                Ordering::Equal => ca.key.cmp(&cb.key),
                o => o,
            }
        });
        order
    }

    fn pick(&self, chosen: Vec<usize>, rounder: RounderKind, ratio: f64) -> Grouping {
        Grouping::new(
            chosen
                .into_iter()
                .map(|i| self.columns[i].clone())
                .collect(),
            RoundingMeta {
                rounder,
                rho: self.rho,
                ratio,
            },
        )
    }
}

/// Phase one keeps each column independently with probability `x*/(2 rho)`;
/// phase two drops a survivor whenever an adjacent survivor has a smaller key.
pub fn randomized_round(input: &RoundingInput, seed: u64) -> Grouping {
    let survivors = randomized_survivors(input, seed);
    let adj = adjacency_lists(&input.columns);
    let mut alive = vec![false; input.columns.len()];
    for &i in &survivors {
        alive[i] = true;
    }
    let kept = survivors
        .into_iter()
        .filter(|&i| !adj[i].iter().any(|&j| j < i && alive[j]))
        .collect();
    input.pick(
        kept,
        RounderKind::Randomized { seed },
        1.0 / (4.0 * input.rho as f64),
    )
}

/// Phase-one survivors (positions in the input), drawn in canonical order.
pub fn randomized_survivors(input: &RoundingInput, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denom = 2.0 * input.rho as f64;
    input
        .values
        .iter()
        .enumerate()
        .filter_map(|(i, &x)| {
            let draw: f64 = rng.random();
            (draw < x / denom).then_some(i)
        })
        .collect()
}

/// Takes the most profitable remaining column, discards its neighbours, and
/// repeats until nothing is left.
pub fn deterministic_round(input: &RoundingInput) -> Grouping {
    let adj = adjacency_lists(&input.columns);
    let mut removed = vec![false; input.columns.len()];
    let mut chosen = Vec::new();
    for i in input.by_profit() {
        if removed[i] {
            continue;
        }
        chosen.push(i);
        removed[i] = true;
        for &j in &adj[i] {
            removed[j] = true;
        }
    }
    input.pick(chosen, RounderKind::Deterministic, 1.0 / input.rho as f64)
}

/// Deterministic rounding that also respects per-task capacities.
///
/// After a column is taken its value becomes 1 and the other remaining
/// columns of the same task give up value (smallest values first, then key)
/// until the task's total is back within capacity. Columns driven to zero
/// are discarded with the neighbours; once a task has all of its capacity
/// assigned, its remaining columns are discarded too.
pub fn capacity_round(input: &RoundingInput, capacities: &[Capacity]) -> Grouping {
    let n = input.columns.len();
    let adj = adjacency_lists(&input.columns);
    let mut removed = vec![false; n];
    let mut x = input.values.clone();
    let mut taken_per_task = vec![0u32; capacities.len()];
    let mut chosen = Vec::new();

    for i in input.by_profit() {
        if removed[i] {
            continue;
        }
        let task = input.columns[i].task();
        chosen.push(i);
        removed[i] = true;
        x[i] = 1.0;
        taken_per_task[task] += 1;

        if let Capacity::Finite(g) = capacities[task] {
            let mut same: Vec<usize> = (0..n)
                .filter(|&j| !removed[j] && input.columns[j].task() == task)
                .collect();
            let pending: f64 = same.iter().map(|&j| x[j]).sum();
            let mut excess = f64::from(taken_per_task[task]) + pending - f64::from(g);
            same.sort_by(|&a, &b| {
                x[a].total_cmp(&x[b])
                    .then_with(|| input.columns[a].key.cmp(&input.columns[b].key))
            });
            for &j in &same {
                if excess <= 0.0 {
                    break;
                }
                if x[j] <= 0.0 {
                    continue;
                }
                let cut = x[j].min(excess);
                x[j] -= cut;
                excess -= cut;
                if x[j] <= 0.0 {
                    removed[j] = true;
                }
            }
            if taken_per_task[task] >= g {
                for &j in &same {
                    removed[j] = true;
                }
            }
        }

        for &j in &adj[i] {
            removed[j] = true;
        }
    }
    input.pick(
        chosen,
        RounderKind::Capacity,
        1.0 / (input.rho as f64 + 1.0),
    )
}
