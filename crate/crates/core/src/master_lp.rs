//! The restricted master LP over an explicit column set and the column
//! generation loop that grows the column set from pricing.
//!
//! Rows are one load row per individual (`<= 1`) and one capacity row per
//! task with finite capacity (`<= g_t`). The per-column bound `x <= 1` is
//! implied by any member's load row and is not added as a row, so the whole
//! dual solution lives on `y` and `p` where the pricing step can see it.

use crate::instance::{profit_to_f64, Instance, LoadExpansion};
use crate::pricing::{
    find_violated_column, find_violated_columns, pricing_tolerance, PriceVector, Pricer,
    PricingError, PricingRule,
};
use crate::simplex::PackingLp;
use crate::teams::{ColumnKey, TeamCatalog};

/// Tolerance for LP feasibility and objective consistency checks.
pub const LP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    /// `x*` per catalog column, by catalog position.
    pub values: Vec<f64>,
    pub objective: f64,
    pub duals: PriceVector,
}

impl FractionalSolution {
    pub fn value_of(&self, catalog: &TeamCatalog, key: ColumnKey) -> Option<f64> {
        catalog
            .columns()
            .iter()
            .position(|c| c.key == key)
            .map(|i| self.values[i])
    }

    /// Dual objective `sum y(u) + sum p(t) g_t` over finite capacities.
    pub fn dual_objective(&self, inst: &Instance) -> f64 {
        let load: f64 = self.duals.y.iter().sum();
        let cap: f64 = inst
            .tasks()
            .iter()
            .zip(&self.duals.p)
            .filter_map(|(t, p)| t.capacity.finite().map(|g| p * f64::from(g)))
            .sum();
        load + cap
    }

    /// Largest violation of any load or capacity row, or of `0 <= x <= 1`.
    pub fn max_violation(&self, inst: &Instance, catalog: &TeamCatalog) -> f64 {
        let mut load = vec![0.0; inst.num_individuals()];
        let mut per_task = vec![0.0; inst.num_tasks()];
        let mut worst: f64 = 0.0;
        for (col, &x) in catalog.columns().iter().zip(&self.values) {
            worst = worst.max(-x).max(x - 1.0);
            for &u in col.team.members() {
                load[u] += x;
            }
            per_task[col.task()] += x;
        }
        for l in load {
            worst = worst.max(l - 1.0);
        }
        for (t, s) in inst.tasks().iter().zip(per_task) {
            if let Some(g) = t.capacity.finite() {
                worst = worst.max(s - f64::from(g));
            }
        }
        worst
    }
}

/// Solves the packing LP over `catalog` and returns an optimal basic solution
/// with its row duals.
pub fn solve_restricted_lp(inst: &Instance, catalog: &TeamCatalog) -> FractionalSolution {
    let scale = inst.max_profit();
    if catalog.is_empty() || scale <= 0.0 {
        return FractionalSolution {
            values: vec![0.0; catalog.len()],
            objective: 0.0,
            duals: PriceVector::zeros(inst),
        };
    }

    let columns = catalog.columns();
    let objective = columns
        .iter()
        .map(|c| profit_to_f64(&c.profit) / scale)
        .collect();
    let mut lp = PackingLp::new(objective);
    for u in 0..inst.num_individuals() {
        let row = columns
            .iter()
            .map(|c| if c.team.contains(u) { 1.0 } else { 0.0 })
            .collect();
        lp.add_row(row, 1.0);
    }
    let mut capacity_rows = Vec::new();
    for (t, task) in inst.tasks().iter().enumerate() {
        if let Some(g) = task.capacity.finite() {
            let row = columns
                .iter()
                .map(|c| if c.task() == t { 1.0 } else { 0.0 })
                .collect();
            lp.add_row(row, f64::from(g));
            capacity_rows.push(t);
        }
    }

    let sol = lp
        .maximize()
        .expect("packing LP with non-negative rhs is feasible and bounded");

    let m = inst.num_individuals();
    let mut duals = PriceVector::zeros(inst);
    for u in 0..m {
        duals.y[u] = sol.duals[u] * scale;
    }
    for (k, &t) in capacity_rows.iter().enumerate() {
        duals.p[t] = sol.duals[m + k] * scale;
    }
    let values: Vec<f64> = sol.x.iter().map(|x| x.clamp(0.0, 1.0)).collect();
    let objective = columns
        .iter()
        .zip(&values)
        .map(|(c, x)| x * profit_to_f64(&c.profit))
        .sum();
    FractionalSolution {
        values,
        objective,
        duals,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColGenConfig {
    /// Stop once the catalog holds this many columns.
    pub max_columns: usize,
    /// Add every task's violated column per round instead of the first one.
    pub batch: bool,
}

impl Default for ColGenConfig {
    fn default() -> Self {
        ColGenConfig {
            max_columns: 1000,
            batch: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColGenResult {
    pub catalog: TeamCatalog,
    pub solution: FractionalSolution,
    /// Number of pricing rounds.
    pub iterations: usize,
    pub oracle_guarantee: f64,
    pub rule: PricingRule,
    /// Set when the column cap stopped the loop before pricing came back empty.
    pub capped: bool,
}

pub fn column_generation(inst: &Instance, rule: PricingRule) -> Result<ColGenResult, PricingError> {
    let pricer = Pricer::new(inst, rule)?;
    Ok(column_generation_with(&pricer, ColGenConfig::default()))
}

pub fn column_generation_with(pricer: &Pricer<'_>, config: ColGenConfig) -> ColGenResult {
    let inst = pricer.instance();
    let eps = pricing_tolerance(inst);
    let mut catalog = TeamCatalog::new();
    let mut iterations = 0;
    let mut capped = false;

    let solution = loop {
        let solution = solve_restricted_lp(inst, &catalog);
        if catalog.len() >= config.max_columns {
            capped = true;
            break solution;
        }
        iterations += 1;
        let found = if config.batch {
            find_violated_columns(pricer, &solution.duals, eps)
        } else {
            find_violated_column(pricer, &solution.duals, eps)
                .into_iter()
                .collect()
        };
        let mut added = false;
        for v in found {
            if catalog.len() < config.max_columns && !catalog.contains(v.task, &v.priced.team) {
                catalog.push(inst, v.task, v.priced.team);
                added = true;
            }
        }
        if !added {
            break solution;
        }
    };

    ColGenResult {
        catalog,
        solution,
        iterations,
        oracle_guarantee: pricer.guarantee(),
        rule: pricer.rule(),
        capped,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpBound {
    pub value: f64,
    /// True when pricing was exact, so the value bounds the integral optimum.
    pub exact: bool,
    pub columns: usize,
    pub iterations: usize,
    pub capped: bool,
}

/// LP relaxation value reached by column generation (after load expansion).
pub fn lp_upper_bound(inst: &Instance, rule: PricingRule) -> Result<LpBound, PricingError> {
    let expansion = LoadExpansion::when_needed(inst);
    let run = column_generation(&expansion.instance, rule)?;
    Ok(LpBound {
        value: run.solution.objective,
        exact: rule == PricingRule::Exact && !run.capped,
        columns: run.catalog.len(),
        iterations: run.iterations,
        capped: run.capped,
    })
}
