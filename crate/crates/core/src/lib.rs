//! Profit-aware team grouping: assign qualified, compatible teams of
//! individuals to tasks so that total task profit is maximised while each
//! individual stays within their load limit.
//!
//! The pipeline solves the packing LP over minimal qualified teams by column
//! generation, then rounds the fractional solution into an integral grouping.

pub mod exact_oracle;
pub mod instance;
pub mod master_lp;
pub mod pricing;
pub mod rounding;
pub mod simplex;
pub mod solver;
pub mod teams;

pub use exact_oracle::{brute_force_min_cost_team, brute_force_optimal, OracleError};
pub use instance::{
    expand_load_limits, parse_instance, serialize_instance, validate_instance, Capacity,
    Compatibility, Diagnostic, Edge, Individual, Instance, InstanceError, LoadExpansion, Profit,
    Task,
};
pub use master_lp::{column_generation, lp_upper_bound, ColGenResult, FractionalSolution, LpBound};
pub use pricing::{PriceVector, PricingError, PricingRule};
pub use rounding::{Grouping, RounderKind, RoundingInput};
pub use solver::{
    approx_tg, approx_tg_capacitated, solve, Algorithm, Candidate, SolveError, SolveReport,
};
pub use teams::{enumerate_minimal_teams, Column, ColumnKey, Team, TeamCatalog};
