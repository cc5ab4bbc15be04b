use proptest::prelude::*;
use teamgroup::exact_oracle::brute_force_min_cost_team;
use teamgroup::pricing::{
    exact_min_cost_team, find_violated_column, greedy_set_cover_team, harmonic, pricing_tolerance,
    Pricer,
};
use teamgroup::teams::{covers, is_qualified};
use teamgroup::{column_generation, PriceVector, PricingRule, Team};
use teamgroup_testkit::{random_instance, random_pricing_instance, GenConfig, Reference};

fn prices_for(inst: &teamgroup::Instance, y: Vec<f64>) -> PriceVector {
    PriceVector {
        y,
        p: vec![0.0; inst.num_tasks()],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_oracle_is_cheapest_qualified(seed in any::<u64>(), salt in any::<u64>()) {
        let inst = random_instance(seed, &GenConfig::default().unit_loads());
        let (_, y) = random_pricing_instance(salt, inst.num_individuals());
        let mut y = y;
        y.resize(inst.num_individuals(), 1.0);
        let prices = prices_for(&inst, y.clone());
        let reference = Reference::new(&inst);
        for t in 0..inst.num_tasks() {
            let ours = exact_min_cost_team(&inst, t, &prices);
            let scan = brute_force_min_cost_team(&inst, t, &prices).unwrap();
            match (ours, reference.min_cost(t, &y)) {
                (None, None) => prop_assert!(scan.is_none()),
                (Some(team), Some(best)) => {
                    prop_assert!(is_qualified(&inst, &team.team, t));
                    prop_assert!((team.cost - best).abs() < 1e-9);
                    prop_assert!((scan.unwrap().cost - best).abs() < 1e-9);
                }
                (a, b) => prop_assert!(false, "oracle {:?} vs scan {:?}", a, b),
            }
        }
    }

    #[test]
    fn greedy_within_harmonic_factor(seed in any::<u64>()) {
        let (inst, y) = random_pricing_instance(seed, 8);
        let prices = prices_for(&inst, y);
        let exact = exact_min_cost_team(&inst, 0, &prices);
        let greedy = greedy_set_cover_team(&inst, 0, &prices).unwrap();
        match (greedy, exact) {
            (None, None) => {}
            (Some(g), Some(e)) => {
                let n = inst.tasks()[0].skills.len();
                prop_assert_eq!(g.guarantee, harmonic(n));
                prop_assert!(g.cost <= harmonic(n) * e.cost + 1e-9);
                prop_assert!(covers(&inst, &g.team, 0));
                for &u in g.team.members() {
                    let rest = Team::new(g.team.members().iter().copied().filter(|&v| v != u));
                    prop_assert!(rest.is_empty() || !covers(&inst, &rest, 0));
                }
            }
            (g, e) => prop_assert!(false, "greedy {:?} vs exact {:?}", g, e),
        }
    }

    #[test]
    fn terminal_duals_are_feasible(seed in any::<u64>()) {
        let inst = random_instance(seed, &GenConfig::default().unit_loads());
        let run = column_generation(&inst, PricingRule::Exact).unwrap();
        let eps = pricing_tolerance(&inst);
        let pricer = Pricer::new(&inst, PricingRule::Exact).unwrap();
        prop_assert!(find_violated_column(&pricer, &run.solution.duals, eps).is_none());
        let d = &run.solution.duals;
        for t in 0..inst.num_tasks() {
            let lambda = teamgroup::instance::profit_to_f64(&inst.tasks()[t].profit);
            for team in Reference::new(&inst).qualified_teams(t) {
                let cost: f64 = team.iter().map(|&u| d.y[u]).sum::<f64>() + d.p[t];
                prop_assert!(cost >= lambda - eps - 1e-9);
            }
        }
    }

    #[test]
    fn greedy_terminal_duals_scaled_by_mu(seed in any::<u64>()) {
        let inst = random_instance(seed, &GenConfig::default().unit_loads())
            .with_compatibility(teamgroup::Compatibility::None);
        let run = column_generation(&inst, PricingRule::Greedy).unwrap();
        let mu = run.oracle_guarantee;
        let eps = pricing_tolerance(&inst);
        let d = run.solution.duals.scaled(mu);
        for t in 0..inst.num_tasks() {
            let lambda = teamgroup::instance::profit_to_f64(&inst.tasks()[t].profit);
            for team in Reference::new(&inst).qualified_teams(t) {
                let cost: f64 = team.iter().map(|&u| d.y[u]).sum::<f64>() + d.p[t];
                prop_assert!(cost >= lambda - mu * eps - 1e-9);
            }
        }
    }
}
