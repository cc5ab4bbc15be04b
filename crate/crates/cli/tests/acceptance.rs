//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use teamgroup::exact_oracle::brute_force_optimal;
use teamgroup::instance::profit_to_f64;
use teamgroup::master_lp::{solve_restricted_lp, LP_TOL};
use teamgroup::pricing::{exact_min_cost_team, greedy_set_cover_team, harmonic};
use teamgroup::rounding::{capacity_round, deterministic_round, randomized_round};
use teamgroup::{
    approx_tg, approx_tg_capacitated, column_generation, expand_load_limits, lp_upper_bound,
    serialize_instance, Capacity, Instance, PriceVector, PricingRule, Profit, RoundingInput,
    TeamCatalog,
};
use teamgroup_testkit::{
    random_instance, random_pricing_instance, seeds, worked_example, GenConfig, NETWORK_1_JSON,
    NETWORK_2_JSON,
};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

/// Instances shared by criteria 2 to 5.
fn sandwich_regime() -> Vec<Instance> {
    seeds(200, 0xA11CE)
        .map(|s| random_instance(s, &GenConfig::default()))
        .collect()
}

fn within(limit: Duration, start: Instant, detail: String) -> Verdict {
    let took = start.elapsed();
    if took < limit {
        Ok(detail)
    } else {
        Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
    }
}

fn golden() -> Verdict {
    let cases = [(1u8, 15), (2u8, 50)];
    for (network, want) in cases {
        let inst = worked_example(network);
        let want = Profit::from_integer(want);

        let start = Instant::now();
        let exact = brute_force_optimal(&inst).map_err(|e| e.to_string())?;
        within(Duration::from_secs(1), start, String::new())?;
        if exact.profit != want {
            return Err(format!("network {network}: exact profit {}", exact.profit));
        }

        let start = Instant::now();
        let report = approx_tg(&inst, PricingRule::Exact).map_err(|e| e.to_string())?;
        within(Duration::from_secs(1), start, String::new())?;
        if report.grouping.profit != want {
            return Err(format!(
                "network {network}: approx-tg profit {}",
                report.grouping.profit
            ));
        }
        if network == 2 {
            let expected = vec![(
                "t1".to_string(),
                vec!["a".to_string(), "b".into(), "c".into()],
            )];
            for (who, g) in [("exact", &exact), ("approx-tg", &report.grouping)] {
                if g.assignments(&inst) != expected {
                    return Err(format!(
                        "network 2: {who} assignment {:?}",
                        g.assignments(&inst)
                    ));
                }
            }
        }
    }
    Ok("network 1 -> 15, network 2 -> 50 with {a,b,c} -> t1".into())
}

fn lp_sandwich(regime: &[Instance]) -> Verdict {
    let start = Instant::now();
    let mut worst_gap = f64::NEG_INFINITY;
    for (i, inst) in regime.iter().enumerate() {
        let opt = profit_to_f64(&brute_force_optimal(inst).map_err(|e| e.to_string())?.profit);
        let bound = lp_upper_bound(inst, PricingRule::Exact).map_err(|e| e.to_string())?;
        if opt > bound.value + LP_TOL {
            return Err(format!(
                "instance {i}: OPT {opt} above LP bound {}",
                bound.value
            ));
        }
        let expanded = expand_load_limits(inst);
        let full = solve_restricted_lp(&expanded, &TeamCatalog::full(&expanded)).objective;
        let gap = (bound.value - full).abs();
        worst_gap = worst_gap.max(gap);
        if gap > LP_TOL {
            return Err(format!(
                "instance {i}: colgen LP {} vs full LP {full}",
                bound.value
            ));
        }
    }
    within(
        Duration::from_secs(60),
        start,
        format!(
            "{} instances, max |colgen - full| = {worst_gap:.1e}",
            regime.len()
        ),
    )
}

fn approx_ratio(regime: &[Instance]) -> Verdict {
    let mut tightest = f64::INFINITY;
    for (i, inst) in regime.iter().enumerate() {
        let inst = inst.with_capacities(Capacity::Unlimited);
        let opt = profit_to_f64(
            &brute_force_optimal(&inst)
                .map_err(|e| e.to_string())?
                .profit,
        );
        let report = approx_tg(&inst, PricingRule::Exact).map_err(|e| e.to_string())?;
        let delta = report.delta_catalog.max(1) as f64;
        let ratio = (1.0 / delta).max(1.0 / (2.0 * (report.m as f64).sqrt()));
        let got = report.grouping.profit_f64();
        if !report.grouping.is_feasible(&inst) || got < ratio * opt - LP_TOL {
            return Err(format!(
                "instance {i}: profit {got}, OPT {opt}, ratio {ratio}"
            ));
        }
        if opt > 0.0 {
            tightest = tightest.min(got / opt / ratio);
        }
    }
    Ok(format!(
        "{} instances, 0 violations, min (profit/OPT)/ratio = {tightest:.3}",
        regime.len()
    ))
}

fn rounding_bounds(regime: &[Instance]) -> Verdict {
    let mut checked = 0;
    for (i, inst) in regime.iter().enumerate() {
        let expanded = expand_load_limits(inst);
        let run = column_generation(&expanded, PricingRule::Exact).map_err(|e| e.to_string())?;
        let input =
            RoundingInput::from_solution(&run.catalog, &run.solution).map_err(|e| e.to_string())?;
        let mass = input.lp_mass();
        let rho = input.rho() as f64;
        let det = deterministic_round(&input);
        if det.profit_f64() < mass / rho - LP_TOL || !det.is_disjoint() {
            return Err(format!(
                "instance {i}: deterministic {} < {mass}/{rho}",
                det.profit_f64()
            ));
        }
        let caps: Vec<Capacity> = expanded.tasks().iter().map(|t| t.capacity).collect();
        let cap = capacity_round(&input, &caps);
        if cap.profit_f64() < mass / (rho + 1.0) - LP_TOL || !cap.is_feasible(&expanded) {
            return Err(format!(
                "instance {i}: capacity {} < {mass}/{}",
                cap.profit_f64(),
                rho + 1.0
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} LP solutions, 0 violations"))
}

fn randomized_expectation(regime: &[Instance]) -> Verdict {
    const DRAWS: u64 = 10_000;
    let start = Instant::now();
    // first 20 uncapacitated instances with positive LP mass
    let mut used = 0;
    let mut slack = f64::INFINITY;
    for (i, inst) in regime.iter().enumerate() {
        if used == 20 {
            break;
        }
        if inst.has_finite_capacities() {
            continue;
        }
        let expanded = expand_load_limits(inst);
        let run = column_generation(&expanded, PricingRule::Exact).map_err(|e| e.to_string())?;
        let input =
            RoundingInput::from_solution(&run.catalog, &run.solution).map_err(|e| e.to_string())?;
        if input.lp_mass() <= LP_TOL {
            continue;
        }
        used += 1;
        let target = input.lp_mass() / (4.0 * input.rho() as f64);
        let (mut sum, mut sq) = (0.0, 0.0);
        for seed in 0..DRAWS {
            let g = randomized_round(&input, seed);
            if !g.is_feasible(&expanded) {
                return Err(format!("instance {i}: seed {seed} infeasible"));
            }
            let v = g.profit_f64();
            sum += v;
            sq += v * v;
        }
        let n = DRAWS as f64;
        let mean = sum / n;
        let se = ((sq / n - mean * mean).max(0.0) / (n - 1.0)).sqrt();
        if mean < target - 3.0 * se {
            return Err(format!("instance {i}: mean {mean} < {target} - 3*{se}"));
        }
        slack = slack.min(mean / target);
    }
    if used < 20 {
        return Err(format!("only {used} eligible instances"));
    }
    within(
        Duration::from_secs(120),
        start,
        format!("20 instances x {DRAWS} seeds, min mean/target = {slack:.3}"),
    )
}

fn greedy_bound() -> Verdict {
    let mut worst = 0.0f64;
    for seed in seeds(200, 0x6EED) {
        let (inst, y) = random_pricing_instance(seed, 8);
        let prices = PriceVector { y, p: vec![0.0] };
        let exact = exact_min_cost_team(&inst, 0, &prices);
        let greedy = greedy_set_cover_team(&inst, 0, &prices).map_err(|e| e.to_string())?;
        match (greedy, exact) {
            (None, None) => {}
            (Some(g), Some(e)) => {
                let h = harmonic(inst.tasks()[0].skills.len());
                if g.cost > h * e.cost + 1e-9 {
                    return Err(format!("seed {seed}: greedy {} > {h} x {}", g.cost, e.cost));
                }
                if e.cost > 0.0 {
                    worst = worst.max(g.cost / e.cost);
                }
            }
            (g, e) => return Err(format!("seed {seed}: greedy {g:?} vs exact {e:?}")),
        }
    }
    Ok(format!(
        "200 instances, 0 violations, max greedy/exact = {worst:.3}"
    ))
}

fn load_reduction() -> Verdict {
    let cfg = GenConfig {
        loads: vec![1, 2, 3],
        ..GenConfig::default()
    };
    let mut multi = 0;
    for seed in seeds(100, 0x10AD) {
        let inst = random_instance(seed, &cfg);
        if !inst.has_unit_loads() {
            multi += 1;
        }
        let direct = brute_force_optimal(&inst)
            .map_err(|e| e.to_string())?
            .profit;
        let expanded = brute_force_optimal(&expand_load_limits(&inst))
            .map_err(|e| e.to_string())?
            .profit;
        if direct != expanded {
            return Err(format!(
                "seed {seed}: direct {direct} vs expanded {expanded}"
            ));
        }
    }
    Ok(format!(
        "100 instances ({multi} with loads > 1), all equal exactly"
    ))
}

fn capacitated_ratio() -> Verdict {
    let cfg = GenConfig::default().capacitated();
    for seed in seeds(100, 0xCA9) {
        let inst = random_instance(seed, &cfg);
        let opt = profit_to_f64(
            &brute_force_optimal(&inst)
                .map_err(|e| e.to_string())?
                .profit,
        );
        let report = approx_tg_capacitated(&inst, PricingRule::Exact).map_err(|e| e.to_string())?;
        let delta = report.delta_catalog.max(1) as f64;
        let ratio = (1.0 / (delta + 1.0)).max(1.0 / (2.0 * ((report.m as f64).sqrt() + 1.0)));
        let got = report.grouping.profit_f64();
        if !report.grouping.is_feasible(&inst) || got < ratio * opt - LP_TOL {
            return Err(format!(
                "seed {seed}: profit {got}, OPT {opt}, ratio {ratio}"
            ));
        }
    }
    Ok("100 instances, 0 violations".into())
}

fn determinism() -> Verdict {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let mut files = vec![
        ("net1".to_string(), NETWORK_1_JSON.to_string()),
        ("net2".to_string(), NETWORK_2_JSON.to_string()),
    ];
    for seed in 0..6u64 {
        files.push((
            format!("rand{seed}"),
            serialize_instance(&random_instance(seed, &GenConfig::default())),
        ));
    }
    let mut runs = 0;
    for (name, text) in &files {
        let path = dir.path().join(format!("{name}.json"));
        fs::write(&path, text).map_err(|e| e.to_string())?;
        let input = path.to_str().unwrap().to_string();
        let mut commands: Vec<Vec<String>> = vec![
            vec!["validate".into(), "--input".into(), input.clone()],
            vec!["bound".into(), "--input".into(), input.clone()],
        ];
        for alg in ["approx-tg", "exact", "cand1", "cand2"] {
            commands.push(vec![
                "solve".into(),
                "--input".into(),
                input.clone(),
                "--algorithm".into(),
                alg.into(),
            ]);
        }
        for seed in ["0", "7", "12345"] {
            commands.push(vec![
                "solve".into(),
                "--input".into(),
                input.clone(),
                "--algorithm".into(),
                "rand-round".into(),
                "--seed".into(),
                seed.into(),
            ]);
        }
        for args in commands {
            let once = Command::new(env!("CARGO_BIN_EXE_teamgroup"))
                .args(&args)
                .output();
            let twice = Command::new(env!("CARGO_BIN_EXE_teamgroup"))
                .args(&args)
                .output();
            let (a, b) = (
                once.map_err(|e| e.to_string())?,
                twice.map_err(|e| e.to_string())?,
            );
            if a.stdout != b.stdout || a.stderr != b.stderr || a.status != b.status {
                return Err(format!("{name}: {} differs between runs", args.join(" ")));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} commands, byte-identical on repeat"))
}

fn main() -> ExitCode {
    let regime = sandwich_regime();
    let criteria: Vec<Criterion> = vec![
        ("golden worked examples", Box::new(golden)),
        (
            "LP sandwich and column-generation exactness",
            Box::new(|| lp_sandwich(&regime)),
        ),
        (
            "approx-tg ratio max{1/Delta, 1/(2 sqrt m)}",
            Box::new(|| approx_ratio(&regime)),
        ),
        (
            "rounding 1/rho and 1/(rho+1)",
            Box::new(|| rounding_bounds(&regime)),
        ),
        (
            "randomized rounding expectation 1/(4 rho)",
            Box::new(|| randomized_expectation(&regime)),
        ),
        ("greedy pricing within H_n'", Box::new(greedy_bound)),
        (
            "load-limit expansion preserves optimum",
            Box::new(load_reduction),
        ),
        (
            "capacitated ratio max{1/(Delta+1), 1/(2(sqrt m + 1))}",
            Box::new(capacitated_ratio),
        ),
        ("CLI determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let took = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} ({took:.2} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail} ({took:.2} s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
