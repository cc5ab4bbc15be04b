//! Seeded instance generators and independent reference oracles shared by the
//! test suites. The oracles read only the public instance data (ids, skill
//! sets, edge list) and never call the library's own team or LP code.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teamgroup::{Capacity, Compatibility, Edge, Individual, Instance, Profit, Task};

pub const NETWORK_1_JSON: &str = r#"{
  "skills": ["HTML", "MySQL", "JavaScript", "PHP"],
  "individuals": [
    {"id": "a", "skills": ["HTML", "MySQL"]},
    {"id": "b", "skills": ["JavaScript"]},
    {"id": "c", "skills": ["HTML", "PHP"]}
  ],
  "edges": [["a", "b"]],
  "tasks": [
    {"id": "t1", "skills": ["HTML", "MySQL", "JavaScript", "PHP"], "profit": 50},
    {"id": "t2", "skills": ["JavaScript", "HTML"], "profit": 10},
    {"id": "t3", "skills": ["PHP"], "profit": 5}
  ],
  "compatibility": {"mode": "connected"}
}"#;

pub const NETWORK_2_JSON: &str = r#"{
  "skills": ["HTML", "MySQL", "JavaScript", "PHP"],
  "individuals": [
    {"id": "a", "skills": ["HTML", "MySQL"]},
    {"id": "b", "skills": ["JavaScript"]},
    {"id": "c", "skills": ["HTML", "PHP"]}
  ],
  "edges": [["a", "b"], ["b", "c"]],
  "tasks": [
    {"id": "t1", "skills": ["HTML", "MySQL", "JavaScript", "PHP"], "profit": 50},
    {"id": "t2", "skills": ["JavaScript", "HTML"], "profit": 10},
    {"id": "t3", "skills": ["PHP"], "profit": 5}
  ],
  "compatibility": {"mode": "connected"}
}"#;

/// Three individuals, three tasks; `network` 1 has edge a-b, 2 adds b-c.
pub fn worked_example(network: u8) -> Instance {
    let text = match network {
        1 => NETWORK_1_JSON,
        2 => NETWORK_2_JSON,
        _ => panic!("worked example has networks 1 and 2"),
    };
    teamgroup::parse_instance(text).expect("fixture parses")
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Upper bound on the sum of load limits (individuals after expansion).
    pub max_units: u32,
    pub max_tasks: usize,
    pub max_skills: usize,
    pub loads: Vec<u32>,
    /// Probability that the instance gets finite capacities.
    pub capacity_prob: f64,
    pub capacities: Vec<u32>,
    pub modes: Vec<Compatibility>,
    pub edge_prob: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_units: 8,
            max_tasks: 4,
            max_skills: 5,
            loads: vec![1, 2],
            capacity_prob: 0.5,
            capacities: vec![1, 2],
            modes: vec![
                Compatibility::None,
                Compatibility::Connected,
                Compatibility::Diameter(1),
                Compatibility::Diameter(2),
            ],
            edge_prob: 0.55,
        }
    }
}

impl GenConfig {
    pub fn unit_loads(mut self) -> Self {
        self.loads = vec![1];
        self
    }

    pub fn uncapacitated(mut self) -> Self {
        self.capacity_prob = 0.0;
        self
    }

    pub fn capacitated(mut self) -> Self {
        self.capacity_prob = 1.0;
        self
    }
}

/// A valid random instance; the compatibility mode cycles with `seed`.
pub fn random_instance(seed: u64, cfg: &GenConfig) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2.min(cfg.max_skills)..=cfg.max_skills);
    let skills: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();

    let mut individuals = Vec::new();
    let mut units = 0;
    let wanted = rng.random_range(2..=cfg.max_units as usize);
    while individuals.len() < wanted {
        let load = *cfg.loads.choose(&mut rng).unwrap();
        if units + load > cfg.max_units {
            if units + 1 > cfg.max_units {
                break;
            }
            continue;
        }
        units += load;
        let count = match rng.random_range(0..10) {
            0 => 0,
            1..=6 => 1,
            _ => 2,
        };
        let mut own: Vec<&String> = skills.iter().collect();
        own.shuffle(&mut rng);
        let id = format!("u{}", individuals.len());
        individuals.push(Individual::new(id, own.into_iter().take(count).cloned()).with_load(load));
    }

    let mut edges = Vec::new();
    for i in 0..individuals.len() {
        for j in i + 1..individuals.len() {
            if rng.random_bool(cfg.edge_prob) {
                edges.push(Edge(individuals[i].id.clone(), individuals[j].id.clone()));
            }
        }
    }

    let capacitated = rng.random_bool(cfg.capacity_prob);
    let k = rng.random_range(1..=cfg.max_tasks);
    let tasks = (0..k)
        .map(|t| {
            let size = rng
                .random_range(1..=3.min(n))
                .max(rng.random_range(1..=3.min(n)));
            let mut req: Vec<&String> = skills.iter().collect();
            req.shuffle(&mut rng);
            let profit = if rng.random_bool(0.2) {
                Ratio::new(rng.random_range(1..=40), rng.random_range(2..=4))
            } else {
                Ratio::from_integer(rng.random_range(1..=20))
            };
            let mut task = Task::new(format!("t{t}"), req.into_iter().take(size).cloned(), 0)
                .with_profit(profit);
            if capacitated {
                task = task.with_capacity(*cfg.capacities.choose(&mut rng).unwrap());
            }
            task
        })
        .collect();

    let mode = cfg.modes[(seed % cfg.modes.len() as u64) as usize];
    Instance::new(skills, individuals, edges, tasks, mode)
}

/// Mode-None instance with one task plus random individual prices.
pub fn random_pricing_instance(seed: u64, max_individuals: usize) -> (Instance, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=5);
    let skills: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let m = rng.random_range(1..=max_individuals);
    let individuals = (0..m)
        .map(|u| {
            let own: Vec<String> = skills
                .iter()
                .filter(|_| rng.random_bool(0.4))
                .cloned()
                .collect();
            Individual::new(format!("u{u}"), own)
        })
        .collect();
    let req: Vec<String> = skills
        .iter()
        .filter(|_| rng.random_bool(0.7))
        .cloned()
        .collect();
    let req = if req.is_empty() {
        vec![skills[0].clone()]
    } else {
        req
    };
    let prices = (0..m)
        .map(|_| {
            if rng.random_bool(0.15) {
                0.0
            } else {
                f64::from(rng.random_range(1..=100u32)) / 10.0
            }
        })
        .collect();
    let inst = Instance::new(
        skills,
        individuals,
        vec![],
        vec![Task::new("t", req, 1)],
        Compatibility::None,
    );
    (inst, prices)
}

/// Team predicates evaluated from ids and edge lists only.
pub struct Reference<'a> {
    inst: &'a Instance,
    /// Shortest-path distances restricted to a member subset are recomputed
    /// per query; this is the raw adjacency.
    adj: Vec<Vec<bool>>,
}

impl<'a> Reference<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let m = inst.individuals().len();
        let pos = |id: &str| inst.individuals().iter().position(|u| u.id == id);
        let mut adj = vec![vec![false; m]; m];
        for Edge(a, b) in inst.edges() {
            if let (Some(i), Some(j)) = (pos(a), pos(b)) {
                if i != j {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
        Reference { inst, adj }
    }

    pub fn covers(&self, members: &[usize], task: usize) -> bool {
        let have: BTreeSet<&String> = members
            .iter()
            .flat_map(|&u| self.inst.individuals()[u].skills.iter())
            .collect();
        self.inst.tasks()[task]
            .skills
            .iter()
            .all(|s| have.contains(s))
    }

    /// Floyd-Warshall on the induced subgraph.
    pub fn induced_diameter(&self, members: &[usize]) -> Option<usize> {
        let k = members.len();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; k]; k];
        for i in 0..k {
            d[i][i] = 0;
            for j in 0..k {
                if self.adj[members[i]][members[j]] {
                    d[i][j] = 1;
                }
            }
        }
        for via in 0..k {
            for i in 0..k {
                for j in 0..k {
                    d[i][j] = d[i][j].min(d[i][via] + d[via][j]);
                }
            }
        }
        let worst = d.iter().flatten().copied().max().unwrap_or(0);
        (worst < inf).then_some(worst)
    }

    pub fn compatible(&self, members: &[usize]) -> bool {
        match self.inst.compatibility() {
            Compatibility::None => true,
            Compatibility::Connected => self.induced_diameter(members).is_some(),
            Compatibility::Diameter(b) => self
                .induced_diameter(members)
                .is_some_and(|d| d <= b as usize),
        }
    }

    pub fn qualified(&self, members: &[usize], task: usize) -> bool {
        !members.is_empty() && self.covers(members, task) && self.compatible(members)
    }

    /// Minimal qualified teams by scanning all `2^m` subsets and checking
    /// every proper subset; sorted member lists in mask order.
    pub fn minimal_teams(&self, task: usize) -> Vec<Vec<usize>> {
        let m = self.inst.individuals().len();
        assert!(m <= 16, "subset scan limited to 16 individuals");
        let members = |mask: u32| (0..m).filter(|&u| mask >> u & 1 == 1).collect::<Vec<_>>();
        let qualified: Vec<bool> = (0..1u32 << m)
            .map(|mask| self.qualified(&members(mask), task))
            .collect();
        (1..1u32 << m)
            .filter(|&mask| qualified[mask as usize])
            .filter(|&mask| {
                // proper non-empty submasks
                let mut sub = (mask - 1) & mask;
                while sub != 0 {
                    if qualified[sub as usize] {
                        return false;
                    }
                    sub = (sub - 1) & mask;
                }
                true
            })
            .map(members)
            .collect()
    }

    /// All qualified teams by subset scan.
    pub fn qualified_teams(&self, task: usize) -> Vec<Vec<usize>> {
        let m = self.inst.individuals().len();
        (1..1u32 << m)
            .map(|mask| (0..m).filter(|&u| mask >> u & 1 == 1).collect::<Vec<_>>())
            .filter(|members| self.qualified(members, task))
            .collect()
    }

    /// Cheapest qualified team cost by subset scan.
    pub fn min_cost(&self, task: usize, prices: &[f64]) -> Option<f64> {
        self.qualified_teams(task)
            .iter()
            .map(|t| t.iter().map(|&u| prices[u]).sum::<f64>())
            .min_by(f64::total_cmp)
    }
}

/// Optimal grouping profit by plain recursion over (task, minimal team)
/// pairs with multiplicities, respecting loads and capacities. No bounding.
pub fn naive_optimum(inst: &Instance) -> Profit {
    let r = Reference::new(inst);
    let cols: Vec<(usize, Vec<usize>)> = (0..inst.tasks().len())
        .flat_map(|t| r.minimal_teams(t).into_iter().map(move |team| (t, team)))
        .collect();
    let mut load: Vec<u32> = inst.individuals().iter().map(|u| u.load).collect();
    let mut cap: Vec<u32> = inst
        .tasks()
        .iter()
        .map(|t| match t.capacity {
            Capacity::Finite(g) => g,
            Capacity::Unlimited => u32::MAX,
        })
        .collect();

    fn go(
        i: usize,
        cols: &[(usize, Vec<usize>)],
        inst: &Instance,
        load: &mut [u32],
        cap: &mut [u32],
    ) -> Profit {
        if i == cols.len() {
            return Profit::from_integer(0);
        }
        let mut best = go(i + 1, cols, inst, load, cap);
        let (t, team) = &cols[i];
        if cap[*t] > 0 && team.iter().all(|&u| load[u] > 0) {
            cap[*t] -= 1;
            team.iter().for_each(|&u| load[u] -= 1);
            // same column may be taken again
            let with = inst.tasks()[*t].profit + go(i, cols, inst, load, cap);
            team.iter().for_each(|&u| load[u] += 1);
            cap[*t] += 1;
            best = best.max(with);
        }
        best
    }
    go(0, &cols, inst, &mut load, &mut cap)
}

/// Checks that `(x, y, p)` certify optimality of the packing LP over
/// `columns` (task index, members): primal feasibility, dual feasibility and
/// equal objectives, all within `tol`. Returns the certified value.
pub fn certify_packing_lp(
    inst: &Instance,
    columns: &[(usize, Vec<usize>)],
    x: &[f64],
    y: &[f64],
    p: &[f64],
    tol: f64,
) -> Result<f64, String> {
    let profit = |t: usize| {
        let r = inst.tasks()[t].profit;
        *r.numer() as f64 / *r.denom() as f64
    };
    let mut load = vec![0.0; inst.individuals().len()];
    let mut per_task = vec![0.0; inst.tasks().len()];
    let mut primal = 0.0;
    for ((t, team), &v) in columns.iter().zip(x) {
        if v < -tol {
            return Err(format!("negative x = {v}"));
        }
        for &u in team {
            load[u] += v;
        }
        per_task[*t] += v;
        primal += v * profit(*t);
    }
    if let Some(l) = load.iter().find(|&&l| l > 1.0 + tol) {
        return Err(format!("load row at {l}"));
    }
    let mut dual: f64 = 0.0;
    for (t, task) in inst.tasks().iter().enumerate() {
        match task.capacity {
            Capacity::Finite(g) => {
                if per_task[t] > f64::from(g) + tol {
                    return Err(format!("capacity row of task {t} at {}", per_task[t]));
                }
                dual += p[t] * f64::from(g);
            }
            Capacity::Unlimited => {
                if p[t].abs() > tol {
                    return Err(format!("price on uncapacitated task {t}"));
                }
            }
        }
        if p[t] < -tol {
            return Err(format!("negative task price {}", p[t]));
        }
    }
    for &v in y {
        if v < -tol {
            return Err(format!("negative individual price {v}"));
        }
        dual += v;
    }
    for (t, team) in columns {
        let cost: f64 = team.iter().map(|&u| y[u]).sum::<f64>() + p[*t];
        if cost < profit(*t) - tol {
            return Err(format!(
                "dual constraint of task {t} team {team:?} violated"
            ));
        }
    }
    if (primal - dual).abs() > tol * (1.0 + primal.abs()) {
        return Err(format!("primal {primal} != dual {dual}"));
    }
    Ok(primal)
}

/// Seeds used for the shared random regime.
pub fn seeds(count: u64, salt: u64) -> impl Iterator<Item = u64> {
    (0..count).map(move |i| i.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
}
