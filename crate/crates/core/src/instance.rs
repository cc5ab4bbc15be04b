//! Problem instances: skills, individuals, the social graph, tasks, and the
//! compatibility rule that qualified teams must satisfy.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact task profit. Negative values are representable so that invalid
/// instances can be diagnosed rather than rejected at construction.
pub type Profit = Ratio<i64>;

pub fn profit_to_f64(p: &Profit) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub id: String,
    pub skills: BTreeSet<String>,
    pub load: u32,
}

impl Individual {
    pub fn new<I, S>(id: impl Into<String>, skills: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Individual {
            id: id.into(),
            skills: skills.into_iter().map(Into::into).collect(),
            load: 1,
        }
    }

    pub fn with_load(mut self, load: u32) -> Self {
        self.load = load;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Capacity {
    Finite(u32),
    Unlimited,
}

impl Capacity {
    pub fn finite(&self) -> Option<u32> {
        match *self {
            Capacity::Finite(g) => Some(g),
            Capacity::Unlimited => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Capacity::Finite(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub id: String,
    pub skills: BTreeSet<String>,
    pub profit: Profit,
    pub capacity: Capacity,
}

impl Task {
    pub fn new<I, S>(id: impl Into<String>, skills: I, profit: i64) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Task {
            id: id.into(),
            skills: skills.into_iter().map(Into::into).collect(),
            profit: Profit::from_integer(profit),
            capacity: Capacity::Unlimited,
        }
    }

    pub fn with_capacity(mut self, g: u32) -> Self {
        self.capacity = Capacity::Finite(g);
        self
    }

    pub fn with_profit(mut self, profit: Profit) -> Self {
        self.profit = profit;
        self
    }
}

/// Undirected edge between two individual ids, kept in file orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge(pub String, pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Compatibility {
    None,
    #[default]
    Connected,
    Diameter(u32),
}

impl fmt::Display for Compatibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Compatibility::None => write!(f, "none"),
            Compatibility::Connected => write!(f, "connected"),
            Compatibility::Diameter(d) => write!(f, "diameter({d})"),
        }
    }
}

/// Lookup tables derived from the raw instance data. Unknown references are
/// skipped here; they are reported by [`validate_instance`].
#[derive(Debug, Clone)]
struct Index {
    skill_ix: HashMap<String, usize>,
    individual_ix: HashMap<String, usize>,
    individual_skills: Vec<FixedBitSet>,
    task_skills: Vec<FixedBitSet>,
    adjacency: Vec<FixedBitSet>,
    id_rank: Vec<usize>,
}

impl Index {
    fn build(
        skills: &[String],
        individuals: &[Individual],
        edges: &[Edge],
        tasks: &[Task],
    ) -> Self {
        let n = skills.len();
        let m = individuals.len();
        let mut skill_ix = HashMap::with_capacity(n);
        for (i, s) in skills.iter().enumerate() {
            skill_ix.entry(s.clone()).or_insert(i);
        }
        let mut individual_ix = HashMap::with_capacity(m);
        for (i, u) in individuals.iter().enumerate() {
            individual_ix.entry(u.id.clone()).or_insert(i);
        }
        let to_bits = |set: &BTreeSet<String>| {
            let mut bits = FixedBitSet::with_capacity(n);
            for s in set {
                if let Some(&i) = skill_ix.get(s) {
                    bits.insert(i);
                }
            }
            bits
        };
        let individual_skills = individuals.iter().map(|u| to_bits(&u.skills)).collect();
        let task_skills = tasks.iter().map(|t| to_bits(&t.skills)).collect();

        let mut adjacency = vec![FixedBitSet::with_capacity(m); m];
        for Edge(a, b) in edges {
            if let (Some(&i), Some(&j)) = (individual_ix.get(a), individual_ix.get(b)) {
                if i != j {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }

        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| individuals[a].id.cmp(&individuals[b].id).then(a.cmp(&b)));
        let mut id_rank = vec![0; m];
        for (rank, &i) in order.iter().enumerate() {
            id_rank[i] = rank;
        }

        Index {
            skill_ix,
            individual_ix,
            individual_skills,
            task_skills,
            adjacency,
            id_rank,
        }
    }
}

/// An immutable problem instance.
///
/// Individuals and tasks are addressed by their position in the instance; the
/// string ids are kept for I/O and for canonical (lexicographic) ordering.
#[derive(Debug, Clone)]
pub struct Instance {
    skills: Vec<String>,
    individuals: Vec<Individual>,
    edges: Vec<Edge>,
    tasks: Vec<Task>,
    compatibility: Compatibility,
    index: Index,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.skills == other.skills
            && self.individuals == other.individuals
            && self.edges == other.edges
            && self.tasks == other.tasks
            && self.compatibility == other.compatibility
    }
}

impl Instance {
    /// Builds an instance without validating it. Use [`validate_instance`]
    /// (or [`parse_instance`], which validates) before handing it to solvers.
    pub fn new(
        skills: Vec<String>,
        individuals: Vec<Individual>,
        edges: Vec<Edge>,
        tasks: Vec<Task>,
        compatibility: Compatibility,
    ) -> Self {
        let index = Index::build(&skills, &individuals, &edges, &tasks);
        Instance {
            skills,
            individuals,
            edges,
            tasks,
            compatibility,
            index,
        }
    }

    pub fn skills(&self) -> &[String] {
        &self.skills
    }

    pub fn individuals(&self) -> &[Individual] {
        &self.individuals
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn compatibility(&self) -> Compatibility {
        self.compatibility
    }

    pub fn with_compatibility(&self, compatibility: Compatibility) -> Instance {
        let mut out = self.clone();
        out.compatibility = compatibility;
        out
    }

    /// Copy of this instance with every task capacity replaced.
    pub fn with_capacities(&self, capacity: Capacity) -> Instance {
        let tasks = self
            .tasks
            .iter()
            .map(|t| Task {
                capacity,
                ..t.clone()
            })
            .collect();
        Instance::new(
            self.skills.clone(),
            self.individuals.clone(),
            self.edges.clone(),
            tasks,
            self.compatibility,
        )
    }

    pub fn num_individuals(&self) -> usize {
        self.individuals.len()
    }

    pub fn num_tasks(&self) -> usize {
        self.tasks.len()
    }

    pub fn num_skills(&self) -> usize {
        self.skills.len()
    }

    pub fn individual_index(&self, id: &str) -> Option<usize> {
        self.index.individual_ix.get(id).copied()
    }

    pub fn task_index(&self, id: &str) -> Option<usize> {
        self.tasks.iter().position(|t| t.id == id)
    }

    pub fn skill_index(&self, id: &str) -> Option<usize> {
        self.index.skill_ix.get(id).copied()
    }

    pub(crate) fn individual_skills(&self, u: usize) -> &FixedBitSet {
        &self.index.individual_skills[u]
    }

    pub(crate) fn task_skills(&self, t: usize) -> &FixedBitSet {
        &self.index.task_skills[t]
    }

    pub(crate) fn adjacency(&self, u: usize) -> &FixedBitSet {
        &self.index.adjacency[u]
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.index.adjacency[u].contains(v)
    }

    /// Position of individual `u` when individuals are sorted by id.
    pub fn id_rank(&self, u: usize) -> usize {
        self.index.id_rank[u]
    }

    pub fn has_finite_capacities(&self) -> bool {
        self.tasks.iter().any(|t| t.capacity.is_finite())
    }

    pub fn has_unit_loads(&self) -> bool {
        self.individuals.iter().all(|u| u.load == 1)
    }

    pub fn total_load(&self) -> u64 {
        self.individuals.iter().map(|u| u64::from(u.load)).sum()
    }

    pub fn max_profit(&self) -> f64 {
        self.tasks
            .iter()
            .map(|t| profit_to_f64(&t.profit))
            .fold(0.0, f64::max)
    }
}

/// One problem found by [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    EmptySkillId,
    DuplicateSkill(String),
    EmptyIndividualId,
    DuplicateIndividual(String),
    EmptyTaskId,
    DuplicateTask(String),
    UnknownIndividualSkill { individual: String, skill: String },
    UnknownTaskSkill { task: String, skill: String },
    UnknownEdgeEndpoint { endpoint: String },
    SelfLoop(String),
    ZeroLoad(String),
    NegativeProfit { task: String, profit: Profit },
    ZeroCapacity(String),
    NoRequiredSkills(String),
    ZeroDiameterBound,
    NoIndividuals,
    NoTasks,
}

impl Diagnostic {
    /// Whether the diagnostic is a dangling cross-reference (as opposed to an
    /// out-of-domain value or a structural problem).
    pub fn is_reference(&self) -> bool {
        matches!(
            self,
            Diagnostic::UnknownIndividualSkill { .. }
                | Diagnostic::UnknownTaskSkill { .. }
                | Diagnostic::UnknownEdgeEndpoint { .. }
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EmptySkillId => write!(f, "skill: empty id"),
            Diagnostic::DuplicateSkill(s) => write!(f, "skill {s:?}: duplicate id"),
            Diagnostic::EmptyIndividualId => write!(f, "individual: empty id"),
            Diagnostic::DuplicateIndividual(u) => write!(f, "individual {u:?}: duplicate id"),
            Diagnostic::EmptyTaskId => write!(f, "task: empty id"),
            Diagnostic::DuplicateTask(t) => write!(f, "task {t:?}: duplicate id"),
            Diagnostic::UnknownIndividualSkill { individual, skill } => {
                write!(f, "individual {individual:?}: unknown skill {skill:?}")
            }
            Diagnostic::UnknownTaskSkill { task, skill } => {
                write!(f, "task {task:?}: unknown skill {skill:?}")
            }
            Diagnostic::UnknownEdgeEndpoint { endpoint } => {
                write!(f, "edge: unknown individual {endpoint:?}")
            }
            Diagnostic::SelfLoop(u) => write!(f, "edge ({u:?}, {u:?}): self-loop"),
            Diagnostic::ZeroLoad(u) => write!(f, "individual {u:?}: load must be at least 1"),
            Diagnostic::NegativeProfit { task, profit } => {
                write!(f, "task {task:?}: negative profit {profit}")
            }
            Diagnostic::ZeroCapacity(t) => write!(f, "task {t:?}: capacity must be at least 1"),
            Diagnostic::NoRequiredSkills(t) => write!(f, "task {t:?}: no required skills"),
            Diagnostic::ZeroDiameterBound => {
                write!(f, "compatibility: diameter bound must be at least 1")
            }
            Diagnostic::NoIndividuals => write!(f, "instance: no individuals"),
            Diagnostic::NoTasks => write!(f, "instance: no tasks"),
        }
    }
}

/// Checks every instance invariant, returning one diagnostic per violation.
pub fn validate_instance(inst: &Instance) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    let mut seen = HashSet::new();
    for s in &inst.skills {
        if s.is_empty() {
            out.push(Diagnostic::EmptySkillId);
        } else if !seen.insert(s.as_str()) {
            out.push(Diagnostic::DuplicateSkill(s.clone()));
        }
    }

    if inst.individuals.is_empty() {
        out.push(Diagnostic::NoIndividuals);
    }
    let mut seen = HashSet::new();
    for u in &inst.individuals {
        if u.id.is_empty() {
            out.push(Diagnostic::EmptyIndividualId);
        } else if !seen.insert(u.id.as_str()) {
            out.push(Diagnostic::DuplicateIndividual(u.id.clone()));
        }
        for s in &u.skills {
            if !inst.index.skill_ix.contains_key(s) {
                out.push(Diagnostic::UnknownIndividualSkill {
                    individual: u.id.clone(),
                    skill: s.clone(),
                });
            }
        }
        if u.load == 0 {
            out.push(Diagnostic::ZeroLoad(u.id.clone()));
        }
    }

    for Edge(a, b) in &inst.edges {
        for endpoint in [a, b] {
            if !inst.index.individual_ix.contains_key(endpoint) {
                out.push(Diagnostic::UnknownEdgeEndpoint {
                    endpoint: endpoint.clone(),
                });
            }
        }
        if a == b {
            out.push(Diagnostic::SelfLoop(a.clone()));
        }
    }

    if inst.tasks.is_empty() {
        out.push(Diagnostic::NoTasks);
    }
    let mut seen = HashSet::new();
    for t in &inst.tasks {
        if t.id.is_empty() {
            out.push(Diagnostic::EmptyTaskId);
        } else if !seen.insert(t.id.as_str()) {
            out.push(Diagnostic::DuplicateTask(t.id.clone()));
        }
        if t.skills.is_empty() {
            out.push(Diagnostic::NoRequiredSkills(t.id.clone()));
        }
        for s in &t.skills {
            if !inst.index.skill_ix.contains_key(s) {
                out.push(Diagnostic::UnknownTaskSkill {
                    task: t.id.clone(),
                    skill: s.clone(),
                });
            }
        }
        if t.profit.is_negative() {
            out.push(Diagnostic::NegativeProfit {
                task: t.id.clone(),
                profit: t.profit,
            });
        }
        if t.capacity == Capacity::Finite(0) {
            out.push(Diagnostic::ZeroCapacity(t.id.clone()));
        }
    }

    if inst.compatibility == Compatibility::Diameter(0) {
        out.push(Diagnostic::ZeroDiameterBound);
    }
    out
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("reference error: {}", join(.0))]
    Reference(Vec<Diagnostic>),
    #[error("domain error: {}", join(.0))]
    Domain(Vec<Diagnostic>),
}

fn join(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

// ---------------------------------------------------------------------------
// JSON file format

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    skills: Vec<String>,
    individuals: Vec<RawIndividual>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    tasks: Vec<RawTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    compatibility: Option<RawCompatibility>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIndividual {
    id: String,
    skills: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    load: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    id: String,
    skills: Vec<String>,
    profit: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    capacity: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCompatibility {
    mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bound: Option<u32>,
}

/// Parses a profit given either as a JSON number or as a `"num/den"` string.
pub fn parse_profit(value: &serde_json::Value) -> Result<Profit, String> {
    match value {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Profit::from_integer(i))
            } else {
                parse_decimal(&n.to_string())
            }
        }
        serde_json::Value::String(s) => parse_profit_str(s),
        other => Err(format!(
            "profit must be a number or \"num/den\" string, got {other}"
        )),
    }
}

pub fn parse_profit_str(s: &str) -> Result<Profit, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad profit numerator in {s:?}"))?;
        let den: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad profit denominator in {s:?}"))?;
        if den == 0 {
            return Err(format!("zero denominator in profit {s:?}"));
        }
        Ok(Profit::new(num, den))
    } else {
        parse_decimal(s)
    }
}

/// Exact conversion of a decimal literal (optionally with exponent).
fn parse_decimal(s: &str) -> Result<Profit, String> {
    let bad = || format!("bad profit literal {s:?}");
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: i64 = digits.parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let pow = |e: i32| 10i64.checked_pow(e as u32).ok_or_else(bad);
    let value = if scale >= 0 {
        num = num.checked_mul(pow(scale)?).ok_or_else(bad)?;
        Profit::from_integer(num)
    } else {
        Profit::new(num, pow(-scale)?)
    };
    Ok(if negative { -value } else { value })
}

fn format_profit(p: &Profit) -> serde_json::Value {
    if p.is_integer() {
        serde_json::Value::from(p.to_integer())
    } else {
        serde_json::Value::String(format!("{}/{}", p.numer(), p.denom()))
    }
}

/// Reads an instance file without checking cross-references or value domains.
/// Only malformed documents are rejected.
pub fn parse_instance_unchecked(text: &str) -> Result<Instance, InstanceError> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| InstanceError::Syntax(e.to_string()))?;

    let individuals = raw
        .individuals
        .into_iter()
        .map(|u| Individual {
            id: u.id,
            skills: u.skills.into_iter().collect(),
            load: u.load.unwrap_or(1),
        })
        .collect();
    let tasks = raw
        .tasks
        .into_iter()
        .map(|t| {
            let profit = parse_profit(&t.profit)
                .map_err(|e| InstanceError::Syntax(format!("task {:?}: {e}", t.id)))?;
            Ok(Task {
                id: t.id,
                skills: t.skills.into_iter().collect(),
                profit,
                capacity: t.capacity.map_or(Capacity::Unlimited, Capacity::Finite),
            })
        })
        .collect::<Result<Vec<_>, InstanceError>>()?;
    let compatibility = match raw.compatibility {
        None => Compatibility::Connected,
        Some(c) => match (c.mode.as_str(), c.bound) {
            ("none", _) => Compatibility::None,
            ("connected", _) => Compatibility::Connected,
            ("diameter", Some(d)) => Compatibility::Diameter(d),
            ("diameter", None) => {
                return Err(InstanceError::Syntax(
                    "diameter mode requires a bound".into(),
                ))
            }
            (other, _) => {
                return Err(InstanceError::Syntax(format!(
                    "unknown compatibility mode {other:?}"
                )))
            }
        },
    };
    let edges = raw.edges.into_iter().map(|(a, b)| Edge(a, b)).collect();
    Ok(Instance::new(
        raw.skills,
        individuals,
        edges,
        tasks,
        compatibility,
    ))
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let inst = parse_instance_unchecked(text)?;
    let diags = validate_instance(&inst);
    if diags.is_empty() {
        Ok(inst)
    } else if diags.iter().any(Diagnostic::is_reference) {
        Err(InstanceError::Reference(diags))
    } else {
        Err(InstanceError::Domain(diags))
    }
}

/// Serializes an instance in the file format read by [`parse_instance`].
pub fn serialize_instance(inst: &Instance) -> String {
    let raw = RawInstance {
        skills: inst.skills.clone(),
        individuals: inst
            .individuals
            .iter()
            .map(|u| RawIndividual {
                id: u.id.clone(),
                skills: u.skills.iter().cloned().collect(),
                load: Some(u.load),
            })
            .collect(),
        edges: inst
            .edges
            .iter()
            .map(|Edge(a, b)| (a.clone(), b.clone()))
            .collect(),
        tasks: inst
            .tasks
            .iter()
            .map(|t| RawTask {
                id: t.id.clone(),
                skills: t.skills.iter().cloned().collect(),
                profit: format_profit(&t.profit),
                capacity: t.capacity.finite(),
            })
            .collect(),
        compatibility: Some(match inst.compatibility {
            Compatibility::None => RawCompatibility {
                mode: "none".into(),
                bound: None,
            },
            Compatibility::Connected => RawCompatibility {
                mode: "connected".into(),
                bound: None,
            },
            Compatibility::Diameter(d) => RawCompatibility {
                mode: "diameter".into(),
                bound: Some(d),
            },
        }),
    };
    serde_json::to_string_pretty(&raw).expect("instance serialization cannot fail")
}

// ---------------------------------------------------------------------------
// Load limits

/// An instance whose individuals all have unit load, together with the map
/// from each copy back to the individual it was made from.
#[derive(Debug, Clone)]
pub struct LoadExpansion {
    pub instance: Instance,
    pub origin: Vec<usize>,
}

impl LoadExpansion {
    /// Replaces every individual `u` with `load(u)` unit-load copies `u#1..`.
    /// Copies keep `u`'s skills and edges and are pairwise adjacent.
    pub fn new(inst: &Instance) -> Self {
        let mut taken: HashSet<String> = inst.individuals.iter().map(|u| u.id.clone()).collect();
        let mut individuals = Vec::new();
        let mut origin = Vec::new();
        let mut copies: Vec<Vec<String>> = Vec::with_capacity(inst.individuals.len());

        for (ix, u) in inst.individuals.iter().enumerate() {
            let mut ids = Vec::with_capacity(u.load as usize);
            for k in 1..=u.load {
                let mut id = format!("{}#{k}", u.id);
                while taken.contains(&id) {
                    id.push('\'');
                }
                taken.insert(id.clone());
                individuals.push(Individual {
                    id: id.clone(),
                    skills: u.skills.clone(),
                    load: 1,
                });
                origin.push(ix);
                ids.push(id);
            }
            copies.push(ids);
        }

        let mut edges = Vec::new();
        for ids in &copies {
            for (i, a) in ids.iter().enumerate() {
                for b in &ids[i + 1..] {
                    edges.push(Edge(a.clone(), b.clone()));
                }
            }
        }
        for Edge(a, b) in &inst.edges {
            if let (Some(i), Some(j)) = (inst.individual_index(a), inst.individual_index(b)) {
                if i == j {
                    continue;
                }
                for ca in &copies[i] {
                    for cb in &copies[j] {
                        edges.push(Edge(ca.clone(), cb.clone()));
                    }
                }
            }
        }

        let instance = Instance::new(
            inst.skills.clone(),
            individuals,
            edges,
            inst.tasks.clone(),
            inst.compatibility,
        );
        LoadExpansion { instance, origin }
    }

    /// The identity expansion, used when every load is already 1.
    pub fn identity(inst: &Instance) -> Self {
        LoadExpansion {
            instance: inst.clone(),
            origin: (0..inst.num_individuals()).collect(),
        }
    }

    /// Expands only when some individual has load above 1.
    pub fn when_needed(inst: &Instance) -> Self {
        if inst.has_unit_loads() {
            Self::identity(inst)
        } else {
            Self::new(inst)
        }
    }
}

pub fn expand_load_limits(inst: &Instance) -> Instance {
    LoadExpansion::new(inst).instance
}

/// Sum of task profits as an exact rational, used by groupings.
pub(crate) fn sum_profits<'a>(profits: impl Iterator<Item = &'a Profit>) -> Profit {
    profits.fold(Profit::zero(), |acc, p| acc + p)
}
