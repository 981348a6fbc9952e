//! Steady-state gas-pipeline coordination: a role-typed network whose
//! consumer setpoints anchor a biased consensus run, with per-component
//! fault modes projected onto the working topology.
//!
//! Pressures here are consensus states, not hydraulic solutions; the
//! scenario captures setpoint coordination and fault recovery, not pipe
//! dynamics.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::{cd_vector_all, CumulativeParams};
use crate::compare::DIRECTED_SCORE_DEPTH;
use crate::consensus::{directed_consensus_weights, run_consensus, ConsensusTrace};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Config bundled as the default scenario: three refineries feeding a
/// compressor backbone that serves seven consumers through valves.
pub fn bundled_config_json() -> &'static str {
    include_str!("../data/gas_default.json")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Refinery,
    Compressor,
    Consumer,
    Valve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipeMode {
    Operating,
    Break,
    Leak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompressorMode {
    Operation,
    Recycling,
    ShutDown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValveMode {
    Open,
    Close,
    Fail,
}

impl FromStr for PipeMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operating" => Ok(PipeMode::Operating),
            "break" => Ok(PipeMode::Break),
            "leak" => Ok(PipeMode::Leak),
            _ => Err(Error::InvalidParameter(format!(
                "unknown pipe mode '{s}' (expected operating, break or leak)"
            ))),
        }
    }
}

impl FromStr for CompressorMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operation" => Ok(CompressorMode::Operation),
            "recycling" => Ok(CompressorMode::Recycling),
            "shut_down" => Ok(CompressorMode::ShutDown),
            _ => Err(Error::InvalidParameter(format!(
                "unknown compressor mode '{s}' (expected operation, recycling or shut_down)"
            ))),
        }
    }
}

impl FromStr for ValveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(ValveMode::Open),
            "close" => Ok(ValveMode::Close),
            "fail" => Ok(ValveMode::Fail),
            _ => Err(Error::InvalidParameter(format!(
                "unknown valve mode '{s}' (expected open, close or fail)"
            ))),
        }
    }
}

fn default_capacity() -> f64 {
    1.0
}
fn default_beta() -> f64 {
    20.0
}
fn default_seed() -> u64 {
    7
}
fn default_leak_penalty() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub id: usize,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub u: usize,
    pub v: usize,
    #[serde(default = "default_capacity")]
    pub capacity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipeOverride {
    pub u: usize,
    pub v: usize,
    pub mode: PipeMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeModeOverride<M> {
    pub id: usize,
    pub mode: M,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeOverrides {
    #[serde(default)]
    pub pipes: Vec<PipeOverride>,
    #[serde(default)]
    pub compressors: Vec<NodeModeOverride<CompressorMode>>,
    #[serde(default)]
    pub valves: Vec<NodeModeOverride<ValveMode>>,
}

/// On-disk scenario description. Node ids must be dense 0..n-1; desired
/// pressures are keyed by consumer id (as JSON object keys, so strings).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: String,
    pub nodes: Vec<NodeSpec>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub modes: ModeOverrides,
    #[serde(default)]
    pub desired_pressures: BTreeMap<String, f64>,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_leak_penalty")]
    pub leak_penalty: f64,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// A pipeline network with per-element operating modes. Fault injection
/// returns a modified copy; values are otherwise immutable.
#[derive(Debug, Clone, PartialEq)]
pub struct GasNetwork {
    name: String,
    graph: Graph,
    roles: Vec<Role>,
    pipe_modes: BTreeMap<(usize, usize), PipeMode>,
    compressor_modes: BTreeMap<usize, CompressorMode>,
    valve_modes: BTreeMap<usize, ValveMode>,
    desired: BTreeMap<usize, f64>,
    beta: f64,
    seed: u64,
    leak_penalty: f64,
}

fn scenario(msg: String) -> Error {
    Error::Scenario(msg)
}

fn check_desired(desired: &BTreeMap<usize, f64>, roles: &[Role]) -> Result<()> {
    for (&node, &psi) in desired {
        match roles.get(node) {
            None => {
                return Err(scenario(format!(
                    "desired pressure names node {node}, but the network has {} nodes",
                    roles.len()
                )))
            }
            Some(Role::Consumer) => {}
            Some(r) => {
                return Err(scenario(format!(
                    "desired pressure on node {node} with role {r:?}; only consumers take demands"
                )))
            }
        }
        if !psi.is_finite() || psi <= 0.0 {
            return Err(scenario(format!("desired pressure for node {node} must be positive")));
        }
    }
    Ok(())
}

impl GasNetwork {
    /// Validates a parsed config and assembles the network with all
    /// declared mode overrides applied on top of nominal modes.
    pub fn from_config(cfg: &ScenarioConfig) -> Result<Self> {
        if cfg.nodes.is_empty() {
            return Err(scenario("scenario declares no nodes".into()));
        }
        let n = cfg.nodes.len();
        let mut roles = vec![None; n];
        for spec in &cfg.nodes {
            if spec.id >= n {
                return Err(scenario(format!(
                    "node id {} out of range: ids must be dense 0..{}",
                    spec.id,
                    n - 1
                )));
            }
            if roles[spec.id].replace(spec.role).is_some() {
                return Err(scenario(format!("duplicate node id {}", spec.id)));
            }
        }
        let roles: Vec<Role> = roles.into_iter().map(Option::unwrap).collect();
        if !roles.contains(&Role::Refinery) {
            return Err(scenario("scenario needs at least one refinery".into()));
        }
        if !roles.contains(&Role::Consumer) {
            return Err(scenario("scenario needs at least one consumer".into()));
        }

        let mut seen = BTreeSet::new();
        let mut edges = Vec::with_capacity(cfg.edges.len());
        for e in &cfg.edges {
            if e.u >= n || e.v >= n {
                return Err(scenario(format!(
                    "pipe {}-{} references a node outside 0..{}",
                    e.u,
                    e.v,
                    n - 1
                )));
            }
            if e.u == e.v {
                return Err(scenario(format!("pipe {}-{} is a self-loop", e.u, e.v)));
            }
            if !e.capacity.is_finite() || e.capacity <= 0.0 {
                return Err(scenario(format!(
                    "pipe {}-{} needs a positive capacity",
                    e.u, e.v
                )));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(scenario(format!("duplicate pipe {}-{}", e.u, e.v)));
            }
            edges.push((e.u, e.v, e.capacity));
        }
        let graph = Graph::from_weighted_edges(n, edges).map_err(|e| scenario(e.to_string()))?;

        if !(cfg.beta >= 1.0) {
            return Err(scenario("beta must be at least 1".into()));
        }
        if !(cfg.leak_penalty > 0.0 && cfg.leak_penalty < 1.0) {
            return Err(scenario("leak_penalty must lie strictly between 0 and 1".into()));
        }

        let mut desired = BTreeMap::new();
        for (key, &psi) in &cfg.desired_pressures {
            let node: usize = key
                .parse()
                .map_err(|_| scenario(format!("desired pressure key '{key}' is not a node id")))?;
            desired.insert(node, psi);
        }
        check_desired(&desired, &roles)?;

        let pipe_modes: BTreeMap<(usize, usize), PipeMode> = graph
            .edges()
            .into_iter()
            .map(|(u, v)| ((u, v), PipeMode::Operating))
            .collect();
        let mut compressor_modes: BTreeMap<usize, CompressorMode> = BTreeMap::new();
        let mut valve_modes: BTreeMap<usize, ValveMode> = BTreeMap::new();
        for (id, role) in roles.iter().enumerate() {
            match role {
                Role::Compressor => {
                    compressor_modes.insert(id, CompressorMode::Operation);
                }
                Role::Valve => {
                    valve_modes.insert(id, ValveMode::Open);
                }
                _ => {}
            }
        }

        let mut net = GasNetwork {
            name: cfg.name.clone(),
            graph,
            roles,
            pipe_modes,
            compressor_modes,
            valve_modes,
            desired,
            beta: cfg.beta,
            seed: cfg.seed,
            leak_penalty: cfg.leak_penalty,
        };
        for o in &cfg.modes.pipes {
            net = net.inject_fault(&Fault::Pipe { u: o.u, v: o.v, mode: o.mode })
                .map_err(|e| scenario(format!("pipe mode override: {e}")))?;
        }
        for o in &cfg.modes.compressors {
            net = net.inject_fault(&Fault::Compressor { id: o.id, mode: o.mode })
                .map_err(|e| scenario(format!("compressor mode override: {e}")))?;
        }
        for o in &cfg.modes.valves {
            net = net.inject_fault(&Fault::Valve { id: o.id, mode: o.mode })
                .map_err(|e| scenario(format!("valve mode override: {e}")))?;
        }
        Ok(net)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_config(&ScenarioConfig::from_json(text)?)
    }

    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_config(&ScenarioConfig::from_file(path)?)
    }

    /// The bundled default scenario.
    pub fn bundled() -> Self {
        Self::from_json(bundled_config_json()).expect("bundled scenario config is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.roles.len()
    }

    pub fn role(&self, node: usize) -> Result<Role> {
        self.roles
            .get(node)
            .copied()
            .ok_or(Error::UnknownNode { node, node_count: self.roles.len() })
    }

    pub fn nodes_with_role(&self, role: Role) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == role)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn desired_pressures(&self) -> &BTreeMap<usize, f64> {
        &self.desired
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn pipe_mode(&self, u: usize, v: usize) -> Option<PipeMode> {
        self.pipe_modes.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn compressor_mode(&self, id: usize) -> Option<CompressorMode> {
        self.compressor_modes.get(&id).copied()
    }

    pub fn valve_mode(&self, id: usize) -> Option<ValveMode> {
        self.valve_modes.get(&id).copied()
    }

    /// Copy of this network with one element's mode changed. The
    /// element must exist and the mode must match its kind.
    pub fn inject_fault(&self, fault: &Fault) -> Result<GasNetwork> {
        let mut out = self.clone();
        match *fault {
            Fault::Pipe { u, v, mode } => {
                let key = (u.min(v), u.max(v));
                match out.pipe_modes.get_mut(&key) {
                    Some(m) => *m = mode,
                    None => {
                        return Err(Error::InvalidParameter(format!(
                            "no pipe between nodes {u} and {v}"
                        )))
                    }
                }
            }
            Fault::Compressor { id, mode } => {
                if self.role(id)? != Role::Compressor {
                    return Err(Error::InvalidParameter(format!(
                        "node {id} is not a compressor"
                    )));
                }
                out.compressor_modes.insert(id, mode);
            }
            Fault::Valve { id, mode } => {
                if self.role(id)? != Role::Valve {
                    return Err(Error::InvalidParameter(format!("node {id} is not a valve")));
                }
                out.valve_modes.insert(id, mode);
            }
        }
        Ok(out)
    }

    /// The topology coordination actually runs on: Break pipes vanish,
    /// every edge touching a Close valve or ShutDown compressor
    /// vanishes, and Leak pipes keep a capacity scaled by the leak
    /// penalty. Recycling compressors and Fail valves change nothing
    /// topologically.
    pub fn effective_graph(&self) -> Graph {
        let blocked: BTreeSet<usize> = self
            .valve_modes
            .iter()
            .filter(|(_, &m)| m == ValveMode::Close)
            .map(|(&id, _)| id)
            .chain(
                self.compressor_modes
                    .iter()
                    .filter(|(_, &m)| m == CompressorMode::ShutDown)
                    .map(|(&id, _)| id),
            )
            .collect();
        let edges: Vec<(usize, usize, f64)> = self
            .graph
            .edges()
            .into_iter()
            .filter_map(|(u, v)| {
                if blocked.contains(&u) || blocked.contains(&v) {
                    return None;
                }
                let w = self.graph.edge_weight(u, v).expect("edge listed by the graph");
                match self.pipe_modes[&(u, v)] {
                    PipeMode::Break => None,
                    PipeMode::Operating => Some((u, v, w)),
                    PipeMode::Leak => Some((u, v, w * self.leak_penalty)),
                }
            })
            .collect();
        Graph::from_weighted_edges(self.node_count(), edges)
            .expect("effective graph reuses validated edges")
    }
}

/// A single mode change, parseable from `pipe:U-V=MODE`,
/// `compressor:ID=MODE` or `valve:ID=MODE`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    Pipe { u: usize, v: usize, mode: PipeMode },
    Compressor { id: usize, mode: CompressorMode },
    Valve { id: usize, mode: ValveMode },
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fault> {
        let bad = || {
            Error::InvalidParameter(format!(
                "malformed fault '{s}' (expected pipe:U-V=MODE, compressor:ID=MODE or \
                 valve:ID=MODE)"
            ))
        };
        let (head, mode) = s.split_once('=').ok_or_else(bad)?;
        let (kind, target) = head.split_once(':').ok_or_else(bad)?;
        match kind {
            "pipe" => {
                let (a, b) = target.split_once('-').ok_or_else(bad)?;
                Ok(Fault::Pipe {
                    u: a.trim().parse().map_err(|_| bad())?,
                    v: b.trim().parse().map_err(|_| bad())?,
                    mode: mode.parse()?,
                })
            }
            "compressor" => Ok(Fault::Compressor {
                id: target.trim().parse().map_err(|_| bad())?,
                mode: mode.parse()?,
            }),
            "valve" => Ok(Fault::Valve {
                id: target.trim().parse().map_err(|_| bad())?,
                mode: mode.parse()?,
            }),
            _ => Err(bad()),
        }
    }
}

/// Knobs for a coordination run; `None` overrides fall back to the
/// scenario config.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinationOptions {
    pub desired: Option<BTreeMap<usize, f64>>,
    pub beta: Option<f64>,
    pub seed: Option<u64>,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for CoordinationOptions {
    fn default() -> Self {
        CoordinationOptions { desired: None, beta: None, seed: None, tol: 1e-6, max_iter: 10_000 }
    }
}

/// Outcome of one coordination run. Maps are keyed by consumer node id
/// and cover the consumers that carried a demand; `node_ids` and
/// `pressures` give the full final state of the active component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinationResult {
    pub achieved: BTreeMap<usize, f64>,
    pub desired: BTreeMap<usize, f64>,
    /// Each anchored consumer's centrality score normalized to sum to 1
    /// over those consumers: its relative pull on the outcome.
    pub decision_power: BTreeMap<usize, f64>,
    pub node_ids: Vec<usize>,
    pub pressures: Vec<f64>,
    pub trace: ConsensusTrace,
    /// Total |achieved - desired| over anchored consumers, in psi.
    pub gap: f64,
}

impl CoordinationResult {
    /// Table rows `consumer,desired_psi,achieved_psi,decision_power`
    /// followed by a `# gap_psi` summary line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("consumer,desired_psi,achieved_psi,decision_power\n");
        for (&c, d) in &self.desired {
            out.push_str(&format!(
                "{c},{d},{},{}\n",
                self.achieved[&c], self.decision_power[&c]
            ));
        }
        out.push_str(&format!("# gap_psi {}\n", self.gap));
        out
    }
}

/// Total absolute pressure mismatch in psi over the consumers present
/// in both maps.
pub fn supply_demand_gap(desired: &BTreeMap<usize, f64>, achieved: &BTreeMap<usize, f64>) -> f64 {
    desired
        .iter()
        .filter_map(|(c, d)| achieved.get(c).map(|a| (a - d).abs()))
        .sum()
}

/// Runs biased consensus on the effective graph. Consumers with a
/// demand start at it and keep a self-weight boosted by beta, so the
/// network settles near their requests; every other node starts at a
/// seeded random pressure inside the span of the demands. Requires all
/// consumers plus at least one refinery in one connected component;
/// the run itself may stop at max_iter without converging, which the
/// trace records.
pub fn run_coordination(net: &GasNetwork, opts: &CoordinationOptions) -> Result<CoordinationResult> {
    let desired = match &opts.desired {
        Some(d) => {
            check_desired(d, &net.roles).map_err(|e| Error::InvalidParameter(e.to_string()))?;
            d.clone()
        }
        None => net.desired.clone(),
    };
    if desired.is_empty() {
        return Err(Error::InvalidParameter(
            "coordination needs at least one desired pressure".into(),
        ));
    }
    let beta = opts.beta.unwrap_or(net.beta);
    if !(beta >= 1.0) {
        return Err(Error::InvalidParameter("beta must be at least 1".into()));
    }
    let seed = opts.seed.unwrap_or(net.seed);

    let eff = net.effective_graph();
    let consumers = net.nodes_with_role(Role::Consumer);
    let keep = eff.component_of(consumers[0]);
    for &c in &consumers {
        if !keep[c] {
            return Err(Error::Disconnected(format!(
                "consumers {} and {c} end up in separate fragments",
                consumers[0]
            )));
        }
    }
    if !net.nodes_with_role(Role::Refinery).iter().any(|&r| keep[r]) {
        return Err(Error::Disconnected(
            "no refinery reaches the consumers in the effective graph".into(),
        ));
    }

    let (sub, node_ids) = eff.induced_subgraph(&keep);
    let pos: BTreeMap<usize, usize> =
        node_ids.iter().enumerate().map(|(new, &old)| (old, new)).collect();

    let scores = cd_vector_all(&sub, &CumulativeParams::lazy_walk(DIRECTED_SCORE_DEPTH))?;
    let mut w = directed_consensus_weights(&sub, &scores)?;
    for &c in desired.keys() {
        w = w.damp_row(pos[&c], 1.0 / beta)?;
    }

    let lo = desired.values().cloned().fold(f64::INFINITY, f64::min);
    let hi = desired.values().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0: Vec<f64> = node_ids
        .iter()
        .map(|old| match desired.get(old) {
            Some(&psi) => psi,
            None => rng.gen_range(lo..=hi),
        })
        .collect();

    let trace = run_consensus(&w, &x0, opts.tol, opts.max_iter)?;
    let end = trace.final_state();

    let achieved: BTreeMap<usize, f64> =
        desired.keys().map(|&c| (c, end[pos[&c]])).collect();
    let total: f64 = desired.keys().map(|&c| scores.scores[pos[&c]]).sum();
    let decision_power: BTreeMap<usize, f64> =
        desired.keys().map(|&c| (c, scores.scores[pos[&c]] / total)).collect();
    let gap = supply_demand_gap(&desired, &achieved);

    Ok(CoordinationResult {
        achieved,
        desired,
        decision_power,
        node_ids,
        pressures: end.to_vec(),
        trace,
        gap,
    })
}
