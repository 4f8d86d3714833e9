//! Structural results about parity binomial edge ideals as checkable claims,
//! and exhaustive sweeps of those claims over small graphs.
//!
//! Claims are data: see [`registry`]. Each has a hypothesis on the graph and
//! a checker over computed Betti tables and Gröbner bases. Claims tagged
//! [`ClaimKind::External`] instantiate results the theory relies on but does
//! not prove; [`ClaimKind::Probe`] entries are conjectures and never count
//! as failures.

mod catalog;
mod engine;

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graphs::{enumerate_graphs, Graph};
use crate::ring::{is_prime, MonomialOrder};

pub use catalog::Claim;
use catalog::{Precondition, REGISTRY};
pub use engine::TableCache;
use engine::Ctx;

/// Largest vertex count a sweep accepts.
pub const SWEEP_MAX_N: usize = 8;

pub const DEFAULT_CHARACTERISTIC: u64 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    Theorem,
    External,
    Probe,
}

/// Graphs a sweep offers to a claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Connected,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub characteristic: u64,
    pub order: MonomialOrder,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { characteristic: DEFAULT_CHARACTERISTIC, order: MonomialOrder::DegRevLex }
    }
}

impl CheckConfig {
    pub fn with_characteristic(characteristic: u64) -> Result<Self> {
        let c = CheckConfig { characteristic, ..Default::default() };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let p = self.characteristic;
        if p != 0 && (!is_prime(p) || p >= 1 << 31) {
            return Err(Error::CharacteristicNotPrime(p));
        }
        Ok(())
    }
}

mod graph6_serde {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::graphs::Graph;

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&g.to_graph6())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let s = String::deserialize(d)?;
        Graph::from_graph6(&s).map_err(D::Error::custom)
    }
}

/// Outcome of one claim on one graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub kind: ClaimKind,
    /// Serialized as graph6.
    #[serde(with = "graph6_serde")]
    pub graph: Graph,
    pub characteristic: u64,
    pub params: Map<String, Value>,
    pub hypotheses_met: bool,
    pub verdict: Verdict,
    /// Evidence: offending entries or ideals on failure, computed values
    /// otherwise. Null only when there is nothing to report.
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    pub timing_ms: f64,
}

impl ClaimReport {
    /// A failure that counts against the suite (probe failures do not).
    pub fn is_failure(&self) -> bool {
        self.verdict == Verdict::Fail && self.kind != ClaimKind::Probe
    }
}

/// All registered claims, in a fixed order.
pub fn registry() -> &'static [Claim] {
    REGISTRY
}

pub fn claim_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

pub fn find_claim(id: &str) -> Result<&'static Claim> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim { name: id.to_string(), valid: claim_ids().join(", ") })
}

/// `max(l(G), oc(G))`: longest induced path (edges) and longest induced odd
/// cycle (vertices). Only asserted as a regularity bound for connected `G`.
pub fn reg_lower_bound(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Hypothesis("the regularity lower bound is only stated for connected graphs".into()));
    }
    Ok(g.longest_induced_path_length().max(g.longest_induced_odd_cycle_length()))
}

/// `reg(S/I_G)` for the graph classes where it is known in closed form:
/// disjoint unions of odd cycles and paths (a complete intersection of
/// `|E|` quadrics, so `|E|`; this covers odd cycles, paths and `2K_2`) and
/// complete bipartite graphs (2). Isolated vertices never change the
/// regularity.
pub fn predicted_regularity(g: &Graph) -> Option<usize> {
    if is_odd_cycles_and_paths(g) {
        return Some(g.edge_count());
    }
    if complete_bipartite_up_to_isolated(g) {
        return Some(2);
    }
    None
}

/// Every component is a path (possibly a single vertex) or an odd cycle.
pub(crate) fn is_odd_cycles_and_paths(g: &Graph) -> bool {
    g.component_masks().into_iter().all(|m| g.induces_path(m) || (g.induces_cycle(m) && m.count_ones() % 2 == 1))
}

fn without_isolated(g: &Graph) -> Graph {
    let keep = (1..=g.n()).filter(|&v| g.degree(v) > 0).collect();
    g.induced_subgraph(&keep).expect("vertices in range").graph
}

/// Complete bipartite `K_{a,b}` (`a, b >= 1`) plus any number of isolated
/// vertices.
pub(crate) fn complete_bipartite_up_to_isolated(g: &Graph) -> bool {
    without_isolated(g).classify().is_complete_bipartite
}

/// `2K_2`, or complete bipartite other than `K_2`. For graphs without
/// isolated vertices.
pub(crate) fn reg2_family(g: &Graph) -> bool {
    let c = g.classify();
    let two_k2 = g.n() == 4 && g.edge_count() == 2 && c.components.len() == 2;
    two_k2 || (c.is_complete_bipartite && g.n() > 2)
}

/// The graphs whose parity binomial edge ideal has a pure resolution.
pub(crate) fn pure_family(g: &Graph) -> bool {
    complete_bipartite_up_to_isolated(g) || is_odd_cycles_and_paths(g)
}

/// Edges `e` with `G` non-bipartite and `G \ e` bipartite.
pub(crate) fn colon_edges(g: &Graph) -> Vec<(usize, usize)> {
    if g.is_bipartite() {
        return Vec::new();
    }
    g.edges().into_iter().filter(|&(u, v)| g.delete_edge(u, v).map(|h| h.is_bipartite()).unwrap_or(false)).collect()
}

fn run(claim: &Claim, g: &Graph, ctx: &Ctx) -> ClaimReport {
    let start = Instant::now();
    let mut report = ClaimReport {
        claim_id: claim.id.to_string(),
        kind: claim.kind,
        graph: g.clone(),
        characteristic: ctx.config.characteristic,
        params: Map::new(),
        hypotheses_met: false,
        verdict: Verdict::Skipped,
        witness: Value::Null,
        skip_reason: None,
        timing_ms: 0.0,
    };
    let result = (claim.applies)(ctx, g).and_then(|pre| match pre {
        Precondition::Unmet(why) => {
            report.skip_reason = Some(why);
            Ok(None)
        }
        Precondition::Met => (claim.check)(ctx, g).map(Some),
    });
    match result {
        Ok(None) => {}
        Ok(Some(outcome)) => {
            report.hypotheses_met = true;
            report.verdict = if outcome.holds { Verdict::Pass } else { Verdict::Fail };
            report.params = outcome.params;
            report.witness = outcome.witness;
            if !outcome.holds && report.witness.is_null() {
                report.witness = json!({ "failed": claim.statement });
            }
        }
        Err(e) => {
            // an engine error is a failed check, never a silent skip
            report.hypotheses_met = true;
            report.verdict = Verdict::Fail;
            report.witness = json!({ "error": e.to_string() });
        }
    }
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

/// Checks one claim on one graph.
pub fn check_claim(claim_id: &str, g: &Graph, config: &CheckConfig) -> Result<ClaimReport> {
    config.validate()?;
    let claim = find_claim(claim_id)?;
    Ok(run(claim, g, &Ctx::new(*config, Arc::new(TableCache::default()))))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub check: CheckConfig,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { check: CheckConfig::default(), jobs: None }
    }
}

/// Per-claim totals. `checked` counts graphs meeting the hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSummary {
    pub claim_id: String,
    pub kind: ClaimKind,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// graph6 strings of the failing graphs.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub n_max: usize,
    pub characteristic: u64,
    pub reports: Vec<ClaimReport>,
    pub summary: Vec<ClaimSummary>,
    pub elapsed_ms: f64,
}

impl SweepReport {
    /// Whether any theorem or external claim failed.
    pub fn has_failures(&self) -> bool {
        self.reports.iter().any(ClaimReport::is_failure)
    }

    /// Probe violations: counterexamples to conjectures.
    pub fn counterexamples(&self) -> Vec<&ClaimReport> {
        self.reports.iter().filter(|r| r.kind == ClaimKind::Probe && r.verdict == Verdict::Fail).collect()
    }

    pub fn summary_for(&self, claim_id: &str) -> Option<&ClaimSummary> {
        self.summary.iter().find(|s| s.claim_id == claim_id)
    }

    pub fn reports_for<'a>(&'a self, claim_id: &'a str) -> impl Iterator<Item = &'a ClaimReport> + 'a {
        self.reports.iter().filter(move |r| r.claim_id == claim_id)
    }

    /// One report per line, then a final `{"summary": ...}` line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        let summary = json!({
            "summary": {
                "n_max": self.n_max,
                "characteristic": self.characteristic,
                "claims": self.summary,
                "failed": self.has_failures(),
                "counterexamples": self.counterexamples().len(),
                "elapsed_ms": self.elapsed_ms,
            }
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Runs `claims` on every graph with `1..=n_max` vertices, one graph per
/// isomorphism class. Claims scoped to connected graphs see only those.
/// Graphs are processed in parallel; the report order is deterministic.
pub fn sweep(n_max: usize, claims: &[&str], config: &SweepConfig) -> Result<SweepReport> {
    if n_max > SWEEP_MAX_N {
        return Err(Error::Hypothesis(format!("sweeps are limited to n <= {SWEEP_MAX_N}, got {n_max}")));
    }
    config.check.validate()?;
    let selected: Vec<&'static Claim> = claims.iter().map(|id| find_claim(id)).collect::<Result<_>>()?;
    let start = Instant::now();
    let connected_only = selected.iter().all(|c| c.scope == Scope::Connected);
    let graphs: Vec<Graph> = (1..=n_max).flat_map(|n| enumerate_graphs(n, connected_only, true)).collect();
    let cache = Arc::new(TableCache::default());
    let work = || -> Vec<ClaimReport> {
        graphs
            .par_iter()
            .flat_map_iter(|g| {
                let ctx = Ctx::new(config.check, cache.clone());
                selected
                    .iter()
                    .filter(|c| c.scope == Scope::All || g.is_connected())
                    .map(|c| run(c, g, &ctx))
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    let mut reports = match config.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let rank = |id: &str| selected.iter().position(|c| c.id == id).unwrap_or(usize::MAX);
    reports.sort_by_cached_key(|r| (rank(&r.claim_id), r.graph.n(), r.graph.to_graph6()));
    let summary = selected
        .iter()
        .map(|c| {
            let mine: Vec<&ClaimReport> = reports.iter().filter(|r| r.claim_id == c.id).collect();
            let count = |v: Verdict| mine.iter().filter(|r| r.verdict == v).count();
            ClaimSummary {
                claim_id: c.id.to_string(),
                kind: c.kind,
                checked: mine.iter().filter(|r| r.hypotheses_met).count(),
                passed: count(Verdict::Pass),
                failed: count(Verdict::Fail),
                skipped: count(Verdict::Skipped),
                failures: mine.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.graph.to_graph6()).collect(),
            }
        })
        .collect();
    Ok(SweepReport {
        n_max,
        characteristic: config.check.characteristic,
        reports,
        summary,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
