//! Corpus runner: applies one command to every graph of a corpus and renders a
//! JSON-lines report (header, one record per graph in input order, summary).
//!
//! Reports are deterministic: per-graph seeds are derived from the master seed
//! and the input index, object keys are sorted, and timings are only written
//! when asked for.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::assignment::EdgeAssignment;
use crate::detpoly::{DetPolynomial, DEFAULT_TERM_LIMIT};
use crate::error::{Error, Result};
use crate::factors::{count_factors, count_nonzero_transversals, enumerate_factors, perrank_fast};
use crate::flow::{
    find_zero_sum_flow, flow_exists_nonbipartite_test, has_real_zero_sum_flow, verify_flow,
};
use crate::graph::{is_two_edge_connected, parse_edge_list, parse_graph6_line, to_graph6, Graph};
use crate::linalg::{adjacency_matrix, kills_all_ones, plain_adjacency, weighted_matrix};
use crate::rng::derive_seed;
use crate::signs::{
    find_fullrank_sign, max_rank_over_signs, min_rank_over_signs, SignMethod, SignSearchConfig,
    SignSearchOutcome, SignStatus,
};
use crate::weights::{
    find_singular_weight, verify_weight, WeightRoute, WeightSearchConfig, WeightSearchOutcome,
    WeightStatus, WeightVerdict,
};

pub const REPORT_SCHEMA: &str = "signrank-report";
pub const REPORT_VERSION: u32 = 1;

/// Largest flow-route weight allowed by the bounded flow theorems.
pub const BIPARTITE_FLOW_BOUND: u64 = 5;
pub const NONBIPARTITE_FLOW_BOUND: u64 = 11;

#[derive(Debug, Clone, Serialize)]
pub struct Caps {
    /// Exhaustive sign search: free (non-forest) edges.
    pub sign_free_edges: usize,
    /// Minimum-rank search: edges (all `2^m` signs are tried).
    pub minrank_edges: usize,
    /// Factor enumeration: vertices.
    pub factor_n: usize,
    /// Determinant polynomial construction: vertices.
    pub poly_n: usize,
    /// Exhaustive weight search: size of the weighting space.
    pub exhaustive_weights: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            sign_free_edges: 20,
            minrank_edges: 20,
            factor_n: 12,
            poly_n: 10,
            exhaustive_weights: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Value bound: `{±1, …, ±bound}` for exhaustive weights and for `zsf`.
    pub bound: Option<i64>,
    pub method: SignMethod,
    pub caps: Caps,
    /// Worker threads; 0 uses every core. Does not affect the report.
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub timings: bool,
}

impl HarnessConfig {
    fn sign_config(
        &self,
        seed: u64,
        method: SignMethod,
        factor_shortcut: bool,
    ) -> SignSearchConfig {
        SignSearchConfig {
            method,
            seed,
            factor_shortcut,
            max_free_edges: self.caps.sign_free_edges,
            ..Default::default()
        }
    }

    fn weight_config(&self, seed: u64) -> WeightSearchConfig {
        WeightSearchConfig {
            bound: self.bound.unwrap_or(2),
            seed,
            max_exhaustive: self.caps.exhaustive_weights,
            max_factor_n: self.caps.factor_n,
            max_poly_n: self.caps.poly_n,
            term_limit: DEFAULT_TERM_LIMIT,
            ..Default::default()
        }
    }
}

/// Checks run by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Some sign is nonsingular iff perrank is full iff a factor exists.
    T21,
    /// Maximum rank over signs equals perrank.
    C22,
    /// A singular nowhere-zero weighting exists iff `t != 1`.
    T31,
    /// Factors weighted by `2^c` count the permanent.
    R11,
    /// Flow-route weights stay within 5 (bipartite) or 11.
    R32,
    /// Bounded flow existence and the flow/kernel link.
    Flows,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::T21,
        Check::C22,
        Check::T31,
        Check::R11,
        Check::R32,
        Check::Flows,
    ];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::T21 => "t21",
            Check::C22 => "c22",
            Check::T31 => "t31",
            Check::R11 => "r11",
            Check::R32 => "r32",
            Check::Flows => "flows",
        })
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown theorem tag {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Verify(Check),
    Minrank,
    Factors,
    Perrank,
    Signfind,
    Weightfind,
    Zsf,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Verify(_) => "verify",
            Command::Minrank => "minrank",
            Command::Factors => "factors",
            Command::Perrank => "perrank",
            Command::Signfind => "signfind",
            Command::Weightfind => "weightfind",
            Command::Zsf => "zsf",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordStatus {
    Ok,
    Pass,
    Fail,
    Skip,
}

/// One graph per non-blank line. A leading `>>graph6<<` header is accepted.
pub fn read_graph6_corpus(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6_line(l.trim(), i + 1))
        .collect()
}

pub fn read_edge_list_file(text: &str) -> Result<Graph> {
    parse_edge_list(text)
}

/// Input index plus the first 16 hex digits of the SHA-256 of the graph6 string.
pub fn graph_id(index: usize, g: &Graph) -> String {
    let digest = Sha256::digest(to_graph6(g).as_bytes());
    let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
    format!("{index}:{hex}")
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub ok: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    /// 0 when clean, 1 on any failure, 3 on skips without failures.
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            1
        } else if self.skip > 0 {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub header: Value,
    pub records: Vec<Value>,
    pub statuses: Vec<RecordStatus>,
    pub summary: Summary,
}

impl Report {
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.to_string());
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        let mut summary = serde_json::to_value(self.summary).expect("plain struct");
        summary["type"] = json!("summary");
        summary["exit_code"] = json!(self.summary.exit_code());
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Runs `cmd` on every graph, in parallel, keeping input order.
pub fn run(cmd: Command, graphs: &[Graph], cfg: &HarnessConfig) -> Report {
    let work = || -> Vec<(RecordStatus, Value)> {
        graphs
            .par_iter()
            .enumerate()
            .map(|(i, g)| run_one(cmd, i, g, cfg))
            .collect()
    };
    let results = match rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
    {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };

    let mut summary = Summary {
        records: results.len(),
        ..Default::default()
    };
    for (s, _) in &results {
        match s {
            RecordStatus::Ok => summary.ok += 1,
            RecordStatus::Pass => summary.pass += 1,
            RecordStatus::Fail => summary.fail += 1,
            RecordStatus::Skip => summary.skip += 1,
        }
    }
    let mut header = json!({
        "type": "header",
        "schema": REPORT_SCHEMA,
        "version": REPORT_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": cmd.name(),
        "seed": cfg.seed,
        "config": cfg,
    });
    if let Command::Verify(check) = cmd {
        header["check"] = json!(check.to_string());
    }
    let (statuses, records) = results.into_iter().unzip();
    Report {
        header,
        records,
        statuses,
        summary,
    }
}

fn run_one(cmd: Command, index: usize, g: &Graph, cfg: &HarnessConfig) -> (RecordStatus, Value) {
    let start = Instant::now();
    let seed = derive_seed(cfg.seed, index as u64);
    let mut body = Map::new();
    let status = match execute(cmd, g, seed, cfg, &mut body) {
        Ok(s) => s,
        Err(Error::ResourceLimit(msg)) => {
            body.insert("note".into(), json!(msg));
            RecordStatus::Skip
        }
        Err(e) => {
            body.insert("error".into(), json!(e.to_string()));
            RecordStatus::Fail
        }
    };
    body.insert("type".into(), json!("record"));
    body.insert("index".into(), json!(index));
    body.insert("id".into(), json!(graph_id(index, g)));
    body.insert("graph6".into(), json!(to_graph6(g)));
    body.insert("n".into(), json!(g.n()));
    body.insert("m".into(), json!(g.m()));
    body.insert("edges".into(), json!(g.edges()));
    body.insert("status".into(), json!(status));
    if cfg.timings {
        body.insert(
            "elapsed_us".into(),
            json!(start.elapsed().as_micros() as u64),
        );
    }
    (status, Value::Object(body))
}

fn cap_order(g: &Graph, cap: usize, what: &str) -> Result<()> {
    if g.n() > cap {
        return Err(Error::ResourceLimit(format!(
            "order {} exceeds the {what} cap of {cap}",
            g.n()
        )));
    }
    Ok(())
}

fn pass_if(ok: bool) -> RecordStatus {
    if ok {
        RecordStatus::Pass
    } else {
        RecordStatus::Fail
    }
}

fn execute(
    cmd: Command,
    g: &Graph,
    seed: u64,
    cfg: &HarnessConfig,
    out: &mut Map<String, Value>,
) -> Result<RecordStatus> {
    match cmd {
        Command::Analyze => analyze(g, seed, cfg, out),
        Command::Verify(check) => verify(check, g, seed, cfg, out),
        Command::Minrank => {
            let (rank, witness) = min_rank_over_signs(g, cfg.caps.minrank_edges)?;
            out.insert("min_rank".into(), json!(rank));
            out.insert("witness".into(), json!(witness.values()));
            Ok(RecordStatus::Ok)
        }
        Command::Factors => {
            cap_order(g, cfg.caps.factor_n, "factor enumeration")?;
            let fs = enumerate_factors(g);
            let list: Vec<Value> = fs
                .iter()
                .map(|f| {
                    json!({
                        "k2": f.k2_edges,
                        "cycles": f.cycles.iter().map(|c| &c.edges).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out.insert("t".into(), json!(fs.len()));
            out.insert(
                "transversals".into(),
                json!(count_nonzero_transversals(g).to_string()),
            );
            out.insert("factors".into(), Value::Array(list));
            Ok(RecordStatus::Ok)
        }
        Command::Perrank => {
            out.insert("perrank".into(), json!(perrank_fast(g)));
            Ok(RecordStatus::Ok)
        }
        Command::Signfind => {
            let sign = find_fullrank_sign(g, &cfg.sign_config(seed, cfg.method, true))?;
            out.insert("sign".into(), sign_json(&sign));
            Ok(RecordStatus::Ok)
        }
        Command::Weightfind => {
            let w = find_singular_weight(g, &cfg.weight_config(seed))?;
            out.insert("weight".into(), weight_json(&w));
            Ok(RecordStatus::Ok)
        }
        Command::Zsf => {
            let k = match cfg.bound {
                Some(b) => u32::try_from(b + 1)
                    .map_err(|_| Error::Precondition(format!("bad flow bound {b}")))?,
                None if g.is_bipartite() => 6,
                None => 12,
            };
            let f = find_zero_sum_flow(g, k)?;
            out.insert("k".into(), json!(k));
            out.insert("flow".into(), json!(f.as_ref().map(EdgeAssignment::values)));
            Ok(RecordStatus::Ok)
        }
    }
}

fn analyze(
    g: &Graph,
    seed: u64,
    cfg: &HarnessConfig,
    out: &mut Map<String, Value>,
) -> Result<RecordStatus> {
    cap_order(g, cfg.caps.factor_n, "factor enumeration")?;
    out.insert("t".into(), json!(count_factors(g)));
    out.insert("perrank".into(), json!(perrank_fast(g)));
    let sign = find_fullrank_sign(g, &cfg.sign_config(seed, cfg.method, true))?;
    out.insert("sign".into(), sign_json(&sign));
    let weight = find_singular_weight(g, &cfg.weight_config(seed))?;
    out.insert("weight".into(), weight_json(&weight));
    Ok(RecordStatus::Ok)
}

fn sign_json(o: &SignSearchOutcome) -> Value {
    json!({
        "status": o.status,
        "method": o.method,
        "attempts": o.attempts,
        "witness": o.witness.as_ref().map(EdgeAssignment::values),
        "det": o.det.as_ref().map(ToString::to_string),
        "certificate": o.certificate,
    })
}

fn weight_json(o: &WeightSearchOutcome) -> Value {
    json!({
        "status": o.status,
        "t": o.t,
        "route": o.route,
        "vacuous": o.vacuous,
        "witness": o.witness.as_ref().map(EdgeAssignment::values),
        "max_abs": o.max_abs_weight(),
        "bipartite": o.bipartite,
        "flow_k": o.flow_k,
        "algebraic_trials": o.algebraic_trials,
        "certificate": o.certificate.as_ref().map(|c| {
            DetPolynomial::from_terms(c.exponents.len(), [(c.exponents.clone(), c.coefficient.clone())])
                .to_string()
        }),
    })
}

fn verify(
    check: Check,
    g: &Graph,
    seed: u64,
    cfg: &HarnessConfig,
    out: &mut Map<String, Value>,
) -> Result<RecordStatus> {
    match check {
        Check::T21 => {
            cap_order(g, cfg.caps.factor_n, "factor enumeration")?;
            let t = count_factors(g);
            let perrank = perrank_fast(g);
            // no factor shortcut: the search must stand on its own
            let mut sign = find_fullrank_sign(g, &cfg.sign_config(seed, cfg.method, false))?;
            if sign.status == SignStatus::Inconclusive {
                sign =
                    find_fullrank_sign(g, &cfg.sign_config(seed, SignMethod::Exhaustive, false))?;
            }
            let witness_ok = match &sign.witness {
                Some(w) => !adjacency_matrix(g, w)?.det()?.is_zero(),
                None => true,
            };
            let found = sign.status == SignStatus::Found;
            out.insert("t".into(), json!(t));
            out.insert("perrank".into(), json!(perrank));
            out.insert("sign".into(), sign_json(&sign));
            Ok(pass_if(
                witness_ok && found == (perrank == g.n()) && found == (t >= 1),
            ))
        }
        Check::C22 => {
            let perrank = perrank_fast(g);
            let max_rank = max_rank_over_signs(g, cfg.caps.sign_free_edges)?;
            out.insert("perrank".into(), json!(perrank));
            out.insert("max_rank".into(), json!(max_rank));
            Ok(pass_if(perrank == max_rank))
        }
        Check::T31 => {
            let w = find_singular_weight(g, &cfg.weight_config(seed))?;
            out.insert("weight".into(), weight_json(&w));
            let witness_singular = match &w.witness {
                Some(x) => verify_weight(g, x)? == WeightVerdict::Singular,
                None => false,
            };
            let ok = match (w.t, w.status) {
                (0, WeightStatus::Found) => w.vacuous && witness_singular,
                (1, WeightStatus::Impossible) => w.certificate.is_some(),
                (t, WeightStatus::Found) if t >= 2 => witness_singular,
                (t, WeightStatus::Inconclusive) if t >= 2 => {
                    out.insert(
                        "note".into(),
                        json!("every route exhausted without a witness"),
                    );
                    return Ok(RecordStatus::Skip);
                }
                _ => false,
            };
            if w.t == 0 {
                out.insert("note".into(), json!("t = 0: f_G vanishes identically"));
            }
            Ok(pass_if(ok))
        }
        Check::R11 => {
            cap_order(g, cfg.caps.factor_n, "factor enumeration")?;
            let transversals = count_nonzero_transversals(g);
            let permanent = plain_adjacency(g).permanent()?;
            out.insert("transversals".into(), json!(transversals.to_string()));
            out.insert("permanent".into(), json!(permanent.to_string()));
            Ok(pass_if(permanent == transversals.into()))
        }
        Check::R32 => {
            let w = find_singular_weight(g, &cfg.weight_config(seed))?;
            out.insert("weight".into(), weight_json(&w));
            if w.route != Some(WeightRoute::Flow) {
                out.insert("note".into(), json!("flow route not used"));
                return Ok(RecordStatus::Pass);
            }
            let limit = if w.bipartite {
                BIPARTITE_FLOW_BOUND
            } else {
                NONBIPARTITE_FLOW_BOUND
            };
            out.insert("limit".into(), json!(limit));
            Ok(pass_if(w.max_abs_weight().is_some_and(|x| x <= limit)))
        }
        Check::Flows => verify_flows(g, out),
    }
}

/// A returned flow must have zero vertex sums and put `j_n` in the kernel.
fn flow_sound(g: &Graph, f: &EdgeAssignment) -> Result<bool> {
    Ok(verify_flow(g, f)? && kills_all_ones(&weighted_matrix(g, f.values())))
}

fn verify_flows(g: &Graph, out: &mut Map<String, Value>) -> Result<RecordStatus> {
    let mut ok = true;
    let real = has_real_zero_sum_flow(g);
    out.insert("real_flow".into(), json!(real));
    let bipartite = g.is_bipartite();

    if bipartite && is_two_edge_connected(g) {
        let f = find_zero_sum_flow(g, 6)?;
        out.insert(
            "flow6".into(),
            json!(f.as_ref().map(EdgeAssignment::values)),
        );
        ok &= match &f {
            Some(f) => flow_sound(g, f)?,
            None => false,
        };
    }
    if g.is_connected() && !bipartite {
        let predicted = flow_exists_nonbipartite_test(g)?;
        out.insert("edge_test".into(), json!(predicted));
        ok &= predicted == real;
        if predicted {
            let f = find_zero_sum_flow(g, 12)?;
            out.insert(
                "flow12".into(),
                json!(f.as_ref().map(EdgeAssignment::values)),
            );
            ok &= match &f {
                Some(f) => flow_sound(g, f)?,
                None => false,
            };
        }
    }
    Ok(pass_if(ok))
}
