//! Searching the sign space `{±1}^m` for nonsingular and low-rank signings.
//!
//! Switching (negating every edge at one vertex) conjugates `A(G^σ)` by a
//! diagonal `±1` matrix and leaves the rank unchanged, so the exhaustive
//! searches that only care about rank fix the edges of a spanning forest to
//! `+1` and enumerate `2^(m - n + c)` classes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::EdgeAssignment;
use crate::error::{Error, Result};
use crate::factors::has_factor;
use crate::graph::{spanning_forest, Graph};
use crate::linalg::weighted_matrix;
use crate::rng::stream_rng;

/// Default cap on the number of enumerated sign bits.
pub const DEFAULT_MAX_FREE_EDGES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignMethod {
    #[default]
    Randomized,
    Exhaustive,
    Greedy,
}

impl fmt::Display for SignMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignMethod::Randomized => "randomized",
            SignMethod::Exhaustive => "exhaustive",
            SignMethod::Greedy => "greedy",
        })
    }
}

impl FromStr for SignMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "randomized" => Ok(SignMethod::Randomized),
            "exhaustive" => Ok(SignMethod::Exhaustive),
            "greedy" => Ok(SignMethod::Greedy),
            other => Err(Error::Precondition(format!(
                "unknown sign method {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SignSearchConfig {
    pub method: SignMethod,
    pub seed: u64,
    /// Randomized: number of samples (default `64 m`). Ignored otherwise.
    pub max_attempts: Option<u64>,
    /// Answer "none" straight away when the graph has no {1,2}-factor.
    pub factor_shortcut: bool,
    /// Greedy: random completions tried before a partial sign is declared dead.
    pub greedy_completions: u32,
    /// Exhaustive: refuse when more than this many sign bits remain free.
    pub max_free_edges: usize,
}

impl Default for SignSearchConfig {
    fn default() -> Self {
        SignSearchConfig {
            method: SignMethod::Randomized,
            seed: 0,
            max_attempts: None,
            factor_shortcut: true,
            greedy_completions: 32,
            max_free_edges: DEFAULT_MAX_FREE_EDGES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignStatus {
    Found,
    CertifiedNone,
    Inconclusive,
}

/// Why no nonsingular sign exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoneCertificate {
    /// No {1,2}-factor, hence no nonzero transversal in any `A(G^σ)`.
    NoFactor,
    /// Every switching class was tried.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSearchOutcome {
    pub status: SignStatus,
    pub witness: Option<EdgeAssignment>,
    /// `det A(G^witness)`, recomputed on return.
    pub det: Option<BigInt>,
    pub method: SignMethod,
    pub attempts: u64,
    pub certificate: Option<NoneCertificate>,
}

impl SignSearchOutcome {
    pub fn certified_none(&self) -> bool {
        self.status == SignStatus::CertifiedNone
    }

    fn found(g: &Graph, values: Vec<i64>, method: SignMethod, attempts: u64) -> Self {
        let det = weighted_matrix(g, &values)
            .det()
            .expect("adjacency matrices are square");
        assert!(!det.is_zero(), "sign witness must be nonsingular");
        SignSearchOutcome {
            status: SignStatus::Found,
            witness: Some(EdgeAssignment::signs(values).expect("values are signs")),
            det: Some(det),
            method,
            attempts,
            certificate: None,
        }
    }

    fn none(method: SignMethod, attempts: u64, certificate: NoneCertificate) -> Self {
        SignSearchOutcome {
            status: SignStatus::CertifiedNone,
            witness: None,
            det: None,
            method,
            attempts,
            certificate: Some(certificate),
        }
    }

    fn inconclusive(method: SignMethod, attempts: u64) -> Self {
        SignSearchOutcome {
            status: SignStatus::Inconclusive,
            witness: None,
            det: None,
            method,
            attempts,
            certificate: None,
        }
    }
}

fn nonsingular(g: &Graph, values: &[i64]) -> bool {
    !weighted_matrix(g, values)
        .det()
        .expect("adjacency matrices are square")
        .is_zero()
}

/// Looks for `σ` with `det A(G^σ) != 0`.
pub fn find_fullrank_sign(g: &Graph, cfg: &SignSearchConfig) -> Result<SignSearchOutcome> {
    if cfg.factor_shortcut && !has_factor(g) {
        return Ok(SignSearchOutcome::none(
            cfg.method,
            0,
            NoneCertificate::NoFactor,
        ));
    }
    match cfg.method {
        SignMethod::Exhaustive => exhaustive(g, cfg),
        SignMethod::Randomized => Ok(randomized(g, cfg)),
        SignMethod::Greedy => Ok(greedy(g, cfg)),
    }
}

/// Splits the edges into those pinned to `+1` by switching and the free ones.
fn free_edges(g: &Graph, cap: usize) -> Result<Vec<usize>> {
    let forest = spanning_forest(g);
    let free: Vec<usize> = (0..g.m()).filter(|&e| !forest[e]).collect();
    if free.len() > cap {
        return Err(Error::ResourceLimit(format!(
            "{} free sign bits exceed the exhaustive cap of {cap}",
            free.len()
        )));
    }
    Ok(free)
}

/// Yields the sign vector of every switching class representative.
fn for_each_class(g: &Graph, free: &[usize], mut f: impl FnMut(&[i64]) -> bool) -> u64 {
    let mut values = vec![1i64; g.m()];
    let mut visited = 0;
    for mask in 0u64..(1u64 << free.len()) {
        for (bit, &e) in free.iter().enumerate() {
            values[e] = if mask >> bit & 1 == 1 { -1 } else { 1 };
        }
        visited += 1;
        if f(&values) {
            break;
        }
    }
    visited
}

fn exhaustive(g: &Graph, cfg: &SignSearchConfig) -> Result<SignSearchOutcome> {
    let free = free_edges(g, cfg.max_free_edges)?;
    let mut witness = None;
    let attempts = for_each_class(g, &free, |values| {
        if nonsingular(g, values) {
            witness = Some(values.to_vec());
            true
        } else {
            false
        }
    });
    Ok(match witness {
        Some(values) => SignSearchOutcome::found(g, values, SignMethod::Exhaustive, attempts),
        None => {
            SignSearchOutcome::none(SignMethod::Exhaustive, attempts, NoneCertificate::Exhausted)
        }
    })
}

fn randomized(g: &Graph, cfg: &SignSearchConfig) -> SignSearchOutcome {
    let budget = cfg.max_attempts.unwrap_or(64 * g.m() as u64).max(1);
    for attempt in 0..budget {
        let mut rng = stream_rng(cfg.seed, attempt);
        let values: Vec<i64> = (0..g.m())
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        if nonsingular(g, &values) {
            return SignSearchOutcome::found(g, values, SignMethod::Randomized, attempt + 1);
        }
    }
    SignSearchOutcome::inconclusive(SignMethod::Randomized, budget)
}

/// Fixes one sign at a time, keeping a choice while some random completion of
/// the prefix is nonsingular. One-sided: a dead end gives `Inconclusive`.
fn greedy(g: &Graph, cfg: &SignSearchConfig) -> SignSearchOutcome {
    let m = g.m();
    let mut rng = stream_rng(cfg.seed, u64::MAX);
    let mut values = vec![1i64; m];
    let mut attempts = 0u64;
    for j in 0..m {
        let tries = if j + 1 == m {
            1
        } else {
            cfg.greedy_completions.max(1)
        };
        let mut chosen = None;
        'candidates: for cand in [1i64, -1] {
            values[j] = cand;
            for _ in 0..tries {
                for v in values.iter_mut().skip(j + 1) {
                    *v = if rng.gen::<bool>() { 1 } else { -1 };
                }
                attempts += 1;
                if nonsingular(g, &values) {
                    chosen = Some(cand);
                    break 'candidates;
                }
            }
        }
        values[j] = chosen.unwrap_or(1);
    }
    attempts += 1;
    if nonsingular(g, &values) {
        SignSearchOutcome::found(g, values, SignMethod::Greedy, attempts)
    } else {
        SignSearchOutcome::inconclusive(SignMethod::Greedy, attempts)
    }
}

/// `max_σ rank A(G^σ)`, by exhausting switching classes.
pub fn max_rank_over_signs(g: &Graph, max_free_edges: usize) -> Result<usize> {
    let free = free_edges(g, max_free_edges)?;
    let n = g.n();
    let mut best = 0;
    for_each_class(g, &free, |values| {
        best = best.max(weighted_matrix(g, values).rank());
        best == n
    });
    Ok(best)
}

/// `min_σ rank A(G^σ)` over all `2^m` signs, with the lexicographically
/// smallest minimiser (`+1` before `-1`, first edge most significant).
pub fn min_rank_over_signs(g: &Graph, max_edges: usize) -> Result<(usize, EdgeAssignment)> {
    let m = g.m();
    if m > max_edges || m >= 63 {
        return Err(Error::ResourceLimit(format!(
            "minimum rank needs all 2^{m} signs; m = {m} exceeds the cap of {max_edges}"
        )));
    }
    // a nonzero symmetric matrix with zero diagonal has rank at least 2
    let floor = if m == 0 { 0 } else { 2 };
    let mut best: Option<(usize, Vec<i64>)> = None;
    let mut values = vec![1i64; m];
    for mask in 0u64..(1u64 << m) {
        for (j, v) in values.iter_mut().enumerate() {
            *v = if mask >> (m - 1 - j) & 1 == 1 { -1 } else { 1 };
        }
        let r = weighted_matrix(g, &values).rank();
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, values.clone()));
            if r == floor {
                break;
            }
        }
    }
    let (rank, values) = best.expect("at least one sign vector");
    Ok((rank, EdgeAssignment::signs(values)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(method: SignMethod) -> SignSearchConfig {
        SignSearchConfig {
            method,
            ..Default::default()
        }
    }

    #[test]
    fn k2_witness() {
        let out = find_fullrank_sign(&Graph::complete(2), &cfg(SignMethod::Exhaustive)).unwrap();
        assert_eq!(out.status, SignStatus::Found);
        assert_eq!(out.witness.unwrap().values(), &[1]);
        assert_eq!(out.det, Some(BigInt::from(-1)));
    }

    #[test]
    fn p3_certified_none() {
        for method in [
            SignMethod::Randomized,
            SignMethod::Exhaustive,
            SignMethod::Greedy,
        ] {
            let out = find_fullrank_sign(&Graph::path(3), &cfg(method)).unwrap();
            assert!(out.certified_none());
            assert_eq!(out.certificate, Some(NoneCertificate::NoFactor));
        }
        let no_shortcut = SignSearchConfig {
            method: SignMethod::Exhaustive,
            factor_shortcut: false,
            ..Default::default()
        };
        let out = find_fullrank_sign(&Graph::path(3), &no_shortcut).unwrap();
        assert_eq!(out.certificate, Some(NoneCertificate::Exhausted));
    }

    #[test]
    fn c4_witness_all_methods() {
        let g = Graph::cycle(4);
        for method in [
            SignMethod::Randomized,
            SignMethod::Exhaustive,
            SignMethod::Greedy,
        ] {
            let out = find_fullrank_sign(&g, &cfg(method)).unwrap();
            assert_eq!(out.status, SignStatus::Found, "{method}");
            assert!(!out.det.unwrap().is_zero());
        }
        // (x1 x3 - x2 x4)^2 at (1, 1, 1, -1)
        assert_eq!(
            weighted_matrix(&g, &[1, 1, 1, -1]).det().unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn empty_graph() {
        let out = find_fullrank_sign(&Graph::empty(0), &cfg(SignMethod::Randomized)).unwrap();
        assert_eq!(out.status, SignStatus::Found);
        assert_eq!(out.det, Some(BigInt::from(1)));
    }

    #[test]
    fn max_rank_examples() {
        assert_eq!(max_rank_over_signs(&Graph::path(3), 20).unwrap(), 2);
        assert_eq!(max_rank_over_signs(&Graph::cycle(4), 20).unwrap(), 4);
        assert_eq!(max_rank_over_signs(&Graph::empty(1), 20).unwrap(), 0);
    }

    #[test]
    fn min_rank_examples() {
        let (r, s) = min_rank_over_signs(&Graph::cycle(4), 20).unwrap();
        assert_eq!(r, 2);
        assert_eq!(s.values(), &[1, 1, 1, 1]);
        let (r, _) = min_rank_over_signs(&Graph::complete(2), 20).unwrap();
        assert_eq!(r, 2);
        let (r, _) = min_rank_over_signs(&Graph::complete(3), 20).unwrap();
        assert_eq!(r, 3);
        assert!(matches!(
            min_rank_over_signs(&Graph::complete(7), 20),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn exhaustive_cap() {
        let cfg = SignSearchConfig {
            method: SignMethod::Exhaustive,
            max_free_edges: 2,
            ..Default::default()
        };
        assert!(matches!(
            find_fullrank_sign(&Graph::complete(5), &cfg),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn method_names_round_trip() {
        for m in [
            SignMethod::Randomized,
            SignMethod::Exhaustive,
            SignMethod::Greedy,
        ] {
            assert_eq!(m.to_string().parse::<SignMethod>().unwrap(), m);
        }
        assert!("bogus".parse::<SignMethod>().is_err());
    }
}
