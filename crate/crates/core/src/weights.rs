//! Nowhere-zero integer weightings that make `A(G^ω)` singular.
//!
//! Three routes are tried in order once `t(G) >= 2`:
//!
//! 1. **flow**: a zero-sum flow `a` gives `M_G(a) j = 0`, so `det M_G(a) = 0`.
//! 2. **algebraic**: write `f_G = x_i^2 g + x_i h + l`, fix the other variables
//!    at random nonzero integers and solve for `x_i` over the rationals. When
//!    the discriminant is not a square, a second variable `x_j` occurring
//!    linearly in `g` is solved first so that `g` vanishes and the equation in
//!    `x_i` becomes linear. Denominators are cleared by scaling the whole point,
//!    which keeps it a root since `f_G` is homogeneous.
//! 3. **exhaustive**: every weighting with values in `{±1, …, ±bound}` up to switching.
//!
//! With `t(G) = 1`, `f_G` is a single monomial and no nowhere-zero point is a
//! root; with `t(G) = 0`, `f_G ≡ 0` and every weighting is singular.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::{AssignmentKind, EdgeAssignment};
use crate::detpoly::{det_poly_with_limit, ghl_decompose, DetPolynomial, DEFAULT_TERM_LIMIT};
use crate::error::{Error, Result};
use crate::factors::count_factors;
use crate::flow::{find_zero_sum_flow, has_real_zero_sum_flow};
use crate::graph::{spanning_forest, Graph};
use crate::linalg::{adjacency_matrix, weighted_matrix};
use crate::rng::stream_rng;

#[derive(Debug, Clone)]
pub struct WeightSearchConfig {
    /// Exhaustive route: weights range over `{±1, …, ±bound}`.
    pub bound: i64,
    pub seed: u64,
    /// Algebraic route: random points tried per edge variable.
    pub trials_per_edge: u32,
    /// Algebraic route: random values are drawn from `{±1, …, ±trial_range}`.
    pub trial_range: i64,
    /// Exhaustive route: skip when the weighting space is larger than this.
    pub max_exhaustive: u64,
    /// Refuse graphs with more vertices than this (factor counting).
    pub max_factor_n: usize,
    /// Skip the algebraic route on graphs with more vertices than this.
    pub max_poly_n: usize,
    pub term_limit: usize,
}

impl Default for WeightSearchConfig {
    fn default() -> Self {
        WeightSearchConfig {
            bound: 2,
            seed: 0,
            trials_per_edge: 200,
            trial_range: 10,
            max_exhaustive: 10_000_000,
            max_factor_n: 12,
            max_poly_n: 10,
            term_limit: DEFAULT_TERM_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightRoute {
    Flow,
    Algebraic,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightStatus {
    Found,
    Impossible,
    Inconclusive,
}

/// Proof that no nowhere-zero weighting is singular: `f_G` is `c · x^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpossibilityCertificate {
    pub exponents: Vec<u8>,
    pub coefficient: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSearchOutcome {
    pub status: WeightStatus,
    /// `t(G)`.
    pub t: u64,
    pub witness: Option<EdgeAssignment>,
    pub route: Option<WeightRoute>,
    /// `t(G) = 0`: the witness is singular because `f_G ≡ 0`.
    pub vacuous: bool,
    pub certificate: Option<ImpossibilityCertificate>,
    pub bipartite: bool,
    /// The `k` handed to the flow solver, when the flow route ran.
    pub flow_k: Option<u32>,
    pub algebraic_trials: u64,
}

impl WeightSearchOutcome {
    pub fn max_abs_weight(&self) -> Option<u64> {
        self.witness.as_ref().map(EdgeAssignment::max_abs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightVerdict {
    Singular,
    FullRank,
}

/// Exact singularity check of `A(G^w)`.
pub fn verify_weight(g: &Graph, w: &EdgeAssignment) -> Result<WeightVerdict> {
    let det = adjacency_matrix(g, w)?.det()?;
    Ok(if det.is_zero() {
        WeightVerdict::Singular
    } else {
        WeightVerdict::FullRank
    })
}

fn singular(g: &Graph, values: &[i64]) -> bool {
    weighted_matrix(g, values)
        .det()
        .expect("adjacency matrices are square")
        .is_zero()
}

pub fn find_singular_weight(g: &Graph, cfg: &WeightSearchConfig) -> Result<WeightSearchOutcome> {
    if g.n() > cfg.max_factor_n {
        return Err(Error::ResourceLimit(format!(
            "order {} exceeds the factor enumeration cap of {}",
            g.n(),
            cfg.max_factor_n
        )));
    }
    let t = count_factors(g);
    let bipartite = g.is_bipartite();
    let mut out = WeightSearchOutcome {
        status: WeightStatus::Inconclusive,
        t,
        witness: None,
        route: None,
        vacuous: false,
        certificate: None,
        bipartite,
        flow_k: None,
        algebraic_trials: 0,
    };

    if t == 0 {
        let ones = vec![1; g.m()];
        assert!(
            singular(g, &ones),
            "f_G vanishes identically without factors"
        );
        out.status = WeightStatus::Found;
        out.witness = Some(EdgeAssignment::weights(ones)?);
        out.route = Some(WeightRoute::Exhaustive);
        out.vacuous = true;
        return Ok(out);
    }

    if t == 1 {
        let p = det_poly_with_limit(g, cfg.term_limit)?;
        if !p.is_single_monomial() {
            return Err(Error::Precondition(format!(
                "t = 1 but f_G has {} terms",
                p.num_terms()
            )));
        }
        let (exps, c) = p.terms().next().expect("one term");
        out.status = WeightStatus::Impossible;
        out.certificate = Some(ImpossibilityCertificate {
            exponents: exps.to_vec(),
            coefficient: c.clone(),
        });
        return Ok(out);
    }

    if has_real_zero_sum_flow(g) {
        let k = if bipartite { 6 } else { 12 };
        out.flow_k = Some(k);
        if let Some(f) = find_zero_sum_flow(g, k)? {
            assert!(
                singular(g, f.values()),
                "a zero-sum flow puts j_n in the kernel"
            );
            out.status = WeightStatus::Found;
            out.witness = Some(f.with_kind(AssignmentKind::Weight)?);
            out.route = Some(WeightRoute::Flow);
            return Ok(out);
        }
    }

    if g.n() <= cfg.max_poly_n {
        let p = det_poly_with_limit(g, cfg.term_limit)?;
        let (found, trials) = algebraic_route(&p, cfg);
        out.algebraic_trials = trials;
        if let Some(values) = found {
            assert!(singular(g, &values), "algebraic root must be singular");
            out.status = WeightStatus::Found;
            out.witness = Some(EdgeAssignment::weights(values)?);
            out.route = Some(WeightRoute::Algebraic);
            return Ok(out);
        }
    }

    if let Some(values) = exhaustive_route(g, cfg) {
        out.status = WeightStatus::Found;
        out.witness = Some(EdgeAssignment::weights(values)?);
        out.route = Some(WeightRoute::Exhaustive);
    }
    Ok(out)
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn nonzero_root(g: &BigRational, h: &BigRational, l: &BigRational) -> Option<BigRational> {
    if l.is_zero() {
        // x = 0 is a root; the other one is -h/g
        return (!g.is_zero() && !h.is_zero()).then(|| -h / g);
    }
    if g.is_zero() {
        return (!h.is_zero()).then(|| -l / h);
    }
    let disc = h * h - rat(&BigInt::from(4)) * g * l;
    if disc.is_negative() {
        return None;
    }
    // all three are integers at an integer point, so the discriminant is too
    let d = disc.to_integer();
    let s = d.sqrt();
    if &s * &s != d {
        return None;
    }
    Some((-h + rat(&s)) / (rat(&BigInt::from(2)) * g))
}

/// Scales a rational point to a primitive integer vector.
fn clear_denominators(point: &[BigRational]) -> Option<Vec<i64>> {
    let lcm = point
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = point
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &gcd).to_i64()).collect()
}

fn random_point<R: Rng>(rng: &mut R, m: usize, range: i64) -> Vec<BigRational> {
    (0..m)
        .map(|_| {
            let mag = rng.gen_range(1..=range);
            let v = if rng.gen::<bool>() { mag } else { -mag };
            rat(&BigInt::from(v))
        })
        .collect()
}

fn eval(p: &DetPolynomial, point: &[BigRational]) -> BigRational {
    p.evaluate_in(point)
        .expect("point has one value per variable")
}

/// Accepts a rational root with no zero coordinate, checks it, and turns it
/// into a primitive integer root.
fn finish(p: &DetPolynomial, point: &[BigRational]) -> Option<Vec<i64>> {
    if point.iter().any(Zero::is_zero) || !eval(p, point).is_zero() {
        return None;
    }
    let ints = clear_denominators(point)?;
    assert!(
        p.evaluate(&ints).expect("same arity").is_zero(),
        "scaling a root of a homogeneous polynomial keeps it a root"
    );
    Some(ints)
}

fn algebraic_route(p: &DetPolynomial, cfg: &WeightSearchConfig) -> (Option<Vec<i64>>, u64) {
    let m = p.m();
    let mut trials = 0u64;
    for i in 0..m {
        let Ok((gi, hi, li)) = ghl_decompose(p, i) else {
            continue;
        };
        if li.is_zero_polynomial() || (gi.is_zero_polynomial() && hi.is_zero_polynomial()) {
            continue;
        }
        // variables occurring linearly in g, with g = x_j * slope + offset
        let linear_in_g: Vec<(usize, DetPolynomial, DetPolynomial)> = (0..m)
            .filter(|&j| j != i && gi.degree_in(j) == 1)
            .filter_map(|j| {
                let (_, slope, offset) = ghl_decompose(&gi, j).ok()?;
                Some((j, slope, offset))
            })
            .collect();

        for trial in 0..cfg.trials_per_edge {
            trials += 1;
            let mut rng = stream_rng(cfg.seed, ((i as u64) << 32) | u64::from(trial));
            let mut point = random_point(&mut rng, m, cfg.trial_range.max(1));
            let (g, h, l) = (eval(&gi, &point), eval(&hi, &point), eval(&li, &point));
            if let Some(x) = nonzero_root(&g, &h, &l) {
                point[i] = x;
                if let Some(found) = finish(p, &point) {
                    return (Some(found), trials);
                }
                continue;
            }
            if g.is_zero() {
                continue;
            }
            for (j, slope, offset) in &linear_in_g {
                let (s, o) = (eval(slope, &point), eval(offset, &point));
                if s.is_zero() || o.is_zero() {
                    continue;
                }
                let saved = point[*j].clone();
                point[*j] = -o / s;
                let (h, l) = (eval(&hi, &point), eval(&li, &point));
                if !h.is_zero() && !l.is_zero() {
                    point[i] = -l / h;
                    if let Some(found) = finish(p, &point) {
                        return (Some(found), trials);
                    }
                }
                point[*j] = saved;
            }
        }
    }
    (None, trials)
}

/// All weightings in `{±1, …, ±bound}^m` with spanning-forest edges positive.
fn exhaustive_route(g: &Graph, cfg: &WeightSearchConfig) -> Option<Vec<i64>> {
    let b = cfg.bound.max(1);
    let forest = spanning_forest(g);
    let choices: Vec<Vec<i64>> = forest
        .iter()
        .map(|&pinned| {
            if pinned {
                (1..=b).collect()
            } else {
                (1..=b).flat_map(|x| [x, -x]).collect()
            }
        })
        .collect();
    let size = choices
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    if size.is_none_or(|s| s > cfg.max_exhaustive) {
        return None;
    }
    let m = g.m();
    let mut idx = vec![0usize; m];
    let mut values: Vec<i64> = choices.iter().map(|c| c[0]).collect();
    loop {
        if singular(g, &values) {
            return Some(values);
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                values[pos] = choices[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            values[pos] = choices[pos][0];
            pos += 1;
        }
    }
}
