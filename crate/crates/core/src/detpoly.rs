//! The symbolic determinant `f_G = det M_G(x_1, …, x_m)`, with one variable per edge.
//!
//! `f_G` is built from the {1,2}-factors of `G`: a factor with `a` copies of
//! `K_2` and cycles of lengths `l_1, …, l_c` is the support of `2^c` nonzero
//! transversals, all producing the monomial (K_2 edges squared) x (cycle
//! edges), each with permutation sign `(-1)^a · Π (-1)^(l_j - 1)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, ControlFlow, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factors::for_each_factor;
use crate::graph::Graph;

/// Default cap on the number of stored terms.
pub const DEFAULT_TERM_LIMIT: usize = 1 << 20;

/// Sparse integer polynomial in `m` variables with dense exponent-vector keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DetPolynomial {
    m: usize,
    terms: BTreeMap<Vec<u8>, BigInt>,
}

impl DetPolynomial {
    pub fn zero(m: usize) -> Self {
        DetPolynomial {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// Sums like terms and drops zero coefficients.
    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Vec<u8>, BigInt)>) -> Self {
        let mut p = Self::zero(m);
        for (exps, c) in terms {
            p.add_term(exps, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u8>, c: BigInt) {
        assert_eq!(exps.len(), self.m, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Number of variables.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &BigInt)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u8]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero_polynomial(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_single_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Highest power of `x_i` appearing.
    pub fn degree_in(&self, i: usize) -> u8 {
        self.terms.keys().map(|k| k[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms
            .keys()
            .all(|k| k.iter().map(|&e| e as usize).sum::<usize>() == degree)
    }

    /// Exact value at an integer point. Zeros are allowed.
    pub fn evaluate(&self, values: &[i64]) -> Result<BigInt> {
        let vals: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        self.evaluate_in(&vals)
    }

    /// Value at a point in any ring containing the integers (e.g. rationals).
    pub fn evaluate_in<T>(&self, values: &[T]) -> Result<T>
    where
        T: Clone + Zero + One + From<BigInt> + for<'a> Mul<&'a T, Output = T> + Add<Output = T>,
    {
        if values.len() != self.m {
            return Err(Error::InvalidAssignment(format!(
                "polynomial has {} variables but {} values were supplied",
                self.m,
                values.len()
            )));
        }
        let mut total = T::zero();
        for (exps, c) in &self.terms {
            let mut term = T::from(c.clone());
            for (x, &e) in values.iter().zip(exps) {
                for _ in 0..e {
                    term = term * x;
                }
            }
            total = total + term;
        }
        Ok(total)
    }
}

impl fmt::Display for DetPolynomial {
    /// Deterministic dump: monomials in descending lexicographic exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (exps, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `f_G` with the default term cap.
pub fn det_poly(g: &Graph) -> Result<DetPolynomial> {
    det_poly_with_limit(g, DEFAULT_TERM_LIMIT)
}

/// `f_G`, failing with [`Error::ResourceLimit`] once more than `limit` distinct
/// monomials have been produced.
pub fn det_poly_with_limit(g: &Graph, limit: usize) -> Result<DetPolynomial> {
    let m = g.m();
    let mut p = DetPolynomial::zero(m);
    let mut over = false;
    let _ = for_each_factor(g, |k2, cycles| {
        let mut exps = vec![0u8; m];
        for &e in k2 {
            exps[e] = 2;
        }
        let mut odd_sign = k2.len() % 2 == 1;
        for c in cycles {
            for &e in &c.edges {
                exps[e] = 1;
            }
            if (c.len() - 1) % 2 == 1 {
                odd_sign = !odd_sign;
            }
        }
        let mut coeff = BigInt::one() << cycles.len();
        if odd_sign {
            coeff = -coeff;
        }
        p.add_term(exps, coeff);
        if p.num_terms() > limit {
            over = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::ResourceLimit(format!(
            "determinant polynomial exceeds {limit} terms"
        )));
    }
    assert!(
        p.is_homogeneous(g.n()),
        "f_G must be homogeneous of degree n"
    );
    Ok(p)
}

/// `f̄`: every `x_i^2` replaced by 1, like terms merged.
pub fn reduce_squares(p: &DetPolynomial) -> Result<DetPolynomial> {
    let mut out = DetPolynomial::zero(p.m);
    for (exps, c) in &p.terms {
        if let Some(&e) = exps.iter().find(|&&e| e > 2) {
            return Err(Error::Precondition(format!(
                "exponent {e} exceeds 2; square reduction is undefined"
            )));
        }
        let reduced: Vec<u8> = exps.iter().map(|&e| if e == 2 { 0 } else { e }).collect();
        out.add_term(reduced, c.clone());
    }
    Ok(out)
}

/// Splits `p = x_i^2 g + x_i h + l`; the parts do not involve `x_i`.
pub fn ghl_decompose(
    p: &DetPolynomial,
    i: usize,
) -> Result<(DetPolynomial, DetPolynomial, DetPolynomial)> {
    if i >= p.m {
        return Err(Error::Precondition(format!(
            "variable index {i} out of range for {} variables",
            p.m
        )));
    }
    let mut parts = [
        DetPolynomial::zero(p.m),
        DetPolynomial::zero(p.m),
        DetPolynomial::zero(p.m),
    ];
    for (exps, c) in &p.terms {
        let e = exps[i] as usize;
        if e > 2 {
            return Err(Error::Precondition(format!(
                "x{} appears with exponent {e}",
                i + 1
            )));
        }
        let mut rest = exps.clone();
        rest[i] = 0;
        // parts are ordered (l, h, g) by x_i-degree
        parts[e].add_term(rest, c.clone());
    }
    let [l, h, g] = parts;
    Ok((g, h, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(exps: &[u8], c: i64) -> (Vec<u8>, BigInt) {
        (exps.to_vec(), BigInt::from(c))
    }

    fn c4_poly() -> DetPolynomial {
        DetPolynomial::from_terms(
            4,
            [
                term(&[2, 0, 2, 0], 1),
                term(&[0, 2, 0, 2], 1),
                term(&[1, 1, 1, 1], -2),
            ],
        )
    }

    #[test]
    fn small_polynomials() {
        let k2 = det_poly(&Graph::complete(2)).unwrap();
        assert_eq!(k2, DetPolynomial::from_terms(1, [term(&[2], -1)]));
        assert_eq!(k2.to_string(), "-x1^2");
        let k3 = det_poly(&Graph::complete(3)).unwrap();
        assert_eq!(k3, DetPolynomial::from_terms(3, [term(&[1, 1, 1], 2)]));
        let c4 = det_poly(&Graph::cycle(4)).unwrap();
        assert_eq!(c4, c4_poly());
        assert_eq!(c4.to_string(), "x1^2*x3^2 - 2*x1*x2*x3*x4 + x2^2*x4^2");
    }

    #[test]
    fn square_reduction() {
        let k2 = det_poly(&Graph::complete(2)).unwrap();
        assert_eq!(reduce_squares(&k2).unwrap().to_string(), "-1");
        let c4 = reduce_squares(&c4_poly()).unwrap();
        assert_eq!(
            c4,
            DetPolynomial::from_terms(4, [term(&[0, 0, 0, 0], 2), term(&[1, 1, 1, 1], -2)])
        );
        let k3 = det_poly(&Graph::complete(3)).unwrap();
        assert_eq!(reduce_squares(&k3).unwrap(), k3);
        let cubic = DetPolynomial::from_terms(1, [term(&[3], 1)]);
        assert!(reduce_squares(&cubic).is_err());
    }

    #[test]
    fn ghl_examples() {
        let (g, h, l) = ghl_decompose(&c4_poly(), 0).unwrap();
        assert_eq!(g, DetPolynomial::from_terms(4, [term(&[0, 0, 2, 0], 1)]));
        assert_eq!(h, DetPolynomial::from_terms(4, [term(&[0, 1, 1, 1], -2)]));
        assert_eq!(l, DetPolynomial::from_terms(4, [term(&[0, 2, 0, 2], 1)]));

        let (g, h, l) = ghl_decompose(&det_poly(&Graph::complete(2)).unwrap(), 0).unwrap();
        assert_eq!(g.to_string(), "-1");
        assert!(h.is_zero_polynomial() && l.is_zero_polynomial());

        let (g, h, l) = ghl_decompose(&det_poly(&Graph::complete(3)).unwrap(), 0).unwrap();
        assert!(g.is_zero_polynomial() && l.is_zero_polynomial());
        assert_eq!(h.to_string(), "2*x2*x3");
        assert!(ghl_decompose(&c4_poly(), 4).is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(c4_poly().evaluate(&[1, 1, 1, 1]).unwrap(), BigInt::from(0));
        let k3 = det_poly(&Graph::complete(3)).unwrap();
        assert_eq!(k3.evaluate(&[1, 2, 3]).unwrap(), BigInt::from(12));
        let p = DetPolynomial::from_terms(2, [term(&[0, 0], 7), term(&[1, 1], 3)]);
        assert_eq!(p.evaluate(&[0, 0]).unwrap(), BigInt::from(7));
        assert!(p.evaluate(&[1]).is_err());
    }

    #[test]
    fn predicates() {
        assert!(det_poly(&Graph::complete(3)).unwrap().is_single_monomial());
        assert!(!c4_poly().is_single_monomial());
        assert!(det_poly(&Graph::path(3)).unwrap().is_zero_polynomial());
        assert_eq!(DetPolynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let p = DetPolynomial::from_terms(1, [term(&[1], 2), term(&[0], 1), term(&[1], -2)]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.to_string(), "1");
    }

    #[test]
    fn term_limit() {
        assert!(matches!(
            det_poly_with_limit(&Graph::complete(6), 3),
            Err(Error::ResourceLimit(_))
        ));
    }
}
