//! Exact integer matrices: determinant, rank and permanent without floating point.
//!
//! Elimination is fraction-free (Bareiss), so every intermediate entry is a
//! minor of the input and all divisions are exact. A checked `i128` pass runs
//! first; on overflow the computation restarts over `BigInt`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::assignment::EdgeAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Same matrix without column `c`.
    pub fn without_column(&self, c: usize) -> Self {
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for r in 0..self.rows {
            for j in 0..self.cols {
                if j != c {
                    data.push(self.get(r, j).clone());
                }
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: self.cols - 1,
            data,
        }
    }

    fn to_i128(&self) -> Option<Vec<i128>> {
        self.data
            .iter()
            .map(|x| x.to_i64().map(i128::from))
            .collect()
    }

    /// Exact determinant. The 0x0 determinant is 1.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some(mut small) = self.to_i128() {
            if let Some(d) = bareiss_det(&mut small, self.rows) {
                return Ok(BigInt::from(d));
            }
        }
        let mut big = self.data.clone();
        Ok(bareiss_det(&mut big, self.rows).expect("BigInt arithmetic cannot overflow"))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        if let Some(mut small) = self.to_i128() {
            if let Some(r) = bareiss_rank(&mut small, self.rows, self.cols) {
                return r;
            }
        }
        let mut big = self.data.clone();
        bareiss_rank(&mut big, self.rows, self.cols).expect("BigInt arithmetic cannot overflow")
    }

    /// Permanent by Ryser's inclusion-exclusion formula, `O(2^n n^2)`.
    pub fn permanent(&self) -> Result<BigInt> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if n >= 32 {
            return Err(Error::ResourceLimit(format!(
                "permanent of a {n}x{n} matrix is out of reach"
            )));
        }
        let mut total = BigInt::zero();
        for subset in 1u64..(1u64 << n) {
            let mut prod = BigInt::one();
            for r in 0..n {
                let row_sum: BigInt = (0..n)
                    .filter(|c| subset >> c & 1 == 1)
                    .map(|c| self.get(r, c))
                    .sum();
                if Zero::is_zero(&row_sum) {
                    prod = BigInt::zero();
                    break;
                }
                prod *= row_sum;
            }
            if (n - subset.count_ones() as usize) % 2 == 1 {
                total -= prod;
            } else {
                total += prod;
            }
        }
        if n == 0 {
            total = BigInt::one();
        }
        Ok(total)
    }
}

/// Integer types the elimination can run over. `None` signals overflow.
trait ExactInt: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `(a*b - c*d) / e`, the division being exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
}

impl ExactInt for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let num = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(num % e, 0);
        num.checked_div(*e)
    }
}

impl ExactInt for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let num = a * b - c * d;
        debug_assert!(Zero::is_zero(&(&num % e)));
        Some(num / e)
    }
}

fn bareiss_det<T: ExactInt>(m: &mut [T], n: usize) -> Option<T> {
    if n == 0 {
        return Some(T::unit());
    }
    let mut negate = false;
    let mut prev = T::unit();
    for k in 0..n - 1 {
        if m[k * n + k].is_nil() {
            let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_nil()) else {
                return Some(T::nil());
            };
            for c in 0..n {
                m.swap(k * n + c, p * n + c);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] = T::cross_div(
                    &m[i * n + j],
                    &m[k * n + k],
                    &m[i * n + k],
                    &m[k * n + j],
                    &prev,
                )?;
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    if negate {
        d.neg()
    } else {
        Some(d)
    }
}

fn bareiss_rank<T: ExactInt>(m: &mut [T], rows: usize, cols: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev = T::unit();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i * cols + c].is_nil()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                m.swap(rank * cols + j, p * cols + j);
            }
        }
        for i in rank + 1..rows {
            for j in c + 1..cols {
                m[i * cols + j] = T::cross_div(
                    &m[i * cols + j],
                    &m[rank * cols + c],
                    &m[i * cols + c],
                    &m[rank * cols + j],
                    &prev,
                )?;
            }
            m[i * cols + c] = T::nil();
        }
        prev = m[rank * cols + c].clone();
        rank += 1;
    }
    Some(rank)
}

/// `A(G^w)`: symmetric, zero diagonal, `w(e)` at both positions of each edge.
pub fn adjacency_matrix(g: &Graph, w: &EdgeAssignment) -> Result<IntMatrix> {
    w.check_domain(g)?;
    Ok(weighted_matrix(g, w.values()))
}

/// `A(G)` with unit weights.
pub fn plain_adjacency(g: &Graph) -> IntMatrix {
    weighted_matrix(g, &vec![1; g.m()])
}

/// `M_G` with its edge slots filled by `values`. Zeros are allowed here.
pub fn weighted_matrix(g: &Graph, values: &[i64]) -> IntMatrix {
    assert_eq!(values.len(), g.m(), "one value per edge");
    let mut a = IntMatrix::zeros(g.n(), g.n());
    for (&(u, v), &x) in g.edges().iter().zip(values) {
        a.set(u, v, BigInt::from(x));
        a.set(v, u, BigInt::from(x));
    }
    a
}

/// Unsigned vertex-edge incidence matrix, `n x m`.
pub fn incidence_matrix(g: &Graph) -> IntMatrix {
    let mut b = IntMatrix::zeros(g.n(), g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        b.set(u, e, BigInt::one());
        b.set(v, e, BigInt::one());
    }
    b
}

/// Whether the all-ones vector is in the kernel of `a`.
pub fn kills_all_ones(a: &IntMatrix) -> bool {
    let ones = vec![BigInt::one(); a.cols()];
    a.mul_vec(&ones).iter().all(Zero::is_zero)
}
