use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// What an [`EdgeAssignment`] stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssignmentKind {
    /// Values in `{-1, +1}`.
    Sign,
    /// Arbitrary nonzero integers.
    Weight,
    /// Nonzero integers meant to sum to zero at every vertex.
    Flow,
}

/// A nowhere-zero integer label per edge, indexed by edge position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeAssignment {
    kind: AssignmentKind,
    values: Vec<i64>,
}

impl EdgeAssignment {
    pub fn new(kind: AssignmentKind, values: Vec<i64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|&v| v == 0) {
            return Err(Error::InvalidAssignment(format!("edge {i} has value 0")));
        }
        if kind == AssignmentKind::Sign {
            if let Some(i) = values.iter().position(|v| v.abs() != 1) {
                return Err(Error::InvalidAssignment(format!(
                    "edge {i} has sign {}, expected +1 or -1",
                    values[i]
                )));
            }
        }
        Ok(EdgeAssignment { kind, values })
    }

    pub fn signs(values: Vec<i64>) -> Result<Self> {
        Self::new(AssignmentKind::Sign, values)
    }

    pub fn weights(values: Vec<i64>) -> Result<Self> {
        Self::new(AssignmentKind::Weight, values)
    }

    pub fn flow(values: Vec<i64>) -> Result<Self> {
        Self::new(AssignmentKind::Flow, values)
    }

    pub fn all_ones(kind: AssignmentKind, m: usize) -> Self {
        EdgeAssignment {
            kind,
            values: vec![1; m],
        }
    }

    pub fn kind(&self) -> AssignmentKind {
        self.kind
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> u64 {
        self.values
            .iter()
            .map(|v| v.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Same values, different role.
    pub fn with_kind(&self, kind: AssignmentKind) -> Result<Self> {
        Self::new(kind, self.values.clone())
    }

    /// Checks that the assignment covers exactly the edges of `g`.
    pub fn check_domain(&self, g: &Graph) -> Result<()> {
        if self.values.len() != g.m() {
            return Err(Error::InvalidAssignment(format!(
                "assignment has {} values but the graph has {} edges",
                self.values.len(),
                g.m()
            )));
        }
        Ok(())
    }

    /// Negates every edge incident to `v`.
    pub fn switch_at(&self, g: &Graph, v: usize) -> Self {
        let mut values = self.values.clone();
        for &(_, e) in g.incident(v) {
            values[e] = -values[e];
        }
        EdgeAssignment {
            kind: self.kind,
            values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_bad_signs() {
        assert!(EdgeAssignment::weights(vec![1, 0]).is_err());
        assert!(EdgeAssignment::signs(vec![1, 2]).is_err());
        assert!(EdgeAssignment::signs(vec![1, -1]).is_ok());
        assert!(EdgeAssignment::flow(vec![3, -3]).is_ok());
    }

    #[test]
    fn switching_flips_incident_edges() {
        let g = Graph::cycle(4);
        let s = EdgeAssignment::all_ones(AssignmentKind::Sign, 4).switch_at(&g, 0);
        assert_eq!(s.values(), &[-1, 1, 1, -1]);
    }
}
