//! Rankings: total maps from product vertices to `ℕ ∪ {∞}`.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::arena::VertexId;
use crate::weight::ExtWeight;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ranking(Vec<ExtWeight>);

impl Ranking {
    pub fn constant(n: usize, value: ExtWeight) -> Self {
        Ranking(vec![value; n])
    }

    pub fn from_values(values: Vec<ExtWeight>) -> Self {
        Ranking(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[ExtWeight] {
        &self.0
    }

    pub fn into_values(self) -> Vec<ExtWeight> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, ExtWeight)> + '_ {
        self.0.iter().enumerate().map(|(i, &r)| (VertexId::from(i), r))
    }

    /// `self ⊑ other`: `other` is pointwise no larger.
    pub fn below(&self, other: &Ranking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Index<VertexId> for Ranking {
    type Output = ExtWeight;

    fn index(&self, v: VertexId) -> &ExtWeight {
        &self.0[v.index()]
    }
}

impl IndexMut<VertexId> for Ranking {
    fn index_mut(&mut self, v: VertexId) -> &mut ExtWeight {
        &mut self.0[v.index()]
    }
}

/// `t(v) = min{ j | trace[j](v) = fixpoint(v) }`.
pub fn first_stable_index(trace: &[Ranking], fixpoint: &Ranking) -> Vec<usize> {
    (0..fixpoint.len())
        .map(|i| {
            trace
                .iter()
                .position(|r| r.0[i] == fixpoint.0[i])
                .expect("fixpoint is the last trace entry")
        })
        .collect()
}
