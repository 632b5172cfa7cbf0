//! Cycle dual graphs of first-order degenerations and their dihedral
//! symmetries: rotation/reflection classification and quotients.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualGraphError {
    #[error("permutation does not preserve cycle adjacency")]
    NotAutomorphism,
    #[error("images must be a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("rotation by 0 has a trivial quotient")]
    TrivialRotation,
    #[error("axis {axis:?} requires cycle length of {expected} parity")]
    AxisParity { axis: ReflectionAxis, expected: &'static str },
}

/// Cycle with `length` vertices (irreducible components) indexed by Z/mZ.
/// Lengths 1 and 2 are the degenerate cycles (self-loop / double edge in the
/// degeneration picture) and carry a flag saying so.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleGraph {
    pub length: usize,
}

impl CycleGraph {
    pub fn new(length: usize) -> Self {
        assert!(length >= 1);
        CycleGraph { length }
    }

    pub fn is_degenerate(&self) -> bool {
        self.length <= 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReflectionAxis {
    VertexVertex,
    EdgeEdge,
    VertexEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphAction {
    Rotation { shift: usize },
    Reflection { axis: ReflectionAxis },
}

impl GraphAction {
    /// Order of the action on an m-cycle.
    pub fn order(&self, m: usize) -> usize {
        match self {
            GraphAction::Rotation { shift } => m / num_integer::gcd(m, *shift),
            GraphAction::Reflection { .. } => 2,
        }
    }
}

/// Classify an adjacency-preserving permutation of the m-cycle as a rotation
/// or a reflection with its axis type. For m ≤ 2 every permutation preserves
/// adjacency; maps of the form i ↦ c − i are classified as reflections there
/// too, except the identity-like shifts.
pub fn classify_action(m: usize, images: &[usize]) -> Result<GraphAction, DualGraphError> {
    if images.len() != m {
        return Err(DualGraphError::NotPermutation(m));
    }
    let mut seen = vec![false; m];
    for &v in images {
        if v >= m || seen[v] {
            return Err(DualGraphError::NotPermutation(m));
        }
        seen[v] = true;
    }
    if m >= 3 {
        for i in 0..m {
            let (a, b) = (images[i], images[(i + 1) % m]);
            let diff = (a + m - b) % m;
            if diff != 1 && diff != m - 1 {
                return Err(DualGraphError::NotAutomorphism);
            }
        }
    }
    let k = images[0];
    if (0..m).all(|i| images[i] == (i + k) % m) {
        return Ok(GraphAction::Rotation { shift: k });
    }
    // Reflection i ↦ c − i: axis type from the parity of m and c.
    let c = images[0];
    if (0..m).all(|i| images[i] == (c + m - (i % m)) % m) {
        let axis = if m % 2 == 1 {
            ReflectionAxis::VertexEdge
        } else if c % 2 == 0 {
            ReflectionAxis::VertexVertex
        } else {
            ReflectionAxis::EdgeEdge
        };
        return Ok(GraphAction::Reflection { axis });
    }
    Err(DualGraphError::NotAutomorphism)
}

/// Quotient of the m-cycle by the rotation subgroup generated by shift k:
/// a free action with cycle quotient of length gcd(m, k) = m / order.
pub fn quotient_rotation(m: usize, k: usize) -> Result<CycleGraph, DualGraphError> {
    if k % m == 0 {
        return Err(DualGraphError::TrivialRotation);
    }
    Ok(CycleGraph::new(num_integer::gcd(m, k % m)))
}

/// Fixed vertices and fixed edges of a reflection with the given axis.
pub fn reflection_fixed_data(
    m: usize,
    axis: ReflectionAxis,
) -> Result<(u8, u8), DualGraphError> {
    let even = m % 2 == 0;
    match axis {
        ReflectionAxis::VertexVertex if even => Ok((2, 0)),
        ReflectionAxis::EdgeEdge if even => Ok((0, 2)),
        ReflectionAxis::VertexEdge if !even => Ok((1, 1)),
        _ => Err(DualGraphError::AxisParity {
            axis,
            expected: if even { "odd" } else { "even" },
        }),
    }
}

/// All 2m automorphisms of the m-cycle (rotations and reflections), as
/// permutation image vectors.
pub fn all_automorphisms(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(2 * m);
    for k in 0..m {
        out.push((0..m).map(|i| (i + k) % m).collect());
        out.push((0..m).map(|i| (k + m - i) % m).collect());
    }
    out
}
