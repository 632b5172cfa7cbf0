//! Mixed-Hodge dimension calculus for cycle normal-crossing models built from
//! P¹-bundles over an abelian variety, with group actions.
//!
//! Only the dimension counts the classifier consumes are computed: the
//! weight-1 graded piece is the fixed space of the circuit gluing map on H¹ of
//! the abelian fibre, and the (0,1) half is extracted with the standard
//! complex structure (the same block matrix as the symplectic form). The
//! weight-0 piece (H¹ of the cycle graph, dimension 1) is tracked read-only
//! for the character computation downstream.

use crate::dualgraph::GraphAction;
use crate::intmat::{self, IntMatrix};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MhsError {
    #[error("gluing matrix must be {expected}x{expected}")]
    BadShape { expected: usize },
    #[error("gluing does not preserve the polarization form")]
    NotSymplectic,
    #[error("gluing does not commute with the standard complex structure")]
    NotComplexLinear,
    #[error("translation circuits act trivially on cohomology, but the gluing is not the identity")]
    TranslationMismatch,
    #[error("weight-one piece has odd dimension; the model is inconsistent")]
    OddWeightOneDimension,
    #[error("action does not commute with the circuit gluing")]
    IncompatibleAction,
    #[error("action matrix does not have finite order dividing the group order")]
    InfiniteOrderAction,
}

/// Cycle of P¹-bundles over an a-dimensional abelian variety: the fibre model
/// of a first-order degeneration. `gluing` is the integer matrix induced on
/// H¹ of the abelian fibre by one full circuit along the ruling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleNCModel {
    pub m: usize,
    pub abelian_dim: usize,
    gluing: IntMatrix,
    pub translation_flag: bool,
}

fn check_structure(matrix: &IntMatrix, a: usize) -> Result<(), MhsError> {
    let size = 2 * a;
    if matrix.len() != size || matrix.iter().any(|r| r.len() != size) {
        return Err(MhsError::BadShape { expected: size });
    }
    if a == 0 {
        return Ok(());
    }
    if !intmat::is_symplectic(matrix, a) {
        return Err(MhsError::NotSymplectic);
    }
    let j = intmat::standard_form(a);
    if intmat::mat_mul(matrix, &j) != intmat::mat_mul(&j, matrix) {
        return Err(MhsError::NotComplexLinear);
    }
    Ok(())
}

impl CycleNCModel {
    pub fn new(
        m: usize,
        abelian_dim: usize,
        gluing: IntMatrix,
        translation_flag: bool,
    ) -> Result<Self, MhsError> {
        check_structure(&gluing, abelian_dim)?;
        if translation_flag && gluing != intmat::identity(2 * abelian_dim) {
            return Err(MhsError::TranslationMismatch);
        }
        Ok(CycleNCModel { m, abelian_dim, gluing, translation_flag })
    }

    /// Translation circuit: identity on cohomology.
    pub fn translation(m: usize, abelian_dim: usize) -> Self {
        CycleNCModel {
            m,
            abelian_dim,
            gluing: intmat::identity(2 * abelian_dim),
            translation_flag: true,
        }
    }

    pub fn gluing(&self) -> &IntMatrix {
        &self.gluing
    }

    /// Weight-0 piece: H¹ of the cycle graph, always one-dimensional.
    pub fn weight0_dim(&self) -> usize {
        1
    }
}

/// Finite group action on the model: the matrix on H¹ of the abelian fibre
/// plus the induced action on the dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionOnModel {
    pub order: u64,
    matrix: IntMatrix,
    pub graph_action: GraphAction,
}

impl ActionOnModel {
    pub fn new(
        order: u64,
        matrix: IntMatrix,
        graph_action: GraphAction,
        abelian_dim: usize,
    ) -> Result<Self, MhsError> {
        check_structure(&matrix, abelian_dim)?;
        let size = 2 * abelian_dim;
        if intmat::mat_pow(&matrix, order) != intmat::identity(size) {
            return Err(MhsError::InfiniteOrderAction);
        }
        Ok(ActionOnModel { order, matrix, graph_action })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// Dimension of the weight-1 graded piece of H¹ of the cycle: the kernel of
/// (gluing − I) on the 2a-dimensional rational vector space.
pub fn gr1_dim(model: &CycleNCModel) -> usize {
    intmat::fixed_space_dim(&model.gluing)
}

/// The (0,1) half of the weight-1 piece. The gluing commutes with the
/// complex structure, so the fixed space is J-stable and of even dimension.
pub fn h01(model: &CycleNCModel) -> Result<usize, MhsError> {
    let d = gr1_dim(model);
    if d % 2 != 0 {
        return Err(MhsError::OddWeightOneDimension);
    }
    Ok(d / 2)
}

/// Dimension of the action-invariant part of H^{0,1}: the simultaneous fixed
/// space of the gluing and the action, halved.
pub fn invariant_h01_dim(
    model: &CycleNCModel,
    act: &ActionOnModel,
) -> Result<usize, MhsError> {
    let size = 2 * model.abelian_dim;
    if act.matrix.len() != size {
        return Err(MhsError::BadShape { expected: size });
    }
    if intmat::mat_mul(&act.matrix, &model.gluing) != intmat::mat_mul(&model.gluing, &act.matrix)
    {
        return Err(MhsError::IncompatibleAction);
    }
    // Stack (gluing − I) over (action − I): the joint kernel.
    let id = intmat::identity(size);
    let mut stacked = intmat::mat_sub(&model.gluing, &id);
    stacked.extend(intmat::mat_sub(&act.matrix, &id));
    let joint = size - intmat::rank(&stacked);
    if joint % 2 != 0 {
        return Err(MhsError::OddWeightOneDimension);
    }
    Ok(joint / 2)
}

/// Admissibility gate: a germ with base dimension n is admissible only when
/// the invariant (0,1) dimension is at least n − 1 = abelian_dim.
pub fn admissible(model: &CycleNCModel, act: &ActionOnModel) -> Result<bool, MhsError> {
    Ok(invariant_h01_dim(model, act)? >= model.abelian_dim)
}

/// The J-compatible symplectic integer matrices form a finite group; for
/// a = 1 it is {±I, ±J}. Convenience constructor for the non-translation
/// gluings used in tests.
pub fn complex_unit(a: usize, k: u32) -> IntMatrix {
    let j = intmat::standard_form(a);
    intmat::mat_pow(&j, k as u64 % 4)
}

pub fn is_zero_matrix(m: &IntMatrix) -> bool {
    m.iter().flatten().all(|x| x.is_zero())
}
