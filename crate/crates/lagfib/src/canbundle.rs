//! Canonical-bundle coefficients over the discriminant: every classified
//! fibre type contributes a rational coefficient to the canonical class of
//! the base. Each coefficient is computed along two independent routes — a
//! stored table and one minus the log-canonical threshold of the scaled
//! fibre graph — and the two must agree.

use crate::degeneration::{FibreTypeRecord, GermDatum, TypeName};
use crate::dualgraph::GraphAction;
use crate::kodaira::{self, fibre_graph, KodairaType};
use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanBundleError {
    #[error("discriminant has no components")]
    EmptyDiscriminant,
    #[error("discriminant component {0:?} listed twice")]
    DuplicateComponent(String),
    #[error("group order {0} does not act on a one-dimensional character space")]
    OrderOutOfRange(u64),
    #[error("no stored coefficient for fibre {fibre} at scale {scale}")]
    UnknownCoefficient { fibre: KodairaType, scale: u32 },
    #[error(
        "stored coefficient {stored} disagrees with the threshold route {computed} for {fibre} at scale {scale}"
    )]
    CoefficientMismatch {
        fibre: KodairaType,
        scale: u32,
        stored: Rational64,
        computed: Rational64,
    },
    #[error(transparent)]
    Kodaira(#[from] kodaira::KodairaError),
}

/// Ratio of the largest recorded multiplicity to the largest multiplicity of
/// the underlying Kodaira fibre: the scale of the multiple-fibre structure.
pub fn fibre_scale(rec: &FibreTypeRecord) -> u32 {
    let rec_max = rec.multiplicities.iter().copied().max().unwrap_or(1);
    let fib_max = fibre_graph(rec.kodaira_fibre)
        .multiplicities()
        .into_iter()
        .max()
        .unwrap_or(1);
    rec_max / fib_max
}

/// The tabulated coefficient for a Kodaira fibre carried with the given
/// multiple-fibre scale.
pub fn stored_coefficient(fibre: KodairaType, scale: u32) -> Result<Rational64, CanBundleError> {
    use KodairaType as K;
    let r = |n, d| Rational64::new(n, d);
    let value = match (fibre, scale) {
        (K::I(0) | K::MultipleI0 { .. }, l) if l >= 1 => r(l as i64 - 1, l as i64),
        (K::I(m), 1) if m >= 1 => r(0, 1),
        (K::I(m), 2) if m >= 1 => r(1, 2),
        (K::IStar(_), 1) => r(1, 2),
        (K::IStar(0), 2) => r(3, 4),
        (K::IStar(0), 3) => r(5, 6),
        (K::II, 1) => r(1, 6),
        (K::IIStar, 1) => r(5, 6),
        (K::III, 1) => r(1, 4),
        (K::IIIStar, 1) => r(3, 4),
        (K::IV, 1) => r(1, 3),
        (K::IV, 2) => r(2, 3),
        (K::IVStar, 1) => r(2, 3),
        (K::IVStar, 2) => r(5, 6),
        _ => return Err(CanBundleError::UnknownCoefficient { fibre, scale }),
    };
    Ok(value)
}

/// Canonical-bundle coefficient of a classified fibre type, computed along
/// both routes; the routes must agree.
pub fn coefficient(rec: &FibreTypeRecord) -> Result<Rational64, CanBundleError> {
    let scale = fibre_scale(rec);
    let stored = stored_coefficient(rec.kodaira_fibre, scale)?;
    let graph = fibre_graph(rec.kodaira_fibre).scaled(scale);
    let computed = Rational64::new(1, 1) - kodaira::lct(&graph)?;
    if stored != computed {
        return Err(CanBundleError::CoefficientMismatch {
            fibre: rec.kodaira_fibre,
            scale,
            stored,
            computed,
        });
    }
    Ok(stored)
}

/// Order of the character through which the germ acts on the canonical
/// direction: the fibre-action order in the finite-monodromy case, trivial
/// for rotations and order two for reflections in the first-order case.
pub fn character_order(d: &GermDatum) -> Result<u64, CanBundleError> {
    match d {
        GermDatum::Smooth(s) => {
            if matches!(s.order_hbar, 1 | 2 | 3 | 4 | 6) {
                Ok(s.order_hbar)
            } else {
                Err(CanBundleError::OrderOutOfRange(s.order_hbar))
            }
        }
        GermDatum::FirstOrder(f) => Ok(match f.action {
            GraphAction::Rotation { .. } => 1,
            GraphAction::Reflection { .. } => 2,
        }),
    }
}

/// Coefficient data assembled over the discriminant: one entry per component
/// and the least multiple clearing all denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBundleReport {
    pub entries: Vec<(String, TypeName, Rational64)>,
    pub cartier_multiple: i64,
}

/// Assemble the canonical-bundle data of a fibration from the classified
/// fibre types over the discriminant components.
pub fn assemble(
    components: &[(String, FibreTypeRecord)],
) -> Result<CanonicalBundleReport, CanBundleError> {
    if components.is_empty() {
        return Err(CanBundleError::EmptyDiscriminant);
    }
    let mut entries = Vec::with_capacity(components.len());
    let mut cartier_multiple = 1i64;
    for (name, rec) in components {
        if entries.iter().any(|(n, _, _)| n == name) {
            return Err(CanBundleError::DuplicateComponent(name.clone()));
        }
        let c = coefficient(rec)?;
        cartier_multiple = num_integer::lcm(cartier_multiple, *c.denom());
        entries.push((name.clone(), rec.name, c));
    }
    Ok(CanonicalBundleReport { entries, cartier_multiple })
}
