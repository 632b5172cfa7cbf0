//! TOML germ descriptions: the on-disk input format of the command-line
//! interface. A file carries a monodromy matrix, a finite-quotient payload,
//! or a cycle-degeneration payload (a matrix may accompany either payload),
//! and optionally a discriminant section for the canonical-bundle formula.

use crate::degeneration::{
    FirstOrderDatum, FixedLocusKind, GermDatum, QuotientSingularity, SmoothCaseDatum, TypeName,
};
use crate::dualgraph::{GraphAction, ReflectionAxis};
use crate::intmat;
use crate::mhs::CycleNCModel;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("failed to read germ file: {0}")]
    Io(#[from] std::io::Error),
    #[error("germ file is not valid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unsupported germ file version {0}; this build reads version 1")]
    UnsupportedVersion(u32),
    #[error("base dimension must be at least 1")]
    BadBaseDim,
    #[error("germ file needs a monodromy matrix or exactly one case payload")]
    MissingPayload,
    #[error("germ file carries both a finite-quotient and a cycle payload")]
    ConflictingPayloads,
    #[error("matrix must be square with even size matching the base dimension")]
    BadMatrix,
    #[error("quotient singularity (1/{r})(1,{a}) is malformed")]
    BadSingularity { r: u32, a: u32 },
    #[error("unknown reflection axis {0:?}; use vertex-vertex, edge-edge or vertex-edge")]
    BadAxis(String),
    #[error("unknown action kind {0:?}; use rotation or reflection")]
    BadActionKind(String),
    #[error("rotation actions need a shift, reflection actions an axis")]
    IncompleteAction,
    #[error("unknown fixed-locus shape {0:?}; use sections or two-section")]
    BadFixedLocusKind(String),
    #[error("gluing matrix is not a valid circuit matrix: {0}")]
    BadGluing(#[from] crate::mhs::MhsError),
    #[error("unknown fibre type name {0:?} in discriminant section")]
    BadTypeName(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MonodromySection {
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FixedLocusEntry {
    pub degree: u32,
    pub r: u32,
    pub a: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SmoothSection {
    pub group_order: u64,
    pub fibre_action_order: u64,
    pub kernel_order: u64,
    #[serde(default)]
    pub fixed_locus: Vec<FixedLocusEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionSection {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FirstOrderSection {
    pub cycle_length: usize,
    pub action: ActionSection,
    pub has_fixed_points: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_locus: Option<String>,
    /// Circuit matrix on first cohomology of the abelian fibre; omitted
    /// means a translation circuit (the identity).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gluing: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiscriminantEntry {
    pub name: String,
    pub fibre_type: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GermFile {
    pub version: u32,
    pub base_dim: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smooth_case: Option<SmoothSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_order: Option<FirstOrderSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<Vec<DiscriminantEntry>>,
}

fn axis_from_str(s: &str) -> Result<ReflectionAxis, ParseError> {
    match s {
        "vertex-vertex" => Ok(ReflectionAxis::VertexVertex),
        "edge-edge" => Ok(ReflectionAxis::EdgeEdge),
        "vertex-edge" => Ok(ReflectionAxis::VertexEdge),
        other => Err(ParseError::BadAxis(other.to_owned())),
    }
}

pub fn axis_to_str(a: ReflectionAxis) -> &'static str {
    match a {
        ReflectionAxis::VertexVertex => "vertex-vertex",
        ReflectionAxis::EdgeEdge => "edge-edge",
        ReflectionAxis::VertexEdge => "vertex-edge",
    }
}

fn int_rows(rows: &[Vec<i64>]) -> intmat::IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

impl GermFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let file: GermFile = toml::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ParseError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), ParseError> {
        if self.version != 1 {
            return Err(ParseError::UnsupportedVersion(self.version));
        }
        if self.base_dim == 0 {
            return Err(ParseError::BadBaseDim);
        }
        match (&self.smooth_case, &self.first_order) {
            (Some(_), Some(_)) => return Err(ParseError::ConflictingPayloads),
            (None, None) if self.monodromy.is_none() => {
                return Err(ParseError::MissingPayload)
            }
            _ => {}
        }
        if let Some(m) = &self.monodromy {
            let size = 2 * self.base_dim as usize;
            if m.matrix.len() != size || m.matrix.iter().any(|r| r.len() != size) {
                return Err(ParseError::BadMatrix);
            }
        }
        Ok(())
    }

    /// The monodromy matrix as big integers, when present.
    pub fn monodromy_matrix(&self) -> Option<intmat::IntMatrix> {
        self.monodromy.as_ref().map(|m| int_rows(&m.matrix))
    }

    /// Build the classifier input from the case payload, if one is present.
    pub fn to_datum(&self) -> Result<Option<GermDatum>, ParseError> {
        if let Some(s) = &self.smooth_case {
            let mut fixed_locus = Vec::with_capacity(s.fixed_locus.len());
            for e in &s.fixed_locus {
                let sing = QuotientSingularity::new(e.r, e.a)
                    .map_err(|_| ParseError::BadSingularity { r: e.r, a: e.a })?;
                fixed_locus.push((e.degree, sing));
            }
            return Ok(Some(GermDatum::Smooth(SmoothCaseDatum {
                n: self.base_dim,
                order_h: s.group_order,
                order_hbar: s.fibre_action_order,
                order_hbar_prime: s.kernel_order,
                fixed_locus,
            })));
        }
        let Some(f) = &self.first_order else {
            return Ok(None);
        };
        let action = match f.action.kind.as_str() {
            "rotation" => GraphAction::Rotation {
                shift: f.action.shift.ok_or(ParseError::IncompleteAction)?,
            },
            "reflection" => GraphAction::Reflection {
                axis: axis_from_str(
                    f.action.axis.as_deref().ok_or(ParseError::IncompleteAction)?,
                )?,
            },
            other => return Err(ParseError::BadActionKind(other.to_owned())),
        };
        let fixed_locus_kind = match f.fixed_locus.as_deref() {
            None => None,
            Some("sections") => Some(FixedLocusKind::Sections),
            Some("two-section") => Some(FixedLocusKind::TwoSection),
            Some(other) => return Err(ParseError::BadFixedLocusKind(other.to_owned())),
        };
        let a = self.base_dim as usize - 1;
        let model = match &f.gluing {
            None => CycleNCModel::translation(f.cycle_length, a),
            Some(rows) => CycleNCModel::new(f.cycle_length, a, int_rows(rows), false)?,
        };
        Ok(Some(GermDatum::FirstOrder(FirstOrderDatum {
            n: self.base_dim,
            m: f.cycle_length,
            action,
            has_fixed_points: f.has_fixed_points,
            fixed_locus_kind,
            model,
        })))
    }

    /// Parsed discriminant entries, when the section is present.
    pub fn discriminant_types(&self) -> Result<Option<Vec<(String, TypeName)>>, ParseError> {
        let Some(entries) = &self.discriminant else {
            return Ok(None);
        };
        let mut out = Vec::with_capacity(entries.len());
        for e in entries {
            let name: TypeName = e
                .fibre_type
                .parse()
                .map_err(|_| ParseError::BadTypeName(e.fibre_type.clone()))?;
            out.push((e.name.clone(), name));
        }
        Ok(Some(out))
    }

    /// The file describing a germ datum, for fixture serialization.
    pub fn from_datum(d: &GermDatum) -> GermFile {
        match d {
            GermDatum::Smooth(s) => GermFile {
                version: 1,
                base_dim: s.n,
                monodromy: None,
                smooth_case: Some(SmoothSection {
                    group_order: s.order_h,
                    fibre_action_order: s.order_hbar,
                    kernel_order: s.order_hbar_prime,
                    fixed_locus: s
                        .fixed_locus
                        .iter()
                        .map(|&(degree, sing)| FixedLocusEntry {
                            degree,
                            r: sing.r,
                            a: sing.a,
                        })
                        .collect(),
                }),
                first_order: None,
                discriminant: None,
            },
            GermDatum::FirstOrder(f) => {
                let action = match f.action {
                    GraphAction::Rotation { shift } => ActionSection {
                        kind: "rotation".to_owned(),
                        shift: Some(shift),
                        axis: None,
                    },
                    GraphAction::Reflection { axis } => ActionSection {
                        kind: "reflection".to_owned(),
                        shift: None,
                        axis: Some(axis_to_str(axis).to_owned()),
                    },
                };
                let gluing = if f.model.translation_flag {
                    None
                } else {
                    Some(
                        f.model
                            .gluing()
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .map(|x| {
                                        use num_traits::ToPrimitive;
                                        x.to_i64().expect("fixture gluing entries are small")
                                    })
                                    .collect()
                            })
                            .collect(),
                    )
                };
                GermFile {
                    version: 1,
                    base_dim: f.n,
                    monodromy: None,
                    smooth_case: None,
                    first_order: Some(FirstOrderSection {
                        cycle_length: f.m,
                        action,
                        has_fixed_points: f.has_fixed_points,
                        fixed_locus: f.fixed_locus_kind.map(|k| {
                            match k {
                                FixedLocusKind::Sections => "sections",
                                FixedLocusKind::TwoSection => "two-section",
                            }
                            .to_owned()
                        }),
                        gluing,
                    }),
                    discriminant: None,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::classify;

    #[test]
    fn parse_smooth_case() {
        let text = r#"
            version = 1
            base_dim = 2

            [smooth_case]
            group_order = 8
            fibre_action_order = 4
            kernel_order = 2
            fixed_locus = [
                { degree = 2, r = 2, a = 1 },
                { degree = 2, r = 2, a = 1 },
            ]
        "#;
        let file = GermFile::parse(text).unwrap();
        let datum = file.to_datum().unwrap().unwrap();
        let rec = classify(&datum).unwrap();
        assert_eq!(rec.name.to_string(), "I*_0-5");
    }

    #[test]
    fn parse_first_order() {
        let text = r#"
            version = 1
            base_dim = 2

            [first_order]
            cycle_length = 6
            has_fixed_points = false

            [first_order.action]
            kind = "reflection"
            axis = "edge-edge"
        "#;
        let file = GermFile::parse(text).unwrap();
        let rec = classify(&file.to_datum().unwrap().unwrap()).unwrap();
        assert_eq!(rec.name.to_string(), "I*_3-3");
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            GermFile::parse("version = 2\nbase_dim = 2\n[monodromy]\nmatrix = []"),
            Err(ParseError::UnsupportedVersion(2))
        ));
        assert!(matches!(
            GermFile::parse("version = 1\nbase_dim = 2"),
            Err(ParseError::MissingPayload)
        ));
        let both = r#"
            version = 1
            base_dim = 2
            [smooth_case]
            group_order = 2
            fibre_action_order = 2
            kernel_order = 2
            [first_order]
            cycle_length = 4
            has_fixed_points = false
            [first_order.action]
            kind = "rotation"
            shift = 1
        "#;
        assert!(matches!(
            GermFile::parse(both),
            Err(ParseError::ConflictingPayloads)
        ));
        let bad_matrix = r#"
            version = 1
            base_dim = 2
            [monodromy]
            matrix = [[1, 0], [0, 1]]
        "#;
        assert!(matches!(
            GermFile::parse(bad_matrix),
            Err(ParseError::BadMatrix)
        ));
    }

    #[test]
    fn monodromy_alongside_payload() {
        let text = r#"
            version = 1
            base_dim = 1

            [monodromy]
            matrix = [[1, 3], [0, 1]]

            [first_order]
            cycle_length = 3
            has_fixed_points = false

            [first_order.action]
            kind = "rotation"
            shift = 1
        "#;
        let file = GermFile::parse(text).unwrap();
        assert!(file.monodromy_matrix().is_some());
        assert!(file.to_datum().unwrap().is_some());
    }

    #[test]
    fn discriminant_parsing() {
        let text = r#"
            version = 1
            base_dim = 2

            [smooth_case]
            group_order = 1
            fibre_action_order = 1
            kernel_order = 1

            [[discriminant]]
            name = "D1"
            fibre_type = "I*_0-5"

            [[discriminant]]
            name = "D2"
            fibre_type = "IV*-2"
        "#;
        let file = GermFile::parse(text).unwrap();
        let entries = file.discriminant_types().unwrap().unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].1.to_string(), "I*_0-5");
        assert_eq!(entries[1].1.to_string(), "IV*-2");
        let bad = text.replace("IV*-2", "V-9");
        assert!(matches!(
            GermFile::parse(&bad).unwrap().discriminant_types(),
            Err(ParseError::BadTypeName(_))
        ));
    }

    #[test]
    fn datum_round_trip() {
        for fixture in crate::examples::catalog_all() {
            let file = GermFile::from_datum(&fixture.datum);
            let text = toml::to_string_pretty(&file).unwrap();
            let reparsed = GermFile::parse(&text).unwrap();
            assert_eq!(reparsed, file, "{}", fixture.label);
            assert_eq!(
                reparsed.to_datum().unwrap().unwrap(),
                fixture.datum,
                "{}",
                fixture.label
            );
        }
    }
}
