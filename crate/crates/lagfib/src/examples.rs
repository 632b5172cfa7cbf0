//! Worked fixtures: one germ datum per classification row, used by the
//! catalog verifier and the integration suite.

use crate::degeneration::{
    FirstOrderDatum, FixedLocusKind, GermDatum, QuotientSingularity, SmoothCaseDatum, TypeName,
};
use crate::dualgraph::{classify_action, GraphAction, ReflectionAxis};
use crate::mhs::CycleNCModel;

/// A germ datum together with the row it must classify to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub label: String,
    pub datum: GermDatum,
    pub expected: TypeName,
}

fn sing(r: u32, a: u32) -> QuotientSingularity {
    QuotientSingularity::new(r, a).expect("fixture singularities are well-formed")
}

fn smooth_fixture(
    expected: TypeName,
    order_h: u64,
    order_hbar: u64,
    order_hbar_prime: u64,
    fixed_locus: &[(u32, (u32, u32))],
) -> Fixture {
    Fixture {
        label: expected.to_string(),
        datum: GermDatum::Smooth(SmoothCaseDatum {
            n: 2,
            order_h,
            order_hbar,
            order_hbar_prime,
            fixed_locus: fixed_locus.iter().map(|&(d, (r, a))| (d, sing(r, a))).collect(),
        }),
        expected,
    }
}

fn first_order_fixture(
    expected: TypeName,
    m: usize,
    action: GraphAction,
    has_fixed_points: bool,
    fixed_locus_kind: Option<FixedLocusKind>,
) -> Fixture {
    Fixture {
        label: expected.to_string(),
        datum: GermDatum::FirstOrder(FirstOrderDatum {
            n: 2,
            m,
            action,
            has_fixed_points,
            fixed_locus_kind,
            model: CycleNCModel::translation(m, 1),
        }),
        expected,
    }
}

/// A degree-4 quotient of an abelian fibration with an intermediate kernel:
/// two 2-sections of half-period fixed points, classifying to I*_0-5.
pub fn example_i0star5() -> Fixture {
    smooth_fixture(TypeName::IStar0(5), 8, 4, 2, &[(2, (2, 1)), (2, (2, 1))])
}

/// The same configuration with the 2-sections split into four sections:
/// a genuinely different row (I*_0-1), used as the negative control.
pub fn example_i0star5_control() -> Fixture {
    smooth_fixture(TypeName::IStar0(1), 8, 4, 2, &[(1, (2, 1)); 4])
}

/// An edge–edge reflection of the 2m-cycle without fixed components,
/// classifying to I*_m-3. The reflection is built from its explicit image
/// vector i ↦ 1 − i to exercise the dual-graph classifier.
pub fn example_imstar3(m: u32) -> Fixture {
    let len = 2 * m as usize;
    let action = if len >= 3 {
        let images: Vec<usize> = (0..len).map(|i| (1 + len - i % len) % len).collect();
        let action = classify_action(len, &images).expect("i -> 1 - i is an automorphism");
        assert_eq!(action, GraphAction::Reflection { axis: ReflectionAxis::EdgeEdge });
        action
    } else {
        // On the degenerate 2-cycle the permutation i -> 1 - i coincides with
        // the shift; the geometric datum still distinguishes the reflection.
        GraphAction::Reflection { axis: ReflectionAxis::EdgeEdge }
    };
    first_order_fixture(TypeName::IStarM { m, variant: 3 }, len, action, false, None)
}

/// One fixture per classification row (the 23 rows at reference parameters),
/// plus the smooth fibre and untwisted cycle degenerations.
pub fn catalog_all() -> Vec<Fixture> {
    let vv = GraphAction::Reflection { axis: ReflectionAxis::VertexVertex };
    let ee = GraphAction::Reflection { axis: ReflectionAxis::EdgeEdge };
    let mut out = vec![
        smooth_fixture(TypeName::Smooth, 1, 1, 1, &[]),
        smooth_fixture(TypeName::I0l(2), 2, 2, 1, &[]),
        smooth_fixture(TypeName::I0l(3), 3, 3, 1, &[]),
        smooth_fixture(TypeName::I0l(4), 4, 4, 1, &[]),
        smooth_fixture(TypeName::I0l(6), 6, 6, 1, &[]),
        smooth_fixture(TypeName::IStar0(0), 2, 2, 2, &[(1, (2, 1)); 4]),
        smooth_fixture(TypeName::IStar0(2), 2, 2, 2, &[(2, (2, 1)); 2]),
        smooth_fixture(TypeName::IStar0(4), 2, 2, 2, &[(4, (2, 1))]),
        smooth_fixture(TypeName::IStar0(1), 4, 4, 2, &[(1, (2, 1)); 4]),
        example_i0star5(),
        smooth_fixture(TypeName::IStar0(3), 6, 6, 2, &[(1, (2, 1)); 4]),
        smooth_fixture(TypeName::II, 6, 6, 6, &[(1, (6, 1)), (1, (3, 1)), (1, (2, 1))]),
        smooth_fixture(TypeName::IIStar, 6, 6, 6, &[(1, (6, 5)), (1, (3, 2)), (1, (2, 1))]),
        smooth_fixture(TypeName::IIIv(0), 4, 4, 4, &[(1, (4, 1)), (1, (4, 1)), (1, (2, 1))]),
        smooth_fixture(TypeName::IIIv(1), 4, 4, 4, &[(2, (4, 1)), (1, (2, 1))]),
        smooth_fixture(
            TypeName::IIIStarv(0),
            4,
            4,
            4,
            &[(1, (4, 3)), (1, (4, 3)), (1, (2, 1))],
        ),
        smooth_fixture(TypeName::IIIStarv(1), 4, 4, 4, &[(2, (4, 3)), (1, (2, 1))]),
        smooth_fixture(TypeName::IVv(0), 3, 3, 3, &[(1, (3, 1)); 3]),
        smooth_fixture(TypeName::IVv(1), 3, 3, 3, &[(3, (3, 1))]),
        smooth_fixture(TypeName::IVv(2), 6, 6, 3, &[(1, (3, 1)); 3]),
        smooth_fixture(TypeName::IVStarv(0), 3, 3, 3, &[(1, (3, 2)); 3]),
        smooth_fixture(TypeName::IVStarv(1), 3, 3, 3, &[(3, (3, 2))]),
        smooth_fixture(TypeName::IVStarv(2), 6, 6, 3, &[(1, (3, 2)); 3]),
    ];
    out.push(first_order_fixture(
        TypeName::Im(3),
        6,
        GraphAction::Rotation { shift: 3 },
        false,
        None,
    ));
    out.push(first_order_fixture(
        TypeName::Im(1),
        4,
        GraphAction::Rotation { shift: 1 },
        false,
        None,
    ));
    out.push(first_order_fixture(
        TypeName::IStarM { m: 2, variant: 0 },
        4,
        vv,
        true,
        Some(FixedLocusKind::Sections),
    ));
    out.push(first_order_fixture(
        TypeName::IStarM { m: 2, variant: 1 },
        4,
        vv,
        true,
        Some(FixedLocusKind::TwoSection),
    ));
    out.push(first_order_fixture(TypeName::IStarM { m: 2, variant: 2 }, 4, vv, false, None));
    out.push(example_imstar3(2));
    out.push(first_order_fixture(TypeName::IStarM { m: 1, variant: 3 }, 2, ee, false, None));
    out
}

/// File name of the serialized fixture (the label with `*` spelled out).
pub fn fixture_file_name(f: &Fixture) -> String {
    format!("{}.toml", f.label.replace('*', "star"))
}

/// Canonical on-disk form of a fixture: the germ file plus the expected row.
pub fn fixture_toml(f: &Fixture) -> String {
    let file = crate::germfile::GermFile::from_datum(&f.datum);
    format!(
        "expected = {:?}\n\n{}",
        f.label,
        toml::to_string_pretty(&file).expect("fixtures serialize")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::classify;

    #[test]
    fn all_fixtures_classify_to_their_row() {
        let fixtures = catalog_all();
        assert!(fixtures.len() >= 23 + 2);
        for f in &fixtures {
            let rec = classify(&f.datum).unwrap();
            assert_eq!(rec.name, f.expected, "{}", f.label);
        }
    }

    #[test]
    fn labels_are_unique() {
        let fixtures = catalog_all();
        let mut labels: Vec<&str> = fixtures.iter().map(|f| f.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels.len(), fixtures.len());
    }

    #[test]
    fn named_examples() {
        assert_eq!(classify(&example_i0star5().datum).unwrap().name, TypeName::IStar0(5));
        assert_eq!(
            classify(&example_i0star5_control().datum).unwrap().name,
            TypeName::IStar0(1)
        );
        for m in 1..=3 {
            let f = example_imstar3(m);
            let rec = classify(&f.datum).unwrap();
            assert_eq!(rec.name, TypeName::IStarM { m, variant: 3 });
            assert_eq!(rec.degree, 4);
        }
    }

    #[test]
    fn rows_cover_the_table() {
        use std::collections::HashSet;
        let rows: HashSet<TypeName> = catalog_all().iter().map(|f| f.expected).collect();
        // The four multiple-smooth scales count as one printed row.
        let printed_rows = rows
            .iter()
            .filter(|n| !matches!(n, TypeName::Smooth | TypeName::Im(_)))
            .count();
        assert!(printed_rows >= 23);
    }
}
