//! The classification engine: smooth-branch pipeline (finite monodromy,
//! quotient-singularity resolution and table lookup) and first-order-branch
//! pipeline (cycle quotients under dihedral actions), producing the 23
//! fibre-type records; plus the quotient-singularity resolution and blow-down
//! calculus they rest on.

use crate::dualgraph::{GraphAction, ReflectionAxis};
use crate::kodaira::{
    fibre_graph, Component, ComponentKind, FibreGraph, KodairaType, Point,
};
use crate::mhs::{self, CycleNCModel};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegenError {
    #[error("invalid cyclic quotient singularity (1/{r})({one},{a})", one = 1)]
    BadSingularity { r: u32, a: u32 },
    #[error("group order {0} on the fibre must be one of 1, 2, 3, 4, 6")]
    OrderOutOfRange(u64),
    #[error("configuration is excluded: no commutative action of that order preserves the marked points")]
    ExcludedConfiguration,
    #[error("datum is inconsistent: {0}")]
    InconsistentDatum(&'static str),
    #[error("reflection on an odd cycle cannot arise: the component count is even in the reflection case")]
    OddReflection,
    #[error("no contractible (-1)-component; the fibre is relatively minimal")]
    NothingToContract,
    #[error("terminal graph matches no cataloged fibre")]
    UnrecognizedFibre,
    #[error("germ fails the invariant Hodge-dimension gate")]
    InadmissibleGerm,
    #[error(transparent)]
    Mhs(#[from] mhs::MhsError),
}

// ---------------------------------------------------------------------------
// Quotient singularities and their resolution.

/// Cyclic quotient singularity (1/r)(1,a), 1 ≤ a < r, gcd(a,r) = 1 (r = 1 is
/// the smooth point). Du Val exactly when a = r − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientSingularity {
    pub r: u32,
    pub a: u32,
}

impl QuotientSingularity {
    pub fn new(r: u32, a: u32) -> Result<Self, DegenError> {
        let ok = r >= 1 && a >= 1 && a < r.max(2) && num_integer::gcd(r, a) == 1;
        if !ok {
            return Err(DegenError::BadSingularity { r, a });
        }
        Ok(QuotientSingularity { r, a })
    }

    pub fn is_du_val(&self) -> bool {
        self.a == self.r - 1
    }
}

/// Hirzebruch–Jung chain of the minimal resolution: self-intersections
/// [−b_1, ..., −b_k] from the ceiling continued-fraction expansion of r/a.
pub fn resolve_cyclic(s: QuotientSingularity) -> Vec<i64> {
    let mut chain = Vec::new();
    let (mut r, mut a) = (s.r as i64, s.a as i64);
    while a > 0 {
        let b = (r + a - 1) / a; // ceil(r/a)
        chain.push(-b);
        let next = b * a - r;
        r = a;
        a = next;
    }
    chain
}

// ---------------------------------------------------------------------------
// Blow-down calculus on fibre graphs.

/// Total intersection of component `comp` with component `e` accumulated
/// over the given points.
fn contact_with(points: &[Point], e: usize, comp: usize) -> u32 {
    points
        .iter()
        .map(|p| {
            if p.branches.contains(&e) {
                p.branches.iter().filter(|&&b| b == comp).count() as u32 * p.contact
            } else {
                0
            }
        })
        .sum()
}

/// Contract one rational (−1)-component: remove it, merge the points it lay
/// on, raise each neighbor's self-intersection by the square of its contact
/// with the contracted curve, and raise pairwise contacts accordingly (two
/// transverse neighbors become tangent, a tangent branch folds to a cusp).
pub fn blow_down_step(g: &FibreGraph) -> Result<FibreGraph, DegenError> {
    let e = g
        .components
        .iter()
        .position(|c| c.kind == ComponentKind::Rational && c.self_intersection == -1)
        .ok_or(DegenError::NothingToContract)?;

    let (on_e, off_e): (Vec<Point>, Vec<Point>) = g
        .points
        .iter()
        .cloned()
        .partition(|p| p.branches.contains(&e));
    if on_e.iter().any(|p| p.branches.iter().filter(|&&b| b == e).count() > 1) {
        // A node on the contracted curve never occurs in the catalog paths.
        return Err(DegenError::UnrecognizedFibre);
    }

    // Branches through the contracted curve, with their contact to it and
    // the point they came from (to preserve already-existing contacts).
    let mut merged: Vec<(usize, u32, usize)> = Vec::new(); // (comp, contact, src point)
    for (pi, p) in on_e.iter().enumerate() {
        for &b in p.branches.iter().filter(|&&b| b != e) {
            merged.push((b, p.contact, pi));
        }
    }

    let mut comps = g.components.clone();
    for (i, c) in comps.iter_mut().enumerate() {
        if i != e {
            let t = contact_with(&on_e, e, i) as i64;
            c.self_intersection += t * t;
        }
    }

    let mut points = off_e;
    match merged.len() {
        0 => {}
        1 => {
            let (b, t, _) = merged[0];
            // A single branch with contact ≥ 2 folds to a cusp-like point.
            if t >= 2 {
                points.push(Point { branches: vec![b], contact: t });
            }
        }
        _ => {
            // Pairwise contact after contraction: existing contact at a
            // shared source point plus the product of contacts with E.
            let mut pairwise: Vec<u32> = Vec::new();
            for i in 0..merged.len() {
                for j in (i + 1)..merged.len() {
                    let (bi, ti, pi) = merged[i];
                    let (bj, tj, pj) = merged[j];
                    let existing = if pi == pj && bi != bj { on_e[pi].contact } else { 0 };
                    pairwise.push(existing + ti * tj);
                }
            }
            let c0 = pairwise[0];
            if pairwise.iter().any(|&c| c != c0) {
                return Err(DegenError::UnrecognizedFibre);
            }
            points.push(Point {
                branches: merged.iter().map(|&(b, _, _)| b).collect(),
                contact: c0,
            });
        }
    }

    // Drop the contracted component and reindex.
    comps.remove(e);
    for p in &mut points {
        for b in &mut p.branches {
            if *b > e {
                *b -= 1;
            }
        }
    }
    Ok(FibreGraph { components: comps, points })
}

// ---------------------------------------------------------------------------
// Resolution of a marked quotient fibre and catalog matching.

/// A P¹ fibre of multiplicity `central_multiplicity` carrying marked cyclic
/// quotient points: each marker is a multisection of the given degree, every
/// sheet carrying a copy of the singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedFibre {
    pub central_multiplicity: u32,
    pub markers: Vec<(u32, QuotientSingularity)>,
}

/// Multiplicities along a Hirzebruch–Jung chain attached to a fibre of
/// multiplicity b: solved from F·E_i = 0 along the chain; the chain continuant
/// equals r, so each multiplicity is b/r times a continuant tail.
fn chain_multiplicities(b: u32, chain: &[i64], r: u32) -> Result<Vec<u32>, DegenError> {
    if b % r != 0 {
        return Err(DegenError::InconsistentDatum(
            "central multiplicity is not divisible by the singularity order",
        ));
    }
    let t = (b / r) as i64;
    let k = chain.len();
    // u_{k+1} = 0, u_k = 1, u_{i-1} = b_i·u_i − u_{i+1}; u_0 = r.
    let mut u = vec![0i64; k + 2];
    u[k] = 1;
    for i in (1..k).rev() {
        u[i] = (-chain[i]) * u[i + 1] - u[i + 2];
    }
    u[0] = (-chain[0]) * u[1] - u[2];
    debug_assert_eq!(u[0], r as i64);
    Ok((1..=k).map(|i| (t * u[i]) as u32).collect())
}

/// Resolve every marker into its exceptional chain, compute the balanced
/// multiplicities and the central self-intersection, then contract to a
/// relatively minimal fibre. The terminal graph must match a cataloged shape.
pub fn resolve_and_minimalize(marked: &MarkedFibre) -> Result<FibreGraph, DegenError> {
    let b = marked.central_multiplicity;
    let mut comps = vec![Component {
        multiplicity: b,
        self_intersection: 0, // fixed up below
        kind: ComponentKind::Rational,
    }];
    let mut points = Vec::new();
    let mut first_mult_sum: i64 = 0;
    for &(degree, sing) in &marked.markers {
        let chain = resolve_cyclic(sing);
        let mults = chain_multiplicities(b, &chain, sing.r)?;
        for _sheet in 0..degree {
            let base = comps.len();
            for (j, (&s, &m)) in chain.iter().zip(&mults).enumerate() {
                comps.push(Component {
                    multiplicity: m,
                    self_intersection: s,
                    kind: ComponentKind::Rational,
                });
                let prev = if j == 0 { 0 } else { base + j - 1 };
                points.push(Point::transverse(vec![prev, base + j]));
            }
            if !chain.is_empty() {
                first_mult_sum += mults[0] as i64;
            }
        }
    }
    if first_mult_sum % b as i64 != 0 {
        return Err(DegenError::InconsistentDatum(
            "fibre class does not balance against the exceptional chains",
        ));
    }
    comps[0].self_intersection = -(first_mult_sum / b as i64);
    let mut g = FibreGraph { components: comps, points };
    loop {
        match blow_down_step(&g) {
            Ok(next) => g = next,
            Err(DegenError::NothingToContract) => break,
            Err(e) => return Err(e),
        }
    }
    identify_fibre(&g)?;
    Ok(g)
}

/// Graph isomorphism by backtracking over components grouped by
/// (multiplicity, self-intersection, kind), comparing normalized point lists.
pub fn graphs_isomorphic(g1: &FibreGraph, g2: &FibreGraph) -> bool {
    let n = g1.components.len();
    if n != g2.components.len() || g1.points.len() != g2.points.len() {
        return false;
    }
    let sig = |c: &Component| (c.multiplicity, c.self_intersection, c.kind);
    let mut sig1: Vec<_> = g1.components.iter().map(sig).collect();
    let mut sig2: Vec<_> = g2.components.iter().map(sig).collect();
    {
        let mut a = sig1.clone();
        let mut b = sig2.clone();
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
    }
    sig1.truncate(n);
    sig2.truncate(n);

    let normalized = |g: &FibreGraph, perm: &[usize]| -> Vec<(Vec<usize>, u32)> {
        let mut pts: Vec<(Vec<usize>, u32)> = g
            .points
            .iter()
            .map(|p| {
                let mut b: Vec<usize> = p.branches.iter().map(|&x| perm[x]).collect();
                b.sort_unstable();
                (b, p.contact)
            })
            .collect();
        pts.sort();
        pts
    };
    let ident: Vec<usize> = (0..n).collect();
    let target = normalized(g2, &ident);

    fn backtrack(
        pos: usize,
        n: usize,
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
        sig1: &[(u32, i64, ComponentKind)],
        sig2: &[(u32, i64, ComponentKind)],
        g1: &FibreGraph,
        target: &Vec<(Vec<usize>, u32)>,
        normalized: &dyn Fn(&FibreGraph, &[usize]) -> Vec<(Vec<usize>, u32)>,
    ) -> bool {
        if pos == n {
            return normalized(g1, perm) == *target;
        }
        for cand in 0..n {
            if !used[cand] && sig2[cand] == sig1[pos] {
                used[cand] = true;
                perm[pos] = cand;
                if backtrack(pos + 1, n, used, perm, sig1, sig2, g1, target, normalized) {
                    return true;
                }
                used[cand] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    let mut perm = vec![0usize; n];
    backtrack(0, n, &mut used, &mut perm, &sig1, &sig2, g1, &target, &normalized)
}

/// Match a relatively minimal fibre graph against the Kodaira catalog.
pub fn identify_fibre(g: &FibreGraph) -> Result<KodairaType, DegenError> {
    let c = g.components.len() as u32;
    let mut candidates = vec![
        KodairaType::II,
        KodairaType::III,
        KodairaType::IV,
        KodairaType::IIStar,
        KodairaType::IIIStar,
        KodairaType::IVStar,
        KodairaType::I(c),
    ];
    if c >= 5 {
        candidates.push(KodairaType::IStar(c - 5));
    }
    if c == 1 {
        candidates.push(KodairaType::I(0));
        let l = g.components[0].multiplicity;
        if l > 1 {
            candidates.push(KodairaType::MultipleI0 { l });
        }
    }
    candidates
        .into_iter()
        .find(|&k| graphs_isomorphic(g, &fibre_graph(k)))
        .ok_or(DegenError::UnrecognizedFibre)
}

// ---------------------------------------------------------------------------
// Exclusion and torsion gates.

/// Does some commutative group of the given order act on the projective line
/// preserving a set of `marked_points` points? The abelian subgroups of the
/// line's automorphism group are the cyclic groups (orbit sizes: at most two
/// fixed points, all other orbits full size) and the Klein four-group (three
/// orbits of size two, the rest of size four); the marked set must be a
/// union of orbits.
pub fn exclusion_check(group_order: u64, marked_points: u32) -> bool {
    let k = marked_points as u64;
    let cyclic = |n: u64| -> bool {
        if n == 1 {
            return true;
        }
        (0..=2u64.min(k)).any(|fixed| (k - fixed) % n == 0)
    };
    let klein = || (0..=3u64).any(|a| 2 * a <= k && (k - 2 * a) % 4 == 0);
    cyclic(group_order) || (group_order == 4 && klein())
}

/// Multiplicity families ruled out by torsion of the canonical class of the
/// reduced fibre in the non-crepant resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonCrepantTag {
    II,
    III,
    IV,
    /// The degree-2 quotient of the IV configuration (three sections through
    /// an intermediate order-3 kernel).
    IvThree,
}

/// Candidate fibre multiplicities left open by the adjunction bookkeeping,
/// before the torsion contradiction is applied.
pub fn torsion_candidates(tag: NonCrepantTag) -> &'static [u32] {
    match tag {
        NonCrepantTag::II => &[1, 5],
        NonCrepantTag::III => &[1, 3],
        NonCrepantTag::IV => &[1, 2],
        NonCrepantTag::IvThree => &[1, 2],
    }
}

/// True only for multiplicity 1: the reduced fibre has trivial (or 2-torsion)
/// canonical class, which contradicts the l-torsion a multiplicity l > 1
/// would force.
pub fn torsion_exclusion(tag: NonCrepantTag, l: u32) -> bool {
    let _ = tag;
    l == 1
}

/// Coefficient of the reduced fibre in the canonical class of the base
/// change: K ~ (l−1)·F_red; trivial K forces l = 1.
pub fn canonical_multiplicity_relation(l: u32) -> u32 {
    l - 1
}

// ---------------------------------------------------------------------------
// Fibre type records (the 23 rows plus smooth and I_m).

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeName {
    Smooth,
    Im(u32),
    I0l(u32),
    IStar0(u8),
    IStarM { m: u32, variant: u8 },
    II,
    IIStar,
    IIIv(u8),
    IIIStarv(u8),
    IVv(u8),
    IVStarv(u8),
}

impl std::fmt::Display for TypeName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TypeName::Smooth => write!(f, "smooth"),
            TypeName::Im(m) => write!(f, "I_{m}"),
            TypeName::I0l(l) => write!(f, "I_0-{l}"),
            TypeName::IStar0(v) => write!(f, "I*_0-{v}"),
            TypeName::IStarM { m, variant } => write!(f, "I*_{m}-{variant}"),
            TypeName::II => write!(f, "II"),
            TypeName::IIStar => write!(f, "II*"),
            TypeName::IIIv(v) => write!(f, "III-{v}"),
            TypeName::IIIStarv(v) => write!(f, "III*-{v}"),
            TypeName::IVv(v) => write!(f, "IV-{v}"),
            TypeName::IVStarv(v) => write!(f, "IV*-{v}"),
        }
    }
}

impl std::str::FromStr for TypeName {
    type Err = DegenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = DegenError::InconsistentDatum("unknown type name");
        let parsed = match s {
            "smooth" => TypeName::Smooth,
            "II" => TypeName::II,
            "II*" => TypeName::IIStar,
            _ => {
                if let Some(rest) = s.strip_prefix("I*_") {
                    let (m, v) = rest.split_once('-').ok_or(bad.clone())?;
                    let m: u32 = m.parse().map_err(|_| bad.clone())?;
                    let v: u8 = v.parse().map_err(|_| bad.clone())?;
                    if m == 0 {
                        TypeName::IStar0(v)
                    } else {
                        TypeName::IStarM { m, variant: v }
                    }
                } else if let Some(rest) = s.strip_prefix("I_0-") {
                    TypeName::I0l(rest.parse().map_err(|_| bad.clone())?)
                } else if let Some(rest) = s.strip_prefix("I_") {
                    TypeName::Im(rest.parse().map_err(|_| bad.clone())?)
                } else if let Some(rest) = s.strip_prefix("III*-") {
                    TypeName::IIIStarv(rest.parse().map_err(|_| bad.clone())?)
                } else if let Some(rest) = s.strip_prefix("III-") {
                    TypeName::IIIv(rest.parse().map_err(|_| bad.clone())?)
                } else if let Some(rest) = s.strip_prefix("IV*-") {
                    TypeName::IVStarv(rest.parse().map_err(|_| bad.clone())?)
                } else if let Some(rest) = s.strip_prefix("IV-") {
                    TypeName::IVv(rest.parse().map_err(|_| bad.clone())?)
                } else {
                    return Err(bad);
                }
            }
        };
        // Round-trip sanity: only names with records parse.
        record_for(parsed)?;
        Ok(parsed)
    }
}

/// One classification row: name, multiplicity vector (component labels
/// E_0, E_1, ... in order), the Kodaira fibre after étale base change, the
/// degree of that base change, and whether local sections exist. Reflection
/// rows additionally carry the axis that distinguishes the two printed-alike
/// variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreTypeRecord {
    pub name: TypeName,
    pub multiplicities: Vec<u32>,
    pub kodaira_fibre: KodairaType,
    pub degree: u32,
    pub local_section: bool,
    pub axis: Option<ReflectionAxis>,
}

fn record(
    name: TypeName,
    multiplicities: Vec<u32>,
    kodaira_fibre: KodairaType,
    degree: u32,
    local_section: bool,
) -> FibreTypeRecord {
    FibreTypeRecord { name, multiplicities, kodaira_fibre, degree, local_section, axis: None }
}

/// The record for any supported type name.
pub fn record_for(name: TypeName) -> Result<FibreTypeRecord, DegenError> {
    use KodairaType as K;
    use TypeName as T;
    let rec = match name {
        T::Smooth => record(name, vec![1], K::I(0), 1, true),
        T::Im(m) if m >= 1 => record(name, vec![1; m as usize], K::I(m), 1, true),
        T::I0l(l) if matches!(l, 2 | 3 | 4 | 6) => {
            record(name, vec![l], K::I(0), l, false)
        }
        T::IStar0(0) => record(name, vec![2, 1, 1, 1, 1], K::IStar(0), 1, true),
        T::IStar0(2) => record(name, vec![2, 1, 1], K::IStar(0), 2, true),
        T::IStar0(4) => record(name, vec![2, 1], K::IStar(0), 4, true),
        T::IStar0(1) => record(name, vec![4, 2, 2, 2], K::IStar(0), 2, false),
        T::IStar0(5) => record(name, vec![4, 2, 2], K::IStar(0), 4, false),
        T::IStar0(3) => record(name, vec![6, 3, 3], K::IStar(0), 3, false),
        T::IStarM { m, variant: 0 } if m >= 1 => {
            let mut v = vec![2; m as usize + 1];
            v.extend([1, 1, 1, 1]);
            record(name, v, K::IStar(m), 1, true)
        }
        T::IStarM { m, variant: 1 } if m >= 1 => {
            let mut v = vec![2; m as usize + 1];
            v.extend([1, 1]);
            record(name, v, K::IStar(m), 2, true)
        }
        T::IStarM { m, variant: 2 } if m >= 1 => {
            let mut r = record(name, vec![2; m as usize + 1], K::I(2 * m), 4, false);
            r.axis = Some(ReflectionAxis::VertexVertex);
            r
        }
        T::IStarM { m, variant: 3 } if m >= 1 => {
            let mut r = record(name, vec![2; m as usize], K::I(2 * m), 4, false);
            r.axis = Some(ReflectionAxis::EdgeEdge);
            r
        }
        T::II => record(name, vec![1], K::II, 1, true),
        T::IIStar => record(name, vec![6, 3, 4, 2, 5, 4, 3, 2, 1], K::IIStar, 1, true),
        T::IIIv(0) => record(name, vec![1, 1], K::III, 1, true),
        T::IIIv(1) => record(name, vec![1], K::III, 2, true),
        T::IIIStarv(0) => record(name, vec![4, 3, 3, 2, 2, 1, 1, 2], K::IIIStar, 1, true),
        T::IIIStarv(1) => record(name, vec![4, 3, 2, 1, 2], K::IIIStar, 2, true),
        T::IVv(0) => record(name, vec![1, 1, 1], K::IV, 1, true),
        T::IVv(1) => record(name, vec![1], K::IV, 3, true),
        T::IVv(2) => record(name, vec![2, 2], K::IV, 2, false),
        T::IVStarv(0) => record(name, vec![3, 2, 2, 2, 1, 1, 1], K::IVStar, 1, true),
        T::IVStarv(1) => record(name, vec![3, 2, 1], K::IVStar, 3, true),
        T::IVStarv(2) => record(name, vec![6, 4, 4, 2, 2], K::IVStar, 2, false),
        _ => return Err(DegenError::InconsistentDatum("unknown type name")),
    };
    Ok(rec)
}

// ---------------------------------------------------------------------------
// Classification inputs.

/// Smooth-branch datum: the Galois data of the finite quotient. `order_hbar`
/// is the order of the faithful quotient acting on the fibre, and
/// `order_hbar_prime` the order of the kernel of its action on the abelian
/// base direction; the fixed locus lists multisections carrying cyclic
/// quotient singularities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothCaseDatum {
    pub n: u32,
    pub order_h: u64,
    pub order_hbar: u64,
    pub order_hbar_prime: u64,
    pub fixed_locus: Vec<(u32, QuotientSingularity)>,
}

/// The shape of the fixed locus on the components preserved by a reflection
/// with fixed points: four disjoint sections or two 2-sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedLocusKind {
    Sections,
    TwoSection,
}

/// First-order-branch datum: the cycle model and the induced dihedral action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderDatum {
    pub n: u32,
    pub m: usize,
    pub action: GraphAction,
    pub has_fixed_points: bool,
    pub fixed_locus_kind: Option<FixedLocusKind>,
    pub model: CycleNCModel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermDatum {
    Smooth(SmoothCaseDatum),
    FirstOrder(FirstOrderDatum),
}

// ---------------------------------------------------------------------------
// Table lookup data for the smooth branch.

/// Case split on the kernel order: trivial kernel (free action), full kernel,
/// or a proper intermediate kernel.
fn normalize_locus(locus: &[(u32, QuotientSingularity)]) -> Vec<(u32, u32, u32)> {
    let mut v: Vec<(u32, u32, u32)> = locus.iter().map(|&(d, s)| (d, s.r, s.a)).collect();
    v.sort_unstable();
    v
}

struct FullKernelRow {
    order: u64,
    locus: &'static [(u32, u32, u32)],
    name: TypeName,
}

/// The full-kernel rows: (order of the fibre action, fixed-locus
/// multisections with their singularities) → type name.
const FULL_KERNEL_ROWS: &[FullKernelRow] = &[
    FullKernelRow {
        order: 2,
        locus: &[(1, 2, 1), (1, 2, 1), (1, 2, 1), (1, 2, 1)],
        name: TypeName::IStar0(0),
    },
    FullKernelRow { order: 2, locus: &[(2, 2, 1), (2, 2, 1)], name: TypeName::IStar0(2) },
    FullKernelRow { order: 2, locus: &[(4, 2, 1)], name: TypeName::IStar0(4) },
    FullKernelRow {
        order: 6,
        locus: &[(1, 2, 1), (1, 3, 1), (1, 6, 1)],
        name: TypeName::II,
    },
    FullKernelRow {
        order: 6,
        locus: &[(1, 2, 1), (1, 3, 2), (1, 6, 5)],
        name: TypeName::IIStar,
    },
    FullKernelRow {
        order: 4,
        locus: &[(1, 2, 1), (1, 4, 1), (1, 4, 1)],
        name: TypeName::IIIv(0),
    },
    FullKernelRow { order: 4, locus: &[(1, 2, 1), (2, 4, 1)], name: TypeName::IIIv(1) },
    FullKernelRow {
        order: 4,
        locus: &[(1, 2, 1), (1, 4, 3), (1, 4, 3)],
        name: TypeName::IIIStarv(0),
    },
    FullKernelRow { order: 4, locus: &[(1, 2, 1), (2, 4, 3)], name: TypeName::IIIStarv(1) },
    FullKernelRow {
        order: 3,
        locus: &[(1, 3, 1), (1, 3, 1), (1, 3, 1)],
        name: TypeName::IVv(0),
    },
    FullKernelRow { order: 3, locus: &[(3, 3, 1)], name: TypeName::IVv(1) },
    FullKernelRow {
        order: 3,
        locus: &[(1, 3, 2), (1, 3, 2), (1, 3, 2)],
        name: TypeName::IVStarv(0),
    },
    FullKernelRow { order: 3, locus: &[(3, 3, 2)], name: TypeName::IVStarv(1) },
];

struct PartialKernelRow {
    order: u64,
    kernel_order: u64,
    locus: &'static [(u32, u32, u32)],
    name: TypeName,
}

/// The intermediate-kernel rows that survive the exclusion gate; the locus is
/// the fixed locus of the kernel.
const PARTIAL_KERNEL_ROWS: &[PartialKernelRow] = &[
    PartialKernelRow {
        order: 4,
        kernel_order: 2,
        locus: &[(1, 2, 1), (1, 2, 1), (1, 2, 1), (1, 2, 1)],
        name: TypeName::IStar0(1),
    },
    PartialKernelRow {
        order: 4,
        kernel_order: 2,
        locus: &[(2, 2, 1), (2, 2, 1)],
        name: TypeName::IStar0(5),
    },
    PartialKernelRow {
        order: 6,
        kernel_order: 2,
        locus: &[(1, 2, 1), (1, 2, 1), (1, 2, 1), (1, 2, 1)],
        name: TypeName::IStar0(3),
    },
    PartialKernelRow {
        order: 6,
        kernel_order: 3,
        locus: &[(1, 3, 1), (1, 3, 1), (1, 3, 1)],
        name: TypeName::IVv(2),
    },
    PartialKernelRow {
        order: 6,
        kernel_order: 3,
        locus: &[(1, 3, 2), (1, 3, 2), (1, 3, 2)],
        name: TypeName::IVStarv(2),
    },
];

// ---------------------------------------------------------------------------
// The two branch classifiers.

/// Classify a finite-monodromy germ: case split on the kernel order, table
/// lookup, exclusion gate, and a resolution cross-check that the quotient
/// configuration really contracts to the recorded fibre shape.
pub fn classify_smooth(d: &SmoothCaseDatum) -> Result<FibreTypeRecord, DegenError> {
    if !matches!(d.order_hbar, 1 | 2 | 3 | 4 | 6) {
        return Err(DegenError::OrderOutOfRange(d.order_hbar));
    }
    if d.order_hbar_prime == 0
        || d.order_hbar % d.order_hbar_prime != 0
        || d.order_h % d.order_hbar != 0
    {
        return Err(DegenError::InconsistentDatum(
            "kernel order must divide the fibre-action order, which must divide the group order",
        ));
    }
    if d.order_hbar_prime == 1 {
        // Free action on the fibre: a multiple smooth fibre.
        if !d.fixed_locus.is_empty() {
            return Err(DegenError::InconsistentDatum(
                "a free fibre action has empty fixed locus",
            ));
        }
        return record_for(if d.order_hbar == 1 {
            TypeName::Smooth
        } else {
            TypeName::I0l(d.order_hbar as u32)
        });
    }
    let locus = normalize_locus(&d.fixed_locus);
    if d.order_hbar_prime == d.order_hbar {
        let row = FULL_KERNEL_ROWS
            .iter()
            .find(|r| r.order == d.order_hbar && r.locus == locus.as_slice())
            .ok_or(DegenError::InconsistentDatum(
                "fixed locus matches no full-kernel configuration",
            ))?;
        let resolved = resolve_and_minimalize(&MarkedFibre {
            central_multiplicity: d.order_hbar as u32,
            markers: d.fixed_locus.clone(),
        })?;
        let rec = record_for(row.name)?;
        if identify_fibre(&resolved)? != rec.kodaira_fibre {
            return Err(DegenError::UnrecognizedFibre);
        }
        return Ok(rec);
    }
    // Intermediate kernel: the residual group acts on the quotient line.
    let residual = d.order_hbar / d.order_hbar_prime;
    let sheet_lcm = d
        .fixed_locus
        .iter()
        .map(|&(deg, _)| deg as u64)
        .fold(1, num_integer::lcm);
    let degree = residual * sheet_lcm;
    let marked: u32 = d.fixed_locus.iter().map(|&(deg, _)| deg).sum();
    if !exclusion_check(degree, marked) {
        return Err(DegenError::ExcludedConfiguration);
    }
    let row = PARTIAL_KERNEL_ROWS
        .iter()
        .find(|r| {
            r.order == d.order_hbar
                && r.kernel_order == d.order_hbar_prime
                && r.locus == locus.as_slice()
        })
        .ok_or(DegenError::InconsistentDatum(
            "fixed locus matches no intermediate-kernel configuration",
        ))?;
    // The kernel quotient must contract to the reduced shape of the record.
    let resolved = resolve_and_minimalize(&MarkedFibre {
        central_multiplicity: d.order_hbar_prime as u32,
        markers: d.fixed_locus.clone(),
    })?;
    let rec = record_for(row.name)?;
    let reduced_target = match rec.kodaira_fibre {
        KodairaType::I(m) if rec.name == TypeName::IStar0(3) => KodairaType::I(m),
        other => other,
    };
    if identify_fibre(&resolved)? != reduced_target {
        return Err(DegenError::UnrecognizedFibre);
    }
    Ok(rec)
}

/// Classify a first-order germ: the Hodge gate, then the rotation/reflection
/// dichotomy on the cycle.
pub fn classify_first_order(d: &FirstOrderDatum) -> Result<FibreTypeRecord, DegenError> {
    if d.model.m != d.m {
        return Err(DegenError::InconsistentDatum(
            "cycle length of the model disagrees with the datum",
        ));
    }
    if d.model.abelian_dim + 1 != d.n as usize {
        return Err(DegenError::InconsistentDatum(
            "abelian dimension must be one less than the base dimension",
        ));
    }
    // Condition (4): the circuit acts trivially on H^{0,1}.
    if mhs::h01(&d.model)? != d.n as usize - 1 {
        return Err(DegenError::InadmissibleGerm);
    }
    match d.action {
        GraphAction::Rotation { shift } => {
            if d.has_fixed_points {
                return Err(DegenError::InconsistentDatum(
                    "a rotation acts without fixed points",
                ));
            }
            if shift % d.m == 0 {
                return Err(DegenError::InconsistentDatum("trivial rotation"));
            }
            let quotient = crate::dualgraph::quotient_rotation(d.m, shift)
                .map_err(|_| DegenError::InconsistentDatum("trivial rotation"))?;
            record_for(TypeName::Im(quotient.length as u32))
        }
        GraphAction::Reflection { axis } => {
            if d.m % 2 != 0 {
                return Err(DegenError::OddReflection);
            }
            let q = (d.m / 2) as u32;
            if q == 0 {
                return Err(DegenError::InconsistentDatum("cycle is too short"));
            }
            if d.has_fixed_points {
                if axis != ReflectionAxis::VertexVertex {
                    return Err(DegenError::InconsistentDatum(
                        "a reflection with fixed points preserves two components",
                    ));
                }
                match d.fixed_locus_kind {
                    Some(FixedLocusKind::Sections) => {
                        record_for(TypeName::IStarM { m: q, variant: 0 })
                    }
                    Some(FixedLocusKind::TwoSection) => {
                        record_for(TypeName::IStarM { m: q, variant: 1 })
                    }
                    None => Err(DegenError::InconsistentDatum(
                        "fixed-point reflections need the fixed-locus shape",
                    )),
                }
            } else {
                match axis {
                    ReflectionAxis::VertexVertex => {
                        record_for(TypeName::IStarM { m: q, variant: 2 })
                    }
                    ReflectionAxis::EdgeEdge => {
                        record_for(TypeName::IStarM { m: q, variant: 3 })
                    }
                    ReflectionAxis::VertexEdge => Err(DegenError::OddReflection),
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Branch dispatch.

pub trait BranchClassifier: Sync {
    fn id(&self) -> &'static str;
    fn applies(&self, d: &GermDatum) -> bool;
    fn classify(&self, d: &GermDatum) -> Result<FibreTypeRecord, DegenError>;
}

struct SmoothBranch;
struct FirstOrderBranch;

impl BranchClassifier for SmoothBranch {
    fn id(&self) -> &'static str {
        "smooth"
    }
    fn applies(&self, d: &GermDatum) -> bool {
        matches!(d, GermDatum::Smooth(_))
    }
    fn classify(&self, d: &GermDatum) -> Result<FibreTypeRecord, DegenError> {
        match d {
            GermDatum::Smooth(s) => classify_smooth(s),
            _ => Err(DegenError::InconsistentDatum("wrong branch")),
        }
    }
}

impl BranchClassifier for FirstOrderBranch {
    fn id(&self) -> &'static str {
        "first-order"
    }
    fn applies(&self, d: &GermDatum) -> bool {
        matches!(d, GermDatum::FirstOrder(_))
    }
    fn classify(&self, d: &GermDatum) -> Result<FibreTypeRecord, DegenError> {
        match d {
            GermDatum::FirstOrder(f) => classify_first_order(f),
            _ => Err(DegenError::InconsistentDatum("wrong branch")),
        }
    }
}

static SMOOTH_BRANCH: SmoothBranch = SmoothBranch;
static FIRST_ORDER_BRANCH: FirstOrderBranch = FirstOrderBranch;

pub fn branch_classifiers() -> &'static [&'static dyn BranchClassifier] {
    static REGISTRY: [&dyn BranchClassifier; 2] = [&SMOOTH_BRANCH, &FIRST_ORDER_BRANCH];
    &REGISTRY
}

/// Classify a germ by dispatching to the branch its payload selects.
pub fn classify(d: &GermDatum) -> Result<FibreTypeRecord, DegenError> {
    branch_classifiers()
        .iter()
        .find(|b| b.applies(d))
        .expect("every payload has a branch")
        .classify(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sing(r: u32, a: u32) -> QuotientSingularity {
        QuotientSingularity::new(r, a).unwrap()
    }

    #[test]
    fn hirzebruch_jung_chains() {
        assert_eq!(resolve_cyclic(sing(2, 1)), vec![-2]);
        assert_eq!(resolve_cyclic(sing(6, 5)), vec![-2, -2, -2, -2, -2]);
        assert_eq!(resolve_cyclic(sing(6, 1)), vec![-6]);
        assert_eq!(resolve_cyclic(sing(4, 3)), vec![-2, -2, -2]);
        assert_eq!(resolve_cyclic(sing(3, 1)), vec![-3]);
        assert_eq!(resolve_cyclic(sing(5, 3)), vec![-2, -3]);
    }

    #[test]
    fn hj_oracle_reconstructs() {
        // Independent check: the chain is the ceiling continued fraction,
        // so evaluating b_1 - 1/(b_2 - 1/(...)) returns r/a, with all b >= 2.
        for r in 2..=12u32 {
            for a in 1..r {
                if num_integer::gcd(r, a) != 1 {
                    continue;
                }
                let chain = resolve_cyclic(sing(r, a));
                assert!(chain.iter().all(|&b| b <= -2));
                let mut num = 1i64;
                let mut den = 0i64;
                for &b in chain.iter().rev() {
                    let (n2, d2) = (-b * num - den, num);
                    num = n2;
                    den = d2;
                }
                assert_eq!((num, den), (r as i64, a as i64), "r={r} a={a}");
            }
        }
    }

    #[test]
    fn du_val_chains_are_minus_two() {
        for r in 2..=12 {
            let chain = resolve_cyclic(sing(r, r - 1));
            assert_eq!(chain, vec![-2; (r - 1) as usize]);
        }
    }

    fn marked(b: u32, markers: &[(u32, (u32, u32))]) -> MarkedFibre {
        MarkedFibre {
            central_multiplicity: b,
            markers: markers.iter().map(|&(d, (r, a))| (d, sing(r, a))).collect(),
        }
    }

    #[test]
    fn resolve_targets() {
        let cases: Vec<(MarkedFibre, KodairaType)> = vec![
            (
                marked(2, &[(1, (2, 1)), (1, (2, 1)), (1, (2, 1)), (1, (2, 1))]),
                KodairaType::IStar(0),
            ),
            (marked(6, &[(1, (6, 1)), (1, (3, 1)), (1, (2, 1))]), KodairaType::II),
            (marked(6, &[(1, (6, 5)), (1, (3, 2)), (1, (2, 1))]), KodairaType::IIStar),
            (marked(4, &[(1, (4, 1)), (1, (4, 1)), (1, (2, 1))]), KodairaType::III),
            (marked(4, &[(1, (4, 3)), (1, (4, 3)), (1, (2, 1))]), KodairaType::IIIStar),
            (marked(3, &[(1, (3, 1)), (1, (3, 1)), (1, (3, 1))]), KodairaType::IV),
            (marked(3, &[(1, (3, 2)), (1, (3, 2)), (1, (3, 2))]), KodairaType::IVStar),
            (marked(2, &[(2, (2, 1)), (2, (2, 1))]), KodairaType::IStar(0)),
            (marked(2, &[(4, (2, 1))]), KodairaType::IStar(0)),
            (marked(4, &[(1, (2, 1)), (2, (4, 1))]), KodairaType::III),
            (marked(3, &[(3, (3, 1))]), KodairaType::IV),
        ];
        for (m, want) in cases {
            let g = resolve_and_minimalize(&m).unwrap();
            assert_eq!(identify_fibre(&g).unwrap(), want, "{m:?}");
            assert!(crate::kodaira::kernel_is_multiplicity_vector(&g));
        }
    }

    #[test]
    fn blow_down_minimal_graph_is_terminal() {
        let g = fibre_graph(KodairaType::IStar(0));
        assert_eq!(blow_down_step(&g), Err(DegenError::NothingToContract));
    }

    #[test]
    fn blow_down_chain_example() {
        // (-2)—(-1)—(-2), multiplicities (1,1,1): contracting the middle
        // yields two (-1)-curves through one point.
        let g = FibreGraph {
            components: vec![
                Component { multiplicity: 1, self_intersection: -2, kind: ComponentKind::Rational },
                Component { multiplicity: 1, self_intersection: -1, kind: ComponentKind::Rational },
                Component { multiplicity: 1, self_intersection: -2, kind: ComponentKind::Rational },
            ],
            points: vec![Point::transverse(vec![0, 1]), Point::transverse(vec![1, 2])],
        };
        let h = blow_down_step(&g).unwrap();
        assert_eq!(h.components.len(), 2);
        assert!(h.components.iter().all(|c| c.self_intersection == -1));
        assert_eq!(h.points, vec![Point::transverse(vec![0, 1])]);
    }

    #[test]
    fn exclusion_small_orders() {
        assert!(exclusion_check(1, 3));
        assert!(exclusion_check(2, 4));
        assert!(exclusion_check(2, 3));
        assert!(exclusion_check(3, 3));
        assert!(exclusion_check(3, 4));
        assert!(exclusion_check(4, 4));
        assert!(!exclusion_check(4, 3));
        for order in 5..=48 {
            assert!(!exclusion_check(order, 3), "order {order}");
            assert!(!exclusion_check(order, 4), "order {order}");
        }
        assert!(!exclusion_check(8, 4));
        assert!(!exclusion_check(12, 3));
    }

    #[test]
    fn torsion_gates() {
        assert!(!torsion_exclusion(NonCrepantTag::II, 5));
        assert!(torsion_exclusion(NonCrepantTag::II, 1));
        assert!(!torsion_exclusion(NonCrepantTag::IvThree, 2));
        assert_eq!(torsion_candidates(NonCrepantTag::II), &[1, 5]);
        assert_eq!(canonical_multiplicity_relation(3), 2);
        assert_eq!(canonical_multiplicity_relation(1), 0);
    }

    #[test]
    fn smooth_branch_examples() {
        // Four degree-1 sections of (1/2)(1,1) with full kernel.
        let d = SmoothCaseDatum {
            n: 2,
            order_h: 2,
            order_hbar: 2,
            order_hbar_prime: 2,
            fixed_locus: vec![(1, sing(2, 1)); 4],
        };
        let rec = classify_smooth(&d).unwrap();
        assert_eq!(rec.name, TypeName::IStar0(0));
        assert_eq!(rec.degree, 1);

        let free = SmoothCaseDatum {
            n: 2,
            order_h: 3,
            order_hbar: 3,
            order_hbar_prime: 1,
            fixed_locus: vec![],
        };
        let rec = classify_smooth(&free).unwrap();
        assert_eq!(rec.name, TypeName::I0l(3));
        assert_eq!(rec.degree, 3);
        assert!(!rec.local_section);

        let istar05 = SmoothCaseDatum {
            n: 2,
            order_h: 8,
            order_hbar: 4,
            order_hbar_prime: 2,
            fixed_locus: vec![(2, sing(2, 1)); 2],
        };
        let rec = classify_smooth(&istar05).unwrap();
        assert_eq!(rec.name, TypeName::IStar0(5));
        assert_eq!(rec.degree, 4);
        assert_eq!(rec.multiplicities, vec![4, 2, 2]);
    }

    #[test]
    fn smooth_branch_exclusions() {
        // A 4-section fixed by an intermediate kernel of index 2: degree 8.
        let d = SmoothCaseDatum {
            n: 2,
            order_h: 8,
            order_hbar: 4,
            order_hbar_prime: 2,
            fixed_locus: vec![(4, sing(2, 1))],
        };
        assert_eq!(classify_smooth(&d), Err(DegenError::ExcludedConfiguration));
        // Index-3 residual on two 2-sections: degree 6.
        let d = SmoothCaseDatum {
            n: 2,
            order_h: 12,
            order_hbar: 6,
            order_hbar_prime: 2,
            fixed_locus: vec![(2, sing(2, 1)); 2],
        };
        assert_eq!(classify_smooth(&d), Err(DegenError::ExcludedConfiguration));
        // Orders outside {1,2,3,4,6} are rejected outright.
        let d = SmoothCaseDatum {
            n: 2,
            order_h: 5,
            order_hbar: 5,
            order_hbar_prime: 5,
            fixed_locus: vec![],
        };
        assert_eq!(classify_smooth(&d), Err(DegenError::OrderOutOfRange(5)));
    }

    #[test]
    fn first_order_branch_examples() {
        let rot = FirstOrderDatum {
            n: 2,
            m: 6,
            action: GraphAction::Rotation { shift: 2 },
            has_fixed_points: false,
            fixed_locus_kind: None,
            model: CycleNCModel::translation(6, 1),
        };
        let rec = classify_first_order(&rot).unwrap();
        assert_eq!(rec.name, TypeName::Im(2));
        assert_eq!(rec.kodaira_fibre, KodairaType::I(2));

        let refl = FirstOrderDatum {
            n: 2,
            m: 2,
            action: GraphAction::Reflection { axis: ReflectionAxis::VertexVertex },
            has_fixed_points: true,
            fixed_locus_kind: Some(FixedLocusKind::Sections),
            model: CycleNCModel::translation(2, 1),
        };
        let rec = classify_first_order(&refl).unwrap();
        assert_eq!(rec.name, TypeName::IStarM { m: 1, variant: 0 });

        let ee = FirstOrderDatum {
            n: 2,
            m: 8,
            action: GraphAction::Reflection { axis: ReflectionAxis::EdgeEdge },
            has_fixed_points: false,
            fixed_locus_kind: None,
            model: CycleNCModel::translation(8, 1),
        };
        let rec = classify_first_order(&ee).unwrap();
        assert_eq!(rec.name, TypeName::IStarM { m: 4, variant: 3 });
        assert_eq!(rec.kodaira_fibre, KodairaType::I(8));
        assert_eq!(rec.degree, 4);
        assert_eq!(rec.multiplicities, vec![2; 4]);
    }

    #[test]
    fn first_order_gates() {
        let odd = FirstOrderDatum {
            n: 2,
            m: 5,
            action: GraphAction::Reflection { axis: ReflectionAxis::VertexEdge },
            has_fixed_points: false,
            fixed_locus_kind: None,
            model: CycleNCModel::translation(5, 1),
        };
        assert_eq!(classify_first_order(&odd), Err(DegenError::OddReflection));

        let bad_gluing = FirstOrderDatum {
            n: 2,
            m: 4,
            action: GraphAction::Rotation { shift: 1 },
            has_fixed_points: false,
            fixed_locus_kind: None,
            model: CycleNCModel::new(
                4,
                1,
                crate::intmat::int_matrix(&[&[-1, 0], &[0, -1]]),
                false,
            )
            .unwrap(),
        };
        assert_eq!(classify_first_order(&bad_gluing), Err(DegenError::InadmissibleGerm));
    }

    #[test]
    fn branch_registry_dispatch() {
        let d = GermDatum::FirstOrder(FirstOrderDatum {
            n: 2,
            m: 6,
            action: GraphAction::Rotation { shift: 3 },
            has_fixed_points: false,
            fixed_locus_kind: None,
            model: CycleNCModel::translation(6, 1),
        });
        assert_eq!(classify(&d).unwrap().name, TypeName::Im(3));
        assert_eq!(branch_classifiers().len(), 2);
    }
}
