//! Catalog and recognition of Kodaira singular-fibre types of minimal elliptic
//! fibrations: SL(2,Z) monodromy classification, fibre graphs, Euler numbers
//! and log-canonical thresholds.
//!
//! Self-intersection numbers are the elliptic-surface-slice values consumed by
//! the blow-down calculus in `degeneration`; multiple smooth fibres are the
//! smooth graph with its multiplicity scaled, not a separate shape.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KodairaError {
    #[error("matrix is not in SL(2,Z)")]
    NotUnimodular,
    #[error("matrix is not quasi-unipotent")]
    NotQuasiUnipotent,
    #[error("matrix is not conjugate to any fibre monodromy representative")]
    NotElliptic,
    #[error("graph is not a supported fibre configuration")]
    UnsupportedGraph,
    #[error("no conjugacy decider named {0:?} is registered")]
    UnknownDecider(String),
}

/// Kodaira type of a singular fibre of a minimal elliptic fibration.
/// `I(0)` is the smooth fibre; `MultipleI0` is the multiple smooth fibre
/// of multiplicity `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KodairaType {
    I(u32),
    MultipleI0 { l: u32 },
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl std::fmt::Display for KodairaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KodairaType::I(m) => write!(f, "I_{m}"),
            KodairaType::MultipleI0 { l } => write!(f, "{l}I_0"),
            KodairaType::IStar(m) => write!(f, "I*_{m}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IIStar => write!(f, "II*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IVStar => write!(f, "IV*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    Rational,
    Abelian,
    P1Bundle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub multiplicity: u32,
    pub self_intersection: i64,
    pub kind: ComponentKind,
}

/// A point of the fibre where branches of components meet. `branches` lists
/// component indices, one entry per local branch (a node of an irreducible
/// curve lists its component twice). `contact` is the pairwise contact order:
/// 1 for transverse, 2 for a tangency — or, with a single branch, a cusp.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub branches: Vec<usize>,
    pub contact: u32,
}

impl Point {
    pub fn transverse(branches: Vec<usize>) -> Self {
        Point { branches, contact: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreGraph {
    pub components: Vec<Component>,
    pub points: Vec<Point>,
}

impl FibreGraph {
    /// Simple normal crossings: every point joins two distinct smooth
    /// branches transversally.
    pub fn is_snc(&self) -> bool {
        self.points.iter().all(|p| {
            p.contact == 1 && p.branches.len() == 2 && p.branches[0] != p.branches[1]
        })
    }

    /// Intersection edges aggregated per unordered component pair:
    /// (a, b, tangency_order, count).
    pub fn edges(&self) -> Vec<(usize, usize, u32, u32)> {
        let mut out: Vec<(usize, usize, u32, u32)> = Vec::new();
        for p in &self.points {
            for i in 0..p.branches.len() {
                for j in (i + 1)..p.branches.len() {
                    let (a, b) = (
                        p.branches[i].min(p.branches[j]),
                        p.branches[i].max(p.branches[j]),
                    );
                    if let Some(e) = out
                        .iter_mut()
                        .find(|e| e.0 == a && e.1 == b && e.2 == p.contact)
                    {
                        e.3 += 1;
                    } else {
                        out.push((a, b, p.contact, 1));
                    }
                }
            }
        }
        out
    }

    /// Multiply every multiplicity by `l` (multiple-fibre scaling).
    pub fn scaled(&self, l: u32) -> FibreGraph {
        let mut g = self.clone();
        for c in &mut g.components {
            c.multiplicity *= l;
        }
        g
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.multiplicity).collect()
    }

    /// Intersection matrix: diagonal from self-intersections, off-diagonal
    /// entries sum contact orders over shared points.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.components.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, c) in self.components.iter().enumerate() {
            m[i][i] = c.self_intersection;
        }
        for p in &self.points {
            for i in 0..p.branches.len() {
                for j in (i + 1)..p.branches.len() {
                    let (a, b) = (p.branches[i], p.branches[j]);
                    if a != b {
                        m[a][b] += p.contact as i64;
                        m[b][a] += p.contact as i64;
                    }
                }
            }
        }
        m
    }
}

fn rational_comp(multiplicity: u32, self_intersection: i64) -> Component {
    Component {
        multiplicity,
        self_intersection,
        kind: ComponentKind::Rational,
    }
}

/// The standard component/multiplicity/intersection graph of a Kodaira fibre.
/// Tree shapes are listed in the order their multiplicity vectors are usually
/// printed (II*: 6,3,4,2,5,4,3,2,1 with the 6 central).
pub fn fibre_graph(k: KodairaType) -> FibreGraph {
    let chain =
        |mults: &[(u32, i64)], edges: &[(usize, usize)]| -> FibreGraph {
            FibreGraph {
                components: mults.iter().map(|&(m, s)| rational_comp(m, s)).collect(),
                points: edges
                    .iter()
                    .map(|&(a, b)| Point::transverse(vec![a, b]))
                    .collect(),
            }
        };
    match k {
        KodairaType::I(0) => FibreGraph {
            components: vec![Component {
                multiplicity: 1,
                self_intersection: 0,
                kind: ComponentKind::Abelian,
            }],
            points: vec![],
        },
        KodairaType::MultipleI0 { l } => fibre_graph(KodairaType::I(0)).scaled(l),
        KodairaType::I(1) => FibreGraph {
            components: vec![rational_comp(1, 0)],
            points: vec![Point::transverse(vec![0, 0])],
        },
        KodairaType::I(m) => {
            let m = m as usize;
            FibreGraph {
                components: (0..m).map(|_| rational_comp(1, -2)).collect(),
                points: (0..m)
                    .map(|i| Point::transverse(vec![i, (i + 1) % m]))
                    .collect(),
            }
        }
        KodairaType::IStar(m) => {
            let m = m as usize;
            // Components 0..=m: the multiplicity-2 central chain; m+1..m+4: tails.
            let mut comps: Vec<Component> = (0..=m).map(|_| rational_comp(2, -2)).collect();
            comps.extend((0..4).map(|_| rational_comp(1, -2)));
            let mut points: Vec<Point> =
                (0..m).map(|i| Point::transverse(vec![i, i + 1])).collect();
            points.push(Point::transverse(vec![m + 1, 0]));
            points.push(Point::transverse(vec![m + 2, 0]));
            points.push(Point::transverse(vec![m + 3, m]));
            points.push(Point::transverse(vec![m + 4, m]));
            FibreGraph { components: comps, points }
        }
        KodairaType::II => FibreGraph {
            components: vec![rational_comp(1, 0)],
            points: vec![Point { branches: vec![0], contact: 2 }],
        },
        KodairaType::III => FibreGraph {
            components: vec![rational_comp(1, -2), rational_comp(1, -2)],
            points: vec![Point { branches: vec![0, 1], contact: 2 }],
        },
        KodairaType::IV => FibreGraph {
            components: (0..3).map(|_| rational_comp(1, -2)).collect(),
            points: vec![Point::transverse(vec![0, 1, 2])],
        },
        KodairaType::IIStar => chain(
            &[(6, -2), (3, -2), (4, -2), (2, -2), (5, -2), (4, -2), (3, -2), (2, -2), (1, -2)],
            &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8)],
        ),
        KodairaType::IIIStar => chain(
            &[(4, -2), (3, -2), (3, -2), (2, -2), (2, -2), (1, -2), (1, -2), (2, -2)],
            &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 6), (0, 7)],
        ),
        KodairaType::IVStar => chain(
            &[(3, -2), (2, -2), (2, -2), (2, -2), (1, -2), (1, -2), (1, -2)],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)],
        ),
    }
}

/// Topological Euler number via inclusion–exclusion: normalized components
/// contribute their Euler number, each intersection point was counted once
/// per branch but is a single point.
pub fn euler_number(k: KodairaType) -> u32 {
    let g = fibre_graph(k);
    let comp_sum: i64 = g
        .components
        .iter()
        .map(|c| match c.kind {
            ComponentKind::Rational => 2i64,
            ComponentKind::Abelian | ComponentKind::P1Bundle => 0,
        })
        .sum();
    let point_sum: i64 = g.points.iter().map(|p| p.branches.len() as i64 - 1).sum();
    (comp_sum - point_sum) as u32
}

/// Log-canonical threshold of a fibre graph at its generic point collection.
///
/// For snc graphs: minimum over strata of |S| / (sum of multiplicities over
/// S), for S a single component or an intersecting pair. The three non-snc
/// shapes contribute their stored constants (cusp 5/6, tangency 3/4, triple
/// point 2/3), divided by the multiplicity at the point; these are
/// cross-validated against the coefficient table in `canbundle`.
pub fn lct(g: &FibreGraph) -> Result<Rational64, KodairaError> {
    let mut best: Option<Rational64> = None;
    let mut push = |v: Rational64| {
        best = Some(match best {
            Some(b) if b <= v => b,
            _ => v,
        });
    };
    for c in &g.components {
        push(Rational64::new(1, c.multiplicity as i64));
    }
    for p in &g.points {
        let mults: Vec<i64> = p
            .branches
            .iter()
            .map(|&i| g.components[i].multiplicity as i64)
            .collect();
        let total: i64 = mults.iter().sum();
        match (p.branches.len(), p.contact) {
            // Transverse pair (or node): the two-branch stratum.
            (2, 1) => push(Rational64::new(2, total)),
            // Triple point: all multiplicities agree in the catalog.
            (3, 1) => {
                if mults.iter().any(|&m| m != mults[0]) {
                    return Err(KodairaError::UnsupportedGraph);
                }
                push(Rational64::new(2, 3) / Rational64::from_integer(mults[0]));
            }
            (1, 2) => push(Rational64::new(5, 6) / Rational64::from_integer(mults[0])),
            (2, 2) => {
                if mults[0] != mults[1] {
                    return Err(KodairaError::UnsupportedGraph);
                }
                push(Rational64::new(3, 4) / Rational64::from_integer(mults[0]));
            }
            _ => return Err(KodairaError::UnsupportedGraph),
        }
    }
    best.ok_or(KodairaError::UnsupportedGraph)
}

// ---------------------------------------------------------------------------
// SL(2,Z) conjugacy classification of monodromy matrices.

pub type Sl2 = [[i64; 2]; 2];

fn det(m: &Sl2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn trace(m: &Sl2) -> i64 {
    m[0][0] + m[1][1]
}

fn is_identity(m: &Sl2) -> bool {
    *m == [[1, 0], [0, 1]]
}

fn neg(m: &Sl2) -> Sl2 {
    [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]]
}

fn mul(a: &Sl2, b: &Sl2) -> Sl2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn gcd3(values: impl IntoIterator<Item = i64>) -> i64 {
    values.into_iter().fold(0, |g, v| num_integer::gcd(g, v.abs()))
}

/// Standard monodromy representative of each fibre type.
pub fn standard_representative(k: KodairaType) -> Sl2 {
    match k {
        KodairaType::I(0) | KodairaType::MultipleI0 { .. } => [[1, 0], [0, 1]],
        KodairaType::I(m) => [[1, m as i64], [0, 1]],
        KodairaType::IStar(m) => [[-1, -(m as i64)], [0, -1]],
        KodairaType::II => [[1, 1], [-1, 0]],
        KodairaType::III => [[0, 1], [-1, 0]],
        KodairaType::IV => [[0, 1], [-1, -1]],
        KodairaType::IIStar => [[0, -1], [1, 1]],
        KodairaType::IIIStar => [[0, -1], [1, 0]],
        KodairaType::IVStar => [[-1, -1], [1, 0]],
    }
}

/// True when the primitive nilpotent part lies in the conjugacy class of
/// [[0,1],[0,0]] (conjugates have upper-right entry p² ≥ 0, with c = −r² < 0
/// when it vanishes).
fn positive_parabolic(p: &Sl2) -> bool {
    p[0][1] > 0 || (p[0][1] == 0 && p[1][0] < 0)
}

/// Decides SL(2,Z) conjugacy classes of quasi-unipotent matrices; two
/// interchangeable implementations are registered and must agree.
pub trait ConjugacyDecider: Sync {
    fn name(&self) -> &'static str;
    fn classify(&self, m: &Sl2) -> Result<KodairaType, KodairaError>;
}

/// Classification by conjugacy invariants: trace picks the order, the sign of
/// the lower-left entry separates the inverse classes of the elliptic types,
/// and the parabolic classes are separated by the nilpotent-part class.
pub struct InvariantTriple;

impl ConjugacyDecider for InvariantTriple {
    fn name(&self) -> &'static str {
        "invariant-triple"
    }

    fn classify(&self, m: &Sl2) -> Result<KodairaType, KodairaError> {
        if det(m) != 1 {
            return Err(KodairaError::NotUnimodular);
        }
        match trace(m) {
            2 if is_identity(m) => Ok(KodairaType::I(0)),
            -2 if is_identity(&neg(m)) => Ok(KodairaType::IStar(0)),
            2 => {
                let g = gcd3([m[0][0] - 1, m[0][1], m[1][0], m[1][1] - 1]);
                let p = [
                    [(m[0][0] - 1) / g, m[0][1] / g],
                    [m[1][0] / g, (m[1][1] - 1) / g],
                ];
                if positive_parabolic(&p) {
                    Ok(KodairaType::I(g as u32))
                } else {
                    Err(KodairaError::NotElliptic)
                }
            }
            -2 => {
                let g = gcd3([m[0][0] + 1, m[0][1], m[1][0], m[1][1] + 1]);
                let p = [
                    [(m[0][0] + 1) / g, m[0][1] / g],
                    [m[1][0] / g, (m[1][1] + 1) / g],
                ];
                if positive_parabolic(&p) {
                    Err(KodairaError::NotElliptic)
                } else {
                    Ok(KodairaType::IStar(g as u32))
                }
            }
            // Elliptic elements: the lower-left entry never vanishes and its
            // sign is preserved by conjugation (it orients the rotation at
            // the fixed point of the upper half-plane).
            0 => Ok(if m[1][0] < 0 { KodairaType::III } else { KodairaType::IIIStar }),
            1 => Ok(if m[1][0] < 0 { KodairaType::II } else { KodairaType::IIStar }),
            -1 => Ok(if m[1][0] < 0 { KodairaType::IV } else { KodairaType::IVStar }),
            _ => Err(KodairaError::NotQuasiUnipotent),
        }
    }
}

/// Classification by explicit search for a unimodular conjugator onto a
/// standard representative.
pub struct BruteForceConjugacy;

/// Search g with g·rep = m·g, det g = 1, scanning the first column over
/// |entries| ≤ bound. Every elliptic representative has |lower-left| = 1, so
/// the second column is pinned by the first; the bound is sufficient because
/// some conjugator has first-column entries no larger than the input's.
fn conjugator_exists(m: &Sl2, rep: &Sl2, bound: i64) -> bool {
    assert_eq!(rep[1][0].abs(), 1);
    for a in -bound..=bound {
        for c in -bound..=bound {
            // Column 1 of g·rep = m·g: rep00·v + rep10·w = M·v.
            let w0 = (m[0][0] * a + m[0][1] * c - rep[0][0] * a) / rep[1][0];
            let w1 = (m[1][0] * a + m[1][1] * c - rep[0][0] * c) / rep[1][0];
            if a * w1 - c * w0 != 1 {
                continue;
            }
            let g = [[a, w0], [c, w1]];
            if mul(&g, rep) == mul(m, &g) {
                return true;
            }
        }
    }
    false
}

/// Decide conjugacy of a trace ±2 matrix onto the parabolic representative
/// `rep` by triangularizing along a primitive eigenvector: extend ±v to a
/// unimodular basis and compare exactly. Changing the complementary column
/// does not change the triangular form, so only the two signs matter.
fn parabolic_conjugate(m: &Sl2, rep: &Sl2) -> bool {
    let eps = rep[0][0]; // ±1
    let n = [[m[0][0] - eps, m[0][1]], [m[1][0], m[1][1] - eps]];
    let v = if n[0][0] != 0 || n[0][1] != 0 {
        [n[0][1], -n[0][0]]
    } else {
        [n[1][1], -n[1][0]]
    };
    let g = num_integer::gcd(v[0].abs(), v[1].abs());
    if g == 0 {
        return m == rep; // m = ±I
    }
    let v = [v[0] / g, v[1] / g];
    for v in [v, [-v[0], -v[1]]] {
        let ext = num_integer::Integer::extended_gcd(&v[0], &v[1]);
        // x·v0 + y·v1 = 1; w = (−y, x) completes v to det 1.
        let (x, y) = (ext.x, ext.y);
        let gmat = [[v[0], -y], [v[1], x]];
        let ginv = [[gmat[1][1], -gmat[0][1]], [-gmat[1][0], gmat[0][0]]];
        if mul(&mul(&ginv, m), &gmat) == *rep {
            return true;
        }
    }
    false
}

impl ConjugacyDecider for BruteForceConjugacy {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn classify(&self, m: &Sl2) -> Result<KodairaType, KodairaError> {
        if det(m) != 1 {
            return Err(KodairaError::NotUnimodular);
        }
        let candidates: Vec<KodairaType> = match trace(m) {
            2 if is_identity(m) => return Ok(KodairaType::I(0)),
            -2 if is_identity(&neg(m)) => return Ok(KodairaType::IStar(0)),
            2 => {
                let g = gcd3([m[0][0] - 1, m[0][1], m[1][0], m[1][1] - 1]);
                let k = KodairaType::I(g as u32);
                return if parabolic_conjugate(m, &standard_representative(k)) {
                    Ok(k)
                } else {
                    Err(KodairaError::NotElliptic)
                };
            }
            -2 => {
                let g = gcd3([m[0][0] + 1, m[0][1], m[1][0], m[1][1] + 1]);
                let k = KodairaType::IStar(g as u32);
                return if parabolic_conjugate(m, &standard_representative(k)) {
                    Ok(k)
                } else {
                    Err(KodairaError::NotElliptic)
                };
            }
            0 => vec![KodairaType::III, KodairaType::IIIStar],
            1 => vec![KodairaType::II, KodairaType::IIStar],
            -1 => vec![KodairaType::IV, KodairaType::IVStar],
            _ => return Err(KodairaError::NotQuasiUnipotent),
        };
        let max_entry = m.iter().flatten().map(|e| e.abs()).max().unwrap_or(1);
        let bound = max_entry + 2;
        for k in candidates {
            if conjugator_exists(m, &standard_representative(k), bound) {
                return Ok(k);
            }
        }
        Err(KodairaError::NotElliptic)
    }
}

static INVARIANT_TRIPLE: InvariantTriple = InvariantTriple;
static BRUTE_FORCE: BruteForceConjugacy = BruteForceConjugacy;

/// Registry of the available conjugacy deciders.
pub fn deciders() -> &'static [&'static dyn ConjugacyDecider] {
    static REGISTRY: [&dyn ConjugacyDecider; 2] = [&INVARIANT_TRIPLE, &BRUTE_FORCE];
    &REGISTRY
}

pub fn decider(name: &str) -> Result<&'static dyn ConjugacyDecider, KodairaError> {
    deciders()
        .iter()
        .copied()
        .find(|d| d.name() == name)
        .ok_or_else(|| KodairaError::UnknownDecider(name.to_owned()))
}

/// Kodaira type of an SL(2,Z) monodromy matrix (default decider).
pub fn kodaira_from_monodromy(m: &Sl2) -> Result<KodairaType, KodairaError> {
    INVARIANT_TRIPLE.classify(m)
}

// ---------------------------------------------------------------------------
// Exact negative-semidefiniteness of intersection matrices.

fn big_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut m: Vec<Vec<BigRational>> = m.to_vec();
    let mut sign = BigRational::one();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            sign = -sign;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for i in (col + 1)..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &pivot;
            for j in col..n {
                let sub = &f * &m[col][j];
                m[i][j] = &m[i][j] - sub;
            }
        }
    }
    det * sign
}

/// Exact check that the intersection matrix of `g` is negative semidefinite
/// with kernel exactly the span of the multiplicity vector: M·mult = 0 and
/// −M restricted to any complement is positive definite (leading principal
/// minors after deleting the last row/column).
pub fn kernel_is_multiplicity_vector(g: &FibreGraph) -> bool {
    let m = g.intersection_matrix();
    let n = m.len();
    let mult: Vec<i64> = g.components.iter().map(|c| c.multiplicity as i64).collect();
    for row in &m {
        let dot: i64 = row.iter().zip(&mult).map(|(a, b)| a * b).sum();
        if dot != 0 {
            return false;
        }
    }
    if n == 1 {
        return true;
    }
    // −M with the last row/column removed must be positive definite.
    let reduced: Vec<Vec<BigRational>> = (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| BigRational::from_integer(BigInt::from(-m[i][j])))
                .collect()
        })
        .collect();
    for k in 1..=(n - 1) {
        let minor: Vec<Vec<BigRational>> = (0..k)
            .map(|i| (0..k).map(|j| reduced[i][j].clone()).collect())
            .collect();
        if big_det(&minor) <= BigRational::zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_catalog_types() -> Vec<KodairaType> {
        let mut v = vec![
            KodairaType::I(0),
            KodairaType::II,
            KodairaType::III,
            KodairaType::IV,
            KodairaType::IIStar,
            KodairaType::IIIStar,
            KodairaType::IVStar,
        ];
        for l in [2, 3, 4, 6] {
            v.push(KodairaType::MultipleI0 { l });
        }
        for m in 1..=20 {
            v.push(KodairaType::I(m));
        }
        for m in 0..=20 {
            v.push(KodairaType::IStar(m));
        }
        v
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(euler_number(KodairaType::I(0)), 0);
        assert_eq!(euler_number(KodairaType::I(1)), 1);
        assert_eq!(euler_number(KodairaType::II), 2);
        assert_eq!(euler_number(KodairaType::III), 3);
        assert_eq!(euler_number(KodairaType::IV), 4);
        assert_eq!(euler_number(KodairaType::IVStar), 8);
        assert_eq!(euler_number(KodairaType::IIIStar), 9);
        assert_eq!(euler_number(KodairaType::IIStar), 10);
        for m in 1..=20 {
            assert_eq!(euler_number(KodairaType::I(m)), m);
        }
        for m in 0..=20 {
            assert_eq!(euler_number(KodairaType::IStar(m)), m + 6);
        }
    }

    #[test]
    fn graph_multiplicities_match_printed_vectors() {
        assert_eq!(
            fibre_graph(KodairaType::IIStar).multiplicities(),
            vec![6, 3, 4, 2, 5, 4, 3, 2, 1]
        );
        assert_eq!(
            fibre_graph(KodairaType::IIIStar).multiplicities(),
            vec![4, 3, 3, 2, 2, 1, 1, 2]
        );
        assert_eq!(
            fibre_graph(KodairaType::IVStar).multiplicities(),
            vec![3, 2, 2, 2, 1, 1, 1]
        );
        assert_eq!(
            fibre_graph(KodairaType::IStar(0)).multiplicities(),
            vec![2, 1, 1, 1, 1]
        );
    }

    #[test]
    fn intersection_kernels() {
        for k in all_catalog_types() {
            assert!(
                kernel_is_multiplicity_vector(&fibre_graph(k)),
                "kernel check failed for {k}"
            );
        }
    }

    #[test]
    fn lct_values() {
        let v = |k| lct(&fibre_graph(k)).unwrap();
        assert_eq!(v(KodairaType::I(0)), Rational64::new(1, 1));
        assert_eq!(v(KodairaType::I(5)), Rational64::new(1, 1));
        assert_eq!(v(KodairaType::IStar(0)), Rational64::new(1, 2));
        assert_eq!(v(KodairaType::IStar(7)), Rational64::new(1, 2));
        assert_eq!(v(KodairaType::II), Rational64::new(5, 6));
        assert_eq!(v(KodairaType::III), Rational64::new(3, 4));
        assert_eq!(v(KodairaType::IV), Rational64::new(2, 3));
        assert_eq!(v(KodairaType::IIStar), Rational64::new(1, 6));
        assert_eq!(v(KodairaType::IIIStar), Rational64::new(1, 4));
        assert_eq!(v(KodairaType::IVStar), Rational64::new(1, 3));
        assert_eq!(v(KodairaType::MultipleI0 { l: 4 }), Rational64::new(1, 4));
    }

    #[test]
    fn lct_scaling_law() {
        for k in [
            KodairaType::I(0),
            KodairaType::I(3),
            KodairaType::IStar(0),
            KodairaType::IStar(2),
            KodairaType::IIStar,
            KodairaType::IIIStar,
            KodairaType::IVStar,
        ] {
            let g = fibre_graph(k);
            let base = lct(&g).unwrap();
            for l in 2..=4 {
                assert_eq!(
                    lct(&g.scaled(l)).unwrap(),
                    base / Rational64::from_integer(l as i64),
                    "scaling failed for {k} l={l}"
                );
            }
        }
    }

    #[test]
    fn monodromy_round_trip() {
        let types = [
            KodairaType::I(0),
            KodairaType::I(1),
            KodairaType::I(5),
            KodairaType::IStar(0),
            KodairaType::IStar(3),
            KodairaType::II,
            KodairaType::III,
            KodairaType::IV,
            KodairaType::IIStar,
            KodairaType::IIIStar,
            KodairaType::IVStar,
        ];
        for k in types {
            let rep = standard_representative(k);
            for d in deciders() {
                let got = d.classify(&rep).unwrap();
                let want = match k {
                    KodairaType::MultipleI0 { .. } => KodairaType::I(0),
                    other => other,
                };
                assert_eq!(got, want, "{} on {k}", d.name());
            }
        }
    }

    #[test]
    fn deciders_agree_on_conjugates() {
        // Conjugate every representative by words in the elementary matrices.
        let gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[1, -1], [0, 1]], [[1, 0], [-1, 1]]];
        let mut conjugators = vec![[[1, 0], [0, 1]]];
        for _ in 0..3 {
            let mut next = Vec::new();
            for c in &conjugators {
                for g in &gens {
                    next.push(mul(c, g));
                }
            }
            conjugators.extend(next);
        }
        let invariant = decider("invariant-triple").unwrap();
        let brute = decider("brute-force").unwrap();
        for k in [
            KodairaType::I(1),
            KodairaType::I(2),
            KodairaType::IStar(1),
            KodairaType::II,
            KodairaType::III,
            KodairaType::IV,
            KodairaType::IIStar,
            KodairaType::IIIStar,
            KodairaType::IVStar,
        ] {
            let rep = standard_representative(k);
            for g in &conjugators {
                let ginv = [[g[1][1], -g[0][1]], [-g[1][0], g[0][0]]];
                let m = mul(&mul(g, &rep), &ginv);
                assert_eq!(invariant.classify(&m).unwrap(), k, "invariant on {k}");
                assert_eq!(brute.classify(&m).unwrap(), k, "brute on {k}");
            }
        }
    }

    #[test]
    fn inverse_classes_are_distinguished() {
        // II and II* have inverse representatives; they must not merge.
        assert_eq!(
            kodaira_from_monodromy(&[[0, -1], [1, 1]]).unwrap(),
            KodairaType::IIStar
        );
        assert_eq!(
            kodaira_from_monodromy(&[[1, 1], [-1, 0]]).unwrap(),
            KodairaType::II
        );
        // The inverse parabolic class is not a fibre monodromy.
        assert_eq!(
            kodaira_from_monodromy(&[[1, -1], [0, 1]]),
            Err(KodairaError::NotElliptic)
        );
    }

    #[test]
    fn hyperbolic_rejected() {
        assert_eq!(
            kodaira_from_monodromy(&[[2, 1], [1, 1]]),
            Err(KodairaError::NotQuasiUnipotent)
        );
    }

    #[test]
    fn snc_flags() {
        assert!(fibre_graph(KodairaType::I(3)).is_snc());
        assert!(fibre_graph(KodairaType::IStar(2)).is_snc());
        assert!(!fibre_graph(KodairaType::I(1)).is_snc());
        assert!(!fibre_graph(KodairaType::II).is_snc());
        assert!(!fibre_graph(KodairaType::III).is_snc());
        assert!(!fibre_graph(KodairaType::IV).is_snc());
    }
}
