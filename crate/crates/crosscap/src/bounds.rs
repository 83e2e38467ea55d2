//! Closed-form bounds on |A| + |B| and extremal-case classification.
//!
//! For size sets R, S with r = max R, s = max S, the two branches of the
//! bound count a singleton on the largest layer of one side plus the full
//! star it leaves available on the other:
//!
//!   branch_A = 1 + sum over i in S, t <= j <= i of C(r,j) C(n-r,i-j)
//!
//! in the set world, with the Gaussian analog q^((r-j)(i-j)) [r j][n-r i-j]
//! over subspaces, and branch_B symmetrically.  The bound is the larger
//! branch; it is valid whenever t <= min(R u S) and r + s - t < n, and
//! those two hypotheses are the only ones this module ever rejects.

use crate::exactnum::{binomial, gaussian_binomial, q_pow, serde_string, BigNat};
use crate::qworld::FiniteField;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("n must be at least 1")]
    BadN,
    #[error("size set {0} is empty")]
    EmptySizeSet(&'static str),
    #[error("size {size} in {name} is outside 1..={n}")]
    SizeOutOfRange { name: &'static str, size: u32, n: u32 },
    #[error("t must be at least 1")]
    BadT,
    #[error("world 'subspaces' needs q, world 'sets' forbids it")]
    QMismatch,
    #[error(transparent)]
    Field(#[from] crate::qworld::QWorldError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("precondition violated: {hypothesis}")]
    PreconditionViolated { hypothesis: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum World {
    #[serde(rename = "sets")]
    Sets,
    #[serde(rename = "subspaces")]
    Subspaces,
}

impl std::fmt::Display for World {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            World::Sets => "sets",
            World::Subspaces => "subspaces",
        })
    }
}

impl std::str::FromStr for World {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sets" => Ok(World::Sets),
            "subspaces" => Ok(World::Subspaces),
            other => Err(format!("unknown world '{other}' (sets or subspaces)")),
        }
    }
}

/// Bipartite side: X carries the R-layers, Y the S-layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// Which of R and S holds a distinguished element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SizeSetSide {
    R,
    S,
}

/// Non-empty strictly increasing list of layer sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SizeSet(Vec<u32>);

impl SizeSet {
    /// Sorts and deduplicates; rejects empty input and sizes outside 1..=n.
    pub fn new(mut sizes: Vec<u32>, name: &'static str, n: u32) -> Result<Self, SpecError> {
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.is_empty() {
            return Err(SpecError::EmptySizeSet(name));
        }
        for &m in &sizes {
            if m < 1 || m > n {
                return Err(SpecError::SizeOutOfRange { name, size: m, n });
            }
        }
        Ok(SizeSet(sizes))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> u32 {
        self.0[0]
    }

    pub fn max(&self) -> u32 {
        *self.0.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: u32) -> bool {
        self.0.binary_search(&m).is_ok()
    }
}

impl std::fmt::Display for SizeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// One problem instance.  Construction enforces only structural validity
/// (shape of the data); the two theorem hypotheses t <= min(R u S) and
/// r + s - t < n are checked by the bound operations and reported as
/// `PreconditionViolated`, because the graph-side machinery must still
/// run on instances that violate them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub world: World,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    #[serde(rename = "R")]
    pub r_sizes: SizeSet,
    #[serde(rename = "S")]
    pub s_sizes: SizeSet,
    pub t: u32,
}

impl FamilySpec {
    pub fn new(
        world: World,
        n: u32,
        q: Option<u64>,
        r_sizes: Vec<u32>,
        s_sizes: Vec<u32>,
        t: u32,
    ) -> Result<Self, SpecError> {
        if n < 1 {
            return Err(SpecError::BadN);
        }
        if t < 1 {
            return Err(SpecError::BadT);
        }
        match (world, q) {
            (World::Sets, None) => {}
            (World::Subspaces, Some(q)) => {
                FiniteField::new(q)?;
            }
            _ => return Err(SpecError::QMismatch),
        }
        Ok(FamilySpec {
            world,
            n,
            q,
            r_sizes: SizeSet::new(r_sizes, "R", n)?,
            s_sizes: SizeSet::new(s_sizes, "S", n)?,
            t,
        })
    }

    pub fn sets(n: u32, r_sizes: Vec<u32>, s_sizes: Vec<u32>, t: u32) -> Result<Self, SpecError> {
        Self::new(World::Sets, n, None, r_sizes, s_sizes, t)
    }

    pub fn subspaces(
        n: u32,
        q: u64,
        r_sizes: Vec<u32>,
        s_sizes: Vec<u32>,
        t: u32,
    ) -> Result<Self, SpecError> {
        Self::new(World::Subspaces, n, Some(q), r_sizes, s_sizes, t)
    }

    /// max R
    pub fn r(&self) -> u32 {
        self.r_sizes.max()
    }

    /// max S
    pub fn s(&self) -> u32 {
        self.s_sizes.max()
    }

    /// min(R u S)
    pub fn min_size(&self) -> u32 {
        self.r_sizes.min().min(self.s_sizes.min())
    }

    pub fn sizes_of(&self, side: Side) -> &SizeSet {
        match side {
            Side::X => &self.r_sizes,
            Side::Y => &self.s_sizes,
        }
    }

    /// The same instance with the roles of (R, A) and (S, B) exchanged.
    pub fn swapped(&self) -> FamilySpec {
        FamilySpec {
            world: self.world,
            n: self.n,
            q: self.q,
            r_sizes: self.s_sizes.clone(),
            s_sizes: self.r_sizes.clone(),
            t: self.t,
        }
    }

    /// Number of vertices in one layer.
    pub fn layer_count(&self, m: u32) -> BigNat {
        match self.world {
            World::Sets => binomial(self.n as u64, m as u64),
            World::Subspaces => gaussian_binomial(self.n as u64, m as u64, self.q.unwrap()),
        }
    }

    /// Total vertices on a side (sum of its layer counts).
    pub fn side_total(&self, side: Side) -> BigNat {
        self.sizes_of(side)
            .iter()
            .map(|m| self.layer_count(m))
            .sum()
    }

    /// The two hypotheses under which the bound is proved.
    pub fn theorem_preconditions(&self) -> Result<(), BoundsError> {
        if self.t > self.min_size() {
            return Err(BoundsError::PreconditionViolated {
                hypothesis: format!(
                    "t <= min(R u S) fails: t = {}, min(R u S) = {}",
                    self.t,
                    self.min_size()
                ),
            });
        }
        if self.r() + self.s() - self.t >= self.n {
            return Err(BoundsError::PreconditionViolated {
                hypothesis: format!(
                    "max R + max S - t < n fails: {} + {} - {} >= {}",
                    self.r(),
                    self.s(),
                    self.t,
                    self.n
                ),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} n={}", self.world, self.n)?;
        if let Some(q) = self.q {
            write!(f, " q={q}")?;
        }
        write!(f, " R={} S={} t={}", self.r_sizes, self.s_sizes, self.t)
    }
}

/// Star size in the set world: members of the S-layers of an n-set
/// meeting a fixed r-set in at least t elements.
pub fn star_count_sets(n: u32, r: u32, s_sizes: &[u32], t: u32) -> BigNat {
    debug_assert!(r <= n);
    let mut acc: BigNat = Zero::zero();
    for &i in s_sizes {
        for j in t..=i {
            acc += binomial(r as u64, j as u64) * binomial((n - r) as u64, (i - j) as u64);
        }
    }
    acc
}

/// Number of b-dimensional subspaces of F_q^n meeting a fixed
/// a-dimensional subspace in dimension exactly j.
pub fn subspace_profile_count(n: u32, q: u64, a: u32, b: u32, j: u32) -> BigNat {
    debug_assert!(a <= n);
    if j > a || j > b {
        return Zero::zero();
    }
    q_pow(q, (a - j) as u64 * (b - j) as u64)
        * gaussian_binomial(a as u64, j as u64, q)
        * gaussian_binomial((n - a) as u64, (b - j) as u64, q)
}

/// Star size in the subspace world: members of the S-layers of F_q^n
/// meeting a fixed r-dimensional subspace in dimension at least t.
pub fn star_count_subspaces(n: u32, q: u64, r: u32, s_sizes: &[u32], t: u32) -> BigNat {
    debug_assert!(r <= n);
    let mut acc: BigNat = Zero::zero();
    for &i in s_sizes {
        for j in t..=i {
            acc += subspace_profile_count(n, q, r, i, j);
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttainingSide {
    #[serde(rename = "A_singleton")]
    ASingleton,
    #[serde(rename = "B_singleton")]
    BSingleton,
    #[serde(rename = "tie")]
    Tie,
}

impl std::fmt::Display for AttainingSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AttainingSide::ASingleton => "A_singleton",
            AttainingSide::BSingleton => "B_singleton",
            AttainingSide::Tie => "tie",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "Thm1_case1")]
    Thm1Case1,
    #[serde(rename = "Thm1_case2_i")]
    Thm1Case2I,
    #[serde(rename = "Thm1_case2_ii")]
    Thm1Case2Ii,
    #[serde(rename = "Thm2_case1")]
    Thm2Case1,
    #[serde(rename = "Thm2_case2_i")]
    Thm2Case2I,
    #[serde(rename = "Thm2_case2_ii")]
    Thm2Case2Ii,
    #[serde(rename = "bound_only")]
    BoundOnly,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseLabel::Thm1Case1 => "Thm1_case1",
            CaseLabel::Thm1Case2I => "Thm1_case2_i",
            CaseLabel::Thm1Case2Ii => "Thm1_case2_ii",
            CaseLabel::Thm2Case1 => "Thm2_case1",
            CaseLabel::Thm2Case2I => "Thm2_case2_i",
            CaseLabel::Thm2Case2Ii => "Thm2_case2_ii",
            CaseLabel::BoundOnly => "bound_only",
        })
    }
}

/// The named hypotheses that gate the uniqueness characterizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionFlags {
    pub two_r_lt_n: bool,
    pub thm1_n_threshold: bool,
    pub q_n_threshold: bool,
    pub r_eq_s: bool,
    pub max_sym_diff_in: Option<SizeSetSide>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "branch_A_singleton", with = "serde_string")]
    pub branch_a_singleton: BigNat,
    #[serde(rename = "branch_B_singleton", with = "serde_string")]
    pub branch_b_singleton: BigNat,
    #[serde(with = "serde_string")]
    pub bound: BigNat,
    pub attaining_side: AttainingSide,
    pub case_label: CaseLabel,
    pub precondition_flags: PreconditionFlags,
}

/// Largest element of R triangle S, and which side holds it; None when
/// R = S.
fn max_sym_diff(spec: &FamilySpec) -> Option<(u32, SizeSetSide)> {
    let mut best: Option<(u32, SizeSetSide)> = None;
    for m in spec.r_sizes.iter() {
        if !spec.s_sizes.contains(m) && best.map_or(true, |(b, _)| m > b) {
            best = Some((m, SizeSetSide::R));
        }
    }
    for m in spec.s_sizes.iter() {
        if !spec.r_sizes.contains(m) && best.map_or(true, |(b, _)| m > b) {
            best = Some((m, SizeSetSide::S));
        }
    }
    best
}

/// Which uniqueness characterization applies, with the hypothesis flags
/// that were evaluated to decide it.
pub fn classify_extremal_case(spec: &FamilySpec) -> (CaseLabel, PreconditionFlags) {
    let (r, s, t, n) = (spec.r(), spec.s(), spec.t, spec.n);
    let r_eq_s = spec.r_sizes == spec.s_sizes;
    let two_r_lt_n = 2 * r < n;

    // max{ 2^(s+1)|R|(s-t) + 2r + 1, 2^(r+1)|S|(r-t) + 2s + 1 } <= n,
    // evaluated exactly; the powers outgrow u64 for large sizes.
    let n_big = BigNat::from(n);
    let lhs_a = q_pow(2, s as u64 + 1) * BigNat::from(spec.r_sizes.len() as u64)
        * BigNat::from(s.saturating_sub(t) as u64)
        + BigNat::from(2 * r as u64 + 1);
    let lhs_b = q_pow(2, r as u64 + 1) * BigNat::from(spec.s_sizes.len() as u64)
        * BigNat::from(r.saturating_sub(t) as u64)
        + BigNat::from(2 * s as u64 + 1);
    let thm1_n_threshold = lhs_a.max(lhs_b) <= n_big;

    let q_n_threshold = (s as u64 * s as u64 + r as u64 * r as u64 + s as u64 * r as u64)
        <= n as u64;

    let sym = max_sym_diff(spec);
    let flags = PreconditionFlags {
        two_r_lt_n,
        thm1_n_threshold,
        q_n_threshold,
        r_eq_s,
        max_sym_diff_in: sym.map(|(_, side)| side),
    };

    let label = match spec.world {
        World::Sets => {
            if r_eq_s {
                if two_r_lt_n {
                    CaseLabel::Thm1Case1
                } else {
                    CaseLabel::BoundOnly
                }
            } else if thm1_n_threshold {
                match sym.unwrap().1 {
                    SizeSetSide::S => CaseLabel::Thm1Case2I,
                    SizeSetSide::R => CaseLabel::Thm1Case2Ii,
                }
            } else {
                CaseLabel::BoundOnly
            }
        }
        World::Subspaces => {
            if r_eq_s {
                CaseLabel::Thm2Case1
            } else if q_n_threshold {
                match sym.unwrap().1 {
                    SizeSetSide::S => CaseLabel::Thm2Case2I,
                    SizeSetSide::R => CaseLabel::Thm2Case2Ii,
                }
            } else {
                CaseLabel::BoundOnly
            }
        }
    };
    (label, flags)
}

fn report_from_branches(spec: &FamilySpec, branch_a: BigNat, branch_b: BigNat) -> BoundReport {
    let bound = branch_a.clone().max(branch_b.clone());
    let attaining_side = match branch_a.cmp(&branch_b) {
        std::cmp::Ordering::Greater => AttainingSide::ASingleton,
        std::cmp::Ordering::Less => AttainingSide::BSingleton,
        std::cmp::Ordering::Equal => AttainingSide::Tie,
    };
    let (case_label, precondition_flags) = classify_extremal_case(spec);
    BoundReport {
        branch_a_singleton: branch_a,
        branch_b_singleton: branch_b,
        bound,
        attaining_side,
        case_label,
        precondition_flags,
    }
}

pub fn bound_sets(spec: &FamilySpec) -> Result<BoundReport, BoundsError> {
    assert_eq!(spec.world, World::Sets);
    spec.theorem_preconditions()?;
    let one: BigNat = One::one();
    let branch_a = &one + star_count_sets(spec.n, spec.r(), spec.s_sizes.as_slice(), spec.t);
    let branch_b = &one + star_count_sets(spec.n, spec.s(), spec.r_sizes.as_slice(), spec.t);
    Ok(report_from_branches(spec, branch_a, branch_b))
}

pub fn bound_subspaces(spec: &FamilySpec) -> Result<BoundReport, BoundsError> {
    assert_eq!(spec.world, World::Subspaces);
    spec.theorem_preconditions()?;
    let q = spec.q.unwrap();
    let one: BigNat = One::one();
    let branch_a = &one + star_count_subspaces(spec.n, q, spec.r(), spec.s_sizes.as_slice(), spec.t);
    let branch_b = &one + star_count_subspaces(spec.n, q, spec.s(), spec.r_sizes.as_slice(), spec.t);
    Ok(report_from_branches(spec, branch_a, branch_b))
}

/// World dispatch for the two bound routines.
pub fn bound(spec: &FamilySpec) -> Result<BoundReport, BoundsError> {
    match spec.world {
        World::Sets => bound_sets(spec),
        World::Subspaces => bound_subspaces(spec),
    }
}

/// Degree of every vertex in one layer, by side and layer size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerDegree {
    pub side: Side,
    pub size: u32,
    #[serde(with = "serde_string")]
    pub vertices: BigNat,
    #[serde(with = "serde_string")]
    pub degree: BigNat,
}

/// Per-layer degrees: a vertex of X_i is adjacent to everything on the
/// other side except the star it centers, so d(X_i) = |Y| - star(r_i),
/// and symmetrically for Y_j.  Needs no theorem preconditions.
pub fn degree_profile(spec: &FamilySpec) -> Vec<LayerDegree> {
    let star = |center: u32, other: &SizeSet| -> BigNat {
        match spec.world {
            World::Sets => star_count_sets(spec.n, center, other.as_slice(), spec.t),
            World::Subspaces => {
                star_count_subspaces(spec.n, spec.q.unwrap(), center, other.as_slice(), spec.t)
            }
        }
    };
    let mut out = Vec::new();
    let y_total = spec.side_total(Side::Y);
    for m in spec.r_sizes.iter() {
        out.push(LayerDegree {
            side: Side::X,
            size: m,
            vertices: spec.layer_count(m),
            degree: &y_total - star(m, &spec.s_sizes),
        });
    }
    let x_total = spec.side_total(Side::X);
    for m in spec.s_sizes.iter() {
        out.push(LayerDegree {
            side: Side::Y,
            size: m,
            vertices: spec.layer_count(m),
            degree: &x_total - star(m, &spec.r_sizes),
        });
    }
    out
}
