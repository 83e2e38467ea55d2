//! The configurations that meet the bound, attainment checking, and
//! uniqueness comparison against the oracle's fragment catalogs.
//!
//! Two shapes attain the bound in general: a singleton {A} on one side
//! paired with the full star of A on the other, and (for finite sets with
//! R = S = {1,2} or {2} and t = 1) the point-star pair, both families
//! equal to everything through a fixed ground element. `uniqueness_report`
//! generates the catalog these shapes predict and compares it against the
//! oracle's complete enumeration, so equality is a machine-checked fact
//! rather than a claim.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bipgraph::{build_model, BipartiteModel, BuildError, ModelConfig};
use crate::bounds::{
    bound, AttainingSide, BoundReport, BoundsError, CaseLabel, FamilySpec, Side, SpecError, World,
};
use crate::exactnum::BigNat;
use crate::oracle::{
    bounded_fragment_scan, phi, run_oracle, MethodChoice, OracleError, OracleOptions,
};
use crate::qworld::{self, FiniteField, QWorldError, Subspace};
use crate::setworld::{self, GroundSetVertex, SetWorldError};

/// Fragment size limit for the bounded evidence scan when a side is too
/// large to enumerate exhaustively.
pub const UNIQUENESS_EVIDENCE_SIZE: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum ExtremalError {
    #[error("inadmissible configuration: {hypothesis}")]
    InadmissibleConfig { hypothesis: String },
    #[error("both families must be non-empty")]
    EmptyFamily,
    #[error("member outside the declared layers: {member}")]
    SizeOutOfLayer { member: String },
    #[error("family does not live in the instance's world")]
    WorldMismatch,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Sets(#[from] SetWorldError),
    #[error(transparent)]
    Field(#[from] QWorldError),
}

fn inadmissible(hypothesis: impl Into<String>) -> ExtremalError {
    ExtremalError::InadmissibleConfig {
        hypothesis: hypothesis.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtremalKind {
    #[serde(rename = "A_singleton_star")]
    ASingletonStar,
    #[serde(rename = "B_singleton_star")]
    BSingletonStar,
    #[serde(rename = "point_star_sizes_1_2")]
    PointStarSizes12,
    #[serde(rename = "point_star_size_2")]
    PointStarSize2,
}

/// The fixed object a configuration is built around.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Anchor {
    Set(GroundSetVertex),
    Subspace(Subspace),
    Point(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalConfig {
    pub kind: ExtremalKind,
    pub anchor: Anchor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Sets(Vec<GroundSetVertex>),
    Subspaces(Vec<Subspace>),
}

impl Family {
    pub fn len(&self) -> usize {
        match self {
            Family::Sets(v) => v.len(),
            Family::Subspaces(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Builds the two families a configuration describes.
///
/// Singleton-star kinds are admissible whenever their branch of the max is
/// the attaining one (or the branches tie); they then attain the bound by
/// construction. Point-star kinds additionally need the exact shape they
/// are characterized for: finite sets, R = S = {1,2} or {2}, t = 1, and
/// 2 max R < n.
pub fn construct_config(
    spec: &FamilySpec,
    config: &ExtremalConfig,
) -> Result<(Family, Family), ExtremalError> {
    let report = bound(spec)?;
    match config.kind {
        ExtremalKind::ASingletonStar => {
            if report.attaining_side == AttainingSide::BSingleton {
                return Err(inadmissible(
                    "the B-singleton branch strictly dominates; an A-singleton pair cannot attain the bound",
                ));
            }
            singleton_star(spec, &config.anchor, Side::X)
        }
        ExtremalKind::BSingletonStar => {
            if report.attaining_side == AttainingSide::ASingleton {
                return Err(inadmissible(
                    "the A-singleton branch strictly dominates; a B-singleton pair cannot attain the bound",
                ));
            }
            singleton_star(spec, &config.anchor, Side::Y)
        }
        ExtremalKind::PointStarSizes12 => point_star(spec, config, &[1, 2], report.case_label),
        ExtremalKind::PointStarSize2 => point_star(spec, config, &[2], report.case_label),
    }
}

fn singleton_star(
    spec: &FamilySpec,
    anchor: &Anchor,
    who: Side,
) -> Result<(Family, Family), ExtremalError> {
    let extreme = match who {
        Side::X => spec.r(),
        Side::Y => spec.s(),
    };
    let star_sizes = spec.sizes_of(who.opposite()).as_slice().to_vec();
    let (singleton, star) = match (spec.world, anchor) {
        (World::Sets, Anchor::Set(a)) => {
            let largest = a.members().into_iter().max().unwrap_or(0);
            if a.size() != extreme || largest > spec.n {
                return Err(inadmissible(format!(
                    "the fixed member must be a {extreme}-subset of [{}], got {a}",
                    spec.n
                )));
            }
            let star = setworld::star_family_sets(spec.n, &star_sizes, spec.t, a);
            (Family::Sets(vec![a.clone()]), Family::Sets(star))
        }
        (World::Subspaces, Anchor::Subspace(u)) => {
            if u.dim() != extreme || u.ambient_dim() != spec.n {
                return Err(inadmissible(format!(
                    "the fixed member must be a {extreme}-dimensional subspace of F_q^{}, got {u}",
                    spec.n
                )));
            }
            let q = spec.q.expect("subspace specs carry q");
            let star = qworld::star_family_subspaces(spec.n, q, &star_sizes, spec.t, u)?;
            (
                Family::Subspaces(vec![u.clone()]),
                Family::Subspaces(star),
            )
        }
        _ => return Err(inadmissible("anchor kind does not fit the world")),
    };
    debug_assert!(!star.is_empty());
    Ok(match who {
        Side::X => (singleton, star),
        Side::Y => (star, singleton),
    })
}

fn point_star(
    spec: &FamilySpec,
    config: &ExtremalConfig,
    want: &[u32],
    case: CaseLabel,
) -> Result<(Family, Family), ExtremalError> {
    if spec.world != World::Sets {
        return Err(inadmissible(
            "point-star shapes are characterized only for finite sets",
        ));
    }
    if spec.r_sizes.as_slice() != want || spec.s_sizes.as_slice() != want {
        return Err(inadmissible(format!(
            "needs R = S = {:?}, got R = {}, S = {}",
            want, spec.r_sizes, spec.s_sizes
        )));
    }
    if spec.t != 1 {
        return Err(inadmissible(
            "members of a point-star pairwise share exactly one element, so t must be 1",
        ));
    }
    if case != CaseLabel::Thm1Case1 {
        return Err(inadmissible(format!(
            "2 max R < n fails: point-stars are extremal only past the {} boundary",
            2 * spec.r()
        )));
    }
    let Anchor::Point(i) = config.anchor else {
        return Err(inadmissible("a point-star is anchored at a ground element"));
    };
    if i < 1 || i > spec.n {
        return Err(inadmissible(format!(
            "anchor point {i} is outside the ground set [{}]",
            spec.n
        )));
    }
    let family = setworld::point_star_family(spec.n, want, i);
    debug_assert!(!family.is_empty());
    Ok((Family::Sets(family.clone()), Family::Sets(family)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttainmentReport {
    pub cross_t_intersecting: bool,
    #[serde(with = "crate::exactnum::serde_string")]
    pub total: BigNat,
    #[serde(with = "crate::exactnum::serde_string")]
    pub bound: BigNat,
    pub attains: bool,
}

/// Checks a concrete family pair against the bound. `attains` means the
/// pair is cross t-intersecting and its total size equals the bound.
pub fn verify_attainment(
    spec: &FamilySpec,
    a: &Family,
    b: &Family,
) -> Result<AttainmentReport, ExtremalError> {
    if a.is_empty() || b.is_empty() {
        return Err(ExtremalError::EmptyFamily);
    }
    check_family(spec, a, Side::X)?;
    check_family(spec, b, Side::Y)?;
    let cross = match (a, b) {
        (Family::Sets(av), Family::Sets(bv)) => {
            setworld::is_cross_t_intersecting(av, bv, spec.t)?
        }
        (Family::Subspaces(av), Family::Subspaces(bv)) => {
            let field = FiniteField::new(spec.q.expect("subspace specs carry q"))?;
            qworld::is_cross_t_intersecting(&field, av, bv, spec.t)?
        }
        _ => unreachable!("check_family enforces world coherence"),
    };
    let report = bound(spec)?;
    let total = BigNat::from(a.len() as u64) + BigNat::from(b.len() as u64);
    let attains = cross && total == report.bound;
    Ok(AttainmentReport {
        cross_t_intersecting: cross,
        total,
        bound: report.bound,
        attains,
    })
}

fn check_family(spec: &FamilySpec, fam: &Family, side: Side) -> Result<(), ExtremalError> {
    let sizes = spec.sizes_of(side);
    match (spec.world, fam) {
        (World::Sets, Family::Sets(members)) => {
            for v in members {
                let largest = v.members().into_iter().max().unwrap_or(0);
                if largest > spec.n || !sizes.contains(v.size()) {
                    return Err(ExtremalError::SizeOutOfLayer {
                        member: v.to_string(),
                    });
                }
            }
        }
        (World::Subspaces, Family::Subspaces(members)) => {
            for u in members {
                if u.ambient_dim() != spec.n || !sizes.contains(u.dim()) {
                    return Err(ExtremalError::SizeOutOfLayer {
                        member: u.to_string(),
                    });
                }
            }
        }
        _ => return Err(ExtremalError::WorldMismatch),
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniquenessStatus {
    Equal,
    EvidenceOnly,
    ExtraFragments,
}

impl std::fmt::Display for UniquenessStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            UniquenessStatus::Equal => "equal",
            UniquenessStatus::EvidenceOnly => "evidence_only",
            UniquenessStatus::ExtraFragments => "extra_fragments",
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub status: UniquenessStatus,
    pub case_label: CaseLabel,
    /// True when the catalogs were enumerated exhaustively rather than by
    /// the bounded evidence scan.
    pub complete: bool,
    pub predicted_x: usize,
    pub predicted_y: usize,
    pub actual_x: usize,
    pub actual_y: usize,
    pub missing_x: Vec<Vec<usize>>,
    pub missing_y: Vec<Vec<usize>>,
    pub extra_x: Vec<Vec<usize>>,
    pub extra_y: Vec<Vec<usize>>,
}

/// Compares the oracle's fragment catalog against the one the attaining
/// shapes predict: singletons on each attaining side's extreme layer,
/// their star duals on the other side, and point-stars for the two
/// exceptional finite-set shapes.
///
/// When the smaller side exceeds `cap`, the comparison downgrades to a
/// bounded scan of fragments with at most UNIQUENESS_EVIDENCE_SIZE
/// members; the report then carries `complete: false` and at best the
/// status `evidence_only`, never `equal`.
pub fn uniqueness_report(spec: &FamilySpec, cap: usize) -> Result<UniquenessReport, ExtremalError> {
    let report = bound(spec)?;
    let model = build_model(spec, &ModelConfig::default())?;
    let predicted_x = predicted_catalog(&model, &report, Side::X);
    let predicted_y = predicted_catalog(&model, &report, Side::Y);
    let opts = OracleOptions {
        method: MethodChoice::Exhaustive,
        exhaustive_cap: cap,
        ..OracleOptions::default()
    };
    match run_oracle(&model, &opts) {
        Ok(res) => {
            let ax: Vec<Vec<usize>> = res
                .fragments_x
                .expect("exhaustive results carry catalogs")
                .into_iter()
                .map(|f| f.members)
                .collect();
            let ay: Vec<Vec<usize>> = res
                .fragments_y
                .expect("exhaustive results carry catalogs")
                .into_iter()
                .map(|f| f.members)
                .collect();
            let (missing_x, extra_x) = catalog_diff(&predicted_x, &ax, None);
            let (missing_y, extra_y) = catalog_diff(&predicted_y, &ay, None);
            let clean = missing_x.is_empty()
                && missing_y.is_empty()
                && extra_x.is_empty()
                && extra_y.is_empty();
            Ok(UniquenessReport {
                status: if clean {
                    UniquenessStatus::Equal
                } else {
                    UniquenessStatus::ExtraFragments
                },
                case_label: report.case_label,
                complete: true,
                predicted_x: predicted_x.len(),
                predicted_y: predicted_y.len(),
                actual_x: ax.len(),
                actual_y: ay.len(),
                missing_x,
                missing_y,
                extra_x,
                extra_y,
            })
        }
        Err(OracleError::CapExceeded { .. }) => {
            let sx = bounded_fragment_scan(&model, Side::X, UNIQUENESS_EVIDENCE_SIZE)?;
            let sy = bounded_fragment_scan(&model, Side::Y, UNIQUENESS_EVIDENCE_SIZE)?;
            for f in sx.fragments.iter().chain(&sy.fragments) {
                let image = phi(&model, f.side, &f.members)?;
                assert_eq!(image, f.dual, "recorded dual disagrees with phi");
                let back = phi(&model, f.side.opposite(), &image)?;
                assert_eq!(back, f.members, "phi failed to return to the fragment");
            }
            let ax: Vec<Vec<usize>> = sx.fragments.iter().map(|f| f.members.to_indices()).collect();
            let ay: Vec<Vec<usize>> = sy.fragments.iter().map(|f| f.members.to_indices()).collect();
            let (missing_x, extra_x) =
                catalog_diff(&predicted_x, &ax, Some(UNIQUENESS_EVIDENCE_SIZE));
            let (missing_y, extra_y) =
                catalog_diff(&predicted_y, &ay, Some(UNIQUENESS_EVIDENCE_SIZE));
            let clean = missing_x.is_empty()
                && missing_y.is_empty()
                && extra_x.is_empty()
                && extra_y.is_empty();
            Ok(UniquenessReport {
                status: if clean {
                    UniquenessStatus::EvidenceOnly
                } else {
                    UniquenessStatus::ExtraFragments
                },
                case_label: report.case_label,
                complete: false,
                predicted_x: predicted_x.len(),
                predicted_y: predicted_y.len(),
                actual_x: ax.len(),
                actual_y: ay.len(),
                missing_x,
                missing_y,
                extra_x,
                extra_y,
            })
        }
        Err(e) => Err(e.into()),
    }
}

/// (missing, extra): predictions absent from the actual catalog, and
/// actual fragments the prediction does not cover. `size_limit` restricts
/// the missing check to predictions a bounded scan could have seen.
fn catalog_diff(
    predicted: &[Vec<usize>],
    actual: &[Vec<usize>],
    size_limit: Option<usize>,
) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let pset: BTreeSet<&Vec<usize>> = predicted.iter().collect();
    let aset: BTreeSet<&Vec<usize>> = actual.iter().collect();
    let missing = predicted
        .iter()
        .filter(|p| size_limit.map_or(true, |k| p.len() <= k))
        .filter(|p| !aset.contains(p))
        .cloned()
        .collect();
    let extra = actual
        .iter()
        .filter(|a| !pset.contains(a))
        .cloned()
        .collect();
    (missing, extra)
}

fn predicted_catalog(
    model: &BipartiteModel,
    report: &BoundReport,
    side: Side,
) -> Vec<Vec<usize>> {
    let spec = model.spec();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let a_attains = matches!(
        report.attaining_side,
        AttainingSide::ASingleton | AttainingSide::Tie
    );
    let b_attains = matches!(
        report.attaining_side,
        AttainingSide::BSingleton | AttainingSide::Tie
    );
    let (own_attains, opp_attains) = match side {
        Side::X => (a_attains, b_attains),
        Side::Y => (b_attains, a_attains),
    };
    if own_attains {
        // Singletons on this side's extreme layer (the last one; layers
        // are in ascending size order).
        let last = model.layer_count(side) - 1;
        out.extend(model.layer_range(side, last).map(|v| vec![v]));
    }
    if opp_attains {
        // Star traces: for each extreme-layer vertex w opposite, the
        // members on this side meeting w, i.e. phi({w}).
        let opp = side.opposite();
        let last = model.layer_count(opp) - 1;
        for w in model.layer_range(opp, last) {
            out.push(model.neighbors_of(opp, w).complement().to_indices());
        }
    }
    if spec.world == World::Sets && spec.t == 1 {
        let r = spec.r_sizes.as_slice();
        let s = spec.s_sizes.as_slice();
        let exceptional = r == s && (r == [1, 2] || r == [2]);
        if exceptional {
            for i in 1..=spec.n {
                let star: Vec<usize> = (0..model.side_len(side))
                    .filter(|&v| model.set_vertex(side, v).unwrap().contains(i))
                    .collect();
                out.push(star);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, thiserror::Error)]
pub enum FamilyFileError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("family {family} is empty")]
    Empty { family: &'static str },
    #[error("family {family}, member {index}: {problem}")]
    Member {
        family: &'static str,
        index: usize,
        problem: String,
    },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Deserialize)]
struct RawFamilyFile {
    world: World,
    n: u32,
    #[serde(default)]
    q: Option<u64>,
    t: u32,
    #[serde(rename = "A")]
    a: serde_json::Value,
    #[serde(rename = "B")]
    b: serde_json::Value,
}

/// Parses a family file and infers R and S from the member sizes.
///
/// Sets: {"world":"sets","n":5,"t":1,"A":[[1,2]],"B":[[1,2],[1,3]]},
/// each member a strictly increasing list of 1-based elements.
/// Subspaces: {"world":"subspaces","n":4,"q":2,"t":1,"A":[[[1,0,0,0],
/// [0,1,0,0]]],"B":[...]}, each member a list of basis rows with entries
/// in [0, q); bases are canonicalized on load.
pub fn load_family_file(text: &str) -> Result<(FamilySpec, Family, Family), FamilyFileError> {
    let raw: RawFamilyFile = serde_json::from_str(text)?;
    match raw.world {
        World::Sets => {
            if raw.q.is_some() {
                return Err(SpecError::QMismatch.into());
            }
            let a = parse_set_family(&raw.a, raw.n, "A")?;
            let b = parse_set_family(&raw.b, raw.n, "B")?;
            let r: Vec<u32> = a.iter().map(|v| v.size()).collect();
            let s: Vec<u32> = b.iter().map(|v| v.size()).collect();
            let spec = FamilySpec::sets(raw.n, r, s, raw.t)?;
            Ok((spec, Family::Sets(a), Family::Sets(b)))
        }
        World::Subspaces => {
            let q = raw.q.ok_or(FamilyFileError::Spec(SpecError::QMismatch))?;
            let field = FiniteField::new(q).map_err(SpecError::from)?;
            let a = parse_subspace_family(&raw.a, &field, raw.n, "A")?;
            let b = parse_subspace_family(&raw.b, &field, raw.n, "B")?;
            let r: Vec<u32> = a.iter().map(|u| u.dim()).collect();
            let s: Vec<u32> = b.iter().map(|u| u.dim()).collect();
            let spec = FamilySpec::subspaces(raw.n, q, r, s, raw.t)?;
            Ok((spec, Family::Subspaces(a), Family::Subspaces(b)))
        }
    }
}

fn parse_set_family(
    value: &serde_json::Value,
    n: u32,
    family: &'static str,
) -> Result<Vec<GroundSetVertex>, FamilyFileError> {
    let items = value.as_array().ok_or(FamilyFileError::Member {
        family,
        index: 0,
        problem: "expected an array of members".into(),
    })?;
    if items.is_empty() {
        return Err(FamilyFileError::Empty { family });
    }
    let mut out = Vec::with_capacity(items.len());
    for (index, item) in items.iter().enumerate() {
        let members: Vec<u32> =
            serde_json::from_value(item.clone()).map_err(|e| FamilyFileError::Member {
                family,
                index,
                problem: e.to_string(),
            })?;
        let v = GroundSetVertex::checked_from_members(&members, n).map_err(|e| {
            FamilyFileError::Member {
                family,
                index,
                problem: e.to_string(),
            }
        })?;
        out.push(v);
    }
    Ok(out)
}

fn parse_subspace_family(
    value: &serde_json::Value,
    field: &FiniteField,
    n: u32,
    family: &'static str,
) -> Result<Vec<Subspace>, FamilyFileError> {
    let items = value.as_array().ok_or(FamilyFileError::Member {
        family,
        index: 0,
        problem: "expected an array of members".into(),
    })?;
    if items.is_empty() {
        return Err(FamilyFileError::Empty { family });
    }
    let mut out = Vec::with_capacity(items.len());
    for (index, item) in items.iter().enumerate() {
        let rows: Vec<Vec<u32>> =
            serde_json::from_value(item.clone()).map_err(|e| FamilyFileError::Member {
                family,
                index,
                problem: e.to_string(),
            })?;
        let u = Subspace::checked_from_basis(field, n, &rows).map_err(|e| {
            FamilyFileError::Member {
                family,
                index,
                problem: e.to_string(),
            }
        })?;
        out.push(u);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qworld::enumerate_subspaces;

    fn sets_spec(n: u32, r: Vec<u32>, s: Vec<u32>, t: u32) -> FamilySpec {
        FamilySpec::sets(n, r, s, t).unwrap()
    }

    #[test]
    fn singleton_star_construction_and_attainment() {
        let spec = sets_spec(5, vec![2], vec![2], 1);
        let config = ExtremalConfig {
            kind: ExtremalKind::ASingletonStar,
            anchor: Anchor::Set(GroundSetVertex::from_members(&[1, 2])),
        };
        let (a, b) = construct_config(&spec, &config).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 7);
        let report = verify_attainment(&spec, &a, &b).unwrap();
        assert!(report.cross_t_intersecting);
        assert_eq!(report.total, BigNat::from(8u32));
        assert_eq!(report.bound, BigNat::from(8u32));
        assert!(report.attains);
    }

    #[test]
    fn point_star_construction_and_attainment() {
        let spec = sets_spec(5, vec![1, 2], vec![1, 2], 1);
        let config = ExtremalConfig {
            kind: ExtremalKind::PointStarSizes12,
            anchor: Anchor::Point(1),
        };
        let (a, b) = construct_config(&spec, &config).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(b.len(), 5);
        let report = verify_attainment(&spec, &a, &b).unwrap();
        assert!(report.attains);
        assert_eq!(report.bound, BigNat::from(10u32));

        let spec6 = sets_spec(6, vec![2], vec![2], 1);
        let config6 = ExtremalConfig {
            kind: ExtremalKind::PointStarSize2,
            anchor: Anchor::Point(3),
        };
        let (a6, b6) = construct_config(&spec6, &config6).unwrap();
        assert_eq!(a6.len(), 5);
        assert_eq!(b6.len(), 5);
        assert!(verify_attainment(&spec6, &a6, &b6).unwrap().attains);
    }

    #[test]
    fn subspace_singleton_star_attains() {
        let spec = FamilySpec::subspaces(4, 2, vec![2], vec![2], 1).unwrap();
        let anchor = enumerate_subspaces(4, 2, 2).unwrap()[0].clone();
        let config = ExtremalConfig {
            kind: ExtremalKind::ASingletonStar,
            anchor: Anchor::Subspace(anchor),
        };
        let (a, b) = construct_config(&spec, &config).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 19);
        let report = verify_attainment(&spec, &a, &b).unwrap();
        assert!(report.attains);
        assert_eq!(report.bound, BigNat::from(20u32));
    }

    #[test]
    fn inadmissible_configurations_name_the_failed_hypothesis() {
        // Point-stars need 2 max R < n.
        let boundary = sets_spec(4, vec![2], vec![2], 1);
        let config = ExtremalConfig {
            kind: ExtremalKind::PointStarSize2,
            anchor: Anchor::Point(1),
        };
        match construct_config(&boundary, &config) {
            Err(ExtremalError::InadmissibleConfig { hypothesis }) => {
                assert!(hypothesis.contains("2 max R < n"), "{hypothesis}");
            }
            other => panic!("expected InadmissibleConfig, got {other:?}"),
        }

        // Wrong size sets for the exceptional shapes.
        let threes = sets_spec(7, vec![3], vec![3], 1);
        assert!(matches!(
            construct_config(&threes, &config),
            Err(ExtremalError::InadmissibleConfig { .. })
        ));

        // The dominated singleton orientation is rejected.
        let lopsided = sets_spec(11, vec![1], vec![1, 2], 1);
        let b_config = ExtremalConfig {
            kind: ExtremalKind::BSingletonStar,
            anchor: Anchor::Set(GroundSetVertex::from_members(&[1, 2])),
        };
        assert!(matches!(
            construct_config(&lopsided, &b_config),
            Err(ExtremalError::InadmissibleConfig { .. })
        ));

        // Anchor of the wrong size.
        let spec = sets_spec(5, vec![2], vec![2], 1);
        let wrong = ExtremalConfig {
            kind: ExtremalKind::ASingletonStar,
            anchor: Anchor::Set(GroundSetVertex::from_members(&[1, 2, 3])),
        };
        assert!(matches!(
            construct_config(&spec, &wrong),
            Err(ExtremalError::InadmissibleConfig { .. })
        ));
    }

    #[test]
    fn precondition_violations_propagate() {
        let spec = sets_spec(5, vec![1, 3], vec![1, 3], 1);
        let config = ExtremalConfig {
            kind: ExtremalKind::ASingletonStar,
            anchor: Anchor::Set(GroundSetVertex::from_members(&[1, 2, 3])),
        };
        assert!(matches!(
            construct_config(&spec, &config),
            Err(ExtremalError::Bounds(
                BoundsError::PreconditionViolated { .. }
            ))
        ));
        let a = Family::Sets(vec![GroundSetVertex::from_members(&[1, 2, 3])]);
        assert!(matches!(
            verify_attainment(&spec, &a, &a),
            Err(ExtremalError::Bounds(
                BoundsError::PreconditionViolated { .. }
            ))
        ));
    }

    #[test]
    fn suboptimal_and_non_intersecting_pairs_are_reported() {
        let spec = sets_spec(5, vec![2], vec![2], 1);
        let a = Family::Sets(vec![GroundSetVertex::from_members(&[1, 2])]);
        let b = Family::Sets(vec![GroundSetVertex::from_members(&[1, 3])]);
        let report = verify_attainment(&spec, &a, &b).unwrap();
        assert!(report.cross_t_intersecting);
        assert_eq!(report.total, BigNat::from(2u32));
        assert!(!report.attains);

        let disjoint = Family::Sets(vec![GroundSetVertex::from_members(&[3, 4])]);
        let report = verify_attainment(&spec, &a, &disjoint).unwrap();
        assert!(!report.cross_t_intersecting);
        assert!(!report.attains);
    }

    #[test]
    fn member_and_world_validation() {
        let spec = sets_spec(5, vec![2], vec![2], 1);
        let a = Family::Sets(vec![GroundSetVertex::from_members(&[1, 2])]);
        let oversized = Family::Sets(vec![GroundSetVertex::from_members(&[1, 2, 3])]);
        match verify_attainment(&spec, &a, &oversized) {
            Err(ExtremalError::SizeOutOfLayer { member }) => {
                assert_eq!(member, "{1,2,3}");
            }
            other => panic!("expected SizeOutOfLayer, got {other:?}"),
        }
        assert!(matches!(
            verify_attainment(&spec, &a, &Family::Sets(vec![])),
            Err(ExtremalError::EmptyFamily)
        ));
        let subspace = Family::Subspaces(enumerate_subspaces(4, 2, 2).unwrap());
        assert!(matches!(
            verify_attainment(&spec, &a, &subspace),
            Err(ExtremalError::WorldMismatch)
        ));
    }

    #[test]
    fn uniqueness_equal_on_theorem_cases() {
        let report = uniqueness_report(&sets_spec(5, vec![2], vec![2], 1), 24).unwrap();
        assert_eq!(report.status, UniquenessStatus::Equal);
        assert!(report.complete);
        assert_eq!(report.case_label, CaseLabel::Thm1Case1);
        assert_eq!(report.predicted_x, 25);
        assert_eq!(report.actual_x, 25);
        assert!(report.missing_x.is_empty() && report.extra_x.is_empty());

        let report = uniqueness_report(&sets_spec(6, vec![2], vec![2], 1), 24).unwrap();
        assert_eq!(report.status, UniquenessStatus::Equal);

        let report = uniqueness_report(&sets_spec(5, vec![1, 2], vec![1, 2], 1), 24).unwrap();
        assert_eq!(report.status, UniquenessStatus::Equal);
    }

    #[test]
    fn uniqueness_equal_for_the_dominated_orientation() {
        let report = uniqueness_report(&sets_spec(11, vec![1], vec![1, 2], 1), 24).unwrap();
        assert_eq!(report.status, UniquenessStatus::Equal);
        assert_eq!(report.case_label, CaseLabel::Thm1Case2I);
        assert_eq!(report.predicted_x, 11);
        assert_eq!(report.predicted_y, 11);
        assert_eq!(report.actual_x, 11);
    }

    #[test]
    fn boundary_instance_reports_extra_fragments() {
        let report = uniqueness_report(&sets_spec(4, vec![2], vec![2], 1), 24).unwrap();
        assert_eq!(report.status, UniquenessStatus::ExtraFragments);
        assert_eq!(report.case_label, CaseLabel::BoundOnly);
        assert_eq!(report.actual_x, 62);
        assert!(report.missing_x.is_empty());
        assert!(!report.extra_x.is_empty());
        // The complement pair {1,2}, {3,4} is one of the unpredicted
        // fragments.
        assert!(report.extra_x.contains(&vec![0, 5]));
    }

    #[test]
    fn oversized_model_downgrades_to_evidence() {
        let spec = FamilySpec::subspaces(4, 2, vec![2], vec![2], 1).unwrap();
        let report = uniqueness_report(&spec, 24).unwrap();
        assert_eq!(report.status, UniquenessStatus::EvidenceOnly);
        assert!(!report.complete);
        // All 35 singleton predictions are confirmed by the bounded scan;
        // the 35 star traces are too large for it to see.
        assert_eq!(report.actual_x, 35);
        assert!(report.missing_x.is_empty());
        assert!(report.extra_x.is_empty());
    }

    #[test]
    fn family_files_parse_and_canonicalize() {
        let text = r#"{"world":"sets","n":5,"t":1,"A":[[1,2]],"B":[[1,2],[1,3]]}"#;
        let (spec, a, b) = load_family_file(text).unwrap();
        assert_eq!(spec.n, 5);
        assert_eq!(spec.r_sizes.as_slice(), &[2]);
        assert_eq!(spec.s_sizes.as_slice(), &[2]);
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 2);

        let text = r#"{"world":"subspaces","n":4,"q":2,"t":1,
            "A":[[[0,1,0,0],[1,1,0,0]]],
            "B":[[[1,0,0,0],[0,1,0,0]]]}"#;
        let (spec, a, _) = load_family_file(text).unwrap();
        assert_eq!(spec.q, Some(2));
        let Family::Subspaces(members) = &a else {
            panic!("expected subspaces")
        };
        // The basis is reduced on load.
        assert_eq!(members[0].basis_rows(), &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    }

    #[test]
    fn family_file_errors_are_specific() {
        let decreasing = r#"{"world":"sets","n":5,"t":1,"A":[[2,1]],"B":[[1,2]]}"#;
        match load_family_file(decreasing) {
            Err(FamilyFileError::Member { family: "A", index: 0, .. }) => {}
            other => panic!("expected a member error, got {other:?}"),
        }
        let missing_q = r#"{"world":"subspaces","n":4,"t":1,"A":[[[1,0,0,0]]],"B":[[[1,0,0,0]]]}"#;
        assert!(matches!(
            load_family_file(missing_q),
            Err(FamilyFileError::Spec(SpecError::QMismatch))
        ));
        let empty = r#"{"world":"sets","n":5,"t":1,"A":[],"B":[[1,2]]}"#;
        assert!(matches!(
            load_family_file(empty),
            Err(FamilyFileError::Empty { family: "A" })
        ));
        assert!(matches!(
            load_family_file("not json"),
            Err(FamilyFileError::Json(_))
        ));
    }
}
