//! Independence oracles for the bipartite models.
//!
//! The quantity of interest is alpha(G): the largest independent set that
//! touches both sides of the graph. It obeys the deficiency identity
//! alpha = |Y| - epsilon(X) = |X| - epsilon(Y), where epsilon(X) is the
//! minimum of |N(A)| - |A| over nonempty A on the X side with N(A) != Y.
//! That gives two genuinely independent ways to compute alpha: scan one
//! side's subsets exhaustively, or fix a non-adjacent pair and reduce the
//! rest to a maximum matching via Koenig's theorem. The implementations
//! share no code, so agreement between them is real evidence.
//!
//! A subset attaining epsilon is called a fragment here. Fragments come in
//! dual pairs: phi(A) = Y \ N(A) maps the X fragments bijectively onto the
//! Y fragments, which is why scanning the smaller side yields the complete
//! catalog for both.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bipgraph::BipartiteModel;
use crate::bitset::Bitset;
use crate::bounds::Side;
use crate::exactnum::BigNat;

/// Largest side size the exhaustive scan accepts unless told otherwise.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 24;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("side {side:?} has {size} vertices, above the exhaustive cap of {cap}")]
    CapExceeded { side: Side, size: usize, cap: usize },
    #[error("every cross pair is adjacent; no independent set touches both sides")]
    NoNontrivialIndependentSet,
    #[error("phi is undefined on the empty subset")]
    EmptySubset,
    #[error("phi is undefined when N(A) covers the whole opposite side")]
    FullNeighborhood,
}

/// A deficiency minimizer together with its image under phi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub side: Side,
    pub members: Bitset,
    pub dual: Bitset,
}

/// Everything one exhaustive (or bounded) scan of a side learns.
#[derive(Debug, Clone)]
pub struct SideScan {
    pub side: Side,
    pub epsilon: i64,
    pub fragments: Vec<Fragment>,
}

/// Scans every nonempty subset A of `side` with N(A) != Y and returns the
/// minimum deficiency |N(A)| - |A| together with all minimizers.
///
/// Two prunes keep the 2^m tree tractable. Once N(A) covers the opposite
/// side, no superset of A qualifies, so the include-branch is cut there.
/// And a partial subset whose deficiency cannot come back down to the
/// running minimum, even if every remaining vertex lowered it by one, is
/// abandoned.
pub fn epsilon_exhaustive(
    model: &BipartiteModel,
    side: Side,
    cap: usize,
) -> Result<SideScan, OracleError> {
    let m = model.side_len(side);
    if m > cap {
        return Err(OracleError::CapExceeded { side, size: m, cap });
    }
    let opp_len = model.side_len(side.opposite());
    let rows: Vec<Bitset> = (0..m).map(|i| model.neighbors_of(side, i)).collect();

    let mut best: Option<i64> = None;
    min_deficiency(&rows, opp_len, 0, 0, &Bitset::new(opp_len), &mut best);
    let epsilon = best.ok_or(OracleError::NoNontrivialIndependentSet)?;

    let mut raw: Vec<(Vec<usize>, Bitset)> = Vec::new();
    let mut stack = Vec::new();
    collect_minimizers(
        &rows,
        opp_len,
        0,
        &mut stack,
        &Bitset::new(opp_len),
        epsilon,
        &mut raw,
    );
    let mut fragments: Vec<Fragment> = raw
        .into_iter()
        .map(|(members, nb)| Fragment {
            side,
            members: Bitset::from_indices(m, &members),
            dual: nb.complement(),
        })
        .collect();
    sort_fragments(&mut fragments);
    Ok(SideScan {
        side,
        epsilon,
        fragments,
    })
}

fn min_deficiency(
    rows: &[Bitset],
    opp_len: usize,
    idx: usize,
    count: usize,
    nb: &Bitset,
    best: &mut Option<i64>,
) {
    if idx == rows.len() {
        return;
    }
    let remaining_after = (rows.len() - idx - 1) as i64;
    let mut nb2 = nb.clone();
    nb2.union_with(&rows[idx]);
    let covered = nb2.count();
    if covered < opp_len {
        let def = covered as i64 - (count as i64 + 1);
        if best.map_or(true, |b| def < b) {
            *best = Some(def);
        }
        if best.map_or(true, |b| def - remaining_after < b) {
            min_deficiency(rows, opp_len, idx + 1, count + 1, &nb2, best);
        }
    }
    // Skipping idx: the neighborhood never shrinks, so no extension beats
    // |N(A)| - |A| - (vertices still available).
    let floor = nb.count() as i64 - count as i64 - remaining_after;
    if best.map_or(true, |b| floor < b) {
        min_deficiency(rows, opp_len, idx + 1, count, nb, best);
    }
}

fn collect_minimizers(
    rows: &[Bitset],
    opp_len: usize,
    idx: usize,
    members: &mut Vec<usize>,
    nb: &Bitset,
    eps: i64,
    out: &mut Vec<(Vec<usize>, Bitset)>,
) {
    if idx == rows.len() {
        return;
    }
    let remaining_after = (rows.len() - idx - 1) as i64;
    let mut nb2 = nb.clone();
    nb2.union_with(&rows[idx]);
    let covered = nb2.count();
    if covered < opp_len {
        members.push(idx);
        let def = covered as i64 - members.len() as i64;
        if def == eps {
            out.push((members.clone(), nb2.clone()));
        }
        if def - remaining_after <= eps {
            collect_minimizers(rows, opp_len, idx + 1, members, &nb2, eps, out);
        }
        members.pop();
    }
    let floor = nb.count() as i64 - members.len() as i64 - remaining_after;
    if floor <= eps {
        collect_minimizers(rows, opp_len, idx + 1, members, nb, eps, out);
    }
}

fn sort_fragments(fragments: &mut [Fragment]) {
    fragments.sort_by(|a, b| {
        a.members
            .count()
            .cmp(&b.members.count())
            .then_with(|| a.members.cmp(&b.members))
    });
}

/// phi(A) = (opposite side) \ N(A), defined for nonempty A whose
/// neighborhood misses at least one vertex. Applying it twice returns A.
pub fn phi(model: &BipartiteModel, side: Side, members: &Bitset) -> Result<Bitset, OracleError> {
    if members.is_empty() {
        return Err(OracleError::EmptySubset);
    }
    let opp_len = model.side_len(side.opposite());
    let mut nb = Bitset::new(opp_len);
    for i in members.iter() {
        nb.union_with(&model.neighbors_of(side, i));
    }
    if nb.count() == opp_len {
        return Err(OracleError::FullNeighborhood);
    }
    Ok(nb.complement())
}

/// How the matching oracle picks the fixed non-adjacent pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    /// One seed per X layer. Sound because relabeling the ground set (or a
    /// change of basis) acts transitively on each layer, so every vertex of
    /// a layer sees the same graph up to isomorphism.
    Representatives,
    /// Every non-adjacent pair. Slower and assumes nothing.
    AllPairs,
}

#[derive(Debug, Clone)]
pub struct MatchingAlpha {
    pub alpha: usize,
    pub witness_x: usize,
    pub witness_y: usize,
}

/// Computes alpha by fixing a non-adjacent pair (x, y), deleting both
/// closed neighborhoods, and taking a maximum independent set of the
/// remaining bipartite graph, which Koenig's theorem reduces to a maximum
/// matching.
pub fn alpha_matching(
    model: &BipartiteModel,
    selection: PairSelection,
) -> Result<MatchingAlpha, OracleError> {
    let x_len = model.x_len();
    let y_len = model.y_len();
    let rows_x: Vec<Bitset> = (0..x_len).map(|i| model.neighbors_of(Side::X, i)).collect();
    let rows_y: Vec<Bitset> = (0..y_len).map(|i| model.neighbors_of(Side::Y, i)).collect();
    let seeds: Vec<usize> = match selection {
        PairSelection::Representatives => (0..model.layer_count(Side::X))
            .map(|l| model.layer_representative(Side::X, l))
            .collect(),
        PairSelection::AllPairs => (0..x_len).collect(),
    };
    let mut best: Option<MatchingAlpha> = None;
    for &x in &seeds {
        for y in 0..y_len {
            if rows_x[x].contains(y) {
                continue;
            }
            let mut alive_x = Bitset::full(x_len);
            alive_x.subtract(&rows_y[y]);
            alive_x.remove(x);
            let mut alive_y = Bitset::full(y_len);
            alive_y.subtract(&rows_x[x]);
            alive_y.remove(y);
            let matched = max_matching(&rows_x, &alive_x, &alive_y, y_len);
            let alpha = 2 + alive_x.count() + alive_y.count() - matched;
            if best.as_ref().map_or(true, |b| alpha > b.alpha) {
                best = Some(MatchingAlpha {
                    alpha,
                    witness_x: x,
                    witness_y: y,
                });
            }
        }
    }
    best.ok_or(OracleError::NoNontrivialIndependentSet)
}

const NIL: usize = usize::MAX;

/// Hopcroft-Karp on the subgraph induced by alive_x x alive_y.
fn max_matching(rows_x: &[Bitset], alive_x: &Bitset, alive_y: &Bitset, y_len: usize) -> usize {
    let xs: Vec<usize> = alive_x.to_indices();
    let mut pair_x = vec![NIL; rows_x.len()];
    let mut pair_y = vec![NIL; y_len];
    let mut dist = vec![u32::MAX; rows_x.len()];
    let mut matched = 0;
    loop {
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &x in &xs {
            if pair_x[x] == NIL {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = u32::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(x) = queue.pop_front() {
            for y in rows_x[x].iter_and(alive_y) {
                let px = pair_y[y];
                if px == NIL {
                    reachable_free = true;
                } else if dist[px] == u32::MAX {
                    dist[px] = dist[x] + 1;
                    queue.push_back(px);
                }
            }
        }
        if !reachable_free {
            break;
        }
        for &x in &xs {
            if pair_x[x] == NIL && augment(x, rows_x, alive_y, &mut pair_x, &mut pair_y, &mut dist)
            {
                matched += 1;
            }
        }
    }
    matched
}

fn augment(
    x: usize,
    rows_x: &[Bitset],
    alive_y: &Bitset,
    pair_x: &mut [usize],
    pair_y: &mut [usize],
    dist: &mut [u32],
) -> bool {
    for y in rows_x[x].iter_and(alive_y) {
        let px = pair_y[y];
        let reaches = px == NIL
            || (dist[px] == dist[x] + 1 && augment(px, rows_x, alive_y, pair_x, pair_y, dist));
        if reaches {
            pair_x[x] = y;
            pair_y[y] = x;
            return true;
        }
    }
    dist[x] = u32::MAX;
    false
}

/// Finds every fragment of `side` with at most `max_size` members without
/// touching the full power set: epsilon comes from the matching oracle,
/// and the subset tree is cut at the size budget and wherever the
/// deficiency cannot return to epsilon within the remaining budget.
pub fn bounded_fragment_scan(
    model: &BipartiteModel,
    side: Side,
    max_size: usize,
) -> Result<SideScan, OracleError> {
    let alpha = alpha_matching(model, PairSelection::Representatives)?.alpha;
    let epsilon = model.side_len(side.opposite()) as i64 - alpha as i64;
    Ok(bounded_scan_with_epsilon(model, side, max_size, epsilon))
}

fn bounded_scan_with_epsilon(
    model: &BipartiteModel,
    side: Side,
    max_size: usize,
    epsilon: i64,
) -> SideScan {
    let m = model.side_len(side);
    let opp_len = model.side_len(side.opposite());
    let rows: Vec<Bitset> = (0..m).map(|i| model.neighbors_of(side, i)).collect();
    let mut raw: Vec<(Vec<usize>, Bitset)> = Vec::new();
    let mut stack = Vec::new();
    bounded_rec(
        &rows,
        opp_len,
        0,
        &mut stack,
        &Bitset::new(opp_len),
        epsilon,
        max_size,
        &mut raw,
    );
    let mut fragments: Vec<Fragment> = raw
        .into_iter()
        .map(|(members, nb)| Fragment {
            side,
            members: Bitset::from_indices(m, &members),
            dual: nb.complement(),
        })
        .collect();
    sort_fragments(&mut fragments);
    SideScan {
        side,
        epsilon,
        fragments,
    }
}

#[allow(clippy::too_many_arguments)]
fn bounded_rec(
    rows: &[Bitset],
    opp_len: usize,
    idx: usize,
    members: &mut Vec<usize>,
    nb: &Bitset,
    eps: i64,
    max_size: usize,
    out: &mut Vec<(Vec<usize>, Bitset)>,
) {
    if idx == rows.len() || members.len() == max_size {
        return;
    }
    let mut nb2 = nb.clone();
    nb2.union_with(&rows[idx]);
    let covered = nb2.count();
    if covered < opp_len {
        members.push(idx);
        let def = covered as i64 - members.len() as i64;
        if def == eps {
            out.push((members.clone(), nb2.clone()));
        }
        let room = (max_size - members.len()) as i64;
        if def - room <= eps {
            bounded_rec(rows, opp_len, idx + 1, members, &nb2, eps, max_size, out);
        }
        members.pop();
    }
    let room = (max_size - members.len()) as i64;
    let floor = nb.count() as i64 - members.len() as i64 - room;
    if floor <= eps {
        bounded_rec(rows, opp_len, idx + 1, members, nb, eps, max_size, out);
    }
}

/// Checks the duality facts on a model small enough to scan both sides:
///
/// * |Y| - epsilon(X) = |X| - epsilon(Y);
/// * phi carries the X catalog bijectively onto the Y catalog, with
///   N(phi(A)) = X \ A for every X fragment A;
/// * the X catalog is closed under intersection and union whenever the
///   intersection is nonempty and N(A u B) is a proper subset of Y.
pub fn check_fragment_duality(model: &BipartiteModel, cap: usize) -> Result<(), String> {
    let sx = epsilon_exhaustive(model, Side::X, cap).map_err(|e| e.to_string())?;
    let sy = epsilon_exhaustive(model, Side::Y, cap).map_err(|e| e.to_string())?;
    let x_len = model.x_len() as i64;
    let y_len = model.y_len() as i64;
    if y_len - sx.epsilon != x_len - sy.epsilon {
        return Err(format!(
            "deficiency identity fails: |Y|-eps(X)={} but |X|-eps(Y)={}",
            y_len - sx.epsilon,
            x_len - sy.epsilon
        ));
    }
    let mut mapped: Vec<Bitset> = Vec::with_capacity(sx.fragments.len());
    for f in &sx.fragments {
        let image = phi(model, Side::X, &f.members).map_err(|e| e.to_string())?;
        if image != f.dual {
            return Err(format!(
                "phi image of {:?} disagrees with the recorded dual",
                f.members.to_indices()
            ));
        }
        let mut nb = Bitset::new(model.x_len());
        for yi in image.iter() {
            nb.union_with(&model.neighbors_of(Side::Y, yi));
        }
        if nb != f.members.complement() {
            return Err(format!(
                "N(phi(A)) != X \\ A for A = {:?}",
                f.members.to_indices()
            ));
        }
        mapped.push(image);
    }
    mapped.sort();
    let mut y_catalog: Vec<Bitset> = sy.fragments.iter().map(|f| f.members.clone()).collect();
    y_catalog.sort();
    if mapped != y_catalog {
        return Err(format!(
            "phi sends the {} X fragments onto {} of the {} Y fragments",
            sx.fragments.len(),
            mapped.len(),
            sy.fragments.len()
        ));
    }
    // The closure check walks every pair of fragments, so a degenerate
    // model (say, a conflict graph that is a perfect matching, where every
    // proper nonempty subset is a fragment) would make it quadratic in an
    // exponential catalog. Refuse honestly rather than spin.
    if sx.fragments.len() > 4096 {
        return Err(format!(
            "catalog of {} fragments is too large for the pairwise closure check",
            sx.fragments.len()
        ));
    }
    let mut x_catalog: Vec<Bitset> = sx.fragments.iter().map(|f| f.members.clone()).collect();
    x_catalog.sort();
    for a in &sx.fragments {
        for b in &sx.fragments {
            let mut inter = a.members.clone();
            inter.intersect_with(&b.members);
            if inter.is_empty() {
                continue;
            }
            let mut uni = a.members.clone();
            uni.union_with(&b.members);
            // N(A u B) = Y exactly when the duals are disjoint; closure is
            // only promised when some vertex survives outside N(A u B).
            let mut dual_inter = a.dual.clone();
            dual_inter.intersect_with(&b.dual);
            if dual_inter.is_empty() {
                continue;
            }
            if x_catalog.binary_search(&inter).is_err() {
                return Err(format!(
                    "intersection {:?} of two fragments is not a fragment",
                    inter.to_indices()
                ));
            }
            if x_catalog.binary_search(&uni).is_err() {
                return Err(format!(
                    "union {:?} of two fragments is not a fragment",
                    uni.to_indices()
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    Exhaustive,
    Matching,
    BoundedScan,
}

impl std::fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OracleMethod::Exhaustive => "exhaustive",
            OracleMethod::Matching => "matching",
            OracleMethod::BoundedScan => "bounded_scan",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Exhaustive,
    Matching,
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub method: MethodChoice,
    pub exhaustive_cap: usize,
    /// Check every non-adjacent pair in the matching oracle instead of one
    /// representative per layer.
    pub paranoid: bool,
    /// In matching mode, also run a bounded fragment scan up to this size.
    pub max_fragment_size: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            method: MethodChoice::Auto,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            paranoid: false,
            max_fragment_size: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentSummary {
    pub members: Vec<usize>,
    #[serde(rename = "dualSize")]
    pub dual_size: usize,
}

/// The oracle's answer. `alpha` is exact. When only one side was scanned,
/// the other side's epsilon and fragments are transported across through
/// the deficiency identity and phi, which lose nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    #[serde(with = "crate::exactnum::serde_string")]
    pub alpha: BigNat,
    #[serde(rename = "epsilonX")]
    pub epsilon_x: i64,
    #[serde(rename = "epsilonY")]
    pub epsilon_y: i64,
    #[serde(rename = "fragmentsX", skip_serializing_if = "Option::is_none")]
    pub fragments_x: Option<Vec<FragmentSummary>>,
    #[serde(rename = "fragmentsY", skip_serializing_if = "Option::is_none")]
    pub fragments_y: Option<Vec<FragmentSummary>>,
    /// True when the fragment catalogs are known to be complete.
    pub complete: bool,
    pub method: OracleMethod,
}

fn summaries(fragments: &[Fragment]) -> Vec<FragmentSummary> {
    fragments
        .iter()
        .map(|f| FragmentSummary {
            members: f.members.to_indices(),
            dual_size: f.dual.count(),
        })
        .collect()
}

/// Runs the oracle the way the options ask for. Auto mode scans the
/// smaller side exhaustively when it fits under the cap and falls back to
/// the matching oracle otherwise.
pub fn run_oracle(
    model: &BipartiteModel,
    opts: &OracleOptions,
) -> Result<OracleResult, OracleError> {
    let x_len = model.x_len();
    let y_len = model.y_len();
    let small_side = if x_len <= y_len { Side::X } else { Side::Y };
    let use_exhaustive = match opts.method {
        MethodChoice::Exhaustive => true,
        MethodChoice::Matching => false,
        MethodChoice::Auto => model.side_len(small_side) <= opts.exhaustive_cap,
    };
    if use_exhaustive {
        return oracle_exhaustive(model, small_side, opts.exhaustive_cap);
    }
    let selection = if opts.paranoid {
        PairSelection::AllPairs
    } else {
        PairSelection::Representatives
    };
    let alpha = alpha_matching(model, selection)?.alpha;
    let epsilon_x = y_len as i64 - alpha as i64;
    let epsilon_y = x_len as i64 - alpha as i64;
    let (fragments_x, fragments_y, method) = match opts.max_fragment_size {
        Some(k) => {
            let fx = bounded_scan_with_epsilon(model, Side::X, k, epsilon_x);
            let fy = bounded_scan_with_epsilon(model, Side::Y, k, epsilon_y);
            (
                Some(summaries(&fx.fragments)),
                Some(summaries(&fy.fragments)),
                OracleMethod::BoundedScan,
            )
        }
        None => (None, None, OracleMethod::Matching),
    };
    Ok(OracleResult {
        alpha: BigNat::from(alpha),
        epsilon_x,
        epsilon_y,
        fragments_x,
        fragments_y,
        complete: false,
        method,
    })
}

fn oracle_exhaustive(
    model: &BipartiteModel,
    primary: Side,
    cap: usize,
) -> Result<OracleResult, OracleError> {
    let scan = epsilon_exhaustive(model, primary, cap)?;
    let opp = primary.opposite();
    let opp_len = model.side_len(opp);
    let alpha = opp_len as i64 - scan.epsilon;
    assert!(alpha >= 2, "a fragment always yields a two-sided witness");
    let opp_scan = if opp_len <= cap {
        let s = epsilon_exhaustive(model, opp, cap)?;
        assert_eq!(
            model.side_len(primary) as i64 - s.epsilon,
            alpha,
            "the two one-sided scans disagree on alpha"
        );
        s
    } else {
        let mut fragments: Vec<Fragment> = scan
            .fragments
            .iter()
            .map(|f| Fragment {
                side: opp,
                members: f.dual.clone(),
                dual: f.members.clone(),
            })
            .collect();
        sort_fragments(&mut fragments);
        SideScan {
            side: opp,
            epsilon: model.side_len(primary) as i64 - alpha,
            fragments,
        }
    };
    let (sx, sy) = match primary {
        Side::X => (&scan, &opp_scan),
        Side::Y => (&opp_scan, &scan),
    };
    Ok(OracleResult {
        alpha: BigNat::from(alpha as u64),
        epsilon_x: sx.epsilon,
        epsilon_y: sy.epsilon,
        fragments_x: Some(summaries(&sx.fragments)),
        fragments_y: Some(summaries(&sy.fragments)),
        complete: true,
        method: OracleMethod::Exhaustive,
    })
}
