//! The bipartite graph behind an instance, realized explicitly.
//!
//! Side X is the union of the R-layers, side Y of the S-layers, layers
//! ascending by size; x and y are adjacent exactly when their
//! intersection measure (set size or subspace dimension) is below t, so
//! independent sets meeting both sides are precisely the cross
//! t-intersecting pairs of families.  Vertices are indexed per side in
//! enumeration order, which makes the prefix object {1,..,m} resp.
//! span{e_1,..,e_m} the representative (index = layer offset) of every
//! layer.

use crate::bitset::Bitset;
use crate::bounds::{degree_profile, FamilySpec, Side, World};
use crate::exactnum::BigNat;
use crate::qworld::{self, FiniteField, Subspace};
use crate::setworld::{self, GroundSetVertex};
use rand::{Rng, SeedableRng};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("model needs {vertices} vertices, budget is {budget}")]
    BudgetExceeded { vertices: BigNat, budget: usize },
    #[error(transparent)]
    World(#[from] qworld::QWorldError),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy)]
pub struct ModelConfig {
    /// Hard cap on |X| + |Y|; the exact count is computed before any
    /// enumeration and reported when it does not fit.
    pub max_vertices: usize,
    /// Cache per-vertex neighborhoods as bitsets when |X| * |Y| is at
    /// most this many bits.
    pub cache_bits_limit: u128,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            max_vertices: 200_000,
            cache_bits_limit: 100_000_000,
        }
    }
}

/// A subset of one side's vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    pub side: Side,
    pub bits: Bitset,
}

impl VertexSet {
    pub fn empty(side: Side, len: usize) -> Self {
        VertexSet {
            side,
            bits: Bitset::new(len),
        }
    }

    pub fn from_indices(side: Side, len: usize, indices: &[usize]) -> Self {
        VertexSet {
            side,
            bits: Bitset::from_indices(len, indices),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

enum Payload {
    Sets {
        x: Vec<GroundSetVertex>,
        y: Vec<GroundSetVertex>,
    },
    Subspaces {
        field: FiniteField,
        x: Vec<Subspace>,
        y: Vec<Subspace>,
        x_index: HashMap<Subspace, usize>,
        y_index: HashMap<Subspace, usize>,
    },
}

pub struct BipartiteModel {
    spec: FamilySpec,
    payload: Payload,
    /// Layer start offsets per side, with the side total appended.
    x_offsets: Vec<usize>,
    y_offsets: Vec<usize>,
    /// Cached neighbor rows (x -> bits over Y, y -> bits over X).
    neigh_x: Option<Vec<Bitset>>,
    neigh_y: Option<Vec<Bitset>>,
}

/// Enumerates both sides and (size permitting) caches adjacency.  The
/// vertex budget is checked against the exact closed-form count before
/// anything is allocated.  Theorem preconditions are NOT required: the
/// graph exists for any structurally valid spec.
pub fn build_model(spec: &FamilySpec, config: &ModelConfig) -> Result<BipartiteModel, BuildError> {
    let total = spec.side_total(Side::X) + spec.side_total(Side::Y);
    if total > BigNat::from(config.max_vertices) {
        return Err(BuildError::BudgetExceeded {
            vertices: total,
            budget: config.max_vertices,
        });
    }
    if spec.world == World::Sets && spec.n > 63 {
        return Err(BuildError::Unsupported(format!(
            "set world is limited to n <= 63, got n = {}",
            spec.n
        )));
    }

    let mut x_offsets = vec![0usize];
    let mut y_offsets = vec![0usize];
    let payload = match spec.world {
        World::Sets => {
            let mut x = Vec::new();
            for m in spec.r_sizes.iter() {
                x.extend(setworld::enumerate_layer(spec.n, m));
                x_offsets.push(x.len());
            }
            let mut y = Vec::new();
            for m in spec.s_sizes.iter() {
                y.extend(setworld::enumerate_layer(spec.n, m));
                y_offsets.push(y.len());
            }
            Payload::Sets { x, y }
        }
        World::Subspaces => {
            let q = spec.q.unwrap();
            let field = FiniteField::new(q)?;
            let mut x = Vec::new();
            for m in spec.r_sizes.iter() {
                x.extend(qworld::enumerate_subspaces(spec.n, q, m)?);
                x_offsets.push(x.len());
            }
            let mut y = Vec::new();
            for m in spec.s_sizes.iter() {
                y.extend(qworld::enumerate_subspaces(spec.n, q, m)?);
                y_offsets.push(y.len());
            }
            let x_index = x.iter().cloned().zip(0..).collect();
            let y_index = y.iter().cloned().zip(0..).collect();
            Payload::Subspaces {
                field,
                x,
                y,
                x_index,
                y_index,
            }
        }
    };

    let mut model = BipartiteModel {
        spec: spec.clone(),
        payload,
        x_offsets,
        y_offsets,
        neigh_x: None,
        neigh_y: None,
    };

    let bits = model.x_len() as u128 * model.y_len() as u128;
    if bits <= config.cache_bits_limit {
        let mut nx = vec![Bitset::new(model.y_len()); model.x_len()];
        let mut ny = vec![Bitset::new(model.x_len()); model.y_len()];
        for xi in 0..model.x_len() {
            for yi in 0..model.y_len() {
                if model.measure(xi, yi) < model.spec.t {
                    nx[xi].insert(yi);
                    ny[yi].insert(xi);
                }
            }
        }
        model.neigh_x = Some(nx);
        model.neigh_y = Some(ny);
    }
    Ok(model)
}

impl BipartiteModel {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn x_len(&self) -> usize {
        *self.x_offsets.last().unwrap()
    }

    pub fn y_len(&self) -> usize {
        *self.y_offsets.last().unwrap()
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::X => self.x_len(),
            Side::Y => self.y_len(),
        }
    }

    pub fn layer_count(&self, side: Side) -> usize {
        self.offsets(side).len() - 1
    }

    fn offsets(&self, side: Side) -> &[usize] {
        match side {
            Side::X => &self.x_offsets,
            Side::Y => &self.y_offsets,
        }
    }

    /// Index range of one layer.
    pub fn layer_range(&self, side: Side, layer: usize) -> std::ops::Range<usize> {
        let off = self.offsets(side);
        off[layer]..off[layer + 1]
    }

    /// Size parameter (set size / dimension) of one layer.
    pub fn layer_size_param(&self, side: Side, layer: usize) -> u32 {
        self.spec.sizes_of(side).as_slice()[layer]
    }

    /// Layer containing a vertex index.
    pub fn layer_of(&self, side: Side, idx: usize) -> usize {
        let off = self.offsets(side);
        debug_assert!(idx < *off.last().unwrap());
        off.partition_point(|&o| o <= idx) - 1
    }

    /// The canonical first vertex of a layer: the prefix set {1,..,m}
    /// resp. span{e_1,..,e_m}.
    pub fn layer_representative(&self, side: Side, layer: usize) -> usize {
        self.offsets(side)[layer]
    }

    /// Intersection measure of a cross pair (set size or dimension).
    pub fn measure(&self, xi: usize, yi: usize) -> u32 {
        match &self.payload {
            Payload::Sets { x, y } => setworld::intersection_size(&x[xi], &y[yi]),
            Payload::Subspaces { field, x, y, .. } => {
                qworld::intersection_dim(field, &x[xi], &y[yi])
            }
        }
    }

    pub fn adjacent(&self, xi: usize, yi: usize) -> bool {
        self.measure(xi, yi) < self.spec.t
    }

    /// Neighbor row of one vertex, as a bitset over the opposite side.
    pub fn neighbors_of(&self, side: Side, idx: usize) -> Bitset {
        let cache = match side {
            Side::X => &self.neigh_x,
            Side::Y => &self.neigh_y,
        };
        if let Some(rows) = cache {
            return rows[idx].clone();
        }
        let opp = self.side_len(side.opposite());
        let mut row = Bitset::new(opp);
        for j in 0..opp {
            let adj = match side {
                Side::X => self.adjacent(idx, j),
                Side::Y => self.adjacent(j, idx),
            };
            if adj {
                row.insert(j);
            }
        }
        row
    }

    /// N(A) for a set of vertices on one side.
    pub fn neighborhood(&self, a: &VertexSet) -> VertexSet {
        debug_assert_eq!(a.bits.len(), self.side_len(a.side));
        let mut bits = Bitset::new(self.side_len(a.side.opposite()));
        for i in a.bits.iter() {
            bits.union_with(&self.neighbors_of(a.side, i));
        }
        VertexSet {
            side: a.side.opposite(),
            bits,
        }
    }

    pub fn vertex_degree(&self, side: Side, idx: usize) -> BigNat {
        BigNat::from(self.neighbors_of(side, idx).count())
    }

    /// Human-readable payload of a vertex.
    pub fn describe_vertex(&self, side: Side, idx: usize) -> String {
        match (&self.payload, side) {
            (Payload::Sets { x, .. }, Side::X) => x[idx].to_string(),
            (Payload::Sets { y, .. }, Side::Y) => y[idx].to_string(),
            (Payload::Subspaces { x, .. }, Side::X) => x[idx].to_string(),
            (Payload::Subspaces { y, .. }, Side::Y) => y[idx].to_string(),
        }
    }

    pub fn set_vertex(&self, side: Side, idx: usize) -> Option<&GroundSetVertex> {
        match (&self.payload, side) {
            (Payload::Sets { x, .. }, Side::X) => x.get(idx),
            (Payload::Sets { y, .. }, Side::Y) => y.get(idx),
            _ => None,
        }
    }

    pub fn subspace_vertex(&self, side: Side, idx: usize) -> Option<&Subspace> {
        match (&self.payload, side) {
            (Payload::Subspaces { x, .. }, Side::X) => x.get(idx),
            (Payload::Subspaces { y, .. }, Side::Y) => y.get(idx),
            _ => None,
        }
    }

    /// Index of a set vertex on one side, if present.
    pub fn index_of_set(&self, side: Side, v: &GroundSetVertex) -> Option<usize> {
        let Payload::Sets { x, y } = &self.payload else {
            return None;
        };
        let list = match side {
            Side::X => x,
            Side::Y => y,
        };
        let sizes = self.spec.sizes_of(side);
        let layer = sizes.as_slice().iter().position(|&m| m == v.size())?;
        let range = self.layer_range(side, layer);
        list[range.clone()]
            .binary_search_by_key(&v.bits(), |w| w.bits())
            .ok()
            .map(|i| range.start + i)
    }

    pub fn index_of_subspace(&self, side: Side, v: &Subspace) -> Option<usize> {
        let Payload::Subspaces {
            x_index, y_index, ..
        } = &self.payload
        else {
            return None;
        };
        match side {
            Side::X => x_index.get(v).copied(),
            Side::Y => y_index.get(v).copied(),
        }
    }

    /// Visits every edge as (x index, y index), x-major ascending.
    pub fn for_each_edge(&self, mut f: impl FnMut(usize, usize)) {
        for xi in 0..self.x_len() {
            for yi in self.neighbors_of(Side::X, xi).iter() {
                f(xi, yi);
            }
        }
    }

    pub fn edge_count(&self) -> usize {
        let mut n = 0;
        self.for_each_edge(|_, _| n += 1);
        n
    }

    /// Every vertex degree matches the closed-form layer degree.
    pub fn check_degree_constancy(&self) -> Result<(), String> {
        let profile = degree_profile(&self.spec);
        for entry in profile {
            let layer = self
                .spec
                .sizes_of(entry.side)
                .as_slice()
                .iter()
                .position(|&m| m == entry.size)
                .unwrap();
            for idx in self.layer_range(entry.side, layer) {
                let d = self.vertex_degree(entry.side, idx);
                if d != entry.degree {
                    return Err(format!(
                        "degree of {:?}[{idx}] = {d}, layer formula says {}",
                        entry.side, entry.degree
                    ));
                }
            }
        }
        Ok(())
    }

    /// Non-neighborhood sizes shrink strictly across consecutive layers,
    /// with the world-specific minimum gap, layer by opposite layer.
    /// Checked on representatives; degree constancy covers the rest.
    pub fn check_layer_degree_gaps(&self) -> Result<(), String> {
        debug_assert!(self.spec.theorem_preconditions().is_ok());
        let t = self.spec.t;
        for (side, opp) in [(Side::X, Side::Y), (Side::Y, Side::X)] {
            for layer in 0..self.layer_count(side) - 1 {
                let rep_lo = self.layer_representative(side, layer);
                let rep_hi = self.layer_representative(side, layer + 1);
                let n_lo = self.neighbors_of(side, rep_lo);
                let n_hi = self.neighbors_of(side, rep_hi);
                let mut total_gap_needed = 0u64;
                for opp_layer in 0..self.layer_count(opp) {
                    let range = self.layer_range(opp, opp_layer);
                    let count_nonneigh = |row: &Bitset| {
                        range.clone().filter(|&j| !row.contains(j)).count() as u64
                    };
                    let lo = count_nonneigh(&n_lo);
                    let hi = count_nonneigh(&n_hi);
                    let gap = match self.spec.world {
                        World::Sets => {
                            let sj = self.layer_size_param(opp, opp_layer);
                            (t * (sj - t + 1)) as u64
                        }
                        World::Subspaces => 2,
                    };
                    total_gap_needed += gap;
                    if lo + gap > hi {
                        return Err(format!(
                            "non-neighborhood gap {side:?} layers {layer}->{} vs {opp:?} layer \
                             {opp_layer}: {lo} + {gap} > {hi}",
                            layer + 1
                        ));
                    }
                }
                let lo_total = self.side_len(opp) as u64 - n_lo.count() as u64;
                let hi_total = self.side_len(opp) as u64 - n_hi.count() as u64;
                if lo_total + total_gap_needed > hi_total {
                    return Err(format!(
                        "total non-neighborhood gap {side:?} layers {layer}->{}",
                        layer + 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// For same-layer pairs x != x' with layer size at least the opposite
    /// layer's size, the joint non-neighborhood is strictly smaller than
    /// the single one.  Random pairs, seeded.
    pub fn check_pair_strictness(&self, samples: usize, seed: u64) -> Result<(), String> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for (side, opp) in [(Side::X, Side::Y), (Side::Y, Side::X)] {
            for layer in 0..self.layer_count(side) {
                let range = self.layer_range(side, layer);
                if range.len() < 2 {
                    continue;
                }
                let m = self.layer_size_param(side, layer);
                for opp_layer in 0..self.layer_count(opp) {
                    if m < self.layer_size_param(opp, opp_layer) {
                        continue;
                    }
                    let opp_range = self.layer_range(opp, opp_layer);
                    for _ in 0..samples {
                        let a = rng.gen_range(range.clone());
                        let b = rng.gen_range(range.clone());
                        if a == b {
                            continue;
                        }
                        let na = self.neighbors_of(side, a);
                        let mut nab = na.clone();
                        nab.union_with(&self.neighbors_of(side, b));
                        let single = opp_range.clone().filter(|&j| !na.contains(j)).count();
                        let joint = opp_range.clone().filter(|&j| !nab.contains(j)).count();
                        if joint + 1 > single {
                            return Err(format!(
                                "pair strictness fails on {side:?} layer {layer} pair \
                                 ({a},{b}) vs {opp:?} layer {opp_layer}: joint {joint}, \
                                 single {single}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every layer's union of neighbor rows covers the whole opposite
    /// side (true whenever max R + max S - t < n).
    pub fn check_full_layer_neighborhoods(&self) -> Result<(), String> {
        debug_assert!(self.spec.theorem_preconditions().is_ok());
        for side in [Side::X, Side::Y] {
            for layer in 0..self.layer_count(side) {
                let mut union = Bitset::new(self.side_len(side.opposite()));
                for idx in self.layer_range(side, layer) {
                    union.union_with(&self.neighbors_of(side, idx));
                }
                if union.count() != self.side_len(side.opposite()) {
                    return Err(format!(
                        "N({side:?} layer {layer}) misses part of the opposite side"
                    ));
                }
            }
        }
        Ok(())
    }

    /// The graph is never complete under the theorem preconditions: all
    /// layer representatives are prefixes, so any two intersect in at
    /// least t.
    pub fn check_representatives_nonadjacent(&self) -> Result<(), String> {
        debug_assert!(self.spec.theorem_preconditions().is_ok());
        for i in 0..self.layer_count(Side::X) {
            for j in 0..self.layer_count(Side::Y) {
                let xi = self.layer_representative(Side::X, i);
                let yj = self.layer_representative(Side::Y, j);
                if self.adjacent(xi, yj) {
                    return Err(format!("representatives of layers ({i},{j}) are adjacent"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets_model(n: u32, r: Vec<u32>, s: Vec<u32>, t: u32) -> BipartiteModel {
        let spec = FamilySpec::sets(n, r, s, t).unwrap();
        build_model(&spec, &ModelConfig::default()).unwrap()
    }

    #[test]
    fn build_sizes() {
        let m = sets_model(5, vec![2], vec![2], 1);
        assert_eq!((m.x_len(), m.y_len()), (10, 10));

        let m = sets_model(11, vec![1], vec![1, 2], 1);
        assert_eq!((m.x_len(), m.y_len()), (11, 66));
        assert_eq!(m.layer_count(Side::Y), 2);
        assert_eq!(m.layer_range(Side::Y, 0), 0..11);
        assert_eq!(m.layer_range(Side::Y, 1), 11..66);

        let spec = FamilySpec::subspaces(4, 2, vec![2], vec![2], 1).unwrap();
        let m = build_model(&spec, &ModelConfig::default()).unwrap();
        assert_eq!((m.x_len(), m.y_len()), (35, 35));
    }

    #[test]
    fn budget_is_checked_before_enumeration() {
        let spec = FamilySpec::sets(5, vec![2], vec![2], 1).unwrap();
        let config = ModelConfig {
            max_vertices: 10,
            ..ModelConfig::default()
        };
        match build_model(&spec, &config) {
            Err(BuildError::BudgetExceeded { vertices, budget }) => {
                assert_eq!(vertices, BigNat::from(20u32));
                assert_eq!(budget, 10);
            }
            other => panic!("expected BudgetExceeded, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn adjacency_and_measure() {
        let m = sets_model(5, vec![2], vec![2], 1);
        let x12 = m.index_of_set(Side::X, &GroundSetVertex::from_members(&[1, 2])).unwrap();
        let y34 = m.index_of_set(Side::Y, &GroundSetVertex::from_members(&[3, 4])).unwrap();
        let y13 = m.index_of_set(Side::Y, &GroundSetVertex::from_members(&[1, 3])).unwrap();
        assert_eq!(m.measure(x12, y34), 0);
        assert!(m.adjacent(x12, y34));
        assert_eq!(m.measure(x12, y13), 1);
        assert!(!m.adjacent(x12, y13));
    }

    #[test]
    fn neighborhoods_and_degrees() {
        let m = sets_model(5, vec![2], vec![2], 1);
        let x12 = m.index_of_set(Side::X, &GroundSetVertex::from_members(&[1, 2])).unwrap();
        let nb = m.neighbors_of(Side::X, x12);
        assert_eq!(nb.count(), 3);
        for yi in nb.iter() {
            assert_eq!(m.set_vertex(Side::Y, yi).unwrap().size(), 2);
            assert_eq!(m.measure(x12, yi), 0);
        }
        assert_eq!(m.vertex_degree(Side::X, x12), BigNat::from(3u32));

        let m11 = sets_model(11, vec![1], vec![1, 2], 1);
        assert_eq!(m11.vertex_degree(Side::X, 0), BigNat::from(55u32));

        let spec = FamilySpec::subspaces(4, 2, vec![2], vec![2], 1).unwrap();
        let mq = build_model(&spec, &ModelConfig::default()).unwrap();
        assert_eq!(mq.vertex_degree(Side::X, 0), BigNat::from(16u32));
    }

    #[test]
    fn neighborhood_of_vertex_sets() {
        let m = sets_model(5, vec![2], vec![2], 1);
        // star of {1,2} = Y minus its neighbors: 10 - 3 = 7 vertices
        let x12 = m.index_of_set(Side::X, &GroundSetVertex::from_members(&[1, 2])).unwrap();
        let single = VertexSet::from_indices(Side::X, m.x_len(), &[x12]);
        let n = m.neighborhood(&single);
        assert_eq!(n.side, Side::Y);
        assert_eq!(n.len(), 3);

        // complement pair at n = 4: N({x, xbar}) = {xbar, x} on the other side
        let m4 = sets_model(4, vec![2], vec![2], 1);
        let a = m4.index_of_set(Side::X, &GroundSetVertex::from_members(&[1, 2])).unwrap();
        let b = m4.index_of_set(Side::X, &GroundSetVertex::from_members(&[3, 4])).unwrap();
        let pair = VertexSet::from_indices(Side::X, m4.x_len(), &[a, b]);
        let n = m4.neighborhood(&pair);
        assert_eq!(n.len(), 2);
        let names: Vec<String> = n.bits.iter().map(|i| m4.describe_vertex(Side::Y, i)).collect();
        assert_eq!(names, vec!["{1,2}", "{3,4}"]);

        // empty input
        let n = m4.neighborhood(&VertexSet::empty(Side::X, m4.x_len()));
        assert!(n.is_empty());
    }

    #[test]
    fn representatives_are_prefixes() {
        let m = sets_model(5, vec![2], vec![2], 1);
        let rep = m.layer_representative(Side::X, 0);
        assert_eq!(m.describe_vertex(Side::X, rep), "{1,2}");

        let m11 = sets_model(11, vec![1], vec![1, 2], 1);
        assert_eq!(m11.describe_vertex(Side::Y, m11.layer_representative(Side::Y, 0)), "{1}");
        assert_eq!(m11.describe_vertex(Side::Y, m11.layer_representative(Side::Y, 1)), "{1,2}");

        let spec = FamilySpec::subspaces(4, 2, vec![2], vec![2], 1).unwrap();
        let mq = build_model(&spec, &ModelConfig::default()).unwrap();
        let rep = mq.layer_representative(Side::X, 0);
        assert_eq!(
            mq.subspace_vertex(Side::X, rep).unwrap().basis_rows(),
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]
        );
    }

    #[test]
    fn layer_lookup() {
        let m = sets_model(11, vec![1], vec![1, 2], 1);
        assert_eq!(m.layer_of(Side::Y, 0), 0);
        assert_eq!(m.layer_of(Side::Y, 10), 0);
        assert_eq!(m.layer_of(Side::Y, 11), 1);
        assert_eq!(m.layer_of(Side::Y, 65), 1);
        assert_eq!(m.layer_size_param(Side::Y, 1), 2);
    }

    #[test]
    fn edge_dump_is_consistent() {
        let m = sets_model(5, vec![2], vec![2], 1);
        let mut edges = Vec::new();
        m.for_each_edge(|x, y| edges.push((x, y)));
        assert_eq!(edges.len(), 30);
        assert_eq!(m.edge_count(), 30);
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
        for &(x, y) in &edges {
            assert!(m.adjacent(x, y));
        }
    }

    #[test]
    fn structural_checks_pass_on_catalog_models() {
        let models = [
            sets_model(5, vec![2], vec![2], 1),
            sets_model(6, vec![2], vec![2], 1),
            sets_model(5, vec![1, 2], vec![1, 2], 1),
            sets_model(11, vec![1], vec![1, 2], 1),
            sets_model(7, vec![2, 3], vec![2, 3], 2),
        ];
        for m in &models {
            m.check_degree_constancy().unwrap();
            m.check_full_layer_neighborhoods().unwrap();
            m.check_representatives_nonadjacent().unwrap();
            m.check_pair_strictness(50, 0xC0FFEE).unwrap();
            if m.layer_count(Side::X) > 1 || m.layer_count(Side::Y) > 1 {
                m.check_layer_degree_gaps().unwrap();
            }
        }

        let spec = FamilySpec::subspaces(4, 2, vec![1, 2], vec![1, 2], 1).unwrap();
        let mq = build_model(&spec, &ModelConfig::default()).unwrap();
        mq.check_degree_constancy().unwrap();
        mq.check_layer_degree_gaps().unwrap();
        mq.check_full_layer_neighborhoods().unwrap();
        mq.check_representatives_nonadjacent().unwrap();
        mq.check_pair_strictness(50, 0xC0FFEE).unwrap();
    }

    #[test]
    fn uncached_models_agree_with_cached() {
        let spec = FamilySpec::sets(5, vec![2], vec![2], 1).unwrap();
        let cached = build_model(&spec, &ModelConfig::default()).unwrap();
        let uncached = build_model(
            &spec,
            &ModelConfig {
                cache_bits_limit: 0,
                ..ModelConfig::default()
            },
        )
        .unwrap();
        assert!(uncached.neigh_x.is_none());
        for xi in 0..cached.x_len() {
            assert_eq!(
                cached.neighbors_of(Side::X, xi).to_indices(),
                uncached.neighbors_of(Side::X, xi).to_indices()
            );
        }
        for yi in 0..cached.y_len() {
            assert_eq!(
                cached.neighbors_of(Side::Y, yi).to_indices(),
                uncached.neighbors_of(Side::Y, yi).to_indices()
            );
        }
    }
}
