//! Exact machinery for cross t-intersecting families.
//!
//! Two worlds share one interface: families of m-element subsets of
//! {1,..,n}, and families of m-dimensional subspaces of F_q^n.  A pair of
//! non-empty families (A, B) with prescribed size sets R and S is cross
//! t-intersecting when every member of A meets every member of B in at
//! least t elements (resp. a subspace of dimension at least t).  The
//! largest possible |A| + |B| is the independence number of a bipartite
//! graph whose parts are the unions of the R- and S-layers and whose
//! edges join pairs that intersect in less than t; this crate computes
//! the closed-form bound for that number, realizes the graph explicitly,
//! measures the true maximum with independent oracles, and compares the
//! extremal configurations against the predicted catalog.
//!
//! All counting values are exact big integers; nothing here rounds.

pub mod bitset;
pub mod bounds;
pub mod bipgraph;
pub mod cli;
pub mod exactnum;
pub mod extremal;
pub mod oracle;
pub mod qworld;
pub mod setworld;

pub use exactnum::BigNat;
