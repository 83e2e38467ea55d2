//! Subsets of {1,..,n} as bitmask vertices.
//!
//! Elements are 1-based outside this module and bit positions inside it.
//! Layer enumeration is ascending by numeric bit value, so the prefix
//! {1,..,m} is always the first vertex of its layer and the order is
//! reproducible across runs.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SetWorldError {
    #[error("family is empty")]
    EmptyFamily,
    #[error("member {0} is not a strictly increasing list of elements of 1..={1}")]
    BadMember(String, u32),
}

/// One subset of {1,..,n}; element i is stored as bit i-1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSetVertex {
    bits: u64,
}

impl GroundSetVertex {
    pub fn from_bits(bits: u64) -> Self {
        GroundSetVertex { bits }
    }

    /// Builds from 1-based members; debug-asserts they are strictly
    /// increasing.  Use `checked_from_members` for untrusted input.
    pub fn from_members(members: &[u32]) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let mut bits = 0u64;
        for &m in members {
            debug_assert!((1..=64).contains(&m));
            bits |= 1 << (m - 1);
        }
        GroundSetVertex { bits }
    }

    pub fn checked_from_members(members: &[u32], n: u32) -> Result<Self, SetWorldError> {
        let ok = n <= 64
            && members.windows(2).all(|w| w[0] < w[1])
            && members.iter().all(|&m| m >= 1 && m <= n);
        if !ok {
            return Err(SetWorldError::BadMember(format!("{members:?}"), n));
        }
        Ok(Self::from_members(members))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn size(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(&self, element: u32) -> bool {
        debug_assert!((1..=64).contains(&element));
        self.bits >> (element - 1) & 1 == 1
    }

    /// 1-based members in ascending order.
    pub fn members(&self) -> Vec<u32> {
        (1..=64).filter(|&e| self.contains(e)).collect()
    }

    pub fn complement(&self, n: u32) -> Self {
        debug_assert!(n <= 64);
        let mask = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        GroundSetVertex {
            bits: !self.bits & mask,
        }
    }
}

impl std::fmt::Display for GroundSetVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl std::fmt::Debug for GroundSetVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

pub fn intersection_size(a: &GroundSetVertex, b: &GroundSetVertex) -> u32 {
    (a.bits & b.bits).count_ones()
}

/// All m-subsets of {1,..,n} in ascending numeric bit order (Gosper's
/// hack).  The prefix {1,..,m} comes first.
pub fn enumerate_layer(n: u32, m: u32) -> Vec<GroundSetVertex> {
    assert!(n <= 63, "ground sets beyond 63 elements are not supported");
    if m > n {
        return Vec::new();
    }
    if m == 0 {
        return vec![GroundSetVertex { bits: 0 }];
    }
    let mut out = Vec::new();
    let limit = 1u64 << n;
    let mut v = (1u64 << m) - 1;
    while v < limit {
        out.push(GroundSetVertex { bits: v });
        // Gosper: next larger word with the same popcount.
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// All members of the S-layers meeting `a` in at least t elements, layer
/// sizes ascending, numeric order inside each layer.
pub fn star_family_sets(
    n: u32,
    s_sizes: &[u32],
    t: u32,
    a: &GroundSetVertex,
) -> Vec<GroundSetVertex> {
    let mut out = Vec::new();
    for &m in s_sizes {
        out.extend(
            enumerate_layer(n, m)
                .into_iter()
                .filter(|b| intersection_size(a, b) >= t),
        );
    }
    out
}

/// All members of the given layers containing the element `i`.
pub fn point_star_family(n: u32, sizes: &[u32], i: u32) -> Vec<GroundSetVertex> {
    let mut out = Vec::new();
    for &m in sizes {
        out.extend(
            enumerate_layer(n, m)
                .into_iter()
                .filter(|v| v.contains(i)),
        );
    }
    out
}

/// Checks |A cap B| >= t for every pair; errors if either family is
/// empty, because the empty family satisfies the predicate vacuously and
/// silently returning true would hide it.
pub fn is_cross_t_intersecting(
    a: &[GroundSetVertex],
    b: &[GroundSetVertex],
    t: u32,
) -> Result<bool, SetWorldError> {
    if a.is_empty() || b.is_empty() {
        return Err(SetWorldError::EmptyFamily);
    }
    Ok(a.iter()
        .all(|x| b.iter().all(|y| intersection_size(x, y) >= t)))
}
