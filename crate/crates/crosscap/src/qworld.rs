//! Subspaces of F_q^n in reduced row echelon form.
//!
//! A subspace is stored as the unique RREF basis matrix, so structural
//! equality is subspace equality and hashing is well defined.  Layer
//! enumeration walks pivot-column patterns with the same ascending-mask
//! iterator the set world uses, then fills free entries in ascending
//! mixed-radix order; the first m-dimensional subspace is always
//! span{e_1,..,e_m}.
//!
//! Supported fields: every prime q, plus the prime powers 4, 8, 9.

use crate::exactnum::BigNat;
use crate::setworld;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QWorldError {
    #[error("unsupported field order {0} (primes and 4, 8, 9 are available)")]
    UnsupportedField(u64),
    #[error("family is empty")]
    EmptyFamily,
    #[error("bad subspace member: {0}")]
    BadMember(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FieldKind {
    Prime,
    /// GF(4) or GF(8): bit-vector polynomials, addition is xor.
    Binary { reduction: u32, degree: u32 },
    /// GF(9) as F_3[x]/(x^2+1): element a0 + 3*a1, x^2 = 2.
    Nine,
}

/// Arithmetic over one finite field; elements are 0..q as `u32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteField {
    q: u64,
    kind: FieldKind,
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self, QWorldError> {
        let kind = match q {
            4 => FieldKind::Binary {
                reduction: 0b111,
                degree: 2,
            },
            8 => FieldKind::Binary {
                reduction: 0b1011,
                degree: 3,
            },
            9 => FieldKind::Nine,
            _ if is_prime(q) && q < (1 << 31) => FieldKind::Prime,
            _ => return Err(QWorldError::UnsupportedField(q)),
        };
        Ok(FiniteField { q, kind })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!((a as u64) < self.q && (b as u64) < self.q);
        match self.kind {
            FieldKind::Prime => ((a as u64 + b as u64) % self.q) as u32,
            FieldKind::Binary { .. } => a ^ b,
            FieldKind::Nine => {
                let (a0, a1) = (a % 3, a / 3);
                let (b0, b1) = (b % 3, b / 3);
                (a0 + b0) % 3 + 3 * ((a1 + b1) % 3)
            }
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match self.kind {
            FieldKind::Prime => ((self.q - a as u64) % self.q) as u32,
            FieldKind::Binary { .. } => a,
            FieldKind::Nine => {
                let (a0, a1) = (a % 3, a / 3);
                (3 - a0) % 3 + 3 * ((3 - a1) % 3)
            }
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!((a as u64) < self.q && (b as u64) < self.q);
        match self.kind {
            FieldKind::Prime => ((a as u64 * b as u64) % self.q) as u32,
            FieldKind::Binary { reduction, degree } => {
                let mut acc = 0u32;
                for i in 0..degree {
                    if b >> i & 1 == 1 {
                        acc ^= a << i;
                    }
                }
                for bit in (degree..2 * degree).rev() {
                    if acc >> bit & 1 == 1 {
                        acc ^= reduction << (bit - degree);
                    }
                }
                acc
            }
            FieldKind::Nine => {
                let (a0, a1) = (a % 3, a / 3);
                let (b0, b1) = (b % 3, b / 3);
                let c0 = (a0 * b0 + 2 * a1 * b1) % 3;
                let c1 = (a0 * b1 + a1 * b0) % 3;
                c0 + 3 * c1
            }
        }
    }

    /// Multiplicative inverse; a must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "zero has no inverse");
        match self.kind {
            FieldKind::Prime => {
                // extended Euclid on (a, q)
                let (mut r0, mut r1) = (self.q as i64, a as i64);
                let (mut s0, mut s1) = (0i64, 1i64);
                while r1 != 0 {
                    let qt = r0 / r1;
                    (r0, r1) = (r1, r0 - qt * r1);
                    (s0, s1) = (s1, s0 - qt * s1);
                }
                debug_assert_eq!(r0, 1);
                (s0.rem_euclid(self.q as i64)) as u32
            }
            // q <= 9: scan.
            _ => self
                .elements()
                .find(|&b| self.mul(a, b) == 1)
                .expect("unit in a field"),
        }
    }
}

/// One subspace of F_q^n, stored as its RREF basis.  `rows` is the
/// canonical basis matrix (possibly empty for the zero subspace) and
/// `pivots` the 0-based pivot column of each row, strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<u32>,
}

impl Subspace {
    /// Canonicalizes an arbitrary spanning list: RREF, zero rows dropped.
    /// Linearly dependent input is fine; the dimension is the rank.
    pub fn from_basis(field: &FiniteField, n: u32, basis: &[Vec<u32>]) -> Self {
        let mut rows: Vec<Vec<u32>> = basis.to_vec();
        for r in &rows {
            debug_assert_eq!(r.len(), n as usize);
            debug_assert!(r.iter().all(|&x| (x as u64) < field.q()));
        }
        let pivots = rref(field, &mut rows);
        Subspace { n, rows, pivots }
    }

    pub fn checked_from_basis(
        field: &FiniteField,
        n: u32,
        basis: &[Vec<u32>],
    ) -> Result<Self, QWorldError> {
        for r in basis {
            if r.len() != n as usize {
                return Err(QWorldError::BadMember(format!(
                    "row {r:?} has {} entries, expected {n}",
                    r.len()
                )));
            }
            if let Some(&x) = r.iter().find(|&&x| x as u64 >= field.q()) {
                return Err(QWorldError::BadMember(format!(
                    "entry {x} is outside the field of order {}",
                    field.q()
                )));
            }
        }
        Ok(Self::from_basis(field, n, basis))
    }

    pub fn dim(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn ambient_dim(&self) -> u32 {
        self.n
    }

    pub fn basis_rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> &[u32] {
        &self.pivots
    }
}

impl std::fmt::Display for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "span{{")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "}}")
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// In-place reduced row echelon form; returns the pivot columns.  Rows
/// that reduce to zero are removed.
pub fn rref(field: &FiniteField, rows: &mut Vec<Vec<u32>>) -> Vec<u32> {
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..n_cols {
        let Some(pr) = (next..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(next, pr);
        let inv = field.inv(rows[next][col]);
        for c in col..n_cols {
            rows[next][c] = field.mul(rows[next][c], inv);
        }
        for r in 0..rows.len() {
            if r != next && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..n_cols {
                    let s = field.mul(f, rows[next][c]);
                    rows[r][c] = field.sub(rows[r][c], s);
                }
            }
        }
        pivots.push(col as u32);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

/// All m-dimensional subspaces of F_q^n.  Pivot patterns ascend in the
/// set-world mask order; within a pattern the free entries count up in
/// mixed radix q, all-zeros first, so span{e_1,..,e_m} leads its layer.
pub fn enumerate_subspaces(n: u32, q: u64, m: u32) -> Result<Vec<Subspace>, QWorldError> {
    FiniteField::new(q)?; // validate the field even though RREF filling needs no arithmetic
    if m > n {
        return Ok(Vec::new());
    }
    if m == 0 {
        return Ok(vec![Subspace {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }]);
    }
    let mut out = Vec::new();
    for pattern in setworld::enumerate_layer(n, m) {
        let cols: Vec<usize> = pattern.members().iter().map(|&c| c as usize - 1).collect();
        let mut is_pivot = vec![false; n as usize];
        for &c in &cols {
            is_pivot[c] = true;
        }
        let mut free = Vec::new();
        for (ri, &pc) in cols.iter().enumerate() {
            for c in pc + 1..n as usize {
                if !is_pivot[c] {
                    free.push((ri, c));
                }
            }
        }
        let total = (q as u128)
            .checked_pow(free.len() as u32)
            .expect("free-entry count fits u128");
        assert!(total <= u64::MAX as u128, "layer too large to enumerate");
        for a in 0..total as u64 {
            let mut rows = vec![vec![0u32; n as usize]; m as usize];
            for (ri, &pc) in cols.iter().enumerate() {
                rows[ri][pc] = 1;
            }
            let mut rem = a;
            for &(ri, c) in &free {
                rows[ri][c] = (rem % q) as u32;
                rem /= q;
            }
            out.push(Subspace {
                n,
                rows,
                pivots: cols.iter().map(|&c| c as u32).collect(),
            });
        }
    }
    Ok(out)
}

/// dim(A cap B) = dim A + dim B - rank(A stacked on B).
pub fn intersection_dim(field: &FiniteField, a: &Subspace, b: &Subspace) -> u32 {
    debug_assert_eq!(a.n, b.n);
    let mut stacked: Vec<Vec<u32>> = a.rows.iter().chain(b.rows.iter()).cloned().collect();
    let rank = {
        rref(field, &mut stacked);
        stacked.len() as u32
    };
    a.dim() + b.dim() - rank
}

/// All members of the S-layers meeting `a` in dimension at least t,
/// layer dims ascending, enumeration order inside each layer.
pub fn star_family_subspaces(
    n: u32,
    q: u64,
    s_sizes: &[u32],
    t: u32,
    a: &Subspace,
) -> Result<Vec<Subspace>, QWorldError> {
    let field = FiniteField::new(q)?;
    let mut out = Vec::new();
    for &m in s_sizes {
        out.extend(
            enumerate_subspaces(n, q, m)?
                .into_iter()
                .filter(|b| intersection_dim(&field, a, b) >= t),
        );
    }
    Ok(out)
}

/// All members of the given layers containing the subspace `c`.
pub fn subspace_point_star_family(
    n: u32,
    q: u64,
    sizes: &[u32],
    c: &Subspace,
) -> Result<Vec<Subspace>, QWorldError> {
    let field = FiniteField::new(q)?;
    let mut out = Vec::new();
    for &m in sizes {
        out.extend(
            enumerate_subspaces(n, q, m)?
                .into_iter()
                .filter(|v| intersection_dim(&field, c, v) == c.dim()),
        );
    }
    Ok(out)
}

/// Number of b-dimensional subspaces whose intersection with `a` has
/// dimension exactly j, counted by enumeration.
pub fn count_by_intersection_profile(
    n: u32,
    q: u64,
    a: &Subspace,
    b_dim: u32,
    j: u32,
) -> Result<BigNat, QWorldError> {
    let field = FiniteField::new(q)?;
    let count = enumerate_subspaces(n, q, b_dim)?
        .iter()
        .filter(|b| intersection_dim(&field, a, b) == j)
        .count();
    Ok(BigNat::from(count))
}

/// Checks dim(A cap B) >= t for every pair; empty families are an error
/// for the same reason as in the set world.
pub fn is_cross_t_intersecting(
    field: &FiniteField,
    a: &[Subspace],
    b: &[Subspace],
    t: u32,
) -> Result<bool, QWorldError> {
    if a.is_empty() || b.is_empty() {
        return Err(QWorldError::EmptyFamily);
    }
    Ok(a.iter()
        .all(|x| b.iter().all(|y| intersection_dim(field, x, y) >= t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::gaussian_binomial;
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;

    #[test]
    fn field_support() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            assert!(FiniteField::new(q).is_ok(), "q = {q}");
        }
        for q in [0u64, 1, 6, 10, 12, 15, 16] {
            assert_eq!(
                FiniteField::new(q),
                Err(QWorldError::UnsupportedField(q)),
                "q = {q}"
            );
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "inv in GF({q}) at {a}");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity in GF({q})"
                        );
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_match_gaussian() {
        let cases: &[(u32, u64)] = &[(5, 2), (4, 3), (3, 4), (3, 5)];
        for &(n_max, q) in cases {
            for n in 0..=n_max {
                for m in 0..=n {
                    let layer = enumerate_subspaces(n, q, m).unwrap();
                    assert_eq!(
                        BigNat::from(layer.len()),
                        gaussian_binomial(n as u64, m as u64, q),
                        "count ({n},{m})_{q}"
                    );
                    let distinct: HashSet<_> = layer.iter().cloned().collect();
                    assert_eq!(distinct.len(), layer.len(), "duplicates at ({n},{m})_{q}");
                }
            }
        }
    }

    #[test]
    fn enumeration_starts_with_prefix_span() {
        let layer = enumerate_subspaces(4, 2, 2).unwrap();
        assert_eq!(layer.len(), 35);
        assert_eq!(
            layer[0].basis_rows(),
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]
        );
        assert_eq!(layer[0].pivot_columns(), &[0, 1]);
        // Deterministic order.
        assert_eq!(layer, enumerate_subspaces(4, 2, 2).unwrap());
    }

    #[test]
    fn canonical_form_is_invariant_under_row_operations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 9] {
            let field = FiniteField::new(q).unwrap();
            for sub in enumerate_subspaces(4, q, 2).unwrap().iter().take(12) {
                let mut rows = sub.basis_rows().to_vec();
                for _ in 0..20 {
                    match rng.gen_range(0..3) {
                        0 => rows.swap(0, 1),
                        1 => {
                            let s = rng.gen_range(1..q) as u32;
                            for c in 0..rows[0].len() {
                                rows[0][c] = field.mul(rows[0][c], s);
                            }
                        }
                        _ => {
                            let s = rng.gen_range(0..q) as u32;
                            for c in 0..rows[0].len() {
                                let add = field.mul(s, rows[1][c]);
                                rows[0][c] = field.add(rows[0][c], add);
                            }
                        }
                    }
                }
                let rebuilt = Subspace::from_basis(&field, 4, &rows);
                assert_eq!(&rebuilt, sub, "canonical form drifted over GF({q})");
            }
        }
    }

    #[test]
    fn dependent_rows_reduce_to_rank() {
        let field = FiniteField::new(3).unwrap();
        let s = Subspace::from_basis(&field, 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 1, 1]]);
        // rows 1 and 2 are dependent over F_3? 2*(1,2,0) = (2,4,0) = (2,1,0): yes.
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn intersection_dims() {
        let field = FiniteField::new(2).unwrap();
        let e12 = Subspace::from_basis(&field, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let e1 = Subspace::from_basis(&field, 4, &[vec![1, 0, 0, 0]]);
        let e34 = Subspace::from_basis(&field, 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(intersection_dim(&field, &e12, &e1), 1);
        assert_eq!(intersection_dim(&field, &e12, &e34), 0);
        assert_eq!(intersection_dim(&field, &e12, &e12), 2);
        let diag = Subspace::from_basis(&field, 4, &[vec![1, 1, 0, 0]]);
        assert_eq!(intersection_dim(&field, &e12, &diag), 1);
    }

    #[test]
    fn star_family_examples() {
        let field = FiniteField::new(2).unwrap();
        let a = Subspace::from_basis(&field, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let star = star_family_subspaces(4, 2, &[2], 1, &a).unwrap();
        assert_eq!(star.len(), 19);
        let star_t2 = star_family_subspaces(4, 2, &[2], 2, &a).unwrap();
        assert_eq!(star_t2.len(), 1);
        assert_eq!(&star_t2[0], &a);

        let f3 = FiniteField::new(3).unwrap();
        let line = Subspace::from_basis(&f3, 3, &[vec![1, 0, 0]]);
        assert_eq!(star_family_subspaces(3, 3, &[1], 1, &line).unwrap().len(), 1);
    }

    #[test]
    fn intersection_profile_counts() {
        let field = FiniteField::new(2).unwrap();
        let a = Subspace::from_basis(&field, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let c0 = count_by_intersection_profile(4, 2, &a, 2, 0).unwrap();
        let c1 = count_by_intersection_profile(4, 2, &a, 2, 1).unwrap();
        let c2 = count_by_intersection_profile(4, 2, &a, 2, 2).unwrap();
        assert_eq!(c0, BigNat::from(16u32));
        assert_eq!(c1, BigNat::from(18u32));
        assert_eq!(c2, BigNat::from(1u32));
        assert_eq!(c0 + c1 + c2, gaussian_binomial(4, 2, 2));
    }

    #[test]
    fn cross_intersection_checks() {
        let field = FiniteField::new(2).unwrap();
        let a = Subspace::from_basis(&field, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let star = star_family_subspaces(4, 2, &[2], 1, &a).unwrap();
        assert_eq!(
            is_cross_t_intersecting(&field, &[a.clone()], &star, 1),
            Ok(true)
        );
        let e34 = Subspace::from_basis(&field, 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(
            is_cross_t_intersecting(&field, &[a.clone()], &[e34], 1),
            Ok(false)
        );
        assert_eq!(
            is_cross_t_intersecting(&field, &[a], &[], 1),
            Err(QWorldError::EmptyFamily)
        );
    }

    #[test]
    fn point_star_subspaces() {
        let field = FiniteField::new(2).unwrap();
        let line = Subspace::from_basis(&field, 4, &[vec![1, 0, 0, 0]]);
        let ps = subspace_point_star_family(4, 2, &[2], &line).unwrap();
        // planes through a fixed line of F_2^4: gaussian(3,1)_2 = 7
        assert_eq!(ps.len(), 7);
        for p in &ps {
            assert_eq!(intersection_dim(&field, &line, p), 1);
        }
    }
}
