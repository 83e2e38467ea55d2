//! Exact arbitrary-precision counting primitives.
//!
//! Everything downstream (bounds, degrees, oracle sizes) is an exact
//! non-negative integer, so the whole crate counts in `BigNat` and never
//! touches floating point.

use num_traits::{One, Zero};

/// Arbitrary-precision non-negative integer carrying every counting value.
pub type BigNat = num_bigint::BigUint;

/// Serde adapter: `BigNat` as an exact decimal string, so JSON carries
/// no floating point and round-trips byte-identically.
pub mod serde_string {
    use super::BigNat;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigNat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigNat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigNat>()
            .map_err(|e| de::Error::custom(format!("not a decimal integer: {e}")))
    }
}

/// q^e as a `BigNat`.  Exponents stay small (products of layer sizes), a
/// linear loop is fine.
pub fn q_pow(q: u64, e: u64) -> BigNat {
    let base = BigNat::from(q);
    let mut acc: BigNat = One::one();
    for _ in 0..e {
        acc *= &base;
    }
    acc
}

/// Binomial coefficient C(n, k); zero when k > n.
///
/// Multiplicative evaluation: after i steps the accumulator equals
/// C(n, i), so each division is exact.
pub fn binomial(n: u64, k: u64) -> BigNat {
    if k > n {
        return Zero::zero();
    }
    let k = k.min(n - k);
    let mut acc: BigNat = One::one();
    for i in 0..k {
        acc *= n - i;
        let d = i + 1;
        debug_assert!((&acc % d).is_zero());
        acc /= d;
    }
    acc
}

/// Gaussian binomial coefficient, the number of k-dimensional subspaces
/// of an n-dimensional space over a field with q elements; zero when
/// k > n.  Requires q >= 2 (any integer base gives the same polynomial
/// identity, primality is not needed here).
///
/// The product is evaluated with numerator exponents ascending: after i
/// steps the accumulator equals gaussian(n - k + i, i), so every interim
/// division is exact.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigNat {
    assert!(q >= 2, "gaussian binomial needs q >= 2, got {q}");
    if k > n {
        return Zero::zero();
    }
    let k = k.min(n - k);
    let mut acc: BigNat = One::one();
    for i in 0..k {
        let num = q_pow(q, n - k + 1 + i) - 1u32;
        let den = q_pow(q, i + 1) - 1u32;
        acc *= num;
        debug_assert!((&acc % &den).is_zero());
        acc /= &den;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: count k-subsets of an n-set by popcount over
    /// all bitmasks.
    fn binomial_by_enumeration(n: u32, k: u32) -> u64 {
        (0u64..1 << n).filter(|m| m.count_ones() == k).count() as u64
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 0), BigNat::from(1u32));
        assert_eq!(binomial(4, 2), BigNat::from(6u32));
        assert_eq!(binomial(2, 3), BigNat::from(0u32));
        assert_eq!(binomial(0, 0), BigNat::from(1u32));
        assert_eq!(binomial(10, 3), BigNat::from(120u32));
    }

    #[test]
    fn binomial_matches_enumeration() {
        for n in 0..=14u32 {
            for k in 0..=n + 2 {
                assert_eq!(
                    binomial(n as u64, k as u64),
                    BigNat::from(binomial_by_enumeration(n, k)),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn binomial_pascal_and_symmetry() {
        for n in 1..=30u64 {
            for k in 1..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k) + binomial(n - 1, k - 1),
                    "Pascal at ({n},{k})"
                );
                assert_eq!(binomial(n, k), binomial(n, n - k));
            }
        }
    }

    #[test]
    fn gaussian_small_values() {
        assert_eq!(gaussian_binomial(3, 0, 2), BigNat::from(1u32));
        // Lines of F_2^2: three nonzero vectors, each spanning its own
        // line.  Cross-checked against subspace enumeration elsewhere.
        assert_eq!(gaussian_binomial(2, 1, 2), BigNat::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigNat::from(35u32));
        assert_eq!(gaussian_binomial(4, 2, 3), BigNat::from(130u32));
        assert_eq!(gaussian_binomial(3, 4, 2), BigNat::from(0u32));
    }

    #[test]
    fn gaussian_exceeds_machine_words() {
        // (12 choose 6)_5 has more than 64 bits; exactness is the point.
        let g = gaussian_binomial(12, 6, 5);
        assert!(g.bits() > 64);
        assert_eq!(g, gaussian_binomial(12, 6, 5));
    }

    #[test]
    fn gaussian_q_pascal_both_forms() {
        for q in [2u64, 3, 4, 5] {
            for n in 1..=12u64 {
                for k in 1..=n {
                    let lhs = gaussian_binomial(n, k, q);
                    let a = q_pow(q, k) * gaussian_binomial(n - 1, k, q)
                        + gaussian_binomial(n - 1, k - 1, q);
                    let b = gaussian_binomial(n - 1, k, q)
                        + q_pow(q, n - k) * gaussian_binomial(n - 1, k - 1, q);
                    assert_eq!(lhs, a, "q-Pascal A at ({n},{k})_{q}");
                    assert_eq!(lhs, b, "q-Pascal B at ({n},{k})_{q}");
                }
            }
        }
    }

    #[test]
    fn gaussian_symmetry() {
        for q in [2u64, 3] {
            for n in 0..=10u64 {
                for k in 0..=n {
                    assert_eq!(gaussian_binomial(n, k, q), gaussian_binomial(n, n - k, q));
                }
            }
        }
    }

    #[test]
    fn gaussian_power_sandwich() {
        // q^(i(m-i)) <= [m i]_q <= q^(i(m-i+1)), both strict for 0<i<m.
        for q in [2u64, 3, 4, 5] {
            for m in 0..=8u64 {
                for i in 0..=m {
                    let g = gaussian_binomial(m, i, q);
                    let lo = q_pow(q, i * (m - i));
                    let hi = q_pow(q, i * (m - i + 1));
                    assert!(lo <= g && g <= hi, "sandwich at ({m},{i})_{q}");
                    if i > 0 && i < m {
                        assert!(lo < g && g < hi, "strictness at ({m},{i})_{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn q_pow_values() {
        assert_eq!(q_pow(2, 0), BigNat::from(1u32));
        assert_eq!(q_pow(2, 10), BigNat::from(1024u32));
        assert_eq!(q_pow(3, 4), BigNat::from(81u32));
    }
}
