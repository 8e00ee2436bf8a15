//! Two-color Ramsey values and the chain bounding the size of SRA-free sets.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Known exact values `R(s, t)` with `3 <= s <= t`.
const KNOWN: &[(u64, u64, u64)] = &[
    (3, 3, 6),
    (3, 4, 9),
    (3, 5, 14),
    (3, 6, 18),
    (3, 7, 23),
    (3, 8, 28),
    (3, 9, 36),
    (4, 4, 18),
    (4, 5, 25),
];

/// Values past this many bits are refused rather than computed.
const MAX_BITS: u64 = 1 << 22;

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyValue {
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    /// `true` only for values taken from the table of known Ramsey numbers.
    pub exact: bool,
}

fn binomial(n: &BigUint, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn lookup(a: &BigUint, b: u64) -> Option<u64> {
    let a = a.to_u64()?;
    let (s, t) = (a.min(b), a.max(b));
    if s == 2 {
        return Some(t);
    }
    KNOWN.iter().find(|k| k.0 == s && k.1 == t).map(|k| k.2)
}

/// `R(a, b)` for a possibly huge first argument: table value or the
/// Erdős–Szekeres bound `C(a + b − 2, b − 1)`.
fn ramsey_big(a: &BigUint, b: u64) -> RamseyValue {
    if let Some(v) = lookup(a, b) {
        return RamseyValue { value: BigUint::from(v), exact: true };
    }
    let n = a + BigUint::from(b) - 2u32;
    let k = match a.to_u64() {
        Some(a) => (a - 1).min(b - 1),
        None => b - 1,
    };
    RamseyValue { value: binomial(&n, k), exact: false }
}

/// Exact `R(a, b)` from the built-in table, or the binomial upper bound.
pub fn ramsey_upper_bound(a: u64, b: u64) -> Result<RamseyValue> {
    if a < 2 || b < 2 {
        return Err(Error::Parameter(format!("Ramsey arguments ({a}, {b}) must both be >= 2")));
    }
    Ok(ramsey_big(&BigUint::from(a), b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainEntry {
    pub index: u64,
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    pub exact: bool,
}

/// `H_L = R(2, L)`, `H_{i−1} = R(H_i + 1, L)` down to `H_2`, and `N = H_2 + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyCertificate {
    pub l: u64,
    /// Entries ordered from `H_L` down to `H_2`.
    pub chain: Vec<ChainEntry>,
    #[serde(serialize_with = "decimal")]
    pub n: BigUint,
    /// `true` when every chain entry is exact; otherwise `n` is an upper bound.
    pub exact: bool,
}

/// Size bound `N(L)` above which SRA(α) subsets must contain an
/// `L`-point configuration violating ATB(ε).
pub fn compute_sra_free_bound(l: u64) -> Result<RamseyCertificate> {
    if l < 2 {
        return Err(Error::Parameter(format!("L = {l} must be >= 2")));
    }
    let first = ramsey_big(&BigUint::from(2u32), l);
    let mut chain = vec![ChainEntry { index: l, value: first.value, exact: first.exact }];
    for index in (2..l).rev() {
        let prev = chain.last().unwrap();
        let arg = &prev.value + 1u32;
        if arg.bits() * l > MAX_BITS {
            return Err(Error::Budget(format!("H_{index} for L = {l} exceeds {MAX_BITS} bits")));
        }
        let next = ramsey_big(&arg, l);
        let exact = next.exact && prev.exact;
        chain.push(ChainEntry { index, value: next.value, exact });
    }
    let n = &chain.last().unwrap().value + 1u32;
    let exact = chain.iter().all(|e| e.exact);
    Ok(RamseyCertificate { l, chain, n, exact })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoublingThreshold {
    pub alpha: f64,
    pub n_tilde: u64,
}

/// Smallest `Ñ` with `α (Ñ − 2) >= 3`.
pub fn doubling_threshold(alpha: f64) -> Result<DoublingThreshold> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Parameter(format!("alpha {alpha} must lie in (0, 1]")));
    }
    // Relative slack absorbs products like 0.6 * 5 landing one ulp low.
    let reaches = |n: u64| alpha * (n as f64 - 2.0) >= 3.0 * (1.0 - 4.0 * f64::EPSILON);
    let mut n = ((3.0 / alpha).ceil() as u64 + 2).max(3);
    while n > 3 && reaches(n - 1) {
        n -= 1;
    }
    while !reaches(n) {
        n += 1;
    }
    Ok(DoublingThreshold { alpha, n_tilde: n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_bounds() {
        assert_eq!(ramsey_upper_bound(2, 7).unwrap(), RamseyValue { value: 7u32.into(), exact: true });
        assert_eq!(ramsey_upper_bound(3, 3).unwrap(), RamseyValue { value: 6u32.into(), exact: true });
        assert_eq!(ramsey_upper_bound(4, 3).unwrap(), RamseyValue { value: 9u32.into(), exact: true });
        assert_eq!(ramsey_upper_bound(5, 4).unwrap(), RamseyValue { value: 25u32.into(), exact: true });
        assert_eq!(ramsey_upper_bound(26, 4).unwrap(), RamseyValue { value: 3276u32.into(), exact: false });
        assert!(ramsey_upper_bound(1, 4).is_err());
    }

    #[test]
    fn binomial_bound_dominates_known_values() {
        for &(s, t, v) in KNOWN {
            let n = BigUint::from(s + t - 2);
            assert!(binomial(&n, s - 1) >= BigUint::from(v));
        }
    }

    #[test]
    fn small_certificates() {
        let c2 = compute_sra_free_bound(2).unwrap();
        assert_eq!(c2.n, 3u32.into());
        assert_eq!(c2.chain.len(), 1);
        assert!(c2.exact);

        let c3 = compute_sra_free_bound(3).unwrap();
        assert_eq!(c3.chain.iter().map(|e| e.value.clone()).collect::<Vec<_>>(), vec![3u32.into(), 9u32.into()]);
        assert_eq!(c3.n, 10u32.into());
        assert!(c3.exact);

        let c4 = compute_sra_free_bound(4).unwrap();
        assert_eq!(c4.chain[1], ChainEntry { index: 3, value: 25u32.into(), exact: true });
        assert_eq!(c4.chain[2], ChainEntry { index: 2, value: 3276u32.into(), exact: false });
        assert_eq!(c4.n, 3277u32.into());
        assert!(!c4.exact);
    }

    #[test]
    fn bound_grows_with_l() {
        let mut prev = BigUint::from(0u32);
        for l in 2..=8 {
            let c = compute_sra_free_bound(l).unwrap();
            assert!(c.n > prev, "L = {l}");
            for w in c.chain.windows(2) {
                assert!(w[1].value >= &w[0].value + 1u32);
            }
            prev = c.n;
        }
    }

    #[test]
    fn serializes_values_as_decimal_strings() {
        let json = serde_json::to_value(compute_sra_free_bound(3).unwrap()).unwrap();
        assert_eq!(json["n"], "10");
        assert_eq!(json["chain"][1]["value"], "9");
    }

    #[test]
    fn doubling_thresholds() {
        assert_eq!(doubling_threshold(1.0).unwrap().n_tilde, 5);
        assert_eq!(doubling_threshold(0.5).unwrap().n_tilde, 8);
        assert_eq!(doubling_threshold(0.6).unwrap().n_tilde, 7);
        assert!(doubling_threshold(0.0).is_err());
        for k in 1..200 {
            let a = k as f64 / 200.0;
            let t = doubling_threshold(a).unwrap().n_tilde as f64;
            assert!(a * (t - 2.0) >= 3.0 - 1e-12);
            assert!(a * (t - 3.0) < 3.0 - 1e-12);
        }
    }
}
