//! Exact integer kernels shared by every computation path.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of size-`m` multisets drawn from an `n`-set, `C(n + m - 1, m)`.
pub fn multiset(n: u64, m: u64) -> BigUint {
    if n == 0 {
        return if m == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    binomial(n + m - 1, m)
}

/// Multinomial coefficient `total! / (parts[0]! ... parts[r]!)`; zero if the
/// parts do not sum to `total`.
pub fn multinomial(total: u64, parts: &[u64]) -> BigUint {
    if parts.iter().sum::<u64>() != total {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    let mut remaining = total;
    for &p in parts {
        acc *= binomial(remaining, p);
        remaining -= p;
    }
    acc
}

pub fn catalan(j: u64) -> BigUint {
    binomial(2 * j, j) / (j + 1)
}

pub fn pow(base: &BigInt, exp: u64) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Reduces `num / den` as an exact fraction and insists the result is an
/// integer.
pub fn exact_quotient(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::domain(format!("{what}: zero denominator")));
    }
    let q = BigRational::new(num, den);
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::NonIntegral {
            what: what.to_string(),
        })
    }
}

/// All weak compositions of `total` into `parts` parts in lexicographically
/// increasing order.
pub fn weak_compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u64; parts];
    fill_compositions(total, 0, &mut cur, &mut out);
    out
}

fn fill_compositions(remaining: u64, idx: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if idx + 1 == cur.len() {
        cur[idx] = remaining;
        out.push(cur.clone());
        return;
    }
    for x in 0..=remaining {
        cur[idx] = x;
        fill_compositions(remaining - x, idx + 1, cur, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(
            binomial(100, 49).to_string(),
            "98913082887808032681188722800"
        );
    }

    #[test]
    fn multiset_edge_cases() {
        assert_eq!(multiset(0, 0), BigUint::one());
        assert_eq!(multiset(0, 3), BigUint::zero());
        assert_eq!(multiset(3, 2), BigUint::from(6u32));
        assert_eq!(multiset(2, 3), BigUint::from(4u32));
        assert_eq!(multiset(7, 0), BigUint::one());
    }

    #[test]
    fn multinomial_matches_factorials() {
        assert_eq!(multinomial(4, &[2, 1, 1]), BigUint::from(12u32));
        assert_eq!(multinomial(0, &[0, 0]), BigUint::one());
        assert_eq!(multinomial(3, &[1, 1]), BigUint::zero());
    }

    #[test]
    fn catalan_values() {
        let got: Vec<String> = (0..6).map(|j| catalan(j).to_string()).collect();
        assert_eq!(got, ["1", "1", "2", "5", "14", "42"]);
    }

    #[test]
    fn exact_quotient_rejects_remainder() {
        assert_eq!(
            exact_quotient(BigInt::from(35), BigInt::from(5), "x").unwrap(),
            BigInt::from(7)
        );
        assert!(matches!(
            exact_quotient(BigInt::from(7), BigInt::from(2), "x"),
            Err(Error::NonIntegral { .. })
        ));
    }

    #[test]
    fn compositions_are_lexicographic() {
        let c = weak_compositions(2, 2);
        assert_eq!(c, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(weak_compositions(0, 0), vec![Vec::<u64>::new()]);
        assert!(weak_compositions(1, 0).is_empty());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn pascal_rule(n in 1u64..=60, k in 1u64..=60) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }

        #[test]
        fn binomial_symmetry(n in 0u64..=80, k in 0u64..=80) {
            prop_assume!(k <= n);
            prop_assert_eq!(binomial(n, k), binomial(n, n - k));
        }

        #[test]
        fn compositions_are_counted_by_multisets(total in 0u64..=6, parts in 1usize..=4) {
            let all = weak_compositions(total, parts);
            prop_assert!(all.iter().all(|c| c.iter().sum::<u64>() == total));
            prop_assert_eq!(BigUint::from(all.len()), multiset(parts as u64, total));
        }
    }
}
