//! k-subsets of `0..n` as 64-bit masks, ranked in colexicographic order.
//!
//! The colex rank of `{s_0 < s_1 < ... < s_{k-1}}` is `sum_i C(s_i, i + 1)`.
//! It does not depend on `n`, so a subset keeps its rank when the ground set grows.

/// Largest ground set a mask can hold.
pub const MAX_VERTICES: usize = 64;

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Colex rank of a subset mask.
pub fn rank(mask: u64) -> u64 {
    members(mask)
        .enumerate()
        .map(|(i, s)| binomial(s, i + 1))
        .sum()
}

/// Inverse of [`rank`] for subsets of size `k`.
pub fn unrank(mut r: u64, k: usize) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k).rev() {
        // Largest p with C(p, i) <= r; p >= i - 1 always qualifies.
        let mut p = i - 1;
        while binomial(p + 1, i) <= r {
            p += 1;
        }
        mask |= 1 << p;
        r -= binomial(p, i);
    }
    mask
}

/// Set bits of `mask` in increasing order.
pub fn members(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

pub fn to_vec(mask: u64) -> Vec<usize> {
    members(mask).collect()
}

pub fn from_slice(items: &[usize]) -> u64 {
    items.iter().fold(0, |m, &v| m | (1 << v))
}

/// Mask with bits `0..n` set.
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `k`-subsets of `0..n` in colex order (index equals rank).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let count = binomial(n, k);
    (0..count).map(move |r| unrank(r, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(18, 2), 153);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn colex_order_of_pairs() {
        let pairs: Vec<Vec<usize>> = k_subsets(4, 2).map(to_vec).collect();
        assert_eq!(
            pairs,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn rank_unrank_inverse_up_to_16() {
        for n in 1..=16 {
            for k in 0..=n {
                let mut seen = 0u64;
                for (r, mask) in k_subsets(n, k).enumerate() {
                    assert_eq!(mask.count_ones() as usize, k);
                    assert_eq!(mask & !full(n), 0);
                    assert_eq!(rank(mask), r as u64);
                    seen += 1;
                }
                assert_eq!(seen, binomial(n, k));
            }
        }
    }

    proptest! {
        #[test]
        fn unrank_rank_roundtrip(mask in any::<u64>()) {
            let k = mask.count_ones() as usize;
            prop_assert_eq!(unrank(rank(mask), k), mask);
        }
    }
}
