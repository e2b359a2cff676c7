//! Small helpers for vertex sets stored as `u64` bitmasks.

/// Iterates the set bits of `mask` from lowest to highest.
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Mask with the lowest `n` bits set.
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Builds a mask from a list of vertices.
pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// Vertices of `mask` in increasing order.
pub fn vertices_of(mask: u64) -> Vec<usize> {
    iter_bits(mask).collect()
}

/// Next integer with the same popcount (Gosper's hack). Returns `None` on overflow.
pub fn next_same_popcount(x: u64) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// Scatters the low bits of `bits` onto the set positions of `mask` (software pdep).
pub fn deposit(mut bits: u64, mask: u64) -> u64 {
    let mut out = 0;
    for b in iter_bits(mask) {
        if bits == 0 {
            break;
        }
        if bits & 1 == 1 {
            out |= 1u64 << b;
        }
        bits >>= 1;
    }
    out
}

/// All `k`-element subsets of `mask`, in colex order.
pub fn subsets_of_size(mask: u64, k: usize) -> Vec<u64> {
    let m = mask.count_ones() as usize;
    if k > m {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut x = low_mask(k);
    let limit = if m >= 64 { None } else { Some(1u64 << m) };
    loop {
        out.push(deposit(x, mask));
        match next_same_popcount(x) {
            Some(nx) if limit.is_none_or(|l| nx < l) => x = nx,
            _ => break,
        }
    }
    out
}

/// All `k`-subsets of `{0, .., n-1}` in colex order.
pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    subsets_of_size(low_mask(n), k)
}

/// Position of a `k`-set among all `k`-sets of the naturals in colex order
/// (the combinatorial number system).
pub fn colex_rank(mask: u64) -> u64 {
    iter_bits(mask)
        .enumerate()
        .map(|(i, c)| crate::gbinom::binomial(c as u64, i as u64 + 1) as u64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_colex_and_counted() {
        let s = k_subsets(5, 2);
        assert_eq!(s.len(), 10);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s[0], 0b11);
        assert_eq!(subsets_of_size(0b10110, 2), vec![0b110, 0b10010, 0b10100]);
        assert_eq!(subsets_of_size(0b101, 0), vec![0]);
        assert!(subsets_of_size(0b101, 3).is_empty());
    }

    #[test]
    fn colex_rank_matches_position() {
        for k in 0..=4 {
            for (i, &m) in k_subsets(7, k).iter().enumerate() {
                assert_eq!(colex_rank(m), i as u64);
            }
        }
    }

    #[test]
    fn full_width_masks() {
        assert_eq!(low_mask(64), u64::MAX);
        assert_eq!(subsets_of_size(u64::MAX, 64), vec![u64::MAX]);
        assert_eq!(subsets_of_size(u64::MAX, 1).len(), 64);
    }
}
