//! The double-ball independent set of size `a_n` and quantities derived from it.
//!
//! For `n = 4t`, take every `x` whose first `n - 1` coordinates lie within
//! Hamming distance `t - 1` of the all-(+1) or the all-(-1) vector, with either
//! sign in the last coordinate. Two truncations in one ball differ in at most
//! `2t - 2` places and truncations from opposite balls in at least `2t + 1`,
//! so no pair is at distance `2t = n/2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hypercube::{low_bits, Vertex, VertexSet, VertexSource, MAX_DIM};

/// Largest set [`build_extremal_set`] will materialize (n = 32 needs ~14.3M).
pub const MAX_MATERIALIZED: u64 = 1 << 25;

/// `a_n = 4 * sum_{i=0}^{n/4-1} C(n-1, i)`.
pub fn a_n(n: u32) -> Result<BigInt> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::precondition(format!(
            "a_n is defined for positive n divisible by 4, got {n}"
        )));
    }
    let top = i64::from(n) - 1;
    let s: BigInt = (0..u64::from(n / 4)).map(|i| crate::binom(top, i)).sum();
    Ok(s * 4)
}

/// `ceil(2^n / a_n)`, a lower bound on the chromatic number once
/// `alpha = a_n` is known, i.e. for `n = 2^k`, `k >= 2`.
pub fn chromatic_lower_bound(n: u32) -> Result<BigInt> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::precondition(format!(
            "chromatic lower bound is only established for n = 2^k with k >= 2, got {n}"
        )));
    }
    let order = BigInt::one() << n;
    Ok(order.div_ceil(&a_n(n)?))
}

/// Implicit description of the construction. Members are addressable by index
/// without materializing the set, which keeps `n = 64` within reach of
/// sampled verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalSetSpec {
    n: u32,
    radius: u32,
    ball_size: u64,
    /// `pascal[a][b] = C(a, b)` for `a, b <= 63`.
    pascal: Vec<[u64; 64]>,
}

impl ExtremalSetSpec {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(4) || n > MAX_DIM {
            return Err(Error::precondition(format!(
                "construction needs n divisible by 4 with 4 <= n <= {MAX_DIM}, got {n}"
            )));
        }
        let radius = n / 4 - 1;
        let mut pascal = vec![[0u64; 64]; 64];
        for a in 0..64 {
            pascal[a][0] = 1;
            for b in 1..=a {
                pascal[a][b] = pascal[a - 1][b - 1] + if b < a { pascal[a - 1][b] } else { 0 };
            }
        }
        let ball_size = (0..=radius as usize)
            .map(|w| pascal[n as usize - 1][w])
            .sum();
        Ok(ExtremalSetSpec {
            n,
            radius,
            ball_size,
            pascal,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Centers of the two balls in dimension `n - 1`.
    pub fn center_pair(&self) -> (Vertex, Vertex) {
        (
            Vertex::all_plus(self.n - 1).expect("n >= 4"),
            Vertex::all_minus(self.n - 1).expect("n >= 4"),
        )
    }

    /// Size of one truncated ball, `sum_{i <= radius} C(n-1, i)`.
    pub fn ball_size(&self) -> u64 {
        self.ball_size
    }

    pub fn contains(&self, v: Vertex) -> bool {
        if v.dim() != self.n {
            return false;
        }
        let w = (v.mask() & low_bits(self.n - 1)).count_ones();
        w <= self.radius || w >= self.n - 1 - self.radius
    }

    /// `rank`-th `w`-subset of `0..n-1` in colexicographic order.
    fn unrank_combination(&self, mut rank: u64, w: u32) -> u64 {
        let mut mask = 0u64;
        let mut hi = self.n as usize - 1;
        for t in (1..=w as usize).rev() {
            let mut c = hi - 1;
            while self.pascal[c][t] > rank {
                c -= 1;
            }
            mask |= 1 << c;
            rank -= self.pascal[c][t];
            hi = c;
        }
        mask
    }

    pub fn materialize(&self) -> Result<VertexSet> {
        let total = self.count();
        if total > MAX_MATERIALIZED {
            return Err(Error::GuardExceeded {
                what: "extremal set size to materialize",
                limit: MAX_MATERIALIZED,
                got: total,
            });
        }
        let width = self.n - 1;
        let keep = low_bits(width);
        let top = 1u64 << width;
        let mut masks = Vec::with_capacity(total as usize);
        for w in 0..=self.radius {
            for s in subsets_of_weight(width, w) {
                let far = !s & keep;
                masks.extend_from_slice(&[s, s | top, far, far | top]);
            }
        }
        masks.sort_unstable();
        Ok(VertexSet::from_sorted_masks(self.n, masks))
    }
}

impl VertexSource for ExtremalSetSpec {
    fn dim(&self) -> u32 {
        self.n
    }

    fn count(&self) -> u64 {
        4 * self.ball_size
    }

    fn vertex_at(&self, index: u64) -> Vertex {
        assert!(index < self.count());
        let quadrant = index / self.ball_size;
        let mut rem = index % self.ball_size;
        let mut w = 0u32;
        loop {
            let layer = self.pascal[self.n as usize - 1][w as usize];
            if rem < layer {
                break;
            }
            rem -= layer;
            w += 1;
        }
        let width = self.n - 1;
        let mut mask = self.unrank_combination(rem, w);
        if quadrant >= 2 {
            mask = !mask & low_bits(width);
        }
        if quadrant % 2 == 1 {
            mask |= 1 << width;
        }
        Vertex::from_raw(mask, self.n)
    }
}

/// All `width`-bit words of popcount `w`, ascending (Gosper's hack).
fn subsets_of_weight(width: u32, w: u32) -> impl Iterator<Item = u64> {
    let limit = if width >= 64 { u64::MAX } else { 1u64 << width };
    let first = if w == 0 { 0 } else { low_bits(w) };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && n < limit && n > cur).then_some(n)
        };
        Some(cur)
    })
}

/// The double-ball set, ascending by mask. Materializes at most
/// [`MAX_MATERIALIZED`] vertices; use [`ExtremalSetSpec`] beyond that.
pub fn build_extremal_set(n: u32) -> Result<VertexSet> {
    ExtremalSetSpec::new(n)?.materialize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{split_truncate, verify_independent};
    use std::collections::BTreeSet;

    #[test]
    fn a_n_examples() {
        assert_eq!(a_n(4).unwrap(), BigInt::from(4));
        assert_eq!(a_n(8).unwrap(), BigInt::from(32));
        assert_eq!(a_n(16).unwrap(), BigInt::from(2304));
        assert_eq!(a_n(24).unwrap(), BigInt::from(178_208));
        assert_eq!(a_n(32).unwrap(), BigInt::from(14_288_896));
        assert!(a_n(6).is_err());
        assert!(a_n(0).is_err());
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_lower_bound(4).unwrap(), BigInt::from(4));
        assert_eq!(chromatic_lower_bound(8).unwrap(), BigInt::from(8));
        assert_eq!(chromatic_lower_bound(16).unwrap(), BigInt::from(29));
        assert!(chromatic_lower_bound(12).is_err());
        assert!(chromatic_lower_bound(2).is_err());
    }

    #[test]
    fn gosper_enumerates_layers() {
        for width in 0..=10u32 {
            for w in 0..=width {
                let v: Vec<u64> = subsets_of_weight(width, w).collect();
                let brute: Vec<u64> = (0..1u64 << width).filter(|m| m.count_ones() == w).collect();
                assert_eq!(v, brute, "width={width} w={w}");
            }
        }
        assert_eq!(subsets_of_weight(63, 1).count(), 63);
    }

    #[test]
    fn n4_is_the_four_expected_vertices() {
        let s = build_extremal_set(4).unwrap();
        assert_eq!(s.masks(), &[0b0000, 0b0111, 0b1000, 0b1111]);
    }

    #[test]
    fn sizes_match_a_n_up_to_64() {
        for n in (4..=64).step_by(4) {
            let spec = ExtremalSetSpec::new(n).unwrap();
            assert_eq!(BigInt::from(spec.count()), a_n(n).unwrap(), "n={n}");
            assert!(2 * spec.radius() < n - 1);
        }
        assert!(ExtremalSetSpec::new(6).is_err());
        assert!(ExtremalSetSpec::new(68).is_err());
        assert!(matches!(
            build_extremal_set(36),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn exhaustive_independence_small() {
        for n in [4, 8, 12] {
            let s = build_extremal_set(n).unwrap();
            assert_eq!(BigInt::from(s.len()), a_n(n).unwrap());
            assert!(verify_independent(&s).unwrap().is_independent(), "n={n}");
        }
    }

    #[test]
    fn indexed_members_equal_materialized_set() {
        for n in [4, 8, 12, 16] {
            let spec = ExtremalSetSpec::new(n).unwrap();
            let set = spec.materialize().unwrap();
            let indexed: BTreeSet<u64> = (0..spec.count())
                .map(|i| spec.vertex_at(i).mask())
                .collect();
            assert_eq!(indexed.len() as u64, spec.count());
            assert!(indexed.iter().copied().eq(set.masks().iter().copied()));
            assert!(set.iter().all(|v| spec.contains(v)));
        }
    }

    #[test]
    fn indexed_members_are_members_at_64() {
        let spec = ExtremalSetSpec::new(64).unwrap();
        let step = spec.count() / 997;
        for i in (0..spec.count()).step_by(step as usize) {
            assert!(spec.contains(spec.vertex_at(i)));
        }
        assert!(spec.contains(spec.vertex_at(spec.count() - 1)));
    }

    #[test]
    fn negation_closed() {
        for n in [4, 8, 12, 16] {
            let s = build_extremal_set(n).unwrap();
            assert!(s.iter().all(|v| s.contains(v.negate())));
        }
    }

    #[test]
    fn families_meet_rank_bound_for_powers_of_two() {
        for k in 2..=4u32 {
            let n = 1 << k;
            let s = build_extremal_set(n).unwrap();
            let split = split_truncate(&s).unwrap();
            let expected: BigInt = (0..(1u64 << (k - 2)))
                .map(|i| crate::binom(i64::from(n) - 1, i))
                .sum();
            for (label, fam) in split.iter() {
                assert_eq!(BigInt::from(fam.len()), expected, "n={n} {label}");
            }
        }
    }
}
