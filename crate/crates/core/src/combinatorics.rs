//! Exact binomials, binomial parity and binary Krawtchouk polynomials.
//!
//! Everything here works over arbitrary-precision integers: Krawtchouk values
//! for `m = 63` already overflow 64-bit words.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest dimension for which a [`KrawtchoukTable`] is materialized.
pub const MAX_TABLE_DIM: u32 = 64;

/// Generalized binomial coefficient `t (t-1) ... (t-r+1) / r!`.
///
/// The upper argument may be negative, e.g. `binom(-1, r) = (-1)^r`.
pub fn binom(t: i64, r: u64) -> BigInt {
    let mut acc = BigInt::one();
    let t = BigInt::from(t);
    for i in 0..r {
        // acc is C(t, i) here; C(t, i+1) = C(t, i) (t - i) / (i + 1) exactly.
        acc *= &t - i;
        acc /= i + 1;
    }
    acc
}

/// Parity of `C(a, b)` by Lucas' theorem at p = 2: odd iff the bits of `b`
/// are a subset of the bits of `a`.
#[inline]
pub fn binom_mod2(a: u64, b: u64) -> bool {
    a & b == b
}

/// Binary Krawtchouk polynomial `K_j(i; m) = sum_h (-1)^h C(i, h) C(m - i, j - h)`.
///
/// `i` may lie outside `0..=m`; the sum is then taken with generalized binomials.
pub fn krawtchouk(j: u32, i: i64, m: u32) -> Result<BigInt> {
    if j > m {
        return Err(Error::precondition(format!(
            "Krawtchouk degree {j} exceeds dimension {m}"
        )));
    }
    Ok(krawtchouk_unchecked(j, i, m))
}

fn krawtchouk_unchecked(j: u32, i: i64, m: u32) -> BigInt {
    let mut sum = BigInt::zero();
    for h in 0..=u64::from(j) {
        let term = binom(i, h) * binom(i64::from(m) - i, u64::from(j) - h);
        if h % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// The `(m+1) x (m+1)` matrix with entry `(i, j) = K_j(i; m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawtchoukTable {
    m: u32,
    values: Vec<BigInt>,
}

impl KrawtchoukTable {
    pub fn dim(&self) -> u32 {
        self.m
    }

    /// `K_j(i; m)`: eigenvalue of the distance-`j` matrix on eigenspace `i`.
    pub fn get(&self, j: u32, i: u32) -> &BigInt {
        let side = self.m as usize + 1;
        &self.values[i as usize * side + j as usize]
    }

    /// Row `i`, i.e. `[K_0(i), K_1(i), ..., K_m(i)]`.
    pub fn row(&self, i: u32) -> &[BigInt] {
        let side = self.m as usize + 1;
        &self.values[i as usize * side..(i as usize + 1) * side]
    }
}

/// Builds the full table from the defining sum.
pub fn krawtchouk_table(m: u32) -> Result<KrawtchoukTable> {
    check_table_dim(m)?;
    let side = m as usize + 1;
    let mut values = Vec::with_capacity(side * side);
    for i in 0..=m {
        for j in 0..=m {
            values.push(krawtchouk_unchecked(j, i64::from(i), m));
        }
    }
    Ok(KrawtchoukTable { m, values })
}

/// Shared, lazily built table for dimension `m`. Each table is built at most
/// once per process.
pub fn cached_krawtchouk_table(m: u32) -> Result<Arc<KrawtchoukTable>> {
    static CACHE: [OnceLock<Arc<KrawtchoukTable>>; MAX_TABLE_DIM as usize + 1] =
        [const { OnceLock::new() }; MAX_TABLE_DIM as usize + 1];
    check_table_dim(m)?;
    let slot = &CACHE[m as usize];
    Ok(Arc::clone(slot.get_or_init(|| {
        Arc::new(krawtchouk_table(m).expect("dimension already checked"))
    })))
}

fn check_table_dim(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::precondition("Krawtchouk table needs m >= 1"));
    }
    if m > MAX_TABLE_DIM {
        return Err(Error::GuardExceeded {
            what: "Krawtchouk table dimension",
            limit: MAX_TABLE_DIM.into(),
            got: m.into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(7, 2), big(21));
        assert_eq!(binom(-5, 0), big(1));
        assert_eq!(binom(123, 0), big(1));
        assert_eq!(binom(-1, 3), big(-1));
        assert_eq!(binom(-1, 4), big(1));
        assert_eq!(binom(2, 3), big(0));
        assert_eq!(binom(0, 1), big(0));
    }

    #[test]
    fn binom_needs_big_integers() {
        // C(63, 31) = 916312070471295267 still fits; C(100, 50) does not.
        assert_eq!(binom(63, 31), big(916_312_070_471_295_267));
        assert_eq!(binom(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn binom_mod2_examples() {
        assert!(!binom_mod2(5, 2));
        assert!(binom_mod2(7, 3));
        for a in 0..50 {
            assert!(binom_mod2(a, 0));
        }
    }

    #[test]
    fn lucas_matches_big_integer_parity_exhaustively() {
        // Pascal's triangle in big integers, independent of `binom`.
        let mut row = vec![BigInt::one()];
        for a in 0..=1024u64 {
            for (b, c) in row.iter().enumerate() {
                assert_eq!(binom_mod2(a, b as u64), c.is_odd(), "C({a}, {b})");
            }
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(BigInt::one());
            next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
            next.push(BigInt::one());
            row = next;
        }
        assert_eq!(binom(40, 20).is_odd(), binom_mod2(40, 20));
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(krawtchouk(3, 0, 7).unwrap(), big(35));
        assert_eq!(krawtchouk(1, 2, 7).unwrap(), big(3));
        assert_eq!(krawtchouk(2, 1, 4).unwrap(), big(0));
        for m in 1..10 {
            for i in -3..=(m as i64 + 3) {
                assert_eq!(krawtchouk(1, i, m).unwrap(), big(m as i64 - 2 * i));
            }
        }
    }

    #[test]
    fn krawtchouk_rejects_degree_above_dimension() {
        assert!(matches!(krawtchouk(8, 0, 7), Err(Error::Precondition(_))));
    }

    #[test]
    fn table_m1() {
        let t = krawtchouk_table(1).unwrap();
        assert_eq!(t.row(0), &[big(1), big(1)]);
        assert_eq!(t.row(1), &[big(1), big(-1)]);
    }

    #[test]
    fn table_guards() {
        assert!(krawtchouk_table(0).is_err());
        assert!(matches!(
            krawtchouk_table(65),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(krawtchouk_table(64).is_ok());
    }

    #[test]
    fn table_first_row_and_column() {
        for m in 1..=20u32 {
            let t = krawtchouk_table(m).unwrap();
            for j in 0..=m {
                assert_eq!(t.get(j, 0), &binom(m.into(), j.into()));
            }
            for i in 0..=m {
                assert_eq!(t.get(0, i), &big(1));
            }
        }
    }

    #[test]
    fn cached_table_is_shared() {
        let a = cached_krawtchouk_table(9).unwrap();
        let b = cached_krawtchouk_table(9).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(*a, krawtchouk_table(9).unwrap());
    }

    #[test]
    fn dual_orthogonality_up_to_12() {
        for m in 1..=12u32 {
            let t = krawtchouk_table(m).unwrap();
            let scale = BigInt::one() << m;
            for i in 0..=m {
                for l in 0..=m {
                    let s: BigInt = (0..=m).map(|j| t.get(i, j) * t.get(j, l)).sum();
                    let expected = if i == l {
                        scale.clone()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(s, expected, "m={m} i={i} l={l}");
                }
            }
        }
    }

    #[test]
    fn three_term_recurrence() {
        for m in 1..=16u32 {
            let t = krawtchouk_table(m).unwrap();
            for i in 0..=m {
                for j in 1..m {
                    let lhs = BigInt::from(j + 1) * t.get(j + 1, i);
                    let rhs = BigInt::from(i64::from(m) - 2 * i64::from(i)) * t.get(j, i)
                        - BigInt::from(m - j + 1) * t.get(j - 1, i);
                    assert_eq!(lhs, rhs, "m={m} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn binomial_symmetry() {
        for m in 1..=16u32 {
            let t = krawtchouk_table(m).unwrap();
            for i in 0..=m {
                for j in 0..=m {
                    assert_eq!(
                        binom(m.into(), i.into()) * t.get(j, i),
                        binom(m.into(), j.into()) * t.get(i, j)
                    );
                }
            }
        }
    }
}
