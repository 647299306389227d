//! Dense exact rational matrices.
//!
//! Stored as integer numerators over one shared denominator, kept in lowest
//! terms (`denom > 0`, `gcd(numerators, denom) = 1`), so structural equality
//! is value equality. Products run on the numerators and use an `i128` kernel
//! when the magnitudes allow it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactRationalMatrix {
    rows: usize,
    cols: usize,
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl fmt::Debug for ExactRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExactRationalMatrix({}x{}) / {}",
            self.rows, self.cols, self.denom
        )
    }
}

impl ExactRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactRationalMatrix {
            rows,
            cols,
            numer: vec![BigInt::zero(); rows * cols],
            denom: BigInt::one(),
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.numer[i * size + i] = BigInt::one();
        }
        m
    }

    /// `numer[r * cols + c] / denom`.
    pub fn from_scaled(
        rows: usize,
        cols: usize,
        numer: Vec<BigInt>,
        denom: BigInt,
    ) -> Result<Self> {
        if numer.len() != rows * cols {
            return Err(Error::precondition(format!(
                "expected {} entries, got {}",
                rows * cols,
                numer.len()
            )));
        }
        if denom.is_zero() {
            return Err(Error::precondition("zero denominator"));
        }
        let mut m = ExactRationalMatrix {
            rows,
            cols,
            numer,
            denom,
        };
        m.normalize();
        Ok(m)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Self {
        let entries: Vec<BigRational> = (0..rows * cols)
            .map(|k| f(k / cols.max(1), k % cols.max(1)))
            .collect();
        let denom = entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let numer = entries
            .iter()
            .map(|e| e.numer() * (&denom / e.denom()))
            .collect();
        let mut m = ExactRationalMatrix {
            rows,
            cols,
            numer,
            denom,
        };
        m.normalize();
        m
    }

    fn normalize(&mut self) {
        if self.denom.is_negative() {
            self.denom = -std::mem::take(&mut self.denom);
            for x in &mut self.numer {
                *x = -std::mem::take(x);
            }
        }
        if self.denom.is_one() {
            return;
        }
        let mut g = self.denom.clone();
        for x in &self.numer {
            if g.is_one() {
                return;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            self.denom /= &g;
            for x in &mut self.numer {
                *x /= &g;
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        BigRational::new(self.numer[r * self.cols + c].clone(), self.denom.clone())
    }

    pub fn set(&mut self, r: usize, c: usize, value: &BigRational) {
        let new_denom = self.denom.lcm(value.denom());
        if new_denom != self.denom {
            let factor = &new_denom / &self.denom;
            for x in &mut self.numer {
                *x *= &factor;
            }
            self.denom = new_denom;
        }
        self.numer[r * self.cols + c] = value.numer() * (&self.denom / value.denom());
        self.normalize();
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (r + 1..self.cols)
                    .all(|c| self.numer[r * self.cols + c] == self.numer[c * self.cols + r])
            })
    }

    pub fn trace(&self) -> BigRational {
        let n = self.rows.min(self.cols);
        let s: BigInt = (0..n).map(|i| &self.numer[i * self.cols + i]).sum();
        BigRational::new(s, self.denom.clone())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut m = ExactRationalMatrix {
            rows: self.rows,
            cols: self.cols,
            numer: self.numer.iter().map(|x| x * factor.numer()).collect(),
            denom: &self.denom * factor.denom(),
        };
        m.normalize();
        m
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::precondition(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let denom = self.denom.lcm(&other.denom);
        let fa = &denom / &self.denom;
        let fb = &denom / &other.denom;
        let numer = self
            .numer
            .iter()
            .zip(&other.numer)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        let mut m = ExactRationalMatrix {
            rows: self.rows,
            cols: self.cols,
            numer,
            denom,
        };
        m.normalize();
        Ok(m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// `sum_t coeff_t * matrix_t`; all matrices share one shape.
    pub fn linear_combination<'a>(
        rows: usize,
        cols: usize,
        terms: impl IntoIterator<Item = (BigRational, &'a ExactRationalMatrix)>,
    ) -> Result<Self> {
        let mut acc = Self::zeros(rows, cols);
        for (coeff, m) in terms {
            if coeff.is_zero() {
                acc.check_same_shape(m)?;
                continue;
            }
            acc = acc.add(&m.scale(&coeff))?;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let numer = match (small_entries(&self.numer), small_entries(&other.numer)) {
            (Some((a, amax)), Some((b, bmax)))
                if (amax as u128)
                    .checked_mul(bmax as u128)
                    .and_then(|p| p.checked_mul(self.cols.max(1) as u128))
                    .is_some_and(|p| p <= i128::MAX as u128) =>
            {
                self.mul_small(&a, other, &b)
            }
            _ => self.mul_big(other),
        };
        let mut m = ExactRationalMatrix {
            rows: self.rows,
            cols: other.cols,
            numer,
            denom: &self.denom * &other.denom,
        };
        m.normalize();
        Ok(m)
    }

    fn mul_small(&self, a: &[i64], other: &Self, b: &[i64]) -> Vec<BigInt> {
        let (n, k, p) = (self.rows, self.cols, other.cols);
        let mut bt = vec![0i64; k * p];
        for r in 0..k {
            for c in 0..p {
                bt[c * k + r] = b[r * p + c];
            }
        }
        let mut out = Vec::with_capacity(n * p);
        for r in 0..n {
            let row = &a[r * k..(r + 1) * k];
            for c in 0..p {
                let col = &bt[c * k..(c + 1) * k];
                let s: i128 = row
                    .iter()
                    .zip(col)
                    .map(|(&x, &y)| i128::from(x) * i128::from(y))
                    .sum();
                out.push(BigInt::from(s));
            }
        }
        out
    }

    fn mul_big(&self, other: &Self) -> Vec<BigInt> {
        let (n, k, p) = (self.rows, self.cols, other.cols);
        let mut out = Vec::with_capacity(n * p);
        for r in 0..n {
            for c in 0..p {
                let mut s = BigInt::zero();
                for t in 0..k {
                    let x = &self.numer[r * k + t];
                    if !x.is_zero() {
                        s += x * &other.numer[t * p + c];
                    }
                }
                out.push(s);
            }
        }
        out
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..rows)
            .map(|r| self.numer[r * cols..(r + 1) * cols].to_vec())
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let (top, rest) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pivot = &pivot_row[col];
            for row in rest.iter_mut() {
                let lead = std::mem::take(&mut row[col]);
                for c in col + 1..cols {
                    let v = pivot * &row[c] - &lead * &pivot_row[c];
                    let (q, rem) = v.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[c] = q;
                }
            }
            prev = top[rank][col].clone();
            rank += 1;
        }
        rank
    }
}

/// Entries as `i64` plus the largest magnitude, if every entry fits.
fn small_entries(xs: &[BigInt]) -> Option<(Vec<i64>, u64)> {
    let mut max = 0u64;
    let mut out = Vec::with_capacity(xs.len());
    for x in xs {
        let v = x.to_i64()?;
        max = max.max(v.unsigned_abs());
        out.push(v);
    }
    Some((out, max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_makes_equality_structural() {
        let a = ExactRationalMatrix::from_fn(2, 2, |r, c| q((r + c) as i64, 2));
        let b = ExactRationalMatrix::from_scaled(
            2,
            2,
            vec![0.into(), 2.into(), 2.into(), 4.into()],
            4.into(),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.get(1, 1), q(1, 1));
        let neg = ExactRationalMatrix::from_scaled(1, 1, vec![3.into()], (-6).into()).unwrap();
        assert_eq!(neg.get(0, 0), q(-1, 2));
    }

    #[test]
    fn arithmetic() {
        let a = ExactRationalMatrix::from_fn(2, 3, |r, c| q(r as i64 + 1, c as i64 + 1));
        let b = ExactRationalMatrix::from_fn(3, 2, |r, c| q(r as i64 - c as i64, 3));
        let p = a.mul(&b).unwrap();
        // brute force with rationals
        for r in 0..2 {
            for c in 0..2 {
                let s: BigRational = (0..3).map(|t| a.get(r, t) * b.get(t, c)).sum();
                assert_eq!(p.get(r, c), s);
            }
        }
        assert!(a.mul(&a).is_err());
        let z = a.sub(&a).unwrap();
        assert_eq!(z, ExactRationalMatrix::zeros(2, 3));
        assert_eq!(ExactRationalMatrix::identity(4).trace(), q(4, 1));
    }

    #[test]
    fn big_path_matches_small_path() {
        let huge = BigInt::from(1u64) << 100;
        let a = ExactRationalMatrix::from_fn(3, 3, |r, c| {
            BigRational::from_integer(&huge + (r * 3 + c))
        });
        let i = ExactRationalMatrix::identity(3);
        assert_eq!(a.mul(&i).unwrap(), a);
        let small = ExactRationalMatrix::from_fn(3, 3, |r, c| q((r * 3 + c) as i64, 1));
        assert_eq!(small.mul(&small).unwrap().get(0, 0), q(3 + 2 * 6, 1));
    }

    #[test]
    fn set_rescales() {
        let mut m = ExactRationalMatrix::identity(2);
        m.set(0, 1, &q(1, 3));
        assert_eq!(m.get(0, 1), q(1, 3));
        assert_eq!(m.get(1, 1), q(1, 1));
        m.set(0, 1, &q(0, 1));
        assert_eq!(m, ExactRationalMatrix::identity(2));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactRationalMatrix::identity(5).rank(), 5);
        assert_eq!(ExactRationalMatrix::zeros(3, 4).rank(), 0);
        // rows 1,2 dependent; leading zero column forces a skip
        let m = ExactRationalMatrix::from_fn(3, 4, |r, c| match (r, c) {
            (_, 0) => q(0, 1),
            (0, c) => q(c as i64, 1),
            (1, c) => q(2 * c as i64, 3),
            (2, c) => q((c * c) as i64, 1),
            _ => unreachable!(),
        });
        assert_eq!(m.rank(), 2);
        let hilbert = ExactRationalMatrix::from_fn(6, 6, |r, c| q(1, (r + c + 1) as i64));
        assert_eq!(hilbert.rank(), 6);
    }
}
