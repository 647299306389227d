//! The Bose–Mesner algebra of the hypercube `Q_m`, materialized densely for
//! small `m`: distance matrices `A_j`, primitive idempotents `E_i` with entries
//! `2^{-m} K_i(dist)`, and exact checks of the identities tying them together.
//!
//! Rows and columns are indexed by vertex mask in ascending order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::combinatorics::{binom, cached_krawtchouk_table, krawtchouk, KrawtchoukTable};
use crate::error::{Error, Result};
use crate::matrix::ExactRationalMatrix;

pub const MAX_DISTANCE_MATRIX_DIM: u32 = 13;
pub const MAX_PROJECTION_DIM: u32 = 11;
pub const MAX_SPECTRAL_CHECK_DIM: u32 = 9;

fn guard(what: &'static str, m: u32, limit: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::precondition(format!(
            "{what}: dimension must be >= 1"
        )));
    }
    if m > limit {
        return Err(Error::GuardExceeded {
            what,
            limit: limit.into(),
            got: m.into(),
        });
    }
    Ok(())
}

fn index_guard(name: &str, idx: u32, m: u32) -> Result<()> {
    if idx > m {
        return Err(Error::precondition(format!(
            "{name} = {idx} exceeds dimension {m}"
        )));
    }
    Ok(())
}

/// Dense matrix over `0..2^m` whose entry is `f(hamming distance)`.
pub(crate) fn distance_function_matrix(
    m: u32,
    scale: BigInt,
    mut f: impl FnMut(u32) -> BigInt,
) -> Result<ExactRationalMatrix> {
    let size = 1usize << m;
    let by_distance: Vec<BigInt> = (0..=m).map(&mut f).collect();
    let mut numer = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            numer.push(by_distance[(x ^ y).count_ones() as usize].clone());
        }
    }
    ExactRationalMatrix::from_scaled(size, size, numer, scale)
}

/// `A_j`: 1 where the Hamming distance is `j`.
pub fn distance_matrix(j: u32, m: u32) -> Result<ExactRationalMatrix> {
    guard("distance matrix dimension", m, MAX_DISTANCE_MATRIX_DIM)?;
    index_guard("distance", j, m)?;
    distance_function_matrix(m, BigInt::one(), |d| BigInt::from(u8::from(d == j)))
}

fn kraw_lookup(m: u32) -> Result<Box<dyn Fn(u32, u32) -> BigInt>> {
    if let Ok(table) = cached_krawtchouk_table(m) {
        Ok(Box::new(move |j, i| table.get(j, i).clone()))
    } else {
        Ok(Box::new(move |j, i| {
            krawtchouk(j, i64::from(i), m).expect("degree checked by caller")
        }))
    }
}

/// `(E_i)_{xy} = 2^{-m} K_i(j; m)` for `x`, `y` at distance `j`.
pub fn projection_entry(i: u32, j: u32, m: u32) -> Result<BigRational> {
    index_guard("eigenspace index", i, m)?;
    index_guard("distance", j, m)?;
    let k = kraw_lookup(m)?(i, j);
    Ok(BigRational::new(k, BigInt::one() << m))
}

/// `E_i`, the orthogonal projection onto the `i`-th common eigenspace.
pub fn projection_matrix(i: u32, m: u32) -> Result<ExactRationalMatrix> {
    guard("projection matrix dimension", m, MAX_PROJECTION_DIM)?;
    index_guard("eigenspace index", i, m)?;
    let table = cached_krawtchouk_table(m)?;
    distance_function_matrix(m, BigInt::one() << m, |j| table.get(i, j).clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralIdentity {
    /// `sum_i E_i = I`
    Resolution,
    /// `E_i E_l = delta_il E_i`
    Orthogonality,
    /// `A_j = sum_i K_j(i) E_i`
    Decomposition,
    /// `trace E_i = C(m, i)`
    Trace,
    /// `E_i` symmetric
    Symmetry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: SpectralIdentity,
    pub indices: Vec<u32>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub m: u32,
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
}

impl SpectralReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// All `A_j` and `E_i` for one dimension. Fields are public so callers can
/// perturb a matrix and watch [`SpectralFamily::check`] catch it.
#[derive(Debug, Clone)]
pub struct SpectralFamily {
    pub m: u32,
    pub distance: Vec<ExactRationalMatrix>,
    pub projections: Vec<ExactRationalMatrix>,
}

impl SpectralFamily {
    pub fn build(m: u32) -> Result<Self> {
        guard("spectral check dimension", m, MAX_SPECTRAL_CHECK_DIM)?;
        let distance = (0..=m)
            .map(|j| distance_matrix(j, m))
            .collect::<Result<_>>()?;
        let projections = (0..=m)
            .map(|i| projection_matrix(i, m))
            .collect::<Result<_>>()?;
        Ok(SpectralFamily {
            m,
            distance,
            projections,
        })
    }

    pub fn check(&self) -> Result<SpectralReport> {
        let m = self.m;
        let size = 1usize << m;
        let table: std::sync::Arc<KrawtchoukTable> = cached_krawtchouk_table(m)?;
        let mut checks = Vec::new();

        let sum = ExactRationalMatrix::linear_combination(
            size,
            size,
            self.projections.iter().map(|e| (BigRational::one(), e)),
        )?;
        checks.push(IdentityCheck {
            identity: SpectralIdentity::Resolution,
            indices: vec![],
            passed: sum == ExactRationalMatrix::identity(size),
        });

        for (i, e) in self.projections.iter().enumerate() {
            checks.push(IdentityCheck {
                identity: SpectralIdentity::Symmetry,
                indices: vec![i as u32],
                passed: e.is_symmetric(),
            });
        }

        let zero = ExactRationalMatrix::zeros(size, size);
        for i in 0..=m as usize {
            for l in i..=m as usize {
                let prod = self.projections[i].mul(&self.projections[l])?;
                let expected = if i == l { &self.projections[i] } else { &zero };
                checks.push(IdentityCheck {
                    identity: SpectralIdentity::Orthogonality,
                    indices: vec![i as u32, l as u32],
                    passed: &prod == expected,
                });
            }
        }

        for j in 0..=m {
            let combo = ExactRationalMatrix::linear_combination(
                size,
                size,
                (0..=m).map(|i| {
                    (
                        BigRational::from_integer(table.get(j, i).clone()),
                        &self.projections[i as usize],
                    )
                }),
            )?;
            checks.push(IdentityCheck {
                identity: SpectralIdentity::Decomposition,
                indices: vec![j],
                passed: combo == self.distance[j as usize],
            });
        }

        for i in 0..=m {
            checks.push(IdentityCheck {
                identity: SpectralIdentity::Trace,
                indices: vec![i],
                passed: self.projections[i as usize].trace()
                    == BigRational::from_integer(binom(m.into(), i.into())),
            });
        }

        Ok(SpectralReport {
            m,
            passed: checks.iter().all(|c| c.passed),
            checks,
        })
    }
}

/// Exact verification of the Bose–Mesner identities for `Q_m`, `m <= 9`.
pub fn spectral_check(m: u32) -> Result<SpectralReport> {
    SpectralFamily::build(m)?.check()
}

/// Ratio (Hoffman) bound for the distance-`j` graph on `Q_n`:
/// `2^n (-lambda_min) / (C(n, j) - lambda_min)` with `lambda_min = min_i K_j(i; n)`.
pub fn ratio_bound(n: u32, j: u32) -> Result<BigRational> {
    if n == 0 || n > crate::hypercube::MAX_DIM {
        return Err(Error::precondition(format!(
            "ratio bound dimension must lie in 1..=64, got {n}"
        )));
    }
    index_guard("distance", j, n)?;
    let lambda_min = (0..=n)
        .map(|i| krawtchouk(j, i64::from(i), n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("n + 1 eigenvalues");
    if !lambda_min.is_negative() {
        return Err(Error::RatioBoundVoid {
            lambda_min: lambda_min.to_string(),
        });
    }
    let valency = binom(n.into(), j.into());
    let order = BigInt::one() << n;
    Ok(BigRational::new(order * -&lambda_min, valency - lambda_min))
}
