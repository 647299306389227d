//! Mechanized upper bound `alpha(Omega_{2^k}) <= a_{2^k}`.
//!
//! Let `m = 2^k - 1`, `d = 2^{k-2} - 1` and `phi(xi) = C(xi/2 - 1, d)`. The
//! pipeline checks that
//!
//! 1. `phi = sum_{i <= d} c_i K_i(. ; m)` (coefficients by dual orthogonality,
//!    verified by reconstruction),
//! 2. `phi(0)` is odd and `phi(2s)` is even at every admissible nonzero
//!    distance `2s` (`s != 2^{k-2}`), so the restriction of
//!    `X = sum_j phi(j) A_j` to a truncated family is the identity mod 2,
//!
//! and then `|C'| = rank Xbar <= rank X <= sum_{i <= d} C(m, i)` for each of
//! the four truncated families, whence `|C| <= 4 sum_{i <= d} C(m, i) = a_n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bose_mesner::{distance_function_matrix, projection_matrix};
use crate::combinatorics::{binom, binom_mod2, cached_krawtchouk_table};
use crate::construction::a_n;
use crate::error::{Error, Result};
use crate::exact_serde;
use crate::gf2::Gf2Matrix;
use crate::hypercube::{
    split_truncate, verify_independent, FamilyLabel, VertexSet, EXHAUSTIVE_LIMIT,
};
use crate::matrix::ExactRationalMatrix;

/// Largest exponent for the full certificate; `m = 63` is the largest
/// Krawtchouk table materialized.
pub const MAX_CERTIFY_K: u32 = 6;

/// Largest exponent for the standalone parity check.
pub const MAX_MOD2_K: u32 = 20;

/// Largest truncated family turned into a restricted matrix.
pub const MAX_RESTRICTED_SIZE: usize = 20_000;

fn check_k(k: u32, min: u32, max: u32) -> Result<()> {
    if k < min {
        return Err(Error::precondition(format!(
            "exponent k must be >= {min}, got {k}"
        )));
    }
    if k > max {
        return Err(Error::GuardExceeded {
            what: "exponent k",
            limit: max.into(),
            got: k.into(),
        });
    }
    Ok(())
}

/// Degree of `phi`, `2^{k-2} - 1`.
pub fn phi_degree(k: u32) -> u64 {
    (1u64 << (k - 2)) - 1
}

/// `phi(xi) = C(xi/2 - 1, 2^{k-2} - 1)` at an even `xi` in `0..=2^k - 2`.
pub fn phi_eval(xi: u64, k: u32) -> Result<BigInt> {
    check_k(k, 3, 62)?;
    if xi % 2 == 1 {
        return Err(Error::precondition(format!(
            "phi_eval takes even arguments, got {xi}; use phi_eval_rational"
        )));
    }
    if xi > (1u64 << k) - 2 {
        return Err(Error::precondition(format!(
            "argument {xi} exceeds 2^k - 2 for k = {k}"
        )));
    }
    Ok(binom(xi as i64 / 2 - 1, phi_degree(k)))
}

/// `phi` as a polynomial: `prod_{t < d} (xi - 2 - 2t) / (2^d d!)`.
pub fn phi_eval_rational(xi: i64, k: u32) -> Result<BigRational> {
    check_k(k, 3, 30)?;
    let d = phi_degree(k);
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for t in 0..d {
        numer *= BigInt::from(xi) - 2 - 2 * BigInt::from(t);
        denom *= 2 * BigInt::from(t + 1);
    }
    Ok(BigRational::new(numer, denom))
}

/// Coefficients `c_0..c_m` of `phi` in the basis `K_i(. ; m)`, `m = 2^k - 1`,
/// via `c_i = 2^{-m} sum_j phi(j) K_j(i; m)`. The expansion is re-evaluated at
/// every `xi` in `0..=m` and any mismatch aborts.
pub fn krawtchouk_expand(k: u32) -> Result<Vec<BigRational>> {
    check_k(k, 3, MAX_CERTIFY_K)?;
    let m = (1u32 << k) - 1;
    let table = cached_krawtchouk_table(m)?;
    let phi: Vec<BigRational> = (0..=m)
        .map(|j| phi_eval_rational(j.into(), k))
        .collect::<Result<_>>()?;
    let scale = BigRational::from_integer(BigInt::one() << m);
    let coeffs: Vec<BigRational> = (0..=m)
        .map(|i| {
            let s: BigRational = (0..=m)
                .map(|j| &phi[j as usize] * BigRational::from_integer(table.get(j, i).clone()))
                .sum();
            s / &scale
        })
        .collect();
    for xi in 0..=m {
        let value: BigRational = (0..=m)
            .filter(|&i| !coeffs[i as usize].is_zero())
            .map(|i| &coeffs[i as usize] * BigRational::from_integer(table.get(i, xi).clone()))
            .sum();
        if value != phi[xi as usize] {
            return Err(Error::InternalConsistency(format!(
                "Krawtchouk expansion of phi fails to reconstruct phi({xi}) for k = {k}"
            )));
        }
    }
    Ok(coeffs)
}

/// Distances possible inside a truncated family: `2s` with
/// `0 <= s <= 2^{k-1} - 1`, `s != 2^{k-2}`.
pub fn is_admissible_distance(distance: u32, k: u32) -> bool {
    let s = distance / 2;
    distance.is_multiple_of(2) && s < 1 << (k - 1) && s != 1 << (k - 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mod2Check {
    pub k: u32,
    pub ok: bool,
    /// `phi(0) = C(-1, d) = (-1)^d` is odd.
    pub diagonal_odd: bool,
    /// Admissible `s >= 1` with `phi(2s)` odd.
    pub failing: Vec<u64>,
}

/// `Xbar = I (mod 2)` on every truncated family: `phi(0)` odd, `phi(2s)` even
/// for admissible `s >= 1`. Parity of `C(s - 1, d)` comes from Lucas' theorem;
/// `s = 0` has upper argument `-1` and is evaluated directly.
pub fn mod2_identity_check(k: u32) -> Result<Mod2Check> {
    check_k(k, 3, MAX_MOD2_K)?;
    let d = phi_degree(k);
    let diagonal_odd = binom(-1, d).is_odd();
    let failing: Vec<u64> = (1..1u64 << (k - 1))
        .filter(|&s| s != 1 << (k - 2))
        .filter(|&s| binom_mod2(s - 1, d))
        .collect();
    Ok(Mod2Check {
        k,
        ok: diagonal_odd && failing.is_empty(),
        diagonal_odd,
        failing,
    })
}

/// `Xbar`: the principal submatrix of `X = sum_j phi(j) A_j` on a truncated
/// family. Stored as a distance per entry plus the `phi` value per distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedX {
    size: usize,
    distances: Vec<u8>,
    phi_by_distance: Vec<BigInt>,
}

impl RestrictedX {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.phi_by_distance[self.distances[r * self.size + c] as usize]
    }

    pub fn reduce_mod2(&self) -> Gf2Matrix {
        let parity: Vec<bool> = self.phi_by_distance.iter().map(|v| v.is_odd()).collect();
        Gf2Matrix::from_fn(self.size, self.size, |r, c| {
            parity[self.distances[r * self.size + c] as usize]
        })
    }
}

/// Builds `Xbar` for a family in dimension `2^k - 1`, rejecting any pair at an
/// inadmissible distance.
pub fn build_restricted_x(family: &VertexSet, k: u32) -> Result<RestrictedX> {
    check_k(k, 3, MAX_CERTIFY_K)?;
    let m = (1u32 << k) - 1;
    if family.dim() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: family.dim(),
        });
    }
    let size = family.len();
    if size > MAX_RESTRICTED_SIZE {
        return Err(Error::GuardExceeded {
            what: "truncated family size",
            limit: MAX_RESTRICTED_SIZE as u64,
            got: size as u64,
        });
    }
    let masks = family.masks();
    let mut distances = vec![0u8; size * size];
    for r in 0..size {
        for c in r + 1..size {
            let d = (masks[r] ^ masks[c]).count_ones();
            if !is_admissible_distance(d, k) {
                return Err(Error::InadmissibleDistance {
                    x: family.get(r).unwrap().to_string(),
                    y: family.get(c).unwrap().to_string(),
                    distance: d,
                });
            }
            distances[r * size + c] = d as u8;
            distances[c * size + r] = d as u8;
        }
    }
    // phi at odd distances is never referenced
    let phi_by_distance = (0..=m)
        .map(|d| {
            if d % 2 == 0 {
                phi_eval(d.into(), k)
            } else {
                Ok(BigInt::zero())
            }
        })
        .collect::<Result<_>>()?;
    Ok(RestrictedX {
        size,
        distances,
        phi_by_distance,
    })
}

pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

fn rank_sum(k: u32) -> BigInt {
    let m = (1i64 << k) - 1;
    (0..=phi_degree(k)).map(|i| binom(m, i)).sum()
}

fn degree_ok(coeffs: &[BigRational], k: u32) -> bool {
    coeffs
        .iter()
        .skip(phi_degree(k) as usize + 1)
        .all(Zero::is_zero)
}

/// `sum_{i <= 2^{k-2} - 1} C(2^k - 1, i)`, emitted only once the parity and
/// degree conditions have been checked.
pub fn family_rank_bound(k: u32) -> Result<BigInt> {
    check_k(k, 3, MAX_CERTIFY_K)?;
    let mod2 = mod2_identity_check(k)?;
    if !mod2.ok {
        return Err(Error::Uncertified(format!(
            "Xbar is not the identity mod 2 for k = {k}"
        )));
    }
    if !degree_ok(&krawtchouk_expand(k)?, k) {
        return Err(Error::Uncertified(format!(
            "phi has Krawtchouk components above degree {} for k = {k}",
            phi_degree(k)
        )));
    }
    Ok(rank_sum(k))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InadmissiblePair {
    pub x: String,
    pub y: String,
    pub distance: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyEvidence {
    pub label: FamilyLabel,
    pub size: usize,
    pub inadmissible_pair: Option<InadmissiblePair>,
    pub identity_mod2: bool,
    pub gf2_rank: usize,
    pub full_rank: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEvidence {
    pub size: usize,
    pub dimension_ok: bool,
    /// `None` when the set is too large for a pairwise scan.
    pub independent: Option<bool>,
    pub families: Vec<FamilyEvidence>,
    pub within_bound: bool,
    pub equality: bool,
}

/// Outcome of [`certify`]. Serialized field order is fixed; integers are
/// decimal strings and rationals `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub valid: bool,
    pub trivial: bool,
    pub k: u32,
    pub n: u64,
    pub m: u64,
    pub degree: u64,
    #[serde(serialize_with = "exact_serde::rationals")]
    pub phi_values: Vec<BigRational>,
    #[serde(serialize_with = "exact_serde::rationals")]
    pub coefficients: Vec<BigRational>,
    pub degree_ok: bool,
    pub mod2_ok: bool,
    pub mod2_failures: Vec<u64>,
    #[serde(serialize_with = "exact_serde::big")]
    pub family_rank_bound: BigInt,
    #[serde(serialize_with = "exact_serde::big")]
    pub total_bound: BigInt,
    #[serde(serialize_with = "exact_serde::big")]
    pub a_n: BigInt,
    pub matches_a_n: bool,
    pub witness: Option<WitnessEvidence>,
    pub reasons: Vec<String>,
}

impl CertificateReport {
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn witness_independence(set: &VertexSet) -> Option<bool> {
    (set.len() <= EXHAUSTIVE_LIMIT)
        .then(|| verify_independent(set).map(|v| v.is_independent()).ok())
        .flatten()
}

fn family_evidence(label: FamilyLabel, family: &VertexSet, k: u32) -> Result<FamilyEvidence> {
    let mut ev = FamilyEvidence {
        label,
        size: family.len(),
        inadmissible_pair: None,
        identity_mod2: false,
        gf2_rank: 0,
        full_rank: false,
    };
    match build_restricted_x(family, k) {
        Ok(x) => {
            let reduced = x.reduce_mod2();
            ev.identity_mod2 = reduced.is_identity();
            ev.gf2_rank = gf2_rank(&reduced);
            ev.full_rank = ev.gf2_rank == ev.size;
        }
        Err(Error::InadmissibleDistance { x, y, distance }) => {
            ev.inadmissible_pair = Some(InadmissiblePair { x, y, distance });
        }
        Err(e) => return Err(e),
    }
    Ok(ev)
}

/// Runs the whole argument for `n = 2^k`, `2 <= k <= 6`. With a witness set
/// it also splits the witness into truncated families and checks each `Xbar`
/// mod 2, which shows the bound is attained when the witness is extremal.
///
/// Sub-check failures produce `valid = false` with reasons; `Err` is reserved
/// for precondition and size guard violations.
pub fn certify(k: u32, witness: Option<&VertexSet>) -> Result<CertificateReport> {
    check_k(k, 2, MAX_CERTIFY_K)?;
    let n = 1u64 << k;
    let m = n - 1;
    let a = a_n(n as u32)?;
    let mut reasons = Vec::new();

    let mut report = if k == 2 {
        // Omega_4: any two vectors at distance 2 are orthogonal, bound 4 is immediate
        CertificateReport {
            valid: true,
            trivial: true,
            k,
            n,
            m,
            degree: 0,
            phi_values: vec![],
            coefficients: vec![],
            degree_ok: true,
            mod2_ok: true,
            mod2_failures: vec![],
            family_rank_bound: BigInt::one(),
            total_bound: BigInt::from(4),
            a_n: a.clone(),
            matches_a_n: a == BigInt::from(4),
            witness: None,
            reasons: vec!["trivial case k = 2".into()],
        }
    } else {
        let phi_values = (0..=m as i64)
            .map(|j| phi_eval_rational(j, k))
            .collect::<Result<Vec<_>>>()?;
        let (coefficients, expansion_ok) = match krawtchouk_expand(k) {
            Ok(c) => (c, true),
            Err(Error::InternalConsistency(msg)) => {
                reasons.push(msg);
                (vec![], false)
            }
            Err(e) => return Err(e),
        };
        let degree_ok = expansion_ok && degree_ok(&coefficients, k);
        if expansion_ok && !degree_ok {
            reasons.push(format!("phi has components above degree {}", phi_degree(k)));
        }
        let mod2 = mod2_identity_check(k)?;
        if !mod2.ok {
            reasons.push(format!(
                "Xbar is not the identity mod 2 (diagonal odd: {}, failing s: {:?})",
                mod2.diagonal_odd, mod2.failing
            ));
        }
        let family_rank_bound = rank_sum(k);
        let total_bound = &family_rank_bound * 4;
        let matches_a_n = total_bound == a;
        if !matches_a_n {
            reasons.push(format!("total bound {total_bound} differs from a_n = {a}"));
        }
        CertificateReport {
            valid: degree_ok && mod2.ok && matches_a_n,
            trivial: false,
            k,
            n,
            m,
            degree: phi_degree(k),
            phi_values,
            coefficients,
            degree_ok,
            mod2_ok: mod2.ok,
            mod2_failures: mod2.failing,
            family_rank_bound,
            total_bound,
            a_n: a,
            matches_a_n,
            witness: None,
            reasons,
        }
    };

    if let Some(set) = witness {
        let ev = witness_evidence(set, k, n, &report.total_bound)?;
        let mut problems = Vec::new();
        if !ev.dimension_ok {
            problems.push(format!("witness has dimension {}, expected {n}", set.dim()));
        }
        if ev.independent == Some(false) {
            problems.push("witness is not independent".to_string());
        }
        for f in &ev.families {
            if let Some(p) = &f.inadmissible_pair {
                problems.push(format!(
                    "family {}: pair {} / {} at inadmissible distance {}",
                    f.label, p.x, p.y, p.distance
                ));
            } else if !f.identity_mod2 || !f.full_rank {
                problems.push(format!(
                    "family {}: Xbar mod 2 identity {}, GF(2) rank {} of {}",
                    f.label, f.identity_mod2, f.gf2_rank, f.size
                ));
            }
        }
        if !ev.within_bound {
            problems.push(format!(
                "witness size {} exceeds bound {}",
                ev.size, report.total_bound
            ));
        }
        if !problems.is_empty() {
            report.valid = false;
            report.reasons.extend(problems);
        }
        report.witness = Some(ev);
    }
    Ok(report)
}

fn witness_evidence(set: &VertexSet, k: u32, n: u64, bound: &BigInt) -> Result<WitnessEvidence> {
    let size = set.len();
    let dimension_ok = u64::from(set.dim()) == n;
    let within_bound = BigInt::from(size) <= *bound;
    let mut ev = WitnessEvidence {
        size,
        dimension_ok,
        independent: None,
        families: vec![],
        within_bound,
        equality: BigInt::from(size) == *bound,
    };
    if !dimension_ok {
        return Ok(ev);
    }
    ev.independent = witness_independence(set);
    if k >= 3 {
        let split = split_truncate(set)?;
        ev.families = split
            .iter()
            .map(|(label, fam)| family_evidence(label, fam, k))
            .collect::<Result<_>>()?;
    }
    Ok(ev)
}

/// Exact check of `sum_j phi(j) A_j = 2^m sum_i c_i E_i` on `Q_m`, with `phi`
/// evaluated as a polynomial at odd `j` too. Dense, so only `k = 3` (`m = 7`).
pub fn spectral_form_check(k: u32) -> Result<bool> {
    check_k(k, 3, 3)?;
    let m = (1u32 << k) - 1;
    let size = 1usize << m;
    let phi: Vec<BigRational> = (0..=m)
        .map(|j| phi_eval_rational(j.into(), k))
        .collect::<Result<_>>()?;
    let common = phi.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let x = distance_function_matrix(m, common.clone(), |j| {
        phi[j as usize].numer() * (&common / phi[j as usize].denom())
    })?;
    let coeffs = krawtchouk_expand(k)?;
    let projections: Vec<(BigRational, ExactRationalMatrix)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Ok((c.clone(), projection_matrix(i as u32, m)?)))
        .collect::<Result<_>>()?;
    let rhs = ExactRationalMatrix::linear_combination(
        size,
        size,
        projections.iter().map(|(c, e)| (c.clone(), e)),
    )?
    .scale(&BigRational::from_integer(BigInt::one() << m));
    Ok(x == rhs)
}
