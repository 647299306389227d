//! Bitmask vertices of `{-1, 1}^n` and the orthogonality relation.
//!
//! A vertex is an `n`-bit word: bit `b` is set iff coordinate `b` equals `-1`.
//! Bit 0 is the first coordinate, bit `n - 1` the last one.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Vertices fit in a single machine word.
pub const MAX_DIM: u32 = 64;

/// Largest set scanned pair-by-pair.
pub const EXHAUSTIVE_LIMIT: usize = 100_000;

#[inline]
pub(crate) fn low_bits(dim: u32) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

fn check_dim(dim: u32) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::precondition(format!(
            "dimension must lie in 1..={MAX_DIM}, got {dim}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    dim: u32,
    mask: u64,
}

impl Vertex {
    pub fn new(mask: u64, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if mask & !low_bits(dim) != 0 {
            return Err(Error::precondition(format!(
                "mask {mask:#x} has bits outside dimension {dim}"
            )));
        }
        Ok(Vertex { dim, mask })
    }

    #[inline]
    pub(crate) fn from_raw(mask: u64, dim: u32) -> Self {
        debug_assert!(mask & !low_bits(dim) == 0);
        Vertex { dim, mask }
    }

    /// The all-(+1) vector.
    pub fn all_plus(dim: u32) -> Result<Self> {
        Vertex::new(0, dim)
    }

    /// The all-(-1) vector.
    pub fn all_minus(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Vertex::from_raw(low_bits(dim), dim))
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Number of `-1` coordinates.
    pub fn weight(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn negate(&self) -> Self {
        Vertex::from_raw(!self.mask & low_bits(self.dim), self.dim)
    }

    /// Whether the last coordinate equals `-1`.
    pub fn last_is_minus(&self) -> bool {
        self.mask >> (self.dim - 1) & 1 == 1
    }

    /// Parses a `+`/`-` string, position 0 first.
    pub fn parse_signs(s: &str) -> Result<Self> {
        let dim = s.chars().count() as u32;
        check_dim(dim)?;
        let mut mask = 0u64;
        for (b, c) in s.chars().enumerate() {
            match c {
                '+' => {}
                '-' => mask |= 1 << b,
                other => {
                    return Err(Error::precondition(format!(
                        "unexpected character {other:?} in vertex string"
                    )))
                }
            }
        }
        Ok(Vertex::from_raw(mask, dim))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut buf = [0u8; 64];
        write_signs(self.mask, self.dim, &mut buf);
        f.write_str(std::str::from_utf8(&buf[..self.dim as usize]).unwrap())
    }
}

fn write_signs(mask: u64, dim: u32, buf: &mut [u8]) {
    for (b, slot) in buf.iter_mut().enumerate().take(dim as usize) {
        *slot = if mask >> b & 1 == 1 { b'-' } else { b'+' };
    }
}

pub fn hamming(x: Vertex, y: Vertex) -> Result<u32> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch {
            left: x.dim,
            right: y.dim,
        });
    }
    Ok((x.mask ^ y.mask).count_ones())
}

/// Adjacency in the orthogonality graph: distance exactly `n/2`. Odd `n`
/// gives an edgeless graph.
pub fn is_edge(x: Vertex, y: Vertex) -> Result<bool> {
    let d = hamming(x, y)?;
    Ok(x.dim.is_multiple_of(2) && 2 * d == x.dim)
}

#[inline]
fn orthogonal_masks(a: u64, b: u64, dim: u32) -> bool {
    2 * (a ^ b).count_ones() == dim
}

/// Ascending, duplicate-free set of vertices of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    dim: u32,
    masks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(VertexSet {
            dim,
            masks: Vec::new(),
        })
    }

    /// Sorts and deduplicates `masks`.
    pub fn from_masks(dim: u32, mut masks: Vec<u64>) -> Result<Self> {
        check_dim(dim)?;
        if let Some(bad) = masks.iter().find(|&&m| m & !low_bits(dim) != 0) {
            return Err(Error::precondition(format!(
                "mask {bad:#x} has bits outside dimension {dim}"
            )));
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(VertexSet { dim, masks })
    }

    pub fn from_vertices(dim: u32, vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut masks = Vec::new();
        for v in vertices {
            if v.dim != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim,
                });
            }
            masks.push(v.mask);
        }
        VertexSet::from_masks(dim, masks)
    }

    pub(crate) fn from_sorted_masks(dim: u32, masks: Vec<u64>) -> Self {
        debug_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        VertexSet { dim, masks }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn get(&self, index: usize) -> Option<Vertex> {
        self.masks
            .get(index)
            .map(|&m| Vertex::from_raw(m, self.dim))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.dim == self.dim && self.masks.binary_search(&v.mask).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        let dim = self.dim;
        self.masks.iter().map(move |&m| Vertex::from_raw(m, dim))
    }

    fn check_exhaustive_guard(&self) -> Result<()> {
        if self.len() > EXHAUSTIVE_LIMIT {
            return Err(Error::GuardExceeded {
                what: "set size for pairwise scan",
                limit: EXHAUSTIVE_LIMIT as u64,
                got: self.len() as u64,
            });
        }
        Ok(())
    }
}

/// Random access to a finite vertex collection, so that sampled verification
/// can run on sets that are never materialized.
pub trait VertexSource {
    fn dim(&self) -> u32;
    fn count(&self) -> u64;
    /// The `index`-th member, `index < count()`.
    fn vertex_at(&self, index: u64) -> Vertex;
}

impl VertexSource for VertexSet {
    fn dim(&self) -> u32 {
        self.dim
    }

    fn count(&self) -> u64 {
        self.masks.len() as u64
    }

    fn vertex_at(&self, index: u64) -> Vertex {
        Vertex::from_raw(self.masks[index as usize], self.dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndependenceVerdict {
    Independent,
    Violation(Vertex, Vertex),
}

impl IndependenceVerdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, IndependenceVerdict::Independent)
    }
}

/// Exhaustive pairwise scan. A violation is the lexicographically first pair
/// `(x, y)`, `x < y`, in ascending mask order.
pub fn verify_independent(set: &VertexSet) -> Result<IndependenceVerdict> {
    set.check_exhaustive_guard()?;
    let dim = set.dim;
    if dim % 2 == 1 {
        return Ok(IndependenceVerdict::Independent);
    }
    for (i, &a) in set.masks.iter().enumerate() {
        if let Some(&b) = set.masks[i + 1..]
            .iter()
            .find(|&&b| orthogonal_masks(a, b, dim))
        {
            return Ok(IndependenceVerdict::Violation(
                Vertex::from_raw(a, dim),
                Vertex::from_raw(b, dim),
            ));
        }
    }
    Ok(IndependenceVerdict::Independent)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledVerdict {
    pub seed: u64,
    pub trials: u64,
    pub pairs_checked: u64,
    /// Set when `trials` covered every unordered pair and the scan was exhaustive.
    pub exhaustive: bool,
    #[serde(serialize_with = "serialize_pair")]
    pub violation: Option<(Vertex, Vertex)>,
}

fn serialize_pair<S: serde::Serializer>(
    pair: &Option<(Vertex, Vertex)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match pair {
        Some((x, y)) => s.collect_seq([x.to_string(), y.to_string()]),
        None => s.serialize_none(),
    }
}

/// Checks `trials` uniformly random unordered pairs drawn with a ChaCha8
/// stream seeded by `seed`. When `trials` is at least the number of pairs the
/// scan enumerates all pairs instead.
pub fn verify_independent_sampled<S: VertexSource + ?Sized>(
    set: &S,
    trials: u64,
    seed: u64,
) -> Result<SampledVerdict> {
    if trials == 0 {
        return Err(Error::precondition("trials must be at least 1"));
    }
    let dim = set.dim();
    let len = set.count();
    let mut verdict = SampledVerdict {
        seed,
        trials,
        pairs_checked: 0,
        exhaustive: false,
        violation: None,
    };
    if len < 2 {
        verdict.exhaustive = true;
        return Ok(verdict);
    }
    let total_pairs = u128::from(len) * u128::from(len - 1) / 2;
    if u128::from(trials) >= total_pairs {
        verdict.exhaustive = true;
        for i in 0..len {
            let a = set.vertex_at(i);
            for j in i + 1..len {
                let b = set.vertex_at(j);
                verdict.pairs_checked += 1;
                if orthogonal_masks(a.mask, b.mask, dim) {
                    verdict.violation = Some(ordered(a, b));
                    return Ok(verdict);
                }
            }
        }
        return Ok(verdict);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let i = rng.random_range(0..len);
        let mut j = rng.random_range(0..len - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = (set.vertex_at(i), set.vertex_at(j));
        verdict.pairs_checked += 1;
        if orthogonal_masks(a.mask, b.mask, dim) {
            verdict.violation = Some(ordered(a, b));
            break;
        }
    }
    Ok(verdict)
}

fn ordered(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyLabel {
    #[serde(rename = "even+")]
    EvenPlus,
    #[serde(rename = "even-")]
    EvenMinus,
    #[serde(rename = "odd+")]
    OddPlus,
    #[serde(rename = "odd-")]
    OddMinus,
}

impl FamilyLabel {
    pub const ALL: [FamilyLabel; 4] = [
        FamilyLabel::EvenPlus,
        FamilyLabel::EvenMinus,
        FamilyLabel::OddPlus,
        FamilyLabel::OddMinus,
    ];
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyLabel::EvenPlus => "even+",
            FamilyLabel::EvenMinus => "even-",
            FamilyLabel::OddPlus => "odd+",
            FamilyLabel::OddMinus => "odd-",
        })
    }
}

/// The four families obtained by classifying members by weight parity and
/// sign of the last coordinate, then dropping the last coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySplit {
    pub even_plus: VertexSet,
    pub even_minus: VertexSet,
    pub odd_plus: VertexSet,
    pub odd_minus: VertexSet,
}

impl FamilySplit {
    pub fn get(&self, label: FamilyLabel) -> &VertexSet {
        match label {
            FamilyLabel::EvenPlus => &self.even_plus,
            FamilyLabel::EvenMinus => &self.even_minus,
            FamilyLabel::OddPlus => &self.odd_plus,
            FamilyLabel::OddMinus => &self.odd_minus,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (FamilyLabel, &VertexSet)> {
        FamilyLabel::ALL.into_iter().map(move |l| (l, self.get(l)))
    }

    pub fn total_len(&self) -> usize {
        self.iter().map(|(_, s)| s.len()).sum()
    }
}

pub fn split_truncate(set: &VertexSet) -> Result<FamilySplit> {
    let n = set.dim;
    if n < 2 {
        return Err(Error::precondition("truncation needs dimension >= 2"));
    }
    let keep = low_bits(n - 1);
    let mut buckets: [Vec<u64>; 4] = Default::default();
    for &m in &set.masks {
        let odd = m.count_ones() % 2 == 1;
        let minus = m >> (n - 1) & 1 == 1;
        buckets[usize::from(odd) * 2 + usize::from(minus)].push(m & keep);
    }
    // Within one bucket the dropped bit is constant, so ascending order and
    // distinctness survive truncation.
    let [ep, em, op, om] = buckets.map(|b| VertexSet::from_sorted_masks(n - 1, b));
    Ok(FamilySplit {
        even_plus: ep,
        even_minus: em,
        odd_plus: op,
        odd_minus: om,
    })
}

/// All distances realized by distinct pairs of `set`.
pub fn distance_spectrum(set: &VertexSet) -> Result<BTreeSet<u32>> {
    set.check_exhaustive_guard()?;
    let mut seen = 0u128;
    for (i, &a) in set.masks.iter().enumerate() {
        for &b in &set.masks[i + 1..] {
            seen |= 1u128 << (a ^ b).count_ones();
        }
    }
    Ok((0..=64).filter(|d| seen >> d & 1 == 1).collect())
}

/// Parses the line-oriented set format: one `+`/`-` string per line, blank
/// lines and `#` comments ignored, dimension fixed by the first vertex.
pub fn parse_set(text: &str) -> Result<VertexSet> {
    let mut dim = None;
    let mut masks = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = Vertex::parse_signs(line).map_err(|e| Error::Parse {
            line: idx + 1,
            message: e.to_string(),
        })?;
        match dim {
            None => dim = Some(v.dim),
            Some(d) if d != v.dim => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected {d} coordinates, found {}", v.dim),
                })
            }
            Some(_) => {}
        }
        masks.push(v.mask);
    }
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        message: "set file contains no vertices".into(),
    })?;
    VertexSet::from_masks(dim, masks)
}

/// Writes one `+`/`-` line per member.
pub fn write_set<W: Write>(set: &VertexSet, out: &mut W) -> io::Result<()> {
    let mut line = vec![b'\n'; set.dim as usize + 1];
    for &m in &set.masks {
        write_signs(m, set.dim, &mut line);
        out.write_all(&line)?;
    }
    Ok(())
}
