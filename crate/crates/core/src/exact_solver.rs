//! Exact maximum independent sets of `Omega_n` for `n <= 8`.
//!
//! The graph is split into connected components and each component is solved
//! as a maximum clique problem on its complement, by branch and bound with a
//! greedy colouring bound over 256-bit vertex sets.

use crate::error::{Error, Result};
use crate::hypercube::{Vertex, VertexSet};

pub const MAX_EXACT_DIM: u32 = 8;

const WORDS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Bits([u64; WORDS]);

impl Bits {
    fn full(len: usize) -> Self {
        let mut b = Bits::default();
        for v in 0..len {
            b.insert(v);
        }
        b
    }

    #[inline]
    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    fn and(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }

    #[inline]
    fn and_not(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & !o.0[i]))
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Branch-and-bound state for one component: the compatibility (non-adjacency)
/// relation, the partial set being grown and the best set found so far.
struct SearchState<'a> {
    compatible: &'a [Bits],
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
}

impl SearchState<'_> {
    /// Greedy sequential colouring of `candidates` in the compatibility graph.
    /// Returns vertices ordered by colour together with their colour numbers.
    fn colour_sort(&self, candidates: Bits) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut uncoloured = candidates;
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut open = uncoloured;
            while let Some(v) = open.first() {
                open.remove(v);
                open = open.and_not(self.compatible[v]);
                uncoloured.remove(v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut candidates: Bits) {
        self.nodes += 1;
        let (order, colours) = self.colour_sort(candidates);
        for idx in (0..order.len()).rev() {
            // colours[idx] bounds the clique size available among order[..=idx]
            if self.current.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let next = candidates.and(self.compatible[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisResult {
    pub size: usize,
    pub witness: VertexSet,
    /// Search nodes expanded over all components.
    pub nodes: u64,
}

fn adjacent(a: u64, b: u64, n: u32) -> bool {
    n.is_multiple_of(2) && 2 * (a ^ b).count_ones() == n
}

/// Maximum independent set of the subgraph of `Omega_n` induced on `masks`.
fn solve_induced(n: u32, masks: &[u64]) -> Result<MisResult> {
    let mut remaining: Vec<bool> = vec![true; masks.len()];
    let mut chosen = Vec::new();
    let mut nodes = 0;
    for start in 0..masks.len() {
        if !remaining[start] {
            continue;
        }
        let mut component = vec![start];
        remaining[start] = false;
        let mut head = 0;
        while head < component.len() {
            let u = component[head];
            head += 1;
            for (w, slot) in remaining.iter_mut().enumerate() {
                if *slot && adjacent(masks[u], masks[w], n) {
                    *slot = false;
                    component.push(w);
                }
            }
        }
        component.sort_unstable();
        let len = component.len();
        let compatible: Vec<Bits> = component
            .iter()
            .enumerate()
            .map(|(i, &u)| {
                let mut b = Bits::default();
                for (j, &w) in component.iter().enumerate() {
                    if i != j && !adjacent(masks[u], masks[w], n) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        let mut state = SearchState {
            compatible: &compatible,
            current: Vec::new(),
            best: Vec::new(),
            nodes: 0,
        };
        state.expand(Bits::full(len));
        nodes += state.nodes;
        chosen.extend(state.best.iter().map(|&i| masks[component[i]]));
    }
    let witness = VertexSet::from_masks(n, chosen)?;
    Ok(MisResult {
        size: witness.len(),
        witness,
        nodes,
    })
}

fn check_exact_dim(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::precondition("dimension must be >= 1"));
    }
    if n > MAX_EXACT_DIM {
        return Err(Error::GuardExceeded {
            what: "exact solver dimension",
            limit: MAX_EXACT_DIM.into(),
            got: n.into(),
        });
    }
    Ok(())
}

/// `alpha(Omega_n)` with a witness, for `1 <= n <= 8`.
pub fn max_independent_set(n: u32) -> Result<MisResult> {
    check_exact_dim(n)?;
    let all: Vec<u64> = (0..1u64 << n).collect();
    solve_induced(n, &all)
}

/// Independence number of `Omega_n` restricted to even-weight vertices,
/// `n` divisible by 4. Flipping one coordinate maps the even class onto the
/// odd class and no edge joins the two, so `alpha(Omega_n)` is twice this.
pub fn max_independent_set_parity_class(n: u32) -> Result<usize> {
    check_exact_dim(n)?;
    if !n.is_multiple_of(4) {
        return Err(Error::precondition(format!(
            "parity decomposition needs n divisible by 4, got {n}"
        )));
    }
    let even: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() % 2 == 0).collect();
    Ok(solve_induced(n, &even)?.size)
}

/// Convenience: witness as vertices.
impl MisResult {
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.witness.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::verify_independent;

    /// Exhaustive oracle for tiny vertex counts.
    fn brute_alpha(n: u32) -> usize {
        let size = 1usize << n;
        assert!(size <= 16);
        (0u32..1 << size)
            .filter(|&sel| {
                (0..size).all(|a| {
                    (a + 1..size).all(|b| {
                        sel >> a & 1 == 0 || sel >> b & 1 == 0 || !adjacent(a as u64, b as u64, n)
                    })
                })
            })
            .map(|sel| sel.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn odd_dimensions_are_edgeless() {
        for n in [1, 3, 5, 7] {
            let r = max_independent_set(n).unwrap();
            assert_eq!(r.size, 1 << n);
            assert_eq!(r.witness.len(), 1 << n);
        }
    }

    #[test]
    fn matches_brute_force_up_to_4() {
        for n in 1..=4 {
            assert_eq!(
                max_independent_set(n).unwrap().size,
                brute_alpha(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn n4_and_bipartite_cases() {
        assert_eq!(max_independent_set(4).unwrap().size, 4);
        assert_eq!(max_independent_set(2).unwrap().size, 2);
        assert_eq!(max_independent_set(6).unwrap().size, 32);
        assert_eq!(max_independent_set_parity_class(4).unwrap(), 2);
    }

    #[test]
    fn witnesses_verify_and_are_deterministic() {
        for n in 1..=6 {
            let r = max_independent_set(n).unwrap();
            assert!(verify_independent(&r.witness).unwrap().is_independent());
            assert_eq!(r.witness.len(), r.size);
            assert_eq!(r, max_independent_set(n).unwrap());
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(
            max_independent_set(9),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(max_independent_set(0).is_err());
        assert!(max_independent_set_parity_class(6).is_err());
    }

    #[test]
    fn bits_basics() {
        let mut b = Bits::full(130);
        assert_eq!(b.first(), Some(0));
        for v in 0..129 {
            b.remove(v);
        }
        assert_eq!(b.first(), Some(129));
        b.remove(129);
        assert!(b.is_empty());
    }
}
