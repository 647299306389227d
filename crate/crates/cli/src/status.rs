//! What is known about `alpha(Omega_n)` for a given `n`, without overclaiming.

/// Knowledge status of `alpha(Omega_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaStatus {
    /// `n` odd: no two vectors are orthogonal, `alpha = 2^n`.
    Edgeless,
    /// `n = 2 mod 4`: edges join opposite parities only, `alpha = 2^{n-1}`.
    Bipartite,
    /// `n = 2^k`, `k >= 2`: `alpha = a_n`, certified by the rank argument.
    Theorem,
    /// `n = 4 p^k`, `p` an odd prime: `alpha = a_n` by Frankl's result.
    CitedFrankl,
    /// `n = 24`: `alpha = a_n` established by a semidefinite programming bound.
    CitedSdp,
    /// Any other `n = 0 mod 4`: `a_n` is only a lower bound.
    Conjectured,
}

impl AlphaStatus {
    pub fn of(n: u32) -> Self {
        if n % 2 == 1 {
            AlphaStatus::Edgeless
        } else if n % 4 == 2 {
            AlphaStatus::Bipartite
        } else if n.is_power_of_two() {
            AlphaStatus::Theorem
        } else if is_odd_prime_power(n / 4) {
            AlphaStatus::CitedFrankl
        } else if n == 24 {
            AlphaStatus::CitedSdp
        } else {
            AlphaStatus::Conjectured
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            AlphaStatus::Edgeless => "edgeless",
            AlphaStatus::Bipartite => "bipartite",
            AlphaStatus::Theorem => "theorem",
            AlphaStatus::CitedFrankl => "theorem (cited, n = 4p^k)",
            AlphaStatus::CitedSdp => "verified via SDP (cited)",
            AlphaStatus::Conjectured => "conjectured",
        }
    }

    /// Whether `alpha(Omega_n)` is established, as opposed to conjectured.
    pub fn is_established(&self) -> bool {
        !matches!(self, AlphaStatus::Conjectured)
    }

    pub fn notes(n: u32) -> Vec<&'static str> {
        let mut notes = Vec::new();
        if n == 16 {
            notes.push("also verified via SDP (cited)");
        }
        if n == 4 {
            notes.push("trivial case k = 2");
        }
        if n == 40 {
            notes.push("first open case");
        }
        notes
    }
}

fn is_odd_prime_power(q: u32) -> bool {
    if q < 3 || q.is_multiple_of(2) {
        return false;
    }
    let p = (3..=q)
        .step_by(2)
        .find(|d| q.is_multiple_of(*d))
        .expect("q >= 3");
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(AlphaStatus::of(3), AlphaStatus::Edgeless);
        assert_eq!(AlphaStatus::of(6), AlphaStatus::Bipartite);
        assert_eq!(AlphaStatus::of(4), AlphaStatus::Theorem);
        assert_eq!(AlphaStatus::of(16), AlphaStatus::Theorem);
        assert_eq!(AlphaStatus::of(12), AlphaStatus::CitedFrankl);
        assert_eq!(AlphaStatus::of(36), AlphaStatus::CitedFrankl);
        assert_eq!(AlphaStatus::of(20), AlphaStatus::CitedFrankl);
        assert_eq!(AlphaStatus::of(24), AlphaStatus::CitedSdp);
        assert_eq!(AlphaStatus::of(40), AlphaStatus::Conjectured);
        assert_eq!(AlphaStatus::of(60), AlphaStatus::Conjectured);
        assert!(!AlphaStatus::of(40).is_established());
    }

    #[test]
    fn prime_powers() {
        let yes: Vec<u32> = (1..60).filter(|&q| is_odd_prime_power(q)).collect();
        assert_eq!(
            yes,
            vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49, 53, 59]
        );
    }
}
