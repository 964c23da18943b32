//! Grid states and the permutation state space.
//!
//! A state of a size-`n` grid is a permutation `sigma`; it stands for the
//! intersection points `(c, sigma[c])` of the vertical and horizontal grid
//! circles. States are numbered by their lexicographic (Lehmer) rank, which
//! is also the order [`next_permutation`] walks them in.

use serde::{Deserialize, Serialize};

/// Largest grid size whose full state space the engine will enumerate.
pub const MAX_STATE_SPACE_N: usize = 11;

/// A generator of the grid chain complex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridState {
    sigma: Vec<u8>,
}

impl GridState {
    /// Panics if `sigma` is not a permutation of `0..sigma.len()`.
    pub fn new(sigma: Vec<u8>) -> Self {
        assert!(is_permutation(&sigma), "{sigma:?} is not a permutation");
        GridState { sigma }
    }

    pub fn identity(n: usize) -> Self {
        GridState {
            sigma: (0..n as u8).collect(),
        }
    }

    pub fn from_rank(n: usize, rank: u64) -> Self {
        let mut sigma = vec![0; n];
        unrank_into(rank, &mut sigma);
        GridState { sigma }
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[u8] {
        &self.sigma
    }

    pub fn rank(&self) -> u64 {
        rank(&self.sigma)
    }

    /// The state with the rows at columns `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> GridState {
        let mut sigma = self.sigma.clone();
        sigma.swap(i, j);
        GridState { sigma }
    }
}

pub fn is_permutation(sigma: &[u8]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma
        .iter()
        .all(|&v| (v as usize) < seen.len() && !std::mem::replace(&mut seen[v as usize], true))
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank of a permutation of `0..len`.
pub fn rank(sigma: &[u8]) -> u64 {
    let n = sigma.len();
    let mut used: u32 = 0;
    let mut r = 0u64;
    for (k, &v) in sigma.iter().enumerate() {
        let smaller_unused = (v as u32) - (used & ((1u32 << v) - 1)).count_ones();
        r = r * (n - k) as u64 + smaller_unused as u64;
        used |= 1 << v;
    }
    r
}

/// Inverse of [`rank`]; `out.len()` fixes the permutation size.
pub fn unrank_into(mut rank: u64, out: &mut [u8]) {
    let n = out.len();
    let mut digits = [0u8; 32];
    for k in (0..n).rev() {
        let base = (n - k) as u64;
        digits[k] = (rank % base) as u8;
        rank /= base;
    }
    let mut free: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for k in 0..n {
        let mut bits = free;
        for _ in 0..digits[k] {
            bits &= bits - 1;
        }
        let v = bits.trailing_zeros();
        out[k] = v as u8;
        free &= !(1 << v);
    }
}

/// Advances to the next permutation in lexicographic order; false after the last.
pub fn next_permutation(sigma: &mut [u8]) -> bool {
    let n = sigma.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && sigma[i - 1] >= sigma[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while sigma[j] <= sigma[i - 1] {
        j -= 1;
    }
    sigma.swap(i - 1, j);
    sigma[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn walk_matches_rank() {
        for n in 1..=6 {
            let mut sigma: Vec<u8> = (0..n as u8).collect();
            let mut count = 0u64;
            loop {
                assert_eq!(rank(&sigma), count);
                let mut back = vec![0; n];
                unrank_into(count, &mut back);
                assert_eq!(back, sigma);
                count += 1;
                if !next_permutation(&mut sigma) {
                    break;
                }
            }
            assert_eq!(count, factorial(n));
        }
    }

    #[test]
    fn state_helpers() {
        let s = GridState::identity(3).swapped(0, 2);
        assert_eq!(s.sigma(), &[2, 1, 0]);
        assert_eq!(s.rank(), 5);
        assert_eq!(GridState::from_rank(3, 5), s);
        assert!(!is_permutation(&[0, 0]));
        assert!(!is_permutation(&[0, 2]));
    }

    proptest! {
        #[test]
        fn rank_round_trips(n in 1usize..=11, seed in any::<u64>()) {
            let r = seed % factorial(n);
            let s = GridState::from_rank(n, r);
            prop_assert!(is_permutation(s.sigma()));
            prop_assert_eq!(s.rank(), r);
        }
    }
}
