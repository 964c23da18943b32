#![allow(dead_code)]

use gridfloer::GridDiagram;
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniformly random valid grid of size `n` (knot or link).
pub fn random_grid<R: Rng>(rng: &mut R, n: usize) -> GridDiagram {
    loop {
        let mut o: Vec<usize> = (0..n).collect();
        let mut x: Vec<usize> = (0..n).collect();
        o.shuffle(rng);
        x.shuffle(rng);
        if let Ok(g) = GridDiagram::new(n, o, x) {
            return g;
        }
    }
}

/// Random valid grid of size `n` that represents a knot.
pub fn random_knot<R: Rng>(rng: &mut R, n: usize) -> GridDiagram {
    loop {
        let g = random_grid(rng, n);
        if g.is_knot() {
            return g;
        }
    }
}

pub fn all_states(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut sigma: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(sigma.clone());
        if !gridfloer::state::next_permutation(&mut sigma) {
            break;
        }
    }
    out
}
