//! Random sequences of knot-preserving grid moves.

use rand::Rng;

use crate::grid::{GridDiagram, GridMove};

/// Draws one legal move. Stabilization is only offered while the grid is
/// smaller than `max_n`.
pub fn random_move<R: Rng + ?Sized>(g: &GridDiagram, rng: &mut R, max_n: usize) -> GridMove {
    let n = g.size();
    loop {
        match rng.gen_range(0..4) {
            0 => {
                return GridMove::Translate {
                    dx: rng.gen_range(0..n as i64),
                    dy: rng.gen_range(0..n as i64),
                }
            }
            1 => return GridMove::Transpose,
            2 => {
                let legal: Vec<usize> = (0..n).filter(|&c| g.columns_commutable(c)).collect();
                if !legal.is_empty() {
                    return GridMove::CommuteColumns(legal[rng.gen_range(0..legal.len())]);
                }
            }
            _ => {
                if n < max_n {
                    return GridMove::Stabilize(rng.gen_range(0..n));
                }
            }
        }
    }
}

/// Applies up to `max_len` random moves (at least one), returning the final
/// grid and the replayable move list.
pub fn random_walk<R: Rng + ?Sized>(
    g: &GridDiagram,
    rng: &mut R,
    max_len: usize,
    max_n: usize,
) -> (GridDiagram, Vec<GridMove>) {
    let len = rng.gen_range(1..=max_len.max(1));
    let mut cur = g.clone();
    let mut record = Vec::with_capacity(len);
    for _ in 0..len {
        let mv = random_move(&cur, rng, max_n);
        cur = cur.apply(&mv).expect("random moves are legal");
        record.push(mv);
    }
    (cur, record)
}

/// Replays a recorded move list.
pub fn replay(g: &GridDiagram, moves: &[GridMove]) -> Result<GridDiagram, crate::GridError> {
    moves.iter().try_fold(g.clone(), |cur, mv| cur.apply(mv))
}
