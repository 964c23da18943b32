//! Built-in grid diagrams.

use crate::error::GridError;
use crate::grid::GridDiagram;

struct Entry {
    name: &'static str,
    description: &'static str,
    o: &'static [usize],
    x: &'static [usize],
}

const LIBRARY: &[Entry] = &[
    Entry {
        name: "unknot2",
        description: "unknot, minimal 2x2 grid",
        o: &[1, 0],
        x: &[0, 1],
    },
    Entry {
        name: "unknot3",
        description: "unknot, 3x3 grid (one stabilization of unknot2)",
        o: &[0, 2, 1],
        x: &[1, 0, 2],
    },
    Entry {
        name: "trefoil",
        description: "trefoil, T(2,3) torus-knot grid",
        o: &[0, 1, 2, 3, 4],
        x: &[2, 3, 4, 0, 1],
    },
    Entry {
        name: "figure8",
        description: "figure-eight knot 4_1, 6x6 grid",
        o: &[3, 5, 0, 2, 1, 4],
        x: &[0, 1, 4, 5, 3, 2],
    },
    Entry {
        name: "torus_2_5",
        description: "cinquefoil, T(2,5) torus-knot grid",
        o: &[0, 1, 2, 3, 4, 5, 6],
        x: &[2, 3, 4, 5, 6, 0, 1],
    },
    Entry {
        name: "knot5_2",
        description: "twist knot 5_2, 7x7 grid",
        o: &[5, 3, 4, 2, 6, 1, 0],
        x: &[1, 0, 6, 5, 3, 4, 2],
    },
];

/// Names of all built-in grids, in library order.
pub fn names() -> Vec<&'static str> {
    LIBRARY.iter().map(|e| e.name).collect()
}

pub fn description(name: &str) -> Option<&'static str> {
    LIBRARY
        .iter()
        .find(|e| e.name == name)
        .map(|e| e.description)
}

pub fn builtin(name: &str) -> Result<GridDiagram, GridError> {
    let entry = LIBRARY
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| GridError::UnknownName(name.to_string()))?;
    GridDiagram::new(entry.o.len(), entry.o.to_vec(), entry.x.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_is_a_valid_knot() {
        for name in names() {
            let g = builtin(name).unwrap();
            assert_eq!(g.component_count(), 1, "{name}");
            assert!(description(name).is_some());
        }
    }

    #[test]
    fn named_examples() {
        let u = builtin("unknot2").unwrap();
        assert_eq!((u.size(), u.o(), u.x()), (2, &[1, 0][..], &[0, 1][..]));
        let t = builtin("trefoil").unwrap();
        assert_eq!(t.x(), &[2, 3, 4, 0, 1]);
        let c = builtin("torus_2_5").unwrap();
        assert_eq!(c.size(), 7);
        assert!((0..7).all(|i| c.o()[i] == i && c.x()[i] == (i + 2) % 7));
        assert!(builtin("figure8").unwrap().size() <= 7);
        assert_eq!(
            builtin("granny"),
            Err(GridError::UnknownName("granny".into()))
        );
    }
}
