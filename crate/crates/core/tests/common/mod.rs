#![allow(dead_code)]

use klreg_core::ladder::{Ladder, Mark};
use klreg_core::perm::{Cell, Permutation};

pub fn p(w: &[usize]) -> Permutation {
    Permutation::new(w.to_vec()).unwrap()
}

pub fn intro_pair() -> (Permutation, Permutation) {
    (
        p(&[5, 8, 9, 10, 1, 2, 11, 3, 4, 6, 7]),
        p(&[1, 4, 5, 8, 2, 3, 9, 6, 10, 11, 7]),
    )
}

pub fn rothe_pair() -> (Permutation, Permutation) {
    (
        p(&[4, 6, 1, 2, 8, 9, 3, 5, 10, 7]),
        p(&[4, 1, 2, 3, 6, 8, 5, 9, 7, 10]),
    )
}

pub fn s16_pair() -> (Permutation, Permutation) {
    (
        p(&[6, 11, 12, 13, 14, 15, 1, 16, 2, 3, 4, 5, 7, 8, 9, 10]),
        p(&[1, 6, 2, 3, 7, 8, 11, 12, 4, 5, 9, 10, 13, 14, 15, 16]),
    )
}

fn ladder(lambda: &[usize], mu: &[usize], marks: &[(usize, usize, usize)]) -> Ladder {
    Ladder::new(
        lambda.to_vec(),
        mu.to_vec(),
        marks.iter().map(|&(r, c, k)| Mark::new(r, c, k)).collect(),
    )
    .unwrap()
}

/// Small two-sided ladders, each with at least one lattice path.
pub fn downsized() -> Vec<Ladder> {
    vec![
        ladder(&[4, 4, 2], &[2, 2], &[(2, 0, 2), (3, 2, 1)]),
        ladder(&[4, 2, 2], &[2, 0], &[(1, 0, 1), (3, 2, 2)]),
        ladder(&[4, 4, 3], &[1, 0], &[(2, 0, 2), (3, 1, 2)]),
        ladder(&[3, 3, 3], &[1, 1], &[(3, 0, 2), (3, 3, 1)]),
    ]
}

/// Boxes crossed by a figure polyline, in order. Vertices are figure
/// coordinates `(x, y)`: `x` is the column, `10 - y` the lattice row.
pub fn polyline(vertices: &[(f64, f64)]) -> Vec<Cell> {
    let doubled: Vec<(i64, i64)> = vertices
        .iter()
        .map(|&(x, y)| ((20.0 - 2.0 * y) as i64, (2.0 * x) as i64))
        .collect();
    let mut out: Vec<Cell> = Vec::new();
    let mut visit = |r: i64, c: i64| {
        if r % 2 == 1 && c % 2 == 1 {
            let cell = Cell::new((r as usize).div_ceil(2), (c as usize).div_ceil(2));
            if out.last() != Some(&cell) {
                out.push(cell);
            }
        }
    };
    for seg in doubled.windows(2) {
        let ((r0, c0), (r1, c1)) = (seg[0], seg[1]);
        let steps = (r1 - r0).abs().max((c1 - c0).abs());
        for k in 0..=steps {
            visit(r0 + (r1 - r0).signum() * k, c0 + (c1 - c0).signum() * k);
        }
    }
    out
}
