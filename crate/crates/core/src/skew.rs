//! Skew regions, the compression `φ_v : D(v) → R_v`, and excited moves.
//!
//! Regions are drawn the way the diagrams appear on the page: each row is a
//! contiguous interval of columns, and both interval ends move weakly east as
//! one goes south. A plain `λ/μ` skew shape is the mirror image of this.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Cell, CellSet, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

/// Rows `1..=rows.len()`, row `i` covering columns `start..=end`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewRegion {
    rows: Vec<Interval>,
}

impl SkewRegion {
    pub fn new(rows: Vec<(usize, usize)>) -> Result<Self> {
        let rows: Vec<Interval> = rows
            .into_iter()
            .map(|(start, end)| Interval { start, end })
            .collect();
        for (i, r) in rows.iter().enumerate() {
            if r.start == 0 || r.start > r.end {
                return Err(Error::validation(format!(
                    "row {} has invalid interval [{}, {}]",
                    i + 1,
                    r.start,
                    r.end
                )));
            }
        }
        for (i, pair) in rows.windows(2).enumerate() {
            if pair[1].start < pair[0].start || pair[1].end < pair[0].end {
                return Err(Error::validation(format!(
                    "rows {} and {} break the weakly-increasing interval condition",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(SkewRegion { rows })
    }

    pub fn empty() -> Self {
        SkewRegion { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Interval] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.last().map_or(0, |r| r.end)
    }

    pub fn row(&self, i: usize) -> Option<Interval> {
        i.checked_sub(1).and_then(|k| self.rows.get(k)).copied()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.row(c.row)
            .is_some_and(|r| (r.start..=r.end).contains(&c.col))
    }

    pub fn contains_opt(&self, c: Option<Cell>) -> bool {
        c.is_some_and(|c| self.contains(c))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.end - r.start + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn cells(&self) -> CellSet {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(k, r)| (r.start..=r.end).map(move |j| Cell::new(k + 1, j)))
            .collect()
    }

    /// `λ/μ` after reflecting across a vertical axis: `λ_i = W - start_i + 1`
    /// and `μ_i = W - end_i`, with `W` the widest column.
    pub fn as_partitions(&self) -> (Vec<usize>, Vec<usize>) {
        let w = self.num_cols();
        let lambda = self.rows.iter().map(|r| w - r.start + 1).collect();
        let mu = self.rows.iter().map(|r| w - r.end).collect();
        (lambda, mu)
    }
}

/// `φ_v` and its inverse on the support of `D(v)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CellMaps {
    pub forward: BTreeMap<Cell, Cell>,
    pub backward: BTreeMap<Cell, Cell>,
}

impl CellMaps {
    pub fn push(&self, set: &CellSet) -> Result<CellSet> {
        set.iter()
            .map(|c| {
                self.forward
                    .get(&c)
                    .copied()
                    .ok_or(Error::Containment(c, "the Rothe diagram"))
            })
            .collect()
    }

    pub fn pull(&self, set: &CellSet) -> Result<CellSet> {
        set.iter()
            .map(|c| {
                self.backward
                    .get(&c)
                    .copied()
                    .ok_or(Error::Containment(c, "the compressed region"))
            })
            .collect()
    }
}

/// Delete the empty rows and columns of `D(v)` and close up the gaps.
pub fn compress(v: &Permutation) -> Result<(SkewRegion, CellMaps)> {
    if !v.is_321_avoiding() {
        return Err(Error::Pattern(format!("{v} contains 321")));
    }
    let diagram = v.rothe_diagram();
    let mut rows: Vec<usize> = diagram.iter().map(|c| c.row).collect();
    let mut cols: Vec<usize> = diagram.iter().map(|c| c.col).collect();
    rows.sort_unstable();
    rows.dedup();
    cols.sort_unstable();
    cols.dedup();
    let row_of: BTreeMap<usize, usize> =
        rows.iter().enumerate().map(|(k, &r)| (r, k + 1)).collect();
    let col_of: BTreeMap<usize, usize> =
        cols.iter().enumerate().map(|(k, &c)| (c, k + 1)).collect();

    let mut maps = CellMaps::default();
    for c in &diagram {
        let image = Cell::new(row_of[&c.row], col_of[&c.col]);
        maps.forward.insert(c, image);
        maps.backward.insert(image, c);
    }

    let mut intervals = Vec::with_capacity(rows.len());
    for i in 1..=rows.len() {
        let cols: Vec<usize> = maps
            .backward
            .range(Cell::new(i, 0)..Cell::new(i + 1, 0))
            .map(|(c, _)| c.col)
            .collect();
        let (start, end) = (cols[0], *cols.last().unwrap());
        if end - start + 1 != cols.len() {
            return Err(Error::Pattern(format!(
                "compressed row {i} of D({v}) has a gap"
            )));
        }
        intervals.push((start, end));
    }
    let region = SkewRegion::new(intervals).map_err(|e| Error::Pattern(e.to_string()))?;
    Ok((region, maps))
}

/// A set of pluses inside a region.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlusDiagram {
    pub region: SkewRegion,
    pub pluses: CellSet,
}

impl PlusDiagram {
    pub fn new(region: SkewRegion, pluses: CellSet) -> Result<Self> {
        if let Some(c) = pluses.iter().find(|&c| !region.contains(c)) {
            return Err(Error::Containment(c, "the region"));
        }
        Ok(PlusDiagram { region, pluses })
    }

    pub fn empty(region: SkewRegion) -> Self {
        PlusDiagram {
            region,
            pluses: CellSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.pluses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pluses.is_empty()
    }

    /// In the region and carrying no plus.
    pub fn is_free(&self, c: Option<Cell>) -> bool {
        c.is_some_and(|c| self.region.contains(c) && !self.pluses.contains(c))
    }

    /// Whether an (ordinary or K-theoretic) excited move applies at `b`:
    /// `b` is a plus and the other three cells of the 2x2 square with `b` in
    /// its northeast corner are free.
    pub fn can_move(&self, b: Cell) -> bool {
        self.pluses.contains(b)
            && self.is_free(b.offset(0, -1))
            && self.is_free(b.offset(1, -1))
            && self.is_free(b.offset(1, 0))
    }

    pub fn excited_targets(&self) -> Vec<Cell> {
        self.pluses.iter().filter(|&b| self.can_move(b)).collect()
    }

    pub fn apply_excited(&self, b: Cell) -> Result<PlusDiagram> {
        if !self.can_move(b) {
            return Err(Error::MoveNotApplicable(b));
        }
        let mut next = self.clone();
        next.pluses.remove(b);
        next.pluses
            .insert(b.offset(1, -1).expect("checked by can_move"));
        Ok(next)
    }

    pub fn apply_k_excited(&self, b: Cell) -> Result<PlusDiagram> {
        if !self.can_move(b) {
            return Err(Error::MoveNotApplicable(b));
        }
        let mut next = self.clone();
        next.pluses
            .insert(b.offset(1, -1).expect("checked by can_move"));
        Ok(next)
    }

    /// Pluses `b` that could be the result of an excited move, i.e. that
    /// admit a reverse move back to `b + (-1, 1)`.
    pub fn reverse_targets(&self) -> Vec<Cell> {
        self.pluses
            .iter()
            .filter(|&b| {
                let origin = b.offset(-1, 1);
                self.is_free(origin)
                    && self.is_free(b.offset(-1, 0))
                    && self.is_free(b.offset(0, 1))
            })
            .collect()
    }

    /// `'+'` for pluses, `'.'` for empty region cells, `' '` outside.
    pub fn render(&self) -> String {
        self.render_with(|c| if self.pluses.contains(c) { '+' } else { '.' })
    }

    /// Render every region cell with `glyph`; cells outside become spaces.
    pub fn render_with(&self, glyph: impl Fn(Cell) -> char) -> String {
        let mut out = String::new();
        for i in 1..=self.region.num_rows() {
            let mut line = String::new();
            for j in 1..=self.region.num_cols() {
                let c = Cell::new(i, j);
                line.push(if self.region.contains(c) {
                    glyph(c)
                } else {
                    ' '
                });
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}

/// `D_top(v, w) = φ_v(D^NE(v, w))`.
pub fn d_top(v: &Permutation, w: &Permutation) -> Result<PlusDiagram> {
    let ne = crate::pipes::d_ne(v, w)?;
    let (region, maps) = compress(v)?;
    PlusDiagram::new(region, maps.push(&ne)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::cells;

    fn p(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    fn ex23() -> (Permutation, Permutation) {
        (
            p(&[4, 6, 1, 2, 8, 9, 3, 5, 10, 7]),
            p(&[4, 1, 2, 3, 6, 8, 5, 9, 7, 10]),
        )
    }

    #[test]
    fn compress_examples() {
        let (v, _) = ex23();
        let (region, maps) = compress(&v).unwrap();
        let rows: Vec<_> = region.rows().iter().map(|r| (r.start, r.end)).collect();
        assert_eq!(rows, vec![(1, 3), (1, 4), (3, 5), (3, 5), (5, 5)]);
        assert_eq!(region.len(), 14);
        for (a, b) in &maps.forward {
            assert_eq!(maps.backward[b], *a);
        }
        assert!(compress(&Permutation::identity(4)).unwrap().0.is_empty());
        let v12 = p(&[5, 8, 9, 10, 1, 2, 11, 3, 4, 6, 7]);
        assert_eq!(compress(&v12).unwrap().0.len(), 26);
        assert!(matches!(compress(&p(&[3, 2, 1])), Err(Error::Pattern(_))));
    }

    #[test]
    fn top_diagram() {
        let (v, w) = ex23();
        let top = d_top(&v, &w).unwrap();
        assert_eq!(
            top.pluses,
            cells(&[(1, 1), (1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 5)])
        );
        assert!(top.reverse_targets().is_empty());
        assert!(d_top(&v, &Permutation::identity(10)).unwrap().is_empty());
    }

    #[test]
    fn moves() {
        let (v, w) = ex23();
        let top = d_top(&v, &w).unwrap();
        let moved = top.apply_excited(Cell::new(3, 4)).unwrap();
        assert!(moved.pluses.contains(Cell::new(4, 3)));
        assert_eq!(moved.len(), top.len());
        assert!(matches!(
            moved.apply_excited(Cell::new(3, 4)),
            Err(Error::MoveNotApplicable(_))
        ));
        let k = moved.apply_k_excited(Cell::new(4, 3)).unwrap_err();
        assert_eq!(k, Error::MoveNotApplicable(Cell::new(4, 3)));
        let grown = top.apply_k_excited(Cell::new(3, 4)).unwrap();
        assert_eq!(grown.len(), top.len() + 1);
        // an occupied (4,4) blocks the square below (3,4)
        let blocked = PlusDiagram::new(top.region.clone(), cells(&[(3, 4), (4, 4)])).unwrap();
        assert!(blocked.apply_k_excited(Cell::new(3, 4)).is_err());
        assert!(PlusDiagram::empty(top.region.clone())
            .excited_targets()
            .is_empty());
    }

    #[test]
    fn render_shape() {
        let (v, w) = ex23();
        let top = d_top(&v, &w).unwrap();
        assert_eq!(top.render(), "+++\n...+\n  .++\n  ..+\n    .\n");
    }

    #[test]
    fn region_validation() {
        assert!(SkewRegion::new(vec![(2, 3), (1, 3)]).is_err());
        assert!(SkewRegion::new(vec![(1, 3), (2, 2)]).is_err());
        let r = SkewRegion::new(vec![(1, 3), (1, 4), (3, 5)]).unwrap();
        assert_eq!(r.as_partitions(), (vec![5, 5, 3], vec![2, 1, 0]));
    }
}
