//! Two-sided mixed ladders: regions with rank conditions marked on their
//! southwest border, the permutation pair they define, and the lattice-path
//! model for their regularity.
//!
//! # Coordinates
//!
//! A ladder `λ/μ` is drawn with its cutout `μ` in the northeast: row `i`
//! occupies columns `W - λ_i + 1 ..= W - μ_i` where `W = λ_1`. Boundary
//! lattice points are `(row, col)` with `(0, 0)` the northwest corner, and a
//! box is named after its southeast corner. Half-integer boundary points
//! (the path endpoints) are stored doubled.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Cell, CellSet, Permutation};
use crate::skew::{compress, PlusDiagram, SkewRegion};
use crate::zip::{self, ZipResult};

/// A lattice point on the boundary grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Point {
    pub row: usize,
    pub col: usize,
}

impl Point {
    pub const fn new(row: usize, col: usize) -> Self {
        Point { row, col }
    }

    pub fn norm(self) -> usize {
        self.row + self.col
    }
}

impl From<(usize, usize)> for Point {
    fn from((row, col): (usize, usize)) -> Self {
        Point { row, col }
    }
}

impl From<Point> for (usize, usize) {
    fn from(p: Point) -> Self {
        (p.row, p.col)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A point with half-integer coordinates, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfPoint {
    pub row2: usize,
    pub col2: usize,
}

impl HalfPoint {
    pub fn row(self) -> f64 {
        self.row2 as f64 / 2.0
    }

    pub fn col(self) -> f64 {
        self.col2 as f64 / 2.0
    }

    /// Weakly northwest of `other`.
    pub fn is_northwest_of(self, other: HalfPoint) -> bool {
        self.row2 <= other.row2 && self.col2 <= other.col2
    }
}

impl fmt::Display for HalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row(), self.col())
    }
}

impl Serialize for HalfPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.row(), self.col()).serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mark {
    pub point: Point,
    pub r: usize,
}

impl Mark {
    pub fn new(row: usize, col: usize, r: usize) -> Self {
        Mark {
            point: Point::new(row, col),
            r,
        }
    }
}

/// On-disk form of a ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderSpec {
    pub lambda: Vec<usize>,
    #[serde(default)]
    pub mu: Vec<usize>,
    pub marked: Vec<Mark>,
}

/// A well-formed ladder region with marked points on its southwest border.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub marked: Vec<Mark>,
    pub region: SkewRegion,
}

impl TryFrom<LadderSpec> for Ladder {
    type Error = Error;

    fn try_from(spec: LadderSpec) -> Result<Self> {
        Ladder::new(spec.lambda, spec.mu, spec.marked)
    }
}

impl Ladder {
    pub fn new(lambda: Vec<usize>, mut mu: Vec<usize>, mut marked: Vec<Mark>) -> Result<Self> {
        if lambda.is_empty() || lambda.contains(&0) {
            return Err(Error::validation("λ must have positive parts"));
        }
        if mu.len() > lambda.len() {
            return Err(Error::validation("μ has more parts than λ"));
        }
        mu.resize(lambda.len(), 0);
        if lambda.windows(2).any(|p| p[0] < p[1]) || mu.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::validation("λ and μ must be weakly decreasing"));
        }
        let w = lambda[0];
        let mut rows = Vec::with_capacity(lambda.len());
        for (i, (&l, &m)) in lambda.iter().zip(&mu).enumerate() {
            if m >= l {
                return Err(Error::validation(format!("row {} of λ/μ is empty", i + 1)));
            }
            rows.push((w - l + 1, w - m));
        }
        for (i, pair) in rows.windows(2).enumerate() {
            if pair[1].0 > pair[0].1 + 1 {
                return Err(Error::validation(format!(
                    "no box of λ/μ lies in column {} (between rows {} and {})",
                    pair[0].1 + 1,
                    i + 1,
                    i + 2
                )));
            }
        }
        let region = SkewRegion::new(rows)?;
        marked.sort_by_key(|m| (m.point.row, m.point.col));
        let ladder = Ladder {
            lambda,
            mu,
            marked,
            region,
        };
        for m in &ladder.marked {
            if m.r == 0 {
                return Err(Error::validation(format!("mark at {} has r = 0", m.point)));
            }
            if !ladder.on_southwest_border(m.point) {
                return Err(Error::validation(format!(
                    "marked point {} is not on the southwest border",
                    m.point
                )));
            }
        }
        Ok(ladder)
    }

    pub fn spec(&self) -> LadderSpec {
        LadderSpec {
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            marked: self.marked.clone(),
        }
    }

    /// `W = λ_1`.
    pub fn width(&self) -> usize {
        self.lambda[0]
    }

    pub fn height(&self) -> usize {
        self.lambda.len()
    }

    /// Half the perimeter, `λ_1 + λ'_1`.
    pub fn n(&self) -> usize {
        self.width() + self.height()
    }

    /// `#L`.
    pub fn size(&self) -> usize {
        self.region.len()
    }

    fn start(&self, i: usize) -> usize {
        self.region.row(i).expect("row in range").start
    }

    fn end(&self, i: usize) -> usize {
        self.region.row(i).expect("row in range").end
    }

    /// A box of `λ` (the ladder together with its cutout).
    pub fn in_lambda(&self, c: Cell) -> bool {
        c.row >= 1 && c.row <= self.height() && c.col >= self.start(c.row) && c.col <= self.width()
    }

    pub fn in_mu(&self, c: Cell) -> bool {
        self.in_lambda(c) && !self.region.contains(c)
    }

    pub fn on_southwest_border(&self, p: Point) -> bool {
        let h = self.height();
        (1..=h).any(|i| {
            let west = self.start(i) - 1;
            let vertical = p.col == west && (i - 1..=i).contains(&p.row);
            let east = if i == h {
                self.width()
            } else {
                self.start(i + 1) - 1
            };
            let horizontal = p.row == i && (west..=east).contains(&p.col);
            vertical || horizontal
        })
    }

    /// `α_1, ..., α_s`, northwest to southeast.
    pub fn southwest_corners(&self) -> Vec<Point> {
        let h = self.height();
        (1..=h)
            .filter(|&i| i == h || self.start(i + 1) > self.start(i))
            .map(|i| Point::new(i, self.start(i) - 1))
            .collect()
    }

    /// `β_1, ..., β_t`, northwest to southeast.
    pub fn northeast_corners(&self) -> Vec<Point> {
        let mut out = vec![Point::new(0, self.end(1))];
        for i in 2..=self.height() {
            if self.end(i) > self.end(i - 1) {
                out.push(Point::new(i - 1, self.end(i)));
            }
        }
        out
    }

    /// `α_{s+1}`, the southeast corner.
    pub fn southeast_corner(&self) -> Point {
        Point::new(self.height(), self.width())
    }

    /// Rows `[p(1)]` and columns `[p(2) + 1, W]` of the mark at `p`.
    pub fn block(&self, m: &Mark) -> (Vec<usize>, Vec<usize>) {
        (
            (1..=m.point.row).collect(),
            (m.point.col + 1..=self.width()).collect(),
        )
    }

    pub fn validate_minimal(&self) -> MinimalityReport {
        let mut report = MinimalityReport::default();
        let mut covered = BTreeSet::new();
        for m in &self.marked {
            let (rows, cols) = self.block(m);
            for &i in &rows {
                for &j in &cols {
                    let c = Cell::new(i, j);
                    if self.region.contains(c)
                        && !covered.contains(&c)
                        && self.in_some_minor(&rows, &cols, c, m.r)
                    {
                        covered.insert(c);
                    }
                }
            }
        }
        report.uncovered = self
            .region
            .cells()
            .iter()
            .filter(|c| !covered.contains(c))
            .collect();
        for (k, pair) in self.marked.windows(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            let off = |m: Mark, coord: usize| coord as i64 - m.r as i64;
            if off(a, a.point.row) >= off(b, b.point.row) {
                report.row_offsets_fail.push(k + 1);
            }
            if off(a, a.point.col) >= off(b, b.point.col) {
                report.col_offsets_fail.push(k + 1);
            }
        }
        report
    }

    /// Whether some `r`-minor of the block has a term containing `z_c`, i.e.
    /// the support graph of the block minus `c`'s row and column carries a
    /// matching of size `r - 1`.
    fn in_some_minor(&self, rows: &[usize], cols: &[usize], c: Cell, r: usize) -> bool {
        if r > rows.len() || r > cols.len() {
            return false;
        }
        let rows: Vec<usize> = rows.iter().copied().filter(|&i| i != c.row).collect();
        let cols: Vec<usize> = cols.iter().copied().filter(|&j| j != c.col).collect();
        max_matching(&rows, &cols, |i, j| self.region.contains(Cell::new(i, j))) >= r - 1
    }
}

fn max_matching(rows: &[usize], cols: &[usize], edge: impl Fn(usize, usize) -> bool) -> usize {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let adj: Vec<Vec<usize>> = rows
        .iter()
        .map(|&i| (0..cols.len()).filter(|&k| edge(i, cols[k])).collect())
        .collect();
    let mut owner = vec![None; cols.len()];
    (0..rows.len())
        .filter(|&u| augment(u, &adj, &mut vec![false; cols.len()], &mut owner))
        .count()
}

/// Outcome of the three minimality conditions. Offending pairs are reported
/// by the 1-based index of their first mark.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub uncovered: Vec<Cell>,
    pub row_offsets_fail: Vec<usize>,
    pub col_offsets_fail: Vec<usize>,
}

impl MinimalityReport {
    pub fn every_variable_used(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.uncovered.is_empty()
            && self.row_offsets_fail.is_empty()
            && self.col_offsets_fail.is_empty()
    }
}

/// The Lehmer code `s_v` of the ladder's `v`.
pub fn s_v(l: &Ladder) -> Vec<usize> {
    let mut code = Vec::with_capacity(l.n());
    for i in 0..l.height() {
        code.push(l.lambda[i] - l.mu[i]);
        let next = l.lambda.get(i + 1).copied().unwrap_or(0);
        code.extend(std::iter::repeat_n(0, l.lambda[i] - next));
    }
    code
}

/// Rank conditions `(a, b, c)`: `rank_w(a, b) = c`.
pub fn rank_constraints(l: &Ladder, v: &Permutation) -> Vec<(usize, usize, usize)> {
    let rv = v.rank_matrix();
    let mut out = Vec::new();
    for m in &l.marked {
        for beta in l.northeast_corners() {
            let (a, b) = (m.point.norm(), beta.norm());
            let c = a.min(b).min(rv.get(a, b) + m.r - 1);
            out.push((a, b, c));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The minimal-length permutation meeting `constraints`, via the largest
/// rank function they allow.
pub fn envelope_permutation(
    n: usize,
    constraints: &[(usize, usize, usize)],
) -> Result<Permutation> {
    let stride = n + 1;
    let mut rank = vec![0usize; stride * stride];
    for a in 0..=n {
        for b in 0..=n {
            let mut best = a.min(b);
            for &(ak, bk, ck) in constraints {
                best = best.min(ck + a.saturating_sub(ak) + b.saturating_sub(bk));
            }
            rank[a * stride + b] = best;
        }
    }
    let mut word = vec![0; n];
    for a in 1..=n {
        for b in 1..=n {
            let d = rank[a * stride + b] as i64
                - rank[(a - 1) * stride + b] as i64
                - rank[a * stride + b - 1] as i64
                + rank[(a - 1) * stride + b - 1] as i64;
            match d {
                0 => {}
                1 if word[a - 1] == 0 => word[a - 1] = b,
                _ => {
                    return Err(Error::InconsistentConstraints(format!(
                        "rank envelope has corner difference {d} at ({a},{b})"
                    )))
                }
            }
        }
    }
    let w = Permutation::new(word).map_err(|e| Error::InconsistentConstraints(e.to_string()))?;
    for &(a, b, c) in constraints {
        if w.rank_matrix().get(a, b) != c {
            return Err(Error::Construction(format!(
                "rank_w({a},{b}) = {} but the ladder requires {c}",
                w.rank_matrix().get(a, b)
            )));
        }
    }
    Ok(w)
}

/// `perm(L, M) = (v, w)`.
pub fn perm_of(l: &Ladder) -> Result<(Permutation, Permutation)> {
    let v = Permutation::from_lehmer_code(&s_v(l))?;
    let w = envelope_permutation(l.n(), &rank_constraints(l, &v))?;
    Ok((v, w))
}

/// Endpoints of the lattice paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryPoints {
    /// `V_1, ..., V_ℓ`.
    pub v: Vec<HalfPoint>,
    /// `H_1, ..., H_ℓ`, east to west.
    pub h: Vec<HalfPoint>,
    /// The marks together with the corner fill-ins and the two extremes.
    pub extended_marks: Vec<Mark>,
}

impl BoundaryPoints {
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// The box a path enters first: the one above `H_i`.
    pub fn start_cell(&self, i: usize) -> Cell {
        let h = self.h[i];
        Cell::new(h.row2 / 2, h.col2.div_ceil(2))
    }

    /// The box a path leaves last, through its west edge at `V_i`.
    pub fn end_cell(&self, i: usize) -> Cell {
        let v = self.v[i];
        Cell::new(v.row2.div_ceil(2), v.col2 / 2 + 1)
    }
}

pub fn boundary_points(l: &Ladder) -> Result<BoundaryPoints> {
    let alpha = l.southwest_corners();
    let s = alpha.len();
    let min_r =
        |pred: &dyn Fn(Point) -> bool| l.marked.iter().filter(|m| pred(m.point)).map(|m| m.r).min();

    let mut marks: Vec<Mark> = l.marked.clone();
    for i in 0..s.saturating_sub(1) {
        let corner = Point::new(alpha[i].row, alpha[i + 1].col);
        if marks.iter().any(|m| m.point == corner) {
            continue;
        }
        let r_h = min_r(&|p| p.row == alpha[i].row);
        let r_v = min_r(&|p| p.col == alpha[i + 1].col);
        // An absent side imposes nothing; with neither side marked there is no fill-in.
        if let Some(r) = [r_h, r_v].into_iter().flatten().min() {
            marks.push(Mark { point: corner, r });
        }
    }
    marks.push(Mark::new(0, 0, 1));
    let se = l.southeast_corner();
    marks.push(Mark { point: se, r: 1 });
    marks.sort_by_key(|m| (m.point.row, m.point.col));
    marks.dedup_by_key(|m| m.point);

    let mut vs = Vec::new();
    let mut hs = Vec::new();
    for a in &alpha {
        let mut vertical: Vec<Mark> = marks
            .iter()
            .copied()
            .filter(|m| m.point.col == a.col)
            .collect();
        vertical.sort_by_key(|m| m.point.row);
        for pair in vertical.windows(2) {
            let k = pair[1].r.saturating_sub(pair[0].r);
            let p = pair[0].point;
            vs.extend((1..=k).map(|k| HalfPoint {
                row2: 2 * p.row + 2 * k - 1,
                col2: 2 * p.col,
            }));
        }
        let mut horizontal: Vec<Mark> = marks
            .iter()
            .copied()
            .filter(|m| m.point.row == a.row)
            .collect();
        horizontal.sort_by_key(|m| std::cmp::Reverse(m.point.col));
        for pair in horizontal.windows(2) {
            let k = pair[1].r.saturating_sub(pair[0].r);
            let p = pair[0].point;
            for k in 1..=k {
                if 2 * k - 1 > 2 * p.col {
                    return Err(Error::Pairing(format!("H point west of column 0 from {p}")));
                }
                hs.push(HalfPoint {
                    row2: 2 * p.row,
                    col2: 2 * p.col + 1 - 2 * k,
                });
            }
        }
    }
    if vs.len() != hs.len() {
        return Err(Error::Pairing(format!(
            "{} V points but {} H points",
            vs.len(),
            hs.len()
        )));
    }
    hs.sort_by(|a, b| b.col2.cmp(&a.col2).then(b.row2.cmp(&a.row2)));
    let ell = hs.len();
    let mut v_label = vec![None; ell];
    let mut unused: BTreeSet<HalfPoint> = vs.into_iter().collect();
    for i in (0..ell).rev() {
        let pick = unused
            .iter()
            .copied()
            .filter(|p| p.is_northwest_of(hs[i]))
            .max_by_key(|p| (p.row2, p.col2))
            .ok_or_else(|| {
                Error::Pairing(format!("no V point northwest of H_{} = {}", i + 1, hs[i]))
            })?;
        unused.remove(&pick);
        v_label[i] = Some(pick);
    }
    Ok(BoundaryPoints {
        v: v_label
            .into_iter()
            .map(|p| p.expect("assigned above"))
            .collect(),
        h: hs,
        extended_marks: marks,
    })
}

/// What a path does inside one box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Tile {
    /// Joins the north and east edges (a path arriving from the east turns north).
    ElbowNe,
    /// Joins the south and west edges.
    ElbowSw,
    Vert,
    Horiz,
    Blank,
}

impl Tile {
    pub fn glyph(self) -> char {
        match self {
            Tile::ElbowNe => '└',
            Tile::ElbowSw => '┐',
            Tile::Vert => '│',
            Tile::Horiz => '─',
            Tile::Blank => '·',
        }
    }

    fn from_sides(from_south: bool, to_north: bool) -> Tile {
        match (from_south, to_north) {
            (true, true) => Tile::Vert,
            (true, false) => Tile::ElbowSw,
            (false, true) => Tile::ElbowNe,
            (false, false) => Tile::Horiz,
        }
    }
}

/// Non-intersecting north/west paths `P_i : H_i → V_i` and the tiles they
/// induce on every box of `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathFamily {
    /// Path `i` as its boxes from the `H_i` end to the `V_i` end.
    pub paths: Vec<Vec<Cell>>,
    pub endpoints: Vec<(HalfPoint, HalfPoint)>,
    #[serde(skip)]
    pub tiles: BTreeMap<Cell, Tile>,
}

impl PathFamily {
    pub fn from_paths(l: &Ladder, bp: &BoundaryPoints, paths: Vec<Vec<Cell>>) -> PathFamily {
        let mut tiles: BTreeMap<Cell, Tile> = BTreeMap::new();
        for i in 1..=l.height() {
            for j in l.start(i)..=l.width() {
                tiles.insert(Cell::new(i, j), Tile::Blank);
            }
        }
        for path in &paths {
            for (k, &c) in path.iter().enumerate() {
                let from_south = k == 0 || path[k - 1].row > c.row;
                let to_north = k + 1 < path.len() && path[k + 1].row < c.row;
                tiles.insert(c, Tile::from_sides(from_south, to_north));
            }
        }
        PathFamily {
            paths,
            endpoints: bp.h.iter().copied().zip(bp.v.iter().copied()).collect(),
            tiles,
        }
    }

    pub fn tile(&self, c: Cell) -> Tile {
        self.tiles.get(&c).copied().unwrap_or(Tile::Blank)
    }

    pub fn blanks(&self, l: &Ladder) -> CellSet {
        l.region
            .cells()
            .iter()
            .filter(|&c| self.tile(c) == Tile::Blank)
            .collect()
    }

    /// Unforced elbows: `ElbowNe` boxes of `L` with a blank box somewhere up
    /// their northeast diagonal.
    pub fn elbows(&self, l: &Ladder) -> CellSet {
        let blanks = self.blanks(l);
        l.region
            .cells()
            .iter()
            .filter(|&c| self.tile(c) == Tile::ElbowNe)
            .filter(|&c| (1..c.row).any(|k| blanks.contains(Cell::new(c.row - k, c.col + k))))
            .collect()
    }

    pub fn render(&self, l: &Ladder) -> String {
        let mut out = String::new();
        for i in 1..=l.height() {
            for j in 1..=l.width() {
                let c = Cell::new(i, j);
                out.push(match (l.region.contains(c), self.tile(c)) {
                    (_, t) if t != Tile::Blank => t.glyph(),
                    (true, t) => t.glyph(),
                    (false, _) if l.in_lambda(c) => ' ',
                    _ => ' ',
                });
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        for (i, (h, v)) in self.endpoints.iter().enumerate() {
            out.push_str(&format!("H{} {} -> V{} {}\n", i + 1, h, i + 1, v));
        }
        out
    }
}

/// Membership in `NILP(L, M)`.
pub fn nilp_is_valid(l: &Ladder, bp: &BoundaryPoints, p: &PathFamily) -> bool {
    if p.paths.len() != bp.len() {
        return false;
    }
    let mut used = BTreeSet::new();
    for (i, path) in p.paths.iter().enumerate() {
        if path.first() != Some(&bp.start_cell(i)) || path.last() != Some(&bp.end_cell(i)) {
            return false;
        }
        for (k, &c) in path.iter().enumerate() {
            if !l.in_lambda(c) || !used.insert(c) {
                return false;
            }
            if k > 0 {
                let prev = path[k - 1];
                let north = prev.row == c.row + 1 && prev.col == c.col;
                let west = prev.row == c.row && prev.col == c.col + 1;
                if !north && !west {
                    return false;
                }
            }
        }
    }
    if *p != PathFamily::from_paths(l, bp, p.paths.clone()) {
        return false;
    }
    used.iter().filter(|&&c| l.in_mu(c)).all(|&c| {
        p.tile(c) != Tile::ElbowNe
            && (1..c.col)
                .map(|k| Cell::new(c.row + k, c.col - k))
                .take_while(|&d| l.in_lambda(d))
                .all(|d| p.tile(d) != Tile::Blank)
    })
}

/// Trace every path, innermost (`i = ℓ`) first, through boxes allowed by
/// `open`, going west whenever possible and north otherwise.
fn trace_greedy(
    l: &Ladder,
    bp: &BoundaryPoints,
    open: impl Fn(Cell) -> bool,
) -> Option<PathFamily> {
    let mut used = BTreeSet::new();
    let mut paths = vec![Vec::new(); bp.len()];
    for i in (0..bp.len()).rev() {
        let (start, end) = (bp.start_cell(i), bp.end_cell(i));
        if !open(start) || used.contains(&start) {
            return None;
        }
        let mut cur = start;
        let mut path = vec![cur];
        used.insert(cur);
        while cur != end {
            let west = Cell::new(cur.row, cur.col - 1);
            let next = if cur.col > end.col && open(west) && !used.contains(&west) {
                west
            } else if cur.row > end.row {
                Cell::new(cur.row - 1, cur.col)
            } else {
                return None;
            };
            if !open(next) || !used.insert(next) {
                return None;
            }
            path.push(next);
            cur = next;
        }
        paths[i] = path;
    }
    Some(PathFamily::from_paths(l, bp, paths))
}

/// `P_bot`: every path pressed as far southwest as it goes.
pub fn p_bot(l: &Ladder, bp: &BoundaryPoints) -> Result<PathFamily> {
    let p = trace_greedy(l, bp, |c| l.region.contains(c))
        .ok_or_else(|| Error::Infeasible("paths cannot be routed inside L".into()))?;
    if !nilp_is_valid(l, bp, &p) {
        return Err(Error::Infeasible(
            "southwest-most routing violates the occupancy rules".into(),
        ));
    }
    Ok(p)
}

/// `ψ(P)`: the blank boxes, as a diagram in `L`.
pub fn diagram_of_paths(l: &Ladder, p: &PathFamily) -> PlusDiagram {
    PlusDiagram {
        region: l.region.clone(),
        pluses: p.blanks(l),
    }
}

/// `ψ⁻¹(D)`: route the paths through exactly the boxes of `L` outside `D`.
pub fn paths_of_diagram(l: &Ladder, bp: &BoundaryPoints, d: &PlusDiagram) -> Result<PathFamily> {
    let p = trace_greedy(l, bp, |c| l.region.contains(c) && !d.pluses.contains(c))
        .ok_or_else(|| Error::Membership(format!("cannot route paths around {}", d.pluses)))?;
    if p.blanks(l) != d.pluses || !nilp_is_valid(l, bp, &p) {
        return Err(Error::Membership(format!(
            "{} is not the blank set of a path family",
            d.pluses
        )));
    }
    Ok(p)
}

/// Replay excited moves as droops: the move at `b` empties the box
/// `b + (1, -1)` and sends the path through `b` instead.
pub fn droop(l: &Ladder, bp: &BoundaryPoints, p: &PathFamily, b: Cell) -> Result<PathFamily> {
    let bl = b.offset(1, -1).ok_or(Error::MoveNotApplicable(b))?;
    let (tl, br) = (Cell::new(b.row, b.col - 1), Cell::new(b.row + 1, b.col));
    if p.tile(b) != Tile::Blank || p.tile(bl) != Tile::ElbowNe || !l.region.contains(b) {
        return Err(Error::MoveNotApplicable(b));
    }
    let mut paths = p.paths.clone();
    for path in &mut paths {
        if let Some(k) = path.iter().position(|&c| c == bl) {
            // ..., br, bl, tl, ...  becomes  ..., br, b, tl, ...
            if k == 0 || k + 1 >= path.len() || path[k - 1] != br || path[k + 1] != tl {
                return Err(Error::MoveNotApplicable(b));
            }
            path[k] = b;
            return Ok(PathFamily::from_paths(l, bp, paths));
        }
    }
    Err(Error::MoveNotApplicable(b))
}

/// Everything the ladder pipeline computes.
#[derive(Debug, Clone, Serialize)]
pub struct LadderReport {
    pub v: Permutation,
    pub w: Permutation,
    pub cells: usize,
    pub minimality: MinimalityReport,
    pub boundary: BoundaryPoints,
    pub p_bot: PathFamily,
    pub p_zip: PathFamily,
    pub weight: usize,
    pub elbows: CellSet,
    pub regularity: i64,
    pub a_invariant: i64,
    #[serde(skip)]
    pub zip: ZipResult,
}

pub fn analyze(l: &Ladder) -> Result<LadderReport> {
    let minimality = l.validate_minimal();
    if !minimality.every_variable_used() {
        return Err(Error::validation(format!(
            "variables {:?} appear in no generator",
            minimality.uncovered
        )));
    }
    let (v, w) = perm_of(l)?;
    let (rv, _) = compress(&v)?;
    if rv != l.region {
        return Err(Error::Construction(
            "R_v does not reproduce the ladder".into(),
        ));
    }
    let z = zip::zip(&v, &w)?;
    let boundary = boundary_points(l)?;
    let bot = p_bot(l, &boundary)?;
    if bot.blanks(l) != z.top.pluses {
        return Err(Error::Construction(
            "blanks(P_bot) differs from D_top".into(),
        ));
    }
    let p_zip = paths_of_diagram(l, &boundary, &z.d_zip)?;
    let weight = l.size() - bot.blanks(l).len();
    let elbows = p_zip.elbows(l);
    let reg = elbows.len() as i64;
    Ok(LadderReport {
        cells: l.size(),
        minimality,
        regularity: reg,
        a_invariant: reg - weight as i64,
        boundary,
        p_bot: bot,
        p_zip,
        weight,
        elbows,
        zip: z,
        v,
        w,
    })
}

pub fn regularity_ladder(l: &Ladder) -> Result<i64> {
    Ok(analyze(l)?.regularity)
}

pub fn a_invariant_ladder(l: &Ladder) -> Result<i64> {
    Ok(analyze(l)?.a_invariant)
}

/// Ladders appearing in the worked examples.
pub mod examples {
    use super::{Ladder, Mark};

    /// `λ = (5,5,5,5,2,2)`, `μ = (2,1)`, three marks.
    pub fn small() -> Ladder {
        Ladder::new(
            vec![5, 5, 5, 5, 2, 2],
            vec![2, 1, 0, 0, 0, 0],
            vec![Mark::new(4, 0, 3), Mark::new(4, 2, 2), Mark::new(6, 3, 2)],
        )
        .expect("well formed")
    }

    /// `λ = (10,10,10,10,8,4,4,4,2,2)`, `μ = (2,2)`, five marks.
    pub fn large() -> Ladder {
        Ladder::new(
            vec![10, 10, 10, 10, 8, 4, 4, 4, 2, 2],
            vec![2, 2],
            vec![
                Mark::new(4, 0, 3),
                Mark::new(5, 2, 4),
                Mark::new(5, 6, 3),
                Mark::new(8, 6, 4),
                Mark::new(10, 8, 2),
            ],
        )
        .expect("well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::{large, small};
    use super::*;
    use crate::perm::cells;

    fn half(r: f64, c: f64) -> HalfPoint {
        HalfPoint {
            row2: (2.0 * r) as usize,
            col2: (2.0 * c) as usize,
        }
    }

    #[test]
    fn corners() {
        let l = small();
        assert_eq!(
            l.southwest_corners(),
            vec![Point::new(4, 0), Point::new(6, 3)]
        );
        assert_eq!(
            l.northeast_corners(),
            vec![Point::new(0, 3), Point::new(1, 4), Point::new(2, 5)]
        );
        assert_eq!(l.n(), 11);
        assert_eq!(large().n(), 20);
        assert_eq!(large().size(), 60);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Ladder::new(vec![2, 2], vec![2], vec![]).is_err());
        assert!(Ladder::new(vec![3, 1], vec![3], vec![]).is_err());
        assert!(Ladder::new(vec![4, 4], vec![3, 0], vec![Mark::new(1, 1, 1)]).is_err());
        // empty column between the two rows
        assert!(Ladder::new(vec![4, 1], vec![3, 0], vec![]).is_err());
    }

    #[test]
    fn minimality() {
        assert!(small().validate_minimal().passes());
        let single = Ladder::new(vec![1], vec![], vec![Mark::new(1, 0, 1)]).unwrap();
        assert!(single.validate_minimal().passes());
        let dup = Ladder::new(
            vec![2, 2],
            vec![],
            vec![Mark::new(2, 0, 1), Mark::new(2, 0, 1)],
        )
        .unwrap();
        assert_eq!(dup.validate_minimal().row_offsets_fail, vec![1]);
    }

    #[test]
    fn small_permutations() {
        let l = small();
        assert_eq!(s_v(&l), vec![3, 4, 5, 5, 0, 0, 0, 2, 2, 0, 0]);
        let (v, w) = perm_of(&l).unwrap();
        assert_eq!(v.word(), &[4, 6, 8, 9, 1, 2, 3, 10, 11, 5, 7]);
        // rank_w(9,7) = 6 is forced by the mark ((6,3),2)
        assert_eq!(w.word(), &[1, 2, 4, 6, 3, 8, 5, 9, 10, 7, 11]);
        assert!(w.bruhat_leq(&v).unwrap() && w.is_321_avoiding());
        let single = Ladder::new(vec![1], vec![], vec![Mark::new(1, 0, 1)]).unwrap();
        let (v, w) = perm_of(&single).unwrap();
        assert_eq!((v.word(), w.word()), (&[2, 1][..], &[2, 1][..]));
    }

    #[test]
    fn boundary() {
        let bp = boundary_points(&large()).unwrap();
        assert_eq!(
            bp.h,
            vec![
                half(10.0, 9.5),
                half(8.0, 7.5),
                half(8.0, 6.5),
                half(5.0, 5.5)
            ]
        );
        assert_eq!(
            bp.v,
            vec![
                half(0.5, 0.0),
                half(1.5, 0.0),
                half(5.5, 6.0),
                half(4.5, 2.0)
            ]
        );
        assert!(bp.extended_marks.contains(&Mark::new(4, 2, 3)));
        assert!(bp.extended_marks.contains(&Mark::new(8, 8, 2)));
        let flat = Ladder::new(vec![2, 2], vec![], vec![Mark::new(2, 0, 1)]).unwrap();
        assert!(boundary_points(&flat).unwrap().is_empty());
    }

    #[test]
    fn bottom_paths() {
        let l = large();
        let bp = boundary_points(&l).unwrap();
        let bot = p_bot(&l, &bp).unwrap();
        let mut expected = cells(&[(3, 9), (3, 10)]);
        for j in 3..=8 {
            expected.insert(Cell::new(1, j));
            expected.insert(Cell::new(2, j));
        }
        for i in 4..=9 {
            expected.insert(Cell::new(i, 10));
        }
        assert_eq!(bot.blanks(&l), expected);
        assert!(nilp_is_valid(&l, &bp, &bot));
    }

    #[test]
    fn zipped_paths_and_elbows() {
        let l = large();
        let r = analyze(&l).unwrap();
        assert_eq!(
            r.elbows,
            cells(&[(2, 2), (3, 1), (3, 3), (4, 2), (4, 8), (5, 7), (10, 9)])
        );
        assert_eq!((r.regularity, r.a_invariant, r.weight), (7, -33, 40));
        let mut replay = r.p_bot.clone();
        for &b in &r.zip.moves {
            replay = droop(&l, &r.boundary, &replay, b).unwrap();
        }
        assert_eq!(replay, r.p_zip);
    }
}
