//! The zipped diagram `D_zip(v, w)`, its K-saturation `D_zip^K(v, w)`, and the
//! regularity / a-invariant / degree formulas built on them.
//!
//! Outline, for the plus components `C_1, ..., C_m` of `D_top`:
//!
//! 1. pick, in each component, a longest chain of pluses strictly increasing
//!    in both coordinates (the westmost-then-southmost one, subject to a
//!    minimization against the chains already chosen further southeast);
//! 2. slide every plus weakly southwest of its component's chain as far as
//!    excited moves allow;
//! 3. grow each chain box down its anti-diagonal by K-theoretic moves.
//!
//! The cardinality of the result is the degree of the unspecialized
//! Grothendieck polynomial `𝔊_{v,w}(t)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Cell, CellSet, Permutation};
use crate::pipes::{check_pair, LabeledRothe};
use crate::skew::{compress, d_top, PlusDiagram};

/// An edge-connected component of `D_top`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub index: usize,
    pub cells: CellSet,
}

/// Cells strictly increasing in both row and column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalChain {
    pub boxes: Vec<Cell>,
}

impl DiagonalChain {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn last(&self) -> Option<Cell> {
        self.boxes.last().copied()
    }

    pub fn is_valid(&self) -> bool {
        self.boxes
            .windows(2)
            .all(|p| p[0].row < p[1].row && p[0].col < p[1].col)
    }
}

/// Westmost then southmost: smaller column tuple first, then larger row tuple.
fn west_south_cmp(a: &[Cell], b: &[Cell]) -> Ordering {
    let cols = a.iter().map(|c| c.col).cmp(b.iter().map(|c| c.col));
    cols.then_with(|| b.iter().map(|c| c.row).cmp(a.iter().map(|c| c.row)))
}

/// Edge-connected components, ordered by their northwest-most cell.
pub fn components(d: &PlusDiagram) -> Vec<Component> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in &d.pluses {
        if !seen.insert(start) {
            continue;
        }
        let mut cells = CellSet::new();
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            cells.insert(c);
            let around = [
                c.offset(-1, 0),
                c.offset(1, 0),
                c.offset(0, -1),
                c.offset(0, 1),
            ];
            for nb in around.into_iter().flatten() {
                if d.pluses.contains(nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        out.push(cells);
    }
    // Reading order on the starting cells already sorts by (row, col) minimum.
    out.into_iter()
        .enumerate()
        .map(|(k, cells)| Component {
            index: k + 1,
            cells,
        })
        .collect()
}

/// `ψ_E(b)`: the eastmost cell of `C` in the row of `b`.
pub fn psi_east(c: &Component, b: Cell) -> Result<Cell> {
    if !c.cells.contains(b) {
        return Err(Error::Containment(b, "the component"));
    }
    let col = c
        .cells
        .row(b.row)
        .map(|x| x.col)
        .max()
        .expect("b is in this row");
    Ok(Cell::new(b.row, col))
}

/// For every cell `e` of `c`, the best chain (in westmost-southmost order) of
/// the maximal possible length ending at `e`, restricted to length `target`.
fn best_chains_ending_at(c: &Component, target: usize) -> Vec<Vec<Cell>> {
    let boxes = c.cells.to_vec();
    // best[k][e]: best chain of length k + 1 ending at boxes[e]
    let mut best: Vec<Vec<Option<Vec<Cell>>>> =
        vec![boxes.iter().map(|&b| Some(vec![b])).collect()];
    for k in 1..target {
        let prev = &best[k - 1];
        let mut layer = Vec::with_capacity(boxes.len());
        for &e in &boxes {
            let mut pick: Option<Vec<Cell>> = None;
            for (f, chain) in boxes.iter().zip(prev) {
                let Some(chain) = chain else { continue };
                if f.row >= e.row || f.col >= e.col {
                    continue;
                }
                let better = match &pick {
                    None => true,
                    Some(cur) => west_south_cmp(chain, &cur[..cur.len() - 1]) == Ordering::Less,
                };
                if better {
                    let mut ext = chain.clone();
                    ext.push(e);
                    pick = Some(ext);
                }
            }
            layer.push(pick);
        }
        best.push(layer);
    }
    best.pop()
        .unwrap_or_default()
        .into_iter()
        .flatten()
        .collect()
}

fn longest_chain_len(c: &Component) -> usize {
    let boxes = c.cells.to_vec();
    let mut len = vec![1usize; boxes.len()];
    for e in 0..boxes.len() {
        for f in 0..e {
            if boxes[f].row < boxes[e].row && boxes[f].col < boxes[e].col {
                len[e] = len[e].max(len[f] + 1);
            }
        }
    }
    len.into_iter().max().unwrap_or(0)
}

/// `Diag(C)`: the westmost-then-southmost longest chain in `C`.
pub fn max_diag(c: &Component) -> DiagonalChain {
    let target = longest_chain_len(c);
    let boxes = best_chains_ending_at(c, target)
        .into_iter()
        .min_by(|a, b| west_south_cmp(a, b))
        .unwrap_or_default();
    DiagonalChain { boxes }
}

/// The chains used by the zip, one per component.
///
/// Components are handled from the southeast end. Among the longest chains of
/// `C_q`, the one whose last box `d` minimizes
/// `#([‖ψ_E(d)‖ + 1] ∩ {‖x‖ : x in a chain already chosen})` wins, with ties
/// going to the westmost-southmost chain.
pub fn minimizing_diag(comps: &[Component]) -> Vec<DiagonalChain> {
    let mut chosen: Vec<DiagonalChain> = vec![DiagonalChain { boxes: Vec::new() }; comps.len()];
    let mut norms: BTreeSet<usize> = BTreeSet::new();
    for (q, c) in comps.iter().enumerate().rev() {
        let target = longest_chain_len(c);
        let score = |chain: &Vec<Cell>| {
            let last = *chain.last().expect("chains are nonempty");
            let reach = psi_east(c, last).expect("last box lies in c").norm() + 1;
            norms.range(..=reach).count()
        };
        let boxes = best_chains_ending_at(c, target)
            .into_iter()
            .min_by(|a, b| score(a).cmp(&score(b)).then_with(|| west_south_cmp(a, b)))
            .unwrap_or_default();
        norms.extend(boxes.iter().map(|b| b.norm()));
        chosen[q] = DiagonalChain { boxes };
    }
    chosen
}

/// Everything the zip construction produces for one pair.
#[derive(Debug, Clone, Serialize)]
pub struct ZipResult {
    pub top: PlusDiagram,
    pub components: Vec<Component>,
    pub chains: Vec<DiagonalChain>,
    pub d_zip: PlusDiagram,
    pub d_zip_k: PlusDiagram,
    /// Origins of the excited moves taking `D_top` to `D_zip`, in order.
    pub moves: Vec<Cell>,
    pub rooms: BTreeMap<Cell, usize>,
    pub room_sums: Vec<usize>,
    pub ell_v: usize,
    pub ell_w: usize,
    pub degree: usize,
    pub regularity: i64,
    pub a_invariant: i64,
}

/// Cells of `c` off the chain that lie weakly southwest of some chain box,
/// in sliding order: west to east, then south to north.
fn southwest_of_chain(c: &Component, chain: &DiagonalChain) -> Vec<Cell> {
    let mut out: Vec<Cell> = c
        .cells
        .iter()
        .filter(|b| !chain.boxes.contains(b))
        .filter(|b| chain.boxes.iter().any(|d| b.row >= d.row && b.col <= d.col))
        .collect();
    out.sort_by(|a, b| a.col.cmp(&b.col).then(b.row.cmp(&a.row)));
    out
}

/// `D_zip` from `D_top`; also returns the move sequence.
pub fn zip_diagram(
    top: &PlusDiagram,
    comps: &[Component],
    chains: &[DiagonalChain],
) -> (PlusDiagram, Vec<Cell>) {
    let mut d = top.clone();
    let mut moves = Vec::new();
    for (c, chain) in comps.iter().zip(chains) {
        for b in southwest_of_chain(c, chain) {
            let mut cur = b;
            while d.can_move(cur) {
                d = d.apply_excited(cur).expect("checked by can_move");
                moves.push(cur);
                cur = cur.offset(1, -1).expect("move target exists");
            }
        }
    }
    (d, moves)
}

/// How many anti-diagonal steps below `b` stay clear of `zipped`.
pub fn room(zipped: &PlusDiagram, b: Cell) -> usize {
    let free = |dr: isize, dc: isize| zipped.is_free(b.offset(dr, dc));
    let mut k = 0;
    loop {
        let s = k as isize + 1;
        if free(s, -s) && free(s, 1 - s) && free(s - 1, -s) {
            k += 1;
        } else {
            return k;
        }
    }
}

/// `D_zip^K` by sliding K-theoretic moves down from every chain box in turn.
pub fn k_saturate(zipped: &PlusDiagram, chains: &[DiagonalChain]) -> PlusDiagram {
    let mut d = zipped.clone();
    for chain in chains {
        for &b in &chain.boxes {
            let mut cur = b;
            while d.can_move(cur) {
                d = d.apply_k_excited(cur).expect("checked by can_move");
                cur = cur.offset(1, -1).expect("move target exists");
            }
        }
    }
    d
}

pub fn zip(v: &Permutation, w: &Permutation) -> Result<ZipResult> {
    let top = d_top(v, w)?;
    let comps = components(&top);
    let chains = minimizing_diag(&comps);
    let (d_zip, moves) = zip_diagram(&top, &comps, &chains);

    let mut rooms = BTreeMap::new();
    let mut room_sums = Vec::with_capacity(chains.len());
    let mut grown = d_zip.pluses.clone();
    for chain in &chains {
        let mut sum = 0;
        for &b in &chain.boxes {
            let r = room(&d_zip, b);
            for k in 1..=r as isize {
                grown.insert(b.offset(k, -k).expect("inside the region"));
            }
            rooms.insert(b, r);
            sum += r;
        }
        room_sums.push(sum);
    }
    let d_zip_k = PlusDiagram::new(d_zip.region.clone(), grown)?;

    let simulated = k_saturate(&d_zip, &chains);
    if simulated.pluses != d_zip_k.pluses {
        return Err(Error::Construction(format!(
            "room formula gives {} but K-move simulation gives {}",
            d_zip_k.pluses, simulated.pluses
        )));
    }

    let (ell_v, ell_w) = (v.length(), w.length());
    let degree = d_zip_k.len();
    Ok(ZipResult {
        top,
        components: comps,
        chains,
        d_zip,
        d_zip_k,
        moves,
        rooms,
        room_sums,
        ell_v,
        ell_w,
        degree,
        regularity: degree as i64 - ell_w as i64,
        a_invariant: degree as i64 - ell_v as i64,
    })
}

pub fn groth_degree(v: &Permutation, w: &Permutation) -> Result<usize> {
    Ok(zip(v, w)?.degree)
}

pub fn regularity(v: &Permutation, w: &Permutation) -> Result<i64> {
    Ok(zip(v, w)?.regularity)
}

pub fn a_invariant(v: &Permutation, w: &Permutation) -> Result<i64> {
    Ok(zip(v, w)?.a_invariant)
}

/// The degree again, by peeling the northeast corner of `R_v` off one box at
/// a time. When the corner carries the northeast-most plus of `D_top` the
/// degree is one more than the larger of the two peeled pairs; otherwise the
/// box is simply dropped.
pub fn groth_degree_recursive(v: &Permutation, w: &Permutation) -> Result<usize> {
    check_pair(v, w)?;
    let mut memo = HashMap::new();
    recurse(v, w, &mut memo)?
        .ok_or_else(|| Error::Construction("recurrence found no admissible branch".into()))
}

type Memo = HashMap<(Permutation, Permutation), Option<usize>>;

fn recurse(v: &Permutation, w: &Permutation, memo: &mut Memo) -> Result<Option<usize>> {
    if let Some(&hit) = memo.get(&(v.clone(), w.clone())) {
        return Ok(hit);
    }
    let value = if !w.bruhat_leq(v)? {
        None
    } else if w.is_identity() {
        Some(0)
    } else {
        let top = d_top(v, w)?;
        let (region, maps) = compress(v)?;
        let z = top
            .pluses
            .iter()
            .min_by(|a, b| a.row.cmp(&b.row).then(b.col.cmp(&a.col)))
            .expect("l(w) > 0");
        let corner = Cell::new(1, region.row(1).expect("l(v) >= l(w) > 0").end);
        let labels = LabeledRothe::new(v);
        let label_of = |c: Cell| {
            labels
                .label(maps.backward[&c])
                .expect("φ_v⁻¹ lands in D(v)")
        };
        let i_corner = label_of(corner);
        let v_c = v.mul_simple_left(i_corner)?;
        if z != corner {
            recurse(&v_c, w, memo)?
        } else {
            let w_p = w.mul_simple_left(label_of(z))?;
            let p = recurse(&v_c, &w_p, memo)?;
            let c = recurse(&v_c, w, memo)?;
            p.max(c).map(|d| d + 1)
        }
    };
    memo.insert((v.clone(), w.clone()), value);
    Ok(value)
}
