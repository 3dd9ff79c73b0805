//! Brute-force references for everything the fast constructions compute.
//!
//! Nothing here shares code with `zip` beyond the move primitives; every
//! search takes a budget and fails loudly instead of truncating.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ladder::{self, Ladder, PathFamily};
use crate::perm::{Cell, CellSet, Permutation};
use crate::pipes::{self, check_pair, LabeledRothe};
use crate::skew::{compress, d_top, PlusDiagram, SkewRegion};
use crate::zip;

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Moves {
    /// Excited and K-theoretic moves.
    Full,
    ExcitedOnly,
}

/// Every diagram reachable from `D_top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSet {
    pub region: SkewRegion,
    pub diagrams: BTreeSet<CellSet>,
    /// Number of BFS layers.
    pub depth: usize,
}

impl ClosureSet {
    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn max_size(&self) -> usize {
        self.diagrams.iter().map(CellSet::len).max().unwrap_or(0)
    }

    pub fn of_size(&self, k: usize) -> BTreeSet<CellSet> {
        self.diagrams
            .iter()
            .filter(|d| d.len() == k)
            .cloned()
            .collect()
    }
}

pub fn closure(
    v: &Permutation,
    w: &Permutation,
    budget: usize,
    moves: Moves,
) -> Result<ClosureSet> {
    let top = d_top(v, w)?;
    let region = top.region.clone();
    let mut seen = BTreeSet::from([top.pluses.clone()]);
    let mut layer = vec![top.pluses];
    let mut depth = 0;
    while !layer.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for pluses in layer {
            let d = PlusDiagram {
                region: region.clone(),
                pluses,
            };
            for b in d.excited_targets() {
                let mut out = vec![d.apply_excited(b)?];
                if moves == Moves::Full {
                    out.push(d.apply_k_excited(b)?);
                }
                for e in out {
                    if seen.insert(e.pluses.clone()) {
                        if seen.len() > budget {
                            return Err(Error::Resource {
                                budget,
                                explored: seen.len(),
                            });
                        }
                        next.push(e.pluses);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(ClosureSet {
        region,
        diagrams: seen,
        depth,
    })
}

/// Terms of the unspecialized Grothendieck polynomial, as pipe sets in
/// `D(v)` with sign `(-1)^{#P - l(w)}`.
pub fn groth_support(
    v: &Permutation,
    w: &Permutation,
    budget: usize,
) -> Result<Vec<(CellSet, i8)>> {
    let c = closure(v, w, budget, Moves::Full)?;
    let (_, maps) = compress(v)?;
    let lw = w.length();
    c.diagrams
        .iter()
        .map(|d| Ok((maps.pull(d)?, if (d.len() - lw).is_multiple_of(2) { 1 } else { -1 })))
        .collect()
}

/// All `P ⊆ D(v)` whose reading word has Demazure product `w`.
pub fn overline_pipes(v: &Permutation, w: &Permutation, budget: usize) -> Result<Vec<CellSet>> {
    check_pair(v, w)?;
    let lr = LabeledRothe::new(v);
    let word = lr.word();
    let n = v.n();
    let mut out = Vec::new();
    let mut explored = 0usize;
    let mut chosen = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        u: &Permutation,
        word: &[usize],
        w: &Permutation,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        explored: &mut usize,
        budget: usize,
    ) -> Result<()> {
        *explored += 1;
        if *explored > budget {
            return Err(Error::Resource {
                budget,
                explored: *explored,
            });
        }
        // Demazure products only grow, and the best completion takes everything.
        if !u.bruhat_leq(w)? {
            return Ok(());
        }
        let mut best = u.clone();
        for &a in &word[k..] {
            best = best.demazure_step(a)?;
        }
        if !w.bruhat_leq(&best)? {
            return Ok(());
        }
        if k == word.len() {
            if u == w {
                out.push(chosen.clone());
            }
            return Ok(());
        }
        chosen.push(k);
        go(
            k + 1,
            &u.demazure_step(word[k])?,
            word,
            w,
            chosen,
            out,
            explored,
            budget,
        )?;
        chosen.pop();
        go(k + 1, u, word, w, chosen, out, explored, budget)
    }

    let mut idx = Vec::new();
    go(
        0,
        &Permutation::identity(n),
        &word,
        w,
        &mut chosen,
        &mut idx,
        &mut explored,
        budget,
    )?;
    for positions in idx {
        out.push(positions.iter().map(|&k| lr.reading_order[k]).collect());
    }
    Ok(out)
}

/// The lexicographically earliest set of reading-word positions spelling a
/// reduced word for `w`, by exhaustive search.
pub fn brute_earliest_subword(v: &Permutation, w: &Permutation, budget: usize) -> Result<CellSet> {
    check_pair(v, w)?;
    let lr = LabeledRothe::new(v);
    let word = lr.word();
    let target = w.length();
    let mut explored = 0usize;

    #[allow(clippy::too_many_arguments)]
    fn go(
        start: usize,
        u: &Permutation,
        word: &[usize],
        w: &Permutation,
        target: usize,
        chosen: &mut Vec<usize>,
        explored: &mut usize,
        budget: usize,
    ) -> Result<bool> {
        if chosen.len() == target {
            return Ok(u == w);
        }
        for k in start..word.len() {
            if word.len() - k < target - chosen.len() {
                break;
            }
            *explored += 1;
            if *explored > budget {
                return Err(Error::Resource {
                    budget,
                    explored: *explored,
                });
            }
            let next = u.mul_simple_right(word[k])?;
            if next.length() != u.length() + 1 {
                continue;
            }
            // next must be a prefix of some reduced word for w
            if next.length() + next.inverse().compose(w).length() != target {
                continue;
            }
            chosen.push(k);
            if go(k + 1, &next, word, w, target, chosen, explored, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    let mut chosen = Vec::new();
    if !go(
        0,
        &Permutation::identity(v.n()),
        &word,
        w,
        target,
        &mut chosen,
        &mut explored,
        budget,
    )? {
        return Err(Error::Construction(format!(
            "{w} is not a subword of the reading word of {v}"
        )));
    }
    Ok(chosen.iter().map(|&k| lr.reading_order[k]).collect())
}

/// All permutations of `[n]`.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut word: Vec<usize> = (1..=n).collect();
    heap_permute(n, &mut word, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, word: &mut [usize], out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation::new(word.to_vec()).expect("a rearrangement of 1..n"));
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, word, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        word.swap(j, k - 1);
    }
}

/// Scan `S_n` by length for the first permutation with the given ranks.
pub fn brute_minimal_w(n: usize, constraints: &[(usize, usize, usize)]) -> Result<Permutation> {
    if n > 8 {
        return Err(Error::Range(format!(
            "brute_minimal_w scans S_{n}; at most S_8 is supported"
        )));
    }
    let mut all = all_permutations(n);
    all.sort_by_key(|u| (u.length(), u.word().to_vec()));
    all.into_iter()
        .find(|u| {
            let r = u.rank_matrix();
            constraints
                .iter()
                .all(|&(a, b, c)| a <= n && b <= n && r.get(a, b) == c)
        })
        .ok_or_else(|| {
            Error::InconsistentConstraints(format!("no permutation of S_{n} meets {constraints:?}"))
        })
}

/// Every family in `NILP(L, M)`.
pub fn enumerate_nilp(l: &Ladder, budget: usize) -> Result<Vec<PathFamily>> {
    let bp = ladder::boundary_points(l)?;
    let ell = bp.len();
    let mut explored = 0usize;
    let mut out = Vec::new();

    struct Search<'a> {
        l: &'a Ladder,
        bp: &'a ladder::BoundaryPoints,
        used: BTreeSet<Cell>,
        paths: Vec<Vec<Cell>>,
        explored: &'a mut usize,
        budget: usize,
        out: &'a mut Vec<PathFamily>,
    }

    impl Search<'_> {
        fn tick(&mut self) -> Result<()> {
            *self.explored += 1;
            if *self.explored > self.budget {
                return Err(Error::Resource {
                    budget: self.budget,
                    explored: *self.explored,
                });
            }
            Ok(())
        }

        fn path(&mut self, i: usize) -> Result<()> {
            if i == 0 {
                let fam = PathFamily::from_paths(self.l, self.bp, self.paths.clone());
                if ladder::nilp_is_valid(self.l, self.bp, &fam) {
                    self.out.push(fam);
                }
                return Ok(());
            }
            let start = self.bp.start_cell(i - 1);
            if !self.l.in_lambda(start) || self.used.contains(&start) {
                return Ok(());
            }
            self.used.insert(start);
            self.paths[i - 1].push(start);
            self.extend(i)?;
            self.paths[i - 1].pop();
            self.used.remove(&start);
            Ok(())
        }

        fn extend(&mut self, i: usize) -> Result<()> {
            self.tick()?;
            let end = self.bp.end_cell(i - 1);
            let cur = *self.paths[i - 1].last().expect("path started");
            if cur == end {
                return self.path(i - 1);
            }
            let mut steps = Vec::new();
            if cur.col > end.col {
                steps.push(Cell::new(cur.row, cur.col - 1));
            }
            if cur.row > end.row {
                steps.push(Cell::new(cur.row - 1, cur.col));
            }
            for next in steps {
                if self.l.in_lambda(next) && !self.used.contains(&next) {
                    self.used.insert(next);
                    self.paths[i - 1].push(next);
                    self.extend(i)?;
                    self.paths[i - 1].pop();
                    self.used.remove(&next);
                }
            }
            Ok(())
        }
    }

    let mut s = Search {
        l,
        bp: &bp,
        used: BTreeSet::new(),
        paths: vec![Vec::new(); ell],
        explored: &mut explored,
        budget,
        out: &mut out,
    };
    s.path(ell)?;
    Ok(out)
}

/// The 321-avoiding permutations of `[n]`, sorted.
pub fn all_321(n: usize) -> Vec<Permutation> {
    all_permutations(n)
        .into_iter()
        .filter(Permutation::is_321_avoiding)
        .collect()
}

/// Every pair `w <= v` of 321-avoiding permutations of `[n]`.
pub fn all_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let perms = all_321(n);
    let mut out = Vec::new();
    for v in &perms {
        for w in &perms {
            if w.bruhat_leq(v).expect("same size") {
                out.push((v.clone(), w.clone()));
            }
        }
    }
    out
}

/// Seeded uniform `v`, then uniform `w` among the 321-avoiding `w <= v`.
pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(Permutation, Permutation)> {
    let perms = all_321(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = perms
                .choose(&mut rng)
                .expect("S_n has 321-avoiders")
                .clone();
            let below: Vec<&Permutation> =
                perms.iter().filter(|w| w.bruhat_leq(&v).unwrap()).collect();
            let w = below[rng.gen_range(0..below.len())].clone();
            (v, w)
        })
        .collect()
}

/// The three independent degree computations for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub v: Permutation,
    pub w: Permutation,
    pub zip: usize,
    pub recurrence: usize,
    pub closure: usize,
}

impl DegreeCheck {
    pub fn agrees(&self) -> bool {
        self.zip == self.recurrence && self.zip == self.closure
    }
}

pub fn check_degree(v: &Permutation, w: &Permutation, budget: usize) -> Result<DegreeCheck> {
    Ok(DegreeCheck {
        v: v.clone(),
        w: w.clone(),
        zip: zip::groth_degree(v, w)?,
        recurrence: zip::groth_degree_recursive(v, w)?,
        closure: closure(v, w, budget, Moves::Full)?.max_size(),
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub checked: usize,
    pub disagreements: Vec<DegreeCheck>,
}

/// Degree agreement over `pairs`, in parallel; the report keeps input order.
pub fn sweep(pairs: &[(Permutation, Permutation)], budget: usize) -> Result<SweepReport> {
    let checks: Vec<DegreeCheck> = pairs
        .par_iter()
        .map(|(v, w)| check_degree(v, w, budget))
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        checked: checks.len(),
        disagreements: checks.into_iter().filter(|c| !c.agrees()).collect(),
    })
}

/// `D^NE` by exhaustive search, for comparison with [`pipes::d_ne`].
pub fn d_ne_agrees(v: &Permutation, w: &Permutation, budget: usize) -> Result<bool> {
    Ok(brute_earliest_subword(v, w, budget)? == pipes::d_ne(v, w)?)
}
