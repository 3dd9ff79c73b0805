//! Explicit generators: minors of `M^(v)` and of the ladder matrix `L(z)`,
//! and the K-polynomial of a Kazhdan–Lusztig variety.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ladder::Ladder;
use crate::oracle;
use crate::perm::{Cell, Permutation};
use crate::pipes::check_pair;
use crate::skew::compress;

/// Which minors of a block count: all of them, or only those whose
/// entries are all nonzero (for a ladder: submatrices lying inside `L`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Support {
    #[default]
    ZeroFilled,
    Inside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    One,
    Var(Cell),
}

/// A matrix of zeros, ones and distinct indeterminates, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<Cell, Entry>,
}

impl SymbolicMatrix {
    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries
            .get(&Cell::new(i, j))
            .copied()
            .unwrap_or(Entry::Zero)
    }

    /// `M^(v)`: ones at `(i, v_i)`, `z_ij` on `D(v)`.
    pub fn kazhdan_lusztig(v: &Permutation) -> Self {
        let n = v.n();
        let mut entries: BTreeMap<Cell, Entry> = v
            .rothe_diagram()
            .iter()
            .map(|c| (c, Entry::Var(c)))
            .collect();
        for i in 1..=n {
            entries.insert(Cell::new(i, v.at(i)), Entry::One);
        }
        SymbolicMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// `L(z)`, zero off the ladder.
    pub fn ladder(l: &Ladder) -> Self {
        SymbolicMatrix {
            rows: l.height(),
            cols: l.width(),
            entries: l
                .region
                .cells()
                .iter()
                .map(|c| (c, Entry::Var(c)))
                .collect(),
        }
    }

    /// All nonzero `k`-minors of the submatrix on `rows × cols`, normalized.
    pub fn minors(&self, rows: &[usize], cols: &[usize], k: usize) -> BTreeSet<SparsePolynomial> {
        self.minors_with(rows, cols, k, Support::ZeroFilled)
    }

    pub fn minors_with(
        &self,
        rows: &[usize],
        cols: &[usize],
        k: usize,
        support: Support,
    ) -> BTreeSet<SparsePolynomial> {
        let mut out = BTreeSet::new();
        if k == 0 || k > rows.len() || k > cols.len() {
            return out;
        }
        assert!(cols.len() <= 64, "column masks are 64 bits");
        let live: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&i| cols.iter().any(|&j| self.get(i, j) != Entry::Zero))
            .collect();
        for s in combinations(live.len(), k) {
            let srows: Vec<usize> = s.iter().map(|&a| live[a]).collect();
            let mut memo = HashMap::new();
            for t in combinations(cols.len(), k) {
                if support == Support::Inside
                    && srows
                        .iter()
                        .any(|&i| t.iter().any(|&b| self.get(i, cols[b]) == Entry::Zero))
                {
                    continue;
                }
                let mask = t.iter().fold(0u64, |m, &b| m | 1 << b);
                let det = self.det(&srows, cols, mask, &mut memo);
                if !det.is_zero() {
                    out.insert(det.normalized());
                }
            }
        }
        out
    }

    /// Laplace expansion along the first remaining row.
    fn det(
        &self,
        rows: &[usize],
        cols: &[usize],
        mask: u64,
        memo: &mut HashMap<u64, SparsePolynomial>,
    ) -> SparsePolynomial {
        if rows.is_empty() {
            return SparsePolynomial::one();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let (first, rest) = (rows[0], &rows[1..]);
        let mut acc = SparsePolynomial::zero();
        let mut sign = 1i64;
        for b in 0..cols.len() {
            if mask & (1 << b) == 0 {
                continue;
            }
            let factor = match self.get(first, cols[b]) {
                Entry::Zero => None,
                Entry::One => Some(None),
                Entry::Var(c) => Some(Some(c)),
            };
            if let Some(var) = factor {
                let sub = self.det(rest, cols, mask & !(1 << b), memo);
                acc.add_scaled(&sub, sign, var);
            }
            sign = -sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}

/// The `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..=n - (k - cur.len()) {
            cur.push(a);
            go(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        go(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Integer polynomial; a monomial is its sorted list of variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SparsePolynomial {
    pub terms: BTreeMap<Vec<Cell>, i64>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        SparsePolynomial {
            terms: BTreeMap::from([(Vec::new(), 1)]),
        }
    }

    pub fn var(c: Cell) -> Self {
        SparsePolynomial {
            terms: BTreeMap::from([(vec![c], 1)]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += sign * var * other`.
    pub fn add_scaled(&mut self, other: &SparsePolynomial, sign: i64, var: Option<Cell>) {
        for (mono, &coef) in &other.terms {
            let mut m = mono.clone();
            if let Some(c) = var {
                m.insert(m.partition_point(|&x| x <= c), c);
            }
            let slot = self.terms.entry(m.clone()).or_insert(0);
            *slot += sign * coef;
            if *slot == 0 {
                self.terms.remove(&m);
            }
        }
    }

    /// Flip the sign so the leading (smallest-key) term is positive.
    pub fn normalized(mut self) -> Self {
        if self.terms.values().next().is_some_and(|&c| c < 0) {
            for c in self.terms.values_mut() {
                *c = -*c;
            }
        }
        self
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Vec::len).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.windows(2).all(|p| p[0] != p[1]))
    }

    pub fn variables(&self) -> BTreeSet<Cell> {
        self.terms.keys().flatten().copied().collect()
    }

    /// Rename every variable; fails if `f` does.
    pub fn map_vars(&self, f: impl Fn(Cell) -> Option<Cell>) -> Option<SparsePolynomial> {
        let mut out = SparsePolynomial::zero();
        for (mono, &coef) in &self.terms {
            let mut m = mono.iter().map(|&c| f(c)).collect::<Option<Vec<Cell>>>()?;
            m.sort_unstable();
            *out.terms.entry(m).or_insert(0) += coef;
        }
        out.terms.retain(|_, c| *c != 0);
        Some(out)
    }

    /// Macaulay2 / Singular syntax with variables `z_i_j`.
    pub fn to_m2(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (mono, &coef)) in self.terms.iter().enumerate() {
            let body = mono
                .iter()
                .map(|c| format!("z_{}_{}", c.row, c.col))
                .collect::<Vec<_>>()
                .join("*");
            let mag = coef.unsigned_abs();
            let sep = match (k, coef < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            s.push_str(sep);
            match (mag, body.is_empty()) {
                (_, true) => write!(s, "{mag}").unwrap(),
                (1, false) => s.push_str(&body),
                _ => write!(s, "{mag}*{body}").unwrap(),
            }
        }
        s
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_m2())
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_m2())
    }
}

pub type GeneratorSet = BTreeSet<SparsePolynomial>;

/// Generators of `J_{v,w}` in the variables of `D(v)`.
pub fn kl_generators_raw(v: &Permutation, w: &Permutation) -> Result<GeneratorSet> {
    check_pair(v, w).map_err(|e| Error::validation(e.to_string()))?;
    let m = SymbolicMatrix::kazhdan_lusztig(v);
    let rw = w.rank_matrix();
    let sets: Vec<GeneratorSet> = w
        .rothe_diagram()
        .to_vec()
        .into_par_iter()
        .map(|c| {
            let rows: Vec<usize> = (1..=c.row).collect();
            let cols: Vec<usize> = (1..=c.col).collect();
            m.minors(&rows, &cols, rw.get(c.row, c.col) + 1)
        })
        .collect();
    Ok(sets.into_iter().flatten().collect())
}

/// Generators of `J_{v,w}`, with variables moved to the compressed region by
/// `φ_v` so they can be compared with ladder generators.
pub fn kl_generators(v: &Permutation, w: &Permutation) -> Result<GeneratorSet> {
    let (_, maps) = compress(v)?;
    kl_generators_raw(v, w)?
        .into_iter()
        .map(|p| {
            p.map_vars(|c| maps.forward.get(&c).copied())
                .map(SparsePolynomial::normalized)
                .ok_or_else(|| Error::Construction(format!("{p} uses a variable off D(v)")))
        })
        .collect()
}

/// Generators of `I_{L,M}`: the `r`-minors of rows `[p(1)]` and columns
/// `[p(2)+1, W]`, with boxes off the ladder read as zero.
pub fn ladder_generators(l: &Ladder) -> Result<GeneratorSet> {
    ladder_generators_with(l, Support::ZeroFilled)
}

pub fn ladder_generators_with(l: &Ladder, support: Support) -> Result<GeneratorSet> {
    if !l.validate_minimal().every_variable_used() {
        return Err(Error::validation(
            "some ladder variable appears in no generator",
        ));
    }
    let m = SymbolicMatrix::ladder(l);
    let sets: Vec<GeneratorSet> = l
        .marked
        .par_iter()
        .map(|mark| {
            let (rows, cols) = l.block(mark);
            m.minors_with(&rows, &cols, mark.r, support)
        })
        .collect();
    Ok(sets.into_iter().flatten().collect())
}

/// Symmetric difference of two generator sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GeneratorDiff {
    pub only_left: Vec<SparsePolynomial>,
    pub only_right: Vec<SparsePolynomial>,
}

impl GeneratorDiff {
    pub fn new(left: &GeneratorSet, right: &GeneratorSet) -> Self {
        GeneratorDiff {
            only_left: left.difference(right).cloned().collect(),
            only_right: right.difference(left).cloned().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

/// Whether two homogeneous generating sets span the same ideal, checked
/// degree by degree up to the largest generator degree: `I_d` and `J_d` are
/// compared as vector spaces over `F_p`, `p = 2^61 - 1`.
pub fn same_ideal(a: &GeneratorSet, b: &GeneratorSet) -> Result<bool> {
    if a.iter().chain(b).any(|g| !g.is_homogeneous()) {
        return Err(Error::validation(
            "ideal comparison needs homogeneous generators",
        ));
    }
    let vars: Vec<Cell> = a
        .iter()
        .chain(b)
        .flat_map(SparsePolynomial::variables)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let top = a
        .iter()
        .chain(b)
        .flat_map(SparsePolynomial::degrees)
        .max()
        .unwrap_or(0);
    for d in 0..=top {
        let (ea, eb) = (
            Echelon::of(&degree_part(a, &vars, d)),
            Echelon::of(&degree_part(b, &vars, d)),
        );
        if ea.rank() != eb.rank() || !degree_part(a, &vars, d).iter().all(|r| eb.spans(r)) {
            return Ok(false);
        }
    }
    Ok(true)
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

type Row = BTreeMap<Vec<Cell>, u64>;

fn to_row(p: &SparsePolynomial, times: &[Cell]) -> Row {
    p.terms
        .iter()
        .map(|(m, &c)| {
            let mut m = m.clone();
            m.extend_from_slice(times);
            m.sort_unstable();
            (m, c.rem_euclid(PRIME as i64) as u64)
        })
        .collect()
}

/// Multisets of size `k` drawn from `vars`.
fn monomials(vars: &[Cell], k: usize) -> Vec<Vec<Cell>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (a, &x) in vars.iter().enumerate() {
        for mut rest in monomials(&vars[a..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn degree_part(gens: &GeneratorSet, vars: &[Cell], d: usize) -> Vec<Row> {
    let mut rows = Vec::new();
    for g in gens {
        let e = match g.degrees().into_iter().next() {
            Some(e) if e <= d => e,
            _ => continue,
        };
        for m in monomials(vars, d - e) {
            rows.push(to_row(g, &m));
        }
    }
    rows
}

/// Reduced rows keyed by their leading monomial.
struct Echelon {
    pivots: BTreeMap<Vec<Cell>, Row>,
}

impl Echelon {
    fn of(rows: &[Row]) -> Self {
        let mut e = Echelon {
            pivots: BTreeMap::new(),
        };
        for r in rows {
            let r = e.reduce(r.clone());
            if let Some((lead, &c)) = r.iter().next() {
                let inv = pow_mod(c, PRIME - 2);
                let r: Row = r
                    .iter()
                    .map(|(m, &x)| (m.clone(), mul_mod(x, inv)))
                    .collect();
                e.pivots.insert(lead.clone(), r);
            }
        }
        e
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut r: Row) -> Row {
        let mut floor: Option<Vec<Cell>> = None;
        loop {
            let next = match &floor {
                None => r.keys().next().cloned(),
                Some(f) => r
                    .range::<Vec<Cell>, _>((
                        std::ops::Bound::Excluded(f),
                        std::ops::Bound::Unbounded,
                    ))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(lead) = next else { return r };
            if let Some(p) = self.pivots.get(&lead) {
                let c = r[&lead];
                for (m, &x) in p {
                    let slot = r.entry(m.clone()).or_insert(0);
                    *slot = (*slot + PRIME - mul_mod(c, x)) % PRIME;
                    if *slot == 0 {
                        r.remove(m);
                    }
                }
            } else {
                floor = Some(lead);
            }
        }
    }

    fn spans(&self, r: &Row) -> bool {
        self.reduce(r.clone()).is_empty()
    }
}

/// An ideal script loadable by Macaulay2.
pub fn export_m2(gens: &GeneratorSet) -> String {
    let vars: BTreeSet<Cell> = gens.iter().flat_map(SparsePolynomial::variables).collect();
    let names = vars
        .iter()
        .map(|c| format!("z_{}_{}", c.row, c.col))
        .collect::<Vec<_>>()
        .join(", ");
    let polys = gens
        .iter()
        .map(|p| format!("  {}", p.to_m2()))
        .collect::<Vec<_>>()
        .join(",\n");
    format!("R = QQ[{names}];\nI = ideal(\n{polys}\n);\n")
}

/// Univariate integer polynomial in `t`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KPolynomial {
    pub coeffs: Vec<i64>,
}

impl KPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }
}

impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}t"),
                _ => format!("{c}t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + ").replace("+ -", "- "))
        }
    }
}

fn binomial_row(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for k in 0..n {
        row.push(row[k] * (n - k) as i64 / (k + 1) as i64);
    }
    row
}

/// `K(S/J_{v,w}; t) = Σ (-1)^{#P - l(w)} (1 - t)^{#P}` over the sets
/// `P ⊆ D(v)` with Demazure product `w`.
pub fn k_polynomial(v: &Permutation, w: &Permutation, budget: usize) -> Result<KPolynomial> {
    let pipes = oracle::overline_pipes(v, w, budget)?;
    let lw = w.length();
    let top = pipes.iter().map(|p| p.len()).max().unwrap_or(0);
    let mut coeffs = vec![0i64; top + 1];
    for p in &pipes {
        let m = p.len();
        let sign = if (m - lw).is_multiple_of(2) { 1 } else { -1 };
        for (k, b) in binomial_row(m).into_iter().enumerate() {
            coeffs[k] += sign * b * if k % 2 == 0 { 1 } else { -1 };
        }
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Ok(KPolynomial { coeffs })
}
