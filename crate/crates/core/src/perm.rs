//! Permutations in one-line notation and the cell sets drawn from them.
//!
//! Everything is 1-indexed: `word[i - 1]` is `u_i`, and cell `(1, 1)` is the
//! northwest corner of the `n x n` grid.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box `(row, col)` in matrix coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Translate by `(dr, dc)`; `None` if a coordinate would drop below 1.
    pub fn offset(self, dr: isize, dc: isize) -> Option<Cell> {
        let row = self.row as isize + dr;
        let col = self.col as isize + dc;
        (row >= 1 && col >= 1).then(|| Cell::new(row as usize, col as usize))
    }

    /// `row + col`, constant along anti-diagonals.
    pub fn norm(self) -> usize {
        self.row + self.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell::new(row, col)
    }
}

/// A finite set of cells, iterated in reading (row-major) order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellSet(BTreeSet<Cell>);

impl CellSet {
    pub fn new() -> Self {
        CellSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.0.contains(&cell)
    }

    pub fn insert(&mut self, cell: Cell) -> bool {
        self.0.insert(cell)
    }

    pub fn remove(&mut self, cell: Cell) -> bool {
        self.0.remove(&cell)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Cell> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        CellSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        CellSet(self.0.union(&other.0).copied().collect())
    }

    /// Cells of one row, west to east.
    pub fn row(&self, row: usize) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .range(Cell::new(row, 0)..Cell::new(row + 1, 0))
            .copied()
    }

    pub fn to_vec(&self) -> Vec<Cell> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<Cell> for CellSet {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        CellSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a CellSet {
    type Item = Cell;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Cell>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Convenience constructor used throughout the tests.
pub fn cells(pairs: &[(usize, usize)]) -> CellSet {
    pairs.iter().map(|&p| Cell::from(p)).collect()
}

/// A permutation of `[n]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.word
    }
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::validation("permutation must be nonempty"));
        }
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return Err(Error::validation(format!(
                    "{word:?} is not a permutation of [{n}]"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `u_i`, 1-indexed.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `#{k <= i : u_k <= j}`.
    pub fn rank(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.n();
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(Error::Range(format!("({i},{j}) outside [{n}]x[{n}]")));
        }
        Ok(self.word[..i].iter().filter(|&&x| x <= j).count())
    }

    /// Full rank table, including the zero row and column.
    pub fn rank_matrix(&self) -> RankMatrix {
        RankMatrix::of(self)
    }

    pub fn rothe_diagram(&self) -> CellSet {
        let inv = self.inverse();
        let n = self.n();
        let mut out = CellSet::new();
        for i in 1..=n {
            for j in 1..self.at(i) {
                if inv.at(j) > i {
                    out.insert(Cell::new(i, j));
                }
            }
        }
        out
    }

    pub fn lehmer_code(&self) -> Vec<usize> {
        let w = &self.word;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count())
            .collect()
    }

    pub fn from_lehmer_code(code: &[usize]) -> Result<Self> {
        let n = code.len();
        if n == 0 {
            return Err(Error::validation("empty Lehmer code"));
        }
        let mut remaining: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for (i, &c) in code.iter().enumerate() {
            if c > n - i - 1 {
                return Err(Error::validation(format!(
                    "code entry c_{} = {c} exceeds {}",
                    i + 1,
                    n - i - 1
                )));
            }
            word.push(remaining.remove(c));
        }
        Ok(Permutation { word })
    }

    pub fn is_321_avoiding(&self) -> bool {
        // u_j is the middle of a 321 iff something larger precedes it and
        // something smaller follows it.
        let w = &self.word;
        let n = w.len();
        let mut prefix_max = vec![0; n];
        let mut running = 0;
        for j in 0..n {
            prefix_max[j] = running;
            running = running.max(w[j]);
        }
        let mut suffix_min = usize::MAX;
        for j in (0..n).rev() {
            if prefix_max[j] > w[j] && suffix_min < w[j] {
                return false;
            }
            suffix_min = suffix_min.min(w[j]);
        }
        true
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.at(i) > self.at(i + 1))
            .collect()
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n() {
            return Err(Error::Range(format!(
                "generator s_{i} not in S_{}",
                self.n()
            )));
        }
        Ok(())
    }

    /// `u * s_i`: swap positions `i` and `i + 1`.
    pub fn mul_simple_right(&self, i: usize) -> Result<Permutation> {
        self.check_generator(i)?;
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Ok(Permutation { word })
    }

    /// `s_i * u`: swap the values `i` and `i + 1`.
    pub fn mul_simple_left(&self, i: usize) -> Result<Permutation> {
        self.check_generator(i)?;
        let word = self
            .word
            .iter()
            .map(|&x| match x {
                x if x == i => i + 1,
                x if x == i + 1 => i,
                x => x,
            })
            .collect();
        Ok(Permutation { word })
    }

    /// `l(u s_i) > l(u)`.
    pub fn is_right_ascent(&self, i: usize) -> bool {
        self.at(i) < self.at(i + 1)
    }

    /// One step of the 0-Hecke (Demazure) monoid action on the right.
    pub fn demazure_step(&self, i: usize) -> Result<Permutation> {
        self.check_generator(i)?;
        if self.is_right_ascent(i) {
            self.mul_simple_right(i)
        } else {
            Ok(self.clone())
        }
    }

    /// Same, acting on the left: `e_{s_i} e_u`.
    pub fn demazure_step_left(&self, i: usize) -> Result<Permutation> {
        self.check_generator(i)?;
        let inv = self.inverse();
        if inv.at(i) < inv.at(i + 1) {
            self.mul_simple_left(i)
        } else {
            Ok(self.clone())
        }
    }

    pub fn demazure_product(n: usize, word: &[usize]) -> Result<Permutation> {
        word.iter()
            .try_fold(Permutation::identity(n), |u, &i| u.demazure_step(i))
    }

    /// Ordinary product of simple reflections `s_{a_1} ... s_{a_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation> {
        word.iter()
            .try_fold(Permutation::identity(n), |u, &i| u.mul_simple_right(i))
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        // (self * other)(i) = self(other(i))
        Permutation {
            word: other.word.iter().map(|&i| self.at(i)).collect(),
        }
    }

    /// `self <= other` in Bruhat order.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::validation(format!(
                "size mismatch: S_{} vs S_{}",
                self.n(),
                other.n()
            )));
        }
        Ok(self.rank_matrix().dominates(&other.rank_matrix()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts a JSON array (`[4,6,1,2]`), whitespace/comma separated
    /// integers, or a bare digit string when every entry is a single digit.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let word: Vec<usize> =
                serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return Permutation::new(word);
        }
        let word: Vec<usize> = if t.contains(|c: char| c.is_whitespace() || c == ',') {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad entry {p:?} in {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            if !t.chars().all(|c| c.is_ascii_digit()) || t.is_empty() {
                return Err(Error::Parse(format!("cannot read {t:?} as a permutation")));
            }
            if t.len() >= 10 {
                return Err(Error::Parse(format!(
                    "{t:?} is ambiguous without separators for n >= 10"
                )));
            }
            t.chars().map(|c| c as usize - '0' as usize).collect()
        };
        Permutation::new(word).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `r(i, j)` for `0 <= i, j <= n`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMatrix {
    n: usize,
    data: Vec<usize>,
}

impl RankMatrix {
    fn of(u: &Permutation) -> Self {
        let n = u.n();
        let stride = n + 1;
        let mut data = vec![0; stride * stride];
        for i in 1..=n {
            for j in 1..=n {
                let here = usize::from(u.at(i) == j);
                data[i * stride + j] = data[(i - 1) * stride + j] + data[i * stride + j - 1]
                    - data[(i - 1) * stride + j - 1]
                    + here;
            }
        }
        RankMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.data[i * (self.n + 1) + j]
    }

    pub fn dominates(&self, other: &RankMatrix) -> bool {
        self.data.iter().zip(&other.data).all(|(a, b)| a >= b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Permutation::identity(4).rank(2, 3).unwrap(), 2);
        assert_eq!(p(&[2, 1]).rank(1, 1).unwrap(), 0);
        let v = p(&[4, 6, 8, 9, 1, 2, 3, 10, 11, 5, 7]);
        assert_eq!(v.rank(4, 3).unwrap(), 0);
        assert!(matches!(v.rank(0, 3), Err(Error::Range(_))));
        assert!(matches!(v.rank(12, 3), Err(Error::Range(_))));
    }

    #[test]
    fn rothe_examples() {
        assert!(Permutation::identity(5).rothe_diagram().is_empty());
        assert_eq!(p(&[2, 1]).rothe_diagram(), cells(&[(1, 1)]));
        let v = p(&[4, 6, 1, 2, 8, 9, 3, 5, 10, 7]);
        assert_eq!(v.rothe_diagram().len(), 14);
        assert_eq!(v.length(), 14);
    }

    #[test]
    fn lehmer_round_trip() {
        let c = [3, 4, 5, 5, 0, 0, 0, 2, 2, 0, 0];
        let v = Permutation::from_lehmer_code(&c).unwrap();
        assert_eq!(v.word(), &[4, 6, 8, 9, 1, 2, 3, 10, 11, 5, 7]);
        assert_eq!(v.lehmer_code(), c);
        assert_eq!(Permutation::identity(6).lehmer_code(), vec![0; 6]);
        assert!(Permutation::from_lehmer_code(&[0, 2, 0]).is_err());
    }

    #[test]
    fn patterns() {
        assert!(!p(&[1, 7, 2, 5, 8, 3, 4, 6]).is_321_avoiding());
        let id = Permutation::identity(4);
        assert!(id.is_321_avoiding() && id.is_grassmannian());
        assert!(p(&[5, 8, 9, 10, 1, 2, 11, 3, 4, 6, 7]).is_321_avoiding());
        assert!(!p(&[3, 2, 1]).is_321_avoiding());
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(
            Permutation::demazure_product(2, &[1, 1]).unwrap(),
            p(&[2, 1])
        );
        assert_eq!(
            Permutation::demazure_product(10, &[3, 2, 1, 5, 7, 6, 8]).unwrap(),
            p(&[4, 1, 2, 3, 6, 8, 5, 9, 7, 10])
        );
        assert!(Permutation::demazure_product(3, &[]).unwrap().is_identity());
        assert!(Permutation::identity(3).demazure_step(3).is_err());
        assert!(Permutation::identity(3).demazure_step(0).is_err());
    }

    #[test]
    fn bruhat_examples() {
        let w = p(&[4, 6, 1, 2, 8, 9, 3, 5, 10, 7]);
        assert!(Permutation::identity(10).bruhat_leq(&w).unwrap());
        assert!(p(&[4, 1, 2, 3, 6, 8, 5, 9, 7, 10]).bruhat_leq(&w).unwrap());
        assert!(!p(&[2, 1]).bruhat_leq(&Permutation::identity(2)).unwrap());
        assert!(p(&[2, 1]).bruhat_leq(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn parse_forms() {
        let a: Permutation = "[4,3,1,2]".parse().unwrap();
        let b: Permutation = "4 6 1 2 8 9 3 5 10 7".parse().unwrap();
        let c: Permutation = "4123".parse().unwrap();
        assert_eq!(a.word(), &[4, 3, 1, 2]);
        assert_eq!(b.n(), 10);
        assert_eq!(c.word(), &[4, 1, 2, 3]);
        assert!(matches!(
            "46128935107".parse::<Permutation>(),
            Err(Error::Parse(_))
        ));
        assert!("[1,1]".parse::<Permutation>().is_err());
    }
}
