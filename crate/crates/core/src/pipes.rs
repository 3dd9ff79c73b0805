//! Box labels, reading words and the northeast-most pipe set `D^NE(v, w)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm::{Cell, CellSet, Permutation};

/// `D(v)` with its generator labels and reading order.
///
/// The `k`th leftmost box of row `i` is labelled `i + k - 1`; the reading
/// order runs right to left along each row, rows top to bottom.
#[derive(Debug, Clone)]
pub struct LabeledRothe {
    pub owner: Permutation,
    pub labels: BTreeMap<Cell, usize>,
    pub reading_order: Vec<Cell>,
}

impl LabeledRothe {
    pub fn new(v: &Permutation) -> Self {
        let diagram = v.rothe_diagram();
        let mut labels = BTreeMap::new();
        let mut reading_order = Vec::with_capacity(diagram.len());
        for i in 1..=v.n() {
            let row: Vec<Cell> = diagram.row(i).collect();
            for (k, &c) in row.iter().enumerate() {
                labels.insert(c, i + k);
            }
            reading_order.extend(row.iter().rev());
        }
        LabeledRothe {
            owner: v.clone(),
            labels,
            reading_order,
        }
    }

    pub fn label(&self, c: Cell) -> Option<usize> {
        self.labels.get(&c).copied()
    }

    /// The full reading word; a reduced word for the owner.
    pub fn word(&self) -> Vec<usize> {
        self.reading_order.iter().map(|c| self.labels[c]).collect()
    }

    fn check_contained(&self, p: &CellSet) -> Result<()> {
        match p.iter().find(|c| !self.labels.contains_key(c)) {
            Some(c) => Err(Error::Containment(c, "the Rothe diagram")),
            None => Ok(()),
        }
    }
}

pub fn reading_word(v: &Permutation, p: &CellSet) -> Result<Vec<usize>> {
    let lr = LabeledRothe::new(v);
    lr.check_contained(p)?;
    Ok(lr
        .reading_order
        .iter()
        .filter(|c| p.contains(**c))
        .map(|c| lr.labels[c])
        .collect())
}

/// Demazure product `δ(P)` of the reading word of `P ⊆ D(v)`.
pub fn delta(v: &Permutation, p: &CellSet) -> Result<Permutation> {
    Permutation::demazure_product(v.n(), &reading_word(v, p)?)
}

/// Shared precondition of every pair-level construction: both permutations
/// 321-avoiding and `w <= v`.
pub fn check_pair(v: &Permutation, w: &Permutation) -> Result<()> {
    for (name, u) in [("v", v), ("w", w)] {
        if !u.is_321_avoiding() {
            return Err(Error::Pattern(format!("{name} = {u} contains 321")));
        }
    }
    if !w.bruhat_leq(v)? {
        return Err(Error::IncomparablePair(w.to_string(), v.to_string()));
    }
    Ok(())
}

/// The cells of `D(v)` occupying the lexicographically earliest positions of
/// the reading word that spell a reduced word for `w`.
pub fn d_ne(v: &Permutation, w: &Permutation) -> Result<CellSet> {
    check_pair(v, w)?;
    let lr = LabeledRothe::new(v);
    let word = lr.word();
    let n = v.n();

    // suffix[k] = Demazure product of word[k..]
    let mut suffix = vec![Permutation::identity(n); word.len() + 1];
    for k in (0..word.len()).rev() {
        suffix[k] = suffix[k + 1].demazure_step_left(word[k])?;
    }

    let target = w.length();
    let mut u = Permutation::identity(n);
    let mut out = CellSet::new();
    for (k, &a) in word.iter().enumerate() {
        if u.length() == target {
            break;
        }
        if !u.is_right_ascent(a) {
            continue;
        }
        let next = u.mul_simple_right(a)?;
        let rest = next.inverse().compose(w);
        if next.length() + rest.length() == target && rest.bruhat_leq(&suffix[k + 1])? {
            u = next;
            out.insert(lr.reading_order[k]);
        }
    }
    if &u != w {
        return Err(Error::Construction(format!(
            "no reduced subword for {w} inside the reading word of {v}"
        )));
    }
    Ok(out)
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
    fn reading_words() {
        let (v, w) = ex23();
        assert_eq!(
            reading_word(&w, &w.rothe_diagram()).unwrap(),
            vec![3, 2, 1, 5, 7, 6, 8]
        );
        assert_eq!(
            LabeledRothe::new(&v).word(),
            vec![3, 2, 1, 5, 4, 3, 2, 7, 6, 5, 8, 7, 6, 9]
        );
        assert!(reading_word(&v, &CellSet::new()).unwrap().is_empty());
        let row1: CellSet = v.rothe_diagram().row(1).collect();
        assert_eq!(reading_word(&v, &row1).unwrap(), vec![3, 2, 1]);
        assert!(matches!(
            reading_word(&v, &cells(&[(10, 10)])),
            Err(Error::Containment(..))
        ));
    }

    #[test]
    fn delta_examples() {
        let (v, w) = ex23();
        assert!(delta(&v, &CellSet::new()).unwrap().is_identity());
        assert_eq!(delta(&v, &v.rothe_diagram()).unwrap(), v);
        let pipe = cells(&[(1, 1), (1, 2), (1, 3), (2, 5), (5, 5), (5, 7), (6, 7)]);
        assert_eq!(delta(&v, &pipe).unwrap(), w);
    }

    #[test]
    fn northeast_pipes() {
        let (v, w) = ex23();
        assert_eq!(
            d_ne(&v, &w).unwrap(),
            cells(&[(1, 1), (1, 2), (1, 3), (2, 5), (5, 5), (5, 7), (6, 7)])
        );
        assert!(d_ne(&v, &Permutation::identity(10)).unwrap().is_empty());
        assert_eq!(d_ne(&v, &v).unwrap(), v.rothe_diagram());
    }

    #[test]
    fn northeast_pipes_errors() {
        let (v, w) = ex23();
        assert!(matches!(d_ne(&w, &v), Err(Error::IncomparablePair(..))));
        assert!(matches!(
            d_ne(&p(&[3, 2, 1]), &Permutation::identity(3)),
            Err(Error::Pattern(_))
        ));
    }
}
