//! Coverage events and the deterministic search for the first violated one.
//!
//! Superimposed events `(i, B)` are visited with `i` increasing and `B`
//! ranging over the `(k-1)`-subsets of the other columns in colex order.
//! Selector events are visited by `k`-subset `K` in colex order; within `K`
//! the first violated `B1` is the colex-first `(k-p+1)`-subset of the
//! columns of `K` that have no private row inside `K`.

use serde::{Deserialize, Serialize};

use crate::combinatorics::Colex;
use crate::matrix::CodeMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Event {
    /// `supp(c_column) ⊆ supp(OR of others)`, with `|others| = k-1`.
    Superimposed { column: usize, others: Vec<usize> },
    /// Every column in `covered` is covered by the rest of
    /// `covered ∪ rest`; `|covered| = k-p+1`, `|rest| = p-1`.
    Selector { covered: Vec<usize>, rest: Vec<usize> },
}

impl Event {
    /// Columns whose values determine the event, sorted.
    pub fn variables(&self) -> Vec<usize> {
        let mut v = match self {
            Event::Superimposed { column, others } => {
                let mut v = others.clone();
                v.push(*column);
                v
            }
            Event::Selector { covered, rest } => covered.iter().chain(rest).copied().collect(),
        };
        v.sort_unstable();
        v
    }

    /// Re-evaluates the event on `m` from scratch.
    pub fn is_violated_in(&self, m: &CodeMatrix) -> bool {
        match self {
            Event::Superimposed { column, others } => {
                m.column(*column).is_covered_by(&m.or_of(others.iter().copied()))
            }
            Event::Selector { covered, rest } => covered.iter().all(|&i| {
                let others = covered.iter().chain(rest).copied().filter(|&j| j != i);
                m.column(i).is_covered_by(&m.or_of(others))
            }),
        }
    }

    /// Checks the shape constraints for parameters `(k, p)`.
    pub fn is_well_formed(&self, k: usize, p: usize) -> bool {
        match self {
            Event::Superimposed { column, others } => {
                others.len() + 1 == k && !others.contains(column)
            }
            Event::Selector { covered, rest } => {
                covered.len() == k - p + 1
                    && rest.len() + 1 == p
                    && covered.iter().all(|c| !rest.contains(c))
            }
        }
    }
}

/// Support of one column projected onto the rows of another, as words.
struct Projection {
    words: usize,
    full: Vec<u64>,
    masks: Vec<Vec<u64>>,
}

impl Projection {
    fn new(m: &CodeMatrix, i: usize) -> Self {
        let rows: Vec<usize> = m.column(i).support_vec();
        let words = rows.len().div_ceil(64).max(1);
        let mut full = vec![0u64; words];
        for b in 0..rows.len() {
            full[b / 64] |= 1 << (b % 64);
        }
        let masks = m
            .columns()
            .iter()
            .map(|c| {
                let mut mask = vec![0u64; words];
                for (b, &r) in rows.iter().enumerate() {
                    if c.get(r) {
                        mask[b / 64] |= 1 << (b % 64);
                    }
                }
                mask
            })
            .collect();
        Projection { words, full, masks }
    }

    fn covers(&self, cols: &[usize]) -> bool {
        (0..self.words).all(|w| cols.iter().fold(0u64, |acc, &j| acc | self.masks[j][w]) == self.full[w])
    }

    /// Whether at most `budget` columns from `pool` cover every projected row.
    fn coverable(&self, pool: &[usize], budget: usize) -> bool {
        let mut covered = vec![0u64; self.words];
        self.cover_search(pool, budget, &mut covered)
    }

    fn cover_search(&self, pool: &[usize], budget: usize, covered: &mut Vec<u64>) -> bool {
        // lowest uncovered projected row
        let Some((w, bits)) = (0..self.words)
            .map(|w| (w, self.full[w] & !covered[w]))
            .find(|&(_, bits)| bits != 0)
        else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let bit = bits & bits.wrapping_neg();
        let saved = covered.clone();
        for &j in pool {
            if self.masks[j][w] & bit != 0 {
                for (c, m) in covered.iter_mut().zip(&self.masks[j]) {
                    *c |= m;
                }
                if self.cover_search(pool, budget - 1, covered) {
                    return true;
                }
                covered.copy_from_slice(&saved);
            }
        }
        false
    }
}

/// The colex-first `B` with `supp(c_i) ⊆ supp(OR_B)`, if any.
pub(crate) fn superimposed_violation_at(m: &CodeMatrix, k: usize, i: usize) -> Option<Vec<usize>> {
    let n = m.cols();
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let proj = Projection::new(m, i);
    let useful: Vec<usize> = others
        .iter()
        .copied()
        .filter(|&j| proj.masks[j].iter().any(|&x| x != 0))
        .collect();
    if !proj.coverable(&useful, k - 1) {
        return None;
    }
    Colex::new(others.len(), k - 1)
        .map(|idx| idx.into_iter().map(|x| others[x]).collect::<Vec<_>>())
        .find(|b| proj.covers(b))
}

/// First violated superimposed event, or `None` if `m` is a `k`-superimposed code.
pub(crate) fn first_superimposed_violation(m: &CodeMatrix, k: usize) -> Option<Event> {
    (0..m.cols()).find_map(|i| {
        superimposed_violation_at(m, k, i).map(|others| Event::Superimposed { column: i, others })
    })
}

/// Columns of `tuple` with no private row inside `tuple`, in tuple order.
pub(crate) fn unprivate_members(m: &CodeMatrix, tuple: &[usize]) -> Vec<usize> {
    let r = tuple.len();
    // prefix[j] = OR of tuple[..j], suffix[j] = OR of tuple[j..]
    let mut prefix = Vec::with_capacity(r + 1);
    prefix.push(m.or_of(std::iter::empty()));
    for &j in tuple {
        let mut next = prefix.last().unwrap().clone();
        next.union_with(m.column(j));
        prefix.push(next);
    }
    let mut suffix = vec![m.or_of(std::iter::empty()); r + 1];
    for idx in (0..r).rev() {
        let mut next = suffix[idx + 1].clone();
        next.union_with(m.column(tuple[idx]));
        suffix[idx] = next;
    }
    tuple
        .iter()
        .enumerate()
        .filter(|&(idx, &j)| {
            let mut rest = prefix[idx].clone();
            rest.union_with(&suffix[idx + 1]);
            m.column(j).is_covered_by(&rest)
        })
        .map(|(_, &j)| j)
        .collect()
}

/// First violated selector event for `(k, p)`, `p < k` or `p = k`.
pub(crate) fn first_selector_violation(m: &CodeMatrix, k: usize, p: usize) -> Option<Event> {
    let need = k - p + 1;
    Colex::new(m.cols(), k).find_map(|tuple| {
        let unprivate = unprivate_members(m, &tuple);
        (unprivate.len() >= need).then(|| {
            let covered: Vec<usize> = unprivate[..need].to_vec();
            let rest = tuple.iter().copied().filter(|j| !covered.contains(j)).collect();
            Event::Selector { covered, rest }
        })
    })
}
