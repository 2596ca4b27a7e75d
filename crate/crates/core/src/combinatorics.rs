//! Counting, ranking and sampling of runlength-constrained constant-weight
//! vectors.
//!
//! A length-`t`, weight-`w` vector whose 1's are pairwise separated by at
//! least `d` zeros corresponds one-to-one with an unconstrained weight-`w`
//! vector of length `t - (w-1)d`: delete exactly `d` zeros after every 1 but
//! the last. Ranks are the colexicographic ranks of that unconstrained
//! image, so everything here reduces to [`SubsetCodec`].

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::column::BitColumn;
use crate::error::{Error, Result};

/// Exact binomial coefficient; `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Ranks and unranks `size`-subsets of `{0, .., universe-1}` in colex order.
///
/// The rank of `{a_0 < a_1 < .. < a_{r-1}}` is `sum_j C(a_j, j+1)`.
#[derive(Clone, Debug)]
pub struct SubsetCodec {
    universe: usize,
    size: usize,
    // table[j][a] = C(a, j) for j <= size, a <= universe
    table: Vec<Vec<BigUint>>,
}

impl SubsetCodec {
    pub fn new(universe: usize, size: usize) -> Self {
        let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(size + 1);
        table.push(vec![BigUint::one(); universe + 1]);
        for j in 1..=size {
            let prev = &table[j - 1];
            let mut row = vec![BigUint::zero(); universe + 1];
            for a in 1..=universe {
                row[a] = &row[a - 1] + &prev[a - 1];
            }
            table.push(row);
        }
        SubsetCodec {
            universe,
            size,
            table,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn count(&self) -> &BigUint {
        &self.table[self.size][self.universe]
    }

    pub fn rank(&self, subset: &[usize]) -> Result<BigUint> {
        if subset.len() != self.size {
            return Err(Error::NotInSpace(format!(
                "subset has {} elements, expected {}",
                subset.len(),
                self.size
            )));
        }
        let mut r = BigUint::zero();
        for (j, &a) in subset.iter().enumerate() {
            if a >= self.universe {
                return Err(Error::NotInSpace(format!(
                    "element {a} outside universe of {}",
                    self.universe
                )));
            }
            if j > 0 && subset[j - 1] >= a {
                return Err(Error::NotInSpace("subset is not strictly increasing".into()));
            }
            r += &self.table[j + 1][a];
        }
        Ok(r)
    }

    pub fn unrank(&self, index: &BigUint) -> Result<Vec<usize>> {
        if index >= self.count() {
            return Err(Error::IndexOutOfRange {
                index: index.to_string(),
                count: self.count().to_string(),
            });
        }
        let mut r = index.clone();
        let mut out = vec![0; self.size];
        let mut hi = self.universe;
        for j in (1..=self.size).rev() {
            // largest a < hi with C(a, j) <= r
            let row = &self.table[j];
            let (mut lo, mut up) = (j - 1, hi);
            while up - lo > 1 {
                let mid = lo + (up - lo) / 2;
                if row[mid] <= r {
                    lo = mid;
                } else {
                    up = mid;
                }
            }
            r -= &row[lo];
            out[j - 1] = lo;
            hi = lo;
        }
        Ok(out)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let index = uniform_below(rng, self.count());
        self.unrank(&index).expect("sampled index is in range")
    }
}

/// Uniform integer in `[0, bound)`; `bound` must be non-zero.
pub(crate) fn uniform_below<R: Rng + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    match bound.to_u64() {
        Some(b) => BigUint::from(rng.gen_range(0..b)),
        None => rng.gen_biguint_below(bound),
    }
}

/// Iterator over the `size`-subsets of `{0, .., universe-1}` in colex order.
#[derive(Clone, Debug)]
pub struct Colex {
    universe: usize,
    current: Option<Vec<usize>>,
}

impl Colex {
    pub fn new(universe: usize, size: usize) -> Self {
        let current = (size <= universe).then(|| (0..size).collect());
        Colex { universe, current }
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.as_mut()?;
        let out = cur.clone();
        let r = cur.len();
        let mut j = 0;
        while j < r {
            let limit = if j + 1 < r { cur[j + 1] } else { self.universe };
            if cur[j] + 1 < limit {
                cur[j] += 1;
                for (i, slot) in cur.iter_mut().enumerate().take(j) {
                    *slot = i;
                }
                break;
            }
            j += 1;
        }
        if j == r {
            self.current = None;
        }
        Some(out)
    }
}

/// Number of length-`t`, weight-`w` vectors whose 1's are separated by at
/// least `d` zeros.
pub fn count_constrained(t: usize, w: usize, d: usize) -> BigUint {
    if w == 0 {
        return BigUint::one();
    }
    if !is_feasible(t, w, d) {
        return BigUint::zero();
    }
    binomial((t - (w - 1) * d) as u64, w as u64)
}

/// Shortest length that fits `w` ones with gaps of `d`: `(w-1)d + w`.
pub fn min_length(w: usize, d: usize) -> usize {
    if w == 0 {
        0
    } else {
        (w - 1) * d + w
    }
}

pub fn is_feasible(t: usize, w: usize, d: usize) -> bool {
    w == 0 || t >= min_length(w, d)
}

/// The set of length-`t`, weight-`w` columns with runs of at least `d`
/// zeros between consecutive 1's.
#[derive(Clone, Debug)]
pub struct ConstrainedSpace {
    t: usize,
    w: usize,
    d: usize,
    codec: Option<SubsetCodec>,
}

impl ConstrainedSpace {
    pub fn new(t: usize, w: usize, d: usize) -> Self {
        let codec = is_feasible(t, w, d).then(|| {
            let universe = if w == 0 { t } else { t - (w - 1) * d };
            SubsetCodec::new(universe, w)
        });
        ConstrainedSpace { t, w, d, codec }
    }

    pub fn length(&self) -> usize {
        self.t
    }

    pub fn weight(&self) -> usize {
        self.w
    }

    pub fn gap(&self) -> usize {
        self.d
    }

    pub fn is_feasible(&self) -> bool {
        self.codec.is_some()
    }

    pub fn count(&self) -> BigUint {
        self.codec
            .as_ref()
            .map(|c| c.count().clone())
            .unwrap_or_default()
    }

    pub fn unrank(&self, index: &BigUint) -> Result<BitColumn> {
        let Some(codec) = &self.codec else {
            return Err(Error::IndexOutOfRange {
                index: index.to_string(),
                count: "0".into(),
            });
        };
        let pattern = codec.unrank(index)?;
        Ok(self.expand(&pattern))
    }

    pub fn rank(&self, column: &BitColumn) -> Result<BigUint> {
        let codec = self.codec.as_ref().ok_or(Error::Infeasible {
            t: self.t,
            w: self.w,
            d: self.d,
        })?;
        if column.len() != self.t {
            return Err(Error::NotInSpace(format!(
                "length {} differs from {}",
                column.len(),
                self.t
            )));
        }
        let support = column.support_vec();
        if support.len() != self.w {
            return Err(Error::NotInSpace(format!(
                "weight {} differs from {}",
                support.len(),
                self.w
            )));
        }
        if let Some((a, b)) = column.gap_violation(self.d) {
            return Err(Error::NotInSpace(format!(
                "1's at rows {a} and {b} are separated by fewer than {} zeros",
                self.d
            )));
        }
        let pattern: Vec<usize> = support
            .iter()
            .enumerate()
            .map(|(j, &row)| row - j * self.d)
            .collect();
        codec.rank(&pattern)
    }

    /// Uniform member of the space, drawn by unranking a uniform index.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<BitColumn> {
        let codec = self.codec.as_ref().ok_or(Error::Infeasible {
            t: self.t,
            w: self.w,
            d: self.d,
        })?;
        Ok(self.expand(&codec.sample(rng)))
    }

    /// All members in rank order. Fails if there are more than `budget`.
    pub fn enumerate(&self, budget: u64) -> Result<impl Iterator<Item = BitColumn> + '_> {
        let count = self.count();
        if count > BigUint::from(budget) {
            return Err(Error::BudgetExceeded {
                count: count.to_string(),
                budget,
            });
        }
        Ok(self.iter())
    }

    /// Lazy rank-order iterator with no size check.
    pub fn iter(&self) -> impl Iterator<Item = BitColumn> + '_ {
        let patterns = match &self.codec {
            Some(codec) => Colex::new(codec.universe(), codec.size()),
            None => Colex::new(0, 1),
        };
        patterns.map(move |p| self.expand(&p))
    }

    fn expand(&self, pattern: &[usize]) -> BitColumn {
        let support: Vec<usize> = pattern
            .iter()
            .enumerate()
            .map(|(j, &a)| a + j * self.d)
            .collect();
        BitColumn::from_support(self.t, &support)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_constrained(5, 2, 1), big(6));
        assert_eq!(count_constrained(7, 3, 0), big(35));
        assert_eq!(count_constrained(4, 3, 1), big(0));
        assert_eq!(count_constrained(9, 1, 4), big(9));
        assert_eq!(count_constrained(6, 0, 3), big(1));
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(1, 5), big(0));
        assert_eq!(binomial(10, 0), big(1));
        assert_eq!(binomial(45, 22), big(4_116_715_363_800));
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn unrank_first_and_last() {
        // 0-based rows: {0,2} is the first, {2,4} the last
        let space = ConstrainedSpace::new(5, 2, 1);
        assert_eq!(space.unrank(&big(0)).unwrap().support_vec(), vec![0, 2]);
        assert_eq!(space.unrank(&big(5)).unwrap().support_vec(), vec![2, 4]);
        assert!(matches!(
            space.unrank(&big(6)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn weight_one_is_position_order() {
        let space = ConstrainedSpace::new(9, 1, 4);
        for i in 0..9u64 {
            assert_eq!(space.unrank(&big(i)).unwrap().support_vec(), vec![i as usize]);
        }
    }

    #[test]
    fn rank_examples() {
        let space = ConstrainedSpace::new(10, 3, 2);
        let v = space.unrank(&big(3)).unwrap();
        assert_eq!(space.rank(&v).unwrap(), big(3));

        let space = ConstrainedSpace::new(5, 2, 1);
        assert_eq!(
            space.rank(&BitColumn::from_support(5, &[0, 2])).unwrap(),
            big(0)
        );
        assert!(matches!(
            space.rank(&BitColumn::from_support(5, &[0, 1])),
            Err(Error::NotInSpace(_))
        ));
        assert!(matches!(
            space.rank(&BitColumn::from_support(5, &[0])),
            Err(Error::NotInSpace(_))
        ));
    }

    #[test]
    fn sample_is_seed_deterministic() {
        let space = ConstrainedSpace::new(5, 2, 1);
        let a = space.sample(&mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let b = space.sample(&mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.weight(), 2);
        assert!(a.gap_violation(1).is_none());
    }

    #[test]
    fn singleton_and_infeasible_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let space = ConstrainedSpace::new(3, 3, 0);
        assert_eq!(space.sample(&mut rng).unwrap().support_vec(), vec![0, 1, 2]);
        let space = ConstrainedSpace::new(4, 3, 1);
        assert!(matches!(space.sample(&mut rng), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn enumerate_examples() {
        let space = ConstrainedSpace::new(5, 2, 1);
        let all: Vec<Vec<usize>> = space.enumerate(100).unwrap().map(|c| c.support_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 2],
                vec![0, 3],
                vec![1, 3],
                vec![0, 4],
                vec![1, 4],
                vec![2, 4]
            ]
        );
        let zero: Vec<BitColumn> = ConstrainedSpace::new(6, 0, 3).enumerate(10).unwrap().collect();
        assert_eq!(zero, vec![BitColumn::zeros(6)]);
        assert_eq!(ConstrainedSpace::new(4, 3, 1).enumerate(10).unwrap().count(), 0);
        assert!(matches!(
            ConstrainedSpace::new(20, 3, 0).enumerate(10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn colex_order_small() {
        let all: Vec<Vec<usize>> = Colex::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Colex::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Colex::new(2, 3).count(), 0);
    }

    #[test]
    fn codec_matches_colex_iteration() {
        let codec = SubsetCodec::new(9, 4);
        for (i, s) in Colex::new(9, 4).enumerate() {
            assert_eq!(codec.rank(&s).unwrap(), big(i as u64));
            assert_eq!(codec.unrank(&big(i as u64)).unwrap(), s);
        }
    }
}
