//! Randomized constructions of runlength-constrained codes and selectors.
//!
//! All constructors are deterministic functions of their parameters and a
//! `u64` seed, which seeds a ChaCha8 stream.

mod events;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{cheng_bound, cheng_qary_rows, Sweep};
use crate::column::BitColumn;
use crate::combinatorics::ConstrainedSpace;
use crate::error::{Error, Result};
use crate::matrix::{CodeMatrix, MatrixMeta};
use crate::params::CodeParams;

pub use crate::matrix::identity as identity_code;
pub use events::Event;
pub(crate) use events::{first_selector_violation, first_superimposed_violation};

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    BudgetExhausted,
}

/// Reproducibility record of a randomized construction. Equality ignores
/// `wall_time`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionLog {
    pub method: String,
    pub seed: u64,
    /// Resampling steps (Moser-Tardos) or fresh redraws (q-ary).
    pub resample_count: u64,
    pub budget: u64,
    pub events_resampled: Vec<Event>,
    pub outcome: Outcome,
    /// Not serialized, so reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl PartialEq for ConstructionLog {
    fn eq(&self, other: &Self) -> bool {
        self.method == other.method
            && self.seed == other.seed
            && self.resample_count == other.resample_count
            && self.budget == other.budget
            && self.events_resampled == other.events_resampled
            && self.outcome == other.outcome
    }
}

impl Eq for ConstructionLog {}

impl ConstructionLog {
    fn new(method: &str, seed: u64, budget: u64) -> Self {
        ConstructionLog {
            method: method.to_string(),
            seed,
            resample_count: 0,
            budget,
            events_resampled: Vec::new(),
            outcome: Outcome::Success,
            wall_time: Duration::ZERO,
        }
    }
}

fn require_shape(params: &CodeParams) -> Result<(usize, usize)> {
    params.validate()?;
    let t = params.t.ok_or(Error::MissingParam("t"))?;
    let w = params.w.ok_or(Error::MissingParam("w"))?;
    Ok((t, w))
}

fn meta_of(params: &CodeParams) -> MatrixMeta {
    MatrixMeta {
        k: Some(params.k),
        d: Some(params.d),
        p: Some(params.p),
        w: params.w,
    }
}

fn sample_columns<R: Rng>(space: &ConstrainedSpace, n: usize, rng: &mut R) -> Result<Vec<BitColumn>> {
    (0..n).map(|_| space.sample(rng)).collect()
}

/// `n` independent uniform columns from the constrained space of
/// `(t, w, d)`. Requires `t` and `w` in `params`.
pub fn sample_matrix(params: &CodeParams, seed: u64) -> Result<CodeMatrix> {
    let (t, w) = require_shape(params)?;
    let space = ConstrainedSpace::new(t, w, params.d);
    let mut rng = rng_from_seed(seed);
    let columns = sample_columns(&space, params.n, &mut rng)?;
    Ok(CodeMatrix::from_columns(t, columns)?.with_meta(meta_of(params)))
}

/// First violated coverage event in the fixed search order: superimposed
/// events when `p = k`, selector events otherwise.
pub fn find_violated_event(m: &CodeMatrix, k: usize, p: usize) -> Result<Option<Event>> {
    if k == 0 || p == 0 || p > k || k > m.cols() {
        return Err(Error::InvalidParams(format!(
            "need 1 <= p <= k <= n, got p = {p}, k = {k}, n = {}",
            m.cols()
        )));
    }
    Ok(if p == k {
        first_superimposed_violation(m, k)
    } else {
        first_selector_violation(m, k, p)
    })
}

/// Default resampling budget: `1000 n w`.
pub fn default_max_resamples(n: usize, w: usize) -> u64 {
    1000 * n as u64 * w as u64
}

/// Moser-Tardos resampling: draw every column uniformly from the
/// constrained space, then while some coverage event is violated redraw
/// exactly the columns of the first such event.
///
/// On success the matrix is a `(k, n, d, p, w)`-selector (a superimposed
/// code when `p = k`). Exhausting `max_resamples` returns
/// [`Error::ConstructionBudget`] carrying the log.
pub fn moser_tardos_construct(
    params: &CodeParams,
    seed: u64,
    max_resamples: Option<u64>,
) -> Result<(CodeMatrix, ConstructionLog)> {
    let (t, w) = require_shape(params)?;
    let (k, p) = (params.k, params.p);
    let budget = max_resamples.unwrap_or_else(|| default_max_resamples(params.n, w));
    if budget == 0 {
        return Err(Error::InvalidParams("max_resamples must be at least 1".into()));
    }
    let started = Instant::now();
    let space = ConstrainedSpace::new(t, w, params.d);
    let mut rng = rng_from_seed(seed);
    let mut matrix = CodeMatrix::from_columns(t, sample_columns(&space, params.n, &mut rng)?)?
        .with_meta(meta_of(params));
    let mut log = ConstructionLog::new("moser_tardos", seed, budget);

    while let Some(event) = find_violated_event(&matrix, k, p)? {
        if log.resample_count == budget {
            log.outcome = Outcome::BudgetExhausted;
            log.wall_time = started.elapsed();
            return Err(Error::ConstructionBudget { log: Box::new(log) });
        }
        for j in event.variables() {
            *matrix.column_mut(j) = space.sample(&mut rng)?;
        }
        log.resample_count += 1;
        log.events_resampled.push(event);
    }
    log.wall_time = started.elapsed();
    Ok((matrix, log))
}

/// Binary block of length `q + d` for symbol `s`: a single 1 at offset `s`.
pub fn qary_block(s: usize, q: usize, d: usize) -> BitColumn {
    assert!(s < q, "symbol {s} out of range for q = {q}");
    BitColumn::from_support(q + d, &[s])
}

/// Expands a q-ary column (one symbol per q-ary row) into binary blocks.
pub fn expand_qary(symbols: &[usize], q: usize, d: usize) -> BitColumn {
    let block = q + d;
    let support: Vec<usize> = symbols
        .iter()
        .enumerate()
        .map(|(r, &s)| {
            assert!(s < q, "symbol {s} out of range for q = {q}");
            r * block + s
        })
        .collect();
    BitColumn::from_support(symbols.len() * block, &support)
}

/// Settings for [`qary_construct`]; `None` fields take the defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaryConfig {
    /// Alphabet size, defaults to the maximizer of the q-ary rate.
    pub q: Option<usize>,
    /// Number of q-ary rows, defaults to the bound's `t_q`.
    pub rows: Option<usize>,
    /// Redraws allowed after the first draw, defaults to 100.
    pub max_retries: Option<u64>,
}

/// Draws a uniform `t_q x n` matrix over `{0..q-1}`, expands every symbol
/// into a `(q + d)`-bit block whose last `d` bits are 0, and redraws until
/// the binary matrix is a `(k, n, d)`-superimposed code.
pub fn qary_construct(
    k: usize,
    n: usize,
    d: usize,
    seed: u64,
    config: &QaryConfig,
) -> Result<(CodeMatrix, ConstructionLog)> {
    CodeParams::superimposed(k, n, d).validate()?;
    let q = match config.q {
        Some(q) if q < 2 => return Err(Error::InvalidParams("q must be at least 2".into())),
        Some(q) => q,
        None => cheng_bound(k, n, d, &Sweep::default())?.q,
    };
    let rows = match config.rows {
        Some(0) => return Err(Error::InvalidParams("t_q must be at least 1".into())),
        Some(r) => r,
        None => cheng_qary_rows(k, n, q)?,
    };
    let budget = config.max_retries.unwrap_or(100);
    let started = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut log = ConstructionLog::new("qary", seed, budget);
    let meta = MatrixMeta {
        k: Some(k),
        d: Some(d),
        p: Some(k),
        w: Some(rows),
    };
    loop {
        let columns = (0..n)
            .map(|_| {
                let symbols: Vec<usize> = (0..rows).map(|_| rng.gen_range(0..q)).collect();
                expand_qary(&symbols, q, d)
            })
            .collect();
        let matrix = CodeMatrix::from_columns(rows * (q + d), columns)?.with_meta(meta);
        match first_superimposed_violation(&matrix, k) {
            None => {
                log.wall_time = started.elapsed();
                return Ok((matrix, log));
            }
            Some(event) => {
                if log.resample_count == budget {
                    log.outcome = Outcome::BudgetExhausted;
                    log.wall_time = started.elapsed();
                    return Err(Error::ConstructionBudget { log: Box::new(log) });
                }
                log.resample_count += 1;
                log.events_resampled.push(event);
            }
        }
    }
}
