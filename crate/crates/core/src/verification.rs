//! Certification of the defining properties of a matrix: exact checks at
//! desk scale, a Monte Carlo surrogate beyond it.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, SubsetCodec};
use crate::construction::{first_selector_violation, first_superimposed_violation, rng_from_seed, Event};
use crate::error::{Error, Result};
use crate::matrix::CodeMatrix;
use num_traits::ToPrimitive;

/// Default ceiling on `n C(n-1,k-1) t` for exact verification.
pub const DEFAULT_WORK_LIMIT: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Property {
    Runlength { d: usize },
    ColumnWeight { w: usize },
    Superimposed { k: usize },
    Selector { k: usize, p: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Event { event: Event },
    Runlength { column: usize, rows: [usize; 2] },
    Weight { column: usize, actual: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail {
        witness: Witness,
    },
    /// Monte Carlo outcome. Never a pass, at best "none found".
    Estimated {
        violations: u64,
        trials: u64,
        rate: f64,
        confidence: f64,
        interval: [f64; 2],
        #[serde(skip_serializing_if = "Option::is_none")]
        first_violation: Option<Event>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: Property,
    pub verdict: Verdict,
    /// Elementary operations estimated (exact) or events sampled (Monte Carlo).
    pub work: u128,
}

impl VerificationReport {
    pub fn is_pass(&self) -> bool {
        matches!(self.verdict, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        match &self.verdict {
            Verdict::Fail { .. } => true,
            Verdict::Estimated { violations, .. } => *violations > 0,
            Verdict::Pass => false,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Guard on the cost of exact verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkLimit(pub Option<u128>);

impl Default for WorkLimit {
    fn default() -> Self {
        WorkLimit(Some(DEFAULT_WORK_LIMIT))
    }
}

impl WorkLimit {
    pub const UNLIMITED: WorkLimit = WorkLimit(None);

    fn admit(&self, estimate: u128) -> Result<()> {
        match self.0 {
            Some(limit) if estimate > limit => Err(Error::WorkLimitExceeded { estimate, limit }),
            _ => Ok(()),
        }
    }
}

/// `n C(n-1,k-1) t`, saturating.
pub fn exact_work_estimate(n: usize, k: usize, t: usize) -> u128 {
    if k == 0 || k > n {
        return 0;
    }
    let events = binomial(n as u64 - 1, k as u64 - 1) * n as u64 * t as u64;
    events.to_u128().unwrap_or(u128::MAX)
}

pub fn check_runlength(m: &CodeMatrix, d: usize) -> VerificationReport {
    let verdict = m
        .columns()
        .iter()
        .enumerate()
        .find_map(|(j, c)| {
            c.gap_violation(d).map(|(a, b)| Witness::Runlength {
                column: j,
                rows: [a, b],
            })
        })
        .map_or(Verdict::Pass, |witness| Verdict::Fail { witness });
    VerificationReport {
        property: Property::Runlength { d },
        verdict,
        work: (m.rows() * m.cols()) as u128,
    }
}

pub fn check_column_weight(m: &CodeMatrix, w: usize) -> VerificationReport {
    let verdict = m
        .columns()
        .iter()
        .enumerate()
        .find(|(_, c)| c.weight() != w)
        .map_or(Verdict::Pass, |(j, c)| Verdict::Fail {
            witness: Witness::Weight {
                column: j,
                actual: c.weight(),
                expected: w,
            },
        });
    VerificationReport {
        property: Property::ColumnWeight { w },
        verdict,
        work: (m.rows() * m.cols()) as u128,
    }
}

fn check_k(m: &CodeMatrix, k: usize, p: usize) -> Result<()> {
    if k == 0 || p == 0 || p > k || k > m.cols() {
        return Err(Error::InvalidParams(format!(
            "need 1 <= p <= k <= n, got p = {p}, k = {k}, n = {}",
            m.cols()
        )));
    }
    Ok(())
}

/// Exact check that no column is covered by the union of any `k-1` others.
/// A failure carries the first violated `(i, B)` in search order.
pub fn is_superimposed_exact(m: &CodeMatrix, k: usize, limit: WorkLimit) -> Result<VerificationReport> {
    check_k(m, k, k)?;
    let work = exact_work_estimate(m.cols(), k, m.rows());
    limit.admit(work)?;
    let verdict = first_superimposed_violation(m, k).map_or(Verdict::Pass, |event| Verdict::Fail {
        witness: Witness::Event { event },
    });
    Ok(VerificationReport {
        property: Property::Superimposed { k },
        verdict,
        work,
    })
}

/// Exact selector check: every `k`-subset of columns must contain at least
/// `p` columns with a private row inside the subset.
pub fn is_selector_exact(m: &CodeMatrix, k: usize, p: usize, limit: WorkLimit) -> Result<VerificationReport> {
    check_k(m, k, p)?;
    // k C(n,k) t = n C(n-1,k-1) t
    let work = exact_work_estimate(m.cols(), k, m.rows());
    limit.admit(work)?;
    let verdict = first_selector_violation(m, k, p).map_or(Verdict::Pass, |event| Verdict::Fail {
        witness: Witness::Event { event },
    });
    Ok(VerificationReport {
        property: Property::Selector { k, p },
        verdict,
        work,
    })
}

/// Wilson score interval for `hits` successes in `trials`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> [f64; 2] {
    if trials == 0 {
        return [0.0, 1.0];
    }
    let n = trials as f64;
    let phat = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if hits == trials { 1.0 } else { (center + half).min(1.0) };
    [lo, hi]
}

/// Samples `trials` uniform events and reports the violation rate with a
/// 95% Wilson interval. Superimposed events (`p = k`) are drawn as a
/// uniform column then a uniform `(k-1)`-subset of the others; selector
/// events as a uniform `k`-subset then a uniform `(k-p+1)`-subset of it.
pub fn monte_carlo_check(m: &CodeMatrix, k: usize, p: usize, trials: u64, seed: u64) -> Result<VerificationReport> {
    check_k(m, k, p)?;
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let n = m.cols();
    let mut rng = rng_from_seed(seed);
    let mut violations = 0u64;
    let mut first_violation = None;
    let others_codec = SubsetCodec::new(n - 1, k - 1);
    let tuple_codec = SubsetCodec::new(n, k);
    let inner_codec = SubsetCodec::new(k, k - p + 1);
    for _ in 0..trials {
        let event = if p == k {
            let column = rand::Rng::gen_range(&mut rng, 0..n);
            let others = others_codec
                .sample(&mut rng)
                .into_iter()
                .map(|j| if j >= column { j + 1 } else { j })
                .collect();
            Event::Superimposed { column, others }
        } else {
            let tuple = tuple_codec.sample(&mut rng);
            let pick = inner_codec.sample(&mut rng);
            let covered: Vec<usize> = pick.iter().map(|&i| tuple[i]).collect();
            let rest = tuple.iter().copied().filter(|j| !covered.contains(j)).collect();
            Event::Selector { covered, rest }
        };
        if event.is_violated_in(m) {
            violations += 1;
            first_violation.get_or_insert(event);
        }
    }
    let property = if p == k {
        Property::Superimposed { k }
    } else {
        Property::Selector { k, p }
    };
    Ok(VerificationReport {
        property,
        verdict: Verdict::Estimated {
            violations,
            trials,
            rate: violations as f64 / trials as f64,
            confidence: 0.95,
            interval: wilson_interval(violations, trials, 1.959_963_984_540_054),
            first_violation,
        },
        work: trials as u128,
    })
}
