//! Achievability thresholds and lower bounds on the length `t` of
//! runlength-constrained superimposed codes and selectors.
//!
//! Thresholds backed by a finite inequality are computed as exact minimal
//! integers: event and dependency counts are big integers and every
//! comparison is decided without rounding (see [`exact`]). Leading-term
//! estimators, which drop unspecified lower-order terms, are plain `f64`
//! and are never marked as guaranteed.

pub mod exact;
mod ratio;

use std::f64::consts::{E, LN_2};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, min_length};
use crate::error::{Error, Result};
use crate::params::CodeParams;
use exact::{PowerCondition, Scale};

pub use ratio::{binomial_ratio_bound_check, binomial_ratio_bound_holds, pair_ratio_check, Fraction, RatioCheck};

/// Identifies one bound or estimator in a [`BoundReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Local-lemma threshold for superimposed codes.
    Lll,
    /// Union-bound threshold with the tighter per-event probability.
    Union,
    /// Union-bound threshold of Agarwal et al.
    Agarwal,
    /// q-ary expansion bound (Cheng et al. style), maximized over q.
    Cheng,
    /// Local-lemma threshold for selectors.
    Selector,
    /// Necessary length of any superimposed code.
    Lower,
    /// Leading terms of the simplified local-lemma bound at `w = k ln(n/k)`.
    LllLeading,
    /// Leading terms of the same bound before simplification.
    LllExplicit,
    /// Leading terms of Agarwal et al.'s explicit bound.
    AgarwalLeading,
    /// Leading terms of the q-ary bound at `q = (k-1)/ln 2`.
    ChengLeading,
    /// Leading terms of the selector bound at `w = k/(k-p+1) ln(n/k)`.
    SelectorLeading,
    /// Leading term of the two-stage test count, `2d ln(n/k)`.
    TwoStageLeading,
}

impl Method {
    pub const ESTIMATORS: [Method; 6] = [
        Method::LllLeading,
        Method::LllExplicit,
        Method::AgarwalLeading,
        Method::ChengLeading,
        Method::SelectorLeading,
        Method::TwoStageLeading,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Lll => "lll",
            Method::Union => "union",
            Method::Agarwal => "agarwal",
            Method::Cheng => "cheng",
            Method::Selector => "selector",
            Method::Lower => "lower",
            Method::LllLeading => "lll_leading",
            Method::LllExplicit => "lll_explicit",
            Method::AgarwalLeading => "agarwal_leading",
            Method::ChengLeading => "cheng_leading",
            Method::SelectorLeading => "selector_leading",
            Method::TwoStageLeading => "two_stage_leading",
        }
    }

    /// Whether the method is backed by an exact finite inequality.
    pub fn is_guaranteed(self) -> bool {
        matches!(
            self,
            Method::Lll | Method::Union | Method::Agarwal | Method::Selector | Method::Lower
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundValue {
    Exact(u64),
    Estimate(f64),
    Omitted(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub method: Method,
    pub t: BoundValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    pub guaranteed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundEntry {
    fn exact(method: Method, t: u64, w: Option<usize>) -> Self {
        BoundEntry {
            method,
            t: BoundValue::Exact(t),
            w,
            q: None,
            guaranteed: method.is_guaranteed(),
            note: None,
        }
    }

    pub fn exact_t(&self) -> Option<u64> {
        match self.t {
            BoundValue::Exact(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: CodeParams,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn get(&self, method: Method) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.method == method)
    }
}

/// Sweep limits for the free parameters `w` and `q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub w_max: Option<usize>,
    pub q_max: Option<usize>,
}

impl Sweep {
    /// `max(4, ceil(4 k ln(n/k)))` unless overridden.
    pub fn w_max(&self, k: usize, n: usize) -> usize {
        self.w_max.unwrap_or_else(|| {
            let guess = (4.0 * k as f64 * (n as f64 / k as f64).ln()).ceil();
            (guess.max(0.0) as usize).max(4)
        })
    }

    /// `max(8, 8k)` unless overridden.
    pub fn q_max(&self, k: usize) -> usize {
        self.q_max.unwrap_or((8 * k).max(8))
    }
}

fn check_kn(k: usize, n: usize) -> Result<()> {
    if k == 0 || n < k {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

fn check_w(w: usize) -> Result<()> {
    if w == 0 {
        return Err(Error::InvalidParams("w must be at least 1".into()));
    }
    Ok(())
}

/// `f = k [C(n,k) - C(n-k+1,k)]`, the number of events a superimposed
/// coverage event may depend on.
pub fn dependency_count_superimposed(k: usize, n: usize) -> BigUint {
    let (k64, n64) = (k as u64, n as u64);
    k64 * (binomial(n64, k64) - binomial(n64 - k64 + 1, k64))
}

/// `n C(n-1,k-1)`, the number of superimposed coverage events.
pub fn event_count_superimposed(k: usize, n: usize) -> BigUint {
    n as u64 * binomial(n as u64 - 1, k as u64 - 1)
}

/// `C(k,p-1) [C(n,k) - C(n-k,k)]`, the selector dependency count.
pub fn dependency_count_selector(k: usize, n: usize, p: usize) -> BigUint {
    let (k64, n64) = (k as u64, n as u64);
    binomial(k64, p as u64 - 1) * (binomial(n64, k64) - binomial(n64 - k64, k64))
}

/// `C(k,p-1) C(n,k)`, the number of selector events.
pub fn event_count_selector(k: usize, n: usize, p: usize) -> BigUint {
    binomial(k as u64, p as u64 - 1) * binomial(n as u64, k as u64)
}

/// Necessary length of any superimposed code: `min{n, 1 + (k-1)(d+1)}`.
pub fn lower_bound(k: usize, n: usize, d: usize) -> u64 {
    n.min(1 + (k.saturating_sub(1)) * (d + 1)) as u64
}

// The per-event probability bound ((w(k-1) - (w-1)/2) / (t - (w-1)d - (w-1)/2))^m
// is evaluated with numerator and denominator doubled to stay integral.
fn halfstep_condition(
    scale: Scale,
    count: BigUint,
    k: usize,
    d: usize,
    w: usize,
    exponent: usize,
    strict: bool,
) -> PowerCondition {
    let (k, d, w) = (k as u64, d as u64, w as u64);
    PowerCondition {
        scale,
        count,
        base: BigUint::from(2 * w * (k - 1) - (w - 1)),
        exponent: exponent as u32,
        den_mul: 2,
        den_sub: 2 * (w - 1) * d + (w - 1),
        strict,
    }
}

fn lll_condition(k: usize, d: usize, w: usize, f: BigUint) -> PowerCondition {
    halfstep_condition(Scale::E, f, k, d, w, w, false)
}

fn union_condition(k: usize, n: usize, d: usize, w: usize) -> PowerCondition {
    halfstep_condition(Scale::One, event_count_superimposed(k, n), k, d, w, w, true)
}

fn agarwal_condition(k: usize, n: usize, d: usize, w: usize) -> PowerCondition {
    let (k64, d64, w64) = (k as u64, d as u64, w as u64);
    PowerCondition {
        scale: Scale::One,
        count: event_count_superimposed(k, n),
        base: BigUint::from(w64 * (k64 - 1)),
        exponent: w as u32,
        den_mul: 1,
        den_sub: (2 * d64 + 1) * (w64 - 1),
        strict: true,
    }
}

fn selector_condition(k: usize, n: usize, d: usize, p: usize, w: usize) -> PowerCondition {
    halfstep_condition(
        Scale::E,
        dependency_count_selector(k, n, p),
        k,
        d,
        w,
        w * (k - p + 1),
        false,
    )
}

/// Whether `e f (..)^w <= 1` holds at length `t` (local-lemma condition).
pub fn lll_holds(k: usize, n: usize, d: usize, w: usize, t: usize) -> bool {
    t >= min_length(w, d)
        && (k == 1 || lll_condition(k, d, w, dependency_count_superimposed(k, n)).holds(t as u64))
}

/// Whether `n C(n-1,k-1) (..)^w < 1` holds at length `t`.
pub fn union_holds(k: usize, n: usize, d: usize, w: usize, t: usize) -> bool {
    t >= min_length(w, d) && (k == 1 || union_condition(k, n, d, w).holds(t as u64))
}

/// Whether `n C(n-1,k-1) (w(k-1) / (t - (2d+1)(w-1)))^w < 1` holds at `t`.
pub fn agarwal_holds(k: usize, n: usize, d: usize, w: usize, t: usize) -> bool {
    t >= agarwal_floor(d, w) && (k == 1 || agarwal_condition(k, n, d, w).holds(t as u64))
}

/// Whether the selector local-lemma condition holds at `t`.
pub fn selector_holds(k: usize, n: usize, d: usize, p: usize, w: usize, t: usize) -> bool {
    t >= min_length(w, d) && (k == 1 || selector_condition(k, n, d, p, w).holds(t as u64))
}

fn agarwal_floor(d: usize, w: usize) -> usize {
    min_length(w, d).max((2 * d + 1) * (w - 1) + 1)
}

/// Least `t` satisfying the local-lemma condition for superimposed codes
/// with column weight `w`. For `k = 1` there are no coverage events and
/// the answer is `(w-1)d + w`.
pub fn lll_min_length(k: usize, n: usize, d: usize, w: usize) -> Result<u64> {
    check_kn(k, n)?;
    check_w(w)?;
    lll_min_length_with_dependency(k, n, d, w, &dependency_count_superimposed(k, n))
}

/// As [`lll_min_length`] with a caller-supplied dependency count `f`.
pub fn lll_min_length_with_dependency(
    k: usize,
    n: usize,
    d: usize,
    w: usize,
    f: &BigUint,
) -> Result<u64> {
    check_kn(k, n)?;
    check_w(w)?;
    let floor = min_length(w, d) as u64;
    if k == 1 || f.is_zero() {
        return Ok(floor);
    }
    Ok(lll_condition(k, d, w, f.clone()).min_t(floor))
}

pub fn union_min_length(k: usize, n: usize, d: usize, w: usize) -> Result<u64> {
    check_kn(k, n)?;
    check_w(w)?;
    let floor = min_length(w, d) as u64;
    if k == 1 {
        return Ok(floor);
    }
    Ok(union_condition(k, n, d, w).min_t(floor))
}

pub fn agarwal_min_length(k: usize, n: usize, d: usize, w: usize) -> Result<u64> {
    check_kn(k, n)?;
    check_w(w)?;
    if k == 1 {
        return Ok(min_length(w, d) as u64);
    }
    Ok(agarwal_condition(k, n, d, w).min_t(agarwal_floor(d, w) as u64))
}

/// Least `t` satisfying the selector local-lemma condition.
pub fn selector_lll_min_length(k: usize, n: usize, d: usize, p: usize, w: usize) -> Result<u64> {
    check_kn(k, n)?;
    check_w(w)?;
    if p == 0 || p > k {
        return Err(Error::InvalidParams(format!("p = {p} must lie in [1, k = {k}]")));
    }
    let floor = min_length(w, d) as u64;
    if k == 1 {
        return Ok(floor);
    }
    Ok(selector_condition(k, n, d, p, w).min_t(floor))
}

/// A length together with the weight (and event count) that achieved it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestLength {
    pub t: u64,
    pub w: usize,
    /// Which inequality gave the minimum at `w`.
    pub method: Method,
}

/// Minimizes over `w in [1, w_max]` the smaller of the local-lemma and
/// union thresholds. Ties go to the smaller `w`, then to the local lemma.
pub fn lll_min_length_best_w(k: usize, n: usize, d: usize, sweep: &Sweep) -> Result<BestLength> {
    check_kn(k, n)?;
    let mut best: Option<BestLength> = None;
    for w in 1..=sweep.w_max(k, n) {
        let lll = lll_min_length(k, n, d, w)?;
        let union = union_min_length(k, n, d, w)?;
        let cand = if union < lll {
            BestLength { t: union, w, method: Method::Union }
        } else {
            BestLength { t: lll, w, method: Method::Lll }
        };
        if best.map_or(true, |b| cand.t < b.t) {
            best = Some(cand);
        }
    }
    Ok(best.expect("sweep range is non-empty"))
}

/// Sweeps a single method over `w` and returns its minimizer.
pub fn best_w_for(method: Method, params: &CodeParams, sweep: &Sweep) -> Result<BestLength> {
    let CodeParams { k, n, d, p, .. } = *params;
    check_kn(k, n)?;
    let mut best: Option<BestLength> = None;
    for w in 1..=sweep.w_max(k, n) {
        let t = match method {
            Method::Lll => lll_min_length(k, n, d, w)?,
            Method::Union => union_min_length(k, n, d, w)?,
            Method::Agarwal => agarwal_min_length(k, n, d, w)?,
            Method::Selector => selector_lll_min_length(k, n, d, p, w)?,
            other => {
                return Err(Error::InvalidParams(format!(
                    "{} has no weight parameter",
                    other.name()
                )))
            }
        };
        if best.map_or(true, |b| t < b.t) {
            best = Some(BestLength { t, w, method });
        }
    }
    Ok(best.expect("sweep range is non-empty"))
}

/// Minimizes the selector threshold over `w`.
pub fn selector_best_w(k: usize, n: usize, d: usize, p: usize, sweep: &Sweep) -> Result<BestLength> {
    best_w_for(Method::Selector, &CodeParams::selector(k, n, d, p), sweep)
}

/// `B_{k,q} = -log2[1 - (1 - 1/q)^(k-1)] / (q + d)`.
pub fn cheng_rate(k: usize, q: usize, d: usize) -> f64 {
    let miss = (1.0 - 1.0 / q as f64).powi(k as i32 - 1);
    -(1.0 - miss).log2() / (q + d) as f64
}

/// `k log2(n/k) + log2(k e^k)`.
fn cheng_numerator(k: usize, n: usize) -> f64 {
    let (k, n) = (k as f64, n as f64);
    k * (n / k).log2() + k.log2() + k * E.log2()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChengBound {
    pub t: u64,
    pub q: usize,
    pub rate: f64,
}

/// q-ary expansion bound: `B_k = max_q B_{k,q}` over `q in [2, q_max]`
/// by exhaustive sweep, `t = ceil((k log2(n/k) + log2(k e^k)) / B_k)`.
pub fn cheng_bound(k: usize, n: usize, d: usize, sweep: &Sweep) -> Result<ChengBound> {
    check_kn(k, n)?;
    if k < 2 {
        return Err(Error::InvalidParams("the q-ary bound needs k >= 2".into()));
    }
    let (mut q_best, mut rate) = (2, f64::NEG_INFINITY);
    for q in 2..=sweep.q_max(k) {
        let r = cheng_rate(k, q, d);
        if r > rate {
            (q_best, rate) = (q, r);
        }
    }
    Ok(ChengBound {
        t: (cheng_numerator(k, n) / rate).ceil() as u64,
        q: q_best,
        rate,
    })
}

/// Number of q-ary rows `t_q = ceil((k log2(n/k) + log2(k e^k)) / -log2[1 - (1-1/q)^(k-1)])`.
pub fn cheng_qary_rows(k: usize, n: usize, q: usize) -> Result<usize> {
    check_kn(k, n)?;
    if k < 2 || q < 2 {
        return Err(Error::InvalidParams("need k >= 2 and q >= 2".into()));
    }
    let per_row = -(1.0 - (1.0 - 1.0 / q as f64).powi(k as i32 - 1)).log2();
    Ok((cheng_numerator(k, n) / per_row).ceil() as usize)
}

/// Leading-term estimators. Each drops an unspecified remainder and is
/// reported with `guaranteed = false`. All entries are omitted unless
/// `k >= 2` and `n >= e k`.
pub fn asymptotic_estimates(k: usize, n: usize, d: usize, p: usize) -> Vec<BoundEntry> {
    let omitted = |method: Method, why: &str| BoundEntry {
        method,
        t: BoundValue::Omitted(why.to_string()),
        w: None,
        q: None,
        guaranteed: false,
        note: None,
    };
    if k < 2 || (n as f64) < E * k as f64 || p == 0 || p > k {
        let why = "requires k >= 2, n >= e*k and 1 <= p <= k";
        return Method::ESTIMATORS.iter().map(|&m| omitted(m, why)).collect();
    }
    let (kf, nf, df, pf) = (k as f64, n as f64, d as f64, p as f64);
    let ln_ratio = (nf / kf).ln();
    let log2_ratio = (nf / kf).log2();
    let e2 = E * E;
    // (k e^k)^(1 / (k ln(n/k)))
    let spread = ((kf.ln() + kf) / (kf * ln_ratio)).exp();
    let values = [
        (
            Method::LllLeading,
            LN_2 * df * kf * log2_ratio + e2 * kf * kf * log2_ratio
                - (3.0 * e2 - LN_2) / 2.0 * kf * log2_ratio
                - df,
        ),
        (
            Method::LllExplicit,
            df * (kf * ln_ratio - 1.0)
                + kf / 2.0 * ln_ratio
                + E * spread * kf * (kf - 1.5) * ln_ratio,
        ),
        (
            Method::AgarwalLeading,
            2.0 * df * (kf * ln_ratio - 1.0) + kf * ln_ratio + E * spread * kf * (kf - 1.0) * ln_ratio,
        ),
        (
            Method::ChengLeading,
            df * kf * log2_ratio
                + kf * (kf - 1.0) * log2_ratio / LN_2
                + ((kf - 1.0) / LN_2 + df) * (kf.log2() + kf * E.log2()),
        ),
        (
            Method::SelectorLeading,
            LN_2 * df * kf / (kf - pf + 1.0) * log2_ratio
                + LN_2 * (3.0 + 1.0 / E).exp() * kf * kf / (kf - pf + 1.0) * log2_ratio,
        ),
        (Method::TwoStageLeading, 2.0 * df * ln_ratio),
    ];
    values
        .into_iter()
        .map(|(method, v)| BoundEntry {
            method,
            t: BoundValue::Estimate(v),
            w: None,
            q: None,
            guaranteed: false,
            note: Some("leading terms only; remainder dropped".into()),
        })
        .collect()
}

/// Evaluates the requested methods at one parameter point. With `w`
/// absent, weight-dependent methods report their best `w` over the sweep.
pub fn bound_report(params: &CodeParams, methods: &[Method], sweep: &Sweep) -> Result<BoundReport> {
    params.validate()?;
    let CodeParams { k, n, d, p, w, .. } = *params;
    let mut entries = Vec::new();
    for &method in methods {
        match method {
            Method::Lll | Method::Union | Method::Agarwal | Method::Selector => {
                let entry = match w {
                    Some(w) => {
                        let t = match method {
                            Method::Lll => lll_min_length(k, n, d, w)?,
                            Method::Union => union_min_length(k, n, d, w)?,
                            Method::Agarwal => agarwal_min_length(k, n, d, w)?,
                            _ => selector_lll_min_length(k, n, d, p, w)?,
                        };
                        BoundEntry::exact(method, t, Some(w))
                    }
                    None => {
                        let best = best_w_for(method, params, sweep)?;
                        let mut e = BoundEntry::exact(method, best.t, Some(best.w));
                        e.note = Some(format!("best w over [1, {}]", sweep.w_max(k, n)));
                        e
                    }
                };
                entries.push(entry);
            }
            Method::Lower => {
                let mut e = BoundEntry::exact(Method::Lower, lower_bound(k, n, d), None);
                if params.is_selector() {
                    e.note = Some("applies to superimposed codes (p = k) only".into());
                }
                entries.push(e);
            }
            Method::Cheng => {
                entries.push(if k < 2 {
                    BoundEntry {
                        method,
                        t: BoundValue::Omitted("requires k >= 2".into()),
                        w: None,
                        q: None,
                        guaranteed: false,
                        note: None,
                    }
                } else {
                    let c = cheng_bound(k, n, d, sweep)?;
                    BoundEntry {
                        method,
                        t: BoundValue::Exact(c.t),
                        w: None,
                        q: Some(c.q),
                        guaranteed: false,
                        note: Some(format!("B_k = {:.6} over q in [2, {}]", c.rate, sweep.q_max(k))),
                    }
                });
            }
            m if Method::ESTIMATORS.contains(&m) => {
                entries.extend(asymptotic_estimates(k, n, d, p).into_iter().filter(|e| e.method == m));
            }
            _ => unreachable!(),
        }
    }
    Ok(BoundReport {
        params: *params,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependency_count_examples() {
        assert_eq!(dependency_count_superimposed(2, 10), BigUint::from(18u32));
        assert_eq!(dependency_count_superimposed(1, 7), BigUint::from(0u32));
        assert_eq!(dependency_count_superimposed(5, 5), BigUint::from(5u32));
        assert_eq!(event_count_superimposed(2, 10), BigUint::from(90u32));
    }

    #[test]
    fn worked_example_thresholds() {
        assert_eq!(lll_min_length(2, 10, 2, 3).unwrap(), 13);
        assert_eq!(union_min_length(2, 10, 2, 3).unwrap(), 14);
        assert_eq!(agarwal_min_length(2, 10, 2, 3).unwrap(), 24);
        assert!(lll_holds(2, 10, 2, 3, 13) && !lll_holds(2, 10, 2, 3, 12));
        assert!(union_holds(2, 10, 2, 3, 14) && !union_holds(2, 10, 2, 3, 13));
        assert!(agarwal_holds(2, 10, 2, 3, 24) && !agarwal_holds(2, 10, 2, 3, 23));
    }

    #[test]
    fn k_one_is_the_floor() {
        assert_eq!(lll_min_length(1, 10, 2, 3).unwrap(), 7);
        assert_eq!(union_min_length(1, 10, 2, 3).unwrap(), 7);
        assert_eq!(agarwal_min_length(1, 10, 2, 3).unwrap(), 7);
        assert_eq!(selector_lll_min_length(1, 10, 2, 1, 3).unwrap(), 7);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(3, 100, 5), 13);
        assert_eq!(lower_bound(50, 40, 3), 40);
        assert_eq!(lower_bound(1, 9, 4), 1);
        assert_eq!(lower_bound(2, 10, 2), 4);
    }

    #[test]
    fn best_w_sweep() {
        // computed independently by a high-precision sweep
        let best = lll_min_length_best_w(2, 10, 2, &Sweep::default()).unwrap();
        assert_eq!((best.t, best.w), (13, 2));
        for w in 1..=Sweep::default().w_max(2, 10) {
            assert!(best.t <= lll_min_length(2, 10, 2, w).unwrap());
        }
        assert!(best.t >= lower_bound(2, 10, 2));
    }

    #[test]
    fn selector_examples() {
        assert_eq!(selector_lll_min_length(2, 10, 2, 1, 2).unwrap(), 7);
        assert!(selector_holds(2, 10, 2, 1, 2, 7) && !selector_holds(2, 10, 2, 1, 2, 6));
        let best = selector_best_w(4, 64, 3, 3, &Sweep::default()).unwrap();
        assert_eq!((best.t, best.w), (71, 5));
        let best = selector_best_w(4, 10, 2, 3, &Sweep::default()).unwrap();
        assert_eq!((best.t, best.w), (36, 3));
        let best = selector_best_w(4, 15, 2, 3, &Sweep::default()).unwrap();
        assert_eq!((best.t, best.w), (43, 4));
    }

    #[test]
    fn selector_at_p_equals_k_uses_its_own_dependency_count() {
        for &(k, n, d, w, sel, lll) in &[(2, 10, 2, 3, 15, 13), (3, 30, 1, 4, 69, 63), (4, 64, 3, 6, 186, 179)] {
            let f = dependency_count_selector(k, n, k);
            assert_eq!(selector_lll_min_length(k, n, d, k, w).unwrap(), sel);
            assert_eq!(lll_min_length_with_dependency(k, n, d, w, &f).unwrap(), sel);
            assert_eq!(lll_min_length(k, n, d, w).unwrap(), lll);
        }
    }

    #[test]
    fn cheng_example() {
        let c = cheng_bound(2, 16, 1, &Sweep::default()).unwrap();
        assert_eq!((c.t, c.q), (25, 4));
        assert!((c.rate - 0.4).abs() < 1e-12);
        let c = cheng_bound(2, 8, 1, &Sweep::default()).unwrap();
        assert_eq!((c.t, c.q), (20, 4));
        assert_eq!(cheng_qary_rows(2, 8, 4).unwrap(), 4);
    }

    #[test]
    fn cheng_max_dominates_reference_point() {
        for k in 2..40 {
            let c = cheng_bound(k, 1000, 3, &Sweep::default()).unwrap();
            let q_ref = ((k as f64 - 1.0) / LN_2).ceil().max(2.0) as usize;
            assert!(c.rate >= cheng_rate(k, q_ref, 3));
        }
    }

    #[test]
    fn asymptotic_example_and_gate() {
        let est = asymptotic_estimates(4, 100, 10, 4);
        let v = match est[0].t {
            BoundValue::Estimate(v) => v,
            _ => panic!("expected an estimate"),
        };
        // direct evaluation of the printed terms at 80 digits
        assert!((v - 468.329_923_660_582_2).abs() < 1e-9, "{v}");
        assert!(est.iter().all(|e| !e.guaranteed));
        let gated = asymptotic_estimates(2, 5, 1, 2);
        assert!(gated.iter().all(|e| matches!(e.t, BoundValue::Omitted(_))));
    }

    #[test]
    fn report_worked_example() {
        let params = CodeParams::superimposed(2, 10, 2).with_weight(3);
        let methods = [Method::Lll, Method::Union, Method::Agarwal, Method::Lower];
        let r = bound_report(&params, &methods, &Sweep::default()).unwrap();
        let t = |m| r.get(m).unwrap().exact_t().unwrap();
        assert_eq!((t(Method::Lll), t(Method::Union), t(Method::Agarwal), t(Method::Lower)), (13, 14, 24, 4));
        assert!(bound_report(&CodeParams::superimposed(3, 2, 0), &methods, &Sweep::default()).is_err());
    }
}
