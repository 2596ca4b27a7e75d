//! Noiseless OR-channel group testing: syndromes, cover decoding, and the
//! one- and two-stage procedures.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::column::BitColumn;
use crate::error::{Error, Result};
use crate::matrix::CodeMatrix;

/// Test outcomes: bitwise OR of the positive columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome(pub BitColumn);

impl Syndrome {
    pub fn bits(&self) -> &BitColumn {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimReport {
    pub positives: BTreeSet<usize>,
    pub candidates: BTreeSet<usize>,
    pub stage1_tests: usize,
    pub stage2_tests: usize,
    pub total_tests: usize,
    pub recovered: BTreeSet<usize>,
    pub exact: bool,
    /// The positive set is larger than the decoding guarantee covers.
    pub out_of_contract: bool,
}

pub fn syndrome(m: &CodeMatrix, positives: &BTreeSet<usize>) -> Result<Syndrome> {
    if let Some(&bad) = positives.iter().find(|&&j| j >= m.cols()) {
        return Err(Error::ColumnOutOfRange { index: bad, n: m.cols() });
    }
    Ok(Syndrome(m.or_of(positives.iter().copied())))
}

/// Columns whose support lies inside the syndrome's support.
pub fn cover_decode(m: &CodeMatrix, f: &Syndrome) -> Result<BTreeSet<usize>> {
    if f.0.len() != m.rows() {
        return Err(Error::LengthMismatch {
            expected: m.rows(),
            actual: f.0.len(),
        });
    }
    Ok((0..m.cols()).filter(|&j| m.column(j).is_covered_by(&f.0)).collect())
}

/// One-stage decoding with a `k`-superimposed code. Exact recovery is
/// guaranteed for `|P| <= k-1`; larger sets are flagged out of contract.
pub fn nagt_simulate(m: &CodeMatrix, k: usize, positives: &BTreeSet<usize>) -> Result<SimReport> {
    let f = syndrome(m, positives)?;
    let candidates = cover_decode(m, &f)?;
    Ok(SimReport {
        exact: candidates == *positives,
        out_of_contract: positives.len() + 1 > k,
        positives: positives.clone(),
        recovered: candidates.clone(),
        candidates,
        stage1_tests: m.rows(),
        stage2_tests: 0,
        total_tests: m.rows(),
    })
}

/// Two-stage procedure with a `(2k, n, d, k+1)`-selector: cover-decode the
/// syndrome, then test every candidate individually.
pub fn two_stage_simulate(s: &CodeMatrix, k: usize, positives: &BTreeSet<usize>) -> Result<SimReport> {
    let f = syndrome(s, positives)?;
    let candidates = cover_decode(s, &f)?;
    // stage 2: one singleton test per candidate
    let recovered: BTreeSet<usize> = candidates.intersection(positives).copied().collect();
    Ok(SimReport {
        exact: recovered == *positives,
        out_of_contract: positives.len() > k,
        positives: positives.clone(),
        stage1_tests: s.rows(),
        stage2_tests: candidates.len(),
        total_tests: s.rows() + candidates.len(),
        candidates,
        recovered,
    })
}

/// Summary over many simulated positive sets.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SimAggregate {
    pub runs: usize,
    pub in_contract_runs: usize,
    pub exact_runs: usize,
    pub exactness_rate: f64,
    pub max_candidates: usize,
    pub max_total_tests: usize,
}

impl SimAggregate {
    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a SimReport>) -> Self {
        let mut agg = SimAggregate::default();
        for r in reports {
            agg.runs += 1;
            agg.in_contract_runs += usize::from(!r.out_of_contract);
            agg.exact_runs += usize::from(r.exact);
            agg.max_candidates = agg.max_candidates.max(r.candidates.len());
            agg.max_total_tests = agg.max_total_tests.max(r.total_tests);
        }
        agg.exactness_rate = if agg.runs == 0 {
            1.0
        } else {
            agg.exact_runs as f64 / agg.runs as f64
        };
        agg
    }
}
