use serde::{Deserialize, Serialize};

use crate::combinatorics::min_length;
use crate::error::{Error, Result};

/// Parameter record shared by bounds, construction and verification.
///
/// `p == k` means a superimposed code; `p < k` a selector. `w` and `t` are
/// optional: an absent `w` asks the bound sweeps to pick one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub p: usize,
    pub w: Option<usize>,
    pub t: Option<usize>,
}

impl CodeParams {
    /// Superimposed-code parameters (`p = k`).
    pub fn superimposed(k: usize, n: usize, d: usize) -> Self {
        CodeParams {
            k,
            n,
            d,
            p: k,
            w: None,
            t: None,
        }
    }

    pub fn selector(k: usize, n: usize, d: usize, p: usize) -> Self {
        CodeParams {
            p,
            ..Self::superimposed(k, n, d)
        }
    }

    pub fn with_weight(mut self, w: usize) -> Self {
        self.w = Some(w);
        self
    }

    pub fn with_length(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn is_selector(&self) -> bool {
        self.p < self.k
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if self.n < self.k {
            return Err(Error::InvalidParams(format!(
                "n = {} must be at least k = {}",
                self.n, self.k
            )));
        }
        if self.p == 0 || self.p > self.k {
            return Err(Error::InvalidParams(format!(
                "p = {} must lie in [1, k = {}]",
                self.p, self.k
            )));
        }
        if self.w == Some(0) {
            return Err(Error::InvalidParams("w must be at least 1".into()));
        }
        if let (Some(w), Some(t)) = (self.w, self.t) {
            if t < min_length(w, self.d) {
                return Err(Error::InvalidParams(format!(
                    "t = {t} is shorter than (w-1)d + w = {}",
                    min_length(w, self.d)
                )));
            }
        }
        if self.t == Some(0) {
            return Err(Error::InvalidParams("t must be at least 1".into()));
        }
        Ok(())
    }
}
