//! Fixtures shared by the criterion benches.

use rlsc::construction::moser_tardos_construct;
use rlsc::{CodeMatrix, CodeParams};

/// A certified `(k, n, d)`-superimposed code of weight `w` and length `t`.
pub fn certified_code(k: usize, n: usize, d: usize, w: usize, t: usize, seed: u64) -> CodeMatrix {
    let params = CodeParams::superimposed(k, n, d).with_weight(w).with_length(t);
    moser_tardos_construct(&params, seed, None)
        .expect("fixture parameters sit above the local-lemma threshold")
        .0
}

/// A certified `(k, n, d, p)`-selector of weight `w` and length `t`.
pub fn certified_selector(k: usize, n: usize, d: usize, p: usize, w: usize, t: usize, seed: u64) -> CodeMatrix {
    let params = CodeParams::selector(k, n, d, p).with_weight(w).with_length(t);
    moser_tardos_construct(&params, seed, None)
        .expect("fixture parameters sit above the local-lemma threshold")
        .0
}
