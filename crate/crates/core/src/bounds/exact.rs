//! Exact decision of threshold inequalities of the form
//!
//! ```text
//! s * count * num^m  (<= or <)  (a*t - b)^m,      s ∈ {1, e}
//! ```
//!
//! and search for the least integer `t` satisfying them. When `s = e` the
//! comparison is decided with rational enclosures of `e` that are refined
//! until the answer is certain; `e * x` is irrational for integer `x > 0`,
//! so refinement always terminates.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `e * lhs <= rhs`, decided exactly. `lhs = 0` always holds.
pub fn e_times_le(lhs: &BigUint, rhs: &BigUint) -> bool {
    if lhs.is_zero() {
        return true;
    }
    // P/N! = sum_{i<=N} 1/i!  <  e  <  P/N! + 1/(N * N!)
    let mut terms = 24u32;
    loop {
        let (p, fact) = e_partial_sum(terms);
        let n = BigUint::from(terms);
        let upper_num = &p * &n + 1u32;
        let scale = &fact * &n;
        if upper_num * lhs <= rhs * &scale {
            return true;
        }
        if p * lhs >= rhs * fact {
            return false;
        }
        terms *= 2;
    }
}

/// Returns `(P, N!)` with `P / N! = sum_{i=0}^{N} 1/i!`.
fn e_partial_sum(terms: u32) -> (BigUint, BigUint) {
    let mut p = BigUint::one();
    let mut fact = BigUint::one();
    for i in 1..=terms {
        p = p * i + 1u32;
        fact *= i;
    }
    (p, fact)
}

/// Natural logarithm of a big integer, as f64. `ln(0)` is `-inf`.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Which scalar multiplies the left side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    One,
    E,
}

/// `scale * count * base^exponent  (<=|<)  (den_mul * t - den_sub)^exponent`.
#[derive(Clone, Debug)]
pub struct PowerCondition {
    pub scale: Scale,
    pub count: BigUint,
    pub base: BigUint,
    pub exponent: u32,
    pub den_mul: u64,
    pub den_sub: u64,
    pub strict: bool,
}

impl PowerCondition {
    fn lhs(&self) -> BigUint {
        &self.count * num_traits::pow(self.base.clone(), self.exponent as usize)
    }

    pub fn holds(&self, t: u64) -> bool {
        let den = self.den_mul as u128 * t as u128;
        if den <= self.den_sub as u128 {
            return false;
        }
        let den = BigUint::from(den - self.den_sub as u128);
        let rhs = num_traits::pow(den, self.exponent as usize);
        let lhs = self.lhs();
        match (self.scale, self.strict) {
            (Scale::E, _) => e_times_le(&lhs, &rhs),
            (Scale::One, true) => lhs < rhs,
            (Scale::One, false) => lhs <= rhs,
        }
    }

    /// Real-valued crossing point, used only as a starting guess.
    fn estimate(&self) -> f64 {
        let scale = match self.scale {
            Scale::One => 0.0,
            Scale::E => 1.0,
        };
        let log_den = (scale + ln_big(&self.count)) / self.exponent as f64 + ln_big(&self.base);
        (self.den_sub as f64 + log_den.exp()) / self.den_mul as f64
    }

    /// Least `t >= floor` satisfying the condition.
    pub fn min_t(&self, floor: u64) -> u64 {
        if self.holds(floor) {
            return floor;
        }
        let guess = self.estimate();
        let mut hi = if guess.is_finite() && guess < 1e18 {
            (guess.ceil() as u64).max(floor + 1)
        } else {
            floor + 1
        };
        // the guess is usually exact; confirm cheaply before bisecting
        if self.holds(hi) && (hi == floor + 1 || !self.holds(hi - 1)) {
            return hi;
        }
        let mut lo = floor;
        if self.holds(hi) {
            // answer in (lo, hi]
        } else {
            let mut step = 1u64;
            lo = hi;
            hi = hi.saturating_add(step);
            while !self.holds(hi) {
                lo = hi;
                step = step.saturating_mul(2);
                hi = hi.saturating_add(step);
            }
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.holds(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}
