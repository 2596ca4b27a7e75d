//! Exact checks of the binomial ratio inequalities
//!
//! ```text
//! C(a,c) / C(b,c)       <= ((a - (c-1)/2) / (b - (c-1)/2))^c
//! a/b * (a-c)/(b-c)     <= ((a - c/2) / (b - c/2))^2
//! ```
//!
//! for positive integers `c <= a <= b`. Sides are kept as unreduced
//! integer fractions and compared by cross-multiplication.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: BigUint,
    pub den: BigUint,
}

impl Fraction {
    /// Reduced value. Costs a gcd, so avoid it for huge operands.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone().into(), self.den.clone().into())
    }

    fn le(&self, other: &Fraction) -> bool {
        &self.num * &other.den <= &other.num * &self.den
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCheck {
    pub lhs: Fraction,
    pub rhs: Fraction,
    pub holds: bool,
}

fn check_args(a: u64, b: u64, c: u64) -> Result<()> {
    if c == 0 || c > a || a > b {
        return Err(Error::InvalidParams(format!(
            "need positive integers c <= a <= b, got a = {a}, b = {b}, c = {c}"
        )));
    }
    Ok(())
}

/// Product of `lo..=hi` by balanced splitting; empty ranges give 1.
fn range_product(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        let mut acc = BigUint::from(lo);
        for x in lo + 1..=hi {
            acc *= x;
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

/// Checks `C(a,c)/C(b,c) <= ((2a-c+1)/(2b-c+1))^c` exactly.
pub fn binomial_ratio_bound_check(a: u64, b: u64, c: u64) -> Result<RatioCheck> {
    check_args(a, b, c)?;
    // C(a,c)/C(b,c) = prod_{i<c} (a-i)/(b-i)
    let lhs = Fraction {
        num: range_product(a - c + 1, a),
        den: range_product(b - c + 1, b),
    };
    let rhs = Fraction {
        num: num_traits::pow(BigUint::from(2 * a - c + 1), c as usize),
        den: num_traits::pow(BigUint::from(2 * b - c + 1), c as usize),
    };
    let holds = lhs.le(&rhs);
    Ok(RatioCheck { lhs, rhs, holds })
}

/// `ln prod_{i<c} (a-i)/(b-i)`, taking one log per block of factors.
/// Each factor lies in `(0, 1]`, so a block is closed before it underflows.
fn log_falling_ratio(a: u64, b: u64, c: u64) -> f64 {
    let mut total = 0.0;
    let mut block = 1.0f64;
    for i in 0..c {
        block *= (a - i) as f64 / (b - i) as f64;
        if block < 1e-200 {
            total += block.ln();
            block = 1.0;
        }
    }
    total + block.ln()
}

/// Truth value of the first inequality without materializing both sides.
///
/// Both logs are evaluated in `f64`; the comparison is accepted only when
/// the gap exceeds a bound on the accumulated rounding error, and falls
/// back to [`binomial_ratio_bound_check`] otherwise.
pub fn binomial_ratio_bound_holds(a: u64, b: u64, c: u64) -> Result<bool> {
    check_args(a, b, c)?;
    if a == b {
        return Ok(true);
    }
    let gap = (b - a) as f64;
    let lhs = log_falling_ratio(a, b, c);
    let rhs = c as f64 * (-2.0 * gap / (2 * b - c + 1) as f64).ln_1p();
    let slack = (c as f64 + 8.0) * (lhs.abs() + rhs.abs() + 1.0) * f64::EPSILON * 4.0;
    if lhs + slack < rhs {
        return Ok(true);
    }
    if lhs - slack > rhs {
        return Ok(false);
    }
    Ok(binomial_ratio_bound_check(a, b, c)?.holds)
}

/// Checks `a(a-c) / (b(b-c)) <= ((2a-c)/(2b-c))^2` exactly. At `a = b = c`
/// both sides are read in cross-multiplied form, `0 <= 0`.
pub fn pair_ratio_check(a: u64, b: u64, c: u64) -> Result<RatioCheck> {
    check_args(a, b, c)?;
    let lhs = Fraction {
        num: BigUint::from(a) * (a - c),
        den: BigUint::from(b) * (b - c),
    };
    let rhs = Fraction {
        num: num_traits::pow(BigUint::from(2 * a - c), 2),
        den: num_traits::pow(BigUint::from(2 * b - c), 2),
    };
    let holds = lhs.le(&rhs);
    Ok(RatioCheck { lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn worked_example() {
        let r = binomial_ratio_bound_check(4, 9, 3).unwrap();
        assert_eq!(r.lhs.to_rational(), q(1, 21));
        assert_eq!(r.rhs.to_rational(), q(27, 512));
        assert!(r.holds);
    }

    #[test]
    fn equality_and_boundary() {
        let r = binomial_ratio_bound_check(7, 7, 4).unwrap();
        assert_eq!(r.lhs.to_rational(), q(1, 1));
        assert_eq!(r.rhs.to_rational(), q(1, 1));
        assert!(r.holds);
        // a = c: lhs = 1 / C(b,c)
        let r = binomial_ratio_bound_check(3, 8, 3).unwrap();
        assert_eq!(r.lhs.to_rational(), q(1, 56));
        assert_eq!(r.rhs.to_rational(), q(64, 2744));
        assert!(r.holds);
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(binomial_ratio_bound_check(3, 2, 1).is_err());
        assert!(binomial_ratio_bound_check(3, 5, 4).is_err());
        assert!(binomial_ratio_bound_check(3, 5, 0).is_err());
        assert!(pair_ratio_check(2, 1, 1).is_err());
    }

    #[test]
    fn fast_decision_agrees_with_exact() {
        for b in 1..40 {
            for a in 1..=b {
                for c in 1..=a {
                    let exact = binomial_ratio_bound_check(a, b, c).unwrap().holds;
                    assert_eq!(binomial_ratio_bound_holds(a, b, c).unwrap(), exact, "{a} {b} {c}");
                }
            }
        }
        assert!(binomial_ratio_bound_holds(400_000, 1_000_000, 350_000).unwrap());
    }

    #[test]
    fn pair_check_small_grid() {
        for b in 1..30 {
            for a in 1..=b {
                for c in 1..=a {
                    assert!(pair_ratio_check(a, b, c).unwrap().holds, "{a} {b} {c}");
                }
            }
        }
    }
}
