//! Gap arithmetic for the hardness factor.
//!
//! With a Label Cover size `N`, `g(N) = 2^(log2(N)^0.99)`, completeness
//! parameter `k_c = N`, soundness parameter `k_s = g(N)·N/2` and
//! `ell = ceil(k_s + 1)`, the achieved factor is `(k_s + ell) / (k_c + ell)`,
//! bounded below by `2 - (2N + 4) / (g(N)·N/2 + N + 2)`.
//!
//! `g(N)` is not rational in general. The exponent `log2(N)^0.99` is
//! evaluated in f64, stored as unsigned 32.32 fixed point, and rounded up to
//! an integer `e`, so `g(N) = 2^e` exactly. Everything downstream is exact.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

const FRAC_BITS: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRatio {
    pub n: u64,
    /// `log2(N)^0.99` as 32.32 fixed point.
    pub exponent_fixed: u64,
    /// `ceil` of the fixed-point exponent.
    pub g_exponent: u32,
    pub g: BigUint,
    pub k_c: BigRational,
    pub k_s: BigRational,
    pub ell: BigInt,
    pub ratio: BigRational,
    pub lower_bound: BigRational,
}

#[derive(Serialize)]
struct GapRatioJson {
    n: u64,
    exponent_fixed: u64,
    g_exponent: u32,
    g: String,
    k_c: String,
    k_s: String,
    ell: String,
    ratio: String,
    ratio_approx: f64,
    lower_bound: String,
    lower_bound_approx: f64,
    bound_holds: bool,
}

fn approx(q: &BigRational) -> f64 {
    // numerators can exceed f64 range for huge N; scale both sides down first
    let (num, den) = (q.numer(), q.denom());
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

impl GapRatio {
    pub fn bound_holds(&self) -> bool {
        self.ratio >= self.lower_bound
    }

    pub fn ratio_f64(&self) -> f64 {
        approx(&self.ratio)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GapRatioJson {
            n: self.n,
            exponent_fixed: self.exponent_fixed,
            g_exponent: self.g_exponent,
            g: self.g.to_string(),
            k_c: self.k_c.to_string(),
            k_s: self.k_s.to_string(),
            ell: self.ell.to_string(),
            ratio: self.ratio.to_string(),
            ratio_approx: self.ratio_f64(),
            lower_bound: self.lower_bound.to_string(),
            lower_bound_approx: approx(&self.lower_bound),
            bound_holds: self.bound_holds(),
        })
        .expect("plain struct")
    }
}

/// The pinned fixed-point exponent `log2(N)^0.99`.
pub fn exponent_fixed(n: u64) -> u64 {
    let e = (n as f64).log2().powf(0.99);
    (e * (1u64 << FRAC_BITS) as f64).round() as u64
}

/// `ceil(a / b)` for positive operands.
fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a + b - 1) / b
}

pub fn gap_ratio(n: u64) -> Result<GapRatio> {
    if n < 2 {
        return Err(Error::Parameter(format!("N must be at least 2, got {n}")));
    }
    let fixed = exponent_fixed(n);
    let g_exponent = fixed.div_ceil(1u64 << FRAC_BITS) as u32;
    let g = BigUint::one() << g_exponent;
    let gi = BigInt::from(g.clone());
    let ni = BigInt::from(n);
    let two = BigInt::from(2);

    let k_c = BigRational::from_integer(ni.clone());
    let k_s = BigRational::new(&gi * &ni, two.clone());
    // ceil(g·N/2 + 1)
    let ell = ceil_div(&(&gi * &ni + &two), &two);
    let ell_q = BigRational::from_integer(ell.clone());
    let ratio = (&k_s + &ell_q) / (&k_c + &ell_q);
    let lower_bound = BigRational::from_integer(two.clone())
        - BigRational::from_integer(&two * &ni + BigInt::from(4))
            / (&k_s + &k_c + BigRational::from_integer(two.clone()));
    debug_assert!(ratio >= lower_bound);
    debug_assert!(!ratio.is_zero());
    Ok(GapRatio {
        n,
        exponent_fixed: fixed,
        g_exponent,
        g,
        k_c,
        k_s,
        ell,
        ratio,
        lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn n_equals_two_by_hand() {
        // log2 2 = 1, g = 2, k_s = 2, ell = 3, ratio = 5/5
        let r = gap_ratio(2).unwrap();
        assert_eq!(r.g_exponent, 1);
        assert_eq!(r.g, BigUint::from(2u32));
        assert_eq!(r.ell, BigInt::from(3));
        assert_eq!(r.ratio, q(1, 1));
        assert_eq!(r.lower_bound, q(2, 3));
    }

    #[test]
    fn n_equals_1024_by_hand() {
        // 10^0.99 = 9.772..., ceil 10, g = 1024, k_s = 2^19, ell = 2^19 + 1
        let r = gap_ratio(1024).unwrap();
        assert_eq!(r.g_exponent, 10);
        let ks = 1i64 << 19;
        assert_eq!(r.ratio, q(2 * ks + 1, 1024 + ks + 1));
        assert!(r.ratio > q(1, 1) && r.ratio < q(2, 1));
        assert!(r.bound_holds());
    }

    #[test]
    fn exponent_matches_definition_on_powers_of_two() {
        for k in 1..=20u32 {
            let r = gap_ratio(1u64 << k).unwrap();
            let real = (k as f64).powf(0.99);
            assert!((r.g_exponent as f64 - real) < 1.0 && r.g_exponent as f64 >= real);
        }
    }

    #[test]
    fn non_power_of_two_and_large() {
        let r = gap_ratio(1000).unwrap();
        assert!(r.bound_holds());
        let r = gap_ratio(u64::MAX).unwrap();
        assert!(r.bound_holds());
        assert!(r.ratio < q(2, 1));
        assert!(r.ratio_f64() <= 2.0);
    }

    #[test]
    fn rejects_small_n() {
        assert!(gap_ratio(1).is_err());
        assert!(gap_ratio(0).is_err());
    }
}
