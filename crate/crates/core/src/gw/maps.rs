use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// The union bound for `b` disjoint paths of length `a` in a random map on
/// `t` points, `t! / ((t - (a+1) b)! b!) * t^{-ab}`, with its exponential
/// upper bound `exp(b + b ln(t/b) - C((a+1)b, 2) / t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapUnionBound {
    pub t: u64,
    pub a: u64,
    pub b: u64,
    /// `ln` of the exact term via log-factorials.
    pub ln_exact_factorial: f64,
    /// `ln` of the exact term via `t^b / b! * prod (1 - i/t)`.
    pub ln_exact_product: f64,
    pub ln_exponential_bound: f64,
    pub exact_term: f64,
    pub exponential_bound: f64,
}

pub fn map_union_bound(t: u64, a: u64, b: u64) -> Result<MapUnionBound> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("a and b must be at least 1".into()));
    }
    let k = (a + 1)
        .checked_mul(b)
        .filter(|&k| k <= t)
        .ok_or_else(|| Error::Domain(format!("(a+1)b exceeds t = {t}")))?;
    let (tf, af, bf, kf) = (t as f64, a as f64, b as f64, k as f64);
    let ln_b_fact = ln_gamma(bf + 1.0);

    let ln_exact_factorial =
        ln_gamma(tf + 1.0) - ln_gamma(tf - kf + 1.0) - ln_b_fact - af * bf * tf.ln();
    let ln_exact_product =
        bf * tf.ln() - ln_b_fact + (1..k).map(|i| (-(i as f64) / tf).ln_1p()).sum::<f64>();
    let ln_exponential_bound = bf + bf * (tf / bf).ln() - kf * (kf - 1.0) / 2.0 / tf;

    if ln_exact_product > ln_exponential_bound + 1e-12 * ln_exponential_bound.abs().max(1.0) {
        return Err(Error::Contract(format!(
            "exact term exceeds its exponential bound at (t, a, b) = ({t}, {a}, {b})"
        )));
    }
    Ok(MapUnionBound {
        t,
        a,
        b,
        ln_exact_factorial,
        ln_exact_product,
        ln_exponential_bound,
        exact_term: exact_term(t, a * b, b, ln_exact_product),
        exponential_bound: ln_exponential_bound.exp(),
    })
}

/// Direct floating-point product when it stays in range, so small cases come
/// out exact; otherwise the exponential of the log form.
fn exact_term(t: u64, ab: u64, b: u64, ln_term: f64) -> f64 {
    if ln_term.abs() > 600.0 {
        return ln_term.exp();
    }
    let tf = t as f64;
    let mut term = 1.0;
    for i in 0..ab {
        term *= (t - i) as f64 / tf;
    }
    for j in 1..=b {
        term *= (t - ab - j + 1) as f64 / j as f64;
    }
    if term.is_normal() {
        term
    } else {
        ln_term.exp()
    }
}
