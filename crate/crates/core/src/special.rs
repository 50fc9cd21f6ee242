//! Dilogarithm and trilogarithm on the closed unit disk.
//!
//! Near the origin the defining power series is summed directly. Elsewhere
//! the expansion in `μ = log w` is used:
//!
//! ```text
//! Li_s(e^μ) = μ^{s-1}/(s-1)! · (H_{s-1} - log(-μ)) + Σ_{k ≠ s-1} ζ(s-k) μ^k / k!
//! ```
//!
//! which converges for `|μ| < 2π`. For `|w| ≥ 1/2` we have `|μ| ≤ 3.3`.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;

const ZETA3: f64 = 1.202_056_903_159_594_3;
const SERIES_RADIUS: f64 = 0.5;
const EVEN_ZETA_TERMS: usize = 40;

/// `ζ(2m)` for `m = 1..=EVEN_ZETA_TERMS` (index `m - 1`).
fn even_zeta() -> &'static [f64; EVEN_ZETA_TERMS] {
    static TABLE: OnceLock<[f64; EVEN_ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; EVEN_ZETA_TERMS];
        out[0] = PI.powi(2) / 6.0;
        out[1] = PI.powi(4) / 90.0;
        for (m, slot) in out.iter_mut().enumerate().skip(2) {
            let s = 2.0 * (m + 1) as f64;
            let n_max = 1000.0_f64;
            let mut sum = 0.0;
            for n in (1..1000).rev() {
                sum += (n as f64).powf(-s);
            }
            // Euler–Maclaurin tail from n_max on.
            sum += n_max.powf(1.0 - s) / (s - 1.0) + 0.5 * n_max.powf(-s);
            *slot = sum;
        }
        out
    })
}

fn power_series(w: Complex64, order: i32) -> Complex64 {
    let mut term = w;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..200 {
        let add = term / (n as f64).powi(order);
        sum += add;
        if add.norm() < 1e-17 * sum.norm().max(1e-300) {
            break;
        }
        term *= w;
    }
    sum
}

/// Tail `Σ_{m≥1} ζ(1-2m) μ^{2m-1+s} / (2m-1+s)!` of the log-expansion,
/// written with `ζ(1-2m)/(2m-1)! = (-1)^m 2 ζ(2m) / (2π)^{2m}`.
fn log_expansion_tail(mu: Complex64, order: i32) -> Complex64 {
    let zeta = even_zeta();
    let mu2 = mu * mu;
    let scale = 1.0 / (TAU * TAU);
    // μ^{2m-1+s}: start from μ^{1+s} at m = 1.
    let mut mu_pow = mu.powi(1 + order);
    let mut coef_pow = scale;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 1..=EVEN_ZETA_TERMS {
        let two_m = 2 * m;
        // (2m-1)! / (2m-1+s)!
        let falling: f64 = (two_m..two_m + order as usize).map(|j| j as f64).product();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let add = mu_pow * (sign * 2.0 * zeta[m - 1] * coef_pow / falling);
        sum += add;
        if add.norm() < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
        mu_pow *= mu2;
        coef_pow *= scale;
    }
    sum
}

/// Principal dilogarithm `Li₂(w)` for `|w| ≤ 1`.
pub fn li2(w: Complex64) -> Complex64 {
    debug_assert!(w.norm() <= 1.0 + 1e-12, "li2 evaluated outside the closed disk");
    if w.norm() <= SERIES_RADIUS {
        return power_series(w, 2);
    }
    let mu = w.ln();
    let zeta2 = even_zeta()[0];
    if mu.norm() == 0.0 {
        return Complex64::new(zeta2, 0.0);
    }
    // k = 0: ζ(2); k = 1: μ(1 - log(-μ)); k = 2: ζ(0) μ²/2 = -μ²/4.
    let head = Complex64::new(zeta2, 0.0) + mu * (1.0 - (-mu).ln()) - mu * mu * 0.25;
    head + log_expansion_tail(mu, 2)
}

/// Principal trilogarithm `Li₃(w)` for `|w| ≤ 1`.
pub fn li3(w: Complex64) -> Complex64 {
    debug_assert!(w.norm() <= 1.0 + 1e-12, "li3 evaluated outside the closed disk");
    if w.norm() <= SERIES_RADIUS {
        return power_series(w, 3);
    }
    let mu = w.ln();
    let zeta2 = even_zeta()[0];
    if mu.norm() == 0.0 {
        return Complex64::new(ZETA3, 0.0);
    }
    // k = 0, 1: ζ(3) + ζ(2)μ; k = 2: μ²/2 (3/2 - log(-μ)); k = 3: ζ(0) μ³/6.
    let mu2 = mu * mu;
    let head = Complex64::new(ZETA3, 0.0) + mu * zeta2 + mu2 * 0.5 * (1.5 - (-mu).ln())
        - mu2 * mu / 12.0;
    head + log_expansion_tail(mu, 3)
}
