//! Small numerical helpers shared by the analysis routines.

/// 1/φ, the golden-section shrink factor.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximizes a unimodal `func` on `[lo, hi]` by golden-section search.
/// Returns `(argmax, max)`.
pub(crate) fn golden_max<F>(func: F, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = func(x1);
    let mut f2 = func(x2);
    for _ in 0..200 {
        if hi - lo <= xtol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = func(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = func(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Finds `t ∈ [lo, hi]` with `func(t) = target` for increasing `func`.
pub(crate) fn bisect_increasing<F>(func: F, mut lo: f64, mut hi: f64, target: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if func(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Least-squares polynomial fit; returns coefficients `c[0] + c[1] x + ...`.
///
/// Abscissae are centered and scaled before forming the normal equations.
pub(crate) fn polyfit(xs: &[f64], ys: &[f64], degree: usize) -> Vec<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = degree + 1;
    assert!(xs.len() >= n, "not enough points for the requested degree");
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let spread = xs
        .iter()
        .map(|x| (x - mean).abs())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);

    let mut ata = vec![vec![0.0; n]; n];
    let mut aty = vec![0.0; n];
    for (&x, &y) in xs.iter().zip(ys) {
        let u = (x - mean) / spread;
        let powers: Vec<f64> = (0..n).map(|k| u.powi(k as i32)).collect();
        for i in 0..n {
            aty[i] += powers[i] * y;
            for j in 0..n {
                ata[i][j] += powers[i] * powers[j];
            }
        }
    }
    let scaled = solve_dense(ata, aty);

    // Expand Σ b_k ((x - mean)/spread)^k into powers of x.
    let mut coeffs = vec![0.0; n];
    for (k, b) in scaled.iter().enumerate() {
        let scale = b / spread.powi(k as i32);
        for (j, c) in coeffs.iter_mut().enumerate().take(k + 1) {
            *c += scale * binomial(k, j) * (-mean).powi((k - j) as i32);
        }
    }
    coeffs
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / p;
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x
}
