//! Grids, finite-difference weights and quadrature on nonuniform nodes.

/// Distances `0 = s_0 < ... < s_n = length`. With `stretch > 0` nodes cluster
/// towards the far end: spacing there shrinks by a factor `1 - stretch`.
pub fn side_offsets(length: f64, n: usize, stretch: f64) -> Vec<f64> {
    (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            if i == n {
                length
            } else {
                length * (t + stretch * (t - t * t))
            }
        })
        .collect()
}

/// Two-sided grid on `[-left, right]` with `n_points` nodes and `0` as a node.
/// Returns the grid and the index of `0`.
pub fn two_sided(
    left: f64,
    right: f64,
    n_points: usize,
    stretch_left: f64,
    stretch_right: f64,
) -> (Vec<f64>, usize) {
    let intervals = n_points.saturating_sub(1).max(2);
    let quarter = (intervals / 4).max(1);
    let prop = ((intervals as f64) * left / (left + right)).round() as usize;
    let n_left = prop.clamp(quarter, intervals - quarter);
    let n_right = intervals - n_left;
    let mut x: Vec<f64> = side_offsets(left, n_left, stretch_left)
        .into_iter()
        .rev()
        .map(|s| -s)
        .collect();
    x.pop();
    let phase = x.len();
    x.extend(side_offsets(right, n_right, stretch_right));
    if let Some(z) = x.get_mut(phase) {
        *z = 0.0;
    }
    (x, phase)
}

/// Weights for the `m`-th derivative at `z` from nodes `xs` (Fornberg).
pub fn fornberg(z: f64, xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// `m`-th derivative of samples `y` at every node, using a `width`-point
/// stencil centred where possible and shifted inwards near the ends.
pub fn derivative(x: &[f64], y: &[f64], m: usize, width: usize) -> Vec<f64> {
    let n = x.len();
    let w = width.min(n);
    let half = w / 2;
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half).min(n - w);
            let wts = fornberg(x[i], &x[lo..lo + w], m);
            wts.iter().zip(&y[lo..lo + w]).map(|(a, b)| a * b).sum()
        })
        .collect()
}

/// Trapezoid weights, so that `sum w_i g_i ~ ∫ g`.
pub fn trapezoid_weights(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut w = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let h = 0.5 * (x[i + 1] - x[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    w
}

/// Cumulative trapezoid of `g`, anchored to zero at node `anchor`.
pub fn cumulative_trapezoid(x: &[f64], g: &[f64], anchor: usize) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; n];
    for i in anchor + 1..n {
        out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (g[i] + g[i - 1]);
    }
    for i in (0..anchor).rev() {
        out[i] = out[i + 1] - 0.5 * (x[i + 1] - x[i]) * (g[i] + g[i + 1]);
    }
    out
}

/// Cubic Hermite interpolation of `(y, dy)` samples at `t`; clamps outside.
pub fn hermite(x: &[f64], y: &[f64], dy: &[f64], t: f64) -> f64 {
    let n = x.len();
    if t <= x[0] {
        return y[0];
    }
    if t >= x[n - 1] {
        return y[n - 1];
    }
    let i = x.partition_point(|&v| v <= t).saturating_sub(1).min(n - 2);
    let h = x[i + 1] - x[i];
    let s = (t - x[i]) / h;
    let (s2, s3) = (s * s, s * s * s);
    (2.0 * s3 - 3.0 * s2 + 1.0) * y[i]
        + (s3 - 2.0 * s2 + s) * h * dy[i]
        + (-2.0 * s3 + 3.0 * s2) * y[i + 1]
        + (s3 - s2) * h * dy[i + 1]
}

/// Least-squares line `y = intercept + slope x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
    }
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fornberg_uniform_second_derivative() {
        let w = fornberg(0.0, &[-1.0, 0.0, 1.0], 2);
        assert_eq!(w, vec![1.0, -2.0, 1.0]);
        let w = fornberg(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 1);
        let expect = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_exact_on_quartic_nonuniform() {
        let x: Vec<f64> = (0..30).map(|i| (i as f64 * 0.1).powf(1.3)).collect();
        let y: Vec<f64> = x.iter().map(|t| t.powi(4) - t).collect();
        let d = derivative(&x, &y, 1, 5);
        for (t, v) in x.iter().zip(d) {
            assert!((v - (4.0 * t.powi(3) - 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn two_sided_contains_zero() {
        let (x, p) = two_sided(30.0, 3.0, 4000, 0.0, 0.9);
        assert_eq!(x.len(), 4000);
        assert_eq!(x[p], 0.0);
        assert!(x.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(x[0], -30.0);
        assert_eq!(x[3999], 3.0);
    }

    #[test]
    fn cumulative_and_hermite() {
        let x: Vec<f64> = (0..101).map(|i| -1.0 + i as f64 * 0.02).collect();
        let g: Vec<f64> = x.iter().map(|_| 2.0).collect();
        let c = cumulative_trapezoid(&x, &g, 50);
        assert!((c[0] + 2.0).abs() < 1e-14 && (c[100] - 2.0).abs() < 1e-14);
        let y: Vec<f64> = x.iter().map(|t| t.powi(3)).collect();
        let dy: Vec<f64> = x.iter().map(|t| 3.0 * t * t).collect();
        assert!((hermite(&x, &y, &dy, 0.333) - 0.333f64.powi(3)).abs() < 1e-14);
    }
}
