//! Monotone cubic interpolation of CDF tables in log-log coordinates.
//!
//! For laws on `(0, ∞)` the map `ln t ↦ ln F(t)` is close to linear near
//! the lower boundary, which makes a shape-preserving cubic in those
//! coordinates far more accurate than linear interpolation of `F`.

/// Fritsch–Carlson monotone cubic Hermite interpolant.
#[derive(Debug, Clone)]
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Pchip {
    /// `x` must increase strictly and have the same length as `y`.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        assert_eq!(x.len(), y.len());
        assert!(!x.is_empty());
        let n = x.len();
        let mut d = vec![0.0; n];
        if n == 2 {
            let s = (y[1] - y[0]) / (x[1] - x[0]);
            d = vec![s, s];
        } else if n > 2 {
            let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
            let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
            for k in 1..n - 1 {
                if delta[k - 1] * delta[k] <= 0.0 {
                    d[k] = 0.0;
                } else {
                    let w1 = 2.0 * h[k] + h[k - 1];
                    let w2 = h[k] + 2.0 * h[k - 1];
                    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
                }
            }
            d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        Self { x, y, d }
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value at `x`, or `None` outside the node range.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let n = self.x.len();
        let (lo, hi) = self.x_range();
        if !(x >= lo && x <= hi) {
            return None;
        }
        if n == 1 {
            return Some(self.y[0]);
        }
        let k = (self.x.partition_point(|&v| v <= x)).clamp(1, n - 1) - 1;
        let h = self.x[k + 1] - self.x[k];
        let s = (x - self.x[k]) / h;
        let (y0, y1, d0, d1) = (self.y[k], self.y[k + 1], self.d[k], self.d[k + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        Some(
            (2.0 * s3 - 3.0 * s2 + 1.0) * y0
                + (s3 - 2.0 * s2 + s) * h * d0
                + (-2.0 * s3 + 3.0 * s2) * y1
                + (s3 - s2) * h * d1,
        )
    }
}

fn end_slope(h0: f64, h1: f64, m0: f64, m1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if d.signum() != m0.signum() {
        0.0
    } else if m0.signum() != m1.signum() && d.abs() > 3.0 * m0.abs() {
        3.0 * m0
    } else {
        d
    }
}

/// CDF table interpolated as `ln F` against `ln t` on positive nodes.
#[derive(Debug, Clone)]
pub struct LogLogCdf {
    inner: Pchip,
}

impl LogLogCdf {
    /// Nodes must be positive and increasing; values positive.
    pub fn new(nodes: &[f64], values: &[f64]) -> Self {
        let x = nodes.iter().map(|t| t.ln()).collect();
        let y = values.iter().map(|v| v.max(f64::MIN_POSITIVE).ln()).collect();
        Self { inner: Pchip::new(x, y) }
    }

    /// Builds directly from `ln t` nodes and `ln F` values.
    pub fn from_logs(log_nodes: Vec<f64>, log_values: Vec<f64>) -> Self {
        Self { inner: Pchip::new(log_nodes, log_values) }
    }

    pub fn log_cdf(&self, t: f64) -> Option<f64> {
        if t <= 0.0 {
            return None;
        }
        self.inner.eval(t.ln())
    }

    pub fn cdf(&self, t: f64) -> Option<f64> {
        self.log_cdf(t).map(|l| l.exp().min(1.0))
    }
}
