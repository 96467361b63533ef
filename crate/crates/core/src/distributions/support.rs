use crate::error::{Error, Result};

/// An interval support with explicit endpoint closure.
///
/// Only intervals are representable. A degenerate closed interval `[x, x]`
/// is accepted for point masses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    lower: f64,
    upper: f64,
    lower_closed: bool,
    upper_closed: bool,
}

impl Support {
    pub fn new(lower: f64, upper: f64, lower_closed: bool, upper_closed: bool) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() {
            return Err(Error::InvalidSpec("support endpoints must not be NaN".into()));
        }
        if lower == f64::INFINITY || upper == f64::NEG_INFINITY {
            return Err(Error::InvalidSpec(format!(
                "support [{lower}, {upper}] is empty"
            )));
        }
        if (lower.is_infinite() && lower_closed) || (upper.is_infinite() && upper_closed) {
            return Err(Error::InvalidSpec(
                "an unbounded support endpoint cannot be closed".into(),
            ));
        }
        if lower > upper || (lower == upper && !(lower_closed && upper_closed)) {
            return Err(Error::InvalidSpec(format!(
                "support lower bound {lower} must be below upper bound {upper}"
            )));
        }
        Ok(Self { lower, upper, lower_closed, upper_closed })
    }

    /// The whole real line.
    pub fn real_line() -> Self {
        Self { lower: f64::NEG_INFINITY, upper: f64::INFINITY, lower_closed: false, upper_closed: false }
    }

    /// `[0, ∞)`.
    pub fn nonnegative() -> Self {
        Self { lower: 0.0, upper: f64::INFINITY, lower_closed: true, upper_closed: false }
    }

    /// `(0, ∞)`.
    pub fn positive() -> Self {
        Self { lower: 0.0, upper: f64::INFINITY, lower_closed: false, upper_closed: false }
    }

    pub fn closed(lower: f64, upper: f64) -> Result<Self> {
        Self::new(lower, upper, true, true)
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x, true, true)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lower_closed { t >= self.lower } else { t > self.lower };
        let below = if self.upper_closed { t <= self.upper } else { t < self.upper };
        above && below
    }

    /// True when `t` lies strictly between the endpoints.
    pub fn contains_interior(&self, t: f64) -> bool {
        t > self.lower && t < self.upper
    }

    /// Endpoint comparison up to a relative tolerance of 1e-12.
    ///
    /// Closure flags are ignored: two continuous laws on `[0, ∞)` and
    /// `(0, ∞)` have the same support in the measure sense.
    pub fn same_as(&self, other: &Support) -> bool {
        fn close(x: f64, y: f64) -> bool {
            if x.is_infinite() || y.is_infinite() {
                return x == y;
            }
            (x - y).abs() <= 1e-12 * (1.0 + x.abs().max(y.abs()))
        }
        close(self.lower, other.lower) && close(self.upper, other.upper)
    }

    /// The image `{t / factor : t ∈ D}` of this support.
    pub fn scaled_by_inverse(&self, factor: f64) -> Result<Self> {
        if factor == 0.0 || !factor.is_finite() {
            return Err(Error::InvalidArgument(format!("scale factor {factor} must be finite and nonzero")));
        }
        let (lo, hi) = (self.lower / factor, self.upper / factor);
        if factor > 0.0 {
            Self::new(lo, hi, self.lower_closed, self.upper_closed)
        } else {
            Self::new(hi, lo, self.upper_closed, self.lower_closed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inverted_and_closed_unbounded() {
        assert!(Support::new(1.0, 0.0, true, true).is_err());
        assert!(Support::new(0.0, f64::INFINITY, true, true).is_err());
        assert!(Support::new(0.0, 0.0, true, false).is_err());
        assert!(Support::point(2.0).unwrap().is_point());
    }

    #[test]
    fn scaling_by_negative_flips_endpoints() {
        let s = Support::closed(1.0, 2.0).unwrap().scaled_by_inverse(-2.0).unwrap();
        assert_eq!((s.lower(), s.upper()), (-1.0, -0.5));
        let p = Support::positive().scaled_by_inverse(0.5).unwrap();
        assert_eq!(p.upper(), f64::INFINITY);
        assert!(!p.contains(0.0));
    }

    #[test]
    fn same_as_ignores_closure() {
        assert!(Support::positive().same_as(&Support::nonnegative()));
        assert!(!Support::positive().same_as(&Support::real_line()));
    }
}
