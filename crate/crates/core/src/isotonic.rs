//! Pool-adjacent-violators projection onto nondecreasing sequences.

/// Least-squares projection of `y` onto the nondecreasing cone.
///
/// Entries that are not involved in any violation are returned unchanged,
/// bit for bit.
pub fn isotonic_nondecreasing(y: &[f64]) -> Vec<f64> {
    // (sum, count) per pooled block
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(y.len());
    for &v in y {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (s1, c1) = blocks[blocks.len() - 1];
            let (s0, c0) = blocks[blocks.len() - 2];
            if s0 / c0 as f64 > s1 / c1 as f64 {
                blocks.pop();
                *blocks.last_mut().unwrap() = (s0 + s1, c0 + c1);
            } else {
                break;
            }
        }
    }
    let mut out = Vec::with_capacity(y.len());
    for (s, c) in blocks {
        let m = if c == 1 { s } else { s / c as f64 };
        out.extend(std::iter::repeat_n(m, c));
    }
    out
}

/// Projection onto nondecreasing sequences bounded in `[lo, hi]`.
///
/// Clipping the unconstrained isotonic fit gives the bounded fit.
pub fn isotonic_bounded(y: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    isotonic_nondecreasing(y).into_iter().map(|v| v.clamp(lo, hi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pools_violators() {
        assert_eq!(isotonic_nondecreasing(&[1.0, 3.0, 2.0, 4.0]), vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(isotonic_nondecreasing(&[3.0, 2.0, 1.0]), vec![2.0, 2.0, 2.0]);
        assert!(isotonic_nondecreasing(&[]).is_empty());
    }

    #[test]
    fn monotone_input_is_untouched() {
        let y = [0.1, 0.2000000000000001, 0.7, 0.7, 1.0];
        assert_eq!(isotonic_nondecreasing(&y), y.to_vec());
    }

    #[test]
    fn bounded_clips() {
        assert_eq!(isotonic_bounded(&[-1.0, 0.5, 2.0], 0.0, 1.0), vec![0.0, 0.5, 1.0]);
    }
}
