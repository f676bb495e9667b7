//! Logical row names versus physical row positions.
//!
//! Rows of an `n`-column tableau are counted from the bottom (physical
//! positions `1..=2n`). The algorithms name rows differently: the bottom `n`
//! rows keep their position, the top row keeps `2n`, and the band in between
//! is read top-down, so logical `n+1` is physical `2n-1`. The renaming is an
//! involution, so the same function converts in both directions.

use crate::error::{Error, Result};

/// Converts between logical row names and physical row positions.
pub fn rho(n: usize, i: usize) -> Result<usize> {
    if n == 0 || i == 0 || i > 2 * n {
        return Err(Error::OutOfRange {
            what: "row",
            value: i,
            lo: 1,
            hi: 2 * n,
        });
    }
    Ok(rho_unchecked(n, i))
}

#[inline]
pub(crate) fn rho_unchecked(n: usize, i: usize) -> usize {
    debug_assert!(i >= 1 && i <= 2 * n);
    if i <= n || i == 2 * n {
        i
    } else {
        3 * n - i
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printed_row_labels() {
        assert_eq!(rho(7, 8).unwrap(), 13);
        assert_eq!(rho(7, 14).unwrap(), 14);
        assert_eq!(rho(7, 3).unwrap(), 3);
        assert_eq!(rho(7, 13).unwrap(), 8);
    }

    #[test]
    fn involution_and_bijection() {
        for n in 1..=12 {
            let mut seen = vec![false; 2 * n + 1];
            for i in 1..=2 * n {
                let p = rho(n, i).unwrap();
                assert_eq!(rho(n, p).unwrap(), i);
                assert!(!seen[p]);
                seen[p] = true;
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(rho(3, 0).is_err());
        assert!(rho(3, 7).is_err());
        assert!(rho(0, 1).is_err());
    }
}
