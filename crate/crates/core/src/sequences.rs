//! Exact polynomial recurrence for `D_n(x)`, the sequence `r_n`, embedded
//! reference prefixes, and a reader for `<index> <value>` b-files.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::enumerate;
use crate::error::{Error, Result};

/// `|DC_n|` for `n = 0..=5` as published; the entry for `n = 6` was
/// obtained here by exhaustive enumeration.
pub const H_PREFIX: [u64; 7] = [1, 1, 2, 7, 38, 295, 3098];

/// Genocchi numbers `G_2, G_4, ..., G_12`; `|SP_n| = G_PREFIX[n]`.
pub const G_PREFIX: [u64; 6] = [1, 1, 3, 17, 155, 2073];

/// `r_0..=r_4` as published.
pub const R_PREFIX: [u64; 5] = [1, 2, 10, 98, 1594];

/// Dense polynomial with big-integer coefficients, `coeffs[k]` being the
/// coefficient of `x^k`. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(x + a)`, expanded with binomial coefficients.
    pub fn shift(&self, a: i64) -> Self {
        let a = BigInt::from(a);
        let d = self.coeffs.len();
        let mut out = vec![BigInt::zero(); d];
        for (k, c) in self.coeffs.iter().enumerate() {
            // (x + a)^k = sum_m C(k, m) a^(k - m) x^m
            let mut binom = BigInt::one();
            for m in (0..=k).rev() {
                let pow = num_traits::pow(a.clone(), k - m);
                out[m] += c * &binom * pow;
                // C(k, m - 1) = C(k, m) * m / (k - m + 1)
                if m > 0 {
                    binom = binom * BigInt::from(m) / BigInt::from(k - m + 1);
                }
            }
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[BigInt], k: usize| v.get(k).cloned().unwrap_or_default();
        Self::new(
            (0..len)
                .map(|k| get(&self.coeffs, k) - get(&other.coeffs, k))
                .collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match k {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => {}
                _ => write!(f, "{abs}")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `D_0 = 1`, `D_{n+1}(x) = (x+1)(x+2) D_n(x+2) - x(x+1) D_n(x)`.
pub fn poly_d(n: usize) -> IntPolynomial {
    let q1 = IntPolynomial::from_i64(&[2, 3, 1]); // (x+1)(x+2)
    let q2 = IntPolynomial::from_i64(&[0, 1, 1]); // x(x+1)
    let mut d = IntPolynomial::one();
    for _ in 0..n {
        d = q1.mul(&d.shift(2)).sub(&q2.mul(&d));
    }
    d
}

/// `r_n = D_n(1) / 2^n`, failing if the division is not exact.
pub fn r_n(n: usize) -> Result<BigInt> {
    let value = poly_d(n).eval(&BigInt::one());
    let pow = BigInt::one() << n;
    if (&value % &pow).is_zero() {
        Ok(value / pow)
    } else {
        Err(Error::InexactDivision { n })
    }
}

/// `r_0..=r_k`.
pub fn r_seq(k: usize) -> Result<Vec<BigInt>> {
    (0..=k).map(r_n).collect()
}

/// `sum over SP_n of 2^ndf(f)`, by enumeration.
pub fn weighted_pistol_sum(n: usize) -> BigInt {
    enumerate::pistols_par(n)
        .par_iter()
        .map(|f| BigInt::one() << f.ndf())
        .reduce(BigInt::zero, |a, b| a + b)
}

/// Outcome of comparing the enumerated weighted sum with the recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq1Outcome {
    pub n: usize,
    pub recurrence: BigInt,
    pub enumerated: BigInt,
}

impl Eq1Outcome {
    pub fn pass(&self) -> bool {
        self.recurrence == self.enumerated
    }
}

pub fn verify_eq1(n: usize) -> Result<Eq1Outcome> {
    Ok(Eq1Outcome {
        n,
        recurrence: r_n(n)?,
        enumerated: weighted_pistol_sum(n),
    })
}

/// Parses a b-file: one `<index> <value>` pair per line; blank lines and
/// lines starting with `#` are skipped.
pub fn parse_bfile(text: &str) -> Result<Vec<(u64, BigInt)>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| Error::Parse {
            input: line.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = line.split_whitespace();
        let idx = parts
            .next()
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| bad("index is not a non-negative integer"))?;
        let value = parts
            .next()
            .and_then(|s| s.parse::<BigInt>().ok())
            .ok_or_else(|| bad("value is not an integer"))?;
        if parts.next().is_some() {
            return Err(bad("expected exactly two fields"));
        }
        out.push((idx, value));
    }
    Ok(out)
}

/// Entries of a b-file that disagree with `computed` (keyed by index).
/// Indices outside `computed` are ignored.
pub fn bfile_mismatches(
    entries: &[(u64, BigInt)],
    computed: &[(u64, BigInt)],
) -> Vec<(u64, BigInt, BigInt)> {
    entries
        .iter()
        .filter_map(|(i, v)| {
            computed
                .iter()
                .find(|(k, _)| k == i)
                .filter(|(_, c)| c != v)
                .map(|(_, c)| (*i, v.clone(), c.clone()))
        })
        .collect()
}
