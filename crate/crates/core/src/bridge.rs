//! Expansion of a tableau into symplectic Dellac configurations: every free
//! dot may independently be reflected across the vertical centre line, and
//! the lower half is completed by central symmetry.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate;
use crate::error::{Error, Result};
use crate::objects::{SymplecticConfig, Tableau};
use crate::sequences;

/// Set of physical rows whose dot is reflected; bit `p - 1` is row `p`.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct ExpansionChoice {
    pub mask: u64,
}

impl ExpansionChoice {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_rows(rows: &[usize]) -> Self {
        ExpansionChoice {
            mask: rows.iter().fold(0, |m, &p| m | 1 << (p - 1)),
        }
    }

    pub fn contains(self, p: usize) -> bool {
        self.mask >> (p - 1) & 1 == 1
    }

    pub fn rows(self) -> Vec<usize> {
        (1..=64).filter(|&p| self.contains(p)).collect()
    }
}

/// Every choice over the free rows of `t`, in increasing mask order.
pub fn choices(t: &Tableau) -> Vec<ExpansionChoice> {
    let free: Vec<usize> = (1..=2 * t.n()).filter(|&p| t.is_free_at(p)).collect();
    (0u64..1 << free.len())
        .map(|bits| {
            let rows: Vec<usize> = free
                .iter()
                .enumerate()
                .filter(|(k, _)| bits >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            ExpansionChoice::from_rows(&rows)
        })
        .collect()
}

fn check_choice(t: &Tableau, choice: ExpansionChoice) -> Result<()> {
    let n = t.n();
    if let Some(&p) = choice
        .rows()
        .iter()
        .find(|&&p| p > 2 * n || !t.is_free_at(p))
    {
        return Err(Error::IllegalReflection { row: p });
    }
    Ok(())
}

pub fn expand(t: &Tableau, choice: ExpansionChoice) -> Result<SymplecticConfig> {
    check_choice(t, choice)?;
    let n = t.n();
    let size = 2 * n;
    let mut cols = vec![0; 4 * n];
    for p in 1..=size {
        let c = t.col_at(p);
        let c = if choice.contains(p) { size + 1 - c } else { c };
        cols[p - 1] = c;
        cols[4 * n - p] = size + 1 - c;
    }
    SymplecticConfig::new(n, cols)
}

/// Reflects (or un-reflects) the dot of row `p`.
pub fn toggle(t: &Tableau, choice: ExpansionChoice, p: usize) -> Result<ExpansionChoice> {
    if p == 0 || p > 2 * t.n() || !t.is_free_at(p) {
        return Err(Error::IllegalReflection { row: p });
    }
    Ok(ExpansionChoice {
        mask: choice.mask ^ 1 << (p - 1),
    })
}

/// Inverse of `expand`.
pub fn collapse(s: &SymplecticConfig) -> Result<(Tableau, ExpansionChoice)> {
    let n = s.n();
    let size = 2 * n;
    let mut cols = Vec::with_capacity(size);
    let mut reflected = Vec::new();
    for (k, &c) in s.row_col()[..size].iter().enumerate() {
        if c <= n {
            cols.push(c);
        } else {
            cols.push(size + 1 - c);
            reflected.push(k + 1);
        }
    }
    let t = Tableau::new(n, cols)
        .map_err(|e| Error::CollapseInvalid(format!("{}: {e}", s.encode())))?;
    let choice = ExpansionChoice::from_rows(&reflected);
    match expand(&t, choice) {
        Ok(back) if back == *s => Ok((t, choice)),
        Ok(_) => Err(Error::CollapseInvalid(format!(
            "{} does not re-expand to itself",
            s.encode()
        ))),
        Err(e) => Err(Error::CollapseInvalid(format!("{}: {e}", s.encode()))),
    }
}

/// Outcome of comparing all expansions of `Tab_n` with `SpDC_{2n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub n: usize,
    pub enumerated: usize,
    pub expanded: usize,
    pub distinct: usize,
    /// Configurations that were enumerated but never produced.
    pub missing: Vec<String>,
    /// Expansions outside the enumeration.
    pub extra: Vec<String>,
    pub weighted_sum: BigInt,
    pub r_n: BigInt,
}

impl PartitionReport {
    pub fn pass(&self) -> bool {
        self.missing.is_empty()
            && self.extra.is_empty()
            && self.expanded == self.distinct
            && self.distinct == self.enumerated
            && BigInt::from(self.enumerated) == self.r_n
            && self.weighted_sum == self.r_n
    }
}

pub fn verify_partition(n: usize) -> Result<PartitionReport> {
    let tabs = enumerate::tableaux_par(n);
    let weighted_sum: BigInt = tabs.iter().map(|t| BigInt::from(1u64) << t.fr()).sum();
    let expanded: Vec<SymplecticConfig> = tabs
        .par_iter()
        .map(|t| {
            choices(t)
                .into_iter()
                .map(|c| expand(t, c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    let produced: BTreeSet<&SymplecticConfig> = expanded.iter().collect();
    let all = enumerate::spdc_par(n);
    let reference: BTreeSet<&SymplecticConfig> = all.iter().collect();
    Ok(PartitionReport {
        n,
        enumerated: all.len(),
        expanded: expanded.len(),
        distinct: produced.len(),
        missing: reference
            .difference(&produced)
            .map(|s| s.encode())
            .collect(),
        extra: produced
            .difference(&reference)
            .map(|s| s.encode())
            .collect(),
        weighted_sum,
        r_n: sequences::r_n(n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_sizes() {
        let r1 = verify_partition(1).unwrap();
        assert!(r1.pass());
        assert_eq!(r1.enumerated, 2);
        let r2 = verify_partition(2).unwrap();
        assert!(r2.pass(), "{r2:?}");
        let per_t: Vec<usize> = enumerate::tableaux(2)
            .iter()
            .map(|t| choices(t).len())
            .collect();
        assert_eq!(per_t, vec![4, 2, 4]);
    }

    #[test]
    fn empty_choice_is_mirror_of_tableau() {
        let t = Tableau::new(2, vec![1, 1, 2, 2]).unwrap();
        let s = expand(&t, ExpansionChoice::empty()).unwrap();
        assert_eq!(s.row_col(), &[1, 1, 2, 2, 3, 3, 4, 4]);
        assert_eq!(collapse(&s).unwrap(), (t, ExpansionChoice::empty()));
    }

    #[test]
    fn reflection_needs_a_free_dot() {
        let t = Tableau::new(2, vec![1, 1, 2, 2]).unwrap();
        assert!(!t.is_free_at(1));
        assert_eq!(
            expand(&t, ExpansionChoice::from_rows(&[1])),
            Err(Error::IllegalReflection { row: 1 })
        );
        assert!(toggle(&t, ExpansionChoice::empty(), 1).is_err());
        assert!(toggle(&t, ExpansionChoice::empty(), 4).is_ok());
    }

    #[test]
    fn round_trip_and_toggles() {
        for n in 1..=3 {
            for t in enumerate::tableaux(n) {
                let cs = choices(&t);
                assert_eq!(cs.len(), 1 << t.fr());
                let free: Vec<usize> = (1..=2 * n).filter(|&p| t.is_free_at(p)).collect();
                for &c in &cs {
                    let s = expand(&t, c).unwrap();
                    assert_eq!(collapse(&s).unwrap(), (t.clone(), c));
                    for &p in &free {
                        let once = toggle(&t, c, p).unwrap();
                        assert_eq!(toggle(&t, once, p).unwrap(), c);
                        for &q in &free {
                            let pq = toggle(&t, once, q).unwrap();
                            let qp = toggle(&t, toggle(&t, c, q).unwrap(), p).unwrap();
                            assert_eq!(pq, qp);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corrupt_configuration_is_rejected() {
        // valid symplectic configuration whose upper half is not a tableau
        // cannot exist; a hand-made one with a bad upper half fails to build
        let s = SymplecticConfig::new(1, vec![1, 1, 2, 2]).unwrap();
        assert!(collapse(&s).is_ok());
        for s in enumerate::spdc(2) {
            let (t, _) = collapse(&s).unwrap();
            assert_eq!(t.n(), 2);
        }
    }
}
