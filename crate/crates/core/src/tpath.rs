//! Partially filled tableaux, the walk through the filled columns, and the
//! bijection `pi_j` it induces on admissible rows.
//!
//! "Upper" and "lower" dot of a column always compare physical positions.

use crate::error::{Error, Result, ValidationError};
use crate::objects::{Tableau, MAX_N};
use crate::rows::rho_unchecked;

/// A tableau under construction: each physical row holds at most one dot,
/// each column at most two, and every dot sits weakly above the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialTableau {
    n: usize,
    phys_col: Vec<Option<usize>>,
}

impl PartialTableau {
    pub fn empty(n: usize) -> Self {
        PartialTableau {
            n,
            phys_col: vec![None; 2 * n],
        }
    }

    pub fn new(n: usize, phys_col: Vec<Option<usize>>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(ValidationError::BadSize { n, max: MAX_N }.into());
        }
        if phys_col.len() != 2 * n {
            return Err(ValidationError::WrongLength {
                expected: 2 * n,
                actual: phys_col.len(),
            }
            .into());
        }
        let mut count = vec![0usize; n + 1];
        for (idx, c) in phys_col.iter().enumerate() {
            let row = idx + 1;
            if let Some(c) = *c {
                if c == 0 || c > n || c > row {
                    return Err(ValidationError::DiagonalViolation { row, column: c }.into());
                }
                count[c] += 1;
                if count[c] > 2 {
                    return Err(ValidationError::ColumnCountViolation {
                        column: c,
                        count: count[c],
                        row,
                    }
                    .into());
                }
            }
        }
        Ok(PartialTableau { n, phys_col })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phys_col(&self) -> &[Option<usize>] {
        &self.phys_col
    }

    /// Column of the dot in physical row `p`, if any.
    pub fn col_at(&self, p: usize) -> Option<usize> {
        self.phys_col[p - 1]
    }

    /// Column of the dot `d_i` (logical name), if the row is filled.
    pub fn col_of(&self, i: usize) -> Option<usize> {
        self.phys_col[rho_unchecked(self.n, i) - 1]
    }

    /// Physical rows of the dots of column `c`, bottom first.
    pub fn column_phys_rows(&self, c: usize) -> Vec<usize> {
        (1..=2 * self.n)
            .filter(|&p| self.phys_col[p - 1] == Some(c))
            .collect()
    }

    /// Logical names of the dots of column `c`, ordered bottom to top.
    pub fn column_rows(&self, c: usize) -> Vec<usize> {
        self.column_phys_rows(c)
            .into_iter()
            .map(|p| rho_unchecked(self.n, p))
            .collect()
    }

    /// First column holding fewer than two dots (`n + 1` when complete).
    pub fn active_column(&self) -> usize {
        (1..=self.n)
            .find(|&c| self.column_phys_rows(c).len() < 2)
            .unwrap_or(self.n + 1)
    }

    /// Places a dot at logical row `i`, column `c`.
    pub(crate) fn place(&mut self, c: usize, i: usize) -> Result<()> {
        let p = rho_unchecked(self.n, i);
        if self.phys_col[p - 1].is_some() {
            return Err(Error::BoxOccupied { column: c, row: i });
        }
        if c > p {
            return Err(ValidationError::DiagonalViolation { row: p, column: c }.into());
        }
        self.phys_col[p - 1] = Some(c);
        Ok(())
    }

    /// Completed tableau, if every row is filled.
    pub fn to_tableau(&self) -> Result<Tableau> {
        let cols = self
            .phys_col
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                c.ok_or_else(|| {
                    Error::PreconditionViolated(format!("physical row {} is empty", idx + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(self.n, cols)
    }

    /// Keeps only the dots of columns `< j`.
    pub fn truncate_to(&self, j: usize) -> PartialTableau {
        PartialTableau {
            n: self.n,
            phys_col: self.phys_col.iter().map(|c| c.filter(|&c| c < j)).collect(),
        }
    }

    fn check_column(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n {
            return Err(Error::OutOfRange {
                what: "column",
                value: j,
                lo: 1,
                hi: self.n,
            });
        }
        Ok(())
    }

    /// `(lower, upper)` logical names of a full column `c < j`.
    fn full_column(&self, c: usize) -> Result<(usize, usize)> {
        match self.column_phys_rows(c)[..] {
            [lo, hi] => Ok((rho_unchecked(self.n, lo), rho_unchecked(self.n, hi))),
            _ => Err(Error::PreconditionViolated(format!(
                "column {c} must hold two dots before it can be traversed"
            ))),
        }
    }

    /// Row `i` is admissible for column `j` when none of its first `j - 1`
    /// boxes holds a dot.
    pub fn is_admissible(&self, j: usize, i: usize) -> bool {
        i >= j && i <= 2 * self.n && self.col_of(i).is_none_or(|c| c >= j)
    }
}

impl From<&Tableau> for PartialTableau {
    fn from(t: &Tableau) -> Self {
        PartialTableau {
            n: t.n(),
            phys_col: t.phys_col().iter().map(|&c| Some(c)).collect(),
        }
    }
}

/// Rows visited by a walk, the arrival being the last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPath {
    pub steps: Vec<usize>,
    pub arrival: usize,
}

fn in_target(n: usize, j: usize, i: usize) -> bool {
    (j..=n).contains(&i) || (n + j..=2 * n).contains(&i)
}

/// Walks from the box of column `j`, logical row `i`.
pub fn t_path(t: &PartialTableau, j: usize, i: usize) -> Result<TPath> {
    let n = t.n;
    t.check_column(j)?;
    if i < j || i > 2 * n {
        return Err(Error::OutOfRange {
            what: "row",
            value: i,
            lo: j,
            hi: 2 * n,
        });
    }
    if !t.is_admissible(j, i) {
        return Err(Error::PreconditionViolated(format!(
            "row {i} already has a dot left of column {j}"
        )));
    }
    let bound = 2 * n;
    let mut steps = vec![i];
    let mut cur = i;
    while !in_target(n, j, cur) {
        if steps.len() > bound {
            return Err(Error::NonTermination { start: i, bound });
        }
        cur = if cur > n {
            // cur = n + jk with jk < j: jump to the upper dot of column jk
            t.full_column(cur - n)?.1
        } else {
            t.full_column(cur)?.0
        };
        steps.push(cur);
    }
    Ok(TPath {
        steps,
        arrival: cur,
    })
}

/// Walks backwards from `target`: a dot in a traversed column was reached
/// from `n + c` if it is the upper dot of column `c`, from `c` otherwise.
/// Returns the path in forward order.
pub fn reverse_path(t: &PartialTableau, j: usize, target: usize) -> Result<TPath> {
    let n = t.n;
    t.check_column(j)?;
    if !in_target(n, j, target) {
        return Err(Error::TargetNotInCodomain { j, target });
    }
    let mut back = vec![target];
    let mut cur = target;
    while let Some(c) = t.col_of(cur).filter(|&c| c < j) {
        if back.len() > 2 * n {
            return Err(Error::NonTermination {
                start: target,
                bound: 2 * n,
            });
        }
        let (_, upper) = t.full_column(c)?;
        cur = if cur == upper { n + c } else { c };
        back.push(cur);
    }
    back.reverse();
    Ok(TPath {
        steps: back,
        arrival: target,
    })
}

/// The bijection `pi_j` from admissible rows onto `[j, n] ⊔ [n + j, 2n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiTable {
    n: usize,
    j: usize,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl PiTable {
    pub fn j(&self) -> usize {
        self.j
    }

    /// Arrival of the walk from row `i`, if `i` is admissible.
    pub fn get(&self, i: usize) -> Option<usize> {
        self.forward.get(i).copied().flatten()
    }

    /// The admissible row whose walk arrives at `target`.
    pub fn inverse(&self, target: usize) -> Result<usize> {
        self.backward
            .get(target)
            .copied()
            .flatten()
            .ok_or(Error::TargetNotInCodomain { j: self.j, target })
    }

    /// `(i, pi_j(i))` pairs in increasing `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=2 * self.n)
            .filter_map(|i| self.get(i).map(|a| (i, a)))
            .collect()
    }
}

/// Tabulates `pi_j` on every admissible row. Columns `1..j` must be full.
#[allow(clippy::needless_range_loop)] // rows index two tables
pub fn pi(t: &PartialTableau, j: usize) -> Result<PiTable> {
    let n = t.n;
    t.check_column(j)?;
    let mut forward = vec![None; 2 * n + 1];
    let mut backward = vec![None; 2 * n + 1];
    for i in j..=2 * n {
        if !t.is_admissible(j, i) {
            continue;
        }
        let a = t_path(t, j, i)?.arrival;
        if let Some(prev) = backward[a] {
            return Err(Error::InternalInconsistency {
                stage: "pi",
                detail: format!("rows {prev} and {i} both arrive at {a}"),
                encoding: format!("{:?}", t.phys_col),
            });
        }
        forward[i] = Some(a);
        backward[a] = Some(i);
    }
    Ok(PiTable {
        n,
        j,
        forward,
        backward,
    })
}

/// Row `i` with `pi_j(i) = target`.
pub fn pi_inverse(t: &PartialTableau, j: usize, target: usize) -> Result<usize> {
    pi(t, j)?.inverse(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate;

    pub(crate) fn t0() -> PartialTableau {
        let raw = [1, 1, 3, 0, 0, 3, 0, 0, 0, 0, 2, 0, 0, 2];
        PartialTableau::new(7, raw.iter().map(|&c| (c > 0).then_some(c)).collect()).unwrap()
    }

    #[test]
    fn worked_walks() {
        let t = t0();
        assert_eq!(t_path(&t, 4, 8).unwrap().steps, vec![8, 2, 10, 6]);
        assert_eq!(t_path(&t, 4, 9).unwrap().steps, vec![9, 14]);
        assert_eq!(t_path(&t, 4, 5).unwrap().steps, vec![5]);
        assert!(matches!(
            t_path(&t, 4, 10),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn worked_pi_table() {
        let table = pi(&t0(), 4).unwrap();
        assert_eq!(
            table.pairs(),
            vec![
                (4, 4),
                (5, 5),
                (7, 7),
                (8, 6),
                (9, 14),
                (11, 11),
                (12, 12),
                (13, 13)
            ]
        );
        assert_eq!(table.inverse(6).unwrap(), 8);
        assert_eq!(table.inverse(14).unwrap(), 9);
        assert_eq!(
            table.inverse(10),
            Err(Error::TargetNotInCodomain { j: 4, target: 10 })
        );
    }

    #[test]
    fn empty_tableau_is_identity() {
        let t = PartialTableau::empty(3);
        let table = pi(&t, 1).unwrap();
        assert_eq!(table.pairs(), (1..=6).map(|i| (i, i)).collect::<Vec<_>>());
    }

    #[test]
    fn pi_is_a_bijection_on_small_tableaux() {
        for n in 1..=4 {
            for t in enumerate::tableaux(n) {
                let pt = PartialTableau::from(&t);
                for j in 1..=n {
                    let table = pi(&pt, j).unwrap();
                    let pairs = table.pairs();
                    assert_eq!(pairs.len(), 2 * (n - j + 1));
                    for (i, a) in pairs {
                        assert!(in_target(n, j, a));
                        assert_eq!(table.inverse(a).unwrap(), i);
                        let fwd = t_path(&pt, j, i).unwrap();
                        assert_eq!(reverse_path(&pt, j, a).unwrap(), fwd);
                    }
                }
            }
        }
    }
}
