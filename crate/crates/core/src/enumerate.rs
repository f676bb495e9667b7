//! Exhaustive generators for the four families.
//!
//! Each generator fills its array position by position, trying candidate
//! values in increasing order, so the output is already in canonical
//! (lexicographic) order. The `_par` variants split on the first position
//! and concatenate the branches in order, so they return exactly the same
//! list.

use rayon::prelude::*;

use crate::objects::{DellacConfig, SurjectivePistol, SymplecticConfig, Tableau};

/// Row-by-row filler shared by Dellac configurations and tableaux.
/// `upper_band` forces column `c` to be full once row `c + n` is passed.
struct RowFiller {
    n: usize,
    upper_band: bool,
    cols: Vec<usize>,
    count: Vec<u8>,
}

impl RowFiller {
    fn new(n: usize, upper_band: bool) -> Self {
        RowFiller {
            n,
            upper_band,
            cols: Vec::with_capacity(2 * n),
            count: vec![0; n + 1],
        }
    }

    fn candidates(&self, row: usize) -> std::ops::RangeInclusive<usize> {
        let lo = if self.upper_band {
            row.saturating_sub(self.n).max(1)
        } else {
            1
        };
        lo..=row.min(self.n)
    }

    fn viable(&self, row: usize) -> bool {
        // a column whose last admissible row is behind us must be full
        if self.upper_band && row > self.n + 1 {
            let expired = row - self.n - 1;
            if self.count[expired] < 2 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, out: &mut Vec<Vec<usize>>) {
        let row = self.cols.len() + 1;
        if row > 2 * self.n {
            out.push(self.cols.clone());
            return;
        }
        if !self.viable(row) {
            return;
        }
        for c in self.candidates(row) {
            if self.count[c] == 2 {
                continue;
            }
            self.count[c] += 1;
            self.cols.push(c);
            self.run(out);
            self.cols.pop();
            self.count[c] -= 1;
        }
    }

    fn with_first(n: usize, upper_band: bool, first: usize) -> Vec<Vec<usize>> {
        let mut filler = RowFiller::new(n, upper_band);
        filler.count[first] += 1;
        filler.cols.push(first);
        let mut out = Vec::new();
        filler.run(&mut out);
        out
    }
}

fn first_row_choices(n: usize, upper_band: bool) -> Vec<usize> {
    RowFiller::new(n, upper_band).candidates(1).collect()
}

fn fill_rows(n: usize, upper_band: bool, parallel: bool) -> Vec<Vec<usize>> {
    let firsts = first_row_choices(n, upper_band);
    if parallel {
        firsts
            .into_par_iter()
            .map(|c| RowFiller::with_first(n, upper_band, c))
            .collect::<Vec<_>>()
            .concat()
    } else {
        firsts
            .into_iter()
            .flat_map(|c| RowFiller::with_first(n, upper_band, c))
            .collect()
    }
}

/// All of `DC_n` in ascending order.
pub fn dellac(n: usize) -> Vec<DellacConfig> {
    dellac_impl(n, false)
}

pub fn dellac_par(n: usize) -> Vec<DellacConfig> {
    dellac_impl(n, true)
}

fn dellac_impl(n: usize, parallel: bool) -> Vec<DellacConfig> {
    fill_rows(n, true, parallel)
        .into_iter()
        .map(|c| DellacConfig::from_parts_unchecked(n, c))
        .collect()
}

/// All of `Tab_n` in ascending order.
pub fn tableaux(n: usize) -> Vec<Tableau> {
    tableaux_impl(n, false)
}

pub fn tableaux_par(n: usize) -> Vec<Tableau> {
    tableaux_impl(n, true)
}

fn tableaux_impl(n: usize, parallel: bool) -> Vec<Tableau> {
    fill_rows(n, false, parallel)
        .into_iter()
        .map(|c| Tableau::from_parts_unchecked(n, c))
        .collect()
}

/// All of `SpDC_{2n}` in ascending order. Only the left `n` columns are
/// chosen; the right half is their mirror image.
pub fn spdc(n: usize) -> Vec<SymplecticConfig> {
    spdc_impl(n, false)
}

pub fn spdc_par(n: usize) -> Vec<SymplecticConfig> {
    spdc_impl(n, true)
}

struct MirrorFiller {
    n: usize,
    rows: Vec<usize>,
}

impl MirrorFiller {
    fn new(n: usize) -> Self {
        MirrorFiller {
            n,
            rows: vec![0; 4 * n],
        }
    }

    fn pairs(&self, j: usize) -> Vec<(usize, usize)> {
        let total = 4 * self.n;
        let free = |i: usize| self.rows[i - 1] == 0 && self.rows[total - i] == 0;
        let mut out = Vec::new();
        for a in j..=j + 2 * self.n {
            if !free(a) {
                continue;
            }
            for b in a + 1..=j + 2 * self.n {
                if free(b) && b != total + 1 - a {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn set(&mut self, j: usize, (a, b): (usize, usize), on: bool) {
        let total = 4 * self.n;
        let mirror = 2 * self.n + 1 - j;
        for r in [a, b] {
            self.rows[r - 1] = if on { j } else { 0 };
            self.rows[total - r] = if on { mirror } else { 0 };
        }
    }

    fn run(&mut self, j: usize, out: &mut Vec<Vec<usize>>) {
        if j > self.n {
            out.push(self.rows.clone());
            return;
        }
        for pair in self.pairs(j) {
            self.set(j, pair, true);
            self.run(j + 1, out);
            self.set(j, pair, false);
        }
    }
}

fn spdc_impl(n: usize, parallel: bool) -> Vec<SymplecticConfig> {
    let firsts = MirrorFiller::new(n).pairs(1);
    let branch = |pair| {
        let mut filler = MirrorFiller::new(n);
        filler.set(1, pair, true);
        let mut out = Vec::new();
        filler.run(2, &mut out);
        out
    };
    let mut all: Vec<Vec<usize>> = if parallel {
        firsts
            .into_par_iter()
            .map(branch)
            .collect::<Vec<_>>()
            .concat()
    } else {
        firsts.into_iter().flat_map(branch).collect()
    };
    // column-wise choices do not produce row-lexicographic order
    all.sort_unstable();
    all.dedup();
    all.into_iter()
        .map(|c| SymplecticConfig::from_parts_unchecked(n, c))
        .collect()
}

/// All of `SP_n` in ascending order of `f`.
pub fn pistols(n: usize) -> Vec<SurjectivePistol> {
    pistols_impl(n, false)
}

pub fn pistols_par(n: usize) -> Vec<SurjectivePistol> {
    pistols_impl(n, true)
}

struct PistolFiller {
    n: usize,
    f: Vec<usize>,
    hits: Vec<u32>,
}

impl PistolFiller {
    fn new(n: usize) -> Self {
        PistolFiller {
            n,
            f: Vec::with_capacity(2 * n),
            hits: vec![0; n + 1],
        }
    }

    fn push(&mut self, v: usize) {
        self.f.push(v);
        self.hits[v / 2] += 1;
    }

    fn pop(&mut self) {
        let v = self.f.pop().expect("non-empty");
        self.hits[v / 2] -= 1;
    }

    fn run(&mut self, out: &mut Vec<Vec<usize>>) {
        let placed = self.f.len();
        // value `placed` (if even) can no longer be hit by later positions
        if placed.is_multiple_of(2) && placed > 0 && self.hits[placed / 2] == 0 {
            return;
        }
        if placed == 2 * self.n {
            out.push(self.f.clone());
            return;
        }
        let j = placed + 1;
        let lo = j.div_ceil(2);
        for k in lo..=self.n {
            self.push(2 * k);
            self.run(out);
            self.pop();
        }
    }
}

fn pistols_impl(n: usize, parallel: bool) -> Vec<SurjectivePistol> {
    let branch = |k: usize| {
        let mut filler = PistolFiller::new(n);
        filler.push(2 * k);
        let mut out = Vec::new();
        filler.run(&mut out);
        out
    };
    let all: Vec<Vec<usize>> = if parallel {
        (1..=n)
            .into_par_iter()
            .map(branch)
            .collect::<Vec<_>>()
            .concat()
    } else {
        (1..=n).flat_map(branch).collect()
    };
    all.into_iter()
        .map(|f| SurjectivePistol::from_parts_unchecked(n, f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::MAX_N;

    fn factorial(k: u64) -> u64 {
        (1..=k).product()
    }

    /// Independent oracle: every array over the allowed alphabet, filtered
    /// by the validating constructor.
    fn all_arrays(len: usize, max: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (1..=max).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn small_counts_match_filter_oracle() {
        for n in 1..=3 {
            let arrays = all_arrays(2 * n, n);
            let d: Vec<_> = arrays
                .iter()
                .filter_map(|a| DellacConfig::new(n, a.clone()).ok())
                .collect();
            assert_eq!(dellac(n), d);
            let t: Vec<_> = arrays
                .iter()
                .filter_map(|a| Tableau::new(n, a.clone()).ok())
                .collect();
            assert_eq!(tableaux(n), t);
            let p: Vec<_> = all_arrays(2 * n, n)
                .into_iter()
                .filter_map(|a| {
                    SurjectivePistol::new(n, a.into_iter().map(|v| 2 * v).collect()).ok()
                })
                .collect();
            assert_eq!(pistols(n), p);
        }
        for n in 1..=2 {
            let s: Vec<_> = all_arrays(4 * n, 2 * n)
                .into_iter()
                .filter_map(|a| SymplecticConfig::new(n, a).ok())
                .collect();
            assert_eq!(spdc(n), s);
        }
    }

    #[test]
    fn counts() {
        let h: Vec<usize> = (1..=5).map(|n| dellac(n).len()).collect();
        assert_eq!(h, vec![1, 2, 7, 38, 295]);
        for n in 1..=5u64 {
            let expect = (factorial(n + 1) * factorial(n)) >> n;
            assert_eq!(tableaux(n as usize).len() as u64, expect);
        }
        let g: Vec<usize> = (1..=5).map(|n| pistols(n).len()).collect();
        assert_eq!(g, vec![1, 3, 17, 155, 2073]);
        let r: Vec<usize> = (1..=3).map(|n| spdc(n).len()).collect();
        assert_eq!(r, vec![2, 10, 98]);
    }

    #[test]
    fn worked_small_lists() {
        let p2: Vec<String> = pistols(2).iter().map(|p| p.encode()).collect();
        assert_eq!(
            p2,
            vec!["P n=2 f=2,2,4,4", "P n=2 f=2,4,4,4", "P n=2 f=4,2,4,4"]
        );
        assert_eq!(dellac(1)[0].row_col(), &[1, 1]);
        assert_eq!(tableaux(2).len(), 3);
        const { assert!(MAX_N >= 6) };
    }

    #[test]
    fn parallel_matches_sequential() {
        for n in 1..=4 {
            assert_eq!(dellac(n), dellac_par(n));
            assert_eq!(tableaux(n), tableaux_par(n));
            assert_eq!(pistols(n), pistols_par(n));
        }
        for n in 1..=3 {
            assert_eq!(spdc(n), spdc_par(n));
        }
    }

    #[test]
    fn output_is_sorted_and_unique() {
        let t = tableaux(4);
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        let s = spdc(3);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        let p = pistols(4);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }
}
