//! Pistol labels (type, digit, parity) of every dot, the map `phi` from
//! tableaux to pistols, twin dots, grounded dots and the `ngr` statistic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objects::{StatVector, SurjectivePistol, Tableau};
use crate::rows::rho_unchecked;
use crate::tpath::{pi, PartialTableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DotType {
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "beta")]
    Beta,
}

impl DotType {
    pub fn flip(self) -> Self {
        match self {
            DotType::Alpha => DotType::Beta,
            DotType::Beta => DotType::Alpha,
        }
    }

    pub fn ascii(self) -> char {
        match self {
            DotType::Alpha => 'a',
            DotType::Beta => 'b',
        }
    }
}

impl fmt::Display for DotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DotType::Alpha => "α",
            DotType::Beta => "β",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "o")]
    Odd,
    #[serde(rename = "e")]
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "o",
            Parity::Even => "e",
        })
    }
}

/// `(type, digit, parity)` of a dot, written `α3o`, `β0e`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PistolLabel {
    #[serde(rename = "type")]
    pub ty: DotType,
    pub digit: usize,
    pub parity: Parity,
}

impl PistolLabel {
    pub fn new(ty: DotType, digit: usize, parity: Parity) -> Self {
        PistolLabel { ty, digit, parity }
    }

    /// The `β0e` label that marks fixed points of the pistol.
    pub fn is_beta_zero_even(&self) -> bool {
        self.ty == DotType::Beta && self.digit == 0 && self.parity == Parity::Even
    }

    /// ASCII rendering such as `a3o` / `b0e`.
    pub fn ascii(&self) -> String {
        format!("{}{}{}", self.ty.ascii(), self.digit, self.parity)
    }
}

impl fmt::Display for PistolLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.ty, self.digit, self.parity)
    }
}

impl std::str::FromStr for PistolLabel {
    type Err = Error;

    /// Accepts `α3o`, `a3o`, `alpha3o` and the `β`/`b`/`beta` variants.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            input: s.to_string(),
            reason: "expected a label like α3o or b0e".into(),
        };
        let (ty, rest) = [
            ("alpha", DotType::Alpha),
            ("beta", DotType::Beta),
            ("α", DotType::Alpha),
            ("β", DotType::Beta),
            ("a", DotType::Alpha),
            ("b", DotType::Beta),
        ]
        .iter()
        .find_map(|(p, t)| s.strip_prefix(p).map(|r| (*t, r)))
        .ok_or_else(bad)?;
        let parity = match rest.chars().last() {
            Some('o') => Parity::Odd,
            Some('e') => Parity::Even,
            _ => return Err(bad()),
        };
        let digit = rest[..rest.len() - 1].parse().map_err(|_| bad())?;
        Ok(PistolLabel { ty, digit, parity })
    }
}

/// One labelled dot, in the order the labelling processed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelStep {
    pub column: usize,
    /// Logical row name of the dot.
    pub row: usize,
    /// Physical row of the dot.
    pub phys_row: usize,
    /// Arrival of the walk from this dot's row.
    pub arrival: usize,
    pub type_rule: &'static str,
    pub parity_rule: &'static str,
}

/// A tableau together with the label of every dot and the rules that fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTableau {
    base: Tableau,
    /// Indexed by logical row - 1.
    labels: Vec<PistolLabel>,
    trace: Vec<LabelStep>,
}

impl LabeledTableau {
    pub fn base(&self) -> &Tableau {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Label of the dot `d_i` (logical name).
    pub fn label(&self, i: usize) -> PistolLabel {
        self.labels[i - 1]
    }

    /// Label of the dot in physical row `p`.
    pub fn label_at(&self, p: usize) -> PistolLabel {
        self.labels[rho_unchecked(self.n(), p) - 1]
    }

    pub fn trace(&self) -> &[LabelStep] {
        &self.trace
    }

    /// Logical names of the two dots of column `j`, physically lower first.
    pub fn column_dots(&self, j: usize) -> (usize, usize) {
        let (lo, hi) = self.base.column_rows(j);
        (rho_unchecked(self.n(), lo), rho_unchecked(self.n(), hi))
    }

    /// Whether column `j` holds a dot labelled `β0e`.
    pub fn has_beta_zero_even(&self, j: usize) -> bool {
        let (a, b) = self.column_dots(j);
        self.label(a).is_beta_zero_even() || self.label(b).is_beta_zero_even()
    }

    /// Labels of the dots of column `j`, odd one first.
    pub fn epsilon(&self, j: usize) -> [PistolLabel; 2] {
        let (a, b) = self.column_dots(j);
        let (la, lb) = (self.label(a), self.label(b));
        if la.parity == Parity::Odd {
            [la, lb]
        } else {
            [lb, la]
        }
    }

    /// `(odd dot, even dot)` logical names of column `j`.
    pub fn odd_even(&self, j: usize) -> (usize, usize) {
        let (a, b) = self.column_dots(j);
        if self.label(a).parity == Parity::Odd {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// `d_{n+i}` is grounded: not free, and column `i` has a `β0e` dot.
    pub fn grounded(&self, i: usize) -> bool {
        let n = self.n();
        !self.base.is_free_at(rho_unchecked(n, n + i)) && self.has_beta_zero_even(i)
    }

    /// Bit `i` is cleared iff `d_{n+i}` is grounded.
    pub fn ngr_vec(&self) -> StatVector {
        StatVector::from_fn(self.n(), |i| !self.grounded(i))
    }

    pub fn ngr(&self) -> usize {
        self.ngr_vec().count_ones()
    }

    /// The pistol read off the labels column by column.
    pub fn phi(&self) -> SurjectivePistol {
        let n = self.n();
        let mut f = Vec::with_capacity(2 * n);
        for j in 1..=n {
            let [o, e] = self.epsilon(j);
            f.push(2 * (j + o.digit));
            if e.ty == DotType::Alpha && e.digit == 0 {
                f.push(2 * (j + o.digit));
            } else {
                f.push(2 * (j + e.digit));
            }
        }
        SurjectivePistol::from_parts_unchecked(n, f)
    }
}

/// The twin of `d_i` lying in the leftmost column (`d_i` on ties).
pub fn d_min(t: &Tableau, i: usize) -> usize {
    let n = t.n();
    if t.col_of(i) <= t.col_of(n + i) {
        i
    } else {
        n + i
    }
}

fn inconsistency(t: &Tableau, detail: String) -> Error {
    Error::InternalInconsistency {
        stage: "pistol labelling",
        detail,
        encoding: t.encode(),
    }
}

/// Runs the labelling from the rightmost column to the leftmost.
pub fn pistol_labels(t: &Tableau) -> Result<LabeledTableau> {
    let n = t.n();
    let full = PartialTableau::from(t);
    let mut ty: Vec<Option<DotType>> = vec![None; 2 * n + 1];
    let mut labels: Vec<Option<PistolLabel>> = vec![None; 2 * n + 1];
    let mut trace = Vec::with_capacity(2 * n);
    let col_dots = |c: usize| {
        let (lo, hi) = t.column_rows(c);
        [rho_unchecked(n, lo), rho_unchecked(n, hi)]
    };

    for j in (1..=n).rev() {
        let table = pi(&full, j)?;
        let dots = col_dots(j);
        let mut arrival = [0usize; 2];
        let mut digit = [0usize; 2];
        for k in 0..2 {
            let a = table
                .get(dots[k])
                .ok_or_else(|| inconsistency(t, format!("row {} not admissible", dots[k])))?;
            arrival[k] = a;
            digit[k] = if a <= n { a - j } else { a - n - j };
        }
        // positive digits first: they only look at columns to the right
        let mut order = [0usize, 1];
        if digit[0] == 0 && digit[1] > 0 {
            order = [1, 0];
        }
        let mut rules = ["", ""];
        for &k in &order {
            let (i, ip, h) = (dots[k], arrival[k], digit[k]);
            let (typ, rule) = if h > 0 {
                let jp = j + h;
                let [x, y] = col_dots(jp);
                let (lx, ly) = (labels[x].unwrap(), labels[y].unwrap());
                if lx.is_beta_zero_even() || ly.is_beta_zero_even() {
                    let typ = if ip == jp {
                        DotType::Alpha
                    } else {
                        DotType::Beta
                    };
                    (typ, "II.1-a")
                } else {
                    let gamma = if lx.ty != ly.ty {
                        DotType::Alpha
                    } else {
                        DotType::Beta
                    };
                    let typ = if ip == d_min(t, jp) {
                        gamma
                    } else {
                        gamma.flip()
                    };
                    (typ, "II.1-b")
                }
            } else {
                let other = 1 - k;
                if digit[other] == 0 {
                    let typ = if ip == j {
                        DotType::Alpha
                    } else {
                        DotType::Beta
                    };
                    (typ, "II.2-a")
                } else {
                    let t_other = ty[dots[other]].ok_or_else(|| {
                        inconsistency(t, format!("type of row {} not yet known", dots[other]))
                    })?;
                    match t_other {
                        DotType::Alpha => {
                            let typ = if i != ip && ip == j {
                                DotType::Alpha
                            } else {
                                DotType::Beta
                            };
                            (typ, "II.2-b-i")
                        }
                        DotType::Beta => {
                            let typ = if ip == d_min(t, j) {
                                DotType::Alpha
                            } else {
                                DotType::Beta
                            };
                            (typ, "II.2-b-ii")
                        }
                    }
                }
            };
            ty[i] = Some(typ);
            rules[k] = rule;
        }

        let types = [ty[dots[0]].unwrap(), ty[dots[1]].unwrap()];
        let (parity, parity_rule) = if types[0] != types[1] {
            let p = |t: DotType| {
                if t == DotType::Alpha {
                    Parity::Odd
                } else {
                    Parity::Even
                }
            };
            ([p(types[0]), p(types[1])], "III.1")
        } else {
            if digit[0] == digit[1] {
                return Err(inconsistency(
                    t,
                    format!("column {j}: equal types and equal digits {}", digit[0]),
                ));
            }
            let small = if digit[0] < digit[1] { 0 } else { 1 };
            let (small_p, rule) = match types[0] {
                DotType::Alpha => (Parity::Even, "III.2-a"),
                DotType::Beta => (Parity::Odd, "III.2-b"),
            };
            let mut parity = [small_p; 2];
            parity[1 - small] = if small_p == Parity::Even {
                Parity::Odd
            } else {
                Parity::Even
            };
            (parity, rule)
        };

        for &k in &order {
            labels[dots[k]] = Some(PistolLabel::new(types[k], digit[k], parity[k]));
            trace.push(LabelStep {
                column: j,
                row: dots[k],
                phys_row: rho_unchecked(n, dots[k]),
                arrival: arrival[k],
                type_rule: rules[k],
                parity_rule,
            });
        }
    }

    Ok(LabeledTableau {
        base: t.clone(),
        labels: labels.into_iter().skip(1).map(Option::unwrap).collect(),
        trace,
    })
}

/// `phi(T)`.
pub fn phi(t: &Tableau) -> Result<SurjectivePistol> {
    Ok(pistol_labels(t)?.phi())
}

/// Optional sanity checks on a labelling, returning a description of the
/// first violated fact. Covers: digit bounds, one odd and one even dot per
/// column, the labels of the last column, `α0e` partners, `β0e` partners,
/// and the two facts used only inside the correctness argument (every dot
/// sits at a preimage of its target, and the type of `d_min` in columns
/// without `β0e`).
pub fn label_diagnostics(lt: &LabeledTableau) -> Result<(), String> {
    let n = lt.n();
    let t = lt.base();
    let full = PartialTableau::from(t);
    for j in 1..=n {
        let (a, b) = lt.column_dots(j);
        let (la, lb) = (lt.label(a), lt.label(b));
        if la.digit > n - j || lb.digit > n - j {
            return Err(format!("column {j}: digit above {}", n - j));
        }
        if la.parity == lb.parity {
            return Err(format!("column {j}: both dots have parity {}", la.parity));
        }
        for (x, y) in [(la, lb), (lb, la)] {
            if x.ty == DotType::Alpha
                && x.digit == 0
                && x.parity == Parity::Even
                && !(y.ty == DotType::Alpha && y.digit >= 1 && y.parity == Parity::Odd)
            {
                return Err(format!("column {j}: α0e partner is {y}"));
            }
            if x.is_beta_zero_even() && y.ty != DotType::Alpha {
                return Err(format!("column {j}: β0e partner is {y}"));
            }
        }
        let table = pi(&full, j).map_err(|e| e.to_string())?;
        for (i, l) in [(a, la), (b, lb)] {
            let jp = j + l.digit;
            let pre = [table.inverse(jp).ok(), table.inverse(n + jp).ok()];
            if !pre.contains(&Some(i)) {
                return Err(format!("row {i} is not a preimage of {jp} or {}", n + jp));
            }
        }
    }
    let last = lt.epsilon(n);
    if last
        != [
            PistolLabel::new(DotType::Alpha, 0, Parity::Odd),
            PistolLabel::new(DotType::Beta, 0, Parity::Even),
        ]
    {
        return Err(format!("last column labelled {} {}", last[0], last[1]));
    }
    for i in 1..=n {
        if lt.has_beta_zero_even(i) {
            continue;
        }
        let (a, b) = lt.column_dots(i);
        let expect = if lt.label(a).ty != lt.label(b).ty {
            DotType::Alpha
        } else {
            DotType::Beta
        };
        let dm = d_min(t, i);
        if lt.label(dm).ty != expect {
            return Err(format!("d_min({i}) has type {}", lt.label(dm).ty));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate;

    fn t1() -> Tableau {
        Tableau::new(7, vec![1, 2, 3, 2, 4, 3, 5, 7, 6, 4, 1, 7, 5, 6]).unwrap()
    }

    fn fig10() -> Tableau {
        Tableau::new(7, vec![1, 2, 2, 3, 5, 4, 4, 5, 7, 3, 1, 7, 6, 6]).unwrap()
    }

    #[test]
    fn worked_labels() {
        let lt = pistol_labels(&t1()).unwrap();
        let expect = [
            "α0o", "α0o", "β0e", "β2e", "β1e", "α3o", "α2o", "β0e", "α0o", "β0o", "β2e", "α0o",
            "α1e", "β1e",
        ];
        for (p, e) in (1..=14).zip(expect) {
            assert_eq!(lt.label_at(p).to_string(), e, "physical row {p}");
        }
        assert_eq!(
            lt.phi().values(),
            &[2, 6, 4, 8, 12, 6, 8, 10, 14, 12, 12, 14, 14, 14]
        );
        assert_eq!(lt.ngr_vec().bits(), &[1, 1, 0, 1, 1, 1, 1]);
        assert_eq!(
            lt.epsilon(3).map(|l| l.to_string()),
            ["α3o".to_string(), "β0e".to_string()]
        );
    }

    #[test]
    fn worked_trace() {
        let lt = pistol_labels(&t1()).unwrap();
        let got: Vec<(usize, usize, &str)> = lt
            .trace()
            .iter()
            .map(|s| (s.column, s.phys_row, s.type_rule))
            .collect();
        let expect = [
            (7, 8, "II.2-a"),
            (7, 12, "II.2-a"),
            (6, 14, "II.1-a"),
            (6, 9, "II.2-b-ii"),
            (5, 7, "II.1-a"),
            (5, 13, "II.1-b"),
            (4, 5, "II.1-b"),
            (4, 10, "II.2-b-ii"),
            (3, 6, "II.1-b"),
            (3, 3, "II.2-b-i"),
            (2, 4, "II.1-b"),
            (2, 2, "II.2-b-ii"),
            (1, 11, "II.1-a"),
            // the partner is β2e, so the β branch applies; it yields α0o
            (1, 1, "II.2-b-ii"),
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn second_worked_tableau() {
        let lt = pistol_labels(&fig10()).unwrap();
        assert_eq!(
            lt.phi().values(),
            &[6, 2, 4, 6, 8, 8, 14, 12, 10, 12, 14, 14, 14, 14]
        );
        let expect = [
            (1, "β0e"),
            (11, "α2o"),
            (2, "α0o"),
            (3, "β1e"),
            (4, "β1e"),
            (10, "α1o"),
            (6, "α2e"),
            (7, "α3o"),
            (5, "α0o"),
            (8, "β1e"),
            (13, "α1o"),
            (14, "β1e"),
            // the walk from physical row 9 ends at 2n, so it carries β0e
            (12, "α0o"),
            (9, "β0e"),
        ];
        for (p, e) in expect {
            assert_eq!(lt.label_at(p).to_string(), e, "physical row {p}");
        }
        assert_eq!(
            lt.epsilon(5).map(|l| l.to_string()),
            ["α0o".to_string(), "β1e".to_string()]
        );
    }

    #[test]
    fn d_min_examples() {
        let t = t1();
        assert_eq!(d_min(&t, 3), 10);
        assert_eq!(d_min(&t, 7), 7);
    }

    #[test]
    fn label_parse_round_trip() {
        for s in ["α3o", "β0e"] {
            assert_eq!(s.parse::<PistolLabel>().unwrap().to_string(), s);
        }
        assert_eq!(
            "b2e".parse::<PistolLabel>().unwrap(),
            PistolLabel::new(DotType::Beta, 2, Parity::Even)
        );
        assert!("c1o".parse::<PistolLabel>().is_err());
    }

    #[test]
    fn exhaustive_small_properties() {
        for n in 1..=4 {
            for t in enumerate::tableaux(n) {
                let lt = pistol_labels(&t).unwrap();
                label_diagnostics(&lt).unwrap_or_else(|e| panic!("{}: {e}", t.encode()));
                let f = lt.phi();
                let f = SurjectivePistol::new(n, f.values().to_vec()).unwrap();
                assert_eq!(lt.ngr_vec(), f.ndf_vec(), "{}", t.encode());
                for i in 1..=n {
                    // position of d_min is read off the first preimage of 2i
                    let kmin = (1..=2 * i).find(|&k| f.at(k) == 2 * i).unwrap();
                    assert_eq!(t.col_of(d_min(&t, i)), kmin.div_ceil(2));
                    assert_eq!(f.at(2 * i) == 2 * i, lt.has_beta_zero_even(i));
                }
            }
        }
    }
}
