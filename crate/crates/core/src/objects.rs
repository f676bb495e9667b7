//! The four object families, their validating constructors and their
//! canonical text / JSON encodings.
//!
//! Every object is an immutable value. Text encodings look like
//! `T n=2 cols=1,1,2,2` and double as dedupe and ordering keys; the derived
//! `Ord` (size first, then the array lexicographically) is the canonical order
//! used by every enumerator.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, ValidationError};
use crate::rows::rho_unchecked;

/// Largest supported number of columns. Row sets are kept in `u64` masks.
pub const MAX_N: usize = 32;

fn check_size(n: usize, max: usize) -> Result<(), ValidationError> {
    if n == 0 || n > max {
        Err(ValidationError::BadSize { n, max })
    } else {
        Ok(())
    }
}

fn check_len(expected: usize, actual: usize) -> Result<(), ValidationError> {
    if expected != actual {
        Err(ValidationError::WrongLength { expected, actual })
    } else {
        Ok(())
    }
}

/// Checks "one dot per row, two per column, column inside `band(row)`".
fn check_two_per_column(
    n: usize,
    cols: &[usize],
    band: impl Fn(usize) -> (usize, usize),
) -> Result<(), ValidationError> {
    let mut count = vec![0usize; n + 1];
    for (idx, &c) in cols.iter().enumerate() {
        let row = idx + 1;
        let (lo, hi) = band(row);
        if c < lo.max(1) || c > hi.min(n) {
            return Err(ValidationError::DiagonalViolation { row, column: c });
        }
        count[c] += 1;
        if count[c] > 2 {
            return Err(ValidationError::ColumnCountViolation {
                column: c,
                count: count[c],
                row,
            });
        }
    }
    if let Some(column) = (1..=n).find(|&c| count[c] != 2) {
        return Err(ValidationError::ColumnCountViolation {
            column,
            count: count[column],
            row: 0,
        });
    }
    Ok(())
}

/// Dellac configuration: `n` columns, `2n` rows, one dot per row, two per
/// column, and a dot `(j, i)` satisfies `j <= i <= j + n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DellacConfig {
    n: usize,
    row_col: Vec<usize>,
}

impl DellacConfig {
    pub fn new(n: usize, row_col: Vec<usize>) -> Result<Self> {
        check_size(n, MAX_N)?;
        check_len(2 * n, row_col.len())?;
        check_two_per_column(n, &row_col, |i| (i.saturating_sub(n), i))?;
        Ok(DellacConfig { n, row_col })
    }

    pub(crate) fn from_parts_unchecked(n: usize, row_col: Vec<usize>) -> Self {
        DellacConfig { n, row_col }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Column of the dot in each physical row, bottom to top.
    pub fn row_col(&self) -> &[usize] {
        &self.row_col
    }

    pub fn encode(&self) -> String {
        format!("D n={} cols={}", self.n, join(&self.row_col))
    }
}

/// Symplectic Dellac configuration of size `2n`: a Dellac configuration with
/// `2n` columns that is invariant under the central reflection
/// `(j, i) -> (2n + 1 - j, 4n + 1 - i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymplecticConfig {
    n: usize,
    base: DellacConfig,
}

impl SymplecticConfig {
    /// `n` is the half-size; `row_col` has `4n` entries in `1..=2n`.
    pub fn new(n: usize, row_col: Vec<usize>) -> Result<Self> {
        check_size(n, MAX_N / 2)?;
        let base = DellacConfig::new(2 * n, row_col)?;
        let rows = 4 * n;
        for i in 1..=rows {
            if base.row_col[rows - i] != 2 * n + 1 - base.row_col[i - 1] {
                return Err(ValidationError::SymmetryViolation { row: i }.into());
            }
        }
        Ok(SymplecticConfig { n, base })
    }

    pub(crate) fn from_parts_unchecked(n: usize, row_col: Vec<usize>) -> Self {
        SymplecticConfig {
            n,
            base: DellacConfig::from_parts_unchecked(2 * n, row_col),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &DellacConfig {
        &self.base
    }

    pub fn row_col(&self) -> &[usize] {
        &self.base.row_col
    }

    pub fn encode(&self) -> String {
        format!("S n={} cols={}", self.n, join(&self.base.row_col))
    }
}

/// Element of `Tab_n`: like a Dellac configuration but only the lower bound
/// `column <= row` applies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    n: usize,
    phys_col: Vec<usize>,
}

impl Tableau {
    pub fn new(n: usize, phys_col: Vec<usize>) -> Result<Self> {
        check_size(n, MAX_N)?;
        check_len(2 * n, phys_col.len())?;
        check_two_per_column(n, &phys_col, |p| (1, p))?;
        Ok(Tableau { n, phys_col })
    }

    pub(crate) fn from_parts_unchecked(n: usize, phys_col: Vec<usize>) -> Self {
        Tableau { n, phys_col }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Column of the dot in each physical row, bottom to top.
    pub fn phys_col(&self) -> &[usize] {
        &self.phys_col
    }

    /// Column of the dot in physical row `p`.
    pub fn col_at(&self, p: usize) -> usize {
        self.phys_col[p - 1]
    }

    /// Column of the dot `d_i` (logical row name `i`).
    pub fn col_of(&self, i: usize) -> usize {
        self.phys_col[rho_unchecked(self.n, i) - 1]
    }

    /// Physical rows `(lower, upper)` of the two dots of column `j`.
    pub fn column_rows(&self, j: usize) -> (usize, usize) {
        let mut it = (1..=2 * self.n).filter(|&p| self.phys_col[p - 1] == j);
        let lo = it.next().expect("column has two dots");
        let hi = it.next().expect("column has two dots");
        (lo, hi)
    }

    /// A dot in physical row `p` is free when `p >= 2n + 1 - column`.
    pub fn is_free_at(&self, p: usize) -> bool {
        p + self.col_at(p) > 2 * self.n
    }

    /// Bit `i` is set iff the dot `d_{n+i}` is free.
    pub fn fr_vec(&self) -> StatVector {
        let n = self.n;
        StatVector::from_fn(n, |i| self.is_free_at(rho_unchecked(n, n + i)))
    }

    /// Number of free dots.
    pub fn fr(&self) -> usize {
        (1..=2 * self.n).filter(|&p| self.is_free_at(p)).count()
    }

    pub fn encode(&self) -> String {
        format!("T n={} cols={}", self.n, join(&self.phys_col))
    }
}

/// Surjective pistol: `f : [2n] -> {2, 4, ..., 2n}` onto, with `f(j) >= j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurjectivePistol {
    n: usize,
    f: Vec<usize>,
}

impl SurjectivePistol {
    pub fn new(n: usize, f: Vec<usize>) -> Result<Self> {
        check_size(n, MAX_N)?;
        check_len(2 * n, f.len())?;
        let mut hit = vec![false; n + 1];
        for (idx, &v) in f.iter().enumerate() {
            let index = idx + 1;
            if v == 0 || v % 2 == 1 || v > 2 * n {
                return Err(ValidationError::BadValue { index, value: v }.into());
            }
            if v < index {
                return Err(ValidationError::ValueBelowIndex { index, value: v }.into());
            }
            hit[v / 2] = true;
        }
        if let Some(k) = (1..=n).find(|&k| !hit[k]) {
            return Err(ValidationError::NotSurjective { value: 2 * k }.into());
        }
        Ok(SurjectivePistol { n, f })
    }

    pub(crate) fn from_parts_unchecked(n: usize, f: Vec<usize>) -> Self {
        SurjectivePistol { n, f }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.f
    }

    /// `f(j)` for `j` in `1..=2n`.
    pub fn at(&self, j: usize) -> usize {
        self.f[j - 1]
    }

    /// `2i` (with `2i <= 2n - 2`) is a doubled fixed point when some
    /// `j' < 2i` also satisfies `f(j') = f(2i) = 2i`.
    pub fn is_doubled_fixed_point(&self, i: usize) -> bool {
        let two_i = 2 * i;
        two_i + 2 <= 2 * self.n
            && self.at(two_i) == two_i
            && (1..two_i).any(|j| self.at(j) == two_i)
    }

    /// The even values that are doubled fixed points.
    pub fn doubled_fixed_points(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&i| self.is_doubled_fixed_point(i))
            .map(|i| 2 * i)
            .collect()
    }

    /// Bit `i` is cleared iff `2i` is a doubled fixed point.
    pub fn ndf_vec(&self) -> StatVector {
        StatVector::from_fn(self.n, |i| !self.is_doubled_fixed_point(i))
    }

    pub fn ndf(&self) -> usize {
        self.ndf_vec().count_ones()
    }

    pub fn encode(&self) -> String {
        format!("P n={} f={}", self.n, join(&self.f))
    }
}

/// A 0/1 vector indexed by `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StatVector(Vec<u8>);

impl StatVector {
    pub fn new(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        StatVector(bits)
    }

    pub fn from_fn(n: usize, mut bit: impl FnMut(usize) -> bool) -> Self {
        StatVector((1..=n).map(|i| u8::from(bit(i))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bit `i`, 1-based.
    pub fn get(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for StatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.0))
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Any of the four families, as read from text or JSON.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Object {
    Dellac(DellacConfig),
    Spdc(SymplecticConfig),
    Tableau(Tableau),
    Pistol(SurjectivePistol),
}

impl Object {
    pub fn encode(&self) -> String {
        match self {
            Object::Dellac(d) => d.encode(),
            Object::Spdc(s) => s.encode(),
            Object::Tableau(t) => t.encode(),
            Object::Pistol(p) => p.encode(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Object::Dellac(_) => "dellac",
            Object::Spdc(_) => "spdc",
            Object::Tableau(_) => "tableau",
            Object::Pistol(_) => "pistol",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Repr::from(self)).expect("object serialises")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let repr: Repr = serde_json::from_value(value.clone()).map_err(|e| Error::Parse {
            input: value.to_string(),
            reason: e.to_string(),
        })?;
        repr.validate()
    }
}

impl FromStr for Object {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = s.split_whitespace();
        let kind = parts.next().ok_or_else(|| bad("empty input"))?;
        let n_part = parts.next().ok_or_else(|| bad("missing n="))?;
        let list_part = parts.next().ok_or_else(|| bad("missing value list"))?;
        if parts.next().is_some() {
            return Err(bad("trailing tokens"));
        }
        let n: usize = n_part
            .strip_prefix("n=")
            .ok_or_else(|| bad("expected n=<size>"))?
            .parse()
            .map_err(|_| bad("n is not an integer"))?;
        let key = if kind == "P" { "f=" } else { "cols=" };
        let list = list_part
            .strip_prefix(key)
            .ok_or_else(|| bad(&format!("expected {key}<list>")))?;
        let values = list
            .split(',')
            .map(|v| v.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("list entries must be non-negative integers"))?;
        match kind {
            "D" => Ok(Object::Dellac(DellacConfig::new(n, values)?)),
            "S" => Ok(Object::Spdc(SymplecticConfig::new(n, values)?)),
            "T" => Ok(Object::Tableau(Tableau::new(n, values)?)),
            "P" => Ok(Object::Pistol(SurjectivePistol::new(n, values)?)),
            _ => Err(bad("unknown kind prefix (expected D, S, T or P)")),
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

macro_rules! family_impls {
    ($ty:ident, $variant:ident, $what:literal) => {
        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.parse::<Object>()? {
                    Object::$variant(x) => Ok(x),
                    other => Err(Error::Parse {
                        input: s.to_string(),
                        reason: format!("expected a {}, found a {}", $what, other.kind()),
                    }),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.encode())
            }
        }

        impl From<$ty> for Object {
            fn from(x: $ty) -> Object {
                Object::$variant(x)
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                Repr::from(&Object::$variant(self.clone())).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                match Repr::deserialize(d)?.validate() {
                    Ok(Object::$variant(x)) => Ok(x),
                    Ok(other) => Err(serde::de::Error::custom(format!(
                        "expected a {}, found a {}",
                        $what,
                        other.kind()
                    ))),
                    Err(e) => Err(serde::de::Error::custom(e)),
                }
            }
        }
    };
}

family_impls!(DellacConfig, Dellac, "dellac");
family_impls!(SymplecticConfig, Spdc, "spdc");
family_impls!(Tableau, Tableau, "tableau");
family_impls!(SurjectivePistol, Pistol, "pistol");

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Repr {
    Dellac { n: usize, cols: Vec<usize> },
    Spdc { n: usize, cols: Vec<usize> },
    Tableau { n: usize, cols: Vec<usize> },
    Pistol { n: usize, f: Vec<usize> },
}

impl From<&Object> for Repr {
    fn from(o: &Object) -> Repr {
        match o {
            Object::Dellac(d) => Repr::Dellac {
                n: d.n,
                cols: d.row_col.clone(),
            },
            Object::Spdc(s) => Repr::Spdc {
                n: s.n,
                cols: s.base.row_col.clone(),
            },
            Object::Tableau(t) => Repr::Tableau {
                n: t.n,
                cols: t.phys_col.clone(),
            },
            Object::Pistol(p) => Repr::Pistol {
                n: p.n,
                f: p.f.clone(),
            },
        }
    }
}

impl Repr {
    fn validate(self) -> Result<Object> {
        Ok(match self {
            Repr::Dellac { n, cols } => Object::Dellac(DellacConfig::new(n, cols)?),
            Repr::Spdc { n, cols } => Object::Spdc(SymplecticConfig::new(n, cols)?),
            Repr::Tableau { n, cols } => Object::Tableau(Tableau::new(n, cols)?),
            Repr::Pistol { n, f } => Object::Pistol(SurjectivePistol::new(n, f)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> Tableau {
        Tableau::new(7, vec![1, 2, 3, 2, 4, 3, 5, 7, 6, 4, 1, 7, 5, 6]).unwrap()
    }

    #[test]
    fn builds_worked_examples() {
        t1();
        SurjectivePistol::new(7, vec![2, 6, 4, 8, 12, 6, 8, 10, 14, 12, 12, 14, 14, 14]).unwrap();
    }

    #[test]
    fn tableau_errors_name_the_invariant() {
        assert_eq!(
            Tableau::new(2, vec![1, 1, 2, 1]),
            Err(ValidationError::ColumnCountViolation {
                column: 1,
                count: 3,
                row: 4
            }
            .into())
        );
        assert_eq!(
            Tableau::new(2, vec![2, 1, 1, 2]),
            Err(ValidationError::DiagonalViolation { row: 1, column: 2 }.into())
        );
        assert!(matches!(
            Tableau::new(2, vec![1, 1, 2]),
            Err(Error::Invalid(ValidationError::WrongLength { .. }))
        ));
    }

    #[test]
    fn dellac_upper_band() {
        // dot in row 4 of column 1 violates i <= j + n for n = 2
        assert_eq!(
            DellacConfig::new(2, vec![1, 2, 2, 1]),
            Err(ValidationError::DiagonalViolation { row: 4, column: 1 }.into())
        );
        DellacConfig::new(2, vec![1, 1, 2, 2]).unwrap();
    }

    #[test]
    fn spdc_symmetry() {
        SymplecticConfig::new(1, vec![1, 1, 2, 2]).unwrap();
        SymplecticConfig::new(1, vec![1, 2, 1, 2]).unwrap();
        assert!(matches!(
            SymplecticConfig::new(1, vec![1, 1, 2, 2].into_iter().rev().collect()),
            Err(Error::Invalid(ValidationError::DiagonalViolation { .. }))
        ));
        // a Dellac configuration of size 4 that is not centrally symmetric
        let not_sym = vec![1, 1, 2, 2, 3, 3, 4, 4];
        DellacConfig::new(4, not_sym.clone()).unwrap();
        let sym = SymplecticConfig::new(2, not_sym.clone());
        assert!(sym.is_ok(), "1,1,2,2,3,3,4,4 is its own reflection");
        let other = vec![1, 1, 2, 3, 2, 4, 3, 4];
        DellacConfig::new(4, other.clone()).unwrap();
        assert!(matches!(
            SymplecticConfig::new(2, other),
            Err(Error::Invalid(ValidationError::SymmetryViolation { .. }))
        ));
    }

    #[test]
    fn pistol_errors() {
        assert_eq!(
            SurjectivePistol::new(2, vec![2, 2, 2, 4]),
            Err(ValidationError::ValueBelowIndex { index: 3, value: 2 }.into())
        );
        assert_eq!(
            SurjectivePistol::new(2, vec![4, 4, 4, 4]),
            Err(ValidationError::NotSurjective { value: 2 }.into())
        );
        assert_eq!(
            SurjectivePistol::new(2, vec![3, 4, 4, 4]),
            Err(ValidationError::BadValue { index: 1, value: 3 }.into())
        );
    }

    #[test]
    fn free_dots() {
        assert_eq!(t1().fr_vec().bits(), &[1, 1, 0, 0, 1, 1, 1]);
        assert_eq!(t1().fr(), 5);
        let frs: Vec<usize> = [[1, 1, 2, 2], [1, 2, 1, 2], [1, 2, 2, 1]]
            .iter()
            .map(|c| Tableau::new(2, c.to_vec()).unwrap().fr())
            .collect();
        assert_eq!(frs, vec![2, 1, 2]);
    }

    #[test]
    fn ndf_examples() {
        let p = |n, f: &[usize]| SurjectivePistol::new(n, f.to_vec()).unwrap();
        assert_eq!(p(2, &[2, 2, 4, 4]).ndf(), 1);
        assert_eq!(p(2, &[4, 2, 4, 4]).ndf(), 2);
        assert_eq!(p(2, &[2, 4, 4, 4]).ndf(), 2);
        assert_eq!(p(1, &[2, 2]).ndf(), 1);
        let f1 = p(7, &[2, 6, 4, 8, 12, 6, 8, 10, 14, 12, 12, 14, 14, 14]);
        assert_eq!(f1.ndf_vec().bits(), &[1, 1, 0, 1, 1, 1, 1]);
        assert_eq!(f1.doubled_fixed_points(), vec![6]);
    }

    #[test]
    fn text_and_json_encodings() {
        let t = t1();
        assert_eq!(t.encode(), "T n=7 cols=1,2,3,2,4,3,5,7,6,4,1,7,5,6");
        assert_eq!(t.encode().parse::<Tableau>().unwrap(), t);
        let json = Object::from(t.clone()).to_json();
        assert_eq!(json["kind"], "tableau");
        assert_eq!(json["n"], 7);
        assert_eq!(Object::from_json(&json).unwrap(), Object::Tableau(t));
        assert!("P n=2 cols=2,2,4,4".parse::<Object>().is_err());
        assert!("T n=2 cols=1,1,2".parse::<Object>().is_err());
        assert!("P n=2 f=2,2,4,4".parse::<Tableau>().is_err());
    }
}
