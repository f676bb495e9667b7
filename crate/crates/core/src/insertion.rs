//! Building a tableau from a pistol: box insertion through `pi_j^{-1}`,
//! `(f, j)`-insertion of lettered dots, and the column-by-column builder
//! `Phi`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objects::{SurjectivePistol, Tableau};
use crate::tpath::{pi, PartialTableau};

/// Insertion letter of a dot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "a",
            Letter::B => "b",
        })
    }
}

/// A partial tableau whose dots carry letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPartialTableau {
    base: PartialTableau,
    /// Indexed by logical row - 1.
    letters: Vec<Option<Letter>>,
}

impl LabeledPartialTableau {
    pub fn empty(n: usize) -> Self {
        LabeledPartialTableau {
            base: PartialTableau::empty(n),
            letters: vec![None; 2 * n],
        }
    }

    pub fn base(&self) -> &PartialTableau {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Letter of the dot `d_i`, if row `i` is filled.
    pub fn letter(&self, i: usize) -> Option<Letter> {
        self.letters[i - 1]
    }

    /// Places a lettered dot at logical row `i` of column `c`.
    pub fn place(&mut self, c: usize, i: usize, letter: Letter) -> Result<()> {
        self.base.place(c, i)?;
        self.letters[i - 1] = Some(letter);
        Ok(())
    }

    pub fn letters(&self) -> Vec<Option<Letter>> {
        self.letters.clone()
    }
}

/// Logical row receiving a dot inserted "into the box of row `target`".
pub fn insertion_row(t: &PartialTableau, j: usize, target: usize) -> Result<usize> {
    let row = pi(t, j)?.inverse(target)?;
    if t.col_of(row).is_some() {
        return Err(Error::BoxOccupied { column: j, row });
    }
    Ok(row)
}

/// Inserts a dot in column `j` at the preimage of `target`.
pub fn insert_at_box(t: &PartialTableau, j: usize, target: usize) -> Result<PartialTableau> {
    let row = insertion_row(t, j, target)?;
    let mut out = t.clone();
    out.place(j, row)?;
    Ok(out)
}

/// Which branch of the `(f, j)`-insertion chose the target row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InsertRule {
    #[serde(rename = "1.(a)")]
    SameEmpty,
    #[serde(rename = "1.(b)")]
    SameOccupied,
    #[serde(rename = "2.(a)i.")]
    HigherEmptyFixed,
    #[serde(rename = "2.(a)ii.")]
    HigherEmpty,
    #[serde(rename = "2.(b)")]
    HigherOccupied,
}

impl InsertRule {
    pub fn id(self) -> &'static str {
        match self {
            InsertRule::SameEmpty => "1.(a)",
            InsertRule::SameOccupied => "1.(b)",
            InsertRule::HigherEmptyFixed => "2.(a)i.",
            InsertRule::HigherEmpty => "2.(a)ii.",
            InsertRule::HigherOccupied => "2.(b)",
        }
    }
}

/// Result of one `(f, j)`-insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inserted {
    pub rule: InsertRule,
    /// The target in `[j, n] ⊔ [n + j, 2n]`.
    pub target: usize,
    /// Logical row where the dot landed.
    pub row: usize,
}

fn choose_target(
    t: &LabeledPartialTableau,
    f: &SurjectivePistol,
    j: usize,
    letter: Letter,
    h: usize,
) -> Result<(usize, InsertRule)> {
    let n = t.n();
    if j + h > n {
        return Err(Error::OutOfRange {
            what: "height",
            value: h,
            lo: 0,
            hi: n - j,
        });
    }
    let i = j + h;
    let row_empty = t.base.col_of(i).is_none();
    Ok(if h == 0 {
        if row_empty {
            (j, InsertRule::SameEmpty)
        } else if letter == Letter::A {
            (j, InsertRule::SameOccupied)
        } else {
            (n + j, InsertRule::SameOccupied)
        }
    } else if row_empty {
        if letter == Letter::B && f.at(2 * i) == 2 * i {
            (n + i, InsertRule::HigherEmptyFixed)
        } else {
            (i, InsertRule::HigherEmpty)
        }
    } else {
        let other = t.letter(i).ok_or_else(|| Error::InternalInconsistency {
            stage: "(f,j)-insertion",
            detail: format!("row {i} holds a dot without a letter"),
            encoding: format!("{:?}", t.base.phys_col()),
        })?;
        if other == letter {
            (i, InsertRule::HigherOccupied)
        } else {
            (n + i, InsertRule::HigherOccupied)
        }
    })
}

/// `(f, j)`-insertion of a dot lettered `letter` at height `h`, in place.
pub fn fj_insert_mut(
    t: &mut LabeledPartialTableau,
    f: &SurjectivePistol,
    j: usize,
    letter: Letter,
    h: usize,
) -> Result<Inserted> {
    let (target, rule) = choose_target(t, f, j, letter, h)?;
    let row = insertion_row(&t.base, j, target)?;
    t.place(j, row, letter)?;
    Ok(Inserted { rule, target, row })
}

/// `(f, j)`-insertion returning a new tableau.
pub fn fj_insert(
    t: &LabeledPartialTableau,
    f: &SurjectivePistol,
    j: usize,
    letter: Letter,
    h: usize,
) -> Result<(LabeledPartialTableau, Inserted)> {
    let mut out = t.clone();
    let ins = fj_insert_mut(&mut out, f, j, letter, h)?;
    Ok((out, ins))
}

/// How the letters of a stage were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LetterRule {
    #[serde(rename = "I.1-")]
    RowEmpty,
    #[serde(rename = "I.2-a)")]
    RowHoldsA,
    #[serde(rename = "I.2-b)i.")]
    RowHoldsBRising,
    #[serde(rename = "I.2-b)ii.")]
    RowHoldsBFalling,
}

impl LetterRule {
    pub fn id(self) -> &'static str {
        match self {
            LetterRule::RowEmpty => "I.1-",
            LetterRule::RowHoldsA => "I.2-a)",
            LetterRule::RowHoldsBRising => "I.2-b)i.",
            LetterRule::RowHoldsBFalling => "I.2-b)ii.",
        }
    }
}

/// Everything decided while filling one column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub j: usize,
    pub deltas: (usize, usize),
    pub letter_rule: LetterRule,
    pub letters: (Letter, Letter),
    pub heights: (usize, usize),
    pub odd: Inserted,
    pub even: Inserted,
}

/// `Phi(f)` with its letters and per-column trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiBuild {
    pub tableau: Tableau,
    /// Indexed by logical row - 1.
    pub letters: Vec<Letter>,
    pub stages: Vec<Stage>,
}

impl PhiBuild {
    /// Letter of the dot in physical row `p`.
    pub fn letter_at(&self, p: usize) -> Letter {
        self.letters[crate::rows::rho_unchecked(self.tableau.n(), p) - 1]
    }
}

/// Fills column `j` of `t` from `f(2j - 1)` and `f(2j)`.
pub fn stage(t: &mut LabeledPartialTableau, f: &SurjectivePistol, j: usize) -> Result<Stage> {
    let n = t.n();
    let (vo, ve) = (f.at(2 * j - 1) / 2, f.at(2 * j) / 2);
    if vo < j || ve < j {
        return Err(Error::PreconditionViolated(format!(
            "f({}) or f({}) is below {}",
            2 * j - 1,
            2 * j,
            2 * j
        )));
    }
    let (d_o, d_e) = (vo - j, ve - j);
    let (letters, letter_rule) = match t.base.col_of(j) {
        None => ((Letter::A, Letter::B), LetterRule::RowEmpty),
        Some(_) => match t.letter(j) {
            Some(Letter::A) => ((Letter::A, Letter::B), LetterRule::RowHoldsA),
            _ if d_o < d_e => ((Letter::B, Letter::B), LetterRule::RowHoldsBRising),
            _ => ((Letter::A, Letter::A), LetterRule::RowHoldsBFalling),
        },
    };
    let h_e = if letters.1 == Letter::A && d_o == d_e {
        0
    } else {
        d_e
    };
    let heights = (d_o, h_e);
    let odd = fj_insert_mut(t, f, j, letters.0, heights.0)?;
    let even = fj_insert_mut(t, f, j, letters.1, heights.1)?;
    if t.base.col_of(j).is_none() {
        return Err(Error::InternalInconsistency {
            stage: "Phi",
            detail: format!("row {j} still empty after column {j}"),
            encoding: f.encode(),
        });
    }
    let _ = n;
    Ok(Stage {
        j,
        deltas: (d_o, d_e),
        letter_rule,
        letters,
        heights,
        odd,
        even,
    })
}

/// Runs the stages `from..=n` on a prepared lettered tableau.
pub fn resume_phi(
    mut t: LabeledPartialTableau,
    f: &SurjectivePistol,
    from: usize,
) -> Result<PhiBuild> {
    let n = f.n();
    let mut stages = Vec::with_capacity(n + 1 - from);
    for j in from..=n {
        stages.push(stage(&mut t, f, j)?);
    }
    let tableau = t.base.to_tableau()?;
    let letters = t
        .letters
        .iter()
        .map(|l| {
            l.ok_or_else(|| Error::InternalInconsistency {
                stage: "Phi",
                detail: "a dot is missing its letter".into(),
                encoding: tableau.encode(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiBuild {
        tableau,
        letters,
        stages,
    })
}

/// `Phi(f)`.
pub fn build_phi(f: &SurjectivePistol) -> Result<PhiBuild> {
    resume_phi(LabeledPartialTableau::empty(f.n()), f, 1)
}
