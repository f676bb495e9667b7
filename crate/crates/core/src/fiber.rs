//! Fibers of `phi`: the sets `S(T)` and `C(T)`, the switch and mute
//! operations, and two ways of computing `phi^{-1}(f)` (closure under the
//! operations from `Phi(f)`, and brute-force filtering of `Tab_n`).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate;
use crate::error::{Error, Result};
use crate::insertion::{build_phi, resume_phi, LabeledPartialTableau, Letter, PhiBuild};
use crate::labeling::{d_min, pistol_labels, DotType, LabeledTableau};
use crate::objects::{SurjectivePistol, Tableau};
use crate::rows::rho_unchecked;
use crate::tpath::{pi, PartialTableau};

/// The data that, together with `phi(T)`, singles out `T` in its fiber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberSignature {
    /// `S(T)`, ascending.
    pub s_set: Vec<usize>,
    /// `mu_k` for each element of `s_set`: `1` iff `d_{i,min} = d_i`.
    pub mu: Vec<i8>,
    /// `C(T)`, ascending.
    pub c_set: Vec<usize>,
    /// Type of the lower-named twin `d_i` for each element of `c_set`.
    pub t_map: Vec<DotType>,
}

impl FiberSignature {
    pub fn t(&self, j: usize) -> Option<DotType> {
        self.c_set
            .iter()
            .position(|&c| c == j)
            .map(|k| self.t_map[k])
    }
}

/// `(i, j)` such that column `j` holds the twins `d_i`, `d_{n+i}`.
fn twin_column(lt: &LabeledTableau, j: usize) -> Option<usize> {
    let n = lt.n();
    let (a, b) = lt.column_dots(j);
    let (lo, hi) = (a.min(b), a.max(b));
    (lo <= n && hi == lo + n).then_some(lo)
}

pub fn signature(lt: &LabeledTableau) -> FiberSignature {
    let t = lt.base();
    let n = t.n();
    let mut sig = FiberSignature {
        s_set: Vec::new(),
        mu: Vec::new(),
        c_set: Vec::new(),
        t_map: Vec::new(),
    };
    for i in 1..=n {
        let upper_free = t.is_free_at(rho_unchecked(n, n + i));
        if !upper_free && t.col_of(i) != t.col_of(n + i) && !lt.has_beta_zero_even(i) {
            sig.s_set.push(i);
            sig.mu.push(if d_min(t, i) == i { 1 } else { -1 });
        }
    }
    for j in 1..=n {
        if let Some(i) = twin_column(lt, j) {
            if !lt.has_beta_zero_even(i) {
                sig.c_set.push(j);
                sig.t_map.push(lt.label(i).ty);
            }
        }
    }
    sig
}

/// Membership in the image of `Phi`: every `mu` is `1` and every `t` is `α`.
pub fn is_tilde(lt: &LabeledTableau) -> bool {
    let sig = signature(lt);
    sig.mu.iter().all(|&m| m == 1) && sig.t_map.iter().all(|&t| t == DotType::Alpha)
}

fn type_rule(lt: &LabeledTableau, row: usize) -> &'static str {
    lt.trace()
        .iter()
        .find(|s| s.row == row)
        .map_or("", |s| s.type_rule)
}

/// `S_mu(T)`: reroutes the twins indexed by `S(T)` according to `mu`.
pub fn switch(lt: &LabeledTableau, mu: &[i8]) -> Result<Tableau> {
    let t = lt.base();
    let n = t.n();
    let s_set = signature(lt).s_set;
    if mu.len() != s_set.len() || mu.iter().any(|&m| m != 1 && m != -1) {
        return Err(Error::PreconditionViolated(format!(
            "mu must be a ±1 vector of length {} (|S(T)|)",
            s_set.len()
        )));
    }
    let source = PartialTableau::from(t);
    let mut out = PartialTableau::empty(n);
    for j in 1..=n {
        let pi_t = pi(&source, j)?;
        let pi_new = pi(&out, j)?;
        let (r1, r2) = lt.column_dots(j);
        let mut rows = [0usize; 2];
        for (slot, &r) in [r1, r2].iter().enumerate() {
            let arrival = pi_t.get(r).ok_or_else(|| Error::InternalInconsistency {
                stage: "switch",
                detail: format!("row {r} of column {j} has no T-path arrival"),
                encoding: t.encode(),
            })?;
            let base = if arrival > n { arrival - n } else { arrival };
            let target = match s_set.iter().position(|&i| i == base) {
                Some(k) => {
                    let i = s_set[k];
                    let (gamma, gamma_bar) = if mu[k] == 1 { (i, n + i) } else { (n + i, i) };
                    // Dots left of column i are typed by whether they reach
                    // the row of d_{i,min}; in column i itself only one
                    // branch of the digit-0 rule looks at d_{i,min}, the
                    // others read the arrival directly and must keep it.
                    let tracks_min = j < i || type_rule(lt, r) == "II.2-b-ii";
                    if !tracks_min {
                        arrival
                    } else if arrival == d_min(t, i) {
                        gamma
                    } else {
                        gamma_bar
                    }
                }
                None => arrival,
            };
            rows[slot] = pi_new.inverse(target)?;
        }
        if rows[0] == rows[1] {
            return Err(Error::RowCollision {
                column: j,
                row: rows[0],
            });
        }
        for r in rows {
            out.place(j, r)?;
        }
    }
    out.to_tableau()
}

/// The current `mu` vector of `T` maps it to itself; all ones maps it into
/// the image of `Phi` on the `S` side.
pub fn switch_all(lt: &LabeledTableau) -> Result<Vec<(Vec<i8>, Tableau)>> {
    let m = signature(lt).s_set.len();
    (0u64..1 << m)
        .map(|bits| {
            let mu: Vec<i8> = (0..m)
                .map(|k| if bits >> k & 1 == 1 { -1 } else { 1 })
                .collect();
            switch(lt, &mu).map(|t| (mu, t))
        })
        .collect()
}

/// `M_{j0,gamma}(T)`: forces the type of the lower twin of column `j0` and
/// rebuilds the columns to its right with the insertion algorithm.
pub fn mute(lt: &LabeledTableau, j0: usize, gamma: DotType) -> Result<PhiBuild> {
    let sig = signature(lt);
    if !sig.c_set.contains(&j0) {
        return Err(Error::PreconditionViolated(format!(
            "column {j0} is not in C(T) = {:?}",
            sig.c_set
        )));
    }
    let n = lt.n();
    let f = lt.phi();
    let tilde = switch(lt, &vec![1; sig.s_set.len()])?;
    let tl = pistol_labels(&tilde)?;
    let i = twin_column(&tl, j0).ok_or_else(|| Error::InternalInconsistency {
        stage: "mute",
        detail: format!("column {j0} lost its twins after the all-ones switch"),
        encoding: tilde.encode(),
    })?;
    let mut start = LabeledPartialTableau::empty(n);
    for j in 1..j0 {
        let (a, b) = tl.column_dots(j);
        for r in [a, b] {
            let letter = match tl.label(r).ty {
                DotType::Alpha => Letter::A,
                DotType::Beta => Letter::B,
            };
            start.place(j, r, letter)?;
        }
    }
    let (c, c_bar) = match gamma {
        DotType::Alpha => (Letter::A, Letter::B),
        DotType::Beta => (Letter::B, Letter::A),
    };
    start.place(j0, i, c)?;
    start.place(j0, n + i, c_bar)?;
    resume_phi(start, &f, j0 + 1)
}

/// Every tableau reachable in one switch or mute from `T`.
pub fn neighbours(lt: &LabeledTableau) -> Result<Vec<Tableau>> {
    let mut out: Vec<Tableau> = switch_all(lt)?.into_iter().map(|(_, t)| t).collect();
    for &j in &signature(lt).c_set {
        for gamma in [DotType::Alpha, DotType::Beta] {
            out.push(mute(lt, j, gamma)?.tableau);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberMode {
    Closure,
    Brute,
}

impl std::str::FromStr for FiberMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closure" => Ok(FiberMode::Closure),
            "brute" => Ok(FiberMode::Brute),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected `closure` or `brute`".into(),
            }),
        }
    }
}

/// Breadth-first closure of `{Phi(f)}` under switches and mutes.
pub fn fiber_closure(f: &SurjectivePistol) -> Result<Vec<Tableau>> {
    let start = build_phi(f)?.tableau;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let lt = pistol_labels(&t)?;
        for next in neighbours(&lt)? {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `phi^{-1}(f)` by filtering every tableau of size `n`.
pub fn fiber_brute(f: &SurjectivePistol) -> Result<Vec<Tableau>> {
    let mut out = Vec::new();
    for t in enumerate::tableaux_par(f.n()) {
        if pistol_labels(&t)?.phi() == *f {
            out.push(t);
        }
    }
    Ok(out)
}

pub fn fiber(f: &SurjectivePistol, mode: FiberMode) -> Result<Vec<Tableau>> {
    match mode {
        FiberMode::Closure => fiber_closure(f),
        FiberMode::Brute => fiber_brute(f),
    }
}

/// All fibers of size `n` at once, by one pass over `Tab_n`.
pub fn brute_fibers(n: usize) -> Result<BTreeMap<SurjectivePistol, Vec<Tableau>>> {
    let labelled: Vec<(SurjectivePistol, Tableau)> = enumerate::tableaux_par(n)
        .into_par_iter()
        .map(|t| pistol_labels(&t).map(|lt| (lt.phi(), t)))
        .collect::<Result<_>>()?;
    let mut map: BTreeMap<SurjectivePistol, Vec<Tableau>> = BTreeMap::new();
    for (f, t) in labelled {
        map.entry(f).or_default().push(t);
    }
    Ok(map)
}

/// Both sides of `sum_{T in phi^{-1}(f)} 2^fr(T) = 2^ndf(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberSum {
    pub pistol: SurjectivePistol,
    /// `(T, fr(T))` for each fiber member, ascending.
    pub members: Vec<(Tableau, usize)>,
    pub lhs: u128,
    pub rhs: u128,
}

impl FiberSum {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn fiber_sum_of(f: &SurjectivePistol, members: Vec<Tableau>) -> FiberSum {
    let members: Vec<(Tableau, usize)> = members
        .into_iter()
        .map(|t| {
            let fr = t.fr();
            (t, fr)
        })
        .collect();
    FiberSum {
        pistol: f.clone(),
        lhs: members.iter().map(|(_, fr)| 1u128 << fr).sum(),
        rhs: 1u128 << f.ndf(),
        members,
    }
}

pub fn fiber_sum_check(f: &SurjectivePistol, mode: FiberMode) -> Result<FiberSum> {
    Ok(fiber_sum_of(f, fiber(f, mode)?))
}

/// Members of a fiber whose `C` set contains `j`.
pub fn with_twin_column(fiber: &[LabeledTableau], j: usize) -> Vec<&LabeledTableau> {
    fiber
        .iter()
        .filter(|lt| signature(lt).c_set.contains(&j))
        .collect()
}

/// Members agreeing with `t0` on `C ∩ [j - 1]` and its `t` labels, and
/// (when `gamma` is given) with `t(j) = gamma`.
pub fn agreeing_below<'a>(
    fiber: &'a [LabeledTableau],
    t0: &LabeledTableau,
    j: usize,
    gamma: Option<DotType>,
) -> Vec<&'a LabeledTableau> {
    let below = |sig: &FiberSignature| -> Vec<(usize, DotType)> {
        sig.c_set
            .iter()
            .zip(&sig.t_map)
            .filter(|(&c, _)| c < j)
            .map(|(&c, &t)| (c, t))
            .collect()
    };
    let reference = below(&signature(t0));
    fiber
        .iter()
        .filter(|lt| {
            let sig = signature(lt);
            below(&sig) == reference && gamma.is_none_or(|g| sig.t(j) == Some(g))
        })
        .collect()
}
