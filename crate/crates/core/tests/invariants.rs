use std::sync::OnceLock;

use dellac_core::bridge::{self, ExpansionChoice};
use dellac_core::enumerate;
use dellac_core::fiber;
use dellac_core::insertion::build_phi;
use dellac_core::labeling::pistol_labels;
use dellac_core::{Object, SurjectivePistol, SymplecticConfig, Tableau};
use proptest::prelude::*;

fn tabs(n: usize) -> &'static [Tableau] {
    static CACHE: OnceLock<Vec<Vec<Tableau>>> = OnceLock::new();
    &CACHE.get_or_init(|| (1..=5).map(enumerate::tableaux).collect())[n - 1]
}

fn pistols(n: usize) -> &'static [SurjectivePistol] {
    static CACHE: OnceLock<Vec<Vec<SurjectivePistol>>> = OnceLock::new();
    &CACHE.get_or_init(|| (1..=5).map(enumerate::pistols).collect())[n - 1]
}

fn tableau() -> impl Strategy<Value = Tableau> {
    (1usize..=5, any::<prop::sample::Index>()).prop_map(|(n, i)| i.get(tabs(n)).clone())
}

fn pistol() -> impl Strategy<Value = SurjectivePistol> {
    (1usize..=5, any::<prop::sample::Index>()).prop_map(|(n, i)| i.get(pistols(n)).clone())
}

/// A random n = 6 or 7 tableau: `Phi` of a random pistol, then a random
/// walk through its fiber.
fn large_tableau() -> impl Strategy<Value = Tableau> {
    (
        6usize..=7,
        prop::collection::vec(any::<prop::sample::Index>(), 14),
        0usize..4,
    )
        .prop_filter_map("not a pistol", |(n, picks, steps)| {
            // each f(j) is an even value >= j; surjectivity is checked below
            let f: Vec<usize> = (1..=2 * n)
                .map(|j| {
                    let choices: Vec<usize> = (j.div_ceil(2)..=n).map(|v| 2 * v).collect();
                    *picks[j - 1].get(&choices)
                })
                .collect();
            let f = SurjectivePistol::new(n, f).ok()?;
            let mut t = build_phi(&f).ok()?.tableau;
            for pick in picks.iter().take(steps) {
                let next = fiber::neighbours(&pistol_labels(&t).ok()?).ok()?;
                if next.is_empty() {
                    break;
                }
                t = pick.get(&next).clone();
            }
            Some(t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn encodings_round_trip(t in tableau(), f in pistol()) {
        for o in [Object::from(t), Object::from(f)] {
            prop_assert_eq!(&o.encode().parse::<Object>().unwrap(), &o);
            prop_assert_eq!(&Object::from_json(&o.to_json()).unwrap(), &o);
        }
    }

    #[test]
    fn pistols_round_trip(f in pistol()) {
        let t = build_phi(&f).unwrap().tableau;
        let lt = pistol_labels(&t).unwrap();
        prop_assert_eq!(lt.phi(), f);
        prop_assert!(fiber::is_tilde(&lt));
    }

    #[test]
    fn labelling_invariants(t in tableau()) {
        let lt = pistol_labels(&t).unwrap();
        let f = lt.phi();
        prop_assert_eq!(lt.ngr_vec(), f.ndf_vec());
        prop_assert_eq!(lt.ngr_vec().get(t.n()), 1);
        let sig = fiber::signature(&lt);
        prop_assert_eq!(t.fr() + sig.s_set.len() + sig.c_set.len(), lt.ngr());
        // switching to the signs T already has is the identity
        prop_assert_eq!(fiber::switch(&lt, &sig.mu).unwrap(), t.clone());
        for next in fiber::neighbours(&lt).unwrap() {
            prop_assert_eq!(pistol_labels(&next).unwrap().phi(), f.clone());
        }
    }

    #[test]
    fn larger_fibers_are_stable(t in large_tableau()) {
        let lt = pistol_labels(&t).unwrap();
        let f = lt.phi();
        let sig = fiber::signature(&lt);
        prop_assert_eq!(fiber::switch(&lt, &sig.mu).unwrap(), t.clone());
        for (mu, s) in fiber::switch_all(&lt).unwrap() {
            let sl = pistol_labels(&s).unwrap();
            prop_assert_eq!(sl.phi(), f.clone());
            prop_assert_eq!(fiber::signature(&sl).mu, mu);
        }
        let tilde_f = pistol_labels(&build_phi(&f).unwrap().tableau).unwrap().phi();
        prop_assert_eq!(tilde_f, f);
    }

    #[test]
    fn expansion_round_trip(t in tableau(), bits in any::<u64>()) {
        let free: Vec<usize> = (1..=2 * t.n()).filter(|&p| t.is_free_at(p)).collect();
        let rows: Vec<usize> = free.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &p)| p).collect();
        let c = ExpansionChoice::from_rows(&rows);
        let s = bridge::expand(&t, c).unwrap();
        prop_assert_eq!(bridge::collapse(&s).unwrap(), (t.clone(), c));
        let again: SymplecticConfig = s.encode().parse().unwrap();
        prop_assert_eq!(again, s);
    }

    #[test]
    fn toggles_are_commuting_involutions(t in tableau(), bits in any::<u64>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let free: Vec<usize> = (1..=2 * t.n()).filter(|&p| t.is_free_at(p)).collect();
        let rows: Vec<usize> = free.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &p)| p).collect();
        let c = ExpansionChoice::from_rows(&rows);
        let (p, q) = (*a.get(&free), *b.get(&free));
        let tp = bridge::toggle(&t, c, p).unwrap();
        prop_assert_eq!(bridge::toggle(&t, tp, p).unwrap(), c);
        let pq = bridge::toggle(&t, tp, q).unwrap();
        let qp = bridge::toggle(&t, bridge::toggle(&t, c, q).unwrap(), p).unwrap();
        prop_assert_eq!(pq, qp);
        prop_assert!(bridge::expand(&t, pq).is_ok());
    }

    #[test]
    fn constructor_accepts_exactly_valid_tableaux(n in 1usize..=4, cols in prop::collection::vec(1usize..=4, 8)) {
        let cols = cols[..2 * n].to_vec();
        let valid = (1..=n).all(|c| cols.iter().filter(|&&x| x == c).count() == 2)
            && cols.iter().enumerate().all(|(k, &c)| c <= (k + 1).min(n));
        prop_assert_eq!(Tableau::new(n, cols).is_ok(), valid);
    }
}
