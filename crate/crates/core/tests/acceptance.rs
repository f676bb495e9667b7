//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion that cannot be met because the reference values contradict
//! themselves is printed as `RED` together with the machine-checked reason;
//! it does not fail the run. Any other failure exits non-zero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dellac_core::enumerate;
use dellac_core::fiber;
use dellac_core::golden::{self, Status};
use dellac_core::sequences::{self, poly_d, r_n, weighted_pistol_sum};
use dellac_core::verify::{self, Report};
use num_bigint::BigInt;
use num_traits::Zero;

enum Verdict {
    Pass,
    Fail,
    /// Not attainable: the reference itself is inconsistent.
    Red,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

/// Collects failed sub-checks of one criterion.
#[derive(Default)]
struct Subchecks {
    total: usize,
    failed: Vec<String>,
}

impl Subchecks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.total += 1;
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn report(&mut self, r: &Report) {
        self.check(
            r.pass,
            format!("{} n={}: {} vs {}", r.check, r.n, r.expected, r.actual),
        );
    }

    fn finish(self, summary: &str) -> Outcome {
        if self.failed.is_empty() {
            Outcome {
                verdict: Verdict::Pass,
                detail: format!("{summary} ({} sub-checks)", self.total),
            }
        } else {
            Outcome {
                verdict: Verdict::Fail,
                detail: format!(
                    "{}/{} sub-checks failed: {}",
                    self.failed.len(),
                    self.total,
                    self.failed.join("; ")
                ),
            }
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn counting() -> Outcome {
    let mut s = Subchecks::default();
    for (n, want) in (1..=5).zip([1usize, 2, 7, 38, 295]) {
        let (got, t) = timed(|| enumerate::dellac_par(n).len());
        s.check(got == want, format!("|DC_{n}| = {got}, want {want}"));
        if n == 5 {
            s.check(t < Duration::from_secs(10), format!("DC_5 took {t:?}"));
        }
    }
    for n in 1..=6usize {
        let fact = |k: usize| (1..=k).fold(big(1), |a, i| a * i);
        let want = fact(n + 1) * fact(n) / (big(1) << n);
        let got = BigInt::from(enumerate::tableaux_par(n).len());
        s.check(got == want, format!("|Tab_{n}| = {got}, want {want}"));
    }
    s.check(
        enumerate::tableaux_par(6).len() == 56700,
        "|Tab_6| != 56700",
    );
    for (n, want) in (1..=5).zip([1usize, 3, 17, 155, 2073]) {
        let got = enumerate::pistols_par(n).len();
        s.check(got == want, format!("|SP_{n}| = {got}, want {want}"));
    }
    for (n, want) in (1..=4).zip([2u64, 10, 98, 1594]) {
        let direct = enumerate::spdc_par(n).len() as u64;
        let weighted: u64 = enumerate::tableaux_par(n)
            .iter()
            .map(|t| 1u64 << t.fr())
            .sum();
        let rec = r_n(n).unwrap();
        s.check(direct == want, format!("|SpDC_{}| = {direct}", 2 * n));
        s.check(
            weighted == want,
            format!("sum 2^fr over Tab_{n} = {weighted}"),
        );
        s.check(rec == big(want), format!("r_{n} = {rec}"));
    }
    s.finish("DC_1..5, Tab_1..6, SP_1..5, SpDC_2..8 three ways")
}

fn eq1() -> Outcome {
    let mut s = Subchecks::default();
    for n in 1..=6 {
        let d1 = poly_d(n).eval(&big(1));
        let pow = big(1) << n;
        s.check(
            (&d1 % &pow).is_zero(),
            format!("D_{n}(1) not divisible by 2^{n}"),
        );
        let lhs = weighted_pistol_sum(n);
        s.check(lhs == &d1 / &pow, format!("n={n}: {lhs} vs {}", &d1 / &pow));
    }
    s.finish("weighted pistol sums equal D_n(1)/2^n for n = 1..6")
}

fn golden_fixtures() -> Outcome {
    let outcomes = match golden::replay() {
        Ok(o) => o,
        Err(e) => {
            return Outcome {
                verdict: Verdict::Fail,
                detail: format!("replay failed: {e}"),
            }
        }
    };
    let exact = outcomes
        .iter()
        .filter(|o| o.status == Status::Match)
        .count();
    let mismatched: Vec<&str> = outcomes
        .iter()
        .filter(|o| o.status == Status::Mismatch)
        .map(|o| o.name)
        .collect();
    let disputed: Vec<&str> = outcomes
        .iter()
        .filter(|o| o.status == Status::PrintedInconsistent)
        .map(|o| o.name)
        .collect();
    if !mismatched.is_empty() {
        return Outcome {
            verdict: Verdict::Fail,
            detail: format!("mismatch in {}", mismatched.join(", ")),
        };
    }
    if disputed.is_empty() {
        return Outcome {
            verdict: Verdict::Pass,
            detail: format!("{exact}/{} fixtures bit-exact", outcomes.len()),
        };
    }
    Outcome {
        verdict: Verdict::Red,
        detail: format!(
            "{exact}/{} fixtures bit-exact; printed values in {} contradict their own \
             definitions (checked independently) and the computed values equal the \
             recorded corrections; see the decisions ledger",
            outcomes.len(),
            disputed.join(", ")
        ),
    }
}

fn bijection() -> Outcome {
    let mut s = Subchecks::default();
    for n in 1..=5 {
        for r in [
            verify::roundtrip(n),
            verify::tilde_image(n),
            verify::ngr_ndf(n),
            verify::label_facts(n),
        ] {
            match r {
                Ok(r) => s.report(&r),
                Err(e) => s.check(false, format!("n={n}: {e}")),
            }
        }
    }
    s.finish("round trips, image = tilde set, ngr = ndf, d_min column and β0e facts for n = 1..5")
}

fn fibers() -> Outcome {
    let mut s = Subchecks::default();
    for n in 1..=5 {
        match verify::fiber_sum(n) {
            Ok(r) => s.report(&r),
            Err(e) => s.check(false, format!("fiber-sum n={n}: {e}")),
        }
    }
    let (oracle, t) = timed(|| (1..=4).map(verify::fiber_oracle).collect::<Vec<_>>());
    for r in oracle {
        match r {
            Ok(r) => s.report(&r),
            Err(e) => s.check(false, e.to_string()),
        }
    }
    s.check(
        t < Duration::from_secs(60),
        format!("oracle comparison took {t:?}"),
    );
    // partition at n = 5
    match fiber::brute_fibers(5) {
        Ok(map) => {
            let covered: usize = map.values().map(Vec::len).sum();
            s.check(
                covered == enumerate::tableaux_par(5).len(),
                "fibers miss tableaux at n=5",
            );
            s.check(
                map.len() == enumerate::pistols_par(5).len(),
                "empty fiber at n=5",
            );
        }
        Err(e) => s.check(false, e.to_string()),
    }
    s.finish(&format!(
        "fiber sums n = 1..5, closure = brute n <= 4 in {} ms, partition n = 1..5",
        t.as_millis()
    ))
}

fn expansion() -> Outcome {
    let mut s = Subchecks::default();
    for n in 1..=4 {
        match verify::expansion(n) {
            Ok(r) => s.report(&r),
            Err(e) => s.check(false, format!("n={n}: {e}")),
        }
    }
    s.finish("round trip, disjoint union = SpDC, toggles for n = 1..4")
}

fn sequence_engine() -> Outcome {
    let mut s = Subchecks::default();
    let prefix: Vec<BigInt> = [1u64, 2, 10, 98, 1594].into_iter().map(big).collect();
    s.check(sequences::r_seq(4).ok() == Some(prefix), "r_0..r_4");
    for n in [5, 6] {
        let rec = r_n(n).unwrap();
        let enumerated = weighted_pistol_sum(n);
        s.check(rec == enumerated, format!("r_{n}: {rec} vs {enumerated}"));
    }
    for n in 0..=12 {
        let d1 = poly_d(n).eval(&big(1));
        s.check(
            (d1 % (big(1) << n)).is_zero(),
            format!("D_{n}(1) mod 2^{n}"),
        );
        s.check(r_n(n).is_ok(), format!("r_{n}"));
    }
    s.finish("r_0..r_4, r_5 and r_6 against enumeration, divisibility n <= 12")
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1", "counting identities", counting),
        ("2", "weighted pistol sum", eq1),
        ("3", "golden fixtures", golden_fixtures),
        ("4", "bijection properties", bijection),
        ("5", "fiber identity", fibers),
        ("6", "expansion bridge", expansion),
        ("7", "sequence engine", sequence_engine),
    ];
    let start = Instant::now();
    let mut failed = 0;
    let mut red = 0;
    println!();
    for (id, title, run) in criteria {
        let (o, t) = timed(run);
        let tag = match o.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => {
                failed += 1;
                "FAIL"
            }
            Verdict::Red => {
                red += 1;
                "RED "
            }
        };
        println!(
            "[{tag}] criterion {id} {title}: {} [{} ms]",
            o.detail,
            t.as_millis()
        );
    }
    let total = start.elapsed();
    let fast = total < Duration::from_secs(300);
    if !fast {
        failed += 1;
    }
    println!(
        "[{}] runtime: {} ms (target under 5 minutes)",
        if fast { "PASS" } else { "FAIL" },
        total.as_millis()
    );
    println!(
        "acceptance: {} passed, {red} red (documented), {failed} failed",
        criteria.len() + 1 - failed - red
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
