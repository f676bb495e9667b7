use std::collections::BTreeMap;
use std::io::{self, Write};

use dellac_core::bridge;
use dellac_core::enumerate;
use dellac_core::fiber::{self, FiberMode};
use dellac_core::insertion::build_phi;
use dellac_core::labeling::{pistol_labels, DotType};
use dellac_core::render;
use dellac_core::sequences;
use dellac_core::tpath::{pi, t_path};
use dellac_core::verify::{self, big, Check, Report};
use dellac_core::{Object, SurjectivePistol, Tableau};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::input;
use crate::{Command, Family, Format, MapKind, SeqKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dellac_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

pub enum Outcome {
    Ok,
    /// A verification ran and did not pass.
    Failed,
}

pub struct Ctx {
    pub format: Format,
    pub timing: bool,
}

impl Ctx {
    fn no_svg(&self, what: &str) -> Result<(), CliError> {
        if self.format == Format::Svg {
            return Err(CliError::Usage(format!("{what} has no SVG output")));
        }
        Ok(())
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }
}

/// Single writer for everything that goes to stdout.
struct Out(io::BufWriter<io::Stdout>);

impl Out {
    fn new() -> Self {
        Out(io::BufWriter::new(io::stdout()))
    }

    fn line(&mut self, s: impl std::fmt::Display) -> Result<(), CliError> {
        writeln!(self.0, "{s}")?;
        Ok(())
    }

    fn value(&mut self, v: &Value) -> Result<(), CliError> {
        self.line(serde_json::to_string(v).expect("JSON values serialise"))
    }
}

impl Drop for Out {
    fn drop(&mut self) {
        let _ = self.0.flush();
    }
}

fn family_objects(family: Family, n: usize) -> Vec<Object> {
    match family {
        Family::Dellac => enumerate::dellac_par(n)
            .into_iter()
            .map(Object::from)
            .collect(),
        Family::Spdc => enumerate::spdc_par(n)
            .into_iter()
            .map(Object::from)
            .collect(),
        Family::Tableau => enumerate::tableaux_par(n)
            .into_iter()
            .map(Object::from)
            .collect(),
        Family::Pistol => enumerate::pistols_par(n)
            .into_iter()
            .map(Object::from)
            .collect(),
    }
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Dellac => "dellac",
        Family::Spdc => "spdc",
        Family::Tableau => "tableau",
        Family::Pistol => "pistol",
    }
}

fn check_size(n: usize) -> Result<(), CliError> {
    // exhaustive enumeration beyond this is out of reach anyway
    if n == 0 || n > 8 {
        return Err(CliError::Usage(format!("--n must be in 1..=8, got {n}")));
    }
    Ok(())
}

pub fn run(ctx: &Ctx, command: Command) -> Result<Outcome, CliError> {
    let mut out = Out::new();
    match command {
        Command::Enumerate { object, n } => {
            ctx.no_svg("enumerate")?;
            check_size(n)?;
            for o in family_objects(object, n) {
                if ctx.json() {
                    out.value(&o.to_json())?;
                } else {
                    out.line(o.encode())?;
                }
            }
        }
        Command::Count { object, n } => {
            ctx.no_svg("count")?;
            check_size(n)?;
            let count = family_objects(object, n).len();
            if ctx.json() {
                out.value(&json!({"object": family_name(object), "n": n, "count": count}))?;
            } else {
                out.line(count)?;
            }
        }
        Command::Stats { object, n, input } => {
            ctx.no_svg("stats")?;
            match (object, n) {
                (Some(family), Some(n)) => distribution(ctx, &mut out, family, n)?,
                _ => {
                    for o in input::objects(&input)? {
                        let v = object_stats(&o)?;
                        if ctx.json() {
                            out.value(&v)?;
                        } else {
                            out.line(o.encode())?;
                            if let Value::Object(m) = &v {
                                for (k, x) in m.iter().filter(|(k, _)| *k != "object") {
                                    out.line(format!("  {k}: {}", plain(x)))?;
                                }
                            }
                        }
                    }
                }
            }
        }
        Command::Sequence { n, which, bfile } => {
            ctx.no_svg("sequence")?;
            return sequence(ctx, &mut out, n, which, bfile);
        }
        Command::Map { kind, input } => {
            ctx.no_svg("map")?;
            map(ctx, &mut out, kind, &input)?;
        }
        Command::Labels { input } => {
            ctx.no_svg("labels")?;
            for t in input::tableaux(&input)? {
                labels(ctx, &mut out, &t)?;
            }
        }
        Command::Tpath { tableau, j, i } => {
            ctx.no_svg("tpath")?;
            let t = input::partial_tableau(&tableau)?;
            match i {
                Some(i) => {
                    let path = t_path(&t, j, i)?;
                    if ctx.json() {
                        out.value(&json!({"j": j, "start": i, "steps": path.steps, "arrival": path.arrival}))?;
                    } else {
                        out.line(join(&path.steps, " -> "))?;
                    }
                }
                None => {
                    let pairs = pi(&t, j)?.pairs();
                    if ctx.json() {
                        out.value(&json!({"j": j, "pi": pairs}))?;
                    } else {
                        for (a, b) in pairs {
                            out.line(format!("{a} -> {b}"))?;
                        }
                    }
                }
            }
        }
        Command::Switch { input, mu } => {
            ctx.no_svg("switch")?;
            for t in input::tableaux(&input)? {
                let lt = pistol_labels(&t)?;
                let results = match &mu {
                    Some(s) => {
                        let mu = parse_signs(s)?;
                        let switched = fiber::switch(&lt, &mu)?;
                        vec![(mu, switched)]
                    }
                    None => fiber::switch_all(&lt)?,
                };
                for (mu, s) in results {
                    if ctx.json() {
                        out.value(&json!({"mu": mu, "tableau": s.encode()}))?;
                    } else {
                        out.line(format!("mu={} {}", join(&mu, ","), s.encode()))?;
                    }
                }
            }
        }
        Command::Mute {
            input,
            column,
            gamma,
        } => {
            ctx.no_svg("mute")?;
            let g = if gamma == "alpha" {
                DotType::Alpha
            } else {
                DotType::Beta
            };
            for t in input::tableaux(&input)? {
                let lt = pistol_labels(&t)?;
                let b = fiber::mute(&lt, column, g)?;
                let letters: String = (1..=2 * t.n())
                    .map(|p| b.letter_at(p).to_string())
                    .collect();
                if ctx.json() {
                    out.value(&json!({"tableau": b.tableau.encode(), "letters": letters}))?;
                } else {
                    out.line(b.tableau.encode())?;
                    out.line(format!("letters (physical rows): {letters}"))?;
                }
            }
        }
        Command::Fiber { input, mode } => {
            ctx.no_svg("fiber")?;
            let mode: FiberMode = mode.parse()?;
            let mut all_pass = true;
            for f in input::pistols(&input)? {
                let sum = fiber::fiber_sum_check(&f, mode)?;
                all_pass &= sum.pass();
                if ctx.json() {
                    out.value(&json!({
                        "pistol": f.encode(),
                        "members": sum.members.iter().map(|(t, fr)| json!({"tableau": t.encode(), "fr": fr})).collect::<Vec<_>>(),
                        "weighted": sum.lhs.to_string(),
                        "expected": sum.rhs.to_string(),
                        "pass": sum.pass(),
                    }))?;
                } else {
                    for (t, fr) in &sum.members {
                        out.line(format!("{} fr={fr}", t.encode()))?;
                    }
                    out.line(format!(
                        "{} sum of 2^fr = {}, 2^ndf = {}",
                        if sum.pass() { "PASS" } else { "FAIL" },
                        sum.lhs,
                        sum.rhs
                    ))?;
                }
            }
            if !all_pass {
                return Ok(Outcome::Failed);
            }
        }
        Command::Render { input, labels } => {
            for o in input::objects(&input)? {
                let lt = match (&o, labels) {
                    (Object::Tableau(t), true) => Some(pistol_labels(t)?),
                    (_, true) => {
                        return Err(CliError::Usage("--labels applies to tableaux only".into()))
                    }
                    _ => None,
                };
                match ctx.format {
                    Format::Svg => out.line(render::svg(&o, lt.as_ref()).trim_end())?,
                    Format::Text => out.line(render::ascii(&o, lt.as_ref()).trim_end())?,
                    Format::Json => out.value(&json!({
                        "object": o.to_json(),
                        "ascii": render::ascii(&o, lt.as_ref()),
                    }))?,
                }
            }
        }
        Command::Verify { check, n } => {
            ctx.no_svg("verify")?;
            return verify_cmd(ctx, &mut out, &check, n);
        }
    }
    Ok(Outcome::Ok)
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn join<T: std::fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn parse_signs(s: &str) -> Result<Vec<i8>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| match x.trim() {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(CliError::Usage(format!("sign {other:?} is not 1 or -1"))),
        })
        .collect()
}

fn distribution(ctx: &Ctx, out: &mut Out, family: Family, n: usize) -> Result<(), CliError> {
    check_size(n)?;
    let (stat, values): (&str, Vec<usize>) = match family {
        Family::Tableau => (
            "fr",
            enumerate::tableaux_par(n).iter().map(Tableau::fr).collect(),
        ),
        Family::Pistol => (
            "ndf",
            enumerate::pistols_par(n)
                .iter()
                .map(SurjectivePistol::ndf)
                .collect(),
        ),
        Family::Spdc => (
            "reflected",
            enumerate::spdc_par(n)
                .iter()
                .map(|s| bridge::collapse(s).map(|(_, c)| c.rows().len()))
                .collect::<Result<_, _>>()?,
        ),
        Family::Dellac => {
            return Err(CliError::Usage(
                "stats over a family needs --object tableau, pistol or spdc".into(),
            ))
        }
    };
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for v in &values {
        *hist.entry(*v).or_default() += 1;
    }
    let weighted: BigInt = values.iter().map(|&v| BigInt::from(1u8) << v).sum();
    if ctx.json() {
        out.value(&json!({
            "object": family_name(family),
            "n": n,
            "statistic": stat,
            "distribution": hist.iter().map(|(k, c)| json!([k, c])).collect::<Vec<_>>(),
            "total": values.len(),
            "weighted": big(&weighted),
        }))?;
    } else {
        for (k, c) in &hist {
            out.line(format!("{stat}={k}: {c}"))?;
        }
        out.line(format!("total: {}", values.len()))?;
        out.line(format!("sum of 2^{stat}: {weighted}"))?;
    }
    Ok(())
}

fn object_stats(o: &Object) -> Result<Value, CliError> {
    Ok(match o {
        Object::Tableau(t) => {
            let lt = pistol_labels(t)?;
            let sig = fiber::signature(&lt);
            json!({
                "object": t.encode(),
                "fr": t.fr(),
                "fr_vec": t.fr_vec().bits(),
                "ngr": lt.ngr(),
                "ngr_vec": lt.ngr_vec().bits(),
                "phi": lt.phi().encode(),
                "tilde": fiber::is_tilde(&lt),
                "S": sig.s_set,
                "mu": sig.mu,
                "C": sig.c_set,
                "t": sig.t_map,
            })
        }
        Object::Pistol(f) => json!({
            "object": f.encode(),
            "ndf": f.ndf(),
            "ndf_vec": f.ndf_vec().bits(),
            "doubled_fixed_points": f.doubled_fixed_points(),
        }),
        Object::Spdc(s) => {
            let (t, c) = bridge::collapse(s)?;
            json!({"object": s.encode(), "tableau": t.encode(), "reflected_rows": c.rows()})
        }
        Object::Dellac(d) => json!({"object": d.encode(), "n": d.n()}),
    })
}

fn sequence(
    ctx: &Ctx,
    out: &mut Out,
    n: usize,
    which: SeqKind,
    bfile: Option<std::path::PathBuf>,
) -> Result<Outcome, CliError> {
    if n > 200 {
        return Err(CliError::Usage(format!("--n must be at most 200, got {n}")));
    }
    let mut values: Vec<(u64, BigInt)> = Vec::new();
    let mut polys = Vec::new();
    for k in 0..=n {
        match which {
            SeqKind::R => values.push((k as u64, sequences::r_n(k)?)),
            SeqKind::D1 => values.push((k as u64, sequences::poly_d(k).eval(&BigInt::from(1u8)))),
            SeqKind::Poly => polys.push(sequences::poly_d(k)),
        }
    }
    if which == SeqKind::Poly {
        for (k, p) in polys.iter().enumerate() {
            if ctx.json() {
                let coeffs: Vec<Value> = p.coeffs().iter().map(big).collect();
                out.value(&json!({"n": k, "coeffs": coeffs}))?;
            } else {
                out.line(format!("D_{k}(x) = {p}"))?;
            }
        }
        if bfile.is_some() {
            return Err(CliError::Usage("--bfile needs --which r or d1".into()));
        }
        return Ok(Outcome::Ok);
    }
    let mismatches = match &bfile {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let entries = sequences::parse_bfile(&text)?;
            Some(sequences::bfile_mismatches(&entries, &values))
        }
        None => None,
    };
    if ctx.json() {
        let mut v = json!({
            "values": values.iter().map(|(k, x)| json!([k, big(x)])).collect::<Vec<_>>(),
        });
        if let Some(m) = &mismatches {
            v["mismatches"] = json!(m
                .iter()
                .map(
                    |(k, file, ours)| json!({"index": k, "bfile": big(file), "computed": big(ours)})
                )
                .collect::<Vec<_>>());
        }
        out.value(&v)?;
    } else {
        for (k, x) in &values {
            out.line(format!("{k} {x}"))?;
        }
        for (k, file, ours) in mismatches.iter().flatten() {
            eprintln!("mismatch at {k}: b-file {file}, computed {ours}");
        }
    }
    Ok(match mismatches {
        Some(m) if !m.is_empty() => Outcome::Failed,
        _ => Outcome::Ok,
    })
}

fn map(ctx: &Ctx, out: &mut Out, kind: MapKind, args: &crate::ObjectArgs) -> Result<(), CliError> {
    match kind {
        MapKind::Phi => {
            for t in input::tableaux(args)? {
                let f = pistol_labels(&t)?.phi();
                if ctx.json() {
                    out.value(&Object::from(f).to_json())?;
                } else {
                    out.line(f.encode())?;
                }
            }
        }
        MapKind::BigPhi => {
            for f in input::pistols(args)? {
                let t = build_phi(&f)?.tableau;
                if ctx.json() {
                    out.value(&Object::from(t).to_json())?;
                } else {
                    out.line(t.encode())?;
                }
            }
        }
        MapKind::PhiInverse => {
            for f in input::pistols(args)? {
                let members = fiber::fiber_closure(&f)?;
                if ctx.json() {
                    out.value(&json!({
                        "pistol": f.encode(),
                        "fiber": members.iter().map(Tableau::encode).collect::<Vec<_>>(),
                    }))?;
                } else {
                    for t in members {
                        out.line(t.encode())?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn labels(ctx: &Ctx, out: &mut Out, t: &Tableau) -> Result<(), CliError> {
    let lt = pistol_labels(t)?;
    if ctx.json() {
        let labels: Vec<String> = (1..=2 * t.n())
            .map(|p| lt.label_at(p).to_string())
            .collect();
        out.value(&json!({
            "tableau": t.encode(),
            "pistol": lt.phi().encode(),
            "labels": labels,
            "trace": lt.trace(),
        }))?;
        return Ok(());
    }
    out.line(t.encode())?;
    out.line("column  phys-row  logical-row  label  arrival  type-rule   parity-rule")?;
    for s in lt.trace() {
        out.line(format!(
            "{:>6}  {:>8}  {:>11}  {:>5}  {:>7}  {:<10}  {}",
            s.column,
            s.phys_row,
            s.row,
            lt.label_at(s.phys_row).to_string(),
            s.arrival,
            s.type_rule,
            s.parity_rule
        ))?;
    }
    out.line(format!("phi: {}", lt.phi().encode()))?;
    Ok(())
}

fn verify_cmd(
    ctx: &Ctx,
    out: &mut Out,
    check: &str,
    n: Option<usize>,
) -> Result<Outcome, CliError> {
    let checks: Vec<Check> = if check == "all" {
        Check::ALL.to_vec()
    } else {
        vec![check.parse()?]
    };
    let needs_n = checks.iter().any(|&c| c != Check::Golden);
    let n = match n {
        Some(n) => n,
        None if !needs_n => 7,
        None => return Err(CliError::Usage(format!("verify --check {check} needs --n"))),
    };
    let mut reports: Vec<Report> = Vec::new();
    for c in checks {
        reports.extend(verify::run(c, n)?);
    }
    if !ctx.timing {
        for r in &mut reports {
            r.elapsed_ms = 0;
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    if ctx.json() {
        out.value(&serde_json::to_value(&reports).expect("reports serialise"))?;
    } else {
        for r in &reports {
            out.line(r)?;
        }
    }
    Ok(if pass { Outcome::Ok } else { Outcome::Failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(parse_signs("-1,1").unwrap(), vec![-1, 1]);
        assert_eq!(parse_signs("+1").unwrap(), vec![1]);
        assert!(parse_signs("2").is_err());
        assert!(parse_signs("").unwrap().is_empty());
    }
}
