use std::fmt::Write;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::json;
use synmon_core::commutative::{decompose_commutative, lattice_closure, ClosureOp};
use synmon_core::downset::downset_monoid;
use synmon_core::ineq::{check as check_monoid, stamp_check, Inequality, Mode, Verdict};
use synmon_core::lang::{Alphabet, Dfa, DfaJson, Morphism};
use synmon_core::monoid::{syntactic_monoid, MonoidJson, OrderedMonoid, Stamp};
use synmon_core::numsg::{generate, vs_characterization, Conductor};
use synmon_core::reproduce;

use crate::{CheckMode, Format, LangArgs, MonoidArgs};

/// Text to print and the exit code to return.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

/// Malformed or missing arguments.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// 2 for bad input, 1 for failed computations.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<Usage>() || cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<synmon_core::Error>() {
            return if err.is_input_error() { 2 } else { 1 };
        }
    }
    1
}

fn alphabet(text: &str) -> Result<Alphabet> {
    Ok(Alphabet::parse(text)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn language(args: &LangArgs) -> Result<Dfa> {
    match (&args.regex, &args.dfa) {
        (Some(re), _) => {
            let a = args.alphabet.as_deref().ok_or_else(|| usage("--regex needs --alphabet"))?;
            Ok(Dfa::from_regex(re, &alphabet(a)?)?)
        }
        (None, Some(path)) => Ok(Dfa::from_json(&read_json::<DfaJson>(path)?)?),
        (None, None) => Err(usage("give a language with --regex or --dfa")),
    }
}

fn monoid(args: &MonoidArgs) -> Result<OrderedMonoid> {
    match &args.monoid {
        Some(path) => Ok(OrderedMonoid::from_json(&read_json::<MonoidJson>(path)?)?),
        None => Ok(syntactic_monoid(&language(&args.lang)?)?.monoid().clone()),
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn table(m: &OrderedMonoid) -> String {
    let width = m.names().iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let cell = |s: &str| format!("{s:>width$}");
    let mut out = String::new();
    let header: Vec<String> = m.names().iter().map(|s| cell(s)).collect();
    let _ = writeln!(out, "{} | {}", cell(""), header.join(" "));
    for x in 0..m.size() {
        let row: Vec<String> = (0..m.size()).map(|y| cell(m.name(m.mul(x, y)))).collect();
        let _ = writeln!(out, "{} | {}", cell(m.name(x)), row.join(" "));
    }
    out
}

fn pairs(m: &OrderedMonoid, list: &[(usize, usize)]) -> String {
    let parts: Vec<String> = list.iter().map(|&(x, y)| format!("{} < {}", m.name(x), m.name(y))).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

fn describe(m: &OrderedMonoid) -> String {
    let props = m.props();
    let names = |xs: &[usize]| xs.iter().map(|&x| m.name(x).to_string()).collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    let _ = writeln!(out, "elements ({}): {}", m.size(), m.names().join(", "));
    let _ = writeln!(out, "identity: {}", m.name(m.identity()));
    let _ = writeln!(out, "idempotents: {}", names(&props.idempotents));
    let _ = writeln!(out, "commutative: {}", props.commutative);
    let _ = writeln!(out, "aperiodic: {}", props.aperiodic);
    let _ = writeln!(out, "order: {}", pairs(m, &m.covering_pairs()));
    out.push_str(&table(m));
    out
}

pub fn syn(lang: &LangArgs, format: Format) -> Result<Output> {
    let data = syntactic_monoid(&language(lang)?)?;
    let m = data.monoid();
    Ok(Output::ok(if format.json {
        pretty(&m.to_json())
    } else if format.dot {
        m.to_dot()
    } else {
        describe(m)
    }))
}

pub fn order(input: &MonoidArgs, format: Format) -> Result<Output> {
    let m = monoid(input)?;
    Ok(Output::ok(if format.dot {
        m.to_dot()
    } else if format.json {
        let names = |list: Vec<(usize, usize)>| -> Vec<[String; 2]> {
            list.into_iter().map(|(x, y)| [m.name(x).to_string(), m.name(y).to_string()]).collect()
        };
        pretty(&json!({
            "elements": m.names(),
            "strict": names(m.strict_pairs()),
            "covering": names(m.covering_pairs()),
        }))
    } else {
        format!(
            "strict: {}\ncovering: {}\n",
            pairs(&m, &m.strict_pairs()),
            pairs(&m, &m.covering_pairs())
        )
    }))
}

pub fn downset(input: &MonoidArgs, with_empty: bool, format: Format) -> Result<Output> {
    let base = monoid(input)?;
    let p = downset_monoid(&base, with_empty)?;
    let m = p.monoid();
    Ok(Output::ok(if format.json {
        pretty(&m.to_json())
    } else if format.dot {
        m.to_dot()
    } else {
        describe(m)
    }))
}

fn verdict_text(m: &OrderedMonoid, ineq: &Inequality, v: &Verdict) -> String {
    match &v.counterexample {
        None => format!("{ineq}: true\n"),
        Some(c) => {
            let assignment: Vec<String> =
                c.assignment.iter().map(|(x, e)| format!("{x} = {}", m.name(*e))).collect();
            let (lo, hi) = if c.reversed { (c.rhs, c.lhs) } else { (c.lhs, c.rhs) };
            format!(
                "{ineq}: false ({}; {} is not <= {})\n",
                assignment.join(", "),
                m.name(lo),
                m.name(hi)
            )
        }
    }
}

pub fn check(input: &MonoidArgs, ineqs: &[String], mode: CheckMode, json_out: bool) -> Result<Output> {
    let parsed: Vec<Inequality> = ineqs.iter().map(|t| Inequality::parse(t)).collect::<Result<_, _>>()?;
    let (m, stamp): (OrderedMonoid, Option<Stamp>) = match mode {
        CheckMode::Monoid => (monoid(input)?, None),
        CheckMode::Lp | CheckMode::Ld => {
            if input.monoid.is_some() {
                bail!(usage("--mode lp and ld need a language, not --monoid"));
            }
            let data = syntactic_monoid(&language(&input.lang)?)?;
            (data.monoid().clone(), Some(data.stamp().clone()))
        }
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for ineq in &parsed {
        let v = match (&stamp, mode) {
            (Some(s), CheckMode::Lp) => stamp_check(s, ineq, Mode::Lp)?,
            (Some(s), _) => stamp_check(s, ineq, Mode::Ld)?,
            (None, _) => check_monoid(&m, ineq)?,
        };
        text.push_str(&verdict_text(&m, ineq, &v));
        rows.push(json!({
            "inequality": ineq.to_string(),
            "holds": v.holds,
            "counterexample": v.counterexample.as_ref().map(|c| json!({
                "assignment": c.assignment.iter().map(|(x, e)| (x.to_string(), m.name(*e))).collect::<std::collections::BTreeMap<_, _>>(),
                "lhs": m.name(c.lhs),
                "rhs": m.name(c.rhs),
                "reversed": c.reversed,
            })),
        }));
    }
    Ok(Output::ok(if json_out { pretty(&rows) } else { text }))
}

pub fn closure(
    alphabet_text: &str,
    regexes: &[String],
    ops: Option<&[String]>,
    expect_count: Option<usize>,
    json_out: bool,
) -> Result<Output> {
    let a = alphabet(alphabet_text)?;
    let gens: Vec<Dfa> = regexes.iter().map(|r| Dfa::from_regex(r, &a)).collect::<Result<_, _>>()?;
    let ops: Vec<ClosureOp> = match ops {
        None => ClosureOp::LATTICE.to_vec(),
        Some(list) => list
            .iter()
            .map(|s| s.trim().parse::<ClosureOp>().map_err(|_| usage(format!("unknown operation `{s}`"))))
            .collect::<Result<_>>()?,
    };
    let fam = lattice_closure(&gens, &ops)?;
    let mut members: Vec<String> = fam.members().iter().map(|d| d.to_regex().to_string()).collect();
    members.sort_by(|x, y| (x.chars().count(), x).cmp(&(y.chars().count(), y)));
    let text = if json_out {
        pretty(&json!({ "count": members.len(), "members": members }))
    } else {
        let mut s: String = members.iter().map(|r| format!("{r}\n")).collect();
        let _ = writeln!(s, "count: {}", members.len());
        s
    };
    match expect_count {
        Some(n) if n != members.len() => {
            eprintln!("error: expected {n} languages, found {}", members.len());
            Ok(Output { text, code: 1 })
        }
        _ => Ok(Output::ok(text)),
    }
}

fn dfa_output(d: &Dfa, format: Format) -> String {
    if format.json {
        pretty(&d.to_json())
    } else if format.dot {
        d.to_dot()
    } else {
        format!("{}\nstates: {}\n", d.to_regex(), d.states())
    }
}

pub fn shuffle(langs: &[String], format: Format) -> Result<Output> {
    let mut acc: Option<Dfa> = None;
    for operand in langs {
        let (a, re) = operand
            .split_once(':')
            .ok_or_else(|| usage(format!("`{operand}` is not of the form ALPHABET:REGEX")))?;
        let d = Dfa::from_regex(re, &alphabet(a)?)?;
        acc = Some(match acc {
            None => d,
            Some(x) => x.shuffle(&d)?,
        });
    }
    let d = acc.ok_or_else(|| usage("give at least one --lang"))?;
    Ok(Output::ok(dfa_output(&d, format)))
}

pub fn rename(lang: &LangArgs, morphism: &str, target: Option<&str>, format: Format) -> Result<Output> {
    let d = language(lang)?;
    let target = match target {
        Some(t) => alphabet(t)?,
        None => {
            let mut letters: Vec<char> = morphism
                .split(',')
                .filter_map(|p| p.split_once('=').or_else(|| p.split_once("->")))
                .flat_map(|(_, img)| img.trim().chars())
                .filter(|&c| c != '1' && c != '>' && !c.is_whitespace())
                .collect();
            letters.sort_unstable();
            letters.dedup();
            Alphabet::new(letters)?
        }
    };
    let h = Morphism::parse(d.alphabet().clone(), target, morphism)?;
    Ok(Output::ok(dfa_output(&d.rename(&h)?, format)))
}

pub fn invhom(lang: &LangArgs, source: &str, morphism: &str, format: Format) -> Result<Output> {
    let d = language(lang)?;
    let h = Morphism::parse(alphabet(source)?, d.alphabet().clone(), morphism)?;
    Ok(Output::ok(dfa_output(&d.inverse_image(&h)?, format)))
}

pub fn decompose(lang: &LangArgs, json_out: bool) -> Result<Output> {
    let d = language(lang)?;
    let dec = decompose_commutative(&d)?;
    if json_out {
        return Ok(Output::ok(pretty(&dec)));
    }
    let mut out = String::new();
    for (i, term) in dec.terms.iter().enumerate() {
        let parts: Vec<String> = dec
            .alphabet
            .symbols()
            .iter()
            .zip(&term.components)
            .map(|(c, e)| format!("{c}: {e}"))
            .collect();
        let _ = writeln!(out, "term {}: {}", i + 1, parts.join("  "));
    }
    let _ = writeln!(out, "terms: {}", dec.terms.len());
    Ok(Output::ok(out))
}

pub fn numsg(gens: &[usize], check_ineq: Option<usize>, json_out: bool) -> Result<Output> {
    if gens.is_empty() {
        return Err(usage("give at least one generator"));
    }
    let s = generate(gens);
    let conductor = match s.conductor() {
        Conductor::Finite(c) => Some(c),
        Conductor::Infinite => None,
    };
    let limit = conductor.unwrap_or(0).max(check_ineq.unwrap_or(0)) + 1;
    let members = s.members_below(limit);
    let verdicts = match check_ineq {
        Some(bound) => vs_characterization(gens, bound)?,
        None => Vec::new(),
    };
    if json_out {
        return Ok(Output::ok(pretty(&json!({
            "generators": gens,
            "minimal_generators": s.minimal_generators(),
            "gcd": s.gcd(),
            "conductor": conductor,
            "members_below": { "limit": limit, "members": members },
            "shift_inequalities": verdicts.iter().map(|&(m, holds)| json!({
                "m": m,
                "inequality": format!("x <= x^{}", m + 1),
                "holds": holds,
                "m_in_semigroup": s.contains(m),
            })).collect::<Vec<_>>(),
        }))));
    }
    let mut out = String::new();
    let list = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(out, "minimal generators: {}", list(s.minimal_generators()));
    let _ = writeln!(out, "gcd: {}", s.gcd());
    match conductor {
        Some(c) => {
            let _ = writeln!(out, "conductor: {c}");
        }
        None => {
            let _ = writeln!(out, "conductor: none");
        }
    }
    let _ = writeln!(out, "n    member");
    for n in 0..limit {
        let _ = writeln!(out, "{n:<4} {}", if s.contains(n) { "yes" } else { "no" });
    }
    for &(m, holds) in &verdicts {
        let _ = writeln!(out, "x <= x^{}: {holds} (m = {m} {} S)", m + 1, if s.contains(m) { "in" } else { "not in" });
    }
    Ok(Output::ok(out))
}

pub fn reproduce(criterion: Option<usize>, json_out: bool) -> Result<Output> {
    let results = match criterion {
        Some(id) => vec![reproduce::run(id).ok_or_else(|| usage(format!("no criterion {id}")))?],
        None => reproduce::run_all(),
    };
    let failed = results.iter().filter(|r| !r.passed).count();
    let text = if json_out {
        pretty(&results)
    } else {
        let mut out = String::new();
        for r in &results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {:>2} {} ({} checks)", r.id, r.title, r.checks);
            for f in &r.failures {
                let _ = writeln!(out, "       {f}");
            }
        }
        let _ = writeln!(out, "{} of {} passed", results.len() - failed, results.len());
        out
    };
    Ok(Output { text, code: if failed > 0 { 3 } else { 0 } })
}
