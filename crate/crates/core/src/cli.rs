//! Command-line front end.
//!
//! Exit codes: 0 when the computation succeeds and every checked property
//! holds, 1 when a checked property fails (a violated inequality, an
//! invalid sequence, a nonzero mildness defect, a failed group check), 2 on
//! input errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::bounds::upper_caps;
use crate::error::{Error, Result};
use crate::group_lab::{
    abelian_power_convention, dimension_subgroups, lazard_check, parse_group_input, GroupKind, PresentationData,
};
use crate::gs_check::{
    check_inequality, examine_ztypes, inequality_poly, strict_corollary_check, CheckMode, RelationProfile,
};
use crate::jennings::{jennings_transform, DimensionSequence};
use crate::primes::check_prime;
use crate::search::{brute_force_infeasibility, min_order_search};
use crate::series::{PositivityReport, Witness};
use crate::validity::{e_sequence, is_valid_with_horizon, stabilization_horizon};

#[derive(Debug, Parser)]
#[command(name = "gstower", version, about = "Golod-Shafarevich equality toolkit for finite p-groups")]
pub struct Cli {
    /// Emit JSON (same as `--format json`).
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Extra indices computed past the stabilization bound.
    #[arg(long, global = true, default_value_t = 8)]
    pub horizon_margin: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Relaxed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    Jennings,
    Lazard,
    Recursion,
    Fox,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Odd level pairs (m1, m2) for which t^m1 + t^m2 - 2t + 1 > 0 on (0, 1).
    Ztypes {
        /// Largest level considered.
        #[arg(long, default_value_t = 21)]
        max_level: u32,
    },
    /// Upper bounds on the dimension factors a_1..a_nmax.
    Caps {
        /// The prime p.
        #[arg(long)]
        p: u32,
        /// Largest index n.
        #[arg(long)]
        nmax: u32,
        /// Apply the a_7 <= 3 refinement for levels (3, 7).
        #[arg(long)]
        ztype37: bool,
    },
    /// Decide the inequality for a relation profile and dimension factors.
    Check {
        /// The prime p.
        #[arg(long)]
        p: u32,
        /// Number of generators d.
        #[arg(long)]
        d: u32,
        /// Relation levels, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u32>,
        /// Dimension factors a_1,a_2,..., comma separated.
        #[arg(long = "a", value_delimiter = ',', required = true)]
        a: Vec<u32>,
        /// Compare against the exact product or the relaxed (1 - t^n) product.
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Decide the strengthened inequality with the t^{N+m} correction.
    Strict {
        /// The prime p.
        #[arg(long)]
        p: u32,
        /// Number of generators d.
        #[arg(long)]
        d: u32,
        /// Relation levels, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u32>,
        /// Dimension factors a_1,a_2,..., comma separated.
        #[arg(long = "a", value_delimiter = ',', required = true)]
        a: Vec<u32>,
        /// Level in the correction exponent; defaults to the deepest level.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Greedy minimal-order search for levels (3, 7).
    Minorder {
        /// The prime p.
        #[arg(long)]
        p: u32,
        /// Abelianization type (a, b) for Z/p^a x Z/p^b.
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        ab: Vec<u32>,
    },
    /// Check every cap-respecting sequence up to a total against the relaxed inequality.
    Bruteforce {
        /// The prime p.
        #[arg(long)]
        p: u32,
        /// Largest total a_1 + ... + a_nmax enumerated.
        #[arg(long)]
        sumlimit: u32,
        /// Largest index n.
        #[arg(long, default_value_t = 9)]
        nmax: u32,
    },
    /// Validity of a dimension-factor sequence.
    Valid {
        /// The prime p.
        #[arg(long)]
        p: u32,
        /// Dimension factors a_1,a_2,..., comma separated.
        #[arg(long = "a", value_delimiter = ',', required = true)]
        a: Vec<u32>,
        /// Relation levels, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3,7")]
        levels: Vec<u32>,
        /// Number of generators d.
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// The sequence e_n measuring the failure of mildness.
    Mildness {
        /// The prime p.
        #[arg(long)]
        p: u32,
        /// Number of generators d.
        #[arg(long)]
        d: u32,
        /// Relation levels, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u32>,
        /// Dimension factors a_1,a_2,..., comma separated.
        #[arg(long = "a", value_delimiter = ',', required = true)]
        a: Vec<u32>,
    },
    /// Compute filtrations of an explicit group and cross-check them.
    Grouplab {
        /// cyclic:k, elemab:d or heisenberg.
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        group: Option<String>,
        /// The prime p.
        #[arg(long, required_unless_present = "input")]
        p: Option<u32>,
        /// Checks to run.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "jennings,lazard,recursion,fox")]
        verify: Vec<Verify>,
        /// Group file; see the README for its format.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

/// Result of one command before rendering.
struct Outcome {
    code: i32,
    json: Value,
    table: String,
    csv: Option<(Vec<String>, Vec<Vec<String>>)>,
}

/// Parses `argv` (including the program name), runs the command and returns
/// `(exit code, stdout, stderr)`.
pub fn execute<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => (0, text, String::new()),
                _ => (2, String::new(), text),
            };
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    match dispatch(&cli) {
        Ok(out) => match render(&out, format) {
            Ok(text) => (out.code, text, String::new()),
            Err(e) => (2, String::new(), format!("error: {e}\n")),
        },
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}

/// Runs with the process arguments, printing output; returns the exit code.
pub fn run() -> i32 {
    let (code, out, err) = execute(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    code
}

fn render(out: &Outcome, format: Format) -> Result<String> {
    match format {
        Format::Table => Ok(out.table.clone()),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let (header, rows) = match &out.csv {
                Some(t) => t.clone(),
                None => scalar_rows(&out.json),
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
            w.write_record(&header).map_err(io)?;
            for r in &rows {
                w.write_record(r).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
        }
    }
}

/// `key,value` rows for the scalar fields of a JSON object.
fn scalar_rows(v: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rows = Vec::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Number(_) | Value::Bool(_) => x.to_string(),
                _ => continue,
            };
            rows.push(vec![k.clone(), s]);
        }
    }
    (vec!["key".into(), "value".into()], rows)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Ztypes { max_level } => ztypes(*max_level),
        Command::Caps { p, nmax, ztype37 } => caps(*p, *nmax, *ztype37),
        Command::Check { p, d, levels, a, mode } => check(*p, *d, levels, a, *mode),
        Command::Strict { p, d, levels, a, m } => strict(*p, *d, levels, a, *m),
        Command::Minorder { p, ab } => minorder(*p, ab),
        Command::Bruteforce { p, sumlimit, nmax } => bruteforce(*p, *sumlimit, *nmax),
        Command::Valid { p, a, levels, d } => valid(*p, a, levels, *d, cli.horizon_margin),
        Command::Mildness { p, d, levels, a } => mildness(*p, *d, levels, a, cli.horizon_margin),
        Command::Grouplab { group, p, verify, input } => grouplab(group.as_deref(), *p, verify, input.as_ref()),
    }
}

fn approx(q: &BigRational) -> String {
    match q.to_f64() {
        Some(x) => format!("{x:.6}"),
        None => "?".into(),
    }
}

/// Exact value when short; long fractions are left to the JSON output.
fn exact_or_note(q: &BigRational) -> String {
    let s = q.to_string();
    if s.len() <= 40 {
        s
    } else {
        "(exact value in --json output)".into()
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Point { t, value } => {
            format!("f({t}) = {}  approx. {}", exact_or_note(value), approx(value))
        }
        Witness::IrrationalDoubleRoot { lo, hi } => {
            format!("irrational double root in ({lo}, {hi})  (approx. t = {})", approx(lo))
        }
    }
}

fn positivity_json(rep: &PositivityReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("verdict".into(), json!(if rep.holds() { "HOLDS" } else { "VIOLATED" }));
    m.insert("witness".into(), rep.witness().map_or(Value::Null, |w| json!(w)));
    m.insert("certificate".into(), rep.certificate().map_or(Value::Null, |c| json!(c)));
    m
}

fn positivity_text(rep: &PositivityReport) -> String {
    match (rep.certificate(), rep.witness()) {
        (Some(c), _) => format!(
            "HOLDS  (Sturm: {} roots in (0,1); f({}) = {}  approx. {})",
            c.roots_in_interval,
            c.sample_t,
            exact_or_note(&c.sample_value),
            approx(&c.sample_value)
        ),
        (_, Some(w)) => format!("VIOLATED  {}", witness_text(w)),
        _ => unreachable!("a report is either a certificate or a witness"),
    }
}

fn code_for(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn profile_of(d: u32, levels: &[u32]) -> Result<RelationProfile> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    RelationProfile::new(d, levels.to_vec())
}

fn sequence_of(p: u32, a: &[u32]) -> Result<DimensionSequence> {
    check_prime(p)?;
    DimensionSequence::from_slice(p, a)
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn ztypes(max_level: u32) -> Result<Outcome> {
    let cases = examine_ztypes(max_level)?;
    let pairs: Vec<(u32, u32)> = cases.iter().filter(|c| c.report.holds()).map(|c| c.levels).collect();
    let set = format!(
        "{{{}}}",
        pairs.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(",")
    );
    let mut table = format!("{set}\n");
    let mut rows = Vec::new();
    let mut examined = Vec::new();
    for c in &cases {
        let (m1, m2) = c.levels;
        let _ = writeln!(table, "  ({m1},{m2}): {}", positivity_text(&c.report));
        let mut entry = positivity_json(&c.report);
        entry.insert("levels".into(), json!([m1, m2]));
        examined.push(Value::Object(entry));
        let (t, v) = match c.report.witness() {
            Some(Witness::Point { t, value }) => (t.to_string(), value.to_string()),
            _ => (String::new(), String::new()),
        };
        let verdict = if c.report.holds() { "HOLDS" } else { "VIOLATED" };
        rows.push(vec![m1.to_string(), m2.to_string(), verdict.into(), t, v]);
    }
    Ok(Outcome {
        code: 0,
        json: json!({ "max_level": max_level, "pairs": pairs, "examined": examined }),
        table,
        csv: Some((
            ["m1", "m2", "verdict", "witness_t", "witness_value"].map(String::from).to_vec(),
            rows,
        )),
    })
}

fn caps(p: u32, nmax: u32, ztype37: bool) -> Result<Outcome> {
    check_prime(p)?;
    let caps = upper_caps(p, nmax, ztype37)?;
    let v = caps.as_vec();
    let table = format!(
        "caps a_1..a_{nmax} for p = {p}{}: ({})\nvalid for n <= {}\n",
        if caps.ztype_refined { " (a_7 refined)" } else { "" },
        join(&v),
        caps.validity_limit
    );
    let rows = caps.caps.iter().map(|(n, c)| vec![n.to_string(), c.to_string()]).collect();
    Ok(Outcome {
        code: 0,
        json: json!({
            "p": p,
            "nmax": nmax,
            "caps": v,
            "validity_limit": caps.validity_limit,
            "ztype_refined": caps.ztype_refined,
        }),
        table,
        csv: Some((vec!["n".into(), "cap".into()], rows)),
    })
}

fn check(p: u32, d: u32, levels: &[u32], a: &[u32], mode: Mode) -> Result<Outcome> {
    let a_seq = sequence_of(p, a)?;
    let profile = profile_of(d, levels)?;
    let mode = match mode {
        Mode::Exact => CheckMode::Exact,
        Mode::Relaxed => CheckMode::Relaxed,
    };
    let poly = inequality_poly(&profile, &a_seq, mode);
    let rep = check_inequality(&profile, &a_seq, mode)?;
    let mut m = positivity_json(&rep);
    m.insert("p".into(), json!(p));
    m.insert("d".into(), json!(d));
    m.insert("levels".into(), json!(profile.levels()));
    m.insert("a".into(), json!(a_seq.to_vec()));
    m.insert("mode".into(), json!(if mode == CheckMode::Exact { "exact" } else { "relaxed" }));
    m.insert("polynomial".into(), json!(poly.to_string()));
    let table = format!("f(t) = {poly}\n{}\n", positivity_text(&rep));
    Ok(Outcome { code: code_for(rep.holds()), json: Value::Object(m), table, csv: None })
}

fn strict(p: u32, d: u32, levels: &[u32], a: &[u32], m: Option<u32>) -> Result<Outcome> {
    let a_seq = sequence_of(p, a)?;
    let profile = profile_of(d, levels)?;
    let m = m.or(profile.max_level()).unwrap_or(0);
    let order_exponent = a_seq.order_exponent();
    let rep = strict_corollary_check(&profile, &a_seq, order_exponent, m)?;
    let mut out = positivity_json(&rep);
    out.insert("p".into(), json!(p));
    out.insert("d".into(), json!(d));
    out.insert("levels".into(), json!(profile.levels()));
    out.insert("a".into(), json!(a_seq.to_vec()));
    out.insert("m".into(), json!(m));
    out.insert("order_exponent".into(), json!(order_exponent));
    let table = format!(
        "strengthened inequality, |G| = {p}^{order_exponent}, N = {}, m = {m}\n{}\n",
        a_seq.stabilization_index(),
        positivity_text(&rep)
    );
    Ok(Outcome { code: code_for(rep.holds()), json: Value::Object(out), table, csv: None })
}

fn minorder(p: u32, ab: &[u32]) -> Result<Outcome> {
    check_prime(p)?;
    let [a, b] = ab else {
        return Err(Error::InvalidArgument(format!("--ab takes two values, got {}", ab.len())));
    };
    let r = min_order_search(p, *a, *b)?;
    let full = r.full_sequence()?;
    let mut table = format!(
        "sequence ({})\nminimal sum {}\n|G| >= {p}^{}\nviolations before feasibility: {}\n",
        join(r.sequence.to_vec()),
        r.min_sum,
        r.order_exponent_bound,
        r.violation_trace.len()
    );
    let mut rows = Vec::new();
    let mut trace = Vec::new();
    for (i, step) in r.violation_trace.iter().enumerate() {
        let _ = writeln!(table, "  {:>2}. ({}): {}", i + 1, join(&step.prefix), witness_text(&step.witness));
        let (t, v) = match &step.witness {
            Witness::Point { t, value } => (t.to_string(), value.to_string()),
            Witness::IrrationalDoubleRoot { lo, hi } => (format!("{lo}..{hi}"), "0".into()),
        };
        rows.push(vec![(i + 1).to_string(), join(&step.prefix), t, v]);
        trace.push(json!({ "prefix": step.prefix, "witness": step.witness }));
    }
    let _ = writeln!(table, "final: {}", positivity_text(&r.final_report));
    let mut m = positivity_json(&r.final_report);
    m.insert("p".into(), json!(p));
    m.insert("ab".into(), json!([a, b]));
    m.insert("sequence".into(), json!(r.sequence.to_vec()));
    m.insert("a".into(), json!(r.sequence.to_vec()));
    m.insert("min_sum".into(), json!(r.min_sum));
    m.insert("order_exponent".into(), json!(r.order_exponent_bound));
    m.insert("full_sequence".into(), json!(full.iter().collect::<Vec<_>>()));
    m.insert("trace".into(), Value::Array(trace));
    Ok(Outcome {
        code: 0,
        json: Value::Object(m),
        table,
        csv: Some((
            ["step", "prefix", "witness_t", "witness_value"].map(String::from).to_vec(),
            rows,
        )),
    })
}

fn bruteforce(p: u32, sumlimit: u32, nmax: u32) -> Result<Outcome> {
    check_prime(p)?;
    let v = brute_force_infeasibility(p, sumlimit, nmax)?;
    let verdict = if v.all_violated() { "ALL_VIOLATED" } else { "FEASIBLE_FOUND" };
    let mut table = format!(
        "caps ({})\nexamined {} sequences with total <= {sumlimit}\n{verdict}\n",
        join(v.caps.as_vec()),
        v.examined
    );
    for f in &v.feasible {
        let _ = writeln!(table, "  holds for ({})", join(f));
    }
    Ok(Outcome {
        code: code_for(v.all_violated()),
        json: json!({
            "p": p,
            "sum_limit": sumlimit,
            "nmax": nmax,
            "caps": v.caps.as_vec(),
            "examined": v.examined,
            "feasible": v.feasible,
            "verdict": verdict,
        }),
        table,
        csv: None,
    })
}

fn valid(p: u32, a: &[u32], levels: &[u32], d: u32, margin: usize) -> Result<Outcome> {
    let a_seq = sequence_of(p, a)?;
    let profile = profile_of(d, levels)?;
    let horizon = stabilization_horizon(&a_seq, &profile) + margin;
    let rep = is_valid_with_horizon(&a_seq, &profile, horizon)?;
    let verdict = match rep.verdict {
        crate::validity::ValidityVerdict::Valid => "VALID".to_string(),
        crate::validity::ValidityVerdict::Invalid { criterion, index } => {
            format!("INVALID ({} at n = {index})", json!(criterion).as_str().unwrap_or("?"))
        }
    };
    let table = format!(
        "a = ({})\nlevels {:?}, d = {d}, horizon {horizon}\n{verdict}\norder exponent {}\nstable c = {}\nstable e = {}\n",
        join(a_seq.to_vec()),
        profile.levels(),
        rep.order_exponent,
        rep.stable_c,
        rep.stable_e
    );
    let csv = sequence_rows(&a_seq, &rep.b, &rep.c, &rep.e);
    Ok(Outcome {
        code: code_for(rep.is_valid()),
        json: serde_json::to_value(&rep).map_err(|e| Error::InvalidArgument(e.to_string()))?,
        table,
        csv: Some(csv),
    })
}

fn sequence_rows(
    a: &DimensionSequence,
    b: &[num_bigint::BigInt],
    c: &[num_bigint::BigInt],
    e: &[num_bigint::BigInt],
) -> (Vec<String>, Vec<Vec<String>>) {
    let len = c.len().max(e.len());
    let cell = |v: &[num_bigint::BigInt], n: usize| v.get(n).map_or(String::new(), |x| x.to_string());
    let rows = (0..len)
        .map(|n| {
            let an = if n == 0 { String::new() } else { a.get(n as u32).to_string() };
            vec![n.to_string(), an, cell(b, n), cell(c, n), cell(e, n)]
        })
        .collect();
    (["n", "a", "b", "c", "e"].map(String::from).to_vec(), rows)
}

fn mildness(p: u32, d: u32, levels: &[u32], a: &[u32], margin: usize) -> Result<Outcome> {
    let a_seq = sequence_of(p, a)?;
    let profile = profile_of(d, levels)?;
    let horizon = stabilization_horizon(&a_seq, &profile) + margin;
    let e = e_sequence(&a_seq, &profile, horizon);
    let j = jennings_transform(&a_seq);
    let first_nonzero = e.iter().position(|x| !x.is_zero());
    let mild = first_nonzero.is_none();
    let table = match first_nonzero {
        None => format!("e_n = 0 for n <= {horizon}: mild through the horizon\n"),
        Some(n) => format!(
            "first nonzero defect e_{n} = {}\nstable e = {}\n",
            e[n],
            e.last().map(ToString::to_string).unwrap_or_default()
        ),
    };
    let c: Vec<_> = (0..=horizon as i64).map(|n| j.c_at(n)).collect();
    let b: Vec<_> = (0..=horizon as i64).map(|n| j.b_at(n)).collect();
    let csv = sequence_rows(&a_seq, &b, &c, &e);
    Ok(Outcome {
        code: code_for(mild),
        json: json!({
            "p": p,
            "d": d,
            "levels": profile.levels(),
            "a": a_seq.to_vec(),
            "horizon": horizon,
            "e": e.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "first_nonzero": first_nonzero,
            "verdict": if mild { "MILD" } else { "NOT_MILD" },
        }),
        table,
        csv: Some(csv),
    })
}

fn grouplab(group: Option<&str>, p: Option<u32>, verify: &[Verify], input: Option<&PathBuf>) -> Result<Outcome> {
    let (label, table_group, presentation) = match input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let parsed = parse_group_input(&text)?;
            let g = parsed.group.clone();
            let pres = if parsed.generators.is_empty() { None } else { Some(parsed.into_presentation()?) };
            (path.display().to_string(), g, pres)
        }
        None => {
            let kind: GroupKind = group.expect("clap requires --group without --input").parse()?;
            let p = check_prime(p.expect("clap requires --p without --input"))?;
            let pres = PresentationData::builtin(kind, p)?;
            (kind.to_string(), pres.group().clone(), Some(pres))
        }
    };
    let g = &table_group;
    let p = g.prime();
    let filt = match &presentation {
        Some(pd) => pd.filtration().clone(),
        None => crate::group_lab::augmentation_powers(g),
    };
    let dims = dimension_subgroups(g, &filt)?;
    let a = dims.factors.clone();
    let c_measured: Vec<usize> = filt.c_sequence();
    let mut table = format!(
        "group {label}, p = {p}, |G| = {p}^{}\na = ({})\nc = ({})\n",
        g.order_exponent(),
        join(a.to_vec()),
        join(&c_measured)
    );
    let mut checks = Map::new();
    let mut all_ok = true;
    let mut record = |name: &str, ok: Option<bool>, detail: String, table: &mut String| {
        let status = match ok {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "SKIPPED",
        };
        all_ok &= ok != Some(false);
        let _ = writeln!(table, "{name}: {status}  {detail}");
        checks.insert(name.into(), json!({ "status": status, "detail": detail }));
    };
    for v in verify {
        match v {
            Verify::Jennings => {
                let j = jennings_transform(&a);
                let predicted: Vec<String> = j.c.iter().map(ToString::to_string).collect();
                let measured: Vec<String> = c_measured.iter().map(ToString::to_string).collect();
                let ok = predicted == measured && a.order_exponent() == g.order_exponent() as u64;
                record("jennings", Some(ok), format!("predicted c = ({})", predicted.join(",")), &mut table);
            }
            Verify::Lazard => {
                let rep = lazard_check(g, &dims);
                let mut detail = format!("{} indices compared", rep.rows.len());
                if g.is_abelian() {
                    let conv = abelian_power_convention(g, &dims);
                    let _ = write!(
                        detail,
                        "; power convention: ceiling {}, floor {}",
                        conv.ceiling_matches, conv.floor_matches
                    );
                }
                record("lazard", Some(rep.all_equal), detail, &mut table);
            }
            Verify::Recursion => match &presentation {
                Some(pd) => {
                    let rep = pd.verify_recursion()?;
                    let detail = format!(
                        "levels {:?}, horizon {}, terminal 1 + e = {}",
                        pd.levels(),
                        rep.horizon,
                        rep.rows.last().map_or(1, |r| r.e + 1)
                    );
                    record("recursion", Some(rep.ok()), detail, &mut table);
                }
                None => record("recursion", None, "no presentation given".into(), &mut table),
            },
            Verify::Fox => match &presentation {
                Some(pd) => {
                    let identity = pd
                        .relators()
                        .iter()
                        .all(|w| crate::group_lab::presentation::fox_identity_holds(g, pd.generator_images(), w));
                    match pd.fox_images_via_magnus() {
                        Ok(m) => {
                            let agree = m == pd.fox_images();
                            record(
                                "fox",
                                Some(identity && agree),
                                format!("fundamental identity {identity}, Magnus route agrees {agree}"),
                                &mut table,
                            );
                        }
                        Err(_) => record(
                            "fox",
                            Some(identity),
                            format!("fundamental identity {identity}, Magnus route skipped (too large)"),
                            &mut table,
                        ),
                    }
                }
                None => record("fox", None, "no presentation given".into(), &mut table),
            },
        }
    }
    let (e, levels) = match &presentation {
        Some(pd) => {
            let horizon = filt.nilpotency_index() + pd.levels().iter().max().copied().unwrap_or(0);
            (
                pd.e_sequence(horizon).iter().map(ToString::to_string).collect::<Vec<_>>(),
                Some(pd.levels().to_vec()),
            )
        }
        None => (Vec::new(), None),
    };
    let j = jennings_transform(&a);
    let verdict = if all_ok { "PASS" } else { "FAIL" };
    let _ = writeln!(table, "{verdict}");
    let b: Vec<String> = filt.b_sequence().iter().map(ToString::to_string).collect();
    let rows = (0..c_measured.len().max(e.len()))
        .map(|n| {
            vec![
                n.to_string(),
                if n == 0 { String::new() } else { a.get(n as u32).to_string() },
                b.get(n).cloned().unwrap_or_default(),
                j.c_at(n as i64).to_string(),
                e.get(n).cloned().unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Outcome {
        code: code_for(all_ok),
        json: json!({
            "group": label,
            "p": p,
            "order_exponent": g.order_exponent(),
            "a": a.to_vec(),
            "b": b,
            "c": c_measured,
            "e": e,
            "levels": levels,
            "checks": checks,
            "verdict": verdict,
        }),
        table,
        csv: Some((["n", "a", "b", "c", "e"].map(String::from).to_vec(), rows)),
    })
}
