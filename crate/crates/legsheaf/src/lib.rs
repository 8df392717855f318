//! Command-line front end for `legsheaf-core`: reads fronts, sheaves and
//! barcodes from files and prints invariants and theorem checks.

pub mod corpus;
pub mod files;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use legsheaf_core::barcodes::{interleaving_check_detailed, interleaving_distance, parse_tsv, to_svg, to_tsv, Barcode};
use legsheaf_core::cellsheaf::{check_ss, microlocal_rank, CellSheaf};
use legsheaf_core::exactalg::{Dims, Field};
use legsheaf_core::fronts::{enumerate_chords, Front, Witness};
use legsheaf_core::homengine::hom_report;
use legsheaf_core::persistengine::{barcode, verify_endpoints, PersistenceProblem};
use legsheaf_core::q::{fmt_q_short, parse_q, Ext, Q};
use legsheaf_core::reports::{betti_bound, displacement_bound, morse_inequalities, support_diagnostics, TheoremReport, Verdict};
use legsheaf_core::{PrimeField, Rationals};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "legsheaf", version, about = "Sheaf invariants of Legendrian fronts, computed exactly")]
pub struct Cli {
    /// Coefficient field: a prime such as 2 or F3, or "rational".
    #[arg(long, global = true, default_value = "F2")]
    pub field: String,
    /// Output format; barcode defaults to tsv, everything else to table.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Tsv,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a front file.
    Validate { front: PathBuf },
    /// List the Reeb chords of a front with lengths and degrees.
    Chords { front: PathBuf },
    /// Check that a sheaf has singular support on its front.
    SheafCheck { front: PathBuf, sheaf: PathBuf },
    /// Hom_+ and Hom_- dimensions with duality and triangle verdicts.
    Hom { front: PathBuf, sheaf_f: PathBuf, sheaf_g: Option<PathBuf> },
    /// Persistence barcode of Hom(F, T_u G) as u varies.
    Barcode {
        front: PathBuf,
        sheaf_f: PathBuf,
        /// Second front and sheaf G; without them G = F.
        #[arg(num_args = 0..=2)]
        other: Vec<PathBuf>,
        /// Use the skyscraper at x,t as the source and the given sheaf as G.
        #[arg(long, value_name = "X,T", conflicts_with = "other")]
        skyscraper: Option<String>,
    },
    /// Interleaving distance between two barcode TSV files.
    Distance { a: PathBuf, b: PathBuf },
    /// Theorem checks: support hypotheses, Betti bound, Morse inequalities,
    /// and with --perturb a displacement bound.
    Report {
        front: PathBuf,
        sheaf: PathBuf,
        /// Perturbed front for the displacement bound.
        #[arg(long, requires = "eps")]
        perturb: Option<PathBuf>,
        /// Sheaf on the perturbed front, for the bar survival check.
        #[arg(long, requires = "perturb")]
        perturb_sheaf: Option<PathBuf>,
        /// Displacement energy bound as p/q.
        #[arg(long, requires = "perturb")]
        eps: Option<String>,
    },
    /// List the bundled examples, or write them to a directory.
    Corpus {
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Output text and exit code of a successful run.
struct Done {
    text: String,
    code: i32,
}

/// The coefficient field chosen on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Prime(u32),
    Rational,
}

pub fn parse_field(s: &str) -> Result<FieldChoice, String> {
    let t = s.trim();
    if matches!(t.to_ascii_lowercase().as_str(), "rational" | "rationals" | "q") {
        return Ok(FieldChoice::Rational);
    }
    let digits = t.strip_prefix('F').or_else(|| t.strip_prefix('f')).unwrap_or(t);
    let p: u32 = digits.parse().map_err(|_| format!("unknown field {s:?}: use a prime such as 2 or F3, or \"rational\""))?;
    PrimeField::new(p).map(|_| FieldChoice::Prime(p)).ok_or_else(|| format!("{p} is not prime"))
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = parse_field(&cli.field).map_err(usage).and_then(|f| match f {
        FieldChoice::Rational => execute(&cli, &Rationals),
        FieldChoice::Prime(p) => execute(&cli, &PrimeField::new(p).expect("checked prime")),
    });
    match result {
        Ok(d) => {
            let _ = out.write_all(d.text.as_bytes());
            d.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Finds an input file: the path as given, then the corpus directory.
pub fn resolve(path: &Path) -> Result<PathBuf, Failure> {
    if path.exists() {
        return Ok(path.to_path_buf());
    }
    let dir = corpus::corpus_dir();
    let rel = path.strip_prefix("corpus").unwrap_or(path);
    let mut cands = vec![dir.join(rel)];
    if rel.extension().is_none() {
        cands.push(dir.join(rel).with_extension("json"));
    }
    cands.into_iter().find(|c| c.exists()).ok_or_else(|| invalid(format!("{}: no such file", path.display())))
}

fn read(path: &Path) -> Result<String, Failure> {
    let p = resolve(path)?;
    std::fs::read_to_string(&p).map_err(|e| invalid(format!("{}: {e}", p.display())))
}

fn load_front(path: &Path) -> Result<Front, Failure> {
    files::parse_front(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_sheaf<K: Field>(path: &Path, front: &Front, k: &K) -> Result<CellSheaf<K>, Failure> {
    files::parse_sheaf(&read(path)?, front, k).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_barcode(path: &Path) -> Result<Barcode, Failure> {
    parse_tsv(&read(path)?).map_err(|e| invalid(format!("{}: line {}: {}", path.display(), e.line, e.message)))
}

fn parse_rational(s: &str, what: &str) -> Result<Q, Failure> {
    parse_q(s).ok_or_else(|| usage(format!("{what}: {s:?} is not a rational number")))
}

fn dims_str(d: &Dims) -> String {
    if d.is_empty() {
        return "0".into();
    }
    d.iter().map(|(i, n)| format!("H{i}={n}")).collect::<Vec<_>>().join(" ")
}

fn dims_json(d: &Dims) -> Value {
    Value::Object(d.iter().map(|(i, n)| (i.to_string(), json!(n))).collect())
}

fn json_text(v: &Value) -> String {
    files::pretty(v)
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn only(fmt: Format, allowed: &[Format], cmd: &str) -> Result<(), Failure> {
    if allowed.contains(&fmt) {
        Ok(())
    } else {
        Err(usage(format!("{cmd} does not support --format {fmt:?}").to_lowercase()))
    }
}

fn execute<K: Field>(cli: &Cli, k: &K) -> Result<Done, Failure> {
    let table_json = [Format::Table, Format::Json];
    match &cli.command {
        Command::Validate { front } => {
            let fmt = cli.format.unwrap_or(Format::Table);
            only(fmt, &table_json, "validate")?;
            validate(front, fmt)
        }
        Command::Chords { front } => {
            let fmt = cli.format.unwrap_or(Format::Table);
            only(fmt, &table_json, "chords")?;
            chords(front, fmt)
        }
        Command::SheafCheck { front, sheaf } => {
            let fmt = cli.format.unwrap_or(Format::Table);
            only(fmt, &table_json, "sheaf-check")?;
            sheaf_check(front, sheaf, k, fmt)
        }
        Command::Hom { front, sheaf_f, sheaf_g } => {
            let fmt = cli.format.unwrap_or(Format::Table);
            only(fmt, &table_json, "hom")?;
            hom(front, sheaf_f, sheaf_g.as_deref(), k, fmt)
        }
        Command::Barcode { front, sheaf_f, other, skyscraper } => {
            let fmt = cli.format.unwrap_or(Format::Tsv);
            persistence(front, sheaf_f, other, skyscraper.as_deref(), k, fmt)
        }
        Command::Distance { a, b } => {
            let fmt = cli.format.unwrap_or(Format::Table);
            only(fmt, &[Format::Table, Format::Json, Format::Tsv], "distance")?;
            distance(a, b, fmt)
        }
        Command::Report { front, sheaf, perturb, perturb_sheaf, eps } => {
            let fmt = cli.format.unwrap_or(Format::Table);
            only(fmt, &table_json, "report")?;
            let eps = eps.as_deref().map(|e| parse_rational(e, "--eps")).transpose()?;
            report(front, sheaf, perturb.as_deref(), perturb_sheaf.as_deref(), eps.as_ref(), k, fmt)
        }
        Command::Corpus { export } => {
            let fmt = cli.format.unwrap_or(Format::Table);
            only(fmt, &table_json, "corpus")?;
            corpus_cmd(export.as_deref(), fmt)
        }
    }
}

fn validate(path: &Path, fmt: Format) -> Result<Done, Failure> {
    let raw = files::parse_front_raw(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let (ok, messages, front) = match raw.prepare() {
        Ok(f) => (true, vec![], Some(f)),
        Err(r) => (false, r.violations.iter().map(|v| format!("{:?}: {}", v.kind, v.message)).collect::<Vec<_>>(), None),
    };
    let text = match fmt {
        Format::Json => json_text(&json!({
            "valid": ok,
            "violations": messages,
            "potentials": front.as_ref().map(|f| f.potentials().to_vec()),
            "betti": front.as_ref().map(|f| f.betti()),
        })),
        _ => {
            let mut s = String::new();
            match &front {
                Some(f) => {
                    s.push_str("valid\n");
                    s.push_str(&format!("potentials\t{:?}\n", f.potentials()));
                    s.push_str(&format!("betti\t{:?}\n", f.betti()));
                }
                None => {
                    s.push_str("invalid\n");
                    for m in &messages {
                        s.push_str(&format!("  {m}\n"));
                    }
                }
            }
            s
        }
    };
    Ok(Done { text, code: code(ok) })
}

fn witness_str(w: &Witness) -> String {
    match w {
        Witness::Points { bottom, top } => format!("points {bottom}->{top}"),
        Witness::Sheets { bottom, top } => format!("sheets {bottom}->{top}"),
    }
}

fn chords(path: &Path, fmt: Format) -> Result<Done, Failure> {
    let f = load_front(path)?;
    let cs = enumerate_chords(&f).map_err(|r| invalid(format!("{}: {r}", path.display())))?;
    let text = match fmt {
        Format::Json => json_text(&Value::Array(
            cs.iter()
                .map(|c| {
                    json!({
                        "degree": c.degree,
                        "length": fmt_q_short(&c.length),
                        "x": fmt_q_short(&c.x),
                        "bottom": fmt_q_short(&c.t_bottom),
                        "top": fmt_q_short(&c.t_top),
                        "witness": witness_str(&c.witness),
                    })
                })
                .collect(),
        )),
        _ => {
            let mut s = String::from("degree\tlength\tx\tbottom\ttop\twitness\n");
            for c in &cs {
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    c.degree,
                    fmt_q_short(&c.length),
                    fmt_q_short(&c.x),
                    fmt_q_short(&c.t_bottom),
                    fmt_q_short(&c.t_top),
                    witness_str(&c.witness)
                ));
            }
            s.push_str(&format!("{} chords\n", cs.len()));
            s
        }
    };
    Ok(Done { text, code: 0 })
}

fn sheaf_check<K: Field>(front: &Path, sheaf: &Path, k: &K, fmt: Format) -> Result<Done, Failure> {
    let f = load_front(front)?;
    let s = load_sheaf(sheaf, &f, k)?;
    let rep = check_ss(&s, &f);
    let rank = microlocal_rank(&s, &f);
    let violations: Vec<String> = rep.violations.iter().map(|v| format!("{:?}: {}", v.kind, v.message)).collect();
    let text = match fmt {
        Format::Json => json_text(&json!({
            "valid": rep.is_valid(),
            "compact": s.compactly_supported(),
            "violations": violations,
            "microstalks": rank.as_ref().ok().map(|r| r.components.iter().map(dims_json).collect::<Vec<_>>()),
            "pure": rank.as_ref().ok().map(|r| r.pure),
        })),
        _ => {
            let mut t = String::from(if rep.is_valid() { "valid\n" } else { "invalid\n" });
            for v in &violations {
                t.push_str(&format!("  {v}\n"));
            }
            match &rank {
                Ok(r) => {
                    for (i, c) in r.components.iter().enumerate() {
                        t.push_str(&format!("microstalk component {i}\t{}\n", dims_str(c)));
                    }
                    t.push_str(&format!("pure\t{}\n", r.pure));
                }
                Err(e) => t.push_str(&format!("microstalks unavailable: {e}\n")),
            }
            t
        }
    };
    Ok(Done { text, code: code(rep.is_valid()) })
}

fn hom<K: Field>(front: &Path, sf: &Path, sg: Option<&Path>, k: &K, fmt: Format) -> Result<Done, Failure> {
    let f = load_front(front)?;
    let a = load_sheaf(sf, &f, k)?;
    let b = match sg {
        Some(p) => load_sheaf(p, &f, k)?,
        None => a.clone(),
    };
    let r = hom_report(&a, &b, f.n()).map_err(|e| invalid(e.to_string()))?;
    let ok = r.duality_ok && r.triangle_ok;
    let text = match fmt {
        Format::Json => json_text(&json!({
            "field": k.name(),
            "hom_plus": dims_json(&r.hom_plus),
            "hom_minus": dims_json(&r.hom_minus),
            "sato_cone": dims_json(&r.sato_cone_dims),
            "duality_ok": r.duality_ok,
            "triangle_ok": r.triangle_ok,
            "diagnostics": r.diagnostics,
        })),
        _ => {
            let mut t = format!(
                "field\t{}\nhom_plus\t{}\nhom_minus\t{}\nsato_cone\t{}\nduality\t{}\ntriangle\t{}\n",
                k.name(),
                dims_str(&r.hom_plus),
                dims_str(&r.hom_minus),
                dims_str(&r.sato_cone_dims),
                if r.duality_ok { "pass" } else { "fail" },
                if r.triangle_ok { "pass" } else { "fail" },
            );
            for d in &r.diagnostics {
                t.push_str(&format!("  {d}\n"));
            }
            t
        }
    };
    Ok(Done { text, code: code(ok) })
}

fn persistence<K: Field>(
    front: &Path,
    sf: &Path,
    other: &[PathBuf],
    sky: Option<&str>,
    k: &K,
    fmt: Format,
) -> Result<Done, Failure> {
    let f = load_front(front)?;
    let a = load_sheaf(sf, &f, k)?;
    let p = match (other, sky) {
        ([], None) => PersistenceProblem::self_problem(&f, a),
        ([g_front, g_sheaf], None) => {
            let g = load_front(g_front)?;
            let b = load_sheaf(g_sheaf, &g, k)?;
            PersistenceProblem::new(&f, a, &g, b)
        }
        ([], Some(xt)) => {
            let (x, t) = xt.split_once(',').ok_or_else(|| usage(format!("--skyscraper expects x,t, got {xt:?}")))?;
            PersistenceProblem::skyscraper(parse_rational(x, "--skyscraper")?, parse_rational(t, "--skyscraper")?, &f, a)
        }
        _ => return Err(usage("barcode takes either a second front and sheaf, or --skyscraper")),
    }
    .map_err(|e| invalid(e.to_string()))?;
    let bc = barcode(&p).map_err(|e| invalid(e.to_string()))?;
    let ends = verify_endpoints(&p, &bc).map_err(|e| invalid(e.to_string()))?;
    let ok = ends.all_matched();
    let text = match fmt {
        Format::Tsv => to_tsv(&bc),
        Format::Svg => to_svg(&bc),
        Format::Json => json_text(&json!({
            "field": k.name(),
            "bars": bc.bars().iter().map(|b| json!({
                "degree": b.degree,
                "start": b.start.fmt_short(),
                "end": b.end.fmt_short(),
                "mult": b.mult,
            })).collect::<Vec<_>>(),
            "endpoints": ends.checks.iter().map(|c| json!({
                "u": fmt_q_short(&c.u),
                "observed": dims_json(&c.observed),
                "predicted": c.predicted.as_ref().map(dims_json),
                "matched": c.matched,
            })).collect::<Vec<_>>(),
            "unexplained": ends.missing.iter().map(fmt_q_short).collect::<Vec<_>>(),
            "endpoints_matched": ok,
        })),
        Format::Table => {
            let mut t = String::from("degree\tstart\tend\tmult\n");
            for b in bc.bars() {
                t.push_str(&format!("{}\t({}\t{}]\t{}\n", b.degree, b.start.fmt_short(), b.end.fmt_short(), b.mult));
            }
            for c in &ends.checks {
                let pred = c.predicted.as_ref().map(dims_str).unwrap_or_else(|| "-".into());
                t.push_str(&format!(
                    "jump at {}\t{}\tpredicted {}\t{}\n",
                    fmt_q_short(&c.u),
                    dims_str(&c.observed),
                    pred,
                    if c.matched { "ok" } else { "MISMATCH" }
                ));
            }
            for u in &ends.missing {
                t.push_str(&format!("endpoint {} has no chord\n", fmt_q_short(u)));
            }
            t
        }
    };
    Ok(Done { text, code: code(ok) })
}

fn distance(a: &Path, b: &Path, fmt: Format) -> Result<Done, Failure> {
    let (x, y) = (load_barcode(a)?, load_barcode(b)?);
    let d = interleaving_distance(&x, &y);
    let method = match &d {
        Ext::Fin(v) if *v > Q::from_integer(0.into()) => Some(interleaving_check_detailed(&x, &y, v, v).method),
        _ => None,
    };
    let text = match fmt {
        Format::Json => json_text(&json!({ "distance": d.fmt(), "method": method.map(|m| format!("{m:?}").to_lowercase()) })),
        _ => format!("{}\n", d.fmt()),
    };
    Ok(Done { text, code: 0 })
}

fn report_json(r: &TheoremReport) -> Value {
    json!({
        "theorem": r.theorem,
        "field": r.field,
        "verdict": r.verdict.as_str(),
        "hypotheses": r.hypotheses.iter().map(|h| json!({"name": h.name, "holds": h.holds, "detail": h.detail})).collect::<Vec<_>>(),
        "inequalities": r.inequalities.iter().map(|i| json!({"label": i.label, "lhs": i.lhs, "rhs": i.rhs, "holds": i.holds()})).collect::<Vec<_>>(),
        "diagnostics": r.diagnostics,
    })
}

fn report_table(r: &TheoremReport) -> String {
    let mut t = format!("{}\t{}\n", r.theorem, r.verdict.as_str());
    for h in r.hypotheses.iter().filter(|h| !h.holds) {
        t.push_str(&format!("  hypothesis fails: {} ({})\n", h.name, h.detail));
    }
    for i in &r.inequalities {
        t.push_str(&format!("  {}: {} >= {}\t{}\n", i.label, i.lhs, i.rhs, if i.holds() { "ok" } else { "VIOLATED" }));
    }
    for d in &r.diagnostics {
        t.push_str(&format!("  {d}\n"));
    }
    t
}

#[allow(clippy::too_many_arguments)]
fn report<K: Field>(
    front: &Path,
    sheaf: &Path,
    perturb: Option<&Path>,
    perturb_sheaf: Option<&Path>,
    eps: Option<&Q>,
    k: &K,
    fmt: Format,
) -> Result<Done, Failure> {
    let f = load_front(front)?;
    let s = load_sheaf(sheaf, &f, k)?;
    let mut reports = vec![support_diagnostics(&f, &s), betti_bound(&f, &s), morse_inequalities(&f, &s)];
    if let (Some(g), Some(eps)) = (perturb, eps) {
        let g_front = load_front(g)?;
        let g_sheaf = perturb_sheaf.map(|p| load_sheaf(p, &g_front, k)).transpose()?;
        reports.push(displacement_bound(&f, &s, &g_front, g_sheaf.as_ref(), eps));
    }
    // An inapplicable theorem is not a failure, but a sheaf outside the
    // scope of every theorem is invalid input.
    let ok = reports.iter().any(|r| r.verdict == Verdict::Pass) && reports.iter().all(|r| r.verdict != Verdict::Fail);
    let text = match fmt {
        Format::Json => json_text(&json!({ "ok": ok, "reports": reports.iter().map(report_json).collect::<Vec<_>>() })),
        _ => reports.iter().map(report_table).collect::<String>(),
    };
    Ok(Done { text, code: code(ok) })
}

fn corpus_cmd(export: Option<&Path>, fmt: Format) -> Result<Done, Failure> {
    if let Some(dir) = export {
        std::fs::create_dir_all(dir).map_err(|e| invalid(format!("{}: {e}", dir.display())))?;
        let files = corpus::files();
        for (name, body) in &files {
            let p = dir.join(name);
            std::fs::write(&p, body).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
        }
        return Ok(Done { text: format!("wrote {} files to {}\n", files.len(), dir.display()), code: 0 });
    }
    let fronts = corpus::fronts();
    let sheaves = corpus::sheaves();
    let text = match fmt {
        Format::Json => {
            let fr: Vec<Value> = fronts.iter().map(|f| json!({"name": f.name, "about": f.about})).collect();
            let sh: Vec<Value> = sheaves.iter().map(|s| json!({"name": s.name, "front": s.front, "about": s.about})).collect();
            json_text(&json!({ "directory": corpus::corpus_dir().display().to_string(), "fronts": fr, "sheaves": sh }))
        }
        _ => {
            let mut t = format!("corpus directory\t{}\n\nfronts\n", corpus::corpus_dir().display());
            for f in &fronts {
                t.push_str(&format!("  {}\t{}\n", f.name, f.about));
            }
            t.push_str("\nsheaves\n");
            let by_front: BTreeMap<&str, Vec<&corpus::SheafEntry>> = sheaves.iter().fold(BTreeMap::new(), |mut m, s| {
                m.entry(s.front).or_insert_with(Vec::new).push(s);
                m
            });
            for f in &fronts {
                for s in by_front.get(f.name).into_iter().flatten() {
                    t.push_str(&format!("  {}\ton {}\t{}\n", s.name, s.front, s.about));
                }
            }
            t
        }
    };
    Ok(Done { text, code: 0 })
}
